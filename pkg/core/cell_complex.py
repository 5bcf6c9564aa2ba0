"""
セル複体と近傍

幾何的実現の出力（開セルの一覧と、要素的/合成的の区別付きの接着インスタンス）、
隣接成分・オイラー標数・次元別集計、DOT 出力、組合せ的近傍と近傍基底の記号表現。
位相は点集合としては持たない。
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import pandas as pd
import sympy

from .basecat import CofaceWord
from .cell_names import FractionFormatter
from .errors import DimensionMismatchError, DocumentError
from .structures import RelStructure, full_substructure

# ログ設定
logger = logging.getLogger(__name__)

# 近傍基底のパラメータ k（十分大きな正の整数）
K = sympy.Symbol('k', positive=True)


class RealizationMode(Enum):
    STANDARD = 'standard'
    SEQUENTIAL = 'sequential'


class AttachmentKind(Enum):
    ELEMENTARY = 'elementary'
    COMPOSITE = 'composite'


def attachment_kind(word: CofaceWord) -> AttachmentKind:
    """非ゼロ文字がちょうど1つか恒等なら要素的"""
    if word.codimension <= 1:
        return AttachmentKind.ELEMENTARY
    return AttachmentKind.COMPOSITE


@dataclass(frozen=True, order=True)
class Attachment:
    """接着インスタンス（大きいセル, 語, 小さいセル）"""
    big: str
    word: str
    small: str
    kind: AttachmentKind = field(compare=False)
    gluing: bool = True


@dataclass(frozen=True)
class CellComplex:
    """
    セル複体

    cells: セル → 次元、attachments: 接着インスタンス。逐次モードでは
    合成的なインスタンスは接着しない（gluing=False）。
    """
    cells: Dict[str, int]
    attachments: Tuple[Attachment, ...]
    mode: RealizationMode = RealizationMode.STANDARD

    def __post_init__(self):
        for a in self.attachments:
            if a.big not in self.cells or a.small not in self.cells:
                raise DocumentError(f"attachment {a.big}|{a.word}|{a.small} refers to an unknown cell")
            word = CofaceWord(a.word)
            if word.cod != self.cells[a.big] or word.dom != self.cells[a.small]:
                raise DimensionMismatchError(f"attachment {a.big}|{a.word}|{a.small} has inconsistent dimensions")
            if attachment_kind(word) is not a.kind:
                raise DocumentError(f"attachment {a.big}|{a.word}|{a.small} is tagged {a.kind.value}")
            if (self.mode is RealizationMode.SEQUENTIAL
                    and a.kind is AttachmentKind.COMPOSITE and a.gluing):
                raise DocumentError("composite attachments do not glue in sequential mode")
        object.__setattr__(self, 'attachments', tuple(sorted(self.attachments)))

    @property
    def max_dim(self) -> int:
        return max(self.cells.values(), default=-1)

    def gluing_attachments(self) -> List[Attachment]:
        return [a for a in self.attachments if a.gluing]


@dataclass(frozen=True)
class CellBlock:
    """
    セル値モデルの関係ブロック M(R_f) の読み

    word: ブロックの射、gluing: 大きいセルを小さいセルに貼るか、
    shared: 両端が同じ一つのセル（恒等射のブロック）か。
    """
    word: str
    gluing: bool
    shared: bool = False


def glue_cell_blocks(cells: Mapping[str, int],
                     placed: Iterable[Tuple[str, str, CellBlock]],
                     mode: RealizationMode = RealizationMode.STANDARD) -> CellComplex:
    """
    セルの複製と、インスタンス (大きいセル, 小さいセル, ブロック) ごとの接着からセル複体を作る

    セル同士は潰さず、貼り合わせは全て接着として記録する。共有ブロックの対角は記録しない。
    """
    attachments: Dict[Tuple[str, str, str], Attachment] = {}
    for big, small, block in placed:
        if block.shared and big == small:
            continue
        key = (big, block.word, small)
        gluing = block.gluing or (key in attachments and attachments[key].gluing)
        attachments[key] = Attachment(big, block.word, small, attachment_kind(CofaceWord(block.word)), gluing)
    return CellComplex(dict(cells), tuple(attachments.values()), mode)


def adjacency_graph(complex_: CellComplex) -> nx.Graph:
    graph = nx.Graph()
    for cell, dim in sorted(complex_.cells.items()):
        graph.add_node(cell, dim=dim)
    for a in complex_.gluing_attachments():
        if a.big != a.small:
            graph.add_edge(a.big, a.small)
    return graph


def components(complex_: CellComplex) -> List[List[str]]:
    """接着で繋がる隣接成分（各成分と全体を整列）"""
    return sorted(sorted(block) for block in nx.connected_components(adjacency_graph(complex_)))


def euler_characteristic(complex_: CellComplex) -> int:
    dims = np.fromiter(complex_.cells.values(), dtype=int, count=len(complex_.cells))
    return int(np.sum((-1) ** dims)) if dims.size else 0


def cell_census(complex_: CellComplex) -> pd.Series:
    """
    次元ごとのセル数

    Returns:
        pd.Series: 次元を添字とするセル数（0 から最大次元まで）
    """
    dims = np.fromiter(complex_.cells.values(), dtype=int, count=len(complex_.cells))
    counts = np.bincount(dims) if dims.size else np.zeros(0, dtype=int)
    census = pd.Series(counts, index=pd.RangeIndex(len(counts), name='dim'), name='cells', dtype=int)
    return census


def incidence_matrix(complex_: CellComplex, dim: int) -> Tuple[List[str], List[str], np.ndarray]:
    """
    dim 次元セルと (dim-1) 次元セルの間の、接着する要素的インスタンスの個数

    Returns:
        Tuple: (行のセル, 列のセル, 行列)
    """
    rows = sorted(c for c, d in complex_.cells.items() if d == dim)
    cols = sorted(c for c, d in complex_.cells.items() if d == dim - 1)
    row_index = {c: i for i, c in enumerate(rows)}
    col_index = {c: i for i, c in enumerate(cols)}
    matrix = np.zeros((len(rows), len(cols)), dtype=int)
    for a in complex_.gluing_attachments():
        if a.big in row_index and a.small in col_index:
            matrix[row_index[a.big], col_index[a.small]] += 1
    return rows, cols, matrix


def to_dot(complex_: CellComplex) -> str:
    """隣接グラフの DOT 表現（接着しないインスタンスは破線）"""
    graph = nx.MultiDiGraph(name=complex_.mode.value)
    for cell, dim in sorted(complex_.cells.items()):
        graph.add_node(cell, label=f'"{cell} ({dim})"')
    for a in complex_.attachments:
        attributes = {'label': f'"{a.word}"'}
        if not a.gluing:
            attributes['style'] = 'dashed'
        graph.add_edge(a.big, a.small, **attributes)
    dot = nx.nx_pydot.to_pydot(graph)
    return dot.to_string()


# ===== 組合せ的近傍 =====

def positive_neighborhood(structure: RelStructure, cell: str) -> List[Tuple[str, str]]:
    """N⁺(c) = {(a, f) | a →_f c}（射の語順、セル名の順）"""
    return sorted(
        ((a, f) for f, a in structure.cofaces(cell)),
        key=lambda pair: (structure.base.morphism_key(pair[1]), pair[0]),
    )


def neighborhood(structure: RelStructure, cell: str) -> RelStructure:
    """N(c): c を面に持つセル全体の充満部分構造"""
    cells = {a for a, _ in positive_neighborhood(structure, cell)}
    return full_substructure(structure, cells, name=f"N({cell})")


@dataclass(frozen=True)
class OpenInterval:
    """記号的な開区間 ]lower, upper[（端点は k の式）"""
    lower: sympy.Expr
    upper: sympy.Expr

    def at(self, k: int) -> Tuple[Fraction, Fraction]:
        lower = sympy.nsimplify(self.lower.subs(K, k))
        upper = sympy.nsimplify(self.upper.subs(K, k))
        return Fraction(str(lower)), Fraction(str(upper))

    def contains(self, value: Fraction, k: int) -> bool:
        lower, upper = self.at(k)
        return lower < Fraction(value) < upper

    def __str__(self) -> str:
        return f"]{self.lower}, {self.upper}["


@dataclass(frozen=True)
class NeighborhoodTerm:
    """(a, w) ∈ N⁺(c) に対応する箱 {a} × Π_i I_{k,w_i,i}(x)"""
    cell: str
    word: str
    intervals: Tuple[OpenInterval, ...]

    def contains(self, point: Sequence[Fraction], k: int) -> bool:
        return len(point) == len(self.intervals) and all(
            interval.contains(t, k) for interval, t in zip(self.intervals, point)
        )

    def __str__(self) -> str:
        box = ' × '.join(str(i) for i in self.intervals) or 'pt'
        return f"{{{self.cell}}} × {box}"


@dataclass(frozen=True)
class NeighborhoodDescriptor:
    """点 x の近傍基底 U_k(x)"""
    cell: str
    point: Tuple[Fraction, ...]
    terms: Tuple[NeighborhoodTerm, ...]

    def term_for(self, cell: str, word: str) -> Optional[NeighborhoodTerm]:
        for term in self.terms:
            if term.cell == cell and term.word == word:
                return term
        return None


def interval_for(letter: str, point: Sequence[Fraction], p: int) -> OpenInterval:
    """
    語の文字ごとの区間

    '-' → ]0, 2/k[、'+' → ]1-2/k, 1[、'0' → ]x_p - 1/k, x_p + 1/k[（p は 1 始まり）
    """
    if letter == '-':
        return OpenInterval(sympy.Integer(0), 2 / K)
    if letter == '+':
        return OpenInterval(1 - 2 / K, sympy.Integer(1))
    coordinate = sympy.Rational(point[p - 1].numerator, point[p - 1].denominator)
    return OpenInterval(coordinate - 1 / K, coordinate + 1 / K)


def basis_neighborhood(structure: RelStructure, cell: str, point: Sequence[Fraction]) -> NeighborhoodDescriptor:
    """
    セル c の内部の有理点 x の近傍基底

    N⁺(c) の各 (a, w) について、a の座標 i ごとに w_i に応じた区間をとる。
    p(i) は w_1..w_i に含まれる 0 の個数。

    Raises:
        DimensionMismatchError: 点の次元がセルと合わない・開区間 ]0,1[ の外にある場合
    """
    if not structure.base.is_cubical:
        raise DimensionMismatchError("neighborhood bases need a cubical base category")
    point = tuple(Fraction(t) for t in point)
    if len(point) != structure.dim(cell):
        raise DimensionMismatchError(f"point has {len(point)} coordinates but {cell!r} has dimension {structure.dim(cell)}")
    if any(not 0 < t < 1 for t in point):
        raise DimensionMismatchError(f"point {FractionFormatter.tuple_name(point)} is not inside the open cube")

    terms = []
    for a, w in positive_neighborhood(structure, cell):
        intervals = []
        p = 0
        for letter in w:
            if letter == '0':
                p += 1
            intervals.append(interval_for(letter, point, p))
        terms.append(NeighborhoodTerm(a, w, tuple(intervals)))
    logger.debug(f"basis at {cell}{FractionFormatter.tuple_name(point)}: {len(terms)} terms")
    return NeighborhoodDescriptor(cell, point, tuple(terms))
