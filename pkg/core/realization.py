"""
実現モジュール (realization)

モデル割り当て M（対象ごとのブロック M(c)、射ごとのブロック M(R_f) と二つの包含 ι⁰, ι¹）の
条件検査、M による実現（拡張された要素の圏上の余極限）、重心細分モデル、
標準モデル・逐次モデルによる幾何的実現。
"""

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, TypedDict, Union

from .basecat import CofaceWord, FiniteBaseCategory, cube_category
from .cell_complex import AttachmentKind, CellBlock, CellComplex, RealizationMode, attachment_kind, glue_cell_blocks
from .cell_names import CellNamer, FractionFormatter
from .colimits import pushout, quotient
from .errors import DimensionMismatchError, DocumentError, LevelError, MorphismError
from .morphism_search import exists_morphism
from .structures import Level, Pair, RelMorphism, RelStructure, rebase

# ログ設定
logger = logging.getLogger(__name__)

QUARTER = Fraction(1, 4)
HALF = Fraction(1, 2)
THREE_QUARTERS = Fraction(3, 4)
OPEN_COORDINATES = (QUARTER, HALF, THREE_QUARTERS)

# 区間座標の端点（'-' 側, '+' 側）
_ENDPOINTS = {
    QUARTER: (Fraction(0), HALF),
    THREE_QUARTERS: (HALF, Fraction(1)),
}


# ===== モデル割り当て =====

class ModelTarget(Enum):
    """モデルの値の種類（関係構造か、セル複体のブロックか）"""
    RELATIONS = 'relations'
    CELLS = 'cells'


@dataclass(frozen=True)
class ModelAssignment:
    """
    実現のモデル

    objects: 対象 c → M(c)、relation_blocks: 射 f → M(R_f)、
    iota0: f → ι⁰_f: M(cod f) → M(R_f)、iota1: f → ι¹_f: M(dom f) → M(R_f)。
    ブロックは全て block_base 上の関係構造で、条件の検査はこの形で行う。
    target が CELLS のモデルは M(c) が一つの開いた立方体で、実現はセル複体になる
    （complex_mode はその複体のモード、input_level は実現が要求するレベル）。
    """
    name: str
    base: FiniteBaseCategory
    block_base: FiniteBaseCategory
    target_level: Level
    objects: Mapping[str, RelStructure]
    relation_blocks: Mapping[str, RelStructure]
    iota0: Mapping[str, RelMorphism] = field(repr=False)
    iota1: Mapping[str, RelMorphism] = field(repr=False)
    target: ModelTarget = ModelTarget.RELATIONS
    complex_mode: RealizationMode = RealizationMode.STANDARD
    input_level: Optional[Level] = None

    def __post_init__(self):
        for c in self.base.objects:
            if c not in self.objects:
                raise DocumentError(f"model {self.name} has no block for object {c!r}")
            if self.target is ModelTarget.CELLS and self.objects[c].size != 1:
                raise DocumentError(f"cell model {self.name} needs a single cube over {c!r}")
        for f in self.base.morphisms:
            if f not in self.relation_blocks or f not in self.iota0 or f not in self.iota1:
                raise DocumentError(f"model {self.name} has no relation block for {f!r}")
            block = self.relation_blocks[f]
            if self.iota0[f].source != self.objects[self.base.cod(f)] or self.iota0[f].target != block:
                raise MorphismError(f"model {self.name}: iota0 of {f!r} has the wrong type")
            if self.iota1[f].source != self.objects[self.base.dom(f)] or self.iota1[f].target != block:
                raise MorphismError(f"model {self.name}: iota1 of {f!r} has the wrong type")

    @property
    def required_level(self) -> Level:
        return self.input_level or self.target_level

    def cell_block(self, f: str) -> CellBlock:
        """
        M(R_f) のセルブロックとしての読み

        大きい端は ι⁰ による M(cod f) の像、小さい端は ι¹ による M(dom f) の像。
        """
        block = self.relation_blocks[f]
        (top,) = self.objects[self.base.cod(f)].cells()
        (bottom,) = self.objects[self.base.dom(f)].cells()
        big, small = self.iota0[f](top), self.iota1[f](bottom)
        if big == small:
            return CellBlock(f, gluing=True, shared=True)
        return CellBlock(f, gluing=block.related(big, f, small))


class ModelFailure(TypedDict):
    """モデル条件の違反"""
    condition: int
    morphisms: Tuple[str, ...]
    witness: str


@dataclass
class ModelReport:
    """条件 0（同時全射）・1（恒等での分解）・2（合成での分解）の検査結果"""
    model: str
    target_level: Level
    failures: List[ModelFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def passes(self, condition: int) -> bool:
        return all(f['condition'] != condition for f in self.failures)

    def failing_morphisms(self, condition: int) -> List[Tuple[str, ...]]:
        return [f['morphisms'] for f in self.failures if f['condition'] == condition]

    def lines(self) -> List[str]:
        return [
            f"condition{f['condition']}\tmorphisms={','.join(f['morphisms'])}\t{f['witness']}"
            for f in self.failures
        ]


def _factorization(source: RelStructure,
                   target: RelStructure,
                   constraints: Sequence[Tuple[RelMorphism, Mapping[str, str]]]) -> Tuple[Optional[Dict[str, str]], str]:
    """
    各 (ι, g) について m∘ι = g となる射 m: source → target を探す

    Returns:
        Tuple: (見つかった成分 or None, 失敗の説明)
    """
    fixed: Dict[str, str] = {}
    for iota, values in constraints:
        for x in iota.source.cells():
            cell, image = iota(x), values[x]
            if fixed.setdefault(cell, image) != image:
                return None, f"{cell} must go to both {fixed[cell]} and {image}"
    found = exists_morphism(source, target, fixed=fixed)
    if found is None:
        return None, "no morphism satisfies the prescribed values"
    return found, ''


def check_model(model: ModelAssignment) -> ModelReport:
    """
    モデル条件の検査

    条件 0 は ι⁰, ι¹ の同時全射、条件 1・2 は分解射の全探索。
    押し出しはモデルの target_level で計算する。
    """
    report = ModelReport(model.name, model.target_level)
    base = model.base

    for f in base.sorted_morphisms():
        block = model.relation_blocks[f]
        covered = model.iota0[f].image() | model.iota1[f].image()
        missing = sorted(set(block.cells()) - covered)
        if missing:
            report.failures.append(ModelFailure(
                condition=0, morphisms=(f,),
                witness=f"cells not covered by iota0/iota1: {', '.join(missing)}",
            ))

    for c in base.objects:
        ident = base.identity(c)
        identity_values = {x: x for x in model.objects[c].cells()}
        found, reason = _factorization(
            model.relation_blocks[ident], model.objects[c],
            [(model.iota0[ident], identity_values), (model.iota1[ident], identity_values)],
        )
        if found is None:
            report.failures.append(ModelFailure(condition=1, morphisms=(ident,), witness=reason))

    for g, f in base.composable_pairs():
        composite = base.compose(g, f)
        glued, q_f, q_g = pushout(model.iota1[f], model.iota0[g], level=model.target_level)
        top_values = {x: q_f(model.iota0[f](x)) for x in model.objects[base.cod(f)].cells()}
        bottom_values = {z: q_g(model.iota1[g](z)) for z in model.objects[base.dom(g)].cells()}
        found, reason = _factorization(
            model.relation_blocks[composite], glued,
            [(model.iota0[composite], top_values), (model.iota1[composite], bottom_values)],
        )
        if found is None:
            report.failures.append(ModelFailure(
                condition=2, morphisms=(f, g, composite),
                witness=f"R_{composite} does not factor through R_{f} glued to R_{g}: {reason}",
            ))

    logger.info(f"model {model.name}: {len(report.failures)} condition failures")
    return report


# ===== 実現 =====

def realize(structure: RelStructure, model: ModelAssignment, name: str = '') -> Union[RelStructure, CellComplex]:
    """
    M による実現

    セルごとに M(c) の複製 "cell:x:local"、関係インスタンスごとに M(R_f) の複製
    "rel:x|f|y:local" を置き、ι⁰ を大きい端、ι¹ を小さい端で貼り合わせた商。
    セル値のモデルではセル複体の貼り合わせ（glue_cell_blocks）を使う。
    """
    if structure.base != model.base:
        raise DimensionMismatchError(f"model {model.name} is defined over {model.base.name}, not {structure.base.name}")
    if not structure.level.at_least(model.required_level):
        raise LevelError(f"model {model.name} realizes {model.required_level.value} structures")
    if model.target is ModelTarget.CELLS:
        return _realize_cells(structure, model)
    return _realize_relations(structure, model, name)


def _realize_relations(structure: RelStructure, model: ModelAssignment, name: str) -> RelStructure:
    carriers: Dict[str, List[str]] = {}
    relations: Dict[str, List[Pair]] = {}

    def place(block: RelStructure, kind: str, anchor: str) -> Dict[str, str]:
        names = {local: CellNamer.realized(kind, anchor, local) for local in block.cells()}
        for local in block.cells():
            carriers.setdefault(block.object_of(local), []).append(names[local])
        for f, x, y in block.instances():
            relations.setdefault(f, []).append((names[x], names[y]))
        return names

    copies = {
        cell: place(model.objects[structure.object_of(cell)], 'cell', cell)
        for cell in structure.cells()
    }
    gluing: List[Pair] = []
    for f, x, y in structure.instances():
        anchor = CellNamer.instance_anchor(f, x, y)
        names = place(model.relation_blocks[f], 'rel', anchor)
        gluing.extend((names[model.iota0[f](a)], copies[x][a]) for a in model.iota0[f].source.cells())
        gluing.extend((names[model.iota1[f](b)], copies[y][b]) for b in model.iota1[f].source.cells())

    level = Level.LAX if model.target_level.at_least(Level.LAX) else Level.FAMILY
    disjoint = RelStructure(model.block_base, carriers, relations, Level.FAMILY)
    result, _ = quotient(disjoint, gluing, level, name=name or f"{model.name}({structure.name})")
    logger.info(f"realized {structure.size} cells through {model.name}: {result.size} cells")
    return result


def _realize_cells(structure: RelStructure, model: ModelAssignment) -> CellComplex:
    """セルごとに開いた立方体を一つ置き、インスタンスごとに M(R_f) のセルブロックで貼る"""
    blocks = {f: model.cell_block(f) for f in model.base.morphisms}
    cells = {cell: int(structure.object_of(cell)) for cell in structure.cells()}
    placed = [(x, y, blocks[f]) for f, x, y in structure.instances()]
    complex_ = glue_cell_blocks(cells, placed, model.complex_mode)
    logger.info(
        f"realized {structure.size} cells through {model.name}: "
        f"{len(complex_.gluing_attachments())} gluing attachments"
    )
    return complex_


# ===== 重心細分モデル =====

def tuple_dimension(coordinates: Sequence[Fraction]) -> int:
    return sum(1 for t in coordinates if t in _ENDPOINTS)


def subdivided_face(coordinates: Sequence[Fraction], word: str) -> Tuple[Fraction, ...]:
    """区間座標の j 番目を語の j 番目の文字で端点に置き換える"""
    letters = iter(word)
    face = []
    for t in coordinates:
        if t in _ENDPOINTS:
            letter = next(letters)
            if letter == '-':
                t = _ENDPOINTS[t][0]
            elif letter == '+':
                t = _ENDPOINTS[t][1]
        face.append(t)
    return tuple(face)


def subdivided_block(coordinates: Sequence[Tuple[Fraction, ...]], base: FiniteBaseCategory) -> RelStructure:
    """閉じた細分立方体の、与えた座標組で誘導される充満部分構造"""
    names = {t: FractionFormatter.tuple_name(t) for t in coordinates}
    carriers: Dict[str, List[str]] = {}
    relations: Dict[str, List[Pair]] = {}
    for t, cell in names.items():
        dim = str(tuple_dimension(t))
        carriers.setdefault(dim, []).append(cell)
        for w in base.morphisms_into(dim):
            face = subdivided_face(t, w)
            if face in names:
                relations.setdefault(w, []).append((cell, names[face]))
    return RelStructure(base, carriers, relations, Level.LAX)


def _open_cube(n: int) -> List[Tuple[Fraction, ...]]:
    return list(itertools.product(OPEN_COORDINATES, repeat=n))


def _insert(word: str, inner: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """語の 0 の位置に inner を順に入れ、'-' を 0、'+' を 1 にする"""
    filling = iter(inner)
    return tuple(next(filling) if letter == '0' else Fraction(0 if letter == '-' else 1) for letter in word)


def subdivision_model(max_dim: int) -> ModelAssignment:
    """
    重心細分モデル

    M(n) は開いた n 立方体の細分で、セルは {1/4, 1/2, 3/4} の組（次元は 1/2 でない座標の数）。
    M(R_w) は w が選ぶ開いた面の細分を付け加えたもの。
    """
    base = cube_category(max_dim)
    objects = {str(n): subdivided_block(_open_cube(n), base) for n in range(max_dim + 1)}
    blocks: Dict[str, RelStructure] = {}
    iota0: Dict[str, RelMorphism] = {}
    iota1: Dict[str, RelMorphism] = {}
    for w in base.sorted_morphisms():
        dom, cod = base.morphisms[w]
        if base.is_identity(w):
            block = objects[cod]
            blocks[w] = block
            iota0[w] = RelMorphism(block, block, {c: c for c in block.cells()})
            iota1[w] = iota0[w]
            continue
        face_part = [_insert(w, inner) for inner in _open_cube(int(dom))]
        block = subdivided_block(_open_cube(int(cod)) + face_part, base)
        blocks[w] = block
        iota0[w] = RelMorphism(objects[cod], block, {c: c for c in objects[cod].cells()})
        iota1[w] = RelMorphism(objects[dom], block, {
            FractionFormatter.tuple_name(inner): FractionFormatter.tuple_name(_insert(w, inner))
            for inner in _open_cube(int(dom))
        })
    return ModelAssignment(f"subdivision<={max_dim}", base, base, Level.LAX, objects, blocks, iota0, iota1)


# ===== 幾何的モデル =====

CUBE_CELL = 'cube'
BIG_CELL = 'big'
SMALL_CELL = 'small'


def _geometric_model(max_dim: int, mode: RealizationMode) -> ModelAssignment:
    """対象ごとに開いた立方体一つ、インスタンスごとに大きいセルと小さいセルを置くセル値モデル"""
    base = cube_category(max_dim)
    objects = {
        c: RelStructure(base, {c: [CUBE_CELL]}, {}, Level.FAMILY)
        for c in base.objects
    }
    blocks: Dict[str, RelStructure] = {}
    iota0: Dict[str, RelMorphism] = {}
    iota1: Dict[str, RelMorphism] = {}
    for w in base.sorted_morphisms():
        dom, cod = base.morphisms[w]
        if base.is_identity(w):
            blocks[w] = objects[cod]
            iota0[w] = iota1[w] = RelMorphism(objects[cod], objects[cod], {CUBE_CELL: CUBE_CELL})
            continue
        glued = mode is RealizationMode.STANDARD or attachment_kind(CofaceWord(w)) is AttachmentKind.ELEMENTARY
        relations = {w: [(BIG_CELL, SMALL_CELL)]} if glued else {}
        block = RelStructure(base, {cod: [BIG_CELL], dom: [SMALL_CELL]}, relations, Level.FAMILY)
        blocks[w] = block
        iota0[w] = RelMorphism(objects[cod], block, {CUBE_CELL: BIG_CELL})
        iota1[w] = RelMorphism(objects[dom], block, {CUBE_CELL: SMALL_CELL})
    input_level = Level.LAX if mode is RealizationMode.SEQUENTIAL else Level.FAMILY
    return ModelAssignment(
        f"{mode.value}<={max_dim}", base, base, Level.FAMILY, objects, blocks, iota0, iota1,
        target=ModelTarget.CELLS, complex_mode=mode, input_level=input_level,
    )


def standard_model(max_dim: int) -> ModelAssignment:
    """素朴な幾何的モデル（各インスタンスで大きいセルの面に小さいセルを貼る）"""
    return _geometric_model(max_dim, RealizationMode.STANDARD)


def sequential_model(max_dim: int) -> ModelAssignment:
    """逐次モデル（合成語のインスタンスは二つのセルの直和で何も貼らない）"""
    return _geometric_model(max_dim, RealizationMode.SEQUENTIAL)


def model_by_name(name: str, max_dim: int) -> ModelAssignment:
    models = {'subdivision': subdivision_model, 'standard': standard_model, 'sequential': sequential_model}
    try:
        return models[name](max_dim)
    except KeyError:
        raise DocumentError(f"unknown model {name!r}; expected one of {', '.join(sorted(models))}")


def _cube_dim(structure: RelStructure) -> int:
    if not structure.base.is_cubical:
        raise DimensionMismatchError(f"{structure.name or 'structure'} is not over a cubical base")
    return structure.base.max_dim


def subdivide(structure: RelStructure) -> RelStructure:
    """重心細分（細分モデルによる実現）。セル数は Σ 3^dim"""
    if not structure.level.at_least(Level.LAX):
        raise LevelError("subdivide expects a lax relational presheaf")
    n = _cube_dim(structure)
    model = subdivision_model(n)
    plain = rebase(structure, model.base)
    result = _realize_relations(plain, model, f"sd({structure.name})" if structure.name else '')
    return rebase(result, structure.base)


# ===== 幾何的実現 =====

def geometric_realization(structure: RelStructure,
                          mode: RealizationMode = RealizationMode.STANDARD) -> CellComplex:
    """
    セル複体としての幾何的実現（標準モデル・逐次モデルによる realize）

    セルは P のセルとその次元。標準モードでは対角以外の全インスタンスを貼り合わせ、
    逐次モードでは合成語のインスタンスを貼り合わせない記録として残す。
    """
    n = _cube_dim(structure)
    model = sequential_model(n) if mode is RealizationMode.SEQUENTIAL else standard_model(n)
    complex_ = realize(rebase(structure, model.base), model)
    assert isinstance(complex_, CellComplex)
    return complex_
