"""
関係構造モジュール

関係的族・lax 前層・部分前層・関数的前層を一つの値型 RelStructure で表す。
関係の対 (x, y) ∈ relations[f] （f: d → c）は x ∈ P(c)、y ∈ P(d) の向きで、
「y は x の f-面」と読む。
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from .basecat import (
    CofaceWord,
    FiniteBaseCategory,
    cube_category,
    decompose,
)
from .errors import (
    DimensionMismatchError,
    DocumentError,
    MorphismError,
    UnknownCellError,
    UnknownMorphismError,
)

# ログ設定
logger = logging.getLogger(__name__)

Pair = Tuple[str, str]
Instance = Tuple[str, str, str]  # (射, 大きいセル, 小さいセル)


class Level(Enum):
    """公理のレベル（FAMILY < LAX < PARTIAL < FUNCTIONAL）"""
    FAMILY = 'family'
    LAX = 'lax'
    PARTIAL = 'partial'
    FUNCTIONAL = 'functional'

    @property
    def rank(self) -> int:
        return _LEVEL_RANKS[self]

    def at_least(self, other: 'Level') -> bool:
        return self.rank >= other.rank

    @classmethod
    def parse(cls, text: str) -> 'Level':
        try:
            return cls(str(text).lower())
        except ValueError:
            raise DocumentError(f"unknown level {text!r}; expected one of family, lax, partial, functional")


_LEVEL_RANKS = {Level.FAMILY: 0, Level.LAX: 1, Level.PARTIAL: 2, Level.FUNCTIONAL: 3}


def min_level(levels: Iterable[Level]) -> Level:
    levels = list(levels)
    if not levels:
        return Level.FUNCTIONAL
    return min(levels, key=lambda level: level.rank)


@dataclass(frozen=True)
class RelStructure:
    """
    関係構造（関係的前層）

    carriers: 対象 → セル集合、relations: 射 → 対の集合。
    セル識別子は構造全体で一意でなければならない。
    """
    base: FiniteBaseCategory
    carriers: Mapping[str, FrozenSet[str]]
    relations: Mapping[str, FrozenSet[Pair]]
    level: Level = Level.FAMILY
    name: str = field(default='', compare=False)
    _object_of: Dict[str, str] = field(default_factory=dict, init=False, repr=False, compare=False)
    _faces: Dict[Tuple[str, str], Tuple[str, ...]] = field(default_factory=dict, init=False, repr=False, compare=False)
    _cofaces: Dict[Tuple[str, str], Tuple[str, ...]] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        base = self.base
        for obj in self.carriers:
            if obj not in base.objects:
                raise DocumentError(f"carrier given for unknown object {obj!r}")
        for f in self.relations:
            if not base.has_morphism(f):
                raise UnknownMorphismError(f"relation given for unknown morphism {f!r}")

        carriers = {obj: frozenset(self.carriers.get(obj, ())) for obj in base.objects}
        object_of: Dict[str, str] = {}
        for obj, cells in carriers.items():
            for cell in cells:
                if cell in object_of:
                    raise DocumentError(f"cell {cell!r} appears over both {object_of[cell]!r} and {obj!r}")
                object_of[cell] = obj

        relations: Dict[str, FrozenSet[Pair]] = {}
        faces: Dict[Tuple[str, str], List[str]] = {}
        cofaces: Dict[Tuple[str, str], List[str]] = {}
        for f in base.sorted_morphisms():
            pairs = frozenset((str(x), str(y)) for x, y in self.relations.get(f, ()))
            dom, cod = base.morphisms[f]
            for x, y in pairs:
                if object_of.get(x) != cod:
                    raise UnknownCellError(f"pair ({x}, {y}) for {f!r}: {x!r} is not a cell over {cod!r}")
                if object_of.get(y) != dom:
                    raise UnknownCellError(f"pair ({x}, {y}) for {f!r}: {y!r} is not a cell over {dom!r}")
                faces.setdefault((x, f), []).append(y)
                cofaces.setdefault((y, f), []).append(x)
            relations[f] = pairs

        object.__setattr__(self, 'carriers', carriers)
        object.__setattr__(self, 'relations', relations)
        object.__setattr__(self, '_object_of', object_of)
        object.__setattr__(self, '_faces', {key: tuple(sorted(v)) for key, v in faces.items()})
        object.__setattr__(self, '_cofaces', {key: tuple(sorted(v)) for key, v in cofaces.items()})

    # ===== セル =====

    def cells(self) -> List[str]:
        """対象の順、名前の順に整列した全セル"""
        order = {obj: i for i, obj in enumerate(self.base.objects)}
        return sorted(self._object_of, key=lambda cell: (order[self._object_of[cell]], cell))

    def carrier(self, obj: str) -> FrozenSet[str]:
        return self.carriers[obj]

    def has_cell(self, cell: str) -> bool:
        return cell in self._object_of

    def object_of(self, cell: str) -> str:
        try:
            return self._object_of[cell]
        except KeyError:
            raise UnknownCellError(f"unknown cell {cell!r}")

    def dim(self, cell: str) -> int:
        """立方体的な基底でのセルの次元"""
        return int(self.object_of(cell))

    @property
    def size(self) -> int:
        return len(self._object_of)

    @property
    def is_empty(self) -> bool:
        return not self._object_of

    # ===== 関係 =====

    def relation(self, f: str) -> FrozenSet[Pair]:
        try:
            return self.relations[f]
        except KeyError:
            raise UnknownMorphismError(f"unknown morphism {f!r}")

    def related(self, x: str, f: str, y: str) -> bool:
        return (x, y) in self.relations.get(f, ())

    def faces_along(self, x: str, f: str) -> Tuple[str, ...]:
        """x →_f y となる y の一覧"""
        return self._faces.get((x, f), ())

    def cofaces_along(self, y: str, f: str) -> Tuple[str, ...]:
        """x →_f y となる x の一覧"""
        return self._cofaces.get((y, f), ())

    def faces(self, x: str) -> List[Tuple[str, str]]:
        obj = self.object_of(x)
        return [(f, y) for f in self.base.morphisms_into(obj) for y in self.faces_along(x, f)]

    def cofaces(self, y: str) -> List[Tuple[str, str]]:
        obj = self.object_of(y)
        return [(f, x) for f in self.base.morphisms_from(obj) for x in self.cofaces_along(y, f)]

    def instances(self, include_identities: bool = True) -> List[Instance]:
        """全ての関係インスタンス (f, x, y) を整列して返す"""
        result = []
        for f in self.base.sorted_morphisms():
            if not include_identities and self.base.is_identity(f):
                continue
            result.extend((f, x, y) for x, y in sorted(self.relations[f]))
        return result

    @property
    def pair_count(self) -> int:
        return sum(len(pairs) for pairs in self.relations.values())

    # ===== 派生 =====

    def with_level(self, level: Level) -> 'RelStructure':
        return replace(self, level=level)

    def renamed(self, name: str) -> 'RelStructure':
        return replace(self, name=name)


@dataclass(frozen=True)
class RelMorphism:
    """関係構造の射（oplax 自然変換）。成分はセル → セルの写像として持つ"""
    source: RelStructure
    target: RelStructure
    components: Mapping[str, str]
    name: str = field(default='', compare=False)

    def __call__(self, cell: str) -> str:
        try:
            return self.components[cell]
        except KeyError:
            raise MorphismError(f"component undefined on cell {cell!r}")

    def component(self, obj: str) -> Dict[str, str]:
        return {cell: self.components[cell] for cell in sorted(self.source.carrier(obj)) if cell in self.components}

    def image(self) -> FrozenSet[str]:
        return frozenset(self.components.values())

    def fiber(self, cell: str) -> List[str]:
        """cell に写る元のセル"""
        return sorted(x for x, y in self.components.items() if y == cell)


# ===== 射の判定 =====

def _check_total(alpha: RelMorphism) -> None:
    if alpha.source.base != alpha.target.base:
        raise MorphismError("source and target live over different base categories")
    for cell in alpha.source.cells():
        if cell not in alpha.components:
            raise MorphismError(f"component is not total: no image for {cell!r}")
        image = alpha.components[cell]
        if not alpha.target.has_cell(image):
            raise MorphismError(f"{cell!r} is sent to unknown cell {image!r}")
        if alpha.target.object_of(image) != alpha.source.object_of(cell):
            raise MorphismError(f"{cell!r} is sent to {image!r} over a different object")


def is_morphism(alpha: RelMorphism) -> Tuple[bool, List[Instance]]:
    """
    関係の保存を検査する

    Returns:
        Tuple[bool, List]: (射かどうか, 保存されない関係インスタンスの一覧)

    Raises:
        MorphismError: 成分が全域でない・対象をまたぐ場合
    """
    _check_total(alpha)
    witnesses = [
        (f, x, y) for f, x, y in alpha.source.instances()
        if not alpha.target.related(alpha.components[x], f, alpha.components[y])
    ]
    return not witnesses, witnesses


def is_mono(alpha: RelMorphism) -> bool:
    _check_total(alpha)
    return len(set(alpha.components[c] for c in alpha.source.cells())) == alpha.source.size


def is_embedding(alpha: RelMorphism) -> bool:
    """単射かつ関係を反映する（モデル論的な埋め込み）"""
    if not is_mono(alpha):
        return False
    inverse = {alpha.components[c]: c for c in alpha.source.cells()}
    for f, x, y in alpha.target.instances():
        if x in inverse and y in inverse and not alpha.source.related(inverse[x], f, inverse[y]):
            return False
    return True


def is_pointwise_surjective(alpha: RelMorphism) -> bool:
    _check_total(alpha)
    return alpha.image() >= frozenset(alpha.target.cells())


def identity_morphism(structure: RelStructure) -> RelMorphism:
    return RelMorphism(structure, structure, {c: c for c in structure.cells()}, name=f"id({structure.name})")


def compose_morphisms(first: RelMorphism, second: RelMorphism) -> RelMorphism:
    """second ∘ first"""
    if first.target != second.source:
        raise MorphismError("morphisms are not composable: target and source differ")
    return RelMorphism(
        first.source,
        second.target,
        {c: second(first(c)) for c in first.source.cells()},
    )


# ===== 部分構造 =====

def full_substructure(structure: RelStructure, cells: Iterable[str], name: str = '') -> RelStructure:
    """
    セル集合で誘導される充満部分構造

    Raises:
        UnknownCellError: 構造にないセルが含まれる場合
    """
    chosen = frozenset(cells)
    for cell in chosen:
        structure.object_of(cell)
    carriers = {obj: cs & chosen for obj, cs in structure.carriers.items()}
    relations = {
        f: frozenset((x, y) for x, y in pairs if x in chosen and y in chosen)
        for f, pairs in structure.relations.items()
    }
    return RelStructure(structure.base, carriers, relations, structure.level, name=name or structure.name)


def inclusion(sub: RelStructure, structure: RelStructure) -> RelMorphism:
    return RelMorphism(sub, structure, {c: c for c in sub.cells()})


# ===== 代表的な構造 =====

def cell_of_morphism(f: str) -> str:
    """表現可能前層 y(c) のセル名"""
    return f"[{f}]"


def representable(base: FiniteBaseCategory, c: str) -> RelStructure:
    """
    表現可能前層 y(c)

    セルは c への射 f（名前 "[f]"）、[f] →_g [f∘g]。関数的レベル。
    """
    carriers: Dict[str, List[str]] = {}
    relations: Dict[str, List[Pair]] = {}
    for f in base.morphisms_into(c):
        d = base.dom(f)
        carriers.setdefault(d, []).append(cell_of_morphism(f))
        for g in base.morphisms_into(d):
            relations.setdefault(g, []).append((cell_of_morphism(f), cell_of_morphism(base.compose(g, f))))
    return RelStructure(base, carriers, relations, Level.FUNCTIONAL, name=f"y({c})")


def precubical_from_faces(cells: Mapping[str, int],
                          faces: Mapping[Tuple[str, int, str], str],
                          base: Optional[FiniteBaseCategory] = None,
                          name: str = '') -> RelStructure:
    """
    基本面写像から通常の前立方体集合を組み立てる

    Args:
        cells: セル → 次元
        faces: (セル, 位置 i, 符号) → 面のセル（d^sign_{n-1,i} による面）
        base: 基底圏（省略時は最大次元で切り詰めた立方体圏）

    Returns:
        RelStructure: 合成語の面は分解を通して導出した関数的構造
    """
    max_dim = max(cells.values(), default=0)
    if base is None:
        base = cube_category(max_dim)
    elif base.max_dim is None or base.max_dim < max_dim:
        raise DimensionMismatchError(f"base {base.name} cannot hold cells of dimension {max_dim}")

    carriers: Dict[str, List[str]] = {}
    for cell, dim in cells.items():
        carriers.setdefault(str(dim), []).append(cell)

    relations: Dict[str, List[Pair]] = {}
    for cell, dim in sorted(cells.items()):
        for f in base.morphisms_into(str(dim)):
            current = cell
            for coface in reversed(decompose(CofaceWord(f))):
                key = (current, coface.i, coface.sign)
                if key not in faces:
                    raise DocumentError(f"cell {current!r} has no face d{coface.sign}_{coface.i}")
                current = faces[key]
            relations.setdefault(f, []).append((cell, current))
    return RelStructure(base, carriers, relations, Level.FUNCTIONAL, name=name)


def rebase(structure: RelStructure, base: FiniteBaseCategory) -> RelStructure:
    """
    同じ名前の対象・射を持つ別の基底（より大きな切り詰め等）へ載せ替える

    Raises:
        DimensionMismatchError: 新しい基底にない対象・射にデータがある場合
    """
    for obj, cells in structure.carriers.items():
        if cells and obj not in base.objects:
            raise DimensionMismatchError(f"cells over {obj!r} do not fit into base {base.name}")
    for f, pairs in structure.relations.items():
        if pairs and not base.has_morphism(f):
            raise DimensionMismatchError(f"relation {f!r} does not fit into base {base.name}")
    carriers = {obj: cells for obj, cells in structure.carriers.items() if obj in base.objects}
    relations = {f: pairs for f, pairs in structure.relations.items() if base.has_morphism(f)}
    return RelStructure(base, carriers, relations, structure.level, name=structure.name)
