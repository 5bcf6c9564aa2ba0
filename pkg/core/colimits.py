"""
余極限モジュール (colimits)

直和と余等化子、およびそれらに帰着させた押し出し・有限余極限。
family レベルでは合成閉包をとらず、lax レベルでは商のあとで閉包をとる。
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cell_names import CellNamer
from .errors import DimensionMismatchError, MorphismError
from .quotients import quotient_by_pairs
from .structures import Level, Pair, RelMorphism, RelStructure, compose_morphisms, min_level
from .transforms import close_composition

# ログ設定
logger = logging.getLogger(__name__)


def _colimit_level(level: Level) -> Level:
    # 商は部分性・関数性を保たないので family か lax に落とす
    return Level.LAX if level.at_least(Level.LAX) else Level.FAMILY


def coproduct(structures: Sequence[RelStructure],
              prefixes: Optional[Sequence[str]] = None,
              name: str = '') -> Tuple[RelStructure, List[RelMorphism]]:
    """
    直和（セルには成分の番号を前置する）

    Args:
        structures: 同じ基底上の構造
        prefixes: 前置する名前（省略時は "0", "1", ...）

    Returns:
        Tuple[RelStructure, List[RelMorphism]]: (直和, 包含射の一覧)
    """
    if not structures:
        raise DimensionMismatchError("coproduct needs at least one structure to fix the base category")
    base = structures[0].base
    for structure in structures[1:]:
        if structure.base != base:
            raise DimensionMismatchError("coproduct summands live over different base categories")
    if prefixes is None:
        prefixes = [str(i) for i in range(len(structures))]
    if len(set(prefixes)) != len(prefixes) or len(prefixes) != len(structures):
        raise DimensionMismatchError("coproduct prefixes must be distinct, one per summand")

    carriers: Dict[str, set] = {obj: set() for obj in base.objects}
    relations: Dict[str, set] = {f: set() for f in base.morphisms}
    renamings: List[Dict[str, str]] = []
    for prefix, structure in zip(prefixes, structures):
        renaming = {cell: CellNamer.prefixed(prefix, cell) for cell in structure.cells()}
        renamings.append(renaming)
        for obj, cells in structure.carriers.items():
            carriers[obj].update(renaming[c] for c in cells)
        for f, pairs in structure.relations.items():
            relations[f].update((renaming[x], renaming[y]) for x, y in pairs)

    total = RelStructure(base, carriers, relations, min_level(s.level for s in structures), name=name)
    injections = [
        RelMorphism(structure, total, renaming, name=f"inj{prefix}")
        for prefix, structure, renaming in zip(prefixes, structures, renamings)
    ]
    logger.debug(f"coproduct of {len(structures)} structures: {total.size} cells")
    return total, injections


def quotient(structure: RelStructure,
             pairs: Iterable[Pair],
             level: Level = Level.LAX,
             name: str = '') -> Tuple[RelStructure, RelMorphism]:
    """
    pairs で生成される同値関係による商

    代表元は名前が辞書順最小のセル。level が lax なら合成閉包をとる。

    Returns:
        Tuple[RelStructure, RelMorphism]: (商, 射影)
    """
    target_level = _colimit_level(level)
    result, projection = quotient_by_pairs(structure, pairs, Level.FAMILY, name=name)
    if target_level is Level.LAX:
        result = close_composition(result)
    return result, RelMorphism(structure, result, dict(projection.components), name='projection')


def coequalizer(alpha: RelMorphism,
                beta: RelMorphism,
                level: Level = Level.LAX,
                name: str = '') -> Tuple[RelStructure, RelMorphism]:
    """
    平行な射 α, β: P ⇉ Q の余等化子

    Returns:
        Tuple[RelStructure, RelMorphism]: (余等化子, 射影 Q → C)
    """
    if alpha.source != beta.source or alpha.target != beta.target:
        raise MorphismError("coequalizer needs parallel morphisms")
    pairs = [(alpha(x), beta(x)) for x in alpha.source.cells()]
    return quotient(alpha.target, pairs, level, name=name)


def pushout(left: RelMorphism,
            right: RelMorphism,
            level: Level = Level.LAX,
            name: str = '') -> Tuple[RelStructure, RelMorphism, RelMorphism]:
    """
    スパン B ← A → C の押し出し

    Returns:
        Tuple: (押し出し, B からの余錐の射, C からの余錐の射)
    """
    if left.source != right.source:
        raise MorphismError("pushout needs a span with a common source")
    total, (inj_left, inj_right) = coproduct([left.target, right.target], prefixes=['0', '1'])
    pairs = [(inj_left(left(a)), inj_right(right(a))) for a in left.source.cells()]
    result, projection = quotient(total, pairs, level, name=name)
    return (
        result,
        compose_morphisms(inj_left, projection),
        compose_morphisms(inj_right, projection),
    )


@dataclass
class Diagram:
    """名前付きの対象と射からなる有限図式"""
    objects: Dict[str, RelStructure] = field(default_factory=dict)
    arrows: Dict[str, Tuple[str, str, RelMorphism]] = field(default_factory=dict)

    def add_object(self, name: str, structure: RelStructure) -> None:
        self.objects[name] = structure

    def add_arrow(self, name: str, source: str, target: str, morphism: RelMorphism) -> None:
        if source not in self.objects or target not in self.objects:
            raise MorphismError(f"arrow {name!r} refers to an unknown object")
        if morphism.source != self.objects[source] or morphism.target != self.objects[target]:
            raise MorphismError(f"arrow {name!r} does not go from {source!r} to {target!r}")
        self.arrows[name] = (source, target, morphism)


def finite_colimit(diagram: Diagram,
                   level: Level = Level.LAX,
                   name: str = '') -> Tuple[RelStructure, Dict[str, RelMorphism]]:
    """
    有限図式の余極限（直和を各射で余等化）

    セルは対象名を前置した名前 "A:cell" の代表元で表す。

    Returns:
        Tuple[RelStructure, Dict[str, RelMorphism]]: (余極限, 対象名 → 余錐の射)
    """
    names = list(diagram.objects)
    if not names:
        raise DimensionMismatchError("cannot take the colimit of an empty diagram without a base category")
    total, injections = coproduct([diagram.objects[n] for n in names], prefixes=names)
    by_name = dict(zip(names, injections))
    pairs = []
    for source, target, morphism in diagram.arrows.values():
        for x in morphism.source.cells():
            pairs.append((by_name[source](x), by_name[target](morphism(x))))
    result, projection = quotient(total, pairs, level, name=name)
    cocone = {n: compose_morphisms(by_name[n], projection) for n in names}
    logger.info(f"colimit of {len(names)} objects and {len(diagram.arrows)} arrows: {result.size} cells")
    return result, cocone
