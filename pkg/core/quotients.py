"""
商構造

同値関係で生成されたクラスにセルをまとめ、関係を代表元に誘導する。
余等化子・反射・実現の各段で共有する基本操作。
"""

import logging
from typing import Dict, Iterable, List, Set, Tuple

from networkx.utils import UnionFind

from .structures import Level, Pair, RelMorphism, RelStructure

# ログ設定
logger = logging.getLogger(__name__)

def merge_classes(structure: RelStructure, pairs: Iterable[Pair]) -> List[Set[str]]:
    """pairs で生成される同値類（一元集合を含む）"""
    finder = UnionFind(structure.cells())
    for a, b in pairs:
        finder.union(a, b)
    return [set(block) for block in finder.to_sets()]


def representative_map(structure: RelStructure, pairs: Iterable[Pair]) -> Dict[str, str]:
    """
    セル → 代表元

    代表元は名前が辞書順最小の元。
    """
    mapping: Dict[str, str] = {}
    for block in merge_classes(structure, pairs):
        representative = min(block)
        for cell in block:
            mapping[cell] = representative
    return mapping


def induced_structure(structure: RelStructure,
                      mapping: Dict[str, str],
                      level: Level,
                      name: str = '') -> RelStructure:
    """代表元への写像で像をとった構造（関係は代表元どうしに誘導）"""
    carriers = {obj: {mapping[c] for c in cells} for obj, cells in structure.carriers.items()}
    relations = {
        f: {(mapping[x], mapping[y]) for x, y in pairs}
        for f, pairs in structure.relations.items()
    }
    return RelStructure(structure.base, carriers, relations, level, name=name or structure.name)


def quotient_by_pairs(structure: RelStructure,
                      pairs: Iterable[Pair],
                      level: Level,
                      name: str = '') -> Tuple[RelStructure, RelMorphism]:
    """
    pairs で生成される同値関係による商（合成閉包はとらない）

    Returns:
        Tuple[RelStructure, RelMorphism]: (商, 射影)
    """
    mapping = representative_map(structure, pairs)
    result = induced_structure(structure, mapping, level, name)
    logger.debug(f"quotient: {structure.size} cells → {result.size} classes")
    return result, RelMorphism(structure, result, mapping)


def cofiber_merges(structure: RelStructure) -> List[Pair]:
    """z →_f x かつ z →_f y のとき x ∼ y となる対（同じセルの同じ f-面どうし）"""
    merges: List[Pair] = []
    for f in structure.base.sorted_morphisms():
        cod = structure.base.cod(f)
        for z in sorted(structure.carrier(cod)):
            faces = structure.faces_along(z, f)
            merges.extend((faces[0], other) for other in faces[1:])
    return merges
