"""
射の全探索

関係構造の間の射をバックトラックで列挙する。余反射・モデル条件の検査・
blowup の埋め込み探索はすべてここを通る。同型判定は networkx の
DiGraphMatcher にラベル付き有向グラフとして渡す。
"""

import logging
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

import networkx as nx
from networkx.algorithms import isomorphism

from .structures import RelMorphism, RelStructure

# ログ設定
logger = logging.getLogger(__name__)

CandidateFilter = Callable[[str], Optional[Iterable[str]]]


def _search_order(source: RelStructure, fixed: Mapping[str, str]) -> List[str]:
    """既に決まったセルに多く繋がるセルから順に並べる"""
    remaining = [c for c in source.cells() if c not in fixed]
    placed = set(fixed)
    order: List[str] = []
    neighbours = {
        c: {y for _, y in source.faces(c)} | {x for _, x in source.cofaces(c)}
        for c in remaining
    }
    while remaining:
        best = max(
            remaining,
            key=lambda c: (len(neighbours[c] & placed), source.dim(c) if source.base.is_cubical else 0, -remaining.index(c)),
        )
        remaining.remove(best)
        order.append(best)
        placed.add(best)
    return order


def enumerate_morphisms(source: RelStructure,
                        target: RelStructure,
                        fixed: Optional[Mapping[str, str]] = None,
                        injective: bool = False,
                        candidates: Optional[CandidateFilter] = None,
                        limit: Optional[int] = None) -> Iterator[Dict[str, str]]:
    """
    source → target の射（成分の辞書）を列挙する

    Args:
        fixed: 予め決めておく成分
        injective: 単射のみ
        candidates: セル → 許す像（None なら制限なし）
        limit: 列挙の上限

    Yields:
        Dict[str, str]: 関係を保存する成分の割り当て
    """
    fixed = dict(fixed or {})
    for cell, image in fixed.items():
        if not target.has_cell(image) or target.object_of(image) != source.object_of(cell):
            return
    # 固定部分どうしの関係
    for f, x, y in source.instances():
        if x in fixed and y in fixed and not target.related(fixed[x], f, fixed[y]):
            return
    if injective and len(set(fixed.values())) != len(fixed):
        return

    order = _search_order(source, fixed)
    assignment: Dict[str, str] = dict(fixed)
    used = set(fixed.values())
    out_edges = {c: source.faces(c) for c in order}
    in_edges = {c: source.cofaces(c) for c in order}
    count = 0

    def options(cell: str) -> List[str]:
        pool = set(target.carrier(source.object_of(cell)))
        if candidates is not None:
            allowed = candidates(cell)
            if allowed is not None:
                pool &= set(allowed)
        for f, y in out_edges[cell]:
            if y in assignment:
                pool &= set(target.cofaces_along(assignment[y], f))
            elif y == cell:
                pool = {c for c in pool if target.related(c, f, c)}
        for f, x in in_edges[cell]:
            if x in assignment:
                pool &= set(target.faces_along(assignment[x], f))
        if injective:
            pool -= used
        return sorted(pool)

    def extend(position: int) -> Iterator[Dict[str, str]]:
        nonlocal count
        if limit is not None and count >= limit:
            return
        if position == len(order):
            count += 1
            yield dict(assignment)
            return
        cell = order[position]
        for image in options(cell):
            assignment[cell] = image
            used.add(image)
            yield from extend(position + 1)
            used.discard(image)
            del assignment[cell]
            if limit is not None and count >= limit:
                return

    yield from extend(0)


def list_morphisms(source: RelStructure, target: RelStructure, **kwargs) -> List[RelMorphism]:
    """enumerate_morphisms の結果を RelMorphism のリストにする"""
    found = [RelMorphism(source, target, components) for components in enumerate_morphisms(source, target, **kwargs)]
    logger.debug(f"found {len(found)} morphisms {source.name or '?'} → {target.name or '?'}")
    return found


def count_morphisms(source: RelStructure, target: RelStructure, **kwargs) -> int:
    return sum(1 for _ in enumerate_morphisms(source, target, **kwargs))


def exists_morphism(source: RelStructure, target: RelStructure, **kwargs) -> Optional[Dict[str, str]]:
    for components in enumerate_morphisms(source, target, limit=1, **kwargs):
        return components
    return None


# ===== 同型判定 =====

def to_digraph(structure: RelStructure) -> nx.DiGraph:
    """
    ラベル付き有向グラフへの変換

    頂点属性 obj、辺 x → y の属性 morphisms は x →_f y となる f の組。
    """
    graph = nx.DiGraph()
    for cell in structure.cells():
        graph.add_node(cell, obj=structure.object_of(cell))
    labels: Dict[Tuple[str, str], List[str]] = {}
    for f, x, y in structure.instances():
        labels.setdefault((x, y), []).append(f)
    for (x, y), morphisms in labels.items():
        graph.add_edge(x, y, morphisms=tuple(sorted(morphisms)))
    return graph


def find_isomorphism(first: RelStructure, second: RelStructure) -> Optional[Dict[str, str]]:
    """同型写像 first → second を一つ返す（なければ None）"""
    if first.base != second.base:
        return None
    if first.size != second.size or first.pair_count != second.pair_count:
        return None
    for obj in first.base.objects:
        if len(first.carrier(obj)) != len(second.carrier(obj)):
            return None
    matcher = isomorphism.DiGraphMatcher(
        to_digraph(first),
        to_digraph(second),
        node_match=lambda a, b: a['obj'] == b['obj'],
        edge_match=lambda a, b: a['morphisms'] == b['morphisms'],
    )
    if matcher.is_isomorphic():
        return dict(matcher.mapping)
    return None


def are_isomorphic(first: RelStructure, second: RelStructure) -> bool:
    return find_isomorphism(first, second) is not None
