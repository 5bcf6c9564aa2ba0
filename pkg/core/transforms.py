"""
変換モジュール (transforms)

合成閉包、包含 U: Psh → RelPsh とその左右随伴、部分前層への反射、
局所埋め込み・離散ファイブレーションの判定。
"""

import logging
from typing import Dict, List, Set, Tuple, TypedDict

from .cell_names import CellNamer
from .errors import LevelError, MorphismError
from .morphism_search import enumerate_morphisms
from .quotients import cofiber_merges, quotient_by_pairs
from .structures import (
    Level,
    RelMorphism,
    RelStructure,
    cell_of_morphism,
    is_morphism,
    representable,
)
from .validation import PartialityReading, validate_level

# ログ設定
logger = logging.getLogger(__name__)


# ===== 合成閉包 =====

def close_composition(structure: RelStructure) -> RelStructure:
    """
    恒等関係と合成で閉じた lax 構造を作る（不動点まで反復）

    既に lax 以上と宣言された構造はそのまま返す。DEBUG ログが有効なときは
    宣言を検査し、満たしていなければ警告する。
    """
    if structure.level.at_least(Level.LAX):
        if logger.isEnabledFor(logging.DEBUG):
            report = validate_level(structure, Level.LAX)
            if not report.ok:
                logger.warning(
                    f"{structure.name or 'structure'} is declared {structure.level.value} "
                    f"but is not lax: {report.lines()[0]}"
                )
        return structure

    base = structure.base
    relations: Dict[str, Set[Tuple[str, str]]] = {f: set(pairs) for f, pairs in structure.relations.items()}
    faces: Dict[Tuple[str, str], Set[str]] = {}
    for f, pairs in relations.items():
        for x, y in pairs:
            faces.setdefault((x, f), set()).add(y)

    def add(f: str, x: str, y: str) -> bool:
        if (x, y) in relations[f]:
            return False
        relations[f].add((x, y))
        faces.setdefault((x, f), set()).add(y)
        return True

    for obj in base.objects:
        ident = base.identity(obj)
        for cell in structure.carrier(obj):
            add(ident, cell, cell)

    pairs_of_morphisms = [(g, f, base.compose(g, f)) for g, f in base.composable_pairs()]
    rounds = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        for g, f, composite in pairs_of_morphisms:
            for x, y in list(relations[f]):
                for z in list(faces.get((y, g), ())):
                    changed |= add(composite, x, z)

    logger.debug(f"composition closure of {structure.name or 'structure'} reached fixpoint after {rounds} rounds")
    return RelStructure(base, structure.carriers, relations, Level.LAX, name=structure.name)


def underlying(structure: RelStructure) -> RelStructure:
    """
    通常の前層を関係的前層とみなす（包含 U）

    Raises:
        LevelError: 関数的レベルを満たさない場合
    """
    report = validate_level(structure, Level.FUNCTIONAL)
    if not report.ok:
        raise LevelError(f"underlying() needs an ordinary presheaf: {report.lines()[0]}")
    return structure.with_level(Level.LAX)


# ===== 左随伴 L =====

def _free_faces(structure: RelStructure) -> RelStructure:
    """
    面を自由に付け加えた段階 P_0

    (x, g) は x の g-面を表す形式的なセル "x·g"（g が恒等なら x 自身）。
    """
    base = structure.base

    def name(cell: str, g: str) -> str:
        return cell if base.is_identity(g) else CellNamer.fresh_face(cell, g)

    carriers: Dict[str, Set[str]] = {obj: set(cells) for obj, cells in structure.carriers.items()}
    relations: Dict[str, Set[Tuple[str, str]]] = {f: set(pairs) for f, pairs in structure.relations.items()}
    for x in structure.cells():
        for g in base.morphisms_into(structure.object_of(x)):
            source = name(x, g)
            if not base.is_identity(g):
                carriers[base.dom(g)].add(source)
            for h in base.morphisms_into(base.dom(g)):
                relations[h].add((source, name(x, base.compose(h, g))))
    return RelStructure(base, carriers, relations, Level.FAMILY, name=structure.name)


def _quotient_until_single_valued(stage: RelStructure, level: Level) -> Tuple[RelStructure, Dict[str, str]]:
    """共通の余面を持つ面を同一視し、合成閉包をとり直すことを不動点まで繰り返す"""
    mapping = {c: c for c in stage.cells()}
    current = close_composition(stage)
    rounds = 0
    while True:
        merges = cofiber_merges(current)
        if not merges:
            break
        rounds += 1
        current, projection = quotient_by_pairs(current, merges, Level.FAMILY)
        mapping = {c: projection(image) for c, image in mapping.items()}
        current = close_composition(current)
    logger.debug(f"quotient stage finished after {rounds} rounds with {current.size} cells")
    return current.with_level(level), mapping


def reflect_presheaf(structure: RelStructure) -> Tuple[RelStructure, RelMorphism]:
    """
    左随伴 L: RelPsh → Psh の明示的構成

    段階 P_0（面の自由付加）、P_1（合成閉包）、P_2（共通余面による商）の順。
    新しいセルは "x·w"、同値類の代表は名前が辞書順最小のセル。

    Returns:
        Tuple[RelStructure, RelMorphism]: (L(P), 単位 P → U(L(P)))
    """
    if not structure.level.at_least(Level.LAX):
        raise LevelError("reflect_presheaf expects a lax relational presheaf")
    result, mapping = _quotient_until_single_valued(_free_faces(structure), Level.FUNCTIONAL)
    result = result.renamed(f"L({structure.name})" if structure.name else '')

    report = validate_level(result, Level.FUNCTIONAL)
    if not report.ok:
        logger.warning(f"reflection produced a non-functional structure: {report.lines()[0]}")

    unit = RelMorphism(structure, result.with_level(Level.LAX), {c: mapping[c] for c in structure.cells()}, name='unit')
    logger.info(f"reflected {structure.size} cells into a presheaf with {result.size} cells")
    return result, unit


def reflect_partial(structure: RelStructure) -> RelStructure:
    """
    部分前層への反射（面の自由付加なしで商と閉包のみ）

    既に部分的（面の関数性）な構造はそのまま返す。
    """
    if not structure.level.at_least(Level.LAX):
        raise LevelError("reflect_partial expects a lax relational presheaf")
    if structure.level.at_least(Level.PARTIAL):
        return structure
    if validate_level(structure, Level.PARTIAL, PartialityReading.FACE).ok:
        return structure.with_level(Level.PARTIAL)
    result, _ = _quotient_until_single_valued(structure, Level.PARTIAL)
    logger.info(f"partial reflection: {structure.size} cells → {result.size} cells")
    return result


# ===== 右随伴 R =====

def _assignment_key(components: Dict[str, str]) -> Tuple[Tuple[str, str], ...]:
    return tuple(sorted(components.items()))


def coreflect_presheaf(structure: RelStructure) -> Tuple[RelStructure, RelMorphism]:
    """
    右随伴 R: RelPsh → Psh

    R(P)(c) は U(y(c)) → P の射全体。面は余面との前合成、余単位は頂上セルでの値。
    頂上セルの像が同じ射が複数あれば "top<面の像,...>" で区別する。

    Returns:
        Tuple[RelStructure, RelMorphism]: (R(P), 余単位 U(R(P)) → P)
    """
    if not structure.level.at_least(Level.LAX):
        raise LevelError("coreflect_presheaf expects a lax relational presheaf")
    base = structure.base

    names: Dict[str, Dict[Tuple[Tuple[str, str], ...], str]] = {}
    selections: Dict[str, List[Dict[str, str]]] = {}
    tops: Dict[str, str] = {}
    carriers: Dict[str, List[str]] = {}
    for c in base.objects:
        cube = representable(base, c).with_level(Level.LAX)
        top = cell_of_morphism(base.identity(c))
        found = list(enumerate_morphisms(cube, structure))
        by_top: Dict[str, List[Dict[str, str]]] = {}
        for components in found:
            by_top.setdefault(components[top], []).append(components)
        boundary = [cell_of_morphism(w) for w in base.morphisms_into(c) if not base.is_identity(w)]
        names[c] = {}
        selections[c] = found
        for image, group in sorted(by_top.items()):
            for components in group:
                if len(group) == 1:
                    cell = image
                else:
                    cell = CellNamer.selection(image, [components[b] for b in boundary])
                names[c][_assignment_key(components)] = cell
                tops[cell] = image
                carriers.setdefault(c, []).append(cell)
        logger.debug(f"coreflection: {len(found)} cells over {c!r}")

    relations: Dict[str, List[Tuple[str, str]]] = {}
    for c in base.objects:
        for components in selections[c]:
            cell = names[c][_assignment_key(components)]
            for f in base.morphisms_into(c):
                d = base.dom(f)
                face = {
                    cell_of_morphism(w): components[cell_of_morphism(base.compose(w, f))]
                    for w in base.morphisms_into(d)
                }
                relations.setdefault(f, []).append((cell, names[d][_assignment_key(face)]))

    result = RelStructure(base, carriers, relations, Level.FUNCTIONAL,
                          name=f"R({structure.name})" if structure.name else '')
    counit = RelMorphism(result.with_level(Level.LAX), structure, tops, name='counit')
    logger.info(f"coreflected {structure.size} cells into a presheaf with {result.size} cells")
    return result, counit


# ===== 局所埋め込み =====

def local_embedding_violations(alpha: RelMorphism) -> List[Tuple[str, str, str, str]]:
    """
    a ≠ b, a →_f c, b →_f c なのに α(a) = α(b) となる組 (f, a, b, c)
    """
    violations = []
    source = alpha.source
    for c in source.cells():
        for f in source.base.morphisms_from(source.object_of(c)):
            seen: Dict[str, str] = {}
            for a in source.cofaces_along(c, f):
                image = alpha(a)
                if image in seen:
                    violations.append((f, seen[image], a, c))
                else:
                    seen[image] = a
    return violations


def is_local_embedding(alpha: RelMorphism) -> bool:
    return not local_embedding_violations(alpha)


# ===== 離散ファイブレーション =====

class LiftFailure(TypedDict):
    """持ち上げの失敗"""
    morphism: str
    big: str
    small: str
    upstairs_small: str
    lifts: List[str]


def fibration_failures(alpha: RelMorphism) -> List[LiftFailure]:
    """
    P の x →_f y と y 上の y' ごとに、x 上で x' →_f y' となる x' がちょうど1つかを調べる
    """
    total, base_structure = alpha.source, alpha.target
    fibers: Dict[str, List[str]] = {}
    for cell in total.cells():
        fibers.setdefault(alpha(cell), []).append(cell)

    failures: List[LiftFailure] = []
    for f, x, y in base_structure.instances():
        for y_up in fibers.get(y, []):
            lifts = [x_up for x_up in total.cofaces_along(y_up, f) if alpha(x_up) == x]
            if len(lifts) != 1:
                failures.append(LiftFailure(morphism=f, big=x, small=y, upstairs_small=y_up, lifts=lifts))
    return failures


def is_discrete_fibration(alpha: RelMorphism) -> Tuple[bool, List[LiftFailure]]:
    """
    離散ファイブレーションかどうか

    Returns:
        Tuple[bool, List[LiftFailure]]: (判定, 反例の一覧)
    """
    ok, witnesses = is_morphism(alpha)
    if not ok:
        raise MorphismError(f"not a morphism: relation {witnesses[0]} is not preserved")
    failures = fibration_failures(alpha)
    return not failures, failures
