"""
公理レベル検証

validate_level は例外を投げず、違反の一覧を持つレポートを返す。
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, TypedDict

from .structures import Level, RelStructure

# ログ設定
logger = logging.getLogger(__name__)


class ViolationKind(Enum):
    """違反の種類"""
    MISSING_IDENTITY = 'missing-identity'
    MISSING_COMPOSITE = 'missing-composite'
    NOT_FUNCTIONAL = 'not-functional'
    NOT_TOTAL = 'not-total'


class PartialityReading(Enum):
    """
    部分性公理の読み方

    FACE: 各セルは各 f について高々1つの f-面を持つ（既定）
    COFIBER: 各面は各 f について高々1つの f-余面を持つ
    """
    FACE = 'face'
    COFIBER = 'cofiber'


class Violation(TypedDict):
    """違反1件"""
    kind: ViolationKind
    morphisms: List[str]
    cells: List[str]
    message: str


@dataclass
class ValidationReport:
    level: Level
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> List[str]:
        """1行1件の機械可読な表現"""
        return [format_violation(v) for v in self.violations]


def format_violation(violation: Violation) -> str:
    morphisms = ','.join(repr(f) for f in violation['morphisms'])
    cells = ','.join(violation['cells'])
    return f"{violation['kind'].value}\tmorphisms={morphisms}\tcells={cells}\t{violation['message']}"


def _identity_violations(structure: RelStructure) -> List[Violation]:
    violations: List[Violation] = []
    for obj in structure.base.objects:
        ident = structure.base.identity(obj)
        for cell in sorted(structure.carrier(obj)):
            if not structure.related(cell, ident, cell):
                violations.append(Violation(
                    kind=ViolationKind.MISSING_IDENTITY,
                    morphisms=[ident],
                    cells=[cell],
                    message=f"{cell} に恒等関係がない",
                ))
    return violations


def _composite_violations(structure: RelStructure) -> List[Violation]:
    violations: List[Violation] = []
    base = structure.base
    # g: e → d が内側、f: d → c が外側。x →_f y →_g z から x →_{f∘g} z を要求する
    for g, f in base.composable_pairs():
        composite = base.compose(g, f)
        for x, y in sorted(structure.relation(f)):
            for z in structure.faces_along(y, g):
                if not structure.related(x, composite, z):
                    violations.append(Violation(
                        kind=ViolationKind.MISSING_COMPOSITE,
                        morphisms=[f, g, composite],
                        cells=[x, y, z],
                        message=f"{x} →{f!r} {y} →{g!r} {z} だが {x} →{composite!r} {z} がない",
                    ))
    return violations


def _functionality_violations(structure: RelStructure, reading: PartialityReading) -> List[Violation]:
    violations: List[Violation] = []
    for f in structure.base.sorted_morphisms():
        dom, cod = structure.base.morphisms[f]
        if reading is PartialityReading.FACE:
            for x in sorted(structure.carrier(cod)):
                ys = structure.faces_along(x, f)
                if len(ys) > 1:
                    violations.append(Violation(
                        kind=ViolationKind.NOT_FUNCTIONAL,
                        morphisms=[f],
                        cells=[x, *ys],
                        message=f"{x} が {f!r} について複数の面 {list(ys)} を持つ",
                    ))
        else:
            for y in sorted(structure.carrier(dom)):
                xs = structure.cofaces_along(y, f)
                if len(xs) > 1:
                    violations.append(Violation(
                        kind=ViolationKind.NOT_FUNCTIONAL,
                        morphisms=[f],
                        cells=[*xs, y],
                        message=f"{y} が {f!r} について複数の余面 {list(xs)} を持つ",
                    ))
    return violations


def _totality_violations(structure: RelStructure) -> List[Violation]:
    violations: List[Violation] = []
    for f in structure.base.sorted_morphisms():
        cod = structure.base.cod(f)
        for x in sorted(structure.carrier(cod)):
            if not structure.faces_along(x, f):
                violations.append(Violation(
                    kind=ViolationKind.NOT_TOTAL,
                    morphisms=[f],
                    cells=[x],
                    message=f"{x} に {f!r}-面がない",
                ))
    return violations


def validate_level(structure: RelStructure,
                   level: Level,
                   partiality: PartialityReading = PartialityReading.FACE) -> ValidationReport:
    """
    指定レベルの公理を検査する

    Args:
        structure: 検査対象
        level: family / lax / partial / functional
        partiality: partial レベルでの関数性の読み方

    Returns:
        ValidationReport: 違反の一覧（例外は投げない）
    """
    report = ValidationReport(level=level)
    # 端点の所属は構築時に保証されている
    if level.at_least(Level.LAX):
        report.violations.extend(_identity_violations(structure))
        report.violations.extend(_composite_violations(structure))
    if level is Level.PARTIAL:
        report.violations.extend(_functionality_violations(structure, partiality))
    elif level is Level.FUNCTIONAL:
        report.violations.extend(_functionality_violations(structure, PartialityReading.FACE))
        report.violations.extend(_totality_violations(structure))

    if report.ok:
        logger.debug(f"{structure.name or 'structure'} satisfies {level.value}")
    else:
        logger.debug(f"{structure.name or 'structure'} fails {level.value}: {len(report.violations)} violations")
    return report


def strongest_level(structure: RelStructure,
                    partiality: PartialityReading = PartialityReading.FACE) -> Level:
    """構造が満たす最も強いレベル"""
    best = Level.FAMILY
    for level in (Level.LAX, Level.PARTIAL, Level.FUNCTIONAL):
        if validate_level(structure, level, partiality).ok:
            best = level
        elif level is Level.LAX:
            break
    return best
