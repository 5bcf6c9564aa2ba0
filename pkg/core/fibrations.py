"""
ファイブレーションモジュール (fibrations)

要素の圏 ∫P、関係インスタンスまで含めた拡張 ∫F(P)、スパン圏 C_Rel、
(∫P)^op 上の前層と P 上の離散ファイブレーションの対応 φ / ψ。
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Tuple

from .basecat import FiniteBaseCategory, table_category
from .cell_complex import positive_neighborhood
from .cell_names import CellNamer
from .errors import DocumentError, FibrationError, LevelError
from .structures import Instance, Level, RelMorphism, RelStructure
from .transforms import is_discrete_fibration

# ログ設定
logger = logging.getLogger(__name__)


# ===== スパン圏 =====

def span_category(base: FiniteBaseCategory) -> FiniteBaseCategory:
    """
    スパン圏 C_Rel

    対象は "obj:c" と "rel:f"、非恒等射は π⁰ "pi0:f": rel:f → obj:cod f と
    π¹ "pi1:f": rel:f → obj:dom f のみ（合成できる非恒等射の組はない）。
    """
    objects = [f"obj:{c}" for c in base.objects] + [f"rel:{f}" for f in base.sorted_morphisms()]
    morphisms: Dict[str, Tuple[str, str]] = {f"id:{o}": (o, o) for o in objects}
    identities = {o: f"id:{o}" for o in objects}
    for f in base.sorted_morphisms():
        dom, cod = base.morphisms[f]
        morphisms[f"pi0:{f}"] = (f"rel:{f}", f"obj:{cod}")
        morphisms[f"pi1:{f}"] = (f"rel:{f}", f"obj:{dom}")
    category = table_category(f"span({base.name})", objects, morphisms, identities, {})
    return FiniteBaseCategory(
        objects=category.objects,
        morphisms=category.morphisms,
        identities=category.identities,
        table=category.table,
        kind='span',
        name=category.name,
    )


# ===== 要素の圏 =====

def elements_category(structure: RelStructure) -> FiniteBaseCategory:
    """
    要素の圏 ∫P

    対象はセル、x →_f y ごとに射 "x|f|y": y → x。合成は基底圏の合成に従う。
    """
    if not structure.level.at_least(Level.LAX):
        raise LevelError("the category of elements needs a lax structure")
    base = structure.base
    name = CellNamer.instance_anchor
    morphisms = {name(f, x, y): (y, x) for f, x, y in structure.instances()}
    identities = {c: name(base.identity(structure.object_of(c)), c, c) for c in structure.cells()}
    table: Dict[Tuple[str, str], str] = {}
    for g, y, z in structure.instances():
        for f in base.morphisms_from(structure.object_of(y)):
            for x in structure.cofaces_along(y, f):
                table[(name(g, y, z), name(f, x, y))] = name(base.compose(g, f), x, z)
    return FiniteBaseCategory(
        objects=tuple(structure.cells()),
        morphisms=morphisms,
        identities=identities,
        table=table,
        kind='elements',
        name=f"elements({structure.name})",
    )


@dataclass(frozen=True)
class ExtendedElements:
    """
    ∫F(P): セルと関係インスタンスを対象とし、各インスタンスから両端への射を持つ有限圏

    arrows は (ラベル "pi0" / "pi1", インスタンス, セル)。
    """
    structure: RelStructure
    cells: Tuple[str, ...]
    instances: Tuple[Instance, ...]
    arrows: Tuple[Tuple[str, Instance, str], ...]

    @property
    def object_count(self) -> int:
        return len(self.cells) + len(self.instances)

    @property
    def morphism_count(self) -> int:
        return len(self.arrows)

    def lies_over(self, instance: Instance) -> str:
        """インスタンスが載るスパン圏の対象"""
        return f"rel:{instance[0]}"


def extended_elements(structure: RelStructure, include_identities: bool = True) -> ExtendedElements:
    """
    ∫F(P) の列挙（恒等関係のインスタンスも既定で含める）
    """
    instances = tuple(structure.instances(include_identities=include_identities))
    arrows = []
    for instance in instances:
        _, big, small = instance
        arrows.append(('pi0', instance, big))
        arrows.append(('pi1', instance, small))
    return ExtendedElements(structure, tuple(structure.cells()), instances, tuple(arrows))


# ===== (∫P)^op 上の前層 =====

@dataclass(frozen=True)
class ElementsPresheaf:
    """
    (∫P)^op 上の前層

    fibers: セル → 元の集合、transitions: (f, x, y) → {y 上の元: x 上の元}。
    元の識別子は全体で一意。恒等インスタンスの遷移は省略すれば恒等写像になる。
    """
    structure: RelStructure
    fibers: Mapping[str, FrozenSet[str]]
    transitions: Mapping[Instance, Mapping[str, str]] = field(default_factory=dict)

    def __post_init__(self):
        structure = self.structure
        if not structure.level.at_least(Level.LAX):
            raise LevelError("elements presheaves live over lax structures")
        fibers = {}
        owner: Dict[str, str] = {}
        for cell in structure.cells():
            elements = frozenset(self.fibers.get(cell, ()))
            for element in elements:
                if element in owner:
                    raise DocumentError(f"element {element!r} lies over both {owner[element]!r} and {cell!r}")
                owner[element] = cell
            fibers[cell] = elements
        for cell in self.fibers:
            structure.object_of(cell)

        transitions: Dict[Instance, Dict[str, str]] = {}
        for instance in structure.instances():
            f, x, y = instance
            given = self.transitions.get(instance)
            if given is None and x == y and structure.base.is_identity(f):
                given = {e: e for e in fibers[y]}
            if given is None:
                raise DocumentError(f"missing transition for {CellNamer.instance_anchor(f, x, y)}")
            mapping = {str(k): str(v) for k, v in given.items()}
            if set(mapping) != set(fibers[y]):
                raise DocumentError(f"transition {CellNamer.instance_anchor(f, x, y)} is not total on the fiber of {y!r}")
            if not set(mapping.values()) <= fibers[x]:
                raise DocumentError(f"transition {CellNamer.instance_anchor(f, x, y)} leaves the fiber of {x!r}")
            transitions[instance] = mapping
        for instance in self.transitions:
            if tuple(instance) not in transitions:
                raise DocumentError(f"transition given for a non-instance {instance!r}")

        object.__setattr__(self, 'fibers', fibers)
        object.__setattr__(self, 'transitions', transitions)

    def element_count(self) -> int:
        return sum(len(elements) for elements in self.fibers.values())

    def check_functoriality(self) -> List[str]:
        """恒等と合成の保存を検査し、違反の説明を返す"""
        problems: List[str] = []
        structure = self.structure
        base = structure.base
        for (f, x, y), mapping in sorted(self.transitions.items()):
            if base.is_identity(f) and x == y and any(k != v for k, v in mapping.items()):
                problems.append(f"identity transition on {x!r} is not the identity")
        for f, x, y in structure.instances():
            for g in base.morphisms_into(structure.object_of(y)):
                for z in structure.faces_along(y, g):
                    composite = self.transitions[(base.compose(g, f), x, z)]
                    through = {e: self.transitions[(f, x, y)][self.transitions[(g, y, z)][e]] for e in self.fibers[z]}
                    if composite != through:
                        problems.append(
                            f"transition {CellNamer.instance_anchor(base.compose(g, f), x, z)} differs from "
                            f"the composite through {y!r}"
                        )
        return problems


def constant_presheaf(structure: RelStructure) -> ElementsPresheaf:
    """各セル上に自分自身だけを持つ定数前層"""
    return ElementsPresheaf(
        structure,
        {c: frozenset([c]) for c in structure.cells()},
        {(f, x, y): {y: x} for f, x, y in structure.instances()},
    )


def phi(presheaf: ElementsPresheaf) -> Tuple[RelStructure, RelMorphism]:
    """
    前層 → 離散ファイブレーション

    全空間のセルは各ファイバーの元、x' →_f y' は F(f)(y') = x' のとき。

    Returns:
        Tuple[RelStructure, RelMorphism]: (全空間, 射影)
    """
    structure = presheaf.structure
    carriers: Dict[str, List[str]] = {}
    projection: Dict[str, str] = {}
    for cell, elements in presheaf.fibers.items():
        carriers.setdefault(structure.object_of(cell), []).extend(elements)
        projection.update({e: cell for e in elements})
    relations: Dict[str, List[Tuple[str, str]]] = {}
    for (f, _, _), mapping in presheaf.transitions.items():
        relations.setdefault(f, []).extend((big, small) for small, big in mapping.items())
    total = RelStructure(structure.base, carriers, relations, Level.LAX,
                         name=f"phi({structure.name})" if structure.name else '')
    logger.debug(f"phi: {presheaf.element_count()} elements over {structure.size} cells")
    return total, RelMorphism(total, structure, projection, name='projection')


def psi(alpha: RelMorphism) -> ElementsPresheaf:
    """
    離散ファイブレーション → 前層（ファイバーは逆像、遷移は一意な持ち上げ）

    Raises:
        FibrationError: 持ち上げが一意でない場合
    """
    ok, failures = is_discrete_fibration(alpha)
    if not ok:
        failure = failures[0]
        raise FibrationError(
            f"no unique lift of {CellNamer.instance_anchor(failure['morphism'], failure['big'], failure['small'])} "
            f"at {failure['upstairs_small']!r} (lifts: {failure['lifts']})"
        )
    total, structure = alpha.source, alpha.target
    fibers = {cell: frozenset(alpha.fiber(cell)) for cell in structure.cells()}
    transitions: Dict[Instance, Dict[str, str]] = {}
    for f, x, y in structure.instances():
        transitions[(f, x, y)] = {
            y_up: next(x_up for x_up in total.cofaces_along(y_up, f) if alpha(x_up) == x)
            for y_up in fibers[y]
        }
    return ElementsPresheaf(structure, fibers, transitions)


def fiber_neighborhood_bijection(alpha: RelMorphism, cell: str) -> Tuple[Dict[Tuple[str, str], Tuple[str, str]], bool]:
    """
    N⁺(c') → N⁺(α(c')) を (a', f) ↦ (α(a'), f) で与え、全単射かを返す
    """
    upstairs = positive_neighborhood(alpha.source, cell)
    downstairs = set(positive_neighborhood(alpha.target, alpha(cell)))
    mapping = {(a, f): (alpha(a), f) for a, f in upstairs}
    images = list(mapping.values())
    bijective = len(set(images)) == len(images) and set(images) == downstairs
    return mapping, bijective
