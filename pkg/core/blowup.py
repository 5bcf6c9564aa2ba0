"""
Blowup モジュール

テンソル積、ユークリッド的なブロック（I と J のテンソル積における最小セルの近傍）、
全射的局所埋め込みの全探索、組合せ的 blowup P̃ と射影 β、
離散ファイブレーションへの完備化 P̃⁺。
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .basecat import ElementaryCoface, SIGNS, cube_category, graph_category
from .cell_complex import neighborhood
from .cell_names import CellNamer
from .errors import BlowupDimensionError, DimensionMismatchError, FibrationError, LevelError
from .morphism_search import enumerate_morphisms
from .structures import (
    Level,
    Pair,
    RelMorphism,
    RelStructure,
    full_substructure,
    precubical_from_faces,
    rebase,
    representable,
)
from .transforms import LiftFailure, is_discrete_fibration, local_embedding_violations
from .validation import ValidationReport, validate_level

# ログ設定
logger = logging.getLogger(__name__)

INTERVAL_AXIS = 'I'
DOUBLE_AXIS = 'J'


# ===== テンソル積 =====

def _require_precubical(structure: RelStructure, operation: str) -> int:
    if not structure.base.is_cubical:
        raise DimensionMismatchError(f"{operation} needs a cubical base category")
    report = validate_level(structure, Level.FUNCTIONAL)
    if not report.ok:
        raise LevelError(f"{operation} needs an ordinary precubical set: {report.lines()[0]}")
    return structure.base.max_dim


def elementary_face(structure: RelStructure, cell: str, i: int, sign: str) -> str:
    """基本面 d^sign_i による面（関数的な構造を前提）"""
    word = ElementaryCoface(structure.dim(cell) - 1, i, sign).word.letters
    return structure.faces_along(cell, word)[0]


def tensor(left: RelStructure, right: RelStructure) -> RelStructure:
    """
    前立方体集合のテンソル積

    n 次元セルは p + q = n となる組 "p*q"。面 d^ε_i は i < dim p なら左の因子に、
    そうでなければ右の因子に位置 i - dim p で作用する。
    """
    n = _require_precubical(left, 'tensor') + _require_precubical(right, 'tensor')
    cells: Dict[str, int] = {}
    faces: Dict[Tuple[str, int, str], str] = {}
    for p in left.cells():
        for q in right.cells():
            a, b = left.dim(p), right.dim(q)
            cell = CellNamer.tensor(p, q)
            cells[cell] = a + b
            for i in range(a + b):
                for sign in SIGNS:
                    if i < a:
                        face = CellNamer.tensor(elementary_face(left, p, i, sign), q)
                    else:
                        face = CellNamer.tensor(p, elementary_face(right, q, i - a, sign))
                    faces[(cell, i, sign)] = face
    name = f"{left.name}*{right.name}" if left.name and right.name else ''
    return precubical_from_faces(cells, faces, base=cube_category(n), name=name)


def tensor_all(factors: Sequence[RelStructure]) -> RelStructure:
    """左から順に二項テンソル積をとる（空列なら点）"""
    if not factors:
        return point()
    return reduce(tensor, factors)


def point() -> RelStructure:
    return representable(cube_category(0), '0').renamed('pt')


def interval_graph() -> RelStructure:
    """I: 頂点 v0, v1 と辺 e: v0 → v1"""
    return precubical_from_faces(
        {'v0': 0, 'v1': 0, 'e': 1},
        {('e', 0, '-'): 'v0', ('e', 0, '+'): 'v1'},
        base=graph_category(), name='I',
    )


def double_interval_graph() -> RelStructure:
    """J: 頂点 u0, u1, u2 と辺 e1: u0 → u1, e2: u1 → u2"""
    return precubical_from_faces(
        {'u0': 0, 'u1': 0, 'u2': 0, 'e1': 1, 'e2': 1},
        {('e1', 0, '-'): 'u0', ('e1', 0, '+'): 'u1', ('e2', 0, '-'): 'u1', ('e2', 0, '+'): 'u2'},
        base=graph_category(), name='J',
    )


# ===== ブロック =====

_AXIS_FACTORS = {INTERVAL_AXIS: (interval_graph, 'e'), DOUBLE_AXIS: (double_interval_graph, 'u1')}


@dataclass(frozen=True)
class BrickSignature:
    """ブロックの型: 次元 n、最小セルの次元 k、I をちょうど k 個含む軸の語"""
    n: int
    k: int
    axes: str

    def __post_init__(self):
        if len(self.axes) != self.n or set(self.axes) - set(_AXIS_FACTORS):
            raise DimensionMismatchError(f"axes {self.axes!r} is not a word of length {self.n} over I, J")
        if self.axes.count(INTERVAL_AXIS) != self.k:
            raise DimensionMismatchError(f"axes {self.axes!r} must contain exactly {self.k} I-letters")

    def __str__(self) -> str:
        return f"({self.n},{self.k},{self.axes})"


def all_axes(n: int, k: int) -> List[BrickSignature]:
    """(n, k) の全ての軸の並べ方"""
    if not 0 <= k <= n:
        raise DimensionMismatchError(f"brick level {k} out of range for dimension {n}")
    signatures = []
    for positions in itertools.combinations(range(n), k):
        axes = ''.join(INTERVAL_AXIS if i in positions else DOUBLE_AXIS for i in range(n))
        signatures.append(BrickSignature(n, k, axes))
    return sorted(signatures, key=lambda sig: sig.axes)


@lru_cache(maxsize=None)
def standard_brick(signature: BrickSignature) -> Tuple[RelStructure, str]:
    """
    ブロック N(min) とその最小セル

    Returns:
        Tuple[RelStructure, str]: (軸の語のテンソル積での最小セルの近傍, 最小セル)
    """
    if signature.n == 0:
        cube = point()
        return cube, cube.cells()[0]
    factors = [_AXIS_FACTORS[axis][0]() for axis in signature.axes]
    minimum = reduce(CellNamer.tensor, [_AXIS_FACTORS[axis][1] for axis in signature.axes])
    product = tensor_all(factors)
    brick = neighborhood(product, minimum).with_level(Level.PARTIAL).renamed(f"brick{signature}")
    return brick, minimum


# ===== 全射的局所埋め込み =====

@dataclass(frozen=True)
class Embedding:
    """像 S と、それを覆うブロックからの局所埋め込み α"""
    cells: FrozenSet[str]
    signature: BrickSignature
    alpha: RelMorphism
    minimum: str

    @property
    def name(self) -> str:
        return CellNamer.subset(self.cells)

    @property
    def base_cell(self) -> str:
        """β(S) = α(min)"""
        return self.alpha(self.minimum)


def _witnesses(structure: RelStructure, n: int, k: int) -> Dict[FrozenSet[str], List[Embedding]]:
    found: Dict[FrozenSet[str], List[Embedding]] = {}
    for signature in all_axes(n, k):
        brick, minimum = standard_brick(signature)
        for components in enumerate_morphisms(brick, structure):
            image = frozenset(components.values())
            sub = full_substructure(structure, image)
            alpha = RelMorphism(brick, sub, components, name=f"alpha{signature}")
            if local_embedding_violations(alpha):
                continue
            found.setdefault(image, []).append(Embedding(image, signature, alpha, minimum))
    return found


def surjective_local_embeddings(n: int, k: int, structure: RelStructure) -> List[Embedding]:
    """
    (n, k) の全てのブロックからの全射的局所埋め込みを、像 S で重複を除いて列挙する

    各 S について最初に見つかった証拠 α を一つ返す（S の名前順）。
    """
    found = _witnesses(_lax_view(structure), n, k)
    return [found[image][0] for image in sorted(found, key=CellNamer.subset)]


def _lax_view(structure: RelStructure) -> RelStructure:
    return structure if structure.level.at_least(Level.LAX) else structure.with_level(Level.LAX)


# ===== Blowup =====

@dataclass
class BlowupResult:
    """
    blowup の結果

    structure: P̃、beta: β: P̃ → P、witnesses: S の名前 → 証拠の一覧。
    completion / beta_plus は blowup_completion で埋まる。
    """
    original: RelStructure
    n: int
    structure: RelStructure
    beta: RelMorphism
    witnesses: Dict[str, List[Embedding]] = field(repr=False)
    laxity: ValidationReport = field(repr=False)
    completion: Optional[RelStructure] = None
    beta_plus: Optional[RelMorphism] = None
    fibration_failures: List[LiftFailure] = field(default_factory=list)

    @property
    def is_lax(self) -> bool:
        return self.laxity.ok


def blowup_base(structure: RelStructure, n: int):
    if structure.base.is_cubical and structure.base.max_dim == n:
        return structure.base
    return cube_category(n)


def _related(structure: RelStructure, f: str, big: Embedding, small: Embedding) -> bool:
    """α(min B) →_f α'(min B') かつ α'∘ι = α となる単射 ι: B → B' があるか"""
    if not structure.related(big.base_cell, f, small.base_cell):
        return False
    small_preimage: Dict[str, List[str]] = {}
    for b, image in small.alpha.components.items():
        small_preimage.setdefault(image, []).append(b)
    big_brick, small_brick = big.alpha.source, small.alpha.source

    def candidates(b: str) -> List[str]:
        return small_preimage.get(big.alpha(b), [])

    for _ in enumerate_morphisms(big_brick, small_brick, injective=True, candidates=candidates, limit=1):
        return True
    return False


def blowup(structure: RelStructure, n: int) -> BlowupResult:
    """
    組合せ的 blowup

    P̃(k) はブロック (n, k) の全射的局所埋め込みの像 S（名前 "{a,b,x}"）。
    S →_f S' は S ⊆ S' かつ証拠の対 (α, α') と単射 ι が存在するとき。β(S) は S の最小次元セル。

    Raises:
        BlowupDimensionError: P が n より大きい次元のセルを持つ場合
        LevelError: P が通常の前立方体集合でない場合
    """
    _require_precubical(structure, 'blowup')
    too_big = [c for c in structure.cells() if structure.dim(c) > n]
    if too_big:
        raise BlowupDimensionError(f"cell {too_big[0]!r} has dimension {structure.dim(too_big[0])} > {n}")
    base = blowup_base(structure, n)
    original = rebase(structure, base)
    lax = _lax_view(original)

    witnesses: Dict[str, List[Embedding]] = {}
    carriers: Dict[str, List[str]] = {}
    beta: Dict[str, str] = {}
    by_dim: Dict[int, List[str]] = {}
    for k in range(n + 1):
        for image, embeddings in sorted(_witnesses(lax, n, k).items(), key=lambda item: CellNamer.subset(item[0])):
            name = CellNamer.subset(image)
            witnesses[name] = embeddings
            carriers.setdefault(str(k), []).append(name)
            beta[name] = embeddings[0].base_cell
            by_dim.setdefault(k, []).append(name)
        logger.debug(f"blowup: {len(by_dim.get(k, []))} cells of dimension {k}")

    relations: Dict[str, List[Pair]] = {}
    for f in base.sorted_morphisms():
        dom, cod = base.morphisms[f]
        for big_name in by_dim.get(int(cod), []):
            for small_name in by_dim.get(int(dom), []):
                if not witnesses[big_name][0].cells <= witnesses[small_name][0].cells:
                    continue
                if any(_related(original, f, big, small)
                       for big in witnesses[big_name] for small in witnesses[small_name]):
                    relations.setdefault(f, []).append((big_name, small_name))

    tilde = RelStructure(base, carriers, relations, Level.FAMILY,
                         name=f"blowup({structure.name})" if structure.name else '')
    laxity = validate_level(tilde, Level.LAX)
    if laxity.ok:
        tilde = tilde.with_level(Level.LAX)
    else:
        logger.warning(f"blowup is not transitively closed: {laxity.lines()[0]}")

    projection = RelMorphism(tilde, original, beta, name='beta')
    logger.info(f"blowup of {structure.size} cells at dimension {n}: {tilde.size} cells")
    return BlowupResult(structure, n, tilde, projection, witnesses, laxity)


def blowup_completion(structure: RelStructure, result: BlowupResult) -> Tuple[RelStructure, RelMorphism]:
    """
    離散ファイブレーションへの完備化 P̃⁺ = P̃ ⊔ P

    P のセル x の複製 "bot:x" を加え、(bot:x, b) ∈ P̃⁺(f) は (x, β⁺(b)) ∈ P(f) かつ
    x 上の a' ∈ P̃ で (a', b) ∈ P̃(f) となるものがないとき。

    Raises:
        FibrationError: β⁺ が離散ファイブレーションにならない場合
    """
    tilde, original = result.structure, result.beta.target
    base = tilde.base
    copies = {x: CellNamer.completion_copy(x) for x in original.cells()}
    beta_plus = dict(result.beta.components)
    beta_plus.update({copy: x for x, copy in copies.items()})

    carriers = {obj: set(tilde.carrier(obj)) | {copies[x] for x in original.carrier(obj)} for obj in base.objects}
    relations: Dict[str, set] = {f: set(pairs) for f, pairs in tilde.relations.items()}
    everything = tilde.cells() + [copies[x] for x in original.cells()]
    for f in base.sorted_morphisms():
        dom, cod = base.morphisms[f]
        for b in everything:
            if b not in carriers[dom]:
                continue
            for x in original.cofaces_along(beta_plus[b], f):
                covered = any(result.beta(a) == x for a in tilde.cofaces_along(b, f)) if tilde.has_cell(b) else False
                if not covered:
                    relations[f].add((copies[x], b))

    completed = RelStructure(base, carriers, relations, Level.FAMILY,
                             name=f"{tilde.name}+" if tilde.name else '')
    if validate_level(completed, Level.LAX).ok:
        completed = completed.with_level(Level.LAX)
    projection = RelMorphism(completed, original, beta_plus, name='beta+')
    ok, failures = is_discrete_fibration(projection)
    result.completion, result.beta_plus, result.fibration_failures = completed, projection, failures
    if not ok:
        failure = failures[0]
        raise FibrationError(
            f"completion is not a discrete fibration: {len(failure['lifts'])} lifts of "
            f"{CellNamer.instance_anchor(failure['morphism'], failure['big'], failure['small'])} "
            f"at {failure['upstairs_small']!r}"
        )
    logger.info(f"completion: {completed.size} cells, discrete fibration over {original.size} cells")
    return completed, projection
