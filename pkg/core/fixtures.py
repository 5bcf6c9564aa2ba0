"""
代表的な構造と乱数生成

テストと CLI のサンプル出力で共有する小さな構造（例の lax 2 次元構造、交差グラフとその blowup、
関係的グラフ、閉じた正方形など）と、シード固定の乱数生成器。
"""

import logging
import random
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .basecat import cube_category, graph_category
from .blowup import double_interval_graph, interval_graph, tensor
from .colimits import coproduct, quotient
from .errors import DimensionMismatchError
from .fibrations import ElementsPresheaf
from .structures import Level, Pair, RelStructure, representable
from .transforms import close_composition

# ログ設定
logger = logging.getLogger(__name__)

EdgeSpec = Mapping[str, Tuple[Sequence[str], Sequence[str]]]


def relational_graph(vertices: Iterable[str], edges: EdgeSpec,
                     level: Level = Level.LAX, name: str = '') -> RelStructure:
    """
    関係的グラフ（恒等関係は自動で加える）

    Args:
        edges: 辺 → (ソースの一覧, ターゲットの一覧)
    """
    vertices = list(vertices)
    relations: Dict[str, List[Pair]] = {
        '': [(v, v) for v in vertices],
        '0': [(e, e) for e in edges],
        '-': [(e, v) for e, (sources, _) in edges.items() for v in sources],
        '+': [(e, v) for e, (_, targets) in edges.items() for v in targets],
    }
    return RelStructure(graph_category(), {'0': vertices, '1': list(edges)}, relations, level, name=name)


def with_identities(base, carriers: Mapping[str, Sequence[str]],
                    relations: Mapping[str, Sequence[Pair]],
                    level: Level = Level.LAX, name: str = '') -> RelStructure:
    full = {f: list(pairs) for f, pairs in relations.items()}
    for obj, cells in carriers.items():
        full.setdefault(base.identity(obj), []).extend((c, c) for c in cells)
    return RelStructure(base, carriers, full, level, name=name)


# ===== 例 =====

def example_lax_square() -> RelStructure:
    """
    下側の境界を持たない 2 セル alpha

    alpha の上辺 a と右辺 b は t で終わり、左下の頂点 s は合成語 "--" でだけ関係する。
    lax だが a にソースがないので関数的ではない。
    """
    return with_identities(
        cube_category(2),
        {'0': ['s', 't'], '1': ['a', 'b'], '2': ['alpha']},
        {
            '0+': [('alpha', 'a')],
            '+0': [('alpha', 'b')],
            '+': [('a', 't'), ('b', 't')],
            '++': [('alpha', 't')],
            '--': [('alpha', 's')],
        },
        name='C',
    )


def intro_graph() -> RelStructure:
    """通常のグラフ: a: x → y、b_i: y → z_i"""
    return relational_graph(
        ['x', 'y', 'z1', 'z2'],
        {'a': (['x'], ['y']), 'b1': (['y'], ['z1']), 'b2': (['y'], ['z2'])},
        level=Level.FUNCTIONAL, name='G0',
    )


def intro_relational_graph() -> RelStructure:
    """辺 a はソースを持たずターゲットが y1, y2 の二つ"""
    return relational_graph(
        ['y1', 'y2', 'z1', 'z2'],
        {'a': ([], ['y1', 'y2']), 'b1': (['y1'], ['z1']), 'b2': (['y2'], ['z2'])},
        name='H0',
    )


def crossing_graph() -> RelStructure:
    """二本の辺 a_i が x に入り、二本の辺 b_j が x から出るグラフ"""
    return relational_graph(
        ['l1', 'l2', 'r1', 'r2', 'x'],
        {
            'a1': (['l1'], ['x']), 'a2': (['l2'], ['x']),
            'b1': (['x'], ['r1']), 'b2': (['x'], ['r2']),
        },
        level=Level.FUNCTIONAL, name='G',
    )


def crossing_blowup() -> RelStructure:
    """交差グラフの blowup の期待値: x_ij は a_i から b_j へ抜ける点"""
    return relational_graph(
        ['x11', 'x12', 'x21', 'x22'],
        {
            'a1': ([], ['x11', 'x12']), 'a2': ([], ['x21', 'x22']),
            'b1': (['x11', 'x21'], []), 'b2': (['x12', 'x22'], []),
        },
        name='H',
    )


def branching_graph() -> RelStructure:
    """a: x → {y1, y2}、b1: y1 → z、b2 はソース y2 のみ"""
    return relational_graph(
        ['x', 'y1', 'y2', 'z'],
        {'a': (['x'], ['y1', 'y2']), 'b1': (['y1'], ['z']), 'b2': (['y2'], [])},
        name='B',
    )


def closed_square() -> RelStructure:
    return representable(cube_category(2), '2').renamed('square')


def two_squares() -> RelStructure:
    """辺を共有する二つの正方形 I ⊗ J"""
    return tensor(interval_graph(), double_interval_graph()).renamed('I11')


def closed_cube() -> RelStructure:
    return representable(cube_category(3), '3').renamed('cube')


def two_cubes() -> RelStructure:
    """正方形を共有する二つの立方体 I ⊗ I ⊗ J"""
    return tensor(interval_graph(), two_squares()).renamed('I111')


def point_structure() -> RelStructure:
    return with_identities(cube_category(0), {'0': ['p']}, {}, level=Level.FUNCTIONAL, name='pt')


def edge_structure() -> RelStructure:
    """頂点 v0, v1 と辺 e の通常のグラフ"""
    return relational_graph(['v0', 'v1'], {'e': (['v0'], ['v1'])}, level=Level.FUNCTIONAL, name='edge')


# ===== 乱数生成 =====

def random_relational_graph(rng: random.Random, max_cells: int = 6, name: str = '') -> RelStructure:
    """辺ごとにソース・ターゲットの部分集合を一様に選んだ lax な関係的グラフ"""
    total = rng.randint(1, max_cells)
    vertex_count = rng.randint(1, total)
    vertices = [f"v{i}" for i in range(vertex_count)]
    edges = {}
    for j in range(total - vertex_count):
        sources = [v for v in vertices if rng.random() < 0.35]
        targets = [v for v in vertices if rng.random() < 0.35]
        edges[f"e{j}"] = (sources, targets)
    return relational_graph(vertices, edges, name=name)


def random_graph(rng: random.Random, max_cells: int = 6, name: str = '') -> RelStructure:
    """ソースとターゲットがちょうど一つずつの通常のグラフ"""
    total = rng.randint(1, max_cells)
    vertex_count = rng.randint(1, total)
    vertices = [f"v{i}" for i in range(vertex_count)]
    edges = {
        f"e{j}": ([rng.choice(vertices)], [rng.choice(vertices)])
        for j in range(total - vertex_count)
    }
    return relational_graph(vertices, edges, level=Level.FUNCTIONAL, name=name)


def random_lax_cubical(rng: random.Random, max_cells: int = 5, name: str = '') -> RelStructure:
    """
    2 次元までの立方体基底上の lax 構造

    基本余面（非ゼロ文字が一つの語）の対を一様に選び、合成閉包をとる。
    """
    base = cube_category(2)
    carriers: Dict[str, List[str]] = {obj: [] for obj in base.objects}
    for i in range(rng.randint(1, max_cells)):
        carriers[rng.choice('0012')].append(f"c{i}")
    relations: Dict[str, List[Pair]] = {}
    for f in base.sorted_morphisms():
        if sum(letter != '0' for letter in f) != 1:
            continue
        relations[f] = [
            (x, y) for x in carriers[base.cod(f)] for y in carriers[base.dom(f)] if rng.random() < 0.4
        ]
    return close_composition(RelStructure(base, carriers, relations, Level.FAMILY, name=name))


def random_precubical(rng: random.Random, max_pieces: int = 2, name: str = '') -> RelStructure:
    """立方体（2 次元まで）の直和の頂点をいくつか同一視した通常の前層"""
    base = cube_category(2)
    pieces = [representable(base, rng.choice('012')) for _ in range(rng.randint(1, max_pieces))]
    total, _ = coproduct(pieces)
    vertices = sorted(total.carrier('0'))
    pairs = [(a, b) for a in vertices for b in vertices if a < b and rng.random() < 0.2]
    glued, _ = quotient(total, pairs, Level.LAX)
    return glued.with_level(Level.FUNCTIONAL).renamed(name)


def random_family(rng: random.Random, max_cells: int = 5, name: str = '') -> RelStructure:
    """恒等関係を取り除いた、公理を満たさないことのある関係的族"""
    graph = random_relational_graph(rng, max_cells, name)
    relations = {f: pairs for f, pairs in graph.relations.items() if not graph.base.is_identity(f)}
    return RelStructure(graph.base, graph.carriers, relations, Level.FAMILY, name=name)


def random_elements_presheaf(rng: random.Random, structure: RelStructure,
                             max_elements: int = 8) -> ElementsPresheaf:
    """
    グラフ上の (∫P)^op 上の前層（遷移は一様に選んだ写像）

    グラフ圏では恒等射以外の合成がないので、どの写像の選び方も関手的になる。
    """
    if not structure.base.is_cubical or structure.base.max_dim > 1:
        raise DimensionMismatchError("random_elements_presheaf draws presheaves over graphs only")
    cells = structure.cells()
    counts = {cell: 1 for cell in cells}
    for _ in range(max(0, max_elements - len(cells))):
        if rng.random() < 0.5:
            counts[rng.choice(cells)] += 1
    fibers = {cell: [f"{cell}.{i}" for i in range(counts[cell])] for cell in cells}
    transitions = {}
    for f, x, y in structure.instances():
        if structure.base.is_identity(f) and x == y:
            continue
        transitions[(f, x, y)] = {e: rng.choice(fibers[x]) for e in fibers[y]}
    return ElementsPresheaf(structure, {c: frozenset(es) for c, es in fibers.items()}, transitions)


def seeded(seed: Optional[int]) -> random.Random:
    return random.Random(seed)
