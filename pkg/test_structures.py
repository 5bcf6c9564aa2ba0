#!/usr/bin/env python3
"""
関係構造テスト
構築時の検査、4 段階のレベル検証、射の判定と全探索、同型判定
"""

import os
import sys
import logging
from fractions import Fraction

import pytest

# ログ設定
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

# パス設定
sys.path.append(os.path.dirname(__file__))

from core import fixtures
from core.basecat import cube_category, graph_category
from core.cell_names import CellNamer, FractionFormatter, parse_point
from core.errors import DocumentError, MorphismError, UnknownCellError, UnknownMorphismError
from core.morphism_search import are_isomorphic, count_morphisms, enumerate_morphisms, find_isomorphism
from core.structures import (
    Level,
    RelMorphism,
    RelStructure,
    compose_morphisms,
    full_substructure,
    identity_morphism,
    is_embedding,
    is_mono,
    is_morphism,
    is_pointwise_surjective,
    precubical_from_faces,
    rebase,
    representable,
)
from core.validation import PartialityReading, ViolationKind, strongest_level, validate_level


class TestRelStructure:
    """構築時の検査テスト"""

    def test_pair_direction(self):
        """(x, y) ∈ R(f: d → c) は x が c 上、y が d 上"""
        edge = fixtures.edge_structure()
        assert edge.faces_along('e', '-') == ('v0',)
        assert edge.cofaces_along('v1', '+') == ('e',)
        assert edge.object_of('e') == '1'
        assert edge.dim('v0') == 0

    def test_pair_over_wrong_object(self):
        """端点が正しい対象上にない対は UnknownCellError"""
        with pytest.raises(UnknownCellError):
            RelStructure(graph_category(), {'0': ['v'], '1': ['e']}, {'-': [('v', 'e')]})

    def test_cell_over_two_objects(self):
        """同じセルが二つの対象上にあれば DocumentError"""
        with pytest.raises(DocumentError):
            RelStructure(graph_category(), {'0': ['v'], '1': ['v']}, {})

    def test_unknown_morphism(self):
        with pytest.raises(UnknownMorphismError):
            RelStructure(graph_category(), {'0': ['v']}, {'--': [('v', 'v')]})

    def test_sizes(self):
        """セル数と対の数"""
        graph = fixtures.intro_graph()
        assert graph.size == 7
        # 恒等 7 + ソース 3 + ターゲット 3
        assert graph.pair_count == 13
        assert graph.cells()[:4] == ['x', 'y', 'z1', 'z2']


class TestValidation:
    """レベル検証テスト"""

    def test_example_square_is_lax_not_functional(self):
        """例の 2 次元構造は lax だが関数的ではない"""
        square = fixtures.example_lax_square()
        assert validate_level(square, Level.LAX).ok
        assert validate_level(square, Level.PARTIAL).ok
        report = validate_level(square, Level.FUNCTIONAL)
        assert not report.ok
        assert {v['kind'] for v in report.violations} == {ViolationKind.NOT_TOTAL}
        missing = {(v['cells'][0], v['morphisms'][0]) for v in report.violations}
        assert ('alpha', '-0') in missing
        assert ('a', '-') in missing

    def test_relational_graph_fails_partial_at_a(self):
        """ターゲットが二つある辺 a で部分性が破れる"""
        graph = fixtures.intro_relational_graph()
        assert validate_level(graph, Level.LAX).ok
        report = validate_level(graph, Level.PARTIAL)
        assert not report.ok
        assert len(report.violations) == 1
        violation = report.violations[0]
        assert violation['kind'] is ViolationKind.NOT_FUNCTIONAL
        assert violation['cells'] == ['a', 'y1', 'y2']
        assert violation['morphisms'] == ['+']

    def test_cofiber_reading(self):
        """余面の一意性で読むと同じグラフは部分的"""
        graph = fixtures.intro_relational_graph()
        assert validate_level(graph, Level.PARTIAL, PartialityReading.COFIBER).ok
        assert not validate_level(fixtures.branching_graph(), Level.PARTIAL, PartialityReading.FACE).ok

    def test_missing_composite(self):
        """合成が欠けると lax でない"""
        square = fixtures.example_lax_square()
        relations = {f: pairs - {('alpha', 't')} if f == '++' else pairs for f, pairs in square.relations.items()}
        broken = RelStructure(square.base, square.carriers, relations, Level.FAMILY)
        report = validate_level(broken, Level.LAX)
        assert not report.ok
        assert all(v['kind'] is ViolationKind.MISSING_COMPOSITE for v in report.violations)
        assert all(v['morphisms'][2] == '++' for v in report.violations)

    def test_missing_identity(self):
        family = fixtures.random_family(fixtures.seeded(3))
        report = validate_level(family, Level.LAX)
        assert ViolationKind.MISSING_IDENTITY in {v['kind'] for v in report.violations}

    def test_lines_are_tab_separated(self):
        """違反の行は機械可読"""
        report = validate_level(fixtures.intro_relational_graph(), Level.PARTIAL)
        fields = report.lines()[0].split('\t')
        assert fields[0] == 'not-functional'
        assert fields[2] == 'cells=a,y1,y2'

    def test_strongest_level(self):
        assert strongest_level(fixtures.intro_graph()) is Level.FUNCTIONAL
        assert strongest_level(fixtures.example_lax_square()) is Level.PARTIAL
        assert strongest_level(fixtures.intro_relational_graph()) is Level.LAX
        assert strongest_level(fixtures.random_family(fixtures.seeded(3))) is Level.FAMILY


class TestRepresentables:
    """表現可能前層と面からの構築テスト"""

    def test_square_has_nine_cells(self):
        """y(2) は 4 頂点・4 辺・1 面"""
        square = representable(cube_category(2), '2')
        assert square.size == 9
        assert [len(square.carrier(c)) for c in '012'] == [4, 4, 1]
        assert validate_level(square, Level.FUNCTIONAL).ok
        assert square.faces_along('[00]', '-+') == ('[-+]',)

    def test_faces_missing(self):
        """基本面が欠けていれば DocumentError"""
        with pytest.raises(DocumentError):
            precubical_from_faces({'v': 0, 'e': 1}, {('e', 0, '-'): 'v'})

    def test_rebase_to_larger_cube(self):
        """大きな切り詰めに載せ替えてもセルは変わらない"""
        moved = rebase(fixtures.example_lax_square(), cube_category(3))
        assert moved.size == 5
        assert moved.base.max_dim == 3
        assert validate_level(moved, Level.LAX).ok


class TestMorphisms:
    """射の判定と探索テスト"""

    def test_identity_is_morphism(self):
        graph = fixtures.crossing_graph()
        ok, broken = is_morphism(identity_morphism(graph))
        assert ok and broken == []

    def test_collapsing_vertices_breaks_edges(self):
        """辺の像が関係を保たなければ射でない"""
        edge = fixtures.edge_structure()
        alpha = RelMorphism(edge, edge, {'v0': 'v1', 'v1': 'v1', 'e': 'e'})
        ok, broken = is_morphism(alpha)
        assert not ok
        assert ('-', 'e', 'v0') in broken

    def test_partial_components_rejected(self):
        edge = fixtures.edge_structure()
        with pytest.raises(MorphismError):
            is_morphism(RelMorphism(edge, edge, {'v0': 'v0'}))

    def test_yoneda_count(self):
        """y(1) → G の射は G の辺と一対一"""
        interval = representable(graph_category(), '1')
        assert count_morphisms(interval, fixtures.intro_graph()) == 3

    def test_fixed_and_injective_search(self):
        """固定値と単射の制約"""
        graph = fixtures.crossing_graph()
        found = list(enumerate_morphisms(graph, graph, fixed={'a1': 'a2'}, injective=True))
        assert found
        assert all(m['a1'] == 'a2' and m['l1'] == 'l2' for m in found)
        assert len(found) == 2

    def test_compose_morphisms(self):
        graph = fixtures.intro_graph()
        identity = identity_morphism(graph)
        assert compose_morphisms(identity, identity).components == identity.components

    def test_full_substructure(self):
        graph = fixtures.intro_graph()
        sub = full_substructure(graph, ['y', 'b1', 'z1'])
        assert sub.size == 3
        assert sub.faces_along('b1', '-') == ('y',)
        with pytest.raises(UnknownCellError):
            full_substructure(graph, ['nowhere'])


class TestIsomorphism:
    """同型判定テスト"""

    def test_renamed_copy(self):
        """名前を付け替えた構造は同型"""
        graph = fixtures.crossing_graph()
        renaming = {c: f"{c}'" for c in graph.cells()}
        carriers = {obj: [renaming[c] for c in cells] for obj, cells in graph.carriers.items()}
        relations = {f: [(renaming[x], renaming[y]) for x, y in pairs] for f, pairs in graph.relations.items()}
        copy = RelStructure(graph.base, carriers, relations, graph.level)
        mapping = find_isomorphism(graph, copy)
        assert mapping is not None
        assert mapping['x'] == "x'"

    def test_different_structures(self):
        assert not are_isomorphic(fixtures.crossing_graph(), fixtures.crossing_blowup())
        assert not are_isomorphic(fixtures.intro_graph(), fixtures.intro_relational_graph())


class TestMorphismProperties:
    """単射・埋め込み・点ごとの全射のテスト"""

    def test_vertices_into_edge(self):
        """二頂点だけの構造から辺への包含は埋め込みだが全射でない"""
        edge = fixtures.edge_structure()
        vertices = fixtures.relational_graph(['v0', 'v1'], {}, level=Level.FUNCTIONAL)
        inclusion = RelMorphism(vertices, edge, {'v0': 'v0', 'v1': 'v1'})
        assert is_mono(inclusion)
        assert is_embedding(inclusion)
        assert not is_pointwise_surjective(inclusion)

    def test_edge_without_source(self):
        """関係を反映しない単射は埋め込みでない"""
        edge = fixtures.edge_structure()
        loose = fixtures.relational_graph(['v0', 'v1'], {'e': ([], ['v1'])})
        inclusion = RelMorphism(loose, edge, {'v0': 'v0', 'v1': 'v1', 'e': 'e'})
        assert is_morphism(inclusion)[0]
        assert is_mono(inclusion)
        assert is_pointwise_surjective(inclusion)
        assert not is_embedding(inclusion)

    def test_fold_is_surjective_not_mono(self):
        edge = fixtures.edge_structure()
        doubled = fixtures.relational_graph(
            ['v0', 'v1'], {'e1': (['v0'], ['v1']), 'e2': (['v0'], ['v1'])}, level=Level.FUNCTIONAL,
        )
        fold = RelMorphism(doubled, edge, {'v0': 'v0', 'v1': 'v1', 'e1': 'e', 'e2': 'e'})
        assert is_pointwise_surjective(fold)
        assert not is_mono(fold)
        assert not is_embedding(fold)


class TestCellNames:
    """セル命名と座標表記のテスト"""

    def test_generated_names(self):
        assert CellNamer.fresh_face('b2', '+') == 'b2·+'
        assert CellNamer.realized('cell', 'alpha', '(1/2,1/2)') == 'cell:alpha:(1/2,1/2)'
        assert CellNamer.instance_anchor('--', 'alpha', 's') == 'alpha|--|s'
        assert CellNamer.subset(['x', 'b1', 'a1']) == '{a1,b1,x}'
        assert CellNamer.selection('a', ['x', 'y1']) == 'a<x,y1>'

    def test_points(self):
        """空文字列は 0 次元の点"""
        assert parse_point('') == ()
        assert parse_point('1/2,1/4') == (Fraction(1, 2), Fraction(1, 4))
        assert FractionFormatter.tuple_name(parse_point('(3/4)')) == '(3/4)'
        with pytest.raises(DocumentError):
            parse_point('1/0')
