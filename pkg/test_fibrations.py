#!/usr/bin/env python3
"""
ファイブレーションテスト
スパン圏、要素の圏、(∫P)^op 上の前層と離散ファイブレーションの対応 φ / ψ
"""

import os
import sys
import logging

import pytest

# ログ設定
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

# パス設定
sys.path.append(os.path.dirname(__file__))

from core import fixtures
from core.basecat import graph_category
from core.errors import DocumentError, FibrationError, LevelError
from core.fibrations import (
    ElementsPresheaf,
    constant_presheaf,
    elements_category,
    extended_elements,
    fiber_neighborhood_bijection,
    phi,
    psi,
    span_category,
)
from core.morphism_search import are_isomorphic
from core.structures import Level, RelMorphism, identity_morphism
from core.transforms import is_discrete_fibration

EQUIVALENCE_SEED = 777
EQUIVALENCE_ROUNDS = 100


class TestSpanCategory:
    """スパン圏テスト"""

    def test_graph_span_category(self):
        """グラフ圏のスパン圏は 6 対象・14 射"""
        span = span_category(graph_category())
        assert len(span.objects) == 6
        assert len(span.morphisms) == 14
        assert span.kind == 'span'
        assert span.morphisms['pi0:-'] == ('rel:-', 'obj:1')
        assert span.morphisms['pi1:-'] == ('rel:-', 'obj:0')
        assert span.check_axioms() == []


class TestElementsCategory:
    """要素の圏テスト"""

    def test_edge(self):
        """辺の要素の圏は 3 対象・5 射"""
        elements = elements_category(fixtures.edge_structure())
        assert len(elements.objects) == 3
        assert len(elements.morphisms) == 5
        assert elements.morphisms['e|-|v0'] == ('v0', 'e')

    def test_axioms_for_lax_square(self):
        """lax 構造の要素の圏は合成について閉じている"""
        assert elements_category(fixtures.example_lax_square()).check_axioms() == []

    def test_non_identity_composites(self):
        """t → a → alpha の合成は alpha|++|t"""
        elements = elements_category(fixtures.example_lax_square())
        assert elements.compose('a|+|t', 'alpha|0+|a') == 'alpha|++|t'
        assert elements.compose('b|+|t', 'alpha|+0|b') == 'alpha|++|t'
        assert elements.compose('t||t', 'a|+|t') == 'a|+|t'
        non_identity = [pair for pair in elements.table
                        if not elements.is_identity(pair[0]) and not elements.is_identity(pair[1])]
        assert sorted(non_identity) == [('a|+|t', 'alpha|0+|a'), ('b|+|t', 'alpha|+0|b')]

    def test_edge_composites(self):
        elements = elements_category(fixtures.edge_structure())
        assert elements.compose('v0||v0', 'e|-|v0') == 'e|-|v0'
        assert elements.compose('e|-|v0', 'e|0|e') == 'e|-|v0'

    def test_family_rejected(self):
        with pytest.raises(LevelError):
            elements_category(fixtures.random_family(fixtures.seeded(5)))

    def test_extended_elements(self):
        """∫F(P) はセルとインスタンスを対象にし、インスタンスごとに二本の射を持つ"""
        extended = extended_elements(fixtures.example_lax_square())
        assert extended.object_count == 16
        assert extended.morphism_count == 22
        assert extended.lies_over(('++', 'alpha', 't')) == 'rel:++'
        assert len(extended_elements(fixtures.example_lax_square(), include_identities=False).instances) == 6


class TestElementsPresheaf:
    """(∫P)^op 上の前層テスト"""

    def test_constant_presheaf(self):
        """定数前層の φ は元の構造と同型"""
        graph = fixtures.crossing_graph()
        presheaf = constant_presheaf(graph)
        assert presheaf.element_count() == graph.size
        assert presheaf.check_functoriality() == []
        total, projection = phi(presheaf)
        assert are_isomorphic(total, graph)
        assert is_discrete_fibration(projection)[0]

    def test_missing_transition(self):
        """遷移が欠ければ DocumentError"""
        edge = fixtures.edge_structure()
        fibers = {c: frozenset([f"{c}.0"]) for c in edge.cells()}
        with pytest.raises(DocumentError):
            ElementsPresheaf(edge, fibers, {})

    def test_transition_leaves_fiber(self):
        edge = fixtures.edge_structure()
        fibers = {c: frozenset([f"{c}.0"]) for c in edge.cells()}
        transitions = {
            ('-', 'e', 'v0'): {'v0.0': 'v1.0'},
            ('+', 'e', 'v1'): {'v1.0': 'e.0'},
        }
        with pytest.raises(DocumentError):
            ElementsPresheaf(edge, fibers, transitions)

    def test_family_base_rejected(self):
        with pytest.raises(LevelError):
            ElementsPresheaf(fixtures.random_family(fixtures.seeded(5)), {}, {})

    def test_non_functorial_transitions_reported(self):
        """合成と整合しない遷移は check_functoriality が報告する"""
        square = fixtures.closed_square().with_level(Level.LAX)
        fibers = {c: frozenset([f"{c}.a", f"{c}.b"]) for c in square.cells()}
        transitions = {}
        for f, x, y in square.instances():
            if square.base.is_identity(f):
                continue
            # 頂点への遷移だけ入れ替える
            swap = f == '--'
            transitions[(f, x, y)] = {
                f"{y}.a": f"{x}.b" if swap else f"{x}.a",
                f"{y}.b": f"{x}.a" if swap else f"{x}.b",
            }
        presheaf = ElementsPresheaf(square, fibers, transitions)
        assert presheaf.check_functoriality() != []


class TestFibrationEquivalence:
    """φ と ψ の往復テスト"""

    def test_psi_after_phi_is_identity(self):
        """ψ(φ(F)) = F が厳密に成り立つ"""
        rng = fixtures.seeded(EQUIVALENCE_SEED)
        for _ in range(EQUIVALENCE_ROUNDS):
            structure = fixtures.random_relational_graph(rng)
            presheaf = fixtures.random_elements_presheaf(rng, structure)
            assert presheaf.check_functoriality() == []
            _, projection = phi(presheaf)
            assert psi(projection) == presheaf

    def test_phi_after_psi_is_isomorphic(self):
        """φ(ψ(α)) の全空間は α の始域と同型"""
        rng = fixtures.seeded(EQUIVALENCE_SEED + 1)
        for _ in range(EQUIVALENCE_ROUNDS):
            structure = fixtures.random_relational_graph(rng)
            _, projection = phi(fixtures.random_elements_presheaf(rng, structure))
            total, again = phi(psi(projection))
            assert are_isomorphic(total, projection.source)
            assert again.target == projection.target

    def test_fiber_neighborhoods(self):
        """離散ファイブレーションの上の各セルで N⁺ は全単射に写る"""
        rng = fixtures.seeded(EQUIVALENCE_SEED + 2)
        for _ in range(20):
            structure = fixtures.random_relational_graph(rng)
            _, projection = phi(fixtures.random_elements_presheaf(rng, structure))
            for cell in projection.source.cells():
                _, bijective = fiber_neighborhood_bijection(projection, cell)
                assert bijective

    def test_psi_rejects_non_fibration(self):
        """持ち上げが一意でなければ FibrationError"""
        edge = fixtures.edge_structure()
        doubled = fixtures.relational_graph(
            ['v0', 'v1'], {'e1': (['v0'], ['v1']), 'e2': (['v0'], ['v1'])}, level=Level.FUNCTIONAL,
        )
        fold = RelMorphism(doubled, edge, {'v0': 'v0', 'v1': 'v1', 'e1': 'e', 'e2': 'e'})
        with pytest.raises(FibrationError):
            psi(fold)

    def test_identity_is_a_fibration(self):
        presheaf = psi(identity_morphism(fixtures.intro_graph()))
        assert all(len(es) == 1 for es in presheaf.fibers.values())
