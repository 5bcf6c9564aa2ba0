#!/usr/bin/env python3
"""
Blowup テスト
テンソル積、ユークリッド的ブロック、全射的局所埋め込み、blowup と完備化
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
from core.basecat import cube_category
from core.blowup import (
    BrickSignature,
    all_axes,
    blowup,
    blowup_completion,
    double_interval_graph,
    interval_graph,
    point,
    standard_brick,
    surjective_local_embeddings,
    tensor,
)
from core.colimits import coproduct
from core.errors import BlowupDimensionError, DimensionMismatchError, LevelError
from core.fibrations import psi
from core.morphism_search import are_isomorphic
from core.structures import representable
from core.transforms import is_discrete_fibration, is_local_embedding


class TestTensor:
    """テンソル積テスト"""

    def test_interval_squared_is_square(self):
        """I ⊗ I ≅ y(2)"""
        square = tensor(interval_graph(), interval_graph())
        assert square.size == 9
        assert are_isomorphic(square, representable(cube_category(2), '2'))

    def test_interval_times_double_interval(self):
        """I ⊗ J は 6 頂点・7 辺・2 正方形"""
        product = tensor(interval_graph(), double_interval_graph())
        assert product.size == 15
        assert [len(product.carrier(c)) for c in '012'] == [6, 7, 2]
        assert product.faces_along('e*e1', '0+') == ('e*u1',)
        assert product.faces_along('e*e1', '-0') == ('v0*e1',)

    def test_point_is_unit(self):
        assert are_isomorphic(tensor(interval_graph(), point()), interval_graph())

    def test_relational_factor_rejected(self):
        with pytest.raises(LevelError):
            tensor(fixtures.intro_relational_graph(), interval_graph())


class TestBricks:
    """ユークリッド的ブロックテスト"""

    @pytest.mark.parametrize('axes, size', [('II', 1), ('IJ', 3), ('JI', 3), ('JJ', 9)])
    def test_brick_sizes(self, axes, size):
        """N(min(I_{k,2-k})) は 1・3・9 セル"""
        signature = BrickSignature(2, axes.count('I'), axes)
        brick, minimum = standard_brick(signature)
        assert brick.size == size
        assert brick.dim(minimum) == signature.k
        assert [c for c in brick.cells() if brick.dim(c) == signature.k] == [minimum]

    def test_all_axes(self):
        assert [sig.axes for sig in all_axes(2, 1)] == ['IJ', 'JI']
        assert [sig.axes for sig in all_axes(3, 1)] == ['IJJ', 'JIJ', 'JJI']
        with pytest.raises(DimensionMismatchError):
            all_axes(2, 3)

    def test_signature_checked(self):
        with pytest.raises(DimensionMismatchError):
            BrickSignature(2, 1, 'II')


class TestLocalEmbeddings:
    """全射的局所埋め込みテスト"""

    def test_crossing_vertices(self):
        """交差グラフの頂点 x は四つの点に分かれる"""
        found = surjective_local_embeddings(1, 0, fixtures.crossing_graph())
        assert [e.name for e in found] == ['{a1,b1,x}', '{a1,b2,x}', '{a2,b1,x}', '{a2,b2,x}']
        assert all(e.base_cell == 'x' for e in found)

    def test_crossing_edges(self):
        found = surjective_local_embeddings(1, 1, fixtures.crossing_graph())
        assert [e.name for e in found] == ['{a1}', '{a2}', '{b1}', '{b2}']

    def test_closed_square_has_no_edge_bricks(self):
        """一つの正方形では辺のブロックの二つの正方形を覆えない"""
        assert surjective_local_embeddings(2, 1, fixtures.closed_square()) == []


class TestBlowup:
    """blowup と完備化のテスト"""

    def test_crossing_graph(self):
        """交差グラフの blowup は H と同型で、β は局所埋め込み"""
        result = blowup(fixtures.crossing_graph(), 1)
        assert are_isomorphic(result.structure, fixtures.crossing_blowup())
        assert result.is_lax
        non_identity = sum(
            len(pairs) for f, pairs in result.structure.relations.items()
            if not result.structure.base.is_identity(f)
        )
        assert non_identity == 8
        assert is_local_embedding(result.beta)
        assert result.beta('{a1,b2,x}') == 'x'

    def test_crossing_completion(self):
        """完備化は 9 頂点・8 辺で、β⁺ は離散ファイブレーション"""
        graph = fixtures.crossing_graph()
        result = blowup(graph, 1)
        completed, beta_plus = blowup_completion(graph, result)
        assert len(completed.carrier('0')) == 9
        assert len(completed.carrier('1')) == 8
        assert is_discrete_fibration(beta_plus)[0]
        assert result.completion is completed
        assert result.fibration_failures == []
        assert beta_plus('bot:x') == 'x'

    def test_completion_fibers(self):
        """ψ(β⁺) のファイバーは blowup のセルと底の複製一つ"""
        graph = fixtures.crossing_graph()
        result = blowup(graph, 1)
        _, beta_plus = blowup_completion(graph, result)
        presheaf = psi(beta_plus)
        assert len(presheaf.fibers['x']) == 5
        assert len(presheaf.fibers['a1']) == 2
        assert len(presheaf.fibers['l1']) == 1
        assert sum(len(es) for es in presheaf.fibers.values()) == 17

    def test_lone_square(self):
        """閉じた正方形の blowup は開いた 2 セル一つ"""
        result = blowup(fixtures.closed_square(), 2)
        assert result.structure.cells() == ['{[00]}']
        assert result.structure.pair_count == 1
        assert result.beta('{[00]}') == '[00]'

    def test_two_squares(self):
        """辺を共有する二つの正方形は 2 正方形・1 辺・2 関係"""
        result = blowup(fixtures.two_squares(), 2)
        structure = result.structure
        assert len(structure.carrier('2')) == 2
        assert len(structure.carrier('1')) == 1
        assert len(structure.carrier('0')) == 0
        assert structure.pair_count == 3 + 2
        assert is_local_embedding(result.beta)

    def test_lone_cube(self):
        """閉じた立方体の blowup も開いたセル一つ"""
        result = blowup(fixtures.closed_cube(), 3)
        assert result.structure.cells() == ['{[000]}']
        assert result.beta('{[000]}') == '[000]'

    def test_two_cubes(self):
        """正方形を共有する二つの立方体は 2 立方体・1 正方形"""
        result = blowup(fixtures.two_cubes(), 3)
        structure = result.structure
        assert [len(structure.carrier(c)) for c in '0123'] == [0, 0, 1, 2]
        assert structure.pair_count == 3 + 2
        assert is_local_embedding(result.beta)
        (square,) = structure.carrier('2')
        assert result.beta(square) == 'e*e*u1'

    def test_empty_blowup_completion(self):
        """blowup が空なら完備化は元の構造と同型"""
        structure = fixtures.point_structure()
        result = blowup(structure, 1)
        assert result.structure.is_empty
        completed, beta_plus = blowup_completion(structure, result)
        assert completed.cells() == ['bot:p']
        assert is_discrete_fibration(beta_plus)[0]

    def test_distributes_over_union(self):
        graph = fixtures.crossing_graph()
        union, _ = coproduct([graph, graph])
        assert blowup(union, 1).structure.size == 2 * blowup(graph, 1).structure.size

    def test_dimension_too_large(self):
        with pytest.raises(BlowupDimensionError):
            blowup(fixtures.closed_square(), 1)

    def test_relational_input_rejected(self):
        """関数的でない構造は先に反射する"""
        with pytest.raises(LevelError):
            blowup(fixtures.example_lax_square(), 2)
