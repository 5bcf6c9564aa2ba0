#!/usr/bin/env python3
"""
セル複体テスト
成分・オイラー標数・次元ごとの個数・接続行列・DOT 出力、組合せ的近傍と近傍基底
"""

import os
import sys
import logging
from fractions import Fraction

import numpy as np
import pytest

# ログ設定
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

# パス設定
sys.path.append(os.path.dirname(__file__))

from core import fixtures
from core.basecat import table_category
from core.cell_complex import (
    Attachment,
    AttachmentKind,
    CellBlock,
    CellComplex,
    RealizationMode,
    basis_neighborhood,
    cell_census,
    euler_characteristic,
    glue_cell_blocks,
    incidence_matrix,
    neighborhood,
    positive_neighborhood,
    to_dot,
)
from core.errors import DimensionMismatchError, DocumentError
from core.realization import geometric_realization
from core.structures import RelStructure

K = 8


class TestCellComplex:
    """セル複体の不変量テスト"""

    def test_euler_characteristic(self):
        """閉じた正方形は 4 - 4 + 1 = 1、例の 2 次元構造は 2 - 2 + 1 = 1"""
        assert euler_characteristic(geometric_realization(fixtures.closed_square())) == 1
        assert euler_characteristic(geometric_realization(fixtures.example_lax_square())) == 1
        assert euler_characteristic(geometric_realization(fixtures.two_squares())) == 1

    def test_census(self):
        census = cell_census(geometric_realization(fixtures.closed_square()))
        assert census.tolist() == [4, 4, 1]
        assert census.index.name == 'dim'
        assert census.name == 'cells'

    def test_incidence_matrix(self):
        """各辺はちょうど二つの頂点に接着する"""
        rows, cols, matrix = incidence_matrix(geometric_realization(fixtures.closed_square()), 1)
        assert len(rows) == 4 and len(cols) == 4
        assert matrix.shape == (4, 4)
        assert np.all(matrix.sum(axis=1) == 2)
        assert np.all(matrix.sum(axis=0) == 2)

    def test_sequential_incidence_skips_composites(self):
        """逐次モードでは合成語の接着を数えない"""
        complex_ = geometric_realization(fixtures.example_lax_square(), RealizationMode.SEQUENTIAL)
        rows, cols, matrix = incidence_matrix(complex_, 2)
        assert rows == ['alpha']
        assert cols == ['a', 'b']
        assert matrix.tolist() == [[1, 1]]
        _, vertices, matrix = incidence_matrix(complex_, 1)
        assert vertices == ['s', 't']
        assert matrix[:, 0].sum() == 0

    def test_dot_marks_unglued_attachments(self):
        dot = to_dot(geometric_realization(fixtures.example_lax_square(), RealizationMode.SEQUENTIAL))
        assert 'dashed' in dot
        assert 'alpha' in dot
        standard = to_dot(geometric_realization(fixtures.example_lax_square()))
        assert 'dashed' not in standard

    def test_attachment_dimensions_checked(self):
        """語の次元とセルの次元が食い違えば DimensionMismatchError"""
        with pytest.raises(DimensionMismatchError):
            CellComplex({'e': 1, 'v': 0}, (Attachment('e', '--', 'v', AttachmentKind.COMPOSITE),))

    def test_unknown_cell(self):
        with pytest.raises(DocumentError):
            CellComplex({'e': 1}, (Attachment('e', '-', 'v', AttachmentKind.ELEMENTARY),))

    def test_sequential_composites_cannot_glue(self):
        with pytest.raises(DocumentError):
            CellComplex(
                {'q': 2, 'v': 0},
                (Attachment('q', '--', 'v', AttachmentKind.COMPOSITE, gluing=True),),
                RealizationMode.SEQUENTIAL,
            )

    def test_glue_cell_blocks(self):
        """ブロックの貼り合わせは接着を記録し、同じ接着は一度だけ数える"""
        blocks = [
            ('q', 'e', CellBlock('-0', gluing=True)),
            ('q', 'v', CellBlock('--', gluing=False)),
            ('q', 'v', CellBlock('--', gluing=False)),
            ('e', 'v', CellBlock('-', gluing=True)),
            ('v', 'v', CellBlock('', gluing=True, shared=True)),
        ]
        complex_ = glue_cell_blocks({'q': 2, 'e': 1, 'v': 0}, blocks, RealizationMode.SEQUENTIAL)
        assert [(a.big, a.word, a.small, a.gluing) for a in complex_.attachments] == [
            ('e', '-', 'v', True),
            ('q', '--', 'v', False),
            ('q', '-0', 'e', True),
        ]
        assert complex_.attachments[1].kind is AttachmentKind.COMPOSITE


class TestNeighborhoods:
    """組合せ的近傍テスト"""

    def test_positive_neighborhood_of_corner(self):
        """角の頂点 [--] を面に持つのは自身・二辺・正方形"""
        square = fixtures.closed_square()
        assert positive_neighborhood(square, '[--]') == [
            ('[--]', ''), ('[-0]', '-'), ('[0-]', '-'), ('[00]', '--'),
        ]

    def test_neighborhood_structure(self):
        square = fixtures.closed_square()
        star = neighborhood(square, '[--]')
        assert star.size == 4
        assert star.name == 'N([--])'
        assert star.faces_along('[00]', '--') == ('[--]',)

    def test_lax_square_neighborhood(self):
        """例の 2 次元構造で s の近傍は s と alpha だけ"""
        square = fixtures.example_lax_square()
        assert positive_neighborhood(square, 's') == [('s', ''), ('alpha', '--')]


class TestBasisNeighborhood:
    """近傍基底テスト"""

    def test_corner_vertex(self):
        """頂点では各箱が ]0, 2/k[ の積"""
        basis = basis_neighborhood(fixtures.closed_square(), '[--]', ())
        assert [(t.cell, t.word) for t in basis.terms] == [
            ('[--]', ''), ('[-0]', '-'), ('[0-]', '-'), ('[00]', '--'),
        ]
        top = basis.term_for('[00]', '--')
        assert [str(i) for i in top.intervals] == [']0, 2/k[', ']0, 2/k[']
        assert top.contains((Fraction(1, 8), Fraction(1, 5)), K)
        assert not top.contains((Fraction(1, 8), Fraction(1, 2)), K)
        assert str(basis.term_for('[--]', '')) == '{[--]} × pt'

    def test_edge_midpoint(self):
        """辺の中点では辺方向が ]1/2-1/k, 1/2+1/k[、法線方向が ]0, 2/k["""
        basis = basis_neighborhood(fixtures.closed_square(), '[0-]', (Fraction(1, 2),))
        assert [(t.cell, t.word) for t in basis.terms] == [('[0-]', '0'), ('[00]', '0-')]
        top = basis.term_for('[00]', '0-')
        assert top.intervals[0].at(K) == (Fraction(3, 8), Fraction(5, 8))
        assert top.intervals[1].at(K) == (Fraction(0), Fraction(1, 4))
        assert top.contains((Fraction(1, 2), Fraction(1, 16)), K)

    def test_upper_face(self):
        """+ 側の面では ]1-2/k, 1["""
        basis = basis_neighborhood(fixtures.closed_square(), '[0+]', (Fraction(1, 2),))
        top = basis.term_for('[00]', '0+')
        assert str(top.intervals[1]) == ']1 - 2/k, 1['
        assert top.intervals[1].at(K) == (Fraction(3, 4), Fraction(1))

    def test_interior_point(self):
        """内部の点では正方形そのものの箱だけ"""
        basis = basis_neighborhood(fixtures.closed_square(), '[00]', (Fraction(1, 4), Fraction(1, 4)))
        assert len(basis.terms) == 1
        (term,) = basis.terms
        assert term.word == '00'
        assert [i.at(K) for i in term.intervals] == [(Fraction(1, 8), Fraction(3, 8))] * 2
        assert term.contains((Fraction(1, 4), Fraction(1, 4)), K)

    def test_wrong_dimension(self):
        with pytest.raises(DimensionMismatchError):
            basis_neighborhood(fixtures.closed_square(), '[00]', (Fraction(1, 2),))

    def test_point_outside_open_cube(self):
        with pytest.raises(DimensionMismatchError):
            basis_neighborhood(fixtures.closed_square(), '[00]', (Fraction(0), Fraction(1, 2)))

    def test_non_cubical_base(self):
        base = table_category(
            'walking-arrow', ['a', 'b'],
            {'id_a': ('a', 'a'), 'id_b': ('b', 'b'), 'f': ('a', 'b')},
            {'a': 'id_a', 'b': 'id_b'}, {},
        )
        structure = RelStructure(base, {'a': ['x']}, {'id_a': [('x', 'x')]})
        with pytest.raises(DimensionMismatchError):
            basis_neighborhood(structure, 'x', ())
