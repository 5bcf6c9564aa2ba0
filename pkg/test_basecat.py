#!/usr/bin/env python3
"""
基底圏テスト
余面語の合成・分解、切り詰めた立方体圏、グラフ圏、合成表による有限圏
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

from core.basecat import (
    CofaceWord,
    ElementaryCoface,
    compose_words,
    cube_category,
    decompose,
    graph_category,
    table_category,
    word_key,
    words_between,
)
from core.errors import DimensionMismatchError, DocumentError, UnknownMorphismError


class TestCofaceWords:
    """余面語の演算テスト"""

    def test_domain_and_codomain(self):
        """0 の個数が始域、長さが終域"""
        word = CofaceWord('-+0')
        assert (word.dom, word.cod) == (1, 3)
        assert word.codimension == 2
        assert not word.is_elementary
        assert CofaceWord('0-').is_elementary
        assert CofaceWord.identity(2).is_identity

    def test_letters_outside_alphabet_rejected(self):
        """'-0+' 以外の文字は拒否"""
        with pytest.raises(DocumentError):
            CofaceWord('0x')

    def test_composition_examples(self):
        """outer の 0 の位置に inner の文字が入る"""
        assert compose_words(CofaceWord('-'), CofaceWord('0-')).letters == '--'
        assert compose_words(CofaceWord('-0'), CofaceWord('0+0')).letters == '-+0'
        assert compose_words(CofaceWord('+'), CofaceWord('+0')).letters == '++'

    def test_composition_type_mismatch(self):
        """型の合わない合成は DimensionMismatchError"""
        with pytest.raises(DimensionMismatchError):
            compose_words(CofaceWord('-'), CofaceWord('-'))

    def test_decompose_round_trip(self):
        """分解した基本余面を順に合成すると元に戻る"""
        for word in words_between(1, 3) + words_between(0, 2):
            parts = decompose(word)
            assert len(parts) == word.codimension
            assert CofaceWord.from_elementary(parts, dom=word.dom) == word

    def test_decompose_positions_increase(self):
        """分解の位置は狭義単調増加"""
        parts = decompose(CofaceWord('-+0'))
        assert parts == [ElementaryCoface(1, 0, '-'), ElementaryCoface(2, 1, '+')]
        assert decompose(CofaceWord('00')) == []

    def test_elementary_words(self):
        """n → n+1 の基本余面は 2(n+1) 個"""
        words = [w.letters for w in CofaceWord.elementary_words(1)]
        assert words == ['-0', '+0', '0-', '0+']
        with pytest.raises(DimensionMismatchError):
            ElementaryCoface(1, 2, '-')

    def test_word_order(self):
        """短い語が先、文字は - < 0 < +"""
        words = ['0+', '-', '+-', '0-', '', '-0']
        assert sorted(words, key=word_key) == ['', '-', '-0', '0-', '0+', '+-']


class TestCubeCategory:
    """立方体圏テスト"""

    def test_morphism_count(self):
        """hom(n, m) は C(m, n)·2^(m-n) 個"""
        cube = cube_category(2)
        assert cube.objects == ('0', '1', '2')
        assert len(cube.morphisms) == 13
        assert len(cube.hom('0', '2')) == 4
        assert len(cube.hom('1', '2')) == 4

    def test_axioms_hold(self):
        """合成表は圏の公理を満たす"""
        assert cube_category(3).check_axioms() == []

    def test_compose_is_outer_after_inner(self):
        """compose(inner, outer) = outer ∘ inner"""
        cube = cube_category(2)
        assert cube.compose('-', '0+') == '-+'
        assert cube.compose('', '-') == '-'

    def test_unknown_morphism(self):
        """未知の射は UnknownMorphismError"""
        with pytest.raises(UnknownMorphismError):
            cube_category(1).dom('00')

    def test_negative_dimension(self):
        with pytest.raises(DimensionMismatchError):
            cube_category(-1)

    def test_graph_category_is_cube_one(self):
        """グラフ圏は種類と名前以外は cube(1) と等しい"""
        graph = graph_category()
        assert graph.kind == 'graph'
        assert graph == cube_category(1)
        assert graph.is_cubical and graph.max_dim == 1


class TestTableCategory:
    """合成表による有限圏テスト"""

    def test_identity_composites_filled(self):
        """恒等射との合成は自動で補われる"""
        category = table_category(
            'arrow', ['a', 'b'],
            {'ida': ('a', 'a'), 'idb': ('b', 'b'), 'f': ('a', 'b')},
            {'a': 'ida', 'b': 'idb'},
            {},
        )
        assert category.compose('ida', 'f') == 'f'
        assert category.compose('f', 'idb') == 'f'
        assert not category.is_cubical
        assert category.max_dim is None

    def test_missing_composite_rejected(self):
        """合成が欠けた表は DocumentError"""
        with pytest.raises(DocumentError):
            table_category(
                'chain', ['a', 'b', 'c'],
                {'ida': ('a', 'a'), 'idb': ('b', 'b'), 'idc': ('c', 'c'), 'f': ('a', 'b'), 'g': ('b', 'c')},
                {'a': 'ida', 'b': 'idb', 'c': 'idc'},
                {},
            )

    def test_words_unavailable(self):
        """合成表の圏には余面語がない"""
        category = table_category('point', ['a'], {'ida': ('a', 'a')}, {'a': 'ida'}, {})
        with pytest.raises(UnknownMorphismError):
            category.word('ida')
