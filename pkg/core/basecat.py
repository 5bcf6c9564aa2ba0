"""
基底圏モジュール (basecat)

有限基底圏・次元で切り詰めた立方体圏・グラフ圏と、余面語 (coface word) の演算。
立方体圏の射は "-0+" 上の語で表し、長さ m で 0 を n 個含む語が射 n → m になる。
"""

import itertools
import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from .errors import DimensionMismatchError, DocumentError, UnknownMorphismError

# ログ設定
logger = logging.getLogger(__name__)

SIGNS = ('-', '+')
LETTERS = '-0+'
LETTER_ORDER = {'-': 0, '0': 1, '+': 2}


@dataclass(frozen=True)
class CofaceWord:
    """
    立方体圏の射の正規形

    letters の 0 の個数が始域、長さが終域。
    """
    letters: str

    def __post_init__(self):
        bad = set(self.letters) - set(LETTERS)
        if bad:
            raise DocumentError(f"coface word {self.letters!r} has letters outside '-0+'")

    @classmethod
    def identity(cls, n: int) -> 'CofaceWord':
        return cls('0' * n)

    @property
    def dom(self) -> int:
        return self.letters.count('0')

    @property
    def cod(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return self.dom == self.cod

    @property
    def is_elementary(self) -> bool:
        """非ゼロ文字がちょうど1つ"""
        return self.cod - self.dom == 1

    @property
    def codimension(self) -> int:
        return self.cod - self.dom

    @classmethod
    def elementary_words(cls, n: int) -> List['CofaceWord']:
        """n → n+1 の基本余面の語（語順）"""
        return [ElementaryCoface(n, i, sign).word for i in range(n + 1) for sign in SIGNS]

    @classmethod
    def from_elementary(cls, cofaces: List['ElementaryCoface'], dom: int = 0) -> 'CofaceWord':
        return compose_elementary(cofaces, dom)

    def nonzero_positions(self) -> List[int]:
        return [i for i, letter in enumerate(self.letters) if letter != '0']

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (len(self.letters), tuple(LETTER_ORDER[letter] for letter in self.letters))

    def __str__(self) -> str:
        return self.letters


@dataclass(frozen=True)
class ElementaryCoface:
    """基本余面 d^sign_{n,i} : n → n+1"""
    n: int
    i: int
    sign: str

    def __post_init__(self):
        if self.sign not in SIGNS:
            raise DocumentError(f"elementary coface sign must be '-' or '+', got {self.sign!r}")
        if not 0 <= self.i <= self.n:
            raise DimensionMismatchError(f"position {self.i} out of range for d_{{{self.n},i}}")

    @property
    def word(self) -> CofaceWord:
        return CofaceWord('0' * self.i + self.sign + '0' * (self.n - self.i))

    def __str__(self) -> str:
        return f"d{self.sign}_{{{self.n},{self.i}}}"


def word_key(letters: str) -> Tuple[int, Tuple[int, ...]]:
    """語の整列キー（短い語が先、文字は - < 0 < +）"""
    return CofaceWord(letters).sort_key()


def compose_words(inner: CofaceWord, outer: CofaceWord) -> CofaceWord:
    """
    余面語の合成 outer ∘ inner

    outer の非ゼロ文字はそのまま残り、outer の 0 の位置に inner の文字が順に入る。

    Args:
        inner: 先に適用する射 n → m
        outer: 後に適用する射 m → p

    Returns:
        CofaceWord: n → p

    Examples:
        compose_words("-", "0-") → "--"
        compose_words("-0", "0+0") → "-+0"
    """
    if inner.cod != outer.dom:
        raise DimensionMismatchError(
            f"cannot compose {inner.letters!r} ({inner.dom}→{inner.cod}) "
            f"with {outer.letters!r} ({outer.dom}→{outer.cod})"
        )
    filling = iter(inner.letters)
    return CofaceWord(''.join(next(filling) if letter == '0' else letter for letter in outer.letters))


def decompose(word: CofaceWord) -> List[ElementaryCoface]:
    """
    余面語を位置が狭義単調増加の基本余面の列に分解する

    j 番目の要素は d^{ε_j}_{n+j-1, i_j}。列の先頭から順に合成すると元の語に戻る。

    Examples:
        decompose("-+0") → [d-_{1,0}, d+_{2,1}]
        decompose("00") → []
    """
    n = word.dom
    return [
        ElementaryCoface(n + j, position, word.letters[position])
        for j, position in enumerate(word.nonzero_positions())
    ]


def compose_elementary(cofaces: List[ElementaryCoface], dom: Optional[int] = None) -> CofaceWord:
    """基本余面の列を順に合成する（空列なら dom 上の恒等語）"""
    if not cofaces:
        return CofaceWord.identity(dom or 0)
    result = cofaces[0].word
    for coface in cofaces[1:]:
        result = compose_words(result, coface.word)
    return result


def words_between(dom: int, cod: int) -> List[CofaceWord]:
    """長さ cod で 0 を dom 個含む全ての語（語順で整列）"""
    if dom > cod or dom < 0:
        return []
    words = []
    for zero_positions in itertools.combinations(range(cod), dom):
        others = [i for i in range(cod) if i not in zero_positions]
        for signs in itertools.product(SIGNS, repeat=len(others)):
            letters = ['0'] * cod
            for position, sign in zip(others, signs):
                letters[position] = sign
            words.append(CofaceWord(''.join(letters)))
    return sorted(words, key=CofaceWord.sort_key)


@dataclass(frozen=True)
class FiniteBaseCategory:
    """
    合成表で与える有限圏

    morphisms は射の名前 → (始域, 終域)。table は (inner, outer) → outer∘inner。
    立方体圏では射の名前は余面語の文字列そのもの。
    """
    objects: Tuple[str, ...]
    morphisms: Mapping[str, Tuple[str, str]] = field(repr=False)
    identities: Mapping[str, str] = field(repr=False)
    table: Mapping[Tuple[str, str], str] = field(repr=False)
    kind: str = field(default='table', compare=False)
    name: str = field(default='', compare=False)

    # ===== 射の基本情報 =====

    def _lookup(self, f: str) -> Tuple[str, str]:
        try:
            return self.morphisms[f]
        except KeyError:
            raise UnknownMorphismError(f"morphism {f!r} is not in base category {self.name or self.kind}")

    def dom(self, f: str) -> str:
        return self._lookup(f)[0]

    def cod(self, f: str) -> str:
        return self._lookup(f)[1]

    def identity(self, c: str) -> str:
        return self.identities[c]

    def is_identity(self, f: str) -> bool:
        return self.identities.get(self.dom(f)) == f

    def has_morphism(self, f: str) -> bool:
        return f in self.morphisms

    @property
    def is_cubical(self) -> bool:
        return self.kind in ('cube', 'graph')

    @property
    def max_dim(self) -> Optional[int]:
        if not self.is_cubical:
            return None
        return max(int(c) for c in self.objects)

    def word(self, f: str) -> CofaceWord:
        """立方体的な基底での射の余面語"""
        if not self.is_cubical:
            raise UnknownMorphismError(f"base category {self.name or self.kind} has no coface words")
        self._lookup(f)
        return CofaceWord(f)

    def morphism_key(self, f: str):
        if self.is_cubical:
            return word_key(f)
        return (0, f)

    def sorted_morphisms(self) -> List[str]:
        return sorted(self.morphisms, key=self.morphism_key)

    def hom(self, d: str, c: str) -> List[str]:
        """d → c の射を整列して返す"""
        return sorted(
            (f for f, (dom, cod) in self.morphisms.items() if dom == d and cod == c),
            key=self.morphism_key,
        )

    def morphisms_into(self, c: str) -> List[str]:
        return sorted((f for f, (_, cod) in self.morphisms.items() if cod == c), key=self.morphism_key)

    def morphisms_from(self, d: str) -> List[str]:
        return sorted((f for f, (dom, _) in self.morphisms.items() if dom == d), key=self.morphism_key)

    # ===== 合成 =====

    def compose(self, inner: str, outer: str) -> str:
        """outer ∘ inner（inner を先に適用）"""
        if self.cod(inner) != self.dom(outer):
            raise DimensionMismatchError(f"morphisms {inner!r} and {outer!r} are not composable")
        return self.table[(inner, outer)]

    def composable_pairs(self) -> Iterator[Tuple[str, str]]:
        for inner in self.sorted_morphisms():
            for outer in self.morphisms_from(self.cod(inner)):
                yield inner, outer

    def check_axioms(self) -> List[str]:
        """
        圏の公理を全数検査する

        Returns:
            List[str]: 違反の説明（空なら圏として正しい）
        """
        problems: List[str] = []
        for f, (dom, cod) in self.morphisms.items():
            if dom not in self.objects or cod not in self.objects:
                problems.append(f"morphism {f!r} has undeclared endpoint ({dom}, {cod})")
        if problems:
            return problems
        for c in self.objects:
            ident = self.identities.get(c)
            if ident is None or self.morphisms.get(ident) != (c, c):
                problems.append(f"object {c!r} has no identity")
        if problems:
            return problems

        for inner, outer in self.composable_pairs():
            result = self.table.get((inner, outer))
            if result is None:
                problems.append(f"composite of {inner!r} then {outer!r} is missing")
            elif self.morphisms.get(result) != (self.dom(inner), self.cod(outer)):
                problems.append(f"composite of {inner!r} then {outer!r} has wrong type")
        if problems:
            return problems

        for f in self.morphisms:
            if self.compose(self.identity(self.dom(f)), f) != f:
                problems.append(f"identity on {self.dom(f)!r} is not right neutral for {f!r}")
            if self.compose(f, self.identity(self.cod(f))) != f:
                problems.append(f"identity on {self.cod(f)!r} is not left neutral for {f!r}")

        for f, g in self.composable_pairs():
            fg = self.compose(f, g)
            for h in self.morphisms_from(self.cod(g)):
                if self.compose(fg, h) != self.compose(f, self.compose(g, h)):
                    problems.append(f"composition is not associative on ({f!r}, {g!r}, {h!r})")
        return problems


@lru_cache(maxsize=None)
def cube_category(max_dim: int) -> FiniteBaseCategory:
    """
    次元 max_dim で切り詰めた立方体圏

    対象は "0".."max_dim"、hom(n, m) は長さ m で 0 を n 個含む全ての語。
    """
    if max_dim < 0:
        raise DimensionMismatchError(f"max_dim must be non-negative, got {max_dim}")

    morphisms: Dict[str, Tuple[str, str]] = {}
    for cod in range(max_dim + 1):
        for dom in range(cod + 1):
            for word in words_between(dom, cod):
                morphisms[word.letters] = (str(dom), str(cod))

    table: Dict[Tuple[str, str], str] = {}
    for inner, (_, middle) in morphisms.items():
        for outer, (outer_dom, _) in morphisms.items():
            if outer_dom == middle:
                table[(inner, outer)] = compose_words(CofaceWord(inner), CofaceWord(outer)).letters

    logger.debug(f"cube category up to dim {max_dim}: {len(morphisms)} morphisms, {len(table)} composites")
    return FiniteBaseCategory(
        objects=tuple(str(n) for n in range(max_dim + 1)),
        morphisms=morphisms,
        identities={str(n): '0' * n for n in range(max_dim + 1)},
        table=table,
        kind='cube',
        name=f"cube<={max_dim}",
    )


@lru_cache(maxsize=None)
def graph_category() -> FiniteBaseCategory:
    """
    グラフ圏（立方体圏の対象 0, 1 上の充満部分圏）

    射は id_0 = ""、id_1 = "0"、ソース s = "-"、ターゲット t = "+"。
    """
    return replace(cube_category(1), kind='graph', name='graph')


def table_category(name: str,
                   objects: List[str],
                   morphisms: Mapping[str, Tuple[str, str]],
                   identities: Mapping[str, str],
                   compose: Mapping[Tuple[str, str], str]) -> FiniteBaseCategory:
    """
    明示的な合成表から有限圏を作る

    恒等射との合成は省略してよい（自動で補う）。公理違反があれば DocumentError。
    """
    full_table: Dict[Tuple[str, str], str] = dict(compose)
    for f, (dom, cod) in morphisms.items():
        if dom in identities:
            full_table.setdefault((identities[dom], f), f)
        if cod in identities:
            full_table.setdefault((f, identities[cod]), f)

    category = FiniteBaseCategory(
        objects=tuple(objects),
        morphisms=dict(morphisms),
        identities=dict(identities),
        table=full_table,
        kind='table',
        name=name,
    )
    problems = category.check_axioms()
    if problems:
        raise DocumentError(f"table category {name!r} is not a category: {problems[0]}")
    return category
