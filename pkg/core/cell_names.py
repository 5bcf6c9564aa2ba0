"""
Cell Names Module
新しく作るセルの決定的な命名規則
"""

from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from .errors import DocumentError


class CellNamer:
    """セル命名クラス"""

    FRESH_SEPARATOR = '·'
    PREFIX_SEPARATOR = ':'
    TENSOR_SEPARATOR = '*'
    COMPLETION_PREFIX = 'bot'

    @classmethod
    def fresh_face(cls, cell: str, morphism: str) -> str:
        """
        自由に付け加えた面の名前

        Examples:
            fresh_face("b2", "+") → "b2·+"
        """
        return f"{cell}{cls.FRESH_SEPARATOR}{morphism}"

    @classmethod
    def prefixed(cls, prefix: str, cell: str) -> str:
        """直和の成分に付ける名前 "i:cell" """
        return f"{prefix}{cls.PREFIX_SEPARATOR}{cell}"

    @classmethod
    def realized(cls, block_kind: str, anchor: str, local: str) -> str:
        """
        実現で作るブロックのセル名

        Examples:
            realized("cell", "alpha", "(1/2,1/2)") → "cell:alpha:(1/2,1/2)"
        """
        return f"{block_kind}{cls.PREFIX_SEPARATOR}{anchor}{cls.PREFIX_SEPARATOR}{local}"

    @staticmethod
    def instance_anchor(morphism: str, big: str, small: str) -> str:
        return f"{big}|{morphism}|{small}"

    @staticmethod
    def subset(cells: Iterable[str]) -> str:
        """部分対象の名前 "{a,b,x}" """
        return '{' + ','.join(sorted(cells)) + '}'

    @classmethod
    def tensor(cls, left: str, right: str) -> str:
        return f"{left}{cls.TENSOR_SEPARATOR}{right}"

    @classmethod
    def completion_copy(cls, cell: str) -> str:
        return f"{cls.COMPLETION_PREFIX}{cls.PREFIX_SEPARATOR}{cell}"

    @staticmethod
    def selection(top: str, boundary: Sequence[str]) -> str:
        """
        余反射で、同じ頂点像を持つ選択を区別する名前

        Examples:
            selection("a", ["x", "y1"]) → "a<x,y1>"
        """
        return f"{top}<{','.join(boundary)}>"


class FractionFormatter:
    """細分セルの座標表記"""

    @staticmethod
    def format(value: Fraction) -> str:
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    @classmethod
    def tuple_name(cls, coordinates: Sequence[Fraction]) -> str:
        """
        Examples:
            tuple_name((1/4, 1/2)) → "(1/4,1/2)"
            tuple_name(()) → "()"
        """
        return '(' + ','.join(cls.format(t) for t in coordinates) + ')'

    @staticmethod
    def parse_tuple(text: str) -> Tuple[Fraction, ...]:
        text = text.strip()
        if not (text.startswith('(') and text.endswith(')')):
            raise DocumentError(f"not a coordinate tuple: {text!r}")
        body = text[1:-1].strip()
        if not body:
            return ()
        try:
            return tuple(Fraction(part.strip()) for part in body.split(','))
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"not a coordinate tuple: {text!r}")


# 便利関数
def parse_point(text: str) -> Tuple[Fraction, ...]:
    """
    "1/2,1/4" 形式の点を有理数の組に変換

    空文字列は 0 次元の点 () を表す。
    """
    text = text.strip()
    if not text:
        return ()
    if not text.startswith('('):
        text = f"({text})"
    return FractionFormatter.parse_tuple(text)
