"""
例外定義

ライブラリ全体で使う例外階層。検証系の処理は例外を投げずにレポートを返し、
ここに定義した例外は入力そのものが不正な場合にのみ使う。
"""


class RelPshError(Exception):
    """関係的前層ライブラリの基底例外"""


class DimensionMismatchError(RelPshError, ValueError):
    """合成できない射・次元の食い違い"""


class UnknownCellError(RelPshError, ValueError):
    """存在しないセル識別子"""


class MorphismError(RelPshError, ValueError):
    """成分が全域でない、あるいは対象をまたぐ写像"""


class DocumentError(RelPshError, ValueError):
    """JSONドキュメントのスキーマ違反"""


class BlowupDimensionError(RelPshError, ValueError):
    """blowupの次元指定を超えるセルがある"""


class FibrationError(RelPshError, ValueError):
    """離散ファイブレーションでない射に対するψの適用"""


class UnknownMorphismError(RelPshError, ValueError):
    """基底圏に存在しない射の名前"""


class LevelError(RelPshError, ValueError):
    """構造が要求された公理レベルを満たさない"""
