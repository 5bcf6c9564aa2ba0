"""
Commands Package

コマンドライン層のパッケージ初期化ファイル
動詞の系統ごとのモジュールがサブコマンドを登録する
"""

# バージョン情報
from version import __version__
__author__ = "relpsh 開発チーム"

# コマンドモジュールの明示的なインポート
from . import structure_commands
from . import colimit_commands
from . import realization_commands
from . import blowup_commands
from . import fibration_commands

# パッケージ情報
__all__ = [
    'structure_commands',
    'colimit_commands',
    'realization_commands',
    'blowup_commands',
    'fibration_commands',
]

COMMAND_MODULES = [
    structure_commands,
    colimit_commands,
    realization_commands,
    blowup_commands,
    fibration_commands,
]


def register_all(subparsers) -> None:
    """全てのサブコマンドを登録"""
    for module in COMMAND_MODULES:
        module.register(subparsers)
