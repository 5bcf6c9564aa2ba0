"""
relpsh - 関係的前層ワークベンチ

メインアプリケーション・コマンドラインの入口
文書ファイルを読み、検証・変換・実現・blowup の結果を文書として書き出す
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

# コマンドのインポート
import commands
from commands.common import EXIT_ERROR, EXIT_VALIDATION, ValidationFailure

# 設定のインポート
import config
from core.errors import RelPshError
from version import get_full_version_string

# ログ設定
logger = logging.getLogger(__name__)


def configure_logging(level: str, log_file: Optional[str] = None) -> None:
    """ルートロガーの設定（標準エラー出力と任意のログファイル）"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding='utf-8'))
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=config.APP_CONFIG['log_format'],
        handlers=handlers,
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    """引数パーサーの構築"""
    parser = argparse.ArgumentParser(
        prog=config.APP_CONFIG['name'],
        description='関係的前層の検証・随伴・余極限・実現・blowup',
    )
    parser.add_argument('--version', action='version', version=f"%(prog)s {get_full_version_string()}")
    parser.add_argument('--log-level', default=config.APP_CONFIG['log_level'],
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    parser.add_argument('--log-file')
    parser.add_argument('--output-dir', help='-o の相対パスの基準ディレクトリ')

    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True
    commands.register_all(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    メイン関数

    Returns:
        int: 0 成功、1 検証失敗（違反を1行ずつ標準出力へ）、2 入出力・文書・計算のエラー
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help / --version は 0、引数の誤りは 2
        return int(e.code or 0)

    configure_logging(args.log_level, args.log_file)
    if args.output_dir:
        config.update_output_config(output_dir=args.output_dir)

    try:
        return args.handler(args)

    except ValidationFailure as e:
        logger.info(f"{args.command}: {e}")
        for line in e.lines:
            print(line)
        return EXIT_VALIDATION

    except json.JSONDecodeError as e:
        print(f"error: invalid JSON: {e}", file=sys.stderr)
        logger.debug(f"{args.command}: invalid JSON", exc_info=True)
        return EXIT_ERROR

    except (RelPshError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        logger.debug(f"{args.command} failed", exc_info=True)
        return EXIT_ERROR

    finally:
        # 出力先の上書きは1回の呼び出しに限る
        config.OUTPUT_CONFIG['output_dir'] = None


if __name__ == "__main__":
    sys.exit(main())
