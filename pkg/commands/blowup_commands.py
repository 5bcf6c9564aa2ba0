"""
blowup コマンド

blowup --dim n [--complete]: P̃ と β（--complete なら P̃⁺ と β⁺ も）を一つの文書で書き出す
"""

import argparse
import logging

from core.blowup import blowup, blowup_completion

from .common import EXIT_OK, load_structure, write_document

# ログ設定
logger = logging.getLogger(__name__)


def run_blowup(args: argparse.Namespace) -> int:
    structure = load_structure(args.file)
    result = blowup(structure, args.dim)
    if not result.is_lax:
        logger.warning(f"blowup of {args.file} is not transitively closed; emitted at level family")
    if args.complete:
        blowup_completion(structure, result)
    write_document(result, args.output)
    return EXIT_OK


def register(subparsers) -> None:
    """サブコマンドの登録"""
    parser = subparsers.add_parser('blowup', help='組合せ的 blowup')
    parser.add_argument('file')
    parser.add_argument('--dim', type=int, required=True)
    parser.add_argument('--complete', action='store_true', help='離散ファイブレーションへの完備化も計算')
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_blowup)
