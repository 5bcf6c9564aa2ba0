"""
余極限コマンド

colimit --diagram <file>: 図式の対象はファイル参照またはインライン文書、射は成分の対応で与える
"""

import argparse
import logging

from core.colimits import Diagram, finite_colimit
from core.errors import DocumentError
from core.structures import Level
from core.validation import validate_level

from .common import EXIT_OK, ValidationFailure, load, write_document

# ログ設定
logger = logging.getLogger(__name__)


def run_colimit(args: argparse.Namespace) -> int:
    diagram = load(args.diagram)
    if not isinstance(diagram, Diagram):
        raise DocumentError(f"{args.diagram}: expected a diagram document")
    for name, structure in sorted(diagram.objects.items()):
        report = validate_level(structure, structure.level)
        if not report.ok:
            raise ValidationFailure([f"{name}\t{line}" for line in report.lines()])
    result, cocone = finite_colimit(diagram, Level.parse(args.level), name=args.name or '')
    logger.info(f"colimit cocone legs: {', '.join(sorted(cocone))}")
    write_document(result, args.output)
    return EXIT_OK


def register(subparsers) -> None:
    """サブコマンドの登録"""
    parser = subparsers.add_parser('colimit', help='有限図式の余極限')
    parser.add_argument('--diagram', required=True)
    parser.add_argument('--level', choices=[Level.FAMILY.value, Level.LAX.value], default=Level.LAX.value,
                        help='family では商のみ、lax では合成閉包までとる')
    parser.add_argument('--name')
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_colimit)
