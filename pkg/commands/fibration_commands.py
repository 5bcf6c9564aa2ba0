"""
ファイブレーションコマンド

psh2fib / fib2psh / check-fibration / check-local-embedding
"""

import argparse
import logging

from core.cell_names import CellNamer
from core.fibrations import phi, psi
from core.structures import is_morphism
from core.transforms import is_discrete_fibration, local_embedding_violations

from .common import EXIT_OK, ValidationFailure, load_morphism, load_presheaf, write_document, write_lines

# ログ設定
logger = logging.getLogger(__name__)


def run_psh2fib(args: argparse.Namespace) -> int:
    """要素の前層から射影 φ(F) → P を作る"""
    presheaf = load_presheaf(args.file)
    problems = presheaf.check_functoriality()
    if problems:
        raise ValidationFailure(problems, f"{args.file} is not a presheaf on the category of elements")
    _, projection = phi(presheaf)
    write_document(projection, args.output)
    return EXIT_OK


def run_fib2psh(args: argparse.Namespace) -> int:
    write_document(psi(_checked_morphism(args.file)), args.output)
    return EXIT_OK


def run_check_fibration(args: argparse.Namespace) -> int:
    """持ち上げの失敗を "x|f|y<TAB>upstairs<TAB>lifts=..." で出す"""
    ok, failures = is_discrete_fibration(_checked_morphism(args.file))
    if not ok:
        raise ValidationFailure(
            f"{CellNamer.instance_anchor(f['morphism'], f['big'], f['small'])}\t{f['upstairs_small']}\t"
            f"lifts={','.join(f['lifts']) or '-'}"
            for f in failures
        )
    write_lines(['ok\tdiscrete-fibration'], args.output)
    return EXIT_OK


def run_check_local_embedding(args: argparse.Namespace) -> int:
    violations = local_embedding_violations(_checked_morphism(args.file))
    if violations:
        raise ValidationFailure(f"{f}\t{a}\t{b}\t{c}" for f, a, b, c in violations)
    write_lines(['ok\tlocal-embedding'], args.output)
    return EXIT_OK


def _checked_morphism(path: str):
    alpha = load_morphism(path)
    ok, broken = is_morphism(alpha)
    if not ok:
        raise ValidationFailure(
            (CellNamer.instance_anchor(f, x, y) + '\tnot-preserved' for f, x, y in broken),
            f"{path} is not a morphism",
        )
    return alpha


def register(subparsers) -> None:
    """サブコマンドの登録"""
    parser = subparsers.add_parser('psh2fib', help='要素の前層 → 離散ファイブレーション')
    parser.add_argument('file')
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_psh2fib)

    parser = subparsers.add_parser('fib2psh', help='離散ファイブレーション → 要素の前層')
    parser.add_argument('file')
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_fib2psh)

    parser = subparsers.add_parser('check-fibration', help='離散ファイブレーションかどうか')
    parser.add_argument('file')
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_check_fibration)

    parser = subparsers.add_parser('check-local-embedding', help='局所埋め込みかどうか')
    parser.add_argument('file')
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_check_local_embedding)
