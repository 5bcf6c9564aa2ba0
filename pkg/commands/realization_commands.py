"""
実現コマンド

subdivide / realize / check-model / neighborhoods / basis
"""

import argparse
import logging

import config
from core.cell_complex import RealizationMode, basis_neighborhood, components, positive_neighborhood
from core.cell_names import FractionFormatter, parse_point
from core.errors import DimensionMismatchError
from core.realization import check_model, geometric_realization, model_by_name, realize, subdivide
from core.structures import rebase

from .common import EXIT_OK, ValidationFailure, load_structure, write_document, write_lines

# ログ設定
logger = logging.getLogger(__name__)

MODEL_CHOICES = ['subdivision', 'standard', 'sequential']


def run_subdivide(args: argparse.Namespace) -> int:
    write_document(subdivide(load_structure(args.file)), args.output)
    return EXIT_OK


def run_realize(args: argparse.Namespace) -> int:
    """
    --mode ではセル複体を、--model ではモデルの値（関係構造かセル複体）を書き出す
    """
    structure = load_structure(args.file)
    if args.model:
        if not structure.base.is_cubical:
            raise DimensionMismatchError("model realization needs a cubical base category")
        model = model_by_name(args.model, structure.base.max_dim)
        result = realize(rebase(structure, model.base), model)
        write_document(result, args.output)
        return EXIT_OK
    complex_ = geometric_realization(structure, RealizationMode(args.mode))
    if args.components:
        write_lines([' '.join(component) for component in components(complex_)], args.output)
    else:
        write_document(complex_, args.output)
    return EXIT_OK


def run_check_model(args: argparse.Namespace) -> int:
    """モデル条件を検査し、失敗はモデル条件ごとに1行で出す"""
    report = check_model(model_by_name(args.model, args.dim))
    if not report.ok:
        raise ValidationFailure(report.lines(), f"model {report.model} fails its conditions")
    write_lines([f"ok\t{report.model}"], args.output)
    return EXIT_OK


def run_neighborhoods(args: argparse.Namespace) -> int:
    """N⁺(c) を "c<TAB>a<TAB>f" の行で出す"""
    structure = load_structure(args.file)
    cells = [args.cell] if args.cell else structure.cells()
    lines = []
    for cell in cells:
        structure.object_of(cell)
        lines.extend(f"{cell}\t{a}\t{f}" for a, f in positive_neighborhood(structure, cell))
    write_lines(lines, args.output)
    return EXIT_OK


def run_basis(args: argparse.Namespace) -> int:
    """
    近傍基底 U_k(x) の項を1行ずつ出す

    --k を与えると区間を具体的な有理数で表示する。
    """
    structure = load_structure(args.file)
    descriptor = basis_neighborhood(structure, args.cell, parse_point(args.point))
    lines = []
    for term in descriptor.terms:
        if args.k is None:
            lines.append(f"{term.cell}\t{term.word or '-'}\t{term}")
        else:
            boxes = ' × '.join(
                f"]{FractionFormatter.format(lo)}, {FractionFormatter.format(hi)}["
                for lo, hi in (interval.at(args.k) for interval in term.intervals)
            ) or 'pt'
            lines.append(f"{term.cell}\t{term.word or '-'}\t{boxes}")
    write_lines(lines, args.output)
    return EXIT_OK


def register(subparsers) -> None:
    """サブコマンドの登録"""
    parser = subparsers.add_parser('subdivide', help='重心細分')
    parser.add_argument('file')
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_subdivide)

    parser = subparsers.add_parser('realize', help='幾何的実現（セル複体）またはモデルによる実現')
    parser.add_argument('file')
    parser.add_argument('--mode', choices=[m.value for m in RealizationMode],
                        default=config.REALIZATION_CONFIG['default_mode'])
    parser.add_argument('--model', choices=MODEL_CHOICES)
    parser.add_argument('--components', action='store_true', help='隣接成分を1行ずつ出す')
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_realize)

    parser = subparsers.add_parser('check-model', help='モデル条件の検査')
    parser.add_argument('--model', choices=MODEL_CHOICES, default=config.REALIZATION_CONFIG['default_model'])
    parser.add_argument('--dim', type=int, default=2)
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_check_model)

    parser = subparsers.add_parser('neighborhoods', help='正の近傍 N⁺(c) の一覧')
    parser.add_argument('file')
    parser.add_argument('--cell')
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_neighborhoods)

    parser = subparsers.add_parser('basis', help='点の近傍基底')
    parser.add_argument('file')
    parser.add_argument('--cell', required=True)
    parser.add_argument('--point', required=True, help='例: "1/2,1/4"')
    parser.add_argument('--k', type=int, default=None)
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_basis)
