"""
構造コマンド

validate / info / complete / reflect / coreflect / reflect-partial / export
"""

import argparse
import logging
from pathlib import Path

import config
from core.cell_complex import CellComplex, RealizationMode, to_dot
from core.document_io import DocumentPrinter
from core.errors import DocumentError
from core.realization import geometric_realization
from core.structures import Level, RelStructure
from core.transforms import close_composition, coreflect_presheaf, reflect_partial, reflect_presheaf
from core.validation import PartialityReading, strongest_level, validate_level

from .common import EXIT_OK, ValidationFailure, load, load_structure, write_document, write_lines, write_text

# ログ設定
logger = logging.getLogger(__name__)

LEVEL_CHOICES = [level.value for level in Level]
EXPORT_FORMATS = ['json', 'dot', 'summary', 'census']


def run_validate(args: argparse.Namespace) -> int:
    """
    宣言レベル（または --level）で検証する

    成功時は "ok<TAB>level" を1行、失敗時は違反を1行ずつ出す。
    """
    structure = load_structure(args.file) if args.level is None else _load_undeclared(args.file)
    level = Level.parse(args.level) if args.level else structure.level
    report = validate_level(structure, level, PartialityReading(args.partiality))
    if not report.ok:
        raise ValidationFailure(report.lines(), f"{args.file} fails {level.value}")
    write_lines([f"ok\t{level.value}"], args.output)
    return EXIT_OK


def _load_undeclared(path: str) -> RelStructure:
    value = load(path)
    if not isinstance(value, RelStructure):
        raise DocumentError(f"{path}: expected a structure document")
    return value


def run_info(args: argparse.Namespace) -> int:
    structure = load_structure(args.file)
    printer = DocumentPrinter(config.OUTPUT_CONFIG['indent'])
    lines = [
        f"name\t{structure.name or '-'}",
        f"base\t{structure.base.name or structure.base.kind}",
        f"declared\t{structure.level.value}",
        f"strongest\t{strongest_level(structure).value}",
        f"cells\t{structure.size}",
        f"pairs\t{structure.pair_count}",
    ]
    summary = printer.structure_summary(structure)
    write_text('\n'.join(lines) + '\n' + summary.to_string(index=False) + '\n', args.output)
    return EXIT_OK


def run_complete(args: argparse.Namespace) -> int:
    write_document(close_composition(load_structure(args.file)), args.output)
    return EXIT_OK


def run_reflect(args: argparse.Namespace) -> int:
    reflected, unit = reflect_presheaf(load_structure(args.file))
    write_document(unit if args.unit else reflected, args.output)
    return EXIT_OK


def run_coreflect(args: argparse.Namespace) -> int:
    coreflected, counit = coreflect_presheaf(load_structure(args.file))
    write_document(counit if args.counit else coreflected, args.output)
    return EXIT_OK


def run_reflect_partial(args: argparse.Namespace) -> int:
    write_document(reflect_partial(load_structure(args.file)), args.output)
    return EXIT_OK


def run_export(args: argparse.Namespace) -> int:
    """
    構造またはセル複体を別形式で書き出す

    構造の dot / census は標準モードの幾何的実現を経由する。
    """
    value = load(args.file)
    if isinstance(value, RelStructure):
        report = validate_level(value, value.level)
        if not report.ok:
            raise ValidationFailure(report.lines())
    printer = DocumentPrinter(config.OUTPUT_CONFIG['indent'])

    if args.format == 'json':
        write_document(value, args.output)
    elif args.format == 'summary':
        if not isinstance(value, RelStructure):
            raise DocumentError("summary export needs a structure document")
        write_text(printer.structure_summary(value).to_string(index=False) + '\n', args.output)
    else:
        complex_ = value if isinstance(value, CellComplex) else _as_complex(value)
        if args.format == 'dot':
            write_text(to_dot(complex_), args.output or _dot_name(args))
        else:
            write_lines(printer.census_lines(complex_), args.output)
    return EXIT_OK


def _as_complex(value) -> CellComplex:
    if not isinstance(value, RelStructure):
        raise DocumentError("dot and census exports need a structure or cell-complex document")
    return geometric_realization(value, RealizationMode(config.REALIZATION_CONFIG['default_mode']))


def _dot_name(args: argparse.Namespace):
    if config.OUTPUT_CONFIG['output_dir'] is None:
        return None
    return Path(args.file).stem + config.OUTPUT_CONFIG['dot_suffix']


def register(subparsers) -> None:
    """サブコマンドの登録"""
    parser = subparsers.add_parser('validate', help='宣言レベル（または --level）の公理を検査')
    parser.add_argument('file')
    parser.add_argument('--level', choices=LEVEL_CHOICES)
    parser.add_argument('--partiality', choices=[r.value for r in PartialityReading],
                        default=PartialityReading.FACE.value)
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_validate)

    parser = subparsers.add_parser('info', help='構造の要約を表示')
    parser.add_argument('file')
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_info)

    parser = subparsers.add_parser('complete', help='合成について閉じた lax 構造を作る')
    parser.add_argument('file')
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_complete)

    parser = subparsers.add_parser('reflect', help='前層への反射 L(P)')
    parser.add_argument('file')
    parser.add_argument('--unit', action='store_true', help='単位射 P → U(L(P)) を書き出す')
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_reflect)

    parser = subparsers.add_parser('coreflect', help='前層への余反射 R(P)')
    parser.add_argument('file')
    parser.add_argument('--counit', action='store_true', help='余単位射 U(R(P)) → P を書き出す')
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_coreflect)

    parser = subparsers.add_parser('reflect-partial', help='部分前層への反射')
    parser.add_argument('file')
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_reflect_partial)

    parser = subparsers.add_parser('export', help='正規形 JSON・DOT・表形式で書き出す')
    parser.add_argument('file')
    parser.add_argument('--format', choices=EXPORT_FORMATS, default='json')
    parser.add_argument('-o', '--output')
    parser.set_defaults(handler=run_export)
