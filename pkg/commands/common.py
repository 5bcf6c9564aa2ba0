"""
コマンド共通処理

文書の読み込み、宣言レベルの検証、出力先の解決をまとめる。
各コマンドは argparse の名前空間を受け取り、終了コードを返す。
"""

import logging
import sys
from pathlib import Path
from typing import Iterable, List, Optional

import config
from core.document_io import DocumentParser, DocumentPrinter, DocumentValue
from core.errors import DocumentError
from core.fibrations import ElementsPresheaf
from core.structures import RelMorphism, RelStructure
from core.validation import validate_level

# ログ設定
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_ERROR = 2


class ValidationFailure(Exception):
    """検証に失敗したときに違反の行を運ぶ"""

    def __init__(self, lines: Iterable[str], summary: str = ''):
        self.lines: List[str] = list(lines)
        super().__init__(summary or f"{len(self.lines)} violations")


def load(path: str) -> DocumentValue:
    """文書を読み込む（ファイル参照は文書の場所から解決）"""
    value = DocumentParser().parse_file(Path(path))
    logger.debug(f"loaded {path}: {type(value).__name__}")
    return value


def load_structure(path: str) -> RelStructure:
    """
    構造文書を読み込み、宣言されたレベルで検証する

    Raises:
        DocumentError: 構造文書でない場合
        ValidationFailure: 宣言レベルを満たさない場合
    """
    value = load(path)
    if not isinstance(value, RelStructure):
        raise DocumentError(f"{path}: expected a structure document")
    report = validate_level(value, value.level)
    if not report.ok:
        raise ValidationFailure(report.lines(), f"{path} does not satisfy its declared level {value.level.value}")
    limit = config.SEARCH_CONFIG['max_structure_cells']
    if value.size > limit:
        logger.warning(f"{path}: {value.size} cells exceeds max_structure_cells={limit}; searches may be slow")
    return value


def load_morphism(path: str) -> RelMorphism:
    value = load(path)
    if not isinstance(value, RelMorphism):
        raise DocumentError(f"{path}: expected a morphism document")
    return value


def load_presheaf(path: str) -> ElementsPresheaf:
    value = load(path)
    if not isinstance(value, ElementsPresheaf):
        raise DocumentError(f"{path}: expected an elements-presheaf document")
    return value


def output_path(output: Optional[str]) -> Optional[Path]:
    """-o の値を --output-dir を基準に解決する"""
    if output is None:
        return None
    path = Path(output)
    base = config.OUTPUT_CONFIG['output_dir']
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def write_text(text: str, output: Optional[str]) -> None:
    """出力ファイルまたは標準出力に書く"""
    path = output_path(output)
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding='utf-8')
    logger.info(f"wrote {path}")


def write_document(value: DocumentValue, output: Optional[str]) -> None:
    printer = DocumentPrinter(config.OUTPUT_CONFIG['indent'])
    write_text(printer.dumps(printer.document(value)), output)


def write_lines(lines: Iterable[str], output: Optional[str] = None) -> None:
    text = ''.join(f"{line}\n" for line in lines)
    write_text(text, output)
