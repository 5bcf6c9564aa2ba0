"""
Document I/O Module
JSON 文書と構造・射・図式・前層・セル複体・blowup の相互変換

出力は正規形（キーとセルを整列）なので、等しい値は同じバイト列になる。
lax 以上の構造では恒等関係の対角を省略して書き、読むときに補う。
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from .basecat import FiniteBaseCategory, cube_category, graph_category, table_category
from .blowup import BlowupResult
from .cell_complex import Attachment, AttachmentKind, CellComplex, RealizationMode, cell_census
from .colimits import Diagram
from .errors import DocumentError
from .fibrations import ElementsPresheaf
from .structures import Level, RelMorphism, RelStructure

logger = logging.getLogger(__name__)

Document = Dict[str, Any]
DocumentValue = Union[RelStructure, RelMorphism, Diagram, ElementsPresheaf, CellComplex, Document]

KIND_STRUCTURE = 'structure'
KIND_MORPHISM = 'morphism'
KIND_DIAGRAM = 'diagram'
KIND_PRESHEAF = 'elements-presheaf'
KIND_COMPLEX = 'cell-complex'
KIND_BLOWUP = 'blowup'


class DocumentParser:
    """JSON 文書のパーサー - 文書の種類を判定して値に変換"""

    def __init__(self, base_dir: Optional[Path] = None):
        """
        Args:
            base_dir: 文書中のファイル参照を解決する基準ディレクトリ
        """
        self.base_dir = Path(base_dir) if base_dir else Path('.')

        # 種類判定のための必須キー
        self.kind_signatures = {
            KIND_STRUCTURE: {'base', 'carriers'},
            KIND_MORPHISM: {'source', 'target', 'components'},
            KIND_DIAGRAM: {'objects', 'arrows'},
            KIND_PRESHEAF: {'structure', 'fibers'},
            KIND_COMPLEX: {'cells', 'attachments'},
        }

    # ===== 入口 =====

    def parse_file(self, path: Union[str, Path]) -> DocumentValue:
        path = Path(path)
        content = path.read_bytes()
        parser = DocumentParser(path.parent)
        return parser.parse_document(content, path.name)

    def parse_document(self, content: Union[bytes, str], filename: str = '<document>') -> DocumentValue:
        """
        文書を解析して値を返す

        Args:
            content: 文書の内容
            filename: ファイル名（ログ・エラー表示用）

        Returns:
            構造・射・図式・前層・セル複体のいずれか（blowup 文書は辞書のまま）
        """
        data = self._load_json(content, filename)
        kind = self._detect_kind(data, filename)
        logger.debug(f"文書読み込み: {filename}, 種類: {kind}")
        handlers = {
            KIND_STRUCTURE: self.parse_structure,
            KIND_MORPHISM: self.parse_morphism,
            KIND_DIAGRAM: self.parse_diagram,
            KIND_PRESHEAF: self.parse_presheaf,
            KIND_COMPLEX: self.parse_complex,
            KIND_BLOWUP: lambda document: document,
        }
        return handlers[kind](data)

    def _load_json(self, content: Union[bytes, str], filename: str) -> Document:
        """UTF-8（BOM 付きも可）の JSON を読み込む"""
        if isinstance(content, bytes):
            try:
                content = content.decode('utf-8-sig')
            except UnicodeDecodeError:
                raise DocumentError(f"{filename}: not UTF-8 text")
        try:
            data = json.loads(content)
        except json.JSONDecodeError as e:
            raise DocumentError(f"{filename}: invalid JSON ({e.msg} at line {e.lineno})")
        if not isinstance(data, dict):
            raise DocumentError(f"{filename}: top level must be a JSON object")
        return data

    def _detect_kind(self, data: Document, filename: str) -> str:
        declared = data.get('kind')
        if declared is not None:
            if declared not in self.kind_signatures and declared != KIND_BLOWUP:
                raise DocumentError(f"{filename}: unknown document kind {declared!r}")
            return declared
        for kind, keys in self.kind_signatures.items():
            if keys <= set(data):
                return kind
        raise DocumentError(f"{filename}: cannot tell what kind of document this is")

    def _resolve(self, value: Any, expected: str) -> Any:
        """ファイル参照（文字列）か埋め込み文書を値にする"""
        if isinstance(value, str):
            result = self.parse_file(self.base_dir / value)
        elif isinstance(value, dict):
            result = self.parse_document(json.dumps(value), f"<inline {expected}>")
        else:
            raise DocumentError(f"expected a file name or an inline {expected} document")
        return result

    def _require(self, data: Any, key: str) -> Any:
        if not isinstance(data, dict):
            raise DocumentError(f"expected a JSON object holding {key!r}")
        if key not in data:
            raise DocumentError(f"missing key {key!r}")
        return data[key]

    # ===== 形の検査 =====

    @staticmethod
    def _object(value: Any, what: str) -> Dict[str, Any]:
        if not isinstance(value, dict):
            raise DocumentError(f"{what} must be a JSON object")
        return value

    @staticmethod
    def _names(value: Any, what: str) -> List[str]:
        """名前（文字列・数値）のリスト"""
        if not isinstance(value, list) or not all(isinstance(v, (str, int)) and not isinstance(v, bool) for v in value):
            raise DocumentError(f"{what} must be a list of names")
        return [str(v) for v in value]

    @classmethod
    def _name_map(cls, value: Any, what: str) -> Dict[str, str]:
        """名前 → 名前 の対応"""
        mapping = cls._object(value, what)
        if not all(isinstance(v, (str, int)) and not isinstance(v, bool) for v in mapping.values()):
            raise DocumentError(f"{what} must map names to names")
        return {str(k): str(v) for k, v in mapping.items()}

    @classmethod
    def _tuples(cls, value: Any, arity: int, what: str) -> List[tuple]:
        """長さ arity の名前のリストのリスト"""
        if not isinstance(value, list):
            raise DocumentError(f"{what} must be a list")
        result = []
        for entry in value:
            if not isinstance(entry, list) or len(entry) != arity:
                raise DocumentError(f"{what} entries must be lists of {arity} names, got {entry!r}")
            result.append(tuple(cls._names(entry, what)))
        return result

    # ===== 基底圏 =====

    def parse_base(self, spec: Any) -> FiniteBaseCategory:
        if not isinstance(spec, dict):
            raise DocumentError("base must be an object with a 'kind'")
        kind = spec.get('kind')
        if kind == 'cube':
            max_dim = spec.get('max_dim')
            if not isinstance(max_dim, int) or isinstance(max_dim, bool) or max_dim < 0:
                raise DocumentError("cube base needs a non-negative integer 'max_dim'")
            return cube_category(max_dim)
        if kind == 'graph':
            return graph_category()
        if kind == 'table':
            morphisms = {}
            for f, ends in self._object(self._require(spec, 'morphisms'), 'table morphisms').items():
                (dom, cod), = self._tuples([ends], 2, f"morphism {f!r}")
                morphisms[str(f)] = (dom, cod)
            compose = {(inner, outer): result
                       for inner, outer, result in self._tuples(spec.get('compose', []), 3, 'compose')}
            return table_category(
                str(spec.get('name', 'table')),
                self._names(self._require(spec, 'objects'), 'objects'),
                morphisms,
                self._name_map(self._require(spec, 'identities'), 'identities'),
                compose,
            )
        raise DocumentError(f"unknown base kind {kind!r}; expected cube, graph or table")

    # ===== 構造 =====

    def parse_structure(self, data: Document) -> RelStructure:
        base = self.parse_base(self._require(data, 'base'))
        level = Level.parse(data.get('level', Level.FAMILY.value))
        carriers = {
            str(obj): self._names(cells, f"carrier of {obj!r}")
            for obj, cells in self._object(self._require(data, 'carriers'), 'carriers').items()
        }
        pairs = {
            str(f): self._tuples(ps, 2, f"relation {f!r}")
            for f, ps in self._object(data.get('relations', {}), 'relations').items()
        }
        if level.at_least(Level.LAX):
            for obj, cells in carriers.items():
                if obj not in base.objects:
                    raise DocumentError(f"carrier given for unknown object {obj!r}")
                pairs.setdefault(base.identity(obj), []).extend((c, c) for c in cells)
        return RelStructure(base, carriers, pairs, level, name=str(data.get('name', '')))

    def parse_morphism(self, data: Document) -> RelMorphism:
        source = self._resolve(self._require(data, 'source'), KIND_STRUCTURE)
        target = self._resolve(self._require(data, 'target'), KIND_STRUCTURE)
        if not isinstance(source, RelStructure) or not isinstance(target, RelStructure):
            raise DocumentError("morphism source and target must be structures")
        components = self._name_map(self._require(data, 'components'), 'components')
        return RelMorphism(source, target, components, name=str(data.get('name', '')))

    def parse_diagram(self, data: Document) -> Diagram:
        diagram = Diagram()
        for name, value in sorted(self._object(self._require(data, 'objects'), 'objects').items()):
            structure = self._resolve(value, KIND_STRUCTURE)
            if not isinstance(structure, RelStructure):
                raise DocumentError(f"diagram object {name!r} is not a structure")
            diagram.add_object(name, structure)
        for name, arrow in sorted(self._object(self._require(data, 'arrows'), 'arrows').items()):
            source, target = self._require(arrow, 'source'), self._require(arrow, 'target')
            if source not in diagram.objects or target not in diagram.objects:
                raise DocumentError(f"arrow {name!r} refers to an unknown object")
            components = self._name_map(self._require(arrow, 'components'), f"components of {name!r}")
            morphism = RelMorphism(diagram.objects[source], diagram.objects[target], components, name=name)
            diagram.add_arrow(name, source, target, morphism)
        return diagram

    def parse_presheaf(self, data: Document) -> ElementsPresheaf:
        structure = self._resolve(self._require(data, 'structure'), KIND_STRUCTURE)
        if not isinstance(structure, RelStructure):
            raise DocumentError("elements presheaf must sit over a structure")
        fibers = {
            str(c): frozenset(self._names(es, f"fiber of {c!r}"))
            for c, es in self._object(self._require(data, 'fibers'), 'fibers').items()
        }
        entries = data.get('transitions', [])
        if not isinstance(entries, list):
            raise DocumentError("transitions must be a list")
        transitions = {}
        for entry in entries:
            key = (str(self._require(entry, 'morphism')), str(self._require(entry, 'big')),
                   str(self._require(entry, 'small')))
            transitions[key] = self._name_map(self._require(entry, 'map'), 'transition map')
        return ElementsPresheaf(structure, fibers, transitions)

    def parse_complex(self, data: Document) -> CellComplex:
        try:
            mode = RealizationMode(data.get('mode', RealizationMode.STANDARD.value))
            cells = {str(c): int(d) for c, d in self._require(data, 'cells').items()}
            attachments = tuple(
                Attachment(str(a['big']), str(a['word']), str(a['small']),
                           AttachmentKind(a['kind']), bool(a.get('gluing', True)))
                for a in self._require(data, 'attachments')
            )
        except (KeyError, ValueError, TypeError, AttributeError) as e:
            raise DocumentError(f"malformed cell complex: {e}")
        return CellComplex(cells, attachments, mode)


class DocumentPrinter:
    """正規形の JSON 文書を作る"""

    def __init__(self, indent: int = 2):
        self.indent = indent

    def dumps(self, document: Document) -> str:
        return json.dumps(document, indent=self.indent, sort_keys=True, ensure_ascii=False) + '\n'

    def base_document(self, base: FiniteBaseCategory) -> Document:
        if base.kind == 'graph':
            return {'kind': 'graph'}
        if base.kind == 'cube':
            return {'kind': 'cube', 'max_dim': base.max_dim}
        compose = [
            [inner, outer, result]
            for (inner, outer), result in sorted(base.table.items())
            if not (base.is_identity(inner) or base.is_identity(outer))
        ]
        return {
            'kind': 'table',
            'name': base.name,
            'objects': list(base.objects),
            'morphisms': {f: list(ends) for f, ends in sorted(base.morphisms.items())},
            'identities': dict(sorted(base.identities.items())),
            'compose': compose,
        }

    def structure_document(self, structure: RelStructure) -> Document:
        base = structure.base
        implicit = structure.level.at_least(Level.LAX)
        relations = {}
        for f in base.sorted_morphisms():
            pairs = sorted(
                [x, y] for x, y in structure.relations[f]
                if not (implicit and base.is_identity(f) and x == y)
            )
            if pairs:
                relations[f] = pairs
        document = {
            'kind': KIND_STRUCTURE,
            'base': self.base_document(base),
            'level': structure.level.value,
            'carriers': {obj: sorted(structure.carrier(obj)) for obj in base.objects if structure.carrier(obj)},
            'relations': relations,
        }
        if structure.name:
            document['name'] = structure.name
        return document

    def morphism_document(self, morphism: RelMorphism) -> Document:
        document = {
            'kind': KIND_MORPHISM,
            'source': self.structure_document(morphism.source),
            'target': self.structure_document(morphism.target),
            'components': dict(sorted(morphism.components.items())),
        }
        if morphism.name:
            document['name'] = morphism.name
        return document

    def presheaf_document(self, presheaf: ElementsPresheaf) -> Document:
        transitions = [
            {'morphism': f, 'big': x, 'small': y, 'map': dict(sorted(mapping.items()))}
            for (f, x, y), mapping in sorted(presheaf.transitions.items())
            if not (presheaf.structure.base.is_identity(f) and x == y
                    and all(k == v for k, v in mapping.items()))
        ]
        return {
            'kind': KIND_PRESHEAF,
            'structure': self.structure_document(presheaf.structure),
            'fibers': {cell: sorted(es) for cell, es in sorted(presheaf.fibers.items())},
            'transitions': transitions,
        }

    def complex_document(self, complex_: CellComplex) -> Document:
        return {
            'kind': KIND_COMPLEX,
            'mode': complex_.mode.value,
            'cells': dict(sorted(complex_.cells.items())),
            'attachments': [
                {'big': a.big, 'word': a.word, 'small': a.small, 'kind': a.kind.value, 'gluing': a.gluing}
                for a in complex_.attachments
            ],
        }

    def blowup_document(self, result: BlowupResult) -> Document:
        document = {
            'kind': KIND_BLOWUP,
            'n': result.n,
            'lax': result.is_lax,
            'structure': self.structure_document(result.structure),
            'beta': dict(sorted(result.beta.components.items())),
        }
        if result.completion is not None:
            document['completion'] = self.structure_document(result.completion)
            document['beta_plus'] = dict(sorted(result.beta_plus.components.items()))
        return document

    def document(self, value: DocumentValue) -> Document:
        if isinstance(value, RelStructure):
            return self.structure_document(value)
        if isinstance(value, RelMorphism):
            return self.morphism_document(value)
        if isinstance(value, ElementsPresheaf):
            return self.presheaf_document(value)
        if isinstance(value, CellComplex):
            return self.complex_document(value)
        if isinstance(value, BlowupResult):
            return self.blowup_document(value)
        if isinstance(value, dict):
            return value
        raise DocumentError(f"cannot print a {type(value).__name__}")

    # ===== 表形式の要約 =====

    def structure_summary(self, structure: RelStructure) -> pd.DataFrame:
        """
        対象ごとのセル数と、そこを終域とする関係の対の数

        Returns:
            pd.DataFrame: 列 object, cells, pairs
        """
        rows = []
        for obj in structure.base.objects:
            pairs = sum(len(structure.relations[f]) for f in structure.base.morphisms_into(obj))
            rows.append({'object': obj, 'cells': len(structure.carrier(obj)), 'pairs': pairs})
        return pd.DataFrame(rows, columns=['object', 'cells', 'pairs'])

    def census_lines(self, complex_: CellComplex) -> List[str]:
        census = cell_census(complex_)
        return [f"dim{dim}\t{int(count)}" for dim, count in census.items()]


# 便利関数
def load_document(path: Union[str, Path]) -> DocumentValue:
    """ファイルから文書を読むショートカット関数"""
    return DocumentParser().parse_file(path)


def load_structure(path: Union[str, Path]) -> RelStructure:
    value = load_document(path)
    if not isinstance(value, RelStructure):
        raise DocumentError(f"{path}: expected a structure document")
    return value


def dumps(value: DocumentValue, indent: int = 2) -> str:
    """値を正規形の JSON 文字列にするショートカット関数"""
    return DocumentPrinter(indent).dumps(DocumentPrinter(indent).document(value))


def parse_text(text: str) -> DocumentValue:
    return DocumentParser().parse_document(text)

