"""
Core Package

関係的前層（関係に値をとる前層）を扱う中核モジュール群
構造の検査・変換・余極限・実現・blowup は全てこのパッケージを経由する
"""

# バージョン情報
from version import __version__, get_version_info
__author__ = "relpsh 開発チーム"

# 中核モジュールのインポート
from .basecat import CofaceWord, ElementaryCoface, FiniteBaseCategory, cube_category, graph_category, table_category
from .structures import Level, RelMorphism, RelStructure, is_morphism, representable
from .validation import PartialityReading, ValidationReport, validate_level, strongest_level
from .transforms import (
    close_composition,
    coreflect_presheaf,
    is_discrete_fibration,
    is_local_embedding,
    reflect_partial,
    reflect_presheaf,
    underlying,
)
from .colimits import Diagram, coequalizer, coproduct, finite_colimit, pushout, quotient
from .fibrations import ElementsPresheaf, elements_category, extended_elements, phi, psi, span_category
from .cell_complex import CellComplex, RealizationMode, basis_neighborhood, components, neighborhood, positive_neighborhood
from .realization import ModelAssignment, ModelReport, ModelTarget, check_model, geometric_realization, realize, subdivide
from .blowup import BlowupResult, BrickSignature, blowup, blowup_completion, standard_brick, tensor
from .document_io import DocumentParser, DocumentPrinter
from .errors import RelPshError

# パッケージ情報
__all__ = [
    # 基底圏層
    'CofaceWord',
    'ElementaryCoface',
    'FiniteBaseCategory',
    'cube_category',
    'graph_category',
    'table_category',

    # 構造層
    'Level',
    'RelStructure',
    'RelMorphism',
    'is_morphism',
    'representable',
    'PartialityReading',
    'ValidationReport',
    'validate_level',
    'strongest_level',

    # 変換層
    'close_composition',
    'underlying',
    'reflect_presheaf',
    'reflect_partial',
    'coreflect_presheaf',
    'is_local_embedding',
    'is_discrete_fibration',

    # 余極限層
    'Diagram',
    'coproduct',
    'coequalizer',
    'pushout',
    'quotient',
    'finite_colimit',

    # ファイブレーション層
    'ElementsPresheaf',
    'elements_category',
    'extended_elements',
    'span_category',
    'phi',
    'psi',

    # 実現層
    'CellComplex',
    'RealizationMode',
    'ModelAssignment',
    'ModelTarget',
    'ModelReport',
    'check_model',
    'realize',
    'subdivide',
    'geometric_realization',
    'components',
    'positive_neighborhood',
    'neighborhood',
    'basis_neighborhood',

    # blowup 層
    'BlowupResult',
    'BrickSignature',
    'tensor',
    'standard_brick',
    'blowup',
    'blowup_completion',

    # 入出力
    'DocumentParser',
    'DocumentPrinter',
    'RelPshError',
]

# アーキテクチャ原則の明示
ARCHITECTURE_PRINCIPLES = """
関係的前層アーキテクチャ原則:

1. 単一の値型
   族・lax・部分・関数的の 4 レベルを RelStructure 一つで表し、level で区別する

2. 対の向き
   (x, y) ∈ R(f: d → c) は x が c 上、y が d 上のセル（y は x の f-面）

3. 検査は例外でなく報告
   レベル・モデル条件・ファイブレーションの違反は一覧として返す

4. 決定的な命名
   新しいセルの名前は cell_names の規則だけで作る

5. 余極限は商で
   直和と同値関係による商の組み合わせで計算する
"""


def get_architecture_info():
    """アーキテクチャ情報の取得"""
    return {
        'version': __version__,
        'release': get_version_info()['full_name'],
        'principles': ARCHITECTURE_PRINCIPLES,
        'core_modules': __all__,
        'data_flow': 'JSON Document → RelStructure → Transform / Colimit / Realize / Blowup → JSON Document'
    }
