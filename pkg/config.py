"""
アプリケーション設定ファイル

このファイルの辞書で設定を管理します。
環境変数は読みません。出力先だけはコマンドラインの --output-dir で上書きできます。
"""

from typing import Optional

# 探索設定
SEARCH_CONFIG = {
    'max_structure_cells': 64,   # 余反射・モデル検査の入力の上限
}

# 実現設定
REALIZATION_CONFIG = {
    'default_mode': 'standard',
    'default_model': 'subdivision',
}

# 出力設定
OUTPUT_CONFIG = {
    'output_dir': None,
    'indent': 2,
    'dot_suffix': '.dot',
}

# アプリケーション設定
APP_CONFIG = {
    'name': 'relpsh',
    'log_level': 'WARNING',
    'log_format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
}


def update_output_config(output_dir: Optional[str] = None, indent: Optional[int] = None) -> None:
    """
    出力設定を動的に更新

    Args:
        output_dir: 出力ファイルの基準ディレクトリ
        indent: JSON のインデント幅
    """
    if output_dir is not None:
        OUTPUT_CONFIG['output_dir'] = output_dir
    if indent is not None:
        OUTPUT_CONFIG['indent'] = indent
