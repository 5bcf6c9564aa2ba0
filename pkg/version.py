"""
relpsh - バージョン情報

このファイルでアプリケーション全体のバージョンを管理します。
"""

__version__ = "1.0.0"
__version_name__ = "blowup・実現対応版"

# バージョン履歴
VERSION_HISTORY = {
    "1.0.0": {
        "name": "blowup・実現対応版",
        "date": "2026-10-18",
        "features": [
            "組合せ的 blowup と離散ファイブレーションへの完備化",
            "重心細分・標準・逐次モデルとモデル条件の検査",
            "セル複体の成分・オイラー標数・DOT 出力",
            "近傍基底の記号表現（sympy）",
        ]
    },
    "0.2.0": {
        "name": "随伴・余極限版",
        "date": "2026-09-20",
        "features": [
            "前層への反射・余反射・部分前層への反射",
            "直和・余等化子・押し出し・有限余極限",
            "要素の圏と φ / ψ",
        ]
    },
    "0.1.0": {
        "name": "関係構造の基本版",
        "date": "2026-08-30",
        "features": [
            "立方体圏・グラフ圏・合成表による基底圏",
            "4 段階のレベル検査",
            "JSON 文書の読み書き",
        ]
    }
}


def get_version_info():
    """バージョン情報を辞書形式で取得"""
    return {
        'version': __version__,
        'version_name': __version_name__,
        'full_name': f"v{__version__} - {__version_name__}",
        'history': VERSION_HISTORY
    }


def get_full_version_string():
    """完全なバージョン文字列を取得"""
    return f"v{__version__} - {__version_name__}"
