import re
from typing import List

_WORD_RUN = re.compile(r"[^\W_]+")


def split_camel_case(word: str) -> List[str]:
    """
    Split a run of letters/digits on camelCase boundaries.

    "TeslaModelS" -> ["Tesla", "Model", "S"], "HTTPServer" -> ["HTTP", "Server"].
    Works on any Unicode letters via str.isupper/islower.
    """
    if not word:
        return []

    parts = []
    start = 0
    for i in range(1, len(word)):
        prev, cur = word[i - 1], word[i]
        nxt = word[i + 1] if i + 1 < len(word) else ""
        lower_to_upper = (prev.islower() or prev.isdigit()) and cur.isupper()
        acronym_end = prev.isupper() and cur.isupper() and nxt.islower()
        if lower_to_upper or acronym_end:
            parts.append(word[start:i])
            start = i
    parts.append(word[start:])
    return parts


def word_runs(text: str) -> List[str]:
    """Alphanumeric runs of ``text``; underscores and punctuation are separators."""
    return _WORD_RUN.findall(text)
