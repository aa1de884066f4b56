"""Free-group words as tuples of (generator index, +-1).

Text form: ``x1``..``xr`` for generators, ``X1``..``Xr`` for inverses,
concatenated (``"x1x2X1X2"``).  Indices are 0-based internally.
"""
from __future__ import annotations

import re
from typing import List, Sequence, Tuple

Letter = Tuple[int, int]
Word = Tuple[Letter, ...]

_TOKEN = re.compile(r"([xX])(\d+)")


def parse_word(text: str, rank: int = None) -> Word:
    text = text.replace(" ", "").replace("*", "")
    if text in ("", "1", "e"):
        return ()
    pos, out = 0, []
    for m in _TOKEN.finditer(text):
        if m.start() != pos:
            raise ValueError(f"malformed word {text!r} at offset {pos}")
        gen = int(m.group(2)) - 1
        if gen < 0 or (rank is not None and gen >= rank):
            raise ValueError(f"generator index out of range in {text!r}")
        out.append((gen, 1 if m.group(1) == "x" else -1))
        pos = m.end()
    if pos != len(text):
        raise ValueError(f"malformed word {text!r} at offset {pos}")
    return reduce_word(out)


def format_word(word: Sequence[Letter]) -> str:
    if not word:
        return "1"
    return "".join(("x" if s > 0 else "X") + str(g + 1) for g, s in word)


def reduce_word(word: Sequence[Letter]) -> Word:
    stack: List[Letter] = []
    for g, s in word:
        if stack and stack[-1] == (g, -s):
            stack.pop()
        else:
            stack.append((g, s))
    return tuple(stack)


def invert_word(word: Sequence[Letter]) -> Word:
    return tuple((g, -s) for g, s in reversed(word))


def substitute(word: Sequence[Letter], images: Sequence[Word]) -> Word:
    """Image of ``word`` under the endomorphism x_j -> images[j]."""
    out: List[Letter] = []
    for g, s in word:
        out.extend(images[g] if s > 0 else invert_word(images[g]))
    return reduce_word(out)


def abelianize(word: Sequence[Letter], rank: int) -> List[int]:
    v = [0] * rank
    for g, s in word:
        v[g] += s
    return v
