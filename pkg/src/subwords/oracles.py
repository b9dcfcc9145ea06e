"""Brute-force and dynamic-programming oracles.

Nothing here uses run structure or extremal occurrences, so these functions
stay independent of the closed-form machinery they are used to check.
"""
from __future__ import annotations

import itertools
import os
from typing import Dict, Iterator, List, Set, Tuple

from .words import BinaryWord, WordLike, as_word

DEFAULT_EXHAUSTIVE_BOUND = 16


class EmptyPatternError(ValueError):
    """The pattern is the empty word, for which no count is defined."""


class BoundExceededError(ValueError):
    """An exhaustive enumeration was requested above the configured bound."""


def exhaustive_bound() -> int:
    env = os.environ.get("SUBWORDS_MAX_N")
    return int(env) if env else DEFAULT_EXHAUSTIVE_BOUND


def check_bound(n: int, bound: int | None = None) -> None:
    bound = exhaustive_bound() if bound is None else bound
    if n > bound:
        raise BoundExceededError(f"n={n} exceeds exhaustive bound {bound}")


def _require_pattern(p: BinaryWord) -> None:
    if len(p) == 0:
        raise EmptyPatternError("pattern must be nonempty")


def prefix_table(p: str, w: str) -> List[List[int]]:
    """``T[i][j]`` = occurrences of ``p[:j]`` in ``w[:i]``."""
    m = len(p)
    T = [[1] + [0] * m]
    for i, c in enumerate(w, start=1):
        prev = T[-1]
        row = prev[:]
        for j in range(1, m + 1):
            if p[j - 1] == c:
                row[j] += prev[j - 1]
        T.append(row)
    return T


def _count(p: str, w: str) -> int:
    # rolling 1-D version of prefix_table
    row = [1] + [0] * len(p)
    for c in w:
        for j in range(len(p), 0, -1):
            if p[j - 1] == c:
                row[j] += row[j - 1]
    return row[-1]


def count_occurrences_oracle(p: WordLike, w: WordLike) -> int:
    p, w = as_word(p), as_word(w)
    _require_pattern(p)
    return _count(p.bits, w.bits)


def occurrences(p: WordLike, w: WordLike) -> Iterator[Tuple[int, ...]]:
    """Every index tuple (1-based) spelling ``p`` in ``w``, in lexicographic order."""
    p, w = as_word(p), as_word(w)
    _require_pattern(p)
    pb, wb = p.bits, w.bits
    m, n = len(pb), len(wb)

    def extend(j: int, start: int, acc: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if j == m:
            yield acc
            return
        for i in range(start, n - (m - j) + 1):
            if wb[i] == pb[j]:
                yield from extend(j + 1, i + 1, acc + (i + 1,))

    yield from extend(0, 0, ())


def lexmin_oracle(p: WordLike, w: WordLike) -> Tuple[int, ...] | None:
    """Componentwise minimum over all occurrences, or None if there are none."""
    occs = list(occurrences(p, w))
    if not occs:
        return None
    best = tuple(min(col) for col in zip(*occs))
    # the componentwise minimum is itself an occurrence
    assert best in occs
    return best


def lexmax_oracle(p: WordLike, w: WordLike) -> Tuple[int, ...] | None:
    occs = list(occurrences(p, w))
    if not occs:
        return None
    best = tuple(max(col) for col in zip(*occs))
    assert best in occs
    return best


def coverage_counts(p: WordLike, w: WordLike) -> List[int]:
    """Number of occurrences of ``p`` using each position of ``w`` (index 0 = position 1)."""
    p, w = as_word(p), as_word(w)
    _require_pattern(p)
    pb, wb = p.bits, w.bits
    pre = prefix_table(pb, wb)
    suf = prefix_table(pb[::-1], wb[::-1])
    m, n = len(pb), len(wb)
    out = []
    for l in range(1, n + 1):
        total = 0
        for j in range(1, m + 1):
            if pb[j - 1] == wb[l - 1]:
                left = pre[l - 1][j - 1]
                if left:
                    total += left * suf[n - l][m - j]
        out.append(total)
    return out


def classify_letter_oracle(p: WordLike, w: WordLike, l: int) -> bool:
    """True iff some occurrence of ``p`` in ``w`` uses position ``l``."""
    w = as_word(w)
    if not 1 <= l <= len(w):
        raise ValueError(f"position {l} outside 1..{len(w)}")
    return coverage_counts(p, w)[l - 1] > 0


def covered_positions_oracle(p: WordLike, w: WordLike) -> List[bool]:
    return [c > 0 for c in coverage_counts(p, w)]


def is_primitive_oracle(p: WordLike, w: WordLike) -> bool:
    w = as_word(w)
    cov = coverage_counts(p, w)
    return len(w) > 0 and all(cov)


def reduce_oracle(p: WordLike, w: WordLike) -> BinaryWord:
    w = as_word(w)
    cov = coverage_counts(p, w)
    return BinaryWord("".join(c for c, k in zip(w.bits, cov) if k))


def all_words(n: int) -> Iterator[BinaryWord]:
    for t in itertools.product("01", repeat=n):
        yield BinaryWord("".join(t))


def generate_containing_oracle(p: WordLike, n: int, bound: int | None = None) -> Set[BinaryWord]:
    p = as_word(p)
    _require_pattern(p)
    check_bound(n, bound)
    return {w for w in all_words(n) if _count(p.bits, w.bits) > 0}


def generate_primitive_oracle(p: WordLike, n: int, bound: int | None = None) -> Set[BinaryWord]:
    p = as_word(p)
    _require_pattern(p)
    check_bound(n, bound)
    return {w for w in all_words(n) if is_primitive_oracle(p, w)}


def completion_oracle(p: WordLike, w: WordLike, m_prime: int, bound: int | None = None) -> Set[BinaryWord]:
    """``{v : |v| = m', c_p(v) = c_p(w), reduce(v) = w}``."""
    p, w = as_word(p), as_word(w)
    check_bound(m_prime, bound)
    k = count_occurrences_oracle(p, w)
    return {
        v for v in all_words(m_prime)
        if _count(p.bits, v.bits) == k and reduce_oracle(p, v) == w
    }


def census_table_oracle(p: WordLike, n: int, bound: int | None = None) -> Dict[int, int]:
    """Map k -> number of length-n words with exactly k occurrences (zero entries omitted)."""
    p = as_word(p)
    _require_pattern(p)
    check_bound(n, bound)
    table: Dict[int, int] = {}
    for w in all_words(n):
        k = _count(p.bits, w.bits)
        table[k] = table.get(k, 0) + 1
    return dict(sorted(table.items()))


def census_oracle(p: WordLike, n: int, k: int, bound: int | None = None) -> int:
    return census_table_oracle(p, n, bound).get(k, 0)
