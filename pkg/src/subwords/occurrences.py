"""Occurrence counting by lexicographic extreme referencing.

A pattern ``p = A_1 ... A_r`` (runs) is located in a host ``w = B_1 ... B_s``
through its lexicographically minimal and maximal occurrences. Both are fixed
by one run index per pattern run ("heads"), and every other occurrence lies
between them, which turns counting into a nested sum of binomials over
same-parity run spans.

Run ids and letter positions are 1-based throughout.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .oracles import EmptyPatternError, prefix_table
from .words import BinaryWord, RunDecomposition, WordLike, as_word, llet, rlet


@dataclass(frozen=True)
class PatternContext:
    pattern: BinaryWord

    def __post_init__(self) -> None:
        if not isinstance(self.pattern, BinaryWord):
            object.__setattr__(self, "pattern", as_word(self.pattern))
        if len(self.pattern) == 0:
            raise EmptyPatternError("pattern must be nonempty")

    @classmethod
    def of(cls, p: Union["PatternContext", WordLike]) -> "PatternContext":
        return p if isinstance(p, PatternContext) else cls(as_word(p))

    @property
    def pattern_runs(self) -> RunDecomposition:
        return self.pattern.runs

    @cached_property
    def run_lengths(self) -> Tuple[int, ...]:
        return self.pattern.runs.lengths

    @cached_property
    def run_bits(self) -> Tuple[int, ...]:
        return self.pattern.runs.parities

    @property
    def r(self) -> int:
        return len(self.run_lengths)

    @property
    def m(self) -> int:
        return len(self.pattern)


ContextLike = Union[PatternContext, WordLike]


def _dec(w: Union[RunDecomposition, WordLike]) -> RunDecomposition:
    return w if isinstance(w, RunDecomposition) else as_word(w).runs


# --- same-parity span arithmetic ---------------------------------------------

def same_parity_sum(dec: RunDecomposition, i: int, j: int) -> int:
    """Total length of runs ``B_i, B_{i+2}, ..., B_j``; 0 when ``i > j``."""
    if (j - i) % 2:
        raise ValueError(f"runs {i} and {j} have different parity")
    if i > j:
        return 0
    s = len(dec)
    if not (1 <= i <= s and 1 <= j <= s):
        raise ValueError(f"run ids ({i}, {j}) outside 1..{s}")
    return sum(dec.lengths[i - 1:j:2])


def left_span(dec: RunDecomposition, i: int, j: int) -> Optional[int]:
    """Fewest two-step hops leftward from run ``i`` collecting ``j`` same-parity letters.

    Returns None when runs ``i, i-2, ...`` hold fewer than ``j`` letters.
    """
    if not 1 <= i <= len(dec):
        raise ValueError(f"run id {i} outside 1..{len(dec)}")
    if j < 1:
        raise ValueError(f"span target must be positive, got {j}")
    lengths = dec.lengths
    acc = 0
    for k, x in enumerate(range(i, 0, -2)):
        acc += lengths[x - 1]
        if acc >= j:
            return k
    return None


def right_span(dec: RunDecomposition, i: int, j: int) -> Optional[int]:
    """Mirror of :func:`left_span`."""
    s = len(dec)
    if not 1 <= i <= s:
        raise ValueError(f"run id {i} outside 1..{s}")
    if j < 1:
        raise ValueError(f"span target must be positive, got {j}")
    lengths = dec.lengths
    acc = 0
    for k, x in enumerate(range(i, s + 1, 2)):
        acc += lengths[x - 1]
        if acc >= j:
            return k
    return None


def step_left(dec: RunDecomposition, t: int, q: int) -> int:
    """Run just left of the leftmost run reached by spanning ``q`` letters left from run ``t``."""
    lam = left_span(dec, t, q)
    if lam is None:
        raise ValueError(f"fewer than {q} letters at or left of run {t}")
    return t - 2 * lam - 1


def alpha(ctx: ContextLike, w: Union[RunDecomposition, WordLike]) -> int:
    """1 if the host starts with the pattern's first letter, else 2."""
    ctx, dec = PatternContext.of(ctx), _dec(w)
    if len(dec) == 0:
        raise ValueError("host word is empty")
    return 1 if dec.parities[0] == ctx.run_bits[0] else 2


def zeta(ctx: ContextLike, w: Union[RunDecomposition, WordLike]) -> Optional[int]:
    """Last run of the host with the parity of the pattern's last run (None if there is none)."""
    ctx, dec = PatternContext.of(ctx), _dec(w)
    s = len(dec)
    if s == 0:
        raise ValueError("host word is empty")
    if dec.parities[-1] == ctx.run_bits[-1]:
        return s
    return s - 1 if s >= 2 else None


# --- extremal occurrences ------------------------------------------------------

@dataclass(frozen=True)
class ExtremalOccurrence:
    kind: str  # "lexmin" | "lexmax"
    heads: Tuple[int, ...]
    occurrence: Tuple[int, ...]
    anchors: Optional[Tuple[int, ...]] = None

    def run_span(self, ctx: PatternContext, i: int) -> Tuple[int, int]:
        """First and last host position used for pattern run ``A_i``."""
        start = sum(ctx.run_lengths[:i - 1])
        return self.occurrence[start], self.occurrence[start + ctx.run_lengths[i - 1] - 1]


def lexmin_heads(ctx: ContextLike, w: Union[RunDecomposition, WordLike]) -> Optional[Tuple[int, ...]]:
    ctx, dec = PatternContext.of(ctx), _dec(w)
    s = len(dec)
    if s == 0 or ctx.m > len(dec.word):
        return None
    head = alpha(ctx, dec)
    heads = []
    for a in ctx.run_lengths:
        if head > s:
            return None
        heads.append(head)
        rho = right_span(dec, head, a)
        if rho is None:
            return None
        head = head + 2 * rho + 1
    return tuple(heads)


def lexmax_heads(
    ctx: ContextLike, w: Union[RunDecomposition, WordLike]
) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Heads ``(R^1, ..., R^r)`` (R^1 matches the last pattern run) and anchors ``psi(B_{R^i})``."""
    ctx, dec = PatternContext.of(ctx), _dec(w)
    if len(dec) == 0 or ctx.m > len(dec.word):
        return None
    head = zeta(ctx, dec)
    heads = []
    for a in reversed(ctx.run_lengths):
        if head is None or head < 1:
            return None
        heads.append(head)
        lam = left_span(dec, head, a)
        if lam is None:
            return None
        head = head - 2 * lam - 1
    anchors = tuple(dec.runs[h - 1].end for h in heads)
    return tuple(heads), anchors


def lexmin_occurrence(ctx: ContextLike, w: WordLike) -> Optional[ExtremalOccurrence]:
    ctx, w = PatternContext.of(ctx), as_word(w)
    dec = w.runs
    heads = lexmin_heads(ctx, dec)
    if heads is None:
        return None
    occ: List[int] = []
    for head, a in zip(heads, ctx.run_lengths):
        need = a
        for x in range(head, len(dec) + 1, 2):
            run = dec.runs[x - 1]
            take = min(need, run.length)
            occ.extend(range(run.start, run.start + take))
            need -= take
            if not need:
                break
    return ExtremalOccurrence("lexmin", heads, tuple(occ))


def lexmax_occurrence(ctx: ContextLike, w: WordLike) -> Optional[ExtremalOccurrence]:
    ctx, w = PatternContext.of(ctx), as_word(w)
    dec = w.runs
    found = lexmax_heads(ctx, dec)
    if found is None:
        return None
    heads, anchors = found
    picked: List[int] = []
    for head, a in zip(heads, reversed(ctx.run_lengths)):
        need = a
        for x in range(head, 0, -2):
            run = dec.runs[x - 1]
            take = min(need, run.length)
            picked.extend(range(run.end, run.end - take, -1))
            need -= take
            if not need:
                break
    return ExtremalOccurrence("lexmax", heads, tuple(reversed(picked)), anchors)


# --- the counting formula ----------------------------------------------------------

def count_occurrences_formula(ctx: ContextLike, w: WordLike, *, anchored: bool = False) -> int:
    """Exact number of occurrences of the pattern in ``w``.

    Pattern runs are placed right to left. For run ``A_{r-k+1}`` the summation
    variable ``q`` is the number of same-parity letters from the leftmost chosen
    letter up to the end of the current upper run ``t``; the remaining letters
    of that run are picked among the ``q - 1`` to its right, and the next run
    must end strictly left of the chosen letter, i.e. at or before
    ``step_left(t, q)``. Heads of the minimal occurrence bound every range from
    below.

    With ``anchored=True`` the host is required to start and end with the
    pattern's first and last letters (true of every primitive word), so the
    first head is run 1 and the top run is the last run.
    """
    ctx, w = PatternContext.of(ctx), as_word(w)
    dec = w.runs
    if anchored and (len(dec) == 0 or alpha(ctx, dec) != 1 or zeta(ctx, dec) != len(dec)):
        raise ValueError(f"{w} does not start and end like {ctx.pattern}")
    heads = lexmin_heads(ctx, dec)
    if heads is None:
        return 0
    r = ctx.r
    lengths = ctx.run_lengths
    memo: Dict[Tuple[int, int], int] = {}

    def level(k: int, t: int) -> int:
        key = (k, t)
        if key in memo:
            return memo[key]
        a = lengths[r - k]
        top = same_parity_sum(dec, heads[r - k], t)
        total = 0
        for q in range(a, top + 1):
            weight = comb(q - 1, a - 1)
            if k == r:
                total += weight
            else:
                total += weight * level(k + 1, step_left(dec, t, q))
        memo[key] = total
        return total

    return level(1, zeta(ctx, dec))


def count_ranges(ctx: ContextLike, w: WordLike, qs: Sequence[int]) -> List[Tuple[int, int, int]]:
    """Trace one branch of the nested sum.

    For a fixed prefix ``q_1, ..., q_j`` returns, per level, the triple
    ``(upper run t, lower bound |A|, upper bound sigma)``; level 1 uses
    ``t = zeta``. Useful for checking worked examples by hand.
    """
    ctx, w = PatternContext.of(ctx), as_word(w)
    dec = w.runs
    heads = lexmin_heads(ctx, dec)
    if heads is None:
        raise ValueError("pattern does not occur")
    r = ctx.r
    t = zeta(ctx, dec)
    out = []
    for k in range(1, min(len(qs) + 1, r) + 1):
        a = ctx.run_lengths[r - k]
        out.append((t, a, same_parity_sum(dec, heads[r - k], t)))
        if k <= len(qs) and k < r:
            t = step_left(dec, t, qs[k - 1])
    return out


# --- lexicographic-minimality characterization -----------------------------------------

def _spells(ctx: PatternContext, w: BinaryWord, occ: Sequence[int]) -> bool:
    n = len(w)
    if len(occ) != ctx.m or any(not 1 <= x <= n for x in occ):
        return False
    if any(b <= a for a, b in zip(occ, occ[1:])):
        return False
    return all(w.bits[x - 1] == c for x, c in zip(occ, ctx.pattern.bits))


def is_lexmin_occurrence(ctx: ContextLike, w: WordLike, occ: Sequence[int]) -> bool:
    """Run-wise characterization of the minimal occurrence.

    For each run ``A'_i`` of ``occ``: no letter of ``A_i``'s parity that lies
    before the end of ``A'_i`` and outside it may be preceded by an occurrence
    of ``A_1 ... A_{i-1}``.
    """
    ctx, w = PatternContext.of(ctx), as_word(w)
    occ = tuple(occ)
    if not _spells(ctx, w, occ):
        raise ValueError(f"{occ} does not spell {ctx.pattern} in {w}")
    table = prefix_table(ctx.pattern.bits, w.bits)
    start = 0
    for a, bit in zip(ctx.run_lengths, ctx.run_bits):
        run = occ[start:start + a]
        c = str(bit)
        for x in range(1, run[-1]):
            if x in run or w.bits[x - 1] != c:
                continue
            if table[x - 1][start] > 0:
                return False
        start += a
    return True


# --- letter coverage ---------------------------------------------------------------------

class Reason(str, enum.Enum):
    IN_EXTREME = "in-extreme"
    BRIDGED = "bridged"
    MIDDLE_GAP = "middle-gap"
    PREFIX_DEFICIT = "prefix-deficit"
    SUFFIX_DEFICIT = "suffix-deficit"
    FOREIGN_LETTER = "foreign-letter"


COVERED_REASONS = frozenset({Reason.IN_EXTREME, Reason.BRIDGED})


@dataclass(frozen=True)
class LetterClass:
    reason: Reason

    @property
    def covered(self) -> bool:
        return self.reason in COVERED_REASONS


@dataclass(frozen=True)
class _Extremes:
    lo: ExtremalOccurrence
    hi: ExtremalOccurrence
    min_end: Tuple[int, ...]    # last position of A_i in the minimal occurrence
    max_start: Tuple[int, ...]  # first position of A_i in the maximal occurrence


def _extremes(ctx: PatternContext, w: BinaryWord) -> Optional[_Extremes]:
    lo = lexmin_occurrence(ctx, w)
    if lo is None:
        return None
    hi = lexmax_occurrence(ctx, w)
    dec = w.runs
    r = ctx.r
    min_end, max_start = [], []
    for i in range(1, r + 1):
        a = ctx.run_lengths[i - 1]
        min_end.append(rlet(w, dec.runs[lo.heads[i - 1] - 1].start, a))
        max_start.append(llet(w, hi.anchors[r - i], a))
    return _Extremes(lo, hi, tuple(min_end), tuple(max_start))


def extreme_bounds(ctx: ContextLike, w: WordLike) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Per pattern run ``A_i``: last position in the minimal occurrence, first in the maximal one."""
    ctx, w = PatternContext.of(ctx), as_word(w)
    ex = _extremes(ctx, w)
    if ex is None:
        raise ValueError(f"{ctx.pattern} does not occur in {w}")
    return ex.min_end, ex.max_start


def _ext_let(ctx: PatternContext, ex: _Extremes, l: int) -> Reason:
    if l in ex.lo.occurrence or l in ex.hi.occurrence:
        return Reason.IN_EXTREME
    for i in range(ctx.r, 0, -1):
        if ex.max_start[i - 1] < l < ex.min_end[i - 1]:
            return Reason.MIDDLE_GAP
    if l < ex.min_end[0]:
        return Reason.PREFIX_DEFICIT
    if l > ex.max_start[-1]:
        return Reason.SUFFIX_DEFICIT
    return Reason.BRIDGED


def ext_let_cases(ctx: ContextLike, w: WordLike) -> List[Reason]:
    """Three-case verdict for every position, exactly as the case analysis states it.

    Single-run patterns are not special-cased here; see :func:`letter_classes`.
    """
    ctx, w = PatternContext.of(ctx), as_word(w)
    ex = _extremes(ctx, w)
    if ex is None:
        raise ValueError(f"{ctx.pattern} does not occur in {w}")
    return [_ext_let(ctx, ex, l) for l in range(1, len(w) + 1)]


def letter_classes(ctx: ContextLike, w: WordLike) -> List[LetterClass]:
    """Coverage verdict for every position of ``w`` (index 0 = position 1)."""
    ctx, w = PatternContext.of(ctx), as_word(w)
    ex = _extremes(ctx, w)
    if ex is None:
        raise ValueError(f"{ctx.pattern} does not occur in {w}")
    present = set(ctx.run_bits)
    out = []
    for l, bit in enumerate(w.letters, start=1):
        if bit not in present:
            # a letter value absent from the pattern can never be matched
            out.append(LetterClass(Reason.FOREIGN_LETTER))
        else:
            out.append(LetterClass(_ext_let(ctx, ex, l)))
    return out


def classify_letter(ctx: ContextLike, w: WordLike, l: int) -> LetterClass:
    w = as_word(w)
    if not 1 <= l <= len(w):
        raise ValueError(f"position {l} outside 1..{len(w)}")
    return letter_classes(ctx, w)[l - 1]


def is_primitive(ctx: ContextLike, w: WordLike) -> bool:
    """Every letter of ``w`` lies in some occurrence of the pattern."""
    ctx, w = PatternContext.of(ctx), as_word(w)
    if lexmin_heads(ctx, w.runs) is None:
        return False
    return all(c.covered for c in letter_classes(ctx, w))


def reduce_to_primitive(ctx: ContextLike, w: WordLike) -> BinaryWord:
    """Delete every letter that no occurrence uses."""
    ctx, w = PatternContext.of(ctx), as_word(w)
    classes = letter_classes(ctx, w)
    return BinaryWord("".join(c for c, k in zip(w.bits, classes) if k.covered))
