"""Constructive enumeration of words containing a pattern.

Three constructions are implemented, each staged the same way: letters are
inserted run by run, from the last pattern run back to the first, and a stage
that "permutes" a block of identical letters with inserted letters of the
other value is realized as a choice of slots for the inserted letters.

* ``chi``: every word of a given length containing ``p`` (``p`` stays its
  minimal occurrence).
* ``eta``: every word of a given length that is primitive for ``p``.
* completions: every way to pad a primitive word with letters that no
  occurrence can use, which leaves the occurrence count unchanged.

Enumerators yield derivations; the public ``generate_*`` functions return
sorted, duplicate-free word lists.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .occurrences import (
    ContextLike,
    PatternContext,
    count_occurrences_formula,
    extreme_bounds,
    is_primitive,
    lexmax_heads,
    lexmin_occurrence,
)
from .words import BinaryWord, WordLike, as_word, llet

Plan = Tuple[int, ...]
Slots = Tuple[int, ...]


class NotPrimitiveError(ValueError):
    pass


# --- annotated words -------------------------------------------------------------------

ORIGINAL = "orig"
INSERTED = "ins"


@dataclass(frozen=True)
class Letter:
    bit: int
    kind: str  # ORIGINAL or INSERTED
    ref: int   # pattern run id for originals, stage number for insertions


@dataclass(frozen=True)
class AnnotatedWord:
    """A partially built word that remembers which letters came from ``p``."""

    letters: Tuple[Letter, ...]

    @classmethod
    def from_pattern(cls, ctx: PatternContext) -> "AnnotatedWord":
        out = []
        for i, (bit, a) in enumerate(zip(ctx.run_bits, ctx.run_lengths), start=1):
            out.extend(Letter(bit, ORIGINAL, i) for _ in range(a))
        return cls(tuple(out))

    @property
    def word(self) -> BinaryWord:
        return BinaryWord("".join(str(x.bit) for x in self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def run_bounds(self, i: int) -> Tuple[int, int]:
        """Current 1-based first/last position of the pattern's original run ``A_i``."""
        pos = [k for k, x in enumerate(self.letters, start=1) if x.kind == ORIGINAL and x.ref == i]
        if not pos:
            raise ValueError(f"run {i} has no original letters left")
        return pos[0], pos[-1]

    def original(self) -> BinaryWord:
        return BinaryWord("".join(str(x.bit) for x in self.letters if x.kind == ORIGINAL))

    def render(self, stage: Optional[int] = None) -> str:
        """Letters inserted at ``stage`` (or at any stage) are shown in brackets."""
        return "".join(
            f"[{x.bit}]" if x.kind == INSERTED and (stage is None or x.ref == stage) else str(x.bit)
            for x in self.letters
        )


def _shuffle(block: Sequence[Letter], extra: Letter, count: int, slots: Slots) -> List[Letter]:
    size = len(block) + count
    if len(slots) != count or any(not 0 <= s < size for s in slots) or len(set(slots)) != count:
        raise ValueError(f"bad slot choice {slots} for {count} letters in a block of {size}")
    chosen = set(slots)
    it = iter(block)
    return [extra if k in chosen else next(it) for k in range(size)]


def _slot_choices(block_len: int, count: int) -> Iterator[Slots]:
    return itertools.combinations(range(block_len + count), count)


# --- chi: all words containing p -----------------------------------------------------

def _chi_step(ctx: PatternContext, cur: AnnotatedWord, k: int, s_k: int, slots: Slots) -> AnnotatedWord:
    r = ctx.r
    bits = ctx.run_bits
    if k == 1:
        return AnnotatedWord(cur.letters + tuple(Letter(bits[-1], INSERTED, 1) for _ in range(s_k)))
    if k == 2:
        # everything after A_{r-1}; for a single-run pattern that is the whole word
        cut = cur.run_bounds(r - 1)[1] if r >= 2 else 0
        extra = bits[r - 2] if r >= 2 else 1 - bits[0]
        block = cur.letters[cut:]
        return AnnotatedWord(cur.letters[:cut] + tuple(_shuffle(block, Letter(extra, INSERTED, k), s_k, slots)))
    i = r - k + 2
    first, last = cur.run_bounds(i)
    extra = bits[i - 2] if i >= 2 else 1 - bits[0]
    block = cur.letters[first - 1:last - 1]
    mixed = _shuffle(block, Letter(extra, INSERTED, k), s_k, slots)
    return AnnotatedWord(cur.letters[:first - 1] + tuple(mixed) + cur.letters[last - 1:])


def _chi_block_len(ctx: PatternContext, cur: AnnotatedWord, k: int) -> int:
    r = ctx.r
    if k == 2:
        return len(cur) - (cur.run_bounds(r - 1)[1] if r >= 2 else 0)
    return ctx.run_lengths[r - k + 1] - 1


def chi_stages(ctx: ContextLike, plan: Plan, slots: Sequence[Slots]) -> List[AnnotatedWord]:
    """Stage words ``chi_1 .. chi_{r+1}`` for insertion counts ``plan`` (``s_1 .. s_{r+1}``).

    ``slots[k-2]`` gives, for stage ``k >= 2``, the positions the inserted
    letters take inside the permuted block.
    """
    ctx = PatternContext.of(ctx)
    r = ctx.r
    if len(plan) != r + 1 or len(slots) != r:
        raise ValueError(f"need {r + 1} counts and {r} slot choices")
    if any(x < 0 for x in plan):
        raise ValueError("insertion counts must be nonnegative")
    cur = _chi_step(ctx, AnnotatedWord.from_pattern(ctx), 1, plan[0], ())
    out = [cur]
    for k in range(2, r + 2):
        cur = _chi_step(ctx, cur, k, plan[k - 1], tuple(slots[k - 2]))
        out.append(cur)
    return out


@dataclass(frozen=True)
class Derivation:
    plan: Plan
    slots: Tuple[Slots, ...]
    result: AnnotatedWord

    @property
    def word(self) -> BinaryWord:
        return self.result.word


def _compositions(total: int, parts: int) -> Iterator[Plan]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def chi_derivations(ctx: ContextLike, n: int) -> Iterator[Derivation]:
    ctx = PatternContext.of(ctx)
    if n < ctx.m:
        raise ValueError(f"n={n} is shorter than the pattern")
    r = ctx.r
    budget = n - ctx.m

    def walk(k: int, cur: AnnotatedWord, left: int, plan: Plan, slots: Tuple[Slots, ...]):
        if k > r + 1:
            yield Derivation(plan, slots, cur)
            return
        counts = (left,) if k == r + 1 else range(left + 1)
        for s_k in counts:
            if k == 1:
                yield from walk(2, _chi_step(ctx, cur, 1, s_k, ()), left - s_k, (s_k,), ())
                continue
            for sl in _slot_choices(_chi_block_len(ctx, cur, k), s_k):
                nxt = _chi_step(ctx, cur, k, s_k, sl)
                yield from walk(k + 1, nxt, left - s_k, plan + (s_k,), slots + (sl,))

    yield from walk(1, AnnotatedWord.from_pattern(ctx), budget, (), ())


def generate_containing(ctx: ContextLike, n: int) -> List[BinaryWord]:
    """All words of length ``n`` containing the pattern, sorted."""
    return sorted({d.word for d in chi_derivations(ctx, n)}, key=lambda w: w.bits)


def chi_plan(ctx: ContextLike, w: WordLike) -> Optional[Tuple[Plan, Tuple[Slots, ...]]]:
    """Recover the insertion counts and slots that build ``w``, or None if ``p`` is absent.

    The blocks are cut at the ends of the minimal occurrence's runs.
    """
    ctx, w = PatternContext.of(ctx), as_word(w)
    lo = lexmin_occurrence(ctx, w)
    if lo is None:
        return None
    r = ctx.r
    bits, lengths = ctx.run_bits, ctx.run_lengths
    ends = [lo.run_span(ctx, i)[1] for i in range(1, r + 1)]
    letters = w.letters

    def others(segment: Sequence[int], keep: int) -> Slots:
        return tuple(k for k, b in enumerate(segment) if b != keep)

    cut = ends[r - 2] if r >= 2 else 0
    tail_seg = letters[cut:]
    tail_slots = others(tail_seg, bits[-1])
    plan = [len(tail_seg) - len(tail_slots) - lengths[-1], len(tail_slots)]
    slots = [tail_slots]
    for k in range(3, r + 2):
        i = r - k + 2
        start = ends[i - 2] if i >= 2 else 0
        seg = letters[start:ends[i - 1] - 1]
        sl = others(seg, bits[i - 1])
        plan.append(len(sl))
        slots.append(sl)
    return tuple(plan), tuple(slots)


# --- eta: primitive words -------------------------------------------------------------

def _eta_cut(ctx: PatternContext, cur: AnnotatedWord, k: int) -> Tuple[int, int]:
    """Block for stage ``k``: first position of ``A_i`` and the first position kept intact."""
    r = ctx.r
    i = r - k + 2
    w = cur.word
    found = lexmax_heads(ctx, w.runs)
    if found is None:
        raise ValueError(f"{ctx.pattern} does not occur in {w}")
    anchor = found[1][k - 2]
    first, last = cur.run_bounds(i)
    cut = llet(w, anchor, ctx.run_lengths[i - 1])
    if k > 2:
        # past A_i only the next stage's letters follow; stage 2 must also
        # reach the extra copies of A_r appended at stage 1
        cut = min(cut, last)
    return first, cut


def _eta_step(ctx: PatternContext, cur: AnnotatedWord, k: int, t_k: int, slots: Slots) -> AnnotatedWord:
    if k == 1:
        return AnnotatedWord(cur.letters + tuple(Letter(ctx.run_bits[-1], INSERTED, 1) for _ in range(t_k)))
    i = ctx.r - k + 2
    first, cut = _eta_cut(ctx, cur, k)
    block = cur.letters[first - 1:cut - 1]
    mixed = _shuffle(block, Letter(ctx.run_bits[i - 2], INSERTED, k), t_k, slots)
    return AnnotatedWord(cur.letters[:first - 1] + tuple(mixed) + cur.letters[cut - 1:])


def eta_stages(ctx: ContextLike, plan: Plan, slots: Sequence[Slots]) -> List[AnnotatedWord]:
    """Stage words ``eta_1 .. eta_r`` for counts ``t_1 .. t_r``; ``slots[k-2]`` serves stage ``k``."""
    ctx = PatternContext.of(ctx)
    r = ctx.r
    if len(plan) != r or len(slots) != r - 1:
        raise ValueError(f"need {r} counts and {r - 1} slot choices")
    if any(x < 0 for x in plan):
        raise ValueError("insertion counts must be nonnegative")
    cur = _eta_step(ctx, AnnotatedWord.from_pattern(ctx), 1, plan[0], ())
    out = [cur]
    for k in range(2, r + 1):
        cur = _eta_step(ctx, cur, k, plan[k - 1], tuple(slots[k - 2]))
        out.append(cur)
    return out


def eta_derivations(ctx: ContextLike, n: int) -> Iterator[Derivation]:
    ctx = PatternContext.of(ctx)
    if n < ctx.m:
        raise ValueError(f"n={n} is shorter than the pattern")
    r = ctx.r

    def walk(k: int, cur: AnnotatedWord, left: int, plan: Plan, slots: Tuple[Slots, ...]):
        if k > r:
            yield Derivation(plan, slots, cur)
            return
        counts = (left,) if k == r else range(left + 1)
        for t_k in counts:
            if k == 1:
                yield from walk(2, _eta_step(ctx, cur, 1, t_k, ()), left - t_k, (t_k,), ())
                continue
            first, cut = _eta_cut(ctx, cur, k)
            for sl in _slot_choices(cut - first, t_k):
                nxt = _eta_step(ctx, cur, k, t_k, sl)
                yield from walk(k + 1, nxt, left - t_k, plan + (t_k,), slots + (sl,))

    yield from walk(1, AnnotatedWord.from_pattern(ctx), n - ctx.m, (), ())


@lru_cache(maxsize=4096)
def _primitive_words(ctx: PatternContext, n: int) -> Tuple[BinaryWord, ...]:
    return tuple(sorted({d.word for d in eta_derivations(ctx, n)}, key=lambda w: w.bits))


def generate_primitive(ctx: ContextLike, n: int) -> List[BinaryWord]:
    """All primitive words of length exactly ``n``, sorted."""
    return list(_primitive_words(PatternContext.of(ctx), n))


def derivation_multiplicity(derivations: Iterator[Derivation]) -> Counter:
    """How many derivations reach each word."""
    return Counter(d.word for d in derivations)


# --- primitive sets --------------------------------------------------------------------

@dataclass(frozen=True)
class PrimitiveSet:
    pattern: BinaryWord
    n: int
    k: int
    words: Tuple[BinaryWord, ...]


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")


def primitive_set(ctx: ContextLike, n: int, k: int) -> PrimitiveSet:
    """Primitive words of length at most ``n`` with exactly ``k`` occurrences."""
    ctx = PatternContext.of(ctx)
    _check_k(k)
    words = [
        w for length in range(ctx.m, n + 1)
        for w in _primitive_words(ctx, length)
        if count_occurrences_formula(ctx, w) == k
    ]
    return PrimitiveSet(ctx.pattern, n, k, tuple(words))


def solve_primitive_equation(ctx: ContextLike, n: int, k: int) -> PrimitiveSet:
    """Search for solutions of ``formula(w) = k`` among constructed primitive words.

    The nested sum is evaluated with the first and last host runs pinned to
    the pattern's end runs, as they are for any primitive word.
    """
    ctx = PatternContext.of(ctx)
    _check_k(k)
    words = [
        w for length in range(ctx.m, n + 1)
        for w in _primitive_words(ctx, length)
        if count_occurrences_formula(ctx, w, anchored=True) == k
    ]
    return PrimitiveSet(ctx.pattern, n, k, tuple(words))


# --- completions ------------------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    """Gaps of ``w`` that accept letters of value ``bit`` without creating occurrences.

    Gap ``g`` sits between positions ``g`` and ``g + 1`` (gap 0 is before the
    first letter, gap ``n`` after the last).
    """

    name: str
    gaps: Tuple[int, ...]
    bit: int

    @property
    def slots(self) -> int:
        return len(self.gaps)


def completion_regions(ctx: ContextLike, w: WordLike) -> List[Region]:
    ctx, w = PatternContext.of(ctx), as_word(w)
    if not is_primitive(ctx, w):
        raise NotPrimitiveError(f"{w} is not primitive for {ctx.pattern}")
    n, r = len(w), ctx.r
    bits = ctx.run_bits
    if r == 1:
        return [Region("all", tuple(range(n + 1)), 1 - bits[0])]
    min_end, max_start = extreme_bounds(ctx, w)
    regions = [Region("head", tuple(range(min_end[0])), 1 - bits[0])]
    for i in range(2, r):
        if max_start[i - 1] < min_end[i - 1]:
            regions.append(Region(f"gap{i}", tuple(range(max_start[i - 1], min_end[i - 1])), 1 - bits[i - 1]))
    regions.append(Region("tail", tuple(range(max_start[-1], n + 1)), 1 - bits[-1]))
    return regions


def _check_completion_args(w: BinaryWord, m_prime: int) -> None:
    if m_prime < len(w):
        raise ValueError(f"target length {m_prime} is shorter than {len(w)}")


def completion_count(ctx: ContextLike, w: WordLike, m_prime: int) -> int:
    """Number of length-``m'`` words whose primitive reduction is ``w``."""
    w = as_word(w)
    _check_completion_args(w, m_prime)
    regions = completion_regions(ctx, w)
    total = 0
    for us in _compositions(m_prime - len(w), len(regions)):
        term = 1
        for reg, u in zip(regions, us):
            term *= comb(reg.slots - 1 + u, u)
        total += term
    return total


def _distribute(gaps: Tuple[int, ...], u: int) -> Iterator[Tuple[int, ...]]:
    return itertools.combinations_with_replacement(gaps, u)


def enumerate_completions(ctx: ContextLike, w: WordLike, m_prime: int) -> List[BinaryWord]:
    w = as_word(w)
    _check_completion_args(w, m_prime)
    regions = completion_regions(ctx, w)
    out = set()
    for us in _compositions(m_prime - len(w), len(regions)):
        per_region = [_distribute(reg.gaps, u) for reg, u in zip(regions, us)]
        for choice in itertools.product(*per_region):
            extra: Dict[int, str] = {}
            for reg, picked in zip(regions, choice):
                for g in picked:
                    extra[g] = extra.get(g, "") + str(reg.bit)
            out.add(BinaryWord("".join(extra.get(g, "") + c for g, c in enumerate(w.bits)) + extra.get(len(w), "")))
    return sorted(out, key=lambda v: v.bits)


# --- census ---------------------------------------------------------------------------------

@dataclass(frozen=True)
class Census:
    pattern: BinaryWord
    n: int
    table: Dict[int, int]
    primitives: Dict[int, Tuple[BinaryWord, ...]] = field(default_factory=dict)

    def get(self, k: int) -> int:
        return self.table.get(k, 0)

    @property
    def total(self) -> int:
        return sum(self.table.values())


def census_primitive(ctx: ContextLike, n: int, k: int) -> int:
    """Words of length ``n`` with exactly ``k`` occurrences, summed over primitive cores."""
    ctx = PatternContext.of(ctx)
    _check_k(k)
    return sum(completion_count(ctx, w, n) for w in primitive_set(ctx, n, k).words)


def distribution(ctx: ContextLike, n: int) -> Census:
    """Full table ``k -> B_{n,p}(k)``; the ``k = 0`` entry is the complement."""
    ctx = PatternContext.of(ctx)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    groups: Dict[int, List[BinaryWord]] = {}
    for length in range(ctx.m, n + 1):
        for w in _primitive_words(ctx, length):
            groups.setdefault(count_occurrences_formula(ctx, w), []).append(w)
    table = {k: sum(completion_count(ctx, w, n) for w in ws) for k, ws in sorted(groups.items())}
    table = {0: 2 ** n - sum(table.values()), **table}
    return Census(ctx.pattern, n, table, {k: tuple(ws) for k, ws in sorted(groups.items())})
