"""Binary words, run decompositions and same-parity position helpers.

All positions exposed here are 1-based. Functions that can fail because a
requested letter does not exist (``llet``/``rlet``) return ``None`` for that
outcome and raise ``ValueError`` only for malformed arguments.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

EVEN = 0
ODD = 1


@dataclass(frozen=True)
class BinaryWord:
    """Immutable word over {0, 1}, stored as its ASCII form."""

    bits: str = ""

    def __post_init__(self) -> None:
        if not isinstance(self.bits, str):
            raise TypeError(f"expected str, got {type(self.bits).__name__}")
        bad = set(self.bits) - {"0", "1"}
        if bad:
            raise ValueError(f"not a binary word: {self.bits!r}")

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> "BinaryWord":
        return cls("".join("1" if b else "0" for b in letters))

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return self.bits

    def __iter__(self) -> Iterator[int]:
        return (1 if c == "1" else 0 for c in self.bits)

    def __lt__(self, other: "BinaryWord") -> bool:
        return (len(self), self.bits) < (len(other), other.bits)

    @cached_property
    def letters(self) -> Tuple[int, ...]:
        return tuple(self)

    def letter(self, i: int) -> int:
        """Letter at 1-based position ``i``."""
        _check_position(self, i)
        return self.letters[i - 1]

    def reversed(self) -> "BinaryWord":
        return BinaryWord(self.bits[::-1])

    @cached_property
    def runs(self) -> "RunDecomposition":
        return decompose(self)


WordLike = Union[BinaryWord, str]


def as_word(w: WordLike) -> BinaryWord:
    return w if isinstance(w, BinaryWord) else BinaryWord(w)


@dataclass(frozen=True)
class Run:
    parity: int
    start: int
    end: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class RunDecomposition:
    word: BinaryWord
    runs: Tuple[Run, ...]

    def __len__(self) -> int:
        return len(self.runs)

    def run(self, i: int) -> Run:
        """Run ``B_i`` for 1-based ``i``."""
        if not 1 <= i <= len(self.runs):
            raise ValueError(f"run id {i} outside 1..{len(self.runs)}")
        return self.runs[i - 1]

    @cached_property
    def lengths(self) -> Tuple[int, ...]:
        return tuple(r.length for r in self.runs)

    @cached_property
    def parities(self) -> Tuple[int, ...]:
        return tuple(r.parity for r in self.runs)

    @cached_property
    def _run_of(self) -> Tuple[int, ...]:
        out = []
        for i, r in enumerate(self.runs, start=1):
            out.extend([i] * r.length)
        return tuple(out)

    def run_index(self, k: int) -> int:
        _check_position(self.word, k)
        return self._run_of[k - 1]


def decompose(w: WordLike) -> RunDecomposition:
    w = as_word(w)
    runs = []
    start = 1
    bits = w.bits
    for k in range(1, len(bits) + 1):
        if k == len(bits) or bits[k] != bits[k - 1]:
            runs.append(Run(int(bits[k - 1]), start, k))
            start = k + 1
    return RunDecomposition(w, tuple(runs))


def run_index(dec: RunDecomposition, k: int) -> int:
    """Index of the run containing position ``k``."""
    return dec.run_index(k)


def run_first(run: Run) -> int:
    return run.start


def run_last(run: Run) -> int:
    return run.end


def _check_position(w: BinaryWord, i: int) -> None:
    if not 1 <= i <= len(w):
        raise ValueError(f"position {i} outside 1..{len(w)}")


def same_parity_distance(w: WordLike, l1: int, l2: int) -> int:
    """Number of letters equal to ``w[l1]`` in positions ``l1..l2`` inclusive."""
    w = as_word(w)
    _check_position(w, l1)
    _check_position(w, l2)
    if l1 > l2:
        raise ValueError(f"need l1 <= l2, got {l1} > {l2}")
    c = w.bits[l1 - 1]
    if w.bits[l2 - 1] != c:
        raise ValueError(f"letters at {l1} and {l2} differ")
    return w.bits.count(c, l1 - 1, l2)


def llet(w: WordLike, j: int, k: int) -> Optional[int]:
    """Position of the k-th letter equal to ``w[j]`` counting leftward from j.

    ``k = 1`` gives ``j``. Returns ``None`` when fewer than ``k`` such letters
    lie at or left of ``j``.
    """
    w = as_word(w)
    _check_position(w, j)
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    c = w.bits[j - 1]
    pos = j - 1
    for _ in range(k - 1):
        pos = w.bits.rfind(c, 0, pos)
        if pos < 0:
            return None
    return pos + 1


def rlet(w: WordLike, j: int, k: int) -> Optional[int]:
    """Mirror of :func:`llet`, counting rightward."""
    w = as_word(w)
    _check_position(w, j)
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    c = w.bits[j - 1]
    pos = j - 1
    for _ in range(k - 1):
        pos = w.bits.find(c, pos + 1)
        if pos < 0:
            return None
    return pos + 1


def tail(w: WordLike, j: int) -> BinaryWord:
    """Suffix ``w_j ... w_n``; ``j = n + 1`` gives the empty word."""
    w = as_word(w)
    if not 1 <= j <= len(w) + 1:
        raise ValueError(f"tail index {j} outside 1..{len(w) + 1}")
    return BinaryWord(w.bits[j - 1:])


def sort_words(words: Iterable[WordLike]) -> list[BinaryWord]:
    """Sort by length, then lexicographically."""
    return sorted({as_word(w) for w in words}, key=lambda w: (len(w), w.bits))


def read_word_list(path: Union[str, Path]) -> list[BinaryWord]:
    """Read one word per line; blank lines and ``#`` comments are skipped.

    A line holding only ``-`` stands for the empty word.
    """
    out = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append(BinaryWord("" if line == "-" else line))
    return out


def format_word_list(words: Sequence[WordLike]) -> str:
    return "".join(f"{as_word(w).bits or '-'}\n" for w in words)


def write_word_list(path: Union[str, Path], words: Sequence[WordLike]) -> None:
    Path(path).write_text(format_word_list(words))
