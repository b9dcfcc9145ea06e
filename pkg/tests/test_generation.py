import itertools
from math import factorial
from pathlib import Path

import pytest

from subwords.generation import (
    AnnotatedWord,
    NotPrimitiveError,
    census_primitive,
    chi_derivations,
    chi_plan,
    chi_stages,
    completion_count,
    completion_regions,
    derivation_multiplicity,
    distribution,
    enumerate_completions,
    eta_derivations,
    eta_stages,
    generate_containing,
    generate_primitive,
    primitive_set,
    solve_primitive_equation,
)
from subwords.occurrences import PatternContext, extreme_bounds, reduce_to_primitive
from subwords.oracles import (
    BoundExceededError,
    all_words,
    census_oracle,
    census_table_oracle,
    completion_oracle,
    count_occurrences_oracle,
    generate_containing_oracle,
    generate_primitive_oracle,
)
from subwords.words import BinaryWord

P14 = "0010000111011"
W14 = "10100101011010101001100101"
P17 = "110011100011"

REPORT = Path(__file__).resolve().parent.parent / "multiplicity_report.txt"


def bits(words):
    return {w.bits for w in words}


def small_patterns(max_p=4):
    for m in range(1, max_p + 1):
        yield from (w.bits for w in all_words(m))


# --- chi ------------------------------------------------------------------------------

def test_chi_trivial_and_small():
    assert bits(generate_containing(P14, 13)) == {P14}
    assert len(generate_containing("01", 4)) == 11
    assert bits(generate_containing("01", 2)) == {"01"}
    with pytest.raises(ValueError):
        generate_containing("011", 2)


def test_chi_stage_words_of_worked_example():
    ctx = PatternContext(P14)
    plan, slots = chi_plan(ctx, W14)
    assert plan == (0, 2, 1, 3, 4, 1, 2)
    stages = [s.word.bits for s in chi_stages(ctx, plan, slots)]
    assert stages == [
        "0010000111011",
        "001000011100101",
        "0010000111100101",
        "0010000101001100101",
        "00101011010101001100101",
        "000101011010101001100101",
        W14,
    ]
    # every stage keeps the pattern's own letters in order
    assert all(s.original() == BinaryWord(P14) for s in chi_stages(ctx, plan, slots))


def test_chi_contains_worked_example_word():
    # full enumeration at n = 26 is too large; membership is shown by a derivation
    ctx = PatternContext(P14)
    plan, slots = chi_plan(ctx, W14)
    assert chi_stages(ctx, plan, slots)[-1].word.bits == W14


def test_chi_plan_round_trip():
    for p in ["01", "0010", "110", "1"]:
        ctx = PatternContext(p)
        for w in generate_containing(ctx, 7):
            plan, slots = chi_plan(ctx, w)
            assert chi_stages(ctx, plan, slots)[-1].word == w
        assert chi_plan(ctx, "1" * 7 if "0" in p else "0" * 7) is None


def test_chi_complete_against_oracle():
    for p in small_patterns():
        for n in range(len(p), 11):
            assert set(generate_containing(p, n)) == generate_containing_oracle(p, n), (p, n)


# --- eta ----------------------------------------------------------------------------------

def test_eta_trivial_and_small():
    assert bits(generate_primitive(P14, 13)) == {P14}
    assert bits(generate_primitive("01", 3)) == {"001", "011"}


def test_eta_stage_words_of_worked_example():
    ctx = PatternContext(P17)
    want = [
        "1100111000111",
        "11001110001011",
        "110011101001011",
        "110011101001011",
        "11110011101001011",
    ]
    found = [
        d for d in eta_derivations(ctx, 17)
        if [s.word.bits for s in eta_stages(ctx, d.plan, d.slots)] == want
    ]
    assert len(found) == 1 and found[0].plan == (1, 1, 1, 0, 2)
    assert BinaryWord("11110011101001011") in generate_primitive(ctx, 17)


def test_eta_second_stage_reaches_appended_copies():
    # 0101 needs a 0 inserted among the copies of the last run added at stage 1
    assert BinaryWord("0101") in generate_primitive("01", 4)


def test_eta_complete_against_oracle():
    for p in small_patterns():
        for n in range(len(p), 11):
            assert set(generate_primitive(p, n)) == generate_primitive_oracle(p, n), (p, n)


def test_annotated_word_rendering():
    ctx = PatternContext("01")
    stages = eta_stages(ctx, (1, 1), [(0,)])
    assert stages[-1].word.bits == "0011"
    shown = stages[-1].render()
    assert shown.count("[") == 2 and shown.replace("[", "").replace("]", "") == "0011"
    assert AnnotatedWord.from_pattern(ctx).run_bounds(2) == (2, 2)


def test_multiplicity_report():
    lines = ["pattern n construction derivations words max_multiplicity"]
    for p in small_patterns(3):
        ctx = PatternContext(p)
        for n in range(len(p), 9):
            for name, derive in (("chi", chi_derivations), ("eta", eta_derivations)):
                counts = derivation_multiplicity(derive(ctx, n))
                total = sum(counts.values())
                lines.append(f"{p} {n} {name} {total} {len(counts)} {max(counts.values(), default=0)}")
                assert total >= len(counts)
    REPORT.write_text("\n".join(lines) + "\n")
    print("\n".join(lines))


# --- primitive sets -----------------------------------------------------------------------

def test_primitive_sets():
    assert bits(primitive_set("01", 3, 1).words) == {"01"}
    assert bits(primitive_set("01", 3, 2).words) == {"001", "011"}
    assert bits(primitive_set(P14, 13, 1).words) == {P14}
    assert bits(solve_primitive_equation("01", 3, 2).words) == {"001", "011"}
    assert bits(solve_primitive_equation(P14, 13, 1).words) == {P14}
    assert solve_primitive_equation("01", 3, 5).words == ()
    with pytest.raises(ValueError):
        primitive_set("01", 3, 0)


def test_solve_matches_primitive_set():
    for p in small_patterns(3):
        for k in range(1, 6):
            assert set(solve_primitive_equation(p, 7, k).words) == set(primitive_set(p, 7, k).words)


# --- completions -----------------------------------------------------------------------------

def test_completion_small():
    assert bits(enumerate_completions("01", "01", 3)) == {"010", "101"}
    assert completion_count("01", "01", 3) == 2
    assert completion_count(P14, "001000001111011", 15) == 1
    assert bits(enumerate_completions("01", "01", 2)) == {"01"}


def test_completion_rejects_non_primitive():
    with pytest.raises(NotPrimitiveError):
        completion_count("01", "010", 4)
    with pytest.raises(ValueError):
        completion_count("01", "01", 1)


def test_completion_worked_example():
    ctx = PatternContext(P14)
    w = "001000001111011"
    assert count_occurrences_oracle(P14, w) == 20
    gaps = set().union(*(r.gaps for r in completion_regions(ctx, w)))
    # blanks of the template _0_0100_0_0011_1101_1_
    assert gaps == {0, 1, 5, 6, 10, 14, 15}
    done = set(enumerate_completions(ctx, w, 20))
    assert len(done) == completion_count(ctx, w, 20)
    for v in ["00100110100110110110", "10101000001100110101", "01101000001111010010"]:
        assert BinaryWord(v) in done
        assert count_occurrences_oracle(P14, v) == 20 and reduce_to_primitive(ctx, v).bits == w


def test_completions_against_oracle():
    for p in small_patterns(3):
        ctx = PatternContext(p)
        for n in range(len(p), 6):
            for w in generate_primitive(ctx, n):
                for m_prime in range(n, min(n + 4, 9) + 1):
                    want = completion_oracle(p, w, m_prime)
                    assert set(enumerate_completions(ctx, w, m_prime)) == want, (p, w, m_prime)
                    assert completion_count(ctx, w, m_prime) == len(want)


def test_completion_partition():
    for p in small_patterns(3):
        ctx = PatternContext(p)
        n = 8
        seen = {}
        for length in range(len(p), n + 1):
            for w in generate_primitive(ctx, length):
                for v in enumerate_completions(ctx, w, n):
                    assert v not in seen, (p, v, w, seen.get(v))
                    seen[v] = w
        containing = generate_containing_oracle(p, n)
        assert set(seen) == containing
        for v, w in seen.items():
            assert reduce_to_primitive(ctx, v) == w


def _gbinom(top: int, k: int) -> int:
    # generalized binomial, defined for negative top
    out = 1
    for i in range(k):
        out *= top - i
    return out // factorial(k)


def literal_completion_formula(p: str, w: str, m_prime: int) -> int:
    """The product-of-binomials count with window capacity ``Rlet - Llet - 3``."""
    ctx = PatternContext(p)
    r, a = ctx.r, ctx.run_lengths
    min_end, max_start = extreme_bounds(ctx, w)
    total = 0
    for us in itertools.product(range(m_prime - len(w) + 1), repeat=r):
        if sum(us) != m_prime - len(w):
            continue
        term = _gbinom(a[0] - 1 + us[r - 1], us[r - 1]) * _gbinom(a[-1] - 1 + us[0], us[0])
        for j in range(2, r + 1):
            i = r - j + 1
            term *= _gbinom(min_end[i - 1] - max_start[i - 1] - 3 + us[j - 1], us[j - 1])
        total += term
    return total


def test_literal_completion_formula_disagrees_with_oracle():
    # documented deviation: the literal count can even be negative
    assert literal_completion_formula("01", "01", 3) == -1
    assert len(completion_oracle("01", "01", 3)) == 2 == completion_count("01", "01", 3)


# --- census ------------------------------------------------------------------------------------

def test_census_small():
    assert census_primitive("01", 3, 1) == 2
    assert census_primitive("01", 3, 2) == 2
    assert distribution("01", 3).table == {0: 4, 1: 2, 2: 2}
    assert distribution("0", 2).table == {0: 1, 1: 2, 2: 1}
    assert distribution("0", 1).table == {0: 1, 1: 1}
    assert census_oracle("01", 2, 1) == 1
    assert census_oracle("01", 3, 0) == 4
    with pytest.raises(ValueError):
        census_primitive("01", 3, 0)


def test_census_at_pattern_length():
    for p in small_patterns(4):
        table = distribution(p, len(p)).table
        assert table == {0: 2 ** len(p) - 1, 1: 1}


def test_census_against_oracle():
    for p in small_patterns(3):
        for n in range(1, 10):
            census = distribution(p, n)
            assert census.total == 2 ** n
            want = census_table_oracle(p, n)
            assert {k: v for k, v in census.table.items() if v} == want, (p, n)


def test_oracle_bound():
    with pytest.raises(BoundExceededError):
        census_table_oracle("01", 17)
    with pytest.raises(BoundExceededError):
        generate_containing_oracle("01", 5, bound=4)


def test_bound_from_environment(monkeypatch):
    monkeypatch.setenv("SUBWORDS_MAX_N", "3")
    with pytest.raises(BoundExceededError):
        census_table_oracle("01", 4)
