from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from subwords.occurrences import (
    PatternContext,
    Reason,
    alpha,
    classify_letter,
    count_occurrences_formula,
    count_ranges,
    ext_let_cases,
    is_lexmin_occurrence,
    is_primitive,
    left_span,
    letter_classes,
    lexmax_heads,
    lexmax_occurrence,
    lexmin_heads,
    lexmin_occurrence,
    reduce_to_primitive,
    right_span,
    same_parity_sum,
    step_left,
    zeta,
)
from subwords.oracles import (
    EmptyPatternError,
    classify_letter_oracle,
    count_occurrences_oracle,
    covered_positions_oracle,
    is_primitive_oracle,
    lexmax_oracle,
    lexmin_oracle,
    occurrences,
    reduce_oracle,
)
from subwords.words import decompose

W2 = "011100110100110"
W9 = "1001011101000111010"
P9 = "0011100011"
W14 = "10100101011010101001100101"
P14 = "0010000111011"

patterns = st.text(alphabet="01", min_size=1, max_size=5)
hosts = st.text(alphabet="01", max_size=14)


# --- span arithmetic ---------------------------------------------------------------

def test_same_parity_sum():
    assert same_parity_sum(decompose(W2), 4, 8) == 5
    assert same_parity_sum(decompose(W9), 9, 11) == 4
    dec = decompose(W2)
    assert all(same_parity_sum(dec, i, i) == dec.lengths[i - 1] for i in range(1, len(dec) + 1))
    assert same_parity_sum(dec, 5, 3) == 0
    with pytest.raises(ValueError):
        same_parity_sum(dec, 1, 2)
    with pytest.raises(ValueError):
        same_parity_sum(dec, 1, 11)


def test_spans():
    assert left_span(decompose(W2), 7, 4) == 2
    assert right_span(decompose(W2), 2, 6) == 2
    assert left_span(decompose(W14), 14, 4) == 3
    assert right_span(decompose(W9), 3, 3) == 1
    dec = decompose(W2)
    assert all(left_span(dec, i, 1) == 0 == right_span(dec, i, 1) for i in range(1, 10))
    assert left_span(decompose("0101"), 1, 2) is None
    assert right_span(decompose("0101"), 4, 2) is None


def test_alpha_zeta():
    assert alpha("110100", W2) == 2
    assert zeta("110100", W2) == 9
    assert zeta(P9, W9) == 11
    assert alpha("0110", "0110") == 1 and zeta("0110", "0110") == 3
    assert zeta("0", "1") is None
    with pytest.raises(ValueError):
        alpha("0", "")


def test_empty_pattern_rejected():
    with pytest.raises(EmptyPatternError):
        PatternContext("")
    with pytest.raises(EmptyPatternError):
        count_occurrences_oracle("", "01")


# --- extremal occurrences ------------------------------------------------------------

def test_lexmin_examples():
    lo = lexmin_occurrence("110100", W2)
    assert lo.occurrence == (2, 3, 5, 7, 9, 11) and lo.heads == (2, 3, 4, 5)
    lo = lexmin_occurrence(P9, W9)
    assert lo.occurrence == (2, 3, 4, 6, 7, 9, 11, 12, 14, 15) and lo.heads == (2, 3, 6, 9)
    assert lexmin_heads("11", decompose("00")) is None
    assert lexmin_occurrence("0110", "0110").occurrence == (1, 2, 3, 4)


def test_lexmax_examples():
    heads, anchors = lexmax_heads(P14, decompose(W14))
    assert heads == (21, 18, 17, 14, 7, 6)
    assert anchors == (26, 23, 21, 16, 8, 7)
    assert lexmax_heads("01", decompose("0101"))[0] == (4, 3)
    assert lexmax_heads("0110", decompose("0110"))[0] == (3, 2, 1)


def test_extremal_invariants():
    for p, w in [("110100", W2), (P9, W9), (P14, W14)]:
        lo, hi = lexmin_occurrence(p, w), lexmax_occurrence(p, w)
        assert list(lo.heads) == sorted(lo.heads) and len(set(lo.heads)) == len(lo.heads)
        assert list(hi.heads) == sorted(hi.heads, reverse=True)
        for occ in (lo.occurrence, hi.occurrence):
            assert "".join(w[i - 1] for i in occ) == p


@settings(max_examples=300)
@given(patterns, hosts)
def test_extremal_matches_brute_force(p, w):
    lo, hi = lexmin_occurrence(p, w), lexmax_occurrence(p, w)
    want_lo, want_hi = lexmin_oracle(p, w), lexmax_oracle(p, w)
    assert (lo and lo.occurrence) == want_lo or (lo is None and want_lo is None)
    assert (hi and hi.occurrence) == want_hi or (hi is None and want_hi is None)


@settings(max_examples=200)
@given(patterns, hosts)
def test_lexmax_mirrors_lexmin_on_reversal(p, w):
    hi = lexmax_occurrence(p, w)
    lo = lexmin_occurrence(p[::-1], w[::-1])
    if hi is None:
        assert lo is None
    else:
        n = len(w)
        assert tuple(sorted(n + 1 - i for i in hi.occurrence)) == lo.occurrence


def test_is_lexmin_occurrence():
    ctx = PatternContext("110100")
    assert is_lexmin_occurrence(ctx, W2, (2, 3, 5, 7, 9, 11))
    assert not is_lexmin_occurrence(ctx, W2, (2, 3, 5, 7, 9, 12))
    assert not is_lexmin_occurrence("01", "0011", (2, 3))
    assert is_lexmin_occurrence("01", "0011", (1, 3))
    # "before" means before the end of the matched run, not its first letter
    assert not is_lexmin_occurrence("00", "000", (1, 3))
    with pytest.raises(ValueError):
        is_lexmin_occurrence("01", "0011", (3, 4))


# --- counting ----------------------------------------------------------------------------

def test_count_examples():
    assert count_occurrences_formula("0010", "0001010") == 12
    assert count_occurrences_formula("010011010110", W2) == 6
    assert count_occurrences_formula(P14, "001000001111011") == 20
    assert count_occurrences_formula("0110", "0110") == 1
    assert count_occurrences_formula("11", "000") == 0
    assert count_occurrences_oracle("0010", "0001010") == 12
    assert count_occurrences_oracle("0", "0000") == 4
    assert count_occurrences_oracle("01", "0101") == 3


def test_count_range_traces():
    # nine-run-pattern example: sigma(w;9,11) = 4 and upper runs 11, 8, 5, 2
    assert count_ranges(P9, W9, [3, 4, 4]) == [(11, 2, 4), (8, 3, 4), (5, 3, 4), (2, 2, 2)]
    trace = count_ranges("1111000001", "101010011001010101011", [2, 6])
    assert trace == [(17, 1, 3), (16, 5, 6), (7, 4, 5)]
    assert same_parity_sum(decompose("101010011001010101011"), 15, 17) == 3
    assert step_left(decompose("101010011001010101011"), 17, 2) == 16


def test_count_is_exact_for_large_values():
    w = "0" * 40 + "1" * 40
    assert count_occurrences_formula("0011", w) == comb(40, 2) ** 2
    assert count_occurrences_formula("0" * 20, "0" * 60) == comb(60, 20)


def test_anchored_count():
    assert count_occurrences_formula("01", "0011", anchored=True) == 4
    with pytest.raises(ValueError):
        count_occurrences_formula("01", "1011", anchored=True)


@settings(max_examples=500)
@given(patterns, hosts)
def test_formula_matches_oracle(p, w):
    got = count_occurrences_formula(p, w)
    assert got == count_occurrences_oracle(p, w)
    assert got <= comb(len(w), len(p))


def test_formula_matches_oracle_small_exhaustive():
    import itertools
    for m in range(1, 4):
        for p in map("".join, itertools.product("01", repeat=m)):
            ctx = PatternContext(p)
            for n in range(0, 9):
                for w in map("".join, itertools.product("01", repeat=n)):
                    assert count_occurrences_formula(ctx, w) == count_occurrences_oracle(p, w), (p, w)


# --- coverage ------------------------------------------------------------------------------

def test_classify_examples():
    assert classify_letter(P14, W14, 3).reason == Reason.PREFIX_DEFICIT
    for l in (10, 11, 13):
        assert classify_letter(P14, W14, l).reason == Reason.MIDDLE_GAP


def test_marked_letter_eight_is_covered():
    # the middle-gap illustration also marks position 8, but the maximal
    # occurrence (5, 7, 8, ...) uses it
    assert 8 in lexmax_occurrence(P14, W14).occurrence
    assert classify_letter_oracle(P14, W14, 8)
    assert classify_letter(P14, W14, 8).reason == Reason.IN_EXTREME
    for l in range(1, 14):
        assert classify_letter(P14, P14, l).reason == Reason.IN_EXTREME


def test_classify_covered_inserted_letter():
    # transcribed host for the bridged example, confirmed by the oracle
    w = "001000011011000111011"
    c = classify_letter(P14, w, 12)
    assert c.covered and c.reason == Reason.BRIDGED
    assert classify_letter_oracle(P14, w, 12)


def test_transcribed_22_letter_host_is_not_the_example():
    w = "0010000110110001111011"
    assert len(w) == 22
    # the letter at 12 is covered here too, so the fixture alone proves nothing
    assert classify_letter(P14, w, 12).covered == classify_letter_oracle(P14, w, 12)


def test_classify_oracle_examples():
    assert not classify_letter_oracle("01", "0100", 3)
    assert classify_letter_oracle("01", "0011", 2)
    assert all(classify_letter_oracle("0110", "0110", l) for l in range(1, 5))


def test_classify_errors():
    with pytest.raises(ValueError):
        classify_letter("11", "00", 1)
    with pytest.raises(ValueError):
        classify_letter("01", "01", 3)


def test_uncovered_positions_fixture():
    w = "0101001010100110101"
    got = {l for l, c in enumerate(letter_classes(P14, w), start=1) if not c.covered}
    assert got == {2, 7, 9, 12, 13, 18}
    assert got == {l for l, c in enumerate(covered_positions_oracle(P14, w), start=1) if not c}


def test_foreign_letter_amendment():
    # the three-case rule alone calls the 1 bridged; no occurrence of 0 can use it
    assert ext_let_cases("0", "010") == [Reason.IN_EXTREME, Reason.BRIDGED, Reason.IN_EXTREME]
    classes = letter_classes("0", "010")
    assert classes[1].reason == Reason.FOREIGN_LETTER and not classes[1].covered
    assert not classify_letter_oracle("0", "010", 2)


@settings(max_examples=300)
@given(patterns, hosts)
def test_classification_matches_oracle(p, w):
    if count_occurrences_oracle(p, w) == 0:
        return
    assert [c.covered for c in letter_classes(p, w)] == covered_positions_oracle(p, w)


# --- primitivity -----------------------------------------------------------------------------

def test_primitivity_examples():
    assert is_primitive(P14, "0001001000101110011")
    assert not is_primitive(P14, "00010010100101110011")
    assert is_primitive(P14, P14)
    assert reduce_to_primitive(P14, "00010010100101110011").bits == "0001001000101110011"
    assert reduce_to_primitive("01", "0100").bits == "01"
    assert not is_primitive("11", "00")


def test_reduce_requires_occurrence():
    with pytest.raises(ValueError):
        reduce_to_primitive("11", "00")


@settings(max_examples=300)
@given(patterns, hosts)
def test_reduction_properties(p, w):
    if count_occurrences_oracle(p, w) == 0:
        assert not is_primitive(p, w)
        return
    red = reduce_to_primitive(p, w)
    assert red == reduce_oracle(p, w)
    assert is_primitive(p, red) and is_primitive_oracle(p, red)
    assert reduce_to_primitive(p, red) == red
    assert count_occurrences_oracle(p, red) == count_occurrences_oracle(p, w)
    assert is_primitive(p, w) == is_primitive_oracle(p, w)
    if is_primitive(p, w):
        assert alpha(p, w) == 1 and zeta(p, w) == len(decompose(w))


def test_occurrence_enumeration_order():
    occs = list(occurrences("01", "0101"))
    assert occs == [(1, 2), (1, 4), (3, 4)]
