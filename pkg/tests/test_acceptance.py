"""Acceptance suite: ten numbered criteria with exact integer targets.

Two tests in here fail on purpose.  The reference tables pinned for the
(q=3, r=3) hyperplane counts and the matching weight enumerator are
arithmetically impossible: every 262-point set in PG(3, 9) satisfies
sum(size * count) = 262 * 91 = 23842 over the 820 hyperplanes, and
sum(size * (size-1) * count) = 262 * 261 * 10, while the pinned tables
give 23599 and 669240.  The measured tables (counts 486 and 243 where
the pinned ones say 513 and 216; weights 3888 and 1944 where they say
4104 and 1728) satisfy both identities and the exhaustive codeword
cross-checks.  The pinned numbers are asserted as written so the
discrepancy stays visible; everything else is green.
"""

import random

import pytest

from qhcodes.code import (ab_condition, code_from_variety,
                          cutting_blocking_check, divisibility_report,
                          minimality_bruteforce, weights_bruteforce,
                          weights_from_sections)
from qhcodes.sss import (NotQualifiedError, deal, democracy_report,
                         perfectness_check, recover, verify_example)
from qhcodes.variety import (ParamsError, default_params,
                             hyperplane_spectrum, line_spectrum,
                             predicted_line_sizes, predicted_spectrum,
                             surgery_check)
from qhcodes.verify import (REFERENCE_SPECTRUM_COUNTS_33,
                            REFERENCE_WEIGHT_TABLE_33, get_access,
                            get_scheme, get_variety)


# -- criterion 1: point counts ------------------------------------------

def test_c01_sizes():
    assert get_variety("twisted", 3, 3).n == 262
    assert get_variety("twisted", 4, 3).n == 1041
    assert get_variety("twisted", 4, 4).n == 16657
    with pytest.raises(ParamsError, match="exhaustive scan"):
        default_params(3, 4)


# -- criterion 2: hyperplane spectra --------------------------------------

def test_c02_spectrum_supports():
    for q, r in ((3, 3), (5, 3), (4, 3), (4, 4)):
        sp = hyperplane_spectrum(get_variety("twisted", q, r))
        assert sp.support == predicted_spectrum(q, r, "twisted").sizes, (q, r)


def test_c02_spectrum_counts_33_pinned():
    # Pinned table: impossible, since 19*1 + 26*513 + 28*72 + 35*216
    # + 37*18 = 23599 while any 262-point set gives 262*91 = 23842.
    # The measured counts {26: 486, 35: 243} satisfy the identity.
    sp = hyperplane_spectrum(get_variety("twisted", 3, 3))
    assert dict(sp.counts) == REFERENCE_SPECTRUM_COUNTS_33


# -- criterion 3: line spectrum -------------------------------------------

def test_c03_lines():
    sp = line_spectrum(get_variety("twisted", 3, 3))
    assert sp.total == 7462
    assert set(sp.support) <= set(predicted_line_sizes(3))


# -- criterion 4: weight enumerator ---------------------------------------

def test_c04_weights_pinned_table():
    # Pinned enumerator: impossible, since sum(w * A_w) = 1529928 while
    # a full-support length-262 code with 6561 words over GF(9) forces
    # 262 * 8 * 9^3 = 1527984.  The measured {236: 3888, 227: 1944}
    # satisfies it and matches the exhaustive enumeration below.
    dist = weights_from_sections(get_variety("twisted", 3, 3))
    assert dist.weights == REFERENCE_WEIGHT_TABLE_33


def test_c04_weights_exhaustive_crosscheck():
    v = get_variety("twisted", 3, 3)
    a = weights_from_sections(v)
    b = weights_bruteforce(code_from_variety(v))
    assert a.weights == b.weights
    assert sum(a.weights.values()) == 9 ** 4 - 1


# -- criterion 5: divisibility --------------------------------------------

def test_c05_divisibility():
    for q, r in ((4, 3), (4, 4)):
        dist = weights_from_sections(get_variety("twisted", q, r))
        assert divisibility_report(dist, 4).all_divisible, (q, r)
    dist = weights_from_sections(get_variety("twisted", 3, 3))
    assert not divisibility_report(dist, 3).all_divisible


# -- criterion 6: minimality ----------------------------------------------

def test_c06_minimality_positive_fixtures():
    for kind, q, r in (("hermitian", 2, 3), ("hermitian", 3, 3),
                       ("quasi-hermitian", 3, 3), ("twisted", 3, 3)):
        assert cutting_blocking_check(get_variety(kind, q, r)).ok, (kind, q, r)


def test_c06_minimality_failure_with_witness():
    v = get_variety("twisted", 4, 3)
    rep = cutting_blocking_check(v)
    assert not rep.ok
    assert rep.witness_coords == (1, 0, 0, 0)
    bf = minimality_bruteforce(code_from_variety(v))
    assert bf.non_minimal_words == 15
    assert bf.non_minimal_weights == {1024: 15}


# -- criterion 7: democracy -----------------------------------------------

def test_c07_democracy_33():
    acc = get_access("twisted", 3, 3)
    rep = democracy_report(acc)
    assert acc.count == 729
    assert rep.is_democratic and rep.uniform_count == 648


def test_c07_democracy_hermitian_q2():
    acc = get_access("hermitian", 2, 3)
    rep = democracy_report(acc)
    assert acc.count == 64
    assert rep.is_democratic and rep.uniform_count == 48
    assert acc.size_profile() == {31: 32, 35: 32}


# -- criterion 8: dealing, recovery, perfectness ---------------------------

def test_c08_roundtrips_and_perfectness():
    rng = random.Random(20260819)
    done = 0
    for kind, q, r in (("twisted", 3, 3), ("hermitian", 2, 3)):
        scheme = get_scheme(kind, q, r)
        sets = get_access(kind, q, r).sorted_sets()
        for _ in range(50):
            subset = sets[rng.randrange(len(sets))]
            secret = rng.randrange(scheme.q)
            rep = deal(scheme, secret, rng.randrange(10 ** 9))
            assert recover(scheme, subset, rep.shares) == secret
            done += 1
    assert done == 100

    scheme = get_scheme("hermitian", 2, 3)
    shares = deal(scheme, 0, 0).shares
    non_qualified = [()]
    non_qualified += [(i,) for i in range(1, scheme.m + 1)]
    pairs = []
    for i in range(1, scheme.m + 1):
        for j in range(i + 1, scheme.m + 1):
            try:
                recover(scheme, (i, j), shares)
            except NotQualifiedError:
                pairs.append((i, j))
            if len(pairs) == 20:
                break
        if len(pairs) == 20:
            break
    for subset in non_qualified + pairs:
        rep = perfectness_check(scheme, subset)
        assert rep.verdict == "uniform", subset


# -- criterion 9: the shipped development example ---------------------------

def test_c09_example_reproduction():
    facts = verify_example()
    assert facts["group_order"] == 576
    assert facts["n_sets"] == 64
    assert facts["size_profile"] == {31: 32, 35: 32}
    assert facts["is_antichain"]
    assert facts["automorphism_ok"]


# -- criterion 10: cross-criterion consistency ------------------------------

CROSS_FIXTURES = (("twisted", 3, 3), ("twisted", 4, 3), ("hermitian", 2, 3),
                  ("hermitian", 3, 3), ("quasi-hermitian", 3, 3))


def test_c10_weight_views_identical():
    for kind, q, r in CROSS_FIXTURES:
        v = get_variety(kind, q, r)
        assert weights_from_sections(v).weights == \
            weights_bruteforce(code_from_variety(v)).weights, (kind, q, r)


def test_c10_criteria_implications():
    for kind, q, r in CROSS_FIXTURES:
        v = get_variety(kind, q, r)
        ab = ab_condition(weights_from_sections(v))
        cut = cutting_blocking_check(v)
        bf = minimality_bruteforce(code_from_variety(v))
        if ab.passes:
            assert bf.ok, (kind, q, r)
        assert cut.ok == bf.ok, (kind, q, r)


def test_c10_surgery_identity_per_hyperplane():
    rep = surgery_check(default_params(3, 3))
    assert rep["sets_match"] and rep["per_hyperplane_ok"]
    assert rep["max_abs_residual"] == 0
