import random

import pytest

from qhcodes.sss import (AccessStructure, InconsistentSharesError,
                         NotQualifiedError, Scheme, SSSError,
                         access_structure, apply_to_set, deal,
                         democracy_report, develop, group_closure,
                         load_fixture, parse_cycles, perfectness_check,
                         recover, structures_equal, verify_example)
from qhcodes.verify import get_variety


def test_scheme_shape(scheme33):
    assert scheme33.q == 9
    assert scheme33.k == 4
    assert scheme33.m == 261


def test_deal_is_seed_deterministic(scheme_h2):
    a = deal(scheme_h2, 3, 11)
    b = deal(scheme_h2, 3, 11)
    c = deal(scheme_h2, 3, 12)
    assert a.shares == b.shares
    assert a.shares != c.shares


def test_deal_rejects_bad_secret(scheme_h2):
    with pytest.raises(SSSError):
        deal(scheme_h2, 4, 0)


def test_roundtrip_on_access_sets(scheme33, access33):
    rng = random.Random(7)
    sets = access33.sorted_sets()
    for _ in range(10):
        subset = sets[rng.randrange(len(sets))]
        secret = rng.randrange(9)
        rep = deal(scheme33, secret, rng.randrange(10 ** 6))
        assert recover(scheme33, subset, rep.shares) == secret


def test_recover_rejects_non_qualified(scheme_h2, access_h2):
    rep = deal(scheme_h2, 1, 5)
    with pytest.raises(NotQualifiedError):
        recover(scheme_h2, (), rep.shares)
    # single participants never qualify here: every set is larger
    with pytest.raises(NotQualifiedError):
        recover(scheme_h2, (1,), rep.shares)


def test_recover_flags_inconsistent_shares(scheme_h2, access_h2):
    rep = deal(scheme_h2, 1, 5)
    subset = access_h2.sorted_sets()[0]
    shares = dict(rep.shares)
    shares[subset[0]] ^= 1
    with pytest.raises(InconsistentSharesError):
        recover(scheme_h2, subset, shares)


def test_recover_validates_input(scheme_h2):
    rep = deal(scheme_h2, 1, 5)
    with pytest.raises(SSSError, match="participant ids"):
        recover(scheme_h2, (0, 1), rep.shares)
    with pytest.raises(SSSError, match="missing"):
        recover(scheme_h2, (1, 2), {1: 0})


def test_access_structure_33(access33):
    assert access33.count == 729
    assert access33.is_antichain()
    profile = access33.size_profile()
    # total memberships counted by sets and by participants must agree
    assert sum(s * c for s, c in profile.items()) == 261 * 648


def test_access_structure_refused_for_non_minimal():
    v = get_variety("twisted", 4, 3)
    with pytest.raises(SSSError, match="not minimal"):
        access_structure(v)


def test_democracy_33(access33):
    rep = democracy_report(access33)
    assert rep.is_democratic
    assert rep.uniform_count == 648
    assert rep.dictators == []


def test_democracy_h2(access_h2):
    rep = democracy_report(access_h2)
    assert rep.sets == 64
    assert rep.uniform_count == 48
    assert access_h2.size_profile() == {31: 32, 35: 32}


def test_qualified_subsets(access_h2):
    s = access_h2.sorted_sets()[0]
    assert access_h2.is_qualified(s)
    assert access_h2.is_qualified(tuple(s) + (9,))
    assert not access_h2.is_qualified(s[:-1])


def test_perfectness_uniform_on_singleton(scheme_h2):
    rep = perfectness_check(scheme_h2, (1,))
    assert rep.verdict == "uniform"
    # 64 consistent messages, split evenly over the four secrets
    assert rep.consistent == 64
    assert all(e["count"] == 16 for e in rep.as_dict()["secret_counts"])


def test_perfectness_qualified_on_access_set(scheme_h2, access_h2):
    rep = perfectness_check(scheme_h2, access_h2.sorted_sets()[0])
    assert rep.verdict == "qualified"


def test_group_closure_s3():
    group = group_closure(["(1,2)", "(1,2,3)"], 3)
    assert group.order == 6


def test_parse_cycles_rejects_garbage():
    with pytest.raises(SSSError):
        parse_cycles("(1,2", 4)
    with pytest.raises(SSSError):
        parse_cycles("(1,2)(2,3)", 4)
    with pytest.raises(SSSError):
        parse_cycles("(1,9)", 4)


def test_apply_to_set():
    perm = parse_cycles("(1,2,3)", 4)
    assert apply_to_set(perm, {1, 4}) == frozenset({2, 4})


def test_develop_orbit_of_one_set():
    group = group_closure(["(1,2,3,4)"], 4)
    acc = develop([[1, 2]], group)
    assert acc.count == 4
    assert acc.size_profile() == {2: 4}


def test_develop_dedupes_across_starters():
    group = group_closure(["(1,2)"], 3)
    acc = develop([[1], [2]], group)
    assert acc.count == 2


def test_structures_equal():
    group = group_closure(["(1,2,3,4)"], 4)
    a = develop([[1, 2]], group)
    b = develop([[2, 3]], group)
    assert structures_equal(a, b)
    c = develop([[1, 3]], group)
    assert not structures_equal(a, c)


def test_fixture_loads():
    fx = load_fixture()
    assert fx.degree == 45
    assert fx.fixed == 1
    assert len(fx.generator_cycles) == 3
    assert sorted(len(s) for s in fx.starters) == [31, 35]


def test_verify_example_facts():
    facts = verify_example()
    assert facts["group_order"] == 576
    assert facts["n_sets"] == 64
    assert facts["size_profile"] == {31: 32, 35: 32}
    assert facts["is_antichain"]
    assert facts["starters_included"]
    assert facts["fixed_point_ok"]
    assert facts["automorphism_ok"]


def test_developed_matches_geometric_profile(access_h2):
    """The developed structure and the hyperplane structure agree on
    every label-free statistic checked here."""
    facts = verify_example()
    assert facts["n_sets"] == access_h2.count
    assert facts["size_profile"] == access_h2.size_profile()
