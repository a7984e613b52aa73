import numpy as np
import pytest

from qhcodes.gf import (CONWAY_POLYNOMIALS, FieldError, FiniteField,
                        SquareTestInEvenCharError, factor_prime_power,
                        field_for_order, make_field)


def test_factor_prime_power():
    assert factor_prime_power(8) == (2, 3)
    assert factor_prime_power(9) == (3, 2)
    assert factor_prime_power(25) == (5, 2)
    assert factor_prime_power(7) == (7, 1)
    with pytest.raises(FieldError):
        factor_prime_power(12)
    with pytest.raises(FieldError):
        factor_prime_power(1)


def test_field_laws_gf9():
    """Full check of the ring axioms on the 9-element field."""
    ctx = make_field(3, 2)
    els = list(ctx.elements())
    for a in els:
        assert ctx.add(a, 0) == a
        assert ctx.mul(a, 1) == a
        assert ctx.add(a, ctx.neg(a)) == 0
        if a:
            assert ctx.mul(a, ctx.inv(a)) == 1
        for b in els:
            assert ctx.add(a, b) == ctx.add(b, a)
            assert ctx.mul(a, b) == ctx.mul(b, a)
            for c in els:
                assert ctx.mul(a, ctx.add(b, c)) == ctx.add(
                    ctx.mul(a, b), ctx.mul(a, c))


def test_generator_is_primitive():
    for p, m in ((2, 4), (3, 2), (5, 2)):
        ctx = make_field(p, m)
        g = ctx.generator
        seen = set()
        x = 1
        for _ in range(ctx.order - 1):
            seen.add(x)
            x = ctx.mul(x, g)
        assert len(seen) == ctx.order - 1


def test_frobenius_fixed_field():
    """x -> x^q fixes exactly the index-2 subfield."""
    for q in (3, 4, 5):
        ctx = field_for_order(q * q)
        fixed = [a for a in ctx.elements() if ctx.frobenius_q(a) == a]
        assert len(fixed) == q
        assert all(ctx.in_subfield(a) for a in fixed)


def test_frobenius_is_additive_and_multiplicative():
    ctx = make_field(3, 2)
    for a in ctx.elements():
        for b in ctx.elements():
            assert ctx.frobenius_q(ctx.add(a, b)) == ctx.add(
                ctx.frobenius_q(a), ctx.frobenius_q(b))
            assert ctx.frobenius_q(ctx.mul(a, b)) == ctx.mul(
                ctx.frobenius_q(a), ctx.frobenius_q(b))


def test_trace_norm_land_in_subfield():
    ctx = make_field(2, 4)
    q = ctx.sub_order
    traces = set()
    norms = set()
    for a in ctx.elements():
        t, n = ctx.trace_norm(a)
        assert 0 <= t < q and 0 <= n < q
        traces.add(t)
        norms.add(n)
    assert traces == set(range(q))      # trace is onto
    assert norms == set(range(q))       # norm is onto with 0 -> 0


def test_subfield_roundtrip():
    ctx = make_field(3, 2)
    sub = ctx.subfield
    for e in range(sub.order):
        up = ctx.embed_subfield(e)
        assert ctx.to_subfield(up) == e
    # embedding respects the operations
    for a in range(sub.order):
        for b in range(sub.order):
            assert ctx.embed_subfield(sub.add(a, b)) == ctx.add(
                ctx.embed_subfield(a), ctx.embed_subfield(b))
            assert ctx.embed_subfield(sub.mul(a, b)) == ctx.mul(
                ctx.embed_subfield(a), ctx.embed_subfield(b))


def test_square_counts_odd_q():
    ctx = make_field(5, 1)
    squares = [a for a in ctx.elements() if ctx.is_square(a)]
    assert len(squares) == 1 + (5 - 1) // 2
    even = make_field(2, 2)
    with pytest.raises(SquareTestInEvenCharError):
        even.is_square(3)


def test_absolute_trace_balance():
    """The absolute trace is a balanced map onto GF(p)."""
    ctx = make_field(2, 4)
    hist = {}
    for a in ctx.elements():
        t = ctx.trace_to_prime(a)
        hist[t] = hist.get(t, 0) + 1
    assert hist == {0: 8, 1: 8}


def test_vectorized_matches_scalar():
    ctx = make_field(3, 2)
    a = np.arange(ctx.order).repeat(ctx.order)
    b = np.tile(np.arange(ctx.order), ctx.order)
    vs = ctx.vadd(a, b)
    vm = ctx.vmul(a, b)
    for x, y, s, m in zip(a, b, vs, vm):
        assert s == ctx.add(int(x), int(y))
        assert m == ctx.mul(int(x), int(y))


def test_pow_row_and_scalar_row():
    ctx = make_field(2, 4)
    row = ctx.pow_row(3)
    for a in ctx.elements():
        assert row[a] == ctx.pow(a, 3)
    srow = ctx.scalar_mul_row(5)
    for a in ctx.elements():
        assert srow[a] == ctx.mul(5, a)


def test_missing_table_entry_is_refused():
    with pytest.raises(FieldError):
        FiniteField(2, 21)


def test_reducible_modulus_is_refused():
    # (x + 1)^2 = x^2 + 2x + 1 over GF(3) has a repeated root
    with pytest.raises(FieldError):
        FiniteField(3, 2, modulus=(1, 2, 1))


def test_irreducible_but_imprimitive_modulus_is_refused():
    # x^2 + 1 is irreducible over GF(3) but x has order 4, not 8
    with pytest.raises(FieldError):
        FiniteField(3, 2, modulus=(1, 0, 1))


def test_tabulated_moduli_all_construct():
    for (p, m) in CONWAY_POLYNOMIALS:
        if p ** m <= 256:
            ctx = make_field(p, m)
            assert ctx.order == p ** m


def test_serialize_shape():
    ctx = make_field(3, 2)
    s = ctx.serialize()
    assert s["p"] == 3 and s["m"] == 2
    assert len(s["modulus"]) == 3 and s["modulus"][-1] == 1
