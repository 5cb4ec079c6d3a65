"""Field, polynomial, and projective-line primitives.

Each operation is checked against a slower independent computation where
one exists (naive polynomial powering, exhaustive root evaluation), plus
the handful of pinned small-field values that double as regression anchors.
"""

import pickle
import random

import pytest

from howecurves import (
    INF,
    FieldCtx,
    MobiusMap,
    UniPoly,
    cross_ratio,
    fq_pow,
    is_prime,
    mobius_from_triples,
    poly_gcd,
    poly_powmod_truncated,
    poly_roots_in_fq,
    sort_key,
)


def _random_elem(ctx, rng):
    return ctx.elem(rng.randrange(ctx.p), rng.randrange(ctx.p))


def _random_poly(ctx, rng, deg):
    coeffs = [_random_elem(ctx, rng) for _ in range(deg)]
    coeffs.append(ctx.one)
    return UniPoly.from_coeffs(ctx, coeffs)


# ---------------------------------------------------------------------------
# field context
# ---------------------------------------------------------------------------


def test_ctx_rejects_composites():
    with pytest.raises(ValueError):
        FieldCtx(9)
    with pytest.raises(ValueError):
        FieldCtx(1)


def test_nonresidue_is_a_nonsquare():
    for p in (5, 7, 11, 13, 199):
        ctx = FieldCtx(p)
        assert pow(ctx.r, (p - 1) // 2, p) == p - 1


def test_elements_enumerates_the_whole_field():
    ctx = FieldCtx(5)
    elems = list(ctx.elements())
    assert len(elems) == 25
    assert len(set(elems)) == 25


def test_field_axioms_on_samples():
    ctx = FieldCtx(13)
    rng = random.Random(1)
    for _ in range(200):
        a = _random_elem(ctx, rng)
        b = _random_elem(ctx, rng)
        assert ctx.mul(a, b) == ctx.mul(b, a)
        assert ctx.add(ctx.sub(a, b), b) == a
        if a != ctx.zero:
            assert ctx.mul(a, ctx.inv(a)) == ctx.one
        assert ctx.mul(a, ctx.conj(a)) == (ctx.norm(a) % ctx.p, 0)


def test_sqrt_inverts_squaring():
    ctx = FieldCtx(11)
    rng = random.Random(2)
    for _ in range(50):
        a = _random_elem(ctx, rng)
        s = ctx.sqr(a)
        assert ctx.is_square(s)
        r = ctx.sqrt(s)
        assert ctx.sqr(r) == s


def test_fq_pow_pinned_values():
    ctx = FieldCtx(11)
    assert fq_pow(ctx, ctx.one, 10 ** 9) == ctx.one
    assert fq_pow(ctx, ctx.zero, 5) == ctx.zero
    t = ctx.elem(0, 1)
    # Frobenius squared is the identity on F_{p^2}.
    assert fq_pow(ctx, t, 11 ** 2) == t


def test_fq_pow_lagrange():
    ctx = FieldCtx(11)
    q = 11 ** 2
    for x in ctx.elements():
        if x == ctx.zero:
            continue
        assert fq_pow(ctx, x, q - 1) == ctx.one


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


def test_powmod_truncated_pinned():
    ctx = FieldCtx(7)
    f = UniPoly.from_int_coeffs(ctx, [1, 1])  # x + 1
    g = poly_powmod_truncated(f, 2, 1)
    assert g.coeff(0) == ctx.one and g.coeff(1) == ctx.elem(2)
    assert g.degree <= 1


def test_powmod_truncated_squared_sextic():
    # (x^6 + 3x^3 + 2)^2 = x^12 + x^9 + 3x^6 + 2x^3 + 4 over F_5.
    ctx = FieldCtx(5)
    f = UniPoly.from_int_coeffs(ctx, [2, 0, 0, 3, 0, 0, 1])
    g = poly_powmod_truncated(f, 2, 12)
    want = {0: 4, 3: 2, 6: 3, 9: 1, 12: 1}
    for k in range(13):
        assert g.coeff(k) == ctx.elem(want.get(k, 0))


def test_powmod_truncated_zero_exponent():
    ctx = FieldCtx(5)
    f = UniPoly.from_int_coeffs(ctx, [3, 1, 4])
    g = poly_powmod_truncated(f, 0, 10)
    assert g.degree == 0 and g.coeff(0) == ctx.one


def test_powmod_truncated_matches_repeated_multiplication():
    ctx = FieldCtx(7)
    rng = random.Random(3)
    for _ in range(15):
        f = _random_poly(ctx, rng, rng.randrange(1, 7))
        e = rng.randrange(1, 9)
        cap = rng.randrange(0, f.degree * e + 3)
        full = UniPoly.from_coeffs(ctx, [ctx.one])
        for _ in range(e):
            full = full * f
        assert poly_powmod_truncated(f, e, cap) == full.truncate(cap)


def test_roots_pinned_small_cases():
    ctx = FieldCtx(11)
    f = UniPoly.from_roots(ctx, [ctx.zero, ctx.one])
    assert poly_roots_in_fq(f) == [ctx.zero, ctx.one]

    # x^2 + 1 has no roots in F_11 but two in F_121.
    g = UniPoly.from_int_coeffs(ctx, [1, 0, 1])
    roots = poly_roots_in_fq(g)
    assert len(roots) == 2
    for r in roots:
        assert r[1] != 0
        assert ctx.sqr(r) == ctx.elem(10)

    ctx13 = FieldCtx(13)
    h = UniPoly.from_int_coeffs(ctx13, [1, 0, 1])
    assert poly_roots_in_fq(h) == [ctx13.elem(5), ctx13.elem(8)]


def test_roots_of_zero_polynomial_rejected():
    ctx = FieldCtx(5)
    with pytest.raises(ValueError):
        poly_roots_in_fq(UniPoly.zero(ctx))


def test_roots_match_exhaustive_evaluation():
    rng = random.Random(4)
    for p in (5, 7, 13):
        ctx = FieldCtx(p)
        for _ in range(8):
            f = _random_poly(ctx, rng, rng.randrange(1, 6))
            want = sorted(x for x in ctx.elements() if f.eval(x) == ctx.zero)
            assert poly_roots_in_fq(f) == want


def test_roots_are_rng_independent():
    ctx = FieldCtx(13)
    f = UniPoly.from_roots(ctx, [ctx.elem(2), ctx.elem(5), ctx.elem(0, 1), ctx.elem(7, 3)])
    a = poly_roots_in_fq(f, rng=random.Random(1))
    b = poly_roots_in_fq(f, rng=random.Random(999))
    assert a == b == sorted([ctx.elem(2), ctx.elem(5), ctx.elem(0, 1), ctx.elem(7, 3)])


def test_gcd_pinned_cases():
    ctx = FieldCtx(11)
    f = UniPoly.from_int_coeffs(ctx, [-1, 0, 1])  # x^2 - 1
    g = UniPoly.from_int_coeffs(ctx, [-1, 1])  # x - 1
    assert poly_gcd(f, g) == g.monic()

    h = UniPoly.from_roots(ctx, [ctx.elem(2), ctx.elem(3)])
    k = UniPoly.from_roots(ctx, [ctx.elem(3), ctx.elem(4)])
    assert poly_gcd(h, k) == UniPoly.from_roots(ctx, [ctx.elem(3)])

    s = h.scale(ctx.elem(7))
    assert poly_gcd(s, s) == h.monic()
    assert poly_gcd(s, UniPoly.zero(ctx)) == h.monic()


def test_gcd_of_two_zeros_rejected():
    ctx = FieldCtx(5)
    with pytest.raises(ValueError):
        poly_gcd(UniPoly.zero(ctx), UniPoly.zero(ctx))


def test_gcd_divides_both_operands():
    ctx = FieldCtx(7)
    rng = random.Random(5)
    for _ in range(20):
        common = _random_poly(ctx, rng, rng.randrange(0, 3))
        f = common * _random_poly(ctx, rng, rng.randrange(1, 4))
        g = common * _random_poly(ctx, rng, rng.randrange(1, 4))
        d = poly_gcd(f, g)
        assert (f % d).is_zero() and (g % d).is_zero()
        assert (d % common.monic()).is_zero()


# ---------------------------------------------------------------------------
# projective line
# ---------------------------------------------------------------------------


def test_sort_key_places_inf_last():
    ctx = FieldCtx(11)
    pts = [INF, ctx.elem(3), ctx.zero, ctx.elem(0, 1)]
    assert sorted(pts, key=sort_key)[-1] is INF


def test_inf_pickles_to_the_same_sentinel():
    assert pickle.loads(pickle.dumps(INF)) is INF


def test_cross_ratio_pinned_value():
    ctx = FieldCtx(11)
    got = cross_ratio(ctx, INF, ctx.one, ctx.zero, ctx.elem(2))
    assert got == ctx.elem(10)


def test_cross_ratio_of_standard_frame():
    # (0, 1; INF, t) lands in the six-element orbit of t; with this
    # bracket convention the representative is (t - 1)/t.
    ctx = FieldCtx(13)
    for t0 in range(2, 13):
        t = ctx.elem(t0)
        got = cross_ratio(ctx, ctx.zero, ctx.one, INF, t)
        assert got == ctx.div(ctx.sub(t, ctx.one), t)
        inv = ctx.inv(t)
        one_minus = ctx.sub(ctx.one, t)
        orbit = {
            t,
            inv,
            one_minus,
            ctx.inv(one_minus),
            ctx.div(t, ctx.sub(t, ctx.one)),
            ctx.div(ctx.sub(t, ctx.one), t),
        }
        assert got in orbit


def test_cross_ratio_is_mobius_invariant():
    ctx = FieldCtx(11)
    rng = random.Random(6)
    pts = [INF, ctx.zero, ctx.one, ctx.elem(4, 2)]
    base = cross_ratio(ctx, *pts)
    seen = 0
    while seen < 100:
        a, b, c, d = (_random_elem(ctx, rng) for _ in range(4))
        if ctx.sub(ctx.mul(a, d), ctx.mul(b, c)) == ctx.zero:
            continue
        m = MobiusMap(ctx, a, b, c, d)
        assert cross_ratio(ctx, *(m(x) for x in pts)) == base
        seen += 1


def test_cross_ratio_requires_distinct_points():
    ctx = FieldCtx(11)
    with pytest.raises(ValueError):
        cross_ratio(ctx, ctx.zero, ctx.zero, ctx.one, INF)
    with pytest.raises(ValueError):
        cross_ratio(ctx, INF, ctx.one, ctx.elem(2), INF)


def test_mobius_from_triples_identity():
    ctx = FieldCtx(11)
    tri = (ctx.zero, ctx.one, INF)
    m = mobius_from_triples(ctx, tri, tri)
    for x in list(ctx.elements())[:20] + [INF]:
        assert m(x) == x or (x is INF and m(x) is INF)


def test_mobius_from_triples_translation():
    ctx = FieldCtx(11)
    m = mobius_from_triples(ctx, (ctx.zero, ctx.one, INF), (ctx.one, ctx.elem(2), INF))
    for x0 in range(11):
        x = ctx.elem(x0)
        assert m(x) == ctx.add(x, ctx.one)
    assert m(INF) is INF


def test_mobius_from_triples_round_trip():
    ctx = FieldCtx(13)
    rng = random.Random(7)
    for _ in range(25):
        pts = []
        while len(pts) < 6:
            cand = rng.choice([INF] + [ctx.elem(i, j) for i in range(13) for j in range(2)])
            if cand not in pts:
                pts.append(cand)
        src, dst = tuple(pts[:3]), tuple(pts[3:])
        m = mobius_from_triples(ctx, src, dst)
        for s, d in zip(src, dst):
            assert m(s) == d or (d is INF and m(s) is INF)
        back = m.inverse()
        ident = back.compose(m)
        for x in [INF, ctx.zero, ctx.one, ctx.elem(5, 9)]:
            assert ident(x) == x or (x is INF and ident(x) is INF)


def test_mobius_from_triples_rejects_repeats():
    ctx = FieldCtx(11)
    with pytest.raises(ValueError):
        mobius_from_triples(ctx, (ctx.zero, ctx.zero, INF), (ctx.zero, ctx.one, INF))


def test_mobius_rejects_singular_matrix():
    ctx = FieldCtx(11)
    with pytest.raises(ValueError):
        MobiusMap(ctx, ctx.one, ctx.one, ctx.one, ctx.one)


def test_is_prime_small_table():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1)
    assert is_prime(10 ** 9 + 7)
