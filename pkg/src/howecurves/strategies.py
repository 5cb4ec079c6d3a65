"""The two enumeration engines for superspecial Howe curves.

Strategy "a" walks pairs of supersingular elliptic curves.  The branch data
of the fiber product is pinned down by two field parameters: a scale mu
applied to the first cubic and a translation lam applied to the second, the
third projective parameter being normalized to 1.  For each mu the four
Cartier-Manin entries of y^2 = f1*f2 become polynomials in lam, and their
gcd hands over exactly the superspecial fibers.

Strategy "b" walks the complete list of superspecial genus-2 curves instead,
and for each one looks for a fourth branch point b that makes both cubic
halves of a Weierstrass-point split supersingular.  Candidate b values come
from pulling the supersingular lambda line back through the cross-ratio map,
so each split costs O(p) instead of a p^2 scan.

Both engines return the same report shape and must agree; the second is far
faster and is the one behind the table and CLI defaults.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .arith import (
    INF,
    FieldCtx,
    FqElem,
    ProjPoint,
    UniPoly,
    cross_ratio,
    poly_gcd,
    poly_roots_in_fq,
    sort_key,
)
from .ellcurve import (
    EllipticCurve,
    SupersingularLambdaSet,
    enumerate_supersingular_classes,
    supersingular_lambda_set,
    two_torsion_roots,
)
from .genus2 import (
    Genus2Curve,
    SuperspecialList,
    automorphisms,
    closure_stream,
    igusa_key,
    superspecial_genus2_list,
)
from .howe import (
    HoweData,
    howe_isomorphic,
    is_superspecial_howe,
    normalize_split,
    special_family,
)

DEFAULT_SEED = 0xC0FFEE


class VerificationError(Exception):
    """An enumerated representative failed its independent re-check."""


@dataclass
class EnumReport:
    """Outcome of one enumeration run."""

    p: int
    strategy: str
    count: int
    ratio: float                      # count / (p^3 / 1152)
    raw_count: int                    # candidate hits before isomorphism dedup
    genus2_classes: Optional[int]     # size of the superspecial list (strategy b)
    seed: int
    elapsed: float
    representatives: List[HoweData] = field(default_factory=list)

    def to_jsonable(self, with_representatives: bool = True) -> dict:
        # elapsed is deliberately not serialized: reports with equal inputs
        # must serialize byte-identically across runs
        doc = {
            "p": self.p,
            "strategy": self.strategy,
            "count": self.count,
            "ratio": round(self.ratio, 6),
            "raw_count": self.raw_count,
            "genus2_classes": self.genus2_classes,
            "seed": self.seed,
        }
        if with_representatives:
            doc["representatives"] = [howe_jsonable(H) for H in self.representatives]
        return doc


def _point_jsonable(pt: ProjPoint):
    return "inf" if pt is INF else [pt[0], pt[1]]


def howe_jsonable(H: HoweData) -> dict:
    # split parts are encoded as index triples into the sorted root list
    roots = list(H.curve.roots)
    return {
        "roots": [[rt[0], rt[1]] for rt in roots],
        "split": [sorted(roots.index(rt) for rt in part) for part in H.split],
        "b": _point_jsonable(H.b),
    }


def _ratio(p: int, count: int) -> float:
    return float(Fraction(1152 * count, p ** 3))


# ---------------------------------------------------------------------------
# strategy (a): elliptic pair scan
# ---------------------------------------------------------------------------


def _binomials_mod_p(p: int):
    """C(s, t) mod p for 0 <= t <= s < 2p, as a closure over factorial tables."""
    fact = [1] * p
    for i in range(1, p):
        fact[i] = fact[i - 1] * i % p
    inv_fact = [1] * p
    inv_fact[p - 1] = pow(fact[p - 1], p - 2, p)
    for i in range(p - 1, 0, -1):
        inv_fact[i - 1] = inv_fact[i] * i % p

    def binom(s: int, t: int) -> int:
        if t < 0 or t > s:
            return 0
        s1, s0 = divmod(s, p)
        t1, t0 = divmod(t, p)
        if t1 > s1 or t0 > s0:  # Lucas: a borrow in base p kills the binomial
            return 0
        return fact[s0] * inv_fact[t0] % p * inv_fact[s0 - t0] % p

    return binom


def _shifted_power_rows(ctx: FieldCtx, E: EllipticCurve) -> list:
    """Coefficient rows of g(x - lam)^m in lam, for g = x^3 + Ax + B.

    Row j holds the x^j coefficient of g(x-lam)^m as a polynomial in lam:
    sum_k c_{j+k} * C(j+k, j) * (-1)^k * lam^k, with c the coefficients of
    g^m.  Rows are (c0, c1) int64 array pairs ready for accumulation.
    """
    p = ctx.p
    m = (p - 1) // 2
    g = UniPoly.from_coeffs(ctx, [E.B, E.A, ctx.zero, ctx.one])
    gm = g.pow_truncated(m, 3 * m)
    c0 = np.zeros(3 * m + 1, dtype=np.int64)
    c1 = np.zeros(3 * m + 1, dtype=np.int64)
    c0[: gm.c0.size] = gm.c0
    c1[: gm.c1.size] = gm.c1
    binom = _binomials_mod_p(p)
    rows = []
    for j in range(3 * m + 1):
        length = 3 * m - j + 1
        signs = np.ones(length, dtype=np.int64)
        signs[1::2] = p - 1
        b = np.fromiter((binom(j + k, j) for k in range(length)), dtype=np.int64,
                        count=length)
        w = signs * b % p
        rows.append((c0[j:] * w % p, c1[j:] * w % p))
    return rows


class _PairEntryKernel:
    """Shared tables behind the four entry polynomials of one curve pair.

    The shifted-power rows of the second cubic and the power of the first are
    built once, so the per-mu entry assembly inside the full scan stays cheap.
    """

    def __init__(self, ctx: FieldCtx, E1: EllipticCurve, E2: EllipticCurve):
        self.ctx = ctx
        p = ctx.p
        self.m = (p - 1) // 2
        self.targets = (p - 1, 2 * p - 1, p - 2, 2 * p - 2)
        self.rows = _shifted_power_rows(ctx, E2)
        h = UniPoly.from_coeffs(ctx, [E1.B, E1.A, ctx.zero, ctx.one])
        hm = h.pow_truncated(self.m, 3 * self.m)
        self.h0 = np.zeros(3 * self.m + 1, dtype=np.int64)
        self.h1 = np.zeros(3 * self.m + 1, dtype=np.int64)
        self.h0[: hm.c0.size] = hm.c0
        self.h1[: hm.c1.size] = hm.c1

    def entries(self, mu: FqElem) -> list:
        ctx = self.ctx
        p = ctx.p
        r = ctx.r
        m = self.m
        mu_pow = [ctx.one]
        for _ in range(3 * m):
            mu_pow.append(ctx.mul(mu_pow[-1], mu))
        out = []
        for j in self.targets:
            acc0 = np.zeros(3 * m + 1, dtype=np.int64)
            acc1 = np.zeros(3 * m + 1, dtype=np.int64)
            for i in range(max(0, j - 3 * m), min(3 * m, j) + 1):
                # x^i coefficient of f1^m is hm[i] * mu^(3m - i)
                w = mu_pow[3 * m - i]
                s0 = (self.h0[i] * w[0] + r * self.h1[i] * w[1]) % p
                s1 = (self.h0[i] * w[1] + self.h1[i] * w[0]) % p
                if s0 == 0 and s1 == 0:
                    continue
                a0, a1 = self.rows[j - i]
                n = a0.size
                acc0[:n] += (s0 * a0 + r * s1 * a1) % p
                acc1[:n] += (s0 * a1 + s1 * a0) % p
            out.append(UniPoly(ctx, acc0 % p, acc1 % p))
        return out


def cm_entry_polynomials(ctx: FieldCtx, E1: EllipticCurve, E2: EllipticCurve,
                         mu: FqElem) -> list:
    """The four superspeciality entries of y^2 = f1*f2, as polynomials in lam.

    f1 = x^3 + A1 mu^2 x + B1 mu^3 and f2 = (x-lam)^3 + A2 (x-lam) + B2.
    Specializing the four at lam = lam0 (any value keeping the sextic
    squarefree) reproduces the Cartier-Manin entries of that curve, and each
    polynomial has degree at most 3(p-1)/2.
    """
    if mu == ctx.zero:
        raise ValueError("the scale mu must be nonzero")
    return _PairEntryKernel(ctx, E1, E2).entries(mu)


def howe_type_points(ctx: FieldCtx, E1: EllipticCurve, E2: EllipticCurve
                     ) -> Iterator[Tuple[FqElem, FqElem]]:
    """All (lam, mu) in F_{p^2} x F_{p^2}* making y^2 = f1*f2 superspecial.

    For fixed mu the four Cartier-Manin entries of the sextic are polynomials
    in lam; their gcd is computed with an early exit once it collapses to a
    unit, and its rational roots are the hits.  The third projective
    parameter of the branch data is normalized to 1 throughout.
    """
    kernel = _PairEntryKernel(ctx, E1, E2)
    for mu in ctx.elements():
        if mu == ctx.zero:
            continue
        g = None
        for e in kernel.entries(mu):
            if e.is_zero():
                continue
            g = e if g is None else poly_gcd(g, e)
            if g.degree == 0:
                break
        if g is None:
            raise ArithmeticError("all four entry polynomials vanished identically")
        if g.degree == 0:
            continue
        for lam in poly_roots_in_fq(g):
            yield lam, mu


def _howe_from_pair_hit(ctx: FieldCtx, rho1: tuple, rho2: tuple,
                        lam: FqElem, mu: FqElem) -> HoweData:
    w1 = tuple(ctx.mul(mu, t) for t in rho1)
    w2 = tuple(ctx.add(lam, t) for t in rho2)
    if set(w1) & set(w2):
        raise ArithmeticError("cubic halves share a root at a claimed hit")
    C = Genus2Curve(ctx, w1 + w2)
    return HoweData(C, normalize_split(w1, w2), INF)


def enumerate_a(ctx: FieldCtx, seed: int = DEFAULT_SEED, verify: bool = False,
                workers: int = 1) -> EnumReport:
    """Enumerate superspecial Howe curves by scanning elliptic pairs."""
    t0 = time.time()
    classes = enumerate_supersingular_classes(ctx)
    torsion = [two_torsion_roots(E) for E in classes]
    pairs = [(i, j) for i in range(len(classes)) for j in range(i, len(classes))]
    raw = 0
    buckets = {}
    reps: List[HoweData] = []
    if workers > 1:
        hit_lists = _pool_map_a(ctx.p, pairs, workers)
    else:
        hit_lists = ([(lam, mu) for lam, mu in howe_type_points(ctx, classes[i], classes[j])]
                     for i, j in pairs)
    for (i, j), hits in zip(pairs, hit_lists):
        for lam, mu in hits:
            raw += 1
            H = _howe_from_pair_hit(ctx, torsion[i], torsion[j], lam, mu)
            key = igusa_key(ctx, H.curve.roots)
            bucket = buckets.setdefault(key, [])
            if any(howe_isomorphic(H, seen) is not None for seen in bucket):
                continue
            bucket.append(H)
            reps.append(H)
    reps.sort(key=lambda H: H.sort_value())
    if verify:
        _verify_representatives(ctx, reps)
    return EnumReport(ctx.p, "a", len(reps), _ratio(ctx.p, len(reps)), raw,
                      None, seed, time.time() - t0, reps)


def enumerate_a_bruteforce(ctx: FieldCtx) -> EnumReport:
    """Reference scan of the whole (lam, mu) plane; small p only.

    Tests the superspeciality of every fiber directly instead of factoring
    entry gcds, so it shares no search logic with enumerate_a.
    """
    t0 = time.time()
    classes = enumerate_supersingular_classes(ctx)
    torsion = [two_torsion_roots(E) for E in classes]
    raw = 0
    buckets = {}
    reps: List[HoweData] = []
    for i in range(len(classes)):
        for j in range(i, len(classes)):
            for mu in ctx.elements():
                if mu == ctx.zero:
                    continue
                for lam in ctx.elements():
                    w1 = tuple(ctx.mul(mu, t) for t in torsion[i])
                    w2 = tuple(ctx.add(lam, t) for t in torsion[j])
                    if set(w1) & set(w2):
                        continue
                    H = HoweData(Genus2Curve(ctx, w1 + w2),
                                 normalize_split(w1, w2), INF)
                    if not is_superspecial_howe(H):
                        continue
                    raw += 1
                    key = igusa_key(ctx, H.curve.roots)
                    bucket = buckets.setdefault(key, [])
                    if any(howe_isomorphic(H, seen) is not None for seen in bucket):
                        continue
                    bucket.append(H)
                    reps.append(H)
    reps.sort(key=lambda H: H.sort_value())
    return EnumReport(ctx.p, "a-brute", len(reps), _ratio(ctx.p, len(reps)), raw,
                      None, DEFAULT_SEED, time.time() - t0, reps)


# ---------------------------------------------------------------------------
# strategy (b): genus-2 first
# ---------------------------------------------------------------------------


def _candidate_b_values(ctx: FieldCtx, lset: SupersingularLambdaSet,
                        triple: tuple) -> list:
    """All b making y^2 = (x-b)(x-t1)(x-t2)(x-t3) supersingular, INF included.

    The quartic's Legendre invariant is a Mobius function of b, so the good
    values are the preimages of the supersingular lambda line.  Which of the
    six cross-ratio orderings is used does not matter: the lambda line is
    stable under all of them.
    """
    t1, t2, t3 = triple
    out = []
    if cross_ratio(ctx, INF, t1, t2, t3) in lset:
        out.append(INF)
    # cr(b, t1, t2, t3) = ((b-t1)/(b-t2)) * k with k = (t3-t2)/(t3-t1);
    # solving cr = lam0 gives b = (t1 - w*t2)/(1 - w) for w = lam0/k
    k = ctx.div(ctx.sub(t3, t2), ctx.sub(t3, t1))
    for lam0 in lset.values:
        w = ctx.div(lam0, k)
        if w == ctx.one:  # that preimage is b = INF, handled above
            continue
        out.append(ctx.div(ctx.sub(t1, ctx.mul(w, t2)), ctx.sub(ctx.one, w)))
    return out


def supersingular_b_values(ctx: FieldCtx, lset: SupersingularLambdaSet,
                           split: tuple) -> list:
    """The b making both halves y^2 = (x-b)(x-t_i1)(x-t_i2)(x-t_i3) supersingular.

    Candidates come from the first 3-set of the split alone; survivors avoid
    all six branch points and pass the cross-ratio membership test for the
    second 3-set.  Sorted by the projective sort key, INF last.
    """
    T1, T2 = split
    taken = set(T1) | set(T2)
    out = []
    for b in sorted(set(_candidate_b_values(ctx, lset, T1)), key=sort_key):
        if b in taken:
            continue
        if cross_ratio(ctx, b, T2[0], T2[1], T2[2]) not in lset:
            continue
        out.append(b)
    return out


def iter_howe_fits(ctx: FieldCtx, lset: SupersingularLambdaSet,
                   C: Genus2Curve) -> Iterator[Tuple[tuple, tuple, ProjPoint]]:
    """(T1, T2, b) with both quartic halves supersingular, raw (no dedup)."""
    roots = C.roots
    for T1 in itertools.combinations(roots, 3):
        T2 = tuple(rt for rt in roots if rt not in T1)
        for b in supersingular_b_values(ctx, lset, (T1, T2)):
            yield T1, T2, b


def _fit_orbits(ctx: FieldCtx, lset: SupersingularLambdaSet,
                C: Genus2Curve) -> Tuple[int, list]:
    """Representatives of (split, b) fits modulo the reduced automorphisms."""
    auts = automorphisms(C)
    seen = set()
    reps = []
    raw = 0
    for T1, T2, b in iter_howe_fits(ctx, lset, C):
        raw += 1
        key = (normalize_split(T1, T2), sort_key(b))
        if key in seen:
            continue
        for g in auts:
            gsplit = normalize_split([g(t) for t in T1], [g(t) for t in T2])
            seen.add((gsplit, sort_key(g(b))))
        reps.append((normalize_split(T1, T2), b))
    return raw, reps


def enumerate_b(ctx: FieldCtx, seed: int = DEFAULT_SEED, verify: bool = False,
                workers: int = 1, genus2: Optional[SuperspecialList] = None
                ) -> EnumReport:
    """Enumerate superspecial Howe curves from the superspecial genus-2 list.

    Distinct list entries can never carry isomorphic Howe data (the genus-2
    quotient is an isomorphism invariant), so deduplication is local to each
    curve: one orbit of (split, b) under its reduced automorphisms per Howe
    curve.
    """
    t0 = time.time()
    L = genus2 if genus2 is not None else superspecial_genus2_list(ctx)
    lset = supersingular_lambda_set(ctx)
    raw = 0
    reps: List[HoweData] = []
    if workers > 1:
        results = _pool_map_b(ctx.p, [C.roots for C in L.curves], workers)
        for C, (raw_c, fits) in zip(L.curves, results):
            raw += raw_c
            for split, b in fits:
                reps.append(HoweData(C, split, b))
    else:
        for C in L.curves:
            raw_c, fits = _fit_orbits(ctx, lset, C)
            raw += raw_c
            for split, b in fits:
                reps.append(HoweData(C, split, b))
    reps.sort(key=lambda H: H.sort_value())
    if verify:
        _verify_representatives(ctx, reps)
    return EnumReport(ctx.p, "b", len(reps), _ratio(ctx.p, len(reps)), raw,
                      len(L), seed, time.time() - t0, reps)


def find_one(ctx: FieldCtx, seed: int = DEFAULT_SEED) -> Optional[HoweData]:
    """One superspecial Howe curve in characteristic p, or None.

    For p = 5 mod 6 the cubic-split family member with a = -1 is returned
    directly.  Otherwise superspecial genus-2 curves are generated lazily and
    the first one admitting a supersingular split wins; exhausting the stream
    without a fit proves nonexistence (that settles p = 7).
    """
    p = ctx.p
    if p % 6 == 5:
        H = special_family(ctx, ctx.elem(-1))
        if not is_superspecial_howe(H):
            raise ArithmeticError("split-cubic family fails at p=%d" % p)
        return H
    lset = supersingular_lambda_set(ctx)
    for C in closure_stream(ctx):
        for T1, T2, b in iter_howe_fits(ctx, lset, C):
            return HoweData(C, normalize_split(T1, T2), b)
    return None


def match_representatives(reps1: List[HoweData], reps2: List[HoweData]
                          ) -> Optional[list]:
    """Pair the two representative lists class by class, or None if impossible.

    Matching is by Howe-curve isomorphism, with the quotient's invariant key
    cutting the candidate set first.  The return value maps each entry of the
    first list to the index of its partner in the second.
    """
    if len(reps1) != len(reps2):
        return None
    if not reps1:
        return []
    ctx = reps1[0].curve.ctx
    buckets = {}
    for idx, K in enumerate(reps2):
        buckets.setdefault(igusa_key(ctx, K.curve.roots), []).append(idx)
    used = set()
    pairing = []
    for H in reps1:
        found = None
        for idx in buckets.get(igusa_key(ctx, H.curve.roots), ()):
            if idx in used:
                continue
            if howe_isomorphic(H, reps2[idx]) is not None:
                found = idx
                break
        if found is None:
            return None
        used.add(found)
        pairing.append(found)
    return pairing


def _verify_representatives(ctx: FieldCtx, reps: List[HoweData]) -> None:
    """Independent re-check: superspeciality of every representative.

    Uses the direct criterion (quartic Legendre invariants through the Hasse
    polynomial, Cartier-Manin entries of the sextic), not the search path
    that produced the representative.
    """
    for H in reps:
        if not is_superspecial_howe(H):
            raise VerificationError(
                "representative %r at p=%d fails the superspeciality re-check"
                % (howe_jsonable(H), ctx.p))


# ---------------------------------------------------------------------------
# worker pools
# ---------------------------------------------------------------------------

_POOL_CTX: Optional[FieldCtx] = None
_POOL_LSET: Optional[SupersingularLambdaSet] = None
_POOL_CLASSES: Optional[list] = None


def _pool_init(p: int, want_classes: bool) -> None:
    global _POOL_CTX, _POOL_LSET, _POOL_CLASSES
    _POOL_CTX = FieldCtx(p)
    _POOL_LSET = supersingular_lambda_set(_POOL_CTX)
    _POOL_CLASSES = enumerate_supersingular_classes(_POOL_CTX) if want_classes else None


def _pool_task_a(pair: tuple) -> list:
    i, j = pair
    return list(howe_type_points(_POOL_CTX, _POOL_CLASSES[i], _POOL_CLASSES[j]))


def _pool_task_b(roots: tuple) -> tuple:
    C = Genus2Curve(_POOL_CTX, roots)
    return _fit_orbits(_POOL_CTX, _POOL_LSET, C)


def _pool_map_a(p: int, pairs: list, workers: int) -> list:
    with ProcessPoolExecutor(max_workers=workers, initializer=_pool_init,
                             initargs=(p, True)) as ex:
        return list(ex.map(_pool_task_a, pairs))


def _pool_map_b(p: int, root_tuples: list, workers: int) -> list:
    chunk = max(1, len(root_tuples) // (8 * workers))
    with ProcessPoolExecutor(max_workers=workers, initializer=_pool_init,
                             initargs=(p, False)) as ex:
        return list(ex.map(_pool_task_b, root_tuples, chunksize=chunk))
