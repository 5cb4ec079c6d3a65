"""Arithmetic over F_{p^2} and dense univariate polynomials on top of it.

Elements of F_{p^2} = F_p[t]/(t^2 - r) are plain tuples (c0, c1) of ints in
[0, p), with r the smallest quadratic non-residue mod p.  Tuples keep elements
hashable and cheap to sort; all operations live on the FieldCtx.  Polynomials
hold their coefficients as a pair of int64 numpy arrays (one per component) so
that products run through exact integer convolution.
"""

from __future__ import annotations

import random
from typing import Iterator, Optional, Sequence

import numpy as np

FqElem = tuple  # (c0, c1) with 0 <= c0, c1 < p

# Exact int64 convolution needs max_len * 4p^2 * p to stay below 2^63; with
# intermediate lengths up to ~4p this holds comfortably for p <= 30000.
MAX_P = 30000


def _restore_inf():
    return INF


class _Infinity:
    """Unique marker for the point at infinity on the projective line.

    Identity comparisons (pt is INF) are used throughout, so unpickling must
    hand back the module singleton rather than a fresh instance.
    """

    __slots__ = ()

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return (_restore_inf, ())


INF = _Infinity()

ProjPoint = object  # FqElem or INF


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all 64-bit inputs."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldCtx:
    """Carrier for a prime p > 3 and the extension F_{p^2} = F_p(t), t^2 = r."""

    __slots__ = ("p", "r", "zero", "one", "_half", "_nonsquare", "_ts_params")

    def __init__(self, p: int):
        if not is_prime(p) or p <= 3:
            raise ValueError("p must be a prime greater than 3, got %r" % (p,))
        if p > MAX_P:
            raise ValueError("p=%d exceeds the exact-int64 polynomial limit %d" % (p, MAX_P))
        self.p = p
        self.r = _least_nonresidue(p)
        self.zero = (0, 0)
        self.one = (1, 0)
        self._half = pow(2, p - 2, p)
        self._nonsquare: Optional[FqElem] = None
        self._ts_params: Optional[tuple] = None

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("FieldCtx", self.p))

    def __repr__(self) -> str:
        return "FieldCtx(p=%d, t^2=%d)" % (self.p, self.r)

    # -- element construction ------------------------------------------------

    def elem(self, c0: int, c1: int = 0) -> FqElem:
        return (c0 % self.p, c1 % self.p)

    def elements(self) -> Iterator[FqElem]:
        """All of F_{p^2} in canonical (c0, c1) lexicographic order."""
        for c0 in range(self.p):
            for c1 in range(self.p):
                yield (c0, c1)

    # -- ring operations -----------------------------------------------------

    def add(self, x: FqElem, y: FqElem) -> FqElem:
        p = self.p
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p)

    def sub(self, x: FqElem, y: FqElem) -> FqElem:
        p = self.p
        return ((x[0] - y[0]) % p, (x[1] - y[1]) % p)

    def neg(self, x: FqElem) -> FqElem:
        p = self.p
        return (-x[0] % p, -x[1] % p)

    def mul(self, x: FqElem, y: FqElem) -> FqElem:
        p = self.p
        return (
            (x[0] * y[0] + self.r * x[1] * y[1]) % p,
            (x[0] * y[1] + x[1] * y[0]) % p,
        )

    def sqr(self, x: FqElem) -> FqElem:
        return self.mul(x, x)

    def conj(self, x: FqElem) -> FqElem:
        """Frobenius x -> x^p."""
        return (x[0], -x[1] % self.p)

    def norm(self, x: FqElem) -> int:
        """Norm to F_p: x * x^p = c0^2 - r*c1^2."""
        return (x[0] * x[0] - self.r * x[1] * x[1]) % self.p

    def inv(self, x: FqElem) -> FqElem:
        n = self.norm(x)
        if n == 0:
            raise ZeroDivisionError("inverse of zero in F_{p^2}")
        ninv = pow(n, self.p - 2, self.p)
        return (x[0] * ninv % self.p, -x[1] * ninv % self.p)

    def div(self, x: FqElem, y: FqElem) -> FqElem:
        return self.mul(x, self.inv(y))

    def pow(self, x: FqElem, e: int) -> FqElem:
        if e < 0:
            return self.pow(self.inv(x), -e)
        acc = self.one
        base = x
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    # -- quadratic structure ---------------------------------------------------

    def legendre_fp(self, a: int) -> int:
        """Legendre symbol of a mod p as -1, 0, 1."""
        a %= self.p
        if a == 0:
            return 0
        s = pow(a, (self.p - 1) // 2, self.p)
        return 1 if s == 1 else -1

    def sqrt_fp(self, a: int) -> Optional[int]:
        """Canonical square root in F_p (the smaller of the two), or None."""
        p = self.p
        a %= p
        if a == 0:
            return 0
        if self.legendre_fp(a) != 1:
            return None
        if p % 4 == 3:
            x = pow(a, (p + 1) // 4, p)
        else:
            x = self._tonelli_shanks(a)
        return min(x, p - x)

    def _tonelli_shanks(self, a: int) -> int:
        p = self.p
        if self._ts_params is None:
            q, s = p - 1, 0
            while q % 2 == 0:
                q //= 2
                s += 1
            # r is a non-residue, so it generates the 2-Sylow part
            z = pow(self.r, q, p)
            self._ts_params = (q, s, z)
        q, s, z = self._ts_params
        m = s
        c = z
        t = pow(a, q, p)
        x = pow(a, (q + 1) // 2, p)
        while t != 1:
            t2 = t
            i = 0
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m = i
            c = b * b % p
            t = t * c % p
            x = x * b % p
        return x

    def is_square(self, x: FqElem) -> bool:
        if x == self.zero:
            return True
        return self.legendre_fp(self.norm(x)) == 1

    def sqrt(self, x: FqElem) -> Optional[FqElem]:
        """Canonical square root in F_{p^2} (lexicographic min of the pair), or None."""
        p = self.p
        c0, c1 = x
        if c1 == 0:
            if c0 == 0:
                return (0, 0)
            s = self.sqrt_fp(c0)
            if s is not None:
                root = (s, 0)
            else:
                # c0 non-residue means c0/r is a residue; sqrt is purely imaginary
                v = self.sqrt_fp(c0 * pow(self.r, p - 2, p) % p)
                root = (0, v)
        else:
            # (a + bt)^2 = a^2 + r b^2 + 2ab t: a^2 is a root of
            # z^2 - c0 z + r c1^2/4, the other root being r b^2 (a non-square).
            s = self.sqrt_fp(self.norm(x))
            if s is None:
                return None
            root = None
            for cand in (s, (-s) % p):
                h = (c0 + cand) * self._half % p
                a = self.sqrt_fp(h)
                if a:
                    b = c1 * pow(2 * a, p - 2, p) % p
                    root = (a, b)
                    break
            if root is None:
                return None
        return min(root, (-root[0] % p, -root[1] % p))

    def nonsquare(self) -> FqElem:
        """First non-square of F_{p^2} in canonical order (cached)."""
        if self._nonsquare is None:
            for x in self.elements():
                if x != self.zero and not self.is_square(x):
                    self._nonsquare = x
                    break
        return self._nonsquare


def _least_nonresidue(p: int) -> int:
    for r in range(2, p):
        if pow(r, (p - 1) // 2, p) == p - 1:
            return r
    raise ValueError("no quadratic non-residue found; p=%d is not an odd prime" % p)


def fq_pow(ctx: FieldCtx, x: FqElem, e: int) -> FqElem:
    return ctx.pow(x, e)


def sort_key(pt: ProjPoint):
    """Total order on P^1(F_{p^2}): finite points lexicographically, INF last."""
    if pt is INF:
        return (1, 0, 0)
    return (0, pt[0], pt[1])


# ---------------------------------------------------------------------------
# dense univariate polynomials over F_{p^2}
# ---------------------------------------------------------------------------


def _trim(c0: np.ndarray, c1: np.ndarray) -> tuple:
    n = max(len(c0), len(c1))
    c0 = np.concatenate([c0, np.zeros(n - len(c0), dtype=np.int64)])
    c1 = np.concatenate([c1, np.zeros(n - len(c1), dtype=np.int64)])
    while n > 0 and c0[n - 1] == 0 and c1[n - 1] == 0:
        n -= 1
    return c0[:n], c1[:n]


class UniPoly:
    """Univariate polynomial over F_{p^2}, dense, ascending coefficients."""

    __slots__ = ("ctx", "c0", "c1")

    def __init__(self, ctx: FieldCtx, c0: np.ndarray, c1: np.ndarray):
        self.ctx = ctx
        self.c0, self.c1 = _trim(np.asarray(c0, dtype=np.int64) % ctx.p,
                                 np.asarray(c1, dtype=np.int64) % ctx.p)

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "UniPoly":
        return cls(ctx, np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64))

    @classmethod
    def from_coeffs(cls, ctx: FieldCtx, coeffs: Sequence[FqElem]) -> "UniPoly":
        c0 = np.array([c[0] for c in coeffs], dtype=np.int64)
        c1 = np.array([c[1] for c in coeffs], dtype=np.int64)
        return cls(ctx, c0, c1)

    @classmethod
    def from_int_coeffs(cls, ctx: FieldCtx, coeffs: Sequence[int]) -> "UniPoly":
        c0 = np.array(coeffs, dtype=np.int64)
        return cls(ctx, c0, np.zeros(len(coeffs), dtype=np.int64))

    @classmethod
    def x_power(cls, ctx: FieldCtx, k: int) -> "UniPoly":
        c0 = np.zeros(k + 1, dtype=np.int64)
        c0[k] = 1
        return cls(ctx, c0, np.zeros(k + 1, dtype=np.int64))

    @classmethod
    def from_roots(cls, ctx: FieldCtx, roots: Sequence[FqElem]) -> "UniPoly":
        out = cls.from_int_coeffs(ctx, [1])
        for rt in roots:
            out = out * cls.from_coeffs(ctx, [ctx.neg(rt), ctx.one])
        return out

    # -- basic queries ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.c0) - 1

    def is_zero(self) -> bool:
        return len(self.c0) == 0

    def coeff(self, i: int) -> FqElem:
        if i < 0 or i >= len(self.c0):
            return self.ctx.zero
        return (int(self.c0[i]), int(self.c1[i]))

    def coeffs(self) -> list:
        return [(int(a), int(b)) for a, b in zip(self.c0, self.c1)]

    def leading(self) -> FqElem:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return (int(self.c0[-1]), int(self.c1[-1]))

    def __eq__(self, other) -> bool:
        return (isinstance(other, UniPoly) and self.ctx == other.ctx
                and np.array_equal(self.c0, other.c0) and np.array_equal(self.c1, other.c1))

    def __repr__(self) -> str:
        return "UniPoly(p=%d, deg=%d)" % (self.ctx.p, self.degree)

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.c0), len(other.c0))
        a0 = np.zeros(n, dtype=np.int64)
        a1 = np.zeros(n, dtype=np.int64)
        a0[: len(self.c0)] += self.c0
        a1[: len(self.c1)] += self.c1
        a0[: len(other.c0)] += other.c0
        a1[: len(other.c1)] += other.c1
        return UniPoly(self.ctx, a0, a1)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.c0), len(other.c0))
        a0 = np.zeros(n, dtype=np.int64)
        a1 = np.zeros(n, dtype=np.int64)
        a0[: len(self.c0)] += self.c0
        a1[: len(self.c1)] += self.c1
        a0[: len(other.c0)] -= other.c0
        a1[: len(other.c1)] -= other.c1
        return UniPoly(self.ctx, a0, a1)

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.ctx, -self.c0, -self.c1)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.ctx)
        m0, m1 = _conv_fq(self.ctx, self.c0, self.c1, other.c0, other.c1)
        return UniPoly(self.ctx, m0, m1)

    def scale(self, s: FqElem) -> "UniPoly":
        p = self.ctx.p
        r = self.ctx.r
        a0 = (self.c0 * s[0] + self.c1 * (r * s[1])) % p
        a1 = (self.c0 * s[1] + self.c1 * s[0]) % p
        return UniPoly(self.ctx, a0, a1)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            raise ValueError("cannot normalize the zero polynomial")
        lead = self.leading()
        if lead == self.ctx.one:
            return self
        return self.scale(self.ctx.inv(lead))

    def shift(self, k: int) -> "UniPoly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        z = np.zeros(k, dtype=np.int64)
        return UniPoly(self.ctx, np.concatenate([z, self.c0]), np.concatenate([z, self.c1]))

    def truncate(self, degcap: int) -> "UniPoly":
        return UniPoly(self.ctx, self.c0[: degcap + 1], self.c1[: degcap + 1])

    def derivative(self) -> "UniPoly":
        if self.degree < 1:
            return UniPoly.zero(self.ctx)
        k = np.arange(1, len(self.c0), dtype=np.int64)
        return UniPoly(self.ctx, self.c0[1:] * k, self.c1[1:] * k)

    def __divmod__(self, other: "UniPoly") -> tuple:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        if self.degree < other.degree:
            return UniPoly.zero(ctx), self
        dmon = other.monic()
        lead_inv = ctx.inv(other.leading())
        q0, q1, r0, r1 = _divmod_monic(ctx, self.c0, self.c1, dmon.c0, dmon.c1)
        quo = UniPoly(ctx, q0, q1).scale(lead_inv)
        return quo, UniPoly(ctx, r0, r1)

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def pow_truncated(self, e: int, degcap: int) -> "UniPoly":
        """self^e with every intermediate truncated past degree degcap."""
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        acc = UniPoly.from_int_coeffs(self.ctx, [1])
        base = self.truncate(degcap)
        while e:
            if e & 1:
                acc = (acc * base).truncate(degcap)
            e >>= 1
            if e:
                base = (base * base).truncate(degcap)
        return acc

    def pow_mod(self, e: int, modulus: "UniPoly") -> "UniPoly":
        acc = UniPoly.from_int_coeffs(self.ctx, [1]) % modulus
        base = self % modulus
        while e:
            if e & 1:
                acc = (acc * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return acc

    def eval(self, x: FqElem) -> FqElem:
        ctx = self.ctx
        acc = ctx.zero
        for i in range(len(self.c0) - 1, -1, -1):
            acc = ctx.mul(acc, x)
            acc = ctx.add(acc, (int(self.c0[i]), int(self.c1[i])))
        return acc


def _conv_fq(ctx: FieldCtx, a0, a1, b0, b1) -> tuple:
    """One F_{p^2} polynomial product via three integer convolutions."""
    p = ctx.p
    m0 = np.convolve(a0, b0)
    m2 = np.convolve(a1, b1)
    m1 = np.convolve(a0 + a1, b0 + b1) - m0 - m2
    return (m0 + ctx.r * m2) % p, m1 % p


def _divmod_monic(ctx: FieldCtx, n0, n1, d0, d1) -> tuple:
    """Schoolbook division by a monic divisor; mod p deferred to the end."""
    p = ctx.p
    r = ctx.r
    rem0 = n0.copy()
    rem1 = n1.copy()
    dn = len(d0)
    qlen = len(n0) - dn + 1
    q0 = np.zeros(qlen, dtype=np.int64)
    q1 = np.zeros(qlen, dtype=np.int64)
    # divisor head excluded; values stay < p so the axpy accumulation fits int64
    h0 = d0[:-1] % p
    h1 = d1[:-1] % p
    for k in range(len(n0) - 1, dn - 2, -1):
        c0 = int(rem0[k]) % p
        c1 = int(rem1[k]) % p
        j = k - dn + 1
        q0[j] = c0
        q1[j] = c1
        if c0 or c1:
            rem0[j : k] -= c0 * h0 + (r * c1) * h1
            rem1[j : k] -= c0 * h1 + c1 * h0
            rem0[j : k] %= p
            rem1[j : k] %= p
        rem0[k] = 0
        rem1[k] = 0
    return q0, q1, rem0[: dn - 1] % p, rem1[: dn - 1] % p


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd by Euclid's algorithm; gcd(f, 0) = monic(f)."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_powmod_truncated(f: UniPoly, e: int, degcap: int) -> UniPoly:
    return f.pow_truncated(e, degcap)


def poly_roots_in_fq(f: UniPoly, rng: Optional[random.Random] = None) -> list:
    """Distinct roots of f in F_{p^2}, sorted canonically.

    Strips to the product of distinct linear factors with gcd(f, x^q - x),
    then splits by the usual randomized (x + delta)^((q-1)/2) probes; factors
    of degree <= 2 are finished with the explicit linear/quadratic formulas,
    so the returned set never depends on the random choices.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has every element as a root")
    ctx = f.ctx
    if f.degree == 0:
        return []
    if rng is None:
        rng = random.Random(0xC0FFEE)
    q = ctx.p * ctx.p
    x = UniPoly.x_power(ctx, 1)
    xq = x.pow_mod(q, f)
    lin = poly_gcd(xq - x, f)
    roots = []
    stack = [lin]
    while stack:
        g = stack.pop()
        if g.degree <= 0:
            continue
        if g.degree == 1:
            # x + c -> root -c (g monic)
            roots.append(ctx.neg(g.coeff(0)))
            continue
        if g.degree == 2:
            roots.extend(_quadratic_roots(ctx, g))
            continue
        while True:
            delta = (rng.randrange(ctx.p), rng.randrange(ctx.p))
            probe = UniPoly.from_coeffs(ctx, [delta, ctx.one])
            h = probe.pow_mod((q - 1) // 2, g) - UniPoly.from_int_coeffs(ctx, [1])
            d = poly_gcd(h, g) if not h.is_zero() else g
            if 0 < d.degree < g.degree:
                stack.append(d)
                stack.append(divmod(g, d)[0])
                break
    roots.sort()
    return roots


def _quadratic_roots(ctx: FieldCtx, g: UniPoly) -> list:
    """Roots of a monic quadratic known to split over F_{p^2}."""
    g = g.monic()
    b = g.coeff(1)
    c = g.coeff(0)
    disc = ctx.sub(ctx.sqr(b), ctx.mul((4, 0), c))
    s = ctx.sqrt(disc)
    if s is None:
        raise ArithmeticError("quadratic expected to split has non-square discriminant")
    half = (ctx._half, 0)
    r1 = ctx.mul(ctx.sub(s, b), half)
    r2 = ctx.mul(ctx.sub(ctx.neg(s), b), half)
    return [r1] if r1 == r2 else [r1, r2]


# ---------------------------------------------------------------------------
# the projective line: cross-ratios and Mobius transformations
# ---------------------------------------------------------------------------


def _proj(ctx: FieldCtx, pt: ProjPoint) -> tuple:
    if pt is INF:
        return (ctx.one, ctx.zero)
    return (pt, ctx.one)


class MobiusMap:
    """Invertible map x -> (a*x + b)/(c*x + d) on P^1(F_{p^2})."""

    __slots__ = ("ctx", "a", "b", "c", "d")

    def __init__(self, ctx: FieldCtx, a: FqElem, b: FqElem, c: FqElem, d: FqElem):
        det = ctx.sub(ctx.mul(a, d), ctx.mul(b, c))
        if det == ctx.zero:
            raise ValueError("singular matrix does not define a Mobius map")
        self.ctx = ctx
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "MobiusMap":
        return cls(ctx, ctx.one, ctx.zero, ctx.zero, ctx.one)

    def __call__(self, pt: ProjPoint) -> ProjPoint:
        ctx = self.ctx
        if pt is INF:
            num, den = self.a, self.c
        else:
            num = ctx.add(ctx.mul(self.a, pt), self.b)
            den = ctx.add(ctx.mul(self.c, pt), self.d)
        if den == ctx.zero:
            return INF
        return ctx.div(num, den)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """self after other."""
        ctx = self.ctx
        m = ctx.mul
        a = ctx.add(m(self.a, other.a), m(self.b, other.c))
        b = ctx.add(m(self.a, other.b), m(self.b, other.d))
        c = ctx.add(m(self.c, other.a), m(self.d, other.c))
        d = ctx.add(m(self.c, other.b), m(self.d, other.d))
        return MobiusMap(ctx, a, b, c, d)

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.ctx, self.d, self.ctx.neg(self.b), self.ctx.neg(self.c), self.a)

    def key(self) -> tuple:
        """Canonical projective normalization, usable as a dict key."""
        ctx = self.ctx
        for lead in (self.a, self.b, self.c, self.d):
            if lead != ctx.zero:
                s = ctx.inv(lead)
                return tuple(ctx.mul(s, v) for v in (self.a, self.b, self.c, self.d))
        raise AssertionError("zero matrix cannot occur")

    def __eq__(self, other) -> bool:
        return isinstance(other, MobiusMap) and self.ctx == other.ctx and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.ctx.p,) + self.key())

    def __repr__(self) -> str:
        return "MobiusMap(%r, %r, %r, %r)" % (self.a, self.b, self.c, self.d)


def cross_ratio(ctx: FieldCtx, q: ProjPoint, r: ProjPoint, s: ProjPoint, t: ProjPoint) -> FqElem:
    """Cross-ratio (q, r; s, t) of four distinct points of P^1(F_{p^2})."""
    pts = [q, r, s, t]
    for i in range(4):
        for j in range(i + 1, 4):
            if pts[i] is pts[j] or pts[i] == pts[j]:
                raise ValueError("cross-ratio requires four distinct points")
    pq, pr, ps, pt_ = (_proj(ctx, v) for v in pts)

    def bracket(u, v):
        return ctx.sub(ctx.mul(u[0], v[1]), ctx.mul(v[0], u[1]))

    num = ctx.mul(bracket(pq, ps), bracket(pr, pt_))
    den = ctx.mul(bracket(pr, ps), bracket(pq, pt_))
    return ctx.div(num, den)


def _to_zero_one_inf(ctx: FieldCtx, a: ProjPoint, b: ProjPoint, c: ProjPoint) -> MobiusMap:
    """The unique Mobius map with a -> 0, b -> 1, c -> INF."""
    if a is INF:
        d = ctx.sub(b, c)
        return MobiusMap(ctx, ctx.zero, d, ctx.one, ctx.neg(c))
    if b is INF:
        return MobiusMap(ctx, ctx.one, ctx.neg(a), ctx.one, ctx.neg(c))
    if c is INF:
        d = ctx.sub(b, a)
        return MobiusMap(ctx, ctx.one, ctx.neg(a), ctx.zero, d)
    u = ctx.sub(b, c)
    v = ctx.sub(b, a)
    return MobiusMap(ctx, u, ctx.neg(ctx.mul(a, u)), v, ctx.neg(ctx.mul(c, v)))


def mobius_from_triples(ctx: FieldCtx, src: Sequence[ProjPoint], dst: Sequence[ProjPoint]) -> MobiusMap:
    """The unique Mobius map sending the ordered triple src onto dst."""
    if len(src) != 3 or len(dst) != 3:
        raise ValueError("need ordered triples of three distinct points each")
    for tri in (src, dst):
        keys = {sort_key(x) for x in tri}
        if len(keys) != 3:
            raise ValueError("triple contains a repeated point")
    t_src = _to_zero_one_inf(ctx, *src)
    t_dst = _to_zero_one_inf(ctx, *dst)
    return t_dst.inverse().compose(t_src)
