"""Genus-4 curves built from two genus-1 covers sharing one branch point.

Such a curve is determined, up to isomorphism, by a genus-2 curve C, an
unordered split of its six Weierstrass roots into two triples {W1, W2}, and a
seventh point b on the line distinct from the roots: the two covers branch at
W1 + {b} and W2 + {b}, and the induced Klein-four diagram desingularizes to a
curve of genus 4.  Two such triples give isomorphic genus-4 curves exactly
when a Mobius map carries roots to roots, split to split, and b to b.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional

from .arith import (
    INF,
    FieldCtx,
    FqElem,
    MobiusMap,
    ProjPoint,
    UniPoly,
    mobius_from_triples,
    poly_roots_in_fq,
    sort_key,
)
from .ellcurve import QuarticModel, SupersingularLambdaSet, quartic_is_supersingular
from .genus2 import Genus2Curve, is_superspecial

WeierstrassSplit = tuple  # pair of sorted root triples, lexicographically ordered


def normalize_split(w1, w2) -> WeierstrassSplit:
    """Canonical form of an unordered {triple, triple} split."""
    a = tuple(sorted(w1))
    b = tuple(sorted(w2))
    if len(a) != 3 or len(b) != 3:
        raise ValueError("a split consists of two triples")
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class HoweData:
    """A genus-4 curve presented as (genus-2 curve, root split, branch point b)."""

    curve: Genus2Curve
    split: WeierstrassSplit
    b: ProjPoint

    def __post_init__(self):
        w1, w2 = self.split
        if set(w1) | set(w2) != set(self.curve.roots) or set(w1) & set(w2):
            raise ValueError("split must partition the six Weierstrass roots")
        object.__setattr__(self, "split", normalize_split(w1, w2))
        if self.b is not INF and self.b in self.curve.roots:
            raise ValueError("branch point b collides with a Weierstrass root")

    def quartics(self) -> tuple:
        ctx = self.curve.ctx
        return (
            QuarticModel(ctx, self.b, self.split[0]),
            QuarticModel(ctx, self.b, self.split[1]),
        )

    def sort_value(self):
        return (self.curve.roots, self.split, sort_key(self.b))


def howe_from_cubics(ctx: FieldCtx, f1: UniPoly, f2: UniPoly) -> HoweData:
    """The curve with covers y^2 = f1 and y^2 = f2 joined at b = infinity.

    Both cubics must split over F_{p^2} with six distinct roots in total;
    a shared root would make the base curve singular.
    """
    if f1.degree != 3 or f2.degree != 3:
        raise ValueError("both factors must be cubic")
    r1 = poly_roots_in_fq(f1)
    r2 = poly_roots_in_fq(f2)
    if len(r1) != 3 or len(r2) != 3:
        raise ValueError("cubic factor has a repeated or irrational root")
    if set(r1) & set(r2):
        raise ValueError("the two cubics share a root")
    curve = Genus2Curve(ctx, tuple(r1 + r2))
    return HoweData(curve, normalize_split(r1, r2), INF)


def is_superspecial_howe(H: HoweData, lam_set: Optional[SupersingularLambdaSet] = None) -> bool:
    """Superspeciality of the genus-4 curve.

    Equivalent to: both genus-1 covers supersingular and the genus-2 quotient
    superspecial (the Jacobian splits accordingly up to isogeny of degree
    prime to p).
    """
    q1, q2 = H.quartics()
    if not quartic_is_supersingular(q1, lam_set):
        return False
    if not quartic_is_supersingular(q2, lam_set):
        return False
    return is_superspecial(H.curve)


def howe_isomorphic(H1: HoweData, H2: HoweData) -> Optional[MobiusMap]:
    """A Mobius map matching roots, split, and b between the two data sets.

    It suffices to send a fixed ordered triple of H1's first split part onto
    an ordered triple drawn from either part of H2's split (12 candidates),
    then check the full incidence.
    """
    ctx = H1.curve.ctx
    src = H1.split[0]
    sets2 = (set(H2.split[0]), set(H2.split[1]))
    for part in (0, 1):
        for dst in permutations(H2.split[part]):
            m = mobius_from_triples(ctx, src, dst)
            if not _same_point(m(H1.b), H2.b):
                continue
            img2 = set()
            ok = True
            for rt in H1.split[1]:
                q = m(rt)
                if q is INF or q not in sets2[1 - part]:
                    ok = False
                    break
                img2.add(q)
            if ok and img2 == sets2[1 - part]:
                return m
    return None


def _same_point(a: ProjPoint, b: ProjPoint) -> bool:
    if a is INF or b is INF:
        return a is b
    return a == b


@dataclass(frozen=True)
class CanonicalModel:
    """Genus-4 canonical image in P^3: a quadric and a cubic surface.

    The quadric is w^2 = q(x, y) with q a binary quadratic form, and the cubic
    is z^2 y = c(x, y) with c the homogenization of a cubic in x; here
    q * y equals the difference of the two homogenized cubics.
    """

    ctx: FieldCtx
    quadric: tuple  # (c2, c1, c0): q = c2 x^2 + c1 x y + c0 y^2
    cubic: tuple  # (1, e2, e1, e0): c = x^3 + e2 x^2 y + e1 x y^2 + e0 y^3


def quadric_from_cubics(ctx: FieldCtx, f1: UniPoly, f2: UniPoly) -> tuple:
    """Binary quadratic form q with q * y^1 = homog(f1) - homog(f2).

    Both inputs must be monic cubics, so the x^3 terms cancel.
    """
    if f1.degree != 3 or f2.degree != 3:
        raise ValueError("need two cubics")
    if f1.leading() != ctx.one or f2.leading() != ctx.one:
        raise ValueError("need monic cubics")
    d = f1 - f2
    return (d.coeff(2), d.coeff(1), d.coeff(0))


def canonical_model(H: HoweData) -> CanonicalModel:
    """Quadric-and-cubic presentation of the genus-4 curve.

    Normalizes b to infinity first (by x -> 1/(x - b), which refreshes the
    roots), then reads the two monic cubics off the split.
    """
    ctx = H.curve.ctx
    if H.b is INF:
        w1, w2 = H.split
    else:
        def move(rt):
            return ctx.inv(ctx.sub(rt, H.b))

        w1 = tuple(sorted(move(rt) for rt in H.split[0]))
        w2 = tuple(sorted(move(rt) for rt in H.split[1]))
    f1 = UniPoly.from_roots(ctx, w1)
    f2 = UniPoly.from_roots(ctx, w2)
    quad = quadric_from_cubics(ctx, f1, f2)
    cubic = (ctx.one, f1.coeff(2), f1.coeff(1), f1.coeff(0))
    return CanonicalModel(ctx, quad, cubic)


def special_family(ctx: FieldCtx, a: FqElem) -> HoweData:
    """The curve y^2 = (x^3 + 1)(x^3 + a), split by the cubics, b = infinity.

    Defined for p = 5 mod 6 and a in {-1, 1/4}, where it is always
    superspecial; both cubics split over F_{p^2} because cubing is a
    bijection on F_p and the cube roots of unity live in F_{p^2}.
    """
    if ctx.p % 6 != 5:
        raise ValueError("the special family needs p = 5 mod 6")
    allowed = (ctx.elem(-1), ctx.inv(ctx.elem(4)))
    if a not in allowed:
        raise ValueError("a must be -1 or 1/4")
    f1 = UniPoly.from_coeffs(ctx, [ctx.one, ctx.zero, ctx.zero, ctx.one])
    f2 = UniPoly.from_coeffs(ctx, [a, ctx.zero, ctx.zero, ctx.one])
    return howe_from_cubics(ctx, f1, f2)
