"""Superspecial Howe curves of genus 4 in odd characteristic.

A Howe curve is the desingularized fiber product of two genus-1 double
covers of the projective line whose branch loci share exactly one point.
This package decides superspeciality of such curves, enumerates all of them
up to isomorphism over the algebraic closure of F_p by two independent
strategies (an elliptic-pair scan and a genus-2-first search through the
Richelot isogeny graph), and exposes the machinery those strategies stand
on: F_{p^2} arithmetic, supersingular elliptic curves, and superspecial
genus-2 curves.
"""

from .arith import (
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
from .ellcurve import (
    EllipticCurve,
    QuarticModel,
    SupersingularLambdaSet,
    enumerate_supersingular_classes,
    is_supersingular,
    j_invariant,
    lambda_of_quartic,
    quartic_is_supersingular,
    supersingular_lambda_set,
    two_torsion_roots,
)
from .genus2 import (
    CartierManinEntries,
    Genus2Curve,
    RationalityError,
    SuperspecialList,
    automorphisms,
    cartier_manin,
    closure_stream,
    glue_elliptic_pair,
    igusa_clebsch,
    igusa_key,
    iko_window,
    is_superspecial,
    isomorphic,
    load_list,
    quadratic_splittings,
    richelot_codomains,
    save_list,
    splitting_delta,
    superspecial_genus2_list,
)
from .howe import (
    CanonicalModel,
    HoweData,
    canonical_model,
    howe_from_cubics,
    howe_isomorphic,
    is_superspecial_howe,
    normalize_split,
    quadric_from_cubics,
    special_family,
)
from .strategies import (
    DEFAULT_SEED,
    EnumReport,
    VerificationError,
    cm_entry_polynomials,
    enumerate_a,
    enumerate_a_bruteforce,
    enumerate_b,
    find_one,
    howe_jsonable,
    howe_type_points,
    iter_howe_fits,
    match_representatives,
    supersingular_b_values,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "FieldCtx",
    "MobiusMap",
    "UniPoly",
    "cross_ratio",
    "fq_pow",
    "is_prime",
    "mobius_from_triples",
    "poly_gcd",
    "poly_powmod_truncated",
    "poly_roots_in_fq",
    "sort_key",
    "EllipticCurve",
    "QuarticModel",
    "SupersingularLambdaSet",
    "enumerate_supersingular_classes",
    "is_supersingular",
    "j_invariant",
    "lambda_of_quartic",
    "quartic_is_supersingular",
    "supersingular_lambda_set",
    "two_torsion_roots",
    "CartierManinEntries",
    "Genus2Curve",
    "RationalityError",
    "SuperspecialList",
    "automorphisms",
    "cartier_manin",
    "closure_stream",
    "glue_elliptic_pair",
    "igusa_clebsch",
    "igusa_key",
    "iko_window",
    "is_superspecial",
    "isomorphic",
    "load_list",
    "quadratic_splittings",
    "richelot_codomains",
    "save_list",
    "splitting_delta",
    "superspecial_genus2_list",
    "CanonicalModel",
    "HoweData",
    "canonical_model",
    "howe_from_cubics",
    "howe_isomorphic",
    "is_superspecial_howe",
    "normalize_split",
    "quadric_from_cubics",
    "special_family",
    "DEFAULT_SEED",
    "EnumReport",
    "VerificationError",
    "cm_entry_polynomials",
    "enumerate_a",
    "enumerate_a_bruteforce",
    "enumerate_b",
    "find_one",
    "howe_jsonable",
    "howe_type_points",
    "iter_howe_fits",
    "match_representatives",
    "supersingular_b_values",
    "__version__",
]
