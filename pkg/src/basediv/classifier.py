"""Base-divisor classification for big-and-nef classes.

A big-and-nef class H carries a base divisor exactly when it decomposes as
H = m*L + F with m >= 2, L a primitive isotropic movable class, F a declared
prime-exceptional class with (L, F) > 0, and chi = RR(q(H)) equal to the
binomial C(m+n, n).  Because the RR polynomial is certified strictly
monotonic, chi pins m uniquely (by inverting the binomial) before any
search happens; what remains is a linear scan over the declared peds, with
L = (H - F)/m checked for integrality, primitivity, isotropy and membership
in the declared birational-Kaehler closure (movability).

The classifier refuses to run unless the context certifies its hypotheses:
``strong_rlf`` must be declared and the RR polynomial must be strictly
monotonic up to q(H).  At most one decomposition can exist for genuine
geometric data; if the declared data admits two, that inconsistency is
reported loudly rather than silently picking one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .cones import GeometricContext, in_bk_closure
from .errors import ConsistencyError, DomainError, HypothesisError
from .lattice import (
    Vec,
    divisibility,
    is_primitive,
    pairing,
    square,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
)
from .riemann_roch import (
    DeformationType,
    check_strict_monotonic,
    invert_binomial,
    rr_eval,
)


@dataclass(frozen=True)
class Decomposition:
    """The certificate H = m*L + F for a classified base divisor.

    d = (L, F) > 0; for even lattices the divisibility chain forces
    -q(F) <= 2*div(F) <= 2*d.
    """

    m: int
    L: Vec
    F: Vec
    d: int

    def to_json_dict(self) -> dict:
        return {"m": self.m, "L": list(self.L), "F": list(self.F), "d": self.d}


@dataclass(frozen=True)
class NumericalNLType:
    """Numerical invariants (m, d, q(F)) of a potential base-divisor locus."""

    m: int
    d: int
    qF: int

    def to_json_dict(self) -> dict:
        return {"m": self.m, "d": self.d, "q_F": self.qF}


def _require_big_nef(ctx: GeometricContext, h_vec: Vec) -> tuple[int, int]:
    """Check q(H) > 0, (H, ample) > 0 and (H, D) >= 0 against declared data."""
    lat = ctx.lat
    q_h = square(lat, h_vec)
    if q_h <= 0:
        raise DomainError(f"H is not big: q(H) = {q_h} must be positive")
    p_h = pairing(lat, h_vec, ctx.ample)
    if p_h <= 0:
        raise DomainError(f"(H, ample) = {p_h} must be positive")
    for d in ctx.peds + ctx.walls:
        p = pairing(lat, h_vec, d)
        if p < 0:
            raise DomainError(
                f"H is not nef against the declared classes: (H, {list(d)}) = {p} < 0"
            )
    return q_h, p_h


def classify(ctx: GeometricContext, H: Iterable[int]) -> Decomposition | None:
    """Decide whether the big-and-nef class H carries a base divisor.

    Returns the unique Decomposition, or None when H is base-divisor free
    relative to the declared context data.
    """
    if ctx.dtype is None:
        raise HypothesisError("context declares no deformation type; RR data is required")
    if not ctx.strong_rlf:
        raise HypothesisError(
            "context does not certify the Lagrangian-fibration hypothesis (strong_rlf);"
            " refusing to classify rather than guess"
        )
    lat = ctx.lat
    h_vec = lat.vector(H)
    q_h, _ = _require_big_nef(ctx, h_vec)
    if not check_strict_monotonic(ctx.dtype, q_h):
        raise HypothesisError(
            f"RR polynomial of {ctx.dtype!r} is not strictly monotonic up to q(H) = {q_h};"
            " refusing to classify"
        )
    n = ctx.dtype.n
    chi = rr_eval(ctx.dtype, q_h)
    if chi < 1:
        return None
    m = invert_binomial(chi, n)
    if m is None or m < 2:
        return None
    matches: list[Decomposition] = []
    for f_vec in ctx.peds:
        diff = vec_sub(h_vec, f_vec)
        if vec_is_zero(diff) or any(c % m != 0 for c in diff):
            continue
        l_vec = tuple(c // m for c in diff)
        if square(lat, l_vec) != 0:
            continue
        if not is_primitive(lat, l_vec):
            continue
        d = pairing(lat, l_vec, f_vec)
        if d <= 0:
            continue
        if not in_bk_closure(ctx, l_vec):
            continue
        dec = Decomposition(m=m, L=l_vec, F=f_vec, d=d)
        if dec not in matches:
            matches.append(dec)
    if len(matches) > 1:
        raise ConsistencyError(
            f"declared context admits {len(matches)} distinct decompositions of"
            f" {list(h_vec)}; the fixed divisor must be unique, so the declared"
            " ped data is inconsistent"
        )
    return matches[0] if matches else None


def verify_decomposition(ctx: GeometricContext, H: Iterable[int], dec: Decomposition) -> bool:
    """Re-validate every decomposition invariant from scratch.

    Deliberately reuses nothing from classify: each stated condition is
    re-derived directly.
    """
    if ctx.dtype is None:
        return False
    lat = ctx.lat
    try:
        h_vec = lat.vector(H)
        l_vec = lat.vector(dec.L)
        f_vec = lat.vector(dec.F)
    except Exception:
        return False
    if dec.m < 2:
        return False
    if h_vec != vec_add(vec_scale(dec.m, l_vec), f_vec):
        return False
    if vec_is_zero(l_vec) or square(lat, l_vec) != 0 or not is_primitive(lat, l_vec):
        return False
    if f_vec not in ctx.peds:
        return False
    q_f = square(lat, f_vec)
    if q_f >= 0:
        return False
    if dec.d != pairing(lat, l_vec, f_vec) or dec.d <= 0:
        return False
    two_div = 2 * divisibility(lat, f_vec)
    if not (-q_f <= two_div <= 2 * dec.d):
        return False
    q_h = square(lat, h_vec)
    try:
        chi = rr_eval(ctx.dtype, q_h)
    except Exception:
        return False
    if chi != math.comb(dec.m + ctx.dtype.n, ctx.dtype.n):
        return False
    if not in_bk_closure(ctx, l_vec):
        return False
    return True


def check_2H(ctx: GeometricContext, H: Iterable[int]) -> bool:
    """For a classified H, confirm that 2H carries no base divisor.

    Always true for consistent data; a False return certifies that the
    declared context contradicts the doubling property.
    """
    h_vec = ctx.lat.vector(H)
    if classify(ctx, h_vec) is None:
        raise DomainError("check_2H applies to classes that do carry a base divisor")
    return classify(ctx, vec_scale(2, h_vec)) is None


# ---------------------------------------------------------------------------
# Kum^n non-existence

def kumn_case1_solutions(n: int, m_max: int) -> list[int]:
    """All m in [1, m_max] with (n+1) * C(m-1+n, n) == C(m+n, n).

    Cross-multiplying reduces the identity to n*(m-1) == 0, so the unique
    solution is m = 1; the scan certifies that for concrete n.
    """
    if n < 1:
        raise DomainError("n must be positive")
    if m_max < 1:
        raise DomainError("m_max must be positive")
    return [
        m
        for m in range(1, m_max + 1)
        if (n + 1) * math.comb(m - 1 + n, n) == math.comb(m + n, n)
    ]


def kumn_nonexistence_search(
    n_range: Iterable[int], m_range: Iterable[int], d_range: Iterable[int]
) -> list[tuple[int, int, int, int]]:
    """Exhaustively search for Kum^n base-divisor numerical types; expect none.

    For each (n, m, d) the candidate q(H) = 2*m*d + q(F) runs over the
    admissible window (q(F) negative even with 2*d + q(F) >= 0, and
    q(F) = -2 forced when d = 1), and the Kum^n chi value is compared with
    C(m+n, n).  Returns all solutions found, as tuples (n, m, d, qF).
    """
    n_vals = list(n_range)
    m_vals = list(m_range)
    d_vals = list(d_range)
    if any(n < 2 for n in n_vals):
        raise DomainError("Kum^n requires n >= 2")
    if any(m < 2 for m in m_vals):
        raise DomainError("base-divisor multiplicities start at m = 2")
    if any(d < 1 for d in d_vals):
        raise DomainError("d = (L, F) must be positive")
    hits: list[tuple[int, int, int, int]] = []
    for n in n_vals:
        for m in m_vals:
            for d in d_vals:
                if d == 1:
                    q_h = 2 * (m - 1)
                    if (n + 1) * math.comb(m - 1 + n, n) == math.comb(m + n, n):
                        hits.append((n, m, 1, -2))
                    continue
                for q_f in range(-2 * d, 0, 2):
                    q_h = 2 * m * d + q_f
                    # d >= 2 forces q(H) >= 4(m-1); anything else is a bug
                    assert q_h >= 4 * (m - 1)
                    if (n + 1) * math.comb(q_h // 2 + n, n) == math.comb(m + n, n):
                        hits.append((n, m, d, q_f))
    return hits


# ---------------------------------------------------------------------------
# numerical Noether-Lefschetz types

def nl_numerical_types(dtype: DeformationType, q_h: int) -> list[NumericalNLType]:
    """Enumerate the numerical types (m, d, qF) compatible with q(H) = q_h.

    Constraints: RR(q_h) = C(m+n, n) with m >= 2 (m unique by inversion),
    d >= 1, qF negative even, q_h = 2*m*d + qF and 2*d + qF >= 0.  For
    K3^[n] this always collapses to the single type (q_h/2 + 1, 1, -2); for
    Kum^n the list is empty.  No lattice embeddings or moduli data are
    produced, only the numbers.
    """
    if isinstance(q_h, bool) or not isinstance(q_h, int):
        raise DomainError(f"q_h must be an integer, got {q_h!r}")
    if q_h <= 0 or q_h % 2 != 0:
        raise DomainError(f"q_h must be a positive even integer, got {q_h}")
    chi = rr_eval(dtype, q_h)
    if chi < 1:
        return []
    m = invert_binomial(chi, dtype.n)
    if m is None or m < 2:
        return []
    out = []
    for d in range(1, q_h // (2 * (m - 1)) + 1):
        q_f = q_h - 2 * m * d
        if q_f >= 0 or 2 * d + q_f < 0:
            continue
        out.append(NumericalNLType(m=m, d=d, qF=q_f))
    return out


def classification_report(ctx: GeometricContext, H: Iterable[int]) -> dict:
    """JSON-ready report wrapping classify with its certificates."""
    h_vec = ctx.lat.vector(H)
    dec = classify(ctx, h_vec)
    q_h = square(ctx.lat, h_vec)
    return {
        "q_H": q_h,
        "rr_value": rr_eval(ctx.dtype, q_h),
        "has_base_divisor": dec is not None,
        "decomposition": dec.to_json_dict() if dec is not None else None,
        "certificates": {
            "monotonic": check_strict_monotonic(ctx.dtype, q_h),
            "strong_rlf": ctx.strong_rlf,
        },
    }
