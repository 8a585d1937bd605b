"""Riemann-Roch polynomials attached to deformation types.

For the registered families the Euler characteristic of a line bundle L is
a degree-n polynomial in q(L) with closed forms

    K3^[n]:  chi = C(q/2 + n + 1, n)
    Kum^n:   chi = (n+1) * C(q/2 + n, n)

where C( , n) is the generalized binomial, i.e. the degree-n polynomial
x(x-1)...(x-n+1)/n! (valid for small and negative tops).  The polynomials
are expanded once into exact Fraction coefficients b_0..b_n; evaluation,
monotonicity certification and binomial inversion all stay in exact
arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ConsistencyError, DomainError, StructuralError

K3N = "K3n"
KUMN = "Kumn"
GENERIC = "Generic"

_KINDS = (K3N, KUMN, GENERIC)


class RRPolynomial:
    """Polynomial sum b_i x^i with exact rational coefficients, b_n > 0."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = tuple(Fraction(c) for c in coeffs)
        if not cs:
            raise DomainError("coefficient vector must be nonempty")
        if cs[-1] <= 0:
            raise DomainError(f"leading coefficient must be positive, got {cs[-1]}")
        self.coeffs = cs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, RRPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RRPolynomial({[str(c) for c in self.coeffs]})"


class DeformationType:
    """Registry entry: a kind tag, the half-dimension n, and the RR polynomial.

    The Fujiki constant is informational; when not supplied it is derived
    from the leading coefficient via C_X = (2n)! * b_n.
    """

    __slots__ = ("kind", "n", "rr", "fujiki", "_mono_upto", "_mono_last", "_mono_fail")

    def __init__(self, kind: str, n: int, rr: RRPolynomial, fujiki=None):
        if kind not in _KINDS:
            raise DomainError(f"unknown deformation kind {kind!r}")
        if n < 1:
            raise DomainError("half-dimension n must be a positive integer")
        if rr.degree != n:
            raise DomainError(f"RR polynomial must have degree exactly n={n}, got degree {rr.degree}")
        if fujiki is None:
            fujiki = math.factorial(2 * n) * rr.coeffs[-1]
        else:
            fujiki = Fraction(fujiki)
            if fujiki <= 0:
                raise DomainError("Fujiki constant must be positive")
        self.kind = kind
        self.n = n
        self.rr = rr
        self.fujiki = fujiki
        # monotonicity certification cache: verified-up-to, last value, first failure
        self._mono_upto: int | None = None
        self._mono_last: int = 0
        self._mono_fail: int | None = None

    def __repr__(self) -> str:
        return f"DeformationType({self.kind}, n={self.n})"

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "coeffs": [str(c) for c in self.rr.coeffs],
        }


def _half_q_binomial(shift: int, n: int) -> list[Fraction]:
    """Coefficients in q of C(q/2 + shift, n) = prod_{j<n} (q/2 + shift - j) / n!."""
    poly = [Fraction(1)]
    half = Fraction(1, 2)
    for j in range(n):
        const = Fraction(shift - j)
        nxt = [Fraction(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i] += c * const
            nxt[i + 1] += c * half
        poly = nxt
    nfact = math.factorial(n)
    return [c / nfact for c in poly]


_registry: dict[tuple[str, int], DeformationType] = {}


def make_type(kind: str, n: int, coeffs: Sequence | None = None, fujiki=None) -> DeformationType:
    """Build (or fetch) a deformation type with its RR polynomial.

    K3n requires n >= 1 and Kumn requires n >= 2; Kum^1 is rejected because
    the closed form at n=1 disagrees with the K3 surface polynomial, so a
    2-dimensional "Kum" type would silently produce wrong chi values.
    Generic takes explicit coefficients b_0..b_n with b_n > 0.
    """
    if kind == GENERIC:
        if coeffs is None:
            raise DomainError("Generic deformation type needs explicit RR coefficients")
        rr = RRPolynomial(coeffs)
        return DeformationType(GENERIC, n, rr, fujiki)
    if coeffs is not None:
        raise DomainError(f"{kind} carries a closed-form RR polynomial; explicit coefficients are not accepted")
    key = (kind, n)
    if fujiki is None and key in _registry:
        return _registry[key]
    if kind == K3N:
        if n < 1:
            raise DomainError("K3n requires n >= 1")
        rr = RRPolynomial(_half_q_binomial(n + 1, n))
    elif kind == KUMN:
        if n < 2:
            raise DomainError("Kumn requires n >= 2 (Kum^1 is not a registered type)")
        rr = RRPolynomial([(n + 1) * c for c in _half_q_binomial(n, n)])
    else:
        raise DomainError(f"unknown deformation kind {kind!r}")
    t = DeformationType(kind, n, rr, fujiki)
    if fujiki is None:
        _registry[key] = t
    return t


def rr_eval(t: DeformationType, q: int, *, allow_odd: bool = False) -> int:
    """Evaluate the RR polynomial at q, asserting the result is an integer.

    Registered families live on even lattices, so q must be even; the
    allow_odd escape hatch applies to Generic types only.
    """
    if isinstance(q, bool) or not isinstance(q, int):
        raise DomainError(f"q must be an integer, got {q!r}")
    if q % 2 != 0 and not (allow_odd and t.kind == GENERIC):
        raise DomainError(f"q must be even (even-lattice convention), got {q}")
    val = t.rr(q)
    if val.denominator != 1:
        raise ConsistencyError(
            f"RR value at q={q} is {val}, not an integer; the coefficient vector is malformed"
        )
    return int(val)


def check_strict_monotonic(t: DeformationType, q_max: int) -> bool:
    """True iff rr_eval is strictly increasing on the even grid {0, 2, ..., q_max}.

    Verified values are cached on the type, so repeated certification against
    growing bounds costs only the new grid points.
    """
    if q_max < 0:
        raise DomainError("q_max must be nonnegative")
    q_max -= q_max % 2
    if t._mono_upto is None:
        t._mono_last = rr_eval(t, 0)
        t._mono_upto = 0
    while t._mono_fail is None and t._mono_upto < q_max:
        q = t._mono_upto + 2
        v = rr_eval(t, q)
        if v <= t._mono_last:
            t._mono_fail = q
        t._mono_last = v
        t._mono_upto = q
    return t._mono_fail is None or t._mono_fail > q_max


def invert_binomial(value: int, n: int) -> int | None:
    """The unique m >= 1 with C(m+n, n) = value, or None.

    Uniqueness holds because the binomial is strictly increasing in the top
    argument once the top is at least n.
    """
    if n < 1:
        raise DomainError("n must be a positive integer")
    if value < 1:
        raise DomainError("value must be a positive integer")
    hi = 1
    while math.comb(hi + n, n) < value:
        hi *= 2
    lo = 1
    while lo < hi:
        mid = (lo + hi) // 2
        if math.comb(mid + n, n) < value:
            lo = mid + 1
        else:
            hi = mid
    return lo if math.comb(lo + n, n) == value else None


def deformation_from_json_dict(data: dict) -> DeformationType:
    if not isinstance(data, dict) or "kind" not in data or "n" not in data:
        raise StructuralError('deformation JSON must be an object with "kind" and "n"')
    kind = data["kind"]
    n = data["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise StructuralError('deformation "n" must be an integer')
    if kind == GENERIC:
        coeffs = data.get("coeffs")
        if coeffs is None:
            raise StructuralError('Generic deformation JSON needs a "coeffs" array')
        return make_type(GENERIC, n, coeffs=[Fraction(str(c)) for c in coeffs])
    return make_type(kind, n)
