"""Cone predicates and prime-exceptional reflections over a declared context.

A :class:`GeometricContext` fixes an integral lattice, an ample class h with
q(h) > 0, and finite declared sets of prime-exceptional divisor classes
("peds") and wall classes.  The divisor data is *declared input*: deciding
which classes are actually effective or uniruled needs geometry that a Gram
matrix cannot see, so every predicate here is exact relative to the declared
sets.  With an incomplete ped list the birational-Kaehler-closure test is
correct on the necessary side only; completeness is the caller's burden.

Each declared ped D must satisfy q(D) < 0, primitivity, (h, D) > 0 and the
divisibility condition q(D) | 2*div(D).  The last condition is exactly what
makes every reflection

    R_D(a) = a - (2(D,a)/q(D)) * D

integral on the whole lattice, and it is re-checked at runtime.

``reflect_into_bk`` walks a nonnegative-square class into the region pairing
nonnegatively with all declared peds by reflecting in the first violated ped.
The pairing against the ample class is a strictly decreasing sequence of
positive integers along the walk, so termination is guaranteed; the walk
records the step multiplicities, which reconstruct the input exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ConsistencyError, DomainError, IntegralityError, StructuralError
from .lattice import (
    Lattice,
    Vec,
    divisibility,
    enumerate_vectors,
    hyperbolic_plane,
    pairing,
    square,
    vec_is_zero,
    vec_scale,
    vec_sub,
)
from .riemann_roch import DeformationType, deformation_from_json_dict


@dataclass(frozen=True)
class ContextCheck:
    """One validated context invariant: name, outcome, human-readable detail."""

    name: str
    passed: bool
    detail: str
    structural: bool = False


def _check_ped(lat: Lattice, ample: Vec, d: Vec, label: str) -> list[ContextCheck]:
    checks = []
    if vec_is_zero(d):
        return [ContextCheck(f"{label}-nonzero", False, f"declared ped {list(d)} is the zero vector")]
    qd = square(lat, d)
    checks.append(
        ContextCheck(
            f"{label}-negative-square",
            qd < 0,
            f"q({list(d)}) = {qd}" + ("" if qd < 0 else " but a prime-exceptional class needs q < 0"),
        )
    )
    checks.append(
        ContextCheck(
            f"{label}-primitive",
            math.gcd(*d) == 1,
            f"gcd of coordinates is {math.gcd(*d)}",
        )
    )
    pa = pairing(lat, ample, d)
    checks.append(
        ContextCheck(
            f"{label}-ample-pairing",
            pa > 0,
            f"(ample, {list(d)}) = {pa}" + ("" if pa > 0 else " but effective classes must pair positively with an ample class"),
        )
    )
    if qd < 0:
        dv = divisibility(lat, d)
        ok = (2 * dv) % qd == 0
        detail = f"q(D) = {qd}, div(D) = {dv}"
        if not ok:
            detail += (
                f": {qd} does not divide {2 * dv}; the prime-exceptional divisibility"
                " condition q(D) | 2*div(D) fails"
            )
        checks.append(ContextCheck(f"{label}-divisibility", ok, detail))
    return checks


def run_context_checks(
    lat: Lattice,
    ample: Sequence[int],
    peds: Sequence[Sequence[int]] = (),
    walls: Sequence[Sequence[int]] = (),
) -> list[ContextCheck]:
    """Run every declared-data invariant, collecting per-item pass/fail."""
    checks: list[ContextCheck] = []
    try:
        h = lat.vector(ample)
    except StructuralError as exc:
        return [ContextCheck("ample-shape", False, str(exc), structural=True)]
    qh = square(lat, h)
    checks.append(
        ContextCheck(
            "ample-positive-square",
            qh > 0,
            f"q(ample) = {qh}" + ("" if qh > 0 else " but the ample class must have q > 0"),
        )
    )
    for i, raw in enumerate(peds):
        label = f"ped[{i}]"
        try:
            d = lat.vector(raw)
        except StructuralError as exc:
            checks.append(ContextCheck(f"{label}-shape", False, str(exc), structural=True))
            continue
        checks.extend(_check_ped(lat, h, d, label))
    for i, raw in enumerate(walls):
        try:
            lat.vector(raw)
        except StructuralError as exc:
            checks.append(ContextCheck(f"wall[{i}]-shape", False, str(exc), structural=True))
    return checks


class GeometricContext:
    """Lattice + ample class + declared divisor data + hypothesis flags.

    Construction validates every invariant and raises on the first failure,
    so a constructed context can be trusted downstream.  ``strong_rlf``
    declares that primitive isotropic classes in the birational Kaehler
    closure induce Lagrangian fibrations; the classifier refuses to run
    without it.  ``note`` is free-form provenance, e.g. recording that the
    lattice is a Picard sublattice (divisibilities computed in a sublattice
    may exceed those in the full lattice).
    """

    __slots__ = ("lat", "ample", "peds", "walls", "dtype", "strong_rlf", "note")

    def __init__(
        self,
        lat: Lattice,
        ample: Sequence[int],
        peds: Sequence[Sequence[int]] = (),
        walls: Sequence[Sequence[int]] = (),
        dtype: DeformationType | None = None,
        strong_rlf: bool = False,
        note: str | None = None,
    ):
        self.lat = lat
        self.ample = lat.vector(ample)
        self.peds = tuple(lat.vector(p) for p in peds)
        self.walls = tuple(lat.vector(w) for w in walls)
        self.dtype = dtype
        self.strong_rlf = bool(strong_rlf)
        self.note = note
        failed = [c for c in run_context_checks(lat, self.ample, self.peds, self.walls) if not c.passed]
        if failed:
            first = failed[0]
            raise DomainError(f"invalid context ({first.name}): {first.detail}")

    def to_json_dict(self) -> dict:
        data = {
            "lattice": self.lat.to_json_dict(),
            "ample": list(self.ample),
            "peds": [list(p) for p in self.peds],
            "walls": [list(w) for w in self.walls],
            "strong_rlf": self.strong_rlf,
        }
        if self.dtype is not None:
            data["deformation"] = self.dtype.to_json_dict()
        if self.note is not None:
            data["note"] = self.note
        return data

    @classmethod
    def from_json_dict(cls, data: dict) -> "GeometricContext":
        if not isinstance(data, dict):
            raise StructuralError("context JSON must be an object")
        missing = [k for k in ("lattice", "ample") if k not in data]
        if missing:
            raise StructuralError(f"context JSON is missing required keys: {missing}")
        lat = Lattice.from_json_dict(data["lattice"])
        dtype = None
        if "deformation" in data:
            dtype = deformation_from_json_dict(data["deformation"])
        return cls(
            lat,
            data["ample"],
            data.get("peds", ()),
            data.get("walls", ()),
            dtype=dtype,
            strong_rlf=data.get("strong_rlf", False),
            note=data.get("note"),
        )

    def __repr__(self) -> str:
        return (
            f"GeometricContext(rank={self.lat.rank}, peds={len(self.peds)},"
            f" walls={len(self.walls)}, dtype={self.dtype}, strong_rlf={self.strong_rlf})"
        )


def validate_context_payload(data) -> tuple[GeometricContext | None, list[ContextCheck]]:
    """Check a raw context payload item by item (for the CLI validator).

    Returns the constructed context when everything passes, else None
    together with the full check report.
    """
    checks: list[ContextCheck] = []
    if not isinstance(data, dict):
        return None, [ContextCheck("schema", False, "context JSON must be an object", structural=True)]
    missing = [k for k in ("lattice", "ample") if k not in data]
    if missing:
        return None, [
            ContextCheck("schema", False, f"missing required keys: {missing}", structural=True)
        ]
    try:
        lat = Lattice.from_json_dict(data["lattice"])
    except StructuralError as exc:
        return None, [ContextCheck("lattice", False, str(exc), structural=True)]
    checks.append(ContextCheck("lattice", True, f"rank {lat.rank}, even={lat.even}"))
    dtype = None
    if "deformation" in data:
        try:
            dtype = deformation_from_json_dict(data["deformation"])
            checks.append(ContextCheck("deformation", True, repr(dtype)))
        except (StructuralError, DomainError, ValueError) as exc:
            checks.append(ContextCheck("deformation", False, str(exc), structural=True))
    else:
        checks.append(ContextCheck("deformation", True, "absent (classification unavailable)"))
    checks.extend(run_context_checks(lat, data["ample"], data.get("peds", ()), data.get("walls", ())))
    if all(c.passed for c in checks):
        ctx = GeometricContext(
            lat,
            data["ample"],
            data.get("peds", ()),
            data.get("walls", ()),
            dtype=dtype,
            strong_rlf=data.get("strong_rlf", False),
            note=data.get("note"),
        )
        return ctx, checks
    return None, checks


# ---------------------------------------------------------------------------
# reflections

@dataclass(frozen=True)
class ReflectionTrace:
    """Result of a reflection walk plus the certificate to rebuild the input.

    The walked class equals ``result + sum(a_i * D_i)`` with every a_i a
    positive integer.
    """

    result: Vec
    steps: tuple[tuple[Vec, int], ...] = field(default_factory=tuple)

    def reconstruction(self) -> Vec:
        """The original class implied by result and steps."""
        acc = list(self.result)
        for ped, a in self.steps:
            for i, c in enumerate(ped):
                acc[i] += a * c
        return tuple(acc)

    def to_json_dict(self) -> dict:
        return {
            "result": list(self.result),
            "steps": [{"ped": list(p), "a": a} for p, a in self.steps],
        }


def reflect(ctx: GeometricContext, d: Iterable[int], alpha: Iterable[int]) -> Vec:
    """R_d(alpha) = alpha - (2(d, alpha)/q(d)) * d, verified integral.

    d is normally one of the declared peds (for those, integrality is
    guaranteed by the validated divisibility condition); ad-hoc roots with
    q(d) < 0 are accepted whenever the scalar happens to be integral.
    """
    lat = ctx.lat
    dv = lat.vector(d)
    av = lat.vector(alpha)
    qd = square(lat, dv)
    if qd >= 0:
        raise DomainError(f"reflection root must have q < 0; q({list(dv)}) = {qd}")
    num = 2 * pairing(lat, dv, av)
    if num % qd != 0:
        raise IntegralityError(
            f"2(d, alpha) = {num} is not divisible by q(d) = {qd};"
            f" {list(dv)} is not a valid integral reflection root for {list(av)}"
        )
    s = num // qd
    return vec_sub(av, vec_scale(s, dv))


def reflect_into_bk(ctx: GeometricContext, alpha: Iterable[int]) -> ReflectionTrace:
    """Reflect alpha until it pairs >= 0 with every declared ped.

    Preconditions: alpha nonzero, q(alpha) >= 0, (alpha, ample) > 0.  At each
    step the first declared ped with (alpha_i, D) < 0 is used (first in list
    order, for reproducible traces).  (alpha_i, ample) strictly decreases
    through positive integers, which bounds the number of steps by the
    initial pairing; any violation of that descent means the declared data
    is inconsistent and raises ConsistencyError.
    """
    lat = ctx.lat
    current = lat.vector(alpha)
    if vec_is_zero(current):
        raise DomainError("cannot walk the zero class")
    qa = square(lat, current)
    if qa < 0:
        raise DomainError(f"q(alpha) = {qa} must be nonnegative (closed positive cone)")
    height = pairing(lat, current, ctx.ample)
    if height <= 0:
        raise DomainError(f"(alpha, ample) = {height} must be positive")
    budget = height
    steps: list[tuple[Vec, int]] = []
    while True:
        violated = None
        for d in ctx.peds:
            if pairing(lat, current, d) < 0:
                violated = d
                break
        if violated is None:
            break
        if len(steps) >= budget:
            raise ConsistencyError(
                "reflection walk exceeded its iteration budget (alpha, ample);"
                " the declared context data is inconsistent"
            )
        qd = square(lat, violated)
        num = 2 * pairing(lat, violated, current)
        if num % qd != 0:
            raise ConsistencyError(
                f"declared ped {list(violated)} produced a non-integral reflection scalar"
            )
        a = num // qd
        nxt = vec_sub(current, vec_scale(a, violated))
        new_height = pairing(lat, nxt, ctx.ample)
        if not (0 < new_height < height):
            raise ConsistencyError(
                f"descent failed: (alpha, ample) went {height} -> {new_height};"
                " the declared context data is inconsistent"
            )
        steps.append((violated, a))
        current = nxt
        height = new_height
    trace = ReflectionTrace(result=current, steps=tuple(steps))
    if not in_bk_closure(ctx, current):
        raise ConsistencyError("walk terminated outside the declared BK closure")
    return trace


# ---------------------------------------------------------------------------
# cone membership

def in_positive_cone(ctx: GeometricContext, alpha: Iterable[int], closed: bool = False) -> bool:
    """Membership in the (open or closed) positive cone on the ample side."""
    a = ctx.lat.vector(alpha)
    if closed and vec_is_zero(a):
        return True
    qa = square(ctx.lat, a)
    pa = pairing(ctx.lat, a, ctx.ample)
    if closed:
        return qa >= 0 and pa > 0
    return qa > 0 and pa > 0


def in_bk_closure(ctx: GeometricContext, alpha: Iterable[int], include_walls: bool = False) -> bool:
    """Closed positive cone and (alpha, D) >= 0 for every declared ped.

    This decides membership in the birational-Kaehler closure *relative to
    the declared divisor set*; it is exact on the necessary side and as
    complete as the declaration.  Wall-strict mode additionally requires
    nonnegative pairing with the declared walls (a finer chamber condition
    than the closure itself).
    """
    if not in_positive_cone(ctx, alpha, closed=True):
        return False
    a = ctx.lat.vector(alpha)
    cutters = ctx.peds + (ctx.walls if include_walls else ())
    return all(pairing(ctx.lat, a, d) >= 0 for d in cutters)


def ped_inequality_check(lat: Lattice, d: Iterable[int]) -> bool:
    """True iff q(d) divides 2*div(d).

    Every prime-exceptional divisor class satisfies this; failure certifies
    that d cannot be one.
    """
    dv = lat.vector(d)
    if vec_is_zero(dv):
        raise DomainError("the zero vector cannot be a prime-exceptional class")
    qd = square(lat, dv)
    if qd >= 0:
        raise DomainError(f"prime-exceptional candidates need q < 0; q({list(dv)}) = {qd}")
    return (2 * divisibility(lat, dv)) % qd == 0


def rank2_exceptional_scan(bound: int) -> list[Vec]:
    """All (a, b) in the hyperbolic plane with |a|,|b| <= bound, q < 0 and
    |2ab|/2 <= gcd(a, b).

    The constraint is the prime-exceptional divisibility inequality written
    out in the basis E, F of U; the only solutions are +-(E - F), for any
    bound.
    """
    if bound < 1:
        raise DomainError("bound must be >= 1")
    u = hyperbolic_plane()
    out = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            v = (a, b)
            if square(u, v) >= 0:
                continue
            if abs(a * b) <= math.gcd(a, b):
                out.append(v)
    return out


def k3_ped_candidates(lat: Lattice, coeff_bound: int, ample: Sequence[int] | None = None) -> list[Vec]:
    """Square -2 classes in a coefficient box: the built-in ped generator
    for the surface case (n = 1), where those are exactly the candidates.

    On an even lattice a square -2 class is automatically primitive and
    satisfies the divisibility condition.  When an ample class is supplied,
    only candidates pairing positively with it (the effective orientation)
    are kept.  For n > 1 no generator is provided: deciding the ped set
    needs data beyond the Gram matrix, so it must be declared.
    """
    out = enumerate_vectors(lat, -2, coeff_bound)
    if ample is not None:
        h = lat.vector(ample)
        out = [v for v in out if pairing(lat, h, v) > 0]
    return out
