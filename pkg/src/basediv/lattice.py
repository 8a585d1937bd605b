"""Exact arithmetic for integral symmetric bilinear forms.

A :class:`Lattice` wraps an integer Gram matrix ``G``; vectors are integer
coordinate tuples in the implied basis.  The pairing is ``(a, b) = a^T G b``
and the square is ``q(v) = (v, v)``.  Everything here is arbitrary-precision
integer arithmetic; no floating point enters this module.
"""

from __future__ import annotations

import math
from itertools import product
from typing import Iterable, Sequence

from .errors import CapabilityError, DomainError, StructuralError

Vec = tuple[int, ...]

# Exhaustive box enumeration is exponential in the rank; refuse beyond this.
ENUM_RANK_LIMIT = 6


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise StructuralError(f"expected an integer entry, got {x!r}")
    return x


class Lattice:
    """Integral lattice presented by a symmetric Gram matrix.

    The ``even`` flag asserts that q(v) is even for every integer vector v.
    An even diagonal is sufficient for that (together with symmetry, since
    q(v) = sum v_i^2 g_ii + 2 sum_{i<j} v_i v_j g_ij), and the even diagonal
    is what gets validated.  With ``even=None`` the flag is inferred from
    the diagonal.
    """

    __slots__ = ("gram", "rank", "even")

    def __init__(self, gram: Sequence[Sequence[int]], even: bool | None = None):
        rows = tuple(tuple(_as_int(x) for x in row) for row in gram)
        n = len(rows)
        if n == 0:
            raise StructuralError("Gram matrix must have positive rank")
        if any(len(row) != n for row in rows):
            raise StructuralError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise StructuralError(
                        f"Gram matrix must be symmetric; entries ({i},{j}) and ({j},{i}) differ"
                    )
        diag_even = all(rows[i][i] % 2 == 0 for i in range(n))
        if even is None:
            even = diag_even
        elif even and not diag_even:
            raise StructuralError("lattice flagged even, but the Gram diagonal has an odd entry")
        self.gram = rows
        self.rank = n
        self.even = bool(even)

    def vector(self, coords: Iterable[int]) -> Vec:
        """Validate and normalize a coordinate vector for this lattice."""
        v = tuple(_as_int(c) for c in coords)
        if len(v) != self.rank:
            raise StructuralError(f"vector length {len(v)} does not match lattice rank {self.rank}")
        return v

    def to_json_dict(self) -> dict:
        return {"gram": [list(row) for row in self.gram], "even": self.even}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Lattice":
        if not isinstance(data, dict) or "gram" not in data:
            raise StructuralError('lattice JSON must be an object with a "gram" key')
        return cls(data["gram"], data.get("even"))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Lattice)
            and self.gram == other.gram
            and self.even == other.even
        )

    def __hash__(self) -> int:
        return hash((self.gram, self.even))

    def __repr__(self) -> str:
        return f"Lattice(rank={self.rank}, even={self.even})"


# ---------------------------------------------------------------------------
# standard blocks

def hyperbolic_plane() -> Lattice:
    """The rank-2 hyperbolic plane U with Gram matrix [[0,1],[1,0]]."""
    return Lattice(((0, 1), (1, 0)))


def rank_one(k: int) -> Lattice:
    """The rank-1 lattice <k> with Gram matrix [[k]]."""
    return Lattice(((k,),))


def direct_sum(*lattices: Lattice) -> Lattice:
    """Orthogonal direct sum, as a block-diagonal Gram matrix."""
    if not lattices:
        raise DomainError("direct_sum needs at least one summand")
    total = sum(lat.rank for lat in lattices)
    rows = []
    offset = 0
    for lat in lattices:
        for row in lat.gram:
            rows.append((0,) * offset + row + (0,) * (total - offset - lat.rank))
        offset += lat.rank
    return Lattice(rows)


# ---------------------------------------------------------------------------
# vector helpers (plain tuple arithmetic, shared across modules)

def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(k: int, v: Vec) -> Vec:
    return tuple(k * x for x in v)


def vec_neg(v: Vec) -> Vec:
    return tuple(-x for x in v)


def vec_is_zero(v: Vec) -> bool:
    return all(x == 0 for x in v)


# ---------------------------------------------------------------------------
# operations

def pairing(lat: Lattice, a: Iterable[int], b: Iterable[int]) -> int:
    """The bilinear pairing (a, b) = a^T G b."""
    av = lat.vector(a)
    bv = lat.vector(b)
    total = 0
    for ai, row in zip(av, lat.gram):
        if ai:
            total += ai * sum(g * bj for g, bj in zip(row, bv))
    return total


def square(lat: Lattice, v: Iterable[int]) -> int:
    """The square q(v) = (v, v)."""
    return pairing(lat, v, v)


def divisibility(lat: Lattice, d: Iterable[int]) -> int:
    """div(d) = gcd of the pairings of d against the lattice basis.

    Returns 0 only when d pairs to zero with every basis vector (possible
    for degenerate Gram matrices); the zero vector itself is rejected.
    """
    dv = lat.vector(d)
    if vec_is_zero(dv):
        raise DomainError("divisibility of the zero vector is undefined")
    profile = [sum(g * dj for g, dj in zip(row, dv)) for row in lat.gram]
    return math.gcd(*profile)


def is_primitive(lat: Lattice, v: Iterable[int]) -> bool:
    """True iff the coordinates of v have gcd 1."""
    vv = lat.vector(v)
    if vec_is_zero(vv):
        raise DomainError("primitivity of the zero vector is undefined")
    return math.gcd(*vv) == 1


def enumerate_vectors(lat: Lattice, square_value: int, coeff_bound: int) -> list[Vec]:
    """All vectors with |coords| <= coeff_bound and q(v) = square_value.

    Exhaustive within the box, returned in lexicographic order (so output
    is deterministic and closed under negation).
    """
    if lat.rank > ENUM_RANK_LIMIT:
        raise CapabilityError(
            f"box enumeration is limited to rank <= {ENUM_RANK_LIMIT}, got rank {lat.rank}"
        )
    if coeff_bound < 1:
        raise DomainError("coeff_bound must be >= 1")
    out = []
    for v in product(range(-coeff_bound, coeff_bound + 1), repeat=lat.rank):
        if pairing(lat, v, v) == square_value:
            out.append(v)
    return out
