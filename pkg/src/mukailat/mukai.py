"""The Mukai lattice as the truncated cohomology ring of a K3 surface.

A Mukai vector (r, c, s) pairs by <(r',c',s'), (r'',c'',s'')> = c'.c'' -
r's'' - r''s' with c in the K3 lattice.  GradedSurfaceClass carries the
rational degree-(0,2,4) calculus (cup product, exp of a line class, the
square root (1,0,1) of the Todd class, exponential Chern character to total
Chern class).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .lattices import Lattice, LatticeError, k3_lattice


@dataclass(frozen=True)
class MukaiVector:
    r: int
    c: tuple[int, ...]
    s: int

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(self.c))

    @property
    def is_zero(self) -> bool:
        return self.r == 0 and self.s == 0 and linalg.is_zero_vec(self.c)

    def coords(self) -> tuple[int, ...]:
        """Coordinates in the Mukai lattice basis [K3 basis..., (1,0,0), (0,0,1)]."""
        return self.c + (self.r, self.s)

    @classmethod
    def from_coords(cls, coords) -> "MukaiVector":
        coords = tuple(coords)
        return cls(coords[-2], coords[:-2], coords[-1])

    def __add__(self, other: "MukaiVector") -> "MukaiVector":
        return MukaiVector(self.r + other.r, linalg.vec_add(self.c, other.c),
                           self.s + other.s)

    def __sub__(self, other: "MukaiVector") -> "MukaiVector":
        return MukaiVector(self.r - other.r, linalg.vec_sub(self.c, other.c),
                           self.s - other.s)

    def __neg__(self) -> "MukaiVector":
        return MukaiVector(-self.r, linalg.vec_neg(self.c), -self.s)

    def scale(self, k: int) -> "MukaiVector":
        return MukaiVector(k * self.r, linalg.vec_scale(k, self.c), k * self.s)


def hilbert_scheme_vector(m: int, k3: Lattice | None = None) -> MukaiVector:
    """v = (1, 0, -m), the Mukai vector of an ideal sheaf of m+1 points."""
    k3 = k3 or k3_lattice()
    return MukaiVector(1, linalg.zero_vec(k3.rank), -m)


def mukai_pairing(x: MukaiVector, y: MukaiVector, k3: Lattice | None = None) -> int:
    k3 = k3 or k3_lattice()
    return k3.pair(x.c, y.c) - x.r * y.s - y.r * x.s


def dualize(x: MukaiVector) -> MukaiVector:
    """The duality operator D: (r, c, s) -> (r, -c, s); acts by -1 on H^2."""
    return MukaiVector(x.r, linalg.vec_neg(x.c), x.s)


def mukai_is_primitive(x: MukaiVector) -> bool:
    coords = x.coords()
    if linalg.is_zero_vec(coords):
        raise LatticeError("the zero vector is neither primitive nor imprimitive")
    return linalg.vec_content(coords) == 1


class IntegralityError(ValueError):
    """A calculus result that must be integral came out fractional."""


def _canonical_number(x):
    """Integers stay ints; fractions reduce to ints when integral."""
    if isinstance(x, int):
        return x
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f


@dataclass(frozen=True)
class GradedSurfaceClass:
    """Rational class in degrees 0, 2, 4 of the cohomology of a surface."""

    deg0: int | Fraction
    deg2: tuple
    deg4: int | Fraction

    def __post_init__(self):
        object.__setattr__(self, "deg0", _canonical_number(self.deg0))
        object.__setattr__(
            self, "deg2", tuple(_canonical_number(x) for x in self.deg2)
        )
        object.__setattr__(self, "deg4", _canonical_number(self.deg4))

    @classmethod
    def from_mukai(cls, x: MukaiVector) -> "GradedSurfaceClass":
        return cls(Fraction(x.r), x.c, Fraction(x.s))

    def to_mukai(self) -> MukaiVector:
        for val in (self.deg0, self.deg4, *self.deg2):
            if Fraction(val).denominator != 1:
                raise IntegralityError(f"non-integral component {val}")
        return MukaiVector(int(self.deg0), tuple(int(x) for x in self.deg2),
                           int(self.deg4))

    def __add__(self, other):
        return GradedSurfaceClass(self.deg0 + other.deg0,
                                  linalg.vec_add(self.deg2, other.deg2),
                                  self.deg4 + other.deg4)

    def __neg__(self):
        return GradedSurfaceClass(-self.deg0, linalg.vec_neg(self.deg2), -self.deg4)


def unit_class(k3: Lattice | None = None) -> GradedSurfaceClass:
    k3 = k3 or k3_lattice()
    return GradedSurfaceClass(Fraction(1), linalg.zero_vec(k3.rank), Fraction(0))


def sqrt_todd(k3: Lattice | None = None) -> GradedSurfaceClass:
    """sqrt(td) = (1, 0, 1): the Todd class of a K3 surface is 1 + 2w."""
    k3 = k3 or k3_lattice()
    return GradedSurfaceClass(Fraction(1), linalg.zero_vec(k3.rank), Fraction(1))


def cup(x: GradedSurfaceClass, y: GradedSurfaceClass,
        k3: Lattice | None = None) -> GradedSurfaceClass:
    """(r,c,s).(r',c',s') = (rr', rc' + r'c, rs' + sr' + c.c'), truncated at deg 4."""
    k3 = k3 or k3_lattice()
    cc = sum(a * b for a, b in
             zip(x.deg2, linalg.mat_vec(k3.gram, y.deg2)))
    return GradedSurfaceClass(
        x.deg0 * y.deg0,
        linalg.vec_add(linalg.vec_scale(x.deg0, y.deg2),
                       linalg.vec_scale(y.deg0, x.deg2)),
        x.deg0 * y.deg4 + x.deg4 * y.deg0 + cc,
    )


def exp_class(line: tuple, k3: Lattice | None = None) -> GradedSurfaceClass:
    """exp(l) = (1, l, l^2/2)."""
    k3 = k3 or k3_lattice()
    line_q = tuple(Fraction(x) for x in line)
    sq = sum(a * b for a, b in zip(line_q, linalg.mat_vec(k3.gram, line_q)))
    return GradedSurfaceClass(Fraction(1), line_q, Fraction(sq, 2))


def ch_to_chern(ch: GradedSurfaceClass,
                k3: Lattice | None = None) -> GradedSurfaceClass:
    """Exponential Chern character to total Chern class, at surface truncation:
    (r, a1, a2) -> (1, a1, a1^2/2 - a2)."""
    k3 = k3 or k3_lattice()
    if ch.deg0.denominator != 1:
        raise IntegralityError("degree-0 component of ch must be an integer")
    a1 = ch.deg2
    sq = sum(a * b for a, b in zip(a1, linalg.mat_vec(k3.gram, a1)))
    c2 = Fraction(sq, 2) - ch.deg4
    return GradedSurfaceClass(Fraction(1), a1, c2)


def twist_by_line(x: GradedSurfaceClass, line: tuple,
                  k3: Lattice | None = None) -> GradedSurfaceClass:
    """Tensoring by a line bundle with first Chern class `line`: cup with exp(line)."""
    return cup(x, exp_class(line, k3), k3)


class Effectivity(enum.Enum):
    EFFECTIVE = "Effective"
    NOT_EFFECTIVE = "NotEffective"
    INDETERMINATE = "Indeterminate"


def effectivity_numeric(v: MukaiVector, k3: Lattice | None = None) -> Effectivity:
    """Numeric clauses of effectivity; the divisor clause for r = 0, c != 0
    needs ample/Hodge data this package does not carry, hence Indeterminate."""
    if v.is_zero:
        raise LatticeError("effectivity is undefined for the zero vector")
    k3 = k3 or k3_lattice()
    if mukai_pairing(v, v, k3) < -2 or v.r < 0:
        return Effectivity.NOT_EFFECTIVE
    if v.r > 0:
        return Effectivity.EFFECTIVE
    if not linalg.is_zero_vec(v.c):
        return Effectivity.INDETERMINATE
    # r = 0, c = 0: effective iff chi = r + s = s > 0
    return Effectivity.EFFECTIVE if v.s > 0 else Effectivity.NOT_EFFECTIVE
