"""The elliptic-curve analogue: even cohomology with its antisymmetric form.

Classes of sheaves on an elliptic curve live in the even part (rank, degree)
with the pairing ((r', d'), (r'', d'')) = r'' d' - r' d''.  The symmetry
group splits as SL2 x SL2 over even and odd cohomology; the stabilizer of a
primitive even vector v is infinite cyclic, generated by the transvection
t_v(w) = w + (w, v) v.
"""

from __future__ import annotations

from math import gcd

from . import linalg
from .lattices import LatticeError


def even_pairing(x, y) -> int:
    """((r', d'), (r'', d'')) = r'' d' - r' d''."""
    return y[0] * x[1] - x[0] * y[1]


def transvection(v) -> linalg.Mat:
    """Matrix of w -> w + (w, v) v for a primitive even vector v."""
    r, d = v
    if r == 0 and d == 0:
        raise LatticeError("transvection needs a nonzero vector")
    if gcd(r, d) != 1:
        raise LatticeError("transvection needs a primitive vector")
    cols = []
    for basis in ((1, 0), (0, 1)):
        coeff = even_pairing(basis, v)
        cols.append((basis[0] + coeff * r, basis[1] + coeff * d))
    return linalg.transpose(linalg.freeze(cols))


def preserves_even_pairing(mat) -> bool:
    """For 2x2 integer matrices this is exactly det = 1."""
    return linalg.det(mat) == 1


def fixes_vector(mat, v) -> bool:
    return linalg.mat_vec(mat, tuple(v)) == tuple(v)


class EvenStabilizer:
    """The stabilizer of a primitive (r, d) inside SL2(Z): {t_v^k, k in Z}."""

    def __init__(self, v):
        self.v = tuple(v)
        self.generator = transvection(self.v)
        self._nilpotent = linalg.freeze(
            [
                (self.generator[0][0] - 1, self.generator[0][1]),
                (self.generator[1][0], self.generator[1][1] - 1),
            ]
        )

    def power(self, k: int) -> linalg.Mat:
        """t_v^k = I + k N with N = t_v - I nilpotent."""
        n = self._nilpotent
        return linalg.freeze(
            [
                (1 + k * n[0][0], k * n[0][1]),
                (k * n[1][0], 1 + k * n[1][1]),
            ]
        )

    def is_power(self, mat) -> int | None:
        """The exponent k with mat = t_v^k, or None.

        mat must fix v and preserve the pairing; the exponent is read off
        linearly from the unipotent coordinate.
        """
        mat = linalg.freeze(mat)
        if not fixes_vector(mat, self.v):
            raise LatticeError("matrix does not fix v")
        n = self._nilpotent
        diff = linalg.freeze(
            [
                (mat[0][0] - 1, mat[0][1]),
                (mat[1][0], mat[1][1] - 1),
            ]
        )
        ks = set()
        for i in range(2):
            for j in range(2):
                if n[i][j]:
                    q, r = divmod(diff[i][j], n[i][j])
                    if r:
                        return None
                    ks.add(q)
                elif diff[i][j]:
                    return None
        if not ks:
            return 0
        if len(ks) > 1:
            return None
        k = ks.pop()
        return k if mat == self.power(k) else None


def even_stabilizer(v) -> EvenStabilizer:
    return EvenStabilizer(v)


def enumerate_stabilizer(v, bound: int) -> list[linalg.Mat]:
    """All integer matrices with entries up to `bound`, det 1, fixing v."""
    out = []
    rng = range(-bound, bound + 1)
    v = tuple(v)
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    if a * d - b * c != 1:
                        continue
                    mat = ((a, b), (c, d))
                    if fixes_vector(mat, v):
                        out.append(mat)
    return out
