"""Integral lattices with exact arithmetic.

A lattice is a symmetric integer Gram matrix over a labeled basis.  The
standard building blocks are the hyperbolic plane U, the negative definite
E8(-1), the K3 lattice 2E8(-1) + 3U, and the rank-24 Mukai lattice obtained
from K3 by adjoining the classes (1,0,0) and (0,0,1) of pairing -1.

Everything downstream (reflections, stabilizers, discriminant forms) builds
on the operations here: pairing, primitivity, isometry verification,
saturated orthogonal complements and discriminant groups via Smith normal
form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .linalg import Mat, Vec, freeze


class LatticeError(ValueError):
    pass


# Fixed E8 Gram: Cartan matrix in Bourbaki node order (chain 1-3-4-5-6-7-8,
# node 2 attached to node 4).  E8(-1) is its negation.  See README for the
# matrix spelled out.
_E8_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))


def _e8_cartan() -> Mat:
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = 2
    for i, j in _E8_EDGES:
        g[i - 1][j - 1] = -1
        g[j - 1][i - 1] = -1
    return freeze(g)


@dataclass(frozen=True)
class Block:
    name: str
    start: int
    size: int


@dataclass(frozen=True)
class Lattice:
    gram: Mat
    basis_labels: tuple[str, ...]
    blocks: tuple[Block, ...] = ()
    name: str = ""

    def __post_init__(self):
        n = len(self.gram)
        if any(len(row) != n for row in self.gram):
            raise LatticeError("Gram matrix must be square")
        if len(self.basis_labels) != n:
            raise LatticeError("basis labels must match the rank")
        if self.gram != linalg.transpose(self.gram):
            raise LatticeError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def signature(self) -> tuple[int, int]:
        pos, neg, zero = linalg.signature(self.gram)
        if zero:
            raise LatticeError("degenerate Gram matrix")
        return pos, neg

    def determinant(self) -> int:
        return linalg.det(self.gram)

    def pair(self, x: Vec, y: Vec):
        if len(x) != self.rank or len(y) != self.rank:
            raise LatticeError("vector length does not match lattice rank")
        gy = linalg.mat_vec(self.gram, y)
        return sum(a * b for a, b in zip(x, gy))

    def square(self, x: Vec):
        return self.pair(x, x)

    def basis_vector(self, label: str) -> Vec:
        i = self.basis_labels.index(label)
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def block_named(self, name: str) -> Block:
        for b in self.blocks:
            if b.name == name:
                return b
        raise LatticeError(f"no block named {name!r}")

    def blocks_named(self, name: str) -> tuple[Block, ...]:
        return tuple(b for b in self.blocks if b.name == name)

    def gram_inverse(self):
        return _gram_inverse(self.gram)


@lru_cache(maxsize=None)
def _gram_inverse(gram: Mat):
    return linalg.mat_inv_q(gram)


def _u_gram() -> Mat:
    return ((0, 1), (1, 0))


def _block_pieces(spec_item):
    """Expand one block descriptor into a list of (name, labels, gram)."""
    if isinstance(spec_item, (tuple, list)):
        kind = spec_item[0]
        if kind != "diag":
            raise LatticeError(f"unknown block {spec_item!r}")
        entries = tuple(int(x) for x in spec_item[1])
        labels = tuple(f"d{i+1}" for i in range(len(entries)))
        g = freeze(
            [[entries[i] if i == j else 0 for j in range(len(entries))]
             for i in range(len(entries))]
        )
        return [(f"diag{list(entries)}", labels, g)]
    if spec_item == "U":
        return [("U", ("e", "f"), _u_gram())]
    if spec_item == "E8_minus":
        return [("E8_minus", tuple(f"a{i+1}" for i in range(8)),
                 linalg.mat_neg(_e8_cartan()))]
    if spec_item == "K3":
        return (_block_pieces("E8_minus") + _block_pieces("E8_minus")
                + _block_pieces("U") + _block_pieces("U") + _block_pieces("U"))
    if spec_item == "Mukai":
        # H^0 + H^4 part: ((1,0,0),(0,0,1)) = -1, both isotropic.
        return _block_pieces("K3") + [("H04", ("h0", "h4"), ((0, -1), (-1, 0)))]
    raise LatticeError(f"unknown block {spec_item!r}")


def build_lattice(spec) -> Lattice:
    """Orthogonal direct sum of standard blocks.

    spec is a sequence of block descriptors: "U", "E8_minus", "K3", "Mukai",
    or ("diag", (n1, ..., nk)).
    """
    spec = tuple(spec)
    if not spec:
        raise LatticeError("empty block specification")
    pieces = []
    for item in spec:
        pieces.extend(_block_pieces(item))

    rank = sum(len(labels) for _, labels, _ in pieces)
    gram = [[0] * rank for _ in range(rank)]
    labels: list[str] = []
    blocks: list[Block] = []
    counts: dict[str, int] = {}
    offset = 0
    for name, piece_labels, piece_gram in pieces:
        k = counts.get(name, 0) + 1
        counts[name] = k
        suffix = "" if name in ("H04",) else f".{k}"
        blocks.append(Block(name, offset, len(piece_labels)))
        labels.extend(f"{lab}{suffix}" for lab in piece_labels)
        for i in range(len(piece_labels)):
            for j in range(len(piece_labels)):
                gram[offset + i][offset + j] = piece_gram[i][j]
        offset += len(piece_labels)
    return Lattice(freeze(gram), tuple(labels), tuple(blocks),
                   name="+".join(str(s) for s in spec))


@lru_cache(maxsize=None)
def hyperbolic_plane() -> Lattice:
    return build_lattice(("U",))


@lru_cache(maxsize=None)
def e8_minus() -> Lattice:
    return build_lattice(("E8_minus",))


@lru_cache(maxsize=None)
def k3_lattice() -> Lattice:
    return build_lattice(("K3",))


@lru_cache(maxsize=None)
def mukai_lattice() -> Lattice:
    return build_lattice(("Mukai",))


def is_primitive(lattice: Lattice, x: Vec) -> bool:
    if len(x) != lattice.rank:
        raise LatticeError("vector length does not match lattice rank")
    if linalg.is_zero_vec(x):
        raise LatticeError("the zero vector is neither primitive nor imprimitive")
    return linalg.vec_content(x) == 1


def primitive_part(x: Vec) -> tuple[int, Vec]:
    """x = c * x0 with c > 0 and x0 primitive (x must be nonzero)."""
    c = linalg.vec_content(x)
    if c == 0:
        raise LatticeError("zero vector has no primitive part")
    return c, tuple(a // c for a in x)


@dataclass(frozen=True)
class IsometryCheck:
    is_isometry: bool
    det: int


@dataclass(frozen=True)
class Isometry:
    """An integer matrix M with M^T G M = G; columns are images of basis vectors."""

    lattice: Lattice
    matrix: Mat

    def __post_init__(self):
        if len(self.matrix) != self.lattice.rank:
            raise LatticeError("matrix size does not match lattice rank")

    @classmethod
    def checked(cls, lattice: Lattice, matrix) -> "Isometry":
        matrix = freeze(matrix)
        check = check_isometry(lattice, matrix)
        if not check.is_isometry:
            raise LatticeError("matrix does not preserve the Gram form")
        return cls(lattice, matrix)

    @classmethod
    def identity(cls, lattice: Lattice) -> "Isometry":
        return cls(lattice, linalg.identity(lattice.rank))

    def apply(self, v: Vec) -> Vec:
        return linalg.mat_vec(self.matrix, v)

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other (matrix product self.matrix @ other.matrix)."""
        if other.lattice.gram != self.lattice.gram:
            raise LatticeError("isometries live on different lattices")
        return Isometry(self.lattice, linalg.mat_mul(self.matrix, other.matrix))

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return self.compose(other)

    def inverse(self) -> "Isometry":
        # M^{-1} = G^{-1} M^T G for an isometry; exact and integral.
        ginv = self.lattice.gram_inverse()
        mt = linalg.transpose(self.matrix)
        prod = linalg.mat_mul(linalg.mat_mul(ginv, mt), self.lattice.gram)
        out = []
        for row in prod:
            if any(Fraction(x).denominator != 1 for x in row):
                raise LatticeError("matrix is not an isometry; inverse not integral")
            out.append(tuple(int(x) for x in row))
        return Isometry(self.lattice, freeze(out))

    def det(self) -> int:
        return linalg.det(self.matrix)

    def negate(self) -> "Isometry":
        return Isometry(self.lattice, linalg.mat_neg(self.matrix))

    def fixes(self, v: Vec) -> bool:
        return self.apply(v) == tuple(v)

    def is_identity(self) -> bool:
        return self.matrix == linalg.identity(self.lattice.rank)


def check_isometry(lattice: Lattice, matrix) -> IsometryCheck:
    matrix = freeze(matrix)
    if len(matrix) != lattice.rank or any(len(r) != lattice.rank for r in matrix):
        raise LatticeError("matrix must be square of the lattice rank")
    g = lattice.gram
    mt = linalg.transpose(matrix)
    ok = linalg.mat_mul(linalg.mat_mul(mt, g), matrix) == g
    return IsometryCheck(ok, linalg.det(matrix))


def orthogonal_complement(lattice: Lattice, vectors) -> tuple[tuple[Vec, ...], Mat]:
    """Saturated complement {x : (x, s) = 0 for all s}, with restricted Gram."""
    vectors = [tuple(v) for v in vectors]
    for v in vectors:
        if len(v) != lattice.rank:
            raise LatticeError("vector length does not match lattice rank")
    if not vectors:
        basis = tuple(linalg.identity(lattice.rank))
        return basis, lattice.gram
    rows = freeze(linalg.mat_vec(lattice.gram, v) for v in vectors)
    basis = linalg.kernel_basis(rows)
    gram = freeze(
        [[lattice.pair(b1, b2) for b2 in basis] for b1 in basis]
    )
    return basis, gram


@dataclass(frozen=True)
class DiscGroup:
    """(L*/L, q): elementary divisors with rational generator lifts.

    lifts[i] has order divisors[i] in L*/L; d * lift lies in L and every lift
    pairs integrally with L.  For an even lattice q(lift) is recorded mod 2.
    """

    divisors: tuple[int, ...]
    lifts: tuple[tuple[Fraction, ...], ...]
    q_values: tuple[Fraction, ...]
    order: int

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def is_cyclic(self) -> bool:
        return len(self.divisors) <= 1


def _q_mod2(value: Fraction) -> Fraction:
    return value - 2 * (value / 2).__floor__()


def discriminant_group(lattice: Lattice) -> DiscGroup:
    g = lattice.gram
    d, s, t = linalg.smith_normal_form(g)
    n = lattice.rank
    diag = [d[i][i] for i in range(n)]
    if any(x == 0 for x in diag):
        raise LatticeError("degenerate Gram matrix")
    cols_t = linalg.transpose(t)
    divisors = []
    lifts = []
    q_values = []
    for i in range(n):
        if diag[i] == 1:
            continue
        divisors.append(diag[i])
        lift = tuple(Fraction(x, diag[i]) for x in cols_t[i])
        lifts.append(lift)
        q = sum(
            a * b * g[r][c]
            for r, a in enumerate(lift)
            for c, b in enumerate(lift)
            if g[r][c]
        )
        q_values.append(_q_mod2(Fraction(q)))
    order = 1
    for x in diag:
        order *= x
    assert order == abs(linalg.det(g))
    return DiscGroup(tuple(divisors), tuple(lifts), tuple(q_values), order)


def dual_pairing_is_integral(lattice: Lattice, lift) -> bool:
    """Does a rational vector pair integrally with the whole lattice?"""
    gy = [sum(Fraction(gr) * x for gr, x in zip(row, lift))
          for row in lattice.gram]
    return all(v.denominator == 1 for v in gy)


def vector_divisibility(lattice: Lattice, x: Vec) -> int:
    """div(x) = positive generator of the ideal (x, L)."""
    return linalg.xgcd_vector(linalg.mat_vec(lattice.gram, x))[0]


def pairing_one_witness(lattice: Lattice, x: Vec) -> Vec:
    """Some mu with (x, mu) = 1; requires div(x) = 1."""
    g, combo = linalg.xgcd_vector(linalg.mat_vec(lattice.gram, x))
    if g != 1:
        raise LatticeError(f"vector has divisibility {g}, not 1")
    return combo
