"""The stabilizer of the Hilbert-scheme Mukai vector v = (1, 0, -m).

The orthogonal complement v-perp is K3 + <-2m> with w = (1, 0, m) spanning
the <-2m> summand; its discriminant group is cyclic of order 2m with
q(w/2m) = -1/2m mod 2.  The stabilizer Gamma_v of v in the full isometry
group is the kernel of O(v-perp) -> O(disc), and it is generated by O(K3)
(extended by the identity) together with reflections in -2 vectors
(1, -L, m) with L primitive of square 2m - 2.  This module carries the
constructive content: orbit classification of -2 vectors, witnesses for the
two orbits, pairs of classes satisfying the Sym3 relations, samplers for the
generator families, and the factorization of an arbitrary element of
Gamma_v into those generators.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .characters import default_reference, orientation_char, reflection
from .embeddings import DEFAULT_RADIUS, embed_rank2
from .lattices import (
    Block,
    Isometry,
    Lattice,
    LatticeError,
    discriminant_group,
    is_primitive,
    k3_lattice,
    mukai_lattice,
    primitive_part,
)
from .mukai import MukaiVector, mukai_pairing


class NotInGammaV(LatticeError):
    pass


@dataclass(frozen=True)
class DiscForm:
    """The finite quadratic form on Z/2m with q(k) = -k^2/2m mod 2."""

    modulus: int  # 2m

    def q(self, k: int) -> Fraction:
        value = Fraction(-(k * k), self.modulus)
        return value - 2 * (value / 2).__floor__()

    def values(self):
        return tuple(self.q(k) for k in range(self.modulus))


@dataclass(frozen=True)
class VPerpModel:
    """v-perp for v = (1, 0, -m): basis = 22 K3 vectors plus w = (1, 0, m)."""

    m: int
    mukai: Lattice
    k3: Lattice
    lattice: Lattice  # rank 23, Gram K3 + <-2m>
    disc: DiscForm

    @property
    def v(self) -> MukaiVector:
        return MukaiVector(1, linalg.zero_vec(self.k3.rank), -self.m)

    @property
    def w(self) -> MukaiVector:
        return MukaiVector(1, linalg.zero_vec(self.k3.rank), self.m)

    def to_perp_coords(self, x: MukaiVector):
        """Coordinates of x in the basis [K3 basis..., w]; x must lie in v-perp."""
        if x.s != x.r * self.m:
            raise LatticeError("vector is not orthogonal to v")
        return x.c + (x.r,)

    def from_perp_coords(self, coords) -> MukaiVector:
        coords = tuple(coords)
        r = coords[-1]
        return MukaiVector(r, coords[:-1], r * self.m)

    def restrict(self, g: Isometry) -> Isometry:
        """Restriction to v-perp of a Mukai-lattice isometry fixing v."""
        if g.lattice.gram != self.mukai.gram:
            raise LatticeError("expected an isometry of the Mukai lattice")
        if not g.fixes(self.v.coords()):
            raise NotInGammaV("isometry does not fix v")
        cols = []
        n = self.lattice.rank
        for j in range(n):
            basis = self.from_perp_coords(
                tuple(1 if i == j else 0 for i in range(n))
            )
            image = MukaiVector.from_coords(g.apply(basis.coords()))
            cols.append(self.to_perp_coords(image))
        return Isometry(self.lattice, linalg.transpose(linalg.freeze(cols)))

    def extend_k3(self, h: Isometry) -> Isometry:
        """Extend an isometry of the K3 block by the identity on h0, h4."""
        if h.lattice.gram != self.k3.gram:
            raise LatticeError("expected an isometry of the K3 lattice")
        n = self.mukai.rank
        k = self.k3.rank
        rows = []
        for i in range(n):
            row = [0] * n
            if i < k:
                row[:k] = h.matrix[i]
            else:
                row[i] = 1
            rows.append(tuple(row))
        return Isometry(self.mukai, linalg.freeze(rows))


def vperp_model(m: int) -> VPerpModel:
    if m < 1:
        raise LatticeError("m must be a positive integer")
    mukai = mukai_lattice()
    k3 = k3_lattice()
    n = k3.rank + 1
    gram = [[0] * n for _ in range(n)]
    for i in range(k3.rank):
        for j in range(k3.rank):
            gram[i][j] = k3.gram[i][j]
    gram[n - 1][n - 1] = -2 * m
    blocks = k3.blocks + (Block(f"W{-2*m}", k3.rank, 1),)
    labels = k3.basis_labels + ("w",)
    lattice = Lattice(linalg.freeze(gram), labels, blocks, name=f"vperp(m={m})")
    model = VPerpModel(m, mukai, k3, lattice, DiscForm(2 * m))

    # cross-checks: the discriminant group is cyclic of order 2m and the
    # canonical generator w/2m has q = -1/2m mod 2
    dg = discriminant_group(lattice)
    assert dg.divisors == (2 * m,) and dg.order == 2 * m
    q_w = model.disc.q(1)
    lift = tuple(Fraction(0) if i < k3.rank else Fraction(1, 2 * m)
                 for i in range(n))
    q_direct = sum(
        a * Fraction(gram[r][c]) * b
        for r, a in enumerate(lift) for c, b in enumerate(lift) if gram[r][c]
    )
    assert (q_direct - q_w) % 2 == 0
    return model


def disc_action(model: VPerpModel, g: Isometry) -> int:
    """The induced action on (v-perp)*/v-perp = Z/2m, as a unit u mod 2m.

    g(w)/2m must be congruent to u * w/2m, i.e. the K3-block part of g(w)
    must vanish mod 2m; this holds for every isometry of v-perp.
    """
    if g.lattice.gram != model.lattice.gram:
        raise LatticeError("expected an isometry of v-perp")
    n = model.lattice.rank
    gw = tuple(g.matrix[i][n - 1] for i in range(n))
    two_m = 2 * model.m
    assert all(x % two_m == 0 for x in gw[:-1]), \
        "induced map on the discriminant is not multiplication by a unit"
    u = gw[-1] % two_m
    assert (u * u - 1) % (2 * two_m) == 0, "q is not preserved"
    return u


class ExtensionKind(enum.Enum):
    IN_GAMMA_V = "InGammaV"
    EXTENDS_SENDING_V_TO_MINUS_V = "ExtendsSendingVToMinusV"
    DOES_NOT_EXTEND = "DoesNotExtend"


def in_gamma_v(model: VPerpModel, g: Isometry) -> ExtensionKind:
    """Nikulin's criterion: an isometry of v-perp extends to the Mukai
    lattice iff it acts on the discriminant by +-1; the kernel is Gamma_v."""
    u = disc_action(model, g)
    two_m = 2 * model.m
    if u % two_m == 1 % two_m:
        return ExtensionKind.IN_GAMMA_V
    if u % two_m == (two_m - 1) % two_m:
        return ExtensionKind.EXTENDS_SENDING_V_TO_MINUS_V
    return ExtensionKind.DOES_NOT_EXTEND


def w_membership(model: VPerpModel, g: Isometry) -> bool:
    """Membership in the reflection group W(v-perp): orientation preserving
    and acting by +-1 on the discriminant group."""
    if orientation_char(default_reference(model.lattice), g) != 0:
        return False
    return in_gamma_v(model, g) is not ExtensionKind.DOES_NOT_EXTEND


class Minus2Orbit(enum.Enum):
    A_PLUS = "APlus"
    A_MINUS = "AMinus"


def classify_minus2(model: VPerpModel, v0: MukaiVector) -> Minus2Orbit:
    """The two O(v-perp)-orbits of -2 vectors (r, L, rm) in v-perp are told
    apart by 2-divisibility of L."""
    if mukai_pairing(v0, v0, model.k3) != -2:
        raise LatticeError("not a -2 vector")
    if v0.s != v0.r * model.m:
        raise LatticeError("vector is not orthogonal to v")
    if all(x % 2 == 0 for x in v0.c):
        return Minus2Orbit.A_PLUS
    return Minus2Orbit.A_MINUS


def aplus_witness(m: int, k3: Lattice | None = None) -> MukaiVector | None:
    """(1, 2 L0, m) with L0 = e + ((m-1)/4) f when m = 1 mod 4; else None
    (the orbit A_+ is empty in that case)."""
    if m % 4 != 1:
        return None
    k3 = k3 or k3_lattice()
    block = k3.blocks_named("U")[0]
    c = [0] * k3.rank
    c[block.start] = 2
    c[block.start + 1] = 2 * ((m - 1) // 4)
    v0 = MukaiVector(1, tuple(c), m)
    assert mukai_pairing(v0, v0, k3) == -2
    return v0


# -- pairs of classes and the Sym3 relations ----------------------------------


def pair_witness_split(m: int, l0, r: int, k3: Lattice | None = None,
                       radius: int = DEFAULT_RADIUS):
    """Split L0 (square 2 r^2 m - 2, r >= 2 even) as L1 + L2 with both
    primitive, L_i^2 = 2 (r/2)^2 m - 2 and L1.L2 = 1 + 2 (r/2)^2 m."""
    k3 = k3 or k3_lattice()
    l0 = tuple(l0)
    if r < 2 or r % 2:
        raise LatticeError("rank r must be even and at least 2")
    if k3.square(l0) != 2 * r * r * m - 2:
        raise LatticeError("L0 must have square 2 r^2 m - 2")
    i, l0_prim = primitive_part(l0)
    d = (r * r * m - 1) // (i * i)
    assert d * i * i == r * r * m - 1
    l1 = embed_rank2(k3, l0_prim, (2 * d, i * d, (r * r * m - 4) // 2),
                     radius=radius)
    l2 = linalg.vec_sub(l0, l1)
    _check_pair_conditions(k3, m, l1, l2, r // 2, r // 2)
    assert is_primitive(k3, l1) and is_primitive(k3, l2)
    return l1, l2


def pair_witness_extend(m: int, l1, a: int, k3: Lattice | None = None,
                        radius: int = DEFAULT_RADIUS):
    """L2 primitive with L2^2 = 2m - 2 and L1.L2 = 1 + 2am, given L1
    primitive of square 2 a^2 m - 2."""
    k3 = k3 or k3_lattice()
    l1 = tuple(l1)
    if a < 1:
        raise LatticeError("rank a must be at least 1")
    if not is_primitive(k3, l1):
        raise LatticeError("L1 must be primitive")
    if k3.square(l1) != 2 * a * a * m - 2:
        raise LatticeError("L1 must have square 2 a^2 m - 2")
    l2 = embed_rank2(k3, l1, (2 * a * a * m - 2, 1 + 2 * a * m, 2 * m - 2),
                     radius=radius)
    _check_pair_conditions(k3, m, l1, l2, a, 1)
    assert is_primitive(k3, l2)
    return l2


def _check_pair_conditions(k3: Lattice, m: int, l1, l2, a: int, b: int):
    if k3.square(l1) != 2 * a * a * m - 2:
        raise LatticeError("L1 square condition fails")
    if k3.square(l2) != 2 * b * b * m - 2:
        raise LatticeError("L2 square condition fails")
    if k3.pair(l1, l2) != 1 + 2 * a * b * m:
        raise LatticeError("L1.L2 condition fails")


def sym3_triple(m: int, v1: MukaiVector, v2: MukaiVector,
                k3: Lattice | None = None) -> dict:
    """Verify the Sym3 relations for v1 = (a, -L1, am), v2 = (b, -L2, bm)
    satisfying the pair conditions: v0 = v1 + v2 is a -2 vector and
    tau_{v0} = tau_{v1} tau_{v2} tau_{v1} = tau_{v2} tau_{v1} tau_{v2},
    with <tau_{v1}, tau_{v2}> of order 6."""
    k3 = k3 or k3_lattice()
    mukai = mukai_lattice()
    a, b = v1.r, v2.r
    if v1.s != a * m or v2.s != b * m:
        raise LatticeError("v1, v2 must have the shape (a, -L, am)")
    _check_pair_conditions(k3, m, linalg.vec_neg(v1.c), linalg.vec_neg(v2.c),
                           a, b)
    if mukai_pairing(v1, v2, k3) != 1:
        raise LatticeError("(v1, v2) must be 1")
    v0 = v1 + v2
    checks = {}
    checks["v0_is_minus2"] = mukai_pairing(v0, v0, k3) == -2
    t0 = reflection(mukai, v0.coords())
    t1 = reflection(mukai, v1.coords())
    t2 = reflection(mukai, v2.coords())
    checks["tau0_eq_121"] = (t1 @ t2 @ t1).matrix == t0.matrix
    checks["tau0_eq_212"] = (t2 @ t1 @ t2).matrix == t0.matrix
    # group closure: {1, t1, t2, t1t2, t2t1, t1t2t1} with (t1 t2)^3 = 1
    t12 = t1 @ t2
    checks["order_six"] = (
        (t12 @ t12 @ t12).is_identity()
        and not t12.is_identity()
        and not (t12 @ t12).is_identity()
    )
    elements = {
        Isometry.identity(mukai).matrix, t1.matrix, t2.matrix,
        t12.matrix, (t2 @ t1).matrix, (t1 @ t2 @ t1).matrix,
    }
    checks["six_elements"] = len(elements) == 6
    checks["all"] = all(checks.values())
    return checks


# -- generator families and factorization -------------------------------------


@dataclass(frozen=True)
class Gamma0Letter:
    """An isometry of the K3 block, extended by the identity on h0, h4."""

    k3_matrix: linalg.Mat

    def to_isometry(self, model: VPerpModel) -> Isometry:
        return model.extend_k3(Isometry(model.k3, self.k3_matrix))


@dataclass(frozen=True)
class TauLetter:
    """The reflection in a -2 vector of v-perp."""

    v0: MukaiVector

    def to_isometry(self, model: VPerpModel) -> Isometry:
        return reflection(model.mukai, self.v0.coords())


Letter = Gamma0Letter | TauLetter


@dataclass(frozen=True)
class GeneratorWord:
    """A word in the Gamma_v generators; the product (in list order) is the
    isometry the word factors."""

    model: VPerpModel
    letters: tuple[Letter, ...]

    def __post_init__(self):
        for letter in self.letters:
            if isinstance(letter, TauLetter):
                v0 = letter.v0
                if mukai_pairing(v0, v0, self.model.k3) != -2:
                    raise LatticeError("tau letter class must have square -2")
                if v0.s != v0.r * self.model.m:
                    raise LatticeError("tau letter class must lie in v-perp")
            else:
                from .lattices import check_isometry

                if not check_isometry(self.model.k3,
                                      letter.k3_matrix).is_isometry:
                    raise LatticeError(
                        "gamma0 letter must be an isometry of the K3 block"
                    )

    def product(self) -> Isometry:
        out = Isometry.identity(self.model.mukai)
        for letter in self.letters:
            out = out @ letter.to_isometry(self.model)
        return out

    def tau_ranks(self):
        return tuple(l.v0.r for l in self.letters
                     if isinstance(l, TauLetter))


def _canonical_tau_class(model: VPerpModel) -> tuple:
    """L = e + (m-1) f in the first hyperbolic block: primitive, square 2m-2."""
    k3 = model.k3
    block = k3.blocks_named("U")[0]
    c = [0] * k3.rank
    c[block.start] = 1
    c[block.start + 1] = model.m - 1
    return tuple(c)


class GeneratorFamily:
    """Samplers for the two generator families of Gamma_v:

    (i) reflections rho_u in +-2 vectors u of the K3 block, extended by the
        identity (these generate the isometries fixing both v and w), and
    (ii) reflections tau in -2 vectors (1, -L, m), L primitive of square
        2m - 2 (canonical witness L = e + (m-1) f).
    """

    def __init__(self, model: VPerpModel):
        self.model = model
        self.k3 = model.k3

    def describe(self) -> dict:
        return {
            "gamma0": "reflections in +-2 vectors of the K3 block, "
                      "extended by the identity on h0, h4",
            "tau": "reflections in (1, -L, m) with L primitive, L^2 = 2m-2",
            "canonical_tau_class": list(_canonical_tau_class(self.model)),
        }

    def sample_pm2_vector(self, rng: random.Random) -> tuple:
        """A random +-2 vector in the K3 lattice (structured pool)."""
        k3 = self.k3
        n = k3.rank
        u_blocks = k3.blocks_named("U")
        e8_blocks = k3.blocks_named("E8_minus")
        kind = rng.randrange(4)
        v = [0] * n
        if kind == 0:  # in-plane root: e - f (-2) or e + f (+2)
            b = rng.choice(u_blocks)
            v[b.start] = 1
            v[b.start + 1] = rng.choice((1, -1))
        elif kind == 1:  # E8 basis root (-2)
            b = rng.choice(e8_blocks)
            v[b.start + rng.randrange(8)] = rng.choice((1, -1))
        elif kind == 2:  # cross-plane: e1 + k f1 + e2 + l f2 with k + l = +-1
            b1, b2 = rng.sample(list(u_blocks), 2)
            k = rng.randint(-3, 3)
            target = rng.choice((1, -1))
            v[b1.start] = 1
            v[b1.start + 1] = k
            v[b2.start] = 1
            v[b2.start + 1] = target - k
        else:  # E8 root plus isotropic or hyperbolic correction
            b = rng.choice(e8_blocks)
            ub = rng.choice(u_blocks)
            v[b.start + rng.randrange(8)] = rng.choice((1, -1))
            k = rng.choice((0, 2))  # square -2 + 2k in {-2, +2}
            v[ub.start] = 1
            v[ub.start + 1] = k
        vec = tuple(v)
        assert k3.square(vec) in (2, -2)
        return vec

    def gamma0_letter(self, rng: random.Random) -> Gamma0Letter:
        # true reflections: tau_u for -2 (cov 0), sigma_u for +2 (cov 1);
        # together they realize both nontrivial character pairs (-1, 0/1)
        from .characters import general_reflection

        u = self.sample_pm2_vector(rng)
        return Gamma0Letter(general_reflection(self.k3, u).matrix)

    def tau_letter(self, rng: random.Random, twists: int = 2) -> TauLetter:
        """tau_{(1, -L, m)} with L a random Gamma_0-image of the canonical
        class; keeps L primitive with square 2m - 2."""
        cls = _canonical_tau_class(self.model)
        for _ in range(rng.randrange(twists + 1)):
            u = self.sample_pm2_vector(rng)
            cls = reflection(self.k3, u).apply(cls)
        v0 = MukaiVector(1, linalg.vec_neg(cls), self.model.m)
        assert mukai_pairing(v0, v0, self.k3) == -2
        assert mukai_pairing(v0, self.model.v, self.k3) == 0
        return TauLetter(v0)

    def letter(self, rng: random.Random) -> Letter:
        return self.gamma0_letter(rng) if rng.random() < 0.5 \
            else self.tau_letter(rng)

    def sample_word(self, rng: random.Random, length: int) -> GeneratorWord:
        letters = tuple(self.letter(rng) for _ in range(length))
        word = GeneratorWord(self.model, letters)
        assert word.product().fixes(self.model.v.coords())
        return word


def generator_family(m: int) -> GeneratorFamily:
    return GeneratorFamily(vperp_model(m))


def _tau_apply(model: VPerpModel, v0: MukaiVector, x: MukaiVector) -> MukaiVector:
    """tau_{v0}(x) = x + (v0, x) v0, computed vector-wise."""
    return x + v0.scale(mukai_pairing(v0, x, model.k3))


def factor(model: VPerpModel, g: Isometry, normalize: bool = False,
           radius: int = DEFAULT_RADIUS) -> GeneratorWord:
    """Factor g in Gamma_v into Gamma_0 and tau letters.

    Follows the reduction of the generation results for Gamma_v: track
    x = g(w); a first reflection makes the class part of x equal to 2m L
    with L primitive (c = 1), a second drives the invariant rho = (r-1)/2m
    to -1, and a third sends x back to w, leaving an isometry that fixes
    both v and w, i.e. a Gamma_0 letter.  With normalize=True, every tau
    letter of rank a with |a| >= 2 is rewritten into rank-one letters
    through the Sym3 relations.
    """
    m = model.m
    two_m = 2 * m
    if g.lattice.gram != model.mukai.gram:
        raise NotInGammaV("expected an isometry of the Mukai lattice")
    if not g.fixes(model.v.coords()):
        raise NotInGammaV("isometry does not fix v")

    w = model.w
    taus: list[MukaiVector] = []
    x = MukaiVector.from_coords(g.apply(w.coords()))
    for _ in range(8):
        if x == w:
            break
        if x == -w:
            # forces m = 1; reflect in (1, L, 1) with L primitive isotropic
            assert m == 1
            block = model.k3.blocks_named("U")[0]
            iso = [0] * model.k3.rank
            iso[block.start] = 1
            v0 = MukaiVector(1, tuple(iso), 1)
            taus.append(v0)
            x = _tau_apply(model, v0, x)
            continue
        r = x.r
        assert x.s == r * m
        assert (r - 1) % two_m == 0, "not in the kernel of the disc action"
        rho = (r - 1) // two_m
        assert all(ci % two_m == 0 for ci in x.c)
        c2m = tuple(ci // two_m for ci in x.c)
        c, l = primitive_part(c2m)
        assert c * c * model.k3.square(l) == 2 * rho + 2 * m * rho * rho
        if c != 1:
            # drive the content of the class part to 1: pick bc - ar = 1
            # with minimal |a| and reflect in u = (a, A, am), A.L = b
            g_, r_inv, _ = linalg.xgcd(r % c, c)
            assert g_ == 1
            a = (-r_inv) % c
            if a > c - a:
                a -= c
            b = (1 + a * r) // c
            assert b * c - a * r == 1 and a != 0
            l_sq = model.k3.square(l)
            a_vec = embed_rank2(model.k3, l, (l_sq, b, 2 * a * a * m - 2),
                                radius=radius)
            u = MukaiVector(a, a_vec, a * m)
            assert mukai_pairing(u, u, model.k3) == -2
            taus.append(u)
            x = _tau_apply(model, u, x)
            continue
        if rho == -1:
            v0 = MukaiVector(-1, c2m, -m)
            assert mukai_pairing(v0, v0, model.k3) == -2
            taus.append(v0)
            x = _tau_apply(model, v0, x)
            assert x == w
            continue
        # c = 1, rho != -1: drive rho to -1 with u = (1, A, m),
        # A.L = 2m rho - rho, A^2 = 2m - 2
        l_sq = model.k3.square(l)
        a_vec = embed_rank2(model.k3, l, (l_sq, two_m * rho - rho, two_m - 2),
                            radius=radius)
        u = MukaiVector(1, a_vec, m)
        assert mukai_pairing(u, u, model.k3) == -2
        taus.append(u)
        x = _tau_apply(model, u, x)
    else:
        raise AssertionError("factor loop did not terminate")

    # residual = tau_N ... tau_1 g fixes v and w: a Gamma_0 letter
    residual = g
    for v0 in taus:
        residual = reflection(model.mukai, v0.coords()) @ residual
    assert residual.fixes(model.v.coords())
    assert residual.fixes(w.coords())
    k = model.k3.rank
    h = linalg.freeze(tuple(residual.matrix[i][:k] for i in range(k)))
    letters: list[Letter] = [TauLetter(v0) for v0 in taus]
    if h != linalg.identity(k):
        letters.append(Gamma0Letter(h))

    word = GeneratorWord(model, tuple(letters))
    if normalize:
        word = normalize_word(word, radius=radius)
    assert word.product().matrix == g.matrix
    return word


def normalize_word(word: GeneratorWord, radius: int = DEFAULT_RADIUS
                   ) -> GeneratorWord:
    """Rewrite every tau letter into the form (1, -L, m), L primitive, by
    the Sym3 relations; rank-0 letters become Gamma_0 letters."""
    model = word.model
    out: list[Letter] = []
    for letter in word.letters:
        if isinstance(letter, Gamma0Letter):
            out.append(letter)
        else:
            out.extend(_normalize_tau(model, letter.v0, radius))
    return GeneratorWord(model, tuple(out))


def _normalize_tau(model: VPerpModel, v0: MukaiVector,
                   radius: int) -> list[Letter]:
    m = model.m
    if v0.r < 0:
        v0 = -v0  # tau_{v0} = tau_{-v0}
    r = v0.r
    if r == 0:
        # (0, A, 0) with A^2 = -2: a K3 reflection extended by the identity
        return [Gamma0Letter(reflection(model.k3, v0.c).matrix)]
    if r == 1:
        if is_primitive(model.k3, linalg.vec_neg(v0.c)):
            return [TauLetter(v0)]
        # an imprimitive class part at rank one: refactor the reflection
        inner = factor(model, reflection(model.mukai, v0.coords()),
                       normalize=False, radius=radius)
        out: list[Letter] = []
        for letter in inner.letters:
            if isinstance(letter, Gamma0Letter):
                out.append(letter)
            else:
                out.extend(_normalize_tau(model, letter.v0, radius))
        return out
    l0 = linalg.vec_neg(v0.c)
    if r % 2 == 0:
        l1, l2 = pair_witness_split(m, l0, r, model.k3, radius=radius)
        v1 = MukaiVector(r // 2, linalg.vec_neg(l1), (r // 2) * m)
        v2 = MukaiVector(r // 2, linalg.vec_neg(l2), (r // 2) * m)
        assert v1 + v2 == v0
        assert mukai_pairing(v1, v2, model.k3) == 1
        # tau_{v0} = tau_{v1} tau_{v2} tau_{v1}
        middle = _normalize_tau(model, v2, radius)
        side = _normalize_tau(model, v1, radius)
        return side + middle + side
    # odd rank >= 3 with primitive L0: extend to even rank r + 1
    assert is_primitive(model.k3, l0)
    l2 = pair_witness_extend(m, l0, r, model.k3, radius=radius)
    v2 = MukaiVector(1, linalg.vec_neg(l2), m)
    w0 = v0 + v2
    assert mukai_pairing(v0, v2, model.k3) == 1
    assert mukai_pairing(w0, w0, model.k3) == -2
    # tau_{v0} = tau_{v2} tau_{w0} tau_{v2}
    side = [TauLetter(v2)]
    return side + _normalize_tau(model, w0, radius) + side


# -- the discriminant isometry count ------------------------------------------


def distinct_prime_count(m: int) -> int:
    count = 0
    p = 2
    while p * p <= m:
        if m % p == 0:
            count += 1
            while m % p == 0:
                m //= p
        p += 1
    return count + (1 if m > 1 else 0)


def disc_group_order(m: int) -> dict:
    """|O(disc)| by brute force: #{u in (Z/2m)^x : u^2 = 1 mod 4m}.

    The count equals 2^rho with rho the number of distinct primes of m, and
    it is the index of Gamma_v in O(v-perp)."""
    if m < 1:
        raise LatticeError("m must be a positive integer")
    two_m = 2 * m
    four_m = 4 * m
    from math import gcd
    order = sum(
        1 for u in range(1, two_m + 1)
        if gcd(u, two_m) == 1 and (u * u - 1) % four_m == 0
    )
    rho = distinct_prime_count(m)
    assert order == 2 ** rho
    return {"order": order, "rho": rho, "index_O_vperp_over_GammaV": order}


def nontrivial_disc_isometry(model: VPerpModel, rng: random.Random,
                             attempts: int = 200) -> Isometry | None:
    """An isometry of v-perp whose disc action is not +-1 (exists iff m is
    not a prime power, by the surjectivity of O(v-perp) -> O(disc)).

    Candidates are general reflections in vectors x = a(e + t f) + j w of
    negative even square; products of those and of restricted Gamma_v words
    sweep the unit group until a unit outside {+-1} appears."""
    from .characters import ReflectionError, general_reflection
    lat = model.lattice
    m = model.m
    two_m = 2 * m
    n = lat.rank
    trivial = {1 % two_m, (two_m - 1) % two_m}
    block = model.k3.blocks_named("U")[0]
    candidates = []
    for a in range(1, 5):
        for t in range(-6, 7):
            for j in (1, 2):
                x = [0] * n
                x[block.start] = a
                x[block.start + 1] = a * t
                x[n - 1] = j
                x = tuple(x)
                if lat.square(x) >= 0:
                    continue
                try:
                    cand = general_reflection(lat, x)
                except ReflectionError:
                    continue
                if disc_action(model, cand) not in trivial:
                    candidates.append(cand)
    if candidates:
        return candidates[0]
    # randomized products as a fallback sweep
    family = GeneratorFamily(model)
    pool = []
    for a in range(1, 4):
        for t in range(-4, 5):
            x = [0] * n
            x[block.start] = a
            x[block.start + 1] = a * t
            x[n - 1] = 1
            x = tuple(x)
            if lat.square(x) < 0:
                try:
                    pool.append(general_reflection(lat, x))
                except ReflectionError:
                    pass
    for _ in range(attempts):
        g = Isometry.identity(lat)
        for cand in pool:
            if rng.random() < 0.5:
                g = g @ cand
        word = family.sample_word(rng, rng.randrange(3))
        g = g @ model.restrict(word.product())
        if disc_action(model, g) not in trivial:
            return g
    return None
