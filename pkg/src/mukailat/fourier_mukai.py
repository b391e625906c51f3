"""Lattice shadows of derived-category equivalences.

Only the induced isometries of the Mukai lattice are modeled: the shift
(-id), spherical reflections tau_{v0}(x) = x + (v0, x) v0 in -2 classes,
the +2 reflection sigma_{u0}(x) = x - (x, u0) u0, the elliptic-fibration
isometry phi with its printed 4x4 matrix on span{(1,0,0), sigma, f,
(0,0,1)} and -1 on the complement, and the weight-2 monodromy twist
g -> (-1)^cov(g) g restricted to v-perp.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from . import linalg
from .characters import (
    covariance,
    default_reference,
    general_reflection,
    orientation_char,
    reflection,
)
from .lattices import (
    Isometry,
    Lattice,
    LatticeError,
    check_isometry,
    mukai_lattice,
    orthogonal_complement,
)
from .mukai import MukaiVector, dualize, mukai_pairing
from .stabilizer import VPerpModel


class FMTag(enum.Enum):
    SHIFT = "Shift"
    SPHERICAL = "Spherical"
    SIGMA_U0 = "SigmaU0"
    ELLIPTIC_PHI = "EllipticPhi"
    COMPOSITE = "Composite"


@dataclass(frozen=True)
class FMIsometry:
    isometry: Isometry
    tag: FMTag
    spherical_class: MukaiVector | None = None

    def __post_init__(self):
        if not check_isometry(self.isometry.lattice,
                              self.isometry.matrix).is_isometry:
            raise LatticeError("underlying matrix is not an isometry")

    def compose(self, other: "FMIsometry") -> "FMIsometry":
        return FMIsometry(self.isometry @ other.isometry, FMTag.COMPOSITE)

    def __matmul__(self, other: "FMIsometry") -> "FMIsometry":
        return self.compose(other)

    def apply(self, v: MukaiVector) -> MukaiVector:
        return MukaiVector.from_coords(self.isometry.apply(v.coords()))


def spherical_reflection(v0: MukaiVector) -> FMIsometry:
    """tau_{v0}: w -> w + (v0, w) v0, the lattice shadow of the reflection
    functor of a spherical object with Mukai vector v0."""
    mukai = mukai_lattice()
    if mukai_pairing(v0, v0) != -2:
        raise LatticeError("a spherical class must have square -2")
    return FMIsometry(reflection(mukai, v0.coords()), FMTag.SPHERICAL, v0)


def shift_isometry() -> FMIsometry:
    """The shift auto-equivalence corresponds to -id; cov(-id) = 0."""
    mukai = mukai_lattice()
    return FMIsometry(Isometry.identity(mukai).negate(), FMTag.SHIFT)


def duality_isometry() -> Isometry:
    """D: (r, c, s) -> (r, -c, s), minus one on the K3 block."""
    mukai = mukai_lattice()
    n = mukai.rank
    k = n - 2
    rows = [
        tuple((-1 if i == j and i < k else (1 if i == j else 0))
              for j in range(n))
        for i in range(n)
    ]
    return Isometry(mukai, linalg.freeze(rows))


def sigma_u0_isometry() -> FMIsometry:
    """sigma_{u0}(w) = w - (w, u0) u0 for the +2 vector u0 = (1, 0, -1)."""
    mukai = mukai_lattice()
    u0 = MukaiVector(1, linalg.zero_vec(mukai.rank - 2), -1)
    return FMIsometry(general_reflection(mukai, u0.coords()), FMTag.SIGMA_U0)


def verify_sigma_tau_duality() -> dict:
    """The +2 and -2 reflections in u0 = (1,0,-1), v0 = (1,0,1) commute and
    -(sigma_{u0} o tau_{v0}) = D as a 24x24 matrix identity."""
    mukai = mukai_lattice()
    k = mukai.rank - 2
    u0 = MukaiVector(1, linalg.zero_vec(k), -1)
    v0 = MukaiVector(1, linalg.zero_vec(k), 1)
    sigma = sigma_u0_isometry().isometry
    tau = spherical_reflection(v0).isometry
    d = duality_isometry()
    checks = {}
    checks["u0_square_plus2"] = mukai_pairing(u0, u0) == 2
    checks["v0_square_minus2"] = mukai_pairing(v0, v0) == -2
    checks["commute"] = (sigma @ tau).matrix == (tau @ sigma).matrix
    checks["minus_sigma_tau_equals_D"] = \
        linalg.mat_neg((sigma @ tau).matrix) == d.matrix
    # spot checks on (1,0,0) and a degree-2 class
    e = MukaiVector(1, linalg.zero_vec(k), 0)
    via = MukaiVector.from_coords(
        linalg.vec_neg((sigma @ tau).apply(e.coords()))
    )
    checks["spot_100"] = via == dualize(e)
    sample_c = tuple(1 if i < 2 else 0 for i in range(k))
    x = MukaiVector(0, sample_c, 0)
    via_x = MukaiVector.from_coords(
        linalg.vec_neg((sigma @ tau).apply(x.coords()))
    )
    checks["spot_c"] = via_x == dualize(x)
    checks["all"] = all(checks.values())
    return checks


# -- the elliptic-fibration isometry ------------------------------------------

# Columns are images of the basis {(1,0,0), sigma, f, (0,0,1)}.
PHI_LAMBDA_MATRIX = (
    (0, -1, 0, 0),
    (1, 0, 0, 0),
    (1, -1, 0, -1),
    (1, -1, 1, 0),
)


def _section_and_fiber(mukai: Lattice):
    """Designated section/fiber classes: f = e3 (isotropic) and sigma =
    f3 - e3 (square -2, sigma.f = 1) in the third hyperbolic block."""
    ublocks = mukai.blocks_named("U")
    b = ublocks[2]
    n = mukai.rank
    f = tuple(1 if i == b.start else 0 for i in range(n))
    sigma = tuple(
        1 if i == b.start + 1 else (-1 if i == b.start else 0)
        for i in range(n)
    )
    return sigma, f


def elliptic_phi(n: int) -> tuple[FMIsometry, dict]:
    """The isometry phi acting by the printed matrix on Lambda =
    span{(1,0,0), sigma, f, (0,0,1)} and by -1 on its complement, plus the
    n-dependent verification identities."""
    if n < 2:
        raise LatticeError("n must be at least 2")
    mukai = mukai_lattice()
    rank = mukai.rank
    k = rank - 2
    sigma, f = _section_and_fiber(mukai)
    e1 = MukaiVector(1, linalg.zero_vec(k), 0).coords()
    e2 = MukaiVector(0, linalg.zero_vec(k), 1).coords()
    lam_basis = (e1, sigma, f, e2)

    checks = {}
    checks["sigma_sq"] = mukai.square(sigma) == -2
    checks["f_isotropic"] = mukai.square(f) == 0
    checks["sigma_dot_f"] = mukai.pair(sigma, f) == 1
    if not all(checks.values()):
        raise LatticeError("designated sigma, f classes are invalid")

    gram_lambda = linalg.freeze(
        [[mukai.pair(a, b) for b in lam_basis] for a in lam_basis]
    )
    phi_l = linalg.freeze(PHI_LAMBDA_MATRIX)
    checks["phi_preserves_gram_lambda"] = (
        linalg.mat_mul(linalg.mat_mul(linalg.transpose(phi_l), gram_lambda),
                       phi_l) == gram_lambda
    )

    perp_basis, _ = orthogonal_complement(mukai, lam_basis)
    assert len(perp_basis) == rank - 4
    basis_change = linalg.transpose(
        linalg.freeze(list(lam_basis) + list(perp_basis))
    )
    assert abs(linalg.det(basis_change)) == 1, \
        "Lambda + Lambda-perp must be all of the Mukai lattice"
    block = [[0] * rank for _ in range(rank)]
    for i in range(4):
        for j in range(4):
            block[i][j] = phi_l[i][j]
    for i in range(4, rank):
        block[i][i] = -1
    inv = linalg.mat_inv_int(basis_change)
    phi_matrix = linalg.mat_mul(
        linalg.mat_mul(basis_change, linalg.freeze(block)), inv
    )
    phi = Isometry.checked(mukai, phi_matrix)

    # phi(1, 0, 1-n) = (0, sigma + n f, 1)
    src = MukaiVector(1, linalg.zero_vec(k), 1 - n)
    sigma_c = sigma[:k]
    f_c = f[:k]
    target = MukaiVector(
        0, linalg.vec_add(sigma_c, linalg.vec_scale(n, f_c)), 1
    )
    checks["phi_of_ideal_class"] = \
        phi.apply(src.coords()) == target.coords()

    # beta orthogonal to sigma, f with beta^2 = 2n - 4, in another plane
    beta = _beta_class(mukai, n)
    checks["beta_valid"] = (
        mukai.square(beta) == 2 * n - 4
        and mukai.pair(beta, sigma) == 0
        and mukai.pair(beta, f) == 0
    )
    v0 = MukaiVector(1, linalg.vec_sub(beta[:k], f_c), n - 1)
    checks["v0_square"] = mukai_pairing(v0, v0) == -2
    alpha = linalg.vec_sub(
        linalg.vec_add(sigma_c, linalg.vec_scale(2 - n, f_c)), beta[:k]
    )
    alpha_class = MukaiVector(0, alpha, 0)
    checks["phi_of_v0"] = \
        phi.apply(v0.coords()) == alpha_class.coords()
    checks["alpha_square"] = mukai_pairing(alpha_class, alpha_class) == -2

    # conjugation: phi tau_{v0} phi^{-1} = tau_{(0, alpha, 0)}
    g = reflection(mukai, v0.coords())
    rho = reflection(mukai, alpha_class.coords())
    checks["conjugation"] = \
        (phi @ g @ phi.inverse()).matrix == rho.matrix
    checks["all"] = all(checks.values())
    return FMIsometry(phi, FMTag.ELLIPTIC_PHI), checks


def _beta_class(mukai: Lattice, n: int):
    """beta = e2 + (n-2) f2: orthogonal to the designated sigma, f (which
    live in the third hyperbolic block) with beta^2 = 2n - 4."""
    b = mukai.blocks_named("U")[1]
    rank = mukai.rank
    beta = [0] * rank
    beta[b.start] = 1
    beta[b.start + 1] = n - 2
    return tuple(beta)


def mon_twist(model: VPerpModel, g: Isometry) -> Isometry:
    """The weight-2 shadow of the monodromy representation: restrict g in
    Gamma_v to v-perp and multiply by (-1)^cov(g); lands in the
    orientation-preserving group O_+(v-perp)."""
    if not g.fixes(model.v.coords()):
        raise LatticeError("isometry does not fix v")
    cov = covariance(g)
    restricted = model.restrict(g)
    out = restricted.negate() if cov else restricted
    assert orientation_char(default_reference(model.lattice), out) == 0, \
        "twisted restriction must preserve orientation"
    return out
