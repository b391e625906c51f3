"""Lattice construction, pairing, isometry checks, complements, discriminants."""

from fractions import Fraction

import pytest

from mukailat import linalg
from mukailat.lattices import (
    LatticeError,
    build_lattice,
    check_isometry,
    discriminant_group,
    e8_minus,
    hyperbolic_plane,
    is_primitive,
    orthogonal_complement,
)
from mukailat.mukai import MukaiVector

from conftest import label_vector, random_vector


class TestBuild:
    def test_u_gram(self):
        assert hyperbolic_plane().gram == ((0, 1), (1, 0))

    def test_mukai_rank_and_signature(self, mukai):
        assert mukai.rank == 24
        assert mukai.signature() == (4, 20)

    def test_k3_signature(self, k3):
        assert k3.signature() == (3, 19)
        assert k3.rank == 22
        assert k3.is_even

    def test_e8_minus_negative_definite_unimodular(self):
        e8 = e8_minus()
        assert e8.signature() == (0, 8)
        assert e8.determinant() == 1
        assert e8.is_even

    def test_unimodular_blocks(self, k3, mukai):
        assert abs(k3.determinant()) == 1
        assert abs(mukai.determinant()) == 1

    def test_mukai_h04_block(self, mukai):
        h0 = mukai.basis_vector("h0")
        h4 = mukai.basis_vector("h4")
        assert mukai.square(h0) == 0
        assert mukai.square(h4) == 0
        assert mukai.pair(h0, h4) == -1

    def test_unknown_block(self):
        with pytest.raises(LatticeError):
            build_lattice(("Leech",))

    def test_empty_spec(self):
        with pytest.raises(LatticeError):
            build_lattice(())

    def test_diag_block(self):
        lat = build_lattice((("diag", (2, -2)),))
        assert lat.gram == ((2, 0), (0, -2))


class TestPair:
    def test_u_basis(self):
        u = hyperbolic_plane()
        assert u.pair((1, 0), (0, 1)) == 1
        assert u.pair((1, 1), (1, 1)) == 2

    def test_e8_root(self):
        e8 = e8_minus()
        assert e8.square((1, 0, 0, 0, 0, 0, 0, 0)) == -2

    def test_dimension_mismatch(self, k3):
        with pytest.raises(LatticeError):
            k3.pair((1, 0), (0, 1))

    def test_symmetric_bilinear(self, k3, rng):
        for _ in range(30):
            x = random_vector(k3, rng)
            y = random_vector(k3, rng)
            z = random_vector(k3, rng)
            assert k3.pair(x, y) == k3.pair(y, x)
            assert k3.pair(linalg.vec_add(x, z), y) == \
                k3.pair(x, y) + k3.pair(z, y)


class TestPrimitive:
    def test_basis_vector(self, k3):
        assert is_primitive(k3, label_vector(k3, **{"e.1": 1}))

    def test_multiple(self, k3):
        assert not is_primitive(k3, label_vector(k3, **{"e.1": 2, "f.1": 2}))

    def test_coprime(self, k3):
        assert is_primitive(k3, label_vector(k3, **{"e.1": 2, "f.1": 3}))

    def test_zero_rejected(self, k3):
        with pytest.raises(LatticeError):
            is_primitive(k3, (0,) * 22)


class TestIsometry:
    def test_identity(self, mukai):
        res = check_isometry(mukai, linalg.identity(24))
        assert res.is_isometry and res.det == 1

    def test_minus_identity(self, mukai, k3):
        assert check_isometry(mukai, linalg.mat_neg(linalg.identity(24))) \
            .det == 1  # (-1)^24
        assert check_isometry(k3, linalg.mat_neg(linalg.identity(22))) \
            .det == 1  # (-1)^22
        u = hyperbolic_plane()
        res = check_isometry(u, ((-1, 0), (0, -1)))
        assert res.is_isometry and res.det == 1

    def test_swap_in_u(self):
        u = hyperbolic_plane()
        swap = ((0, 1), (1, 0))
        # direct Gram check as the oracle
        for x in ((1, 0), (0, 1), (1, 1), (2, -3)):
            for y in ((1, 0), (0, 1), (1, 2)):
                sx = linalg.mat_vec(swap, x)
                sy = linalg.mat_vec(swap, y)
                assert u.pair(sx, sy) == u.pair(x, y)
        res = check_isometry(u, swap)
        assert res.is_isometry and res.det == -1

    def test_non_isometry_reports_false(self):
        u = hyperbolic_plane()
        assert not check_isometry(u, ((1, 1), (0, 1))).is_isometry

    def test_compose_inverse_associate(self, mukai, rng):
        from mukailat.characters import reflection
        from mukailat.stabilizer import generator_family

        fam = generator_family(2)
        isos = []
        for _ in range(6):
            u = fam.sample_pm2_vector(rng)
            iso = reflection(fam.k3, u)
            isos.append(iso)
        for _ in range(10):
            g, h, k = rng.choices(isos, k=3)
            gh = g @ h
            assert check_isometry(g.lattice, gh.matrix).is_isometry
            assert ((g @ h) @ k).matrix == (g @ (h @ k)).matrix
            assert (gh.inverse()).matrix == (h.inverse() @ g.inverse()).matrix
            assert (gh @ gh.inverse()).is_identity()


class TestComplement:
    def test_vperp_shape(self, mukai, k3):
        m = 3
        v = MukaiVector(1, (0,) * 22, -m).coords()
        basis, gram = orthogonal_complement(mukai, [v])
        assert len(basis) == 23
        # the expected sublattice: 22 K3 basis vectors + (1, 0, m)
        expected = [tuple(1 if i == j else 0 for i in range(24))
                    for j in range(22)]
        expected.append(MukaiVector(1, (0,) * 22, m).coords())
        for vec in expected:
            assert linalg.in_span(vec, basis)
        for vec in basis:
            assert linalg.in_span(vec, tuple(expected))
        # restricted Gram is K3 + <-2m> after the change to the model basis
        lat = build_lattice(("K3", ("diag", (-2 * m,))))
        d1 = linalg.elementary_divisors(gram)
        d2 = linalg.elementary_divisors(lat.gram)
        assert d1 == d2

    def test_empty_set(self, k3):
        basis, gram = orthogonal_complement(k3, [])
        assert len(basis) == 22 and gram == k3.gram

    def test_isotropic_vector_in_own_complement(self, mukai):
        e = label_vector(mukai, **{"e.1": 1})
        basis, _ = orthogonal_complement(mukai, [e])
        assert len(basis) == 23
        assert linalg.in_span(e, basis)

    def test_saturation_probes(self, mukai, rng):
        v = MukaiVector(1, (0,) * 22, -4).coords()
        basis, _ = orthogonal_complement(mukai, [v])
        hits = 0
        for _ in range(200):
            x = random_vector(mukai, rng, bound=6)
            if mukai.pair(x, v) == 0 and any(x):
                hits += 1
                assert linalg.in_span(x, basis)
        assert hits > 10


class TestDiscriminant:
    def test_unimodular_trivial(self, mukai):
        assert discriminant_group(mukai).is_trivial

    def test_vperp_cyclic(self):
        m = 3
        lat = build_lattice((("diag", (-2 * m,)), "K3"))
        dg = discriminant_group(lat)
        assert dg.divisors == (6,)
        assert dg.q_values[0] % 2 == Fraction(-1, 6) % 2

    def test_two_by_two(self):
        lat = build_lattice((("diag", (2, -2)),))
        dg = discriminant_group(lat)
        assert dg.divisors == (2, 2)

    def test_order_equals_det(self, rng):
        for entries in ((4,), (2, 6), (-2, 8, 3)):
            lat = build_lattice((("diag", entries), "U"))
            dg = discriminant_group(lat)
            assert dg.order == abs(lat.determinant())

    def test_lift_invariants(self):
        lat = build_lattice((("diag", (-6,)), "U"))
        dg = discriminant_group(lat)
        for d, lift in zip(dg.divisors, dg.lifts):
            scaled = tuple(d * x for x in lift)
            assert all(x.denominator == 1 for x in scaled)
            gy = [sum(Fraction(g) * x for g, x in zip(row, lift))
                  for row in lat.gram]
            assert all(val.denominator == 1 for val in gy)

    def test_degenerate_rejected(self):
        lat = build_lattice((("diag", (0, 2)),))
        with pytest.raises(LatticeError):
            discriminant_group(lat)
