"""The v-perp model, discriminant actions, orbits, Sym3 relations, factor."""

from fractions import Fraction

import pytest

from mukailat import linalg
from mukailat.lattices import Isometry, LatticeError, discriminant_group
from mukailat.characters import reflection
from mukailat.mukai import MukaiVector, mukai_pairing
from mukailat.stabilizer import (
    ExtensionKind,
    Gamma0Letter,
    GeneratorWord,
    Minus2Orbit,
    NotInGammaV,
    TauLetter,
    aplus_witness,
    classify_minus2,
    disc_action,
    disc_group_order,
    distinct_prime_count,
    factor,
    generator_family,
    in_gamma_v,
    nontrivial_disc_isometry,
    normalize_word,
    pair_witness_extend,
    pair_witness_split,
    sym3_triple,
    vperp_model,
    w_membership,
)

from conftest import label_vector


@pytest.fixture(scope="module")
def m3():
    return vperp_model(3)


class TestModel:
    @pytest.mark.parametrize("m", [1, 2, 3, 5, 8])
    def test_disc_cyclic(self, m):
        model = vperp_model(m)
        dg = discriminant_group(model.lattice)
        assert dg.divisors == (2 * m,)
        assert model.disc.q(1) % 2 == Fraction(-1, 2 * m) % 2

    def test_w_square(self, m3):
        w = m3.w
        assert mukai_pairing(w, w) == -6
        assert m3.lattice.gram[-1][-1] == -6

    def test_v_square(self):
        model = vperp_model(1)
        assert mukai_pairing(model.v, model.v) == 2

    def test_q_values(self, m3):
        # q(k) = -k^2/6 mod 2 on Z/6
        assert m3.disc.q(1) == Fraction(-1, 6) % 2
        assert m3.disc.q(3) == Fraction(-9, 6) % 2

    def test_restrict_roundtrip(self, m3, rng):
        fam = generator_family(3)
        word = fam.sample_word(rng, 3)
        g = word.product()
        restricted = m3.restrict(g)
        # the restriction acts on v-perp vectors exactly as g does
        for _ in range(10):
            coords = tuple(rng.randint(-4, 4) for _ in range(23))
            x = m3.from_perp_coords(coords)
            image = MukaiVector.from_coords(g.apply(x.coords()))
            assert m3.to_perp_coords(image) == restricted.apply(coords)


class TestDiscAction:
    def test_identity(self, m3):
        assert disc_action(m3, Isometry.identity(m3.lattice)) == 1

    def test_minus_identity(self, m3):
        assert disc_action(m3, Isometry.identity(m3.lattice).negate()) == 5

    def test_gamma_v_reflection(self, m3, rng):
        fam = generator_family(3)
        tau = fam.tau_letter(rng)
        restricted = m3.restrict(tau.to_isometry(m3))
        assert disc_action(m3, restricted) == 1

    def test_disc_coordinates_crosscheck(self, m3, rng):
        # independent oracle: push the generator lift w/6 through g and read
        # the unit off with exact rational arithmetic
        fam = generator_family(3)
        word = fam.sample_word(rng, 2)
        g = m3.restrict(word.product())
        lift = tuple(Fraction(0) if i < 22 else Fraction(1, 6)
                     for i in range(23))
        image = [sum(Fraction(g.matrix[i][j]) * lift[j] for j in range(23))
                 for i in range(23)]
        u = disc_action(m3, g)
        delta = [image[i] - u * lift[i] for i in range(23)]
        assert all(x.denominator == 1 for x in delta)

    def test_q_preservation_units(self):
        for m in (2, 5, 6, 12):
            model = vperp_model(m)
            minus = Isometry.identity(model.lattice).negate()
            u = disc_action(model, minus)
            assert (u * u - 1) % (4 * m) == 0


class TestInGammaV:
    def test_m1_minus_id(self):
        model = vperp_model(1)
        g = Isometry.identity(model.lattice).negate()
        assert in_gamma_v(model, g) is ExtensionKind.IN_GAMMA_V

    def test_m2_minus_id(self):
        model = vperp_model(2)
        g = Isometry.identity(model.lattice).negate()
        assert in_gamma_v(model, g) is \
            ExtensionKind.EXTENDS_SENDING_V_TO_MINUS_V

    def test_m6_does_not_extend(self, rng):
        model = vperp_model(6)
        g = nontrivial_disc_isometry(model, rng)
        assert g is not None
        assert disc_action(model, g) not in (1, 11)
        assert in_gamma_v(model, g) is ExtensionKind.DOES_NOT_EXTEND
        assert not w_membership(model, g)


class TestWMembership:
    def test_reflection_in_minus2(self, m3, rng):
        fam = generator_family(3)
        tau = fam.tau_letter(rng)
        assert w_membership(m3, m3.restrict(tau.to_isometry(m3)))

    def test_minus_id_rank23(self, m3):
        g = Isometry.identity(m3.lattice).negate()
        assert not w_membership(m3, g)


class TestOrbits:
    def test_m1_lattice_class(self):
        model = vperp_model(1)
        v0 = MukaiVector(1, (0,) * 22, 1)
        assert classify_minus2(model, v0) is Minus2Orbit.A_PLUS

    def test_m5_witness(self, k3):
        model = vperp_model(5)
        c = label_vector(k3, **{"e.1": 2, "f.1": 2})
        v0 = MukaiVector(1, c, 5)
        assert mukai_pairing(v0, v0) == -2
        assert classify_minus2(model, v0) is Minus2Orbit.A_PLUS

    def test_m3_odd_class(self, m3, k3):
        c = label_vector(k3, **{"e.1": -1, "f.1": -2})
        v0 = MukaiVector(1, c, 3)
        assert mukai_pairing(v0, v0) == -2
        assert classify_minus2(m3, v0) is Minus2Orbit.A_MINUS

    def test_not_minus2_rejected(self, m3):
        with pytest.raises(LatticeError):
            classify_minus2(m3, MukaiVector(1, (0,) * 22, -3))

    def test_orbit_constant_on_gamma_v(self, m3, rng):
        fam = generator_family(3)
        c = label_vector(m3.k3, **{"e.1": -1, "f.1": -2})
        v0 = MukaiVector(1, c, 3)
        cls = classify_minus2(m3, v0)
        for _ in range(12):
            word = fam.sample_word(rng, rng.randint(0, 4))
            image = MukaiVector.from_coords(
                word.product().apply(v0.coords())
            )
            assert classify_minus2(m3, image) is cls


class TestAPlusWitness:
    @pytest.mark.parametrize("m", [1, 5, 9, 13])
    def test_exists(self, m):
        v0 = aplus_witness(m)
        assert v0 is not None
        assert mukai_pairing(v0, v0) == -2
        assert classify_minus2(vperp_model(m), v0) is Minus2Orbit.A_PLUS

    @pytest.mark.parametrize("m", [2, 3, 4, 6, 7, 11])
    def test_impossible(self, m):
        assert aplus_witness(m) is None


class TestPairWitness:
    def test_split_m1(self, k3):
        l0 = label_vector(k3, **{"e.1": 1, "f.1": 3})  # square 6 = 2*4*1-2
        l1, l2 = pair_witness_split(1, l0, 2)
        assert k3.square(l1) == 0 and k3.square(l2) == 0
        assert k3.pair(l1, l2) == 3

    def test_extend_m1(self, k3):
        l1 = label_vector(k3, **{"e.1": 1})
        l2 = pair_witness_extend(1, l1, 1)
        assert k3.square(l2) == 0 and k3.pair(l1, l2) == 3
        # the stated witness 3f is equally valid
        stated = label_vector(k3, **{"f.1": 3})
        assert k3.square(stated) == 0 and k3.pair(l1, stated) == 3

    def test_odd_rank_rejected(self, k3):
        l0 = label_vector(k3, **{"e.1": 1, "f.1": 8})  # square 16 = 2*9*1-2
        with pytest.raises(LatticeError):
            pair_witness_split(1, l0, 3)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_split_various(self, m, k3):
        for r in (2, 4):
            # L0 = e + k f with 2k = 2 r^2 m - 2
            l0 = label_vector(k3, **{"e.1": 1, "f.1": r * r * m - 1})
            l1, l2 = pair_witness_split(m, l0, r)
            assert linalg.vec_add(l1, l2) == l0


class TestSym3:
    def test_m1_example(self, k3):
        v1 = MukaiVector(1, label_vector(k3, **{"e.1": -1}), 1)
        v2 = MukaiVector(1, label_vector(k3, **{"f.1": -3}), 1)
        assert mukai_pairing(v1, v2) == 1
        report = sym3_triple(1, v1, v2)
        assert report["all"]

    def test_equal_vectors_rejected(self, k3):
        v1 = MukaiVector(1, label_vector(k3, **{"e.1": -1}), 1)
        with pytest.raises(LatticeError):
            sym3_triple(1, v1, v1)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_from_pair_witness(self, m, k3):
        a = 1
        l1 = label_vector(k3, **{"e.1": 1, "f.1": a * a * m - 1})
        l2 = pair_witness_extend(m, l1, a)
        v1 = MukaiVector(a, linalg.vec_neg(l1), a * m)
        v2 = MukaiVector(1, linalg.vec_neg(l2), m)
        assert sym3_triple(m, v1, v2)["all"]


class TestGeneratorFamily:
    def test_letters_fix_v(self, rng):
        for m in (1, 2, 3):
            model = vperp_model(m)
            fam = generator_family(m)
            for _ in range(6):
                letter = fam.letter(rng)
                iso = letter.to_isometry(model)
                assert iso.fixes(model.v.coords())
                assert iso.det() == -1

    def test_character_values(self, rng):
        from mukailat.characters import covariance

        model = vperp_model(2)
        fam = generator_family(2)
        seen = set()
        for _ in range(25):
            letter = fam.letter(rng)
            iso = letter.to_isometry(model)
            pair = (iso.det(), covariance(iso))
            assert pair in ((-1, 0), (-1, 1))
            seen.add(pair)
        assert seen == {(-1, 0), (-1, 1)}, \
            "both character pairs should be realized"


class TestFactor:
    def test_identity_empty_word(self):
        model = vperp_model(2)
        word = factor(model, Isometry.identity(model.mukai))
        assert word.letters == ()

    def test_single_tau(self, rng):
        model = vperp_model(3)
        fam = generator_family(3)
        tau = fam.tau_letter(rng)
        word = factor(model, tau.to_isometry(model))
        assert len(word.letters) == 1
        assert isinstance(word.letters[0], TauLetter)

    def test_gamma0_alone(self, rng):
        model = vperp_model(2)
        fam = generator_family(2)
        g0 = fam.gamma0_letter(rng)
        word = factor(model, g0.to_isometry(model))
        assert len(word.letters) == 1
        assert isinstance(word.letters[0], Gamma0Letter)

    def test_rejects_non_stabilizing(self):
        model = vperp_model(2)
        with pytest.raises(NotInGammaV):
            factor(model, Isometry.identity(model.mukai).negate())

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_round_trip(self, m, rng):
        model = vperp_model(m)
        fam = generator_family(m)
        for _ in range(6):
            word_in = fam.sample_word(rng, rng.randint(1, 6))
            g = word_in.product()
            word_out = factor(model, g)
            assert word_out.product().matrix == g.matrix

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_normalized_form(self, m, rng):
        model = vperp_model(m)
        fam = generator_family(m)
        for _ in range(4):
            g = fam.sample_word(rng, rng.randint(1, 5)).product()
            word = factor(model, g, normalize=True)
            assert word.product().matrix == g.matrix
            for letter in word.letters:
                if isinstance(letter, TauLetter):
                    assert letter.v0.r in (1, -1)
                    from mukailat.lattices import is_primitive

                    assert is_primitive(model.k3, letter.v0.c)

    def test_m1_w_reflection(self):
        # tau_w at m = 1 sends w to -w; factoring goes through the
        # primitive-isotropic route and still round-trips
        model = vperp_model(1)
        tau_w = reflection(model.mukai, model.w.coords())
        word = factor(model, tau_w, normalize=True)
        assert word.product().matrix == tau_w.matrix
        for letter in word.letters:
            if isinstance(letter, TauLetter):
                assert letter.v0.r in (1, -1)

    def test_normalize_splits_rank_two(self, rng):
        # a hand-built rank-2 tau letter gets rewritten to rank-one letters
        m = 2
        model = vperp_model(m)
        l0 = label_vector(model.k3, **{"e.1": 1, "f.1": 4 * m - 1})
        v0 = MukaiVector(2, linalg.vec_neg(l0), 2 * m)
        assert mukai_pairing(v0, v0) == -2
        word = GeneratorWord(model, (TauLetter(v0),))
        norm = normalize_word(word)
        assert norm.product().matrix == word.product().matrix
        assert all(l.v0.r in (1, -1) for l in norm.letters
                   if isinstance(l, TauLetter))


class TestDiscGroupOrder:
    def test_known_values(self):
        assert disc_group_order(1) == \
            {"order": 1, "rho": 0, "index_O_vperp_over_GammaV": 1}
        assert disc_group_order(6) == \
            {"order": 4, "rho": 2, "index_O_vperp_over_GammaV": 4}
        assert disc_group_order(8) == \
            {"order": 2, "rho": 1, "index_O_vperp_over_GammaV": 2}

    def test_matches_prime_count(self):
        for m in range(1, 200):
            data = disc_group_order(m)
            assert data["order"] == 2 ** distinct_prime_count(m)

    def test_kernel_criterion_on_samples(self, rng):
        for m in (1, 2, 3, 4, 6):
            model = vperp_model(m)
            fam = generator_family(m)
            for _ in range(5):
                word = fam.sample_word(rng, rng.randint(0, 5))
                restricted = model.restrict(word.product())
                assert disc_action(model, restricted) == 1 % (2 * m)
