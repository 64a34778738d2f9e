"""Tests for Phi-sublattices and congruence lattices."""

import random
import pytest
from src.catalog import reference_basis
from src.construction import (
    DegenerateMapError,
    PreconditionError,
    apply_phi,
    check_cong1_equality,
    congruence_lattice_basis,
    phi_basis_matrix,
    phi_equals_congruence,
    predicted_index,
)
from src.linalg import DimensionError, det_exact, same_lattice
from src.models import ConstructionParams, LinearForm


def trace3_v1(n):
    """A vector with coordinate sum 3 in Z^n."""
    return (2, 1) if n == 2 else (1, 1, 1) + (0,) * (n - 3)


def random_instance(rng):
    """Random (T, params) with T(v1) != 0 and |r| < |T(v1)|."""
    while True:
        n = rng.randint(1, 8)
        weights = tuple(rng.randint(-4, 4) for _ in range(n))
        if not any(weights):
            continue
        form = LinearForm(weights)
        v1 = tuple(rng.randint(-3, 3) for _ in range(n))
        t_v1 = form(v1)
        if abs(t_v1) < 2:
            continue
        r = rng.choice([x for x in range(-abs(t_v1) + 1, abs(t_v1)) if x])
        s = rng.randint(-3, 3)
        params = ConstructionParams.build(form, r, s, v1)
        if params.m != 0:
            return form, params


class TestApplyPhi:
    """Test cases for apply_phi."""

    def test_identity_map(self):
        """Test r=1, s=0."""
        form = LinearForm((1, 1, 1))
        params = ConstructionParams.build(form, 1, 0, (1, 1, 1))

        assert apply_phi(form, params, (3, -1, 2)) == (3, -1, 2)

    def test_cubic_example(self):
        """Test Phi(e_1) = (0, 1, 1) for (r, s) = (-1, 1) on Z^3."""
        form = LinearForm((1, 1, 1))
        params = ConstructionParams.build(form, -1, 1, (1, 1, 1))

        assert apply_phi(form, params, (1, 0, 0)) == (0, 1, 1)

    def test_kernel_scaled_by_r(self):
        """Test that Phi is multiplication by r on ker T."""
        form = LinearForm((1, 1, 1, 1))
        params = ConstructionParams.build(form, 3, 2, (1, 1, 1, 1))

        assert apply_phi(form, params, (1, -1, 2, -2)) == (3, -3, 6, -6)

    def test_dimension_mismatch(self):
        """Test a vector of the wrong length."""
        form = LinearForm((1, 1))
        params = ConstructionParams.build(form, 1, 0, (1, 1))
        with pytest.raises(DimensionError):
            apply_phi(form, params, (1, 1, 1))

    def test_trace_intertwines(self):
        """Test T(Phi(x)) = m*T(x) on random data."""
        rng = random.Random(1)
        for _ in range(200):
            form, params = random_instance(rng)
            x = tuple(rng.randint(-5, 5) for _ in range(form.dim))

            assert form(apply_phi(form, params, x)) == params.m * form(x)


class TestPhiBasis:
    """Test cases for phi_basis_matrix and its index."""

    def test_d4(self):
        """Test that (-1, 1) with T(v1) = 3 gives D_4."""
        form = LinearForm((1, 1, 1, 1))
        params = ConstructionParams.build(form, -1, 1, trace3_v1(4))

        assert same_lattice(phi_basis_matrix(form, params, 4), reference_basis("D", 4))

    @pytest.mark.parametrize("n", range(2, 9))
    def test_dn_family(self, n):
        """Test the D_N identification for N = 2..8."""
        form = LinearForm((1,) * n)
        params = ConstructionParams.build(form, -1, 1, trace3_v1(n))

        assert same_lattice(phi_basis_matrix(form, params, n), reference_basis("D", n))

    def test_twice_identity(self):
        """Test (r, s) = (2, 0) gives 2*identity."""
        form = LinearForm((1, 1, 1, 1))
        params = ConstructionParams.build(form, 2, 0, (1, 1, 1, 1))
        basis = phi_basis_matrix(form, params, 4)

        assert basis.rows == tuple(tuple(2 * (i == j) for j in range(4)) for i in range(4))
        assert det_exact(basis) == 16

    def test_tame_index(self):
        """Test det = 5 for (1, 1) on a rank 4 tame lattice."""
        form = LinearForm((1, 1, 1, 1))
        params = ConstructionParams.build(form, 1, 1, (1, 1, 1, 1))

        assert det_exact(phi_basis_matrix(form, params, 4)) == 5

    def test_degenerate(self):
        """Test that m = 0 is rejected."""
        form = LinearForm((1, 1, 1))
        params = ConstructionParams(r=2, s=-1, v1=(1, 1, 0), m=0)

        with pytest.raises(DegenerateMapError):
            phi_basis_matrix(form, params, 3)

    def test_index_formula(self):
        """Test |det| = |m||r|^(N-1) on 500 random instances."""
        rng = random.Random(2024)
        for _ in range(500):
            form, params = random_instance(rng)
            basis = phi_basis_matrix(form, params, form.dim)

            assert abs(det_exact(basis)) == predicted_index(params, form.dim)

    def test_image_inside_congruence_lattice(self):
        """Test T(column) = 0 mod m*n_T for every basis column."""
        rng = random.Random(8)
        for _ in range(100):
            form, params = random_instance(rng)
            modulus = abs(params.m) * form.cokernel_size
            for column in phi_basis_matrix(form, params, form.dim).columns():
                assert form(column) % modulus == 0


class TestCongruenceLattice:
    """Test cases for congruence_lattice_basis."""

    def test_m_one(self):
        """Test that m = 1 gives the whole lattice."""
        form = LinearForm((1, 2, 3))

        assert abs(det_exact(congruence_lattice_basis(form, 1, 3))) == 1

    def test_dn(self):
        """Test that m = 2 with the coordinate sum gives D_N."""
        form = LinearForm((1,) * 5)

        assert same_lattice(congruence_lattice_basis(form, 2, 5), reference_basis("D", 5))

    def test_index_m(self):
        """Test index m for random forms, including n_T > 1."""
        rng = random.Random(6)
        for _ in range(60):
            n = rng.randint(1, 6)
            weights = tuple(rng.randint(-6, 6) for _ in range(n))
            if not any(weights):
                continue
            m = rng.randint(1, 9)

            assert det_exact(congruence_lattice_basis(LinearForm(weights), m, n)) == m

    def test_non_positive_modulus(self):
        """Test that m must be positive."""
        with pytest.raises(ValueError, match="must be positive"):
            congruence_lattice_basis(LinearForm((1, 1)), 0, 2)


class TestCongruenceEquality:
    """Test cases for the r = +-1 congruence equality."""

    def test_sextic(self):
        """Test N=6, r=1, s=1 (m=7)."""
        form = LinearForm((1,) * 6)
        params = ConstructionParams.build(form, 1, 1, (1,) * 6)

        assert check_cong1_equality(form, params)

    def test_quartic(self):
        """Test N=4, r=-1, s=1 (m=3)."""
        form = LinearForm((1,) * 4)
        params = ConstructionParams.build(form, -1, 1, (1,) * 4)

        assert check_cong1_equality(form, params)

    def test_r_two_precondition(self):
        """Test that r = 2 violates the precondition."""
        form = LinearForm((1,) * 4)
        params = ConstructionParams.build(form, 2, 1, (1,) * 4)

        with pytest.raises(PreconditionError, match="r = \\+-1"):
            check_cong1_equality(form, params)

    def test_non_surjective_precondition(self):
        """Test that n_T > 1 violates the precondition."""
        form = LinearForm((2, 2))
        params = ConstructionParams.build(form, 1, 1, (1, 1))

        with pytest.raises(PreconditionError, match="surjective"):
            check_cong1_equality(form, params)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_equality_iff_r_unit(self, n):
        """Test equality for r = +-1 and failure for |r| = 2 on tame forms."""
        form = LinearForm((1,) * n)
        v1 = (1,) * n
        for s in range(-3, 4):
            for r in (1, -1):
                params = ConstructionParams.build(form, r, s, v1)
                if params.m >= 2:
                    assert check_cong1_equality(form, params)
            if n > 2:
                for r in (2, -2):
                    params = ConstructionParams.build(form, r, s, v1)
                    if params.m != 0:
                        assert not phi_equals_congruence(form, params)
