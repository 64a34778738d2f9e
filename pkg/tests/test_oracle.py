"""Tests for the brute-force oracles."""

import os
import random
import pytest
from unittest.mock import patch
from src.catalog import reference_gram
from src.linalg import IntMatrix, det_exact
from src.lattice import GramMatrix, enumerate_short, norm_sq
from src.models import BoxSpec, RSPair, TameParams
from src.oracle import (
    BoxCeilingError,
    NoWitnessError,
    brute_min_Sd,
    coordinate_box,
    naive_svp,
    restar_witness,
)
from src.tame import min_over_Sd, sd_minimizer, sublattice_gram, tame_gram

EX3 = TameParams(N=4, h=16)


def identity_gram(n):
    return GramMatrix(IntMatrix.identity(n))


class TestCoordinateBox:
    """Test cases for coordinate_box."""

    def test_identity(self):
        """Test |x_i| <= sqrt(radius) in Z^N."""
        assert coordinate_box(identity_gram(3), 4) == BoxSpec(dim=3, bound=2)

    def test_conductor_65(self):
        """Test that radius 4 needs only the unit box: (G^-1)_ii = 17/65."""
        assert coordinate_box(tame_gram(EX3), 4) == BoxSpec(dim=4, bound=1)

    def test_minimum_bound_is_one(self):
        """Test that tiny radii still give a usable box."""
        gram = GramMatrix(IntMatrix.diagonal([9, 9]))

        assert coordinate_box(gram, 1).bound == 1


class TestNaiveSVP:
    """Test cases for naive_svp."""

    def test_a3(self):
        """Test A_3 with bound 2."""
        result = naive_svp(reference_gram("A", 3), BoxSpec(dim=3, bound=2))

        assert result.minimum == 2
        assert len(result.argmins) == 6

    def test_identity(self):
        """Test Z^4 with the unit box."""
        result = naive_svp(identity_gram(4), BoxSpec(dim=4, bound=1))

        assert result.minimum == 1
        assert result.argmins == (
            (0, 0, 0, 1),
            (0, 0, 1, 0),
            (0, 1, 0, 0),
            (1, 0, 0, 0),
        )

    def test_conductor_65_sublattice(self):
        """Test the m = 5 sublattice with bound 3."""
        gram = sublattice_gram(EX3, RSPair(N=4, r=1, s=1))
        result = naive_svp(gram, BoxSpec(dim=4, bound=3))

        assert result.minimum == 55
        assert len(result.argmins) == 4

    def test_box_dimension_mismatch(self):
        """Test a box of the wrong dimension."""
        with pytest.raises(ValueError, match="does not fit rank"):
            naive_svp(identity_gram(3), BoxSpec(dim=2, bound=1))

    @patch.dict(os.environ, {"TAMELAT_BOX_CEILING": "100"}, clear=True)
    def test_ceiling(self):
        """Test that a scan above the configured ceiling is refused."""
        with pytest.raises(BoxCeilingError, match="ceiling of 100"):
            naive_svp(identity_gram(4), BoxSpec(dim=4, bound=2))

    def test_agrees_with_enumeration(self):
        """Test box scan against LDL^T enumeration on random Gram matrices."""
        rng = random.Random(53)
        checked = 0
        while checked < 100:
            n = rng.randint(1, 4)
            m = IntMatrix.from_rows([rng.randint(-2, 2) for _ in range(n)] for _ in range(n))
            if det_exact(m) == 0:
                continue
            gram = GramMatrix(m.transpose() @ m)
            if max(abs(e) for row in gram.rows for e in row) > 12:
                continue
            box = coordinate_box(gram, min(gram.diagonal()))
            if box.size > 20000:
                continue

            report = enumerate_short(gram)
            result = naive_svp(gram, box)
            assert result.minimum == report.lambda1
            assert result.argmins == report.minimal_vectors
            checked += 1


class TestBruteMinSd:
    """Test cases for brute_min_Sd."""

    def test_conductor_65(self):
        """Test the value 90 on S_2 for N=4, h=16, (r, s) = (1, 1)."""
        rs = RSPair(N=4, r=1, s=1)
        result = brute_min_Sd(EX3, rs, 2, BoxSpec(dim=4, bound=2))

        assert result.minimum == 90
        # every E_I with |I| = 2
        assert len(result.argmins) == 6

    @pytest.mark.parametrize("n", range(2, 6))
    @pytest.mark.parametrize("h", range(0, 4))
    def test_matches_closed_form(self, n, h):
        """Test the closed form over a grid of (N, h, r, s, d)."""
        params = TameParams(N=n, h=h)
        box = BoxSpec(dim=n, bound=3)
        for r in [x for x in range(-n + 1, n) if x]:
            for s in range(-2, 3):
                rs = RSPair(N=n, r=r, s=s)
                for d in range(1, 2 * n + 1):
                    result = brute_min_Sd(params, rs, d, box)

                    assert result.minimum == min_over_Sd(params, rs, d)
                    assert sd_minimizer(params, d) in result.argmins

    def test_box_too_small(self):
        """Test that the box must contain E_I + c*v1."""
        with pytest.raises(ValueError, match="cannot hold"):
            brute_min_Sd(EX3, RSPair(N=4, r=1, s=1), 5, BoxSpec(dim=4, bound=1))

    def test_non_positive_d(self):
        """Test that d must be positive."""
        with pytest.raises(ValueError, match="d must be positive"):
            brute_min_Sd(EX3, RSPair(N=4, r=1, s=1), 0, BoxSpec(dim=4, bound=1))

    def test_box_dimension_mismatch(self):
        """Test a box of the wrong dimension."""
        with pytest.raises(ValueError, match="does not fit rank"):
            brute_min_Sd(EX3, RSPair(N=4, r=1, s=1), 1, BoxSpec(dim=3, bound=1))

    @patch.dict(os.environ, {"TAMELAT_BOX_CEILING": "10"}, clear=True)
    def test_ceiling(self):
        """Test that the (2b+1)^(N-1) scan respects the ceiling."""
        with pytest.raises(BoxCeilingError):
            brute_min_Sd(EX3, RSPair(N=4, r=1, s=1), 1, BoxSpec(dim=4, bound=1))


class TestRestarWitness:
    """Test cases for restar_witness."""

    def test_norm_drop(self):
        """Test the drop 2(a+h)(alpha_i - alpha_j - 1)."""
        gram = tame_gram(EX3)
        alpha = (3, 0, 1, 1)
        beta = restar_witness(EX3, alpha)

        assert beta == (2, 1, 1, 1)
        assert norm_sq(gram, alpha) - norm_sq(gram, beta) == 2 * 65 * 2

    def test_first_extremes_chosen(self):
        """Test ties are broken by the first index."""
        assert restar_witness(EX3, (2, 2, 0, 0)) == (1, 2, 1, 0)

    def test_no_witness(self):
        """Test vectors whose coordinates are within 1 of each other."""
        with pytest.raises(NoWitnessError, match="within 1"):
            restar_witness(EX3, (1, 0, 1, 0))

    def test_dimension_mismatch(self):
        """Test a vector of the wrong length."""
        with pytest.raises(ValueError, match="does not fit rank"):
            restar_witness(EX3, (3, 0))

    def test_random_property(self):
        """Test that T is kept and the norm strictly drops by the stated amount."""
        rng = random.Random(59)
        for _ in range(200):
            params = TameParams(N=rng.randint(2, 6), h=rng.randint(0, 5))
            alpha = [rng.randint(-4, 4) for _ in range(params.N)]
            if max(alpha) - min(alpha) < 2:
                continue
            beta = restar_witness(params, alpha)
            gram = tame_gram(params)
            drop = 2 * (params.a + params.h) * (max(alpha) - min(alpha) - 1)

            assert sum(beta) == sum(alpha)
            assert norm_sq(gram, alpha) - norm_sq(gram, beta) == drop
