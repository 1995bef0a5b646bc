import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dilatekit.errors import InvalidInput
from dilatekit.linalg import (NormTag, Tolerance, dual_pair, hermitian_eig,
                              hermitian_inner, is_isometry, max_abs,
                              numeric_rank, op_norm, row_norms, subset_sums,
                              vec_norm)

L1, L2, LINF = NormTag.l1(), NormTag.l2(), NormTag.linf()
ALL_TAGS = [L1, L2, LINF, NormTag.lp(3.0)]


class TestVecNorm:
    def test_pythagorean(self):
        assert vec_norm([3, 4], L2) == 5.0

    def test_l1(self):
        assert vec_norm([1, -1], L1) == 2.0

    def test_general_p(self):
        assert vec_norm([1, 1], NormTag.lp(3.0)) == pytest.approx(2.0 ** (1 / 3),
                                                                  rel=1e-15)

    def test_linf(self):
        assert vec_norm([1j, -2, 0.5], LINF) == 2.0

    def test_zero_iff_zero(self):
        assert vec_norm([0, 0, 0], L2) == 0.0
        assert vec_norm(np.zeros(0), L2) == 0.0

    def test_nonfinite_rejected(self):
        with pytest.raises(InvalidInput):
            vec_norm([1.0, np.inf], L1)
        with pytest.raises(InvalidInput):
            vec_norm([np.nan + 0j], L2)

    @given(st.lists(st.complex_numbers(max_magnitude=1e6, allow_nan=False,
                                       allow_infinity=False),
                    min_size=1, max_size=6),
           st.floats(min_value=0.01, max_value=100.0),
           st.sampled_from(range(4)))
    @settings(max_examples=60, deadline=None)
    def test_homogeneous(self, entries, scale, tag_idx):
        tag = ALL_TAGS[tag_idx]
        v = np.array(entries)
        assert vec_norm(scale * v, tag) == pytest.approx(
            scale * vec_norm(v, tag), rel=1e-10, abs=1e-12)

    def test_row_norms_matches_scalar(self, rng):
        rows = rng.standard_normal((7, 4)) + 1j * rng.standard_normal((7, 4))
        for tag in ALL_TAGS:
            batch = row_norms(rows, tag)
            for i in range(7):
                assert batch[i] == vec_norm(rows[i], tag)


class TestOpNorm:
    def test_l2_diagonal(self):
        assert op_norm(np.diag([3.0, 4.0]), L2).value == pytest.approx(4.0)

    def test_linf_row_sum(self):
        res = op_norm([[1, 1], [0, 1]], LINF)
        assert res.value == 2.0 and res.exact

    def test_l1_permutation(self):
        assert op_norm([[0, 1], [1, 0]], L1).value == 1.0

    def test_non_square_rejected(self):
        with pytest.raises(InvalidInput):
            op_norm(np.ones((2, 3)), L2)

    def test_lp_lower_bound_hits_diagonal(self):
        # for diagonal matrices every lp operator norm is the max modulus
        res = op_norm(np.diag([3.0, 4.0]), NormTag.lp(3.0), Tolerance(seed=5))
        assert not res.exact
        assert res.value <= 4.0 + 1e-9
        assert res.value == pytest.approx(4.0, rel=1e-6)

    def test_submultiplicative_exact_tags(self, rng):
        for tag in (L1, L2, LINF):
            for _ in range(20):
                a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
                b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
                ab = op_norm(a @ b, tag).value
                bound = op_norm(a, tag).value * op_norm(b, tag).value
                assert ab <= bound + 1e-9


class TestIsIsometry:
    def test_identity_all_tags(self):
        for tag in ALL_TAGS:
            assert is_isometry(np.eye(3), tag).ok

    def test_permutation_l1(self):
        assert is_isometry([[0, 1], [1, 0]], L1).ok

    def test_phased_permutation_lp(self):
        m = np.array([[0, 1j], [np.exp(0.7j), 0]])
        for tag in ALL_TAGS:
            assert is_isometry(m, tag).ok

    def test_shear_fails_l2_with_witness(self):
        res = is_isometry([[1, 1], [0, 1]], L2)
        assert not res.ok
        w = res.witness
        assert w is not None
        moved = vec_norm(np.array([[1, 1], [0, 1]]) @ w, L2)
        assert abs(moved - vec_norm(w, L2)) > 1e-3

    def test_scaled_permutation_fails_l1(self):
        res = is_isometry([[0, 2], [1, 0]], L1)
        assert not res.ok and res.residual == pytest.approx(1.0)

    def test_unitary_not_lp_isometry(self, rng):
        # a generic rotation preserves l2 but not l1
        theta = 0.7
        rot = np.array([[np.cos(theta), -np.sin(theta)],
                        [np.sin(theta), np.cos(theta)]])
        assert is_isometry(rot, L2).ok
        assert not is_isometry(rot, L1).ok

    def test_isometry_preserves_sampled_norms(self, rng):
        # spec invariant: certified isometries move no vector's norm
        cases = [(np.array([[0, 1j], [1, 0]]), L1),
                 (np.array([[0, 1], [1, 0]]), LINF)]
        q, _ = np.linalg.qr(rng.standard_normal((4, 4))
                            + 1j * rng.standard_normal((4, 4)))
        cases.append((q, L2))
        for mat, tag in cases:
            assert is_isometry(mat, tag).ok
            for _ in range(100):
                v = rng.standard_normal(mat.shape[0]) \
                    + 1j * rng.standard_normal(mat.shape[0])
                assert abs(vec_norm(mat @ v, tag) - vec_norm(v, tag)) \
                    <= 1e-8 * vec_norm(v, tag)


class TestHermitianEig:
    def test_diagonal(self):
        evals, _ = hermitian_eig(np.diag([1.0, 0.0]))
        assert np.allclose(evals, [1.0, 0.0])

    def test_rank_one_projection(self):
        evals, evecs = hermitian_eig(np.full((2, 2), 0.5))
        assert evals == pytest.approx([1.0, 0.0], abs=1e-12)

    def test_zero_matrix(self):
        evals, _ = hermitian_eig(np.zeros((3, 3)))
        assert np.all(evals == 0.0)

    def test_non_hermitian_rejected(self):
        with pytest.raises(InvalidInput):
            hermitian_eig([[0, 1], [0, 0]])

    def test_reconstruction_residual(self, rng):
        for _ in range(20):
            a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            h = a + a.conj().T
            evals, evecs = hermitian_eig(h)
            recon = (evecs * evals) @ evecs.conj().T
            assert np.linalg.norm(h - recon) <= 1e-9 * (1 + np.linalg.norm(h))
            assert np.all(np.diff(evals) <= 1e-12)


class TestNumericRank:
    def test_identity(self):
        assert numeric_rank(np.eye(3)) == 3

    def test_rank_one_outer(self):
        assert numeric_rank(np.outer([1, 1], [1, 1])) == 1

    def test_tiny_singular_value_dropped(self):
        assert numeric_rank(np.diag([1.0, 1e-15])) == 1

    def test_zero(self):
        assert numeric_rank(np.zeros((2, 2))) == 0


class TestDualPair:
    def test_direct_sum(self):
        assert dual_pair([1, 2], [3, 4]) == 11

    def test_bilinear_no_conjugation(self):
        assert dual_pair([1j, 0], [1, 0]) == 1j

    def test_dual_basis(self, rng):
        x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        e1 = np.zeros(4)
        e1[0] = 1.0
        assert dual_pair(x, e1) == x[0]

    def test_length_mismatch(self):
        with pytest.raises(InvalidInput):
            dual_pair([1, 2], [1])

    def test_adjoint_is_transpose(self, rng):
        # spec invariant: <Mx, f> = <x, M^T f> exactly up to 1e-12
        for _ in range(30):
            m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            f = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            assert abs(dual_pair(m @ x, f) - dual_pair(x, m.T @ f)) <= 1e-12

    def test_hermitian_inner_conjugates(self):
        assert hermitian_inner([1j], [1j]) == pytest.approx(1.0)


class TestSubsetSums:
    def test_matches_membership(self, rng):
        values = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
        sums = subset_sums(values)
        for mask in range(16):
            manual = np.zeros(3, dtype=complex)
            for w in range(4):
                if mask >> w & 1:
                    manual = manual + values[w]
            assert np.array_equal(sums[mask], manual)

    def test_max_abs_empty(self):
        assert max_abs(np.zeros((0, 2))) == 0.0
