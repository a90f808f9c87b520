import numpy as np
import pytest

from steerwork.mub import (
    MubConstructionError,
    MubSet,
    build_mub,
    conjugate_basis,
    is_prime,
    supported_family,
    verify_mub,
)
from steerwork.qmath import overlap2

ODD_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23]


def exhaustive_overlap_check(mub, tol):
    # direct loop over every vector pair, independent of verify_mub
    target_cross = 1.0 / np.sqrt(mub.d)
    worst = 0.0
    for x in range(mub.n):
        for a in range(mub.d):
            for y in range(mub.n):
                for b in range(mub.d):
                    ov = abs(np.vdot(mub.vector(x, a), mub.vector(y, b)))
                    expect = (1.0 if a == b else 0.0) if x == y else target_cross
                    worst = max(worst, abs(ov - expect))
    assert worst < tol, f"worst deviation {worst:.3e}"
    return worst


class TestBuildMub:
    def test_qubit_pauli_family(self):
        mub = build_mub(2, 3)
        # basis 0 is computational (Z); bases are the Pauli eigenbases
        assert np.allclose(mub.basis(0), np.eye(2))
        exhaustive_overlap_check(mub, 1e-12)
        for x in range(3):
            for y in range(x + 1, 3):
                for a in range(2):
                    for b in range(2):
                        ov = abs(np.vdot(mub.vector(x, a), mub.vector(y, b)))
                        assert abs(ov - 1 / np.sqrt(2)) < 1e-12

    def test_fourier_pair_d4(self):
        mub = build_mub(4, 2)
        assert np.allclose(mub.basis(0), np.eye(4))
        cross = np.abs(mub.basis(1).conj() @ mub.basis(0).T)
        assert np.allclose(cross, 0.5, atol=1e-12)

    def test_qutrit_full_family(self):
        worst = exhaustive_overlap_check(build_mub(3, 4), 1e-12)
        assert worst < 1e-12

    @pytest.mark.parametrize("d", ODD_PRIMES)
    def test_odd_prime_maximal_family(self, d):
        report = verify_mub(build_mub(d, d + 1), tol=1e-10)
        assert report.passed, report

    @pytest.mark.parametrize("d,n", [(2, 2), (2, 3), (4, 2), (6, 2), (9, 2), (3, 3), (5, 4)])
    def test_supported_families_verify(self, d, n):
        assert supported_family(d, n)
        assert verify_mub(build_mub(d, n), tol=1e-10).passed

    @pytest.mark.parametrize("d,n", [(4, 3), (6, 3), (9, 4), (8, 9), (2, 4), (3, 5), (2, 1)])
    def test_unsupported_raises(self, d, n):
        assert not supported_family(d, n)
        with pytest.raises(MubConstructionError):
            build_mub(d, n)

    def test_error_names_supported_families(self):
        with pytest.raises(MubConstructionError, match="odd prime"):
            build_mub(6, 3)


class TestVerifyMub:
    def test_passes_on_good_set(self):
        report = verify_mub(build_mub(3, 4), tol=1e-10)
        assert report.passed
        assert report.max_deviation < 1e-12

    def test_duplicated_basis_fails(self):
        eye = np.eye(2, dtype=complex)
        report = verify_mub(MubSet(d=2, n=2, bases=np.stack([eye, eye])))
        assert not report.passed
        # worst offender: a cross overlap of 0 against an expected 1/sqrt(2)
        assert abs(report.max_deviation - 1 / np.sqrt(2)) < 1e-12
        x, _, y, _ = report.worst_pair
        assert x != y

    def test_denormalized_vector_fails(self):
        mub = build_mub(2, 3)
        bases = mub.bases.copy()
        bases[1, 0] *= 0.9
        report = verify_mub(MubSet(d=2, n=3, bases=bases))
        assert not report.passed
        assert report.max_deviation > 0.05

    def test_phase_perturbed_vector_fails(self):
        mub = build_mub(3, 4)
        bases = mub.bases.copy()
        bases[2, 1, 0] *= np.exp(1j * 1e-3)
        report = verify_mub(MubSet(d=3, n=4, bases=bases))
        assert not report.passed
        assert report.max_deviation > 1e-5

    def test_tolerance_semantics(self):
        # rounding noise sits around 1e-16, so an absurdly tight tolerance fails
        assert verify_mub(build_mub(7, 8), tol=1e-10).passed
        assert not verify_mub(build_mub(7, 8), tol=0.0).passed


class TestConjugateBasis:
    def test_real_bases_fixed(self):
        mub = build_mub(2, 3)
        for x in (0, 1):  # Z and X eigenbases are real
            assert np.allclose(conjugate_basis(mub, x), mub.basis(x))

    def test_y_basis_swaps_phases(self):
        mub = build_mub(2, 3)
        got = conjugate_basis(mub, 2)
        s = 1 / np.sqrt(2)
        assert np.allclose(got, np.array([[s, -1j * s], [s, 1j * s]]))

    def test_fourier_conjugate_orthonormal(self):
        mub = build_mub(3, 2)
        conj = conjugate_basis(mub, 1)
        gram = conj.conj() @ conj.T
        assert np.allclose(gram, np.eye(3), atol=1e-12)

    def test_involution(self):
        mub = build_mub(5, 6)
        for x in range(6):
            twice = np.conj(conjugate_basis(mub, x))
            for a in range(5):
                assert overlap2(twice[a], mub.vector(x, a)) > 1 - 1e-12

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            conjugate_basis(build_mub(2, 2), 2)


class TestMisc:
    def test_is_prime(self):
        primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61}
        for d in range(1, 65):
            assert is_prime(d) == (d in primes)

    def test_json_round_trip(self):
        mub = build_mub(3, 4)
        again = MubSet.from_json_dict(mub.to_json_dict())
        assert again.d == 3 and again.n == 4
        assert np.array_equal(again.bases, mub.bases)
