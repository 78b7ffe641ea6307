import random
from fractions import Fraction
from math import sqrt

import numpy as np
import pytest

from conftest import (
    random_conserving_hamiltonian,
    random_rational,
    spectral_deviation,
)
from qesboson import (
    ConservedCharge,
    FockState,
    NonConservingHamiltonian,
    ZeroVector,
    apply_to_fock,
    block_amplitudes,
    block_matrix,
    block_spectrum,
    build_block,
    build_nth_harmonic,
    build_shg,
    charge_operator,
    diagonalize_block,
    eigen_residual,
    enumerate_block,
    is_hermitian,
    number,
    shg_charge,
)


class TestEnumerateBlock:
    def test_kappa_two(self):
        charge = ConservedCharge(1, 2)
        assert enumerate_block(charge, 2) == (FockState(2, 0), FockState(0, 1))

    def test_kappa_five(self):
        charge = ConservedCharge(1, 2)
        assert enumerate_block(charge, 5) == (
            FockState(5, 0),
            FockState(3, 1),
            FockState(1, 2),
        )

    def test_empty_block(self):
        assert enumerate_block(ConservedCharge(2, 3), 1) == ()

    def test_exhaustive_and_ordered(self):
        charge = ConservedCharge(2, 3)
        for kappa in range(25):
            basis = enumerate_block(charge, kappa)
            n2s = [st.n2 for st in basis]
            assert n2s == sorted(n2s)
            # brute-force enumeration over a box
            brute = {
                (n1, n2)
                for n1 in range(kappa + 1)
                for n2 in range(kappa + 1)
                if 2 * n1 + 3 * n2 == kappa
            }
            assert {(st.n1, st.n2) for st in basis} == brute


class TestBlockMatrix:
    def test_shg_kappa_two(self, shg):
        h, charge = shg
        m = block_matrix(h, enumerate_block(charge, 2))
        expected = np.array([[2.0, sqrt(2) / 2], [sqrt(2) / 2, 2.0]])
        assert np.allclose(m, expected, atol=1e-15)

    def test_diagonal_model(self):
        h = 3 * number(1) + 5 * number(2)
        charge = ConservedCharge(1, 2)
        basis = enumerate_block(charge, 6)
        m = block_matrix(h, basis)
        diag = [3 * st.n1 + 5 * st.n2 for st in basis]
        assert np.allclose(m, np.diag(diag))

    def test_vacuum_block(self, shg):
        h, charge = shg
        m = block_matrix(h, enumerate_block(charge, 0))
        assert m.shape == (1, 1) and m[0, 0] == 0

    def test_closure_for_catalog(self):
        # catalog models never leak outside their blocks
        cases = [
            (build_shg(1, 2, Fraction(1, 2), Fraction(1, 2)), ConservedCharge(1, 2), 40),
            (build_nth_harmonic(1, 2, Fraction(1, 2), Fraction(1, 2), 3), ConservedCharge(1, 3), 30),
            (build_nth_harmonic(1, 3, Fraction(1, 4), Fraction(1, 4), 1), ConservedCharge(1, 1), 15),
        ]
        for h, charge, kmax in cases:
            for kappa in range(kmax + 1):
                basis = set(enumerate_block(charge, kappa))
                for state in basis:
                    assert set(apply_to_fock(h, state)) <= basis

    def test_hermitian_entries_symbolically(self, shg):
        # q_ij * rho_ij == conj(q_ji) exactly, entry by entry
        h, charge = shg
        for kappa in range(8):
            basis = enumerate_block(charge, kappa)
            entries = block_amplitudes(h, basis)
            for (i, j), amp in entries.items():
                mirror = entries[(j, i)]
                assert amp.coeff * amp.radicand == mirror.coeff.conjugate()

    def test_non_conserving_rejected(self, shg):
        h, _ = shg
        with pytest.raises(NonConservingHamiltonian):
            build_block(h, ConservedCharge(1, 1), 2)


class TestBlockSpectrum:
    def test_kappa_two_closed_form(self, shg):
        h, charge = shg
        report = block_spectrum(h, charge, 2)
        expected = [2 - sqrt(2) / 2, 2 + sqrt(2) / 2]
        assert np.allclose([v.real for v in report.eigenvalues], expected)
        assert report.method == "hermitian"
        assert report.max_residual <= 1e-12

    def test_kappa_four_closed_form(self, shg):
        h, charge = shg
        report = block_spectrum(h, charge, 4)
        assert np.allclose([v.real for v in report.eigenvalues], [2, 4, 6])

    def test_kappa_one_single_state(self, shg):
        h, charge = shg
        report = block_spectrum(h, charge, 1)
        assert report.dimension == 1
        assert report.eigenvalues[0] == pytest.approx(1.0)

    def test_empty_block_report(self):
        # charge (2,3) has no states at kappa=1
        h_diag = 2 * number(1) + 3 * number(2)
        report = block_spectrum(h_diag, ConservedCharge(2, 3), 1)
        assert report.dimension == 0
        assert report.eigenvalues == ()
        assert report.max_residual == 0.0

    def test_hermitian_eigenvalues_real(self, shg):
        h, charge = shg
        assert is_hermitian(h)
        for kappa in range(12):
            report = block_spectrum(h, charge, kappa)
            assert all(abs(v.imag) <= 1e-12 for v in report.eigenvalues)

    def test_residuals_small_through_dim_50(self):
        h = build_shg(1, 2, Fraction(1, 2), Fraction(1, 2))
        report = block_spectrum(h, shg_charge(), 98)  # dimension 50
        assert report.dimension == 50
        assert report.max_residual <= 1e-10

    def test_scaling_equivariance(self):
        rng = random.Random(3)
        charge = ConservedCharge(1, 2)
        for _ in range(6):
            h = random_conserving_hamiltonian(rng, charge, n_terms=3, max_exp=3)
            c = random_rational(rng)
            if c == 0:
                c = Fraction(3, 2)
            base = np.array(block_spectrum(h, charge, 6).eigenvalues)
            scaled = np.array(block_spectrum(c * h, charge, 6).eigenvalues)
            assert spectral_deviation(scaled, float(c) * base) <= 1e-10

    def test_shift_by_charge_equivariance(self):
        rng = random.Random(9)
        charge = ConservedCharge(1, 2)
        k_op = charge_operator(charge)
        for _ in range(6):
            h = random_conserving_hamiltonian(rng, charge, n_terms=3, max_exp=3)
            c = Fraction(rng.randint(1, 5), 3)
            kappa = rng.randint(0, 8)
            base = np.array(block_spectrum(h, charge, kappa).eigenvalues)
            shifted = np.array(block_spectrum(h + c * k_op, charge, kappa).eigenvalues)
            assert spectral_deviation(shifted, base + float(c) * kappa) <= 1e-10


class TestEigenResidual:
    def test_identity_matrix(self):
        assert eigen_residual(np.eye(3), 1.0, np.ones(3)) == 0.0

    def test_closed_form_pair(self):
        m = np.array([[2.0, sqrt(2) / 2], [sqrt(2) / 2, 2.0]])
        assert eigen_residual(m, 2.7071068, np.array([1.0, 1.0])) <= 1e-7

    def test_nilpotent_exact_null_vector(self):
        m = np.array([[0.0, 1.0], [0.0, 0.0]])
        assert eigen_residual(m, 0.0, np.array([1.0, 0.0])) == 0.0

    def test_zero_vector_rejected(self):
        with pytest.raises(ZeroVector):
            eigen_residual(np.eye(2), 1.0, np.zeros(2))


def test_diagonalize_block_orthonormal_vectors(shg):
    h, charge = shg
    block, values, vectors, method, _ = diagonalize_block(h, charge, 8)
    assert method == "hermitian"
    assert np.allclose(vectors.conj().T @ vectors, np.eye(block.dimension), atol=1e-12)
    assert np.allclose(block.matrix @ vectors, vectors @ np.diag(values), atol=1e-12)
