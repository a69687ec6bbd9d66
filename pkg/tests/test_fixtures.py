import math

import numpy as np
import pytest

from pseudoherm import fixtures
from pseudoherm.core import fro
from pseudoherm.metric import (
    metric_conjugate_paired,
    pseudo_hermiticity_residual,
    sigma_x_blocks,
)
from pseudoherm.symmetry import build_charge, build_parity, build_time_reversal

from conftest import assert_mat, fixture_pipeline


# -- eq3 family ------------------------------------------------------------------------

def test_eq3_real_branch():
    fx = fixtures.family_eq3(1, 1, 4)
    assert_mat(fx.expected["eigenvalues"], [3, -1], atol=1e-12)
    assert fx.params["r"] == 2
    assert fx.real_spectrum
    for name in ("eta1", "eta2", "eta3", "eta4"):
        assert pseudo_hermiticity_residual(fx.hamiltonian, fx.metrics[name]) < 1e-12, name


def test_eq3_hermitian_limit():
    fx = fixtures.family_eq3(0, 1, 1)
    assert_mat(fx.hamiltonian, [[0, -1j], [1j, 0]])
    assert_mat(np.sort(np.linalg.eigvalsh(fx.hamiltonian)), [-1, 1])


def test_eq3_conjugate_branch():
    fx = fixtures.family_eq3(0, 1, -1)
    assert not fx.real_spectrum
    assert_mat(sorted(fx.expected["eigenvalues"], key=lambda z: z.imag), [-1j, 1j])
    assert fx.pinned_eigenvectors is None


def test_eq3_pinned_vectors_are_eigenvectors():
    fx = fixtures.family_eq3(1, 1, 4)
    H, V = fx.hamiltonian, fx.pinned_eigenvectors
    for k, E in enumerate(fx.expected["eigenvalues"]):
        assert fro(H @ V[:, k] - E * V[:, k]) < 1e-12


# -- eq23 family -----------------------------------------------------------------------

def test_eq23_example():
    fx = fixtures.family_eq23(0, 3, 5)
    assert_mat(fx.expected["eigenvalues"], [4, -4])
    assert fx.params["r"] == pytest.approx(3)
    assert abs(fx.expected["transpose_product"]) < 1e-15
    H, V = fx.hamiltonian, fx.pinned_eigenvectors
    for k, E in enumerate(fx.expected["eigenvalues"]):
        assert fro(H @ V[:, k] - E * V[:, k]) < 1e-12


def test_eq23_decoupled():
    fx = fixtures.family_eq23(1, 0, 2)
    assert_mat(fx.expected["eigenvalues"], [3, -1])
    assert_mat(fx.hamiltonian, np.diag([-1, 3]))


def test_eq23_conjugate_branch():
    fx = fixtures.family_eq23(0, 5, 3)
    assert not fx.real_spectrum
    assert_mat(fx.expected["eigenvalues"], [4j, -4j])


# -- eq28 family -----------------------------------------------------------------------

def test_eq28_example():
    fx = fixtures.family_eq28(3, 1, 1, 2)
    assert fx.params["theta"] == pytest.approx(math.pi / 8)
    assert_mat(fx.expected["eigenvalues"], [2 + math.sqrt(2), 2 - math.sqrt(2)])


def test_eq28_equal_diagonal():
    fx = fixtures.family_eq28(0, 0, 1, 2)
    assert fx.params["theta"] == pytest.approx(math.pi / 4)
    assert_mat(fx.expected["eigenvalues"], [1, -1])


def test_eq28_x1_is_hermitian():
    H = fixtures.family_eq28(3, 1, 1, 1).hamiltonian
    assert_mat(H, H.conj().T)


def test_eq28_rejects_zero_x():
    with pytest.raises(ValueError):
        fixtures.family_eq28(1, 0, 1, 0)


@pytest.mark.parametrize("params", [(3, 1, 1, 2), (0, 0, 1, 2), (2, -1, 0.5, 0.7), (1, 4, 2, 3)])
def test_eq28_pipeline_reproduces_expected(params):
    fx = fixtures.family_eq28(*params)
    sd, eta_plus, bio = fixture_pipeline(fx)
    assert_mat(sd.eigenvalues, fx.expected["eigenvalues"])
    assert_mat(eta_plus, fx.expected["eta_plus"])
    assert_mat(build_parity(bio).matrix, fx.expected["P"])
    assert_mat(build_time_reversal(bio).matrix, fx.expected["T"])
    assert_mat(build_charge(bio).matrix, fx.expected["C"])
    psi = sd.vectors
    assert complex(psi[:, 0] @ psi[:, 1]) == pytest.approx(fx.expected["transpose_product"])


# -- illustrations -----------------------------------------------------------------------

@pytest.mark.parametrize("r, a", [(2.0, 1.0), (2.0, -3.5), (0.5, 0.0), (1.7, 2.0)])
def test_i1_pipeline_reproduces_expected(r, a):
    fx = fixtures.fixture_I1(r, a)
    sd, eta_plus, bio = fixture_pipeline(fx)
    assert_mat(eta_plus, fx.expected["eta_plus"])
    assert_mat(build_parity(bio).matrix, fx.expected["P"])
    assert_mat(build_time_reversal(bio).matrix, fx.expected["T"])
    assert_mat(build_charge(bio).matrix, fx.expected["C"])
    assert tuple(int(s) for s in sd.signs) == fx.expected["signs"]
    psi = sd.vectors
    assert complex(psi[:, 0] @ psi[:, 1]) == pytest.approx(fx.expected["transpose_product"])


def test_i1_r1_is_identity_metric():
    _, eta_plus, _ = fixture_pipeline(fixtures.fixture_I1(1.0))
    assert_mat(eta_plus, np.eye(2))


def test_i1_rejects_nonpositive_r():
    with pytest.raises(ValueError):
        fixtures.fixture_I1(0.0)


def test_i2_claims():
    fx = fixtures.fixture_I2()
    sd, eta_plus, bio = fixture_pipeline(fx)
    C = build_charge(bio).matrix
    P = build_parity(bio).matrix
    assert_mat(np.linalg.inv(C @ P), fx.expected["CP_inverse"])
    assert_mat(eta_plus, fx.fundamental_metric)
    assert tuple(int(s) for s in sd.signs) == fx.expected["signs"]


def test_i2_hermitian_limit():
    _, eta_plus, _ = fixture_pipeline(fixtures.fixture_I2(3, 1, 1, 1))
    assert_mat(eta_plus, np.eye(2))


def test_fixture_arrays_are_read_only():
    fx = fixtures.fixture_I1()
    with pytest.raises(ValueError):
        fx.hamiltonian[0, 0] = 0
    with pytest.raises(ValueError):
        fx.expected["P"][0, 0] = 0


# -- random constructions -----------------------------------------------------------------

def test_random_real_spectrum_deterministic():
    H1, D1, l1 = fixtures.random_real_spectrum(4, 11)
    H2, D2, l2 = fixtures.random_real_spectrum(4, 11)
    assert np.array_equal(H1, H2) and np.array_equal(D1, D2) and np.array_equal(l1, l2)
    assert not np.array_equal(H1, fixtures.random_real_spectrum(4, 12)[0])


def test_random_real_spectrum_properties():
    H, D, lam = fixtures.random_real_spectrum(2, 42)
    assert np.max(np.abs(np.linalg.eigvals(H).imag)) <= 1e-9
    assert np.all(np.diff(lam) < -0.1)
    assert np.linalg.cond(D) < 1e3
    H, D, _ = fixtures.random_real_spectrum(6, 7)
    assert pseudo_hermiticity_residual(H, np.linalg.inv(D @ D.conj().T)) <= 1e-8


def test_random_real_spectrum_n1():
    H, D, lam = fixtures.random_real_spectrum(1, 5)
    assert H.shape == (1, 1)
    assert H[0, 0] == pytest.approx(lam[0])


def test_random_real_spectrum_rejects_large_n():
    with pytest.raises(ValueError):
        fixtures.random_real_spectrum(17, 0)


@pytest.mark.parametrize("n_pairs", [1, 2, 3])
def test_random_conjugate_paired(n_pairs):
    H, D, lam = fixtures.random_conjugate_paired(n_pairs, 3)
    assert np.all(np.abs(lam.imag) > 0.1)
    assert_mat(lam[1::2], lam[0::2].conj(), atol=0)
    eta = metric_conjugate_paired(D).matrix
    assert pseudo_hermiticity_residual(H, eta) <= 1e-8
    oracle = np.linalg.inv(D @ sigma_x_blocks(2 * n_pairs) @ D.conj().T)
    assert_mat(eta, oracle, atol=1e-8)


def test_conjugate_pair_trivial():
    H = np.diag([1j, -1j])
    assert_mat(metric_conjugate_paired(np.eye(2)).matrix, [[0, 1], [1, 0]])
    assert pseudo_hermiticity_residual(H, np.array([[0, 1], [1, 0]])) < 1e-15


def test_random_hermitian():
    H = fixtures.random_hermitian(5, 0)
    assert_mat(H, H.conj().T, atol=0)
