import math

import numpy as np
import pytest

from pseudoherm import fixtures
from pseudoherm.core import OperatorRep
from pseudoherm.errors import NotASymmetry
from pseudoherm.products import (
    InnerProductReport,
    eta_inner,
    gram_report,
    rival_inner_biortho,
    rival_inner_transpose,
    x_inner,
    x_norm,
)
from pseudoherm.symmetry import build_suite

from conftest import assert_mat, fixture_pipeline

ETA1 = np.array([[0, -1j], [1j, 0]])
EP_I1 = np.diag([2, 0.5])


def test_eta_inner_i1(i1_bio):
    psi = i1_bio.psi
    assert abs(eta_inner(psi[:, 0], psi[:, 1], ETA1)) < 1e-15
    assert eta_inner(psi[:, 1], psi[:, 1], ETA1) == pytest.approx(-1)


def test_eta_inner_identity_is_standard():
    a, b = np.array([1j, 2]), np.array([3, -1j])
    assert eta_inner(a, b, np.eye(2)) == pytest.approx(np.vdot(a, b))


def test_x_inner_pt_indefinite(i1, i1_bio):
    suite = build_suite(i1_bio)
    psi1 = i1_bio.psi[:, 1]
    assert x_inner(suite.PT, psi1, psi1, EP_I1, H=i1.hamiltonian) == pytest.approx(-1)
    assert x_norm(suite.PT, psi1, EP_I1) == pytest.approx(-1)


def test_x_inner_cpt_definite(i1_bio):
    suite = build_suite(i1_bio)
    for k in range(2):
        p = i1_bio.psi[:, k]
        assert x_norm(suite.CPT, p, EP_I1) == pytest.approx(1)


def test_x_inner_off_diagonal_zero(i1_bio):
    suite = build_suite(i1_bio)
    for X in (suite.C, suite.PT, suite.CPT):
        assert abs(x_inner(X, i1_bio.psi[:, 0], i1_bio.psi[:, 1], EP_I1)) < 1e-14


def test_x_inner_rejects_non_symmetry(i1, i1_bio):
    suite = build_suite(i1_bio)
    with pytest.raises(NotASymmetry):
        x_inner(suite.P, i1_bio.psi[:, 0], i1_bio.psi[:, 0], EP_I1, H=i1.hamiltonian)


def test_x_inner_antilinear_componentwise_oracle():
    rng = np.random.default_rng(4)
    M = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    ep = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    xa = [sum(M[i, j] * a[j].conjugate() for j in range(2)) for i in range(2)]
    epb = [sum(ep[i, j] * b[j] for j in range(2)) for i in range(2)]
    expected = sum(xa[i].conjugate() * epb[i] for i in range(2))
    got = x_inner(OperatorRep(M, antilinear=True), a, b, ep)
    assert got == pytest.approx(expected, abs=1e-14)


def test_rival_transpose_i1(i1_bio):
    got = rival_inner_transpose(None, i1_bio.psi[:, 0], i1_bio.psi[:, 1])
    assert got == pytest.approx(-1.25j, abs=1e-12)


def test_rival_transpose_eq23():
    fx = fixtures.family_eq23(0, 3, 5)
    assert_mat(fx.pinned_eigenvectors, [[1, 1], [-3j, -1j / 3]], atol=1e-15)
    v = fx.pinned_eigenvectors
    assert abs(rival_inner_transpose(None, v[:, 0], v[:, 1])) < 1e-15


def test_rival_real_orthonormal():
    Q, _ = np.linalg.qr(np.random.default_rng(0).standard_normal((3, 3)))
    G = [[rival_inner_transpose(None, Q[:, m], Q[:, n]) for n in range(3)] for m in range(3)]
    assert_mat(G, np.eye(3), atol=1e-14)
    G = [[rival_inner_biortho(None, Q[:, m], Q[:, n]) for n in range(3)] for m in range(3)]
    assert_mat(G, np.eye(3), atol=1e-14)


def test_rival_biortho_i2_is_complex(i2_bio):
    # direct evaluation: upsilon_0 = eta psi_0 here since eta_plus = eta
    ups0, psi1 = i2_bio.upsilon[:, 0], i2_bio.psi[:, 1]
    expected = sum(ups0[k] * psi1[k] for k in range(2))
    got = rival_inner_biortho(None, ups0, psi1)
    assert got == pytest.approx(expected)
    th, x = math.pi / 8, 2.0
    # upsilon_0 = [sqrt(x) cos, i sin / sqrt(x)], so the product is i sin(2 th)
    assert got == pytest.approx(1j * math.sin(2 * th), abs=1e-12)
    psi0 = i2_bio.psi[:, 0]
    plain = rival_inner_transpose(None, psi0, psi1)
    assert plain == pytest.approx(1j * math.sin(th) * math.cos(th) * (x + 1 / x), abs=1e-12)


def test_rival_biortho_i1_cpt(i1_bio):
    suite = build_suite(i1_bio)
    val = rival_inner_biortho(suite.CPT, i1_bio.upsilon[:, 0], i1_bio.psi[:, 0])
    # CPT upsilon_0 = [[0,-i/2],[-2i,0]] conj([-i, 1/2]) = [-i/4, 2]; dot [-i/2, 1]
    assert val == pytest.approx(-0.125 + 2, abs=1e-12)


def test_gram_report_i1(i1_bio):
    suite = build_suite(i1_bio)
    rep = gram_report(i1_bio, ETA1, EP_I1, suite)
    assert_mat(rep["eta_plus"].values, np.eye(2))
    assert_mat(rep["X:PT"].values, np.diag([1, -1]))
    assert_mat(rep["X:CPT"].values, np.eye(2))
    assert rep["X:PT"].diagonal_signs == (1, -1)
    assert rep["X:CPT"].diagonal_signs == (1, 1)
    assert rep["eta"].diagonal_signs == (1, -1)
    assert not rep["rival_transpose"].real_definite


def test_gram_report_i2(i2, i2_bio):
    _, ep, _ = fixture_pipeline(i2)
    rep = gram_report(i2_bio, i2.fundamental_metric, ep, build_suite(i2_bio))
    assert_mat(rep["eta"].values, np.eye(2))


def test_gram_report_hermitian():
    from conftest import pipeline

    _, ep, bio = pipeline(np.diag([3.0, 1.0, -2.0]), np.eye(3))
    rep = gram_report(bio, np.eye(3), ep, build_suite(bio))
    for key in ("eta", "eta_plus", "X:CPT", "rival_transpose", "rival_biortho"):
        assert_mat(rep[key].values, np.eye(3))


def test_report_non_unit_diagonal():
    rep = InnerProductReport.from_values(np.diag([1, 2j]))
    assert rep.diagonal_signs == (1, "non-unit")
    assert not rep.real_definite
