"""Property-based checks of the pipeline invariants over seeded constructions."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudoherm import fixtures
from pseudoherm.core import OperatorRep, apply, compose, fro
from pseudoherm.matrixio import dumps_matrix, parse_matrix_text
from pseudoherm.metric import pseudo_hermiticity_residual, solve_metric_space
from pseudoherm.spectral import build_biortho, decompose
from pseudoherm.metric import metric_from_diagonalizer
from pseudoherm.symmetry import build_suite, p2_t2_condition, verify_suite

seeds = st.integers(0, 2**31 - 1)
dims = st.integers(2, 6)
SETTINGS = settings(max_examples=30, deadline=None)


def _system(H, eta, phases=None):
    sd = decompose(H, eta, phases=phases)
    ep = metric_from_diagonalizer(sd.diagonalizer).matrix
    return sd, ep, build_biortho(sd.vectors, eta, ep)


def _random_op(rng, n, antilinear):
    M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return OperatorRep(M, antilinear=antilinear)


@SETTINGS
@given(seeds, dims, st.booleans(), st.booleans(), st.booleans())
def test_compose_associative_and_matches_application(seed, n, fa, fb, fc):
    rng = np.random.default_rng(seed)
    a, b, c = (_random_op(rng, n, f) for f in (fa, fb, fc))
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    left = compose(compose(a, b), c)
    right = compose(a, compose(b, c))
    assert left.antilinear == right.antilinear == (fa ^ fb ^ fc)
    assert fro(left.matrix - right.matrix) <= 1e-9 * (1 + fro(left.matrix))
    direct = apply(a, apply(b, apply(c, v)))
    assert np.linalg.norm(apply(left, v) - direct) <= 1e-9 * (1 + np.linalg.norm(direct))


@SETTINGS
@given(seeds, dims)
def test_converse_construction_is_pseudo_hermitian(seed, n):
    H, D, _ = fixtures.random_real_spectrum(n, seed)
    assert np.abs(np.linalg.eigvals(H).imag).max() <= 1e-8
    assert pseudo_hermiticity_residual(H, np.linalg.inv(D @ D.conj().T)) <= 1e-8


@SETTINGS
@given(seeds, dims)
def test_suite_valid_on_random_real_spectrum(seed, n):
    H, D, _ = fixtures.random_real_spectrum(n, seed)
    eta = np.linalg.inv(D @ D.conj().T)
    _, _, bio = _system(H, eta)
    rep = verify_suite(H, build_suite(bio), bio, strict=False)
    assert rep["ok"], {k: rep["residuals"][k] for k, v in rep["passed"].items() if not v}


@SETTINGS
@given(seeds, st.integers(2, 4))
def test_parity_charge_and_eta_plus_are_phase_invariant(seed, n):
    H, D, _ = fixtures.random_real_spectrum(n, seed)
    eta = np.linalg.inv(D @ D.conj().T)
    phases = np.exp(2j * np.pi * np.random.default_rng(seed).uniform(size=n))
    _, ep1, b1 = _system(H, eta)
    _, ep2, b2 = _system(H, eta, phases)
    s1, s2 = build_suite(b1), build_suite(b2)
    scale = 1 + fro(ep1)
    assert fro(ep1 - ep2) <= 1e-8 * scale
    assert fro(s1.P.matrix - s2.P.matrix) <= 1e-8 * (1 + fro(s1.P.matrix))
    assert fro(s1.C.matrix - s2.C.matrix) <= 1e-8 * (1 + fro(s1.C.matrix))


@SETTINGS
@given(seeds, dims)
def test_metric_family_contains_eta_plus(seed, n):
    H, D, _ = fixtures.random_real_spectrum(n, seed)
    fam = solve_metric_space(H)
    assert fam.dimension == n
    assert fam.projection_defect(np.linalg.inv(D @ D.conj().T)) <= 1e-8


@SETTINGS
@given(seeds, dims)
def test_hermitian_limit(seed, n):
    H = fixtures.random_hermitian(n, seed)
    _, ep, bio = _system(H, np.eye(n))
    assert fro(ep - np.eye(n)) <= 1e-8
    suite = build_suite(bio)
    rep = verify_suite(H, suite, bio, strict=False)
    assert rep["ok"]
    assert rep["residuals"]["square.P"] <= 1e-8
    assert rep["residuals"]["square.T"] <= 1e-8
    assert p2_t2_condition(bio) == (True, True)


@SETTINGS
@given(seeds, dims)
def test_p2_t2_biconditional_random(seed, n):
    H, D, _ = fixtures.random_real_spectrum(n, seed)
    _, _, bio = _system(H, np.linalg.inv(D @ D.conj().T))
    holds, equal = p2_t2_condition(bio)
    assert holds == equal


@SETTINGS
@given(st.lists(st.tuples(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6)), min_size=9, max_size=9))
def test_matrix_text_round_trip(entries):
    H = np.array([complex(a, b) for a, b in entries]).reshape(3, 3)
    assert np.array_equal(parse_matrix_text(dumps_matrix(H)).H, H)
