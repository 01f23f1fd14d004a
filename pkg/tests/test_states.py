import math

import numpy as np
import pytest

from spinrep.angular import basis_ket, rotation_matrix, so3_from_su2, su2_from_euler, tensor_operator
from spinrep.constellation import constellation_of_ket, match_stars
from spinrep.states import (STATE_NAMES, coherent_state, dicke_isometry, named_state,
                            oracle_contract, oracle_expectation, oracle_matrix_product,
                            oracle_partial_trace, oracle_trace, pure_from_stars,
                            random_density_matrix, random_pure_state)


def _random_stars(rng, n):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def test_pure_from_stars_simple():
    np.testing.assert_allclose(pure_from_stars([[0, 0, 1]] * 4), basis_ket(4, 4), atol=1e-15)
    # explicit symmetrisation of |up>|down>
    np.testing.assert_allclose(pure_from_stars([[0, 0, 1], [0, 0, -1]]), basis_ket(2, 0), atol=1e-15)
    with pytest.raises(ValueError):
        pure_from_stars(np.zeros((0, 3)))


def test_pure_from_stars_phase_convention(rng):
    psi = pure_from_stars(_random_stars(rng, 5))
    assert abs(np.linalg.norm(psi) - 1) < 1e-14
    first = psi[np.argmax(np.abs(psi) > 1e-10)]
    assert first.imag == 0 and first.real > 0


@pytest.mark.parametrize("n", range(1, 9))
def test_stars_round_trip(rng, n):
    for _ in range(12):
        stars = _random_stars(rng, n)
        worst, _ = match_stars(constellation_of_ket(pure_from_stars(stars)), stars)
        assert worst < 1e-8


def test_stars_round_trip_with_repeats(rng):
    base = _random_stars(rng, 2)
    stars = np.vstack([base[[0, 0, 0]], base[[1]], -base[[1]]])
    worst, _ = match_stars(constellation_of_ket(pure_from_stars(stars)), stars)
    assert worst < 1e-7


@pytest.mark.parametrize("n", [1, 3, 6])
def test_pure_from_stars_rotation_covariant(rng, n):
    stars = _random_stars(rng, n)
    u = su2_from_euler(rng.uniform(-3, 3, size=3))
    rotated = pure_from_stars(stars @ so3_from_su2(u).T)
    expected = rotation_matrix(n, u) @ pure_from_stars(stars)
    assert abs(abs(np.vdot(rotated, expected)) - 1) < 1e-10


def test_coherent_state_overlap():
    n = np.array([0.0, 0.0, 1.0])
    np.testing.assert_allclose(coherent_state(3, n), basis_ket(3, 3), atol=1e-15)
    m = np.array([1.0, 0.0, 0.0])
    # <+x|+z>^N for spin 1/2 constituents: cos(pi/4)^N
    assert abs(np.vdot(coherent_state(4, m), basis_ket(4, 4))) == pytest.approx(0.5 ** 2, abs=1e-15)


@pytest.mark.parametrize("name", STATE_NAMES)
@pytest.mark.parametrize("two_s", [2, 3, 4])
def test_named_states_are_density_matrices(name, two_s):
    rho = named_state(name, two_s, two_m=0 if two_s % 2 == 0 else 1)
    assert np.trace(rho).real == pytest.approx(1, abs=1e-12)
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-15)
    assert np.linalg.eigvalsh(rho).min() > -1e-12


def test_named_state_examples():
    np.testing.assert_allclose(named_state("maximally_mixed", 2), np.eye(3) / 3, atol=1e-15)
    np.testing.assert_allclose(named_state("ghz", 3), named_state("cat_q", 3), atol=0)
    with pytest.raises(ValueError):
        named_state("w", 1)
    with pytest.raises(ValueError):
        named_state("dicke", 2)
    with pytest.raises(ValueError):
        named_state("bogus", 2)


@pytest.mark.parametrize("two_s", range(1, 9))
def test_cat_difference_is_top_tensor(two_s):
    diff = named_state("cat_q", two_s) - named_state("cat_c", two_s)
    expected = 0.5 * ((-1) ** two_s * tensor_operator(two_s, two_s, two_s)
                      + tensor_operator(two_s, two_s, -two_s))
    np.testing.assert_allclose(diff, expected, atol=1e-14)


def test_dicke_isometry_orthonormal():
    for n in range(0, 7):
        v = dicke_isometry(n)
        np.testing.assert_allclose(v.T @ v, np.eye(n + 1), atol=1e-14)
    with pytest.raises(ValueError):
        dicke_isometry(13)


def test_oracle_partial_trace_basics(rng):
    rho = random_density_matrix(1, rng)
    np.testing.assert_allclose(oracle_partial_trace(rho, 1), [[1.0]], atol=1e-15)
    rho = random_density_matrix(6, rng)
    for k in range(7):
        red = oracle_partial_trace(rho, k)
        assert np.trace(red).real == pytest.approx(1, abs=1e-12)
        assert np.linalg.eigvalsh(red).min() > -1e-10
    with pytest.raises(ValueError):
        oracle_partial_trace(rho, 7)


def test_ghz_loses_coherence_after_one_loss():
    red = oracle_partial_trace(named_state("ghz", 3), 1)
    np.testing.assert_allclose(red, oracle_partial_trace(named_state("cat_c", 3), 1), atol=1e-15)
    np.testing.assert_allclose(red, np.diag([0.5, 0, 0.5]), atol=1e-15)


def test_oracle_contract_of_stretched_state():
    out = oracle_contract(basis_ket(4, 4), [0, 0, 1])
    np.testing.assert_allclose(out, basis_ket(3, 3), atol=1e-15)
    assert np.linalg.norm(oracle_contract(basis_ket(4, 4), [0, 0, -1])) < 1e-15


def test_oracle_plumbing():
    sz = np.diag([1.0, -1.0])
    assert oracle_trace(oracle_matrix_product(sz, sz)) == pytest.approx(2.0)
    assert oracle_trace(np.eye(5)) == pytest.approx(5.0)
    assert oracle_expectation(np.array([1, 1]) / math.sqrt(2), sz) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        oracle_matrix_product(np.eye(2), np.eye(3))
    with pytest.raises(ValueError):
        oracle_expectation(np.ones(3), np.eye(2))


def test_random_density_matrix_rank(rng):
    rho = random_density_matrix(4, rng, rank=2)
    assert np.sum(np.linalg.eigvalsh(rho) > 1e-12) == 2
    assert np.linalg.norm(random_pure_state(4, rng)) == pytest.approx(1)
