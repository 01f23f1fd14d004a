import json
import math

import numpy as np
import pytest

from spinrep.angular import spin_matrices, tensor_operator
from spinrep.polynomial import (identity_poly, operator_from_poly, partial_trace_L, poly_from_operator)
from spinrep.srep import (NuIndex, compositions, embed_lift, l_factor, ladder_commutator,
                          nested_commutator_tensor, pauli_poly, reduced_srep, s_operator, s_poly,
                          srep_coefficients, srep_from_json, srep_to_json, t_from_s_expansion,
                          t_in_s_expansion, reduction_factor)
from spinrep.states import oracle_partial_trace, oracle_s_operator, random_density_matrix


def _from_coeffs(entries, two_s):
    out = np.zeros((two_s + 1, two_s + 1), dtype=complex)
    for nu, c in entries.items():
        out += c * s_operator(nu)
    return out


def test_compositions_count():
    for n in range(7):
        nus = compositions(n)
        assert len(nus) == math.comb(n + 3, 3)
        assert all(nu.two_s == n for nu in nus)
        assert len(set(nus)) == len(nus)


@pytest.mark.parametrize("label, matrix", [
    ("0", np.eye(2)), ("-", [[0, 0], [2, 0]]), ("z", np.diag([1, -1])), ("+", [[0, 2], [0, 0]]),
])
def test_pauli_polys(label, matrix):
    np.testing.assert_allclose(operator_from_poly(pauli_poly(label)), matrix, atol=1e-15)


@pytest.mark.parametrize("n", range(1, 7))
def test_s_operator_matches_tensor_oracle(n):
    for nu in compositions(n):
        np.testing.assert_allclose(s_operator(nu), oracle_s_operator(nu), atol=1e-12)


@pytest.mark.parametrize("n", range(0, 7))
def test_s_operator_examples(n):
    np.testing.assert_allclose(s_operator((n, 0, 0, 0)), np.eye(n + 1), atol=1e-13)
    np.testing.assert_allclose(s_poly((n, 0, 0, 0)).coeffs, identity_poly(n).coeffs, atol=1e-13)
    if n >= 1:
        np.testing.assert_allclose((-2.0) ** (-n) * s_operator((0, 0, 0, n)), tensor_operator(n, n, n), atol=1e-13)
        s_minus = spin_matrices(n)[4]
        np.testing.assert_allclose(n / 2 * s_operator((n - 1, 1, 0, 0)), s_minus, atol=1e-13)


def test_s_operator_rejects_negative():
    with pytest.raises(ValueError):
        s_operator((1, -1, 1, 1))


@pytest.mark.parametrize("two_s", [1, 2, 3])
def test_srep_coefficients_maximally_mixed(two_s):
    coeffs = srep_coefficients(np.eye(two_s + 1) / (two_s + 1))
    for nu, c in coeffs.items():
        assert c == pytest.approx(np.trace(s_operator(nu)) / (two_s + 1), abs=1e-13)


def test_srep_sigma_z_spin_half():
    assert srep_coefficients(np.diag([1.0, -1.0]))[NuIndex(0, 0, 1, 0)] == pytest.approx(2)


@pytest.mark.parametrize("two_s", [1, 2, 3, 4])
def test_srep_coefficients_are_traces(rng, two_s):
    rho = random_density_matrix(two_s, rng)
    for nu, c in srep_coefficients(rho).items():
        assert c == pytest.approx(np.trace(rho @ s_operator(nu)), abs=1e-12)


@pytest.mark.parametrize("two_s", [1, 2, 3, 4, 5, 6])
def test_reduced_srep_subset_rule(rng, two_s):
    rho = random_density_matrix(two_s, rng)
    coeffs = srep_coefficients(rho)
    for two_k in range(two_s + 1):
        reduced = srep_coefficients(oracle_partial_trace(rho, two_s - two_k))
        subset = reduced_srep(coeffs, two_s, two_k)
        for nu in compositions(two_k):
            assert subset[nu] == pytest.approx(reduced[nu], abs=1e-10)
    with pytest.raises(ValueError):
        reduced_srep(coeffs, two_s, two_s + 1)


@pytest.mark.parametrize("two_s, sigma, expected", [
    (2, 1, 1.0), (3, 1, math.sqrt(10) / 3), (2, 2, 0.0), (1, 1, 0.0), (4, 0, math.sqrt(5) / 2),
])
def test_reduction_factor_examples(two_s, sigma, expected):
    assert reduction_factor(two_s, sigma) == pytest.approx(expected, abs=1e-15)


def test_reduction_factor_table_consistency():
    # s = 3/2 SC reduction of w_1: 3/(2 sqrt5) -> 1/sqrt2
    assert 3 / (2 * math.sqrt(5)) * reduction_factor(3, 1) == pytest.approx(1 / math.sqrt(2), abs=1e-15)


def test_reduction_factor_errors():
    with pytest.raises(ValueError):
        reduction_factor(0, 0)
    with pytest.raises(ValueError):
        reduction_factor(2, 3)
    with pytest.raises(ValueError):
        l_factor(2, 3)


def test_l_factor_top_and_scalar():
    assert l_factor(4, 4) == pytest.approx(1.0)
    # scalar block: T_00 = 1/sqrt(2s+1), so l = sqrt(2s+1)
    for n in range(6):
        assert l_factor(n, 0) == pytest.approx(math.sqrt(n + 1))


@pytest.mark.parametrize("two_s", range(1, 9))
def test_partial_trace_scales_tensor_polynomials(two_s):
    for sigma in range(two_s + 1):
        for mu in range(-sigma, sigma + 1):
            big = poly_from_operator(tensor_operator(two_s, sigma, mu))
            lowered = partial_trace_L(big).coeffs
            if sigma == two_s:
                assert np.abs(lowered).max() < 1e-12
                continue
            small = poly_from_operator(tensor_operator(two_s - 1, sigma, mu)).coeffs
            np.testing.assert_allclose(lowered, reduction_factor(two_s, sigma) * small, atol=1e-12)


@pytest.mark.parametrize("two_s", range(0, 9))
def test_embed_lift(two_s):
    for sigma in range(two_s + 1):
        for mu in range(-sigma, sigma + 1):
            lifted = embed_lift(poly_from_operator(tensor_operator(sigma, sigma, mu)), two_s)
            np.testing.assert_allclose(operator_from_poly(lifted), tensor_operator(two_s, sigma, mu), atol=1e-12)
    with pytest.raises(ValueError):
        embed_lift(identity_poly(3), 2)


@pytest.mark.parametrize("two_s", range(0, 7))
def test_t_from_s_expansion(two_s):
    for sigma in range(two_s + 1):
        for mu in range(-sigma, sigma + 1):
            terms = t_in_s_expansion(two_s, sigma, mu)
            assert all(nu.nu0 == two_s - sigma and min(nu) >= 0 for nu, _ in terms)
            err = np.linalg.norm(t_from_s_expansion(two_s, sigma, mu) - tensor_operator(two_s, sigma, mu))
            assert err < 1e-10


def test_t_in_s_examples():
    np.testing.assert_allclose(t_from_s_expansion(1, 1, 0), math.sqrt(2) * np.diag([0.5, -0.5]), atol=1e-15)
    for tau in range(1, 6):
        (nu, a), = t_in_s_expansion(tau, tau, tau)
        assert nu == NuIndex(0, 0, 0, tau)
        assert a == pytest.approx((-2.0) ** (-tau))
    with pytest.raises(ValueError):
        t_in_s_expansion(2, 3, 0)
    with pytest.raises(ValueError):
        t_in_s_expansion(2, 1, 2)


@pytest.mark.parametrize("two_s", [1, 2, 3, 4])
def test_tight_frame_reconstruction(rng, two_s):
    rho = random_density_matrix(two_s, rng)
    total = np.zeros_like(rho)
    for sigma in range(two_s + 1):
        for mu in range(-sigma, sigma + 1):
            t = tensor_operator(two_s, sigma, mu)
            total += np.trace(rho @ t.conj().T) * t_from_s_expansion(two_s, sigma, mu)
    np.testing.assert_allclose(total, rho, atol=1e-9)


@pytest.mark.parametrize("two_s", [1, 2, 3, 4, 5, 6])
def test_ts_reduction_compatibility(rng, two_s):
    for _ in range(10):
        sigma = int(rng.integers(0, two_s))
        mu = int(rng.integers(-sigma, sigma + 1))
        nus = compositions(two_s - 1)
        nu = nus[int(rng.integers(len(nus)))]
        lifted = NuIndex(nu.nu0 + 1, *nu[1:])
        lhs = np.trace(tensor_operator(two_s, sigma, mu) @ s_operator(lifted))
        rhs = reduction_factor(two_s, sigma) * np.trace(tensor_operator(two_s - 1, sigma, mu) @ s_operator(nu))
        assert lhs == pytest.approx(rhs, abs=1e-9)


@pytest.mark.parametrize("n", range(1, 7))
def test_ladder_commutator_matrices(n):
    s_minus = spin_matrices(n)[4]
    for nu in compositions(n):
        s_nu = s_operator(nu)
        expected = s_minus @ s_nu - s_nu @ s_minus
        got = np.zeros_like(expected)
        for key, c in ladder_commutator(nu).items():
            got += c * s_operator(key)
        np.testing.assert_allclose(got, expected, atol=1e-10)


def test_ladder_commutator_examples():
    assert ladder_commutator((0, 0, 0, 1)) == {NuIndex(0, 0, 1, 0): -2.0}
    assert ladder_commutator((2, 1, 0, 0)) == {}


@pytest.mark.parametrize("tau", range(1, 6))
def test_nested_commutator_tensor(tau):
    for mu in range(-tau, tau + 1):
        np.testing.assert_allclose(_from_coeffs(nested_commutator_tensor(tau, mu), tau),
                                   tensor_operator(tau, tau, mu), atol=1e-10)
    with pytest.raises(ValueError):
        nested_commutator_tensor(tau, tau + 1)


def test_srep_json_round_trip(rng):
    coeffs = srep_coefficients(random_density_matrix(3, rng))
    back = srep_from_json(json.loads(json.dumps(srep_to_json(coeffs))))
    assert back.keys() == coeffs.keys()
    for nu in coeffs:
        assert back[nu] == coeffs[nu]
