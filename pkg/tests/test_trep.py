import json
import math

import numpy as np
import pytest

from spinrep.angular import antipodal_operator, clebsch_gordan, rotation_matrix, su2_from_euler
from spinrep.constellation import match_stars
from spinrep.errors import ValidationError
from spinrep.states import (coherent_state, named_state, oracle_partial_trace, pure_from_stars,
                            random_density_matrix, random_hermitian, random_pure_state)
from spinrep.trep import (TRep, antipodal_conjugate, block_components, cat_radii, decompose,
                          operator_from_components, positivity_checks, random_trep, recover_majorana,
                          reconstruct, reduce, sc_radii, trep_from_json, trep_to_json)

r5 = math.sqrt(5)

# s = 3/2 radii and reductions, computed by hand from the tensor expansion
TABLE = {
    "sc": ([3 / (2 * r5), 1 / 2, 1 / (2 * r5)], [1 / math.sqrt(2), 1 / math.sqrt(6)], [1 / math.sqrt(2)]),
    "ghz": ([0, 1 / 2, 1 / math.sqrt(2)], [0, 1 / math.sqrt(6)], [0]),
    "w": ([1 / (2 * r5), 1 / 2, 3 / (2 * r5)], [1 / (3 * math.sqrt(2)), 1 / math.sqrt(6)], [1 / (3 * math.sqrt(2))]),
}


@pytest.mark.parametrize("name", sorted(TABLE))
def test_spin_three_halves_table(name):
    t = decompose(named_state(name, 3))
    full, one, two = TABLE[name]
    np.testing.assert_allclose(t.radii(), full, atol=1e-12)
    np.testing.assert_allclose(reduce(t, 1).radii(), one, atol=1e-12)
    np.testing.assert_allclose(reduce(t, 2).radii(), two, atol=1e-12)
    assert reduce(t, 3).two_s == 0
    assert reduce(t, 3).trace == pytest.approx(1)


@pytest.mark.parametrize("two_s", range(1, 9))
def test_sc_closed_form(rng, two_s):
    n = rng.normal(size=3)
    psi = coherent_state(two_s, n / np.linalg.norm(n))
    np.testing.assert_allclose(decompose(np.outer(psi, psi.conj())).radii(), sc_radii(two_s), atol=1e-12)


@pytest.mark.parametrize("two_s", range(1, 7))
def test_dicke_radii_are_clebsch_gordan(two_s):
    for two_m in range(-two_s, two_s + 1, 2):
        radii = decompose(named_state("dicke", two_s, two_m=two_m)).radii()
        expected = [abs(clebsch_gordan(two_s, two_m, two_s, -two_m, 2 * sg, 0)) for sg in range(1, two_s + 1)]
        np.testing.assert_allclose(radii, expected, atol=1e-12)


@pytest.mark.parametrize("two_s", range(1, 11))
def test_cat_radii(two_s):
    w_c, w_q = cat_radii(two_s)
    assert decompose(named_state("cat_c", two_s)).radii()[-1] == pytest.approx(w_c, abs=1e-12)
    assert decompose(named_state("cat_q", two_s)).radii()[-1] == pytest.approx(w_q, abs=1e-12)


@pytest.mark.parametrize("two_s", range(1, 7))
def test_reduce_matches_oracle(rng, two_s):
    for _ in range(5):
        rho = random_density_matrix(two_s, rng)
        t = decompose(rho)
        for k in range(two_s + 1):
            np.testing.assert_allclose(reconstruct(reduce(t, k)), oracle_partial_trace(rho, k), atol=1e-10)


@pytest.mark.parametrize("two_s", range(2, 10))
def test_sc_radius_growth_rule(two_s):
    # one loss raises w_sigma exactly when sigma(sigma+1) < 2s
    before = sc_radii(two_s)[:-1]
    after = sc_radii(two_s - 1)
    for sigma in range(1, two_s):
        grows = sigma * (sigma + 1) < two_s
        assert (after[sigma - 1] > before[sigma - 1] + 1e-14) == grows


def test_reduce_bounds():
    t = decompose(named_state("sc", 2))
    with pytest.raises(ValueError):
        reduce(t, 3)
    assert reduce(t, 0) == t


@pytest.mark.parametrize("two_s", range(0, 7))
def test_operator_round_trip(rng, two_s):
    for _ in range(10):
        op = random_hermitian(two_s, rng)
        np.testing.assert_allclose(reconstruct(decompose(op)), op, atol=1e-10)
        np.testing.assert_allclose(operator_from_components(block_components(op)), op, atol=1e-13)


def test_decompose_rejects_non_hermitian(rng):
    op = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    with pytest.raises(ValidationError):
        decompose(op)


def test_maximally_mixed_has_no_blocks():
    t = decompose(named_state("mixed", 4))
    assert t.blocks == ()
    assert t.trace == pytest.approx(1)


@pytest.mark.parametrize("two_s", range(1, 7))
def test_positivity_checks(rng, two_s):
    pure = decompose(named_state("sc", two_s))
    checks = positivity_checks(pure)
    assert checks["purity_bound_ok"] and checks["eigen_positive"]
    # for s = 1/2 the Mehta ball is the whole Bloch ball
    assert checks["mehta_ball"] == (two_s == 1)
    assert np.sum(pure.radii() ** 2) == pytest.approx(two_s / (two_s + 1), abs=1e-12)
    inside = random_trep(two_s, rng, 1 / (two_s * (two_s + 1)))
    assert all(positivity_checks(inside).values())
    assert positivity_checks(TRep(two_s, 0.0, ())) == dict.fromkeys(checks)


@pytest.mark.parametrize("two_s", range(1, 7))
def test_antipodal_conjugate(rng, two_s):
    rho = random_density_matrix(two_s, rng)
    expected = antipodal_operator(rho)
    np.testing.assert_allclose(reconstruct(antipodal_conjugate(decompose(rho))), expected, atol=1e-10)


@pytest.mark.parametrize("two_s", range(1, 8))
def test_recover_majorana_random(rng, two_s):
    for _ in range(5):
        psi = random_pure_state(two_s, rng)
        stars = recover_majorana(decompose(np.outer(psi, psi.conj())))
        phase = np.vdot(pure_from_stars(stars), psi)
        assert abs(abs(phase) - 1) < 1e-9


@pytest.mark.parametrize("two_s", range(1, 7))
def test_recover_majorana_degenerate(two_s):
    for two_m in range(-two_s, two_s + 1, 2):
        stars = recover_majorana(decompose(named_state("dicke", two_s, two_m=two_m)))
        up = (two_s + two_m) // 2
        expected = np.array([[0, 0, 1]] * up + [[0, 0, -1]] * (two_s - up), dtype=float)
        worst, _ = match_stars(stars, expected)
        assert worst < 1e-7


def test_recover_majorana_needs_pure_state():
    with pytest.raises(ValidationError):
        recover_majorana(decompose(named_state("mixed", 3)))


@pytest.mark.parametrize("two_s", range(1, 6))
def test_rotation_covariance(rng, two_s):
    rho = random_density_matrix(two_s, rng)
    t = decompose(rho)
    for _ in range(10):
        d = rotation_matrix(two_s, su2_from_euler(rng.uniform(-3, 3, size=3)))
        t_rot = decompose(d @ rho @ d.conj().T)
        np.testing.assert_allclose(t_rot.radii(), t.radii(), atol=1e-10)


def test_json_round_trip(rng):
    t = decompose(random_density_matrix(4, rng))
    text = json.dumps(trep_to_json(t))
    back = trep_from_json(json.loads(text))
    np.testing.assert_allclose(reconstruct(back), reconstruct(t), atol=1e-12)
    obj = json.loads(text)
    obj["blocks"][0]["constellation"]["parity"] = 0
    with pytest.raises(ValidationError):
        trep_from_json(obj)
