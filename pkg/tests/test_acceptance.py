"""Exit criteria, one test (or a few) per numbered criterion, at the stated tolerances.

The terminal summary prints one PASS/FAIL line per criterion.
"""

import time
from math import comb, factorial

import numpy as np
import pytest

from conftest import haar
from unitary_designs.bounds import rel_code_bound_1, rel_code_bound_2
from unitary_designs.cli import run
from unitary_designs.design_verify import (
    design_reports,
    frame_potentials,
    is_design,
    moment_operator_check,
    moment_operator_residual,
    reproducing_inner_product,
    strength,
    zonal_design_check,
)
from unitary_designs.group_designs import (
    HADAMARD,
    PHASE_GATE,
    PhaseCanonicalSet,
    abs_character_data,
    binary_icosahedral,
    character_data_from_group,
    character_design_check,
    chau_design,
    clifford_design,
    close_group,
)
from unitary_designs.moments import haar_moment, haar_moment_brute_force, haar_moment_hook
from unitary_designs.repdims import dim_hom, dim_hom_closed
from unitary_designs.unitary_sets import (
    UnitarySet,
    WeightedUnitarySet,
    distance_profile,
    load_set,
    save_set,
    weyl_heisenberg,
)
from unitary_designs.weighted_opt import fit_weights, prune_support
from unitary_designs.zonal import TABLE1_ROWS, table1_signature, zonal_eval, zonal_table1_oracle


@pytest.mark.acceptance(1)
def test_dimension_exactness():
    start = time.perf_counter()
    assert dim_hom(3, 2, 2) == 994
    checked = 0
    for d in range(1, 9):
        for r in range(4):
            for s in range(4):
                closed = dim_hom_closed(d, r, s)
                if closed is not None:
                    assert closed == dim_hom(d, r, s), (d, r, s)
                    checked += 1
    assert checked > 100
    for r in range(6):
        for s in range(6):
            assert dim_hom(2, r, s) == comb(r + s + 3, 3)
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(2)
def test_moment_exactness():
    start = time.perf_counter()
    for t in range(7):
        for d in range(max(t, 1), 9):
            assert haar_moment(d, t) == factorial(t)
    for d in range(1, 9):
        for t in range(9):
            assert haar_moment_brute_force(d, t) == haar_moment_hook(d, t)
    assert [haar_moment(2, t) for t in range(1, 7)] == [1, 2, 5, 14, 42, 132]
    assert time.perf_counter() - start < 10.0


@pytest.mark.acceptance(3)
def test_clifford_qubit_pipeline():
    start = time.perf_counter()
    G = close_group(np.stack([HADAMARD, PHASE_GATE]))
    assert isinstance(G, PhaseCanonicalSet)
    assert len(G) == 24
    reps = design_reports(G, 4)
    for rep, expected in zip(reps[:3], (1, 2, 5)):
        assert abs(rep.potential - expected) <= 1e-9
    assert haar_moment(2, 4) == 14
    assert reps[3].potential > 14 + 1e-3
    assert strength(G, 4) == 3
    assert time.perf_counter() - start < 5.0


@pytest.mark.acceptance(4)
@pytest.mark.parametrize("d", [2, 3, 5, 7, 11])
def test_chau_constructions(d):
    start = time.perf_counter()
    X = chau_design(d)
    assert len(X) == d * d * (d * d - 1)
    rep = is_design(X, 2)
    assert abs(rep.relative_gap) <= 1e-8
    assert rep.verdict
    assert time.perf_counter() - start < (600.0 if d == 11 else 30.0)


@pytest.mark.acceptance(5)
@pytest.mark.parametrize("d", [2, 3, 5])
def test_weyl_heisenberg_attains_one_distance_bound(d):
    X = weyl_heisenberg(d)
    prof = distance_profile(X)
    assert prof.degree == 1 and abs(prof.values[0]) < 1e-9
    bound = rel_code_bound_1(d, 0).value
    assert bound == d * d
    assert len(X) == bound
    reps = design_reports(X, 2)
    assert abs(reps[0].gap) <= 1e-8
    assert strength(X, 3) == 1


@pytest.mark.acceptance(5)
def test_chau3_attains_two_distance_bound(chau3):
    prof = distance_profile(chau3)
    assert [round(v, 9) for v in prof.values] == [0, 1]
    bound = rel_code_bound_2(3, 0, 1).value
    assert bound == 72
    assert len(chau3) == bound
    assert abs(is_design(chau3, 2).gap) <= 1e-8


@pytest.mark.acceptance(6)
@pytest.mark.parametrize("d", [3, 4, 5])
def test_table1_closed_forms(d, rng):
    rows = []
    for row in TABLE1_ROWS:
        try:
            rows.append(table1_signature(row, d))
        except ValueError:
            assert row == "1,1,-1,-1" and d == 3
    for _ in range(100):
        U, M = haar(d, rng), haar(d, rng)
        for mu in rows:
            assert abs(zonal_table1_oracle(mu, U, M) - zonal_eval(mu, U, M)) <= 1e-8


@pytest.mark.acceptance(6)
def test_zonal_kernel_psd(rng):
    sigs = [(1, 0, -1), (2, 0, -2), (2, -1, -1), (1, 0, 0)]
    for k in range(50):
        mats = haar(3, rng, 20)
        mu = sigs[k % len(sigs)]
        K = np.array([[zonal_eval(mu, A, B) for B in mats] for A in mats])
        assert np.allclose(K, K.conj().T, atol=1e-9)
        K = (K + K.conj().T) / 2
        assert np.linalg.eigvalsh(K).min() >= -1e-8


def _constructed_designs(clifford2, chau3):
    return {
        "clifford2": clifford2,
        "chau2": chau_design(2),
        "chau3": chau3,
        "chau5": chau_design(5),
        "clifford3": clifford_design(3),
        "wh2": weyl_heisenberg(2),
        "wh3": weyl_heisenberg(3),
        "wh5": weyl_heisenberg(5),
    }


@pytest.mark.acceptance(7)
def test_criteria_agree_on_group_designs(clifford2, chau3):
    for name, X in _constructed_designs(clifford2, chau3).items():
        for t in (1, 2, 3):
            pot = is_design(X, t).verdict
            assert zonal_design_check(X, t).verdict == pot, (name, t)
            if t <= 2:
                assert moment_operator_check(X, t).verdict == pot, (name, t)
                if pot:
                    assert moment_operator_residual(X, t) <= 1e-8, (name, t)


@pytest.mark.acceptance(7)
def test_criteria_agree_on_random_sets(rng):
    for k in range(50):
        d = 2 + k % 2
        X = UnitarySet(haar(d, rng, int(rng.integers(2, 25))))
        for t in (1, 2):
            verdicts = {is_design(X, t).verdict, zonal_design_check(X, t).verdict,
                        moment_operator_check(X, t).verdict}
            assert verdicts == {False}


@pytest.mark.acceptance(8)
def test_reproducing_quadrature(chau3, rng):
    mu = (1, 0, -1)
    for _ in range(20):
        U, M = haar(3, rng), haar(3, rng)
        assert abs(reproducing_inner_product(chau3, mu, U, M) - zonal_eval(mu, U, M)) <= 1e-8


@pytest.mark.acceptance(9)
def test_potential_lower_bound(rng):
    for k in range(200):
        d = (2, 3, 4)[k % 3]
        X = UnitarySet(haar(d, rng, int(rng.integers(1, 40))))
        pots = frame_potentials(X, (1, 2, 3))
        for t in (1, 2, 3):
            assert pots[t] >= haar_moment(d, t) - 1e-9


@pytest.mark.acceptance(10)
def test_character_route_matches_potential(clifford2, chau3):
    for X in (clifford2, chau3, clifford_design(3)):
        table = abs_character_data(X)
        for t in (1, 2, 3):
            assert character_design_check(table, t).verdict == is_design(X, t).verdict


@pytest.mark.acceptance(10)
def test_binary_icosahedral_five_design():
    table = character_data_from_group(binary_icosahedral())
    assert table.group_order == 120 and table.degree == 2
    rep = character_design_check(table, 5)
    assert rep.moment == 42
    assert rep.verdict


@pytest.mark.acceptance(11)
def test_fit_clifford_pool(clifford2):
    start = time.perf_counter()
    res = fit_weights(clifford2, 2, tol=1e-10)
    elapsed = time.perf_counter() - start
    assert res.gap <= 1e-8
    assert elapsed < 1.0


@pytest.mark.acceptance(11)
def test_fit_and_prune_mixed_pool(chau3):
    rng = np.random.default_rng(2024)
    pool = chau3.union(UnitarySet(haar(3, rng, 20)))
    res = fit_weights(pool, 2)
    assert res.gap <= 1e-6
    W = res.to_weighted(pool)
    P = prune_support(W, 2)
    assert len(P) <= 74
    # locate every surviving point in the pool; Haar samples must carry no weight
    G = np.abs(np.einsum("nij,mij->nm", pool.matrices.conj(), P.matrices))
    owner = np.argmax(G, axis=0)
    assert np.allclose(G[owner, np.arange(len(P))], 3)
    haar_weight = P.weights[owner >= len(chau3)]
    assert np.all(haar_weight <= 1e-8)
    assert np.all(res.weights[len(chau3):] <= 1e-8)
    assert abs(is_design(P, 2).relative_gap) <= 2e-6


@pytest.mark.acceptance(12)
def test_uset_round_trip(tmp_path, rng, chau3):
    w = rng.random(5)
    cases = [chau3, WeightedUnitarySet(UnitarySet(haar(4, rng, 5)), w / w.sum()),
             weyl_heisenberg(3)]
    for k, X in enumerate(cases):
        a, b = tmp_path / f"{k}a.json", tmp_path / f"{k}b.json"
        save_set(X, a)
        save_set(load_set(a), b)
        assert a.read_bytes() == b.read_bytes()


@pytest.mark.acceptance(12)
@pytest.mark.parametrize(
    "content,cause",
    [
        ("{", "not valid JSON"),
        ('{"format":"uset-v0","d":1,"matrices":[]}', "format must be"),
        ('{"format":"uset-v1","d":2,"matrices":[[[[1,0],[0,0]],[[0,0]]]]}', "row 1"),
        ('{"format":"uset-v1","d":1,"matrices":[[[["1",0]]]]}', "[re, im]"),
        ('{"format":"uset-v1","d":1,"matrices":[[[[0.5,0]]]]}', "not unitary"),
        ('{"format":"uset-v1","d":1,"weights":[0.4],"matrices":[[[[1,0]]]]}', "sum to"),
    ],
    ids=["json", "format", "shape", "entry", "unitarity", "weights"],
)
def test_corrupt_uset_exit_code(tmp_path, capsys, content, cause):
    path = tmp_path / "bad.json"
    path.write_text(content)
    code = run(["verify", str(path), "--t", "1"])
    captured = capsys.readouterr()
    assert code == 2
    assert cause in captured.err
