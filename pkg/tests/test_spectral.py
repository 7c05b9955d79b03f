import json
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from bclique.cliques import cbpoly_bruteforce
from bclique.graph import (
    GraphError,
    clique_number,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    induced_subgraph,
    path_graph,
    petersen_graph,
)
from bclique.report import Verdict
from bclique.spectral import (
    SpectralProfile,
    adjacency_matrix,
    check_coefficient_bounds,
    check_common_neighborhood_bound,
    check_root_bound,
    effective_degree,
    eigenvalues,
    exact_mj,
    jacobi_eigh,
    mixing_neighborhood_bound,
    replay_spectral,
    spectral_reports,
    sqrt_upper,
    within_mixing_bound,
)

from conftest import graphs_with_b

REGULAR = {
    "K4": complete_graph(4),
    "C4": cycle_graph(4),
    "C5": cycle_graph(5),
    "K33": complete_bipartite(3, 3),
    "Petersen": petersen_graph(),
}


def test_small_spectra():
    k4 = eigenvalues(complete_graph(4))
    assert np.allclose(k4.eigenvalues, [3, -1, -1, -1])
    assert 1 <= k4.lam <= 1 + F(1, 10**10)
    c4 = eigenvalues(cycle_graph(4))
    assert np.allclose(c4.eigenvalues, [2, 0, 0, -2], atol=1e-12)
    assert 2 <= c4.lam <= 2 + F(1, 10**10)


def test_petersen_spectrum_and_residual():
    prof = eigenvalues(petersen_graph())
    vals = sorted(round(x) for x in prof.eigenvalues)
    assert vals == [-2] * 4 + [1] * 5 + [3]
    A = adjacency_matrix(petersen_graph())
    for mu, v in zip(prof.eigenvalues, prof.vectors.T):
        assert np.linalg.norm(A @ v - mu * v) <= 1e-9
    assert 2 <= prof.lam <= 2 + F(1, 10**10)


@given(arrays(np.float64, (6, 6), elements=st.floats(-10, 10)))
def test_jacobi_matches_numpy(m):
    a = (m + m.T) / 2
    vals, vecs, _ = jacobi_eigh(a)
    assert np.allclose(sorted(vals), np.linalg.eigvalsh(a), atol=1e-9)
    assert np.allclose(vecs @ np.diag(vals) @ vecs.T, a, atol=1e-9)


def test_lambda_encloses_numpy_spectrum():
    for g in REGULAR.values():
        prof = eigenvalues(g)
        ref = sorted(np.abs(np.linalg.eigvalsh(adjacency_matrix(g))))
        # the trivial eigenvalue d is dropped once
        assert float(prof.lam) >= ref[-2] if g.n > 1 else True


def test_non_regular_rejected():
    with pytest.raises(GraphError, match="not regular"):
        eigenvalues(path_graph(3))
    assert all(r.verdict is Verdict.NOT_APPLICABLE for r in spectral_reports(path_graph(3), {0}))


# mixing-lemma bound


def test_sqrt_upper_is_an_upper_enclosure():
    for k in range(0, 200):
        u = sqrt_upper(k)
        assert u * u >= k and (u - F(1, 2**40)) ** 2 < k or k == 0


def test_mixing_bound_k4():
    prof = eigenvalues(complete_graph(4))
    b1 = mixing_neighborhood_bound(prof, 1)
    assert abs(float(b1) - (2.25 + math.sqrt(3))) < 1e-9 and b1 >= F(9, 4)
    b3 = mixing_neighborhood_bound(prof, 3)
    assert abs(float(b3) - (2.25 + math.sqrt(3))) < 1e-9
    with pytest.raises(ValueError):
        mixing_neighborhood_bound(prof, 4)


def test_mixing_bound_degenerate_lambda():
    prof = SpectralProfile(6, 0, (0.0,) * 6, 0.0, F(0))
    assert mixing_neighborhood_bound(prof, 2) == 0
    prof2 = SpectralProfile(6, 2, (2.0,), 0.0, F(0))
    assert mixing_neighborhood_bound(prof2, 2) == F(2 * 8, 6)


@given(st.integers(0, 50), st.integers(0, 6), st.integers(2, 12), st.data())
def test_exact_mixing_test_matches_float(m, d, n, data):
    j = data.draw(st.integers(1, n - 1))
    lam = data.draw(st.fractions(0, 6, max_denominator=7))
    k = j * (n - j)
    rhs = d * k / n + float(lam) * math.sqrt(k)
    if abs(m - rhs) > 1e-9:
        assert within_mixing_bound(m, d, n, j, lam) == (m <= rhs)


def test_common_neighborhood_examples():
    for name, g in REGULAR.items():
        rep = check_common_neighborhood_bound(g, range(g.n))
        assert rep.verdict is Verdict.HOLDS, name
    k4 = check_common_neighborhood_bound(complete_graph(4), range(4))
    assert [r["max_common_neighborhood"] for r in k4.details["rows"]] == [3, 2, 1]
    c4 = check_common_neighborhood_bound(cycle_graph(4), range(4))
    assert c4.details["rows"][1]["max_common_neighborhood"] == 2
    assert c4.details["rows"][1]["bound"] == pytest.approx(6, abs=1e-9)
    edgeless = check_common_neighborhood_bound(empty_graph(4), range(4))
    assert edgeless.verdict is Verdict.HOLDS
    assert all(r["max_common_neighborhood"] == 0 for r in edgeless.details["rows"])


def test_exact_mj_brute_force():
    g = petersen_graph()
    mj = exact_mj(g, range(5))
    assert mj[1] == 3 and mj[5] == 0


def test_coefficient_bound_examples():
    k4 = check_coefficient_bounds(complete_graph(4), {0, 1})
    assert k4.verdict is Verdict.HOLDS
    row = next(r for r in k4.details["rows"] if (r["i"], r["j"]) == (2, 2))
    assert row["c"] == 1 and row["exact_bound"] == 1
    c5 = check_coefficient_bounds(cycle_graph(5), range(5))
    row = next(r for r in c5.details["rows"] if (r["i"], r["j"]) == (2, 2))
    assert row["c"] == 5 and row["exact_bound"] == 10
    pet = check_coefficient_bounds(petersen_graph(), range(5))
    assert pet.verdict is Verdict.HOLDS
    assert pet.details["exact_Mj_verdict"] == "holds" and pet.details["spectral_Mj_verdict"] == "holds"


def test_coefficient_bound_budget():
    with pytest.raises(GraphError, match="budget"):
        check_coefficient_bounds(cycle_graph(17), range(17))


# effective degree and the root bound


@given(graphs_with_b(max_n=7))
def test_effective_degree(gb):
    g, B = gb
    P = cbpoly_bruteforce(g, B)
    assert effective_degree(P, 1) == clique_number(g)
    rest, _ = induced_subgraph(g, [v for v in range(g.n) if v not in B])
    assert effective_degree(P, 0) == (clique_number(rest) if rest.n else 0)


def test_effective_degree_k4():
    assert effective_degree(cbpoly_bruteforce(complete_graph(4), range(4)), F(1, 2)) == 4


def test_root_bound_examples():
    edgeless = check_root_bound(empty_graph(5), (), [1])
    assert edgeless.verdict is Verdict.HOLDS
    c4 = check_root_bound(cycle_graph(4), range(4), [1])
    assert c4.verdict is Verdict.HOLDS and c4.details["rows"][0]["D"] == 2
    k4 = check_root_bound(complete_graph(4), range(4), [1])
    assert k4.verdict is Verdict.VIOLATED
    assert k4.witness["y"] == "1/1" and k4.witness["D"] == 4
    assert k4.witness["zeta"]["exact"] == "-1/1" and k4.witness["minus_one_over_D"] == "-1/4"
    assert replay_spectral("root-bound", json.loads(json.dumps(k4.witness)))


def test_spectral_reports_on_the_suite():
    for name, g in REGULAR.items():
        reps = spectral_reports(g, range(g.n))
        assert [r.claim for r in reps] == ["common-neighborhood-bound", "coefficient-bound", "root-bound"]
        assert reps[0].verdict is Verdict.HOLDS and reps[1].verdict is Verdict.HOLDS, name
        for r in reps:
            if r.violated:
                assert replay_spectral(r.claim, r.witness)
