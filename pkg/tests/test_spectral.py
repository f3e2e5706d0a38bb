"""Solver and closed-form checks.

The gradient is validated against a central finite-difference oracle before
anything downstream relies on it, and every solver answer on a small instance
is cross-checked against the independent subset-enumeration oracle.
"""

import math

import numpy as np
import pytest

from pspectral import (
    Graph,
    ParameterDomainError,
    SolverOptions,
    UniformHypergraph,
    WeightVector,
    as_hypergraph,
    construct_graph,
    eigen_residual,
    gradient,
    lambda_p_monotone_scan,
    motzkin_straus_lambda1,
    oracle_spectral_radius,
    p_spectral_radius,
    polynomial_form,
    star_lambda,
    star_plus_lambda_p2,
    suspension,
    suspension_factor,
)

# fast but still comfortably below every tolerance asserted here
OPTS = SolverOptions(restarts=8, seed=20260819)


def fd_gradient(H, x, h=1e-6):
    """Central-difference oracle for the polynomial form's gradient."""
    out = []
    for i in range(H.n):
        up = list(x)
        dn = list(x)
        up[i] += h
        dn[i] -= h
        out.append((polynomial_form(H, up) - polynomial_form(H, dn)) / (2 * h))
    return out


def random_hypergraph(rng, n, r, m):
    import itertools

    pool = list(itertools.combinations(range(n), r))
    idx = rng.choice(len(pool), size=min(m, len(pool)), replace=False)
    return UniformHypergraph(r, n, tuple(sorted(pool[i] for i in idx)))


# ---------------------------------------------------------------------------
# polynomial form and gradient


def test_polynomial_form_single_edge():
    H = UniformHypergraph(3, 3, ((0, 1, 2),))
    assert polynomial_form(H, [1 / 3, 1 / 3, 1 / 3]) == pytest.approx(1 / 9, abs=1e-15)
    assert polynomial_form(H, [0.0, 0.0, 0.0]) == 0.0


def test_polynomial_form_triangle_at_uniform_point():
    K3 = as_hypergraph(construct_graph("cycle", [3]))
    assert polynomial_form(K3, [1 / 3] * 3) == pytest.approx(2 / 3, abs=1e-15)


def test_polynomial_form_length_mismatch():
    H = UniformHypergraph(3, 3, ((0, 1, 2),))
    with pytest.raises(ParameterDomainError):
        polynomial_form(H, [1.0, 2.0])


def test_gradient_single_edge_product_rule():
    H = UniformHypergraph(3, 3, ((0, 1, 2),))
    a, b, c = 0.3, 0.5, 0.7
    g = gradient(H, [a, b, c])
    assert g == pytest.approx([3 * b * c, 3 * a * c, 3 * a * b], rel=1e-14)


def test_gradient_all_ones_gives_degrees():
    H = as_hypergraph(construct_graph("star", [6]))
    g = gradient(H, [1.0] * 6)
    assert g == [2.0 * H.degree(v) for v in range(6)]


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = int(rng.integers(3, 7))
        r = int(rng.integers(2, min(n, 4) + 1))
        H = random_hypergraph(rng, n, r, int(rng.integers(1, 6)))
        x = rng.uniform(0.2, 1.0, size=n)
        g = gradient(H, list(x))
        ref = fd_gradient(H, list(x))
        scale = max(1.0, max(abs(v) for v in ref))
        assert max(abs(a - b) for a, b in zip(g, ref)) <= 1e-6 * scale


def test_homogeneity_and_euler_identity():
    rng = np.random.default_rng(11)
    for _ in range(10):
        H = random_hypergraph(rng, 6, 3, 4)
        x = rng.uniform(0.0, 1.0, size=6)
        c = float(rng.uniform(0.1, 3.0))
        assert polynomial_form(H, list(c * x)) == pytest.approx(
            c**3 * polynomial_form(H, list(x)), rel=1e-12
        )
        euler = sum(xi * gi for xi, gi in zip(x, gradient(H, list(x))))
        assert euler == pytest.approx(3 * polynomial_form(H, list(x)), rel=1e-12)


# ---------------------------------------------------------------------------
# closed forms


def test_star_lambda_values():
    assert star_lambda(10, 2) == pytest.approx(3.0, abs=1e-15)
    for n in (2, 5, 9, 30):
        assert star_lambda(n, 1) == pytest.approx(0.5, abs=1e-15)
    assert star_lambda(5, 4) == pytest.approx(2 ** 0.5 * 4 ** 0.75, rel=1e-15)


def test_star_plus_cubic_root():
    # x^3 - x^2 - 8x + 6 has largest root exactly 3 at n=10
    assert star_plus_lambda_p2(10) == pytest.approx(3.0, abs=1e-12)
    assert star_plus_lambda_p2(11) < math.sqrt(10)
    for n in (5, 7, 10, 11, 16):
        r = star_plus_lambda_p2(n)
        assert r**3 - r**2 - (n - 2) * r + (n - 4) == pytest.approx(0.0, abs=1e-9)


def test_star_plus_cubic_matches_solver():
    for n in (6, 10, 11):
        H = as_hypergraph(construct_graph("star_plus", [n - 1]))
        est = p_spectral_radius(H, 2, OPTS)
        assert est.converged
        assert est.lambda_ == pytest.approx(star_plus_lambda_p2(n), abs=1e-8)


def test_suspension_factor_values():
    assert suspension_factor(2, 1) == pytest.approx(2 / 9, rel=1e-15)
    assert suspension_factor(2, 2) == pytest.approx(3 ** -0.5, rel=1e-15)
    for p in (1.0, 1.5, 2.0, 3.0, 5.0):
        assert suspension_factor(2, p) * 2 ** (1 - 2 / p) == pytest.approx(
            3 ** (1 - 3 / p), rel=1e-13
        )


def test_motzkin_straus_values():
    assert motzkin_straus_lambda1(construct_graph("cycle", [3])) == pytest.approx(2 / 3)
    assert motzkin_straus_lambda1(construct_graph("path", [4])) == pytest.approx(0.5)
    assert motzkin_straus_lambda1(Graph(1, ())) == 0.0


# ---------------------------------------------------------------------------
# solver anchors


def test_single_edge_closed_form():
    for r in (2, 3, 4):
        H = UniformHypergraph(r, r, (tuple(range(r)),))
        for p in (1.0, 1.5, 2.0, 3.0, 7.0):
            est = p_spectral_radius(H, p, OPTS)
            assert est.converged
            assert est.lambda_ == pytest.approx(r ** (1 - r / p), rel=1e-10)
            w = est.witness.as_array()
            assert w == pytest.approx(np.full(r, r ** (-1 / p)), abs=1e-8)


def test_star_10_p2_is_3():
    est = p_spectral_radius(construct_graph("star", [10]), 2, OPTS)
    assert est.converged
    assert est.lambda_ == pytest.approx(3.0, abs=1e-10)


def test_star_closed_form_several_p():
    for n in (5, 10):
        H = construct_graph("star", [n])
        for p in (1.0, 2.0, 4.0):
            est = p_spectral_radius(H, p, OPTS)
            assert est.converged
            assert est.lambda_ == pytest.approx(star_lambda(n, p), abs=1e-9)


def test_star_plus_suspension_p1_is_4_27():
    # suspended S+ core: lambda at p=1 is exactly 4/27 for every size
    for k in (6, 8):
        H = suspension(construct_graph("star_plus", [k - 1]))
        est = p_spectral_radius(H, 1, OPTS)
        assert est.converged
        assert est.lambda_ == pytest.approx(4 / 27, abs=1e-9)


def test_empty_hypergraph_is_zero():
    H = UniformHypergraph(3, 4, ())
    est = p_spectral_radius(H, 2, OPTS)
    assert est.lambda_ == 0.0
    assert est.witness.entries == ()
    assert est.converged


def test_p_below_one_rejected():
    H = UniformHypergraph(3, 3, ((0, 1, 2),))
    with pytest.raises(ParameterDomainError):
        p_spectral_radius(H, 0.5, OPTS)


# ---------------------------------------------------------------------------
# residuals and witnesses


def test_eigen_residual_exact_star_eigenvector():
    n = 8
    H = as_hypergraph(construct_graph("star", [n]))
    leaves = 1 / math.sqrt(2 * (n - 1))
    x = WeightVector((1 / math.sqrt(2),) + (leaves,) * (n - 1), 2.0)
    assert eigen_residual(H, 2, math.sqrt(n - 1), x) <= 1e-12


def test_eigen_residual_perturbed_witness():
    H = as_hypergraph(construct_graph("star", [8]))
    est = p_spectral_radius(H, 2, OPTS)
    assert eigen_residual(H, 2, est.lambda_, est.witness) <= OPTS.tol
    w = est.witness.as_array()
    w[1] += 0.01
    w /= np.linalg.norm(w, 2)
    bumped = WeightVector(tuple(w), 2.0)
    assert eigen_residual(H, 2, est.lambda_, bumped) > OPTS.tol


def test_witness_norm_and_value_consistency():
    rng = np.random.default_rng(23)
    for _ in range(6):
        H = random_hypergraph(rng, 6, 3, 5)
        est = p_spectral_radius(H, 3, OPTS)
        assert est.converged
        w = est.witness.as_array()
        assert np.sum(w**3) ** (1 / 3) == pytest.approx(1.0, abs=1e-12)
        assert polynomial_form(H, list(w)) == pytest.approx(
            est.lambda_, abs=1e-10 * max(1, est.lambda_)
        )


def test_positive_witness_above_r_minus_one():
    # p > r-1 on connected H forces a strictly positive maximizer
    rng = np.random.default_rng(31)
    found = 0
    while found < 5:
        H = random_hypergraph(rng, 6, 3, 6)
        if not H.is_connected():
            continue
        found += 1
        for p in (2.5, 4.0):
            est = p_spectral_radius(H, p, OPTS)
            assert est.converged
            assert min(est.witness.entries) > 1e-12


# ---------------------------------------------------------------------------
# oracle cross-checks


def test_oracle_single_edge():
    H = UniformHypergraph(3, 3, ((0, 1, 2),))
    assert oracle_spectral_radius(H, 3) == pytest.approx(1.0, abs=1e-10)


def test_oracle_against_adjacency_eigenvalue():
    # r=2, p=2 is the classical spectral radius
    for fam, k in (("path", 3), ("path", 5), ("cycle", 4), ("star", 6)):
        G = construct_graph(fam, [k])
        A = np.zeros((k, k))
        for a, b in G.edges:
            A[a, b] = A[b, a] = 1.0
        rho = max(np.linalg.eigvalsh(A))
        assert oracle_spectral_radius(G, 2) == pytest.approx(rho, abs=1e-8)
        assert math.sqrt(2.0) == pytest.approx(
            oracle_spectral_radius(construct_graph("path", [3]), 2), abs=1e-8
        )


def test_oracle_refuses_large_n():
    H = as_hypergraph(construct_graph("path", [9]))
    with pytest.raises(ParameterDomainError):
        oracle_spectral_radius(H, 2)


def test_solver_agrees_with_oracle_on_random_3_graphs():
    rng = np.random.default_rng(5)
    for _ in range(12):
        n = int(rng.integers(4, 7))
        H = random_hypergraph(rng, n, 3, int(rng.integers(2, 6)))
        for p in (1.0, 2.0, 3.5):
            est = p_spectral_radius(H, p, OPTS)
            assert est.converged, (H.edges, p)
            assert abs(est.lambda_ - oracle_spectral_radius(H, p)) <= 1e-7, (H.edges, p)


# ---------------------------------------------------------------------------
# global behavior in p


def test_monotone_scan_single_edge_constant():
    H = UniformHypergraph(3, 3, ((0, 1, 2),))
    pts = lambda_p_monotone_scan(H, [1, 2, 3, 6], OPTS)
    for pt in pts:
        assert pt.converged
        assert pt.normalized == pytest.approx(3.0 ** -3, abs=1e-12)


def test_monotone_scan_star_and_random():
    pts = lambda_p_monotone_scan(construct_graph("star", [10]), [1, 2, 4], OPTS)
    vals = [pt.normalized for pt in pts]
    assert all(vals[i + 1] <= vals[i] + 1e-9 for i in range(len(vals) - 1))
    rng = np.random.default_rng(17)
    H = random_hypergraph(rng, 6, 3, 5)
    pts = lambda_p_monotone_scan(H, list(np.linspace(1, 12, 8)), OPTS)
    vals = [pt.normalized for pt in pts]
    assert all(pt.converged for pt in pts)
    assert all(vals[i + 1] <= vals[i] + 1e-9 for i in range(len(vals) - 1))


def test_scan_rejects_unsorted_grid():
    H = UniformHypergraph(3, 3, ((0, 1, 2),))
    with pytest.raises(ParameterDomainError):
        lambda_p_monotone_scan(H, [3, 1], OPTS)


def test_edge_monotonicity():
    H = as_hypergraph(construct_graph("path", [5]))
    bigger = UniformHypergraph(2, 5, tuple(sorted(H.edges + ((0, 4),))))
    for p in (1.0, 2.0, 3.0):
        lo = p_spectral_radius(H, p, OPTS).lambda_
        hi = p_spectral_radius(bigger, p, OPTS).lambda_
        assert hi >= lo - OPTS.tie_eps


def test_isolated_vertex_invariance():
    H = as_hypergraph(construct_graph("cycle", [4]))
    padded = UniformHypergraph(2, 6, H.edges)
    for p in (1.0, 2.5):
        assert p_spectral_radius(padded, p, OPTS).lambda_ == pytest.approx(
            p_spectral_radius(H, p, OPTS).lambda_, abs=OPTS.tie_eps
        )


def test_lambda_bounded_by_total_degree_mass():
    rng = np.random.default_rng(41)
    H = random_hypergraph(rng, 6, 3, 6)
    for p in (1.0, 2.0, 5.0):
        est = p_spectral_radius(H, p, OPTS)
        assert est.lambda_ <= 3 * H.m + 1e-9
    # large p approaches the r*m ceiling on a dense instance
    K4 = as_hypergraph(Graph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))))
    est = p_spectral_radius(K4, 100, OPTS)
    assert est.lambda_ / (2 * K4.m) >= 0.9


def test_to_json_dict_round_trip_fields():
    est = p_spectral_radius(construct_graph("star", [5]), 2, OPTS)
    d = est.to_json_dict()
    assert set(d) == {
        "lambda",
        "p",
        "residual",
        "witness",
        "iterations",
        "restarts_used",
        "converged",
        "seed",
    }
    assert d["p"] == 2.0 and d["converged"] is True
