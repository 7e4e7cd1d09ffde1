import random
from fractions import Fraction as F

import pytest

from locallab.corpus import (
    all_connected_bipartite_graphs,
    all_connected_graphs,
    all_maximal_matchings,
    best_half_integral_matching_value,
    maximum_matching_size,
)
from locallab.graphs import (
    INFINITY,
    ContractError,
    InputError,
    complete_graph,
    cycle_graph,
    label_graph,
    make_graph,
    path_graph,
    star_graph,
)
from locallab.lp import (
    INFEASIBLE,
    LpConstraint,
    LpPoint,
    LpVariable,
    approximation_ratio,
    build_fractional_matching_lp,
    check_feasible,
    cycle_family,
    dequantize,
    edge_var,
    exact_opt,
    labeling_from_point,
    local_expectation_algorithm,
    lp_from_json,
    lp_to_json,
    make_dist_lp,
    maximal_matching_to_fractional,
    objective_value,
    oriented_cycle_graph,
    outcome_of_points,
    point_from_json,
    point_from_labeling,
    point_to_json,
    simplex_solve,
    whole_graph_family,
)
from locallab.outcomes import run_local, run_rand_local


def matching_point(g, edges):
    return LpPoint.of(
        {edge_var(e): F(1) if e in edges else F(0) for e in range(g.m)}
    )


def test_build_matching_lp_shapes():
    single = make_graph(2, [(0, 1)])
    lp = build_fractional_matching_lp(single)
    assert len(lp.variables) == 1
    node_rows = [c for c in lp.constraints if c.name.startswith("node")]
    assert len(node_rows) == 2
    assert exact_opt(lp).value == 1

    with pytest.raises(InputError):
        build_fractional_matching_lp(make_graph(2, [(0, 1), (0, 1)], multi=True))


def test_exact_opt_examples():
    assert exact_opt(build_fractional_matching_lp(complete_graph(3))).value == F(3, 2)
    assert exact_opt(build_fractional_matching_lp(path_graph(3))).value == 1
    assert exact_opt(build_fractional_matching_lp(star_graph(4))).value == 1


def test_exact_opt_point_is_feasible_and_optimal():
    lp = build_fractional_matching_lp(complete_graph(3))
    result = exact_opt(lp)
    assert result.status == "optimal"
    assert check_feasible(lp, result.point).ok
    assert objective_value(lp, result.point) == result.value


def test_exact_opt_matches_half_integral_oracle():
    for g in all_connected_graphs(6):
        if g.m == 0:
            continue
        lp = build_fractional_matching_lp(g)
        assert exact_opt(lp).value == best_half_integral_matching_value(g)


def test_konig_on_bipartite_corpus():
    for g in all_connected_bipartite_graphs(8):
        if g.m == 0:
            continue
        lp = build_fractional_matching_lp(g)
        assert exact_opt(lp).value == maximum_matching_size(g)


def test_simplex_unbounded_and_infeasible():
    assert simplex_solve(1, [F(1)], [])[0] == "unbounded"
    assert simplex_solve(1, [F(1)], [([F(1)], "<=", F(-1))])[0] == "infeasible"
    status, value, x = simplex_solve(
        2, [F(1), F(1)], [([F(1), F(1)], "==", F(1)), ([F(1), F(0)], "<=", F(1))]
    )
    assert status == "optimal" and value == 1


def test_check_feasible_examples():
    k3 = complete_graph(3)
    lp = build_fractional_matching_lp(k3)
    assert check_feasible(lp, matching_point(k3, set())).ok
    bad = check_feasible(lp, matching_point(k3, {0, 1}))
    assert not bad.ok and any(v.startswith("node") for v in bad.violated)
    assert check_feasible(lp, LpPoint.of({edge_var(e): F(1, 2) for e in range(3)})).ok
    with pytest.raises(InputError):
        check_feasible(lp, LpPoint.of({edge_var(0): F(1)}))


def test_approximation_ratio_examples():
    k3 = complete_graph(3)
    lp = build_fractional_matching_lp(k3)
    opt_point = exact_opt(lp).point
    assert approximation_ratio(lp, opt_point) == 1

    p3 = path_graph(3)
    lp3 = build_fractional_matching_lp(p3)
    assert approximation_ratio(lp3, maximal_matching_to_fractional(p3, {0})) == 1
    assert approximation_ratio(lp, maximal_matching_to_fractional(k3, {0})) == F(3, 2)

    c6 = cycle_graph(6)
    lp6 = build_fractional_matching_lp(c6)
    assert approximation_ratio(lp6, maximal_matching_to_fractional(c6, {0, 2, 4})) == 1

    assert approximation_ratio(lp, matching_point(k3, {0, 1})) == INFEASIBLE
    assert approximation_ratio(lp, matching_point(k3, set())) == INFINITY


def test_maximal_matching_to_fractional_witnesses():
    p3 = path_graph(3)
    with pytest.raises(InputError, match="share"):
        maximal_matching_to_fractional(p3, {0, 1})
    with pytest.raises(InputError, match="added"):
        maximal_matching_to_fractional(p3, set())


def test_dequantize_examples():
    k3 = complete_graph(3)
    lp = build_fractional_matching_lp(k3)
    single = outcome_of_points(lp, [(matching_point(k3, {0}), F(1))])
    assert dequantize(single, lp) == matching_point(k3, {0})

    uniform = outcome_of_points(
        lp, [(matching_point(k3, {e}), F(1, 3)) for e in range(3)]
    )
    x_hat = dequantize(uniform, lp)
    assert x_hat == LpPoint.of({edge_var(e): F(1, 3) for e in range(3)})
    assert check_feasible(lp, x_hat).ok
    assert objective_value(lp, x_hat) == 1
    assert approximation_ratio(lp, x_hat) == F(3, 2)


def test_dequantize_mixture_of_optima_stays_optimal():
    c6 = cycle_graph(6)
    lp = build_fractional_matching_lp(c6)
    a = matching_point(c6, {0, 2, 4})
    b = matching_point(c6, {1, 3, 5})
    for p in (F(0), F(1, 4), F(1, 2)):
        pairs = [(a, p), (b, 1 - p)] if p > 0 else [(b, F(1))]
        outcome = outcome_of_points(lp, pairs)
        x_hat = dequantize(outcome, lp)
        assert objective_value(lp, x_hat) == exact_opt(lp).value
        assert approximation_ratio(lp, x_hat) == 1


def test_dequantize_rejects_infeasible_entry():
    k3 = complete_graph(3)
    lp = build_fractional_matching_lp(k3)
    bad = outcome_of_points(lp, [(matching_point(k3, {0, 1}), F(1))])
    with pytest.raises(ContractError, match="entry 0"):
        dequantize(bad, lp)


def test_dequantize_soundness_random_mixtures():
    rng = random.Random(11)
    for g in all_connected_graphs(5):
        if g.m == 0:
            continue
        lp = build_fractional_matching_lp(g)
        opt = exact_opt(lp).value
        matchings = all_maximal_matchings(g)
        for _ in range(20):
            count = rng.randint(1, 3)
            pts = [matching_point(g, matchings[rng.randrange(len(matchings))]) for _ in range(count)]
            ws = [rng.randint(1, 5) for _ in range(count)]
            total = sum(ws)
            pairs = [(pt, F(w, total)) for pt, w in zip(pts, ws)]
            x_hat = dequantize(outcome_of_points(lp, pairs), lp)
            assert check_feasible(lp, x_hat).ok
            expected = sum((p * objective_value(lp, pt) for pt, p in pairs), F(0))
            assert objective_value(lp, x_hat) == expected


def test_point_labeling_roundtrip():
    g = path_graph(3)
    lp = build_fractional_matching_lp(g)
    point = LpPoint.of({edge_var(0): F(2, 3), edge_var(1): F(1, 3)})
    labeling = labeling_from_point(lp, point)
    assert point_from_labeling(lp, labeling) == point


def test_local_expectation_whole_graph():
    k3 = complete_graph(3)
    lp = build_fractional_matching_lp(k3)
    lg = label_graph(k3)
    uniform = outcome_of_points(lp, [(matching_point(k3, {e}), F(1, 3)) for e in range(3)])

    alg = local_expectation_algorithm(lambda network: uniform, 1, whole_graph_family(lg))
    labeling = run_local(alg, lg)
    assert all(value == F(1, 3) for value in labeling.half_edges().values())

    # deterministic oracle reproduces its own labeling exactly
    det = outcome_of_points(lp, [(matching_point(k3, {1}), F(1))])
    alg2 = local_expectation_algorithm(lambda network: det, 1, whole_graph_family(lg))
    assert run_local(alg2, lg).half_edges() == labeling_from_point(lp, matching_point(k3, {1})).half_edges()


def test_local_expectation_two_completions_agree():
    from locallab.outcomes import LocalAlgorithm, NodeOutput

    def rule(view, seeds):
        v = view.anchor_node()
        total = F(int(seeds[v]))
        for u in view.node_set:
            if u != v:
                total += F(int(seeds[u]), 3)
        return NodeOutput(node_label=total)

    alg = LocalAlgorithm(locality=1, rule=rule, seed_alphabet=("0", "1"))
    cache = {}

    def oracle(network):
        n = network.graph.n
        if n not in cache:
            cache[n] = run_rand_local(alg, network)
        return cache[n]

    r9 = local_expectation_algorithm(oracle, 1, cycle_family(9))
    r12 = local_expectation_algorithm(oracle, 1, cycle_family(12))
    lg = oriented_cycle_graph(15)
    from locallab.graphs import extract_view

    for v in (0, 7):
        view = extract_view(lg, [v], 1)
        assert r9.rule(view).node_label == r12.rule(view).node_label


def test_locality_of_lp_formulation_enforced():
    g = path_graph(3)
    variables = [LpVariable(name="x", owner=("node", 2), objective=F(1))]
    constraints = [
        LpConstraint(name="far", coeffs=(("x", F(1)),), relation="<=", bound=F(1), owner=0)
    ]
    with pytest.raises(InputError, match="radius 1"):
        make_dist_lp("node-based", "maximize", g, variables, constraints)


def test_lp_json_roundtrip():
    lp = build_fractional_matching_lp(complete_graph(3))
    back = lp_from_json(lp_to_json(lp))
    assert back.variable_names() == lp.variable_names()
    assert exact_opt(back).value == F(3, 2)
    point = LpPoint.of({edge_var(e): F(1, 3) for e in range(3)})
    assert point_from_json(point_to_json(point)) == point
