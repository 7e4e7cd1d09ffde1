from fractions import Fraction as F
from itertools import permutations

import pytest

from locallab.graphs import InputError, label_graph, make_graph, path_graph
from locallab.lcl import check_constraints, verify_lcl_solution
from locallab.linearize import (
    MATCHING_ENCODING,
    WHITE,
    BLACK,
    decode_to_matching,
    incidence_graph_of,
    is_maximal_matching,
    make_incidence_graph,
    multigraph_of_incidence,
    verify_linearizable,
)
from locallab.outcomes import deterministic_outcome, make_outcome, success_probability
from locallab.gadgets import (
    BOTTOM,
    contract_octopi,
    default_port_height,
    edge_labels_of_pullback,
    family_constraint_set_for,
    gen_octopus,
    gen_proper_instance,
    gen_tree_like,
    lift_run,
    make_proper_instance,
    pi_promise_lcl,
    port_map_from_json,
    port_map_to_json,
    promise_labeling_of,
    proper_instance_from_json,
    proper_instance_to_json,
    pullback_outcome,
    recognize_octopus,
    recognize_proper_instance,
    recognize_tree_like,
    verify_pi_promise,
)


def test_gen_tree_like_counts():
    assert (gen_tree_like(1).graph.n, gen_tree_like(1).graph.m) == (1, 0)
    assert (gen_tree_like(2).graph.n, gen_tree_like(2).graph.m) == (3, 3)
    assert (gen_tree_like(3).graph.n, gen_tree_like(3).graph.m) == (7, 10)
    with pytest.raises(InputError):
        gen_tree_like(0)


def test_recognize_tree_like():
    for height in range(1, 6):
        assert recognize_tree_like(gen_tree_like(height).graph) is not None
    assert recognize_tree_like(path_graph(4)) is None
    assert recognize_tree_like(make_graph(1, [])) == {0: (0, 0)}
    # wrong edge structure on the right node count
    seven_path = path_graph(7)
    assert recognize_tree_like(seven_path) is None


def test_gen_octopus_examples():
    o = gen_octopus(1, (1,), {(0, 1): 1})
    assert (o.graph.n, o.graph.m) == (2, 1)
    o = gen_octopus(1, (2,), {(0, 1): 1, (0, 2): 1})
    assert (o.graph.n, o.graph.m) == (3, 2)
    o = gen_octopus(2, (1, 1), {(0, 1): 1, (1, 1): 1})
    assert (o.graph.n, o.graph.m) == (5, 5)


def test_gen_octopus_validation():
    with pytest.raises(InputError):
        gen_octopus(1, (1, 1), {(0, 1): 1})  # eta length mismatch
    with pytest.raises(InputError):
        gen_octopus(1, (3,), {(0, 1): 1})
    with pytest.raises(InputError):
        gen_octopus(1, (2,), {(0, 1): 1})  # missing weight for (0, 2)


def test_recognize_octopus_roundtrip():
    for x, eta, weights in (
        (1, (1,), {(0, 1): 2}),
        (2, (2, 1), {(0, 1): 2, (0, 2): 1, (1, 1): 3}),
        (3, (1, 1, 1, 1), {(i, 1): 2 for i in range(4)}),
    ):
        gadget = gen_octopus(x, eta, weights)
        witness = recognize_octopus(gadget.graph)
        assert witness is not None
        assert witness.x == x


def test_gen_proper_instance_examples():
    ig = incidence_graph_of(path_graph(3))
    pi, pm = gen_proper_instance(ig, k=1)
    assert pi.graph.n == 9
    assert sorted(len(w.all_nodes()) for w in pi.octopi) == [2, 2, 3]
    assert len(pi.inters()) == 2

    tiny = make_incidence_graph(make_graph(2, [(0, 1)]), [WHITE, BLACK])
    pi2, _ = gen_proper_instance(tiny, k=1)
    assert (pi2.graph.n, pi2.graph.m) == (3, 2)


def test_port_map_is_a_bijection_onto_edges():
    ig = incidence_graph_of(path_graph(4))
    pi, pm = gen_proper_instance(ig, k=2)
    edges = sorted(e for _, e in pm.root_to_edge)
    assert edges == list(range(ig.graph.m))
    roots = [r for r, _ in pm.root_to_edge]
    assert len(set(roots)) == len(roots)
    # the i-th port root of each white's octopus maps to its i-th incident edge
    for white_index, w in enumerate(pi.octopi):
        white = ig.whites()[white_index]
        for r, port in enumerate(w.ports):
            if r < ig.graph.degree(white):
                assert pm.edge_of(port.root) == ig.graph.adjacency[white][r]


def test_size_law_default_k():
    import random

    from locallab.corpus import random_connected_graph

    rng = random.Random(2)
    for _ in range(10):
        src = random_connected_graph(rng, rng.randint(2, 6))
        ig = incidence_graph_of(src)
        pi, _ = gen_proper_instance(ig)
        assert ig.graph.n <= pi.graph.n <= ig.graph.n**3


def test_recognize_proper_instance_roundtrip_and_mutations():
    ig = incidence_graph_of(path_graph(3))
    pi, _ = gen_proper_instance(ig, k=2)
    assert recognize_proper_instance(pi.graph) is not None

    # deleting a connector breaks it
    w0 = pi.octopi[0]
    root = w0.ports[0].root
    conn = next(
        e for e in pi.graph.adjacency[root] if pi.graph.other(e, root) in w0.head_nodes
    )
    mutated = make_graph(
        pi.graph.n, [e for i, e in enumerate(pi.graph.edge_list) if i != conn]
    )
    assert recognize_proper_instance(mutated) is None

    # deleting an attachment breaks it too (a leaf loses its inter)
    leaf = w0.ports[0].leaf
    att = next(
        e for e in pi.graph.adjacency[leaf] if pi.lam[pi.graph.other(e, leaf)] == "inter-octopus"
    )
    mutated2 = make_graph(
        pi.graph.n, [e for i, e in enumerate(pi.graph.edge_list) if i != att]
    )
    assert recognize_proper_instance(mutated2) is None


def test_lone_octopus_is_proper():
    gadget = gen_octopus(2, (1, 1), {(0, 1): 1, (1, 1): 1})
    rec = recognize_proper_instance(gadget.graph)
    assert rec is not None and len(rec[1]) == 1


def test_make_proper_instance_validation():
    ig = incidence_graph_of(path_graph(3))
    pi, _ = gen_proper_instance(ig, k=2)
    lam = list(pi.lam)
    lam[pi.inters()[0]] = "intra-octopus"
    with pytest.raises(InputError):
        make_proper_instance(pi.graph, lam, pi.octopi)


def test_contract_octopi_matches_source():
    src = path_graph(3)
    ig = incidence_graph_of(src)
    pi, _ = gen_proper_instance(ig, k=2)
    ghat, maps = contract_octopi(pi)
    assert len(ghat.whites()) == 3 and len(ghat.blacks()) == 2
    mg, whites, edge_of_black = multigraph_of_incidence(ghat)
    assert mg.n == 3 and mg.m == 2
    assert sorted(sorted(mg.endpoints(e)) for e in range(mg.m)) == [[0, 1], [1, 2]]


def test_contract_preserves_parallel_edges():
    two = make_graph(2, [(0, 1), (0, 1)], multi=True)
    ig = incidence_graph_of(two)
    pi, _ = gen_proper_instance(ig, k=2)
    ghat, _ = contract_octopi(pi)
    assert ghat.graph.multi
    mg, _, _ = multigraph_of_incidence(ghat)
    assert mg.m == 2 and sorted(mg.endpoints(0)) == sorted(mg.endpoints(1))


def test_single_octopus_contracts_to_isolated_white():
    lone = make_incidence_graph(make_graph(1, []), [WHITE])
    pi, _ = gen_proper_instance(lone, k=1)
    ghat, _ = contract_octopi(pi)
    assert len(ghat.whites()) == 1 and len(ghat.blacks()) == 0 and ghat.graph.m == 0


def test_lift_run_path_instance():
    ig = incidence_graph_of(path_graph(3))
    pi, pm = gen_proper_instance(ig, k=2)
    result = lift_run(pi)
    assert verify_pi_promise(pi, result.labels, MATCHING_ENCODING).ok
    for w in pi.octopi:
        for v in w.head_nodes:
            assert result.labels[v] == BOTTOM
    for u in pi.inters():
        assert result.labels[u] == BOTTOM


def test_lift_isolated_white_gets_ptr():
    lone = make_incidence_graph(make_graph(1, []), [WHITE])
    pi, _ = gen_proper_instance(lone, k=1)
    result = lift_run(pi)
    port = pi.octopi[0].ports[0]
    assert all(result.labels[v] == "P" for v in port.nodes)
    assert verify_pi_promise(pi, result.labels, MATCHING_ENCODING).ok


def test_verify_pi_promise_violations():
    ig = incidence_graph_of(path_graph(3))
    pi, _ = gen_proper_instance(ig, k=2)
    result = lift_run(pi)
    labels = dict(result.labels)
    port = pi.octopi[0].ports[0]
    labels[port.nodes[0]] = "A" if labels[port.nodes[0]] != "A" else "B"
    verdict = verify_pi_promise(pi, labels, MATCHING_ENCODING)
    assert not verdict.ok
    assert any("uniform" in reason for _, reason in verdict.violations)

    labels2 = dict(result.labels)
    for v in port.nodes:
        labels2[v] = "A"  # "A" cannot start a white string
    verdict2 = verify_pi_promise(pi, labels2, MATCHING_ENCODING)
    assert not verdict2.ok

    labels3 = dict(result.labels)
    labels3[pi.octopi[0].head_nodes[0]] = "M"
    assert not verify_pi_promise(pi, labels3, MATCHING_ENCODING).ok


def test_lift_all_orders_small():
    src = path_graph(3)
    ig = incidence_graph_of(src)
    pi, pm = gen_proper_instance(ig, k=2)
    ghat, _ = contract_octopi(pi)
    mg, _, _ = multigraph_of_incidence(ghat)
    for order in permutations(range(mg.n)):
        result = lift_run(pi, order=list(order))
        assert verify_pi_promise(pi, result.labels, MATCHING_ENCODING).ok
        out = deterministic_outcome(label_graph(pi.graph), promise_labeling_of(pi, result.labels))
        pulled = pullback_outcome(out, pm)
        labeling = edge_labels_of_pullback(pulled.support[0][0], ig)
        assert verify_linearizable(MATCHING_ENCODING, ig, labeling).ok
        blacks = decode_to_matching(ig, labeling)
        assert is_maximal_matching(src, frozenset(b - src.n for b in blacks)).ok


def test_lift_locality_bound():
    src = path_graph(4)
    ig = incidence_graph_of(src)
    k = default_port_height(ig.graph.n)
    pi, _ = gen_proper_instance(ig)
    result = lift_run(pi)
    x_max = max(w.x for w in pi.octopi)
    greedy_locality = 2
    assert result.simulated_locality <= 8 * (k + x_max) * greedy_locality


def test_pullback_mixture_linearity_and_mass():
    src = path_graph(3)
    ig = incidence_graph_of(src)
    pi, pm = gen_proper_instance(ig, k=2)
    ghat, _ = contract_octopi(pi)
    mg, _, _ = multigraph_of_incidence(ghat)
    a = lift_run(pi, order=[0, 1, 2])
    b = lift_run(pi, order=[2, 1, 0])
    mix = make_outcome(
        label_graph(pi.graph),
        [
            (promise_labeling_of(pi, a.labels), F(1, 2)),
            (promise_labeling_of(pi, b.labels), F(1, 2)),
        ],
    )
    pulled = pullback_outcome(mix, pm)
    assert pulled.probabilities_sum() == 1
    assert len(pulled.support) <= 2

    def source_ok(lab):
        return verify_linearizable(
            MATCHING_ENCODING, ig, edge_labels_of_pullback(lab, ig)
        ).ok

    assert success_probability(pulled, source_ok) == 1


def test_family_constraints_hold_and_break():
    src = path_graph(3)
    pi, _ = gen_proper_instance(incidence_graph_of(src), k=2)
    cs = family_constraint_set_for(pi)
    assert check_constraints(pi.labeling, cs).ok
    # keep the labels, break the structure: drop one connector edge
    w0 = pi.octopi[0]
    root = w0.ports[0].root
    conn = next(
        e for e in pi.graph.adjacency[root] if pi.graph.other(e, root) in w0.head_nodes
    )
    g = pi.graph
    broken = make_graph(g.n, [e for i, e in enumerate(g.edge_list) if i != conn])
    relabeled = label_graph(
        broken,
        {v: pi.labeling.node_labels[v] for v in range(g.n)},
        {
            (v, i2): pi.labeling.half_edge_label(v, e)
            for i2, e in enumerate([i for i in range(g.m) if i != conn])
            for v in g.endpoints(e)
        },
    )
    assert not check_constraints(relabeled, cs).ok


def test_pi_promise_as_lcl():
    src = path_graph(3)
    ig = incidence_graph_of(src)
    pi, _ = gen_proper_instance(ig, k=1)
    good = lift_run(pi).labels
    lcl, wrap = pi_promise_lcl(pi, MATCHING_ENCODING, [good])
    assert verify_lcl_solution(lcl, pi.labeling, wrap(good)).ok
    bad = dict(good)
    port = pi.octopi[0].ports[0]
    bad[port.nodes[0]] = "B" if good[port.nodes[0]] != "B" else "A"
    assert not verify_lcl_solution(lcl, pi.labeling, wrap(bad)).ok


def test_proper_instance_json_roundtrip():
    ig = incidence_graph_of(path_graph(3))
    pi, pm = gen_proper_instance(ig, k=2)
    back = proper_instance_from_json(proper_instance_to_json(pi))
    assert back.graph == pi.graph and back.lam == pi.lam
    pm_back = port_map_from_json(port_map_to_json(pm))
    assert pm_back.root_to_edge == pm.root_to_edge


def test_recognize_all_height_one_octopus():
    # K2 is the smallest octopus: every node is an inter candidate, so the
    # recognizer's group-enumeration path must settle on the all-intra reading
    tiny = gen_octopus(1, (1,), {(0, 1): 1})
    rec = recognize_proper_instance(tiny.graph)
    assert rec is not None
    lam, octs = rec
    assert len(octs) == 1 and all(x == "intra-octopus" for x in lam)

    wide = gen_octopus(1, (2,), {(0, 1): 1, (0, 2): 1})
    rec2 = recognize_proper_instance(wide.graph)
    assert rec2 is not None and len(rec2[1]) == 1


def test_recognize_k1_port_instance_with_inters():
    # height-1 ports put every gadget node into the candidate set; the
    # chain-enumeration plus repair path must still find a decomposition
    ig = incidence_graph_of(path_graph(2))
    pi, _ = gen_proper_instance(ig, k=1)
    rec = recognize_proper_instance(pi.graph)
    assert rec is not None
    lam, octs = rec
    # whatever witness is returned must re-validate independently
    make_proper_instance(pi.graph, lam, octs)
