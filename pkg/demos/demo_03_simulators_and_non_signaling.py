# LOCAL and randomized-LOCAL simulation, and non-signaling certification.
#
# A T-round algorithm is a function of each node's radius-T view.  Randomized
# algorithms read per-node seed symbols from a finite alphabet, so the full
# output distribution can be enumerated exactly.  The punchline: any such
# distribution is non-signaling beyond distance T, while the planted
# "output |V| mod 2" outcome is not.

from fractions import Fraction

from locallab import (
    Labeling,
    LocalAlgorithm,
    NodeOutput,
    cycle_graph,
    deterministic_outcome,
    label_graph,
    restrict,
    run_local,
    run_rand_local,
    verify_non_signaling,
)
from locallab.graphs import path_graph

lg = label_graph(path_graph(3))

# Deterministic: every node outputs its degree.
degree = LocalAlgorithm(
    locality=1, rule=lambda view: NodeOutput(node_label=view.view_degree(view.anchor_node()))
)
print("degrees:", run_local(degree, lg).nodes())

# Randomized: each node XORs its seed with its neighbors'.
def parity_rule(view, seeds):
    v = view.anchor_node()
    total = int(seeds[v])
    for u in view.node_set:
        if u != v:
            total += int(seeds[u])
    return NodeOutput(node_label=str(total % 2))

parity = LocalAlgorithm(locality=1, rule=parity_rule, seed_alphabet=("0", "1"))
outcome = run_rand_local(parity, lg)
print("support size:", len(outcome.support), "| total mass:", outcome.probabilities_sum())
print("marginal at node 0:", [(lab.nodes(), str(p)) for lab, p in restrict(outcome, [0]).support])

# The same rule on C4 and C5 gives non-signaling-consistent marginals at any
# pair of nodes with isomorphic radius-1 views.
c4, c5 = label_graph(cycle_graph(4)), label_graph(cycle_graph(5))
o4, o5 = run_rand_local(parity, c4), run_rand_local(parity, c5)
print("parity algorithm C4 vs C5:", verify_non_signaling(o4, o5, [0], [0], 1))

# But an outcome that leaks the global size is caught.
leak4 = deterministic_outcome(c4, Labeling.of({v: 4 % 2 for v in range(4)}, {}))
leak5 = deterministic_outcome(c5, Labeling.of({v: 5 % 2 for v in range(5)}, {}))
print("global-parity outcome C4 vs C5:", verify_non_signaling(leak4, leak5, [0], [0], 1))
