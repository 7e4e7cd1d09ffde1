# Maximal matching as an edge-labeling problem on the bipartite incidence
# graph: labels M (matched), B (before), A (after), P (pointer); black nodes
# carry multiset constraints, white nodes ordered string constraints.

from itertools import permutations

from locallab import (
    MATCHING_ENCODING,
    decode_to_matching,
    encode_matching,
    greedy_matching,
    incidence_graph_of,
    is_maximal_matching,
    verify_linearizable,
)
from locallab.graphs import path_graph

p3 = path_graph(3)
ig = incidence_graph_of(p3)  # whites 0..2 are the nodes, blacks 3..4 the edges

# Encode the maximal matching {a-b} (black 3) and look at the labels.
labels = encode_matching(ig, {3})
print("labels on incidence edges:", labels)
print("valid:", verify_linearizable(MATCHING_ENCODING, ig, labels).ok)
print("decoded blacks:", sorted(decode_to_matching(ig, labels)))

# The greedy sequential matcher: when processed, an unmatched node claims its
# smallest-id neighbor that is neither processed nor already claimed.  Claims
# live at the claimer, so checking a neighbor's claimedness needs radius 2;
# that price buys correctness for EVERY processing order.
for order in ([1, 0, 2], [0, 1, 2], [2, 0, 1]):
    matching, observed = greedy_matching(p3, order)
    print(f"order {order}: matching {sorted(matching)}, observed locality {observed}")

# Exhaustive: all 120 orders of the 5-path give a maximal matching of size 2.
p5 = path_graph(5)
sizes = set()
for order in permutations(range(5)):
    matching, _ = greedy_matching(p5, list(order))
    assert is_maximal_matching(p5, matching).ok
    sizes.add(len(matching))
print("5-path matching sizes over all orders:", sizes)
