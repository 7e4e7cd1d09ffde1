# Locally checkable labelings: constraints are a finite list of allowed
# centered balls; a labeling is a solution when every node's ball matches one.

from locallab import centered_ball, check_constraints, cycle_graph, label_graph, make_constraint_set
from locallab.graphs import centered_isomorphism

# Proper 2-coloring of even cycles, phrased as an LCL with radius 1.
c6 = cycle_graph(6)
colored = label_graph(c6, node_labels={v: v % 2 for v in range(6)})

# Build the constraint set from the balls of one legal instance.
members = []
for v in range(6):
    ball = centered_ball(colored, v, 1)
    if not any(centered_isomorphism(ball, m) for m in members):
        members.append(ball)
constraints = make_constraint_set(
    r=1, delta=2, node_alphabet={0, 1}, half_edge_alphabet={None}, members=members
)
print("allowed ball shapes:", len(members))

print("legal coloring:", check_constraints(colored, constraints).ok)

broken = label_graph(c6, node_labels={v: (v % 2 if v != 3 else 0) for v in range(6)})
verdict = check_constraints(broken, constraints)
print("broken coloring:", verdict.ok, "| violators:", verdict.violating_nodes())
