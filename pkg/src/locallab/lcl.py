"""LCL problems as data plus exhaustive solution verification.

A constraint set is a finite list of labeled centered graphs; a graph satisfies
it when every node's centered radius-r ball is isomorphic to some member.
Membership is tested by exact centered isomorphism, never by a compiled
automaton: r and the degree bound are small constants at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .graphs import (
    CenteredGraph,
    InputError,
    LabeledGraph,
    centered_isomorphism,
    induced_labeled_subgraph,
    label_graph,
    labeled_graph_from_json,
    labeled_graph_to_json,
    neighborhood,
)


def centered_ball(lg: LabeledGraph, v: int, r: int) -> CenteredGraph:
    """Induced subgraph on N_r[v] with all labels, centered at v."""
    lg.graph._check_node(v)
    if r < 0:
        raise InputError("radius must be non-negative")
    nodes = neighborhood(lg.graph, [v], r)
    sub, node_map = induced_labeled_subgraph(lg, nodes)
    return CenteredGraph(base=sub, center=node_map[v])


@dataclass(frozen=True)
class ConstraintSet:
    """(r, delta)-set of constraints over declared finite alphabets."""

    r: int
    delta: int
    node_alphabet: frozenset
    half_edge_alphabet: frozenset
    members: tuple[CenteredGraph, ...]


def make_constraint_set(
    r: int,
    delta: int,
    node_alphabet: Iterable,
    half_edge_alphabet: Iterable,
    members: Iterable[CenteredGraph],
) -> ConstraintSet:
    """Validate eccentricity, degree, alphabets, and pairwise non-isomorphism."""
    va = frozenset(node_alphabet)
    ea = frozenset(half_edge_alphabet)
    accepted: list[CenteredGraph] = []
    for i, member in enumerate(members):
        if member.eccentricity() > r:
            raise InputError(f"member {i} has eccentricity above r={r}")
        if member.max_degree() > delta:
            raise InputError(f"member {i} has degree above delta={delta}")
        for lab in member.base.node_labels:
            if lab not in va:
                raise InputError(f"member {i} uses node label {lab!r} outside the alphabet")
        for _, lab in member.base.half_edge_items():
            if lab not in ea:
                raise InputError(f"member {i} uses half-edge label {lab!r} outside the alphabet")
        for other in accepted:
            if centered_isomorphism(member, other) is not None:
                raise InputError(f"member {i} duplicates an earlier member up to isomorphism")
        accepted.append(member)
    return ConstraintSet(
        r=r,
        delta=delta,
        node_alphabet=va,
        half_edge_alphabet=ea,
        members=tuple(accepted),
    )


@dataclass(frozen=True)
class Verdict:
    """`ok` or the sorted list of violating nodes (with reasons)."""

    ok: bool
    violations: tuple[tuple[int, str], ...] = ()

    def violating_nodes(self) -> list[int]:
        return [v for v, _ in self.violations]

    def __bool__(self) -> bool:
        return self.ok


OK = Verdict(ok=True)


def fail(violations: Iterable[tuple[int, str]]) -> Verdict:
    ordered = tuple(sorted(violations))
    return Verdict(ok=False, violations=ordered)


def check_constraints(lg: LabeledGraph, constraints: ConstraintSet) -> Verdict:
    """Check every node's centered radius-r ball against the members."""
    for lab in lg.node_labels:
        if lab not in constraints.node_alphabet:
            raise InputError(f"node label {lab!r} outside the constraint alphabet")
    for _, lab in lg.half_edge_items():
        if lab not in constraints.half_edge_alphabet:
            raise InputError(f"half-edge label {lab!r} outside the constraint alphabet")
    bad: list[tuple[int, str]] = []
    for v in range(lg.graph.n):
        ball = centered_ball(lg, v, constraints.r)
        if not any(centered_isomorphism(ball, m) is not None for m in constraints.members):
            bad.append((v, "ball matches no constraint member"))
    return OK if not bad else fail(bad)


@dataclass(frozen=True)
class LclProblem:
    """Input/output alphabets plus constraints over the product alphabets."""

    node_in: frozenset
    half_edge_in: frozenset
    node_out: frozenset
    half_edge_out: frozenset
    constraints: ConstraintSet


@dataclass(frozen=True)
class OutputLabeling:
    """Output labels for all nodes and half-edges of a fixed graph."""

    node_labels: Mapping[int, object]
    half_edge_labels: Mapping[tuple[int, int], object]


def verify_lcl_solution(problem: LclProblem, g_in: LabeledGraph, out: OutputLabeling) -> Verdict:
    """Form product labels (input, output) and delegate to check_constraints."""
    g = g_in.graph
    for v in range(g.n):
        if g_in.node_labels[v] not in problem.node_in:
            raise InputError(f"input node label at {v} outside the declared alphabet")
        if v not in out.node_labels:
            raise InputError(f"missing output label for node {v}")
        if out.node_labels[v] not in problem.node_out:
            raise InputError(f"output node label at {v} outside the declared alphabet")
    for (v, e), lab in g_in.half_edge_items():
        if lab not in problem.half_edge_in:
            raise InputError(f"input half-edge label at ({v},{e}) outside the declared alphabet")
        if (v, e) not in out.half_edge_labels:
            raise InputError(f"missing output label for half-edge ({v},{e})")
        if out.half_edge_labels[(v, e)] not in problem.half_edge_out:
            raise InputError(f"output half-edge label at ({v},{e}) outside the declared alphabet")
    node_product = {v: (g_in.node_labels[v], out.node_labels[v]) for v in range(g.n)}
    he_product = {
        (v, e): (g_in.half_edge_label(v, e), out.half_edge_labels[(v, e)])
        for (v, e), _ in g_in.half_edge_items()
    }
    product = label_graph(g, node_product, he_product)
    return check_constraints(product, problem.constraints)


# ---------------------------------------------------------------------------
# JSON


def centered_graph_to_json(c: CenteredGraph) -> dict:
    data = labeled_graph_to_json(c.base)
    return {"graph": data, "center": c.center}


def centered_graph_from_json(data: Mapping) -> CenteredGraph:
    return CenteredGraph(base=labeled_graph_from_json(data["graph"]), center=int(data["center"]))


def constraint_set_to_json(cs: ConstraintSet) -> dict:
    from .graphs import _label_to_json

    return {
        "r": cs.r,
        "delta": cs.delta,
        "node_alphabet": sorted((_label_to_json(x) for x in cs.node_alphabet), key=repr),
        "half_edge_alphabet": sorted((_label_to_json(x) for x in cs.half_edge_alphabet), key=repr),
        "members": [centered_graph_to_json(m) for m in cs.members],
    }


def constraint_set_from_json(data: Mapping) -> ConstraintSet:
    from .graphs import _label_from_json

    return make_constraint_set(
        r=int(data["r"]),
        delta=int(data["delta"]),
        node_alphabet=[_label_from_json(x) for x in data["node_alphabet"]],
        half_edge_alphabet=[_label_from_json(x) for x in data["half_edge_alphabet"]],
        members=[centered_graph_from_json(m) for m in data["members"]],
    )


def lcl_problem_to_json(problem: LclProblem) -> dict:
    from .graphs import _label_to_json

    return {
        "node_in": sorted((_label_to_json(x) for x in problem.node_in), key=repr),
        "half_edge_in": sorted((_label_to_json(x) for x in problem.half_edge_in), key=repr),
        "node_out": sorted((_label_to_json(x) for x in problem.node_out), key=repr),
        "half_edge_out": sorted((_label_to_json(x) for x in problem.half_edge_out), key=repr),
        "constraints": constraint_set_to_json(problem.constraints),
    }


def lcl_problem_from_json(data: Mapping) -> LclProblem:
    from .graphs import _label_from_json

    return LclProblem(
        node_in=frozenset(_label_from_json(x) for x in data["node_in"]),
        half_edge_in=frozenset(_label_from_json(x) for x in data["half_edge_in"]),
        node_out=frozenset(_label_from_json(x) for x in data["node_out"]),
        half_edge_out=frozenset(_label_from_json(x) for x in data["half_edge_out"]),
        constraints=constraint_set_from_json(data["constraints"]),
    )
