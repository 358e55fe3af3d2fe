"""Path weights, theta-critical paths and cycles, and the negative certificate.

A path or cycle is theta-critical when deleting its vertices lowers the
multiplicity of theta in mu by exactly one. When G has no theta-Aomoto
subset, some critical component is not a tree; it carries a critical cycle,
and deleting that cycle keeps the graph free of Aomoto subsets. Repeating
m_theta(G) times gives disjoint cycles whose removal kills theta.
"""
from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .aomoto import find_aomoto_bruteforce, maximal_refined_aomoto
from .caps import get_caps
from .errors import (
    AomotoSubsetExists,
    Disconnected,
    ExhaustedWithoutWitness,
    InvalidCertificate,
    InvariantViolated,
    IsATree,
    NotAdjacent,
    NotAPath,
    NotCritical,
    NotFactorCritical,
    PreconditionViolated,
    UnknownVertex,
)
from .exact import ThetaSpec
from .gallai_edmonds import classify, is_theta_critical
from .multigraph import CyclePath, MultiGraph
from .polynomials import theta_multiplicity, theta_multiplicity_mask


@dataclass(frozen=True)
class PathWeightTrace:
    path: CyclePath
    classes: tuple[str, ...]
    w_theta: int

    def to_json(self) -> dict:
        return {"path": self.path.to_json(), "classes": list(self.classes), "w_theta": self.w_theta}


@dataclass(frozen=True)
class CycleCertificate:
    cycles: tuple[CyclePath, ...]
    residual_multiplicity: int

    @property
    def vertex_set(self) -> frozenset:
        return frozenset().union(*(c.vertex_set for c in self.cycles)) if self.cycles else frozenset()

    def to_json(self) -> dict:
        return {
            "cycles": [list(c.edges) for c in self.cycles],
            "cycle_vertices": [list(c.vertices) for c in self.cycles],
            "residual_multiplicity": self.residual_multiplicity,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CycleCertificate":
        verts = obj.get("cycle_vertices") or [[] for _ in obj["cycles"]]
        cycles = tuple(CyclePath.cycle(map(str, vs), map(str, es)) for vs, es in zip(verts, obj["cycles"]))
        return cls(cycles, int(obj["residual_multiplicity"]))


def _m(g: MultiGraph, vertices, theta: ThetaSpec) -> int:
    """m_theta of mu^{g - vertices}."""
    return theta_multiplicity_mask(g, g.mask & ~g.mask_of(vertices), theta)


def path_weight(g: MultiGraph, theta: ThetaSpec, p: CyclePath) -> PathWeightTrace:
    """W_theta(P): infinity steps minus zero steps along successive deletion."""
    if p.is_cycle or not p.is_valid_in(g):
        raise NotAPath("not a path of the graph")
    classes = []
    w = 0
    removed: list[str] = []
    before = theta_multiplicity(g, theta)
    start = before
    for v in p.vertices:
        removed.append(v)
        after = _m(g, removed, theta)
        step = after - before
        classes.append({-1: "0", 0: "pm", 1: "inf"}[step])
        w += step
        before = after
    if _m(g, p.vertices, theta) != start + w:
        raise InvariantViolated("m(G - P) != m(G) + W(P)")
    return PathWeightTrace(p, tuple(classes), w)


def _joining_edge(g: MultiGraph, a: str, b: str) -> str:
    es = [e.id for e in g.incident(a) if not e.is_loop and e.other(a) == b]
    if not es:
        raise NotAdjacent(f"{a} and {b} are not adjacent")
    return min(es, key=g.edge_key)


def find_critical_path(g: MultiGraph, theta: ThetaSpec, i, j) -> CyclePath:
    """A path i -> j whose deletion leaves theta a non-root, when m_theta(g) = 1
    and both ends are in the zero class. First hit in path enumeration order."""
    i, j = str(i), str(j)
    for v in (i, j):
        if not g.has_vertex(v):
            raise UnknownVertex(f"unknown vertex {v!r}")
    if theta_multiplicity(g, theta) != 1:
        raise PreconditionViolated("a critical path needs m_theta = 1")
    if _m(g, [i], theta) != 0 or _m(g, [j], theta) != 0:
        raise PreconditionViolated("both ends must be in the zero class")
    if i == j:
        return CyclePath.path([i], [])
    for p in g.enumerate_paths_between(i, j):
        if _m(g, p.vertices, theta) == 0:
            return p
    raise ExhaustedWithoutWitness(f"no critical path {i} -> {j}")


def _shortest_balanced_path(g: MultiGraph, theta: ThetaSpec) -> CyclePath:
    """A path of minimum length with W_theta = 0 (that is, m(G - P) = 1)."""
    for length in range(2, g.n + 1):
        for s in g.vertex_ids:
            for p in g.simple_paths_from(s, max_vertices=length):
                if len(p.vertices) == length and _m(g, p.vertices, theta) == 1:
                    return p
    raise ExhaustedWithoutWitness("no path with W = 0")


def find_critical_cycle(g: MultiGraph, theta: ThetaSpec) -> CyclePath:
    """A cycle C with m_theta(g - C) = 0, for g connected, critical and not a tree.

    The first cycle is tried directly. Otherwise a shortest path P with
    W_theta(P) = 0 is closed up through neighbours u, v of its ends lying in
    the zero class of g - P and a critical path between them.
    """
    if not g.is_connected() or g.n == 0:
        raise Disconnected("graph must be connected")
    if g.is_tree():
        raise IsATree("a tree has no cycles")
    if not is_theta_critical(g, theta):
        raise NotCritical("graph is not theta-critical")
    if theta_multiplicity(g, theta) != 1:
        raise InvariantViolated("connected critical graph with m_theta != 1")
    c0 = g.enumerate_cycles()[0]
    if _m(g, c0.vertices, theta) == 0:
        return c0
    p = _shortest_balanced_path(g, theta)
    rest = g.delete_vertices(p.vertices)
    zero = {v for v in rest.vertex_ids if _m(rest, [v], theta) == 0}
    first, last = p.vertices[0], p.vertices[-1]
    us = [w for w in g.neighbors(first) if w in zero]
    vs = [w for w in g.neighbors(last) if w in zero]
    if not us or not vs:
        raise ExhaustedWithoutWitness("path ends have no neighbour in the zero class")
    u, v = us[0], vs[0]
    q = find_critical_path(rest, theta, v, u)
    verts = list(p.vertices) + list(q.vertices)
    edges = list(p.edges) + [_joining_edge(g, last, v)] + list(q.edges) + [_joining_edge(g, u, first)]
    c = CyclePath.cycle(verts, edges).canonical(g)
    if not c.is_valid_in(g) or _m(g, c.vertices, theta) != 0:
        raise ExhaustedWithoutWitness("closed-up cycle is not critical")
    return c


def find_disjoint_critical_cycles(g: MultiGraph, theta: ThetaSpec, oracle: bool = True) -> CycleCertificate:
    """m_theta(g) disjoint cycles whose removal leaves theta a non-root.

    Requires that g has no theta-Aomoto subset. With ``oracle`` set, after
    every deletion brute force confirms that no Aomoto subset appeared (only
    for graphs within the oracle cap).
    """
    if maximal_refined_aomoto(g, theta) is not None:
        raise AomotoSubsetExists("theta has a positive certificate")
    cycles: list[CyclePath] = []
    cur = g
    m = theta_multiplicity(cur, theta)
    while m > 0:
        part = classify(cur, theta)
        comp = next((c for c in part.critical_components if not cur.induced(c).is_tree()), None)
        if comp is None:
            raise ExhaustedWithoutWitness("every critical component is a tree")
        c = find_critical_cycle(cur.induced(comp), theta)
        cur = cur.delete_vertices(c.vertex_set)
        m_next = theta_multiplicity(cur, theta)
        if m_next != m - 1:
            raise InvariantViolated("critical cycle of a component is not critical in the graph")
        if oracle and cur.n <= get_caps().max_oracle_vertices and find_aomoto_bruteforce(cur, theta) is not None:
            raise InvariantViolated("deleting a critical cycle created an Aomoto subset")
        cycles.append(c)
        m = m_next
    return CycleCertificate(tuple(cycles), m)


def validate_cycle_certificate(g: MultiGraph, theta: ThetaSpec, cert: CycleCertificate) -> None:
    """Raise InvalidCertificate unless the cycles are valid, pairwise disjoint,
    as many as m_theta(g), and leave theta a non-root."""
    seen: set = set()
    for c in cert.cycles:
        if not c.is_cycle or not c.is_valid_in(g):
            raise InvalidCertificate(f"not a cycle of the graph: {list(c.edges)}")
        if seen & c.vertex_set:
            raise InvalidCertificate("cycles are not vertex-disjoint")
        seen |= c.vertex_set
    if len(cert.cycles) != theta_multiplicity(g, theta):
        raise InvalidCertificate("number of cycles differs from m_theta")
    residual = _m(g, seen, theta)
    if residual != cert.residual_multiplicity or residual != 0:
        raise InvalidCertificate(f"residual multiplicity is {residual}")


# ---------------------------------------------------------------------------
# classical case


def _simple_graph(g: MultiGraph, drop=()) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(v for v in g.vertex_ids if v not in drop)
    h.add_edges_from((e.u, e.v) for e in g.edges if not e.is_loop and e.u not in drop and e.v not in drop)
    return h


def _perfect_matching(g: MultiGraph, drop=()) -> dict | None:
    h = _simple_graph(g, drop)
    mate = nx.max_weight_matching(h, maxcardinality=True)
    if 2 * len(mate) != h.number_of_nodes():
        return None
    out = {}
    for a, b in mate:
        out[a], out[b] = b, a
    return out


def factor_critical_odd_cycle(g: MultiGraph, i, j) -> CyclePath:
    """Odd cycle through adjacent i, j in a factor-critical graph whose
    complement has a perfect matching, from the alternating path between
    near-perfect matchings missing i and missing j."""
    i, j = str(i), str(j)
    if any(g.r(v) != 0 for v in g.vertex_ids) or any(e.rho != 1 for e in g.edges):
        raise PreconditionViolated("the classical case needs r = 0 and rho = 1")
    _joining_edge(g, i, j)
    near = {}
    for v in g.vertex_ids:
        near[v] = _perfect_matching(g, drop=(v,))
        if near[v] is None:
            raise NotFactorCritical(f"G - {v} has no perfect matching")
    mi, mj = near[i], near[j]
    walk = [i]
    use_j = True
    while True:
        mate = (mj if use_j else mi).get(walk[-1])
        if mate is None:
            break
        walk.append(mate)
        use_j = not use_j
    if walk[-1] != j or len(walk) % 2 == 0:
        raise ExhaustedWithoutWitness("alternating path does not end at j")
    edges = [_joining_edge(g, a, b) for a, b in zip(walk, walk[1:])] + [_joining_edge(g, j, i)]
    c = CyclePath.cycle(walk, edges).canonical(g)
    if _perfect_matching(g, drop=c.vertex_set) is None:
        raise ExhaustedWithoutWitness("complement of the cycle has no perfect matching")
    return c
