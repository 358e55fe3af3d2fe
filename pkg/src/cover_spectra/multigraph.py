"""Finite weighted multi-graphs and their combinatorial enumerations.

A :class:`MultiGraph` has rational vertex weights ``r`` and, on every edge
record, a nonzero Gaussian-rational arc weight ``rho`` for the stored
orientation ``u -> v`` (the reverse arc carries the conjugate). Loops are
edges with ``u == v``; parallel edges are distinct records.

Vertex sets are passed around as frozensets of vertex ids. Internally every
graph shares a :class:`_Context` with the graph it was induced from, which
maps vertex ids to bits of the *host* ordering. Polynomial caches in
:mod:`cover_spectra.polynomials` are keyed by those bitmasks, so every induced
subgraph of one host reuses the same memo table.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .caps import get_caps
from .errors import GraphTooLarge, InputError, SameVertex, UnknownVertex
from .exact import GaussianRational, to_rational

VertexId = str


@dataclass(frozen=True)
class Edge:
    id: str
    u: VertexId
    v: VertexId
    rho: GaussianRational = GaussianRational(Fraction(1))

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def lam(self) -> Fraction:
        """lambda_e = -|rho_e|^2."""
        return -self.rho.abs2()

    def other(self, w: VertexId) -> VertexId:
        return self.v if w == self.u else self.u

    def rho_from(self, a: VertexId) -> GaussianRational:
        """Weight of the arc of this edge leaving ``a``."""
        return self.rho if a == self.u else self.rho.conj()


class _Context:
    """Host ordering and memo tables shared by a graph and its induced subgraphs."""

    def __init__(self, vertex_ids: Sequence[VertexId], edge_ids: Sequence[str]):
        self.bit = {v: 1 << k for k, v in enumerate(vertex_ids)}
        self.index = {v: k for k, v in enumerate(vertex_ids)}
        self.edge_index = {e: k for k, e in enumerate(edge_ids)}
        self.caches: dict = {}
        self.host: "MultiGraph | None" = None

    def cache(self, name: str) -> dict:
        c = self.caches.get(name)
        if c is None:
            c = self.caches[name] = {}
        return c


class MultiGraph:
    """Immutable weighted multi-graph."""

    def __init__(self, vertices: Iterable, edges: Iterable = (), *, _ctx: _Context | None = None):
        verts: list[tuple[VertexId, Fraction]] = []
        for item in vertices:
            if isinstance(item, tuple):
                vid, r = item
            else:
                vid, r = item, 0
            verts.append((str(vid), to_rational(r)))
        ids = [v for v, _ in verts]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate vertex id")
        self.vertex_ids: tuple[VertexId, ...] = tuple(ids)
        self.weights: dict[VertexId, Fraction] = dict(verts)

        es: list[Edge] = []
        for k, item in enumerate(edges):
            if isinstance(item, Edge):
                e = item
            else:
                if len(item) == 2:
                    u, v = item
                    rho = 1
                    eid = f"e{k + 1}"
                elif len(item) == 3:
                    u, v, rho = item
                    eid = f"e{k + 1}"
                else:
                    eid, u, v, rho = item
                e = Edge(str(eid), str(u), str(v), GaussianRational.of(rho))
            if e.rho.is_zero():
                raise InputError(f"edge {e.id} has rho = 0")
            if e.u not in self.weights or e.v not in self.weights:
                raise UnknownVertex(f"edge {e.id} has an unknown endpoint")
            es.append(e)
        if len({e.id for e in es}) != len(es):
            raise InputError("duplicate edge id")
        self.edges: tuple[Edge, ...] = tuple(es)
        self._edge_by_id = {e.id: e for e in es}
        inc: dict[VertexId, list[Edge]] = {v: [] for v in ids}
        for e in es:
            inc[e.u].append(e)
            if not e.is_loop:
                inc[e.v].append(e)
        self._incident = {v: tuple(lst) for v, lst in inc.items()}
        if _ctx is None:
            _ctx = _Context(ids, [e.id for e in es])
            _ctx.host = self
        self._ctx = _ctx
        self.mask = 0
        for v in ids:
            self.mask |= self._ctx.bit[v]

    # basic accessors -------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.vertex_ids)

    @property
    def m(self) -> int:
        return len(self.edges)

    def r(self, v: VertexId) -> Fraction:
        return self.weights[v]

    def edge(self, eid: str) -> Edge:
        return self._edge_by_id[eid]

    def has_vertex(self, v) -> bool:
        return v in self.weights

    def incident(self, v: VertexId) -> tuple[Edge, ...]:
        """Edges at ``v``; a loop appears once."""
        return self._incident[v]

    def neighbors(self, v: VertexId) -> list[VertexId]:
        """Distinct neighbours of ``v`` other than ``v`` itself, in host order."""
        out = {e.other(v) for e in self._incident[v] if not e.is_loop}
        return self.sort_ids(out)

    def degree(self, v: VertexId) -> int:
        """Number of incident edges, loops counted twice."""
        return sum(2 if e.is_loop else 1 for e in self._incident[v])

    def is_regular(self) -> bool:
        return len({self.degree(v) for v in self.vertex_ids}) <= 1

    def order_key(self, v: VertexId) -> int:
        return self._ctx.index[v]

    def edge_key(self, eid: str) -> int:
        return self._ctx.edge_index[eid]

    def sort_ids(self, ids: Iterable[VertexId]) -> list[VertexId]:
        return sorted(ids, key=self._ctx.index.__getitem__)

    def mask_of(self, ids: Iterable[VertexId]) -> int:
        m = 0
        bit = self._ctx.bit
        for v in ids:
            m |= bit[v]
        return m

    def ids_of_mask(self, mask: int) -> list[VertexId]:
        return [v for v in self.vertex_ids if self._ctx.bit[v] & mask]

    def _check(self, s: Iterable[VertexId]) -> frozenset:
        s = frozenset(str(v) for v in s)
        for v in s:
            if v not in self.weights:
                raise UnknownVertex(f"unknown vertex {v!r}")
        return s

    def __repr__(self):
        return f"MultiGraph(n={self.n}, m={self.m})"

    def same_as(self, other: "MultiGraph") -> bool:
        """Identical ids, weights and edge records."""
        return (
            self.vertex_ids == other.vertex_ids
            and self.weights == other.weights
            and self.edges == other.edges
        )

    # induced subgraphs -----------------------------------------------------
    def delete_vertices(self, s: Iterable[VertexId]) -> "MultiGraph":
        """Subgraph induced by V(g) minus ``s``; ids are preserved."""
        s = self._check(s)
        if not s:
            return self
        keep = [(v, self.weights[v]) for v in self.vertex_ids if v not in s]
        es = [e for e in self.edges if e.u not in s and e.v not in s]
        return MultiGraph(keep, es, _ctx=self._ctx)

    def induced(self, s: Iterable[VertexId]) -> "MultiGraph":
        s = self._check(s)
        return self.delete_vertices(set(self.vertex_ids) - s)

    def frontier(self, s: Iterable[VertexId]) -> frozenset:
        """Vertices outside ``s`` with a neighbour in ``s``."""
        s = self._check(s)
        out = set()
        for v in s:
            for e in self._incident[v]:
                w = e.other(v)
                if w not in s:
                    out.add(w)
        return frozenset(out)

    def components(self) -> list[frozenset]:
        """Connected components, ordered by their first vertex in host order."""
        seen: set = set()
        comps = []
        for v in self.vertex_ids:
            if v in seen:
                continue
            comp = {v}
            stack = [v]
            while stack:
                a = stack.pop()
                for e in self._incident[a]:
                    b = e.other(a)
                    if b not in comp:
                        comp.add(b)
                        stack.append(b)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_forest(self) -> bool:
        """No loops, no parallel edges, no cycles."""
        if any(e.is_loop for e in self.edges):
            return False
        return len(self.edges) == self.n - len(self.components())

    def is_tree(self) -> bool:
        return self.n > 0 and self.is_connected() and self.is_forest()

    # enumerations ----------------------------------------------------------
    def _cap(self, oracle: bool = False) -> None:
        caps = get_caps()
        limit = caps.max_oracle_vertices if oracle else caps.max_vertices
        if self.n > limit or self.m > caps.max_edges:
            raise GraphTooLarge(f"graph with |V|={self.n}, |E|={self.m} exceeds caps")

    def enumerate_cycles(self) -> list["CyclePath"]:
        """All cycles: loops, pairs of parallel edges, and simple cycles of
        length >= 3 (one entry per edge set), in canonical form, sorted by
        length then canonical edge order."""
        memo = self._ctx.cache("cycles")
        hit = memo.get(self.mask)
        if hit is None:
            hit = memo[self.mask] = self._enumerate_cycles()
        return list(hit)

    def _enumerate_cycles(self) -> tuple["CyclePath", ...]:
        self._cap()
        found: dict[tuple, CyclePath] = {}
        for e in self.edges:
            if e.is_loop:
                c = CyclePath.cycle([e.u], [e.id])
                found[c.key(self)] = c
        pairs: dict[frozenset, list[Edge]] = {}
        for e in self.edges:
            if not e.is_loop:
                pairs.setdefault(frozenset((e.u, e.v)), []).append(e)
        for group in pairs.values():
            for e, f in itertools.combinations(group, 2):
                c = CyclePath.cycle([e.u, e.v], [e.id, f.id]).canonical(self)
                found[c.key(self)] = c
        idx = self._ctx.index
        for s in self.vertex_ids:
            si = idx[s]
            path_v = [s]
            path_e: list[str] = []
            on_path = {s}

            def dfs(cur):
                for e in self._incident[cur]:
                    if e.is_loop:
                        continue
                    w = e.other(cur)
                    if w == s:
                        if len(path_v) >= 3 and e.id != path_e[0]:
                            c = CyclePath.cycle(list(path_v), path_e + [e.id]).canonical(self)
                            found.setdefault(c.key(self), c)
                        continue
                    if w in on_path or idx[w] < si:
                        continue
                    path_v.append(w)
                    path_e.append(e.id)
                    on_path.add(w)
                    dfs(w)
                    on_path.discard(w)
                    path_e.pop()
                    path_v.pop()

            dfs(s)
        return tuple(sorted(found.values(), key=lambda c: (len(c.edges), c.key(self))))

    def enumerate_two_regular(self) -> list["TwoRegularSubgraph"]:
        """All vertex-disjoint packings of cycles, the empty packing first."""
        memo = self._ctx.cache("packings")
        hit = memo.get(self.mask)
        if hit is None:
            hit = memo[self.mask] = tuple(self._enumerate_two_regular())
        return list(hit)

    def _enumerate_two_regular(self) -> list["TwoRegularSubgraph"]:
        cycles = self.enumerate_cycles()
        masks = [self.mask_of(c.vertices) for c in cycles]
        out: list[TwoRegularSubgraph] = []

        def rec(start, used, chosen):
            out.append(TwoRegularSubgraph(tuple(chosen)))
            for k in range(start, len(cycles)):
                if masks[k] & used:
                    continue
                chosen.append(cycles[k])
                rec(k + 1, used | masks[k], chosen)
                chosen.pop()

        rec(0, 0, [])
        return out

    def simple_paths_from(self, i: VertexId, max_vertices: int | None = None) -> Iterator["CyclePath"]:
        """All simple paths starting at ``i`` (including the trivial one),
        depth-first in edge order."""
        i = str(i)
        if i not in self.weights:
            raise UnknownVertex(f"unknown vertex {i!r}")
        limit = get_caps().max_paths
        count = 0
        path_v = [i]
        path_e: list[str] = []
        on_path = {i}

        def dfs(cur):
            nonlocal count
            count += 1
            if count > limit:
                raise GraphTooLarge("path enumeration exceeds the max_paths cap")
            yield CyclePath.path(list(path_v), list(path_e))
            if max_vertices is not None and len(path_v) >= max_vertices:
                return
            for e in self._incident[cur]:
                if e.is_loop:
                    continue
                w = e.other(cur)
                if w in on_path:
                    continue
                path_v.append(w)
                path_e.append(e.id)
                on_path.add(w)
                yield from dfs(w)
                on_path.discard(w)
                path_e.pop()
                path_v.pop()

        yield from dfs(i)

    def enumerate_paths_between(self, i: VertexId, j: VertexId) -> list["CyclePath"]:
        """All simple paths from ``i`` to ``j`` as edge sequences."""
        i, j = str(i), str(j)
        if i == j:
            raise SameVertex("paths between a vertex and itself")
        self._check([i, j])
        return [p for p in self.simple_paths_from(i) if p.vertices[-1] == j]

    def spanning_forest(self) -> tuple[frozenset, tuple[str, ...]]:
        """Greedy maximal spanning forest in edge order, and the remaining
        edges (ordered) whose positive arcs form S_+."""
        parent = {v: v for v in self.vertex_ids}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        forest = []
        rest = []
        for e in self.edges:
            a, b = find(e.u), find(e.v)
            if a == b:
                rest.append(e.id)
            else:
                parent[a] = b
                forest.append(e.id)
        return frozenset(forest), tuple(rest)

    # serialisation ---------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "r": str(self.weights[v])} for v in self.vertex_ids],
            "edges": [
                {"id": e.id, "u": e.u, "v": e.v, "rho": e.rho.to_json()} for e in self.edges
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MultiGraph":
        try:
            verts = [(str(v["id"]), to_rational(str(v.get("r", "0")))) for v in obj["vertices"]]
            edges = []
            for k, e in enumerate(obj.get("edges", [])):
                rho = GaussianRational.from_json(e.get("rho", "1"))
                edges.append(Edge(str(e.get("id", f"e{k + 1}")), str(e["u"]), str(e["v"]), rho))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed graph JSON: {exc}") from exc
        return cls(verts, edges)


@dataclass(frozen=True)
class CyclePath:
    """A path or a cycle given by its vertex and edge sequences.

    For a cycle, ``edges[k]`` joins ``vertices[k]`` and ``vertices[k+1]``
    (indices mod length); a loop has one vertex and one edge, a parallel pair
    two of each.
    """

    kind: str
    vertices: tuple[VertexId, ...]
    edges: tuple[str, ...]

    @classmethod
    def path(cls, vertices, edges) -> "CyclePath":
        return cls("path", tuple(vertices), tuple(edges))

    @classmethod
    def cycle(cls, vertices, edges) -> "CyclePath":
        return cls("cycle", tuple(vertices), tuple(edges))

    @property
    def is_cycle(self) -> bool:
        return self.kind == "cycle"

    def __len__(self):
        return len(self.vertices)

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def reversed(self) -> "CyclePath":
        if not self.is_cycle:
            return CyclePath.path(self.vertices[::-1], self.edges[::-1])
        k = len(self.vertices)
        vs = [self.vertices[0]] + [self.vertices[(k - t) % k] for t in range(1, k)]
        es = [self.edges[(k - 1 - t) % k] for t in range(k)]
        return CyclePath.cycle(vs, es)

    def rotations(self) -> Iterator["CyclePath"]:
        k = len(self.vertices)
        for base in (self, self.reversed()):
            for s in range(k):
                yield CyclePath.cycle(base.vertices[s:] + base.vertices[:s], base.edges[s:] + base.edges[:s])

    def key(self, g: MultiGraph) -> tuple:
        """Edge-index sequence; for a canonical cycle this identifies it."""
        return tuple(g.edge_key(e) for e in self.edges)

    def canonical(self, g: MultiGraph) -> "CyclePath":
        """Rotation starting with the lowest edge (in host edge order),
        traversing that edge from its stored ``u`` to ``v``.

        The traversal direction of the canonical form is the orientation that
        cycle weights refer to.
        """
        if not self.is_cycle:
            return self
        first = min(self.edges, key=g.edge_key)
        e = g.edge(first)
        for c in self.rotations():
            if c.edges[0] == first and c.vertices[0] == e.u:
                return c
        raise AssertionError("cycle does not traverse its own edge")

    def is_valid_in(self, g: MultiGraph) -> bool:
        """Structural check: edges exist and join consecutive vertices."""
        if any(not g.has_vertex(v) for v in self.vertices):
            return False
        if len(set(self.vertices)) != len(self.vertices):
            return False
        try:
            es = [g.edge(e) for e in self.edges]
        except KeyError:
            return False
        k = len(self.vertices)
        if self.is_cycle:
            if len(es) != k or k == 0 or len(set(self.edges)) != k:
                return False
            pairs = [(self.vertices[t], self.vertices[(t + 1) % k]) for t in range(k)]
        else:
            if len(es) != k - 1 or k == 0:
                return False
            pairs = [(self.vertices[t], self.vertices[t + 1]) for t in range(k - 1)]
        return all({e.u, e.v} == {a, b} for e, (a, b) in zip(es, pairs))

    def to_json(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices), "edges": list(self.edges)}

    @classmethod
    def from_json(cls, obj: dict) -> "CyclePath":
        return cls(obj["kind"], tuple(map(str, obj["vertices"])), tuple(map(str, obj["edges"])))


@dataclass(frozen=True)
class TwoRegularSubgraph:
    cycles: tuple[CyclePath, ...] = field(default_factory=tuple)

    @property
    def vertex_set(self) -> frozenset:
        out: set = set()
        for c in self.cycles:
            out |= c.vertex_set
        return frozenset(out)

    def __len__(self):
        return len(self.cycles)

    def to_json(self) -> list:
        return [list(c.edges) for c in self.cycles]


# ---------------------------------------------------------------------------
# small named graphs (ids "1".."n", zero vertex weights, rho = 1)


def _ids(n: int) -> list[str]:
    return [str(k) for k in range(1, n + 1)]


def empty_graph(n: int = 0) -> MultiGraph:
    return MultiGraph(_ids(n), [])


def path_graph(n: int) -> MultiGraph:
    ids = _ids(n)
    return MultiGraph(ids, [(ids[k], ids[k + 1]) for k in range(n - 1)])


def cycle_graph(n: int) -> MultiGraph:
    ids = _ids(n)
    return MultiGraph(ids, [(ids[k], ids[(k + 1) % n]) for k in range(n)])


def complete_graph(n: int) -> MultiGraph:
    ids = _ids(n)
    return MultiGraph(ids, list(itertools.combinations(ids, 2)))


def star_graph(leaves: int) -> MultiGraph:
    ids = _ids(leaves + 1)
    return MultiGraph(ids, [(ids[0], v) for v in ids[1:]])


def disjoint_union(*graphs: MultiGraph, prefixes: Sequence[str] | None = None) -> MultiGraph:
    """Disjoint union with ids prefixed ``"a."``, ``"b."`` and so on."""
    prefixes = prefixes or [chr(ord("a") + k) + "." for k in range(len(graphs))]
    verts, edges = [], []
    for g, p in zip(graphs, prefixes):
        verts += [(p + v, g.r(v)) for v in g.vertex_ids]
        edges += [Edge(p + e.id, p + e.u, p + e.v, e.rho) for e in g.edges]
    return MultiGraph(verts, edges)


def bowtie_example() -> MultiGraph:
    """Two triangles sharing vertex 3; vertex 3 has weight 1, all rho = 1."""
    verts = [("1", 0), ("2", 0), ("3", 1), ("4", 0), ("5", 0)]
    edges = [
        ("e12", "1", "2", 1),
        ("e13", "1", "3", 1),
        ("e23", "2", "3", 1),
        ("e34", "3", "4", 1),
        ("e35", "3", "5", 1),
        ("e45", "4", "5", 1),
    ]
    return MultiGraph(verts, edges)
