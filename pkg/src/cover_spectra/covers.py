"""Finite abelian quotient covers, non-backtracking walk balls, and numeric probes.

The quotient cover for modulus n uses the group (Z/n)^d, where d is the number
of edges outside a greedy spanning forest. Forest edges map to the identity
and the s-th remaining edge to the s-th unit vector. Lifts of an edge join
(u, g) to (v, g + phi(e)) and copy its weight.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .caps import get_caps
from .errors import BallTooLarge, CoverTooLarge, InputError, UnknownVertex
from .exact import GaussianRational, ThetaSpec
from .multigraph import Edge, MultiGraph
from .polynomials import adjacency_matrix, characteristic_polynomial, twisted_characteristic
from .reports import Report

_ONE = GaussianRational.of(1)
_I = GaussianRational(Fraction(0), Fraction(1))
UNITS = {1: [_ONE], 2: [_ONE, -_ONE], 4: [_ONE, _I, -_ONE, -_I]}


@dataclass(frozen=True)
class QuotientCover:
    base: MultiGraph
    modulus: int
    s_plus: tuple[str, ...]
    cover: MultiGraph
    projection: dict

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "s_plus": list(self.s_plus),
            "graph": self.cover.to_json(),
            "projection": {k: {"vertex": v, "group": list(gr)} for k, (v, gr) in self.projection.items()},
        }


@dataclass(frozen=True)
class CoverBall:
    base: MultiGraph
    root: str
    radius: int
    ball: MultiGraph
    projection: dict

    def to_json(self) -> dict:
        return {
            "root": self.root,
            "radius": self.radius,
            "graph": self.ball.to_json(),
            "projection": dict(self.projection),
        }


def _label(v: str, gr: tuple) -> str:
    return f"{v}|{','.join(map(str, gr))}"


def build_quotient_cover(g: MultiGraph, n: int) -> QuotientCover:
    """The (Z/n)^d quotient of the maximal abelian cover.

    When the group is trivial (n = 1 or g a forest) the cover keeps the ids
    of ``g``.
    """
    if n < 1:
        raise InputError("modulus must be >= 1")
    _, s_plus = g.spanning_forest()
    d = len(s_plus)
    size = g.n * n ** d
    if size > get_caps().max_cover_vertices:
        raise CoverTooLarge(f"cover would have {size} vertices")
    if n == 1 or d == 0:
        proj = {v: (v, ()) for v in g.vertex_ids}
        return QuotientCover(g, n, s_plus, MultiGraph([(v, g.r(v)) for v in g.vertex_ids], g.edges), proj)
    shift = {eid: s for s, eid in enumerate(s_plus)}
    group = list(itertools.product(range(n), repeat=d))
    verts, proj = [], {}
    for v in g.vertex_ids:
        for gr in group:
            vid = _label(v, gr)
            verts.append((vid, g.r(v)))
            proj[vid] = (v, gr)
    edges = []
    for e in g.edges:
        s = shift.get(e.id)
        for gr in group:
            h = gr if s is None else gr[:s] + ((gr[s] + 1) % n,) + gr[s + 1:]
            edges.append(Edge(f"{e.id}|{','.join(map(str, gr))}", _label(e.u, gr), _label(e.v, h), e.rho))
    return QuotientCover(g, n, s_plus, MultiGraph(verts, edges), proj)


def character_factorization_check(g: MultiGraph, n: int, cover: QuotientCover | None = None) -> Report:
    """phi of the (Z/n)^d cover equals the product of the d-fold twisted
    polynomials over all characters; exact for n dividing 4."""
    if n not in UNITS:
        raise InputError("exact factorization is available for n in {1, 2, 4}")
    cover = cover or build_quotient_cover(g, n)
    units = UNITS[n]
    prod = None
    for ks in itertools.product(range(n), repeat=len(cover.s_plus)):
        xi = {eid: units[k] for eid, k in zip(cover.s_plus, ks)}
        f = twisted_characteristic(g, xi)
        prod = f if prod is None else prod * f
    if prod is None:
        prod = characteristic_polynomial(g)
    lhs = characteristic_polynomial(cover.cover)
    rep = Report("character_factorization")
    rep.check(lhs == prod, modulus=n, cover=lhs.pretty(), product=prod.pretty())
    rep.info["characters"] = n ** len(cover.s_plus)
    return rep


def _arcs_from(g: MultiGraph, w: str):
    for e in g.incident(w):
        if e.is_loop:
            yield e, 1
            yield e, -1
        elif e.u == w:
            yield e, 1
        else:
            yield e, -1


def build_cover_ball(g: MultiGraph, root, radius: int) -> CoverBall:
    """Tree of non-backtracking walks of length <= radius from ``root``.

    A step is backtracking when it reverses the arc just used (same edge
    record, opposite direction); a parallel edge may lead straight back.
    """
    root = str(root)
    if not g.has_vertex(root):
        raise UnknownVertex(f"unknown vertex {root!r}")
    if radius < 0:
        raise InputError("radius must be >= 0")
    cap = get_caps().max_ball_vertices
    verts = [(root, g.r(root))]
    proj = {root: root}
    edges = []
    layer = [(root, root, None)]  # (walk id, endpoint, last arc)
    for _ in range(radius):
        nxt = []
        for wid, end, last in layer:
            for e, s in _arcs_from(g, end):
                if last is not None and last[0] == e.id and last[1] == -s:
                    continue
                target = e.v if s == 1 else e.u
                cid = f"{wid}|{e.id}{'+' if s == 1 else '-'}"
                verts.append((cid, g.r(target)))
                proj[cid] = target
                edges.append(Edge(cid, wid, cid, e.rho if s == 1 else e.rho.conj()))
                nxt.append((cid, target, (e.id, s)))
                if len(verts) > cap:
                    raise BallTooLarge(f"ball exceeds {cap} vertices")
        layer = nxt
    return CoverBall(g, root, radius, MultiGraph(verts, edges), proj)


@dataclass(frozen=True)
class ProbeReport:
    """Floating-point eigenvalues near theta. Illustration only: the
    combinatorial certificates decide, this never does."""

    dimension: int
    theta: float
    tolerance: float
    min_distance: float
    count_within_tolerance: int
    nearest: tuple[float, ...]
    authoritative: bool = False

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "theta": self.theta,
            "tolerance": self.tolerance,
            "min_distance": self.min_distance,
            "count_within_tolerance": self.count_within_tolerance,
            "nearest": list(self.nearest),
            "authoritative": self.authoritative,
        }


def spectral_probe(g: MultiGraph, theta: ThetaSpec, tol: float = 1e-9) -> ProbeReport:
    if g.n > get_caps().max_probe_dimension:
        raise CoverTooLarge(f"probe dimension {g.n} exceeds the cap")
    t = float(theta)
    if g.n == 0:
        return ProbeReport(0, t, tol, float("inf"), 0, ())
    a = np.array([[complex(z) for z in row] for row in adjacency_matrix(g)])
    ev = np.linalg.eigvalsh(a)
    dist = np.abs(ev - t)
    order = np.argsort(dist)
    return ProbeReport(
        dimension=g.n,
        theta=t,
        tolerance=tol,
        min_distance=float(dist[order[0]]),
        count_within_tolerance=int(np.sum(dist < tol)),
        nearest=tuple(float(ev[k]) for k in order[:5]),
    )
