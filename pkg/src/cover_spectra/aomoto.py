"""theta-Aomoto subsets: validation, brute-force search, refinement, and the
maximal refined subset that decides whether theta is a cover eigenvalue.

A subset S is a theta-Aomoto subset when G[S] is a forest, theta is a root of
mu of every tree of G[S], and |frontier(S)| < cc(G[S]). It is refined when
every tree is theta-critical and every nonempty U in the frontier touches at
least |U| + 1 trees.

Pruning works by repeatedly removing the trees touched by an
inclusion-minimal deficient frontier set (one touching at most |U| trees).
Trees touched by a minimal deficient set can never belong to a refined
subset of the current one, so the loop ends at the largest refined subset.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .caps import get_caps
from .errors import ExhaustedWithoutWitness, GraphTooLarge, InvalidCertificate
from .exact import ThetaSpec
from .gallai_edmonds import classify, component_adjacency, deficient_subsets, is_theta_critical
from .multigraph import CyclePath, MultiGraph
from .polynomials import theta_multiplicity_mask
from .reports import Report


@dataclass(frozen=True)
class AomotoCertificate:
    subset: frozenset
    components: tuple[frozenset, ...]
    frontier: frozenset
    surplus: int
    refined: bool

    def to_json(self, g: MultiGraph | None = None) -> dict:
        order = g.sort_ids if g is not None else sorted
        return {
            "subset": order(self.subset),
            "components": [order(c) for c in self.components],
            "frontier": order(self.frontier),
            "surplus": self.surplus,
            "refined": self.refined,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AomotoCertificate":
        return cls(
            subset=frozenset(map(str, obj["subset"])),
            components=tuple(frozenset(map(str, c)) for c in obj.get("components", [])),
            frontier=frozenset(map(str, obj.get("frontier", []))),
            surplus=int(obj.get("surplus", 0)),
            refined=bool(obj.get("refined", False)),
        )


@dataclass(frozen=True)
class DensityReport:
    tau_numerator: int
    tau: Fraction
    maximizer: AomotoCertificate

    def to_json(self, g: MultiGraph | None = None) -> dict:
        return {
            "tau_numerator": self.tau_numerator,
            "tau": str(self.tau),
            "maximizer": self.maximizer.to_json(g),
        }


# ---------------------------------------------------------------------------
# bitmask view of a graph, for the subset scans


class _Bits:
    def __init__(self, g: MultiGraph):
        self.g = g
        self.ids = list(g.vertex_ids)
        self.bit = {v: g.mask_of([v]) for v in self.ids}
        self.nb = {}
        for v in self.ids:
            self.nb[self.bit[v]] = g.mask_of(g.neighbors(v))
        self.loops = g.mask_of(e.u for e in g.edges if e.is_loop)
        self.edge_masks = [self.bit[e.u] | self.bit[e.v] for e in g.edges if not e.is_loop]

    def components(self, s: int) -> list[int]:
        out = []
        rest = s
        while rest:
            low = rest & -rest
            comp = low
            frontier = low
            while frontier:
                b = frontier & -frontier
                frontier ^= b
                new = self.nb[b] & s & ~comp
                comp |= new
                frontier |= new
            out.append(comp)
            rest &= ~comp
        return out

    def frontier(self, s: int) -> int:
        out = 0
        rest = s
        while rest:
            b = rest & -rest
            rest ^= b
            out |= self.nb[b]
        return out & ~s

    def is_forest(self, s: int, cc: int) -> bool:
        if self.loops & s:
            return False
        inside = sum(1 for em in self.edge_masks if em & s == em)
        return inside == bin(s).count("1") - cc

    def to_set(self, s: int) -> frozenset:
        return frozenset(v for v in self.ids if self.bit[v] & s)


def _bits(g: MultiGraph) -> _Bits:
    memo = g._ctx.cache("bits")
    hit = memo.get(g.mask)
    if hit is None:
        hit = memo[g.mask] = _Bits(g)
    return hit


def _is_aomoto_mask(bits: _Bits, s: int, theta: ThetaSpec):
    """(components, frontier) if ``s`` is an Aomoto subset, else None."""
    if not s:
        return None
    comps = bits.components(s)
    fr = bits.frontier(s)
    if bin(fr).count("1") >= len(comps):
        return None
    if not bits.is_forest(s, len(comps)):
        return None
    for c in comps:
        if theta_multiplicity_mask(bits.g, c, theta) < 1:
            return None
    return comps, fr


# ---------------------------------------------------------------------------
# validation


def _hall_ok(g: MultiGraph, frontier: frozenset, comps) -> bool:
    order = g.sort_ids(frontier)
    adj = component_adjacency(g, order, comps)
    return not deficient_subsets(adj, order, first_only=True)


def certificate_for(g: MultiGraph, theta: ThetaSpec, subset: Iterable) -> AomotoCertificate:
    """Recompute every field of the certificate for ``subset``; raises
    InvalidCertificate unless it is a theta-Aomoto subset."""
    subset = frozenset(map(str, subset))
    for v in subset:
        if not g.has_vertex(v):
            raise InvalidCertificate(f"unknown vertex {v!r} in certificate")
    bits = _bits(g)
    s = g.mask_of(subset)
    found = _is_aomoto_mask(bits, s, theta)
    if found is None:
        raise InvalidCertificate("not a theta-Aomoto subset")
    comp_masks, fr = found
    comps = tuple(bits.to_set(c) for c in comp_masks)
    frontier = bits.to_set(fr)
    refined = all(is_theta_critical(g.induced(c), theta) for c in comps) and _hall_ok(g, frontier, comps)
    return AomotoCertificate(subset, comps, frontier, len(comps) - len(frontier), refined)


def validate_certificate(g: MultiGraph, theta: ThetaSpec, cert: AomotoCertificate, require_refined: bool = False) -> AomotoCertificate:
    """Independent check of a claimed certificate, including its stated fields."""
    fresh = certificate_for(g, theta, cert.subset)
    if set(cert.components) and set(cert.components) != set(fresh.components):
        raise InvalidCertificate("stated components do not match")
    if cert.frontier and cert.frontier != fresh.frontier:
        raise InvalidCertificate("stated frontier does not match")
    if cert.surplus != fresh.surplus:
        raise InvalidCertificate(f"stated surplus {cert.surplus}, actual {fresh.surplus}")
    if cert.refined and not fresh.refined:
        raise InvalidCertificate("certificate claims to be refined but is not")
    if require_refined and not fresh.refined:
        raise InvalidCertificate("certificate is not refined")
    return fresh


# ---------------------------------------------------------------------------
# brute force (oracle grade)


def _subset_masks(bits: _Bits):
    for size in range(1, len(bits.ids) + 1):
        for combo in itertools.combinations(bits.ids, size):
            m = 0
            for v in combo:
                m |= bits.bit[v]
            yield m


def _bruteforce_cap(g: MultiGraph) -> None:
    if g.n > get_caps().max_vertices:
        raise GraphTooLarge(f"subset scan capped at {get_caps().max_vertices} vertices")


def find_aomoto_bruteforce(g: MultiGraph, theta: ThetaSpec) -> AomotoCertificate | None:
    """First Aomoto subset in (size, lexicographic in vertex order) scan order."""
    _bruteforce_cap(g)
    bits = _bits(g)
    for s in _subset_masks(bits):
        if _is_aomoto_mask(bits, s, theta) is not None:
            return certificate_for(g, theta, bits.to_set(s))
    return None


def all_aomoto_subsets(g: MultiGraph, theta: ThetaSpec) -> list[frozenset]:
    _bruteforce_cap(g)
    bits = _bits(g)
    return [bits.to_set(s) for s in _subset_masks(bits) if _is_aomoto_mask(bits, s, theta) is not None]


def max_surplus_bruteforce(g: MultiGraph, theta: ThetaSpec) -> int | None:
    """Largest cc - |frontier| over all Aomoto subsets, or None if there is none."""
    _bruteforce_cap(g)
    bits = _bits(g)
    best = None
    for s in _subset_masks(bits):
        found = _is_aomoto_mask(bits, s, theta)
        if found is not None:
            sur = len(found[0]) - bin(found[1]).count("1")
            best = sur if best is None else max(best, sur)
    return best


# ---------------------------------------------------------------------------
# refinement


def _prune(g: MultiGraph, comps: list[frozenset]) -> list[frozenset]:
    """Drop trees touched by minimal deficient frontier sets until none is left."""
    comps = list(comps)
    while comps:
        subset = frozenset().union(*comps)
        order = g.sort_ids(g.frontier(subset))
        adj = component_adjacency(g, order, comps)
        bad = deficient_subsets(adj, order, first_only=True)
        if not bad:
            break
        touched = 0
        for x in bad[0]:
            touched |= adj[x]
        comps = [c for k, c in enumerate(comps) if not touched >> k & 1]
    return comps


def refine_aomoto(g: MultiGraph, theta: ThetaSpec, cert: AomotoCertificate) -> AomotoCertificate:
    """A refined certificate inside ``cert.subset`` whose surplus is at least ``cert``'s."""
    cert = validate_certificate(g, theta, cert)
    comps: list[frozenset] = []
    for tree in cert.components:
        comps.extend(classify(g.induced(tree), theta).critical_components)
    comps = _prune(g, comps)
    if not comps:
        raise ExhaustedWithoutWitness("refinement removed every tree")
    out = certificate_for(g, theta, frozenset().union(*comps))
    if not out.refined or out.surplus < cert.surplus:
        raise ExhaustedWithoutWitness("refinement lost surplus or refinedness")
    return out


def maximal_refined_aomoto(g: MultiGraph, theta: ThetaSpec, part=None) -> AomotoCertificate | None:
    """The unique maximal refined theta-Aomoto subset, or None.

    Starts from the critical components that are trees and prunes.
    """
    part = part or classify(g, theta)
    trees = [c for c in part.critical_components if g.induced(c).is_tree()]
    comps = _prune(g, trees)
    if not comps:
        return None
    out = certificate_for(g, theta, frozenset().union(*comps))
    if not out.refined:
        raise ExhaustedWithoutWitness("pruned subset failed validation")
    return out


def density_of_states(g: MultiGraph, theta: ThetaSpec, part=None) -> DensityReport | None:
    """tau(theta) = largest surplus over Aomoto subsets, divided by |V|."""
    cert = maximal_refined_aomoto(g, theta, part)
    if cert is None:
        return None
    return DensityReport(cert.surplus, Fraction(cert.surplus, g.n), cert)


def check_robustness_under_cycle_deletion(g: MultiGraph, theta: ThetaSpec, c: CyclePath) -> Report:
    """After deleting a cycle, an Aomoto subset still exists.

    The witness keeps the trees of a maximal refined subset that avoid the
    cycle; it is validated, and brute force confirms existence independently.
    """
    rep = Report("robustness_under_cycle_deletion")
    cert = maximal_refined_aomoto(g, theta)
    if cert is None:
        raise InvalidCertificate("the graph has no theta-Aomoto subset")
    gc = g.delete_vertices(c.vertex_set)
    kept = [t for t in cert.components if not t & c.vertex_set]
    witness = None
    if kept:
        try:
            witness = certificate_for(gc, theta, frozenset().union(*kept))
        except InvalidCertificate:
            witness = None
    rep.check(witness is not None, cycle=c.edges, kind="constructive witness")
    rep.check(find_aomoto_bruteforce(gc, theta) is not None, cycle=c.edges, kind="brute force")
    if witness is not None:
        rep.info["witness"] = witness.subset
    return rep
