"""The theta-Gallai-Edmonds decomposition and the structural checks built on it.

Vertices are classified purely by how deleting them moves the multiplicity of
theta: down (the zero class), up (the infinity class) or not at all (the
plus/minus class). No value of a continued fraction is needed, so algebraic
theta works the same way as rational theta.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .caps import get_caps
from .errors import (
    FrontierTooLarge,
    InputError,
    InvariantViolated,
    NotInsideCriticalComponent,
    PoleAtSample,
    PreconditionViolated,
    SameVertex,
)
from .exact import ThetaSpec
from .multigraph import MultiGraph
from .polynomials import alpha_at, matching_polynomial, theta_multiplicity
from .reports import Report

POLYNOMIALS = ("matching", "characteristic")


@dataclass(frozen=True)
class GEPartition:
    theta: ThetaSpec
    zero_set: frozenset
    pm_set: frozenset
    inf_set: frozenset
    critical_components: tuple[frozenset, ...]
    frontier_of_zero: frozenset
    m_theta: int
    polynomial: str = "matching"

    def class_of(self, v) -> str:
        if v in self.zero_set:
            return "0"
        if v in self.inf_set:
            return "inf"
        return "pm"

    def identity_holds(self) -> bool:
        """m_theta = cc(G[0]) - |frontier of 0|."""
        return self.m_theta == len(self.critical_components) - len(self.frontier_of_zero)

    def to_json(self, g: MultiGraph | None = None) -> dict:
        order = g.sort_ids if g is not None else sorted
        return {
            "theta": self.theta.to_json(),
            "polynomial": self.polynomial,
            "m_theta": self.m_theta,
            "zero": order(self.zero_set),
            "pm": order(self.pm_set),
            "inf": order(self.inf_set),
            "critical_components": [order(c) for c in self.critical_components],
            "frontier_of_zero": order(self.frontier_of_zero),
            "multiplicity_identity": self.identity_holds(),
        }


def classify(g: MultiGraph, theta: ThetaSpec, polynomial: str = "matching") -> GEPartition:
    """Gallai-Edmonds classes of every vertex with respect to ``theta``.

    With ``polynomial="characteristic"`` the multiplicities are taken in
    phi instead of mu. That variant is provided for comparison only: the
    multiplicity identity is asserted for mu and merely recorded for phi.
    """
    if polynomial not in POLYNOMIALS:
        raise InputError(f"unknown polynomial {polynomial!r}")
    m = theta_multiplicity(g, theta, polynomial)
    zero, pm, inf = set(), set(), set()
    for v in g.vertex_ids:
        mv = theta_multiplicity(g.delete_vertices([v]), theta, polynomial)
        if mv < m:
            zero.add(v)
        elif mv > m:
            inf.add(v)
        else:
            pm.add(v)
    zero = frozenset(zero)
    comps = tuple(g.induced(zero).components()) if zero else ()
    part = GEPartition(
        theta=theta,
        zero_set=zero,
        pm_set=frozenset(pm),
        inf_set=frozenset(inf),
        critical_components=comps,
        frontier_of_zero=g.frontier(zero),
        m_theta=m,
        polynomial=polynomial,
    )
    if polynomial == "matching" and not part.identity_holds():
        raise InvariantViolated(f"multiplicity identity fails at theta={theta}")
    return part


def is_theta_critical(g: MultiGraph, theta: ThetaSpec) -> bool:
    """True iff every vertex lies in the zero class (the empty graph is not critical)."""
    if g.n == 0:
        return False
    m = theta_multiplicity(g, theta)
    if m == 0:
        return False
    return all(theta_multiplicity(g.delete_vertices([v]), theta) < m for v in g.vertex_ids)


def contraction_lambda(g: MultiGraph, i, j, x0) -> Fraction:
    """lambda_{i~j}(x0) = -sum_P lambda_P (mu^{G-P}(x0) / mu^{G-i-j}(x0))^2.

    The sum runs over the paths P from i to j, and lambda_P is the product of
    |rho_e|^2 along P.
    """
    i, j = str(i), str(j)
    if i == j:
        raise SameVertex("contraction needs two distinct vertices")
    x0 = Fraction(x0)
    den = matching_polynomial(g.delete_vertices([i, j]))(x0)
    if den == 0:
        raise PoleAtSample(f"mu of G - {{{i},{j}}} vanishes at {x0}")
    total = Fraction(0)
    for p in g.enumerate_paths_between(i, j):
        lam_p = Fraction(1)
        for e in p.edges:
            lam_p *= -g.edge(e).lam
        num = matching_polynomial(g.delete_vertices(p.vertices))(x0)
        total += lam_p * (num / den) ** 2
    return -total


def _require_rational(theta: ThetaSpec) -> None:
    if not theta.is_rational:
        raise PreconditionViolated("this check compares finite alpha values and needs a rational theta")


def check_stability(g: MultiGraph, theta: ThetaSpec, part: GEPartition | None = None) -> Report:
    """Deleting a frontier vertex i of the zero class leaves alpha_j unchanged for j != i."""
    _require_rational(theta)
    part = part or classify(g, theta)
    rep = Report("stability")
    for i in g.sort_ids(part.frontier_of_zero):
        gi = g.delete_vertices([i])
        for j in gi.vertex_ids:
            before, after = alpha_at(g, j, theta), alpha_at(gi, j, theta)
            rep.check(before == after, deleted=i, vertex=j, before=before, after=after)
    return rep


def _component_containing(part: GEPartition, z: frozenset) -> frozenset:
    for comp in part.critical_components:
        if z <= comp:
            return comp
    raise NotInsideCriticalComponent("the set is not inside a single critical component")


def check_critical_remove(g: MultiGraph, theta: ThetaSpec, z: Iterable, part: GEPartition | None = None) -> Report:
    """m(G - Z) - m(G) = m(H - Z) - m(H) for Z inside a critical component H."""
    z = frozenset(map(str, z))
    part = part or classify(g, theta)
    rep = Report("critical_remove")
    if not z:
        rep.check(True)
        return rep
    comp = _component_containing(part, z)
    h = g.induced(comp)
    lhs = theta_multiplicity(g.delete_vertices(z), theta) - part.m_theta
    rhs = theta_multiplicity(h.delete_vertices(z), theta) - theta_multiplicity(h, theta)
    rep.check(lhs == rhs, z=z, host_side=lhs, component_side=rhs)
    rep.info["component"] = comp
    return rep


def check_critical_stability(g: MultiGraph, theta: ThetaSpec, z: Iterable, part: GEPartition | None = None) -> Report:
    """alpha_i(G - Z) = alpha_i(H - Z) for every surviving vertex i of H.

    With empty ``z`` the identity is checked on every critical component.
    """
    _require_rational(theta)
    z = frozenset(map(str, z))
    part = part or classify(g, theta)
    rep = Report("critical_stability")
    comps = [_component_containing(part, z)] if z else list(part.critical_components)
    gz = g.delete_vertices(z)
    for comp in comps:
        hz = g.induced(comp - z)
        for i in hz.vertex_ids:
            a, b = alpha_at(gz, i, theta), alpha_at(hz, i, theta)
            rep.check(a == b, z=z, vertex=i, host_side=a, component_side=b)
    return rep


def component_adjacency(g: MultiGraph, frontier: Iterable, comps: Iterable[frozenset]) -> dict:
    """Frontier vertex -> bitmask of the components (by position) it touches."""
    comps = list(comps)
    out = {}
    for u in frontier:
        bits = 0
        nb = set(g.neighbors(u))
        for k, c in enumerate(comps):
            if nb & c:
                bits |= 1 << k
        out[u] = bits
    return out


def deficient_subsets(adj: dict, order: list, *, first_only: bool = False):
    """Nonempty U of ``order`` touching at most |U| components, by size then
    lexicographically. Raises FrontierTooLarge above the frontier cap."""
    if len(order) > get_caps().max_frontier:
        raise FrontierTooLarge(f"frontier of size {len(order)} exceeds the cap")
    found = []
    for size in range(1, len(order) + 1):
        for u in itertools.combinations(order, size):
            bits = 0
            for x in u:
                bits |= adj[x]
            if bin(bits).count("1") <= size:
                found.append(frozenset(u))
                if first_only:
                    return found
    return found


def check_matched_special(g: MultiGraph, theta: ThetaSpec, part: GEPartition | None = None) -> Report:
    """Every nonempty U in the frontier of the zero class touches >= |U|+1 critical components."""
    part = part or classify(g, theta)
    order = g.sort_ids(part.frontier_of_zero)
    adj = component_adjacency(g, order, part.critical_components)
    rep = Report("matched_special")
    bad = deficient_subsets(adj, order, first_only=True)
    rep.checked = 2 ** len(order) - 1
    for u in bad:
        rep.failures.append({"U": u})
    return rep
