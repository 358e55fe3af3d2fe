"""Matching, characteristic, molecular and twisted characteristic polynomials.

``mu`` is computed by the pivot recursion

    mu(G) = (x - r_i) mu(G - i) + sum_{e = ij, not a loop} lambda_e mu(G - i - j)

memoised on the bitmask of surviving host vertices, so that every induced
subgraph of a host graph shares one table. ``phi`` uses Faddeev-LeVerrier over
scaled (Gaussian) integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .caps import get_caps
from .errors import (
    FiniteValueUnavailable,
    GraphTooLarge,
    MissingCycleWeight,
    NonVanishingImaginaryPart,
    UnknownVertex,
)
from .exact import GaussianRational, Polynomial, ThetaSpec, deflate, multiplicity_at
from .multigraph import CyclePath, Edge, MultiGraph

_ONE = Polynomial([1])


def _cache(g: MultiGraph, name: str) -> dict:
    return g._ctx.cache(name)


# ---------------------------------------------------------------------------
# matching polynomial


def _host_adjacency(g: MultiGraph):
    """Per host vertex bit: (r, [(bit_j, lambda_e), ...]) over non-loop edges."""
    ctx = g._ctx
    adj = ctx.caches.get("adjacency")
    if adj is None:
        host = ctx.host
        adj = {}
        for v in host.vertex_ids:
            nb = [(ctx.bit[e.other(v)], e.lam) for e in host.incident(v) if not e.is_loop]
            adj[ctx.bit[v]] = (host.r(v), nb)
        ctx.caches["adjacency"] = adj
    return adj


def _times_x_minus(p: Polynomial, r: Fraction) -> Polynomial:
    cs = p.coeffs
    out = [Fraction(0)] * (len(cs) + 1)
    for k, c in enumerate(cs):
        out[k + 1] += c
        out[k] -= r * c
    return Polynomial._raw(out)


def matching_polynomial(g: MultiGraph) -> Polynomial:
    """mu^G(x); loops do not contribute."""
    if g.n > get_caps().max_vertices:
        raise GraphTooLarge(f"matching polynomial capped at {get_caps().max_vertices} vertices")
    return _mu_mask(g, g.mask)


def _mu_mask(g: MultiGraph, mask: int) -> Polynomial:
    memo = _cache(g, "mu")
    adj = _host_adjacency(g)

    def rec(m: int) -> Polynomial:
        hit = memo.get(m)
        if hit is not None:
            return hit
        if m == 0:
            res = _ONE
        else:
            low = m & -m
            r, nb = adj[low]
            rest = m ^ low
            res = _times_x_minus(rec(rest), r)
            for bj, lam in nb:
                if bj & rest:
                    res = res + rec(rest ^ bj) * lam
        memo[m] = res
        return res

    return rec(mask)


def matching_polynomial_bruteforce(g: MultiGraph) -> Polynomial:
    """Direct sum over all matchings; an oracle for :func:`matching_polynomial`."""
    if g.n > get_caps().max_bruteforce_matching_vertices:
        raise GraphTooLarge("brute-force matching polynomial is capped")
    edges = [e for e in g.edges if not e.is_loop]
    total = Polynomial([])

    def rec(k: int, covered: frozenset, weight: Fraction):
        nonlocal total
        if k == len(edges):
            term = Polynomial([weight])
            for v in g.vertex_ids:
                if v not in covered:
                    term = term * Polynomial([-g.r(v), 1])
            total = total + term
            return
        rec(k + 1, covered, weight)
        e = edges[k]
        if e.u not in covered and e.v not in covered:
            rec(k + 1, covered | {e.u, e.v}, weight * e.lam)

    rec(0, frozenset(), Fraction(1))
    return total


# ---------------------------------------------------------------------------
# characteristic polynomials


def _fl_charpoly_int(re: list[list[int]], im: list[list[int]] | None) -> list:
    """Faddeev-LeVerrier on an integer (or Gaussian-integer) matrix.

    Returns ascending coefficients as ints, or (re, im) int pairs when ``im``
    is given.
    """
    n = len(re)
    if im is None:
        c = [0] * (n + 1)
        c[n] = 1
        m = [[0] * n for _ in range(n)]
        am = [[0] * n for _ in range(n)]  # A @ M_0 = 0
        cols = None
        for k in range(1, n + 1):
            ck = c[n - k + 1]
            m = [row[:] for row in am]
            for t in range(n):
                m[t][t] += ck
            cols = list(zip(*m))
            am = [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in re]
            tr = sum(am[t][t] for t in range(n))
            q, rem = divmod(-tr, k)
            assert rem == 0
            c[n - k] = q
        return c
    c = [(0, 0)] * (n + 1)
    c[n] = (1, 0)
    amr = [[0] * n for _ in range(n)]
    ami = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        cr, ci = c[n - k + 1]
        mr = [row[:] for row in amr]
        mi = [row[:] for row in ami]
        for t in range(n):
            mr[t][t] += cr
            mi[t][t] += ci
        colr = list(zip(*mr))
        coli = list(zip(*mi))
        amr = [
            [sum(a * b for a, b in zip(ra, cr_)) - sum(a * b for a, b in zip(ia, ci_)) for cr_, ci_ in zip(colr, coli)]
            for ra, ia in zip(re, im)
        ]
        ami = [
            [sum(a * b for a, b in zip(ra, ci_)) + sum(a * b for a, b in zip(ia, cr_)) for cr_, ci_ in zip(colr, coli)]
            for ra, ia in zip(re, im)
        ]
        tr_r = sum(amr[t][t] for t in range(n))
        tr_i = sum(ami[t][t] for t in range(n))
        qr, rr = divmod(-tr_r, k)
        qi, ri = divmod(-tr_i, k)
        assert rr == 0 and ri == 0
        c[n - k] = (qr, qi)
    return c


def charpoly_hermitian(matrix: list[list[GaussianRational]]) -> Polynomial:
    """det(xI - A) for an exact Hermitian matrix of Gaussian rationals."""
    n = len(matrix)
    if n == 0:
        return _ONE
    den = 1
    real = True
    for row in matrix:
        for z in row:
            den = math.lcm(den, z.re.denominator, z.im.denominator)
            if z.im != 0:
                real = False
    re = [[int(z.re * den) for z in row] for row in matrix]
    if real:
        if n > 24:
            ints = _charpoly_flint(re)
        else:
            ints = _fl_charpoly_int(re, None)
    else:
        im = [[int(z.im * den) for z in row] for row in matrix]
        if n > 24:
            ints = _charpoly_flint_hermitian(re, im)
        else:
            pairs = _fl_charpoly_int(re, im)
            if any(ci != 0 for _, ci in pairs):
                raise NonVanishingImaginaryPart("characteristic polynomial of a Hermitian matrix is not real")
            ints = [cr for cr, _ in pairs]
    return Polynomial(Fraction(c, den ** (n - k)) for k, c in enumerate(ints))


def _charpoly_flint(re: list[list[int]]) -> list[int]:
    import flint

    poly = flint.fmpz_mat(re).charpoly()
    return [int(c) for c in poly.coeffs()]


def _charpoly_flint_hermitian(re: list[list[int]], im: list[list[int]]) -> list[int]:
    """For H = A + iB Hermitian, the real matrix [[A, -B], [B, A]] has
    characteristic polynomial phi_H squared; take the exact square root."""
    n = len(re)
    big = [ra + [-b for b in ib] for ra, ib in zip(re, im)] + [ib + ra for ra, ib in zip(re, im)]
    sq = _charpoly_flint(big)
    q = [0] * (n + 1)
    q[n] = 1
    for k in range(1, n + 1):
        acc = sq[2 * n - k] - sum(q[n - a] * q[n - k + a] for a in range(1, k))
        half, rem = divmod(acc, 2)
        if rem:
            raise NonVanishingImaginaryPart("doubled characteristic polynomial is not a square")
        q[n - k] = half
    check = [0] * (2 * n + 1)
    for a, ca in enumerate(q):
        for b, cb in enumerate(q):
            check[a + b] += ca * cb
    if check != sq:
        raise NonVanishingImaginaryPart("doubled characteristic polynomial is not a square")
    return q


def adjacency_matrix(g: MultiGraph, xi: Mapping[str, GaussianRational] | None = None) -> list[list[GaussianRational]]:
    """A^G (or A^G_xi when phases ``xi`` on positive arcs are given), in
    ``g.vertex_ids`` order."""
    idx = {v: k for k, v in enumerate(g.vertex_ids)}
    zero = GaussianRational()
    a = [[zero] * g.n for _ in range(g.n)]
    for v in g.vertex_ids:
        a[idx[v]][idx[v]] = GaussianRational.of(g.r(v))
    for e in g.edges:
        w = e.rho if xi is None else e.rho * GaussianRational.of(xi.get(e.id, 1))
        i, j = idx[e.u], idx[e.v]
        a[i][j] = a[i][j] + w
        a[j][i] = a[j][i] + w.conj()
    return a


def characteristic_polynomial(g: MultiGraph) -> Polynomial:
    """phi^G(x) = det(xI - A^G), exact."""
    memo = _cache(g, "phi")
    hit = memo.get(g.mask)
    if hit is None:
        hit = memo[g.mask] = charpoly_hermitian(adjacency_matrix(g))
    return hit


def _is_exact_unit(z) -> bool:
    return isinstance(z, (GaussianRational, int, Fraction)) and GaussianRational.of(z).abs2() == 1


def twisted_characteristic(g: MultiGraph, xi: Mapping[str, object]):
    """phi^G_xi(x), the characteristic polynomial of the twisted adjacency matrix.

    ``xi`` maps edge ids to the phase on the stored orientation ``u -> v``
    (missing edges get phase 1). When every phase is an exact Gaussian-rational
    unit (e.g. +-1, +-i) the result is an exact :class:`Polynomial`; otherwise
    a floating :class:`numpy.polynomial.Polynomial` (ascending coefficients)
    computed in double precision, intended only as a numerical probe.
    """
    if all(_is_exact_unit(z) for z in xi.values()):
        exact = {k: GaussianRational.of(z) for k, z in xi.items()}
        return charpoly_hermitian(adjacency_matrix(g, exact))
    idx = {v: k for k, v in enumerate(g.vertex_ids)}
    a = np.zeros((g.n, g.n), dtype=complex)
    for v in g.vertex_ids:
        a[idx[v], idx[v]] = float(g.r(v))
    for e in g.edges:
        w = complex(e.rho) * complex(xi.get(e.id, 1))
        i, j = idx[e.u], idx[e.v]
        a[i, j] += w
        a[j, i] += w.conjugate()
    if g.n == 0:
        return np.polynomial.Polynomial([1.0])
    coeffs = np.real(np.poly(a))[::-1]
    return np.polynomial.Polynomial(coeffs)


# ---------------------------------------------------------------------------
# molecular polynomial


def cycle_key(c: CyclePath) -> frozenset:
    """Key of an undirected cycle in a :data:`CycleWeightAssignment`."""
    return frozenset(c.edges)


def _directed_product(g: MultiGraph, c: CyclePath, xi: Mapping | None = None) -> GaussianRational:
    k = len(c.vertices)
    prod = GaussianRational(Fraction(1))
    for t in range(k):
        e = g.edge(c.edges[t])
        a = c.vertices[t]
        w = e.rho
        if xi is not None:
            w = w * GaussianRational.of(xi.get(e.id, 1))
        prod = prod * (w if a == e.u else w.conj())
    return prod


def harary_weights(g: MultiGraph, xi: Mapping | None = None) -> dict[frozenset, GaussianRational]:
    """lambda_C = -prod(rho_e) along the canonical orientation of every cycle.

    With these weights the molecular polynomial equals phi^G (or phi^G_xi when
    exact phases ``xi`` are supplied).
    """
    return {cycle_key(c): -_directed_product(g, c, xi) for c in g.enumerate_cycles()}


def zero_weights(g: MultiGraph) -> dict[frozenset, Fraction]:
    return {cycle_key(c): Fraction(0) for c in g.enumerate_cycles()}


def _weight(w: Mapping, c: CyclePath) -> GaussianRational:
    key = cycle_key(c)
    if key not in w:
        raise MissingCycleWeight(f"no weight for cycle {list(c.edges)}")
    return GaussianRational.of(w[key])


def molecular_polynomial(g: MultiGraph, w: Mapping) -> Polynomial:
    """M^G(x) through the Gutman expansion over packings of cycles not
    associated with edges.

    ``w`` maps :func:`cycle_key` of every cycle of ``g`` to the weight of its
    canonical orientation; the reverse orientation carries the conjugate, so
    every cycle in a packing (loops included) contributes ``2 Re w``.
    """
    weights = {cycle_key(c): _weight(w, c) for c in g.enumerate_cycles()}
    total = Polynomial([])
    for gamma in g.enumerate_two_regular():
        coef = Fraction(1)
        for c in gamma.cycles:
            coef *= 2 * weights[cycle_key(c)].re
            if coef == 0:
                break
        if coef == 0:
            continue
        total = total + matching_polynomial(g.delete_vertices(gamma.vertex_set)) * coef
    return total


def directed_cycles(g: MultiGraph) -> list[tuple[tuple[str, ...], tuple[tuple[str, int], ...]]]:
    """Every directed cycle of ``g`` as (vertices, arcs) with arcs ``(edge_id, +1|-1)``.

    Enumerated from scratch over arcs (independently of
    :meth:`MultiGraph.enumerate_cycles`); each directed cycle appears once,
    rotated to start at its first vertex in host order. Includes the length-2
    cycles ``e, e^-1`` associated with non-loop edges.
    """
    g._cap()
    arcs_from: dict[str, list[tuple[str, int, str]]] = {v: [] for v in g.vertex_ids}
    for e in g.edges:
        arcs_from[e.u].append((e.id, 1, e.v))
        arcs_from[e.v].append((e.id, -1, e.u))  # for a loop: the reverse arc
    order = {v: k for k, v in enumerate(g.vertex_ids)}
    out = []
    for s in g.vertex_ids:
        path_v = [s]
        path_a: list[tuple[str, int]] = []

        def dfs(cur):
            for eid, sgn, w in arcs_from[cur]:
                if w == s:
                    out.append((tuple(path_v), tuple(path_a) + ((eid, sgn),)))
                    continue
                if order[w] < order[s] or w in path_v:
                    continue
                path_v.append(w)
                path_a.append((eid, sgn))
                dfs(w)
                path_a.pop()
                path_v.pop()

        dfs(s)
    return out


def molecular_polynomial_bruteforce(g: MultiGraph, w: Mapping) -> Polynomial:
    """M^G(x) straight from its definition: a sum over all collections of
    vertex-disjoint directed cycles. Oracle for :func:`molecular_polynomial`.

    The weight of a directed cycle not associated with an edge is ``w`` of its
    edge set when it traverses its lowest edge along the stored orientation,
    and the conjugate otherwise.
    """
    if g.n > get_caps().max_oracle_vertices:
        raise GraphTooLarge("brute-force molecular polynomial is capped")
    dcs = []
    for verts, arcs in directed_cycles(g):
        if len(arcs) == 2 and arcs[0][0] == arcs[1][0]:
            lam = GaussianRational.of(g.edge(arcs[0][0]).lam)
        else:
            key = frozenset(a for a, _ in arcs)
            if key not in w:
                raise MissingCycleWeight(f"no weight for cycle {sorted(key)}")
            low = min(arcs, key=lambda a: g.edge_key(a[0]))
            lam = GaussianRational.of(w[key])
            if low[1] < 0:
                lam = lam.conj()
        dcs.append((frozenset(verts), lam))

    verts = list(g.vertex_ids)
    total = [GaussianRational()] * (len(verts) + 1)

    def rec(k: int, used: frozenset, chosen_weight: GaussianRational, start: int):
        # enumerate packings as subsets of dcs (index-increasing), then expand
        nonlocal total
        uncovered = [v for v in verts if v not in used]
        term = Polynomial([1])
        for v in uncovered:
            term = term * Polynomial([-g.r(v), 1])
        for d, c in enumerate(term.coeffs):
            total[d] = total[d] + chosen_weight * c
        for t in range(start, len(dcs)):
            vs, lam = dcs[t]
            if vs & used:
                continue
            rec(k + 1, used | vs, chosen_weight * lam, t + 1)

    rec(0, frozenset(), GaussianRational(Fraction(1)), 0)
    if any(z.im != 0 for z in total):
        raise NonVanishingImaginaryPart("molecular polynomial with conjugate weights is not real")
    return Polynomial(z.re for z in total)


# ---------------------------------------------------------------------------
# multiplicities and alpha values


def theta_multiplicity(g: MultiGraph, theta: ThetaSpec, polynomial: str = "matching") -> int:
    """m_theta of mu^G (or of phi^G with ``polynomial="characteristic"``), cached."""
    if polynomial == "matching":
        return theta_multiplicity_mask(g, g.mask, theta)
    memo = _cache(g, "mult")
    key = (polynomial, theta.key(), g.mask)
    hit = memo.get(key)
    if hit is None:
        hit = memo[key] = multiplicity_at(characteristic_polynomial(g), theta)
    return hit


def theta_multiplicity_mask(g: MultiGraph, mask: int, theta: ThetaSpec) -> int:
    """m_theta of mu for the subgraph induced by a host bitmask."""
    memo = _cache(g, "mult")
    key = ("matching", theta.key(), mask)
    hit = memo.get(key)
    if hit is None:
        if bin(mask).count("1") > get_caps().max_vertices:
            raise GraphTooLarge(f"matching polynomial capped at {get_caps().max_vertices} vertices")
        hit = memo[key] = multiplicity_at(_mu_mask(g, mask), theta)
    return hit


@dataclass(frozen=True)
class AlphaValue:
    """Projective value of mu^G / mu^{G-i} at theta: zero, infinity or a
    nonzero finite rational."""

    kind: str
    value: Fraction | None = None

    @classmethod
    def finite(cls, q) -> "AlphaValue":
        return cls("finite", Fraction(q))

    def __str__(self):
        return {"zero": "0", "infinity": "inf"}.get(self.kind) or str(self.value)


ALPHA_ZERO = AlphaValue("zero")
ALPHA_INFINITY = AlphaValue("infinity")


def alpha_at(g: MultiGraph, i, theta: ThetaSpec) -> AlphaValue:
    i = str(i)
    if not g.has_vertex(i):
        raise UnknownVertex(f"unknown vertex {i!r}")
    gi = g.delete_vertices([i])
    m, mi = theta_multiplicity(g, theta), theta_multiplicity(gi, theta)
    if m > mi:
        return ALPHA_ZERO
    if m < mi:
        return ALPHA_INFINITY
    if not theta.is_rational:
        raise FiniteValueUnavailable("finite alpha values need a rational theta")
    num = deflate(matching_polynomial(g), theta, m)(theta.value)
    den = deflate(matching_polynomial(gi), theta, m)(theta.value)
    return AlphaValue.finite(num / den)


def alpha_value_at_point(g: MultiGraph, i, x0: Fraction) -> Fraction:
    """alpha_i^G(x0) for a rational point that is not a pole."""
    from .errors import PoleAtSample

    den = matching_polynomial(g.delete_vertices([str(i)]))(x0)
    if den == 0:
        raise PoleAtSample(f"alpha_{i} has a pole at {x0}")
    return matching_polynomial(g)(x0) / den


# ---------------------------------------------------------------------------
# rooted path tree


def path_tree(g: MultiGraph, i) -> tuple[MultiGraph, str]:
    """Rooted path tree T_i^G and the id of its root.

    Tree vertices are the simple paths of ``g`` starting at ``i``; a path is
    identified as ``"i|e:v|e:v..."``. A path ending at ``j`` has weight r_j.
    The tree edge from a path to its one-edge extension along ``e`` copies
    ``rho_e``, so its lambda is lambda_e.
    """
    i = str(i)
    verts = []
    edges = []
    for p in g.simple_paths_from(i):
        pid = i + "".join(f"|{e}:{v}" for e, v in zip(p.edges, p.vertices[1:]))
        verts.append((pid, g.r(p.vertices[-1])))
        if p.edges:
            parent = pid[: pid.rfind("|")]
            edges.append(Edge(pid, parent, pid, g.edge(p.edges[-1]).rho))
    return MultiGraph(verts, edges), i


def sample_points(polys, count: int, rng, span: int = 7) -> list[Fraction]:
    """``count`` distinct rational points avoiding the roots of ``polys``."""
    out: list[Fraction] = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 100 * count + 100:
            raise RuntimeError("could not find pole-free sample points")
        x0 = Fraction(rng.randint(-span * 12, span * 12), rng.choice([1, 2, 3, 5, 7, 11, 13]))
        if x0 in out or any(p(x0) == 0 for p in polys):
            continue
        out.append(x0)
    return out
