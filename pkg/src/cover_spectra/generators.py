"""Seeded random instances and the theta values to test them at."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .errors import InputError, RejectionBudgetExceeded
from .exact import GaussianRational, Polynomial, ThetaSpec, factor_over_q, isolate_real_roots, rational_roots
from .multigraph import Edge, MultiGraph

MODELS = ("erdos-renyi", "theta-critical-glue", "forest", "regular")
WEIGHTS = tuple(Fraction(w) for w in ("2", "1", "1/2", "-1/2", "-1", "-2"))


@dataclass(frozen=True)
class InstanceSpec:
    model: str
    n: int
    seed: int
    p: Fraction = Fraction(1, 3)
    weighted: bool = True
    theta: Fraction = Fraction(0)
    degree: int = 3
    multi: bool = True
    weights: tuple = field(default=WEIGHTS)

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "n": self.n,
            "seed": self.seed,
            "p": str(self.p),
            "weighted": self.weighted,
            "theta": str(self.theta),
            "degree": self.degree,
            "multi": self.multi,
        }


class _Builder:
    def __init__(self, spec: InstanceSpec, rng: random.Random):
        self.spec = spec
        self.rng = rng
        self.verts: list[tuple[str, Fraction]] = []
        self.edges: list[Edge] = []

    def vertex(self, r=None) -> str:
        vid = str(len(self.verts) + 1)
        if r is None:
            r = self.rng.choice((0,) + self.spec.weights) if self.spec.weighted else 0
        self.verts.append((vid, Fraction(r)))
        return vid

    def edge(self, u: str, v: str, rho=None) -> None:
        if rho is None:
            rho = self.rng.choice(self.spec.weights) if self.spec.weighted else 1
        self.edges.append(Edge(f"e{len(self.edges) + 1}", u, v, GaussianRational.of(rho)))

    def extras(self) -> None:
        """Occasional loops and parallel edges."""
        if not self.spec.multi:
            return
        for v, _ in list(self.verts):
            if self.rng.random() < 0.08:
                self.edge(v, v)
        for e in list(self.edges):
            if not e.is_loop and self.rng.random() < 0.08:
                self.edge(e.u, e.v)

    def graph(self) -> MultiGraph:
        return MultiGraph(self.verts, self.edges)


def _erdos_renyi(b: _Builder) -> None:
    ids = [b.vertex() for _ in range(b.spec.n)]
    for a in range(len(ids)):
        for c in range(a + 1, len(ids)):
            if b.rng.random() < b.spec.p:
                b.edge(ids[a], ids[c])
    b.extras()


def _forest(b: _Builder) -> None:
    ids = [b.vertex() for _ in range(b.spec.n)]
    for k in range(1, len(ids)):
        if b.rng.random() < 0.85:
            b.edge(ids[b.rng.randrange(k)], ids[k])


def _regular(b: _Builder) -> None:
    n, d = b.spec.n, b.spec.degree
    if n * d % 2 or d >= n:
        raise InputError(f"no simple {d}-regular graph on {n} vertices")
    h = nx.random_regular_graph(d, n, seed=b.rng.randrange(2**32))
    ids = [b.vertex(0) for _ in range(n)]
    for a, c in sorted(tuple(sorted(e)) for e in h.edges()):
        b.edge(ids[a], ids[c], 1)


def _critical_glue(b: _Builder) -> None:
    """Odd ear decomposition with every vertex weight theta and |rho| = 1,
    which makes the result theta-critical (factor-critical after a shift).

    Ears add an even number of vertices, so an even ``n`` is rounded down.
    """
    theta = b.spec.theta
    target = b.spec.n if b.spec.n % 2 else b.spec.n - 1
    ids = [b.vertex(theta)]

    def ear(inner: int) -> None:
        a, c = b.rng.choice(ids), b.rng.choice(ids)
        if inner == 0 and a == c and not b.spec.multi:
            return
        chain = [a] + [b.vertex(theta) for _ in range(inner)] + [c]
        for x, y in zip(chain, chain[1:]):
            b.edge(x, y, b.rng.choice((1, -1)))
        ids.extend(chain[1:-1])

    while len(ids) < target:
        ear(b.rng.choice([k for k in (2, 4) if k <= target - len(ids)]))
    for _ in range(b.rng.randint(0, 2)):
        ear(0)


_BUILDERS = {
    "erdos-renyi": _erdos_renyi,
    "forest": _forest,
    "regular": _regular,
    "theta-critical-glue": _critical_glue,
}


def generate_instance(spec: InstanceSpec, budget: int = 50) -> MultiGraph:
    """Deterministic in ``spec`` (including its seed)."""
    if spec.model not in _BUILDERS:
        raise InputError(f"unknown model {spec.model!r}")
    if spec.n < 1:
        raise InputError("n must be >= 1")
    rng = random.Random(spec.seed)
    for _ in range(budget):
        b = _Builder(spec, rng)
        _BUILDERS[spec.model](b)
        g = b.graph()
        if spec.model != "theta-critical-glue":
            return g
        from .gallai_edmonds import is_theta_critical

        if g.is_connected() and is_theta_critical(g, ThetaSpec.rational(spec.theta)):
            return g
    raise RejectionBudgetExceeded(f"no accepted instance after {budget} tries")


def thetas_for(p: Polynomial, rng: random.Random, non_roots: int = 3) -> list[ThetaSpec]:
    """All rational roots of ``p``, the roots of its irreducible quadratic
    factors, and ``non_roots`` random rationals that are not roots."""
    out = [ThetaSpec.rational(q) for q in rational_roots(p)]
    for f, _ in factor_over_q(p):
        if f.degree == 2:
            for lo, hi in isolate_real_roots(f):
                out.append(ThetaSpec.algebraic(f, lo, hi))
    found = 0
    while found < non_roots:
        q = Fraction(rng.randint(-40, 40), rng.choice((1, 2, 3, 4, 5, 7)))
        if p(q) != 0 and all(t.key() != ThetaSpec.rational(q).key() for t in out):
            out.append(ThetaSpec.rational(q))
            found += 1
    return out
