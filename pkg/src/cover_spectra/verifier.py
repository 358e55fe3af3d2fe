"""The decision procedure and the cross-check of its equivalent conditions.

``decide`` returns exactly one certificate. A refined Aomoto subset means
theta is an eigenvalue of the universal (and maximal abelian) cover;
disjoint critical cycles mean it is not, and their union is a 2-regular
subgraph Gamma with mu^{G - Gamma}(theta) != 0.

``verify_equivalences`` evaluates the exact conditions independently:

* ``c``: brute-force Aomoto subset exists;
* ``d``: maximal refined Aomoto subset exists;
* ``e``: theta is a root of mu^{G - Gamma} for every 2-regular Gamma;
* ``f``: the same with phi in place of mu;
* ``h``: theta is a root of every molecular polynomial, reduced to the vertex
  supports of packings of directed cycles (each support is a free monomial);

plus the numeric ``g`` probe on twisted characteristic polynomials.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .aomoto import (
    AomotoCertificate,
    find_aomoto_bruteforce,
    maximal_refined_aomoto,
    validate_certificate as validate_aomoto,
)
from .critical_cycles import CycleCertificate, find_disjoint_critical_cycles, validate_cycle_certificate
from .errors import InputError, InvalidCertificate
from .exact import GaussianRational, ThetaSpec, multiplicity_at
from .gallai_edmonds import classify
from .multigraph import MultiGraph, TwoRegularSubgraph
from .polynomials import (
    directed_cycles,
    theta_multiplicity,
    theta_multiplicity_mask,
    twisted_characteristic,
)

POSITIVE = "refined-aomoto"
NEGATIVE = "disjoint-critical-cycles"


@dataclass(frozen=True)
class Certificate:
    kind: str
    theta: ThetaSpec
    aomoto: AomotoCertificate | None = None
    cycles: CycleCertificate | None = None
    witness: TwoRegularSubgraph | None = None

    @property
    def is_eigenvalue(self) -> bool:
        return self.kind == POSITIVE

    def to_json(self, g: MultiGraph | None = None) -> dict:
        out = {"kind": self.kind, "eigenvalue": self.is_eigenvalue, "theta": self.theta.to_json()}
        if self.aomoto is not None:
            out["certificate"] = self.aomoto.to_json(g)
        if self.cycles is not None:
            out["certificate"] = self.cycles.to_json()
            out["two_regular_witness"] = self.witness.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Certificate":
        try:
            kind = obj["kind"]
            theta = ThetaSpec.from_json(obj["theta"])
            body = obj["certificate"]
            if kind == POSITIVE:
                return cls(kind, theta, aomoto=AomotoCertificate.from_json(body))
            if kind == NEGATIVE:
                cycles = CycleCertificate.from_json(body)
                return cls(kind, theta, cycles=cycles, witness=TwoRegularSubgraph(cycles.cycles))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed certificate JSON: {exc}") from exc
        raise InputError(f"unknown certificate kind {kind!r}")


def decide(g: MultiGraph, theta: ThetaSpec, oracle: bool = False) -> Certificate:
    """Is theta an eigenvalue of the universal cover of g? Answer with a certificate."""
    part = classify(g, theta)
    cert = maximal_refined_aomoto(g, theta, part)
    if cert is not None:
        return Certificate(POSITIVE, theta, aomoto=cert)
    cycles = find_disjoint_critical_cycles(g, theta, oracle=oracle)
    return Certificate(NEGATIVE, theta, cycles=cycles, witness=TwoRegularSubgraph(cycles.cycles))


def validate(g: MultiGraph, cert: Certificate) -> None:
    """Independent re-check of a certificate; raises InvalidCertificate."""
    if cert.kind == POSITIVE:
        if cert.aomoto is None:
            raise InvalidCertificate("positive certificate without a subset")
        validate_aomoto(g, cert.theta, cert.aomoto, require_refined=True)
    elif cert.kind == NEGATIVE:
        if cert.cycles is None:
            raise InvalidCertificate("negative certificate without cycles")
        validate_cycle_certificate(g, cert.theta, cert.cycles)
        support = cert.cycles.vertex_set
        if theta_multiplicity_mask(g, g.mask & ~g.mask_of(support), cert.theta) != 0:
            raise InvalidCertificate("theta is still a root after deleting the witness")
    else:
        raise InvalidCertificate(f"unknown certificate kind {cert.kind!r}")


# ---------------------------------------------------------------------------


@dataclass
class EquivalenceReport:
    theta: ThetaSpec
    verdicts: dict
    probe: dict
    consistent: bool
    certificate: Certificate
    witnesses: dict = field(default_factory=dict)

    def to_json(self, g: MultiGraph | None = None) -> dict:
        return {
            "theta": self.theta.to_json(),
            "verdicts": dict(self.verdicts),
            "probe": dict(self.probe),
            "consistent": self.consistent,
            "certificate": self.certificate.to_json(g),
            "witnesses": {k: (sorted(v) if isinstance(v, frozenset) else v) for k, v in self.witnesses.items()},
        }


def _union_dp(items: list[tuple[int, object]]) -> dict[int, tuple[int, object]]:
    """Every union of pairwise disjoint masks from ``items``, with a back
    pointer (previous union, item payload) to rebuild one decomposition.

    There are at most 2^|V| unions, however many packings produce them.
    """
    reach: dict[int, tuple[int, object]] = {0: (0, None)}
    for mask, payload in items:
        for s in list(reach):
            if not s & mask and s | mask not in reach:
                reach[s | mask] = (s, payload)
    return reach


def cycle_supports(g: MultiGraph) -> dict[int, tuple[int, object]]:
    """Vertex supports (host bitmasks) of the 2-regular subgraphs of g."""
    memo = g._ctx.cache("cycle_supports")
    hit = memo.get(g.mask)
    if hit is None:
        seen: dict[int, object] = {}
        for c in g.enumerate_cycles():
            seen.setdefault(g.mask_of(c.vertices), c)
        hit = memo[g.mask] = _union_dp(sorted(seen.items(), key=lambda kv: kv[0]))
    return hit


def _witness(reach: dict, mask: int) -> TwoRegularSubgraph:
    cycles = []
    while mask:
        prev, c = reach[mask]
        cycles.append(c)
        mask = prev
    return TwoRegularSubgraph(tuple(reversed(cycles)))


def _condition_e(g: MultiGraph, theta: ThetaSpec):
    reach = cycle_supports(g)
    for s in sorted(reach):
        if theta_multiplicity_mask(g, g.mask & ~s, theta) == 0:
            return False, _witness(reach, s)
    return True, None


def _condition_f(g: MultiGraph, theta: ThetaSpec):
    reach = cycle_supports(g)
    for s in sorted(reach):
        rest = g.delete_vertices(g.ids_of_mask(s))
        if theta_multiplicity(rest, theta, "characteristic") == 0:
            return False, _witness(reach, s)
    return True, None


def packing_supports(g: MultiGraph) -> list[int]:
    """Vertex supports (host bitmasks) of packings of directed cycles not
    associated with edges, built from the directed-cycle enumerator rather
    than the undirected one."""
    memo = g._ctx.cache("supports")
    hit = memo.get(g.mask)
    if hit is None:
        vsets = set()
        for verts, arcs in directed_cycles(g):
            if len(arcs) == 2 and arcs[0][0] == arcs[1][0]:
                continue
            vsets.add(g.mask_of(verts))
        hit = memo[g.mask] = sorted(_union_dp([(m, None) for m in sorted(vsets)]))
    return hit


def _condition_h(g: MultiGraph, theta: ThetaSpec):
    for s in packing_supports(g):
        if theta_multiplicity_mask(g, g.mask & ~s, theta) == 0:
            return False, frozenset(g.ids_of_mask(s))
    return True, None


_ONE = GaussianRational.of(1)
_I = GaussianRational(Fraction(0), Fraction(1))
_PHASES = (_ONE, _I, -_ONE, -_I)


def _unit(k: int) -> GaussianRational:
    return _PHASES[k % 4]


def _twisted_cached(g: MultiGraph, xi: dict):
    memo = g._ctx.cache("twisted")
    key = (g.mask, tuple(sorted((k, (v.re, v.im)) for k, v in xi.items())))
    hit = memo.get(key)
    if hit is None:
        hit = memo[key] = twisted_characteristic(g, xi)
    return hit


def _min_distance_twisted(g: MultiGraph, xi: dict, t: float) -> float:
    idx = {v: k for k, v in enumerate(g.vertex_ids)}
    a = np.zeros((g.n, g.n), dtype=complex)
    for v in g.vertex_ids:
        a[idx[v], idx[v]] = float(g.r(v))
    for e in g.edges:
        w = complex(e.rho) * xi.get(e.id, 1)
        i, j = idx[e.u], idx[e.v]
        a[i, j] += w
        a[j, i] += w.conjugate()
    return float(np.min(np.abs(np.linalg.eigvalsh(a) - t)))


def g_probe(g: MultiGraph, theta: ThetaSpec, rng: random.Random, grid_limit: int = 16, float_samples: int = 4, tol: float = 1e-6) -> dict:
    """theta against twisted characteristic polynomials: an exact check on
    points of the {1, i, -1, -i} phase grid and a floating check at random
    phases. Numerical evidence only."""
    if g.n == 0:
        return {"grid_points": 0, "grid_all_zero": True, "float_samples": 0, "float_all_zero": True, "max_distance": 0.0}
    _, s_plus = g.spanning_forest()
    d = len(s_plus)
    total = 4 ** d
    picks = range(total) if total <= grid_limit else [0] + sorted(rng.sample(range(1, total), grid_limit - 1))
    grid = [tuple(k // 4 ** s % 4 for s in range(d)) for k in picks]
    grid_zero = True
    for ks in grid:
        xi = {eid: _unit(k) for eid, k in zip(s_plus, ks)}
        if multiplicity_at(_twisted_cached(g, xi), theta) == 0:
            grid_zero = False
            break
    t = float(theta)
    worst = 0.0
    for _ in range(float_samples if s_plus else 0):
        xi = {eid: complex(np.exp(2j * np.pi * rng.random())) for eid in s_plus}
        worst = max(worst, _min_distance_twisted(g, xi, t))
    if not s_plus:
        worst = _min_distance_twisted(g, {}, t)
    return {
        "grid_points": len(grid),
        "grid_all_zero": grid_zero,
        "float_samples": float_samples if s_plus else 1,
        "float_all_zero": worst < tol,
        "max_distance": worst,
    }


def verify_equivalences(g: MultiGraph, theta: ThetaSpec, seed: int = 0, probe: bool = True) -> EquivalenceReport:
    """Evaluate every exact condition independently and check they agree."""
    witnesses: dict = {}
    c_cert = find_aomoto_bruteforce(g, theta)
    if c_cert is not None:
        witnesses["c"] = c_cert.subset
    cert = decide(g, theta)
    e, gamma_e = _condition_e(g, theta)
    f, gamma_f = _condition_f(g, theta)
    h, support = _condition_h(g, theta)
    if gamma_e is not None:
        witnesses["e"] = gamma_e.to_json()
    if gamma_f is not None:
        witnesses["f"] = gamma_f.to_json()
    if support is not None:
        witnesses["h"] = support
    verdicts = {
        "c": c_cert is not None,
        "d": cert.is_eigenvalue,
        "e": e,
        "f": f,
        "h": h,
    }
    consistent = len(set(verdicts.values())) == 1
    probe_out: dict = {}
    if probe:
        probe_out = g_probe(g, theta, random.Random(seed))
        probe_true = probe_out["grid_all_zero"] and probe_out["float_all_zero"]
        probe_out["agrees"] = probe_true == verdicts["d"]
        # an exact "yes" must never be contradicted by the probe
        if verdicts["d"] and not probe_true:
            consistent = False
    return EquivalenceReport(theta, verdicts, probe_out, consistent, cert, witnesses)
