"""Randomised corpus runs of the invariant suites.

Each instance gets its own 64-bit seed derived from the run seed, and every
failure is reported with that seed so it can be replayed with ``gen``.
"""
from __future__ import annotations

import contextlib
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .aomoto import (
    all_aomoto_subsets,
    certificate_for,
    check_robustness_under_cycle_deletion,
    find_aomoto_bruteforce,
    max_surplus_bruteforce,
    maximal_refined_aomoto,
    refine_aomoto,
)
from .covers import build_quotient_cover, character_factorization_check
from .critical_cycles import path_weight
from .errors import CapExceeded
from .exact import GaussianRational, ThetaSpec, interlaces, is_real_rooted, multiplicity_at
from .gallai_edmonds import (
    check_critical_remove,
    check_critical_stability,
    check_matched_special,
    check_stability,
    classify,
    contraction_lambda,
)
from .generators import MODELS, InstanceSpec, generate_instance, thetas_for
from .multigraph import Edge, MultiGraph
from .polynomials import (
    alpha_value_at_point,
    characteristic_polynomial,
    harary_weights,
    matching_polynomial,
    matching_polynomial_bruteforce,
    molecular_polynomial,
    molecular_polynomial_bruteforce,
    sample_points,
)
from .verifier import NEGATIVE, decide, validate, verify_equivalences

SUITES = ("equivalence", "oracles", "interlacing", "gallai-edmonds", "certificates", "paths", "covers")
_MASK64 = (1 << 64) - 1


@dataclass
class CorpusConfig:
    count: int = 500
    seed: int = 20240613
    max_n: int = 10
    min_n: int = 2
    models: tuple = MODELS
    suites: tuple = ("equivalence",)
    non_roots: int = 3
    mutation: str | None = None
    golden: bool = True
    jobs: int = 1


def instance_seed(run_seed: int, k: int) -> int:
    return (run_seed * 0x9E3779B97F4A7C15 + k * 0xBF58476D1CE4E5B9) & _MASK64


def spec_for(seed: int, models=MODELS, min_n: int = 2, max_n: int = 10) -> InstanceSpec:
    rng = random.Random(seed)
    model = rng.choice(models)
    n = rng.randint(min_n, max_n)
    if model == "regular":
        d = rng.choice([2, 3, 4])
        n = max(n, d + 1)
        if n * d % 2:
            n = n + 1 if n < max_n else n - 1
        if d >= n:
            d = 2
            n = max(n, 3)
        return InstanceSpec(model, n, seed, weighted=False, degree=d, multi=False)
    if model == "theta-critical-glue":
        theta = rng.choice([Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-2)])
        return InstanceSpec(model, n, seed, theta=theta, multi=rng.random() < 0.5)
    if model == "forest":
        return InstanceSpec(model, n, seed)
    p = rng.choice([Fraction(1, 4), Fraction(1, 3), Fraction(1, 2)] if n <= 8 else [Fraction(1, 4), Fraction(1, 3)])
    return InstanceSpec(model, n, seed, p=p, weighted=rng.random() < 0.8)


def _golden():
    from .multigraph import bowtie_example, complete_graph, cycle_graph, path_graph

    return (
        ("bowtie", bowtie_example),
        ("K3", lambda: complete_graph(3)),
        ("P3", lambda: path_graph(3)),
        ("C5", lambda: cycle_graph(5)),
    )


def _instance(config: CorpusConfig, k: int):
    """Instance number ``k``; negative numbers index the golden graphs."""
    if k < 0:
        name, make = _golden()[-k - 1]
        g = make()
        return InstanceSpec("golden:" + name, g.n, 0), g
    spec = spec_for(instance_seed(config.seed, k), config.models, config.min_n, config.max_n)
    return spec, generate_instance(spec)


def _indices(config: CorpusConfig) -> list[int]:
    golden = [-(k + 1) for k in range(len(_golden()))] if config.golden else []
    return golden + list(range(config.count))


def corpus_instances(config: CorpusConfig):
    """(spec, graph) pairs; golden instances first when ``config.golden``."""
    for k in _indices(config):
        yield _instance(config, k)


# ---------------------------------------------------------------------------
# suites; each returns a list of failure descriptions


def suite_equivalence(g, thetas, seed):
    out = []
    for t in thetas:
        rep = verify_equivalences(g, t, seed=seed)
        if not rep.consistent:
            out.append({"theta": str(t), "verdicts": rep.verdicts, "probe": rep.probe})
    return out


def _random_cycle_weights(g: MultiGraph, rng: random.Random) -> dict:
    vals = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-2), Fraction(3)]
    return {frozenset(c.edges): GaussianRational(rng.choice(vals), rng.choice(vals)) for c in g.enumerate_cycles()}


def suite_oracles(g, thetas, seed):
    out = []
    rng = random.Random(seed)
    mu = matching_polynomial(g)
    if g.n <= 10 and mu != matching_polynomial_bruteforce(g):
        out.append({"check": "matching-bruteforce"})
    if g.n <= 8:
        w = harary_weights(g)
        phi = characteristic_polynomial(g)
        if molecular_polynomial(g, w) != phi:
            out.append({"check": "harary"})
        w = _random_cycle_weights(g, rng)
        if molecular_polynomial(g, w) != molecular_polynomial_bruteforce(g, w):
            out.append({"check": "gutman"})
    if g.is_forest() and mu != characteristic_polynomial(g):
        out.append({"check": "forest mu = phi"})
    if not g.is_forest() and mu == characteristic_polynomial(g):
        # loops with zero total weight or cancelling cycles could make this
        # coincide in principle; report it rather than fail silently
        out.append({"check": "non-forest mu != phi", "soft": True})
    return out


def suite_interlacing(g, thetas, seed):
    out = []
    mu = matching_polynomial(g)
    if not is_real_rooted(mu):
        out.append({"check": "real-rooted"})
    for v in g.vertex_ids:
        mv = matching_polynomial(g.delete_vertices([v]))
        if g.n > 1 and not interlaces(mv, mu):
            out.append({"check": "interlacing", "vertex": v})
        for t in thetas:
            d = multiplicity_at(mv, t) - multiplicity_at(mu, t)
            if d not in (-1, 0, 1):
                out.append({"check": "multiplicity step", "vertex": v, "theta": str(t)})
    return out


def suite_gallai_edmonds(g, thetas, seed):
    out = []
    rng = random.Random(seed)
    for t in thetas:
        part = classify(g, t)
        if not part.frontier_of_zero <= part.inf_set:
            out.append({"check": "frontier in inf", "theta": str(t)})
        for comp in part.critical_components:
            h = g.induced(comp)
            if classify(h, t).m_theta != 1:
                out.append({"check": "gallai lemma", "theta": str(t)})
        if not check_matched_special(g, t, part):
            out.append({"check": "matched special", "theta": str(t)})
        for comp in part.critical_components:
            zs = [frozenset([v]) for v in g.sort_ids(comp)] + [comp]
            if len(comp) > 2:
                zs.append(frozenset(rng.sample(sorted(comp), 2)))
            for z in zs:
                if not check_critical_remove(g, t, z, part):
                    out.append({"check": "critical remove", "theta": str(t), "z": sorted(z)})
                if t.is_rational and not check_critical_stability(g, t, z, part):
                    out.append({"check": "critical stability", "theta": str(t), "z": sorted(z)})
        if t.is_rational and not check_stability(g, t, part):
            out.append({"check": "stability", "theta": str(t)})
    if 2 <= g.n <= 8:
        out += _contraction_checks(g, rng, 10)
    return out


def _contraction_checks(g, rng, samples):
    out = []
    i, j = rng.sample(list(g.vertex_ids), 2)
    polys = [
        matching_polynomial(g.delete_vertices(s))
        for s in ([i], [j], [i, j])
    ]
    for x0 in sample_points(polys, samples, rng):
        lhs = alpha_value_at_point(g, i, x0)
        rhs = alpha_value_at_point(g.delete_vertices([j]), i, x0) + contraction_lambda(g, i, j, x0) / alpha_value_at_point(
            g.delete_vertices([i]), j, x0
        )
        if lhs != rhs:
            out.append({"check": "contraction", "i": i, "j": j, "x0": str(x0)})
    return out


def suite_certificates(g, thetas, seed):
    out = []
    for t in thetas:
        cert = decide(g, t, oracle=g.n <= 12)
        validate(g, cert)
        if cert.kind == NEGATIVE:
            cur = g
            for c in cert.cycles.cycles:
                cur = cur.delete_vertices(c.vertex_set)
                if find_aomoto_bruteforce(cur, t) is not None:
                    out.append({"check": "no aomoto after deletion", "theta": str(t)})
        else:
            best = max_surplus_bruteforce(g, t)
            if best != cert.aomoto.surplus:
                out.append({"check": "density maximum", "theta": str(t), "brute": best, "refined": cert.aomoto.surplus})
            for comp in cert.aomoto.components:
                if comp not in classify(g, t).critical_components:
                    out.append({"check": "subset in GE", "theta": str(t)})
            b = find_aomoto_bruteforce(g, t)
            r = refine_aomoto(g, t, b)
            if not r.refined or r.surplus < b.surplus or not r.subset <= b.subset:
                out.append({"check": "refine", "theta": str(t)})
            if not r.subset <= cert.aomoto.subset:
                out.append({"check": "maximality", "theta": str(t)})
            for c in g.enumerate_cycles()[:5]:
                if not check_robustness_under_cycle_deletion(g, t, c):
                    out.append({"check": "robustness", "theta": str(t), "cycle": list(c.edges)})
    return out


def suite_paths(g, thetas, seed):
    out = []
    rng = random.Random(seed)
    paths = []
    for v in g.vertex_ids:
        for p in g.simple_paths_from(v, max_vertices=4):
            paths.append(p)
    paths = rng.sample(paths, min(len(paths), 60))
    for t in thetas:
        part = classify(g, t)
        for p in paths:
            tr = path_weight(g, t, p)
            if tr.w_theta < -1:
                out.append({"check": "W >= -1", "theta": str(t)})
            if tr.w_theta == -1 and not {p.vertices[0], p.vertices[-1]} <= part.zero_set:
                out.append({"check": "critical path ends", "theta": str(t)})
        from .polynomials import theta_multiplicity

        for c in g.enumerate_cycles():
            rest = theta_multiplicity(g.delete_vertices(c.vertex_set), t)
            if rest < part.m_theta - 1:
                out.append({"check": "cycle drop", "theta": str(t)})
            if rest == part.m_theta - 1:
                comps = [h for h in part.critical_components if c.vertex_set <= h]
                if len(comps) != 1:
                    out.append({"check": "critical cycle in component", "theta": str(t)})
                    continue
                h = g.induced(comps[0])
                if theta_multiplicity(h.delete_vertices(c.vertex_set), t) != 0:
                    out.append({"check": "critical in component", "theta": str(t)})
    return out


def suite_covers(g, thetas, seed):
    out = []
    _, s_plus = g.spanning_forest()
    if len(s_plus) > 2:
        return out
    try:
        if not character_factorization_check(g, 2):
            out.append({"check": "factorization n=2"})
        covers = {n: build_quotient_cover(g, n) for n in (1, 2, 4)}
    except CapExceeded:
        return out
    for t in thetas:
        if maximal_refined_aomoto(g, t) is not None:
            for n, cov in covers.items():
                if multiplicity_at(characteristic_polynomial(cov.cover), t) < 1:
                    out.append({"check": "cover root", "theta": str(t), "n": n})
    return out


_SUITE_FUNCS = {
    "equivalence": suite_equivalence,
    "oracles": suite_oracles,
    "interlacing": suite_interlacing,
    "gallai-edmonds": suite_gallai_edmonds,
    "certificates": suite_certificates,
    "paths": suite_paths,
    "covers": suite_covers,
}


@contextlib.contextmanager
def mutation(name: str | None):
    """Deliberate fault injection, to show the suites catch it."""
    if name is None:
        yield
        return
    if name != "lambda-sign":
        raise ValueError(f"unknown mutation {name!r}")
    original = Edge.lam
    Edge.lam = property(lambda self: self.rho.abs2())
    try:
        yield
    finally:
        Edge.lam = original


def _run_one(config: CorpusConfig, k: int) -> dict:
    out = {"theta_evaluations": 0, "suites": {}, "failures": [], "skipped": []}
    with mutation(config.mutation):
        spec, g = _instance(config, k)
        thetas = thetas_for(matching_polynomial(g), random.Random(spec.seed), config.non_roots)
        out["theta_evaluations"] = len(thetas)
        for name in config.suites:
            try:
                fails = _SUITE_FUNCS[name](g, thetas, spec.seed)
            except CapExceeded as exc:
                out["skipped"].append({"spec": spec.to_json(), "suite": name, "reason": str(exc)})
                continue
            except AssertionError as exc:
                fails = [{"check": "internal assertion", "error": str(exc)}]
            out["suites"][name] = any(not f.get("soft") for f in fails)
            for f in fails:
                out["failures"].append({"spec": spec.to_json(), "suite": name, **{k: str(v) for k, v in f.items()}})
    return out


def run_corpus(config: CorpusConfig) -> dict:
    """Run the suites over the corpus. With ``config.jobs > 1`` instances are
    spread over worker processes; the summary does not depend on the order."""
    start = time.perf_counter()
    summary = {
        "seed": config.seed,
        "instances": 0,
        "theta_evaluations": 0,
        "suites": {s: {"instances": 0, "failed": 0} for s in config.suites},
        "failures": [],
        "skipped": [],
        "warnings": [],
    }
    indices = _indices(config)
    if not indices:
        summary["warnings"].append("empty corpus: nothing was checked")
    if config.jobs > 1 and len(indices) > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            results = list(pool.map(_run_one, [config] * len(indices), indices, chunksize=8))
    else:
        results = [_run_one(config, k) for k in indices]
    for res in results:
        summary["instances"] += 1
        summary["theta_evaluations"] += res["theta_evaluations"]
        for name, failed in res["suites"].items():
            summary["suites"][name]["instances"] += 1
            summary["suites"][name]["failed"] += int(failed)
        summary["failures"] += res["failures"]
        summary["skipped"] += res["skipped"]
    summary["ok"] = all(s["failed"] == 0 for s in summary["suites"].values())
    summary["seconds"] = round(time.perf_counter() - start, 3)
    return summary
