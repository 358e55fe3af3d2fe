"""Command line entry point: ``cover-spectra <command> ...``.

JSON goes to stdout, logs to stderr. Exit codes: 0 eigenvalue (positive
certificate), 3 not an eigenvalue (negative certificate), 2 input error,
4 cap exceeded, 1 a check failed (inconsistent report, invalid certificate,
failing corpus).
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
import time
from fractions import Fraction

from . import caps as caps_mod
from .aomoto import density_of_states
from .corpus import SUITES, CorpusConfig, run_corpus
from .covers import build_cover_ball, build_quotient_cover, spectral_probe
from .errors import CapExceeded, CoverSpectraError, InputError, InvalidCertificate
from .exact import GaussianRational, ThetaSpec, factored_str
from .gallai_edmonds import classify
from .generators import MODELS, InstanceSpec, generate_instance
from .multigraph import MultiGraph
from .polynomials import (
    characteristic_polynomial,
    harary_weights,
    matching_polynomial,
    molecular_polynomial,
    twisted_characteristic,
)
from .verifier import Certificate, decide, validate, verify_equivalences

log = logging.getLogger("cover_spectra")

EXIT_EIGENVALUE = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_NOT_EIGENVALUE = 3
EXIT_CAP = 4


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _graph(path: str) -> MultiGraph:
    return MultiGraph.from_json(_load_json(path))


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")


def _verdict(cert: Certificate) -> int:
    return EXIT_EIGENVALUE if cert.is_eigenvalue else EXIT_NOT_EIGENVALUE


# ---------------------------------------------------------------------------
# commands


def cmd_decide(args) -> int:
    g = _graph(args.graph)
    theta = ThetaSpec.parse(args.theta)
    cert = decide(g, theta, oracle=args.oracle)
    log.info("theta=%s: %s", theta, cert.kind)
    _emit(cert.to_json(g))
    return _verdict(cert)


def cmd_certify(args) -> int:
    g = _graph(args.graph)
    if args.check:
        cert = Certificate.from_json(_load_json(args.check))
        try:
            validate(g, cert)
        except InvalidCertificate as exc:
            _emit({"valid": False, "reason": str(exc)})
            return EXIT_FAILED
        _emit({"valid": True, "kind": cert.kind})
        return _verdict(cert)
    if args.theta is None:
        raise InputError("certify needs --theta or --check")
    theta = ThetaSpec.parse(args.theta)
    cert = decide(g, theta, oracle=args.oracle)
    validate(g, cert)
    out = cert.to_json(g)
    out["aomoto"] = out["certificate"] if cert.is_eigenvalue else "none"
    if cert.is_eigenvalue:
        out["density_of_states"] = density_of_states(g, theta).to_json(g)
    _emit(out)
    return _verdict(cert)


def cmd_verify(args) -> int:
    g = _graph(args.graph)
    theta = ThetaSpec.parse(args.theta)
    rep = verify_equivalences(g, theta, seed=args.seed, probe=not args.no_probe)
    out = rep.to_json(g)
    out["seed"] = args.seed
    _emit(out)
    if not rep.consistent:
        log.error("conditions disagree: %s", rep.verdicts)
        return EXIT_FAILED
    return _verdict(rep.certificate)


def cmd_decompose(args) -> int:
    g = _graph(args.graph)
    part = classify(g, ThetaSpec.parse(args.theta), args.polynomial)
    _emit(part.to_json(g))
    return 0


def _phases(raw: str | None) -> dict:
    """``{"e1": "i", "e2": "-1", "e3": {"re": "0.6", "im": "0.8"}}`` or a
    float pair ``[re, im]``."""
    if raw is None:
        return {}
    obj = json.loads(raw) if raw.lstrip().startswith("{") else _load_json(raw)
    out = {}
    named = {
        "i": GaussianRational(Fraction(0), Fraction(1)),
        "-i": GaussianRational(Fraction(0), Fraction(-1)),
    }
    for k, v in obj.items():
        if isinstance(v, str) and v in named:
            out[k] = named[v]
        elif isinstance(v, list):
            out[k] = complex(float(v[0]), float(v[1]))
        else:
            out[k] = GaussianRational.from_json(v)
    return out


def cmd_poly(args) -> int:
    g = _graph(args.graph)
    if args.kind == "matching":
        p = matching_polynomial(g)
    elif args.kind == "char":
        p = characteristic_polynomial(g)
    elif args.kind == "molecular":
        if args.weights:
            raw = _load_json(args.weights)
            w = {frozenset(c["edges"]): GaussianRational.from_json(c["weight"]) for c in raw}
        else:
            w = harary_weights(g)
        p = molecular_polynomial(g, w)
    else:
        p = twisted_characteristic(g, _phases(args.phases))
        if not hasattr(p, "pretty"):
            _emit({"kind": args.kind, "coeffs": [float(c) for c in p.coef], "exact": False})
            return 0
    out = {"kind": args.kind, "coeffs": p.to_json(), "expanded": p.pretty()}
    fs = factored_str(p)
    if fs is not None:
        out["factored"] = fs
    _emit(out)
    return 0


def _cover(args, g: MultiGraph):
    if args.quotient is not None:
        return build_quotient_cover(g, args.quotient)
    if args.ball is not None:
        if args.root is None:
            raise InputError("--ball needs --root")
        return build_cover_ball(g, args.root, args.ball)
    return None


def cmd_cover(args) -> int:
    g = _graph(args.graph)
    cov = _cover(args, g)
    if cov is None:
        raise InputError("cover needs --quotient n or --ball R --root v")
    _emit(cov.to_json())
    return 0


def cmd_probe(args) -> int:
    g = _graph(args.graph)
    cov = _cover(args, g)
    if cov is None:
        h = g
    else:
        h = cov.ball if args.ball is not None else cov.cover
    rep = spectral_probe(h, ThetaSpec.parse(args.theta), tol=args.tol)
    _emit(rep.to_json())
    return 0


def cmd_gen(args) -> int:
    spec = InstanceSpec(
        args.model,
        args.n,
        args.seed,
        p=Fraction(args.p),
        weighted=not args.unweighted,
        theta=Fraction(args.theta),
        degree=args.degree,
        multi=not args.simple,
    )
    g = generate_instance(spec)
    _emit({"spec": spec.to_json(), "graph": g.to_json()} if args.with_spec else g.to_json())
    return 0


def cmd_corpus(args) -> int:
    suites = tuple(SUITES) if args.suites == "all" else tuple(s.strip() for s in args.suites.split(","))
    bad = [s for s in suites if s not in SUITES]
    if bad:
        raise InputError(f"unknown suites {bad}; choose from {list(SUITES)}")
    cfg = CorpusConfig(
        count=args.count,
        seed=args.seed,
        max_n=args.max_n,
        suites=suites,
        mutation=args.mutation,
        golden=not args.no_golden,
        jobs=args.jobs,
    )
    summary = run_corpus(cfg)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(summary, fh, indent=2, default=str)
    _emit(summary)
    log.info("%d instances, %d theta values, %.1fs", summary["instances"], summary["theta_evaluations"], summary["seconds"])
    return 0 if summary["ok"] else EXIT_FAILED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cover-spectra", description="Exact eigenvalue certificates for universal covers of weighted multigraphs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    limits = common.add_argument_group("caps (also COVER_SPECTRA_<NAME> in the environment)")
    for f in dataclasses.fields(caps_mod.Caps):
        limits.add_argument("--" + f.name.replace("_", "-"), type=int, default=None, metavar="N")
    sub = ap.add_subparsers(dest="command", required=True)

    def command(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    def with_graph(name, fn, help_):
        p = command(name, help=help_)
        p.add_argument("graph", help="graph JSON file, or - for stdin")
        p.set_defaults(fn=fn)
        return p

    p = with_graph("decide", cmd_decide, "is theta an eigenvalue of the universal cover?")
    p.add_argument("--theta", required=True, help='"p/q" or "minpoly:c0,c1,...:lo,hi"')
    p.add_argument("--oracle", action="store_true", help="brute-force check after each cycle deletion")

    p = with_graph("certify", cmd_certify, "emit and validate a certificate, or check one")
    p.add_argument("--theta")
    p.add_argument("--check", metavar="CERT", help="validate this certificate JSON instead")
    p.add_argument("--oracle", action="store_true")

    p = with_graph("verify", cmd_verify, "evaluate every equivalent condition")
    p.add_argument("--theta", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-probe", action="store_true")

    p = with_graph("decompose", cmd_decompose, "theta Gallai-Edmonds partition")
    p.add_argument("--theta", required=True)
    p.add_argument("--polynomial", choices=("matching", "characteristic"), default="matching")

    p = command("poly", help="graph polynomials")
    p.add_argument("kind", choices=("matching", "char", "molecular", "twisted"))
    p.add_argument("graph")
    p.add_argument("--weights", help="molecular: JSON list of {edges: [...], weight: ...}; default Harary weights")
    p.add_argument("--phases", help="twisted: JSON object edge id -> phase, inline or a file")
    p.set_defaults(fn=cmd_poly)

    for name, fn, help_ in (("cover", cmd_cover, "finite quotient cover or walk ball"), ("probe", cmd_probe, "floating eigenvalues near theta")):
        p = with_graph(name, fn, help_)
        grp = p.add_mutually_exclusive_group(required=(name == "cover"))
        grp.add_argument("--quotient", type=int, metavar="N")
        grp.add_argument("--ball", type=int, metavar="R")
        p.add_argument("--root")
        if name == "probe":
            p.add_argument("--theta", required=True)
            p.add_argument("--tol", type=float, default=1e-9)

    p = command("gen", help="generate a seeded instance")
    p.add_argument("--model", choices=MODELS, default="erdos-renyi")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", default="1/3")
    p.add_argument("--theta", default="0", help="theta-critical-glue target")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--unweighted", action="store_true")
    p.add_argument("--simple", action="store_true", help="no loops or parallel edges")
    p.add_argument("--with-spec", action="store_true")
    p.set_defaults(fn=cmd_gen)

    p = command("corpus", help="run the invariant suites on a generated corpus")
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--seed", type=int, default=CorpusConfig.seed)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--suites", default="equivalence", help=f"comma list from {','.join(SUITES)}, or all")
    p.add_argument("--mutation", choices=("lambda-sign",))
    p.add_argument("--no-golden", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="also write the summary here")
    p.set_defaults(fn=cmd_corpus)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    logging.basicConfig(stream=sys.stderr, level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    t0 = time.perf_counter()
    try:
        # environment first, flags on top
        caps = dataclasses.asdict(caps_mod.Caps.from_env())
        caps.update({k: getattr(args, k) for k in caps if getattr(args, k) is not None})
        with caps_mod.using_caps(**caps):
            code = args.fn(args)
    except CapExceeded as exc:
        log.error("cap exceeded: %s", exc)
        return EXIT_CAP
    except InputError as exc:
        log.error("input error: %s", exc)
        return EXIT_INPUT
    except CoverSpectraError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_FAILED
    except (ValueError, ZeroDivisionError) as exc:
        # malformed numbers from Fraction and friends
        log.error("input error: %s", exc)
        return EXIT_INPUT
    log.info("%s done in %.2fs", args.command, time.perf_counter() - t0)
    return code


if __name__ == "__main__":
    sys.exit(main())
