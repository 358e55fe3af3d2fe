import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from cover_spectra.aomoto import AomotoCertificate
from cover_spectra.errors import InputError, InvalidCertificate
from cover_spectra.exact import ThetaSpec, rational_roots
from cover_spectra.corpus import instance_seed, spec_for
from cover_spectra.generators import generate_instance, thetas_for
from cover_spectra.multigraph import MultiGraph, bowtie_example, complete_graph, cycle_graph, path_graph, star_graph
from cover_spectra.polynomials import matching_polynomial, theta_multiplicity
from cover_spectra.verifier import (
    NEGATIVE,
    POSITIVE,
    Certificate,
    cycle_supports,
    decide,
    g_probe,
    packing_supports,
    validate,
    verify_equivalences,
)

from strategies import multigraphs

ZERO = ThetaSpec.rational(0)
MINUS_ONE = ThetaSpec.rational(-1)


def test_decide_examples():
    bow = decide(bowtie_example(), MINUS_ONE)
    assert bow.kind == POSITIVE and bow.aomoto.subset == set("1245")
    k3 = decide(complete_graph(3), ZERO)
    assert k3.kind == NEGATIVE and k3.witness.vertex_set == {"1", "2", "3"}
    assert theta_multiplicity(complete_graph(3).delete_vertices(k3.witness.vertex_set), ZERO) == 0
    p3 = decide(path_graph(3), ThetaSpec.rational(1))
    assert p3.kind == NEGATIVE and p3.cycles.cycles == () and len(p3.witness) == 0


def test_verify_examples():
    rep = verify_equivalences(bowtie_example(), MINUS_ONE)
    assert rep.consistent and set(rep.verdicts.values()) == {True}
    assert rep.probe["agrees"]
    rep = verify_equivalences(complete_graph(3), ZERO)
    assert rep.consistent and set(rep.verdicts.values()) == {False}
    assert rep.witnesses["e"] == [["e1", "e3", "e2"]]


def test_forest_root_is_all_true():
    star = star_graph(4)
    for r in rational_roots(matching_polynomial(star)):
        rep = verify_equivalences(star, ThetaSpec.rational(r))
        assert rep.consistent and all(rep.verdicts.values())
    assert packing_supports(star) == [0]


def test_supports():
    g = bowtie_example()
    assert sorted(cycle_supports(g)) == [0, g.mask_of("123"), g.mask_of("345")]
    # a loop and a 2-cycle on parallel edges are undirected cycles, the
    # 2-cycle is also a directed packing; an edge walked back and forth is not
    two = MultiGraph(["u", "v"], [("a", "u", "v", 1), ("b", "u", "v", 1), ("l", "u", "u", 1)])
    assert packing_supports(two) == sorted({0, two.mask_of("u"), two.mask_of("uv")})
    assert packing_supports(path_graph(2)) == [0]


def test_certificate_round_trip():
    for g, t in ((bowtie_example(), MINUS_ONE), (complete_graph(3), ZERO)):
        cert = decide(g, t)
        back = Certificate.from_json(json.loads(json.dumps(cert.to_json(g))))
        validate(g, back)
        assert back.kind == cert.kind


def test_validate_rejects_forgeries():
    g = bowtie_example()
    cert = decide(g, MINUS_ONE)
    bad = Certificate(POSITIVE, MINUS_ONE, aomoto=AomotoCertificate(frozenset("12"), (frozenset("12"),), frozenset("3"), 0, True))
    with pytest.raises(InvalidCertificate):
        validate(g, bad)
    with pytest.raises(InvalidCertificate):
        validate(g, Certificate(POSITIVE, ZERO, aomoto=cert.aomoto))
    k3 = decide(complete_graph(3), ZERO)
    with pytest.raises(InvalidCertificate):
        validate(cycle_graph(3), Certificate(NEGATIVE, ThetaSpec.rational(2), cycles=k3.cycles, witness=k3.witness))
    with pytest.raises(InputError):
        Certificate.from_json({"kind": "other", "theta": "0", "certificate": {}})


def test_g_probe_on_bowtie():
    probe = g_probe(bowtie_example(), MINUS_ONE, random.Random(0))
    assert probe["grid_points"] == 16 and probe["grid_all_zero"] and probe["float_all_zero"]
    probe = g_probe(complete_graph(3), ZERO, random.Random(0))
    assert not probe["grid_all_zero"]


def test_algebraic_theta():
    g = cycle_graph(5)
    golden = ThetaSpec.parse("minpoly:-1,-1,1:1,2")
    rep = verify_equivalences(g, golden)
    assert rep.consistent and not rep.verdicts["d"]


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_n=7))
def test_equivalence_property(g):
    for t in thetas_for(matching_polynomial(g), random.Random(g.m), non_roots=1):
        rep = verify_equivalences(g, t, seed=g.n)
        assert rep.consistent, rep.verdicts
        validate(g, rep.certificate)


def test_regular_instances_have_no_eigenvalues():
    checked = 0
    for k in range(12):
        spec = spec_for(instance_seed(1, k), models=("regular",))
        g = generate_instance(spec)
        for t in thetas_for(matching_polynomial(g), random.Random(k), non_roots=0):
            assert decide(g, t).kind == NEGATIVE
            checked += 1
    assert checked > 0
