import json
from fractions import Fraction

import pytest
from hypothesis import given, settings

from cover_spectra.aomoto import (
    AomotoCertificate,
    all_aomoto_subsets,
    certificate_for,
    check_robustness_under_cycle_deletion,
    density_of_states,
    find_aomoto_bruteforce,
    max_surplus_bruteforce,
    maximal_refined_aomoto,
    refine_aomoto,
    validate_certificate,
)
from cover_spectra.errors import InvalidCertificate
from cover_spectra.exact import ThetaSpec, rational_roots
from cover_spectra.gallai_edmonds import classify
from cover_spectra.multigraph import MultiGraph, bowtie_example, complete_graph, disjoint_union, path_graph, star_graph
from cover_spectra.polynomials import matching_polynomial

import oracles
from strategies import multigraphs

ZERO = ThetaSpec.rational(0)
MINUS_ONE = ThetaSpec.rational(-1)
# Five isolated critical vertices O..S. Frontier a, b see only O; c sees P, Q;
# d sees R, S. {a,b,c} and {a,b,d} are both deficient, their union is not.
FIVE = MultiGraph(list("OPQRSabcd"), [("a", "O"), ("b", "O"), ("c", "P"), ("c", "Q"), ("d", "R"), ("d", "S")])


def test_bruteforce_examples():
    c = find_aomoto_bruteforce(path_graph(3), ZERO)
    assert c.subset == {"1", "3"} and c.surplus == 1
    assert find_aomoto_bruteforce(complete_graph(3), ZERO) is None
    bow = find_aomoto_bruteforce(bowtie_example(), MINUS_ONE)
    validate_certificate(bowtie_example(), MINUS_ONE, bow)


def test_bowtie_has_a_single_aomoto_subset():
    expected = [frozenset("1245")]
    assert all_aomoto_subsets(bowtie_example(), MINUS_ONE) == expected
    assert oracles.aomoto_subsets(bowtie_example(), Fraction(-1)) == expected


def test_refine_examples():
    bow = certificate_for(bowtie_example(), MINUS_ONE, "1245")
    assert bow.refined and refine_aomoto(bowtie_example(), MINUS_ONE, bow).subset == bow.subset
    p3 = refine_aomoto(path_graph(3), ZERO, certificate_for(path_graph(3), ZERO, ["1", "3"]))
    assert p3.subset == {"1", "3"} and p3.refined


def test_refine_drops_non_critical_tree():
    star = star_graph(3)
    whole = certificate_for(star, ZERO, star.vertex_ids)
    assert not whole.refined and whole.surplus == 1
    r = refine_aomoto(star, ZERO, whole)
    assert r.subset == {"2", "3", "4"} and r.frontier == {"1"} and r.surplus == 2 and r.refined


def test_refine_needs_minimal_deficient_sets():
    c = certificate_for(FIVE, ZERO, "OPQRS")
    assert c.surplus == 1 and not c.refined
    r = refine_aomoto(FIVE, ZERO, c)
    assert r.subset == set("PQRS") and r.frontier == {"c", "d"} and r.surplus == 2


def test_maximal_refined_examples():
    g = bowtie_example()
    c = maximal_refined_aomoto(g, MINUS_ONE)
    assert c.subset == set("1245") and c.frontier == {"3"} and c.surplus == 1 and c.refined
    assert maximal_refined_aomoto(complete_graph(3), ZERO) is None
    best = maximal_refined_aomoto(FIVE, ZERO)
    assert best.surplus == max_surplus_bruteforce(FIVE, ZERO) == 3


def test_density_examples():
    assert density_of_states(bowtie_example(), MINUS_ONE).tau == Fraction(1, 5)
    d = density_of_states(path_graph(3), ZERO)
    assert d.tau == Fraction(1, 3) and d.tau_numerator == 1
    assert density_of_states(complete_graph(3), ZERO) is None


def test_robustness_examples():
    g = bowtie_example()
    tri = next(c for c in g.enumerate_cycles() if c.vertex_set == {"1", "2", "3"})
    rep = check_robustness_under_cycle_deletion(g, MINUS_ONE, tri)
    assert rep and set(rep.info["witness"]) == {"4", "5"}
    h = disjoint_union(path_graph(3), complete_graph(3))
    (c,) = h.enumerate_cycles()
    rep = check_robustness_under_cycle_deletion(h, ZERO, c)
    assert rep and set(rep.info["witness"]) == {"a.1", "a.3"}


def test_certificate_json_and_validation():
    g = bowtie_example()
    c = maximal_refined_aomoto(g, MINUS_ONE)
    back = AomotoCertificate.from_json(json.loads(json.dumps(c.to_json(g))))
    assert back == c
    forged = AomotoCertificate(frozenset("12"), (frozenset("12"),), frozenset("3"), 0, True)
    with pytest.raises(InvalidCertificate):
        validate_certificate(g, MINUS_ONE, forged)
    with pytest.raises(InvalidCertificate):
        validate_certificate(g, ZERO, c)


def _roots(g):
    return [ThetaSpec.rational(r) for r in rational_roots(matching_polynomial(g))]


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_n=6, complex_rho=False))
def test_bruteforce_matches_definition(g):
    for t in _roots(g)[:2]:
        assert set(all_aomoto_subsets(g, t)) == set(oracles.aomoto_subsets(g, t.value))


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_n=8))
def test_refined_decision_matches_bruteforce(g):
    for t in _roots(g) + [ZERO]:
        best = maximal_refined_aomoto(g, t)
        brute = find_aomoto_bruteforce(g, t)
        assert (best is None) == (brute is None)
        if best is None:
            continue
        validate_certificate(g, t, best, require_refined=True)
        assert best.surplus == max_surplus_bruteforce(g, t)
        part = classify(g, t)
        assert all(c in part.critical_components for c in best.components)
        r = refine_aomoto(g, t, brute)
        assert r.refined and r.subset <= brute.subset and r.surplus >= brute.surplus
        assert r.subset <= best.subset


@settings(max_examples=30, deadline=None)
@given(multigraphs(max_n=7, loops=False, complex_rho=False))
def test_forest_roots_always_have_subsets(g):
    keep, _ = g.spanning_forest()
    forest = MultiGraph([(v, g.r(v)) for v in g.vertex_ids], [e for e in g.edges if e.id in keep])
    assert forest.is_forest()
    for t in _roots(forest):
        assert maximal_refined_aomoto(forest, t) is not None
