from fractions import Fraction

import pytest
from hypothesis import assume, given, settings

from cover_spectra.aomoto import maximal_refined_aomoto
from cover_spectra.caps import using_caps
from cover_spectra.covers import (
    build_cover_ball,
    build_quotient_cover,
    character_factorization_check,
    spectral_probe,
)
from cover_spectra.errors import BallTooLarge, CoverTooLarge, InputError
from cover_spectra.exact import GaussianRational, Polynomial, ThetaSpec, multiplicity_at, rational_roots
from cover_spectra.multigraph import (
    MultiGraph,
    bowtie_example,
    complete_graph,
    cycle_graph,
    path_graph,
    star_graph,
)
from cover_spectra.polynomials import characteristic_polynomial, matching_polynomial, twisted_characteristic

import oracles
from strategies import multigraphs

x = Polynomial.x()


def test_trivial_quotients():
    g = bowtie_example()
    assert build_quotient_cover(g, 1).cover.same_as(g)
    tree = star_graph(3)
    cov = build_quotient_cover(tree, 4)
    assert cov.s_plus == () and cov.cover.same_as(tree)


def test_triangle_double_cover_is_hexagon():
    cov = build_quotient_cover(cycle_graph(3), 2).cover
    assert cov.n == 6 and cov.is_connected() and all(cov.degree(v) == 2 for v in cov.vertex_ids)
    assert characteristic_polynomial(cov) == characteristic_polynomial(cycle_graph(6))


def test_projection_is_a_covering_map():
    g = bowtie_example()
    cov = build_quotient_cover(g, 2)
    for vid, (v, _) in cov.projection.items():
        assert cov.cover.r(vid) == g.r(v)
        assert sorted(cov.projection[w][0] for w in cov.cover.neighbors(vid)) == sorted(g.neighbors(v))


def test_factorization_examples():
    assert character_factorization_check(bowtie_example(), 1)
    c3 = cycle_graph(3)
    assert character_factorization_check(c3, 2)
    (s,) = build_quotient_cover(c3, 2).s_plus
    plus = twisted_characteristic(c3, {s: GaussianRational.of(1)})
    minus = twisted_characteristic(c3, {s: GaussianRational.of(-1)})
    assert characteristic_polynomial(build_quotient_cover(c3, 2).cover) == plus * minus
    rep = character_factorization_check(bowtie_example(), 2)
    assert rep and rep.info["characters"] == 4
    assert character_factorization_check(bowtie_example(), 4)


def test_factorization_needs_exact_characters():
    with pytest.raises(InputError):
        character_factorization_check(cycle_graph(3), 3)


def test_bowtie_covers_keep_minus_one():
    g = bowtie_example()
    for n in (1, 2, 4):
        phi = characteristic_polynomial(build_quotient_cover(g, n).cover)
        assert multiplicity_at(phi, ThetaSpec.rational(-1)) >= n * n


def test_ball_examples():
    k2 = build_cover_ball(path_graph(2), "1", 5).ball
    assert k2.n == 2
    c3 = build_cover_ball(cycle_graph(3), "1", 2).ball
    assert c3.n == 5 and c3.is_tree() and sorted(c3.degree(v) for v in c3.vertex_ids) == [1, 1, 2, 2, 2]
    tree = star_graph(3)
    ball = build_cover_ball(tree, "2", 4)
    assert ball.ball.n == tree.n and matching_polynomial(ball.ball) == matching_polynomial(tree)


def test_ball_keeps_conjugate_weights():
    g = MultiGraph(["a", "b"], [("e", "a", "b", GaussianRational(Fraction(1), Fraction(2)))])
    ball = build_cover_ball(g, "b", 1)
    (e,) = ball.ball.edges
    assert e.rho == GaussianRational(Fraction(1), Fraction(-2))


def test_ball_parallel_edges_are_not_backtracking():
    two = MultiGraph(["u", "v"], [("a", "u", "v", 1), ("b", "u", "v", 1)])
    # u -a-> v -b-> u -a-> v ... two branches, each a path
    assert build_cover_ball(two, "u", 3).ball.n == 7


def test_caps():
    with using_caps(max_cover_vertices=10):
        with pytest.raises(CoverTooLarge):
            build_quotient_cover(bowtie_example(), 2)
    with using_caps(max_ball_vertices=20):
        with pytest.raises(BallTooLarge):
            build_cover_ball(complete_graph(4), "1", 6)


def test_probe_examples():
    rep = spectral_probe(build_quotient_cover(bowtie_example(), 2).cover, ThetaSpec.rational(-1))
    assert rep.min_distance < 1e-9 and rep.count_within_tolerance >= 4 and not rep.authoritative
    assert spectral_probe(path_graph(2), ThetaSpec.rational(1)).min_distance < 1e-12
    # regular base: the distance from 0 is only reported, never asserted
    far = spectral_probe(build_cover_ball(complete_graph(3), "1", 6).ball, ThetaSpec.rational(0))
    assert far.dimension == 13 and not far.authoritative


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_n=5, max_edges=7))
def test_factorization_property(g):
    _, s_plus = g.spanning_forest()
    assume(len(s_plus) <= 2)
    assert character_factorization_check(g, 2)
    assert character_factorization_check(g, 4)
    cov = build_quotient_cover(g, 2)
    assert characteristic_polynomial(cov.cover) == oracles.charpoly(cov.cover)


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_n=6, max_edges=7))
def test_positive_certificates_survive_in_covers(g):
    _, s_plus = g.spanning_forest()
    assume(len(s_plus) <= 2)
    for r in rational_roots(matching_polynomial(g)):
        t = ThetaSpec.rational(r)
        if maximal_refined_aomoto(g, t) is None:
            continue
        for n in (1, 2, 4):
            assert multiplicity_at(characteristic_polynomial(build_quotient_cover(g, n).cover), t) >= 1
