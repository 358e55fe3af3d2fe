import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cover_spectra.aomoto import find_aomoto_bruteforce
from cover_spectra.critical_cycles import (
    CycleCertificate,
    factor_critical_odd_cycle,
    find_critical_cycle,
    find_critical_path,
    find_disjoint_critical_cycles,
    path_weight,
    validate_cycle_certificate,
)
from cover_spectra.errors import (
    AomotoSubsetExists,
    Disconnected,
    InvalidCertificate,
    IsATree,
    NotCritical,
    NotFactorCritical,
    PreconditionViolated,
)
from cover_spectra.exact import ThetaSpec
from cover_spectra.generators import InstanceSpec, generate_instance
from cover_spectra.multigraph import (
    CyclePath,
    MultiGraph,
    bowtie_example,
    complete_graph,
    cycle_graph,
    disjoint_union,
    path_graph,
)
from cover_spectra.polynomials import theta_multiplicity

import oracles

ZERO = ThetaSpec.rational(0)
SQRT2 = ThetaSpec.parse("minpoly:-2,0,1:1,2")
# 0-critical: a 5-cycle with an ear 3-6-7-2. The first enumerated cycle
# (2,3,6,7) is not critical, the 5-cycle is.
EAR = MultiGraph(
    [str(k) for k in range(1, 8)],
    [
        ("e1", "1", "2", 1),
        ("e2", "2", "3", 1),
        ("e3", "3", "4", -1),
        ("e4", "4", "5", 1),
        ("e5", "5", "1", 1),
        ("e6", "3", "6", 1),
        ("e7", "6", "7", 1),
        ("e8", "7", "2", -1),
    ],
)


def test_path_weight_examples():
    p3 = path_graph(3)
    assert path_weight(p3, ZERO, CyclePath.path(["2"], [])).w_theta == 1
    assert path_weight(p3, ZERO, CyclePath.path(["1"], [])).w_theta == -1
    tr = path_weight(p3, ZERO, CyclePath.path(["1", "2", "3"], ["e1", "e2"]))
    assert tr.w_theta == -1 and tr.classes == ("0", "inf", "0")


def test_critical_path_examples():
    assert find_critical_path(path_graph(3), ZERO, "1", "3").vertices == ("1", "2", "3")
    # the direct edge leaves a weight-0 vertex behind, so the scan goes round
    assert find_critical_path(complete_graph(3), ZERO, "1", "2").vertices == ("1", "3", "2")
    one = ThetaSpec.rational(1)
    assert find_critical_path(path_graph(2), one, "1", "2").edges == ("e1",)


def test_critical_path_preconditions():
    with pytest.raises(PreconditionViolated):
        find_critical_path(path_graph(3), ZERO, "1", "2")
    with pytest.raises(PreconditionViolated):
        find_critical_path(path_graph(2), ZERO, "1", "2")


def test_critical_cycle_examples():
    c = find_critical_cycle(complete_graph(3), ZERO)
    assert c.vertex_set == {"1", "2", "3"}
    loop = MultiGraph(["1"], [("l", "1", "1", 1)])
    assert find_critical_cycle(loop, ZERO).edges == ("l",)
    two = MultiGraph(["u", "v"], [("a", "u", "v", 1), ("b", "u", "v", 1)])
    c = find_critical_cycle(two, SQRT2)
    assert set(c.edges) == {"a", "b"}
    assert theta_multiplicity(two.delete_vertices(c.vertex_set), SQRT2) == 0


def test_critical_cycle_through_balanced_path():
    first = EAR.enumerate_cycles()[0]
    assert oracles.multiplicity(oracles.matching_poly(EAR.delete_vertices(first.vertex_set)), 0) == 1
    c = find_critical_cycle(EAR, ZERO)
    assert c.vertices == ("1", "2", "3", "4", "5")
    assert oracles.multiplicity(oracles.matching_poly(EAR.delete_vertices(c.vertex_set)), 0) == 0


def test_critical_cycle_preconditions():
    with pytest.raises(IsATree):
        find_critical_cycle(path_graph(1), ZERO)
    with pytest.raises(Disconnected):
        find_critical_cycle(disjoint_union(complete_graph(3), complete_graph(3)), ZERO)
    with pytest.raises(NotCritical):
        find_critical_cycle(cycle_graph(4), ZERO)


def test_disjoint_cycles_examples():
    cert = find_disjoint_critical_cycles(complete_graph(3), ZERO)
    assert len(cert.cycles) == 1 and cert.residual_multiplicity == 0
    two = disjoint_union(complete_graph(3), complete_graph(3))
    cert = find_disjoint_critical_cycles(two, ZERO)
    assert len(cert.cycles) == 2 and cert.vertex_set == set(two.vertex_ids)
    validate_cycle_certificate(two, ZERO, cert)
    empty = find_disjoint_critical_cycles(path_graph(3), ThetaSpec.rational(1))
    assert empty.cycles == () and empty.residual_multiplicity == 0


def test_disjoint_cycles_refuses_positive_instances():
    with pytest.raises(AomotoSubsetExists):
        find_disjoint_critical_cycles(bowtie_example(), ThetaSpec.rational(-1))


def test_cycle_certificate_validation():
    two = disjoint_union(complete_graph(3), complete_graph(3))
    cert = find_disjoint_critical_cycles(two, ZERO)
    back = CycleCertificate.from_json(json.loads(json.dumps(cert.to_json())))
    validate_cycle_certificate(two, ZERO, back)
    with pytest.raises(InvalidCertificate):
        validate_cycle_certificate(two, ZERO, CycleCertificate(cert.cycles[:1], 0))
    with pytest.raises(InvalidCertificate):
        validate_cycle_certificate(two, ZERO, CycleCertificate(cert.cycles[:1] * 2, 0))


def test_factor_critical_examples():
    assert factor_critical_odd_cycle(complete_graph(3), "1", "2").vertex_set == {"1", "2", "3"}
    assert factor_critical_odd_cycle(cycle_graph(5), "1", "2").vertex_set == set("12345")
    bow = MultiGraph("12345", [(e.u, e.v) for e in bowtie_example().edges])
    c = factor_critical_odd_cycle(bow, "1", "2")
    assert c.vertex_set == {"1", "2", "3"}
    with pytest.raises(NotFactorCritical):
        factor_critical_odd_cycle(cycle_graph(4), "1", "2")


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_glued_instances_yield_critical_cycles(seed):
    theta = [Fraction(0), Fraction(1), Fraction(-1, 2)][seed % 3]
    g = generate_instance(InstanceSpec("theta-critical-glue", 7, seed, theta=theta, multi=bool(seed % 2)))
    t = ThetaSpec.rational(theta)
    if g.is_tree():
        return
    c = find_critical_cycle(g, t)
    assert c.is_valid_in(g)
    assert theta_multiplicity(g.delete_vertices(c.vertex_set), t) == 0
    if find_aomoto_bruteforce(g, t) is None:
        cert = find_disjoint_critical_cycles(g, t, oracle=True)
        validate_cycle_certificate(g, t, cert)
