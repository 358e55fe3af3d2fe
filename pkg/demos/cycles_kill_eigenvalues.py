"""
Negative certificates: disjoint critical cycles
===============================================

A triangle at 0, two disjoint triangles at 0, and a hexagon at sqrt 2.
"""

from cover_spectra.exact import ThetaSpec
from cover_spectra.multigraph import complete_graph, cycle_graph, disjoint_union
from cover_spectra.polynomials import theta_multiplicity
from cover_spectra.verifier import decide, verify_equivalences

cases = [
    ("K3", complete_graph(3), ThetaSpec.rational(0)),
    ("K3 + K3", disjoint_union(complete_graph(3), complete_graph(3)), ThetaSpec.rational(0)),
    ("C6", cycle_graph(6), ThetaSpec.parse("minpoly:-2,0,1:1,2")),
]

for name, g, theta in cases:
    cert = decide(g, theta)
    cycles = [c.vertices for c in cert.cycles.cycles]
    rest = g.delete_vertices(cert.witness.vertex_set)
    print(f"{name:8s} theta={theta}  m={theta_multiplicity(g, theta)}  cycles={cycles}")
    print(" " * 9, "multiplicity after deleting them:", theta_multiplicity(rest, theta))
    rep = verify_equivalences(g, theta, seed=1)
    print(" " * 9, "all conditions false:", not any(rep.verdicts.values()), "probe agrees:", rep.probe["agrees"])
