"""
Two triangles sharing a vertex, at theta = -1
=============================================

"""

from cover_spectra.aomoto import density_of_states
from cover_spectra.exact import ThetaSpec, factored_str
from cover_spectra.gallai_edmonds import classify
from cover_spectra.multigraph import bowtie_example
from cover_spectra.polynomials import characteristic_polynomial, matching_polynomial
from cover_spectra.verifier import verify_equivalences

g = bowtie_example()
theta = ThetaSpec.rational(-1)

# the characteristic polynomial and what happens when a vertex is deleted
print("phi(G)     =", factored_str(characteristic_polynomial(g)))
for v in g.vertex_ids:
    print(f"phi(G - {v}) =", factored_str(characteristic_polynomial(g.delete_vertices([v]))))

# the matching polynomial has -1 as a simple root only
mu = matching_polynomial(g)
print("mu(G)      =", factored_str(mu) or mu.pretty())

# Gallai-Edmonds classes at theta
part = classify(g, theta)
print("m_theta =", part.m_theta, "zero class:", sorted(part.zero_set), "inf class:", sorted(part.inf_set))

# the decision: a refined Aomoto subset, so -1 survives in every cover
rep = verify_equivalences(g, theta, seed=0)
print("certificate:", rep.certificate.kind, sorted(rep.certificate.aomoto.subset))
print("verdicts:", rep.verdicts, "consistent:", rep.consistent)
print("density of states at -1:", density_of_states(g, theta).tau)
