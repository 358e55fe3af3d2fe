"""
Finite covers and numeric spectra
=================================

Exact factorization of abelian quotient covers, then numpy eigenvalues of
larger covers and of balls in the universal cover.
"""

import numpy as np

from cover_spectra.covers import build_cover_ball, build_quotient_cover, character_factorization_check, spectral_probe
from cover_spectra.exact import ThetaSpec, multiplicity_at
from cover_spectra.multigraph import bowtie_example, complete_graph
from cover_spectra.polynomials import characteristic_polynomial

g = bowtie_example()
minus_one = ThetaSpec.rational(-1)

# the cover's polynomial is the product of the twisted ones
for n in (1, 2, 4):
    cov = build_quotient_cover(g, n)
    phi = characteristic_polynomial(cov.cover)
    print(f"n={n}: {cov.cover.n:3d} vertices, factorization ok: {bool(character_factorization_check(g, n))},"
          f" multiplicity of -1: {multiplicity_at(phi, minus_one)}")

# bigger n has no exact characters here, so look at eigenvalues instead
for n in (3, 5, 8):
    rep = spectral_probe(build_quotient_cover(g, n).cover, minus_one)
    print(f"n={n}: dimension {rep.dimension}, eigenvalues within 1e-9 of -1: {rep.count_within_tolerance}")

# balls in the universal cover of K3 are odd paths, so 0 is always an
# eigenvalue of the ball, yet 0 is not an eigenvalue of the infinite path.
# This is why the probe only illustrates and never decides.
for r in range(1, 7):
    ball = build_cover_ball(complete_graph(3), "1", r).ball
    rep = spectral_probe(ball, ThetaSpec.rational(0))
    print(f"K3 ball r={r}: {ball.n:2d} vertices, distance of 0 from the spectrum {rep.min_distance:.3g}")

# the other way round: -1 is an eigenvalue of the universal cover of the
# bowtie, but a truncated ball can lose it, depending on where it is cut
for r in (2, 4, 6):
    ball = build_cover_ball(g, "3", r).ball
    rep = spectral_probe(ball, minus_one)
    print(f"bowtie ball r={r}: {ball.n:4d} vertices, eigenvalues at -1: {rep.count_within_tolerance},"
          f" nearest {np.round(rep.nearest[:3], 6)}")
