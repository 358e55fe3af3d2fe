from fractions import Fraction

from hypothesis import strategies as st

from cover_spectra.exact import GaussianRational
from cover_spectra.multigraph import Edge, MultiGraph

SMALL = [Fraction(w) for w in ("0", "1", "-1", "2", "-2", "1/2", "-1/2")]
RHO = [GaussianRational.of(w) for w in SMALL if w] + [
    GaussianRational(Fraction(0), Fraction(1)),
    GaussianRational(Fraction(1), Fraction(-1)),
]


@st.composite
def multigraphs(draw, min_n=1, max_n=6, max_edges=9, loops=True, complex_rho=True):
    n = draw(st.integers(min_n, max_n))
    ids = [str(k) for k in range(1, n + 1)]
    weights = draw(st.lists(st.sampled_from(SMALL), min_size=n, max_size=n))
    pairs = [(a, b) for a in ids for b in ids if a < b or (loops and a == b)]
    if not pairs:
        return MultiGraph(list(zip(ids, weights)))
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=max_edges))
    rhos = RHO if complex_rho else RHO[:6]
    edges = [Edge(f"e{k + 1}", u, v, draw(st.sampled_from(rhos))) for k, (u, v) in enumerate(chosen)]
    return MultiGraph(list(zip(ids, weights)), edges)
