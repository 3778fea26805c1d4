from fractions import Fraction

from hypothesis import strategies as st

from folcalc.algebra import MPoly, TSeries

small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
nonzero_rationals = small_rationals.filter(bool)


@st.composite
def polys(draw, variables=("x", "y"), max_degree=3, max_terms=5):
    n = len(variables)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exp = tuple(draw(st.lists(st.integers(0, max_degree), min_size=n, max_size=n)))
        if sum(exp) <= max_degree:
            terms[exp] = draw(small_rationals)
    return MPoly(variables, terms)


@st.composite
def series(draw, order=12, variables=("z",), const=None, linear=None, max_terms=5):
    """Truncated series; ``const``/``linear`` pin the first coefficients (one variable)."""
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        k = draw(st.integers(0, min(order, 6)))
        exp = (k,) if len(variables) == 1 else tuple(draw(st.lists(st.integers(0, 3), min_size=len(variables),
                                                                    max_size=len(variables))))
        terms[exp] = draw(small_rationals)
    if const is not None:
        terms[(0,) * len(variables)] = const
    if linear is not None:
        terms[(1,)] = linear
    return TSeries(MPoly(variables, terms), order)
