from fractions import Fraction

from hypothesis import strategies as st

from ratderiv.numeric import GaussianRational, Polynomial

small_fracs = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))
gaussians = st.builds(GaussianRational, small_fracs, small_fracs)
polys = st.lists(gaussians, max_size=5).map(Polynomial)


def G(re, im=0):
    return GaussianRational(re, im)
