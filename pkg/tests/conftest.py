import os
import sympy
from hypothesis import settings

settings.register_profile("exact", max_examples=25, deadline=None)
settings.register_profile("stress", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "exact"))


def to_sympy(f):
    """Independent sympy image of a Poly over QQ."""
    syms = sympy.symbols(f.ring.names)
    out = sympy.Integer(0)
    for e, c in f.terms.items():
        term = sympy.Rational(c)
        for s, k in zip(syms, e):
            term *= s**k
        out += term
    return sympy.expand(out)
