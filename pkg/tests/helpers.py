from cwcalc.chow import poly_from_terms
from cwcalc.polynomial import bslnc_table


def zpoly(n, terms):
    """Integral polynomial from {"th*c2": 3, ...}."""
    return poly_from_terms(bslnc_table(n), terms, "Z")


def f2(n, *monomials):
    """Mod-2 polynomial as a sum of the given monomials."""
    terms = {}
    for m in monomials:
        terms[m] = terms.get(m, 0) + 1
    return poly_from_terms(bslnc_table(n), terms, "F2")
