"""
Spectra of x^a + y^b against a lattice count
============================================

"""
from fractions import Fraction

from specjump.exact import parse_poly
from specjump.oracle import jump_sizes
from specjump.resolver import resolve_germ
from specjump.spectrum import spectrum_table


def lattice(a, b):
    out = {}
    for i in range(1, a):
        for j in range(1, b):
            v = Fraction(i, a) + Fraction(j, b)
            if v <= 1:
                out[v] = out.get(v, 0) + 1
    return out


for a, b in [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5)]:
    data = resolve_germ(parse_poly(f"x^{a} + y^{b}"))
    table = spectrum_table(data)
    # the colength oracle sees the same jumps below 1
    below = [v for v, _ in table if v < 1]
    oracle = jump_sizes(data, below)
    agree = table.as_dict() == lattice(a, b) and all(oracle[v] == table.get(v) for v in below)
    print(f"x^{a} + y^{b}: {len(data.exceptional)} blow-ups, spectrum {table}, matches lattice and oracle: {agree}")
