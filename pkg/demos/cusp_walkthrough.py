"""
The cusp x^2 + y^3 from resolution to spectrum
==============================================

"""
from fractions import Fraction

from specjump.exact import parse_poly
from specjump.multiplier import inner_coefficients, inner_jump_multiplicity, lct
from specjump.oracle import colength, valuation_order
from specjump.resolver import resolve_germ
from specjump.spectrum import spectrum_table, stratum_multiplicity

# three blow-ups separate the branch from the exceptional curves
f = parse_poly("x^2 + y^3")
data = resolve_germ(f)
for c in data.components:
    print(c.id, c.kind, "m =", c.m, "k =", c.k, "self =", c.self_intersection)

# the last curve is the valuation with ord x = 3, ord y = 2
print("ord_E3(x) =", valuation_order(data, "E3", parse_poly("x")))
print("ord_E3(y) =", valuation_order(data, "E3", parse_poly("y")))

print("lct =", lct(data))

# at 5/6 only E3 has multiplicity divisible by 6
a = Fraction(5, 6)
print("coefficients at 5/6:", inner_coefficients(data, a))
print("inner multiplicity:", inner_jump_multiplicity(data, a))
print("stratum multiplicity:", stratum_multiplicity(data, a))

# just below 5/6 the multiplier ideal is everything; at 5/6 it is the maximal ideal
print("colength just below:", colength(data, a - Fraction(1, 100)))
print("colength at 5/6:", colength(data, a))

print("spectrum on (0, 1]:", spectrum_table(data))
