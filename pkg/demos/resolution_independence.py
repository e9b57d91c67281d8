"""
Extra blow-ups change the resolution but not the answer
========================================================

"""
import random

from specjump.exact import parse_poly
from specjump.multiplier import inner_spectrum, lct
from specjump.resdata import extra_blowup, validate
from specjump.resolver import resolve_germ
from specjump.spectrum import spectrum_table, verify_theorem

data = resolve_germ(parse_poly("(x^2 - y^3)*(x^3 - y^2)"))
print("start:", len(data.exceptional), "exceptional curves, lct", lct(data))
print("spectrum:", spectrum_table(data))

rng = random.Random(7)
for step in range(5):
    cid = rng.choice([c.id for c in data.exceptional])
    data = extra_blowup(data, cid)
    new = data.exceptional[-1]
    print(f"blow up a free point of {cid}: new {new.id} with m = {new.m}, k = {new.k};",
          "identities hold" if not validate(data) else validate(data))

# lct, both tables and the oracle are unchanged
print("lct", lct(data), "inner", inner_spectrum(data), "stratum", spectrum_table(data))
print("verify passes:", verify_theorem(data).passed)
