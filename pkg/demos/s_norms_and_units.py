"""Places, exact S-norms, verified S-units, and shrinking units.

Run:  python demos/s_norms_and_units.py
"""

from fractions import Fraction as F

from euclidmin import (make_field, make_sconfig, places_above, s_norm,
                       shrinking_unit, valuation)

q = make_field([-1, 1])
ki = make_field([1, 0, 1])

print("== splitting of rational primes in Q(i) ==\n")
for p in (2, 3, 5, 13):
    places = places_above(ki, p)
    kinds = ", ".join(f"e={v.e} f={v.f}" for v in places)
    print(f"  p={p:>2}: {len(places)} place(s)  [{kinds}]")

print("\n== exact valuations ==\n")
v2 = places_above(ki, 2)[0]
print("  v_(1+i)(2) =", valuation(ki.from_rational(2), v2))
print("  v_(1+i)(1+i) =", valuation(ki.one() + ki.gen(), v2))

print("\n== the S-norm is an exact rational ==\n")
s23 = make_sconfig(q, [2, 3])
for x in (F(6), F(1, 5), F(40, 9)):
    print(f"  N_S({x}) = {s_norm(q.from_rational(x), s23)}   "
          f"(S = {{inf, 2, 3}} over Q)")

print("\n== verified S-unit basis ==\n")
print("  generators:", [u.as_rational() for u in s23.unit_gens],
      " torsion order:", s23.torsion[1])
print("  each has S-norm 1:",
      all(s_norm(u, s23) == 1 for u in s23.unit_gens))

print("\n== shrinking units: small everywhere except one chosen place ==\n")
for w in s23.places:
    eps = shrinking_unit(s23, w)
    print(f"  big only at {w}: eps = {eps.as_rational()}")

print("\n== the same machinery over a quadratic field ==\n")
k2 = make_field([-2, 0, 1])
s2 = make_sconfig(k2, [7])
print("  Q(sqrt2), S = {both real places, both places over 7}: rank",
      s2.rank())
print("  unit generators (fundamental unit plus one per prime):",
      [list(u.coords) for u in s2.unit_gens])
