"""Exact inhomogeneous minima: reduction, finite orbits, and m values.

Run:  python demos/exact_minima.py
"""

from fractions import Fraction as F

from euclidmin import (compute_M, m_exact, make_field, make_sconfig, orbit,
                       reduce_mod, search_lower)

q = make_field([-1, 1])
z = q.maximal_order()
s23 = make_sconfig(q, [2, 3])

print("== canonical reduction into the fundamental domain ==\n")
for x in (F(13, 10), F(7, 10), F(-1, 5)):
    rho, gam = reduce_mod(z, make_sconfig(q, [2]), q.from_rational(x))
    print(f"  {x} = {rho.as_rational()} + {gam.as_rational()}   "
          "(representative + shift in Z[1/2])")

print("\n== finite unit orbits of rational classes ==\n")
for den in (5, 7):
    orb = orbit(z, s23, q.from_rational(F(1, den)))
    print(f"  orbit of 1/{den} under <-1, 2, 3>: size {len(orb)}: "
          f"{[str(o.as_rational()) for o in orb]}")

print("\n== exact minima (no floats anywhere) ==\n")
cases = [
    ("Q,  a = Z,       S = {inf}", z, make_sconfig(q, []), F(1, 2)),
    ("Q,  a = Z[1/2],  S = {inf,2}", z, make_sconfig(q, [2]), F(1, 3)),
    ("Q,  a = Z[1/6],  S = {inf,2,3}", z, s23, F(1, 5)),
]
for label, ideal, sconfig, x in cases:
    mv = m_exact(ideal, sconfig, q.from_rational(x))
    print(f"  {label}:  m({x}) = {mv.value}, attained at shift "
          f"{mv.attaining_shift.as_rational()}")

ki = make_field([1, 0, 1])
si = make_sconfig(ki, [])
half = (ki.one() + ki.gen()) * F(1, 2)
print(f"  Q(i), a = Z[i], S = S_inf:  m((1+i)/2) = "
      f"{m_exact(ki.maximal_order(), si, half).value}")

km5 = make_field([5, 0, 1])
sm5 = make_sconfig(km5, [])
w = (km5.one() + km5.gen()) * F(1, 2)
print(f"  Q(sqrt-5), a = O, S = S_inf:  m((1+sqrt-5)/2) = "
      f"{m_exact(km5.maximal_order(), sm5, w).value}   (>= 1!)")

print("\n== two-sided bounds on the supremum over all classes ==\n")
xi, mv, orb_size = search_lower(z, s23, 10)
print(f"  best witness with denominator <= 10: m({xi.as_rational()}) = {mv.value}")
rep = compute_M(z, s23, F(1, 100), budget=40000)
print(f"  compute_M: {rep.lower} <= M <= {rep.upper}   "
      f"(witness {rep.witness.as_rational()}, exact flag: {rep.exact})")
print(f"  covering certificate at t = {rep.certificate.threshold} with "
      f"{len(rep.certificate.entries)} boxes")
