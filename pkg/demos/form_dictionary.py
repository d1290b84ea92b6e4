"""Binary quadratic forms and the ideal dictionary.

Run:  python demos/form_dictionary.py
"""

import random
from fractions import Fraction as F

from euclidmin import (BinaryQuadraticForm, bsd_check, form_from_ideal,
                       ideal_from_gens, m_form, make_field)

print("== the ideal -> form dictionary ==\n")
k2 = make_field([-2, 0, 1])
f8 = form_from_ideal(k2.maximal_order(), (k2.one(), k2.gen()))
print("Z[sqrt2], basis (1, sqrt2)       ->", f8, " disc", f8.disc)

ki = make_field([1, 0, 1])
fm4 = form_from_ideal(ki.maximal_order(), (ki.one(), ki.gen()))
print("Z[i], basis (1, i)               ->", fm4, " disc", fm4.disc)

km5 = make_field([5, 0, 1])
a = ideal_from_gens([km5.from_rational(2), km5.one() + km5.gen()])
fm20 = form_from_ideal(a, (km5.from_rational(2), km5.one() + km5.gen()))
print("(2, 1+sqrt-5) in Z[sqrt-5]       ->", fm20, " disc", fm20.disc)

print("\n== the norm identity behind the dictionary ==\n")
rng = random.Random(4)
x, y = rng.randint(-9, 9), rng.randint(-9, 9)
lhs = fm20(x, y) * 2
rhs = (km5.from_rational(2) * x + (km5.one() + km5.gen()) * y).norm()
print(f"f({x},{y}) * N(a) = {lhs} = N({x}*2 + {y}*(1+sqrt-5)) = {rhs}")

print("\n== exact inhomogeneous minima of forms ==\n")
print("m(x^2+y^2, (1/2,1/2))   =", m_form(fm4, (F(1, 2), F(1, 2))))
print("m(x^2-2y^2, (1/2,0))    =", m_form(f8, (F(1, 2), F(0))))
print("m(2x^2+2xy+3y^2, (1/2,1/2)) =", m_form(fm20, (F(1, 2), F(1, 2))))
print("(definite forms by ellipse enumeration,",
      "indefinite ones through the exact ideal minimum)")

print("\n== grid search for the form supremum, plus cross-checks ==\n")
report = bsd_check(f8, 8, 5)
print(f"x^2 - 2y^2, denominators <= 8: best lower bound "
      f"{report['lower_bound']} at P0 = "
      f"({report['candidate_point'][0]}, {report['candidate_point'][1]})")
print("dictionary route vs direct enumeration on sampled points:",
      "all equal" if report["all_equal"] else "MISMATCH")
for row in report["consistency"][:3]:
    print(f"  P = ({row['point'][0]}, {row['point'][1]}): "
          f"ideal route {row['ideal_route']}, direct {row['direct']}")
