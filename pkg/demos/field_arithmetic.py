"""Tour of the exact field layer: fields, elements, embeddings, ideals.

Run:  python demos/field_arithmetic.py
"""

from fractions import Fraction as F

from euclidmin import (elem_norm_trace, embed, ideal_from_gens, ideal_invert,
                       ideal_norm, make_field)

print("== number fields of degree <= 4, with certified maximal orders ==\n")
for coeffs, label in [
    ([1, 0, 1], "x^2 + 1            (Gaussian field)"),
    ([-5, 0, 1], "x^2 - 5            (note the half-integer basis)"),
    ([-1, -1, 0, 1], "x^3 - x - 1"),
    ([1, 1, 1, 1, 1], "x^4 + x^3 + x^2 + x + 1"),
]:
    k = make_field(coeffs)
    print(f"{label}")
    print(f"  degree {k.degree}, signature {k.signature}, "
          f"discriminant {k.discriminant}, index [O : Z[theta]] = {k.index}")

print("\n== exact norms and traces ==\n")
ki = make_field([1, 0, 1])
i = ki.gen()
x = ki.one() + i
print("N(1+i) =", elem_norm_trace(x)[0], "  Tr(1+i) =", elem_norm_trace(x)[1])
k2 = make_field([-2, 0, 1])
y = k2.one() + k2.gen()
print("N(1+sqrt2) =", y.norm(), "  Tr(1+sqrt2) =", y.trace())

print("\n== certified embeddings (interval Newton on the defining poly) ==\n")
box = embed(k2.gen(), F(1, 2**30))
for iv in box.reals:
    print(f"  sqrt2 embedding in [{float(iv.lo):.12f}, {float(iv.hi):.12f}]"
          f"  width {float(iv.width):.2e}")
print("  product of |embeddings| contains |N(sqrt2)| = 2:",
      embed(k2.gen(), F(1, 2**20)).norm_interval().contains(2))

print("\n== fractional ideals in Hermite normal form ==\n")
I = ideal_from_gens([ki.from_rational(2), ki.one() + i])
print("(2, 1+i) in Z[i]:", I, " norm:", ideal_norm(I))
print("equals (1+i):", I == ideal_from_gens([ki.one() + i]))
J = ideal_invert(I)
print("inverse:", J, " product is O:", I * J == ki.maximal_order())
