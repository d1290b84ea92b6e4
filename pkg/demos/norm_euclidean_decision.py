"""Deciding norm-Euclidean ideal classes with replayable evidence.

Run:  python demos/norm_euclidean_decision.py
"""

from euclidmin import (decide_norm_euclidean, ideal_from_gens, make_field,
                       make_sconfig)

print("== four classical cases ==\n")

q = make_field([-1, 1])
s23 = make_sconfig(q, [2, 3])
verdict = decide_norm_euclidean(q.maximal_order(), s23, budget=30000)
print("Z[1/6] (Q with 2 and 3 inverted):", verdict.verdict)
print("  covering certificate:", len(verdict.certificate.entries), "boxes,",
      "replays:", verdict.replays(q.maximal_order(), s23))

ki = make_field([1, 0, 1])
si = make_sconfig(ki, [])
verdict = decide_norm_euclidean(ki.maximal_order(), si, budget=30000)
print("\nZ[i] (the Gaussian integers):", verdict.verdict)
print("  covering certificate:", len(verdict.certificate.entries), "boxes")

km5 = make_field([5, 0, 1])
sm5 = make_sconfig(km5, [])
verdict = decide_norm_euclidean(km5.maximal_order(), sm5, budget=30000)
print("\nZ[sqrt-5], trivial class:", verdict.verdict)
print("  witness: (1+sqrt-5)/2 has exact minimum",
      verdict.witness_minimum.value,
      "- no lattice shift ever gets the norm below N(a)")

a2 = ideal_from_gens([km5.from_rational(2), km5.one() + km5.gen()])
verdict = decide_norm_euclidean(a2, sm5, budget=60000)
print("\nZ[sqrt-5], class of (2, 1+sqrt-5):", verdict.verdict)
print("  the nontrivial ideal class IS norm-Euclidean even though the ring",
      "is not;")
print("  certificate:", len(verdict.certificate.entries), "boxes,",
      "replays:", verdict.replays(a2, sm5))
