"""Build hard-looking instances whose answers are known by construction.

Each generator transplants a small source instance into a larger one
while preserving the decision at a stated budget, so the output can
grade a solver: the source is cheap to answer exhaustively, the output
is not supposed to be.
"""

import itertools

from sparsekis import (
    CspInstance,
    EQ2,
    Hypergraph,
    NAND2,
    OR2,
    brute_count_k_is,
    brute_solve_csp,
    build_less_than,
    gen_binary_hardness,
    gen_kis_sparse_lb,
    sparse_embed,
    u_min,
)

# A weight-window block: on these four variables no satisfying
# assignment has two or more trues.
cons = build_less_than(NAND2, 4, (1, 2, 3, 4))
sat_weights = sorted({
    r
    for r in range(5)
    for sub in itertools.combinations((1, 2, 3, 4), r)
    if all(f([1 if v in set(sub) else 0 for v in vs]) for f, vs in cons)
})
print(f"pairwise-exclusion block on 4 vars: threshold {u_min(NAND2)}, "
      f"satisfiable weights {sat_weights}")

# Sparsify a dense exclusion instance: fresh variables absorb the
# density, the decision at k=2 is untouched.
phi = CspInstance(4, tuple(
    (NAND2, p) for p in itertools.combinations(range(1, 5), 2)
))
out = sparse_embed(phi, NAND2, 1, 2, delta=2)
print(f"sparse embedding: {phi.n} vars / {phi.m} constraints -> "
      f"{out.n} vars / {out.m} constraints")
print(f"  weight-2 answers agree: "
      f"{(brute_solve_csp(phi, 2) is None) == (brute_solve_csp(out, 2) is None)}")

# Pad a 3-uniform hypergraph with universally adjacent vertices: the
# pads can never join an independent set, the count at k=3 survives.
hstar = Hypergraph(4, (frozenset({1, 2, 3}),))
padded = gen_kis_sparse_lb(hstar, 2)
print(f"padded hypergraph: {hstar.n} -> {padded.n} vertices, "
      f"3-IS counts {brute_count_k_is(hstar, 3)} vs "
      f"{brute_count_k_is(padded, 3)}")

# Hide an exclusion instance inside a different binary family.  The
# disjunction gadget costs one extra unit of weight, reported back.
src = CspInstance(3, ((NAND2, (1, 2)), (NAND2, (2, 3))))
for family in ((EQ2,), (OR2,)):
    hidden, shift = gen_binary_hardness(src, family, 1.5)
    same = (brute_solve_csp(src, 2) is None) == (
        brute_solve_csp(hidden, 2 + shift) is None
    )
    print(f"rewritten over {{{family[0].name}}}: weight shift {shift}, "
          f"decision preserved {same}")
