"""Embeddings and hard-instance generators against double oracles."""

import itertools
import random

import pytest

from sparsekis import (
    ConstraintFunction,
    CspInstance,
    EQ2,
    Hypergraph,
    NAND2,
    OR2,
    brute_count_k_is,
    brute_solve_csp,
    build_less_than,
    decide_k_is,
    dense_embed,
    gen_binary_hardness,
    gen_kis_sparse_lb,
    gen_mixed_lb,
    sparse_embed,
    u_min,
)

NAND3 = ConstraintFunction("nand3", 3, (1,) * 7 + (0,))
AND2 = ConstraintFunction("and2", 2, (0, 0, 0, 1))
ATMOST1OF3 = ConstraintFunction(
    "atmost1of3", 3, tuple(1 if j.bit_count() <= 1 else 0 for j in range(8))
)


def block_satisfied(cons, trues):
    t = set(trues)
    return all(f([1 if v in t else 0 for v in vs]) for f, vs in cons)


def sat_weights(cons, block):
    out = set()
    for r in range(len(block) + 1):
        for sub in itertools.combinations(block, r):
            if block_satisfied(cons, sub):
                out.add(r)
    return out


def solutions(phi, k):
    return {
        frozenset(c)
        for c in itertools.combinations(range(1, phi.n + 1), k)
        if phi.satisfied_by(c)
    }


def test_less_than_pairwise_nands():
    block = (1, 2, 3, 4)
    cons = build_less_than(NAND2, 4, block)
    assert len(cons) == 6
    assert {tuple(sorted(vs)) for _, vs in cons} == {
        p for p in itertools.combinations(block, 2)
    }
    for r in range(5):
        for sub in itertools.combinations(block, r):
            assert block_satisfied(cons, sub) == (r <= 1)


def test_less_than_triples():
    block = tuple(range(1, 6))
    cons = build_less_than(NAND3, 5, block)
    assert len(cons) == 10
    assert sat_weights(cons, block) == {0, 1, 2}


def test_less_than_weight_gap_random():
    # 0-valid ternary tables with threshold 2 on a block of 6: the
    # satisfiable weights never meet [2, 3].
    rng = random.Random(61)
    found = 0
    while found < 10:
        table = [1] + [rng.randint(0, 1) for _ in range(7)]
        table[1] = table[2] = table[4] = 1  # no weight-1 violation
        f = ConstraintFunction("r3", 3, tuple(table))
        if u_min(f) != 2:
            continue
        found += 1
        block = tuple(range(1, 7))
        cons = build_less_than(f, 6, block)
        got = sat_weights(cons, block)
        assert {0, 1} <= got
        assert not (got & {2, 3})


def test_less_than_rejects_bad_functions():
    with pytest.raises(ValueError):
        build_less_than(OR2, 4, (1, 2, 3, 4))  # not 0-valid
    always = ConstraintFunction("true2", 2, (1, 1, 1, 1))
    with pytest.raises(ValueError):
        build_less_than(always, 4, (1, 2, 3, 4))  # nothing to forbid
    with pytest.raises(ValueError):
        build_less_than(NAND2, 1, (1,))
    with pytest.raises(ValueError):
        build_less_than(NAND2, 3, (1, 1, 2))


def test_dense_identity_when_arities_match():
    tri = CspInstance(3, ((NAND2, (1, 2)), (NAND2, (1, 3)), (NAND2, (2, 3))))
    out = dense_embed(tri, NAND2, 2, 2)
    assert out.n == 3 and out.constraints == tri.constraints


def test_dense_embed_triangle():
    tri = CspInstance(3, ((NAND2, (1, 2)), (NAND2, (1, 3)), (NAND2, (2, 3))))
    out = dense_embed(tri, ATMOST1OF3, 2.5, 2)
    assert out.n > 3
    assert solutions(out, 2) == solutions(tri, 2) == set()


def test_dense_embed_yes_instance():
    path = CspInstance(3, ((NAND2, (1, 2)), (NAND2, (2, 3))))
    out = dense_embed(path, ATMOST1OF3, 2.5, 2)
    assert solutions(out, 2) == solutions(path, 2) != set()
    # Fresh variables stay false in every surviving solution.
    for s in solutions(out, 2):
        assert max(s) <= 3


def test_dense_embed_random_equivalence():
    rng = random.Random(62)
    for _ in range(10):
        n = rng.randint(3, 5)
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        rng.shuffle(pairs)
        phi = CspInstance(
            n, tuple((NAND2, p) for p in pairs[: rng.randint(1, len(pairs))])
        )
        k = rng.randint(0, 3)
        out = dense_embed(phi, ATMOST1OF3, rng.choice([2.0, 2.5, 3.0]), k)
        assert bool(solutions(out, k)) == bool(solutions(phi, k))
        # Restricted to original variables the solution sets agree.
        kept = {s for s in solutions(out, k) if not s or max(s) <= n}
        assert kept == solutions(phi, k)


def test_dense_embed_parameter_errors():
    tri = CspInstance(3, ((NAND2, (1, 2)),))
    with pytest.raises(ValueError):
        dense_embed(tri, ATMOST1OF3, 1.5, 2)  # gamma below threshold
    with pytest.raises(ValueError):
        dense_embed(tri, ATMOST1OF3, 3.5, 2)  # gamma above arity
    with pytest.raises(ValueError):
        dense_embed(tri, OR2, 2.0, 2)  # not 0-valid
    bad = CspInstance(3, ((EQ2, (1, 2)),))
    with pytest.raises(ValueError):
        dense_embed(bad, ATMOST1OF3, 2.5, 2)  # source not exclusion-shaped


def test_sparse_embed_dense_nand_square():
    phi = CspInstance(4, tuple(
        (NAND2, p) for p in itertools.combinations(range(1, 5), 2)
    ))
    out = sparse_embed(phi, NAND2, 1, 2, delta=2)
    assert out.n == 20  # 16 fresh variables
    assert brute_solve_csp(phi, 2) is None
    assert brute_solve_csp(out, 2) is None


def test_sparse_embed_gamma_equals_delta():
    phi = CspInstance(4, tuple(
        (NAND2, p) for p in itertools.combinations(range(1, 5), 2)
    ))
    delta = 1.2924812503605778  # log_4 6, the instance's own exponent
    out = sparse_embed(phi, NAND2, delta, 2)
    assert solutions(out, 2) == solutions(phi, 2)


def test_sparse_embed_preserves_solutions():
    rng = random.Random(63)
    for _ in range(10):
        n = rng.randint(3, 5)
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        rng.shuffle(pairs)
        phi = CspInstance(
            n, tuple((NAND2, p) for p in pairs[: rng.randint(1, len(pairs))])
        )
        k = rng.choice([0, 2, 3])
        out = sparse_embed(phi, NAND2, 1.0, k, delta=1.5)
        assert solutions(out, k) == solutions(phi, k)
        for s in solutions(out, k):
            assert not s or max(s) <= n


def test_sparse_embed_higher_threshold_gadget():
    phi = CspInstance(4, ((NAND3, (1, 2, 3)), (NAND3, (2, 3, 4))))
    out = sparse_embed(phi, NAND3, 1.0, 3, delta=1.5)
    assert solutions(out, 3) == solutions(phi, 3)


def test_sparse_embed_parameter_errors():
    phi = CspInstance(4, ((NAND2, (1, 2)),))
    with pytest.raises(ValueError):
        sparse_embed(phi, NAND2, 0.5, 1)  # budget below threshold
    with pytest.raises(ValueError):
        sparse_embed(phi, NAND2, 2.0, 2)  # gamma above default delta
    with pytest.raises(ValueError):
        sparse_embed(phi, OR2, 1.0, 2)  # not 0-valid
    with pytest.raises(ValueError):
        sparse_embed(CspInstance(1, ()), NAND2, 1.0, 0)  # delta undefined


def test_kis_lb_single_edge():
    hstar = Hypergraph(4, (frozenset({1, 2, 3}),))
    out = gen_kis_sparse_lb(hstar, 2)
    assert out.n == 4 + 8  # ceil(4^1.5) padding vertices
    assert brute_count_k_is(out, 3) == brute_count_k_is(hstar, 3) == 3


def test_kis_lb_no_instance():
    full = Hypergraph(4, tuple(
        frozenset(c) for c in itertools.combinations(range(1, 5), 3)
    ))
    out = gen_kis_sparse_lb(full, 2)
    assert brute_count_k_is(out, 3) == 0
    ok, _ = decide_k_is(out, 3, want_witness=True)
    assert not ok


def test_kis_lb_pads_outside_witnesses():
    rng = random.Random(64)
    for _ in range(10):
        n = rng.randint(4, 7)
        edges = set()
        while len(edges) < 4:
            edges.add(frozenset(rng.sample(range(1, n + 1), 3)))
        hstar = Hypergraph(n, tuple(edges))
        out = gen_kis_sparse_lb(hstar, rng.choice([2.0, 2.5, 3.0]))
        for k in (3, 4):
            assert brute_count_k_is(out, k) == brute_count_k_is(hstar, k)
            ok, wit = decide_k_is(out, k, want_witness=True)
            assert ok == (brute_count_k_is(hstar, k) > 0)
            if ok:
                assert max(wit) <= n
                assert all(not e <= wit for e in out.edges)


def test_kis_lb_validation():
    with pytest.raises(ValueError):
        gen_kis_sparse_lb(Hypergraph(4, (frozenset({1, 2, 3}),)), 1.5)
    with pytest.raises(ValueError):
        gen_kis_sparse_lb(Hypergraph(4, (frozenset({1, 2}),)), 2.5)


def source_has_independent_transversal(parts, edges):
    bounds = []
    start = 1
    for s in parts:
        bounds.append(range(start, start + s))
        start += s
    for choice in itertools.product(*bounds):
        t = set(choice)
        if all(not e <= t for e in edges):
            return True
    return False


def test_mixed_lb_dense_tiny():
    parts = (2, 2, 2)
    edges = [frozenset({1, 3, 5}), frozenset({2, 4, 6})]
    H, k2 = gen_mixed_lb(parts, edges, 4, 3.5)
    assert k2 == 3
    # Part cliques are in place.
    for rng_ in ((1, 2), (3, 4), (5, 6)):
        assert frozenset(rng_) in set(H.edges)
    assert (brute_count_k_is(H, k2) > 0) == source_has_independent_transversal(
        parts, edges
    )


def test_mixed_lb_dense_extension_path():
    rng = random.Random(65)
    parts = (2, 2, 2, 2)
    for _ in range(8):
        edges = set()
        for _ in range(rng.randint(1, 5)):
            chosen_parts = rng.sample(range(4), 3)
            edges.add(frozenset(
                rng.choice([2 * p + 1, 2 * p + 2]) for p in chosen_parts
            ))
        H, k2 = gen_mixed_lb(parts, tuple(edges), 5, 3.5)
        assert k2 == 4 + 5 - 3 - 1
        assert (brute_count_k_is(H, k2) > 0) == (
            source_has_independent_transversal(parts, edges)
        )


def test_mixed_lb_padded_tiny():
    rng = random.Random(66)
    parts = (2, 2, 2)
    for _ in range(8):
        edges = set()
        for _ in range(rng.randint(1, 4)):
            edges.add(frozenset(
                rng.choice([2 * p + 1, 2 * p + 2]) for p in range(3)
            ))
        H, k2 = gen_mixed_lb(parts, tuple(edges), 4, 2.5)
        assert k2 == 3 + 4 - 3
        assert (brute_count_k_is(H, k2) > 0) == (
            source_has_independent_transversal(parts, edges)
        )


def test_mixed_lb_planted_yes():
    # No edge touches vertices (1, 3, 5), so that transversal survives.
    parts = (2, 2, 2)
    edges = [frozenset({2, 4, 6})]
    H, k2 = gen_mixed_lb(parts, edges, 4, 2.5)
    assert brute_count_k_is(H, k2) > 0


def test_mixed_lb_validation():
    with pytest.raises(ValueError):
        gen_mixed_lb((2, 2), [frozenset({1, 3})], 4, 1.5)
    with pytest.raises(ValueError):
        gen_mixed_lb((2, 0), [], 4, 2.5)
    with pytest.raises(ValueError):
        gen_mixed_lb((2, 2, 2), [frozenset({1, 2, 5})], 4, 2.5)  # same part
    with pytest.raises(ValueError):
        gen_mixed_lb((2, 2, 2), [frozenset({1, 3})], 4, 2.5)  # not uniform
    with pytest.raises(ValueError):
        gen_mixed_lb((2, 2, 2), [frozenset({1, 3, 5})], 3, 3.5)  # i <= r


def test_binary_hardness_eq_ring():
    phi = CspInstance(3, ((NAND2, (1, 2)), (NAND2, (2, 3))))
    out, s = gen_binary_hardness(phi, (EQ2,), 1.5)
    assert s == 0
    for k in range(4):
        assert solutions(out, k + s) == solutions(phi, k)


def test_binary_hardness_or_pair():
    phi = CspInstance(3, ((NAND2, (1, 2)), (NAND2, (2, 3))))
    out, s = gen_binary_hardness(phi, (OR2,), 1.5)
    assert s == 1
    for k in range(3):
        got = {frozenset(v for v in sol if v <= 3) for sol in solutions(out, k + s)}
        assert got == solutions(phi, k)
        for sol in solutions(out, k + s):
            assert len([v for v in sol if v <= 3]) == k


def test_binary_hardness_and_pair():
    phi = CspInstance(3, ((NAND2, (1, 2)),))
    out, s = gen_binary_hardness(phi, (AND2,), 1.5)
    assert s == 2
    for k in range(3):
        got = {frozenset(v for v in sol if v <= 3) for sol in solutions(out, k + s)}
        assert got == solutions(phi, k)


def test_binary_hardness_trivial_yes():
    out, s = gen_binary_hardness(CspInstance(3, ()), (EQ2,), 2)
    assert s == 0
    assert brute_solve_csp(out, 1) is not None


def test_binary_hardness_errors():
    phi = CspInstance(3, ((NAND2, (1, 2)),))
    with pytest.raises(ValueError):
        gen_binary_hardness(phi, (), 1.5)
    with pytest.raises(ValueError):
        gen_binary_hardness(phi, (NAND3,), 1.5)  # wrong arity
    with pytest.raises(ValueError):
        gen_binary_hardness(phi, (EQ2,), 0.5)
    with pytest.raises(ValueError):
        gen_binary_hardness(phi, (NAND2,), 1.5)  # no usable ring gadget
    with pytest.raises(ValueError):
        gen_binary_hardness(
            CspInstance(2, ((OR2, (1, 2)),)), (EQ2,), 1.5
        )  # source not exclusion-shaped


def test_size_bookkeeping_within_factor_four():
    hstar = Hypergraph(4, (frozenset({1, 2, 3}),))
    out = gen_kis_sparse_lb(hstar, 2)
    pads = out.n - hstar.n
    assert 8 <= pads <= 4 * 8
    assert out.m <= 4 * out.n**2 and 4 * out.m >= out.n**2

    tri = CspInstance(3, ((NAND2, (1, 2)), (NAND2, (1, 3)), (NAND2, (2, 3))))
    emb = dense_embed(tri, ATMOST1OF3, 2.5, 2)
    assert emb.n <= 4 * tri.n
    nominal = tri.n**2.5
    assert nominal / 4 <= emb.m <= 4 * nominal

    pairs = list(itertools.combinations(range(1, 11), 2))
    phi = CspInstance(10, tuple((NAND2, p) for p in pairs[:20]))
    out2 = sparse_embed(phi, NAND2, 2.0, 2, delta=2.0)
    assert out2.n <= 4 * (10 + 10)  # n + ceil(n^(delta/gamma))
    nominal2 = out2.n**2.0
    assert nominal2 / 4 <= out2.m <= 4 * nominal2
