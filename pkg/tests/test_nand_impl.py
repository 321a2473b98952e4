"""Exclusion-plus-implication pipeline: branching stages and the solver."""

import itertools
import random

import pytest

from sparsekis import (
    CspInstance,
    IMPL,
    NAND2,
    balance_partition,
    build_groups,
    brute_solve_csp,
    remove_two_cycles,
    restrict_instance,
    solve_nand_impl,
    solve_restricted,
)
from sparsekis.csp import build_impl_structure


def yes(phi: CspInstance, k: int) -> bool:
    return brute_solve_csp(phi, k) is not None


def random_nand_impl(rng, n, m_nand, m_impl):
    cons = []
    seen = set()
    while len(cons) < m_nand:
        vs = tuple(rng.sample(range(1, n + 1), 2))
        key = ("n", frozenset(vs))
        if key in seen:
            m_nand -= 1
            continue
        seen.add(key)
        cons.append((NAND2, vs))
    while len(cons) < m_nand + m_impl:
        vs = tuple(rng.sample(range(1, n + 1), 2))
        key = ("i", vs)
        if key in seen:
            m_impl -= 1
            continue
        seen.add(key)
        cons.append((IMPL, vs))
    return CspInstance(n, tuple(cons))


def test_restrict_no_heavy_single_emission():
    phi = CspInstance(5, ((NAND2, (1, 2)), (IMPL, (3, 4))))
    out = list(restrict_instance(phi, 3))
    assert len(out) == 1
    branch, k_i = out[0]
    assert k_i == 3 and branch.n == 5


def test_restrict_cone_consumes_budget():
    # v's cone is {v, a, b}; guessing it in leaves nothing to spend.
    phi = CspInstance(3, ((IMPL, (1, 2)), (IMPL, (1, 3))))
    budgets = sorted(k_i for _, k_i in restrict_instance(phi, 3))
    assert 0 in budgets


def test_restrict_output_is_light():
    rng = random.Random(51)
    for _ in range(20):
        n = rng.randint(4, 9)
        phi = random_nand_impl(rng, n, rng.randint(0, 4), rng.randint(0, 6))
        for branch, k_i in restrict_instance(phi, rng.randint(0, 4)):
            st = build_impl_structure(branch)
            assert all(
                len(st.descendants[v]) <= 2 for v in range(1, branch.n + 1)
            )
            assert k_i >= 0


def test_restrict_decision_preserving():
    rng = random.Random(52)
    for _ in range(30):
        n = rng.randint(4, 8)
        phi = random_nand_impl(rng, n, rng.randint(0, 4), rng.randint(0, 6))
        for k in (2, 3):
            want = yes(phi, k)
            got = any(
                yes(branch, k_i) if k_i <= branch.n else False
                for branch, k_i in restrict_instance(phi, k)
            )
            assert got == want


def test_two_cycle_with_nand_drops_pair():
    # Mutually implying yet mutually exclusive: neither can be true.
    phi = CspInstance(4, (
        (IMPL, (1, 2)), (IMPL, (2, 1)), (NAND2, (1, 2)),
    ))
    out = list(remove_two_cycles(phi, 2))
    assert len(out) == 1
    branch, k_j = out[0]
    assert k_j == 2 and branch.n == 2
    assert {branch.label_of(v) for v in range(1, 3)} == {3, 4}


def test_two_cycles_taken_whole():
    phi = CspInstance(5, ((IMPL, (1, 2)), (IMPL, (2, 1))))
    got = {(k_j, branch.n) for branch, k_j in remove_two_cycles(phi, 2)}
    # Either the pair is dropped (both deleted, full budget) or taken
    # (both deleted into the solution, budget falls by two).
    assert got == {(2, 3), (0, 3)}


def test_two_cycle_decision_preserving():
    rng = random.Random(53)
    for _ in range(30):
        n = rng.randint(6, 9)
        cons = [(IMPL, (1, 2)), (IMPL, (2, 1)), (IMPL, (3, 4)), (IMPL, (4, 3))]
        seen = set()
        for _ in range(rng.randint(0, 4)):
            vs = tuple(rng.sample(range(1, n + 1), 2))
            if frozenset(vs) in seen or frozenset(vs) in (
                frozenset((1, 2)), frozenset((3, 4))
            ):
                continue
            seen.add(frozenset(vs))
            cons.append((NAND2, vs))
        phi = CspInstance(n, tuple(cons))
        for k in (2, 3, 4):
            want = yes(phi, k)
            got = any(
                k_j <= branch.n and yes(branch, k_j)
                for branch, k_j in remove_two_cycles(phi, k)
            )
            assert got == want


def test_groups_pure_nand_single_pool():
    phi = CspInstance(4, ((NAND2, (1, 2)), (NAND2, (3, 4))))
    gp = build_groups(phi)
    assert gp.v_0 == frozenset({1, 2, 3, 4})
    assert gp.v_r == frozenset() and gp.v_l == frozenset()
    assert gp.groups == ((None, frozenset({1, 2, 3, 4})),)


def test_groups_star():
    phi = CspInstance(4, ((IMPL, (1, 3)), (IMPL, (2, 3))))
    gp = build_groups(phi)
    assert gp.v_r == frozenset({3})
    assert gp.v_l == frozenset({1, 2})
    assert gp.v_0 == frozenset({4})
    assert (3, frozenset({1, 2, 3})) in gp.groups


def test_groups_partition_variables():
    rng = random.Random(54)
    for _ in range(25):
        n = rng.randint(5, 10)
        phi = random_nand_impl(rng, n, rng.randint(0, 4), rng.randint(0, 5))
        for branch, k_i in restrict_instance(phi, 3):
            for b2, _ in remove_two_cycles(branch, k_i):
                gp = build_groups(b2)
                seen: set[int] = set()
                for _, members in gp.groups:
                    assert not (members & seen)
                    seen |= members
                assert seen == set(range(1, b2.n + 1))


def test_groups_escape_is_solution():
    phi = CspInstance(6, ((IMPL, (1, 3)), (IMPL, (2, 3)), (NAND2, (4, 5))))
    gp = build_groups(phi, k=3)
    # The star group holds a full weight-3 solution: sink plus sources.
    assert gp.escape == frozenset({1, 2, 3})
    assert phi.satisfied_by(gp.escape)


def test_groups_reject_heavy_and_cycles():
    heavy = CspInstance(3, ((IMPL, (1, 2)), (IMPL, (1, 3))))
    with pytest.raises(ValueError):
        build_groups(heavy)
    cyc = CspInstance(2, ((IMPL, (1, 2)), (IMPL, (2, 1))))
    with pytest.raises(ValueError):
        build_groups(cyc)


def test_balance_five_singletons():
    bins = balance_partition((1, 1, 1, 1, 1))
    sums = [sum(1 for _ in b) for b in bins]
    assert sorted(sums) == [1, 1, 1]
    assert sorted(i for b in bins for i in b) == [1, 2, 3]


def test_balance_two_parts_leaves_bins_empty():
    assert balance_partition((2, 2)) == ([], [], [])


def test_balance_requires_sorted():
    with pytest.raises(ValueError):
        balance_partition((3, 1, 2))


def test_balance_imbalance_bound():
    rng = random.Random(55)
    for _ in range(40):
        parts = sorted(rng.randint(1, 7) for _ in range(rng.randint(3, 9)))
        bins = balance_partition(parts)
        sums = [sum(parts[i - 1] for i in b) for b in bins]
        assert max(sums) - min(sums) <= parts[-3]
        binned = sorted(i for b in bins for i in b)
        assert binned == list(range(1, len(parts) - 1))


def test_solver_examples():
    phi = CspInstance(5, ((IMPL, (1, 2)), (NAND2, (2, 3))))
    assert solve_nand_impl(phi, 3)
    tri = CspInstance(3, ((NAND2, (1, 2)), (NAND2, (1, 3)), (NAND2, (2, 3))))
    assert not solve_nand_impl(tri, 2)
    assert solve_nand_impl(tri, 1)
    empty = CspInstance(4, ())
    for k in range(5):
        assert solve_nand_impl(empty, k)
    assert not solve_nand_impl(empty, 5)


def test_solve_restricted_matches_oracle():
    rng = random.Random(56)
    for _ in range(30):
        n = rng.randint(4, 9)
        phi = random_nand_impl(rng, n, rng.randint(0, 5), rng.randint(0, 3))
        structure = build_impl_structure(phi)
        if any(len(structure.descendants[v]) > 2 for v in range(1, n + 1)):
            continue
        if any(
            v in structure.descendants[u] and u in structure.descendants[v]
            for u, v in itertools.combinations(range(1, n + 1), 2)
        ):
            continue
        for k in range(0, 5):
            assert solve_restricted(phi, k) == yes(phi, k)


def test_solver_matches_oracle():
    rng = random.Random(57)
    for _ in range(60):
        n = rng.randint(4, 10)
        phi = random_nand_impl(rng, n, rng.randint(0, 6), rng.randint(0, 6))
        for k in range(0, 5):
            assert solve_nand_impl(phi, k) == yes(phi, k), (phi, k)
