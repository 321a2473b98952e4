"""Constructive solvers for the sparse regime.

Below the density cutoff a greedy sweep suffices: repeatedly take a
lowest-degree vertex and discard its neighborhood, or, in the constraint
setting, a variable whose incident constraints are all slack enough to
absorb setting it true.  Both abstain rather than guess when the
instance is too dense for the guarantee.
"""

from __future__ import annotations

from typing import Optional

from .csp import ConstraintFunction, CspInstance, specialize, u_min
from .hypergraph import Graph

__all__ = [
    "find_k_is_sparse",
    "specialize",
    "sparse_csp_solve",
    "NO_GUARANTEE",
]

#: Returned by sparse_csp_solve when its density premise fails; callers
#: fall through to the general solvers.
NO_GUARANTEE = None


def find_k_is_sparse(G: Graph, k: int) -> Optional[frozenset[int]]:
    """Greedy independent k-set: take a minimum-degree vertex, drop its
    closed neighborhood, repeat.

    Succeeds on every graph with m <= n^2 / (2 k^2); on denser graphs it
    may return None when the vertices run out early.  Ties go to the
    smallest vertex id, and any returned set is verified independent.
    """
    if k < 0:
        raise ValueError(f"negative k {k}")
    if k == 0:
        return frozenset()
    premise = 2 * k * k * G.m <= G.n * G.n
    adj = {v: set() for v in range(1, G.n + 1)}
    for e in G.edges:
        u, v = sorted(e)
        adj[u].add(v)
        adj[v].add(u)
    alive = set(adj)
    edges_left = G.m
    chosen: list[int] = []
    for i in range(k):
        if not alive:
            return None
        if premise:
            rounds_left = k - i
            assert (
                2 * rounds_left * rounds_left * edges_left <= len(alive) ** 2
            ), "density invariant broken under the premise"
        v = min(alive, key=lambda u: (len(adj[u]), u))
        chosen.append(v)
        for u in list(adj[v]) + [v]:
            if u not in alive:
                continue
            alive.discard(u)
            for w in adj[u]:
                if w in alive:
                    adj[w].discard(u)
                    edges_left -= 1
            adj[u] = set()
    picked = frozenset(chosen)
    assert G.is_independent(picked), "greedy produced a dependent set"
    return picked


def sparse_csp_solve(phi: CspInstance, k: int) -> Optional[frozenset[int]]:
    """Build a weight-k solution of a 0-valid instance greedily, or abstain.

    Requires every constraint function to be 0-valid.  The guarantee
    needs each table's constraint count m_f to satisfy
    2 k |F| m_f <= n^u_min(f); when that gate fails, or some round finds
    no variable whose incident constraints are slack (no incidences at
    tables with u_min 1, and per-table degree at most |F| m_f / n), the
    answer is NO_GUARANTEE.  Rounds set the chosen variable true and
    specialize its constraints, interning the resulting tables.  Any
    returned assignment is verified against phi.
    """
    for f, _ in phi.constraints:
        if f.table[0] != 1:
            raise ValueError(f"function {f.name!r} is not 0-valid")
    if k < 0:
        raise ValueError(f"negative k {k}")
    if k > phi.n:
        return NO_GUARANTEE
    if k == 0:
        return frozenset()

    # Interned state: constraints refer to table keys; per-variable
    # incidence lists drive both selection and specialization.
    def key_of(f: ConstraintFunction) -> tuple[int, tuple[int, ...]]:
        return (f.arity, f.table)

    tables: dict[tuple[int, tuple[int, ...]], ConstraintFunction] = {}
    umin: dict[tuple[int, tuple[int, ...]], int] = {}
    class_count: dict[tuple[int, tuple[int, ...]], int] = {}
    cons: list[Optional[tuple[tuple[int, tuple[int, ...]], tuple[int, ...]]]] = []
    incidence: dict[int, set[int]] = {v: set() for v in range(1, phi.n + 1)}
    per_var: dict[int, dict[tuple[int, tuple[int, ...]], int]] = {
        v: {} for v in range(1, phi.n + 1)
    }

    def intern(f: ConstraintFunction) -> tuple[int, tuple[int, ...]]:
        kf = key_of(f)
        if kf not in tables:
            tables[kf] = f
            umin[kf] = u_min(f)
        return kf

    def add_constraint(kf: tuple[int, tuple[int, ...]], vs: tuple[int, ...]) -> None:
        cid = len(cons)
        cons.append((kf, vs))
        class_count[kf] = class_count.get(kf, 0) + 1
        for v in vs:
            incidence[v].add(cid)
            per_var[v][kf] = per_var[v].get(kf, 0) + 1

    def drop_constraint(cid: int) -> None:
        kf, vs = cons[cid]  # type: ignore[misc]
        cons[cid] = None
        class_count[kf] -= 1
        if class_count[kf] == 0:
            del class_count[kf]
        for v in vs:
            incidence[v].discard(cid)
            per_var[v][kf] -= 1
            if per_var[v][kf] == 0:
                del per_var[v][kf]

    for f, vs in phi.constraints:
        add_constraint(intern(f), vs)

    n0 = phi.n
    n_families = max(1, len(class_count))
    for kf, m_f in class_count.items():
        if 2 * k * n_families * m_f > n0 ** umin[kf]:
            return NO_GUARANTEE

    alive = set(range(1, phi.n + 1))
    chosen: list[int] = []
    for _ in range(k):
        families = max(1, len(class_count))
        n_i = len(alive)
        pick = None
        for v in sorted(alive):
            ok = True
            for kf, d in per_var[v].items():
                if umin[kf] == 1:
                    ok = False
                    break
                if d * n_i > families * class_count.get(kf, 0):
                    ok = False
                    break
            if ok:
                pick = v
                break
        if pick is None:
            return NO_GUARANTEE
        chosen.append(pick)
        for cid in list(incidence[pick]):
            kf, vs = cons[cid]  # type: ignore[misc]
            f = tables[kf]
            pos = vs.index(pick) + 1
            g = specialize(f, pos, 1)
            drop_constraint(cid)
            if g.is_constant_true:
                continue
            assert not g.is_constant_false, "0-validity lost during specialization"
            rest = tuple(v for v in vs if v != pick)
            add_constraint(intern(g), rest)
        alive.discard(pick)

    picked = frozenset(chosen)
    assert len(picked) == k
    assert phi.satisfied_by(picked), "greedy assignment fails verification"
    return picked
