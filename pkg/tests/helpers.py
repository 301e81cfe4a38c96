"""Shared test utilities: independent oracles and hypothesis strategies.

The oracle functions deliberately avoid the library's bitset fast paths:
cones are recomputed with plain double loops over ``leq`` so that golden
values are checked through a second, dumber route.
"""

from __future__ import annotations

from hypothesis import strategies as st

from ordalg import Poset, build_poset
from ordalg.algebra import JOIN, MEET, Algebra
from ordalg.assign import (
    canonical_choice,
    join_table_from_choice,
    meet_table_from_choice,
)
from ordalg.enumeration import default_labels
from ordalg.poset import closure_rows


def idx(P: Poset, *labels: str):
    out = tuple(P.index(l) for l in labels)
    return out[0] if len(out) == 1 else out


def labset(P: Poset, members) -> set[str]:
    return {P.labels[i] for i in members}


def raw_lower(P: Poset, elems) -> set[int]:
    """Brute-force lower cone via pairwise leq only."""
    return {w for w in range(P.n) if all(P.leq(w, s) for s in elems)}


def raw_upper(P: Poset, elems) -> set[int]:
    return {w for w in range(P.n) if all(P.leq(s, w) for s in elems)}


def raw_greatest(P: Poset, members: set[int]) -> int | None:
    for z in members:
        if all(P.leq(w, z) for w in members):
            return z
    return None


def poset_from_index_pairs(n: int, pairs) -> Poset:
    """Poset from edges i<j (index order), via closure; always acyclic."""
    up = [0] * n
    for i, j in pairs:
        up[i] |= 1 << j
    up = closure_rows(up, n)
    down = [0] * n
    for x in range(n):
        m = up[x]
        while m:
            low = m & -m
            down[low.bit_length() - 1] |= 1 << x
            m ^= low
    return Poset(default_labels(n), down)


def meet_directoid(P: Poset, choice=None) -> Algebra:
    c = canonical_choice(P, "meet") if choice is None else choice
    return Algebra(P.labels, [(MEET, 2, meet_table_from_choice(P, c))])


def join_directoid(P: Poset, choice=None) -> Algebra:
    c = canonical_choice(P, "join") if choice is None else choice
    return Algebra(P.labels, [(JOIN, 2, join_table_from_choice(P, c))])


def lambda_algebra(P: Poset, meet=None, join=None) -> Algebra:
    mc = canonical_choice(P, "meet") if meet is None else meet
    jc = canonical_choice(P, "join") if join is None else join
    return Algebra(
        P.labels,
        [
            (JOIN, 2, join_table_from_choice(P, jc)),
            (MEET, 2, meet_table_from_choice(P, mc)),
        ],
    )


@st.composite
def posets(draw, min_n: int = 1, max_n: int = 6):
    n = draw(st.integers(min_n, max_n))
    if n == 1:
        return build_poset(["a"], [])
    pairs = draw(
        st.sets(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(
                lambda p: p[0] < p[1]
            ),
            max_size=n * (n - 1) // 2,
        )
    )
    return poset_from_index_pairs(n, pairs)


@st.composite
def bounded_posets(draw, max_inner: int = 4):
    """Posets with forced bottom and top (hence directed)."""
    inner = draw(posets(min_n=1, max_n=max_inner))
    n = inner.n + 2
    pairs = [(0, i + 1) for i in range(inner.n)] + [(i + 1, n - 1) for i in range(inner.n)]
    for x in range(inner.n):
        for y in range(inner.n):
            if x != y and inner.leq(x, y):
                pairs.append((x + 1, y + 1))
    return poset_from_index_pairs(n, pairs)
