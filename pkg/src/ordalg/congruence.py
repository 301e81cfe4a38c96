"""Congruences of finite algebras, the congruence lattice, and term schemes.

Partitions are canonicalized as block-leader tuples (every element maps to
the least element of its block), so congruence equality is plain tuple
equality.  The lattice is generated by closing the principal congruences
under pairwise joins; an exhaustive partition scan doubles as a secondary
oracle under a size guard.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .algebra import CIRC, JOIN, MEET, ONE, STAR, Algebra
from .errors import BadPartition, MissingSymbol, SizeGuardExceeded
from .poset import bits
from .terms import App, Const, Eq, Forall, Report, Var, check_formula, render_formula

BRUTE_FORCE_GUARD = 12


@dataclass(frozen=True)
class Congruence:
    """Partition compatible with the owning algebra's operations."""

    rep: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "Congruence":
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n: int) -> "Congruence":
        return cls((0,) * n)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int) -> "Congruence":
        rep = [-1] * n
        for block in blocks:
            block = sorted(block)
            if not block:
                raise BadPartition("empty block")
            leader = block[0]
            for e in block:
                if not 0 <= e < n:
                    raise BadPartition(f"element {e} outside the carrier")
                if rep[e] != -1:
                    raise BadPartition(f"element {e} appears in two blocks")
                rep[e] = leader
        if -1 in rep:
            raise BadPartition(f"element {rep.index(-1)} missing from the partition")
        return cls(tuple(rep))

    def __post_init__(self):
        for i, r in enumerate(self.rep):
            if not 0 <= r <= i or self.rep[r] != r:
                raise BadPartition("rep tuple is not in leader-canonical form")

    @property
    def n(self) -> int:
        return len(self.rep)

    @property
    def num_blocks(self) -> int:
        return len(set(self.rep))

    @property
    def is_identity(self) -> bool:
        return all(r == i for i, r in enumerate(self.rep))

    @property
    def is_total(self) -> bool:
        return all(r == 0 for r in self.rep)

    def related(self, a: int, b: int) -> bool:
        return self.rep[a] == self.rep[b]

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: dict[int, list[int]] = {}
        for i, r in enumerate(self.rep):
            out.setdefault(r, []).append(i)
        return tuple(tuple(out[r]) for r in sorted(out))

    def block_of(self, a: int) -> tuple[int, ...]:
        r = self.rep[a]
        return tuple(i for i, s in enumerate(self.rep) if s == r)

    def block_masks(self) -> tuple[int, ...]:
        """Per element: bitset of its block."""
        masks: dict[int, int] = {}
        for i, r in enumerate(self.rep):
            masks[r] = masks.get(r, 0) | (1 << i)
        return tuple(masks[r] for r in self.rep)

    def refines(self, other: "Congruence") -> bool:
        return all(other.rep[i] == other.rep[self.rep[i]] for i in range(self.n))


def _canonical_rep(assign: Sequence) -> tuple[int, ...]:
    """Leader-canonical rep tuple from any hashable block-colouring."""
    leader: dict = {}
    rep = []
    for i, c in enumerate(assign):
        leader.setdefault(c, i)
        rep.append(leader[c])
    return tuple(rep)


def normalize_partition(partition, n: int) -> Congruence:
    """Accept a Congruence, a rep sequence, or iterable blocks."""
    if isinstance(partition, Congruence):
        if partition.n != n:
            raise BadPartition("partition is over a different carrier size")
        return partition
    if all(isinstance(e, int) for e in partition):
        if len(tuple(partition)) != n:
            raise BadPartition("rep sequence length differs from the carrier")
        return Congruence(_canonical_rep(tuple(partition)))
    return Congruence.from_blocks(partition, n)


# -- compatibility, principal congruences, generation ---------------------------


def is_congruence(A: Algebra, partition) -> tuple[bool, dict | None]:
    """Exhaustive compatibility check; returns a violating tuple on failure."""
    theta = normalize_partition(partition, A.n)
    rep = theta.rep
    n = A.n
    related_pairs = [
        (a, b) for a in range(n) for b in range(a + 1, n) if rep[a] == rep[b]
    ]
    for (name, arity), table in zip(A.signature.symbols, A.tables):
        if arity == 1:
            for a, b in related_pairs:
                if rep[table[a]] != rep[table[b]]:
                    return False, {"op": name, "args": ((a,), (b,)), "values": (table[a], table[b])}
        elif arity == 2:
            for a, b in related_pairs:
                for c in range(n):
                    if rep[table[a][c]] != rep[table[b][c]]:
                        return False, {
                            "op": name,
                            "args": ((a, c), (b, c)),
                            "values": (table[a][c], table[b][c]),
                        }
                    if rep[table[c][a]] != rep[table[c][b]]:
                        return False, {
                            "op": name,
                            "args": ((c, a), (c, b)),
                            "values": (table[c][a], table[c][b]),
                        }
    return True, None


def principal_congruence(A: Algebra, a: int, b: int) -> Congruence:
    """Least congruence collapsing (a, b): merge, then close under the
    one-variable translations of every operation until a fixpoint."""
    n = A.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    binaries = [t for (nm, ar), t in zip(A.signature.symbols, A.tables) if ar == 2]
    unaries = [t for (nm, ar), t in zip(A.signature.symbols, A.tables) if ar == 1]
    work = [(a, b)]
    while work:
        x, y = work.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[max(rx, ry)] = min(rx, ry)
        for t in unaries:
            work.append((t[x], t[y]))
        for t in binaries:
            tx, ty = t[x], t[y]
            for c in range(n):
                work.append((tx[c], ty[c]))
                work.append((t[c][x], t[c][y]))
    return Congruence(tuple(find(i) for i in range(n)))


def join2(c1: Congruence, c2: Congruence) -> Congruence:
    """Join = transitive closure of the union (itself a congruence)."""
    n = c1.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in (c1, c2):
        for i in range(n):
            ri, rr = find(i), find(c.rep[i])
            if ri != rr:
                parent[max(ri, rr)] = min(ri, rr)
    return Congruence(tuple(find(i) for i in range(n)))


def meet2(c1: Congruence, c2: Congruence) -> Congruence:
    return Congruence(_canonical_rep([(c1.rep[i], c2.rep[i]) for i in range(c1.n)]))


def compose_masks(c1: Congruence, c2: Congruence) -> tuple[int, ...]:
    """Relational composition c1∘c2 as per-element bitsets."""
    m1 = c1.block_masks()
    m2 = c2.block_masks()
    out = []
    for a in range(c1.n):
        acc = 0
        for b in bits(m1[a]):
            acc |= m2[b]
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class CongruenceLattice:
    congruences: tuple[Congruence, ...]
    join_table: tuple[tuple[int, ...], ...]
    meet_table: tuple[tuple[int, ...], ...]
    hasse: tuple[tuple[int, int], ...]
    validated: bool
    note: str = ""

    def __len__(self) -> int:
        return len(self.congruences)

    def index_of(self, c: Congruence) -> int:
        return self.congruences.index(c)

    @property
    def bottom_index(self) -> int:
        return self.index_of(Congruence.identity(self.congruences[0].n))

    @property
    def top_index(self) -> int:
        return self.index_of(Congruence.total(self.congruences[0].n))


def _generate_congruences(A: Algebra) -> list[Congruence]:
    n = A.n
    found: set[Congruence] = {Congruence.identity(n)}
    for a in range(n):
        for b in range(a + 1, n):
            found.add(principal_congruence(A, a, b))
    added = True
    while added:
        added = False
        snapshot = list(found)
        for c1, c2 in combinations(snapshot, 2):
            j = join2(c1, c2)
            if j not in found:
                found.add(j)
                added = True
    return sorted(found, key=lambda c: c.rep)


def _rgs_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All partitions of {0..n-1} as canonical rep tuples (restricted growth)."""
    assign = [0] * n

    def rec(i: int, maxc: int):
        if i == n:
            yield _canonical_rep(assign)
            return
        for c in range(maxc + 2):
            assign[i] = c
            yield from rec(i + 1, max(maxc, c))

    yield from rec(1, 0) if n > 0 else iter(())


def all_congruences_bruteforce(A: Algebra, guard: int = BRUTE_FORCE_GUARD) -> tuple[Congruence, ...]:
    """Partition-scan oracle: every compatible partition, by exhaustion."""
    if A.n > guard:
        raise SizeGuardExceeded(
            f"partition scan over {A.n} elements exceeds guard {guard}"
        )
    out = []
    for rep in _rgs_partitions(A.n):
        c = Congruence(rep)
        ok, _ = is_congruence(A, c)
        if ok:
            out.append(c)
    return tuple(sorted(out, key=lambda c: c.rep))


def congruence_lattice(
    A: Algebra, validate: bool = False, validate_guard: int = BRUTE_FORCE_GUARD
) -> CongruenceLattice:
    """All congruences with join/meet tables and the Hasse relation.

    Generation closes principal congruences under pairwise joins.  With
    ``validate`` the partition-scan oracle cross-checks completeness; when the
    carrier exceeds the guard the validation is skipped and flagged instead of
    raising, so generation still runs.
    """
    cons = _generate_congruences(A)
    validated = False
    note = ""
    if validate:
        if A.n <= validate_guard:
            brute = list(all_congruences_bruteforce(A, validate_guard))
            if brute != cons:
                raise AssertionError(
                    "closure-generated congruences disagree with the partition scan"
                )
            validated = True
        else:
            note = f"carrier {A.n} exceeds validation guard {validate_guard}; scan skipped"
    index = {c: i for i, c in enumerate(cons)}
    k = len(cons)
    join_t = [[0] * k for _ in range(k)]
    meet_t = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            jj = index[join2(cons[i], cons[j])]
            mm = index[meet2(cons[i], cons[j])]
            join_t[i][j] = join_t[j][i] = jj
            meet_t[i][j] = meet_t[j][i] = mm
    leq = [[cons[i].refines(cons[j]) for j in range(k)] for i in range(k)]
    hasse = []
    for i in range(k):
        for j in range(k):
            if i != j and leq[i][j]:
                if not any(
                    m != i and m != j and leq[i][m] and leq[m][j] for m in range(k)
                ):
                    hasse.append((i, j))
    return CongruenceLattice(
        tuple(cons),
        tuple(tuple(r) for r in join_t),
        tuple(tuple(r) for r in meet_t),
        tuple(hasse),
        validated,
        note,
    )


# -- congruence properties ---------------------------------------------------------


@dataclass(frozen=True)
class CongruenceProperties:
    permutable: bool
    distributive: bool
    arithmetical: bool
    weakly_regular: bool | None
    unit: int | None = None


def congruence_properties(
    A: Algebra,
    unit_constant: str | int | None = None,
    lattice: CongruenceLattice | None = None,
) -> CongruenceProperties:
    """Decide permutability, distributivity, arithmeticity and weak regularity
    by direct computation on the full congruence lattice."""
    if A.n > 64:
        raise SizeGuardExceeded("congruence properties guarded at carrier size 64")
    lat = lattice or congruence_lattice(A)
    cons = lat.congruences
    k = len(cons)

    permutable = True
    for i in range(k):
        for j in range(i + 1, k):
            if compose_masks(cons[i], cons[j]) != compose_masks(cons[j], cons[i]):
                permutable = False
                break
        if not permutable:
            break

    jt, mt = lat.join_table, lat.meet_table
    distributive = all(
        mt[i][jt[j][m]] == jt[mt[i][j]][mt[i][m]]
        for i in range(k)
        for j in range(k)
        for m in range(k)
    )

    weakly_regular: bool | None = None
    unit: int | None = None
    if unit_constant is not None:
        unit = unit_constant if isinstance(unit_constant, int) else A.constant(unit_constant)
        classes = [frozenset(c.block_of(unit)) for c in cons]
        weakly_regular = len(set(classes)) == k

    return CongruenceProperties(
        permutable, distributive, permutable and distributive, weakly_regular, unit
    )


# -- term schemes ------------------------------------------------------------------


def majority_term(a, b, c):
    return App(MEET, (App(MEET, (App(JOIN, (a, b)), App(JOIN, (b, c)))), App(JOIN, (c, a))))


def maltsev_term(sym: str, a, b, c):
    i = lambda u, v: App(sym, (u, v))
    return App(MEET, (i(i(a, b), c), i(i(c, b), a)))


def _numbered(formulas) -> tuple[tuple[str, Forall], ...]:
    return tuple(
        (f"{i}: {render_formula(f)}", f) for i, f in enumerate(formulas, start=1)
    )


def _majority_scheme() -> tuple[tuple[str, Forall], ...]:
    x, y = Var("x"), Var("y")
    m = majority_term
    return _numbered(
        (
            Forall(("x", "y"), Eq(m(x, x, y), x)),
            Forall(("x", "y"), Eq(m(x, y, x), x)),
            Forall(("x", "y"), Eq(m(y, x, x), x)),
        )
    )


def _maltsev_scheme(sym: str) -> tuple[tuple[str, Forall], ...]:
    x, y = Var("x"), Var("y")
    p = lambda a, b, c: maltsev_term(sym, a, b, c)
    return _numbered(
        (
            Forall(("x", "y"), Eq(p(x, x, y), y)),
            Forall(("x", "y"), Eq(p(y, x, x), y)),
        )
    )


def _weak_regularity_scheme(sym: str) -> tuple[tuple[str, Forall], ...]:
    """Two-step chain witnessing weak regularity with respect to the constant 1."""
    x, y = Var("x"), Var("y")
    one = Const(ONE)
    i = lambda a, b: App(sym, (a, b))
    t1 = lambda a, b: i(a, b)
    t2 = lambda a, b: i(b, a)
    s1 = lambda a, b, c, d: App(MEET, (i(a, d), c))
    s2 = lambda a, b, c, d: App(MEET, (i(b, c), d))
    formulas = (
        Forall(("x",), Eq(t1(x, x), one)),
        Forall(("x",), Eq(t2(x, x), one)),
        Forall(("x", "y"), Eq(s1(t1(x, y), one, x, y), x)),
        Forall(("x", "y"), Eq(s1(one, t1(x, y), x, y), s2(t2(x, y), one, x, y))),
        Forall(("x", "y"), Eq(s2(one, t2(x, y), x, y), y)),
    )
    return _numbered(formulas)


_PROFILE_SCHEMES: dict[str, tuple[tuple[str, str | None], ...]] = {
    "pc": (),
    "stone": (("majority", None),),
    "spc": (("majority", None),),
    "spc1": (("majority", None),),
    "sspc": (("majority", None), ("maltsev", CIRC), ("weak_regularity", CIRC)),
    "rpc": (("maltsev", STAR), ("weak_regularity", STAR)),
}


def _schemes_for_signature(A: Algebra) -> tuple[tuple[str, str | None], ...]:
    out: list[tuple[str, str | None]] = []
    if A.signature.has(JOIN, 2) and A.signature.has(MEET, 2):
        out.append(("majority", None))
    for sym in (STAR, CIRC):
        if A.signature.has(sym, 2) and A.signature.has(MEET, 2):
            out.append(("maltsev", sym))
            if A.signature.has(ONE, 0):
                out.append(("weak_regularity", sym))
    return tuple(out)


def verify_term_conditions(
    A: Algebra, profile: str | None = None
) -> dict[str, dict[str, Report]]:
    """Check the majority / Maltsev / weak-regularity schemes exhaustively.

    With a profile the scheme set is the one its theory supports; without
    one, every scheme expressible in the algebra's signature is tried.
    """
    if profile is None:
        selected = _schemes_for_signature(A)
    else:
        if profile not in _PROFILE_SCHEMES:
            raise ValueError(f"unknown profile {profile!r}")
        selected = _PROFILE_SCHEMES[profile]
    out: dict[str, dict[str, Report]] = {}
    for scheme, sym in selected:
        if scheme == "majority":
            needed = [(JOIN, 2), (MEET, 2)]
            identities = _majority_scheme()
            key = "majority"
        elif scheme == "maltsev":
            needed = [(sym, 2), (MEET, 2)]
            identities = _maltsev_scheme(sym)  # type: ignore[arg-type]
            key = f"maltsev({sym})"
        else:
            needed = [(sym, 2), (MEET, 2), (ONE, 0)]
            identities = _weak_regularity_scheme(sym)  # type: ignore[arg-type]
            key = f"weak_regularity({sym})"
        for s, a in needed:
            if not A.signature.has(s, a):
                raise MissingSymbol(f"scheme {key} needs {s!r}/{a}")
        out[key] = {name: check_formula(A, f) for name, f in identities}
    return out
