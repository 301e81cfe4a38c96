"""Direct products, quotients, factor congruence pairs, and decomposition.

A factor pair is two congruences joining to the total relation, meeting in
the identity, and permuting under relational composition; exactly then the
natural map a ↦ ([a]Θ, [a]Φ) is an isomorphism onto the product of the two
quotients.  All three conditions are machine-checked on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import Algebra
from .congruence import (
    Congruence,
    CongruenceLattice,
    compose_masks,
    congruence_lattice,
    is_congruence,
    join2,
    meet2,
    normalize_partition,
)
from .errors import NotACongruence, SignatureMismatch, SizeGuardExceeded

ISO_GUARD = 12


def direct_product(A1: Algebra, A2: Algebra) -> Algebra:
    """Componentwise product; element (i, j) has index i*|A2|+j."""
    if A1.signature != A2.signature:
        raise SignatureMismatch(
            f"signatures differ: {A1.signature.symbols} vs {A2.signature.symbols}"
        )
    n1, n2 = A1.n, A2.n
    labels = tuple(
        f"({A1.labels[i]},{A2.labels[j]})" for i in range(n1) for j in range(n2)
    )
    enc = lambda i, j: i * n2 + j
    ops = []
    for (name, arity), t1, t2 in zip(A1.signature.symbols, A1.tables, A2.tables):
        if arity == 0:
            ops.append((name, 0, enc(t1, t2)))
        elif arity == 1:
            ops.append(
                (name, 1, [enc(t1[i], t2[j]) for i in range(n1) for j in range(n2)])
            )
        else:
            table = [
                [
                    enc(t1[i][k], t2[j][l])
                    for k in range(n1)
                    for l in range(n2)
                ]
                for i in range(n1)
                for j in range(n2)
            ]
            ops.append((name, 2, table))
    return Algebra(labels, ops)


def quotient(A: Algebra, theta) -> Algebra:
    """Quotient algebra on blocks; well-definedness comes from compatibility."""
    theta = normalize_partition(theta, A.n)
    ok, violation = is_congruence(A, theta)
    if not ok:
        raise NotACongruence(f"partition is not compatible: {violation!r}")
    blocks = theta.blocks()
    block_index = {b[0]: i for i, b in enumerate(blocks)}
    cls = lambda a: block_index[theta.rep[a]]
    labels = tuple("{" + ",".join(A.labels[e] for e in b) + "}" for b in blocks)
    ops = []
    for (name, arity), table in zip(A.signature.symbols, A.tables):
        if arity == 0:
            ops.append((name, 0, cls(table)))
        elif arity == 1:
            ops.append((name, 1, [cls(table[b[0]]) for b in blocks]))
        else:
            ops.append(
                (name, 2, [[cls(table[b[0]][c[0]]) for c in blocks] for b in blocks])
            )
    return Algebra(labels, ops)


@dataclass(frozen=True)
class FactorPair:
    theta: Congruence
    phi: Congruence

    def __post_init__(self):
        n = self.theta.n
        if not join2(self.theta, self.phi).is_total:
            raise ValueError("factor pair must join to the total congruence")
        if not meet2(self.theta, self.phi).is_identity:
            raise ValueError("factor pair must meet in the identity congruence")
        if compose_masks(self.theta, self.phi) != compose_masks(self.phi, self.theta):
            raise ValueError("factor pair congruences must permute")

    @property
    def nontrivial(self) -> bool:
        return not (
            self.theta.is_identity
            or self.theta.is_total
            or self.phi.is_identity
            or self.phi.is_total
        )


def factor_pairs(A: Algebra, lattice: CongruenceLattice | None = None) -> tuple[FactorPair, ...]:
    """Every unordered pair (Θ, Φ) with join ∇, meet Δ, permuting composition."""
    lat = lattice or congruence_lattice(A)
    cons = lat.congruences
    out = []
    for i in range(len(cons)):
        for j in range(i, len(cons)):
            t, p = cons[i], cons[j]
            if not join2(t, p).is_total or not meet2(t, p).is_identity:
                continue
            if compose_masks(t, p) != compose_masks(p, t):
                continue
            out.append(FactorPair(t, p))
    return tuple(out)


@dataclass(frozen=True)
class Decomposition:
    indecomposable: bool
    left: Algebra | None = None
    right: Algebra | None = None
    pair: FactorPair | None = None
    embedding: tuple[tuple[int, int], ...] | None = None  # a ↦ (left block, right block)


def decompose(A: Algebra, guard: int = ISO_GUARD) -> Decomposition:
    """Split off the first nontrivial factor pair (fewest blocks first).

    The natural map into the product of the two quotients is rebuilt and
    verified to be a bijective homomorphism before returning.
    """
    if A.n > guard:
        raise SizeGuardExceeded(f"decompose guarded at {guard} elements (carrier {A.n})")
    lat = congruence_lattice(A)
    candidates = [fp for fp in factor_pairs(A, lat) if fp.nontrivial]
    if not candidates:
        return Decomposition(True)
    candidates.sort(key=lambda fp: (fp.theta.num_blocks, fp.theta.rep, fp.phi.rep))
    fp = candidates[0]
    left = quotient(A, fp.theta)
    right = quotient(A, fp.phi)
    lb = {b[0]: i for i, b in enumerate(fp.theta.blocks())}
    rb = {b[0]: i for i, b in enumerate(fp.phi.blocks())}
    embedding = tuple(
        (lb[fp.theta.rep[a]], rb[fp.phi.rep[a]]) for a in range(A.n)
    )
    if len(set(embedding)) != A.n or left.n * right.n != A.n:
        raise AssertionError("natural map is not a bijection; factor pair check is broken")
    prod = direct_product(left, right)
    enc = lambda ij: ij[0] * right.n + ij[1]
    for (name, arity), table in zip(A.signature.symbols, A.tables):
        if arity == 0:
            assert enc(embedding[table]) == prod.constant(name)
        elif arity == 1:
            for a in range(A.n):
                assert enc(embedding[table[a]]) == prod.table(name)[enc(embedding[a])]
        else:
            for a in range(A.n):
                for b in range(A.n):
                    assert (
                        enc(embedding[table[a][b]])
                        == prod.table(name)[enc(embedding[a])][enc(embedding[b])]
                    )
    return Decomposition(False, left, right, fp, embedding)


# -- isomorphism search -----------------------------------------------------------


def _refine_colors(A1: Algebra, A2: Algebra) -> tuple[list[int], list[int]]:
    """Joint colour refinement; equal colours are necessary for iso images."""
    n1, n2 = A1.n, A2.n

    def initial(A: Algebra):
        cols = []
        for x in range(A.n):
            parts = []
            for (name, arity), table in zip(A.signature.symbols, A.tables):
                if arity == 0:
                    parts.append(("c", name, table == x))
            cols.append(tuple(parts))
        return cols

    def step(A: Algebra, r: list[int]):
        out = []
        for x in range(A.n):
            parts: list = [r[x]]
            for (name, arity), table in zip(A.signature.symbols, A.tables):
                if arity == 1:
                    parts.append(r[table[x]])
                elif arity == 2:
                    parts.append(tuple(sorted((r[table[x][y]], r[y]) for y in range(A.n))))
                    parts.append(tuple(sorted((r[table[y][x]], r[y]) for y in range(A.n))))
            out.append(tuple(parts))
        return out

    c1, c2 = initial(A1), initial(A2)
    while True:
        # colours within one round share a shape, so plain tuple order works
        order = {v: i for i, v in enumerate(sorted(set(c1) | set(c2)))}
        r1 = [order[v] for v in c1]
        r2 = [order[v] for v in c2]
        n1c, n2c = step(A1, r1), step(A2, r2)
        # refinement only ever splits classes; a stable count means a fixpoint
        if len(set(n1c) | set(n2c)) == len(set(c1) | set(c2)):
            return r1, r2
        c1, c2 = n1c, n2c


def find_isomorphism(
    A1: Algebra, A2: Algebra, guard: int = ISO_GUARD
) -> tuple[int, ...] | None:
    """Lexicographically first isomorphism A1 → A2, or None.

    Backtracking assigns images in index order with colour-refinement pruning
    and forward propagation through every operation whose arguments are
    already mapped.
    """
    if A1.signature != A2.signature:
        raise SignatureMismatch("cannot compare algebras over different signatures")
    if A1.n != A2.n:
        return None
    if A1.n > guard:
        raise SizeGuardExceeded(f"isomorphism search guarded at {guard} elements")
    n = A1.n
    col1, col2 = _refine_colors(A1, A2)
    if sorted(col1) != sorted(col2):
        return None
    binaries = [
        (A1.table(name), A2.table(name))
        for (name, arity) in A1.signature.symbols
        if arity == 2
    ]
    unaries = [
        (A1.table(name), A2.table(name))
        for (name, arity) in A1.signature.symbols
        if arity == 1
    ]
    constants = [
        (A1.constant(name), A2.constant(name))
        for (name, arity) in A1.signature.symbols
        if arity == 0
    ]

    fwd = [-1] * n
    bwd = [-1] * n

    def bind(x: int, y: int, trail: list[int]) -> bool:
        """Set fwd[x]=y with consistency propagation; record x on the trail."""
        if fwd[x] != -1:
            return fwd[x] == y
        if bwd[y] != -1 or col1[x] != col2[y]:
            return False
        fwd[x] = y
        bwd[y] = x
        trail.append(x)
        for t1, t2 in unaries:
            if not bind(t1[x], t2[y], trail):
                return False
        for t1, t2 in binaries:
            for z in range(n):
                if fwd[z] != -1:
                    if not bind(t1[x][z], t2[y][fwd[z]], trail):
                        return False
                    if not bind(t1[z][x], t2[fwd[z]][y], trail):
                        return False
        return True

    def undo(trail: list[int], mark: int) -> None:
        while len(trail) > mark:
            x = trail.pop()
            bwd[fwd[x]] = -1
            fwd[x] = -1

    trail: list[int] = []
    for c1v, c2v in constants:
        if not bind(c1v, c2v, trail):
            return None

    def search(x: int) -> bool:
        while x < n and fwd[x] != -1:
            x += 1
        if x == n:
            return True
        for y in range(n):
            if bwd[y] == -1 and col1[x] == col2[y]:
                mark = len(trail)
                if bind(x, y, trail) and search(x + 1):
                    return True
                undo(trail, mark)
        return False

    if search(0):
        return tuple(fwd)
    return None


def kernel_of_projection(A1: Algebra, A2: Algebra, which: int) -> Congruence:
    """Kernel congruence of the first (0) or second (1) projection of A1×A2."""
    n1, n2 = A1.n, A2.n
    if which == 0:
        rep = [ (i * n2) for i in range(n1) for j in range(n2) ]
    else:
        rep = [ j for i in range(n1) for j in range(n2) ]
    return Congruence(tuple(rep))


def is_directly_decomposable_congruence(
    A1: Algebra, A2: Algebra, theta
) -> tuple[bool, tuple[Congruence, Congruence] | None]:
    """Search Con(A1) × Con(A2) for a pair whose product relation equals θ."""
    prod = direct_product(A1, A2)
    theta = normalize_partition(theta, prod.n)
    ok, violation = is_congruence(prod, theta)
    if not ok:
        raise NotACongruence(f"input is not a congruence of the product: {violation!r}")
    n2 = A2.n
    lat1 = congruence_lattice(A1).congruences
    lat2 = congruence_lattice(A2).congruences
    for c1, c2 in product(lat1, lat2):
        rep = tuple(
            c1.rep[i] * n2 + c2.rep[j] for i in range(A1.n) for j in range(n2)
        )
        if rep == theta.rep:
            return True, (c1, c2)
    return False, None
