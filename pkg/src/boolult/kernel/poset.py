"""Finite posets, their regular-open completions, and the topological oracle.

Order convention: ``le(p, q)`` means p is below q, and lower nodes are
stronger conditions.  Two nodes are compatible when they have a common
lower bound.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator

from .algebra import Algebra, Element, SizeGuardError

POSET_NODE_CAP = 12


@dataclass(frozen=True)
class Poset:
    nodes: tuple
    leq: frozenset = field(default=frozenset())

    def __post_init__(self):
        nodes = tuple(self.nodes)
        if len(set(nodes)) != len(nodes):
            raise ValueError("duplicate poset nodes")
        if not nodes:
            raise ValueError("a poset needs at least one node")
        if len(nodes) > POSET_NODE_CAP:
            raise SizeGuardError(f"{len(nodes)} nodes exceeds the poset cap {POSET_NODE_CAP}")
        idx = {p: i for i, p in enumerate(nodes)}
        n = len(nodes)
        below = [[i == j for j in range(n)] for i in range(n)]
        for a, b in self.leq:
            if a not in idx or b not in idx:
                raise ValueError(f"order pair ({a!r}, {b!r}) names an unknown node")
            below[idx[a]][idx[b]] = True
        for k in range(n):
            for i in range(n):
                if below[i][k]:
                    for j in range(n):
                        if below[k][j]:
                            below[i][j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if below[i][j] and below[j][i]:
                    raise ValueError(f"order is not antisymmetric at {nodes[i]!r}, {nodes[j]!r}")
        closed = frozenset((nodes[i], nodes[j]) for i in range(n) for j in range(n) if below[i][j])
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "leq", closed)

    def __len__(self):
        return len(self.nodes)

    def le(self, p, q) -> bool:
        return (p, q) in self.leq

    def cone(self, p) -> frozenset:
        """Everything at or below ``p``."""
        return frozenset(q for q in self.nodes if (q, p) in self.leq)

    def upset(self, p) -> frozenset:
        return frozenset(q for q in self.nodes if (p, q) in self.leq)

    def compatible(self, p, q) -> bool:
        return bool(self.cone(p) & self.cone(q))

    def minimal_elements(self) -> tuple:
        return tuple(p for p in self.nodes if self.cone(p) == {p})

    def is_separative(self) -> bool:
        """p ≤ q iff every r ≤ p is compatible with q."""
        for p in self.nodes:
            for q in self.nodes:
                forced = all(self.compatible(r, q) for r in self.cone(p))
                if forced != self.le(p, q):
                    return False
        return True

    def is_antichain(self, nodes: Iterable) -> bool:
        nodes = list(nodes)
        return all(not self.compatible(p, q) for p, q in itertools.combinations(nodes, 2))

    def maximal_antichains(self) -> list[frozenset]:
        """Sets of pairwise incompatible nodes that every node is compatible with."""
        out = []
        ns = self.nodes
        for r in range(1, len(ns) + 1):
            for combo in itertools.combinations(ns, r):
                if not self.is_antichain(combo):
                    continue
                if all(any(self.compatible(p, a) for a in combo) for p in ns):
                    out.append(frozenset(combo))
        return out

    def is_filter(self, F: Iterable) -> bool:
        F = frozenset(F)
        if not F:
            return False
        for p in F:
            if not self.upset(p) <= F:
                return False
        for p, q in itertools.combinations(F, 2):
            if not (self.cone(p) & self.cone(q) & F):
                return False
        return True

    def filters(self) -> list[frozenset]:
        ns = self.nodes
        out = []
        for r in range(1, len(ns) + 1):
            for combo in itertools.combinations(ns, r):
                if self.is_filter(combo):
                    out.append(frozenset(combo))
        return out

    def maximal_filters(self) -> list[frozenset]:
        fs = self.filters()
        return [F for F in fs if not any(F < G for G in fs)]


def poset_from_json(doc: dict) -> Poset:
    nodes = doc["nodes"]
    leq = frozenset((a, b) for a, b in doc.get("leq", []))
    return Poset(tuple(nodes), leq)


def all_posets(n: int) -> Iterator[Poset]:
    """Every labeled partial order on nodes 0..n-1."""
    pairs = list(itertools.combinations(range(n), 2))
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        rel = set()
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                rel.add((i, j))
            elif c == 2:
                rel.add((j, i))
        if _transitive(rel):
            yield Poset(tuple(range(n)), frozenset(rel))


def _transitive(rel: set) -> bool:
    for a, b in rel:
        for c, d in rel:
            if b == c and a != d and (a, d) not in rel:
                return False
    return True


def random_poset(n: int, rng: random.Random, density: float = 0.35) -> Poset:
    """Random order: a random DAG on a shuffled linear order, then closed."""
    perm = list(range(n))
    rng.shuffle(perm)
    rel = set()
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                rel.add((perm[i], perm[j]))
    return Poset(tuple(range(n)), frozenset(rel))


# ---------------------------------------------------------------- completion

@dataclass(frozen=True)
class ROCompletion:
    poset: Poset
    algebra: Algebra
    atom_nodes: tuple          # atom i corresponds to minimal node atom_nodes[i]
    embedding: dict            # node -> Element
    separative: bool

    def e(self, p) -> Element:
        return self.embedding[p]


def ro_completion(P: Poset) -> ROCompletion:
    """Regular-open algebra via minimal elements.

    In the cone topology int(cl(U)) is the set of nodes all of whose
    minimal elements lie in U, so regular open sets are determined by the
    minimal elements they contain.
    """
    mins = P.minimal_elements()
    alg = Algebra(len(mins), tuple(f"m{m}" for m in mins))
    pos = {m: i for i, m in enumerate(mins)}
    emb = {}
    for p in P.nodes:
        emb[p] = alg.element(pos[m] for m in mins if P.le(m, p))
    return ROCompletion(P, alg, mins, emb, P.is_separative())


@dataclass(frozen=True)
class ROOracle:
    poset: Poset
    algebra: Algebra
    regular_opens: tuple       # all regular open sets, as frozensets of nodes
    atom_sets: tuple           # the atoms of the lattice of regular opens
    embedding: dict            # node -> Element of ``algebra``


def _closure(P: Poset, U: frozenset) -> frozenset:
    return frozenset(p for p in P.nodes if P.cone(p) & U)


def _interior(P: Poset, S: frozenset) -> frozenset:
    return frozenset(p for p in P.nodes if P.cone(p) <= S)


def down_sets(P: Poset) -> list[frozenset]:
    ns = P.nodes
    out = []
    for mask in range(1 << len(ns)):
        S = frozenset(ns[i] for i in range(len(ns)) if mask >> i & 1)
        if all(P.cone(p) <= S for p in S):
            out.append(S)
    return out


def ro_oracle(P: Poset) -> ROOracle:
    """Regular opens by brute force: down-closed U with int(cl(U)) = U."""
    regs = [U for U in down_sets(P) if _interior(P, _closure(P, U)) == U]
    nonempty = [U for U in regs if U]
    atoms = [U for U in nonempty if not any(V < U for V in nonempty)]
    atoms.sort(key=lambda U: sorted(map(repr, U)))
    alg = Algebra(len(atoms), tuple(f"r{i}" for i in range(len(atoms))))
    emb = {}
    for p in P.nodes:
        reg = _interior(P, _closure(P, P.cone(p)))
        emb[p] = alg.element(i for i, A in enumerate(atoms) if A <= reg)
    return ROOracle(P, alg, tuple(regs), tuple(atoms), emb)


def ro_isomorphism(c: ROCompletion, o: ROOracle) -> dict | None:
    """Atom bijection carrying e(p) to the oracle's image of p, or None.

    Atoms are matched by the set of nodes they lie below; the bijection
    then has to transport every e(p) and the element counts must agree.
    """
    if c.algebra.n_atoms != o.algebra.n_atoms:
        return None
    if len(o.regular_opens) != o.algebra.size:
        return None

    def signature(emb, n):
        return {i: frozenset(p for p, e in emb.items() if e.mask >> i & 1) for i in range(n)}

    sc = signature(c.embedding, c.algebra.n_atoms)
    so = signature(o.embedding, o.algebra.n_atoms)
    inv = {}
    for j, s in so.items():
        if s in inv:
            return None
        inv[s] = j
    bij = {}
    for i, s in sc.items():
        if s not in inv:
            return None
        bij[i] = inv[s]
    if len(set(bij.values())) != len(bij):
        return None
    for p in c.poset.nodes:
        mapped = o.algebra.element(bij[i] for i in c.embedding[p].atoms)
        if mapped != o.embedding[p]:
            return None
    return bij


def is_dense_embedding(c: ROCompletion) -> bool:
    """Order preserving, nonzero, and every atom lies below some e(p)."""
    P = c.poset
    for p in P.nodes:
        if c.e(p).is_zero:
            return False
        for q in P.nodes:
            if P.le(p, q) and not c.e(p) <= c.e(q):
                return False
    for a in c.algebra.atoms():
        if not any(c.e(p) <= a for p in P.nodes):
            return False
    return True
