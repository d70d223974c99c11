"""Morphisms, block subalgebras, products and two-step iterations."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .algebra import Algebra, Element, SizeGuardError, mask_atoms, max_atoms


@dataclass(frozen=True)
class Embedding:
    """Join-preserving map given by the image of each source atom."""

    source: Algebra
    target: Algebra
    images: tuple  # target mask for each source atom

    def __call__(self, b: Element) -> Element:
        b._same(self.source.zero)
        m = 0
        for i in b.atoms:
            m |= self.images[i]
        return Element(self.target, m)

    def is_homomorphism(self) -> bool:
        seen = 0
        for m in self.images:
            if m == 0 or m & seen:
                return False
            seen |= m
        return seen == self.target.full_mask

    def preimage(self, c: Element) -> Element | None:
        """The source element mapping onto ``c``, if ``c`` is in the image."""
        c._same(self.target.zero)
        m = 0
        covered = 0
        for i, img in enumerate(self.images):
            if img & c.mask == img:
                m |= 1 << i
                covered |= img
        return Element(self.source, m) if covered == c.mask else None


def is_complete_embedding(emb: Embedding) -> bool:
    """Injective homomorphism preserving the join of every family of elements."""
    if not emb.is_homomorphism():
        return False
    els = list(emb.source.elements())
    imgs = {e: emb(e) for e in els}
    if len(set(imgs.values())) != len(els):
        return False
    for e in els:
        if imgs[~e] != ~imgs[e]:
            return False
    # every family: the join of a family only depends on the union of masks,
    # but we walk all families to test the claim as stated
    n = len(els)
    for fam in range(1 << n):
        src = 0
        tgt = 0
        for k in range(n):
            if fam >> k & 1:
                src |= els[k].mask
                tgt |= imgs[els[k]].mask
        if imgs[Element(emb.source, src)].mask != tgt:
            return False
    return True


@dataclass(frozen=True)
class Projection:
    """Surjection onto the powerset of a subset of the source atoms."""

    source: Algebra
    target: Algebra
    kept: tuple  # target atom i is source atom kept[i]

    def __call__(self, b: Element) -> Element:
        b._same(self.source.zero)
        m = 0
        for i, a in enumerate(self.kept):
            if b.mask >> a & 1:
                m |= 1 << i
        return Element(self.target, m)

    def section(self, c: Element) -> Element:
        """The least preimage of ``c``."""
        c._same(self.target.zero)
        return Element(self.source, sum(1 << self.kept[i] for i in c.atoms))


# ---------------------------------------------------------------- subalgebras

@dataclass(frozen=True)
class Partition:
    algebra: Algebra
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        blocks = tuple(sorted(blocks))
        flat = [a for b in blocks for a in b]
        if any(not b for b in blocks):
            raise ValueError("partition blocks must be nonempty")
        if sorted(flat) != list(range(self.algebra.n_atoms)):
            raise ValueError("blocks must be disjoint and cover every atom")
        object.__setattr__(self, "blocks", blocks)

    def block_mask(self, k: int) -> int:
        return sum(1 << a for a in self.blocks[k])

    def block_of(self, atom: int) -> int:
        for k, b in enumerate(self.blocks):
            if atom in b:
                return k
        raise IndexError(atom)

    def as_algebra(self) -> tuple[Algebra, Embedding]:
        labels = tuple("+".join(self.algebra.labels[a] for a in b) for b in self.blocks)
        sub = Algebra(len(self.blocks), labels)
        return sub, Embedding(sub, self.algebra, tuple(self.block_mask(k) for k in range(len(self.blocks))))

    def contains(self, b: Element) -> bool:
        return all(b.mask & self.block_mask(k) in (0, self.block_mask(k))
                   for k in range(len(self.blocks)))


def subalgebra_elements(partition: Partition) -> frozenset:
    alg = partition.algebra
    masks = [partition.block_mask(k) for k in range(len(partition.blocks))]
    out = set()
    for r in range(len(masks) + 1):
        for combo in itertools.combinations(masks, r):
            out.add(Element(alg, sum(combo)))
    return frozenset(out)


def is_complete_subalgebra(elements: Iterable[Element], B: Algebra) -> bool:
    """Check a claimed element set: 0, 1, complements, meets and all joins."""
    S = frozenset(elements)
    for e in S:
        e._same(B.zero)
    if B.zero not in S or B.one not in S:
        return False
    for e in S:
        if ~e not in S:
            return False
    for x, y in itertools.combinations(S, 2):
        if (x & y) not in S or (x | y) not in S:
            return False
    # finite joins of arbitrary families reduce to pairwise joins; check the
    # full family join explicitly as well
    total = B.zero
    for e in S:
        total = total | e
    return total in S


def partition_from_elements(elements: Iterable[Element], B: Algebra) -> Partition | None:
    """Atoms of a complete subalgebra given by its elements."""
    S = [e for e in elements if not e.is_zero]
    if not is_complete_subalgebra(set(elements) | {B.zero}, B):
        return None
    atoms = [e for e in S if not any(f.mask != e.mask and f <= e for f in S)]
    return Partition(B, tuple(e.atoms for e in atoms))


# ---------------------------------------------------------------- products

def _check_size(n: int) -> None:
    if n > max_atoms():
        raise SizeGuardError(f"construction needs {n} atoms; cap is {max_atoms()}")


def product_algebra(B0: Algebra, B1: Algebra) -> tuple[Algebra, Embedding, Embedding]:
    """Atoms are pairs (i, j) at index i * |B1| + j."""
    n0, n1 = B0.n_atoms, B1.n_atoms
    _check_size(n0 * n1)
    labels = tuple(f"({B0.labels[i]},{B1.labels[j]})" for i in range(n0) for j in range(n1))
    P = Algebra(n0 * n1, labels)
    row = (1 << n1) - 1
    e0 = Embedding(B0, P, tuple(row << (i * n1) for i in range(n0)))
    e1 = Embedding(B1, P, tuple(sum(1 << (i * n1 + j) for i in range(n0)) for j in range(n1)))
    return P, e0, e1


def product_pair(P: Algebra, B0: Algebra, B1: Algebra, b: Element, c: Element) -> Element:
    """The rectangle b × c."""
    n1 = B1.n_atoms
    return P.element(i * n1 + j for i in b.atoms for j in c.atoms)


@dataclass(frozen=True)
class IterationAlgebra:
    algebra: Algebra
    base: Algebra
    fibers: tuple          # fiber algebra for each base atom
    pairs: tuple           # atom index -> (base atom, fiber atom)
    embedding: Embedding   # first-coordinate embedding of the base

    def index(self, a: int, e: int) -> int:
        return self.pairs.index((a, e))

    def fiber_embedding(self, a: int) -> Callable[[Element], Element]:
        """Send a fiber element c to {(a, e) : e in c}."""
        def f(c: Element) -> Element:
            return self.algebra.element(self.index(a, e) for e in c.atoms)
        return f


def iteration_algebra(B0: Algebra, fiber: Mapping[int, Algebra] | Callable[[int], Algebra]) -> IterationAlgebra:
    get = fiber if callable(fiber) else fiber.__getitem__
    fibers = tuple(get(a) for a in range(B0.n_atoms))
    pairs = tuple((a, e) for a in range(B0.n_atoms) for e in range(fibers[a].n_atoms))
    _check_size(len(pairs))
    labels = tuple(f"({B0.labels[a]},{fibers[a].labels[e]})" for a, e in pairs)
    alg = Algebra(len(pairs), labels)
    images = tuple(sum(1 << k for k, (a, _) in enumerate(pairs) if a == i) for i in range(B0.n_atoms))
    return IterationAlgebra(alg, B0, fibers, pairs, Embedding(B0, alg, images))
