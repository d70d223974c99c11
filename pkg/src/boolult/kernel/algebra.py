"""Finite complete Boolean algebras presented as powersets of their atoms.

An element is a bitmask over the atom indices.  Every finite Boolean
algebra is isomorphic to such a powerset, so the atom count is the whole
presentation.  Elements carry their algebra and refuse to mix with
elements of a different one.
"""
from __future__ import annotations

import contextlib
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

DEFAULT_MAX_ATOMS = 16
_limits = {"max_atoms": DEFAULT_MAX_ATOMS}


class SizeGuardError(ValueError):
    """A requested object exceeds a configured size bound."""


class AlgebraMismatchError(ValueError):
    """Operands belong to different algebras."""


def max_atoms() -> int:
    return _limits["max_atoms"]


def set_max_atoms(n: int) -> None:
    if n < 1:
        raise ValueError("atom cap must be positive")
    _limits["max_atoms"] = int(n)


@contextlib.contextmanager
def atom_limit(n: int):
    old = _limits["max_atoms"]
    set_max_atoms(n)
    try:
        yield
    finally:
        _limits["max_atoms"] = old


@dataclass(frozen=True)
class Algebra:
    n_atoms: int
    labels: tuple = field(default=())

    def __post_init__(self):
        if self.n_atoms < 1:
            raise ValueError("an algebra needs at least one atom")
        if self.n_atoms > max_atoms():
            raise SizeGuardError(
                f"{self.n_atoms} atoms exceeds the atom cap of {max_atoms()}")
        if not self.labels:
            object.__setattr__(self, "labels",
                               tuple(f"a{i}" for i in range(self.n_atoms)))
        elif len(self.labels) != self.n_atoms:
            raise ValueError("one label per atom")

    @property
    def full_mask(self) -> int:
        return (1 << self.n_atoms) - 1

    @property
    def size(self) -> int:
        return 1 << self.n_atoms

    @property
    def zero(self) -> "Element":
        return Element(self, 0)

    @property
    def one(self) -> "Element":
        return Element(self, self.full_mask)

    def atom(self, i: int) -> "Element":
        if not 0 <= i < self.n_atoms:
            raise IndexError(f"no atom {i}")
        return Element(self, 1 << i)

    def atoms(self) -> list["Element"]:
        return [self.atom(i) for i in range(self.n_atoms)]

    def element(self, atoms: Iterable[int]) -> "Element":
        mask = 0
        for i in atoms:
            if not 0 <= i < self.n_atoms:
                raise IndexError(f"no atom {i}")
            mask |= 1 << i
        return Element(self, mask)

    def from_mask(self, mask: int) -> "Element":
        if mask < 0 or mask > self.full_mask:
            raise ValueError(f"mask {mask} outside the algebra")
        return Element(self, mask)

    def elements(self) -> Iterator["Element"]:
        for m in range(self.size):
            yield Element(self, m)

    def nonzero(self) -> Iterator["Element"]:
        for m in range(1, self.size):
            yield Element(self, m)

    def join(self, els: Iterable["Element"]) -> "Element":
        return big_join(els, self)

    def meet(self, els: Iterable["Element"]) -> "Element":
        return big_meet(els, self)

    def maximal_antichains(self) -> Iterator["Antichain"]:
        for blocks in set_partitions(range(self.n_atoms)):
            yield Antichain(self, tuple(self.element(b) for b in blocks))


@dataclass(frozen=True)
class Element:
    algebra: Algebra
    mask: int

    def _same(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError(f"expected an Element, got {type(other).__name__}")
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatchError("operands come from different algebras")

    def __and__(self, other):
        self._same(other)
        return Element(self.algebra, self.mask & other.mask)

    def __or__(self, other):
        self._same(other)
        return Element(self.algebra, self.mask | other.mask)

    def __sub__(self, other):
        self._same(other)
        return Element(self.algebra, self.mask & ~other.mask)

    def __invert__(self):
        return Element(self.algebra, self.algebra.full_mask ^ self.mask)

    def __le__(self, other):
        self._same(other)
        return self.mask & ~other.mask == 0

    def __ge__(self, other):
        self._same(other)
        return other.mask & ~self.mask == 0

    def implies(self, other: "Element") -> "Element":
        return ~self | other

    def disjoint(self, other: "Element") -> bool:
        return (self & other).mask == 0

    @property
    def is_zero(self) -> bool:
        return self.mask == 0

    @property
    def is_one(self) -> bool:
        return self.mask == self.algebra.full_mask

    @property
    def atoms(self) -> tuple[int, ...]:
        return mask_atoms(self.mask)

    def __repr__(self):
        return "{" + ",".join(self.algebra.labels[i] for i in self.atoms) + "}"


def mask_atoms(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def meet(a: Element, b: Element) -> Element:
    return a & b


def join(a: Element, b: Element) -> Element:
    return a | b


def complement(a: Element) -> Element:
    return ~a


def big_join(els: Iterable[Element], algebra: Algebra | None = None) -> Element:
    out = None
    for e in els:
        out = e if out is None else out | e
    if out is None:
        if algebra is None:
            raise ValueError("empty join needs an algebra")
        return algebra.zero
    if algebra is not None:
        out._same(algebra.zero)
    return out


def big_meet(els: Iterable[Element], algebra: Algebra | None = None) -> Element:
    out = None
    for e in els:
        out = e if out is None else out & e
    if out is None:
        if algebra is None:
            raise ValueError("empty meet needs an algebra")
        return algebra.one
    return out


def set_partitions(items: Iterable) -> Iterator[list[tuple]]:
    """All set partitions of ``items``, blocks in first-occurrence order."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [(first,)] + part
        for k in range(len(part)):
            yield part[:k] + [(first,) + part[k]] + part[k + 1:]


# ---------------------------------------------------------------- antichains

@dataclass(frozen=True)
class Antichain:
    """Pairwise disjoint nonzero elements, kept sorted by mask."""

    algebra: Algebra
    elements: tuple[Element, ...]

    def __post_init__(self):
        els = tuple(sorted(self.elements, key=lambda e: e.mask))
        seen = 0
        for e in els:
            e._same(self.algebra.zero)
            if e.is_zero:
                raise ValueError("antichain members must be nonzero")
            if e.mask & seen:
                raise ValueError("antichain members must be pairwise disjoint")
            seen |= e.mask
        object.__setattr__(self, "elements", els)

    @property
    def is_maximal(self) -> bool:
        return big_join(self.elements, self.algebra).is_one

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def index(self, e: Element) -> int:
        return self.elements.index(e)

    def above(self, b: Element) -> Element:
        """The unique member above a nonzero ``b`` that lies below one."""
        for a in self.elements:
            if b <= a:
                return a
        raise ValueError(f"{b!r} lies below no member")

    def refines(self, other: "Antichain") -> bool:
        return all(any(c <= a for a in other.elements) for c in self.elements)

    def __repr__(self):
        return "Antichain(" + ", ".join(map(repr, self.elements)) + ")"


def is_maximal_antichain(els: Sequence[Element], algebra: Algebra) -> bool:
    try:
        return Antichain(algebra, tuple(els)).is_maximal
    except ValueError:
        return False


def common_refinement(A: Antichain, B: Antichain):
    """Nonzero pairwise meets of two maximal antichains.

    Returns ``(C, to_A, to_B)`` where the maps send each member of ``C`` to
    the member of ``A`` (resp. ``B``) above it.
    """
    A.elements[0]._same(B.elements[0])
    meets, to_a, to_b = [], {}, {}
    for a in A.elements:
        for b in B.elements:
            c = a & b
            if not c.is_zero:
                meets.append(c)
                to_a[c] = a
                to_b[c] = b
    return Antichain(A.algebra, tuple(meets)), to_a, to_b


def all_antichains(algebra: Algebra, maximal_only: bool = True) -> list[Antichain]:
    if maximal_only:
        return list(algebra.maximal_antichains())
    out = []
    n = algebra.n_atoms
    for covered in range(1, algebra.size):
        for blocks in set_partitions(mask_atoms(covered)):
            out.append(Antichain(algebra, tuple(algebra.element(b) for b in blocks)))
    return out


def powerset_masks(n: int) -> Iterator[int]:
    return iter(range(1 << n))


def subsets(seq: Sequence, proper: bool = False) -> Iterator[tuple]:
    n = len(seq)
    for r in range(0, n + (0 if proper else 1)):
        yield from itertools.combinations(seq, r)
