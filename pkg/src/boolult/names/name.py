"""B-names over a finite algebra.

A name is a finite set of pairs ⟨σ, b⟩ with σ a name and b an element.
Entries are stored sorted and deduplicated so that equality of names is
structural equality of their canonical form.  Values are kept as masks
inside names; ``pairs()`` hands them out as Elements.
"""
from __future__ import annotations

from typing import Iterable, Mapping

from ..kernel.algebra import Algebra, AlgebraMismatchError, Antichain, Element
from .hf import EMPTY, HFSet, encode_atoms


class Name:
    __slots__ = ("algebra", "entries", "rank", "key", "_hash")

    def __init__(self, algebra: Algebra, pairs: Iterable = ()):
        seen = set()
        for sub, b in pairs:
            if not isinstance(sub, Name):
                raise TypeError("entries must pair a Name with an element")
            if sub.algebra != algebra:
                raise AlgebraMismatchError("sub-name over a different algebra")
            if isinstance(b, Element):
                b._same(algebra.zero)
                m = b.mask
            else:
                m = int(b)
                if m < 0 or m > algebra.full_mask:
                    raise ValueError(f"mask {m} outside the algebra")
            seen.add((sub, m))
        entries = tuple(sorted(seen, key=lambda e: (e[0].key, e[1])))
        self.algebra = algebra
        self.entries = entries
        self.rank = max((s.rank + 1 for s, _ in entries), default=0)
        self.key = tuple((s.key, m) for s, m in entries)
        self._hash = hash((algebra.n_atoms, self.key))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (isinstance(other, Name) and self._hash == other._hash
                and self.key == other.key and self.algebra == other.algebra)

    def pairs(self) -> list[tuple["Name", Element]]:
        return [(s, Element(self.algebra, m)) for s, m in self.entries]

    def domain(self) -> tuple["Name", ...]:
        out = []
        for s, _ in self.entries:
            if not out or out[-1] != s:
                out.append(s)
        return tuple(out)

    def subnames(self) -> set["Name"]:
        """Every name reachable through entries, excluding this one."""
        out = set()
        stack = [s for s, _ in self.entries]
        while stack:
            s = stack.pop()
            if s not in out:
                out.add(s)
                stack.extend(t for t, _ in s.entries)
        return out

    def to_json(self) -> list:
        from ..kernel.algebra import mask_atoms
        return [[s.to_json(), list(mask_atoms(m))] for s, m in self.entries]

    def __repr__(self):
        if not self.entries:
            return "∅"
        return "{" + ", ".join(f"<{s!r},{Element(self.algebra, m)!r}>" for s, m in self.entries) + "}"


def name_from_json(algebra: Algebra, doc) -> Name:
    if isinstance(doc, dict) and "check" in doc:
        from .hf import from_nested
        return check_name(from_nested(doc["check"]), algebra)
    if not isinstance(doc, list):
        raise ValueError("a name is a JSON array of [subname, [atoms]] pairs")
    pairs = []
    for entry in doc:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise ValueError("each name entry is [subname, [atoms]]")
        pairs.append((name_from_json(algebra, entry[0]), algebra.element(entry[1])))
    return Name(algebra, pairs)


_check_cache: dict = {}


def check_name(x: HFSet, algebra: Algebra) -> Name:
    """x̌ = {⟨y̌, 1⟩ : y ∈ x}."""
    k = (x, algebra)
    hit = _check_cache.get(k)
    if hit is not None:
        return hit
    n = Name(algebra, [(check_name(y, algebra), algebra.full_mask) for y in x.members])
    if len(_check_cache) < 200_000:
        _check_cache[k] = n
    return n


def as_check(tau: Name) -> HFSet | None:
    """The HF set x with τ = x̌ structurally, or None."""
    full = tau.algebra.full_mask
    members = []
    for s, m in tau.entries:
        if m != full:
            return None
        x = as_check(s)
        if x is None:
            return None
        members.append(x)
    return HFSet(members)


def empty_name(algebra: Algebra) -> Name:
    return Name(algebra, ())


def mix(A: Antichain | Iterable[Element], assignments: Mapping[Element, Name] | Iterable[Name],
        algebra: Algebra | None = None) -> Name:
    """τ = {⟨σ, b ∧ a⟩ : ⟨σ, b⟩ ∈ τ_a, a ∈ A}.

    ``assignments`` is either a mapping from members of A to names or a
    sequence aligned with A's members.
    """
    if not isinstance(A, Antichain):
        els = tuple(A)
        alg = algebra or els[0].algebra
        A = Antichain(alg, els)  # raises on a non-antichain
    if isinstance(assignments, Mapping):
        names = [assignments[a] for a in A.elements]
    else:
        names = list(assignments)
        if len(names) != len(A.elements):
            raise ValueError("one name per antichain member")
    pairs = []
    for a, tau in zip(A.elements, names):
        if tau.algebra != A.algebra:
            raise AlgebraMismatchError("mixed names must share the antichain's algebra")
        for s, m in tau.entries:
            pairs.append((s, m & a.mask))
    return Name(A.algebra, pairs)


def element_code(b: Element) -> HFSet:
    return encode_atoms(b.atoms)


def element_check(b: Element) -> Name:
    """b̌ under the fixed atom-index coding."""
    return check_name(element_code(b), b.algebra)


def generic_name(B: Algebra) -> Name:
    """Ġ = {⟨b̌, b⟩ : b ∈ B}."""
    return Name(B, [(element_check(b), b.mask) for b in B.elements()])


def map_name(tau: Name, hom, target: Algebra) -> Name:
    """Push a name forward along a map of algebras (applied to every value)."""
    memo = {}

    def go(t):
        if t in memo:
            return memo[t]
        out = Name(target, [(go(s), hom(Element(t.algebra, m)).mask) for s, m in t.entries])
        memo[t] = out
        return out

    return go(tau)


def padded_empty_name(algebra: Algebra, rank: int) -> Name:
    """A name of the given rank whose entries all carry value 0; it names ∅."""
    t = empty_name(algebra)
    for _ in range(rank):
        t = Name(algebra, [(t, 0)])
    return t
