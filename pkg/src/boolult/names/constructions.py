"""Names for power sets and for separated subsets."""
from __future__ import annotations

from typing import Mapping

from ..fol.structure import value_table
from ..fol.syntax import free_vars
from ..kernel.algebra import SizeGuardError
from .name import Name
from .pool import NamePool
from .values import BVSession

POWERSET_GUARD = 12   # at most 2**12 candidate sub-names


def powerset_name(tau: Name, session: BVSession | None = None, guard: int = POWERSET_GUARD) -> Name:
    """{⟨η, ⟦η ⊆ τ⟧⟩ : η ⊆ dom(τ) × B}."""
    B = tau.algebra
    cells = [(eta, b) for eta in tau.domain() for b in range(B.size)]
    if len(cells) > guard:
        raise SizeGuardError(
            f"power set name needs 2^{len(cells)} sub-names; guard is 2^{guard}")
    s = session or BVSession(B)
    pairs = []
    for mask in range(1 << len(cells)):
        eta = Name(B, [cells[k] for k in range(len(cells)) if mask >> k & 1])
        pairs.append((eta, s.subset(eta, tau)))
    return Name(B, pairs)


def separation_name(tau: Name, phi, var: str, pool: NamePool,
                    params: Mapping[str, Name] | None = None) -> Name:
    """{⟨σ, ⟦σ ∈ τ ∧ φ(σ)⟧⟩ : σ ∈ dom(τ)}, with φ evaluated over ``pool``."""
    params = dict(params or {})
    if tau not in pool:
        pool = pool.extended([tau] + list(params.values()))
    others = sorted(free_vars(phi) - {var})
    for v in others:
        if v not in params:
            raise KeyError(f"unassigned parameter {v}")
    S = pool.structure()
    table = value_table(S, phi, [var] + others)
    fixed = tuple(pool.position(params[v]) for v in others)
    s = pool.session
    pairs = []
    for sigma in tau.domain():
        m = s.member(sigma, tau) & int(table[(pool.position(sigma),) + fixed])
        pairs.append((sigma, m))
    return Name(tau.algebra, pairs)
