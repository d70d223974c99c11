"""Finite Boolean algebras, posets, completions, subalgebras and ideals."""
from .algebra import (
    Algebra, AlgebraMismatchError, Antichain, Element, SizeGuardError,
    all_antichains, atom_limit, big_join, big_meet, common_refinement,
    complement, is_maximal_antichain, join, max_atoms, meet, set_max_atoms,
    set_partitions,
)
from .constructions import (
    Embedding, IterationAlgebra, Partition, Projection, is_complete_embedding,
    is_complete_subalgebra, iteration_algebra, product_algebra, product_pair,
    subalgebra_elements,
)
from .ideals import Ideal, ImproperIdealError, local_ideal, quotient, small_ideal
from .poset import (
    Poset, ROCompletion, ROOracle, all_posets, is_dense_embedding, random_poset,
    ro_completion, ro_isomorphism, ro_oracle,
)


def algebra_from_json(doc: dict):
    """Read ``{"atoms": n}`` or ``{"poset": {...}}``.

    A poset description is completed to its regular-open algebra; the
    completion object is returned alongside so callers keep the dense map.
    """
    if "atoms" in doc:
        n = doc["atoms"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise ValueError("'atoms' must be an integer")
        return Algebra(n), None
    if "poset" in doc:
        from .poset import poset_from_json
        c = ro_completion(poset_from_json(doc["poset"]))
        return c.algebra, c
    raise ValueError("algebra description needs 'atoms' or 'poset'")


def ideal_from_json(B: Algebra, doc: dict) -> Ideal:
    if "generator" in doc:
        return Ideal.principal(B, B.element(doc["generator"]))
    if "members" in doc:
        return Ideal.from_members(B, [B.element(m) for m in doc["members"]])
    raise ValueError("ideal description needs 'generator' or 'members'")
