"""Scenario files: one JSON document describing an algebra, a name pool,
formulas, an ultrafilter and an antichain family.

    {
      "algebra": {"atoms": 2}  |  {"poset": {"nodes": [...], "leq": [[p, q], ...]}},
      "ultrafilter": {"kind": "principal", "atom": 0},           optional
      "pool": {"hf_rank": 2, "mixes": 0, "extras": 0,
               "names": {"tau": <name>}},                         optional
      "structure": <explicit Boolean-valued structure>,           optional
      "formulas": ["forall x. (x in V)", ...],
      "params": {"x": "tau"},                                     free variables
      "antichains": [[[0], [1]], ...]                             members as atom lists
    }
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .fol.parser import parse
from .fol.structure import BValuedStructure, structure_from_json
from .fol.syntax import _all_vars, rename_apart
from .kernel import algebra_from_json
from .kernel.algebra import Algebra, Antichain, SizeGuardError
from .kernel.poset import ROCompletion
from .names.name import Name, name_from_json
from .names.pool import NamePool, standard_pool
from .ultra.ultrafilter import Ultrafilter, enumerate_ultrafilters, ultrafilter_from_json

WORK_LIMIT = 10_000_000   # 2^atoms × pool^(table axes) above this is refused


class ScenarioError(ValueError):
    pass


@dataclass
class Scenario:
    algebra: Algebra
    completion: ROCompletion | None
    formulas: list
    formula_text: list
    pool: NamePool | None = None
    named: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    structure: BValuedStructure | None = None
    ultrafilters: list = field(default_factory=list)
    antichains: list = field(default_factory=list)
    pool_rank: int = 2
    raw: dict = field(default_factory=dict)

    @property
    def poset(self):
        return self.completion.poset if self.completion else None


def table_axes(phi) -> int:
    return len(_all_vars(rename_apart(phi)))


def guard(atoms: int, universe: int, axes: int, what: str = "evaluation") -> None:
    work = (2 ** atoms) * (max(universe, 1) ** axes)
    if work > WORK_LIMIT:
        raise SizeGuardError(
            f"{what} needs 2^{atoms} x {universe}^{axes} = {work} steps, over the limit {WORK_LIMIT}")


def _read(source) -> dict:
    if isinstance(source, dict):
        return source
    try:
        text = Path(source).read_text()
    except OSError as e:
        raise ScenarioError(f"cannot read scenario: {e}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"scenario is not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise ScenarioError("scenario must be a JSON object")
    return doc


def load_scenario(source, pool_rank: int | None = None, seed: int = 0) -> Scenario:
    doc = _read(source)
    if "algebra" not in doc and "structure" not in doc:
        raise ScenarioError("scenario needs 'algebra' or 'structure'")
    structure = structure_from_json(doc["structure"]) if "structure" in doc else None
    if "algebra" in doc:
        B, completion = algebra_from_json(doc["algebra"])
    else:
        B, completion = structure.algebra, None
    formula_text = [str(f) for f in doc.get("formulas", [])]
    sig = structure.signature() if structure is not None else None
    formulas = [parse(f, sig) if sig is not None else parse(f) for f in formula_text]

    pdoc = doc.get("pool", {})
    rank = pool_rank if pool_rank is not None else int(pdoc.get("hf_rank", 2))
    named: dict[str, Name] = {}
    pool = None
    if structure is None:
        for key, nd in sorted(pdoc.get("names", {}).items()):
            named[key] = name_from_json(B, nd)
        base = standard_pool(B, hf_rank=rank, mixes=int(pdoc.get("mixes", 0)),
                             extras=int(pdoc.get("extras", 0)), seed=int(pdoc.get("seed", seed)))
        pool = base.extended(named.values())

    params = {}
    for var, ref in sorted(doc.get("params", {}).items()):
        if structure is not None:
            if ref not in structure.names:
                raise ScenarioError(f"parameter {var} refers to unknown element {ref!r}")
            params[var] = ref
        elif isinstance(ref, str):
            if ref not in named:
                raise ScenarioError(f"parameter {var} refers to unknown name {ref!r}")
            params[var] = named[ref]
        else:
            params[var] = name_from_json(B, ref)
            pool = pool.extended([params[var]])

    if "ultrafilter" in doc:
        ultras = [ultrafilter_from_json(B, doc["ultrafilter"])]
    else:
        ultras = enumerate_ultrafilters(B)
    antichains = [Antichain(B, tuple(B.element(e) for e in A)) for A in doc.get("antichains", [])]
    for A in antichains:
        if not A.is_maximal:
            raise ScenarioError("declared antichains must be maximal")
    return Scenario(B, completion, formulas, formula_text, pool, named, params, structure,
                    ultras, antichains, rank, doc)
