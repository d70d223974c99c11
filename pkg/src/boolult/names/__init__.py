"""B-names, their Boolean values, pools, filters and value maps."""
from .constructions import powerset_name, separation_name
from .filters import Filter, RankReport, all_filters, rank_check, val
from .hf import (
    EMPTY, HFSet, as_natural, encode_atoms, from_nested, hf, hf_of_rank_at_most,
    hf_universe, von_neumann,
)
from .name import (
    Name, as_check, check_name, element_check, element_code, empty_name,
    generic_name, map_name, mix, name_from_json, padded_empty_name,
)
from .pool import (
    DEFAULT_HF_RANK_CAP, NamePool, PoolError, bv_formula, check_pool, random_mixture,
    random_name, standard_pool, two_valued_mixes_pool,
)
from .values import BVSession, bv_atomic, reference_value
