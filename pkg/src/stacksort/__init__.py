"""Exact enumeration for West's stack-sorting map.

Preimage counts via valid hook configurations and valid compositions,
t-stack-sortable enumeration, and certified upper bounds on W_t(n).
"""

from stacksort.errors import (
    ConfigurationError,
    DomainError,
    InputError,
    NumericError,
    ResourceCapError,
    StackSortError,
    TableFormatError,
)
from stacksort.perm import (
    Permutation,
    brute_force_preimages,
    descents,
    stack_sort,
    stack_sort_iterated,
    is_t_stack_sortable,
    valleys,
)
from stacksort.hooks import (
    Hook,
    ValidHookConfiguration,
    canonical_vhc,
    enumerate_vhc_02,
    reconstruct_vhc,
    valid_compositions,
)
from stacksort.fertility import fertility, fertility_by_descents, preimages_by_valleys, profile

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "DomainError",
    "Hook",
    "InputError",
    "NumericError",
    "Permutation",
    "ResourceCapError",
    "StackSortError",
    "TableFormatError",
    "ValidHookConfiguration",
    "brute_force_preimages",
    "canonical_vhc",
    "descents",
    "enumerate_vhc_02",
    "fertility",
    "fertility_by_descents",
    "is_t_stack_sortable",
    "preimages_by_valleys",
    "profile",
    "reconstruct_vhc",
    "stack_sort",
    "stack_sort_iterated",
    "valid_compositions",
    "valleys",
]
