"""Exact computations for the free boson orbifold M(1)+."""

from ._voaf import (
    char_series,
    fusion_certificate,
    fusion_rule,
    fusion_table_csv,
    reduce,
    table41,
    verify_suite,
)

__all__ = [
    "char_series",
    "fusion_certificate",
    "fusion_rule",
    "fusion_table_csv",
    "reduce",
    "table41",
    "verify_suite",
]
