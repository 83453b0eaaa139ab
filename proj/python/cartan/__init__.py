"""Restricted Cartan-type Lie algebras over GF(p)."""

from ._core import (
    Algebra,
    StructuralError,
    check_table,
    expected_dimension,
    export_json,
    flatten,
    flattener_witness,
    injectivity,
    invariants,
    rectify,
    suite_names,
    verify,
)

__all__ = [
    "Algebra",
    "StructuralError",
    "check_table",
    "expected_dimension",
    "export_json",
    "flatten",
    "flattener_witness",
    "injectivity",
    "invariants",
    "rectify",
    "suite_names",
    "verify",
]
