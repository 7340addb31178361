"""Exact computations with group-graded algebras, smash products and their module categories."""

from .document import WorkbenchDocument, load_document, serialize_document
from .examples import build_example
from .field import QQ, PrimeField, field_from_spec

__all__ = ["WorkbenchDocument", "load_document", "serialize_document", "build_example", "QQ", "PrimeField", "field_from_spec"]
__version__ = "0.1.0"
