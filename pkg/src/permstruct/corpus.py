"""The fixed corpus of small groups used by the checks and demos."""
from __future__ import annotations

from .group import PermGroup
from .named import direct_product, named_group
from .lab import wreath_product

CORPUS_NAMES = [
    "C1", "C5", "C6", "V4", "S3", "D8", "Q8", "D10", "A4", "F20", "S4", "GL23",
    "S3xS3", "A5", "A5xC2", "SL25", "S5", "PSL27", "A5xA5", "A5wrC2",
]


def corpus_group(name: str) -> PermGroup:
    if name == "S3xS3":
        return direct_product(named_group("S3"), named_group("S3"))
    if name == "A5xC2":
        return direct_product(named_group("A5"), named_group("C2"))
    if name == "A5xA5":
        return direct_product(named_group("A5"), named_group("A5"))
    if name == "A5wrC2":
        return wreath_product(named_group("A5"), named_group("C2"))
    return named_group(name)


def corpus() -> dict[str, PermGroup]:
    return {name: corpus_group(name) for name in CORPUS_NAMES}
