"""Theory descriptors: which probability calculus, at which granularity."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedModel

# Absolute tolerance for projector comparisons and state invariants.
TOL = 1e-9


class Kind(str, enum.Enum):
    CLASSICAL = "classical"
    QUANTUM_REAL = "quantum-real"
    QUANTUM_COMPLEX = "quantum-complex"
    QUATERNIONIC = "quaternionic"

    @property
    def is_quantum(self) -> bool:
        return self in (Kind.QUANTUM_REAL, Kind.QUANTUM_COMPLEX)

    @property
    def constructible(self) -> bool:
        """Quaternionic theories only expose dimension formulas."""
        return self is not Kind.QUATERNIONIC


@dataclass(frozen=True)
class Model:
    """A probability theory of the given kind, with top proposition of granularity ``d``."""

    kind: Kind
    d: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if int(self.d) != self.d or self.d < 1:
            raise ValueError(f"granularity must be a positive integer, got {self.d!r}")
        object.__setattr__(self, "d", int(self.d))

    @property
    def dtype(self):
        return complex if self.kind is Kind.QUANTUM_COMPLEX else float

    def require_constructible(self):
        if not self.kind.constructible:
            raise UnsupportedModel(f"{self.kind.value} models support dimension formulas only")

    def __str__(self):
        return f"{self.kind.value}(d={self.d})"


def classical(d: int) -> Model:
    return Model(Kind.CLASSICAL, d)


def quantum(d: int, real: bool = False) -> Model:
    return Model(Kind.QUANTUM_REAL if real else Kind.QUANTUM_COMPLEX, d)


def as_rng(seed) -> np.random.Generator:
    """Accept an integer seed or an existing generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
