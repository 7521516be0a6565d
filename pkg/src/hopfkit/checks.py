"""The named-check record shared by every verification routine."""
from __future__ import annotations

from dataclasses import dataclass, field

# registered check names, in report order
CATALOG = (
    # Hopf axioms
    "associativity", "unit", "coassociativity", "counit",
    "comult-homomorphism", "counit-homomorphism", "antipode", "antipode-involutive",
    # quasitriangular structure and Drinfeld element
    "quasitriangularity", "u-conjugation", "u-coproduct", "u-central", "special-grouplike",
    "factorizability", "factorizability-center",
    # representation theory and modular data
    "wedderburn", "character-basis", "double-dims-oracle",
    "s-symmetry", "s-row0", "s-invertibility", "s=AD",
    "phi-homomorphism", "verlinde-eigen", "fusion-integrality", "fusion-oracle-equivalence",
    "sum-rule", "divisibility", "hopf-surjection", "frobenius-type", "prime-dimension",
    # triangular structures and twists
    "triangularity", "u-involution", "parity-twist",
    "cocycle", "gauge", "twist-triangularity",
)


@dataclass
class Check:
    name: str
    passed: bool
    residual: float = 0.0
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in CATALOG:
            raise ValueError(f"unregistered check name {self.name!r}")

    @classmethod
    def from_residual(cls, name: str, residual: float, tol: float, **detail) -> "Check":
        return cls(name, bool(residual <= tol), float(residual), detail)
