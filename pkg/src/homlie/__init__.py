"""Exact computation of biderivations, commuting maps and twisted-derivation
spaces for Z-graded Hom-Lie algebras and superalgebras over Q(q)."""

from .qfield import (
    LaurentPoly,
    QRational,
    ForbiddenSpecialization,
    PoleAtPoint,
    qbracket,
    qbrace,
    qpow,
    specialize,
)

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "QRational",
    "ForbiddenSpecialization",
    "PoleAtPoint",
    "qbracket",
    "qbrace",
    "qpow",
    "specialize",
    "__version__",
]
