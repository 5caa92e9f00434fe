"""Quantum 6j-symbols at roots of unity and hyperbolic volumes of truncated tetrahedra."""

from sixjvol.errors import DomainError, SixjvolError, ValidationError
from sixjvol.hypgeom import (
    TruncTetra,
    dblock_volume,
    dilog,
    lobachevsky,
    solve_z0,
    vol_oct,
    volume_lob,
    volume_my,
)
from sixjvol.rootval import LaurentLead, SineTable, qfact_lead, qint_lead
from sixjvol.shadow import ShadowLink, colored_jones_lead, complement_volume
from sixjvol.sixj import AdmissibleSix, classify_theta, sixj_generic_eval, sixj_lead

__version__ = "0.1.0"

__all__ = [
    "AdmissibleSix",
    "DomainError",
    "LaurentLead",
    "ShadowLink",
    "SineTable",
    "SixjvolError",
    "TruncTetra",
    "ValidationError",
    "classify_theta",
    "colored_jones_lead",
    "complement_volume",
    "dblock_volume",
    "dilog",
    "lobachevsky",
    "qfact_lead",
    "qint_lead",
    "sixj_generic_eval",
    "sixj_lead",
    "solve_z0",
    "vol_oct",
    "volume_lob",
    "volume_my",
]
