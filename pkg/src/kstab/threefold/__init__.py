"""The 3-fold side: intersection ring, pencils, the flag combiner and the certificate."""
from .certificate import ASSUMED, MACHINE, CertificateReport, Check, run_certificate
from .nemuro import (
    NEMURO_CASES,
    SURFACE_BOUNDS,
    NemuroCase,
    NotPositive,
    SurfaceBound,
    derived_bound,
    derived_constants,
    get_case,
    get_surface_bound,
    nemuro,
    nemuro_enclosure,
)
from .ring import ANTICANONICAL, PENCILS, PencilCase, XRing, get_pencil, pencil_problems, restricted_volume, s_x

__all__ = [
    "ANTICANONICAL",
    "ASSUMED",
    "MACHINE",
    "NEMURO_CASES",
    "PENCILS",
    "SURFACE_BOUNDS",
    "CertificateReport",
    "Check",
    "NemuroCase",
    "NotPositive",
    "PencilCase",
    "SurfaceBound",
    "XRing",
    "derived_bound",
    "derived_constants",
    "get_case",
    "get_pencil",
    "get_surface_bound",
    "nemuro",
    "nemuro_enclosure",
    "pencil_problems",
    "restricted_volume",
    "run_certificate",
    "s_x",
]
