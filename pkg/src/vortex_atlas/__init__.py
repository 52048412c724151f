"""Relative equilibria of four point vortices with strengths (1, 1, 1, G4)."""

from .vortexcore import EquilibriumCertificate, PlanarConfiguration, Vorticities, certify

__all__ = ["EquilibriumCertificate", "PlanarConfiguration", "Vorticities", "certify"]
__version__ = "0.1.0"
