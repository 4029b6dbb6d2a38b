"""Coefficient generators and singularity analysis for quantum-invariant q-series."""

from .precision import PrecisionContext

__version__ = "0.1.0"

__all__ = ["PrecisionContext", "__version__"]
