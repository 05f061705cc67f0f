"""Exact crucial functions, crucial measures and minimal resultant loci on the Berkovich line."""

__version__ = "1.0.0"
