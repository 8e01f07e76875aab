"""One-line extensions of (n_3) configurations and their moduli spaces."""

__version__ = "0.1.0"
