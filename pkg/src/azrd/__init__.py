"""alpha-z Renyi divergences on finite-dimensional matrix algebras."""

__version__ = "0.1.0"
