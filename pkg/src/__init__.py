"""ergolab: numerical checks of quantum ergodicity on regular graphs and the sphere."""

__version__ = "0.1.0"
