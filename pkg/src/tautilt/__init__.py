"""tautilt: exact computations in tau-tilting theory over quiver algebras."""

__version__ = "0.1.0"
