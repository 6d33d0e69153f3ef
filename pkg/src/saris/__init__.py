"""Student annual review management and success prediction."""

__version__ = "0.1.0"
