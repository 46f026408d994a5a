"""Single source of the package version for code and run metadata."""

__version__ = "0.1.0"
