"""exforge: exact construction and classification of exceptional Lie algebras."""

__version__ = "0.1.0"
