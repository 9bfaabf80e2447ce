"""Bundled analyzers.  Each module exposes ``register(kernel)``."""
