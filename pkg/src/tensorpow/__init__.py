"""Exact verification engine for tensor-power operations on equivariant
Grothendieck groups of finite models."""

__version__ = "0.1.0"
