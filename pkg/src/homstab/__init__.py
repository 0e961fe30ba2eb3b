"""homstab: exact-arithmetic homogeneous categories, building complexes,
and twisted homological stability checks at desk scale."""

__version__ = "0.1.0"
