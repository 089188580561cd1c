"""Semisimple isometries of even unimodular lattices with a prescribed
characteristic polynomial: exact polynomial arithmetic, the obstruction
group Sh, a decision engine, and torus-knot applications."""

__version__ = "0.1.0"

from .decision import (  # noqa: E402
    MilnorProfile,
    SignatureTarget,
    decide_lattice,
    decide_milnor,
)
from .intpoly import IntPoly, cyclotomic  # noqa: E402
from .obstruction import Factor, FactoredCharPoly, sh_group  # noqa: E402

__all__ = [
    "Factor",
    "FactoredCharPoly",
    "IntPoly",
    "MilnorProfile",
    "SignatureTarget",
    "cyclotomic",
    "decide_lattice",
    "decide_milnor",
    "sh_group",
]
