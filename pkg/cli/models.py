# cli/models.py
from dataclasses import dataclass, field
from typing import Any, Optional, Tuple

from divisors.corner_locus import TropicalPolynomial
from lattice.linalg import Vector
from theta.bundle import BundleSpec

FIGURE_KINDS = ("divisor", "slice", "intersection")


@dataclass(frozen=True)
class SpecOptions:
    """
    Необязательная часть входного JSON ("options")

    section и second_section остаются в сыром виде: они разбираются только
    после построения базиса образующих.
    """

    section: Any = "xi"
    second_section: Any = None
    polynomials: Tuple[TropicalPolynomial, ...] = ()
    points: Tuple[Vector, ...] = ()
    shift: Optional[Vector] = None
    perturbation: int = 0
    slice_coordinate: Optional[int] = None
    max_box: Optional[int] = None
    figures: Tuple[str, ...] = FIGURE_KINDS


@dataclass(frozen=True)
class SpecDocument:
    """Разобранный входной файл: расслоение и опции"""

    bundle: BundleSpec
    options: SpecOptions = field(default_factory=SpecOptions)
    source: str = "<stdin>"

    def __str__(self) -> str:
        return f"SpecDocument({self.source}: n={self.bundle.dim})"
