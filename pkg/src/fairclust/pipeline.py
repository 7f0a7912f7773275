"""
fairify: pick the closest-fair-clustering algorithm that fits the coloring.
"""
import logging
from enum import Enum

from .core import Clustering
from .equi import fair_equi
from .errors import ValidationError
from .fairness import ColorAssignment, check_consistent
from .general import fair_general

logger = logging.getLogger(__name__)


class FairifyMode(str, Enum):
    EQUI = "equi"
    GENERAL = "general"
    AUTO = "auto"


def resolve_mode(colors: ColorAssignment, mode: FairifyMode = FairifyMode.AUTO) -> FairifyMode:
    """AUTO becomes EQUI when all color classes are equally large, GENERAL otherwise."""
    mode = FairifyMode(mode)
    if mode is FairifyMode.AUTO:
        return FairifyMode.EQUI if colors.is_equi else FairifyMode.GENERAL
    if mode is FairifyMode.EQUI and not colors.is_equi:
        raise ValidationError(f"mode 'equi' needs equal color classes, got counts {colors.counts.tolist()}")
    return mode


def fairify(d: Clustering, colors: ColorAssignment, mode: FairifyMode = FairifyMode.AUTO) -> Clustering:
    check_consistent(d, colors)
    resolved = resolve_mode(colors, mode)
    logger.debug(f"fairify: n={d.n}, k={colors.k}, mode={resolved.value}")
    if resolved is FairifyMode.EQUI:
        return fair_equi(d, colors)
    return fair_general(d, colors)
