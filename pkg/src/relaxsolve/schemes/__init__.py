from .staggered import staggered_half_step, staggered_step
from .ars import ArsSpeeds, ars_step, intermediate_state, source_closure
from .splitting import hll_flux, splitting_step

__all__ = (
    "staggered_half_step",
    "staggered_step",
    "ArsSpeeds",
    "ars_step",
    "intermediate_state",
    "source_closure",
    "hll_flux",
    "splitting_step",
)
