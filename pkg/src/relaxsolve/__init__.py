"""relaxsolve: asymptotic-preserving finite-volume schemes for 1-D
hyperbolic systems with stiff relaxation source terms.

Two unsplit schemes (a staggered FORCE-type scheme and a source-aware
approximate Riemann solver) plus a splitting reference scheme, with three
built-in relaxation systems: Jin-Xin, Chaplygin gas, and a homogeneous
two-phase flow with mass transfer.
"""

from .grid import FieldState, Grid1D, neumann_extend
from .model import RelaxationModel
from .models import ChaplyginModel, JinXinModel, TwoPhaseModel
from .driver import (
    AdmissibilityError,
    ConfigurationError,
    SchemeKind,
    StepInfo,
    TimeControls,
    compute_dt,
    run,
)
from .schemes import (
    ArsSpeeds,
    ars_step,
    hll_flux,
    intermediate_state,
    source_closure,
    splitting_step,
    staggered_half_step,
    staggered_step,
)
from . import harness, problems

__version__ = "0.1.0"

__all__ = (
    "AdmissibilityError",
    "ArsSpeeds",
    "ChaplyginModel",
    "ConfigurationError",
    "FieldState",
    "Grid1D",
    "JinXinModel",
    "RelaxationModel",
    "SchemeKind",
    "StepInfo",
    "TimeControls",
    "TwoPhaseModel",
    "ars_step",
    "compute_dt",
    "harness",
    "hll_flux",
    "intermediate_state",
    "neumann_extend",
    "problems",
    "run",
    "source_closure",
    "splitting_step",
    "staggered_half_step",
    "staggered_step",
)
