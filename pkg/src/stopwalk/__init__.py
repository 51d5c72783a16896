"""Unbiased sequential estimation for multinomial walks stopped on a lattice boundary."""
from .errors import StopwalkError
from .estimation import (
    EstimateReport,
    StopObservation,
    closed_form_lattice2d,
    closed_form_nullstep,
    ml_estimate,
    unbiased_estimate,
    verify_unbiasedness,
)
from .lattice import (
    ExplicitRegion,
    LinearRegion,
    OutcomeModel,
    Region,
    RegionSlice,
    boundary_points,
    enumerate_slice,
    successors,
    validate_region,
)
from .path_counting import (
    PathCountTable,
    count_paths,
    cycle_count_first_passage,
    first_passage_pmf,
    mass_balance,
)
from .region_analysis import hull_contains, is_closed, is_simple
from .simulation import StudyConfig, run_study, sample_path, summarize
from .trial_design import (
    TrialDesign,
    TrialState,
    continuation_regions,
    trial_decision,
    trial_region,
    trial_unbiased_estimate,
)

__version__ = "0.1.0"
