from .estimates import (
    Bound,
    Check,
    EstimateReport,
    PropertyReport,
    concatenation_constant,
    config_constants,
    estimate_constants,
    fekete_bounds,
    verify_inequalities,
)
from .experiments import continuity_experiment, surgery_soundness, truncation_experiment
from .partitions import bound_holds, count_distinct_partitions, distinct_partitions_dp
from .surgery import (
    HWDecomposition,
    SurgeryTrace,
    hw_decompose,
    hw_surgery_step,
    is_half_space,
    preimage_census,
    surgery_trace,
)
