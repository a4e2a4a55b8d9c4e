"""Exact arithmetic and proof auditing for unit-indexed cubic Thue families."""

from .bounds import (
    BakerConfig,
    CalibrationResult,
    calibrate_c2,
    lemma3a_margin,
    lemma3b_margin,
    prop1_bound,
    prop2_bound,
    sine_bound,
)
from .cubicfield import (
    CubicField,
    FieldElement,
    SplittingAlgebra,
    arith,
    embed,
    house,
    make_field,
    norm,
    trace,
)
from .family import (
    BinaryCubicForm,
    FormFamily,
    coefficient_sequence,
    example_family,
    family_from_json,
    family_to_json,
    form_at,
    make_family,
    negative_n_swap,
    normalize,
    swap_identity_check,
)
from .heights import (
    HeightReport,
    abs_log_height,
    check_fundamental,
    mahler_measure,
    regulator,
)
from .reduction import Decomposition, decompose_solution, unit_reduce
from .solver import (
    SearchSpec,
    SolutionRecord,
    brute_force_oracle,
    solve_box,
    theorem1_sweep,
)
from .tracer import (
    LambdaData,
    SiegelTrace,
    classify_case,
    family_angles,
    inequality_ledger,
    lambda_machinery,
    siegel_terms,
    trace_certificate,
)

__version__ = "0.1.0"
