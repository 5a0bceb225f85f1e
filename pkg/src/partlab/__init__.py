"""Empirical complexity lab for Partition Sort.

Instrumented sorts (:mod:`partlab.sorting`), seeded input generators
(:mod:`partlab.distributions`), a trial harness (:mod:`partlab.harness`) and
the statistics used to read its output (:mod:`partlab.statlab`).
"""

__version__ = "0.1.0"

from .distributions import (
    ALL_EQUAL,
    CAUCHY,
    REVERSED,
    SORTED,
    STD_NORMAL,
    UNIFORM01,
    DistributionSpec,
    InvalidParameterError,
    RngState,
    box_muller,
    generate_array,
    next_binomial,
    next_cauchy,
    next_std_normal,
    next_uniform01,
)
from .harness import (
    DesignPoint,
    GridPlan,
    TrialRecord,
    read_csv,
    run_factorial,
    run_grid,
    run_trial,
    write_csv,
)
from .sorting import OpCounter, SortOutcome, heap_sort, partition, partition_sort, quick_sort
from .statlab import (
    AnovaTable,
    RegressionFit,
    anova_3factor,
    anova_cells,
    f_upper_tail,
    fit_nlogn,
    fit_poly,
    ols_fit,
    select_degree,
)
