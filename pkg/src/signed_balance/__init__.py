"""Balance measurement for signed networks.

Sample sparse signed networks from graphon models, census their triangles
by sign type, and build higher-order-accurate confidence intervals and
tests for the expected proportion of balanced triangles, with a
node-resampling bootstrap comparator and a Monte Carlo experiment harness.
"""

from .bootstrap import (
    BootstrapDistribution,
    EmpiricalGraphon,
    bootstrap_ci,
    bootstrap_distribution,
    resample_network,
)
from .census import (
    BRUTE_FORCE_CAP,
    CensusBundle,
    NodeProjection,
    PairProjection,
    TriangleCensus,
    brute_force_census,
    census,
    full_census,
    node_projection,
    pair_projection,
)
from .errors import (
    AlphabetError,
    AsymmetricMatrixError,
    ConfigError,
    ConflictingSignError,
    DegenerateBootstrapError,
    DegenerateError,
    DegenerateVarianceError,
    EdgeListParseError,
    GraphDataError,
    GraphonRangeError,
    NonzeroDiagonalError,
    NoTriangleError,
    SelfLoopError,
    SignedBalanceError,
    SummaryUndefinedError,
)
from .graph import (
    DENSE_THRESHOLD,
    GraphSummary,
    SignedAdjacency,
    from_dense,
    parse_edge_list,
    read_edge_list,
    validate,
    write_edge_list,
)
from .graphon import (
    BUILTIN_NAMES,
    GraphonSpec,
    PopulationMoments,
    builtin_spec,
    population_moments,
    sample_network,
    spec_from_json,
)
from .harness import (
    CdfStudy,
    ExperimentConfig,
    ExperimentRow,
    expand_cells,
    load_config,
    run_cdf_study,
    run_coverage,
    run_timing,
    sup_distance,
    write_cdf_csv,
    write_coverage_csv,
    write_plot_data_csv,
    write_timing_csv,
)
from .inference import (
    BalanceTest,
    EdgeworthCoefficients,
    InferenceReport,
    Moments,
    adjusted_null,
    balance_test,
    baselines,
    confidence_interval,
    cornish_fisher_quantile,
    edgeworth_cdf,
    edgeworth_coefficients,
    projections,
    sample_moments,
    variance_estimator,
)
from .rng import stream, stream_key

__version__ = "0.1.0"

__all__ = [
    "AlphabetError",
    "AsymmetricMatrixError",
    "BUILTIN_NAMES",
    "BRUTE_FORCE_CAP",
    "BalanceTest",
    "BootstrapDistribution",
    "CdfStudy",
    "CensusBundle",
    "ConfigError",
    "ConflictingSignError",
    "DENSE_THRESHOLD",
    "DegenerateBootstrapError",
    "DegenerateError",
    "DegenerateVarianceError",
    "EdgeListParseError",
    "EdgeworthCoefficients",
    "EmpiricalGraphon",
    "ExperimentConfig",
    "ExperimentRow",
    "GraphDataError",
    "GraphSummary",
    "GraphonRangeError",
    "GraphonSpec",
    "InferenceReport",
    "Moments",
    "NodeProjection",
    "NonzeroDiagonalError",
    "NoTriangleError",
    "PairProjection",
    "PopulationMoments",
    "SelfLoopError",
    "SignedAdjacency",
    "SignedBalanceError",
    "SummaryUndefinedError",
    "TriangleCensus",
    "adjusted_null",
    "balance_test",
    "baselines",
    "bootstrap_ci",
    "bootstrap_distribution",
    "brute_force_census",
    "builtin_spec",
    "census",
    "confidence_interval",
    "cornish_fisher_quantile",
    "edgeworth_cdf",
    "edgeworth_coefficients",
    "expand_cells",
    "from_dense",
    "full_census",
    "load_config",
    "node_projection",
    "pair_projection",
    "parse_edge_list",
    "population_moments",
    "projections",
    "read_edge_list",
    "resample_network",
    "run_cdf_study",
    "run_coverage",
    "run_timing",
    "sample_moments",
    "sample_network",
    "spec_from_json",
    "stream",
    "stream_key",
    "sup_distance",
    "validate",
    "variance_estimator",
    "write_cdf_csv",
    "write_coverage_csv",
    "write_edge_list",
    "write_plot_data_csv",
    "write_timing_csv",
]
