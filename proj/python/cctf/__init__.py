"""Deterministic red-team / blue-team simulation on scale-free router networks.

Thin wrapper around the compiled _cctf module; everything user-facing is
re-exported here.
"""

from ._cctf import (
    CORRELATION_COLUMNS,
    DATASET_HEADER,
    ConfigError,
    CorrelationTable,
    DatasetRow,
    InterceptorMode,
    NetworkGraph,
    RunMetrics,
    SimConfig,
    Simulation,
    SurfaceTable,
    SweepGrid,
    TickTrace,
    TopologyInfo,
    UndefinedCorrelationError,
    __version__,
    correlation_table,
    derive_run_seed,
    derive_topology,
    describe,
    enumerate_grid,
    generate_scale_free,
    pearson_r,
    read_dataset,
    run_simulation,
    run_sweep,
    run_with_trace,
    sim_config_from_file,
    sim_config_from_text,
    surface_table,
    sweep_grid_from_file,
    sweep_grid_from_text,
    write_dataset,
)

__all__ = [
    "CORRELATION_COLUMNS",
    "DATASET_HEADER",
    "ConfigError",
    "CorrelationTable",
    "DatasetRow",
    "InterceptorMode",
    "NetworkGraph",
    "RunMetrics",
    "SimConfig",
    "Simulation",
    "SurfaceTable",
    "SweepGrid",
    "TickTrace",
    "TopologyInfo",
    "UndefinedCorrelationError",
    "__version__",
    "correlation_table",
    "derive_run_seed",
    "derive_topology",
    "describe",
    "enumerate_grid",
    "generate_scale_free",
    "pearson_r",
    "read_dataset",
    "run_simulation",
    "run_sweep",
    "run_with_trace",
    "sim_config_from_file",
    "sim_config_from_text",
    "surface_table",
    "sweep_grid_from_file",
    "sweep_grid_from_text",
    "write_dataset",
]
