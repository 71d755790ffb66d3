"""Multi-agent magnetic-beacon localization simulator.

Thin Python facade over the compiled core: dipole field model,
extremum-seeking gradient estimation, bearing-only source estimation,
formation control, the full simulation engine and the Monte Carlo
harness.
"""

from ._core import (
    BearingSet,
    ConfigError,
    ConvergenceCriterion,
    DitherParams,
    Engine,
    EsState,
    EstimateTrace,
    EstimatorState,
    FleetDirections,
    FormationState,
    IoError,
    McSummary,
    Measurement,
    Mode,
    ModeStats,
    NoiseModel,
    RngStream,
    RunTrace,
    RxPose,
    SigmaForce,
    SimConfig,
    SingularFieldError,
    Timebase,
    TraceRow,
    TxSource,
    __version__,
    advance,
    agent_bases,
    agent_position,
    bearing,
    centroid_update,
    convergence_step,
    derive_stream_seed,
    dither,
    es_update,
    estimate_research_step,
    field_at,
    fleet_directions,
    format_config,
    format_summary_table,
    intensity_of,
    is_rotation,
    jacobian,
    load_config,
    ls_reset,
    ls_step,
    measure,
    moment,
    parse_config_text,
    parse_summary_json,
    projector,
    run_batch,
    run_convergence,
    run_simulation,
    sigma_blend,
    sigma_from_residual,
    square_offsets,
    summary_json,
    unit_stack,
    validate_config,
    write_boxplot_csv,
    write_summary_json,
    write_trace_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
