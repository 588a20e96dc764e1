"""Information diffusion and emotion dynamics under comment-area recommendation cocoons."""

from .cocoon import CocoonStructure, CommentArea, build_hcac, comment_area, filter_cocoon
from .config import ConfigError, ConfigParseError, ExperimentConfig, load_config, parse_config
from .dynamics import (
    HorizonReached,
    SimulationState,
    SpreadParams,
    StepReport,
    apply_emotion_update,
    comment_probability,
    emotion_perturbation,
    logistic_density,
    run,
    spread_rate,
    step,
)
from .experiments import (
    EmpiricalSeries,
    EnsembleStats,
    adaptability_suite,
    compare_to_empirical,
    ingest_empirical,
    ra_sweep,
    run_ensemble,
    time_to_density,
)
from .graph import (
    DegreeStats,
    GraphError,
    NodeAttributes,
    SocialGraph,
    complete_graph,
    degree_stats,
    generate_ba,
    generate_ws,
    sample_attributes,
)
from .io import export_graph, import_graph
from .metrics import (
    EmotionRange,
    NetworkSummary,
    Trajectory,
    comment_network_summary,
    delta_mean_series,
    densities,
    emotion_range,
    mean_emotion,
)
from .recommend import rewire_step, viewpoint_filter

__version__ = "0.1.0"
