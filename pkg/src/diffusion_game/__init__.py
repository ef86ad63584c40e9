from .errors import (
    DiffusionError as DiffusionError,
    BoundInapplicable as BoundInapplicable,
    CertificateViolation as CertificateViolation,
    Disconnected as Disconnected,
    DuplicateEdge as DuplicateEdge,
    EmptyWindow as EmptyWindow,
    IndexOutOfRange as IndexOutOfRange,
    IntegerOverflow as IntegerOverflow,
    InvalidParams as InvalidParams,
    InvalidRange as InvalidRange,
    InvalidSize as InvalidSize,
    InvalidSpec as InvalidSpec,
    LengthMismatch as LengthMismatch,
    NotAStar as NotAStar,
    NotAnInteger as NotAnInteger,
    NotBipartite as NotBipartite,
    SelfLoop as SelfLoop,
    UnknownSuite as UnknownSuite,
    WindowTooLarge as WindowTooLarge,
)
from .exportable import (
    JSONExportable as JSONExportable,
    CSVExportable as CSVExportable,
    export as export,
    export_csv as export_csv,
    export_json as export_json,
)
from .graph import (
    Family as Family,
    Graph as Graph,
    GraphMetrics as GraphMetrics,
    LayerDecomposition as LayerDecomposition,
    Twin as Twin,
    TwinKind as TwinKind,
    bfs_distances as bfs_distances,
    eccentricity as eccentricity,
    from_edge_list as from_edge_list,
    from_networkx as from_networkx,
    generate as generate,
    layer_decomposition as layer_decomposition,
    load_graph as load_graph,
    metrics as metrics,
    parse_edge_list as parse_edge_list,
    parse_graph_spec as parse_graph_spec,
    read_edge_list as read_edge_list,
    twins as twins,
)
from .dynamics import (
    Config as Config,
    DeltaVector as DeltaVector,
    SimulationReport as SimulationReport,
    as_config as as_config,
    bound_monitor as bound_monitor,
    delta as delta,
    fire as fire,
    fire_many as fire_many,
    shift as shift,
    simulate as simulate,
    total as total,
    trajectory as trajectory,
)
from .periodicity import (
    DEFAULT_BUDGET as DEFAULT_BUDGET,
    BudgetExhausted as BudgetExhausted,
    NotFound as NotFound,
    PeriodClass as PeriodClass,
    PeriodReport as PeriodReport,
    detect_period as detect_period,
    first_property_plus_time as first_property_plus_time,
    has_property_plus as has_property_plus,
    is_fixed as is_fixed,
    resume_period as resume_period,
)
from .oracles import (
    BoundId as BoundId,
    BoundReport as BoundReport,
    BoundViolation as BoundViolation,
    check_bound as check_bound,
    complete_bipartite_two_value_predict as complete_bipartite_two_value_predict,
    complete_two_value_predict as complete_two_value_predict,
    full_degree_config as full_degree_config,
    infinite_path_word as infinite_path_word,
    millpond_config as millpond_config,
    millpond_predict as millpond_predict,
    path_full_degree_predict as path_full_degree_predict,
    path_table_word as path_table_word,
    qf_config as qf_config,
    qf_predict as qf_predict,
    star_preperiod_bound as star_preperiod_bound,
    two_group_predict as two_group_predict,
)
from .state_graph import (
    DEFAULT_WINDOW_CAP as DEFAULT_WINDOW_CAP,
    ConfigWindow as ConfigWindow,
    CycleCensus as CycleCensus,
    StateGraphReport as StateGraphReport,
    build_state_graph as build_state_graph,
    cycle_census as cycle_census,
    enumerate_window as enumerate_window,
    parents_of as parents_of,
    shift_window as shift_window,
    window_size as window_size,
)
from .trials import (
    TrialResult as TrialResult,
    TrialSummary as TrialSummary,
    derive_seed as derive_seed,
    random_config as random_config,
    run_trials as run_trials,
)
from .verify import (
    OracleReport as OracleReport,
    SearchReport as SearchReport,
    SuiteParams as SuiteParams,
    search_millpond_excess as search_millpond_excess,
    verify_oracle as verify_oracle,
)


__all__ = [
    "cli",
    "dynamics",
    "errors",
    "exportable",
    "graph",
    "oracles",
    "periodicity",
    "presets",
    "state_graph",
    "trials",
    "utils",
    "verify",
]
