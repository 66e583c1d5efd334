"""netgaps: missing-edge models for networks, edge scoring, and the damage
they do to community detection."""

from .graph import (
    Graph,
    EdgeListParseError,
    UNREACHABLE,
    bfs_distances,
    connected_components,
    induced_subgraph,
    is_connected,
    load_edge_list,
    min_eccentricity_vertices,
    save_edge_list,
    transitivity,
    would_disconnect,
)
from .generators import (
    ErParams,
    GenerationError,
    LfrParams,
    PlantedGraph,
    generate_er,
    generate_lfr,
    intercommunity_fraction,
)
from .degrade import (
    CommunitySuite,
    DegradationError,
    DegradationModel,
    DegradedNetwork,
    RemovedEdgeCounts,
    classify_removed,
    crawl,
    limited_degree_delete,
    make_community_suite,
    random_delete,
)
from .linkpred import (
    SCORER_IDS,
    ScoredPairs,
    available_scorers,
    candidate_pairs,
    register_scorer,
    score,
    score_all,
    unregister_scorer,
)
from .community import (
    AucResult,
    Partition,
    auc,
    auc_from_scores,
    label_propagation,
    louvain,
    louvain_history,
    modularity,
    nmi,
    reference_partition,
)
from .harness import (
    ExperimentPlan,
    ResultRow,
    SummaryRow,
    read_rows,
    run_community_pipeline,
    run_experiment,
    run_prediction_pipeline,
    summarize,
    write_rows,
    write_summary,
)
from .seeds import derive_seed

__version__ = "0.1.0"
