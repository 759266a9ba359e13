"""Graph proximity/distance measure families and a clustering benchmark."""

__version__ = "0.1.0"

from ._accel import USING_NUMBA
from .clustering import (
    Dendrogram,
    Partition,
    adjusted_rand_index,
    cut_dendrogram,
    rand_index,
    ward_cluster,
    ward_linkage,
)
from .families import (
    FAMILIES,
    FAMILY_NAMES,
    DistanceMatrix,
    MeasureFamily,
    ProximityMatrix,
    family,
)
from .generators import (
    BlockModelSpec,
    block_model_spec,
    generate,
    six_class_spec,
    two_class_unequal_spec,
    uniform_spec,
)
from .graph import (
    DegreeData,
    Graph,
    build_graph,
    degree_data,
    is_connected,
    laplacian,
    shortest_path_matrix,
)
from .measures import (
    FamilyEvaluator,
    comm_kernel,
    ct_kernel,
    family_matrix,
    forest_kernel,
    heat_kernel,
    log_kernel,
    pwalk_kernel,
    resistance_distance,
    rsp_fe_distance,
    sct_scct_kernel,
    spct_distance,
)
from .evaluation import (
    RejectCurve,
    Statistic,
    SweepResult,
    TournamentResult,
    average_reject_curves,
    best_params_table,
    copeland_tournament,
    parameter_grid,
    reject_curve,
    reject_experiment,
    sweep,
    sweep_graphs,
    sweep_task,
)
from .spectral import (
    SymmetricEigen,
    matrix_exp_sym,
    pinv_laplacian,
    solve_linear,
    sym_eigen,
)
from .datasets import (
    DatasetDescriptor,
    dataset_descriptor,
    load_dataset,
    load_graph,
    registry,
)
from .transforms import (
    clustering_sqdist,
    distance_to_kernel,
    proximity_to_distance,
    reject_distance,
)
