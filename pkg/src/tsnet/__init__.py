"""Time series to yearly complex networks via DTW, with temporal network analysis."""
from .distance import BACKEND, DistanceMatrix, WarpingPath, distance_matrix, dtw, dtw_path, normalize_matrix
from .errors import InputError, InvariantError, PipelineError, TsnetError
from .graphalg import Partition, degree, density, detect_communities, local_clustering, modularity
from .netbuild import Network, eps_network, knn_network, significant_links_network, weighted_network
from .temporal import (
    EdgeDiff,
    MethodReport,
    MethodSpec,
    YearlyNetworks,
    edge_diff,
    method_selection_report,
    top_degree_nodes,
    yearly_networks,
)
from .tseries import (
    LandingRecord,
    MonthRange,
    SeriesSet,
    TimeSeries,
    aggregate_monthly,
    impute_gap,
    normalize,
    slice_year,
)

__version__ = "0.1.0"
