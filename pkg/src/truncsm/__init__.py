"""Truncated-density estimation by boundary-distance-weighted score matching."""

from .baselines import (
    NormalizerEstimate,
    estimate_log_z,
    fit_mle_untruncated,
    fit_rjmle,
    make_normalizer,
)
from .data import (
    DataError,
    Dataset,
    clip_to_domain,
    load_points_csv,
    read_dataset,
    sample_truncated,
    sample_truncated_n,
    write_dataset,
)
from .estimator import (
    EstimatorError,
    FitOptions,
    FitReport,
    fh_divergence,
    fit,
    ibp_identity_check,
    match_centers,
    objective,
    objective_grad,
)
from .geometry import (
    Box,
    ConvexPolytope,
    DimensionMismatchError,
    DisjointUnion,
    Euclidean,
    GeometryError,
    Halfspace,
    L1,
    Mahalanobis,
    MetricBall,
    OutsideDomainError,
    Polygon,
    UnboundedDomainError,
    UnsupportedPairingError,
    WeightSpec,
    WeightTable,
    bounding_box,
    contains,
    contains_batch,
    distance,
    distance_batch,
    hemi_l1_ball,
    load_halfspaces,
    load_polygon,
    scale_template,
    template_domain,
    unit_square,
)
from .models import GaussianMean, IsotropicGMM, ScoreEval, fd_check, score_eval
from .optim import MinimizeResult, minimize_qn

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
