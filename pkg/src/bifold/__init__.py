"""BiFold: joint low-dimensional embedding of bipartite binary datasets.

Places both object classes of a binary relation matrix into a common
low-dimensional space by minimizing a weighted stress over a joint
dissimilarity matrix.
"""

from .dataset import (
    BinaryRelationMatrix,
    CellValue,
    Dataset,
    ObjectClass,
    ObjectMeta,
    from_arrays,
    load,
    parse_csv,
    parse_json,
    serialize_csv,
    serialize_json,
    transpose,
)
from .dissimilarity import (
    BlockResult,
    EstimatorKind,
    PairStats,
    bernoulli_cross,
    bernoulli_within,
    compute_blocks,
    jaccard_within,
    membership_cross,
    pair_stats,
    pooled_rate,
    raw_hamming_blocks,
)
from .embedding import (
    EmbeddingConfig,
    EmbeddingResult,
    SweepResult,
    classical_mds_init,
    embed,
    embed_problem,
    pca_align,
    smacof,
    stress,
    sweep,
)
from .errors import (
    BifoldError,
    DataError,
    NoCommonObservations,
    NumericError,
    PreconditionError,
)
from .joint import JointProblem, ScalingParams, assemble, build_joint, default_params
from .render import (
    PlotSpec,
    coordinates_payload,
    edges_from_dataset,
    to_coordinates_csv,
    to_coordinates_json,
    to_svg,
)

__version__ = "0.1.0"
