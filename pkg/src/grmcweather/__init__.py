# -*- coding: utf-8 -*-
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, version 2 of the License.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# vim:sw=4:ts=4:et
from .exceptions import (  # noqa: F401
    DataError,
    EvaluationError,
    GraphError,
    GrmcError,
    InsufficientDataError,
    MaskError,
    SingularSubproblemError,
    SolverError,
)
from .baselines import (  # noqa: F401
    idw_complete,
    mean_fill_complete,
    pca_complete,
)
from .completion import (  # noqa: F401
    CompletionResult,
    FactorPair,
    evaluate_rmse,
)
from .data import (  # noqa: F401
    ObservationMatrix,
    Station,
    ingest_observations,
    slice_weeks,
    synthesize_network,
)
from .experiments import (  # noqa: F401
    ABLATION_CASES,
    AblationCase,
    ExperimentPlan,
    HyperGrid,
    Hyperparameters,
    split_train_test,
)
from .grals import GralsParams, grals_complete  # noqa: F401
from .graphs import (  # noqa: F401
    LagSet,
    SpatialGraphConfig,
    WeightedGraph,
    build_spatial_graph,
    build_temporal_graph,
    laplacian,
)
from .harness import (  # noqa: F401
    MonteCarloHarness,
    evaluate_test,
    run_ablation,
    run_baselines,
    tune,
)
from .masks import MaskScenario, apply_mask, generate_mask  # noqa: F401
from .softimpute import (  # noqa: F401
    soft_threshold_svd,
    softimpute_complete,
)
