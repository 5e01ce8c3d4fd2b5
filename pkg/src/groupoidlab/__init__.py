"""groupoidlab: an exact-arithmetic laboratory for etale groupoid models
of topological graph algebras over minimal dynamics.

The package builds graphs over Z x X driven by a free minimal system on
Z (a golden-ratio circle rotation or the 2-adic odometer, both with
decidable equality), and mechanically checks: minimality, contracting
witnesses, absence of regular vertices, groupoid axioms, principality,
and the K-theory and dimension bookkeeping of the construction.
"""

from .qphi import GOLDEN_ANGLE, PHI, QPhi, qphi_sign
from .spaces import (
    Arc,
    CantorBackend,
    CantorBox,
    CircleBackend,
    CircleBox,
    CirclePoint,
    CountableBackend,
    FiniteBackend,
    FiniteBox,
    FinitePoint,
    MinimalSystem,
    PadicPoint,
    PairPoint,
    ProductBackend,
    ProductBox,
    canonicalize,
    circle_rotate,
    dense_sequence,
    eps_dense,
    finite_cyclic,
    freeness_check,
    golden_rotation,
    odometer,
    odometer_succ,
    orbit_density_check,
    point_backend,
)
from .graphs import (
    ContractingWitness,
    DiscreteEdge,
    DiscreteGraph,
    FinitePath,
    IndexSet,
    ModelEdge,
    ModelGraph,
    OneVertexLoopGraph,
    OpenPathBox,
    build_model_graph,
    compose_paths,
    find_contracting_witness,
    orbit_plus,
    pitchfork,
    vertex_path,
    verify_contracting_witness,
    witness_path,
)
from .boundary import (
    ApproachPointRule,
    BasePointTail,
    ConstantPointRule,
    ConstantTail,
    EscapingTail,
    EvPeriodic,
    FiniteBoundaryPath,
    HeadOnlyTail,
    InfiniteDiscretePath,
    InfiniteModelPath,
    SequenceDescription,
    ShiftDomainError,
    converges,
    homeo_h,
    homeo_h_inv,
    param_f,
    param_f_inv,
    param_f_k,
    path_from_line,
    path_to_line,
    shift,
    shift_power,
)
from .groupoid import (
    BasicOpenBisection,
    DRGroupoid,
    GroupoidElement,
    PathCylinder,
    axiom_sample,
    basic_bisection,
    complete_relation,
    compose,
    inverse,
    isotropy_reduction,
    isotropy_search,
    make_element,
    principality_sample,
    product,
    reduce_clopen,
    unit,
)
from .ktheory import (
    DimBudget,
    FGAbelianGroup,
    SymbolicGroup,
    Z_POINTED,
    ZERO_GROUP,
    dim_bound,
    graph_ktheory,
    invariant_factors,
    model_ktheory,
    snf,
    stabilize_ktheory,
    z_factor_ktheory,
)
from .reports import CheckRecord, Report

__all__ = [name for name in dir() if not name.startswith("_")]
