"""Ultrametric spaces generated by vertex-labeled trees.

The distance between two vertices of a labeled tree is the largest label on
the path joining them. This package builds those spaces exactly (rational
arithmetic throughout), decides whether a finite ultrametric space is star
generated, realizes it as a labeled star when it is, compares spaces up to
isometry through canonical dendrogram forms, classifies trees by how many
high-degree vertices they carry, and verifies the structural theorems
behind all of that by exhaustive enumeration at desk scale.
"""

from .errors import (
    BadEdge,
    BudgetExceeded,
    CapExceeded,
    DegenerateLabeling,
    DegenerateResult,
    EmptySubset,
    EmptyVertexSet,
    HasCycle,
    NoLongPath,
    NotConnected,
    NotUS,
    ParseError,
    PositivityViolation,
    SamePoint,
    StrongTriangleViolation,
    SymmetryViolation,
    UltratreeError,
    UnknownPoint,
    UnknownVertex,
)
from .labelings import (
    LabeledTree,
    build_ultrametric,
    counterexample_labeling,
    enumerate_labelings,
    extend_labeling,
    is_nondegenerate,
    raw_distance_matrix,
)
from .rationals import (
    coerce_nonnegative,
    coerce_rational,
    format_rational,
    parse_rational,
)
from .serialize import (
    labeled_tree_from_dict,
    labeled_tree_to_dict,
    space_from_dict,
    space_to_dict,
    tree_from_dict,
    tree_to_dict,
)
from .spaces import (
    CanonicalForm,
    FiniteUltrametricSpace,
    canonical_form,
    check_isometric,
    realize_as_star,
    restrict,
    us_witness,
    validate_ultrametric,
)
from .trees import (
    Tree,
    TreeClass,
    TreeKind,
    classify,
    degree,
    enumerate_trees,
    high_degree_vertices,
    longest_path_length,
    unique_path,
    validate_tree,
)
from .verify import (
    DEFAULT_CASE_BUDGET,
    DEFAULT_MAX_ORDER,
    DEFAULT_VALUES,
    MAIN_SUBCHECKS,
    Certificate,
    VerificationReport,
    certificate_from_dict,
    certificate_to_dict,
    predicted_cases,
    replay_certificate,
    report_to_dict,
    verify_classification,
    verify_main_theorem,
    verify_structure_lemmas,
    verify_theorem_nondegeneracy,
)

__version__ = "0.1.0"
