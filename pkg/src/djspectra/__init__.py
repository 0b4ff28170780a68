"""Distance spectra of double joins of merged subdivision graphs.

The closed-form spectra are cross-checked against a BFS distance matrix
diagonalised by a cyclic Jacobi eigensolver.
"""

from .distance import (
    TEMPLATES,
    TemplateSpec,
    diameter,
    distance_energy,
    distance_matrix,
    distance_spectrum,
    validate_template,
)
from .equienergetic import (
    FamilyReport,
    build_family,
    cycle_family,
    partitions_ge3,
    verify_family,
)
from .errors import (
    AlignmentError,
    ComplexRootError,
    ConvergenceError,
    DisconnectedError,
    EmptyListError,
    FamilySizeError,
    LengthMismatchError,
    NoEdgesError,
    ParseError,
    PreconditionError,
    SizeError,
    SpectraError,
    TemplateMismatch,
    VerificationError,
)
from .expr import evaluate, parse, pretty
from .graph import (
    Graph,
    checks,
    complement,
    disjoint_union,
    incidence,
    line_graph,
    make_complete,
    make_cycle,
    make_empty,
)
from .numlin import (
    Provenance,
    Quartic,
    Spectrum,
    eigen_sym,
    energy,
    jacobi_eigh,
    multiset_compare,
    quartic_roots,
    singular_values,
)
from .theory import (
    AlignedSpectralData,
    align_T32,
    align_T33,
    align_T34,
    align_T35,
    closed_form_spectrum,
    f_coefficients,
    numeric_spectrum,
    quotient_matrix,
    spectrum_of_P,
    verify_instance,
)
from .transforms import (
    BlockedGraph,
    H1Kind,
    H2Kind,
    MergedSubdivision,
    double_join,
    double_join_raw,
    merged_subdivision,
    subdivision,
)

__version__ = "0.1.0"

__all__ = [
    "AlignedSpectralData",
    "AlignmentError",
    "BlockedGraph",
    "ComplexRootError",
    "ConvergenceError",
    "DisconnectedError",
    "EmptyListError",
    "FamilyReport",
    "FamilySizeError",
    "Graph",
    "H1Kind",
    "H2Kind",
    "LengthMismatchError",
    "MergedSubdivision",
    "NoEdgesError",
    "ParseError",
    "PreconditionError",
    "Provenance",
    "Quartic",
    "SizeError",
    "SpectraError",
    "Spectrum",
    "TEMPLATES",
    "TemplateMismatch",
    "TemplateSpec",
    "VerificationError",
    "align_T32",
    "align_T33",
    "align_T34",
    "align_T35",
    "build_family",
    "checks",
    "closed_form_spectrum",
    "complement",
    "cycle_family",
    "diameter",
    "disjoint_union",
    "distance_energy",
    "distance_matrix",
    "distance_spectrum",
    "double_join",
    "double_join_raw",
    "eigen_sym",
    "energy",
    "evaluate",
    "f_coefficients",
    "incidence",
    "jacobi_eigh",
    "line_graph",
    "make_complete",
    "make_cycle",
    "make_empty",
    "merged_subdivision",
    "multiset_compare",
    "numeric_spectrum",
    "parse",
    "partitions_ge3",
    "pretty",
    "quartic_roots",
    "quotient_matrix",
    "singular_values",
    "spectrum_of_P",
    "subdivision",
    "validate_template",
    "verify_family",
    "verify_instance",
]
