from .certificate import (
    CutCertificate,
    CutStep,
    cut_partition,
    spanning_structure_edges,
    unicyclic_lower_bound,
)
from .decomposition import (
    TreeDecomposition,
    Violation,
    check,
    decompose_tree,
    decompose_unicyclic,
    is_normal,
    normalize,
    parse_td,
    read_td,
    validate,
    write_td,
)

__all__ = [
    "CutCertificate",
    "CutStep",
    "TreeDecomposition",
    "Violation",
    "check",
    "cut_partition",
    "decompose_tree",
    "decompose_unicyclic",
    "is_normal",
    "normalize",
    "parse_td",
    "read_td",
    "spanning_structure_edges",
    "unicyclic_lower_bound",
    "validate",
    "write_td",
]
