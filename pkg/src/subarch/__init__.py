"""Near-optimal subarchitecture sets for quantum circuit mapping.

Enumeration of connected induced subarchitectures, distance-order candidate
sets, bounded greedy coverings, and an exact small-scale SWAP oracle, exposed
as a library, an HTTP service, and a CLI.
"""

__version__ = "0.1.0"

from .architecture import (
    Architecture,
    architecture_from_definition,
    bundled_device_names,
    load_architecture,
    load_bundled,
    resolve_architecture,
)
from .candidates import (
    CandidateSet,
    OrderWitness,
    added_qubit_bound,
    candidates,
    desirable_set,
    minimal_saturated_supersets,
    optimal_candidates,
    precedes,
    strictly_extends,
    strictly_precedes,
)
from .circuits import Circuit, concat, interaction_circuit, parse_circuit, repeat
from .covering import Covering, cover, covering_queue
from .dot import export_dot, export_subarch_dot
from .enumeration import (
    Census,
    IsoClassSet,
    SubarchRef,
    census,
    enumerate_connected,
    iso_classes,
)
from .errors import (
    CombinationLimitError,
    HashMismatchError,
    LibraryFormatError,
    ResourceLimitError,
    SubarchError,
    TimeLimitError,
    UsageError,
    ValidationError,
)
from .graphs import (
    UNREACHABLE,
    DistanceMatrix,
    Embedding,
    Graph,
    all_pairs_shortest_paths,
    are_isomorphic,
    automorphisms,
    canonical_key,
    could_embed,
    diameter,
    find_distance_preserving_embedding,
    find_monomorphism,
    induced_subgraph,
    invariant_signature,
    is_connected,
    path_graph,
    ring_graph,
    star_graph,
)
from .library import (
    CandidateLibrary,
    LibraryEntry,
    build_library,
    library_document,
    library_from_document,
    load_library,
    save_library,
)
from .oracle import (
    CoverageReport,
    MappingResult,
    WitnessReport,
    compare_coverage,
    host_advantage_witness,
    make_subarch,
    minimum_swaps,
    replay,
    transformation_swaps,
)
