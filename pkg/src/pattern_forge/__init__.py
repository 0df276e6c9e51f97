"""Permutation patterns: containment, basis discovery and sorting-device preimages."""

from .bisc import avoiders_upto, bisc, enumerate_avoiders, forb, mine, verify_basis
from .corpus import named_class, rsk_shape, shape_contains
from .errors import (InvalidCandidateError, InvalidDepthError, InvalidOccurrenceError,
                     InvalidPermutationError, InvalidWordError, ParseError, PatternForgeError,
                     ResourceLimitError, UnknownClassError, UnsupportedDeviceError)
from .notation import format_pattern, parse_pattern, parse_perm
from .patterns import (DecoratedPattern, MarkedMeshPattern, MeshPattern, ShadingFamily, contains,
                       contains_classical, contains_decorated, contains_marked, contains_mesh,
                       expand_marked, maximal_shading, minimal_blockers, shading_consequence)
from .perm import Perm, flatten, inversions
from .preimage import (Device, brute_force_preimage, cand_queue, cand_stack,
                       decorate_queue_candidate, decorate_stack_candidate, make_vd,
                       preimage_basis)
from .sorters import (SortingPipeline, avoids_4312_linear, queue_sort, quicksort_pass,
                      run_pipeline, stack_sort, stack_sort_depth)

__version__ = "0.1.0"
