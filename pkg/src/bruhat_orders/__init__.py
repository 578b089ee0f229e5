"""Higher Bruhat orders: packets, admissible orders, realizable sets, flip
posets, the ladder orders of words, and affine experiments."""

from .affine import (
    AffineKSet,
    PeriodicPermutation,
    affine_check_realizable,
    affine_packet,
    affine_source_sink_report,
    affine_sweep,
    affine_word_inversions,
    iter_affine_admissible_orders,
)
from .errors import (
    BruhatError,
    BudgetExceededError,
    InternalConsistencyError,
    InvalidArgumentError,
    NotAChainError,
    NotAdmissibleError,
    NotRealizableError,
    NotReducedError,
    VerificationFailure,
)
from .flips import FlipResult, bubble_up, come_together, find_flips, move_down
from .ksets import KSet, Packet, enumerate_ksets, kset, packet, parse_kset, shared_packet
from .orders import (
    KOrder,
    anti_order,
    elementary_neighbors,
    equivalence_class,
    flippable_bruteforce,
    inversion_set,
    is_admissible,
    is_admissible_on,
    iter_admissible_orders,
    korder,
    lex_order,
    maximal_order,
    minimal_order,
    order_with_inversions,
    packet_flip,
    parse_korder,
    transpose,
)
from .poset import (
    BruhatNode,
    BruhatPoset,
    build_bnk,
    build_paths_to_J,
    extend_to_max_chain,
    maximal_chains,
    verify_ziegler_iso,
)
from .realizable import (
    RealizableSet,
    Segmentation,
    check_convex,
    check_realizable,
    forbidden_segmentations,
    segmentation,
    single_step_leq,
)
from .words import (
    LMLadder,
    Word,
    all_reduced_words,
    build_bi,
    check_counterexample_n9,
    commutation_classes,
    forbidden_ladder_segmentations,
    lm_ladder,
    parse_word,
    permutation,
    rex_order,
    verify_ladder_structure,
    word_inversions,
    word_to_order,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
