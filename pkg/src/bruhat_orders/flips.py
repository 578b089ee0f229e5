"""Greedy search for flippable packets without enumerating equivalence classes.

Whether a packet can be reversed in *some* commutation-equivalent order is
decidable greedily: take the minimal contiguous segment containing the
packet, then clear out each interloper, lowest first.  An interloper either
commutes down below the packet (it shares no packet with the members beneath
it) or must bubble up past the last member, recursively displacing blocking
non-members; a blocking *member* kills the attempt.  Run over all packets a
given order traces lexicographically, this computes exactly the
lexicographically-oriented half of the class's flippable set; the other half
is obtained by transposing the order first, since reversal swaps the two
orientations on every packet.

The rearrangements are tracked as an explicit log of adjacent swaps, each
between two sets sharing no packet, so the log certifies membership in the
starting order's equivalence class.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalConsistencyError, MalformedSliceError
from .ksets import KSet, enumerate_ksets, packet
from .orders import LEX, KOrder, induced_orientation
from .realizable import RealizableSet


@dataclass(frozen=True)
class FlipResult:
    """One gatherable packet: where it can be flipped and how it got there."""

    generator: KSet
    rearranged_order: KOrder  # equivalent order with the packet gathered, then reversed
    pre_flip_order: KOrder    # same order just before the reversal
    moves: int                # adjacent swaps spent gathering the packet


def move_down(prefix, elt: KSet) -> bool:
    """True when ``elt`` shares a packet with nothing in ``prefix``.

    >>> from .ksets import kset
    >>> move_down([kset([1, 2], 4)], kset([3, 4], 4))
    True
    >>> move_down([kset([1, 2], 4), kset([1, 3], 4)], kset([1, 4], 4))
    False
    >>> move_down([], kset([1, 2], 4))
    True
    """
    return all(not p.shares_packet(elt) for p in prefix)


def bubble_up(head: KSet, segment, packet_members) -> tuple[bool, tuple[KSet, ...], list[int]]:
    """Try to move ``head`` above the last packet member of ``segment``.

    ``segment`` starts with ``head``.  Elements rise one adjacent swap at a
    time; a blocking non-member is bubbled first (recursion carried on an
    explicit stack, depth capped by the segment length), a blocking member is
    a definitive failure.  Returns (success, rearranged segment, swap log);
    on failure the segment reflects the swaps made so far.
    """
    seg = list(segment)
    if not seg or seg[0] != head:
        raise MalformedSliceError("segment must start with the element being raised")
    members = set(packet_members)
    swaps: list[int] = []
    stack = [head]
    while stack:
        if len(stack) > len(seg):
            raise InternalConsistencyError("bubble stack exceeded segment length")
        x = stack[-1]
        i = seg.index(x)
        if not any(y in members for y in seg[i + 1:]):
            stack.pop()
            continue
        y = seg[i + 1]
        if not x.shares_packet(y):
            seg[i], seg[i + 1] = y, x
            swaps.append(i)
        elif y in members:
            return False, tuple(seg), swaps
        else:
            stack.append(y)
    return True, tuple(seg), swaps


def come_together(segment, pac) -> tuple[bool, tuple[KSet, ...], list[int]]:
    """Gather a packet into a contiguous block by commutation moves.

    ``segment`` must be the minimal contiguous slice containing all packet
    members, so both endpoints are members.  Interlopers are cleared lowest
    first: down past the members beneath them when possible, otherwise up
    past the last member.  Returns (success, rearranged segment, swap log);
    on failure the segment is the best effort reached.

    >>> from .ksets import kset
    >>> from .orders import parse_korder
    >>> seg = parse_korder("12<13<14<23", 4).elements
    >>> ok, out, swaps = come_together(seg, [kset([1, 2], 4), kset([1, 3], 4), kset([2, 3], 4)])
    >>> ok, "<".join(m.text() for m in out)
    (True, '12<13<23<14')
    """
    members = list(pac)
    member_set = set(members)
    seg = list(segment)
    if seg[0] not in member_set or seg[-1] not in member_set:
        raise MalformedSliceError("segment endpoints must be packet members")
    swaps: list[int] = []
    while True:
        positions = [i for i, e in enumerate(seg) if e in member_set]
        lo, hi = positions[0], positions[-1]
        if hi - lo + 1 == len(positions):
            return True, tuple(seg), swaps
        blocker_pos = next(i for i in range(lo + 1, hi) if seg[i] not in member_set)
        below = [seg[i] for i in range(lo, blocker_pos) if seg[i] in member_set]
        x = seg[blocker_pos]
        if move_down(below, x):
            for j in range(blocker_pos - 1, lo - 1, -1):
                seg[j], seg[j + 1] = seg[j + 1], seg[j]
                swaps.append(j)
        else:
            ok, tail, tail_swaps = bubble_up(x, seg[blocker_pos:hi + 1], member_set)
            seg[blocker_pos:hi + 1] = tail
            swaps.extend(s + blocker_pos for s in tail_swaps)
            if not ok:
                return False, tuple(seg), swaps


def find_flips(rho: KOrder, domain: RealizableSet | None = None) -> list[FlipResult]:
    """All packets the order traces lexicographically that gather somewhere
    in its equivalence class, each with the gathered-and-reversed order.

    Transposing the input (full domains only) and transposing the results
    yields the antilexicographically-oriented half, so both halves of the
    class's flippable set are reachable.  Results are sorted by generator.
    Successful rearrangements carry over to later candidates: every attempt
    starts from an order already known to be equivalent to the input.
    """
    if domain is None:
        if rho.k == rho.n:
            return []
        candidates = enumerate_ksets(rho.n, rho.k + 1)
        present = rho.domain
    else:
        if rho.domain != domain.members:
            raise MalformedSliceError("order does not range over the given domain")
        candidates = sorted(domain.full_class)
        present = domain.members

    results: list[FlipResult] = []
    current = list(rho.elements)
    for X in candidates:
        members = packet(X).members
        if any(m not in present for m in members):
            continue
        order_now = KOrder(tuple(current))
        if induced_orientation(order_now, members) != LEX:
            continue
        pos = order_now.position
        ranks = sorted(pos[m] for m in members)
        lo, hi = ranks[0], ranks[-1]
        ok, segment, swaps = come_together(current[lo:hi + 1], members)
        if not ok:
            continue
        current[lo:hi + 1] = segment
        block_ranks = sorted(i for i, e in enumerate(current) if e in set(members))
        b_lo, b_hi = block_ranks[0], block_ranks[-1]
        pre_flip = KOrder(tuple(current))
        flipped = KOrder(
            tuple(current[:b_lo])
            + tuple(reversed(current[b_lo:b_hi + 1]))
            + tuple(current[b_hi + 1:])
        )
        results.append(
            FlipResult(
                generator=X,
                rearranged_order=flipped,
                pre_flip_order=pre_flip,
                moves=len(swaps),
            )
        )
    return results


def up_flip_generators(rho: KOrder, domain: RealizableSet | None = None) -> list[KSet]:
    """Generators of the lexicographically-oriented flippable packets."""
    return [r.generator for r in find_flips(rho, domain)]
