"""Total orders on collections of k-sets: admissibility, inversions, flips.

A ``KOrder`` lists k-sets by rank.  Over the full domain C(n,k) an order is
admissible when it induces the lexicographic or antilexicographic order on
every packet.  Over a realizable domain J the induced order is pinned on
packets in J's suffix class (antilexicographic) and prefix class
(lexicographic) and free on full packets.  The inversion set collects the
generators ordered antilexicographically, together with the whole suffix
class when the domain is partial.

Elementary equivalence (swapping adjacent elements that share no packet) is
the commutation move; reversing a contiguous packet is the flip move.  The
brute-force flippability oracle here enumerates a whole equivalence class
and is the ground truth the greedy flip search is tested against.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    BudgetExceededError,
    DomainMismatchError,
    InternalConsistencyError,
    InvalidArgumentError,
    NotAChainError,
    NotAdmissibleError,
)
from .ksets import KSet, enumerate_ksets, packet, parse_kset
from .realizable import EMPTY, FULL, MIXED, PREFIX, SUFFIX, RealizableSet

DEFAULT_CLASS_CAP = 10**6


@dataclass(frozen=True)
class KOrder:
    """A duplicate-free sequence of same-size k-sets; position = rank."""

    elements: tuple[KSet, ...]

    def __post_init__(self):
        seen = set()
        for e in self.elements:
            if e in seen:
                raise InvalidArgumentError(f"duplicate entry {e.text()} in order")
            seen.add(e)
        if self.elements:
            n, k = self.elements[0].n, self.elements[0].k
            for e in self.elements:
                if e.n != n or e.k != k:
                    raise InvalidArgumentError(
                        f"entry {e.text()} does not match ambient (n={n}, k={k})"
                    )

    @property
    def n(self) -> int:
        return self.elements[0].n

    @property
    def k(self) -> int:
        return self.elements[0].k

    @cached_property
    def domain(self) -> frozenset[KSet]:
        return frozenset(self.elements)

    @cached_property
    def position(self) -> dict[KSet, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def text(self) -> str:
        return "<".join(e.text() for e in self.elements)

    def to_json(self) -> list[list[int]]:
        return [e.to_json() for e in self.elements]

    def __str__(self):
        return self.text()


def korder(elements) -> KOrder:
    return KOrder(tuple(elements))


def parse_korder(text: str, n: int) -> KOrder:
    """Parse '23<13<24<14<12<34' with positional diagnostics on bad entries."""
    parts = text.split("<")
    elems = []
    k = None
    for i, part in enumerate(parts):
        try:
            e = parse_kset(part, n)
        except InvalidArgumentError as exc:
            raise InvalidArgumentError(f"entry {i} ({part!r}): {exc}") from exc
        if k is None:
            k = e.k
        elif e.k != k:
            raise InvalidArgumentError(f"entry {i} ({part!r}) has size {e.k}, expected {k}")
        if e in elems:
            raise InvalidArgumentError(f"entry {i} ({part!r}) duplicates an earlier entry")
        elems.append(e)
    return KOrder(tuple(elems))


# orientation of a packet's trace inside an order
LEX = "lex"
ANTI = "anti"


def induced_orientation(rho: KOrder, members: list[KSet]) -> str | None:
    """LEX/ANTI when the order restricted to ``members`` (given lex-sorted)
    is monotone, None otherwise.  Fewer than two members count as LEX and
    ANTI at once; we return LEX by convention and callers treat short traces
    as unconstrained."""
    pos = rho.position
    ranks = [pos[m] for m in members]
    if all(a < b for a, b in zip(ranks, ranks[1:])):
        return LEX
    if all(a > b for a, b in zip(ranks, ranks[1:])):
        return ANTI
    return None


def _full_domain(rho: KOrder) -> None:
    expected = frozenset(enumerate_ksets(rho.n, rho.k))
    if rho.domain != expected:
        raise DomainMismatchError(
            f"order covers {len(rho.domain)} of the {len(expected)} sets in C({rho.n},{rho.k})"
        )


def is_admissible(rho: KOrder) -> tuple[bool, list[KSet]]:
    """Full-domain admissibility; returns the generators of violating packets.

    >>> ok, bad = is_admissible(parse_korder("23<13<24<14<12<34", 4))
    >>> ok, bad
    (True, [])
    >>> ok, bad = is_admissible(parse_korder("12<13<34<14<24<23", 4))
    >>> ok, [b.text() for b in bad]
    (False, ['134'])
    """
    _full_domain(rho)
    violations = []
    if rho.k == rho.n:
        return True, violations
    for X in enumerate_ksets(rho.n, rho.k + 1):
        if induced_orientation(rho, packet(X).members) is None:
            violations.append(X)
    return not violations, violations


def is_admissible_on(rho: KOrder, J: RealizableSet) -> bool:
    """Admissibility over a realizable domain J.

    The induced order must be antilexicographic on packets in J's suffix
    class, lexicographic on its prefix class, and either on full packets.
    Packets meeting J in fewer than two elements impose nothing.
    """
    if rho.domain != J.members:
        raise DomainMismatchError("order does not range over the given realizable set")
    for X, members, label in _constrained_packets(J):
        orientation = induced_orientation(rho, members)
        if label == FULL or label == MIXED:
            if orientation is None:
                return False
        elif label == SUFFIX:
            if orientation != ANTI:
                return False
        elif label == PREFIX:
            if orientation != LEX:
                return False
    return True


def _constrained_packets(J: RealizableSet):
    """Generators whose packets meet J in >= 2 members, with the trace and label.

    Enumerated as unions of member pairs sharing a packet, so the cost scales
    with |J| rather than with C(n,k+1).
    """
    members = sorted(J.members)
    seen: set[KSet] = set()
    out = []
    for i, A in enumerate(members):
        for B in members[i + 1:]:
            if not A.shares_packet(B):
                continue
            X = A.union(B)
            if X in seen:
                continue
            seen.add(X)
            trace = [m for m in packet(X).members if m in J.members]
            out.append((X, trace, J.classify(X)))
    return sorted(out, key=lambda item: item[0])


def inversion_set(rho: KOrder, J: RealizableSet | None = None) -> frozenset[KSet]:
    """Inversion set of an admissible order.

    Full domain: the generators whose packets the order reverses.  Domain J:
    the full-class generators ordered antilexicographically, plus all of J's
    suffix class (so singleton traces inside suffix packets still count).

    >>> inv = inversion_set(parse_korder("23<13<24<14<12<34", 4))
    >>> sorted(x.text() for x in inv)
    ['123', '124']
    """
    if J is None:
        ok, violations = is_admissible(rho)
        if not ok:
            raise NotAdmissibleError(
                f"order is not admissible; violating packets: "
                f"{[v.text() for v in violations]}",
                violations,
            )
        if rho.k == rho.n:
            return frozenset()
        return frozenset(
            X
            for X in enumerate_ksets(rho.n, rho.k + 1)
            if induced_orientation(rho, packet(X).members) == ANTI
        )
    if not is_admissible_on(rho, J):
        raise NotAdmissibleError("order is not admissible on its domain")
    inv = set(J.suffix_class)
    for X in J.full_class:
        if induced_orientation(rho, packet(X).members) == ANTI:
            inv.add(X)
    return frozenset(inv)


def transpose(rho: KOrder) -> KOrder:
    """Reversed order; reverses every packet, complementing the inversion set."""
    return KOrder(tuple(reversed(rho.elements)))


def complement_inversions(inv: frozenset[KSet], n: int, k: int) -> frozenset[KSet]:
    """Complement inside C(n,k+1)."""
    return frozenset(enumerate_ksets(n, k + 1)) - inv


def elementary_neighbors(rho: KOrder) -> list[KOrder]:
    """Orders one commutation move away: swap an adjacent pair sharing no packet.

    Neighbors are generated in left-to-right swap-position order, which fixes
    the traversal order of every class enumeration built on top.
    """
    out = []
    elems = rho.elements
    for i in range(len(elems) - 1):
        if not elems[i].shares_packet(elems[i + 1]):
            swapped = elems[:i] + (elems[i + 1], elems[i]) + elems[i + 2:]
            out.append(KOrder(swapped))
    return out


def _class_id_tuples(rho: KOrder, cap: int) -> tuple[list[KSet], set[tuple[int, ...]]]:
    """Commutation-closure BFS over integer id tuples (fast path for oracles)."""
    elems = list(rho.elements)
    m = len(elems)
    commutes = [
        [not elems[i].shares_packet(elems[j]) for j in range(m)] for i in range(m)
    ]
    start = tuple(range(m))
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for i in range(m - 1):
            a, b = current[i], current[i + 1]
            if commutes[a][b]:
                nxt = current[:i] + (b, a) + current[i + 2:]
                if nxt not in seen:
                    if len(seen) >= cap:
                        raise BudgetExceededError(
                            f"equivalence class exceeds cap {cap}", partial=len(seen)
                        )
                    seen.add(nxt)
                    queue.append(nxt)
    return elems, seen


def equivalence_class(rho: KOrder, cap: int = DEFAULT_CLASS_CAP) -> frozenset[KOrder]:
    """BFS closure under commutation moves; all members share one inversion set."""
    elems, id_tuples = _class_id_tuples(rho, cap)
    return frozenset(KOrder(tuple(elems[i] for i in ids)) for ids in id_tuples)


def class_representative(orders) -> KOrder:
    """Lexicographically smallest sequence of a fully enumerated class."""
    return min(orders, key=lambda o: tuple(e.elements for e in o.elements))


def contiguous_packets(rho: KOrder, domain: RealizableSet | None = None) -> frozenset[KSet]:
    """Generators whose full packet occupies consecutive positions in rho."""
    if domain is None:
        if rho.k == rho.n:
            return frozenset()
        candidates = enumerate_ksets(rho.n, rho.k + 1)
        present = rho.domain
    else:
        candidates = sorted(domain.full_class)
        present = domain.members
    pos = rho.position
    out = []
    for X in candidates:
        members = packet(X).members
        if any(m not in present for m in members):
            continue
        ranks = sorted(pos[m] for m in members)
        if ranks[-1] - ranks[0] == len(ranks) - 1:
            out.append(X)
    return frozenset(out)


def flippable_bruteforce(
    rho: KOrder,
    domain: RealizableSet | None = None,
    cap: int = DEFAULT_CLASS_CAP,
) -> frozenset[KSet]:
    """Ground-truth flippable set: union of contiguous packets over the class."""
    if domain is None:
        if rho.k == rho.n:
            return frozenset()
        candidates = enumerate_ksets(rho.n, rho.k + 1)
        present = rho.domain
    else:
        candidates = sorted(domain.full_class)
        present = domain.members

    elems, id_tuples = _class_id_tuples(rho, cap)
    index = {e: i for i, e in enumerate(elems)}
    member_ids = []
    for X in candidates:
        members = packet(X).members
        if all(m in present for m in members):
            member_ids.append((X, frozenset(index[m] for m in members)))

    out: set[KSet] = set()
    for ids in id_tuples:
        pos = {e: i for i, e in enumerate(ids)}
        for X, mids in member_ids:
            if X in out:
                continue
            ranks = sorted(pos[i] for i in mids)
            if ranks[-1] - ranks[0] == len(ranks) - 1:
                out.add(X)
    return frozenset(out)


def packet_flip(rho: KOrder, X: KSet) -> KOrder:
    """Reverse the contiguous packet of X inside rho.

    The result is admissible whenever rho was, and its inversion set differs
    from rho's by exactly {X}.

    >>> flipped = packet_flip(parse_korder("12<13<14<34<24<23", 4), parse_kset("134", 4))
    >>> flipped.text()
    '12<34<14<13<24<23'
    """
    members = packet(X).members
    pos = rho.position
    missing = [m for m in members if m not in pos]
    if missing:
        raise InvalidArgumentError(
            f"packet of {X.text()} is not full in the domain: missing {missing[0].text()}"
        )
    ranks = sorted(pos[m] for m in members)
    lo, hi = ranks[0], ranks[-1]
    if hi - lo != len(members) - 1:
        raise NotAChainError(f"packet of {X.text()} is not contiguous")
    elems = rho.elements
    return KOrder(elems[:lo] + tuple(reversed(elems[lo:hi + 1])) + elems[hi + 1:])


def iter_admissible_orders(
    domain,
    n: int,
    k: int,
    J: RealizableSet | None = None,
):
    """Depth-first enumeration of admissible orders on ``domain``.

    With J given, the suffix/prefix/full constraints of J apply; otherwise
    every packet may be taken in either direction (full-domain admissibility
    when ``domain`` is all of C(n,k)).  Orders are yielded in lexicographic
    sequence order.
    """
    domain = sorted(frozenset(domain))
    constraints = []  # (trace, allowed orientations)
    if J is not None:
        if frozenset(domain) != J.members:
            raise DomainMismatchError("domain does not match the realizable set")
        for _X, trace, label in _constrained_packets(J):
            allowed = {
                SUFFIX: (ANTI,),
                PREFIX: (LEX,),
                FULL: (LEX, ANTI),
            }[label]
            constraints.append((trace, allowed))
    else:
        seen: set[KSet] = set()
        for i, A in enumerate(domain):
            for B in domain[i + 1:]:
                if A.shares_packet(B):
                    X = A.union(B)
                    if X not in seen:
                        seen.add(X)
                        trace = [m for m in packet(X).members if m in frozenset(domain)]
                        constraints.append((trace, (LEX, ANTI)))

    by_member: dict[KSet, list[int]] = {}
    for idx, (trace, _allowed) in enumerate(constraints):
        for m in trace:
            by_member.setdefault(m, []).append(idx)

    placed: list[KSet] = []
    placed_per_constraint: list[list[KSet]] = [[] for _ in constraints]

    def compatible(m: KSet) -> bool:
        for idx in by_member.get(m, ()):
            trace, allowed = constraints[idx]
            sofar = placed_per_constraint[idx] + [m]
            ok = False
            if LEX in allowed and sofar == trace[: len(sofar)]:
                ok = True
            if ANTI in allowed and sofar == trace[::-1][: len(sofar)]:
                ok = True
            if not ok:
                return False
        return True

    def rec():
        if len(placed) == len(domain):
            yield KOrder(tuple(placed))
            return
        for m in domain:
            if m in placed_set or not compatible(m):
                continue
            placed.append(m)
            placed_set.add(m)
            for idx in by_member.get(m, ()):
                placed_per_constraint[idx].append(m)
            yield from rec()
            placed.pop()
            placed_set.remove(m)
            for idx in by_member.get(m, ()):
                placed_per_constraint[idx].pop()

    placed_set: set[KSet] = set()
    yield from rec()


def order_with_inversions(
    J: RealizableSet,
    inversions: frozenset[KSet],
) -> KOrder:
    """Deterministic admissible J-order whose inversion set is ``inversions``.

    ``inversions`` must sit between J's suffix class and suffix ∪ full
    classes.  Every constrained packet's direction is forced (antilex for
    suffix-class and inverted full generators, lex otherwise) and a smallest-
    first topological sort of the forced pair constraints produces the order.
    """
    suf, pre, full, _ = J.partition
    if not (suf <= inversions <= suf | full):
        raise InvalidArgumentError(
            "inversion set must lie between the suffix class and suffix ∪ full"
        )
    force_anti = suf | (inversions & full)
    edges: dict[KSet, set[KSet]] = {m: set() for m in J.members}
    indeg: dict[KSet, int] = {m: 0 for m in J.members}
    for X, trace, _label in _constrained_packets(J):
        ordered = trace[::-1] if X in force_anti else trace
        for a, b in zip(ordered, ordered[1:]):
            if b not in edges[a]:
                edges[a].add(b)
                indeg[b] += 1
    ready = [m for m in J.members if indeg[m] == 0]
    heapq.heapify(ready)
    out: list[KSet] = []
    while ready:
        m = heapq.heappop(ready)
        out.append(m)
        for b in sorted(edges[m]):
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(ready, b)
    if len(out) != len(J.members):
        raise InternalConsistencyError(
            "packet direction constraints are cyclic; inversion set is not attainable"
        )
    return KOrder(tuple(out))


def minimal_order(J: RealizableSet) -> KOrder:
    """The admissible J-order with inversion set equal to J's suffix class."""
    return order_with_inversions(J, J.suffix_class)


def maximal_order(J: RealizableSet) -> KOrder:
    """The admissible J-order with inversion set suffix ∪ full."""
    return order_with_inversions(J, J.suffix_class | J.full_class)


def lex_order(n: int, k: int) -> KOrder:
    return KOrder(tuple(enumerate_ksets(n, k)))


def anti_order(n: int, k: int) -> KOrder:
    return KOrder(tuple(reversed(enumerate_ksets(n, k))))
