"""Realizable sets, their four-way partition, segmentations, and single-step inclusion.

A subset J of C(n,k) is *realizable* when every (k+1)-generated packet meets
it in a prefix or a suffix of the packet's lexicographic order.  Realizable
sets are exactly the inversion sets of admissible k-orders, so they double
as the node keys of every poset built here.  Each generator X in C(n,k+1)
falls into one of four classes relative to J:

* suffix class   -- P_X ∩ J is a proper suffix,
* prefix class   -- P_X ∩ J is a proper prefix,
* full class     -- P_X ⊆ J,
* empty class    -- P_X ∩ J = ∅.

The same classification read along a single packet of the next level gives a
*segmentation*: the packet decomposes into at most three label intervals, and
only four interval patterns can occur for a realizable set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .errors import (
    AmbientMismatchError,
    InternalConsistencyError,
    InvalidArgumentError,
    NotRealizableError,
)
from .ksets import KSet, enumerate_ksets, kset, packet

# Classification labels for generators relative to a set.
SUFFIX = "s"
PREFIX = "p"
FULL = "F"
EMPTY = "0"

# A generator whose packet meets the set in neither a prefix nor a suffix.
# Only possible for non-realizable sets.
MIXED = "?"


@dataclass(frozen=True)
class Violation:
    """Witness that a packet intersection is neither a prefix nor a suffix."""

    generator: KSet
    positions: tuple[int, ...]  # packet positions (0-based, lex order) of the members present

    def describe(self) -> str:
        return (
            f"packet of {self.generator.text()} meets the set at positions "
            f"{list(self.positions)} of {self.generator.k}: neither prefix nor suffix"
        )


def classify(members: frozenset[KSet], X: KSet) -> str:
    """Label of generator X relative to a set of (|X|-1)-sets.

    Returns one of SUFFIX, PREFIX, FULL, EMPTY, or MIXED.  Improper
    intersections go to FULL/EMPTY; proper ones to PREFIX/SUFFIX.
    """
    pac = packet(X).members
    flags = [m in members for m in pac]
    count = sum(flags)
    if count == 0:
        return EMPTY
    if count == len(pac):
        return FULL
    if all(flags[:count]):
        return PREFIX
    if all(flags[-count:]):
        return SUFFIX
    return MIXED


def check_realizable(members, n: int, k: int) -> tuple[bool, Violation | None]:
    """Packet prefix/suffix test over every generator; names the first violator.

    >>> ok, _ = check_realizable({kset([1, 2, 3], 4), kset([1, 2, 4], 4)}, 4, 3)
    >>> ok
    True
    >>> ok, bad = check_realizable({kset([1, 2, 4], 4)}, 4, 3)
    >>> ok, bad.generator.text()
    (False, '1234')
    """
    members = frozenset(members)
    _check_members(members, n, k)
    if k >= n:
        return True, None
    for X in enumerate_ksets(n, k + 1):
        pac = packet(X).members
        flags = [m in members for m in pac]
        count = sum(flags)
        if 0 < count < len(pac) and not (all(flags[:count]) or all(flags[-count:])):
            positions = tuple(i for i, f in enumerate(flags) if f)
            return False, Violation(X, positions)
    return True, None


def check_convex(members, n: int, k: int) -> bool:
    """Triple test: no packet triple meets the set in only its middle, or only its ends.

    Independent of :func:`check_realizable`; for every generator K and every
    triple j1 < j2 < j3 inside K, the deletions satisfy
    K-j3 < K-j2 < K-j1 lexicographically, and the set may contain neither
    exactly the middle deletion nor exactly the two outer ones.
    """
    members = frozenset(members)
    _check_members(members, n, k)
    if k >= n:
        return True
    for K in enumerate_ksets(n, k + 1):
        for j1, j2, j3 in combinations(K.elements, 3):
            lo, mid, hi = K.without(j3), K.without(j2), K.without(j1)
            pattern = (lo in members, mid in members, hi in members)
            if pattern in ((True, False, True), (False, True, False)):
                return False
    return True


def _check_members(members, n: int, k: int):
    for m in members:
        if m.n != n:
            raise AmbientMismatchError(f"member {m.text()} has n={m.n}, expected {n}")
        if m.k != k:
            raise InvalidArgumentError(f"member {m.text()} has size {m.k}, expected {k}")


@dataclass(frozen=True)
class RealizableSet:
    """A validated realizable subset of C(n,k) with a memoized partition."""

    members: frozenset[KSet]
    n: int
    k: int

    @staticmethod
    def create(members, n: int, k: int) -> "RealizableSet":
        members = frozenset(members)
        ok, violation = check_realizable(members, n, k)
        if not ok:
            raise NotRealizableError(
                f"set is not realizable: {violation.describe()}", witness=violation
            )
        return RealizableSet(members, n, k)

    def __contains__(self, item: KSet) -> bool:
        return item in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    @cached_property
    def partition(self) -> tuple[frozenset, frozenset, frozenset, frozenset]:
        """(suffix, prefix, full, empty) classes, a disjoint cover of C(n,k+1)."""
        if self.k >= self.n:
            empty = frozenset()
            return empty, empty, empty, empty
        buckets: dict[str, set[KSet]] = {SUFFIX: set(), PREFIX: set(), FULL: set(), EMPTY: set()}
        for X in enumerate_ksets(self.n, self.k + 1):
            label = classify(self.members, X)
            if label == MIXED:
                raise InternalConsistencyError(
                    f"validated realizable set has mixed packet at {X.text()}"
                )
            buckets[label].add(X)
        return (
            frozenset(buckets[SUFFIX]),
            frozenset(buckets[PREFIX]),
            frozenset(buckets[FULL]),
            frozenset(buckets[EMPTY]),
        )

    @property
    def suffix_class(self) -> frozenset[KSet]:
        return self.partition[0]

    @property
    def prefix_class(self) -> frozenset[KSet]:
        return self.partition[1]

    @property
    def full_class(self) -> frozenset[KSet]:
        return self.partition[2]

    @property
    def empty_class(self) -> frozenset[KSet]:
        return self.partition[3]

    def classify(self, X: KSet) -> str:
        if X.n != self.n or X.k != self.k + 1:
            raise InvalidArgumentError(
                f"generator {X.text()} does not fit a size-{self.k} set over [1,{self.n}]"
            )
        return classify(self.members, X)

    def complement(self) -> "RealizableSet":
        """The complement inside C(n,k); swaps prefix/suffix and full/empty classes."""
        comp = frozenset(enumerate_ksets(self.n, self.k)) - self.members
        return RealizableSet(comp, self.n, self.k)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "members": [m.to_json() for m in sorted(self.members)],
        }

    @staticmethod
    def from_json(data: dict) -> "RealizableSet":
        n, k = data["n"], data["k"]
        members = [kset(sorted(e), n) for e in data["members"]]
        return RealizableSet.create(members, n, k)

    def text(self) -> str:
        return "{" + ",".join(m.text() for m in sorted(self.members)) + "}"


def partition(J: RealizableSet):
    """The four disjoint covering classes (suffix, prefix, full, empty) of J."""
    return J.partition


@dataclass(frozen=True)
class Segmentation:
    """Interval decomposition of one packet by partition labels."""

    generator: KSet
    runs: tuple[tuple[str, tuple[KSet, ...]], ...]

    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.runs)


# Interval patterns a realizable set may produce on a packet: suffix and
# prefix material at opposite ends, full or empty material in the middle,
# any interval possibly absent.
_ALLOWED_PATTERNS = (
    (SUFFIX, FULL, PREFIX),
    (PREFIX, FULL, SUFFIX),
    (SUFFIX, EMPTY, PREFIX),
    (PREFIX, EMPTY, SUFFIX),
)


def _matches(labels: tuple[str, ...], pattern: tuple[str, str, str]) -> bool:
    it = iter(pattern)
    slot = next(it)
    for lab in labels:
        while lab != slot:
            nxt = next(it, None)
            if nxt is None:
                return False
            slot = nxt
    return True


def segmentation(J: RealizableSet, X: KSet) -> Segmentation:
    """Decompose the packet of X into label intervals relative to J.

    X must have size k+2.  For a realizable J the label sequence always
    collapses into one of the four allowed interval patterns; anything else
    raises an internal consistency error.

    >>> J = RealizableSet.create({kset([1, 3], 4), kset([2, 3], 4)}, 4, 2)
    >>> seg = segmentation(J, kset([1, 2, 3, 4], 4))
    >>> seg.labels()
    ('s', '0', 'p')
    """
    if X.n != J.n or X.k != J.k + 2:
        raise InvalidArgumentError(
            f"segmentation generator must have size {J.k + 2} over [1,{J.n}]"
        )
    runs: list[tuple[str, list[KSet]]] = []
    for member in packet(X).members:
        label = classify(J.members, member)
        if runs and runs[-1][0] == label:
            runs[-1][1].append(member)
        else:
            runs.append((label, [member]))
    labels = tuple(label for label, _ in runs)
    if not any(_matches(labels, pat) for pat in _ALLOWED_PATTERNS):
        raise InternalConsistencyError(
            f"packet of {X.text()} segments as {labels}, outside the four allowed shapes"
        )
    return Segmentation(X, tuple((label, tuple(ms)) for label, ms in runs))


# Forbidden complete segmentations: each is a pair of adjacent non-empty
# intervals that cannot exhaust a packet of a realizable set.
FORBIDDEN_SHAPES = {
    "full-then-suffix": (FULL, SUFFIX),
    "prefix-then-full": (PREFIX, FULL),
    "suffix-then-empty": (SUFFIX, EMPTY),
    "empty-then-prefix": (EMPTY, PREFIX),
}


def forbidden_segmentations(members, n: int, k: int) -> list[tuple[KSet, str]]:
    """Scan all (k+2)-generated packets for the four forbidden two-interval shapes.

    Works on arbitrary subsets of C(n,k) (no realizability precondition);
    for a realizable input the result is always empty.
    """
    members = frozenset(members)
    _check_members(members, n, k)
    found = []
    if k + 2 > n:
        return found
    for X in enumerate_ksets(n, k + 2):
        labels = tuple(classify(members, Y) for Y in packet(X).members)
        run_labels = _run_labels(labels)
        for name, shape in FORBIDDEN_SHAPES.items():
            if run_labels == shape:
                found.append((X, name))
    return found


def _run_labels(labels: tuple[str, ...]) -> tuple[str, ...]:
    runs = []
    for lab in labels:
        if not runs or runs[-1] != lab:
            runs.append(lab)
    return tuple(runs)


def pair_run_labels(first_labels, second_labels) -> tuple[tuple[str, str], ...]:
    """Run sequence of joint labels; used by two-set segmentation scans."""
    joint = list(zip(first_labels, second_labels))
    runs = []
    for lab in joint:
        if not runs or runs[-1] != lab:
            runs.append(lab)
    return tuple(runs)


def single_step_leq(U1: RealizableSet, U2: RealizableSet) -> bool:
    """Reachability by adding one element at a time through realizable sets.

    True iff some ordering of U2 - U1 keeps every intermediate set
    realizable.  A greedy first-success search runs first; only when every
    greedy branch dies does the exhaustive memoized search certify False.

    >>> U1 = RealizableSet.create({kset([1, 2, 3], 4)}, 4, 3)
    >>> U2 = RealizableSet.create({kset([1, 2, 3], 4), kset([1, 2, 4], 4)}, 4, 3)
    >>> single_step_leq(U1, U2)
    True
    >>> single_step_leq(U2, U1)
    False
    """
    if (U1.n, U1.k) != (U2.n, U2.k):
        raise AmbientMismatchError("sets live over different ambient spaces")
    if not U1.members <= U2.members:
        return False
    missing = sorted(U2.members - U1.members)
    if not missing:
        return True
    dead: set[frozenset[KSet]] = set()

    def grow(current: frozenset[KSet]) -> bool:
        if len(current) == len(U2.members):
            return True
        if current in dead:
            return False
        for X in missing:
            if X in current:
                continue
            nxt = current | {X}
            if check_realizable(nxt, U1.n, U1.k)[0] and grow(nxt):
                return True
        dead.add(current)
        return False

    return grow(U1.members)


def realizable_sets_between(low: frozenset[KSet], high: frozenset[KSet], n: int, k: int):
    """All realizable U with low ⊆ U ⊆ high, by filtering subsets of the gap."""
    if not low <= high:
        raise InvalidArgumentError("lower set must be contained in the upper set")
    gap = sorted(high - low)
    out = []
    for r in range(len(gap) + 1):
        for extra in combinations(gap, r):
            candidate = low | frozenset(extra)
            if check_realizable(candidate, n, k)[0]:
                out.append(frozenset(candidate))
    return out


def random_realizable_set(rng, n: int, k: int, steps: int | None = None) -> RealizableSet:
    """Random realizable subset of C(n,k) grown by single realizable additions."""
    universe = enumerate_ksets(n, k)
    if steps is None:
        steps = rng.randrange(len(universe) + 1)
    current: set[KSet] = set()
    for _ in range(steps):
        candidates = [
            X
            for X in universe
            if X not in current and check_realizable(current | {X}, n, k)[0]
        ]
        if not candidates:
            break
        current.add(rng.choice(candidates))
    return RealizableSet(frozenset(current), n, k)
