"""k-element subsets of {1..n} and their packets.

A ``KSet`` is a size-k subset of the ground set {1..n}, stored as a strictly
increasing tuple together with a bitmask used for fast intersection and
containment queries.  The packet of a set X of size k+1 is the collection of
its k-element subsets, carried in lexicographic order.  Two k-sets lie in a
common packet exactly when they intersect in k-1 elements, and then the
packet is unique: the one generated by their union.

>>> [K.text() for K in enumerate_ksets(3, 2)]
['12', '13', '23']
>>> packet(kset([1, 2, 3], 3)).members == (kset([1, 2], 3), kset([1, 3], 3), kset([2, 3], 3))
True
>>> shared_packet(kset([1, 2], 4), kset([1, 3], 4)).text()
'123'
>>> shared_packet(kset([1, 2], 4), kset([3, 4], 4)) is None
True
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import total_ordering
from itertools import combinations

from .errors import AmbientMismatchError, InvalidArgumentError

MAX_GROUND_SET = 64  # bitmask width


@total_ordering
@dataclass(frozen=True)
class KSet:
    """A size-k subset of {1..n}; compares lexicographically by elements."""

    elements: tuple[int, ...]
    n: int
    mask: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "mask", _mask_of(self.elements))

    @property
    def k(self) -> int:
        return len(self.elements)

    def __lt__(self, other: "KSet") -> bool:
        _check_ambient(self, other)
        return self.elements < other.elements

    def __hash__(self):
        return hash((self.elements, self.n))

    def __eq__(self, other):
        if not isinstance(other, KSet):
            return NotImplemented
        return self.elements == other.elements and self.n == other.n

    def __contains__(self, element: int) -> bool:
        return bool(self.mask >> (element - 1) & 1)

    def intersection_size(self, other: "KSet") -> int:
        _check_ambient(self, other)
        return (self.mask & other.mask).bit_count()

    def issubset(self, other: "KSet") -> bool:
        _check_ambient(self, other)
        return self.mask & ~other.mask == 0

    def union(self, other: "KSet") -> "KSet":
        _check_ambient(self, other)
        return from_mask(self.mask | other.mask, self.n)

    def without(self, element: int) -> "KSet":
        if element not in self:
            raise InvalidArgumentError(f"{element} not in {self.text()}")
        return KSet(tuple(e for e in self.elements if e != element), self.n)

    def with_element(self, element: int) -> "KSet":
        if element in self or not 1 <= element <= self.n:
            raise InvalidArgumentError(f"cannot add {element} to {self.text()}")
        return KSet(tuple(sorted(self.elements + (element,))), self.n)

    def shares_packet(self, other: "KSet") -> bool:
        """True when a single packet contains both sets (|intersection| = k-1)."""
        return self.k == other.k and self.intersection_size(other) == self.k - 1

    def text(self) -> str:
        """Digit form ('134') for n <= 9, comma form ('1,3,14') otherwise."""
        if self.n <= 9:
            return "".join(str(e) for e in self.elements)
        return ",".join(str(e) for e in self.elements)

    def to_json(self) -> list[int]:
        return list(self.elements)

    def __str__(self):
        return self.text()


def _mask_of(elements: tuple[int, ...]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def _check_ambient(a: KSet, b: KSet):
    if a.n != b.n:
        raise AmbientMismatchError(f"ground sets differ: n={a.n} vs n={b.n}")


def kset(elements, n: int) -> KSet:
    """Validated constructor: elements strictly increasing inside [1, n].

    >>> kset([2, 1], 3)
    Traceback (most recent call last):
        ...
    bruhat_orders.errors.InvalidArgumentError: elements must be strictly increasing, got (2, 1)
    """
    elems = tuple(elements)
    if not elems:
        raise InvalidArgumentError("a k-set needs at least one element")
    if any(e2 <= e1 for e1, e2 in zip(elems, elems[1:])):
        raise InvalidArgumentError(f"elements must be strictly increasing, got {elems}")
    if not (1 <= elems[0] and elems[-1] <= n):
        raise InvalidArgumentError(f"elements {elems} outside ground set [1, {n}]")
    if n > MAX_GROUND_SET:
        raise InvalidArgumentError(f"ground set size {n} exceeds {MAX_GROUND_SET}")
    return KSet(elems, n)


def from_mask(mask: int, n: int) -> KSet:
    return KSet(tuple(i + 1 for i in range(n) if mask >> i & 1), n)


@dataclass(frozen=True)
class Packet:
    """The k+1 facets of a (k+1)-set, in lexicographic order.

    Deleting the largest generator element yields the lexicographically first
    member, deleting the smallest the last.
    """

    generator: KSet
    members: tuple[KSet, ...]

    def omit(self, i: int) -> KSet:
        """Member obtained by deleting the i-th smallest generator element (1-based).

        >>> packet(kset([1, 2, 3, 4], 4)).omit(1).text()
        '234'
        >>> packet(kset([1, 2, 3, 4], 4)).omit(4).text()
        '123'
        """
        size = len(self.members)
        if not 1 <= i <= size:
            raise InvalidArgumentError(f"omit index {i} outside 1..{size}")
        return self.members[size - i]

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def packet(X: KSet) -> Packet:
    """All facets of X (subsets of size |X| - 1), lexicographically ordered.

    >>> [m.text() for m in packet(kset([1, 2, 3], 3))]
    ['12', '13', '23']
    >>> [m.text() for m in packet(kset([1, 2, 3, 4], 4))]
    ['123', '124', '134', '234']
    """
    if X.k < 2:
        raise InvalidArgumentError(f"packet needs a set of size >= 2, got {X.text()}")
    members = tuple(X.without(e) for e in reversed(X.elements))
    return Packet(X, members)


def shared_packet(J: KSet, K: KSet) -> KSet | None:
    """Generator of the unique packet containing both sets, or None.

    Returns J ∪ K when |J ∩ K| = k-1; two k-sets meeting in fewer elements
    are in no common packet.
    """
    if J.k != K.k:
        raise InvalidArgumentError(f"sizes differ: {J.text()} vs {K.text()}")
    if J == K:
        raise InvalidArgumentError(f"need two distinct sets, got {J.text()} twice")
    if J.intersection_size(K) != J.k - 1:
        return None
    return J.union(K)


def enumerate_ksets(n: int, k: int) -> list[KSet]:
    """All k-subsets of {1..n} in lexicographic order.

    >>> [K.text() for K in enumerate_ksets(4, 3)]
    ['123', '124', '134', '234']
    >>> [K.text() for K in enumerate_ksets(5, 5)]
    ['12345']
    """
    if k <= 0 or k > n:
        raise InvalidArgumentError(f"need 0 < k <= n, got n={n}, k={k}")
    if n > MAX_GROUND_SET:
        raise InvalidArgumentError(f"ground set size {n} exceeds {MAX_GROUND_SET}")
    return [KSet(combo, n) for combo in combinations(range(1, n + 1), k)]


def parse_kset(text: str, n: int) -> KSet:
    """Parse the digit, comma, or JSON-array form of a k-set.

    >>> parse_kset("134", 4).elements
    (1, 3, 4)
    >>> parse_kset("1,3,14", 20).elements
    (1, 3, 14)
    >>> parse_kset("[1, 3, 4]", 4).elements
    (1, 3, 4)
    """
    text = text.strip()
    if not text:
        raise InvalidArgumentError("empty k-set text")
    if text.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidArgumentError(f"bad JSON k-set {text!r}: {exc}") from exc
        if not isinstance(data, list) or not all(isinstance(e, int) for e in data):
            raise InvalidArgumentError(f"JSON k-set must be an integer array, got {text!r}")
        return kset(sorted(data), n)
    if "," in text:
        parts = [p.strip() for p in text.split(",")]
    else:
        parts = list(text)
    try:
        elems = [int(p) for p in parts]
    except ValueError as exc:
        raise InvalidArgumentError(f"cannot parse k-set from {text!r}") from exc
    if sorted(elems) != elems or len(set(elems)) != len(elems):
        raise InvalidArgumentError(f"k-set text {text!r} is not strictly increasing")
    return kset(elems, n)
