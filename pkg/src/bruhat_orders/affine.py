"""Periodic permutations of the integers and their quotient inversion sets.

An N-periodic permutation satisfies w(i + N) = w(i) + N, so it is determined
by the images of 1..N.  Inversions (x < y with w(x) > w(y)) are invariant
under the simultaneous shift of both coordinates by N, and the quotient of
size-k integer sets by that diagonal shift plays the role the k-sets play in
the finite theory.  Displacements w(i) - i are bounded, which forces every
inversion class to have a representative with bounded gap; the inversion
computation scans exactly that window, so it is exhaustive, not truncated.

Packets, realizability, and admissibility mirror the finite definitions,
with one twist: the packet of [x_1 < ... < x_{k+1}] is ordered by which
element is deleted (largest first), and this order is shift-invariant even
though no global order on the quotient classes exists.  Classes with two
entries congruent mod N are degenerate: they never appear in inversion sets
and are excluded from realizable sets, but their packets still constrain
realizability.  Everything this module reports about sources and sinks of
admissible-order posets is an empirical finding, not a theorem.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import (
    DegenerateInputError,
    InvalidArgumentError,
    NotRealizableError,
)
from .report import Report


@dataclass(frozen=True)
class PeriodicPermutation:
    """An N-periodic permutation given by the images of 1..N."""

    N: int
    base: tuple[int, ...]  # images of 1..N

    def __post_init__(self):
        if self.N < 1 or len(self.base) != self.N:
            raise InvalidArgumentError("base must list the images of 1..N")
        residues = sorted(b % self.N for b in self.base)
        if residues != list(range(self.N)):
            raise InvalidArgumentError(
                f"images {self.base} are not a bijection on residues mod {self.N}"
            )

    def __call__(self, i: int) -> int:
        q, r = divmod(i - 1, self.N)
        return self.base[r] + q * self.N

    @staticmethod
    def identity(N: int) -> "PeriodicPermutation":
        return PeriodicPermutation(N, tuple(range(1, N + 1)))

    @staticmethod
    def generator(N: int, g: int) -> "PeriodicPermutation":
        """The reflection swapping g + mN and g + 1 + mN for every shift m."""
        if N < 2:
            raise InvalidArgumentError("reflections need period >= 2")
        if not 1 <= g <= N:
            raise InvalidArgumentError(f"generator index {g} outside 1..{N}")
        images = list(range(1, N + 1))
        if g < N:
            images[g - 1], images[g] = images[g], images[g - 1]
        else:
            # swaps N and N+1, periodically: 1 -> 0 and N -> N+1
            images[0] = 0
            images[N - 1] = N + 1
        return PeriodicPermutation(N, tuple(images))

    def compose(self, other: "PeriodicPermutation") -> "PeriodicPermutation":
        """(self ∘ other): other applied first."""
        if self.N != other.N:
            raise InvalidArgumentError("periods differ")
        return PeriodicPermutation(
            self.N, tuple(self(other(i)) for i in range(1, self.N + 1))
        )

    @staticmethod
    def from_word(N: int, letters) -> "PeriodicPermutation":
        """Compose generators right-to-left, as in the finite case."""
        w = PeriodicPermutation.identity(N)
        for g in letters:
            w = w.compose(PeriodicPermutation.generator(N, g))
        return w

    def displacement_spread(self) -> int:
        disp = [b - (i + 1) for i, b in enumerate(self.base)]
        return max(disp) - min(disp)


@dataclass(frozen=True)
class AffineKSet:
    """A size-k integer set up to simultaneous shifts by the period.

    The canonical representative places the minimum inside [0, N-1].
    """

    rep: tuple[int, ...]
    N: int

    def __post_init__(self):
        if len(set(self.rep)) != len(self.rep) or list(self.rep) != sorted(self.rep):
            raise InvalidArgumentError(f"representative {self.rep} not strictly increasing")
        if not 0 <= self.rep[0] < self.N:
            raise InvalidArgumentError(
                f"representative {self.rep} not canonical for period {self.N}"
            )

    @staticmethod
    def of(values, N: int) -> "AffineKSet":
        values = tuple(sorted(values))
        if len(set(values)) != len(values):
            raise InvalidArgumentError(f"repeated entries in {values}")
        shift = (values[0] % N) - values[0]
        return AffineKSet(tuple(v + shift for v in values), N)

    @property
    def k(self) -> int:
        return len(self.rep)

    @property
    def degenerate(self) -> bool:
        """Two entries congruent mod the period; never part of an inversion set."""
        residues = [v % self.N for v in self.rep]
        return len(set(residues)) < len(residues)

    def shifted(self, m: int) -> tuple[int, ...]:
        return tuple(v + m * self.N for v in self.rep)

    def text(self) -> str:
        return "[" + ",".join(str(v) for v in self.rep) + "]@" + str(self.N)

    def __str__(self):
        return self.text()

    def __lt__(self, other: "AffineKSet") -> bool:
        return (self.N, self.rep) < (other.N, other.rep)


def parse_affine_kset(text: str) -> AffineKSet:
    """Parse '[1,3,4]@3'."""
    text = text.strip()
    if "@" not in text or not text.startswith("["):
        raise InvalidArgumentError(f"expected '[a,b,...]@N', got {text!r}")
    body, period = text.rsplit("@", 1)
    try:
        values = [int(v) for v in body.strip("[] ").split(",")]
        N = int(period)
    except ValueError as exc:
        raise InvalidArgumentError(f"cannot parse affine set {text!r}") from exc
    return AffineKSet.of(values, N)


def affine_word_inversions(w: PeriodicPermutation) -> frozenset[AffineKSet]:
    """All inversion classes of a periodic permutation.

    A pair x < y with w(x) > w(y) forces y - x <= spread of displacements,
    so scanning x in 1..N against y in the window (x, x + spread] is
    exhaustive.  The result never contains a degenerate class: congruent
    entries differ by a multiple of N and periodicity preserves their order.
    """
    spread = w.displacement_spread()
    out = set()
    for x in range(1, w.N + 1):
        for y in range(x + 1, x + spread + 1):
            if w(x) > w(y):
                out.add(AffineKSet.of((x, y), w.N))
    return frozenset(out)


def affine_packet(X: AffineKSet) -> tuple[AffineKSet, ...]:
    """Deletion classes of X, ordered by deleted entry (largest first).

    The order is invariant under shifting the representative.

    >>> [m.text() for m in affine_packet(AffineKSet.of((1, 3, 4), 3))]
    ['[1,3]@3', '[1,4]@3', '[0,1]@3']
    """
    if X.k < 2:
        raise InvalidArgumentError("packet needs a class of size >= 2")
    members = []
    for v in reversed(X.rep):
        members.append(AffineKSet.of(tuple(u for u in X.rep if u != v), X.N))
    return tuple(members)


def _relevant_generators(S) -> set[AffineKSet]:
    """Generators whose packets could violate the prefix/suffix condition.

    Unions of two members meeting in k-1 entries (under every overlapping
    shift) catch all intersections of size >= 2; single members extended by
    one interior integer catch lone members sitting mid-packet.  Exterior
    extensions always leave the member at an end of the packet, so they
    cannot violate anything.
    """
    S = list(S)
    if not S:
        return set()
    N = S[0].N
    k = S[0].k
    out: set[AffineKSet] = set()
    for A in S:
        lo, hi = A.rep[0], A.rep[-1]
        for z in range(lo + 1, hi):
            if z not in A.rep:
                out.add(AffineKSet.of(A.rep + (z,), N))
    for A, B in combinations(S, 2):
        span = (B.rep[-1] - B.rep[0]) + (A.rep[-1] - A.rep[0])
        m_lo = (A.rep[0] - B.rep[-1] - span) // N - 1
        m_hi = (A.rep[-1] - B.rep[0] + span) // N + 1
        for m in range(m_lo, m_hi + 1):
            union = set(A.rep) | set(B.shifted(m))
            if len(union) == k + 1:
                out.add(AffineKSet.of(tuple(union), N))
    return out


def _packet_trace(X: AffineKSet, members_present) -> list[bool]:
    return [m in members_present for m in affine_packet(X)]


def affine_check_realizable(S) -> bool:
    """Prefix/suffix test over every packet that meets S at all.

    Only finitely many packets meet S in two members or hold a member away
    from the packet ends; those are enumerated and checked.

    >>> affine_check_realizable({AffineKSet.of((1, 2), 3)})
    True
    >>> affine_check_realizable({AffineKSet.of((1, 3), 3), AffineKSet.of((3, 4), 3)})
    False
    """
    S = frozenset(S)
    for A in S:
        if A.degenerate:
            raise DegenerateInputError(
                f"{A.text()} has two entries congruent mod {A.N}"
            )
    for X in sorted(_relevant_generators(S)):
        flags = _packet_trace(X, S)
        count = sum(flags)
        if 0 < count < len(flags) and not (all(flags[:count]) or all(flags[-count:])):
            return False
    return True


def affine_classify(S, X: AffineKSet) -> str:
    """Label 's'/'p'/'F'/'0'/'?' of a generator relative to a finite set."""
    flags = _packet_trace(X, frozenset(S))
    count = sum(flags)
    if count == 0:
        return "0"
    if count == len(flags):
        return "F"
    if all(flags[:count]):
        return "p"
    if all(flags[-count:]):
        return "s"
    return "?"


def affine_full_generators(S) -> set[AffineKSet]:
    """Generators whose whole packet lies in S (finitely many)."""
    out = set()
    for X in _relevant_generators(S):
        if affine_classify(S, X) == "F":
            out.add(X)
    return out


def _shares_affine_packet(A: AffineKSet, B: AffineKSet) -> bool:
    """Two classes lie in a common packet when representatives can be shifted
    to overlap in k-1 entries."""
    if A.k != B.k:
        return False
    N = A.N
    span = (B.rep[-1] - B.rep[0]) + (A.rep[-1] - A.rep[0])
    m_lo = (A.rep[0] - B.rep[-1] - span) // N - 1
    m_hi = (A.rep[-1] - B.rep[0] + span) // N + 1
    for m in range(m_lo, m_hi + 1):
        shifted = set(B.shifted(m))
        if shifted != set(A.rep) and len(set(A.rep) | shifted) == A.k + 1:
            return True
    return False


def iter_affine_admissible_orders(J):
    """All admissible total orders on a finite realizable affine set J.

    Constraints per generator: antilexicographic on suffix-class packets,
    lexicographic on prefix-class packets, either on full packets.
    """
    J = sorted(frozenset(J))
    if not affine_check_realizable(J):
        raise NotRealizableError("affine set is not realizable")
    constraints = []
    for X in sorted(_relevant_generators(frozenset(J))):
        trace = [m for m in affine_packet(X) if m in set(J)]
        if len(trace) < 2:
            continue
        label = affine_classify(frozenset(J), X)
        allowed = {"s": ("anti",), "p": ("lex",), "F": ("lex", "anti")}[label]
        constraints.append((trace, allowed))

    placed: list[AffineKSet] = []
    placed_set: set[AffineKSet] = set()
    per: list[list[AffineKSet]] = [[] for _ in constraints]
    by_member: dict[AffineKSet, list[int]] = {}
    for idx, (trace, _) in enumerate(constraints):
        for m in trace:
            by_member.setdefault(m, []).append(idx)

    def compatible(m) -> bool:
        for idx in by_member.get(m, ()):
            trace, allowed = constraints[idx]
            sofar = per[idx] + [m]
            ok = False
            if "lex" in allowed and sofar == trace[: len(sofar)]:
                ok = True
            if "anti" in allowed and sofar == trace[::-1][: len(sofar)]:
                ok = True
            if not ok:
                return False
        return True

    def rec():
        if len(placed) == len(J):
            yield tuple(placed)
            return
        for m in J:
            if m in placed_set or not compatible(m):
                continue
            placed.append(m)
            placed_set.add(m)
            for idx in by_member.get(m, ()):
                per[idx].append(m)
            yield from rec()
            placed.pop()
            placed_set.remove(m)
            for idx in by_member.get(m, ()):
                per[idx].pop()

    yield from rec()


def _affine_inv_part(order, full_gens) -> frozenset[AffineKSet]:
    """Full-class generators whose packets the order reverses.

    Together with the (possibly infinite, order-independent) suffix class
    this is the inversion set; only this finite part varies.
    """
    pos = {m: i for i, m in enumerate(order)}
    out = set()
    for X in full_gens:
        ranks = [pos[m] for m in affine_packet(X)]
        if all(a > b for a, b in zip(ranks, ranks[1:])):
            out.add(X)
    return frozenset(out)


def affine_source_sink_report(J) -> Report:
    """Enumerate admissible orders on J, quotient by commutation moves, and
    check for a unique source (no reversed full packet) and unique sink
    (every full packet reversed) in the flip graph of classes."""
    J = frozenset(J)
    label = "{" + ",".join(a.text() for a in sorted(J)) + "}"
    report = Report(f"affine-orders({label})")
    orders = list(iter_affine_admissible_orders(J))
    report.data["orders"] = len(orders)
    full_gens = sorted(affine_full_generators(J))

    # commutation classes by BFS with the shared-packet test
    order_set = set(orders)
    classes: dict[tuple, int] = {}
    class_invs: list[frozenset[AffineKSet]] = []
    for start in orders:
        if start in classes:
            continue
        idx = len(class_invs)
        frontier = [start]
        classes[start] = idx
        while frontier:
            current = frontier.pop()
            for i in range(len(current) - 1):
                if not _shares_affine_packet(current[i], current[i + 1]):
                    swapped = (
                        current[:i] + (current[i + 1], current[i]) + current[i + 2:]
                    )
                    if swapped in order_set and swapped not in classes:
                        classes[swapped] = idx
                        frontier.append(swapped)
        class_invs.append(_affine_inv_part(start, full_gens))
    report.data["classes"] = len(class_invs)

    consistent = all(
        class_invs[idx] == _affine_inv_part(order, full_gens)
        for order, idx in classes.items()
    )
    report.check("commutation-equivalent orders share inversion sets", consistent)
    distinct = len(set(class_invs)) == len(class_invs)
    report.check("classes are determined by their inversion sets", distinct)

    # flip edges between classes: reverse a contiguous full packet
    edges = set()
    for order, idx in classes.items():
        pos = {m: i for i, m in enumerate(order)}
        for X in full_gens:
            ranks = sorted(pos[m] for m in affine_packet(X))
            if ranks[-1] - ranks[0] != len(ranks) - 1:
                continue
            lo, hi = ranks[0], ranks[-1]
            flipped = order[:lo] + tuple(reversed(order[lo:hi + 1])) + order[hi + 1:]
            jdx = classes[flipped]
            if X in class_invs[idx]:
                edges.add((jdx, idx))
            else:
                edges.add((idx, jdx))
    indeg = {i: 0 for i in range(len(class_invs))}
    outdeg = {i: 0 for i in range(len(class_invs))}
    for a, b in edges:
        outdeg[a] += 1
        indeg[b] += 1
    sources = [i for i in indeg if indeg[i] == 0]
    sinks = [i for i in outdeg if outdeg[i] == 0]
    report.check(
        "unique source with no reversed full packet",
        len(sources) == 1 and class_invs[sources[0]] == frozenset(),
        witness=len(sources),
    )
    report.check(
        "unique sink with every full packet reversed",
        len(sinks) == 1 and class_invs[sinks[0]] == frozenset(full_gens),
        witness=len(sinks),
    )
    return report


def affine_words(N: int, max_len: int):
    """All generator words over s_1..s_N up to the given length."""
    frontier: list[tuple[int, ...]] = [()]
    yield ()
    for _ in range(max_len):
        nxt = []
        for word in frontier:
            for g in range(1, N + 1):
                extended = word + (g,)
                nxt.append(extended)
                yield extended
        frontier = nxt


def affine_sweep(N: int, max_len: int) -> Report:
    """Empirical sweep: every word's inversion set avoids degenerate classes,
    is realizable, and its admissible-order classes have the expected unique
    source and sink.  Deduplicates by inversion set."""
    report = Report(f"affine-sweep(N={N}, len<={max_len})")
    seen: set[frozenset[AffineKSet]] = set()
    bad_degenerate = None
    bad_realizable = None
    source_sink_ok = True
    checked = 0
    for letters in affine_words(N, max_len):
        w = PeriodicPermutation.from_word(N, letters)
        inv = affine_word_inversions(w)
        if inv in seen:
            continue
        seen.add(inv)
        if any(a.degenerate for a in inv):
            bad_degenerate = (letters, sorted(a.text() for a in inv))
            break
        if not affine_check_realizable(inv):
            bad_realizable = (letters, sorted(a.text() for a in inv))
            break
        sub = affine_source_sink_report(inv)
        checked += 1
        if not sub.ok:
            source_sink_ok = False
            report.merge(sub)
            break
    report.check("no inversion set meets a degenerate class", bad_degenerate is None,
                 witness=bad_degenerate)
    report.check("every inversion set is realizable", bad_realizable is None,
                 witness=bad_realizable)
    report.check("every inversion set has unique source and sink classes",
                 source_sink_ok)
    report.data["distinct inversion sets"] = len(seen)
    report.data["posets checked"] = checked
    return report
