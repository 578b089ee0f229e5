"""Words in the symmetric group and the ladder of higher orders they generate.

A word in the generators s_1..s_{n-1} determines a permutation, a total
order on {1..n} (sort by preimages), and an inversion set that is always a
realizable 2-set.  A reduced expression additionally determines an order on
that inversion set: the order in which pairs of strands cross, read through
a wiring diagram.  These orders are exactly the admissible orders on the
inversion set, which makes words the entry point into the path posets.

From a realizable 2-set J the lower/upper ladder is the recursion

    L2 = {},  M2 = J,
    Li = suffix(M(i-1)),  Mi = suffix(M(i-1)) ∪ full(M(i-1) - L(i-1)),

where suffix(S) and full(S) collect the generators whose packets meet S in a
proper suffix, respectively lie inside S.  Level i supports a poset of
commutation classes of admissible Mi-orders that place Li first; its unique
minimum and maximum have inversion sets L(i+1) and M(i+1).  Both facts are
verified empirically here rather than assumed.  The recursion is specific to
2-sets: a hand-verified nine-strand configuration shows the key closure
property failing for larger k, and the checker for it lives here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import (
    InternalConsistencyError,
    InvalidArgumentError,
    NotReducedError,
)
from .ksets import KSet, enumerate_ksets, kset, packet
from .orders import (
    KOrder,
    inversion_set,
    is_admissible_on,
    order_with_inversions,
)
from .poset import (
    DEFAULT_MAX_CHAINS,
    DEFAULT_MAX_NODES,
    BruhatPoset,
    build_paths_to_J,
    maximal_chains,
    node_key,
)
from .realizable import (
    EMPTY,
    FULL,
    PREFIX,
    SUFFIX,
    RealizableSet,
    check_realizable,
    classify,
    realizable_sets_between,
)
from .report import Report

_LETTERS = "stuvwxyz"


@dataclass(frozen=True)
class Word:
    """A sequence of generator indices s_1..s_{n-1} of the symmetric group."""

    letters: tuple[int, ...]
    n: int

    def __post_init__(self):
        for g in self.letters:
            if not 1 <= g <= self.n - 1:
                raise InvalidArgumentError(
                    f"generator index {g} outside 1..{self.n - 1}"
                )

    def __len__(self):
        return len(self.letters)

    def text(self) -> str:
        if self.n - 1 <= len(_LETTERS):
            return "".join(_LETTERS[g - 1] for g in self.letters) or "e"
        return " ".join(f"s{g}" for g in self.letters) or "e"

    def __str__(self):
        return self.text()


def parse_word(text: str, n: int | None = None) -> Word:
    """Parse 'stutst', '121321', or 's1 s2 s3' into a word.

    The rank defaults to one more than the largest generator index used.

    >>> parse_word("stutst").letters
    (1, 2, 3, 2, 1, 2)
    >>> parse_word("121321").letters
    (1, 2, 1, 3, 2, 1)
    >>> parse_word("s1 s2 s10", 12).letters
    (1, 2, 10)
    """
    text = text.strip()
    letters: list[int] = []
    if text in ("", "e"):
        letters = []
    elif "s" in text and any(c.isdigit() for c in text):
        for token in text.replace(",", " ").split():
            if not token.startswith("s") or not token[1:].isdigit():
                raise InvalidArgumentError(f"bad generator token {token!r}")
            letters.append(int(token[1:]))
    elif text.isdigit():
        letters = [int(c) for c in text]
    else:
        for c in text:
            if c not in _LETTERS:
                raise InvalidArgumentError(
                    f"letter {c!r} is not one of {_LETTERS!r}; use digits or s<i> tokens"
                )
            letters.append(_LETTERS.index(c) + 1)
    if n is None:
        n = max(letters, default=1) + 1
    return Word(tuple(letters), n)


def permutation(w: Word) -> tuple[int, ...]:
    """One-line images (w(1), ..., w(n)); letters compose right-to-left.

    >>> permutation(parse_word("ts", 3))
    (3, 1, 2)
    """
    # right-multiplying by s_g swaps positions g, g+1 of the one-line form,
    # so scanning the word left to right builds the product
    images = list(range(1, w.n + 1))
    for g in w.letters:
        images[g - 1], images[g] = images[g], images[g - 1]
    return tuple(images)


def word_to_order(w: Word) -> KOrder:
    """The order on {1..n} listing preimages: w^{-1}(1) first.

    >>> word_to_order(parse_word("ts", 3)).text()
    '2<3<1'
    """
    perm = permutation(w)
    inverse = [0] * w.n
    for i, v in enumerate(perm, start=1):
        inverse[v - 1] = i
    return KOrder(tuple(kset([i], w.n) for i in inverse))


def word_inversions(w: Word) -> RealizableSet:
    """The inversion set {i < j : w(i) > w(j)} as a realizable 2-set.

    >>> sorted(x.text() for x in word_inversions(parse_word("ts", 3)))
    ['12', '13']
    """
    perm = permutation(w)
    inv = {
        kset([i, j], w.n)
        for i, j in combinations(range(1, w.n + 1), 2)
        if perm[i - 1] > perm[j - 1]
    }
    return RealizableSet.create(inv, w.n, 2)


def reduced_length(w: Word) -> int:
    return len(word_inversions(w).members)


def rex_order(w: Word, rex: Word) -> KOrder:
    """Crossing order of a reduced expression: pairs of strands in the order
    they cross, reading the wiring diagram bottom to top.

    Raises if ``rex`` is not reduced (a pair crosses twice) or is not an
    expression for ``w``.

    >>> rex_order(parse_word("stutst", 4), parse_word("stutst", 4)).text()
    '23<13<12<14<24<34'
    """
    if rex.n != w.n:
        raise InvalidArgumentError("word and expression have different ranks")
    strands = list(range(1, rex.n + 1))  # strand labels by current position
    crossings: list[KSet] = []
    seen: set[KSet] = set()
    for g in reversed(rex.letters):
        a, b = strands[g - 1], strands[g]
        pair = kset(sorted((a, b)), rex.n)
        if pair in seen:
            raise NotReducedError(
                f"pair {pair.text()} crosses twice; expression is not reduced"
            )
        seen.add(pair)
        crossings.append(pair)
        strands[g - 1], strands[g] = b, a
    if permutation(rex) != permutation(w):
        raise InvalidArgumentError("expression is not a word for the given permutation")
    return KOrder(tuple(crossings))


def reduce_word(w: Word) -> Word:
    """A reduced expression for the same permutation.

    Peels a descent generator off the right until the identity remains:
    when one-line entries at positions g, g+1 descend, the word factors
    through s_g with the length dropping by one.

    >>> reduce_word(parse_word("ss", 3)).text()
    'e'
    """
    out: list[int] = []
    current = list(permutation(w))
    while True:
        g = next((i + 1 for i in range(w.n - 1) if current[i] > current[i + 1]), None)
        if g is None:
            break
        current[g - 1], current[g] = current[g], current[g - 1]
        out.append(g)
    out.reverse()
    return Word(tuple(out), w.n)


def all_reduced_words(w: Word) -> list[Word]:
    """Every reduced expression for the permutation of ``w``.

    >>> sorted(r.text() for r in all_reduced_words(parse_word("sts", 3)))
    ['sts', 'tst']
    """
    target = permutation(w)
    n = w.n

    memo: dict[tuple[int, ...], list[tuple[int, ...]]] = {}

    def rec(perm: tuple[int, ...]) -> list[tuple[int, ...]]:
        if all(perm[i] == i + 1 for i in range(n)):
            return [()]
        if perm in memo:
            return memo[perm]
        out = []
        for i in range(n - 1):
            if perm[i] > perm[i + 1]:
                shorter = list(perm)
                shorter[i], shorter[i + 1] = shorter[i + 1], shorter[i]
                for tail in rec(tuple(shorter)):
                    out.append(tail + (i + 1,))
        memo[perm] = out
        return out

    return [Word(letters, n) for letters in rec(target)]


def commutation_classes(rexes) -> list[list[Word]]:
    """Group expressions by closure under swaps of adjacent commuting letters.

    Two letters commute when their indices differ by at least two.  The
    grouping uses only word moves, no inversion sets, so it can be compared
    against inversion-set keyed posets as an independent construction.
    """
    remaining = {w.letters: w for w in rexes}
    classes = []
    while remaining:
        seed = remaining.pop(next(iter(sorted(remaining))))
        cls = {seed.letters: seed}
        frontier = [seed.letters]
        while frontier:
            current = frontier.pop()
            for i in range(len(current) - 1):
                if abs(current[i] - current[i + 1]) >= 2:
                    swapped = (
                        current[:i]
                        + (current[i + 1], current[i])
                        + current[i + 2:]
                    )
                    if swapped not in cls:
                        word = Word(swapped, seed.n)
                        cls[swapped] = word
                        frontier.append(swapped)
                        remaining.pop(swapped, None)
        classes.append([cls[key] for key in sorted(cls)])
    return classes


# ---------------------------------------------------------------------------
# the lower/upper ladder and the orders built on it


def _suffix_class(members: frozenset[KSet], n: int, k: int) -> frozenset[KSet]:
    """Generators whose packets meet ``members`` in a proper suffix."""
    if k + 1 > n:
        return frozenset()
    return frozenset(
        X for X in enumerate_ksets(n, k + 1) if classify(members, X) == SUFFIX
    )


def _full_class(members: frozenset[KSet], n: int, k: int) -> frozenset[KSet]:
    """Generators whose packets lie inside ``members`` (defined for any set)."""
    if k + 1 > n:
        return frozenset()
    return frozenset(
        X for X in enumerate_ksets(n, k + 1) if classify(members, X) == FULL
    )


@dataclass(frozen=True)
class LMLadder:
    """Lower/upper level sets L^i ⊆ M^i ⊆ C(n,i), indexed from i = 2."""

    J: RealizableSet
    levels: tuple[tuple[frozenset[KSet], frozenset[KSet]], ...]

    def level(self, i: int) -> tuple[frozenset[KSet], frozenset[KSet]]:
        if i < 2 or i - 2 >= len(self.levels):
            raise InvalidArgumentError(f"level {i} not computed (2..{self.top})")
        return self.levels[i - 2]

    @property
    def top(self) -> int:
        return len(self.levels) + 1

    def lower(self, i: int) -> frozenset[KSet]:
        return self.level(i)[0]

    def upper(self, i: int) -> frozenset[KSet]:
        return self.level(i)[1]


def lm_ladder(J: RealizableSet, cap: int | None = None) -> LMLadder:
    """Compute ladder levels up to ``cap`` (default: the ground-set size).

    Every level is validated realizable; a failure would contradict the
    2-set theory and raises as an internal consistency error.

    >>> J = word_inversions(parse_word("stutst", 4))  # the longest word
    >>> ladder = lm_ladder(J)
    >>> sorted(x.text() for x in ladder.upper(3))
    ['123', '124', '134', '234']
    >>> sorted(x.text() for x in ladder.lower(3))
    []
    """
    if J.k != 2:
        raise InvalidArgumentError("the ladder is defined for realizable 2-sets")
    n = J.n
    if cap is None:
        cap = n
    levels = [(frozenset(), J.members)]
    for i in range(3, cap + 1):
        prev_low, prev_high = levels[-1]
        low = _suffix_class(prev_high, n, i - 1)
        high = low | _full_class(prev_high - prev_low, n, i - 1)
        for name, level in (("lower", low), ("upper", high)):
            ok, violation = check_realizable(level, n, i)
            if not ok:
                raise InternalConsistencyError(
                    f"{name} ladder level {i} not realizable: {violation.describe()}"
                )
        levels.append((low, high))
        if not high:
            break
    return LMLadder(J, tuple(levels))


def ladder_member_filter(ladder: LMLadder, i: int):
    """Membership test for level-i classes: inversion sets U of admissible
    M^i-orders equivalent to one placing L^i first.

    The test is on inversion sets alone: U must contain the suffix class of
    L^i and avoid its prefix class.
    """
    low = ladder.lower(i)
    n = ladder.J.n
    low_suffix = _suffix_class(low, n, i)
    low_prefix = (
        frozenset(
            X for X in enumerate_ksets(n, i + 1) if classify(low, X) == PREFIX
        )
        if i + 1 <= n
        else frozenset()
    )

    def admits(U: frozenset[KSet]) -> bool:
        return low_suffix <= U and not (low_prefix & U)

    return admits


def build_bi(
    J: RealizableSet,
    i: int,
    ladder: LMLadder | None = None,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> BruhatPoset:
    """Level-i order of a realizable 2-set: the subposet of the path poset of
    M^i spanned by classes with a representative placing L^i first.

    >>> J = word_inversions(parse_word("stutst", 4))
    >>> len(build_bi(J, 2).nodes)  # the full (4,2) poset
    8
    """
    if ladder is None:
        ladder = lm_ladder(J, cap=max(i, 2))
    if i < 2 or i > ladder.top:
        raise InvalidArgumentError(f"level {i} outside the computed ladder (2..{ladder.top})")
    upper = RealizableSet.create(ladder.upper(i), J.n, i)
    full_poset = build_paths_to_J(upper, max_nodes=max_nodes)
    admits = ladder_member_filter(ladder, i)
    kept = {key: node for key, node in full_poset.nodes.items() if admits(node.inv)}
    edges = tuple(
        (lo, hi, flip)
        for lo, hi, flip in full_poset.edges
        if lo in kept and hi in kept
    )
    return BruhatPoset("paths", J.n, i, upper.members, kept, edges)


def lift_chain(
    ladder: LMLadder,
    i: int,
    labels,
) -> KOrder:
    """Extend a maximal-chain label sequence of the level-i poset to an order
    on M^{i+1} by prepending the (unique) admissible order on L^{i+1}."""
    low_next = ladder.lower(i + 1)
    n = ladder.J.n
    low_set = RealizableSet.create(low_next, n, i + 1)
    head = order_with_inversions(low_set, low_set.suffix_class)
    return KOrder(head.elements + tuple(labels))


def verify_ladder_structure(
    J: RealizableSet,
    i_max: int,
    max_nodes: int = DEFAULT_MAX_NODES,
    chain_cap: int = DEFAULT_MAX_CHAINS,
) -> Report:
    """Empirical structure checks for the level posets of a realizable 2-set.

    For each level i <= i_max: the ladder levels are realizable, the poset
    is graded with a unique source and sink whose inversion sets are the
    next ladder levels, node inversion sets are exactly the realizable sets
    in the level interval that pass the place-L-first test, and every
    maximal chain lifts to an admissible M^{i+1}-order placing L^{i+1}
    first.  The lifted classes are also compared against the level-(i+1)
    node set (the chain-to-poset surjection).
    """
    report = Report(f"ladder({J.text()})")
    ladder = lm_ladder(J, cap=max(i_max + 1, 2))
    n = J.n
    for i in range(2, i_max + 1):
        if i > ladder.top:
            break
        tag = f"level {i}"
        low, high = ladder.level(i)
        upper = RealizableSet.create(high, n, i)
        poset = build_bi(J, i, ladder=ladder, max_nodes=max_nodes)
        next_low = ladder.lower(i + 1) if i + 1 <= ladder.top else frozenset()
        next_high = ladder.upper(i + 1) if i + 1 <= ladder.top else frozenset()

        graded = all(
            poset.nodes[hi].rank == poset.nodes[lo].rank + 1
            for lo, hi, _ in poset.edges
        )
        report.check(f"{tag}: graded edges", graded)
        report.check(
            f"{tag}: unique source with inversion set = next lower level",
            poset.sources() == [node_key(next_low)],
            witness=[len(s) for s in poset.sources()],
        )
        report.check(
            f"{tag}: unique sink with inversion set = next upper level",
            poset.sinks() == [node_key(next_high)],
            witness=[len(s) for s in poset.sinks()],
        )

        admits = ladder_member_filter(ladder, i)
        expected_nodes = {
            frozenset(U)
            for U in realizable_sets_between(
                upper.suffix_class, upper.suffix_class | upper.full_class, n, i + 1
            )
            if admits(frozenset(U))
        }
        actual_nodes = {node.inv for node in poset.nodes.values()}
        report.check(
            f"{tag}: nodes = admitted realizable sets in the interval",
            actual_nodes == expected_nodes,
            witness=len(actual_nodes ^ expected_nodes),
        )

        # connectivity within the subposet: everything reachable from the
        # source and co-reachable from the sink
        if poset.nodes:
            reach = _reachable(poset, poset.sources())
            coreach = _coreachable(poset, poset.sinks())
            report.check(
                f"{tag}: all nodes between source and sink",
                reach == set(poset.nodes) and coreach == set(poset.nodes),
            )

        if i + 1 > ladder.top:
            continue
        lifted_invs = set()
        bad_lift = None
        next_upper = RealizableSet.create(next_high, n, i + 1)
        next_admits = ladder_member_filter(ladder, i + 1)
        for labels in maximal_chains(poset, cap=chain_cap):
            rho = lift_chain(ladder, i, labels)
            if not is_admissible_on(rho, next_upper):
                bad_lift = rho.text()
                break
            inv = inversion_set(rho, next_upper)
            if not next_admits(inv):
                bad_lift = f"{rho.text()} (lift leaves the next level)"
                break
            lifted_invs.add(inv)
        report.check(
            f"{tag}: maximal chains lift to admissible next-level orders placing "
            f"the next lower level first",
            bad_lift is None,
            witness=bad_lift,
        )
        next_poset = build_bi(J, i + 1, ladder=ladder, max_nodes=max_nodes)
        next_nodes = {node.inv for node in next_poset.nodes.values()}
        report.check(
            f"{tag}: lifted chains cover the level-{i + 1} poset",
            lifted_invs == next_nodes,
            witness=len(lifted_invs ^ next_nodes),
        )
    return report


def _reachable(poset: BruhatPoset, starts) -> set:
    seen = set(starts)
    stack = list(starts)
    while stack:
        key = stack.pop()
        for upper, _ in poset.out_edges[key]:
            if upper not in seen:
                seen.add(upper)
                stack.append(upper)
    return seen


def _coreachable(poset: BruhatPoset, starts) -> set:
    seen = set(starts)
    stack = list(starts)
    while stack:
        key = stack.pop()
        for lower, _ in poset.in_edges[key]:
            if lower not in seen:
                seen.add(lower)
                stack.append(lower)
    return seen


def forbidden_ladder_segmentations(
    J: RealizableSet,
    i: int,
    ladder: LMLadder | None = None,
    max_between: int = 4096,
) -> Report:
    """Scan for the two packet shapes whose absence powers the ladder proofs.

    Shape A (on (i+1)-generated packets, labels relative to (L^i, M^i)):
        a run of prefix∩full, then empty∩full, then empty∩prefix,
        all three non-empty and covering the packet.
    Shape B (for each realizable K with L^i ⊆ K ⊆ M^i, labels (K, M^i)):
        empty∩suffix, then empty∩full, then suffix∩full.

    Both scans report every occurrence; for ladders of 2-sets none exist.
    """
    report = Report(f"forbidden-segmentations({J.text()}, level {i})")
    if ladder is None:
        ladder = lm_ladder(J, cap=max(i, 2))
    n = J.n
    low, high = ladder.level(i)
    found_a = _scan_pair_shape(
        low, high, n, i, ((PREFIX, FULL), (EMPTY, FULL), (EMPTY, PREFIX))
    )
    report.check("no prefix/empty ladder shape", not found_a, witness=_shape_witness(found_a))

    gap = sorted(high - low)
    if 2 ** len(gap) > max_between:
        report.check(
            f"interval enumeration within budget (2^{len(gap)} subsets)", False,
            witness=len(gap),
        )
        return report
    found_b = []
    for K in realizable_sets_between(low, high, n, i):
        found_b.extend(
            _scan_pair_shape(K, high, n, i, ((EMPTY, SUFFIX), (EMPTY, FULL), (SUFFIX, FULL)))
        )
    report.check("no suffix/full interval shape", not found_b, witness=_shape_witness(found_b))
    return report


def _shape_witness(found):
    return None if not found else [x.text() for x in found[:3]]


def _scan_pair_shape(first, second, n, k, pattern):
    """Packets of (k+2)-generators whose complete joint-label run sequence
    matches ``pattern`` (labels relative to ``first`` and ``second``)."""
    out = []
    if k + 2 > n:
        return out
    first = frozenset(first)
    second = frozenset(second)
    for X in enumerate_ksets(n, k + 2):
        labels = [
            (classify(first, Y), classify(second, Y)) for Y in packet(X).members
        ]
        runs: list[tuple[str, str]] = []
        for lab in labels:
            if not runs or runs[-1] != lab:
                runs.append(lab)
        if tuple(runs) == tuple(pattern):
            out.append(X)
    return out


def check_counterexample_n9() -> Report:
    """The nine-strand configuration where the 2-set closure property fails.

    Start from the 5-sets missing only {1,2,3,4,5} and run the ladder shape
    directly: the level-7 upper set M consists of the 7-sets not containing
    {1,2,3,4,5}, the lower set is empty, and for K = {2356789, 2456789,
    3456789} the union of K's suffix class with M's suffix class is NOT
    realizable: the packet of {1..9} splits into suffix/full material in the
    forbidden shape.  All assertions are computed, not assumed.
    """
    report = Report("counterexample-n9")
    n = 9
    core = kset([1, 2, 3, 4, 5], n)
    m5 = frozenset(X for X in enumerate_ksets(n, 5) if X != core)
    l6 = frozenset(X for X in enumerate_ksets(n, 6) if core.issubset(X))
    m6 = frozenset(enumerate_ksets(n, 6))
    report.check("level-6 lower set = 6-sets containing the core",
                 l6 == _suffix_class(m5, n, 5))
    report.check("level-6 upper set = all 6-sets",
                 m6 == _suffix_class(m5, n, 5) | _full_class(m5, n, 5))
    l7 = _suffix_class(m6, n, 6)
    report.check("level-7 lower set empty", l7 == frozenset())
    m7 = l7 | _full_class(m6 - l6, n, 6)
    expected_m7 = frozenset(
        X for X in enumerate_ksets(n, 7) if not core.issubset(X)
    )
    report.check("level-7 upper set = 7-sets not containing the core", m7 == expected_m7)
    report.check("level-7 upper set size = 30", len(m7) == 30)

    K = frozenset(
        kset(e, n) for e in ([2, 3, 5, 6, 7, 8, 9], [2, 4, 5, 6, 7, 8, 9], [3, 4, 5, 6, 7, 8, 9])
    )
    report.check("witness set is realizable", check_realizable(K, n, 7)[0])
    report.check("witness set lies strictly between the level-7 bounds",
                 l7 < K < m7)

    k_suffix = _suffix_class(K, n, 7)
    m7_suffix = _suffix_class(m7, n, 7)
    union = k_suffix | m7_suffix
    ok, violation = check_realizable(union, n, 8)
    report.check(
        "suffix-class union is NOT realizable",
        not ok,
        witness=None if not ok else "unexpectedly realizable",
    )
    whole = kset(list(range(1, 10)), n)
    report.check(
        "violating packet is generated by the whole ground set",
        violation is not None and violation.generator == whole,
        witness=None if violation is None else violation.generator.text(),
    )

    w1 = kset([1, 2, 3, 4, 5, 7, 8, 9], n)
    w2 = kset([1, 2, 3, 4, 6, 7, 8, 9], n)
    w3 = kset([1, 2, 3, 5, 6, 7, 8, 9], n)
    report.check(
        "witness 12345789 in empty(K) ∩ suffix(M)",
        classify(K, w1) == EMPTY and classify(m7, w1) == SUFFIX,
    )
    report.check(
        "witness 12346789 in empty(K) ∩ full(M)",
        classify(K, w2) == EMPTY and classify(m7, w2) == FULL,
    )
    report.check(
        "witness 12356789 in suffix(K) ∩ full(M)",
        classify(K, w3) == SUFFIX and classify(m7, w3) == FULL,
    )
    shape = _scan_pair_shape(
        K, m7, n, 7, ((EMPTY, SUFFIX), (EMPTY, FULL), (SUFFIX, FULL))
    )
    report.check(
        "the whole-ground-set packet shows the forbidden suffix/full shape",
        shape == [whole],
        witness=[x.text() for x in shape],
    )
    return report
