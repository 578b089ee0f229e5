"""Ranked flip posets: the orders B(n,k) and their path-to-J analogues.

Nodes are commutation classes of admissible orders, keyed by inversion set;
edges are packet flips labelled by the flipped generator and always join
consecutive ranks.  Construction is an upward breadth-first search from the
unique minimum using the greedy flip search, so it never enumerates classes
or filters the power set.  Subset filtering appears only inside the
verification routine that replays Ziegler's isomorphism at small sizes.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    BudgetExceededError,
    InternalConsistencyError,
    InvalidArgumentError,
)
from .flips import find_flips
from .ksets import KSet, enumerate_ksets, kset, packet
from .orders import (
    KOrder,
    induced_orientation,
    inversion_set,
    lex_order,
    minimal_order,
)
from .realizable import RealizableSet, realizable_sets_between
from .report import Report

DEFAULT_MAX_NODES = 10**6
DEFAULT_MAX_CHAINS = 10**6

NodeKey = tuple[KSet, ...]


def node_key(inv) -> NodeKey:
    return tuple(sorted(inv))


@dataclass(frozen=True)
class BruhatNode:
    inv: frozenset[KSet]
    representative: KOrder
    rank: int


@dataclass(frozen=True)
class BruhatPoset:
    """A graded DAG of inversion-set-keyed classes with flip-labelled edges."""

    kind: str              # "full" or "paths"
    n: int
    k: int                 # size of the sets being ordered
    domain: frozenset[KSet]
    nodes: dict[NodeKey, BruhatNode]
    edges: tuple[tuple[NodeKey, NodeKey, KSet], ...]

    @cached_property
    def out_edges(self) -> dict[NodeKey, list[tuple[NodeKey, KSet]]]:
        out: dict[NodeKey, list[tuple[NodeKey, KSet]]] = {key: [] for key in self.nodes}
        for lower, upper, flip in self.edges:
            out[lower].append((upper, flip))
        for key in out:
            out[key].sort(key=lambda item: item[1])
        return out

    @cached_property
    def in_edges(self) -> dict[NodeKey, list[tuple[NodeKey, KSet]]]:
        inc: dict[NodeKey, list[tuple[NodeKey, KSet]]] = {key: [] for key in self.nodes}
        for lower, upper, flip in self.edges:
            inc[upper].append((lower, flip))
        return inc

    def sources(self) -> list[NodeKey]:
        return sorted(key for key, targets in self.in_edges.items() if not targets)

    def sinks(self) -> list[NodeKey]:
        return sorted(key for key, targets in self.out_edges.items() if not targets)

    def ranks(self) -> dict[int, list[NodeKey]]:
        by_rank: dict[int, list[NodeKey]] = {}
        for key, node in self.nodes.items():
            by_rank.setdefault(node.rank, []).append(key)
        return {r: sorted(keys) for r, keys in sorted(by_rank.items())}

    def to_json(self) -> dict:
        keys = sorted(self.nodes)
        index = {key: i for i, key in enumerate(keys)}
        return {
            "schema": "bruhat/1",
            "kind": self.kind,
            "n": self.n,
            "k": self.k,
            "domain": [m.to_json() for m in sorted(self.domain)],
            "nodes": [
                {"inv": [x.to_json() for x in key], "rank": self.nodes[key].rank}
                for key in keys
            ],
            "edges": [
                {"from": a, "to": b, "flip": f}
                for a, b, f in sorted(
                    (index[lower], index[upper], flip.to_json())
                    for lower, upper, flip in self.edges
                )
            ],
        }

    def to_dot(self) -> str:
        keys = sorted(self.nodes)
        names = {key: f"n{i}" for i, key in enumerate(keys)}
        lines = [
            "digraph bruhat {",
            "  rankdir=BT;",
            '  node [shape=ellipse, fontname="monospace"];',
        ]
        for key in keys:
            lines.append(f'  {names[key]} [label="{inv_label(key)}"];')
        for rank, rank_keys in self.ranks().items():
            joined = "; ".join(names[key] for key in rank_keys)
            lines.append(f"  {{ rank=same; {joined}; }}")
        for lower, upper, flip in sorted(self.edges):
            lines.append(f'  {names[lower]} -> {names[upper]} [label="{flip.text()}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def inv_label(key: NodeKey) -> str:
    if not key:
        return "{}"
    return "{" + ",".join(x.text() for x in key) + "}"


def _sorted_json_edges(edges):
    return sorted(edges, key=lambda e: (e["from"], e["to"]))


def poset_from_json(data: dict) -> BruhatPoset:
    """Rebuild an exported poset; representatives are not round-tripped."""
    if data.get("schema") != "bruhat/1":
        raise InvalidArgumentError(f"unsupported schema {data.get('schema')!r}")
    n = data["n"]
    keys = [node_key(kset(sorted(e), n) for e in entry["inv"]) for entry in data["nodes"]]
    nodes = {
        key: BruhatNode(frozenset(key), KOrder(()), entry["rank"])
        for key, entry in zip(keys, data["nodes"])
    }
    edges = tuple(
        (keys[e["from"]], keys[e["to"]], kset(sorted(e["flip"]), n)) for e in data["edges"]
    )
    domain = frozenset(kset(sorted(m), n) for m in data["domain"])
    return BruhatPoset(data["kind"], n, data["k"], domain, nodes, edges)


def _build_upward(
    kind: str,
    n: int,
    k: int,
    domain_set: RealizableSet | None,
    start: KOrder,
    start_inv: frozenset[KSet],
    max_nodes: int,
) -> BruhatPoset:
    domain = frozenset(enumerate_ksets(n, k)) if domain_set is None else domain_set.members
    nodes: dict[NodeKey, BruhatNode] = {}
    edges: set[tuple[NodeKey, NodeKey, KSet]] = set()
    start_key = node_key(start_inv)
    nodes[start_key] = BruhatNode(start_inv, start, len(start_inv))
    frontier = [start_key]
    while frontier:
        frontier.sort()
        next_frontier: list[NodeKey] = []
        for key in frontier:
            node = nodes[key]
            for result in find_flips(node.representative, domain_set):
                child_inv = node.inv | {result.generator}
                child_key = node_key(child_inv)
                edges.add((key, child_key, result.generator))
                if child_key not in nodes:
                    if len(nodes) >= max_nodes:
                        raise BudgetExceededError(
                            f"poset exceeds {max_nodes} nodes",
                            partial={"nodes": len(nodes), "rank": node.rank},
                        )
                    nodes[child_key] = BruhatNode(
                        child_inv, result.rearranged_order, node.rank + 1
                    )
                    next_frontier.append(child_key)
        frontier = next_frontier
    return BruhatPoset(kind, n, k, domain, nodes, tuple(sorted(edges)))


def build_bnk(n: int, k: int, max_nodes: int = DEFAULT_MAX_NODES) -> BruhatPoset:
    """The flip poset of commutation classes of admissible k-orders on C(n,k).

    Breadth-first search upward from the lexicographic order; node inversion
    sets are exactly the realizable subsets of C(n,k+1).
    """
    if k <= 0 or k > n:
        raise InvalidArgumentError(f"need 0 < k <= n, got n={n}, k={k}")
    return _build_upward("full", n, k, None, lex_order(n, k), frozenset(), max_nodes)


def build_paths_to_J(J: RealizableSet, max_nodes: int = DEFAULT_MAX_NODES) -> BruhatPoset:
    """The poset of commutation classes of admissible J-orders.

    The minimum has the suffix class of J as inversion set, the maximum adds
    the full class, and node inversion sets are exactly the realizable sets
    between those bounds.
    """
    start = minimal_order(J)
    return _build_upward("paths", J.n, J.k, J, start, J.suffix_class, max_nodes)


def maximal_chains(poset: BruhatPoset, cap: int = DEFAULT_MAX_CHAINS):
    """Lazily enumerate source-to-sink flip-label sequences.

    For the full poset these are exactly the admissible orders on C(n,k+1).
    Chains come out in lexicographic label order; exceeding ``cap`` raises.
    """
    sources = poset.sources()
    if not sources:
        return
    count = 0
    out_edges = poset.out_edges
    # iterative DFS carrying the label path
    stack: list[tuple[NodeKey, tuple[KSet, ...]]] = [(src, ()) for src in reversed(sources)]
    while stack:
        key, labels = stack.pop()
        targets = out_edges[key]
        if not targets:
            count += 1
            if count > cap:
                raise BudgetExceededError(f"more than {cap} maximal chains", partial=count)
            yield labels
            continue
        for upper, flip in reversed(targets):
            stack.append((upper, labels + (flip,)))


def chain_order(labels) -> KOrder:
    """Read a maximal chain as the order its flip labels trace."""
    return KOrder(tuple(labels))


def extend_to_max_chain(gamma: KOrder, J: RealizableSet | None = None) -> KOrder:
    """Extend an admissible J-order to a full admissible k-order.

    The result has J as a prefix, induces gamma on J, and has the same
    inversion set as gamma: the appended tail adds no inversions.
    """
    if J is None:
        J = RealizableSet.create(gamma.domain, gamma.n, gamma.k)
    inv = inversion_set(gamma, J)
    n, k = J.n, J.k
    universe = enumerate_ksets(n, k)
    force_anti = inv
    edges: dict[KSet, set[KSet]] = {m: set() for m in universe}
    indeg: dict[KSet, int] = {m: 0 for m in universe}

    def add_edge(a: KSet, b: KSet):
        if b not in edges[a]:
            edges[a].add(b)
            indeg[b] += 1

    if k < n:
        for X in enumerate_ksets(n, k + 1):
            members = packet(X).members
            ordered = members[::-1] if X in force_anti else members
            for a, b in zip(ordered, ordered[1:]):
                add_edge(a, b)
    for a, b in zip(gamma.elements, gamma.elements[1:]):
        add_edge(a, b)
    outside = [m for m in universe if m not in J.members]
    for a in J.members:
        for b in outside:
            add_edge(a, b)

    ready = [m for m in universe if indeg[m] == 0]
    heapq.heapify(ready)
    out: list[KSet] = []
    while ready:
        m = heapq.heappop(ready)
        out.append(m)
        for b in sorted(edges[m]):
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(ready, b)
    if len(out) != len(universe):
        raise InternalConsistencyError(
            "no extension exists: packet constraints plus the prefix are cyclic"
        )
    rho = KOrder(tuple(out))
    if inversion_set(rho) != inv:
        raise InternalConsistencyError("extension changed the inversion set")
    return rho


def verify_ziegler_iso(
    n: int,
    k: int,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> Report:
    """Replay the poset/realizable-set isomorphism at (n, k).

    Checks that node inversion sets coincide with the independently
    enumerated realizable subsets of C(n,k+1) (power-set filtering) and that
    the flip edges are exactly the one-element-step inclusions.
    """
    report = Report(f"ziegler({n},{k})")
    poset = build_bnk(n, k, max_nodes=max_nodes)
    universe = frozenset(enumerate_ksets(n, k + 1)) if k < n else frozenset()
    realizables = {
        frozenset(u) for u in realizable_sets_between(frozenset(), universe, n, k + 1)
    }
    node_invs = {node.inv for node in poset.nodes.values()}
    report.check(
        "node inversion sets = realizable sets",
        node_invs == realizables,
        witness=None
        if node_invs == realizables
        else sorted(x.text() for s in node_invs ^ realizables for x in s),
    )
    expected_edges = set()
    for inv in realizables:
        for X in universe - inv:
            bigger = inv | {X}
            if bigger in realizables:
                expected_edges.add((node_key(inv), node_key(bigger), X))
    report.check(
        "flip edges = single-step inclusion covers",
        set(poset.edges) == expected_edges,
        witness=None
        if set(poset.edges) == expected_edges
        else [
            (inv_label(a), inv_label(b), x.text())
            for a, b, x in sorted(set(poset.edges) ^ expected_edges)
        ][:5],
    )
    graded = all(
        poset.nodes[upper].rank == poset.nodes[lower].rank + 1
        for lower, upper, _ in poset.edges
    )
    report.check("edges connect consecutive ranks", graded)
    report.check("unique minimum with empty inversion set", poset.sources() == [()])
    report.check(
        "unique maximum with full inversion set",
        poset.sinks() == [node_key(universe)],
    )
    return report


def verify_chain_correspondence(poset: BruhatPoset, cap: int = DEFAULT_MAX_CHAINS) -> Report:
    """Check every maximal chain of a full poset is an admissible order."""
    report = Report("chain-correspondence")
    seen = set()
    bad = None
    for labels in maximal_chains(poset, cap=cap):
        rho = chain_order(labels)
        ok, _ = _full_admissible(rho, poset.n, poset.k + 1)
        if not ok:
            bad = rho.text()
            break
        seen.add(rho.elements)
    report.check("every maximal chain is an admissible order", bad is None, witness=bad)
    report.data["chains"] = len(seen)
    return report


def _full_admissible(rho: KOrder, n: int, k: int) -> tuple[bool, list]:
    if k >= n:
        return True, []
    bad = []
    for X in enumerate_ksets(n, k + 1):
        if induced_orientation(rho, packet(X).members) is None:
            bad.append(X)
    return not bad, bad


def admissible_orders_of_chains(poset: BruhatPoset, cap: int = DEFAULT_MAX_CHAINS):
    for labels in maximal_chains(poset, cap=cap):
        yield chain_order(labels)
