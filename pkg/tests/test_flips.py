"""The greedy gather-and-flip search against the class-enumeration oracle."""

import random
from itertools import permutations

import pytest

from bruhat_orders.errors import MalformedSliceError
from bruhat_orders.flips import bubble_up, come_together, find_flips, move_down
from bruhat_orders.ksets import enumerate_ksets, kset, packet, parse_kset
from bruhat_orders.orders import (
    KOrder,
    equivalence_class,
    flippable_bruteforce,
    inversion_set,
    is_admissible_on,
    iter_admissible_orders,
    lex_order,
    anti_order,
    parse_korder,
    transpose,
)
from bruhat_orders.realizable import RealizableSet


def K(text, n):
    return parse_kset(text, n)


def seq(text, n):
    return parse_korder(text, n).elements


# --- move_down ---------------------------------------------------------------


def test_move_down_disjoint():
    assert move_down([K("12", 4)], K("34", 4))


def test_move_down_shared_packet():
    assert not move_down([K("12", 4), K("13", 4)], K("14", 4))


def test_move_down_empty_prefix():
    assert move_down([], K("12", 4))


# --- come_together -----------------------------------------------------------


def test_come_together_bubbles_past_disjoint():
    members = packet(K("123", 4)).members
    ok, out, swaps = come_together(seq("12<13<14<23", 4), members)
    assert ok
    assert "<".join(m.text() for m in out) == "12<13<23<14"
    assert len(swaps) == 1


def test_come_together_already_contiguous():
    members = packet(K("123", 4)).members
    ok, out, swaps = come_together(seq("12<13<23", 4), members)
    assert ok and out == seq("12<13<23", 4) and swaps == []


def test_come_together_blocked():
    # frozen instance at n=5: inside the lexicographic order the packet of
    # 124 cannot gather; 13 shares packets both below (12) and above (14)
    rho = lex_order(5, 2)
    members = packet(K("124", 5)).members
    ok, _out, _swaps = come_together(seq("12<13<14<15<23<24", 5), members)
    assert not ok
    assert K("124", 5) not in flippable_bruteforce(rho)


def test_come_together_rejects_bad_endpoints():
    members = packet(K("123", 4)).members
    with pytest.raises(MalformedSliceError):
        come_together(seq("14<12<13<23", 4), members)


def test_come_together_swap_log_replays():
    # the swap log certifies the rearrangement: every swap joins commuting sets
    members = packet(K("123", 5)).members
    segment = seq("12<13<14<15<23", 5)
    ok, out, swaps = come_together(segment, members)
    assert ok
    replay = list(segment)
    for j in swaps:
        a, b = replay[j], replay[j + 1]
        assert not a.shares_packet(b)
        replay[j], replay[j + 1] = b, a
    assert tuple(replay) == out


# --- bubble_up ---------------------------------------------------------------


def test_bubble_up_no_blockers():
    members = set(packet(K("123", 5)).members)
    head = K("45", 5)
    ok, out, _ = bubble_up(head, (head, K("13", 5), K("23", 5)), members)
    assert ok
    assert out[-1] == head


def test_bubble_up_blocked_by_member():
    # frozen instance at n=5: 13 cannot pass 14 inside the packet of 124
    members = set(packet(K("124", 5)).members)
    head = K("13", 5)
    ok, _out, _ = bubble_up(head, seq("13<14<15<23<24", 5), members)
    assert not ok


def test_bubble_up_recursive_blocker():
    # frozen instance at n=5: 14 is blocked by 15 (shared packet 145), which
    # itself bubbles past 23; then 14 follows
    members = set(packet(K("123", 5)).members)
    ok, out, swaps = bubble_up(K("14", 5), seq("14<15<23", 5), members)
    assert ok
    assert "<".join(m.text() for m in out) == "23<14<15"
    assert swaps == [1, 0]


def test_bubble_up_requires_head_first():
    members = set(packet(K("123", 5)).members)
    with pytest.raises(MalformedSliceError):
        bubble_up(K("14", 5), seq("15<14<23", 5), members)


def test_bubble_up_against_exhaustive_swap_search():
    """Compare against brute force over all commutation rearrangements for
    every admissible-order segment of length <= 8 at (5,2)."""

    def can_raise_above(segment, members):
        # oracle: BFS over commutation moves; succeed when no member is
        # above the head element
        head = segment[0]
        start = tuple(segment)
        seen = {start}
        stack = [start]
        while stack:
            cur = stack.pop()
            hpos = cur.index(head)
            if all(m not in members for m in cur[hpos + 1:]):
                return True
            for i in range(len(cur) - 1):
                if not cur[i].shares_packet(cur[i + 1]):
                    nxt = cur[:i] + (cur[i + 1], cur[i]) + cur[i + 2:]
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
        return False

    rng = random.Random(11)
    universe = enumerate_ksets(5, 2)
    checked = 0
    for _ in range(60):
        segment = tuple(rng.sample(universe, rng.randrange(2, 9)))
        for X in enumerate_ksets(5, 3):
            members = set(packet(X).members)
            present = [m for m in segment if m in members]
            if not present or segment[0] not in members:
                continue
            got, _out, _ = bubble_up(segment[0], segment, members)
            expected = can_raise_above(segment, members)
            assert got == expected, (segment, X)
            checked += 1
    assert checked > 100


# --- find_flips --------------------------------------------------------------


def test_find_flips_worked_example():
    rho = parse_korder("34<12<14<24<13<23", 4)
    assert [r.generator.text() for r in find_flips(rho)] == ["124"]
    # the class's reversed-orientation flip shows up through transposition
    assert [r.generator.text() for r in find_flips(transpose(rho))] == ["134"]


def test_find_flips_of_lex():
    assert [r.generator.text() for r in find_flips(lex_order(4, 2))] == ["123", "234"]
    assert find_flips(anti_order(4, 2)) == []


def test_find_flips_result_orders():
    rho = parse_korder("34<12<14<24<13<23", 4)
    result = find_flips(rho)[0]
    assert result.generator == K("124", 4)
    # pre-flip order is commutation-equivalent to the input
    assert result.pre_flip_order in equivalence_class(rho)
    # flipped order has the inversion set enlarged by the generator
    assert inversion_set(result.rearranged_order) == inversion_set(rho) | {K("124", 4)}
    assert result.moves >= 0


def test_find_flips_rearrangement_within_class_larger():
    for rho in iter_admissible_orders(enumerate_ksets(5, 2), 5, 2):
        for result in find_flips(rho):
            # inversion-set check (cheaper than membership at this size)
            assert inversion_set(result.pre_flip_order) == inversion_set(rho)
            assert inversion_set(result.rearranged_order) == inversion_set(rho) | {
                result.generator
            }
        break


def test_find_flips_sorted_by_generator():
    rho = lex_order(5, 2)
    gens = [r.generator for r in find_flips(rho)]
    assert gens == sorted(gens)


@pytest.mark.parametrize("n,k", [(4, 2), (4, 3), (3, 2), (4, 1)])
def test_oracle_equivalence_exhaustive(n, k):
    for rho in iter_admissible_orders(enumerate_ksets(n, k), n, k):
        oracle = flippable_bruteforce(rho)
        inv = inversion_set(rho)
        greedy = {r.generator for r in find_flips(rho)}
        assert greedy == oracle - inv, rho.text()
        anti = {r.generator for r in find_flips(transpose(rho))}
        assert anti == oracle & inv, rho.text()


def test_find_flips_on_path_domain():
    J = RealizableSet.create(
        frozenset({K("134", 4), K("234", 4), K("124", 4)}), 4, 3
    )
    rho = parse_korder("234<134<124", 4)
    assert is_admissible_on(rho, J)
    # no full packets in this domain, so nothing is flippable
    assert find_flips(rho, J) == []


def test_find_flips_on_path_domain_with_full_packet():
    J = RealizableSet.create(frozenset({K("12", 4), K("13", 4), K("23", 4)}), 4, 2)
    lo = parse_korder("12<13<23", 4)
    results = find_flips(lo, J)
    assert [r.generator.text() for r in results] == ["123"]
    assert results[0].rearranged_order.text() == "23<13<12"
    # the reversed order has nothing lexicographic left to flip
    assert find_flips(parse_korder("23<13<12", 4), J) == []


def test_oracle_equivalence_on_path_domains():
    # every admissible J-order for every realizable 2-set at n=4
    universe = enumerate_ksets(4, 2)
    from itertools import combinations

    from bruhat_orders.realizable import check_realizable

    for r in range(len(universe) + 1):
        for c in combinations(universe, r):
            S = frozenset(c)
            if not check_realizable(S, 4, 2)[0]:
                continue
            J = RealizableSet.create(S, 4, 2)
            for rho in iter_admissible_orders(S, 4, 2, J=J):
                oracle = flippable_bruteforce(rho, domain=J)
                inv = inversion_set(rho, J)
                greedy = {res.generator for res in find_flips(rho, J)}
                assert greedy == oracle - inv
