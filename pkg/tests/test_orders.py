"""Admissibility, inversion sets, equivalence classes, and packet flips."""

import pytest

from bruhat_orders.errors import (
    BudgetExceededError,
    DomainMismatchError,
    InvalidArgumentError,
    NotAChainError,
    NotAdmissibleError,
)
from bruhat_orders.ksets import enumerate_ksets, kset, packet, parse_kset
from bruhat_orders.orders import (
    anti_order,
    class_representative,
    complement_inversions,
    contiguous_packets,
    elementary_neighbors,
    equivalence_class,
    flippable_bruteforce,
    induced_orientation,
    inversion_set,
    is_admissible,
    is_admissible_on,
    iter_admissible_orders,
    lex_order,
    maximal_order,
    minimal_order,
    order_with_inversions,
    packet_flip,
    parse_korder,
    transpose,
)
from bruhat_orders.realizable import RealizableSet, check_realizable


def K(text, n):
    return parse_kset(text, n)


def ksets(texts, n):
    return frozenset(parse_kset(t, n) for t in texts)


# --- admissibility -----------------------------------------------------------


def test_admissible_example():
    ok, bad = is_admissible(parse_korder("23<13<24<14<12<34", 4))
    assert ok and bad == []


def test_inadmissible_example_names_violator():
    ok, bad = is_admissible(parse_korder("12<13<34<14<24<23", 4))
    assert not ok
    assert bad == [K("134", 4)]


def test_lex_always_admissible():
    for n, k in [(5, 2), (4, 3), (6, 1), (5, 5)]:
        assert is_admissible(lex_order(n, k))[0]
        assert is_admissible(anti_order(n, k))[0]


def test_admissible_needs_full_domain():
    with pytest.raises(DomainMismatchError):
        is_admissible(parse_korder("12<13", 4))


# --- admissibility over a realizable domain ---------------------------------


def test_admissible_on_suffix_packet():
    J = RealizableSet.create(ksets(["134", "234", "124"], 4), 4, 3)
    assert is_admissible_on(parse_korder("234<134<124", 4), J)
    assert not is_admissible_on(parse_korder("124<134<234", 4), J)


def test_admissible_on_full_domain_agrees():
    J = RealizableSet.create(enumerate_ksets(4, 2), 4, 2)
    for rho in iter_admissible_orders(enumerate_ksets(4, 2), 4, 2):
        assert is_admissible_on(rho, J) == is_admissible(rho)[0]
    assert not is_admissible_on(parse_korder("12<13<34<14<24<23", 4), J)


def test_admissible_on_triangle():
    # on {12,13,23} only the lex and antilex orders of the full packet pass
    J = RealizableSet.create(ksets(["12", "13", "23"], 4), 4, 2)
    good = [rho.text() for rho in iter_admissible_orders(J.members, 4, 2, J=J)]
    assert sorted(good) == ["12<13<23", "23<13<12"]
    assert not is_admissible_on(parse_korder("12<23<13", 4), J)


# --- inversion sets ----------------------------------------------------------


def test_inversion_set_paper_order():
    inv = inversion_set(parse_korder("23<13<24<14<12<34", 4))
    assert inv == ksets(["123", "124"], 4)


def test_inversion_set_path_example():
    J = RealizableSet.create(ksets(["134", "234", "124"], 4), 4, 3)
    inv = inversion_set(parse_korder("234<134<124", 4), J)
    assert inv == ksets(["1234"], 4)


def test_inversion_set_rejects_inadmissible():
    with pytest.raises(NotAdmissibleError):
        inversion_set(parse_korder("12<13<34<14<24<23", 4))


def test_inversion_set_includes_suffix_class_for_singleton_traces():
    # a domain where a suffix-class packet meets J in one element only
    J = RealizableSet.create(ksets(["234", "134"], 4), 4, 3)
    assert J.suffix_class == ksets(["1234"], 4)
    inv = inversion_set(parse_korder("234<134", 4), J)
    assert inv == ksets(["1234"], 4)


# --- transpose ---------------------------------------------------------------


def test_transpose_complements_inversions():
    rho = parse_korder("23<13<24<14<12<34", 4)
    assert inversion_set(transpose(rho)) == complement_inversions(
        inversion_set(rho), 4, 2
    )


def test_transpose_of_lex_is_anti():
    assert transpose(lex_order(4, 2)) == anti_order(4, 2)
    assert inversion_set(anti_order(4, 2)) == frozenset(enumerate_ksets(4, 3))


def test_transpose_complement_exhaustive():
    for rho in iter_admissible_orders(enumerate_ksets(4, 2), 4, 2):
        assert inversion_set(transpose(rho)) == complement_inversions(
            inversion_set(rho), 4, 2
        )


def test_transpose_of_tstuts_order():
    rho = parse_korder("12<13<14<34<24<23", 4)  # inversion set {234}
    assert inversion_set(rho) == ksets(["234"], 4)
    assert inversion_set(transpose(rho)) == ksets(["123", "124", "134"], 4)


# --- elementary equivalence --------------------------------------------------


def test_elementary_neighbors_example():
    rho = parse_korder("12<13<14<23<24<34", 4)
    neighbors = {o.text() for o in elementary_neighbors(rho)}
    assert "12<13<23<14<24<34" in neighbors


def test_elementary_neighbors_swap_at_front():
    rho = parse_korder("12<34<14<13<24<23", 4)
    neighbors = {o.text() for o in elementary_neighbors(rho)}
    assert "34<12<14<13<24<23" in neighbors
    # the swapped pair shares no packet
    assert K("12", 4).intersection_size(K("34", 4)) == 0


def test_no_elementary_neighbors_for_singletons():
    # every pair of 1-sets shares a packet
    assert elementary_neighbors(lex_order(4, 1)) == []
    assert len(equivalence_class(lex_order(4, 1))) == 1


def test_equivalence_class_worked_example():
    rho = parse_korder("34<12<14<24<13<23", 4)
    cls = {o.text() for o in equivalence_class(rho)}
    assert cls == {
        "34<12<14<24<13<23",
        "34<12<14<13<24<23",
        "12<34<14<24<13<23",
        "12<34<14<13<24<23",
    }
    invs = {inversion_set(o) for o in equivalence_class(rho)}
    assert invs == {ksets(["234", "134"], 4)}


def test_equivalence_class_of_lex42():
    cls = {o.text() for o in equivalence_class(lex_order(4, 2))}
    assert cls == {"12<13<14<23<24<34", "12<13<23<14<24<34"}


def test_class_representative_is_lex_smallest():
    rho = parse_korder("34<12<14<24<13<23", 4)
    rep = class_representative(equivalence_class(rho))
    assert rep.text() == "12<34<14<13<24<23"


def test_class_cap():
    with pytest.raises(BudgetExceededError):
        equivalence_class(lex_order(4, 2), cap=1)


def test_distinct_classes_have_distinct_inversion_sets():
    for n, k in [(4, 2), (5, 2), (4, 3)]:
        by_inv = {}
        for rho in iter_admissible_orders(enumerate_ksets(n, k), n, k):
            by_inv.setdefault(inversion_set(rho), set()).add(rho)
        for inv, orders in by_inv.items():
            seed = next(iter(orders))
            assert equivalence_class(seed) == frozenset(orders)


# --- flippability oracle -----------------------------------------------------


def test_flippable_worked_example():
    rho = parse_korder("34<12<14<24<13<23", 4)
    assert flippable_bruteforce(rho) == ksets(["134", "124"], 4)


def test_flippable_lex42():
    assert flippable_bruteforce(lex_order(4, 2)) == ksets(["123", "234"], 4)


def test_flippable_single_packet():
    assert flippable_bruteforce(anti_order(3, 2)) == ksets(["123"], 3)


def test_contiguous_packets_per_representative():
    # per-order contiguity of the four orders in the worked class
    expected = {
        "34<12<14<24<13<23": {"124"},
        "34<12<14<13<24<23": set(),
        "12<34<14<24<13<23": set(),
        "12<34<14<13<24<23": {"134"},
    }
    for text, gens in expected.items():
        rho = parse_korder(text, 4)
        assert {x.text() for x in contiguous_packets(rho)} == gens


# --- packet flips ------------------------------------------------------------


def test_packet_flip_example():
    rho = parse_korder("12<13<14<34<24<23", 4)
    assert packet_flip(rho, K("134", 4)).text() == "12<34<14<13<24<23"


def test_packet_flip_updates_inversions():
    rho = parse_korder("34<12<14<24<13<23", 4)
    flipped = packet_flip(rho, K("124", 4))
    assert inversion_set(flipped) == ksets(["234", "134", "124"], 4)


def test_packet_flip_is_involution():
    rho = parse_korder("12<13<14<34<24<23", 4)
    X = K("134", 4)
    assert packet_flip(packet_flip(rho, X), X) == rho


def test_packet_flip_requires_chain():
    with pytest.raises(NotAChainError):
        packet_flip(lex_order(4, 2), K("123", 4))
    with pytest.raises(InvalidArgumentError):
        packet_flip(parse_korder("12<13<23", 4), K("124", 4))


def test_packet_flip_toggles_inv_by_one_and_keeps_admissible():
    for rho in iter_admissible_orders(enumerate_ksets(4, 2), 4, 2):
        inv = inversion_set(rho)
        for X in contiguous_packets(rho):
            flipped = packet_flip(rho, X)
            assert is_admissible(flipped)[0]
            assert inversion_set(flipped) ^ inv == {X}


def test_flip_commutes_with_equivalence():
    # flipping in any representative where the packet is contiguous lands in one class
    rho = parse_korder("34<12<14<24<13<23", 4)
    X = K("124", 4)
    results = set()
    for member in equivalence_class(rho):
        if X in contiguous_packets(member):
            results.add(frozenset(equivalence_class(packet_flip(member, X))))
    assert len(results) == 1


# --- admissibility <-> realizable prefixes ----------------------------------


def test_admissible_iff_all_prefixes_realizable_n4():
    universe = enumerate_ksets(4, 2)
    admissible = set()
    for rho in iter_admissible_orders(universe, 4, 2):
        admissible.add(rho.elements)
        for i in range(len(rho.elements) + 1):
            assert check_realizable(rho.elements[:i], 4, 2)[0]
    # conversely: an order with every prefix realizable is admissible
    # (spot-check on perturbations of admissible orders)
    from itertools import permutations

    count = 0
    for perm in permutations(universe):
        count += 1
        if count > 3000:
            break
        all_prefix_realizable = all(
            check_realizable(perm[:i], 4, 2)[0] for i in range(len(perm) + 1)
        )
        from bruhat_orders.orders import KOrder

        assert all_prefix_realizable == is_admissible(KOrder(perm))[0]


# --- constructed orders ------------------------------------------------------


def test_order_with_inversions_roundtrip():
    J = RealizableSet.create(enumerate_ksets(4, 2), 4, 2)
    for rho in iter_admissible_orders(enumerate_ksets(4, 2), 4, 2):
        inv = inversion_set(rho)
        built = order_with_inversions(J, inv)
        assert inversion_set(built) == inv


def test_minimal_and_maximal_orders():
    J = RealizableSet.create(ksets(["134", "234", "124"], 4), 4, 3)
    lo = minimal_order(J)
    hi = maximal_order(J)
    assert inversion_set(lo, J) == J.suffix_class
    assert inversion_set(hi, J) == J.suffix_class | J.full_class


def test_parse_korder_diagnostics():
    with pytest.raises(InvalidArgumentError, match="entry 1"):
        parse_korder("12<12", 4)
    with pytest.raises(InvalidArgumentError, match="entry 2"):
        parse_korder("12<13<123", 4)


def test_induced_orientation():
    rho = parse_korder("23<13<24<14<12<34", 4)
    assert induced_orientation(rho, list(packet(K("123", 4)).members)) == "anti"
    assert induced_orientation(rho, list(packet(K("134", 4)).members)) == "lex"
