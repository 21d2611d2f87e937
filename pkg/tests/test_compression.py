import itertools
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from oracles import max_opposite_pairing
from tsurf.compression import (
    ANNULUS_COMPRESSION, CAP_CASE1, DISK_COMPRESSION, UNWIND, CompressionError, SurfaceSummary,
    bracket_pairs, ledger_check, make_move, pair_depths, plan_compressions, plan_for,
)
from tsurf.enumeration import enumerate_admissible_vertices
from tsurf.surface import BoundaryCurve, all_choices, build_surface
from tsurf.triangulation import builtin


def curve(i, case, homology=(0, 0), depth=0, orientation=0, cusp=0):
    return BoundaryCurve(i, cusp, (), (), homology, 0, 1, case, depth, orientation)


def test_empty_plan_balances():
    plan = plan_compressions([], 0)
    assert plan.moves == ()
    assert ledger_check(plan, SurfaceSummary(0, ()))


def test_only_case1_curves():
    curves = [curve(0, 1), curve(1, 1, depth=1)]
    plan = plan_compressions(curves, -3)
    assert [m.kind for m in plan.moves] == [CAP_CASE1, CAP_CASE1]
    assert [m.targets for m in plan.moves] == [(1,), (0,)]
    assert ledger_check(plan)


def test_unclassified_rejected():
    with pytest.raises(CompressionError):
        plan_compressions([curve(0, None)], 0)


def test_wrong_disk_constant_flagged():
    curves = [curve(0, 2)]
    plan = plan_compressions(curves, 0)
    assert ledger_check(plan)
    bad_move = replace(plan.moves[0], d_chi=1)
    bad = replace(plan, moves=(bad_move,) + plan.moves[1:])
    report = ledger_check(bad)
    assert not report and report.first_bad_move == 0
    assert "DiskCompression" in report.reason


def essential_ring(signs):
    """Essential curves on one cusp, each sharing a region with the next one around a ring."""
    n = len(signs)
    return [BoundaryCurve(i, 0, (), (), (s, 0), i, (i + 1) % n if n > 1 else 0, 3, 0, s)
            for i, s in enumerate(signs)]


def test_alternating_signs_pair_up():
    plan = plan_compressions(essential_ring([1, -1, 1, -1]), 0)
    kinds = [m.kind for m in plan.moves]
    assert kinds.count(ANNULUS_COMPRESSION) == 2 and kinds.count(UNWIND) == 0
    assert ledger_check(plan)


def test_equal_signs_unwind():
    plan = plan_compressions(essential_ring([1, 1]), 0)
    kinds = [m.kind for m in plan.moves]
    assert kinds.count(ANNULUS_COMPRESSION) == 0 and kinds.count(UNWIND) == 2
    assert ledger_check(plan)


def test_bracket_pairing_is_maximal_on_short_words():
    for n in range(1, 7):
        for signs in itertools.product((1, -1), repeat=n):
            pairs = bracket_pairs(signs)
            assert len(pairs) == max_opposite_pairing(signs)
            for a, b in pairs:
                assert signs[a] == 1 and signs[b] == -1
            used = [i for p in pairs for i in p]
            assert len(used) == len(set(used))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from((1, -1)), min_size=1, max_size=10))
def test_bracket_pairs_properties(signs):
    pairs = bracket_pairs(signs)
    assert len(pairs) == min(signs.count(1), signs.count(-1))
    depths = pair_depths(signs, pairs)
    assert len(depths) == len(pairs) and all(d >= 0 for d in depths)
    plan = plan_compressions(essential_ring(signs), 0)
    assert ledger_check(plan)
    depths_in_plan = [m.depth for m in plan.moves if m.kind == ANNULUS_COMPRESSION]
    assert depths_in_plan == sorted(depths_in_plan)


def test_make_move_constants():
    assert make_move(DISK_COMPRESSION, [0], 0).d_chi == 2
    m = make_move(ANNULUS_COMPRESSION, [0, 1], 0)
    assert (m.d_chi, m.d_boundary) == (0, 2)
    assert (make_move(CAP_CASE1, [0], 0).d_chi, make_move(CAP_CASE1, [0], 0).d_boundary) == (1, -1)


def test_figure_eight_plans_balance(fig8):
    for v in enumerate_admissible_vertices(fig8):
        for choice in all_choices(fig8, v.primitive):
            built = build_surface(fig8, v.primitive, choice)
            plan = plan_for(built)
            report = ledger_check(plan)
            assert report, report.reason
            # independent recomputation of the final chi from move definitions
            deltas = {"CapCase1": 1, "DiskCompression": 2}
            chi = plan.initial_chi + sum(deltas.get(m.kind, 0) for m in plan.moves)
            assert chi == plan.expected.chi


def test_annulus_in_census_plan():
    tri = builtin("m009")
    x = (0, 1, 0, 0, 0, 2, 0, 1, 0)
    kinds = set()
    for choice in all_choices(tri, x):
        plan = plan_for(build_surface(tri, x, choice))
        assert ledger_check(plan)
        kinds.update(m.kind for m in plan.moves)
    assert {ANNULUS_COMPRESSION, DISK_COMPRESSION} <= kinds


def test_misordered_annuli_flagged():
    plan = plan_compressions(essential_ring([1, 1, -1, -1]), 0)
    annuli = [m for m in plan.moves if m.kind == ANNULUS_COMPRESSION]
    assert [m.depth for m in annuli] == [0, 1]
    swapped = replace(plan, moves=tuple(annuli[::-1]))
    assert not ledger_check(swapped)
