"""Skeleton enumeration, critical paths, sigma-sets, N-invariants."""

import pytest

from genrep.algebra_core import enumerate_sequences, projective_layering, realizable
from genrep.errors import EnumerationCapError, UnrealizableError
from genrep.skeleta import (
    canonical_skeleton,
    count_skeleta,
    critical_paths,
    enumerate_skeleta,
    invariants_N,
    iter_skeleta,
    skeleton_from_json,
    skeleton_to_json,
)

from conftest import seq


def label(el):
    r, p = el
    return ("".join(p.arrows) or "e") + f"@z{r}"


S_DEEP = seq((1, 1), (0, 1), (1, 0))   # (S1+S2, S2, S1)
S_FLAT = seq((1, 1), (1, 0), (0, 1))   # (S1+S2, S1, S2)
S_DIM14 = seq((2, 1, 1), (0, 5, 1), (0, 0, 3), (0, 1, 0))


def test_trivial_sequence_single_skeleton(double_back):
    sks = enumerate_skeleta(double_back, seq((1, 1), (0, 0), (0, 0)))
    assert len(sks) == 1
    assert all(p.length == 0 for _, p in sks[0].elements)


def test_count_skeleta_matches_enumeration_double_back(double_back):
    for S in enumerate_sequences(double_back, (2, 2)):
        assert count_skeleta(double_back, S) == len(enumerate_skeleta(double_back, S))


def test_count_skeleta_values(double_back, relay):
    assert count_skeleta(double_back, S_DEEP) == 2
    assert count_skeleta(relay, S_DIM14) == 360
    assert count_skeleta(double_back, seq((1, 0), (0, 0), (1, 0))) == 0  # unrealizable


def test_count_skeleta_matches_enumeration_relay(relay):
    assert len(enumerate_skeleta(relay, S_DIM14)) == 360


def test_enumeration_cap(relay):
    with pytest.raises(EnumerationCapError):
        enumerate_skeleta(relay, S_DIM14, cap=100)
    # lazy iteration is unaffected by large totals
    it = iter_skeleta(relay, S_DIM14)
    assert next(it) is not None


def test_skeleton_closure_and_compatibility(double_back):
    for S in enumerate_sequences(double_back, (2, 2)):
        for sk in enumerate_skeleta(double_back, S):
            for r, p in sk.elements:
                for l in range(p.length + 1):
                    assert (r, p.initial_subpath(l)) in sk
            assert sk.sequence() == S


def test_six_vertex_skeleta_contains_distinguished(six_vertex):
    # layering of the 9-dimensional worked module: 10 compatible skeleta,
    # among them the three distinguished ones of the module itself
    S = seq((2, 1, 1, 0, 0, 0), (0, 0, 0, 2, 1, 0), (0, 0, 0, 0, 0, 2))
    sks = enumerate_skeleta(six_vertex, S)
    assert len(sks) == 10
    seen = {frozenset(map(label, sk.elements)) for sk in sks}
    listed = [
        {"e@z1", "al@z1", "b1al@z1", "e@z2", "al@z2", "b2al@z2", "e@z3", "e@z4", "d@z4"},
        {"e@z1", "al@z1", "b1al@z1", "e@z2", "al@z2", "e@z3", "e@z4", "d@z4", "ed@z4"},
        {"e@z1", "al@z1", "e@z2", "al@z2", "b2al@z2", "e@z3", "e@z4", "d@z4", "ed@z4"},
    ]
    for want in listed:
        assert frozenset(want) in seen


def test_critical_paths_double_back(double_back):
    sk = canonical_skeleton(double_back, S_DEEP)
    assert {label(el) for el in sk.elements} == {"e@z1", "e@z2", "a@z1", "b1a@z1"}
    sets = critical_paths(double_back, sk)
    crits = {(s.critical.arrow, label(s.critical.parent)) for s in sets}
    assert crits == {("b1", "e@z2"), ("b2", "e@z2"), ("b2", "a@z1")}
    for s in sets:
        assert [label(m) for m in s.members] == ["b1a@z1"]
        if s.critical.arrow == "b2" and s.critical.parent[1].length == 1:
            assert len(s.zero_part) == 1 and not s.one_part
        else:
            assert len(s.one_part) == 1 and not s.zero_part


def test_no_critical_paths_for_projective_layering(double_back):
    S = projective_layering(double_back, (1, 1))
    sk = canonical_skeleton(double_back, S)
    assert critical_paths(double_back, sk) == []


def test_critical_paths_relay_counts(relay):
    sk = canonical_skeleton(relay, S_DIM14)
    sets = critical_paths(relay, sk)
    assert len(sets) == 10
    by_len_end = {}
    for s in sets:
        key = (s.critical.length, relay.path_end(s.critical.path(relay)))
        by_len_end[key] = by_len_end.get(key, 0) + 1
    assert by_len_end == {(1, "2"): 1, (2, "2"): 2, (2, "3"): 2, (3, "2"): 5}


def test_invariants_N_double_back(double_back):
    assert invariants_N(double_back, S_DEEP) == (3, 1, 2)
    assert invariants_N(double_back, S_FLAT) == (2, 1, 1)


def test_invariants_N_loop_quiver(loop_out):
    assert invariants_N(loop_out, seq((1, 0), (1, 0), (0, 1)))[0] == 1
    assert invariants_N(loop_out, seq((1, 0), (1, 1), (0, 0)))[0] == 0


def test_invariants_N_unrealizable(double_back):
    with pytest.raises(UnrealizableError):
        invariants_N(double_back, seq((1, 0), (0, 0), (1, 0)))


def closed_form_N(alg, S):
    """Oracle: N and N0 from layer counts alone."""
    N = N0 = 0
    for l in range(alg.L):
        avail = alg.extension_counts(S.layers[l])
        for j in range(alg.n):
            crit = avail[j] - S.layers[l + 1][j]
            tail = sum(S.layers[m][j] for m in range(l + 1, alg.L + 1))
            N += crit * tail
            N0 += crit * S.layers[l + 1][j]
    return N, N0


@pytest.mark.parametrize("dimvec", [(2, 2), (3, 1), (2, 3)])
def test_invariants_match_closed_form_and_all_skeleta(double_back, dimvec):
    for S in enumerate_sequences(double_back, dimvec):
        n, n0, n1 = invariants_N(double_back, S)
        cn, cn0 = closed_form_N(double_back, S)
        assert (n, n0) == (cn, cn0)
        assert n == n0 + n1
        sks = enumerate_skeleta(double_back, S)
        if len(sks) <= 500:
            for sk in sks:
                assert invariants_N(double_back, S, skeleton=sk) == (n, n0, n1)


def test_invariants_skeleton_independent_relay(relay):
    base = invariants_N(relay, S_DIM14)
    for sk in enumerate_skeleta(relay, S_DIM14):
        assert invariants_N(relay, S_DIM14, skeleton=sk) == base


def test_realizable_iff_skeleton_exists_small(double_back, relay, loop_out, y_quiver):
    from itertools import product as iproduct

    for alg in (double_back, relay, loop_out, y_quiver):
        n, L = alg.n, alg.L
        cells = n * (L + 1)
        # all layer matrices with total dimension <= 8 would be huge for wide
        # quivers; cap per-cell values and total
        for flat in iproduct(range(3), repeat=cells):
            if not 0 < sum(flat) <= 8:
                continue
            S = seq(*[flat[l * n:(l + 1) * n] for l in range(L + 1)])
            has_skel = next(iter(iter_skeleta(alg, S)), None) is not None
            assert realizable(alg, S) == has_skel


def test_skeleton_json_roundtrip(double_back):
    sk = canonical_skeleton(double_back, S_DEEP)
    data = skeleton_to_json(sk)
    assert {"r": 1, "arrows": []} in data["elements"]
    back = skeleton_from_json(data, double_back)
    assert back == sk


from hypothesis import given, settings, strategies as st

random_layers = st.lists(
    st.lists(st.integers(min_value=0, max_value=2), min_size=2, max_size=2),
    min_size=3, max_size=3,
)


@given(random_layers)
@settings(max_examples=60, deadline=None)
def test_count_matches_enumeration_random(double_back, rows):
    S = seq(*rows)
    assert count_skeleta(double_back, S) == len(enumerate_skeleta(double_back, S))


def test_skeleton_json_errors(double_back):
    sk = canonical_skeleton(double_back, S_DEEP)
    from genrep.errors import ValidationError
    data = skeleton_to_json(sk)
    bad = {"top": data["top"], "elements": [{"r": 9, "arrows": []}]}
    with pytest.raises(ValidationError):
        skeleton_from_json(bad, double_back)
    bad = {"top": data["top"], "elements": [{"r": 1, "arrows": ["nope"]}]}
    with pytest.raises(ValidationError):
        skeleton_from_json(bad, double_back)


def test_count_skeleta_layer_mismatch(double_back):
    from genrep.errors import ValidationError
    with pytest.raises(ValidationError):
        count_skeleta(double_back, seq((1, 0), (0, 1)))
