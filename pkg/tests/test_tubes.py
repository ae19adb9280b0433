import itertools

import pytest
from hypothesis import given, strategies as st

from torswide.errors import InvalidInput
from torswide.quiverrep import ExtSpace, decompose, extension_middle, hom_dim, iter_morphisms, morphism_parts
from torswide.tubes import (
    TubeCoord,
    classify_shape,
    classify_wide_in_tube,
    coord_of,
    ray_sequence_ok,
    tau_coord,
    tube_bricks,
    wing,
    wing_or_ray,
)

C = TubeCoord


def end_dim_formula(k: int, r: int) -> int:
    # S_i[k] maps onto its own socle once per full turn around the tube
    return (k - 1) // r + 1


@pytest.fixture(scope="module")
def shapes2(tube2):
    return classify_wide_in_tube(2, 4, universe=tube2)


@pytest.fixture(scope="module")
def shapes3(tube3):
    return classify_wide_in_tube(3, 6, universe=tube3)


def test_end_dims_match_formula(tube2, tube3):
    for u, r in ((tube2, 2), (tube3, 3)):
        for k, o in enumerate(u.objects):
            assert hom_dim(o, o) == end_dim_formula(coord_of(u, k).k, r)


def test_bricks(tube2, tube3):
    assert tube_bricks(2, 4, tube2) == sorted(C(i, k) for i in (1, 2) for k in (1, 2))
    assert tube_bricks(3, 6, tube3) == sorted(C(i, k) for i in (1, 2, 3) for k in (1, 2, 3))
    with pytest.raises(InvalidInput):
        tube_bricks(3, 2)


def test_label_roundtrip():
    assert C.parse("S2[5]") == C(2, 5) and C(2, 5).label() == "S2[5]"
    with pytest.raises(InvalidInput):
        C.parse("S2(5)")


def test_wing():
    assert wing(C(1, 2), 3) == {C(1, 1), C(2, 1), C(1, 2)}
    assert len(wing(C(3, 2), 3)) == 3 and C(1, 1) in wing(C(3, 2), 3)
    with pytest.raises(InvalidInput):
        wing(C(1, 3), 3)


@given(st.integers(1, 4), st.integers(1, 9), st.integers(1, 9))
def test_tau_has_order_r(r, i, k):
    x = C((i - 1) % r + 1, k)
    y = x
    for _ in range(r):
        y = tau_coord(y, r)
    assert y == x and (r == 1 or tau_coord(x, r) != x)


def test_rank_two_shapes(shapes2):
    assert shapes2["violations"] == []
    assert len(shapes2["wides"]) == 6
    assert {e["shape"] for e in shapes2["wides"]} == {"wing", "wing+ray", "whole"}


def closed_up_to_bound(u, coords, bound):
    """Oracle: kernels, cokernels and extensions between members, ignoring middles beyond the bound."""
    members = {C(*c) for c in coords}
    objs = {c: u.objects[u.index(c.label())] for c in members}

    def inside(rep):
        return all(u.identify(m) is not None and coord_of(u, u.identify(m)) in members for m in decompose(rep))

    for a, b in itertools.product(members, repeat=2):
        for f in iter_morphisms(objs[a], objs[b], 10 ** 5):
            parts = morphism_parts(f)
            if not (inside(parts.kernel.rep) and inside(parts.cokernel.rep)):
                return False
        if a.k + b.k > bound:
            continue
        ext = ExtSpace(objs[a], objs[b])
        for coeffs in itertools.product(range(u.p), repeat=ext.dim):
            if not inside(extension_middle(objs[a], objs[b], ext.cocycle(coeffs))):
                return False
    return True


def test_enumerated_wides_are_closed_up_to_bound(tube2, tube3, shapes2, shapes3):
    for u, data, bound in ((tube2, shapes2, 4), (tube3, shapes3, 6)):
        for e in data["wides"]:
            assert closed_up_to_bound(u, e["coords"], bound), e["coords"]


def test_oracle_rejects_non_wide(tube3):
    assert not closed_up_to_bound(tube3, [(1, 1), (2, 1)], 6)  # misses S1[2]
    assert not closed_up_to_bound(tube3, [(1, 2), (1, 1)], 6)  # misses the cokernel S2[1]


def test_rank_three_subtube(shapes3):
    # {S1[1], S2[2]} is a semibrick whose extension closure is itself a rank-2 tube:
    # it avoids every brick of length 3, yet no wing of the rank-3 tube contains it
    sub = {C(1, 1), C(2, 2), C(1, 3), C(2, 3), C(1, 4), C(2, 5), C(1, 6), C(2, 6)}
    hits = [e for e in shapes3["wides"] if {C(*c) for c in e["coords"]} == sub]
    assert len(hits) == 1
    assert hits[0]["shape"] is None and hits[0]["wing_or_ray"]
    assert classify_shape(sub, 3, 6) is None
    bad = [v for v in shapes3["violations"] if v["reason"] == "no wing / wing+ray shape"]
    assert len(bad) == 3  # one per rotation of the tube
    assert not [v for v in shapes3["violations"] if v["reason"] == "two bricks of length r"]


def test_wing_or_ray_holds_everywhere(shapes2, shapes3):
    for data in (shapes2, shapes3):
        assert all(e["wing_or_ray"] for e in data["wides"])


def test_shape_examples():
    assert classify_shape(set(), 3, 6) == "wing"
    assert classify_shape({C(1, 3), C(1, 6), C(2, 1)}, 3, 6) == "wing+ray"
    assert not wing_or_ray({C(1, 3)}, 3, 6)


def test_ray_sequences(tube3):
    for i in (1, 2, 3):
        for k in range(1, 6):
            assert ray_sequence_ok(tube3, i, k)


def test_bound_validation():
    with pytest.raises(InvalidInput):
        classify_wide_in_tube(3, 5)
    with pytest.raises(InvalidInput):
        classify_wide_in_tube(3, 3)
