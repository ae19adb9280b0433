import json

import pytest

from torswide.errors import InvalidInput
from torswide.quiverrep import (
    Quiver,
    _local_certificate,
    cyclic_quiver,
    d4_quiver,
    direct_sum,
    hom_dim,
    hom_space,
    is_indecomposable,
    kronecker_quiver,
    linear_quiver,
)
from torswide.universe import (
    Universe,
    cache_key,
    check_universe,
    enumerate_universe,
    kron_reg,
    load_universe,
    positive_roots,
)


def test_dynkin_counts(a2, a3, d4):
    # positive roots: n(n+1)/2 for A_n, 12 for D_4
    assert (len(a2), len(a3), len(d4)) == (3, 6, 12)
    assert sorted(o.dim for o in a3.objects) == sorted(positive_roots(a3.quiver))


def test_a2_labels(a2):
    assert a2.labels == ["root[0,1]", "root[1,0]", "root[1,1]"]


def test_kronecker_count(kron6):
    # 7 preprojectives, 7 preinjectives, 6 points times 6 lengths
    assert len(kron6) == 7 + 7 + 6 * 6
    assert kron6.labels[0] == "pre(0)" and kron6.labels[-1] == "inj(6)"


def test_tube_count(tube3):
    assert len(tube3) == 3 * 6


def test_universe_objects_are_indecomposable_and_distinct(a3, kron3, tube2):
    for u in (a3, kron3, tube2):
        assert check_universe(u) == []


def test_hom_table_matches_direct(kron3):
    for i in range(0, len(kron3), 3):
        for j in range(0, len(kron3), 4):
            assert kron3.hom(i, j) == hom_dim(kron3.objects[i], kron3.objects[j])


def test_identify(kron3):
    q = kron3.quiver
    assert kron3.labels[kron3.identify(kron_reg(q, "inf", 2))] == "reg(inf,2)"
    assert kron3.identify(kron_reg(q, 1, 5)) is None


def test_non_dynkin_rejected():
    with pytest.raises(InvalidInput):
        enumerate_universe(kronecker_quiver(), "dynkin")


def test_bound_required():
    with pytest.raises(InvalidInput):
        enumerate_universe(kronecker_quiver(), "kronecker", {})
    with pytest.raises(InvalidInput):
        enumerate_universe(linear_quiver(2), "galaxy")


def test_cache_roundtrip(tmp_path, kron3):
    path = tmp_path / "universe.json"
    q = kronecker_quiver()
    first = load_universe(q, "kronecker", {"bound": 3}, path)
    assert path.exists()
    second = load_universe(q, "kronecker", {"bound": 3}, path)
    assert second.labels == first.labels == kron3.labels
    assert (second.hom_table == kron3.hom_table).all() and (second.ext_table == kron3.ext_table).all()
    assert all(a.same_as(b) for a, b in zip(second.objects, kron3.objects))
    store = json.loads(path.read_text())
    assert list(store) == [cache_key(q, "kronecker", {"bound": 3})]


def test_cache_key_depends_on_prime():
    assert cache_key(linear_quiver(2, 5), "dynkin", {}) != cache_key(linear_quiver(2, 7), "dynkin", {})


def test_universe_json_roundtrip(d4):
    back = Universe.from_json(json.loads(json.dumps(d4.to_json())))
    assert back.labels == d4.labels and (back.hom_table == d4.hom_table).all()


def test_other_primes():
    assert len(enumerate_universe(d4_quiver(3), "dynkin")) == 12
    assert len(enumerate_universe(kronecker_quiver(3), "kronecker", {"bound": 2})) == 3 + 3 + 4 * 2


def test_local_certificate_only_for_indecomposables(kron3, tube3):
    for u in (kron3, tube3):
        for o in u.objects:
            assert is_indecomposable(o)
    q = kronecker_quiver()
    r3 = kron_reg(q, 2, 3)
    assert _local_certificate(r3, hom_space(r3, r3))
    split = direct_sum(kron_reg(q, 2, 1), kron_reg(q, 2, 2))
    assert not _local_certificate(split, hom_space(split, split))
    assert not is_indecomposable(split)


def test_quiver_validation():
    with pytest.raises(InvalidInput):
        Quiver(["0", "0"], [])
    with pytest.raises(InvalidInput):
        Quiver(["0"], [("a", "0", "1")])
    with pytest.raises(InvalidInput):
        Quiver(["0"], [], prime=6)
    assert not cyclic_quiver(2).acyclic
