import itertools

import pytest
from hypothesis import given, strategies as st

from torswide.errors import InvalidInput, SymbolicOnly
from torswide.kronecker import (
    FiniteModule,
    Inj,
    KronSymbol,
    Pre,
    Reg,
    SplitPreinjective,
    TubesPlusQ,
    cosilting_catalog,
    generators_in,
    hom_to_quasisimples,
    membership,
    membership_crosscheck,
    preinjective_quotient_check,
    realize,
    ringel_brick,
    ringel_ses_check,
    ringel_suite,
    symbol_of,
    theorem_c_rows,
    verify_theorem_c,
)
from torswide.quiverrep import euler_form, hom_dim, is_indecomposable, is_isomorphic, kronecker_quiver
from torswide.universe import kron_pre

from oracles import brute_hom_count


@pytest.fixture(scope="module")
def theorem_c(kron6):
    return verify_theorem_c(universe=kron6)


def test_symbols_parse_and_label():
    for text in ("pre(3)", "inj(0)", "reg(2,4)", "reg(inf,1)", "pruefer(1)", "adic(inf)", "G"):
        assert KronSymbol.parse(text).label() == text
    assert KronSymbol.parse("Reg(oo, 2)") == Reg("inf", 2)
    for bad in ("pre(-1)", "reg(1,0)", "tube(1)", "pre"):
        with pytest.raises(InvalidInput):
            KronSymbol.parse(bad)


def test_realize_dims():
    assert realize(Pre(2)).dim == (2, 3)
    assert realize(Inj(2)).dim == (3, 2)
    assert realize(Reg(0, 3)).dim == (3, 3)
    for s in ("pruefer(1)", "adic(0)", "G"):
        with pytest.raises(SymbolicOnly):
            realize(KronSymbol.parse(s))


def test_symbol_of_roundtrip(kron6):
    for k in range(len(kron6)):
        assert is_isomorphic(realize(symbol_of(kron6, k)), kron6.objects[k])


@pytest.mark.parametrize("prime,values", [(2, [0]), (2, [0, 1]), (3, [2])])
def test_ringel_brick_end_by_enumeration(prime, values):
    b = ringel_brick(values, prime)
    assert brute_hom_count(b, b) == prime


def test_ringel_brick_structure():
    q = kronecker_quiver()
    for vals in ([], [3], [0, 4], [0, 1, 2, 3]):
        b = ringel_brick(vals)
        assert b.dim == (len(vals), len(vals) + 1)
        assert is_indecomposable(b) and hom_dim(b, b) == 1
        assert is_isomorphic(b, kron_pre(q, len(vals)))
    with pytest.raises(InvalidInput):
        ringel_brick([1, 1])
    with pytest.raises(InvalidInput):
        ringel_brick([5])


@given(st.sets(st.integers(0, 4), max_size=4), st.data())
def test_ringel_short_exact(values, data):
    sub = data.draw(st.sets(st.sampled_from(sorted(values)) if values else st.nothing()))
    res = ringel_ses_check(sorted(values), sorted(sub))
    assert res["ok"], res
    assert res["cokernel_dim"] == [len(values) - len(sub)] * 2


def test_ringel_hom_to_quasisimples():
    # ext from a preprojective to a regular module is zero, so hom is the Euler form value
    q = kronecker_quiver()
    for vals in ([], [0, 2], [1, 2, 3, 4]):
        n = len(vals)
        homs = hom_to_quasisimples(vals)
        assert sorted(homs) == ["0", "1", "2", "3", "4", "inf"]
        assert set(homs.values()) == {euler_form(q, (n, n + 1), (1, 1))} == {1}


def test_ringel_suite():
    data = ringel_suite(4, 5)
    assert data["ok"] and not data["failures"]
    assert len(data["checks"]) == sum(1 for r in range(5) for _ in itertools.combinations(range(5), r))
    assert data["disjoint_hom_dims"] == [1]


def test_catalog():
    cat = cosilting_catalog(5, 3)
    # 8 finite, 2^6 - 1 tube sets, one split pair
    assert len(cat) == 8 + 63 + 1
    assert [e for e in cat if not e["widely_generated"]] == [
        {"descriptor": "gen(q)", "widely_generated": False, "wide_generator": None, "alpha": "0"}]
    with pytest.raises(InvalidInput):
        TubesPlusQ([])
    with pytest.raises(InvalidInput):
        FiniteModule(Reg(0, 1))


def test_membership_examples():
    assert membership(TubesPlusQ({0}), Reg(0, 1)) == "torsion"
    assert membership(TubesPlusQ({0}), Reg(1, 1)) == "torsionfree"
    for n in range(4):
        assert membership(SplitPreinjective(), Pre(n)) == "torsionfree"
        assert membership(SplitPreinjective(), Inj(n)) == "torsion"
    assert membership(FiniteModule(Pre(0)), Reg(2, 1)) == "neither"
    with pytest.raises(SymbolicOnly):
        membership(SplitPreinjective(), KronSymbol.parse("G"))


def test_membership_crosscheck(kron6):
    ds = [FiniteModule(Pre(n)) for n in range(4)] + [FiniteModule(Inj(n)) for n in range(4)]
    ds += [TubesPlusQ({0}), TubesPlusQ({"inf", 3}), TubesPlusQ(range(5)), SplitPreinjective()]
    for d in ds:
        res = membership_crosscheck(d, kron6)
        assert res["ok"], res
    assert len(generators_in(TubesPlusQ({1}), kron6)) == 7 + 6


def test_table_rows(theorem_c):
    assert len(theorem_c_rows()) == 4 + 7
    assert theorem_c["ok"]
    assert all(r["status"] == "pass" for r in theorem_c["rows"])
    assert all(r["failed"] == 0 for r in theorem_c["rows"])
    assert theorem_c["membership"]["failed"] == []


def test_preinjective_quotients(kron6, theorem_c):
    q = kron6.quiver
    for n in range(6):
        # hom - ext = Euler form and ext(Inj(n+1), Inj(n)) = 0, so hom is the form value
        assert euler_form(q, (n + 2, n + 1), (n + 1, n)) == 2
        res = preinjective_quotient_check(n, kron6)
        assert res["ok"] and res["hom_dim"] == 2, res
    assert [c["n"] for c in theorem_c["preinjective_quotients"]] == list(range(6))
