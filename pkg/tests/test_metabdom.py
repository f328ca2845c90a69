import random

import pytest

from nildom import intlat, metabdom
from nildom.metabdom import (
    AuditError,
    NotDerivedError,
    Step,
    audit,
    derived_basis,
    derived_lattice,
    full_derived,
    saturate_dominion,
)

GENS = ["[y,x]", "[y,x,y]", "[y,x,x]"]


@pytest.mark.parametrize("cls,dim", [(4, 6), (5, 10), (6, 15)])
def test_derived_dimension(cls, dim):
    assert len(derived_basis(cls)) == dim == cls * (cls - 1) // 2


@pytest.mark.parametrize("cls", [4, 5, 6])
def test_three_commutators_fill_derived_subgroup(cls):
    H = derived_lattice(cls, GENS)
    res = saturate_dominion(H)
    assert res.D.is_full()
    assert res.normal and res.certified_equal
    assert res.iterations <= cls
    assert audit(H, res.steps).lattice == res.D.lattice
    assert res.index() == intlat.INFINITE


def test_single_commutator_is_stable():
    H = derived_lattice(4, ["[y,x]"])
    res = saturate_dominion(H)
    assert res.D.lattice == H.lattice
    assert res.steps == ()
    assert not res.normal


def test_full_lattice_is_fixed():
    H = full_derived(5)
    assert saturate_dominion(H).D.lattice == H.lattice


def test_operator_properties():
    rng = random.Random(8)
    pool = [str(b) for b in derived_basis(5)] + ["[y,x]^2", "[y,x,y]^3 [y,x,x]", "[y^2,x]"]
    for _ in range(15):
        gens = rng.sample(pool, rng.randint(1, 3))
        more = gens + rng.sample(pool, 1)
        H, K = derived_lattice(5, gens), derived_lattice(5, more)
        DH, DK = saturate_dominion(H).D, saturate_dominion(K).D
        assert DH.lattice.contains_lattice(H.lattice)
        assert saturate_dominion(DH).D.lattice == DH.lattice
        assert DK.lattice.contains_lattice(DH.lattice)


def test_every_step_checks_out():
    H = derived_lattice(5, GENS)
    res = saturate_dominion(H)
    D = H.lattice
    for s in res.steps:
        assert all(h in D for h in s.hypotheses)
        M = metabdom.ad_matrix if s.rule == "comm" else metabdom.conj_matrix
        assert s.added == metabdom.apply(M(5, s.b), metabdom.apply(M(5, s.a), s.witness))
        D = D + intlat.hnf([s.added], D.ambient_dim)


def test_audit_rejects_forged_step():
    H = derived_lattice(4, ["[y,x]"])
    u = H.lattice.basis[0]
    fake = Step("comm", "x", "y", u, (u, u, u), (0, 0, 0, 0, 0, 1))
    with pytest.raises(AuditError):
        audit(H, [fake])


def test_conjugation_matrix_is_action():
    # T_x followed by T_x^-1 is the identity
    Tx, Ti = metabdom.conj_matrix(5, "x"), metabdom.conj_matrix(5, "x^-1")
    for i in range(10):
        e = tuple(int(j == i) for j in range(10))
        assert metabdom.apply(Ti, metabdom.apply(Tx, e)) == e


def test_rules_separately():
    H = derived_lattice(4, GENS)
    only_comm = saturate_dominion(H, rules=["comm"])
    only_conj = saturate_dominion(H, rules=["conj"])
    assert only_comm.D.is_full() and only_conj.D.is_full()
    with pytest.raises(ValueError):
        saturate_dominion(H, rules=["bogus"])


def test_rejects_non_derived():
    with pytest.raises(NotDerivedError):
        derived_lattice(4, ["x"])
