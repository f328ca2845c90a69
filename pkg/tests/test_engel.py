import itertools
import time

import pytest

from nildom import engel
from nildom.engel import GroupAxiomError, build_group, two_engel_report


def test_build_examples():
    assert build_group("symmetric 3").order == 6
    H = build_group("heisenberg 3")
    assert H.order == 27 and H.nilpotency_class() == 2
    assert build_group("quaternion8").order == 8
    assert build_group("D6").order == 12
    assert build_group("abelian 2,4").order == 8
    assert build_group("C5").is_abelian()


def test_report_examples():
    assert all(two_engel_report(build_group("heisenberg 3")).values)
    r = two_engel_report(build_group("S3"))
    assert not any(r.values) and r.uniform
    assert all(two_engel_report(build_group("cyclic 5")).values)


def test_s3_witness():
    G = engel.symmetric(3)
    idx = {p: i for i, p in enumerate(itertools.permutations(range(3)))}
    t, r = idx[(1, 0, 2)], idx[(1, 2, 0)]
    # [t,r] lies in A3 with r, so the law fails only with the transposition last
    assert G.comm(G.comm(t, r), r) == G.identity
    assert G.comm(G.comm(r, t), t) != G.identity


def test_corpus_uniform_and_fast():
    t = time.time()
    groups = engel.corpus()
    reports = [two_engel_report(G) for G in groups]
    assert all(r.uniform for r in reports)
    assert time.time() - t < 60
    labels = {G.label for G in groups}
    assert {"S3", "S4", "Q8", "Heis(2)", "Heis(3)", "Heis(5)"} <= labels
    assert {f"D{n}" for n in range(4, 13)} <= labels


def test_two_engel_matches_class():
    # a group of class <= 2 is 2-Engel; the nonabelian dihedral groups D_n with n not a power of 2 are not
    for G in engel.corpus():
        c = G.nilpotency_class()
        if c is not None and c <= 2:
            assert all(two_engel_report(G).values)


def test_abelian_enumeration():
    # numbers of abelian groups of order n for n <= 16
    counts = [len(engel.abelian_invariants_of_order(n)) for n in range(1, 17)]
    assert counts == [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]
    assert len(engel.all_abelian(16)) == sum(counts)


def test_axiom_failures_reported(tmp_path):
    with pytest.raises(GroupAxiomError) as e:
        engel.CayleyGroup(((0, 1), (1, 1)), ("a", "b"))
    assert e.value.axiom == "inverses"
    with pytest.raises(GroupAxiomError) as e:
        engel.CayleyGroup(((1, 1), (1, 1)), ("a", "b"))
    assert e.value.axiom == "identity"
    # a loop that is not associative: order 5 Latin square with identity
    table = ((0, 1, 2, 3, 4), (1, 0, 3, 4, 2), (2, 4, 0, 1, 3), (3, 2, 4, 0, 1), (4, 3, 1, 2, 0))
    with pytest.raises(GroupAxiomError) as e:
        engel.CayleyGroup(table, tuple("abcde"))
    assert e.value.axiom == "associativity"
    with pytest.raises(GroupAxiomError) as e:
        engel.CayleyGroup(((0, 2), (1, 0)), ("a", "b"))
    assert e.value.axiom == "closure"


def test_table_file(tmp_path):
    p = tmp_path / "c3.txt"
    p.write_text("3\n0 1 2\n1 2 0\n2 0 1\n")
    G = build_group(str(p))
    assert G.order == 3 and all(two_engel_report(G).values)
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n0 1\n1\n")
    with pytest.raises(GroupAxiomError):
        build_group(str(bad))


def test_limits():
    for desc in ("S6", "D13", "heisenberg 7"):
        with pytest.raises(ValueError):
            build_group(desc)


def test_power_law_periodic():
    # condition (ii) over 1..exponent agrees with a wider range
    G = engel.quaternion8()
    e = G.exponent
    assert all(engel._power_law(G, k) == engel._power_law(G, k + e) for k in range(1, e + 1))
