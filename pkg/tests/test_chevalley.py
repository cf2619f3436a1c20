import pytest
from hypothesis import given, strategies as st

from flagcalc.chevalley import compute_constants, jacobi_mystery, verify
from flagcalc.rootsys import build, pairing, root_string


def test_a1_has_no_entries():
    assert list(compute_constants(build([("A", 1)])).items()) == []


def test_examples():
    a2 = compute_constants(build([("A", 2)]))
    assert abs(a2((1, 0), (0, 1))) == 1
    g2 = compute_constants(build([("G", 2)]))
    assert abs(g2((0, 1), (1, 1))) == 2
    assert jacobi_mystery(a2, (1, 0), (1, 0)) == 0
    assert jacobi_mystery(a2, (1, 0), (0, 1)) == 1
    assert jacobi_mystery(g2, (1, 0), (0, 1)) == 1


@pytest.mark.parametrize("t", [("A", 2), ("G", 2), ("B", 3), ("C", 3), ("D", 4)])
def test_verify_clean(t):
    assert verify(compute_constants(build([t]))) == []


def test_fault_injection_is_reported():
    g2 = compute_constants(build([("G", 2)]))
    bad = g2.with_entry((1, 0), (0, 1), -g2((1, 0), (0, 1)))
    problems = verify(bad)
    assert problems
    kinds = {p.identity for p in problems}
    assert "jacobi" in kinds or "negation" in kinds
    assert all(len(p.roots) >= 2 for p in problems)
    jac = [p for p in problems if p.identity == "jacobi"]
    assert jac and len(jac[0].roots) == 3


def test_deterministic_signs():
    system = build([("F", 4)])
    assert compute_constants(system) == compute_constants(build([("F", 4)]))


def test_extraspecial_pairs_positive():
    system = build([("B", 4)])
    table = compute_constants(system)
    pos = sorted(system.positive, key=system.index.get)
    for g in pos:
        pairs = [(a, b) for a in pos for b in pos
                 if tuple(x + y for x, y in zip(a, b)) == g and system.index[a] < system.index[b]]
        if pairs:
            a, b = min(pairs, key=lambda ab: system.index[ab[0]])
            p, _ = root_string(system, b, a)
            assert table(a, b) == p + 1


@given(st.sampled_from([("A", 3), ("B", 2), ("C", 4), ("G", 2), ("D", 5)]), st.data())
def test_axioms_on_random_pairs(t, data):
    system = build([t])
    table = compute_constants(system)
    a = data.draw(st.sampled_from(system.roots))
    b = data.draw(st.sampled_from(system.roots))
    s = tuple(x + y for x, y in zip(a, b))
    assert table(a, b) == -table(b, a)
    if s in system.index:
        p, _ = root_string(system, b, a)
        assert abs(table(a, b)) == p + 1
        na, nb = tuple(-x for x in a), tuple(-x for x in b)
        assert table(na, nb) == -table(a, b)
    else:
        assert table(a, b) == 0
    if a != b and a != tuple(-x for x in b):
        assert jacobi_mystery(table, a, b) == -pairing(system, b, a)
