"""The twelve acceptance criteria, one test each.

Every test prints a single ``[PASS]`` or ``[FAIL]`` line.  Run with
``pytest tests/test_acceptance.py -v`` or ``python3 -m tests.test_acceptance``.
"""

import time
from collections import Counter
from fractions import Fraction as F
from pathlib import Path

import pytest

from flagcalc.chevalley import compute_constants, verify
from flagcalc.cli import parse
from flagcalc.cominuscule import associated_cominuscule, cominuscule_dimension, is_cominuscule
from flagcalc.parabolic import chi_geq, grade, make_model, tally
from flagcalc.relations import chern_relations, eliminate, read_relations, verify_relations
from flagcalc.rootsys import build, pairing
from flagcalc.schubert import SchubertRing, chern_classes, tally_bound_report
from flagcalc.structeq import check_flat_consistency, torsion_coefficient

from .conftest import BATTERY_TYPES, all_models, crossings
from .oracles import cominuscule_table, projective_space_ratios, quadric_ratios

RELATIONS = Path(__file__).parent / "data" / "c3_relations.txt"


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        assert ok, detail

    return emit


def test_criterion_01_chevalley(verdict):
    types = [("A", r) for r in range(1, 7)] + [("B", r) for r in range(2, 7)]
    types += [("C", r) for r in range(2, 7)] + [("D", r) for r in range(4, 7)]
    types += [("G", 2), ("F", 4), ("E", 6)]
    start = time.perf_counter()
    bad = {f"{f}{r}": len(v) for f, r in types if (v := verify(compute_constants(build([(f, r)]))))}
    elapsed = time.perf_counter() - start
    verdict(1, not bad and elapsed < 120,
            f"Chevalley axioms on {len(types)} systems, violations {bad or 0}, {elapsed:.1f}s")


def test_criterion_02_rank_two_tallies(verdict):
    expected = {"A2[1]": 2, "A2[1,2]": 1, "B2[1]": 3, "B2[2]": 1, "B2[1,2]": 1,
                "G2[1]": 1, "G2[2]": 1, "G2[1,2]": 1}
    got = {spec: tally(parse(spec))[0] for spec in expected}
    hits = sum(got[s] == v for s, v in expected.items())
    verdict(2, hits == 8, f"rank-2 tallies {hits}/8 {list(got.values())}")


def test_criterion_03_c3_tally(verdict):
    rep = tally_bound_report(parse("C3[2]"))
    ok = rep["tallies"] == [3] and rep["numerical_dimension_bound"] == 3
    verdict(3, ok, f"C3[2] tally {rep['tallies']}, bound {rep['numerical_dimension_bound']}")


def test_criterion_04_associated_cominuscule(verdict):
    expected = {"G2[1]": ("A1[1]", 1), "G2[2]": ("A2[1]", 2), "C3[2]": ("C2[2]", 3)}
    got = {}
    for spec in expected:
        rep = associated_cominuscule(parse(spec))
        got[spec] = (rep.spec, rep.dimension)
    verdict(4, got == expected, f"associated cominuscule {got}")


def test_criterion_05_cominuscule_dimensions(verdict):
    table = {(f, r, k): d for f, r, k, d in cominuscule_table(6)}
    found = {}
    types = [("A", r) for r in range(1, 7)] + [("B", r) for r in range(2, 7)]
    types += [("C", r) for r in range(3, 7)] + [("D", r) for r in range(4, 7)]
    types += [("E", 6), ("F", 4), ("G", 2)]
    for f, r in types:
        for k in range(1, r + 1):
            if is_cominuscule(make_model([(f, r)], [[k]])):
                found[(f, r, k)] = cominuscule_dimension(f, r, k)
    found[("C", 2, 2)] = cominuscule_dimension("C", 2, 2)
    mismatches = {key: (found.get(key), d) for key, d in table.items() if found.get(key) != d}
    extra = set(found) - set(table)
    verdict(5, not mismatches and not extra,
            f"{len(table)} cominuscule models, mismatches {mismatches or 0}, unlisted {sorted(extra) or 0}")


def test_criterion_06_perpendicularity(verdict):
    types = [("A", r) for r in range(1, 5)] + [("B", r) for r in range(2, 5)]
    types += [("C", r) for r in range(3, 5)] + [("D", 4), ("F", 4), ("G", 2)]
    models = list(all_models(types))
    violations = 0
    for m in models:
        system = m.system
        chi1 = chi_geq(m, 1)
        violations += sum((pairing(system, chi1, b) == 0) != (grade(m, b) == 0) for b in system.roots)
        for j in range(1, m.depth + 1):
            chi = chi_geq(m, j + 1)
            if any(chi):
                violations += sum(pairing(system, chi, b) <= 0 for b in system.roots if grade(m, b) >= j)
    verdict(6, violations == 0, f"perpendicularity on {len(models)} models, {violations} violations")


def test_criterion_07_schubert_oracles(verdict):
    cases = {"A2[1]": projective_space_ratios(2), "A3[1]": projective_space_ratios(3),
             "C2[2]": quadric_ratios(3)}
    got = {spec: list(chern_classes(parse(spec)).ratios) for spec in cases}
    top = chern_classes(parse("C2[2]")).top_degree
    ok = got == cases and cases["A2[1]"] == [3, 3] and cases["A3[1]"] == [4, 6, 4]
    ok = ok and cases["C2[2]"] == [3, 4, 2] and top == 2
    shown = {s: [str(x) for x in v] for s, v in got.items()}
    verdict(7, ok, f"Chern ratios {shown}, Q3 h^3 = {top}")


def test_criterion_08_elimination(verdict):
    q3 = chern_relations(chern_classes(parse("C2[2]")))
    res = eliminate(read_relations(RELATIONS), q3, 3)
    ok = list(res.t_values) == [F(3, 5)] and res.vanishing_classes == ("c3",)
    ok = ok and res.vanishing_degree == 3 and res.consistent
    verdict(8, ok, f"t = {list(map(str, res.t_values))}, delta^{res.vanishing_degree} = 0, "
                   f"vanishing {list(res.vanishing_classes)}")


def test_criterion_09_relation_report(verdict):
    model = parse("C3[2]")
    rels = read_relations(RELATIONS)
    first = verify_relations(model, rels, scale=5)
    second = verify_relations(model, rels, scale=5)
    witnessed = all(v.holds or v.witness for v in first.verdicts)
    ok = len(first.verdicts) == 8 and first == second and witnessed
    holds = "".join("y" if v.holds else "n" for v in first.verdicts)
    verdict(9, ok, f"C3[2] eps = c1/5, {len(first.verdicts)} verdicts [{holds}], deterministic")


def test_criterion_10_flat_consistency(verdict):
    start = time.perf_counter()
    failed = [f"{f}{r}" for f, r in BATTERY_TYPES
              if not check_flat_consistency(parse(f"{f}{r}[1]")).passed]
    elapsed = time.perf_counter() - start
    verdict(10, not failed and elapsed < 60,
            f"d^2 = 0 on {len(BATTERY_TYPES)} types, failures {failed or 0}, {elapsed:.1f}s")


def test_criterion_11_torsion_full_rank(verdict):
    violations, checked = 0, 0
    for m in all_models(BATTERY_TYPES):
        for r in m.negative_grade:
            g = -grade(m, r)
            c = torsion_coefficient(m, r)
            checked += 1
            if g == m.depth:
                violations += c != 0
            else:
                violations += c == 0
    verdict(11, violations == 0, f"torsion coefficients on {checked} roots, {violations} violations")


def test_criterion_12_poincare(verdict):
    problems = []
    for f, r in [("B", 2), ("G", 2), ("C", 3)]:
        ring = SchubertRing(build([(f, r)]))
        W = ring.weyl
        counts = Counter(W.length)
        dist = [counts[k] for k in range(max(counts) + 1)]
        if dist != dist[::-1]:
            problems.append(f"{f}{r} asymmetric")
        for (k,) in (c for c in crossings(r) if len(c) == 1):
            m = make_model([(f, r)], [[k]])
            reps = sum(W.is_minimal_coset_rep(w, m.crossed) for w in range(len(W)))
            levi = _levi_order(W, m)
            if reps * levi != len(W):
                problems.append(f"{m}: {reps} * {levi} != {len(W)}")
    verdict(12, not problems, f"Poincare symmetry and |W^P| = |W|/|W_P|, problems {problems or 0}")


def _levi_order(W, m):
    gens = [v for v in range(len(W)) if W.length[v] == 1 and W.word(v)[0] - 1 not in m.crossed]
    seen, frontier = {0}, [0]
    while frontier:
        frontier = [v for w in frontier for s in gens if (v := W.multiply(w, s)) not in seen]
        seen.update(frontier)
    return len(seen)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
