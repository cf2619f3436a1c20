"""Center of the nilradical, opposition, associated cominuscule and boosh data."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .parabolic import ModelError, ParabolicModel, make_model
from .rootsys import family_form, reflection_closure

__all__ = [
    "SubsystemReport",
    "BooshData",
    "is_cominuscule",
    "nilradical_center",
    "opposition",
    "associated_cominuscule",
    "difference_description",
    "recognize_type",
    "cominuscule_dimension",
    "boosh_data",
]


def _need_crossing(model):
    if not model.nontrivial:
        raise ModelError("model has no crossed nodes")


def is_cominuscule(model: ParabolicModel) -> bool:
    _need_crossing(model)
    return model.depth == 1


def nilradical_center(model: ParabolicModel) -> list:
    """Positive-grade roots alpha with alpha+beta never a root for beta of positive grade."""
    _need_crossing(model)
    system = model.system
    idx = system.index
    pos = [idx[r] for r in model.positive_grade]
    out = []
    for i in pos:
        row = system.add_table[i]
        if all(row[j] < 0 for j in pos):
            out.append(system.roots[i])
    return out


def opposition(roots) -> set:
    return {tuple(-x for x in r) for r in roots}


def _coordinates(basis: list, vec: tuple) -> tuple:
    """Exact coordinates of ``vec`` in the linearly independent ``basis``."""
    m = len(basis)
    n = len(vec)
    # augmented n x (m+1) system, columns are basis vectors
    rows = [[Fraction(basis[j][i]) for j in range(m)] + [Fraction(vec[i])] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        piv = next((k for k in range(r, n) if rows[k][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for k in range(n):
            if k != r and rows[k][c] != 0:
                f = rows[k][c]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[k][m] != 0 for k in range(r, n)):
        raise ValueError(f"{vec} is not in the span of the basis")
    coords = [Fraction(0)] * m
    for k, c in enumerate(piv_cols):
        coords[c] = rows[k][m]
    return tuple(coords)


def _candidates(rank: int):
    fams = ["A", "C", "B", "D", "E", "F", "G"]
    for fam in fams:
        try:
            family_form(fam, rank)
        except ValueError:
            continue
        if fam == "D" and rank == 3:
            continue
        yield fam


def _cartan(form_rows) -> list:
    n = len(form_rows)
    return [[Fraction(2 * form_rows[i][j], form_rows[i][i]) for j in range(n)] for i in range(n)]


def recognize_type(gram: list[list], crossed_local: set | None = None):
    """Identify a Cartan type from the Gram matrix of a simple basis.

    Returns a list of ``(family, rank, nodes, crossed)`` per connected
    component: ``nodes`` maps the component's basis positions to 1-based
    Bourbaki node labels, ``crossed`` are the Bourbaki labels of crossed
    positions.  Among diagram automorphisms the lexicographically smallest
    crossing is chosen.
    """
    n = len(gram)
    crossed_local = crossed_local or set()
    seen = set()
    comps = []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and gram[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    out = []
    for comp in comps:
        r = len(comp)
        sub = _cartan([[gram[i][j] for j in comp] for i in comp])
        match = None
        for fam in _candidates(r):
            ref = _cartan(family_form(fam, r))
            best = None
            for perm in itertools.permutations(range(r)):
                # perm[a] = Bourbaki node (0-based) of component position a
                if all(sub[a][b] == ref[perm[a]][perm[b]] for a in range(r) for b in range(r)):
                    cr = tuple(sorted(perm[a] + 1 for a in range(r) if comp[a] in crossed_local))
                    if best is None or cr < best[1]:
                        best = (perm, cr)
            if best is not None:
                match = (fam, r, {comp[a]: best[0][a] + 1 for a in range(r)}, best[1])
                break
        if match is None:
            raise ModelError("could not recognize Cartan type")
        out.append(match)
    out.sort(key=lambda m: min(m[2]))
    return out


@dataclass(frozen=True)
class SubsystemReport:
    roots: tuple
    simple_basis: tuple
    ambient_grades: tuple  # ambient grade of each simple basis root
    recognized: tuple  # ((family, rank, crossed Bourbaki nodes), ...)
    spec: str
    dimension: int
    depth: int
    difference_roots: tuple  # alternative description, see difference_description
    descriptions_agree: bool


def difference_description(model: ParabolicModel) -> frozenset:
    """Maximal and minimal roots plus compact roots that are differences of maximal ones."""
    center = nilradical_center(model)
    out = set(center) | opposition(center)
    compact = set(model.compact)
    for a in center:
        for b in center:
            d = tuple(x - y for x, y in zip(a, b))
            if d in compact:
                out.add(d)
    return frozenset(out)


def associated_cominuscule(model: ParabolicModel) -> SubsystemReport:
    """Subsystem generated by Z and -Z, recognized as a crossed Dynkin diagram."""
    _need_crossing(model)
    system = model.system
    center = nilradical_center(model)
    roots = reflection_closure(system, list(center) + list(opposition(center)))
    order = system.index
    roots = sorted(roots, key=lambda r: order[r])
    pos = [r for r in roots if sum(r) > 0]
    pos_set = set(pos)
    simple = [
        a
        for a in pos
        if not any(tuple(x - y for x, y in zip(a, b)) in pos_set for b in pos)
    ]
    gram = [[system.inner(a, b) for b in simple] for a in simple]
    amb = [model.grade_of(a) for a in simple]
    crossed_local = {i for i, g in enumerate(amb) if g > 0}
    rec = recognize_type(gram, crossed_local)
    sub_depth = 0
    dim = 0
    for r in pos:
        coords = _coordinates(simple, r)
        g = sum(coords[i] for i in crossed_local)
        if g.denominator != 1:
            raise ModelError("non-integral subsystem coordinates")
        sub_depth = max(sub_depth, int(g))
        if g > 0:
            dim += 1
    spec = "x".join(f"{fam}{rank}[{','.join(map(str, cr))}]" for fam, rank, _, cr in rec)
    alt = difference_description(model)
    return SubsystemReport(
        roots=tuple(roots),
        simple_basis=tuple(simple),
        ambient_grades=tuple(amb),
        recognized=tuple((fam, rank, cr) for fam, rank, _, cr in rec),
        spec=spec,
        dimension=dim,
        depth=sub_depth,
        difference_roots=tuple(sorted(alt, key=lambda r: order[r])),
        descriptions_agree=alt == frozenset(roots),
    )


def cominuscule_dimension(family: str, rank: int, crossed) -> int:
    """Dimension of an irreducible cominuscule G/P by root counting."""
    crossed = [crossed] if isinstance(crossed, int) else list(crossed)
    model = make_model([(family, rank)], [crossed])
    if not model.nontrivial or not is_cominuscule(model):
        raise ModelError(f"{model} is not cominuscule")
    return len(model.positive_grade)


@dataclass(frozen=True)
class BooshData:
    compact_roots: tuple
    max_roots: tuple
    submaximal: tuple
    p_prime_roots: tuple
    top_grade_roots: tuple
    center_is_top_grade: bool


def boosh_data(model: ParabolicModel) -> BooshData:
    """Root data of p' = g_0 + g_max and of the submaximal module T."""
    center = nilradical_center(model)
    zset = set(center)
    system = model.system
    top = []
    for k in range(len(system.type.factors)):
        if not model.crossed_in_factor(k):
            continue
        d = model.factor_depth(k)
        top += [r for r in model.positive_grade if system.factor_of(r) == k and model.grade_of(r) == d]
    submax = [r for r in model.positive_grade if r not in zset]
    order = system.index
    return BooshData(
        compact_roots=tuple(model.compact),
        max_roots=tuple(center),
        submaximal=tuple(submax),
        p_prime_roots=tuple(sorted(list(model.compact) + center, key=lambda r: order[r])),
        top_grade_roots=tuple(sorted(top, key=lambda r: order[r])),
        center_is_top_grade=set(top) == zset,
    )
