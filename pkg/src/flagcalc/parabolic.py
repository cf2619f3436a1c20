"""Parabolic models: a root system with crossed simple nodes.

The grading element is never materialized; the grade of a root is the sum
of its coefficients over the crossed nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .rootsys import RootSystem, RootSystemType, _check_rank, build, inner, pairing

__all__ = [
    "ModelError",
    "ParabolicModel",
    "QuotientModule",
    "make_model",
    "grade",
    "chi_geq",
    "root_sum",
    "perp_profile",
    "is_character",
    "is_dominant",
    "is_saturated",
    "is_saturated_ideal",
    "saturation_witness",
    "g0_components",
    "tally",
    "quotient_modules",
    "dominant_span",
    "chi_decompose",
]


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class ParabolicModel:
    """Root system plus crossed simple nodes (0-based global indices)."""

    system: RootSystem
    crossed: frozenset

    def __post_init__(self):
        crossed = frozenset(int(c) for c in self.crossed)
        bad = [c for c in crossed if not 0 <= c < self.system.rank]
        if bad:
            raise ModelError(f"crossed nodes {sorted(bad)} out of range")
        object.__setattr__(self, "crossed", crossed)

    @cached_property
    def grades(self) -> tuple:
        cr = sorted(self.crossed)
        return tuple(sum(r[c] for c in cr) for r in self.system.roots)

    def grade_of(self, root) -> int:
        return sum(root[c] for c in self.crossed)

    @cached_property
    def depth(self) -> int:
        return max(self.grades)

    @cached_property
    def levels(self) -> dict:
        out: dict[int, list] = {}
        for r, g in zip(self.system.roots, self.grades):
            out.setdefault(g, []).append(r)
        return dict(sorted(out.items()))

    @property
    def compact(self) -> list:
        return self.levels.get(0, [])

    @cached_property
    def positive_grade(self) -> list:
        return [r for r, g in zip(self.system.roots, self.grades) if g > 0]

    @cached_property
    def negative_grade(self) -> list:
        return [r for r, g in zip(self.system.roots, self.grades) if g < 0]

    @property
    def nontrivial(self) -> bool:
        return bool(self.crossed)

    def crossed_in_factor(self, k: int) -> list:
        lo, hi = self.system.blocks[k]
        return sorted(c - lo for c in self.crossed if lo <= c < hi)

    def factor_depth(self, k: int) -> int:
        lo, hi = self.system.blocks[k]
        gs = [g for r, g in zip(self.system.roots, self.grades) if any(r[lo:hi])]
        return max(gs)

    def __str__(self) -> str:
        parts = []
        for k, (fam, rank) in enumerate(self.system.type.factors):
            nodes = ",".join(str(c + 1) for c in self.crossed_in_factor(k))
            parts.append(f"{fam}{rank}[{nodes}]")
        return "x".join(parts)


def make_model(factors: Iterable, crossed_per_factor: Sequence[Iterable[int]]) -> ParabolicModel:
    """Model from (family, rank) pairs and 1-based crossed nodes per factor."""
    factors = [tuple(f) for f in factors]
    crossed_per_factor = [list(c) for c in crossed_per_factor]
    if len(factors) != len(crossed_per_factor):
        raise ModelError("one crossed-node list per factor is required")
    system_factors = []
    crossed = set()
    off = 0
    for (fam, rank), nodes in zip(factors, crossed_per_factor):
        fam = fam.upper()
        _check_rank(fam, rank)
        for c in nodes:
            if not 1 <= c <= rank:
                raise ModelError(f"node {c} out of range for {fam}{rank}")
        if len(set(nodes)) != len(nodes):
            raise ModelError(f"duplicate crossed node in {fam}{rank}")
        if fam == "D" and rank == 3:
            # D3 fork node 1 is the middle node of A3
            nodes = [{1: 2, 2: 1, 3: 3}[c] for c in nodes]
            fam = "A"
        system_factors.append((fam, rank))
        crossed.update(off + c - 1 for c in nodes)
        off += rank
    system = build(RootSystemType(tuple(system_factors)))
    return ParabolicModel(system, frozenset(crossed))


def grade(model: ParabolicModel, root) -> int:
    return model.grade_of(tuple(root))


def root_sum(roots: Iterable, rank: int) -> tuple:
    total = [0] * rank
    for r in roots:
        for i, x in enumerate(r):
            total[i] += x
    return tuple(Fraction(x) for x in total)


def chi_geq(model: ParabolicModel, k: int) -> tuple:
    """Sum of all roots of grade at least ``k``."""
    if k < 1:
        raise ModelError("chi_geq needs k >= 1")
    roots = [r for r, g in zip(model.system.roots, model.grades) if g >= k]
    return root_sum(roots, model.system.rank)


def perp_profile(model: ParabolicModel, k: int) -> list:
    chi = chi_geq(model, k)
    if not any(chi):
        raise ModelError(f"chi_geq({k}) is zero")
    return [r for r in model.system.roots if inner(model.system.form, chi, r) == 0]


def is_character(model: ParabolicModel, chi) -> tuple | None:
    """None if ``chi`` is perpendicular to every compact root, else a violator."""
    for i in range(model.system.rank):
        if i in model.crossed:
            continue
        simple = model.system.simple[i]
        if inner(model.system.form, chi, simple) != 0:
            return simple
    return None


def is_dominant(model: ParabolicModel, chi) -> bool:
    system = model.system
    return all(pairing(system, chi, a) >= 0 for a in system.simple)


def saturation_witness(model: ParabolicModel, gamma: Iterable, side: str = "negative"):
    """(lambda, eps) with lambda in gamma, grade(eps) >= 0, lambda+eps outside gamma.

    ``side="negative"`` works inside the negative-grade roots (module side);
    ``side="positive"`` inside the positive-grade roots (ideal side).
    """
    gamma = {tuple(r) for r in gamma}
    sign = -1 if side == "negative" else 1
    for lam in gamma:
        if sign * model.grade_of(lam) <= 0:
            raise ModelError(f"{lam} is not a {side}-grade root")
    system = model.system
    idx = system.index
    nonneg = [i for i, g in enumerate(model.grades) if g >= 0]
    for lam in sorted(gamma):
        li = idx[lam]
        row = system.add_table[li]
        for e in nonneg:
            s = row[e]
            if s < 0:
                continue
            if sign * model.grades[s] > 0 and system.roots[s] not in gamma:
                return lam, system.roots[e]
    return None


def is_saturated(model: ParabolicModel, gamma: Iterable) -> bool:
    """Saturation of a set of negative-grade roots (P-submodule of g/p)."""
    return saturation_witness(model, gamma, "negative") is None


def is_saturated_ideal(model: ParabolicModel, gamma: Iterable) -> bool:
    """Saturation of a set of positive-grade roots (P-submodule of g_+)."""
    return saturation_witness(model, gamma, "positive") is None


def g0_components(model: ParabolicModel) -> list[list]:
    """Connected components of the negative-grade roots under compact-root steps."""
    system = model.system
    if not model.nontrivial:
        raise ModelError("model has no crossed nodes")
    idx = system.index
    neg = [idx[r] for r in model.negative_grade]
    parent = {i: i for i in neg}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    compact = [i for i, g in enumerate(model.grades) if g == 0]
    for i in neg:
        for e in compact:
            j = system.add_table[i][e]
            if j >= 0 and j in parent:
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: dict[int, list] = {}
    for i in sorted(neg):
        groups.setdefault(find(i), []).append(system.roots[i])
    return sorted(groups.values(), key=lambda g: (system.index[g[0]]))


def tally(model: ParabolicModel) -> list[int]:
    """Per-factor minimum size of a G0-submodule of g/p (factors without crosses skipped)."""
    comps = g0_components(model)
    out = []
    for k in range(len(model.system.type.factors)):
        sizes = [len(c) for c in comps if model.system.factor_of(c[0]) == k]
        if sizes:
            out.append(min(sizes))
    return out


@dataclass(frozen=True)
class QuotientModule:
    node: int  # 0-based global index of the crossed simple root
    gamma: tuple  # saturated set in positive-grade roots
    roots: tuple  # weights of the quotient
    dim: int
    character: tuple


def quotient_modules(model: ParabolicModel) -> list[QuotientModule]:
    """For each crossed node j, the quotient of g_+ by the span of Gamma_j."""
    out = []
    for j in sorted(model.crossed):
        others = model.crossed - {j}
        gamma, q = [], []
        for r in model.positive_grade:
            if r[j] >= 2 or any(r[i] > 0 for i in others):
                gamma.append(r)
            elif r[j] == 1:
                q.append(r)
        if not is_saturated_ideal(model, gamma):
            raise ModelError(f"Gamma_{j + 1} is not saturated")
        out.append(
            QuotientModule(
                node=j,
                gamma=tuple(gamma),
                roots=tuple(q),
                dim=len(q),
                character=root_sum(q, model.system.rank),
            )
        )
    return out


def dominant_span(model: ParabolicModel, chi) -> dict[int, Fraction]:
    """Coefficients a_j >= 0 with chi = sum a_j chi_j over the quotient characters."""
    chi = tuple(Fraction(x) for x in chi)
    bad = is_character(model, chi)
    if bad is not None:
        raise ModelError(f"not a character of P: pairs nontrivially with compact root {bad}")
    if not is_dominant(model, chi):
        raise ModelError("character is not dominant")
    coeffs = {}
    residual = list(chi)
    for qm in quotient_modules(model):
        a = chi[qm.node] / qm.dim
        coeffs[qm.node] = a
        for i, x in enumerate(qm.character):
            residual[i] -= a * x
    if any(residual):
        raise ModelError(f"nonzero residual {tuple(residual)}")
    neg = {j: a for j, a in coeffs.items() if a < 0}
    if neg:
        raise ModelError(f"negative coefficients {neg}")
    return coeffs


def chi_decompose(model: ParabolicModel, chi):
    """Split off multiples of the per-factor sums of P-maximal roots.

    Returns ``(coeffs, residual)``; ``coeffs`` maps factor index to a_j and
    ``residual`` is perpendicular to all compact, maximal and minimal roots.
    """
    from .cominuscule import nilradical_center

    system = model.system
    chi = tuple(Fraction(x) for x in chi)
    bad = is_character(model, chi)
    if bad is not None:
        raise ModelError(f"not a character of P: pairs nontrivially with compact root {bad}")
    center = nilradical_center(model)
    coeffs = {}
    residual = list(chi)
    for k in range(len(system.type.factors)):
        zk = [z for z in center if system.factor_of(z) == k]
        if not zk:
            continue
        chi_max = root_sum(zk, system.rank)
        z = zk[0]
        a = Fraction(inner(system.form, chi, z)) / inner(system.form, chi_max, z)
        coeffs[k] = a
        for i, x in enumerate(chi_max):
            residual[i] -= a * x
    residual = tuple(residual)
    for z in center:
        if inner(system.form, residual, z) != 0:
            raise ModelError(f"residual not perpendicular to maximal root {z}")
    return coeffs, residual
