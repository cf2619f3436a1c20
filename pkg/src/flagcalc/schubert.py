"""Rational cohomology of G/B in the Schubert basis.

Multiplication by a degree-2 class x_lambda uses the Chevalley-Monk rule

    x_lambda * s_w = sum over beta > 0 with l(w s_beta) = l(w) + 1 of
                     <lambda, beta^vee> s_{w s_beta}

which suffices because H*(G/B; Q) is generated in degree 2.  Classes of
G/P are handled upstairs through the injective pullback.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .parabolic import ParabolicModel, chi_geq, tally
from .rootsys import RootSystem, WEYL_ORDER, pairing, reflect

__all__ = [
    "WeylGroupTooLarge",
    "WeylGroup",
    "CohomologyClass",
    "SchubertRing",
    "ChernData",
    "weyl_group_order",
    "weyl_group",
    "monk_multiply",
    "evaluate_polynomial",
    "chern_classes",
    "tally_bound_report",
]

MAX_WEYL = 10**6


class WeylGroupTooLarge(ValueError):
    pass


def weyl_group_order(system: RootSystem) -> int:
    total = 1
    for fam, r in system.type.factors:
        if fam == "A":
            total *= math.factorial(r + 1)
        elif fam in "BC":
            total *= 2**r * math.factorial(r)
        elif fam == "D":
            total *= 2 ** (r - 1) * math.factorial(r)
        else:
            total *= WEYL_ORDER[fam][r]
    return total


class WeylGroup:
    """The Weyl group as permutations of the root list.

    Elements are enumerated breadth first by right multiplication with
    simple reflections, so ``elements[0]`` is the identity and lengths are
    nondecreasing along the list.
    """

    def __init__(self, system: RootSystem, max_size: int = MAX_WEYL):
        expected = weyl_group_order(system)
        if expected > max_size:
            raise WeylGroupTooLarge(f"|W| = {expected} exceeds the guard {max_size}")
        self.system = system
        roots = system.roots
        idx = system.index
        self.reflections = {}
        for b in system.positive:
            self.reflections[idx[b]] = tuple(idx[reflect(system, r, b)] for r in roots)
        self.simple_reflections = [self.reflections[idx[s]] for s in system.simple]
        ident = tuple(range(len(roots)))
        self.elements = [ident]
        self.index = {ident: 0}
        self.parent = [None]  # (previous element, simple index) for reduced words
        frontier = [0]
        while frontier:
            nxt = []
            for w in frontier:
                perm = self.elements[w]
                for i, s in enumerate(self.simple_reflections):
                    v = tuple(perm[k] for k in s)
                    if v not in self.index:
                        self.index[v] = len(self.elements)
                        self.elements.append(v)
                        self.parent.append((w, i))
                        nxt.append(self.index[v])
            frontier = nxt
        if len(self.elements) != expected:
            raise RuntimeError("Weyl group enumeration is incomplete")
        positive = [idx[b] for b in system.positive]
        self._positive = positive
        self._is_pos = [sum(r) > 0 for r in roots]
        self.length = [sum(1 for b in positive if not self._is_pos[p[b]]) for p in self.elements]
        self._covers: dict[int, list] = {}

    def __len__(self):
        return len(self.elements)

    @property
    def longest(self) -> int:
        return max(range(len(self)), key=self.length.__getitem__)

    def word(self, w: int) -> tuple:
        """Reduced word (1-based simple indices) with w = s_{i1} ... s_{ik}."""
        out = []
        while self.parent[w] is not None:
            w, i = self.parent[w]
            out.append(i + 1)
        return tuple(reversed(out))

    def label(self, w: int) -> str:
        word = self.word(w)
        return "e" if not word else "".join(f"s{i}" for i in word)

    def multiply(self, u: int, v: int) -> int:
        pu, pv = self.elements[u], self.elements[v]
        return self.index[tuple(pu[k] for k in pv)]

    def act(self, w: int, root) -> tuple:
        idx = self.system.index
        return self.system.roots[self.elements[w][idx[tuple(root)]]]

    def covers(self, w: int) -> list:
        """(positive root index, w s_beta) with l(w s_beta) = l(w) + 1."""
        if w not in self._covers:
            perm = self.elements[w]
            lw = self.length[w]
            out = []
            for b in self._positive:
                if not self._is_pos[perm[b]]:
                    continue
                s = self.reflections[b]
                v = self.index[tuple(perm[k] for k in s)]
                if self.length[v] == lw + 1:
                    out.append((b, v))
            self._covers[w] = out
        return self._covers[w]

    def is_minimal_coset_rep(self, w: int, crossed) -> bool:
        """w is shortest in w W_P, W_P generated by the uncrossed reflections."""
        idx = self.system.index
        perm = self.elements[w]
        for i, s in enumerate(self.system.simple):
            if i not in crossed and not self._is_pos[perm[idx[s]]]:
                return False
        return True


def weyl_group(system: RootSystem, max_size: int = MAX_WEYL) -> WeylGroup:
    return WeylGroup(system, max_size)


@dataclass(frozen=True)
class CohomologyClass:
    """Rational combination of Schubert classes, all of length ``degree``."""

    degree: int
    coeffs: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {w: Fraction(c) for w, c in self.coeffs.items() if c}
        object.__setattr__(self, "coeffs", clean)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add classes of different degree")
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return CohomologyClass(self.degree, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "CohomologyClass":
        c = Fraction(c)
        return CohomologyClass(self.degree, {w: c * a for w, a in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))


class SchubertRing:
    """H*(G/B; Q) of a root system with Chevalley-Monk multiplication."""

    def __init__(self, system: RootSystem, max_size: int = MAX_WEYL):
        self.system = system
        self.weyl = WeylGroup(system, max_size)
        self._pairings: dict[tuple, list] = {}

    def one(self) -> CohomologyClass:
        return CohomologyClass(0, {0: 1})

    def zero(self, degree: int = 0) -> CohomologyClass:
        return CohomologyClass(degree, {})

    def _pairing_row(self, lam) -> list:
        key = tuple(Fraction(x) for x in lam)
        if key not in self._pairings:
            roots = self.system.roots
            self._pairings[key] = [
                pairing(self.system, key, r) if sum(r) > 0 else None for r in roots
            ]
        return self._pairings[key]

    def monk(self, lam, c: CohomologyClass) -> CohomologyClass:
        """x_lam * c."""
        row = self._pairing_row(lam)
        out: dict[int, Fraction] = {}
        for w, a in c.coeffs.items():
            for b, v in self.weyl.covers(w):
                p = row[b]
                if p:
                    out[v] = out.get(v, 0) + a * p
        return CohomologyClass(c.degree + 1, out)

    def monomial(self, weights: Sequence, c: CohomologyClass | None = None) -> CohomologyClass:
        c = self.one() if c is None else c
        for lam in weights:
            c = self.monk(lam, c)
        return c

    def evaluate(self, terms: Iterable) -> CohomologyClass:
        """Evaluate sum of coeff * x_{l1} ... x_{lk}; ``terms`` yields (coeff, weights)."""
        terms = [(Fraction(c), list(ws)) for c, ws in terms]
        degrees = {len(ws) for c, ws in terms if c}
        if len(degrees) > 1:
            raise ValueError(f"inhomogeneous polynomial (degrees {sorted(degrees)})")
        deg = degrees.pop() if degrees else 0
        total = self.zero(deg)
        for c, ws in terms:
            if c:
                total = total + self.monomial(ws).scale(c)
        return total

    def elementary_times(self, weights: Sequence, k: int, c: CohomologyClass) -> CohomologyClass:
        """e_k(x_{w1}, ..., x_{wn}) * c."""
        layers = [c] + [self.zero(c.degree + j) for j in range(1, k + 1)]
        for lam in weights:
            for j in range(k, 0, -1):
                layers[j] = layers[j] + self.monk(lam, layers[j - 1])
        return layers[k]

    def total_chern(self, weights: Sequence) -> list[CohomologyClass]:
        """[c_0, c_1, ..., c_n] of a sum of line bundles with the given weights."""
        n = len(weights)
        layers = [self.one()] + [self.zero(j) for j in range(1, n + 1)]
        for lam in weights:
            for j in range(n, 0, -1):
                layers[j] = layers[j] + self.monk(lam, layers[j - 1])
        return layers

    def describe(self, c: CohomologyClass) -> dict:
        """Schubert expansion keyed by reduced-word labels, in enumeration order."""
        return {self.weyl.label(w): c.coeffs[w] for w in sorted(c.coeffs)}

    def point_class(self, model: ParabolicModel | None = None) -> int:
        """Index of the point class: w_0 for G/B, the longest element of W^P otherwise."""
        W = self.weyl
        if model is None:
            return W.longest
        reps = [w for w in range(len(W)) if W.is_minimal_coset_rep(w, model.crossed)]
        return max(reps, key=W.length.__getitem__)


def monk_multiply(ring: SchubertRing, lam, c: CohomologyClass) -> CohomologyClass:
    return ring.monk(lam, c)


def evaluate_polynomial(ring: SchubertRing, terms: Iterable) -> CohomologyClass:
    """``terms`` is an iterable of (coefficient, [weight, ...]) monomials."""
    return ring.evaluate(terms)


@dataclass(frozen=True)
class ChernData:
    model: str
    classes: tuple  # c_1 .. c_n as CohomologyClass
    h: CohomologyClass | None
    fano_index: int | None
    ratios: tuple | None  # r_k with c_k = r_k h^k, None entries where not proportional
    top_degree: Fraction | None  # h^n on the point class
    ring: SchubertRing = field(repr=False, compare=False)


def _proportional(c: CohomologyClass, base: CohomologyClass):
    if base.is_zero():
        return Fraction(0) if c.is_zero() else None
    w0 = next(iter(base.coeffs))
    r = c.coeffs.get(w0, Fraction(0)) / base.coeffs[w0]
    return r if base.scale(r) == c else None


def chern_classes(model: ParabolicModel, ring: SchubertRing | None = None) -> ChernData:
    """Chern classes of T(G/P), tangent weights being the positive-grade roots."""
    ring = ring or SchubertRing(model.system)
    weights = list(model.positive_grade)
    layers = ring.total_chern(weights)
    classes = tuple(layers[1:])
    h = fano = ratios = top = None
    c1 = classes[0] if classes else ring.zero(1)
    ints = [c for c in c1.coeffs.values()]
    if ints and all(c.denominator == 1 for c in ints):
        g = math.gcd(*[int(c) for c in ints])
        h = c1.scale(Fraction(1, g))
        if len(model.crossed) == 1:
            fano = g
            powers = [ring.one()]
            for _ in classes:
                powers.append(ring.monk(chi_geq(model, 1), powers[-1]).scale(Fraction(1, g)))
            ratios = tuple(_proportional(c, powers[k + 1]) for k, c in enumerate(classes))
            n = len(classes)
            top = powers[n].coeffs.get(ring.point_class(model), Fraction(0))
    return ChernData(str(model), classes, h, fano, ratios, top, ring)


def tally_bound_report(model: ParabolicModel) -> dict:
    """Per-factor tallies, their sum and the nilpotency exponents N_i + 1."""
    tallies = tally(model)
    total = sum(tallies)
    return {
        "tallies": tallies,
        "sum": total,
        "exponents": [t + 1 for t in tallies],
        "numerical_dimension_bound": total,
        "statement": (
            f"each generator alpha_i satisfies alpha_i^(N_i+1) = 0 with N = {tallies}; "
            f"numerical and Kodaira dimension of a minimal geometry are at most {total}"
        ),
    }
