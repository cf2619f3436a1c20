"""Structure equations as exact coefficient tables.

Generators are the 1-forms omega^alpha dual to root vectors and one Cartan
1-form per simple root.  The Cartan 1-form of an arbitrary root is the
linear combination given by its simple-root coefficients.  Wedge products
of generators are kept as ordered label pairs; a table entry
``Term(c, a, b, symbol)`` stands for ``c * symbol * a ^ b``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .chevalley import StructureConstants, compute_constants
from .cominuscule import nilradical_center
from .parabolic import ModelError, ParabolicModel, chi_geq, saturation_witness
from .rootsys import pairing

__all__ = [
    "Label",
    "Term",
    "TermTable",
    "FlatViolation",
    "FlatReport",
    "Constraint",
    "emit_flat",
    "emit",
    "emit_boosh",
    "atiyah_terms",
    "check_flat_consistency",
    "bracket_closure_constraints",
    "graded_constraints",
    "torsion_coefficient",
    "SymbolicTerm",
    "nabla_k_terms",
    "nabla_l_terms",
    "to_latex",
]


@dataclass(frozen=True, order=True)
class Label:
    """``kind`` is "w" (omega^root), "a" (Cartan form of simple root ``key``)
    or "w01" (the (0,1)-part of omega^root)."""

    kind: str
    key: tuple | int

    def __str__(self):
        if self.kind == "a":
            return f"alpha_{self.key + 1}"
        root = ",".join(map(str, self.key))
        return f"omega^({root})" if self.kind == "w" else f"omega01^({root})"


def _w(root) -> Label:
    return Label("w", tuple(root))


def _a(i: int) -> Label:
    return Label("a", i)


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    left: Label
    right: Label
    symbol: str | None = None  # curvature placeholder, None for structure terms

    def swapped(self) -> "Term":
        return Term(-self.coeff, self.right, self.left, self.symbol)


@dataclass
class TermTable:
    model: str
    generators: list
    terms: dict = field(default_factory=dict)  # Label -> list[Term]

    def coefficient(self, gen: Label, a: Label, b: Label, symbol=None) -> Fraction:
        """Coefficient of a^b in d(gen), antisymmetry applied."""
        total = Fraction(0)
        for t in self.terms.get(gen, []):
            if t.symbol != symbol:
                continue
            if (t.left, t.right) == (a, b):
                total += t.coeff
            elif (t.left, t.right) == (b, a):
                total -= t.coeff
        return total

    def structure_terms(self, gen: Label) -> list:
        return [t for t in self.terms.get(gen, []) if t.symbol is None]

    def curvature_terms(self, gen: Label) -> list:
        return [t for t in self.terms.get(gen, []) if t.symbol is not None]

    def as_dict(self) -> dict:
        out = {}
        for g in self.generators:
            out[str(g)] = [
                {"coeff": t.coeff, "left": str(t.left), "right": str(t.right), "symbol": t.symbol}
                for t in self.terms.get(g, [])
            ]
        return out


def _neg(root) -> tuple:
    return tuple(-x for x in root)


def _add(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _cartan_terms(root, right: Label, sign) -> list:
    """sign * root ^ right, with the Cartan form of ``root`` expanded."""
    return [Term(Fraction(sign * n), _a(i), right) for i, n in enumerate(root) if n]


def _killing_ratio(system, a, b) -> Fraction:
    return Fraction(system.inner(a, b), system.inner(b, b))


def _flat_terms(model, N, root) -> list:
    system = model.system
    idx = system.index
    out = _cartan_terms(root, _w(root), -1)
    for b in system.roots:
        c = _sub(root, b)
        if c in idx and idx[b] < idx[c]:
            out.append(Term(Fraction(-N(b, c)), _w(b), _w(c)))
    return out


def _dalpha_terms(model, i, roots) -> list:
    system = model.system
    simple = system.simple[i]
    out = []
    for b in roots:
        r = _killing_ratio(system, simple, b)
        if r:
            out.append(Term(-2 * r, _w(b), _w(_neg(b))))
    return out


def _generators(model) -> list:
    system = model.system
    return [_w(r) for r in system.roots] + [_a(i) for i in range(system.rank)]


def emit_flat(model: ParabolicModel, constants: StructureConstants | None = None) -> TermTable:
    """Structure equations of G with curvature zero.

    d omega^a = -a ^ omega^a - sum over unordered {b, c}, b + c = a, of N_bc omega^b ^ omega^c
    d alpha_i = -2 sum over b > 0 of (<alpha_i, b>/<b, b>) omega^b ^ omega^-b
    """
    N = constants or compute_constants(model.system)
    system = model.system
    table = TermTable(str(model), _generators(model))
    for r in system.roots:
        table.terms[_w(r)] = _flat_terms(model, N, r)
    for i in range(system.rank):
        table.terms[_a(i)] = _dalpha_terms(model, i, system.positive)
    return table


def _sym(name, upper, b, c) -> str:
    up = str(upper) if isinstance(upper, int) else _fmt(upper)
    return f"{name}^{up}_{_fmt(b)},{_fmt(c)}"


def _fmt(root) -> str:
    return "(" + ",".join(map(str, root)) + ")"


def emit(model: ParabolicModel, constants: StructureConstants | None = None) -> TermTable:
    """Flat table plus the curvature placeholders k and l (lower indices in Delta_-)."""
    table = emit_flat(model, constants)
    neg = model.negative_grade
    pairs = list(itertools.combinations(neg, 2))
    for r in model.system.roots:
        table.terms[_w(r)] += [Term(Fraction(1), _w(b), _w(c), _sym("k", r, b, c)) for b, c in pairs]
    for i in range(model.system.rank):
        table.terms[_a(i)] += [
            Term(Fraction(1), _w(b), _w(c), _sym("l", i + 1, b, c)) for b, c in pairs
        ]
    return table


def emit_boosh(model: ParabolicModel, constants: StructureConstants | None = None) -> TermTable:
    """Structure equations on the boosh, with formal K, L, k placeholders."""
    if not model.nontrivial:
        raise ModelError("model has no crossed nodes")
    system = model.system
    N = constants or compute_constants(system)
    idx = system.index
    neg = model.negative_grade
    compact = model.compact
    center = nilradical_center(model)
    zset = set(center)
    pairs = list(itertools.combinations(neg, 2))
    gens = [_w(r) for r in neg] + [_w(r) for r in compact]
    gens += [_a(i) for i in range(system.rank)] + [_w(z) for z in center]
    table = TermTable(str(model), gens)
    negset = set(neg)
    for a in neg:
        terms = _cartan_terms(a, _w(a), -1)
        for s in compact:
            b = _add(a, s)
            if b in idx:
                terms.append(Term(Fraction(N(b, _neg(s))), _w(_neg(s)), _w(b)))
        for s in compact:
            b = _add(a, s)
            if b not in negset:
                continue
            for g in neg:
                if g != b:
                    terms.append(Term(Fraction(-1), _w(b), _w(g), _sym("k", a, b, g)))
        table.terms[_w(a)] = terms
    for a in compact:
        terms = _cartan_terms(a, _w(a), -1)
        for b in compact:
            c = _sub(a, b)
            if c in idx and model.grade_of(c) == 0 and idx[b] < idx[c]:
                terms.append(Term(Fraction(-N(b, c)), _w(b), _w(c)))
        for b in center:
            for g in center:
                if _sub(b, g) == a:
                    terms.append(Term(Fraction(-N(b, _neg(g))), _w(b), _w(_neg(g))))
        terms += [Term(Fraction(1), _w(b), _w(c), _sym("K", a, b, c)) for b, c in pairs]
        table.terms[_w(a)] = terms
    for z in center:
        terms = _cartan_terms(z, _w(z), -1)
        for g in compact:
            b = _sub(z, g)
            if b in zset:
                terms.append(Term(Fraction(-N(b, g)), _w(b), _w(g)))
        terms += [Term(Fraction(1), _w(b), _w(c), _sym("K", z, b, c)) for b, c in pairs]
        table.terms[_w(z)] = terms
    for i in range(system.rank):
        terms = _dalpha_terms(model, i, center)
        terms += [Term(Fraction(1), _w(b), _w(c), _sym("L", i + 1, b, c)) for b, c in pairs]
        table.terms[_a(i)] = terms
    return table


def atiyah_terms(model: ParabolicModel, constants: StructureConstants | None = None) -> TermTable:
    """(0,1)-parts of d of the connection forms (grade-0 omegas and Cartan forms)."""
    system = model.system
    N = constants or compute_constants(system)
    center = nilradical_center(model)
    gens = [_w(r) for r in model.compact] + [_a(i) for i in range(system.rank)]
    table = TermTable(str(model), gens)
    for a in model.compact:
        table.terms[_w(a)] = [
            Term(Fraction(-N(b, _neg(g))), Label("w01", b), _w(_neg(g)))
            for b in center
            for g in center
            if _sub(b, g) == a
        ]
    for i in range(system.rank):
        simple = system.simple[i]
        table.terms[_a(i)] = [
            Term(-2 * _killing_ratio(system, simple, b), Label("w01", b), _w(_neg(b)))
            for b in center
            if _killing_ratio(system, simple, b)
        ]
    return table


# d^2 = 0 on the flat table


@dataclass(frozen=True)
class FlatViolation:
    generator: str
    triple: tuple
    coefficient: Fraction

    def __str__(self):
        return f"d^2 {self.generator} has coefficient {self.coefficient} on {' ^ '.join(self.triple)}"


@dataclass(frozen=True)
class FlatReport:
    model: str
    generators: int
    violations: tuple

    @property
    def passed(self) -> bool:
        return not self.violations


def _sorted_sign(items):
    """Sign of the permutation sorting ``items`` and the sorted tuple (None if repeated)."""
    items = list(items)
    if len(set(items)) != len(items):
        return 0, None
    sign = 1
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign, tuple(sorted(items))


def check_flat_consistency(
    model: ParabolicModel,
    constants: StructureConstants | None = None,
    limit: int | None = None,
) -> FlatReport:
    """Expand d(d g) for every generator g of the flat table; all coefficients must vanish."""
    table = emit_flat(model, constants)
    gens = table.generators
    pos = {g: i for i, g in enumerate(gens)}
    d = []
    for g in gens:
        form: dict = {}
        for t in table.structure_terms(g):
            s, key = _sorted_sign((pos[t.left], pos[t.right]))
            if key:
                form[key] = form.get(key, 0) + s * t.coeff
        d.append({k: v for k, v in form.items() if v})
    violations = []
    for gi, g in enumerate(gens):
        out: dict = {}
        for (x, y), c in d[gi].items():
            # d(x ^ y) = dx ^ y - x ^ dy
            for (p, q), e in d[x].items():
                s, key = _sorted_sign((p, q, y))
                if key:
                    out[key] = out.get(key, 0) + s * c * e
            for (p, q), e in d[y].items():
                s, key = _sorted_sign((x, p, q))
                if key:
                    out[key] = out.get(key, 0) - s * c * e
        for key in sorted(out):
            if out[key]:
                violations.append(FlatViolation(str(g), tuple(str(gens[k]) for k in key), out[key]))
                if limit is not None and len(violations) >= limit:
                    return FlatReport(table.model, len(gens), tuple(violations))
    return FlatReport(table.model, len(gens), tuple(violations))


# bracket closure


@dataclass(frozen=True)
class Constraint:
    alpha: tuple
    beta: tuple
    gamma: tuple
    value: int  # required value of k^alpha_{beta gamma}


def _constraints(model, N, alphas, pairs):
    out = []
    for a in alphas:
        for b, c in pairs:
            value = N(b, c) if _add(b, c) == a else 0
            out.append(Constraint(a, b, c, value))
    return out


def bracket_closure_constraints(
    model: ParabolicModel,
    gamma: Iterable,
    constants: StructureConstants | None = None,
) -> list[Constraint]:
    """k^a_bc = [a = b+c] N_bc for a outside Gamma and unordered {b, c} inside."""
    gamma = {tuple(r) for r in gamma}
    witness = saturation_witness(model, gamma, "negative")
    if witness is not None:
        lam, eps = witness
        raise ModelError(f"Gamma is not saturated: {lam} + {eps} leaves Gamma")
    N = constants or compute_constants(model.system)
    order = model.system.index
    inside = sorted(gamma, key=order.__getitem__)
    outside = [r for r in model.negative_grade if r not in gamma]
    return _constraints(model, N, outside, list(itertools.combinations(inside, 2)))


def graded_constraints(
    model: ParabolicModel, constants: StructureConstants | None = None
) -> list[Constraint]:
    """Constraints for a below both b and c, order taken by grade.

    Every set {roots of grade > k} is saturated, so these follow from
    :func:`bracket_closure_constraints` applied to each such set.
    """
    N = constants or compute_constants(model.system)
    out = []
    for a in model.negative_grade:
        ga = model.grade_of(a)
        higher = [r for r in model.negative_grade if model.grade_of(r) > ga]
        out += _constraints(model, N, [a], list(itertools.combinations(higher, 2)))
    return out


def torsion_coefficient(model: ParabolicModel, alpha) -> Fraction:
    """Coefficient 2<chi_{>|grade a|}, a>/<a, a> of omega^-a in nabla t_a."""
    alpha = tuple(alpha)
    g = model.grade_of(alpha)
    if g >= 0:
        raise ModelError(f"{alpha} does not have negative grade")
    if -g >= model.depth:
        return Fraction(0)
    return pairing(model.system, chi_geq(model, -g + 1), alpha)


# data-only covariant derivative tables


@dataclass(frozen=True)
class SymbolicTerm:
    coeff: Fraction
    factors: tuple  # symbol names multiplied together
    form: Label | None  # the 1-form, None for the formal d(symbol) term


def _k(name, upper, b, c, negset, idx):
    """(sign, symbol) for a curvature component, or None where it vanishes."""
    if b not in negset or c not in negset or b == c:
        return None
    if idx[b] > idx[c]:
        return -1, _sym(name, upper, c, b)
    return 1, _sym(name, upper, b, c)


def nabla_k_terms(model: ParabolicModel, alpha, beta, gamma, constants=None) -> list:
    """Terms of nabla k^alpha_{beta gamma} (beta, gamma in Delta_-)."""
    system = model.system
    N = constants or compute_constants(system)
    idx = system.index
    negset = set(model.negative_grade)
    alpha, beta, gamma = tuple(alpha), tuple(beta), tuple(gamma)
    here = _k("k", alpha, beta, gamma, negset, idx)
    if here is None:
        return []
    s0, name = here
    out = [SymbolicTerm(Fraction(s0), ("d " + name,), None)]
    shift = _sub(_sub(alpha, beta), gamma)
    out += [SymbolicTerm(Fraction(s0 * n), (name,), _a(i)) for i, n in enumerate(shift) if n]
    out.append(SymbolicTerm(Fraction(-s0), ("l" + name[1:],), _w(alpha)))

    def nv(x, y):
        return N(x, y) if x in idx and y in idx and _add(x, y) in idx else 0

    def k(upper, b, c):
        if upper not in idx:
            return None
        return _k("k", upper, b, c, negset, idx)

    for e in system.roots:
        if model.grade_of(e) < 0:
            continue
        for coeff, kk in (
            (nv(gamma, e), k(alpha, beta, _add(e, gamma))),
            (nv(e, beta), k(alpha, gamma, _add(beta, e))),
            (nv(e, _sub(alpha, e)), k(_sub(alpha, e), beta, gamma)),
        ):
            if coeff and kk:
                out.append(SymbolicTerm(Fraction(coeff * kk[0]), (kk[1],), _w(e)))
    for s in model.negative_grade:
        for coeff, kk in (
            (nv(beta, gamma), k(alpha, s, _add(beta, gamma))),
            (nv(s, _sub(alpha, s)), k(_sub(alpha, s), beta, gamma)),
        ):
            if coeff and kk:
                out.append(SymbolicTerm(Fraction(coeff * kk[0]), (kk[1],), _w(s)))
        for e in model.negative_grade:
            k1, k2 = k(alpha, e, s), k(e, beta, gamma)
            if k1 and k2:
                out.append(SymbolicTerm(Fraction(k1[0] * k2[0]), (k1[1], k2[1]), _w(s)))
    return out


def nabla_l_terms(model: ParabolicModel, i: int, beta, gamma, constants=None) -> list:
    """Terms of nabla l^{alpha_i}_{beta gamma}, i a 0-based simple index."""
    system = model.system
    N = constants or compute_constants(system)
    idx = system.index
    negset = set(model.negative_grade)
    beta, gamma = tuple(beta), tuple(gamma)
    simple = system.simple[i]
    here = _k("l", i + 1, beta, gamma, negset, idx)
    if here is None:
        return []
    s0, name = here
    out = [SymbolicTerm(Fraction(s0), ("d " + name,), None)]
    shift = _add(beta, gamma)
    out += [SymbolicTerm(Fraction(-s0 * n), (name,), _a(j)) for j, n in enumerate(shift) if n]
    for e in system.roots:
        kk = _k("k", e, beta, gamma, negset, idx)
        r = _killing_ratio(system, simple, e)
        if kk and r:
            out.append(SymbolicTerm(-2 * r * kk[0], (kk[1],), _w(_neg(e))))
    for e in system.roots:
        if model.grade_of(e) < 0:
            continue
        for s in model.negative_grade:
            if _add(e, beta) == s and N(e, beta):
                ll = _k("l", i + 1, s, gamma, negset, idx)
                if ll:
                    out.append(SymbolicTerm(Fraction(-N(e, beta) * ll[0]), (ll[1],), _w(e)))
            if _add(e, gamma) == s and N(e, gamma):
                ll = _k("l", i + 1, s, beta, negset, idx)
                if ll:
                    out.append(SymbolicTerm(Fraction(N(e, gamma) * ll[0]), (ll[1],), _w(e)))
    t_shift = _add(beta, gamma)
    for s in model.negative_grade:
        for e in model.negative_grade:
            ll = _k("l", i + 1, e, s, negset, idx)
            if not ll:
                continue
            kk = _k("k", e, beta, gamma, negset, idx)
            if kk:
                out.append(SymbolicTerm(Fraction(ll[0] * kk[0]), (ll[1], kk[1]), _w(s)))
            if t_shift == e and N(beta, gamma):
                out.append(SymbolicTerm(Fraction(-ll[0] * N(beta, gamma)), (ll[1],), _w(s)))
    return out


# LaTeX


def _root_tex(root) -> str:
    parts = []
    for i, n in enumerate(root):
        if not n:
            continue
        sign = "-" if n < 0 else "+"
        mag = "" if abs(n) == 1 else str(abs(n))
        parts.append(f"{sign}{mag}\\alpha_{{{i + 1}}}")
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def _label_tex(label: Label) -> str:
    if label.kind == "a":
        return f"\\alpha_{{{label.key + 1}}}"
    base = f"\\omega^{{{_root_tex(label.key)}}}"
    return base if label.kind == "w" else f"({base})^{{0,1}}"


def _coeff_tex(c: Fraction, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    if mag == 1:
        body = ""
    elif mag.denominator == 1:
        body = str(mag.numerator)
    else:
        body = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
    return f"{sign}{body}"


def _symbol_tex(symbol: str) -> str:
    name, rest = symbol.split("^", 1)
    upper, lower = rest.split("_", 1)
    up = upper if upper.isdigit() else _root_tex(tuple(int(x) for x in upper.strip("()").split(",")))
    b, c = lower.split("),(")
    low = [tuple(int(x) for x in s.strip("()").split(",")) for s in (b, c)]
    return f"{name}^{{{up}}}_{{{_root_tex(low[0])},{_root_tex(low[1])}}}"


def to_latex(table: TermTable, include_curvature: bool = True) -> str:
    """One equation* environment per generator, in generator order."""
    blocks = []
    for g in table.generators:
        pieces = []
        for t in table.terms.get(g, []):
            if t.symbol is not None and not include_curvature:
                continue
            sym = f"{_symbol_tex(t.symbol)}\\," if t.symbol else ""
            pieces.append(
                f"{_coeff_tex(t.coeff, not pieces)}{sym}{_label_tex(t.left)}\\wedge{_label_tex(t.right)}"
            )
        rhs = " ".join(pieces) if pieces else "0"
        blocks.append(f"\\begin{{equation*}}\nd{_label_tex(g)} = {rhs}\n\\end{{equation*}}")
    return "\n".join(blocks) + "\n"
