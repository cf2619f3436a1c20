"""Characteristic-class relations: parsing, verification on G/P, elimination.

Relations are integer polynomials in ``c1`` .. ``c9``, ``eps``, ``delta``
and ``h``.  Weighted degree is ``i`` for ``ci`` and 1 for the others.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .parabolic import ParabolicModel, chi_geq
from .schubert import ChernData, CohomologyClass, SchubertRing, chern_classes

__all__ = [
    "RelationSyntaxError",
    "EliminationError",
    "parse_relation",
    "parse_relations",
    "read_relations",
    "weighted_degree",
    "RelationVerdict",
    "RelationReport",
    "verify_relations",
    "chern_relations",
    "EliminationResult",
    "eliminate",
]

C = sympy.symbols("c1:10")
EPS, DELTA, H = sympy.symbols("eps delta h")
T = sympy.Symbol("t")
SYMBOLS = {str(s): s for s in (*C, EPS, DELTA, H)}

_TOKEN = re.compile(r"\s*(?:(\d+)|(c[1-9]|eps|delta|h)|([-+*^()]))")


class RelationSyntaxError(ValueError):
    pass


class EliminationError(ValueError):
    pass


def parse_relation(text: str) -> sympy.Expr:
    """Parse one polynomial; errors carry the column of the offending character."""
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip())
            raise RelationSyntaxError(f"column {bad + 1}: unexpected {text[bad]!r} in {text!r}")
        out.append(m.group(0))
        pos = m.end()
    if not out:
        raise RelationSyntaxError("empty relation")
    try:
        expr = sympy.sympify("".join(out).replace("^", "**"), locals=SYMBOLS)
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise RelationSyntaxError(f"cannot parse {text!r}: {exc}") from None
    expr = sympy.expand(expr)
    if not expr.is_polynomial(*SYMBOLS.values()):
        raise RelationSyntaxError(f"not a polynomial: {text!r}")
    return expr


def parse_relations(text: str) -> list:
    """One polynomial per nonblank line; ``#`` starts a comment."""
    out = []
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        if not line.strip():
            continue
        try:
            out.append(parse_relation(line))
        except RelationSyntaxError as exc:
            raise RelationSyntaxError(f"line {n}, {exc}") from None
    return out


def read_relations(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return parse_relations(fh.read())


def _weight(sym) -> int:
    name = str(sym)
    return int(name[1:]) if name.startswith("c") else 1


def weighted_degree(expr) -> int | None:
    """Common weighted degree of all monomials, or None if inhomogeneous."""
    expr = sympy.expand(expr)
    if expr == 0:
        return 0
    gens = sorted(expr.free_symbols, key=str)
    if not gens:
        return 0
    poly = sympy.Poly(expr, *gens)
    degs = {sum(e * _weight(g) for e, g in zip(mon, gens)) for mon in poly.monoms()}
    return degs.pop() if len(degs) == 1 else None


@dataclass(frozen=True)
class RelationVerdict:
    relation: str
    degree: int
    holds: bool
    witness: dict  # Schubert label -> coefficient, empty when the relation holds


@dataclass(frozen=True)
class RelationReport:
    model: str
    scale: int
    normalization: str
    verdicts: tuple

    @property
    def all_hold(self) -> bool:
        return all(v.holds for v in self.verdicts)


class _Evaluator:
    def __init__(self, model: ParabolicModel, data: ChernData, scale):
        self.ring: SchubertRing = data.ring
        self.weights = list(model.positive_grade)
        self.n = len(self.weights)
        chi = chi_geq(model, 1)
        self.eps_weight = tuple(Fraction(x) / scale for x in chi)
        self.h_weight = (
            tuple(Fraction(x) / data.fano_index for x in chi) if data.fano_index else None
        )

    def monomial(self, gens, mon) -> CohomologyClass:
        ring = self.ring
        c = ring.one()
        for g, e in zip(gens, mon):
            name = str(g)
            for _ in range(e):
                if name in ("eps", "delta"):
                    c = ring.monk(self.eps_weight, c)
                elif name == "h":
                    if self.h_weight is None:
                        raise ValueError("h needs a model of Picard rank 1")
                    c = ring.monk(self.h_weight, c)
                else:
                    k = int(name[1:])
                    if k > self.n:
                        return ring.zero(c.degree + k)
                    c = ring.elementary_times(self.weights, k, c)
        return c

    def evaluate(self, expr) -> CohomologyClass:
        expr = sympy.expand(expr)
        deg = weighted_degree(expr)
        if deg is None:
            raise ValueError(f"inhomogeneous relation {expr}")
        total = self.ring.zero(deg)
        if expr == 0:
            return total
        gens = sorted(expr.free_symbols, key=str)
        if not gens:
            return self.ring.one().scale(Fraction(str(expr)))
        for mon, coeff in sympy.Poly(expr, *gens).terms():
            cls = self.monomial(gens, mon)
            total = total + cls.scale(Fraction(str(coeff)))
        return total


def verify_relations(
    model: ParabolicModel,
    relations: Sequence,
    scale: int | None = None,
    data: ChernData | None = None,
) -> RelationReport:
    """Expand each relation in the Schubert basis with eps = delta = c1/scale.

    ``scale`` defaults to the Fano index.  Relations may be strings or
    sympy expressions.
    """
    if len(model.crossed) != 1:
        raise ValueError("relation verification needs exactly one crossed node")
    data = data or chern_classes(model)
    scale = data.fano_index if scale is None else scale
    if not scale:
        raise ValueError("normalization scale must be a nonzero integer")
    ev = _Evaluator(model, data, scale)
    verdicts = []
    for rel in relations:
        expr = parse_relation(rel) if isinstance(rel, str) else sympy.expand(rel)
        cls = ev.evaluate(expr)
        verdicts.append(
            RelationVerdict(
                relation=_show(expr),
                degree=cls.degree,
                holds=cls.is_zero(),
                witness={} if cls.is_zero() else ev.ring.describe(cls),
            )
        )
    return RelationReport(str(model), scale, f"eps = c1/{scale}", tuple(verdicts))


def _show(expr) -> str:
    return str(expr).replace("**", "^")


def chern_relations(data: ChernData, symbol=DELTA) -> list:
    """c_k - r_k symbol^k for a Picard-rank-1 model whose c_k are multiples of h^k.

    ``symbol`` stands for h.  Raises if some c_k is not a multiple of h^k.
    """
    if data.ratios is None or any(r is None for r in data.ratios):
        raise ValueError(f"Chern classes of {data.model} are not all multiples of powers of h")
    return [
        C[k] - sympy.Rational(r.numerator, r.denominator) * symbol ** (k + 1)
        for k, r in enumerate(data.ratios)
    ]


@dataclass(frozen=True)
class EliminationResult:
    t_values: tuple  # solutions of eps = t delta, empty when t is unconstrained
    degree_constraints: tuple  # (degree, polynomial in t) before fixing t
    vanishing_degree: int | None  # smallest k with delta^k = 0 forced, if below d+1
    vanishing_classes: tuple  # c_i forced to vanish
    residuals: tuple = ()  # (degree, value of the constraint at the solved t), nonzero only
    substitutions: dict = field(default_factory=dict)  # c_i -> expression in delta
    consistent: bool = True
    certificate: tuple = ()  # relations reducing to a nonzero constant


def _solve_cominuscule(relations, d):
    subs = {}
    leftover = []
    for rel in relations:
        rel = sympy.expand(rel)
        cs = sorted((s for s in rel.free_symbols if str(s).startswith("c")), key=str)
        target = next(
            (c for c in reversed(cs) if c not in subs and sympy.degree(rel, c) == 1
             and not (rel.coeff(c, 1).free_symbols & set(C))),
            None,
        )
        if target is None:
            leftover.append(rel)
            continue
        sol = sympy.solve(rel, target)
        subs[target] = sympy.expand(sol[0])
    # fold earlier solutions into later ones
    for _ in range(len(subs)):
        subs = {k: sympy.expand(v.subs(subs)) for k, v in subs.items()}
    for k in range(1, 10):
        if k > d and C[k - 1] not in subs:
            subs[C[k - 1]] = sympy.Integer(0)
    return subs, leftover


def _by_degree(expr, d):
    """{k: coefficient of delta^k} for k <= d, as polynomials in t."""
    expr = sympy.expand(expr)
    out = {}
    for k in range(0, d + 1):
        coeff = sympy.expand(expr.coeff(DELTA, k))
        if coeff != 0:
            out[k] = coeff
    return out


def _by_name(item):
    return int(str(item[0])[1:])


def _rational_roots(polys):
    nonconst = [sympy.Poly(p, T) for p in polys if p.free_symbols]
    if not nonconst:
        return None
    g = nonconst[0]
    for p in nonconst[1:]:
        g = sympy.gcd(g, p)
    if g.degree() < 1:
        return []
    return sorted(set(sympy.roots(g, filter=None).keys()), key=sympy.default_sort_key)


def eliminate(
    model_relations: Iterable,
    cominuscule_relations: Iterable,
    dimension: int,
) -> EliminationResult:
    """Substitute the cominuscule relations and eps = t delta into the model relations.

    Works modulo delta^(dimension+1) and c_i = 0 for i > dimension.  Degrees
    are processed upward: the lowest degree with a nonconstant constraint
    fixes t, and the first degree whose constraint fails at that t forces
    delta^k = 0, hence c_i = 0 wherever c_i is a multiple of delta^j, j >= k.
    """
    d = dimension
    model_relations = [parse_relation(r) if isinstance(r, str) else r for r in model_relations]
    cominuscule_relations = [
        parse_relation(r) if isinstance(r, str) else r for r in cominuscule_relations
    ]
    if not model_relations and not cominuscule_relations:
        return EliminationResult((), (), None, ())
    subs, leftover = _solve_cominuscule(cominuscule_relations, d)
    pool = []
    certificate = []
    for rel in list(model_relations) + leftover:
        if H in rel.free_symbols:
            raise EliminationError("use eps and delta, not h, in elimination input")
        expr = sympy.expand(sympy.expand(rel.subs(subs)).subs(EPS, T * DELTA))
        free_c = {s for s in expr.free_symbols if s in C}
        if free_c:
            raise EliminationError(
                f"{_show(rel)} still involves {sorted(map(str, free_c))} after substitution"
            )
        parts = _by_degree(expr, d)
        if 0 in parts and not parts[0].free_symbols:
            certificate.append(_show(rel))
        pool.append(parts)
    degree_constraints = []
    for k in range(0, d + 1):
        for parts in pool:
            if k in parts:
                degree_constraints.append((k, parts[k]))
    t_values = None
    for k in range(0, d + 1):
        polys = [p for kk, p in degree_constraints if kk == k]
        roots = _rational_roots(polys)
        if roots is not None:
            t_values = roots
            break
    vanishing = None
    residuals = []
    t0 = t_values[0] if t_values and len(t_values) == 1 else None
    if t0 is not None:
        for k, p in degree_constraints:
            value = sympy.nsimplify(p.subs(T, t0))
            if value != 0:
                residuals.append((k, Fraction(str(value)) if value.is_Rational else _show(value)))
                if vanishing is None or k < vanishing:
                    vanishing = k
    if vanishing == 0 and not certificate:
        certificate.append("degree-0 constraint fails at the solved t")
    classes = []
    if vanishing is not None:
        for c, v in sorted(subs.items(), key=_by_name):
            v = sympy.expand(v)
            if v == 0:
                continue
            lowest = min(sum(m) for m in sympy.Poly(v, DELTA).monoms()) if v.free_symbols else 0
            if lowest >= vanishing:
                classes.append(str(c))
    return EliminationResult(
        t_values=tuple(t_values or ()),
        degree_constraints=tuple((k, _show(p)) for k, p in degree_constraints),
        vanishing_degree=vanishing,
        vanishing_classes=tuple(sorted(classes, key=lambda s: int(s[1:]))),
        residuals=tuple(residuals),
        substitutions={str(k): _show(v) for k, v in sorted(subs.items(), key=_by_name) if v != 0},
        consistent=not certificate,
        certificate=tuple(certificate),
    )
