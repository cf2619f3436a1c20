"""Root systems of finite type (A-G, products allowed) in exact arithmetic.

Roots are integer tuples of coefficients in the simple-root basis.  Nodes
follow Bourbaki numbering inside each factor, except that for G2 the first
node is the long one.  Factors are concatenated in the order given.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "RootSystemError",
    "RootSystemType",
    "RootSystem",
    "build",
    "pairing",
    "inner",
    "root_string",
    "reflect",
    "reflection_closure",
    "family_form",
]

Root = tuple  # tuple[int, ...]

WEYL_ORDER = {"E": {6: 51840, 7: 2903040, 8: 696729600}, "F": {4: 1152}, "G": {2: 12}}


class RootSystemError(ValueError):
    pass


def _check_rank(family: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }
    if family not in ok:
        raise RootSystemError(f"unknown family {family!r}")
    if not isinstance(rank, int) or not ok[family]:
        raise RootSystemError(f"invalid rank {rank} for family {family}")


@dataclass(frozen=True)
class RootSystemType:
    """Product of simple types, e.g. ``RootSystemType((("A", 2), ("G", 2)))``.

    D3 is stored as A3.
    """

    factors: tuple

    def __post_init__(self):
        canon = []
        for fam, rank in self.factors:
            fam = str(fam).upper()
            _check_rank(fam, rank)
            if fam == "D" and rank == 3:
                fam = "A"
            canon.append((fam, rank))
        if not canon:
            raise RootSystemError("empty root system type")
        object.__setattr__(self, "factors", tuple(canon))

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.factors)

    def __str__(self) -> str:
        return "x".join(f"{f}{r}" for f, r in self.factors)


def _edges(family: str, rank: int) -> list[tuple[int, int]]:
    if family == "D":
        return [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    if family == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)]
        edges += [(i, i + 1) for i in range(4, rank - 1)]
        return edges
    return [(i, i + 1) for i in range(rank - 1)]


def _half_lengths(family: str, rank: int) -> list[int]:
    # d_i = |alpha_i|^2 / 2, minimal integers
    if family == "B":
        return [2] * (rank - 1) + [1]
    if family == "C":
        return [1] * (rank - 1) + [2]
    if family == "F":
        return [2, 2, 1, 1]
    if family == "G":
        return [3, 1]
    return [1] * rank


def family_form(family: str, rank: int) -> list[list[int]]:
    """Symmetrized Cartan matrix ``(alpha_i, alpha_j)`` of one simple factor."""
    _check_rank(family, rank)
    d = _half_lengths(family, rank)
    form = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        form[i][i] = 2 * d[i]
    for i, j in _edges(family, rank):
        form[i][j] = form[j][i] = -max(d[i], d[j])
    return form


def inner(form, u: Sequence, v: Sequence):
    """Bilinear form on coefficient vectors."""
    total = 0
    for i, ui in enumerate(u):
        if ui:
            row = form[i]
            for j, vj in enumerate(v):
                if vj:
                    total += ui * row[j] * vj
    return total


def _as_root(vec) -> tuple:
    vec = list(vec)
    out = []
    for x in vec:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                return tuple(vec)
            x = x.numerator
        out.append(int(x))
    return tuple(out)


@dataclass(frozen=True)
class RootSystem:
    """A built root system.

    ``roots`` is sorted by (height, coordinates); ``form`` is the block
    diagonal symmetrized Cartan matrix.
    """

    type: RootSystemType
    roots: tuple
    form: tuple
    offsets: tuple = field(repr=False)

    @property
    def rank(self) -> int:
        return self.type.rank

    @cached_property
    def simple(self) -> tuple:
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    @cached_property
    def index(self) -> dict:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def positive(self) -> tuple:
        return tuple(r for r in self.roots if sum(r) > 0)

    @cached_property
    def negative(self) -> tuple:
        return tuple(r for r in self.roots if sum(r) < 0)

    @cached_property
    def neg_index(self) -> tuple:
        idx = self.index
        return tuple(idx[tuple(-x for x in r)] for r in self.roots)

    @cached_property
    def add_table(self) -> tuple:
        """``add_table[i][j]`` is the index of roots[i]+roots[j], or -1."""
        idx = self.index
        table = []
        for a in self.roots:
            row = []
            for b in self.roots:
                row.append(idx.get(tuple(x + y for x, y in zip(a, b)), -1))
            table.append(tuple(row))
        return tuple(table)

    @cached_property
    def norms(self) -> tuple:
        return tuple(inner(self.form, r, r) for r in self.roots)

    def is_root(self, vec) -> bool:
        return tuple(vec) in self.index

    def factor_of(self, vec) -> int:
        """Index of the simple factor carrying the support of ``vec``."""
        hits = {k for k, (lo, hi) in enumerate(self.blocks) if any(vec[lo:hi])}
        if len(hits) != 1:
            raise RootSystemError(f"{vec} is not supported in a single factor")
        return hits.pop()

    @cached_property
    def blocks(self) -> tuple:
        return tuple(
            (off, off + rank) for off, (_, rank) in zip(self.offsets, self.type.factors)
        )

    def highest_roots(self) -> list:
        out = []
        for lo, hi in self.blocks:
            cands = [r for r in self.positive if any(r[lo:hi])]
            out.append(max(cands, key=lambda r: (sum(r), r)))
        return out

    def inner(self, u, v):
        return inner(self.form, u, v)

    def pairing(self, lam, beta):
        return pairing(self, lam, beta)


def _positive_roots_by_strings(form: list[list[int]]) -> list[tuple]:
    n = len(form)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) not in found:
                        break
                    p += 1
                cartan = Fraction(2 * inner(form, beta, simple[i]), form[i][i])
                q = p - cartan
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(found, key=lambda r: (sum(r), r))


def build(type_: RootSystemType | Iterable) -> RootSystem:
    """Build the root system of ``type_``.

    ``type_`` may be a ``RootSystemType`` or an iterable of (family, rank).
    """
    if not isinstance(type_, RootSystemType):
        type_ = RootSystemType(tuple(tuple(f) for f in type_))
    n = type_.rank
    form = [[0] * n for _ in range(n)]
    roots = []
    offsets = []
    off = 0
    for fam, rank in type_.factors:
        block = family_form(fam, rank)
        for i in range(rank):
            for j in range(rank):
                form[off + i][off + j] = block[i][j]
        for r in _positive_roots_by_strings(block):
            full = [0] * n
            full[off : off + rank] = r
            roots.append(tuple(full))
            roots.append(tuple(-x for x in full))
        offsets.append(off)
        off += rank
    roots.sort(key=lambda r: (sum(r), r))
    return RootSystem(
        type=type_,
        roots=tuple(roots),
        form=tuple(tuple(row) for row in form),
        offsets=tuple(offsets),
    )


def pairing(system: RootSystem, lam, beta) -> Fraction:
    """Cartan pairing 2<lam, beta>/<beta, beta>."""
    bb = inner(system.form, beta, beta)
    if bb == 0:
        raise RootSystemError("pairing against the zero vector")
    return Fraction(2 * inner(system.form, lam, beta)) / bb


def root_string(system: RootSystem, beta, alpha) -> tuple[int, int]:
    """(p, q) for the alpha-string through beta: beta-p*alpha .. beta+q*alpha."""
    beta, alpha = tuple(beta), tuple(alpha)
    if not system.is_root(beta) or not system.is_root(alpha):
        raise RootSystemError("root_string needs two roots")
    if beta == alpha or beta == tuple(-x for x in alpha):
        raise RootSystemError("root_string undefined for beta = +-alpha")
    p = 0
    while system.is_root(tuple(b - (p + 1) * a for b, a in zip(beta, alpha))):
        p += 1
    q = 0
    while system.is_root(tuple(b + (q + 1) * a for b, a in zip(beta, alpha))):
        q += 1
    return p, q


def reflect(system: RootSystem, beta, alpha) -> tuple:
    """Reflection of ``beta`` in the hyperplane orthogonal to root ``alpha``."""
    c = pairing(system, beta, alpha)
    return _as_root(b - c * a for b, a in zip(beta, alpha))


def reflection_closure(system: RootSystem, generators: Iterable) -> frozenset:
    """Smallest set containing ``generators`` closed under mutual reflections."""
    found = {tuple(g) for g in generators}
    frontier = list(found)
    while frontier:
        new = []
        current = list(found)
        for b in frontier:
            for a in current:
                for img in (reflect(system, b, a), reflect(system, a, b)):
                    if img not in found:
                        found.add(img)
                        new.append(img)
        frontier = new
    return frozenset(found)
