"""Chevalley basis structure constants N(alpha, beta).

Signs are fixed on extraspecial pairs and propagated with the standard
identities (Carter, *Simple groups of Lie type*, 4.1.2); the resulting table
is then checked against every axiom by :func:`verify` rather than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rootsys import RootSystem, pairing, root_string

__all__ = [
    "StructureConstants",
    "Violation",
    "ChevalleyError",
    "compute_constants",
    "jacobi_mystery",
    "verify",
]


class ChevalleyError(RuntimeError):
    pass


class StructureConstants:
    """Table of N(alpha, beta) indexed by root positions of ``system``."""

    def __init__(self, system: RootSystem, matrix):
        self.system = system
        self._n = [list(row) for row in matrix]

    def __call__(self, alpha, beta) -> int:
        idx = self.system.index
        return self._n[idx[tuple(alpha)]][idx[tuple(beta)]]

    def by_index(self, i: int, j: int) -> int:
        return self._n[i][j]

    @property
    def matrix(self):
        return self._n

    def items(self):
        """Nonzero entries as ((alpha, beta), N)."""
        roots = self.system.roots
        for i, row in enumerate(self._n):
            for j, v in enumerate(row):
                if v:
                    yield (roots[i], roots[j]), v

    def with_entry(self, alpha, beta, value: int) -> "StructureConstants":
        """Copy with N(alpha,beta)=value and N(beta,alpha)=-value."""
        idx = self.system.index
        i, j = idx[tuple(alpha)], idx[tuple(beta)]
        out = StructureConstants(self.system, self._n)
        out._n[i][j] = value
        out._n[j][i] = -value
        return out

    def __eq__(self, other):
        return (
            isinstance(other, StructureConstants)
            and self.system == other.system
            and self._n == other._n
        )


def compute_constants(system: RootSystem) -> StructureConstants:
    """Structure constants of a Chevalley basis of the Lie algebra of ``system``.

    Raises :class:`ChevalleyError` if the result fails verification.
    """
    roots = system.roots
    n = len(roots)
    add = system.add_table
    neg = system.neg_index
    norms = system.norms
    pos = [i for i, r in enumerate(roots) if sum(r) > 0]
    is_pos = [sum(r) > 0 for r in roots]
    N = [[0] * n for _ in range(n)]
    done = [[False] * n for _ in range(n)]

    def get(i, j):
        # N for arbitrary roots, reduced to positive pairs already computed
        k = add[i][j]
        if k < 0:
            return Fraction(0)
        if done[i][j]:
            return Fraction(N[i][j])
        # i + j + z = 0
        z = neg[k]
        if is_pos[i] == is_pos[j]:
            if is_pos[i]:
                raise ChevalleyError("positive pair requested before it was set")
            return -get(neg[i], neg[j])
        # N_ij/(z,z) = N_jz/(i,i) = N_zi/(j,j); pick the same-sign pair
        if is_pos[j] == is_pos[z]:
            return Fraction(norms[z], norms[i]) * get(j, z)
        return Fraction(norms[z], norms[j]) * get(z, i)

    def store(i, j, value):
        value = Fraction(value)
        if value.denominator != 1:
            raise ChevalleyError(f"non-integral structure constant {value}")
        v = int(value)
        N[i][j], N[j][i] = v, -v
        done[i][j] = done[j][i] = True

    for xi in sorted(pos, key=lambda k: (sum(roots[k]), roots[k])):
        pairs = [(a, add[xi][neg[a]]) for a in pos]
        pairs = [(a, b) for a, b in pairs if b >= 0 and is_pos[b] and a < b]
        if not pairs:
            continue
        a1, b1 = min(pairs)
        p, _ = root_string(system, roots[b1], roots[a1])
        store(a1, b1, p + 1)
        for a, b in pairs:
            if (a, b) == (a1, b1):
                continue
            # four-term identity on a, b, -a1, -b1
            s = Fraction(0)
            m = add[b][neg[a1]]
            if m >= 0:
                s += get(b, neg[a1]) * get(a, neg[b1]) / norms[m]
            m = add[a][neg[a1]]
            if m >= 0:
                s += get(neg[a1], a) * get(b, neg[b1]) / norms[m]
            store(a, b, Fraction(norms[xi]) * s / N[a1][b1])

    full = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            full[i][j] = int(get(i, j))
    table = StructureConstants(system, full)
    problems = verify(table, limit=1)
    if problems:
        raise ChevalleyError(f"structure constants failed verification: {problems[0]}")
    return table


def jacobi_mystery(table: StructureConstants, alpha, beta) -> int:
    """N(b,-a)N(a,b-a) + N(a,b)N(-a,a+b), zero where a root is missing."""
    system = table.system
    alpha, beta = tuple(alpha), tuple(beta)
    neg_a = tuple(-x for x in alpha)
    diff = tuple(b - a for a, b in zip(alpha, beta))
    total = tuple(a + b for a, b in zip(alpha, beta))

    def N(x, y):
        if x in system.index and y in system.index:
            return table(x, y)
        return 0

    return N(beta, neg_a) * N(alpha, diff) + N(alpha, beta) * N(neg_a, total)


@dataclass(frozen=True)
class Violation:
    identity: str
    roots: tuple
    detail: str

    def __str__(self):
        return f"{self.identity} at {self.roots}: {self.detail}"


def verify(table: StructureConstants, limit: int | None = None) -> list[Violation]:
    """Check every Chevalley axiom on ``table``; empty list means success.

    Covers |N| = p+1, N(-a,-b) = -N(a,b), antisymmetry, the Jacobi
    identity on all root triples and the two-term identity of
    :func:`jacobi_mystery` on all pairs.
    """
    system = table.system
    roots = system.roots
    n = len(roots)
    add = system.add_table
    neg = system.neg_index
    N = table.matrix
    out: list[Violation] = []

    def report(kind, ids, detail):
        out.append(Violation(kind, tuple(roots[i] for i in ids), detail))
        return limit is not None and len(out) >= limit

    for i in range(n):
        for j in range(n):
            v = N[i][j]
            if v != -N[j][i]:
                if report("antisymmetry", (i, j), f"{v} vs {N[j][i]}"):
                    return out
            k = add[i][j]
            if k < 0:
                if v != 0:
                    if report("support", (i, j), f"N={v} but sum is not a root"):
                        return out
                continue
            p, _ = root_string(system, roots[j], roots[i])
            if abs(v) != p + 1:
                if report("magnitude", (i, j), f"|N|={abs(v)}, p+1={p + 1}"):
                    return out
            if N[neg[i]][neg[j]] != -v:
                if report("negation", (i, j), f"N(-a,-b)={N[neg[i]][neg[j]]}, N(a,b)={v}"):
                    return out

    for i in range(n):
        Ni, addi, negi = N[i], add[i], neg[i]
        for j in range(n):
            if j == negi:
                continue
            ij = addi[j]
            Nij = Ni[j]
            Nj, addj, negj = N[j], add[j], neg[j]
            for k in range(n):
                if k == negi or k == negj:
                    continue
                if ij >= 0 and k == neg[ij]:
                    continue
                jk = addj[k]
                ki = add[k][i]
                s = 0
                if ij >= 0:
                    s += Nij * N[ij][k]
                if jk >= 0:
                    s += Nj[k] * N[jk][i]
                if ki >= 0:
                    s += N[k][i] * N[ki][j]
                if s:
                    if report("jacobi", (i, j, k), f"cyclic sum {s}"):
                        return out

    for i in range(n):
        for j in range(n):
            got = jacobi_mystery(table, roots[i], roots[j])
            if j == i or j == neg[i]:
                want = 0
            else:
                want = -pairing(system, roots[j], roots[i])
            if got != want:
                if report("jacobi_mystery", (i, j), f"{got} != {want}"):
                    return out
    return out
