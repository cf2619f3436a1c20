"""Independent reference computations used by the tests.

Nothing here imports the package under test.
"""

import itertools
import math
from fractions import Fraction


def cartan_matrix(fam, r):
    """Textbook Cartan matrix, a_ij = <alpha_i, alpha_j^vee>; G2 with node 1 long."""
    a = [[2 if i == j else 0 for j in range(r)] for i in range(r)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j], a[j][i] = aij, aji

    if fam in "ABC":
        for i in range(r - 1):
            link(i, i + 1)
        if fam == "B":
            # alpha_{r} short: <alpha_{r-1}, alpha_r^vee> = -2
            link(r - 2, r - 1, -2, -1)
        elif fam == "C":
            link(r - 2, r - 1, -1, -2)
    elif fam == "D":
        for i in range(r - 2):
            link(i, i + 1)
        link(r - 3, r - 1)
    elif fam == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, r - 1)]:
            link(i, j)
    elif fam == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif fam == "G":
        link(0, 1, -3, -1)
    # transpose convention: a[i][j] = <alpha_i, alpha_j^vee>, row i col j
    return a


def roots_by_orbit(fam, r):
    """All roots as the Weyl orbit of the simple roots under simple reflections."""
    a = cartan_matrix(fam, r)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    found = set(simple)
    stack = list(simple)
    while stack:
        v = stack.pop()
        for j in range(r):
            # <v, alpha_j^vee> = sum_i v_i a[i][j]
            c = sum(v[i] * a[i][j] for i in range(r))
            w = tuple(v[k] - (c if k == j else 0) for k in range(r))
            if w not in found:
                found.add(w)
                stack.append(w)
    return found


ROOT_COUNT = {
    "A": lambda r: r * (r + 1),
    "B": lambda r: 2 * r * r,
    "C": lambda r: 2 * r * r,
    "D": lambda r: 2 * r * (r - 1),
    "E": lambda r: {6: 72, 7: 126, 8: 240}[r],
    "F": lambda r: 48,
    "G": lambda r: 12,
}

WEYL_DEGREES = {
    "A": lambda r: list(range(2, r + 2)),
    "B": lambda r: list(range(2, 2 * r + 1, 2)),
    "C": lambda r: list(range(2, 2 * r + 1, 2)),
    "D": lambda r: list(range(2, 2 * r - 1, 2)) + [r],
    "G": lambda r: [2, 6],
    "F": lambda r: [2, 6, 8, 12],
}


def poincare_coefficients(fam, r):
    """Coefficients of prod (1 + q + ... + q^(d-1)) over the degrees of W."""
    poly = [1]
    for d in WEYL_DEGREES[fam](r):
        new = [0] * (len(poly) + d - 1)
        for i, c in enumerate(poly):
            for k in range(d):
                new[i + k] += c
        poly = new
    return poly


def weyl_order(fam, r):
    return math.prod(WEYL_DEGREES[fam](r))


def projective_space_ratios(n):
    """c(T P^n) = (1+h)^(n+1)."""
    return [Fraction(math.comb(n + 1, k)) for k in range(1, n + 1)]


def quadric_ratios(n):
    """c(T Q^n) = (1+H)^(n+2) / (1+2H) truncated, as multiples of H^k."""
    num = [math.comb(n + 2, k) for k in range(n + 1)]
    out = []
    for k in range(n + 1):
        out.append(sum(num[j] * (-2) ** (k - j) for j in range(k + 1)))
    return [Fraction(x) for x in out[1:]]


def closed_g0_subsets_min(neg_roots, compact_roots, root_set):
    """Minimal size of a nonempty subset of ``neg_roots`` closed under adding compact roots."""
    neg = list(neg_roots)
    negset = set(neg)

    def closed(s):
        for lam in s:
            for e in compact_roots:
                t = tuple(x + y for x, y in zip(lam, e))
                if t in negset and t in root_set and t not in s:
                    return False
        return True

    for size in range(1, len(neg) + 1):
        for combo in itertools.combinations(neg, size):
            if closed(set(combo)):
                return size
    return None


def cominuscule_table(max_rank):
    """(family, rank, node, dimension) from the closed-form table."""
    out = []
    for r in range(1, max_rank + 1):
        for k in range(1, r + 1):
            out.append(("A", r, k, k * (r + 1 - k)))
    for r in range(2, max_rank + 1):
        out.append(("B", r, 1, 2 * r - 1))
        out.append(("C", r, r, r * (r + 1) // 2))
    for r in range(4, max_rank + 1):
        out.append(("D", r, 1, 2 * r - 2))
        out.append(("D", r, r - 1, r * (r - 1) // 2))
        out.append(("D", r, r, r * (r - 1) // 2))
    if max_rank >= 6:
        out += [("E", 6, 1, 16), ("E", 6, 6, 16)]
    return out
