"""Independent oracles for the test suite.

Everything here is deliberately written against different machinery than
the package under test: permutations in one-line notation for the type-A
Coxeter checks, polynomial multiplication for Poincare series, exact
rational elimination and determinant-divisor gcds for integer linear
algebra, and a direct brute-force reading of the admissible-colouring
definition.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

from kmfg import GeneralizedCartanMatrix, build_adm


# ---------------------------------------------------------------------------
# Symmetric groups in one-line notation (tuples p with p[i] = image of i)


def identity_perm(n):
    return tuple(range(n))


def transposition(n, i):
    """The adjacent transposition swapping i and i+1."""
    p = list(range(n))
    p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


def compose(p, q):
    """(p then applied after q): (p o q)(i) = p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(p)))


def perm_from_word(n, word):
    p = identity_perm(n)
    for letter in word:
        p = compose(p, transposition(n, letter))
    return p


def inversions(p):
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def right_descents_perm(p):
    return [i for i in range(len(p) - 1) if p[i] > p[i + 1]]


def all_permutations(n):
    return [tuple(p) for p in itertools.permutations(range(n))]


def all_reduced_words(p, _cache=None):
    """Every reduced word of a permutation, via right-descent recursion."""
    if _cache is None:
        _cache = {}
    if p in _cache:
        return _cache[p]
    n = len(p)
    if p == identity_perm(n):
        result = [()]
    else:
        result = []
        for i in right_descents_perm(p):
            shorter = compose(p, transposition(n, i))
            for word in all_reduced_words(shorter, _cache):
                result.append(word + (i,))
    _cache[p] = result
    return result


def is_subword(small, big):
    """True when ``small`` appears in ``big`` as a not necessarily
    consecutive substring."""
    it = iter(big)
    return all(letter in it for letter in small)


def bruhat_oracle(u, w, cache):
    """Strong order by exhaustive search over all pairs of reduced words."""
    words_u = all_reduced_words(u, cache)
    words_w = all_reduced_words(w, cache)
    return any(is_subword(a, b) for a in words_u for b in words_w)


# ---------------------------------------------------------------------------
# Poincare polynomials


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def q_factorial_coeffs(n):
    """Coefficients of prod_{k=1..n} (1 + q + ... + q^k)."""
    out = [1]
    for k in range(1, n + 1):
        out = poly_mul(out, [1] * (k + 1))
    return out


def degree_product_coeffs(degrees):
    """Coefficients of prod_d (1 + q + ... + q^(d-1))."""
    out = [1]
    for d in degrees:
        out = poly_mul(out, [1] * d)
    return out


# ---------------------------------------------------------------------------
# Exact integer / rational linear algebra


def exact_det(rows):
    """Determinant over exact rationals (fraction Gaussian elimination)."""
    a = [[Fraction(v) for v in row] for row in rows]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            factor = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= factor * a[k][j]
    return det


def _int_det(rows):
    value = exact_det(rows)
    assert value.denominator == 1
    return value.numerator


def minors_gcd_invariant_factors(rows):
    """Invariant factors via determinant divisors: d_k = gcd of all k x k
    minors, factor_k = d_k / d_{k-1}.  Exponential, for small matrices only."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    factors = []
    previous = 1
    for k in range(1, min(nrows, ncols) + 1):
        divisor = 0
        for row_idx in itertools.combinations(range(nrows), k):
            for col_idx in itertools.combinations(range(ncols), k):
                minor = _int_det(
                    [[rows[i][j] for j in col_idx] for i in row_idx]
                )
                divisor = gcd(divisor, minor)
        if divisor == 0:
            break
        factors.append(divisor // previous)
        previous = divisor
    return factors


# ---------------------------------------------------------------------------
# Matrix construction helpers


def gcm_from_edges(n, singles=(), doubles=(), triples=()):
    """Build a generalized Cartan matrix from 1-based edge lists.

    ``singles`` are undirected pairs; ``doubles`` and ``triples`` are
    directed (u, v) with the arrow pointing at v, giving a[u][v] = -1 and
    a[v][u] = -2 or -3.
    """
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for u, v in singles:
        a[u - 1][v - 1] = a[v - 1][u - 1] = -1
    for mult, pairs in ((2, doubles), (3, triples)):
        for u, v in pairs:
            a[u - 1][v - 1] = -1
            a[v - 1][u - 1] = -mult
    return GeneralizedCartanMatrix(tuple(tuple(row) for row in a))


def direct_sum(m1, m2):
    n1, n2 = m1.n, m2.n
    a = [[0] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            a[i][j] = m1.entry(i, j)
    for i in range(n2):
        for j in range(n2):
            a[n1 + i][n1 + j] = m2.entry(i, j)
    return GeneralizedCartanMatrix(tuple(tuple(row) for row in a))


# A rank-16 indefinite diagram with five red, two green and two blue
# parity components: a 3 x 5 grid plus one extra vertex, numbered row by
# row; arrows point at the second vertex of each directed pair.
X_SINGLES = [(2, 3), (7, 4), (10, 13), (14, 15), (13, 16)]
X_DOUBLES = [
    (4, 1),
    (4, 5),
    (6, 3),
    (6, 5),
    (6, 9),
    (8, 7),
    (8, 9),
    (8, 11),
    (10, 7),
    (10, 11),
    (14, 11),
]
X_TRIPLES = [(1, 2), (9, 12)]


def diagram_x():
    return gcm_from_edges(16, X_SINGLES, X_DOUBLES, X_TRIPLES)


# ---------------------------------------------------------------------------
# Admissible colourings straight from the definition


def kappa_brute_force(m):
    """All vertex maps kappa: V -> {1, 2} satisfying the two clauses:
    forced to 1 at any vertex with an asymmetric parity witness, and
    constant on the connected components of the parity graph.  Returned as
    the set of per-component value tuples in canonical component order."""
    n = m.n
    graph = build_adm(m)
    witnessed = [
        any(j != i and m.parity(i, j) == 1 and m.parity(j, i) == -1 for j in range(n))
        for i in range(n)
    ]
    admissible = set()
    for assignment in itertools.product((1, 2), repeat=n):
        if any(witnessed[i] and assignment[i] == 2 for i in range(n)):
            continue
        if any(
            len({assignment[v] for v in comp}) != 1 for comp in graph.components
        ):
            continue
        admissible.add(tuple(assignment[comp[0]] for comp in graph.components))
    return admissible
