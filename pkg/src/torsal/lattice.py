"""Exact integer and rational linear algebra.

Matrices are lists of rows; entries are ints (or Fractions for the
rational helpers).  Nothing here ever touches floating point.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def copy_matrix(M):
    return [list(row) for row in M]


def transpose(M, ncols=None):
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def mat_mul(A, B):
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = [0] * ncols
        for k in range(inner):
            a = row[k]
            if a:
                brow = B[k]
                for j in range(ncols):
                    if brow[j]:
                        new[j] += a * brow[j]
        out.append(new)
    return out


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _min_nonzero(A, start_r, start_c):
    # smallest |entry| in the lower-right block; ties go to the first row, then column
    best = None
    for i in range(start_r, len(A)):
        row = A[i]
        for j in range(start_c, len(row)):
            a = row[j]
            if a and (best is None or abs(a) < best[0]):
                best = (abs(a), i, j)
                if best[0] == 1:
                    return best
    return best


def smith_normal_form(M, with_inverse=False):
    """Return (U, D, V) with U*M*V = D in Smith normal form.

    U and V are unimodular.  With ``with_inverse`` the inverse of U is
    appended as a fourth value.  The pivot is always the entry of
    smallest absolute value in the remaining block.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = copy_matrix(M)
    U = identity(m)
    V = identity(n)
    Ui = identity(m) if with_inverse else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        if Ui is not None:
            for row in Ui:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
        if Ui is not None:
            for row in Ui:
                row[src] -= q * row[dst]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_col(src, dst, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        piv = _min_nonzero(A, t, t)
        if piv is None:
            break
        _, i, j = piv
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # a remainder is now smaller than the pivot; bring it up
                best = None
                for i in range(t, m):
                    a = A[i][t]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), i, t)
                for j in range(t, n):
                    a = A[t][j]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), t, j)
                _, i, j = best
                if i != t:
                    swap_rows(i, t)
                if j != t:
                    swap_cols(j, t)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
            if Ui is not None:
                for row in Ui:
                    row[t] = -row[t]
        t += 1
    if with_inverse:
        return U, A, V, Ui
    return U, A, V


def elementary_divisors(M):
    _, D, _ = smith_normal_form(M)
    out = []
    for i in range(min(len(D), len(D[0]) if D else 0)):
        if D[i][i]:
            out.append(D[i][i])
    return out


def hermite_normal_form(M):
    """Row-style Hermite normal form: returns (H, U) with U*M = H.

    H is in row echelon form, pivots are positive and the entries above
    each pivot lie in [0, pivot).  Zero rows come last.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    H = copy_matrix(M)
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            rows = [i for i in range(r, m) if H[i][c]]
            if not rows:
                break
            i = min(rows, key=lambda k: (abs(H[k][c]), k))
            if i != r:
                H[i], H[r] = H[r], H[i]
                U[i], U[r] = U[r], U[i]
            done = True
            for k in range(r + 1, m):
                if H[k][c]:
                    q = H[k][c] // H[r][c]
                    H[k] = [a - q * b for a, b in zip(H[k], H[r])]
                    U[k] = [a - q * b for a, b in zip(U[k], U[r])]
                    if H[k][c]:
                        done = False
            if done:
                break
        if r < m and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-a for a in H[r]]
                U[r] = [-a for a in U[r]]
            p = H[r][c]
            for k in range(r):
                q = H[k][c] // p
                if q:
                    H[k] = [a - q * b for a, b in zip(H[k], H[r])]
                    U[k] = [a - q * b for a, b in zip(U[k], U[r])]
            r += 1
    return H, U


def _normalize_sign(v):
    for a in v:
        if a:
            return list(v) if a > 0 else [-x for x in v]
    return list(v)


@dataclass
class IntegerSolution:
    """Outcome of solving M x = b.

    ``integral`` tells whether an integer solution exists; ``solution``
    is then an integer vector, otherwise a rational one (or None when
    the system is inconsistent even over Q).  ``kernel`` is a basis of
    the integer kernel of M.
    """
    integral: bool
    solution: Optional[list]
    kernel: List[list] = field(default_factory=list)

    @property
    def consistent(self):
        return self.solution is not None


def solve_linear_integer(M, b, ncols=None):
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    if m == 0:
        return IntegerSolution(True, [0] * n, [[1 if i == j else 0 for i in range(n)] for j in range(n)])
    U, D, V = smith_normal_form(M)
    c = mat_vec(U, b)
    rank = 0
    while rank < min(m, n) and D[rank][rank]:
        rank += 1
    kernel = [_normalize_sign([V[i][j] for i in range(n)]) for j in range(rank, n)]
    if any(c[i] for i in range(rank, m)):
        return IntegerSolution(False, None, kernel)
    y = [Fraction(c[i], D[i][i]) for i in range(rank)] + [Fraction(0)] * (n - rank)
    x = mat_vec(V, y)
    if all(v.denominator == 1 for v in y):
        return IntegerSolution(True, [int(v) for v in x], kernel)
    return IntegerSolution(False, x, kernel)


def integer_kernel(M, ncols):
    """Basis of {x in Z^ncols : M x = 0}; it is saturated."""
    return solve_linear_integer(M, [0] * len(M), ncols).kernel


def saturation(rows, ncols):
    """Basis of (Q-span of rows) intersected with Z^ncols."""
    if not rows:
        return []
    annihilator = integer_kernel(rows, ncols)
    if not annihilator:
        return identity(ncols)
    return integer_kernel(annihilator, ncols)


@dataclass
class FiniteAbelianGroup:
    """Torsion of Z^d / L together with the dual angle representatives.

    ``orders`` are the invariant factors > 1.  ``elements`` lists angle
    vectors g in Q^d with <v,g> integral for every generator v of L, one
    per class modulo Z^d and the real span of the annihilator.
    """
    orders: List[int]
    free_rank: int
    elements: List[tuple]

    @property
    def order(self):
        out = 1
        for k in self.orders:
            out *= k
        return out

    def is_trivial(self):
        return self.order == 1


def quotient_group(generators, ambient_rank):
    d = ambient_rank
    if not generators:
        return FiniteAbelianGroup([], d, [tuple(Fraction(0) for _ in range(d))])
    U, D, V = smith_normal_form(generators)
    divs = []
    for i in range(min(len(D), d)):
        if D[i][i]:
            divs.append(D[i][i])
    rank = len(divs)
    orders = [k for k in divs if k > 1]
    elements = []

    def rec(i, acc):
        if i == rank:
            y = acc + [Fraction(0)] * (d - rank)
            g = mat_vec(V, y)
            elements.append(tuple(x - (x.numerator // x.denominator) for x in g))
            return
        for a in range(divs[i]):
            rec(i + 1, acc + [Fraction(a, divs[i])])

    rec(0, [])
    elements.sort()
    return FiniteAbelianGroup(orders, d - rank, elements)


# --- rational helpers -------------------------------------------------------

def rref(M):
    """Reduced row echelon form over Q; returns (R, pivot_columns)."""
    R = [[Fraction(a) for a in row] for row in M]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [a * inv for a in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def rank(M):
    if not M:
        return 0
    return len(rref(M)[1])


def nullspace(M, ncols):
    """Basis of the rational kernel, as lists of Fractions."""
    if not M:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(M)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        out.append(v)
    return out


def solve_rational(M, b, ncols=None):
    """One rational solution of M x = b, or None if inconsistent."""
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    if m == 0:
        return [Fraction(0)] * n
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return x


def independent_rows(rows):
    """Indices of a greedy maximal independent subset, in order."""
    chosen = []
    basis = []
    for i, v in enumerate(rows):
        if rank(basis + [v]) > len(basis):
            basis.append(v)
            chosen.append(i)
    return chosen


def primitive(v):
    g = 0
    for a in v:
        g = gcd(g, a)
    return g == 1


def frac_mod1(x):
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def floor_frac(x):
    x = Fraction(x)
    return x.numerator // x.denominator
