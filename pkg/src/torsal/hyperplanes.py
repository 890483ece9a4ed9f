"""Real hyperplane arrangements through sign vectors.

A hyperplane is a pair (normal, offset) meaning {x : <normal, x> = offset}.
Faces are tuples over {-1, 0, 1}, one entry per hyperplane.  All witness
points are exact rationals.
"""
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .lattice import dot, nullspace, rank, solve_rational


def sign(x):
    return (x > 0) - (x < 0)


def compose(F, G):
    """F_G: take G's sign wherever it is nonzero, F's elsewhere."""
    return tuple(g if g else f for f, g in zip(F, G))


def restrict(F, positions):
    """Restriction of F to the hyperplanes at ``positions``."""
    return tuple(F[i] for i in positions)


def separators(C, D):
    return tuple(i for i, (a, b) in enumerate(zip(C, D)) if a and a == -b)


def negate(F):
    return tuple(-a for a in F)


def zero_set(F):
    return tuple(i for i, a in enumerate(F) if a == 0)


def face_leq(F, G):
    """F lies in the closure of G."""
    return all(a == 0 or a == b for a, b in zip(F, G))


def fill(source_positions, target_positions, Fm, K):
    """The map i_m: a face K of the local arrangement at ``target_positions``
    becomes the face of the arrangement at ``source_positions`` that
    agrees with K there and with Fm elsewhere."""
    lookup = dict(zip(target_positions, K))
    return tuple(lookup[s] if s in lookup else f for s, f in zip(source_positions, Fm))


class FacePoset:
    """Faces of an arrangement with their dimensions and witness points."""

    def __init__(self, arrangement, records):
        self.arrangement = arrangement
        records = sorted(records, key=lambda r: (r[1], r[0]))
        self.faces = [r[0] for r in records]
        self.dim = {r[0]: r[1] for r in records}
        self.witness = {r[0]: r[2] for r in records}
        self.index = {F: i for i, F in enumerate(self.faces)}
        top = max(self.dim.values())
        self.chambers = [F for F in self.faces if self.dim[F] == top]

    def __len__(self):
        return len(self.faces)

    def __contains__(self, F):
        return F in self.index

    def leq(self, F, G):
        return face_leq(F, G)

    def counts(self):
        out = {}
        for F in self.faces:
            out[self.dim[F]] = out.get(self.dim[F], 0) + 1
        return [out.get(k, 0) for k in range(max(out) + 1)]

    def codim(self, F):
        return self.arrangement.dim - self.dim[F]

    def chambers_above(self, F):
        return [C for C in self.chambers if face_leq(F, C)]

    def adjacent(self, C, D):
        return len(separators(C, D)) == 1 and self.wall(C, D) in self.index

    def wall(self, C, D):
        (i,) = separators(C, D)
        return tuple(0 if j == i else a for j, a in enumerate(C))


class HyperplaneArrangement:
    def __init__(self, normals, offsets=None, dim=None):
        self.normals = [tuple(Fraction(a) for a in n) for n in normals]
        if dim is None:
            dim = len(self.normals[0]) if self.normals else 0
        self.dim = dim
        if offsets is None:
            offsets = [0] * len(self.normals)
        self.offsets = [Fraction(c) for c in offsets]
        for n in self.normals:
            if len(n) != dim or not any(n):
                raise ValueError("normals must be nonzero vectors of length %d" % dim)

    def __len__(self):
        return len(self.normals)

    @property
    def is_central(self):
        return all(c == 0 for c in self.offsets)

    def sign_vector(self, x):
        return tuple(sign(dot(n, x) - c) for n, c in zip(self.normals, self.offsets))

    def rank(self):
        return rank([list(n) for n in self.normals])

    def subarrangement(self, positions):
        return HyperplaneArrangement([self.normals[i] for i in positions],
                                     [self.offsets[i] for i in positions], self.dim)

    @cached_property
    def face_poset(self):
        return FacePoset(self, _enumerate_faces(self))

    def flat_dimension(self, positions):
        if not positions:
            return self.dim
        return self.dim - rank([list(self.normals[i]) for i in positions])


# --- face enumeration --------------------------------------------------------

def _affine_param(rows, rhs, n):
    """Parametrize {x : rows x = rhs} as p + B t; None when empty."""
    p = solve_rational(rows, rhs, n)
    if p is None:
        return None
    return p, nullspace(rows, n) if rows else [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]


def _flats(arr):
    """All nonempty intersections, keyed by the set of hyperplanes containing them."""
    n = arr.dim
    out = {(): ([Fraction(0)] * n, [[Fraction(int(i == j)) for i in range(n)] for j in range(n)])}
    frontier = [()]
    while frontier:
        nxt = []
        for key in frontier:
            for h in range(len(arr)):
                if h in key:
                    continue
                idx = tuple(sorted(key + (h,)))
                rows = [list(arr.normals[i]) for i in idx]
                par = _affine_param(rows, [arr.offsets[i] for i in idx], n)
                if par is None:
                    continue
                p, basis = par
                full = tuple(i for i in range(len(arr))
                             if dot(arr.normals[i], p) == arr.offsets[i]
                             and all(dot(arr.normals[i], b) == 0 for b in basis))
                if full not in out:
                    out[full] = (p, basis)
                    nxt.append(full)
        frontier = nxt
    return out


def _enumerate_faces(arr):
    records = {}
    for key, (p, basis) in _flats(arr).items():
        k = len(basis)
        hyps = []
        for i in range(len(arr)):
            if i in key:
                continue
            a = [dot(arr.normals[i], b) for b in basis]
            c = arr.offsets[i] - dot(arr.normals[i], p)
            if any(a):
                hyps.append((a, c))
        for t in _regions(hyps, k):
            x = [p[j] + sum(t[m] * basis[m][j] for m in range(k)) for j in range(arr.dim)]
            sv = arr.sign_vector(x)
            if sv not in records:
                records[sv] = (sv, k, tuple(x))
    return list(records.values())


def _regions(hyps, k):
    """One witness per open region of the affine arrangement ``hyps`` in Q^k."""
    if k == 0:
        return [()]
    if not hyps:
        return [tuple(Fraction(0) for _ in range(k))]
    rows = [a for a, _ in hyps]
    rho = rank(rows)
    if rho < k:
        # not essential: pass to coordinates y = N x with N a row basis
        basis = []
        for a in rows:
            if rank(basis + [a]) > len(basis):
                basis.append(a)
        N = basis
        reduced = []
        for a, c in hyps:
            alpha = solve_rational([list(col) for col in zip(*N)], a, rho)
            reduced.append((alpha, c))
        out = []
        for y in _regions(reduced, rho):
            x = solve_rational(N, list(y), k)
            out.append(tuple(x))
        return out
    vertices = {}
    for sub in combinations(range(len(hyps)), k):
        mat = [hyps[i][0] for i in sub]
        if rank(mat) < k:
            continue
        v = tuple(solve_rational(mat, [hyps[i][1] for i in sub], k))
        vertices[v] = True
    out = {}
    for v in vertices:
        through = [a for a, c in hyps if dot(a, v) == c]
        others = [(a, dot(a, v) - c) for a, c in hyps if dot(a, v) != c]
        for u in _central_chambers(through, k):
            eps = Fraction(1)
            for a, val in others:
                s = dot(a, u)
                if s:
                    eps = min(eps, abs(val) / (2 * abs(s)))
            x = tuple(vi + eps * ui for vi, ui in zip(v, u))
            key = tuple(sign(dot(a, x) - c) for a, c in hyps)
            if key not in out:
                out[key] = x
    return list(out.values())


def _central_chambers(normals, k):
    """One interior direction per chamber of the central arrangement."""
    if not normals:
        return [tuple(Fraction(0) for _ in range(k))]
    if k == 1:
        return [(Fraction(1),), (Fraction(-1),)]
    n1 = [Fraction(a) for a in normals[0]]
    norm = dot(n1, n1)
    p = [a / norm for a in n1]
    basis = nullspace([n1], k)
    hyps = []
    for n in normals[1:]:
        a = [dot(n, b) for b in basis]
        if any(a):
            hyps.append((a, -dot(n, p)))
    out = []
    for t in _regions(hyps, k - 1):
        x = tuple(p[j] + sum(t[m] * basis[m][j] for m in range(k - 1)) for j in range(k))
        out.append(x)
        out.append(tuple(-a for a in x))
    return out


# --- chambers, galleries ----------------------------------------------------

def opposite_chamber(poset, C, flat):
    """op_X(C): flip the signs of C on the hyperplanes containing the flat.

    ``flat`` is the tuple of positions of hyperplanes containing X.  C must
    be adjacent to X, i.e. closure(C) meets X in a set of full dimension.
    """
    F = tuple(0 if i in flat else a for i, a in enumerate(C))
    if F not in poset or poset.dim[F] != poset.arrangement.flat_dimension(flat):
        raise ValueError("chamber is not adjacent to the flat")
    D = tuple(-a if i in flat else a for i, a in enumerate(C))
    assert D in poset
    return D


def minimal_gallery(poset, C, D):
    """Shortest chamber path from C to D; at each step the lexicographically
    smallest admissible next chamber is taken."""
    path = [C]
    cur = C
    chambers = set(poset.chambers)
    while cur != D:
        options = []
        for i in separators(cur, D):
            nxt = tuple(-a if j == i else a for j, a in enumerate(cur))
            if nxt in chambers:
                options.append(nxt)
        cur = min(options)
        path.append(cur)
    return path


def all_minimal_galleries(poset, C, D):
    """Every minimal gallery from C to D, in lexicographic order."""
    chambers = set(poset.chambers)
    out = []

    def walk(path):
        cur = path[-1]
        if cur == D:
            out.append(list(path))
            return
        for nxt in sorted(tuple(-a if j == i else a for j, a in enumerate(cur))
                          for i in separators(cur, D)):
            if nxt in chambers:
                walk(path + [nxt])

    walk([C])
    return out


def adjacent_to_flat(poset, C, flat):
    F = tuple(0 if i in flat else a for i, a in enumerate(C))
    return F in poset and poset.dim[F] == poset.arrangement.flat_dimension(flat)


# --- Salvetti complex -------------------------------------------------------

class SalvettiPoset:
    """Cells [G, C] with G a face below the chamber C.

    Order (vertices minimal): [G', C'] <= [G, C] iff G <= G' and
    C' = C_{G'}.  Cell dimension is the codimension of G.
    """

    def __init__(self, poset):
        self.poset = poset
        cells = []
        for G in poset.faces:
            for C in poset.chambers:
                if face_leq(G, C):
                    cells.append((G, C))
        cells.sort(key=lambda c: (poset.codim(c[0]), c[0], c[1]))
        self.cells = cells
        self.index = {c: i for i, c in enumerate(cells)}

    def __len__(self):
        return len(self.cells)

    def __contains__(self, cell):
        return cell in self.index

    def dim(self, cell):
        return self.poset.codim(cell[0])

    def leq(self, x, y):
        (G1, C1), (G, C) = x, y
        return face_leq(G, G1) and C1 == compose(C, G1)

    def down(self, y):
        """All cells below y, including y."""
        G, C = y
        out = []
        for G1 in self.poset.faces:
            if face_leq(G, G1):
                out.append((G1, compose(C, G1)))
        return out

    def counts(self):
        out = {}
        for c in self.cells:
            k = self.dim(c)
            out[k] = out.get(k, 0) + 1
        return [out.get(k, 0) for k in range(max(out) + 1)]

    def star_of_chamber(self, C):
        """S_C: cells [G, C_G]."""
        return [(G, K) for G, K in self.cells if K == compose(C, G)]

    def above_face(self, F0):
        """S^{F0}: union of S_C over chambers C >= F0."""
        chambers = [C for C in self.poset.chambers if face_leq(F0, C)]
        return [(G, K) for G, K in self.cells if any(K == compose(C, G) for C in chambers)]


def salvetti_poset(arrangement):
    return SalvettiPoset(arrangement.face_poset)


# --- no-broken-circuit sets --------------------------------------------------

def circuits(vectors):
    n = len(vectors)
    out = []
    for size in range(2, n + 1):
        for sub in combinations(range(n), size):
            vs = [list(vectors[i]) for i in sub]
            if rank(vs) == size - 1 and all(
                    rank([v for j, v in enumerate(vs) if j != k]) == size - 1 for k in range(size)):
                out.append(sub)
    return out


def nbc_basis(vectors, order=None):
    """nbc sets of a central arrangement given by its normals.

    ``order`` is a list of positions from least to greatest (defaults to
    the given order).  Each set is returned as a tuple sorted by the
    order; the list is sorted by size, then lexicographically in order
    positions.
    """
    n = len(vectors)
    if order is None:
        order = list(range(n))
    pos = {h: k for k, h in enumerate(order)}
    broken = []
    for circ in circuits(vectors):
        least = min(circ, key=lambda h: pos[h])
        broken.append(frozenset(h for h in circ if h != least))
    out = []
    for size in range(0, n + 1):
        batch = []
        for sub in combinations(range(n), size):
            if size and rank([list(vectors[i]) for i in sub]) < size:
                continue
            s = frozenset(sub)
            if any(b <= s for b in broken):
                continue
            batch.append(tuple(sorted(sub, key=lambda h: pos[h])))
        batch.sort(key=lambda t: [pos[h] for h in t])
        out.extend(batch)
    return out
