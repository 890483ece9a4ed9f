"""Nerves of acyclic categories, integral (co)homology with explicit
representatives, cup products and induced chain maps.

Simplices of degree k >= 1 are tuples of k composable non-identity
morphism ids; 0-simplices are 1-tuples holding an object id.  Chains and
cochains are dicts keyed by simplices.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

from .lattice import smith_normal_form, solve_linear_integer


class Nerve:
    def __init__(self, category, objects=None, max_dim=None):
        self.category = category
        arrows = category.arrows()
        self.src = [a for a, _, _ in arrows]
        self.tgt = [b for _, b, _ in arrows]
        keep = set(range(category.n_objects())) if objects is None else set(objects)
        self.objects = sorted(keep)
        out = {}
        for i, (a, b, ident) in enumerate(arrows):
            if not ident and a in keep and b in keep:
                out.setdefault(a, []).append(i)
        self.simplices = [[(x,) for x in self.objects]]
        cur = [(i,) for x in self.objects for i in out.get(x, [])]
        k = 1
        while cur and (max_dim is None or k <= max_dim):
            self.simplices.append(cur)
            nxt = []
            for s in cur:
                for i in out.get(self.tgt[s[-1]], []):
                    nxt.append(s + (i,))
            cur = nxt
            k += 1
        self.index = [{s: n for n, s in enumerate(level)} for level in self.simplices]
        self._compose = {}

    @property
    def dim(self):
        return len(self.simplices) - 1

    def count(self, k):
        return len(self.simplices[k]) if k < len(self.simplices) else 0

    def compose(self, i, j):
        key = (i, j)
        if key not in self._compose:
            self._compose[key] = self.category.compose(i, j)
        return self._compose[key]

    def face(self, s, k, i):
        """i-th face of the k-simplex s."""
        if k == 1:
            return (self.tgt[s[0]],) if i == 0 else (self.src[s[0]],)
        if i == 0:
            return s[1:]
        if i == k:
            return s[:-1]
        return s[:i - 1] + (self.compose(s[i - 1], s[i]),) + s[i + 1:]

    def boundary(self, s, k):
        out = {}
        if k == 0:
            return out
        for i in range(k + 1):
            f = self.face(s, k, i)
            out[f] = out.get(f, 0) + (-1 if i % 2 else 1)
        return {f: c for f, c in out.items() if c}

    def boundary_of_chain(self, chain, k):
        out = {}
        for s, c in chain.items():
            for f, v in self.boundary(s, k).items():
                out[f] = out.get(f, 0) + c * v
        return {f: c for f, c in out.items() if c}

    def coboundary(self, cochain, k):
        """delta c evaluated on every (k+1)-simplex."""
        out = {}
        for s in self.simplices[k + 1] if k + 1 <= self.dim else []:
            v = sum(c * cochain.get(f, 0) for f, c in self.boundary(s, k + 1).items())
            if v:
                out[s] = v
        return out

    def vertices(self, s, k):
        if k == 0:
            return s
        return (self.src[s[0]],) + tuple(self.tgt[i] for i in s)

    def front(self, s, k, p):
        if p == 0:
            return (self.src[s[0]],) if k else s
        return s[:p]

    def back(self, s, k, q):
        if q == 0:
            return (self.tgt[s[-1]],) if k else s
        return s[k - q:]

    def complex(self):
        return ChainComplex.from_nerve(self)


def pair(cochain, chain):
    return sum(c * cochain.get(s, 0) for s, c in chain.items())


def cup_on_chain(nerve, a, p, b, q, chain):
    """<a cup b, chain> with the Alexander-Whitney formula."""
    k = p + q
    total = 0
    for s, c in chain.items():
        va = a.get(nerve.front(s, k, p), 0)
        if va:
            total += c * va * b.get(nerve.back(s, k, q), 0)
    return total


def cup(nerve, a, p, b, q):
    """The cochain a cup b on every (p+q)-simplex."""
    k = p + q
    out = {}
    if k > nerve.dim:
        return out
    for s in nerve.simplices[k]:
        va = a.get(nerve.front(s, k, p), 0)
        if va:
            vb = b.get(nerve.back(s, k, q), 0)
            if vb:
                out[s] = va * vb
    return out


def add_chains(*terms):
    """Linear combination: add_chains((c1, x1), (c2, x2), ...)."""
    out = {}
    for c, x in terms:
        for s, v in x.items():
            out[s] = out.get(s, 0) + c * v
    return {s: v for s, v in out.items() if v}


def restrict_cochain(cochain, nerve):
    return {s: v for s, v in cochain.items() if any(s in idx for idx in nerve.index)}


# --- functors ---------------------------------------------------------------

class ChainMap:
    """Chain map induced by a functor between categories.

    ``functor`` provides on_object and on_morphism; ``target`` is the nerve
    of the target category.  Simplices hitting an identity collapse to 0.
    """

    def __init__(self, functor, source, target):
        self.functor = functor
        self.source = source
        self.target = target
        arrows = target.category.arrows()
        self._ident = [ident for _, _, ident in arrows]
        self._images = {}

    def _image(self, i):
        if i not in self._images:
            self._images[i] = self.functor.on_morphism(i)
        return self._images[i]

    def simplex(self, s, k):
        if k == 0:
            return (self.functor.on_object(s[0]),)
        img = tuple(self._image(i) for i in s)
        if any(self._ident[i] for i in img):
            return None
        return img

    def push(self, chain, k):
        out = {}
        for s, c in chain.items():
            t = self.simplex(s, k)
            if t is not None:
                out[t] = out.get(t, 0) + c
        return {t: c for t, c in out.items() if c}

    def pull(self, cochain, k):
        out = {}
        for s in self.source.simplices[k] if k <= self.source.dim else []:
            t = self.simplex(s, k)
            if t is not None and cochain.get(t, 0):
                out[s] = cochain[t]
        return out


# --- homology ------------------------------------------------------------------

@dataclass
class Homology:
    """H_k with explicit cycles and dual cocycles.

    ``cycles`` are integral cycles whose classes form a basis of the free
    part; ``cocycles`` are integral cocycles with <cocycles[i], cycles[j]>
    = delta_ij that vanish on the torsion.
    """
    degree: int
    betti: int
    torsion: List[int]
    cycles: List[dict] = field(default_factory=list)
    cocycles: List[dict] = field(default_factory=list)

    def coordinates(self, chain):
        """Class of a cycle in the free part, in the basis ``cycles``."""
        return [pair(z, chain) for z in self.cocycles]

    def evaluate(self, cochain):
        """A cocycle as a vector of its values on ``cycles``."""
        return [pair(cochain, z) for z in self.cycles]

    def cocycle_from(self, values):
        """The cocycle sum_i values[i] * cocycles[i]."""
        out = {}
        for v, z in zip(values, self.cocycles):
            if v:
                for s, c in z.items():
                    out[s] = out.get(s, 0) + v * c
        return {s: c for s, c in out.items() if c}


class ChainComplex:
    def __init__(self, cells, boundaries):
        # cells[k]: list of keys; boundaries[k]: dict key -> {face key: coeff}
        self.cells = cells
        self.boundaries = boundaries
        self._reduced = None

    @classmethod
    def from_nerve(cls, nerve):
        cells = [list(level) for level in nerve.simplices]
        bd = [{s: {} for s in cells[0]}]
        for k in range(1, len(cells)):
            bd.append({s: nerve.boundary(s, k) for s in cells[k]})
        return cls(cells, bd)

    @property
    def top(self):
        return len(self.cells) - 1

    def _reduce(self):
        if self._reduced is not None:
            return self._reduced
        top = self.top
        cols = [dict((s, dict(b)) for s, b in self.boundaries[k].items()) for k in range(top + 1)]
        rows = [dict() for _ in range(top + 1)]
        for k in range(1, top + 1):
            for s, b in cols[k].items():
                for f in b:
                    rows[k].setdefault(f, set()).add(s)
        order = [{s: n for n, s in enumerate(self.cells[k])} for k in range(top + 1)]
        log = []
        for k in range(top, 0, -1):
            for b in self.cells[k]:
                if b not in cols[k]:
                    continue
                col = cols[k][b]
                units = [f for f, v in col.items() if v in (1, -1)]
                if not units:
                    continue
                a = min(units, key=lambda f: (len(rows[k].get(f, ())), order[k - 1][f]))
                w = col[a]
                gamma = {f: v for f, v in col.items() if f != a}
                beta = {y: cols[k][y][a] for y in rows[k].get(a, ()) if y != b}
                log.append((k - 1, a, b, w, gamma, beta))
                for y, by in beta.items():
                    q = by * w
                    cy = cols[k][y]
                    for f, v in col.items():
                        nv = cy.get(f, 0) - q * v
                        if nv:
                            if f not in cy:
                                rows[k].setdefault(f, set()).add(y)
                            cy[f] = nv
                        elif f in cy:
                            del cy[f]
                            rows[k][f].discard(y)
                for f in col:
                    rows[k][f].discard(b)
                del cols[k][b]
                if k + 1 <= top:
                    for y in list(rows[k + 1].get(b, ())):
                        del cols[k + 1][y][b]
                    rows[k + 1].pop(b, None)
                for f in cols[k - 1].get(a, {}):
                    rows[k - 1][f].discard(a)
                del cols[k - 1][a]
                rows[k].pop(a, None)
        alive = [[s for s in self.cells[k] if s in cols[k]] for k in range(top + 1)]
        self._reduced = (cols, alive, log)
        return self._reduced

    def homology(self, k):
        cols, alive, log = self._reduce()
        if k > self.top:
            return Homology(k, 0, [])
        ck = alive[k]
        pos = {s: n for n, s in enumerate(ck)}
        n = len(ck)
        if n == 0:
            return Homology(k, 0, [])
        # B: residual boundary from degree k+1, A: residual boundary of degree k
        B = [[0] * (len(alive[k + 1]) if k + 1 <= self.top else 0) for _ in range(n)]
        if k + 1 <= self.top:
            for j, s in enumerate(alive[k + 1]):
                for f, v in cols[k + 1][s].items():
                    B[pos[f]][j] = v
        prev = alive[k - 1] if k >= 1 else []
        ppos = {s: n for n, s in enumerate(prev)}
        A = [[0] * n for _ in prev]
        if k >= 1:
            for j, s in enumerate(ck):
                for f, v in cols[k][s].items():
                    A[ppos[f]][j] = v
        if B and B[0]:
            U, D, V, Ui = smith_normal_form(B, with_inverse=True)
            divs = [D[i][i] for i in range(min(len(D), len(D[0]))) if D[i][i]]
        else:
            U = [[int(i == j) for j in range(n)] for i in range(n)]
            Ui = [row[:] for row in U]
            divs = []
        r = len(divs)
        torsion = [d for d in divs if d > 1]
        # A'' = A * Ui restricted to the columns r..n-1
        Acols = []
        for j in range(r, n):
            Acols.append([sum(A[i][t] * Ui[t][j] for t in range(n) if Ui[t][j]) for i in range(len(prev))])
        m = n - r
        if prev:
            Amat = [[Acols[j][i] for j in range(m)] for i in range(len(prev))]
            kappa = solve_linear_integer(Amat, [0] * len(prev), m).kernel
        else:
            kappa = [[int(i == j) for i in range(m)] for j in range(m)]
        cycles = []
        for kv in kappa:
            full = [0] * r + list(kv)
            z = {}
            for t in range(n):
                v = sum(Ui[t][j] * full[j] for j in range(n) if full[j])
                if v:
                    z[ck[t]] = v
            cycles.append(z)
        cocycles = []
        if kappa:
            KT = kappa
            for j in range(len(kappa)):
                e = [int(i == j) for i in range(len(kappa))]
                sol = solve_linear_integer(KT, e, m)
                assert sol.integral
                full = [0] * r + sol.solution
                zeta = {}
                for t in range(n):
                    v = sum(full[i] * U[i][t] for i in range(n) if full[i])
                    if v:
                        zeta[ck[t]] = v
                cocycles.append(zeta)
        cycles = [self._lift_cycle(z, k, log) for z in cycles]
        cocycles = [self._lift_cocycle(z, k, log) for z in cocycles]
        return Homology(k, len(cycles), torsion, cycles, cocycles)

    @staticmethod
    def _lift_cycle(z, k, log):
        z = dict(z)
        for j, a, b, w, gamma, beta in reversed(log):
            if j + 1 == k:
                v = -w * sum(c * z.get(y, 0) for y, c in beta.items())
                if v:
                    z[b] = v
        return {s: c for s, c in z.items() if c}

    @staticmethod
    def _lift_cocycle(zeta, k, log):
        zeta = dict(zeta)
        for j, a, b, w, gamma, beta in reversed(log):
            if j == k:
                v = -w * sum(c * zeta.get(i, 0) for i, c in gamma.items())
                if v:
                    zeta[a] = v
        return {s: c for s, c in zeta.items() if c}

    def betti(self, max_degree=None):
        top = self.top if max_degree is None else min(max_degree, self.top)
        return [self.homology(k).betti for k in range(top + 1)]

    def solve_boundary(self, k, z):
        """A (k+1)-chain c over Q with boundary z, or None; integral when
        elimination lands on integers."""
        if k + 1 > self.top:
            return {} if not z else None
        keys = self.cells[k + 1]
        rank_of = {s: n for n, s in enumerate(self.cells[k])}
        cache = self.__dict__.setdefault("_boundary_pivots", {})
        if k not in cache:
            cols = self.boundaries[k + 1]
            pivots = {}
            for j, s in enumerate(keys):
                v = {rank_of[f]: Fraction(c) for f, c in cols[s].items()}
                combo = {j: Fraction(1)}
                _reduce_against(v, combo, pivots)
                if v:
                    pivots[max(v)] = (v, combo)
            cache[k] = pivots
        pivots = cache[k]
        rhs = {rank_of[f]: Fraction(c) for f, c in z.items()}
        combo = {}
        _reduce_against(rhs, combo, pivots)
        if rhs:
            return None
        sol = {keys[j]: -c for j, c in combo.items() if c}
        if all(c.denominator == 1 for c in sol.values()):
            return {s: int(c) for s, c in sol.items()}
        return {s: c for s, c in sol.items()}


def _reduce_against(v, combo, pivots):
    while v:
        low = max(v)
        if low not in pivots:
            return
        pv, pc = pivots[low]
        q = v[low] / pv[low]
        for r, c in pv.items():
            nv = v.get(r, 0) - q * c
            if nv:
                v[r] = nv
            else:
                v.pop(r, None)
        for j, c in pc.items():
            nc = combo.get(j, 0) - q * c
            if nc:
                combo[j] = nc
            else:
                combo.pop(j, None)
