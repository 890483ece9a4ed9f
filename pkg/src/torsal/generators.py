"""Explicit (co)homology generators of the toric Salvetti complex.

Everything here works with concrete chains on the nerve of the Salvetti
category.  Cohomology classes are handled through their values on the
integral homology bases computed in ``homology``; since the complexes in
play are torsion free this loses nothing.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .homology import Nerve, add_chains, cup, pair
from .hyperplanes import (adjacent_to_flat, all_minimal_galleries, compose, minimal_gallery,
                          nbc_basis, negate, opposite_chamber, separators)
from .lattice import rank, smith_normal_form, solve_rational
from .toric import InputError, component_contains


SIGN_CHARS = {"+": 1, "-": -1, "0": 0, "p": 1, "m": -1}


def sign_word(C):
    return "".join({1: "+", -1: "-", 0: "0"}[a] for a in C)


def safe_word(C):
    return "".join({1: "p", -1: "m", 0: "0"}[a] for a in C)


# --- choices ---------------------------------------------------------------

@dataclass
class Choices:
    """Chambers and layers fixed once per computation.

    ``B`` and ``R`` map layer indices to chambers of A_0; ``base`` lists
    the 1-dimensional layers M_1..M_d; ``N`` maps a layer to its
    1-dimensional sublayers N_1..N_k.  ``orientation`` is "native" (the
    cycle orientation coming from the gallery) or "lex" (torus image
    lexicographically positive).
    """
    B: dict
    R: dict
    base: list
    N: dict
    orientation: str = "native"
    chamber_names: dict = field(default_factory=dict)
    galleries: dict = field(default_factory=dict)

    def chamber_name(self, C):
        return self.chamber_names.get(tuple(C), safe_word(C))


def _parse_sign(arr, value, names):
    if isinstance(value, str) and value in names:
        return names[value]
    if isinstance(value, str):
        try:
            C = tuple(SIGN_CHARS[c] for c in value)
        except KeyError:
            raise InputError("bad sign vector %r" % value)
    elif isinstance(value, list):
        C = tuple(int(a) for a in value)
    else:
        raise InputError("bad sign vector %r" % (value,))
    if len(C) != len(arr.a0_normals) or C not in arr.a0.face_poset.chambers:
        raise InputError("%r is not a chamber of the linear arrangement" % (value,))
    return C


def one_dim_layers(arr):
    return [L for L in arr.layers if L.dim == 1]


def _greedy_independent(candidates, count):
    chosen = []
    vecs = []
    for L in candidates:
        v = list(L.directions[0])
        if rank(vecs + [v]) > len(vecs):
            vecs.append(v)
            chosen.append(L.index)
        if len(chosen) == count:
            break
    return chosen


def build_choices(arr, data=None, orientation="native"):
    data = dict(data or {})
    poset = arr.a0.face_poset
    names = {}
    for name, value in (data.get("chamber_names") or {}).items():
        names[name] = _parse_sign(arr, value, {})
    layer_index = {L.name: L.index for L in arr.layers}

    def lookup_layer(name):
        if name not in layer_index:
            raise InputError("unknown layer %r" % name)
        return layer_index[name]

    B = {}
    for name, value in (data.get("B") or {}).items():
        B[lookup_layer(name)] = _parse_sign(arr, value, names)
    R = {}
    for name, value in (data.get("R") or {}).items():
        R[lookup_layer(name)] = _parse_sign(arr, value, names)
    for L in arr.layers:
        if L.index not in B:
            B[L.index] = min(C for C in poset.chambers if adjacent_to_flat(poset, C, L.flat))
        elif not adjacent_to_flat(poset, B[L.index], L.flat):
            raise InputError("chamber for %s is not adjacent to its flat" % L.name)
    for L in arr.layers:
        if L.dim == 1 or L.rank == 1:
            if L.index not in R:
                R[L.index] = B[L.index]
            elif not adjacent_to_flat(poset, R[L.index], L.flat):
                raise InputError("R chamber for %s is not adjacent to its flat" % L.name)
    lines = one_dim_layers(arr)
    if "base_layers" in data:
        base = [lookup_layer(n) for n in data["base_layers"]]
        if any(arr.layers[i].dim != 1 for i in base) or len(base) != arr.dim:
            raise InputError("base_layers must list %d one-dimensional layers" % arr.dim)
        if rank([list(arr.layers[i].directions[0]) for i in base]) != arr.dim:
            raise InputError("base_layers are not independent")
    else:
        base = _greedy_independent(lines, arr.dim)
    N = {}
    extra = data.get("N") or {}
    for L in arr.layers:
        if L.rank == 0:
            N[L.index] = list(base)
            continue
        if L.name in extra:
            N[L.index] = [lookup_layer(n) for n in extra[L.name]]
            continue
        inside = [M for M in lines if arr.layer_leq(L, M)]
        N[L.index] = _greedy_independent(inside, L.dim)
        if len(N[L.index]) != L.dim:
            raise InputError("layer %s does not contain enough 1-dimensional layers" % L.name)
    galleries = {}
    for name, seq in (data.get("galleries") or {}).items():
        M = arr.layers[lookup_layer(name)]
        path = [_parse_sign(arr, c, names) for c in seq]
        galleries[M.index] = path
    orientation = data.get("orientation", orientation)
    if orientation not in ("native", "lex"):
        raise InputError("orientation must be native or lex")
    out = Choices(B, R, base, N, orientation, {C: n for n, C in names.items()}, galleries)
    for M_index, path in galleries.items():
        M = arr.layers[M_index]
        start = R[M_index]
        end = opposite_chamber(poset, negate(start), M.flat)
        if path not in all_minimal_galleries(poset, start, end):
            raise InputError("gallery for %s is not a minimal gallery from R to its opposite" % M.name)
    return out


# --- local data ----------------------------------------------------------------

class LocalComplex:
    """Nerve of a full subcategory S_{Y,F0}, with cached homology."""

    def __init__(self, gen, layer, F0):
        self.layer = layer
        self.F0 = F0
        self.objects = gen.sal.subcategory(layer, F0)
        self.nerve = Nerve(gen.sal, self.objects)
        self.complex = self.nerve.complex()
        self._h = {}

    def homology(self, k):
        if k not in self._h:
            self._h[k] = self.complex.homology(k)
        return self._h[k]

    def contains_chain(self, chain, k):
        idx = self.nerve.index[k] if k <= self.nerve.dim else {}
        return all(s in idx for s in chain)


@dataclass
class Monomial:
    lambdas: tuple      # positions into the local lambda list
    omegas: tuple       # hypertorus indices in nbc order
    name: str
    cochain: dict

    @property
    def degree(self):
        return len(self.lambdas) + len(self.omegas)


class LayerBasis:
    """The local basis at a layer and its dual, with monomials in all degrees."""

    def __init__(self, gen, layer):
        self.gen = gen
        self.layer = layer
        arr = gen.arr
        ch = gen.choices
        self.chamber = ch.B[layer.index]
        self.F0 = gen.layer_face(layer)
        self.local = gen.local(layer, self.F0)
        bname = ch.chamber_name(self.chamber)
        self.lambda_layers = list(ch.N[layer.index])
        self.omega_tori = sorted(layer.atoms, key=lambda i: arr.ordering.index(i))
        names = []
        cycles = []
        for n in self.lambda_layers:
            names.append("lambda^%s_%s" % (arr.layers[n].name, bname))
            cycles.append(gen.lambda_hat(arr.layers[n], self.chamber))
        for h in self.omega_tori:
            names.append("omega_%s" % arr.hypertori[h].name)
            cycles.append(gen.local_omega_hat(h, layer))
        self.names = names
        self.cycles = cycles
        for z in cycles:
            assert self.local.contains_chain(z, 1), "basis cycle leaves S_L"
        H1 = self.local.homology(1)
        self.matrix = [[pair(zeta, z) for z in cycles] for zeta in H1.cocycles]
        n = len(cycles)
        if H1.betti != n or rank(self.matrix) != n:
            raise ArithmeticError("local cycles at %s are not a basis" % layer.name)
        self.duals = []
        for i in range(n):
            p = solve_rational([list(col) for col in zip(*self.matrix)], [int(i == j) for j in range(n)])
            self.duals.append(_combine(H1.cocycles, p))
        self._monomials = {}

    def pairing_matrix(self):
        return [[pair(d, z) for z in self.cycles] for d in self.duals]

    def nbc(self):
        arr = self.gen.arr
        vecs = [arr.hypertori[h].chi for h in self.omega_tori]
        sets = nbc_basis(vecs)
        return [tuple(self.omega_tori[i] for i in s) for s in sets]

    def monomials(self, k):
        if k in self._monomials:
            return self._monomials[k]
        arr = self.gen.arr
        nerve = self.local.nerve
        nl = len(self.lambda_layers)
        out = []
        for S in self.nbc():
            a = k - len(S)
            if a < 0 or a > nl:
                continue
            for I in combinations(range(nl), a):
                factors = [self.duals[i] for i in I] + [self.duals[nl + self.omega_tori.index(h)] for h in S]
                names = [self.names[i] for i in I] + ["omega_%s" % arr.hypertori[h].name for h in S]
                c = {v: 1 for v in nerve.simplices[0]} if not factors else factors[0]
                for deg, f in enumerate(factors[1:], start=1):
                    c = cup(nerve, c, deg, f, 1)
                out.append(Monomial(I, S, ".".join(names) if names else "1", c))
        out.sort(key=lambda m: (len(m.omegas), m.lambdas, [arr.ordering.index(h) for h in m.omegas]))
        Hk = self.local.homology(k)
        mat = [[pair(m.cochain, w) for m in out] for w in Hk.cycles]
        if len(out) != Hk.betti or (out and rank(mat) != len(out)):
            raise ArithmeticError("monomials do not form a basis at %s in degree %d" % (self.layer.name, k))
        self._monomials[k] = (out, mat)
        return self._monomials[k]

    def express(self, cochain, k):
        """Coordinates of a k-cocycle (restricted here) in the monomial basis."""
        monos, mat = self.monomials(k)
        if not monos:
            return []
        Hk = self.local.homology(k)
        vals = [pair(cochain, w) for w in Hk.cycles]
        return solve_rational(mat, vals, len(monos))


def _combine(cocycles, coeffs):
    out = {}
    for c, z in zip(coeffs, cocycles):
        if c:
            for s, v in z.items():
                out[s] = out.get(s, 0) + c * v
    return {s: (int(v) if Fraction(v).denominator == 1 else v) for s, v in out.items() if v}


def render(terms):
    """[(coefficient, name)] -> "c*name+c*name"; zero terms are dropped."""
    parts = []
    for c, name in terms:
        if c:
            c = Fraction(c)
            cs = str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)
            parts.append("%s*%s" % (cs, name))
    return "+".join(parts)


# --- the generator engine ----------------------------------------------------

class Generators:
    def __init__(self, arr, choices=None, orientation="native"):
        self.arr = arr
        self.choices = choices if choices is not None else build_choices(arr, None, orientation)
        self.sal = arr.salvetti
        self.fc = arr.faces
        self._locals = {}
        self._bases = {}
        self._homology = {}
        self._lambda = {}
        self._omega_sl = {}

    # basic data ----------------------------------------------------------------

    @cached_property
    def nerve(self):
        return Nerve(self.sal)

    @cached_property
    def complex(self):
        return self.nerve.complex()

    def homology(self, k):
        if k not in self._homology:
            self._homology[k] = self.complex.homology(k)
        return self._homology[k]

    def layer_face(self, layer):
        B = self.choices.B[layer.index]
        return tuple(0 if j in layer.flat else a for j, a in enumerate(B))

    def local(self, layer, F0):
        key = (layer.index, tuple(F0))
        if key not in self._locals:
            self._locals[key] = LocalComplex(self, layer, tuple(F0))
        return self._locals[key]

    def basis_at(self, layer):
        if layer.index not in self._bases:
            self._bases[layer.index] = LayerBasis(self, layer)
        return self._bases[layer.index]

    def faces_in(self, layer):
        out = []
        for F in self.fc.faces:
            atoms = {i for i, (_, s) in enumerate(F.label) if s == 0}
            if set(layer.atoms) <= atoms and layer.contains_point(F.witness):
                out.append(F.index)
        return out

    def torus_class(self, chain):
        """Image in H_1 of the compact torus, as a vector of Z^d."""
        d = self.arr.dim
        out = [0] * d
        for s, c in chain.items():
            shift = self.fc.morphisms[self.sal.morphisms[s[0]][2]].shift
            for i in range(d):
                out[i] += c * shift[i]
        return tuple(out)

    def hypertorus_layer(self, h):
        return self.arr.hypertorus_layer(h)

    def epsilon(self, h, B):
        """+1 when the hyperplane of h does not separate R_h from B."""
        R = self.choices.R[self.hypertorus_layer(h).index]
        j = self.arr.a0_of[h]
        return 1 if R[j] == B[j] else -1

    def eta(self, h, M):
        """+1 when R_M and R_h lie on the same side of the hyperplane of h."""
        R = self.choices.R[self.hypertorus_layer(h).index]
        RM = self.choices.R[M.index]
        j = self.arr.a0_of[h]
        return 1 if R[j] == RM[j] else -1

    # galleries and paths --------------------------------------------------------

    def gallery_ends(self, M):
        poset = self.arr.a0.face_poset
        RM = self.choices.R[M.index]
        return RM, opposite_chamber(poset, negate(RM), M.flat)

    def gallery(self, M):
        if M.index in self.choices.galleries:
            return self.choices.galleries[M.index]
        return minimal_gallery(self.arr.a0.face_poset, *self.gallery_ends(M))

    def galleries(self, M):
        return all_minimal_galleries(self.arr.a0.face_poset, *self.gallery_ends(M))

    def path(self, M, f, B, gallery=None):
        """Path(M; B, F) at the face f inside M.

        Returns a dict with the vertex cells v_i, the edge cells e_i and
        their opposites, and for each edge the crossed A_0 position.
        """
        F = self.fc.faces[f]
        loc = F.local
        chambers = []
        for C in gallery or self.gallery(M):
            c = tuple(C[j] for j in loc)
            if not chambers or chambers[-1] != c:
                chambers.append(c)
        Bl = tuple(B[j] for j in loc)
        verts = [(c, c) for c in chambers]
        edges, bars, walls = [], [], []
        for a, b in zip(chambers, chambers[1:]):
            (i,) = separators(a, b)
            W = tuple(0 if k == i else s for k, s in enumerate(a))
            edges.append((W, compose(Bl, W)))
            bars.append((W, compose(negate(Bl), W)))
            walls.append(loc[i])
        return dict(vertices=verts, edges=edges, bars=bars, walls=walls)

    def _id_arrow(self, f, x, y):
        m = self.fc.identity(f)
        return self.sal.morphism(self.sal.obj(f, x), self.sal.obj(f, y), m)

    def lambda_chain(self, M, B, gallery=None):
        """The cycle Lambda_B^M as a 1-chain, with native orientation."""
        objs = set()
        start = None
        faces = self.faces_in(M)
        vertices = [f for f in faces if self.fc.faces[f].dim == 0]
        P0 = min(vertices)
        for f in faces:
            F = self.fc.faces[f]
            if F.dim == 0:
                p = self.path(M, f, B, gallery)
                for v in p["vertices"]:
                    objs.add(self.sal.obj(f, v))
                for e in p["edges"]:
                    objs.add(self.sal.obj(f, e))
                if f == P0:
                    start = self._id_arrow(f, p["vertices"][0], p["edges"][0])
            else:
                c = tuple(self.choices.R[M.index][j] for j in F.local)
                objs.add(self.sal.obj(f, (c, c)))
        incident = {o: [] for o in objs}
        for i, (a, b, m) in enumerate(self.sal.morphisms):
            if a in objs and b in objs and a != b:
                incident[a].append(i)
                incident[b].append(i)
        if any(len(v) != 2 for v in incident.values()):
            raise ArithmeticError("Lambda subcategory is not a circle")
        chain = {(start,): 1}
        cur = self.sal.morphisms[start][1]
        came = start
        while True:
            nxt = [i for i in incident[cur] if i != came]
            if not nxt:
                nxt = [came]
            i = nxt[0]
            if i == start:
                break
            a, b, _ = self.sal.morphisms[i]
            if a == cur:
                chain[(i,)] = 1
                cur = b
            else:
                chain[(i,)] = -1
                cur = a
            came = i
        if len(chain) != sum(len(v) for v in incident.values()) // 2:
            raise ArithmeticError("Lambda subcategory is not connected")
        return chain

    def orientation_sign(self, M):
        if self.choices.orientation == "native":
            return 1
        v = self.torus_class(self.lambda_chain(M, self.choices.B[M.index]))
        for a in v:
            if a:
                return 1 if a > 0 else -1
        return 1

    def lambda_hat(self, M, B):
        key = (M.index, tuple(B))
        if key not in self._lambda:
            s = self.orientation_sign(M)
            chain = self.lambda_chain(M, B)
            self._lambda[key] = {k: s * v for k, v in chain.items()}
        return self._lambda[key]

    def xi_chain(self, h, B, f, M):
        """Xi(H; B, P): the square at the edge of Path(M; B, P) crossing h."""
        p = self.path(M, f, B)
        j = self.arr.a0_of[h]
        i = p["walls"].index(j)
        v0, v1 = p["vertices"][i], p["vertices"][i + 1]
        e, eb = p["edges"][i], p["bars"][i]
        return add_chains(
            (1, {(self._id_arrow(f, v0, e),): 1}),
            (-1, {(self._id_arrow(f, v1, e),): 1}),
            (1, {(self._id_arrow(f, v1, eb),): 1}),
            (-1, {(self._id_arrow(f, v0, eb),): 1}))

    def omega_chain(self, m):
        """Omega^(m) for a face morphism m whose target is supported on a hypertorus."""
        mm = self.fc.morphisms[m]
        f = mm.src
        F = self.fc.faces[f]
        G = self.fc.faces[mm.tgt]
        if len(G.local) != 1 or G.dim != self.arr.dim - 1:
            raise ValueError("target must be a facet supported on one hypertorus")
        h = next(i for i, (_, s) in enumerate(G.label) if s == 0)
        R = self.choices.R[self.hypertorus_layer(h).index]
        Rl = tuple(R[j] for j in F.local)
        W = mm.sign
        C1 = compose(Rl, W)
        C2 = compose(negate(Rl), W)
        return add_chains(
            (1, {(self._id_arrow(f, (C1, C1), (W, C1)),): 1}),
            (-1, {(self._id_arrow(f, (C2, C2), (W, C1)),): 1}),
            (1, {(self._id_arrow(f, (C2, C2), (W, C2)),): 1}),
            (-1, {(self._id_arrow(f, (C1, C1), (W, C2)),): 1}))

    def omega_hat(self, h):
        """Global omega-hat_H, from the identity of a facet on H."""
        L = self.hypertorus_layer(h)
        f = min(g for g in self.faces_in(L) if self.fc.faces[g].dim == self.arr.dim - 1)
        return self.omega_chain(self.fc.identity(f))

    def local_omega_hat(self, h, layer):
        """omega-hat_H realised inside S_{L, F(L)} for H containing L."""
        if layer.rank == 1:
            return self.omega_hat(h)
        g = min(f for f in self.faces_in(layer) if self.fc.faces[f].support == layer.index)
        G = self.fc.faces[g]
        j = self.arr.a0_of[h]
        poset = self.arr.local_arrangement(G.local).face_poset
        W = min(K for K in poset.faces if [G.local[k] for k, s in enumerate(K) if s == 0] == [j])
        return self.omega_chain(self.fc.morphism(g, W))

    # global basis ---------------------------------------------------------------------

    @cached_property
    def global_basis(self):
        """Names and cycles of the basis of H_1: lambda-hats then omega-hats."""
        arr = self.arr
        T = arr.layers[0]
        BT = self.choices.B[T.index]
        names, cycles = [], []
        for i in self.choices.base:
            names.append("lambda^%s" % arr.layers[i].name)
            cycles.append(self.lambda_hat(arr.layers[i], BT))
        for h in range(len(arr.hypertori)):
            names.append("omega_%s" % arr.hypertori[h].name)
            cycles.append(self.omega_hat(h))
        return names, cycles

    @cached_property
    def global_duals(self):
        """Coordinates (w.r.t. the homology cocycles) of the dual basis."""
        names, cycles = self.global_basis
        H1 = self.homology(1)
        mat = [[pair(zeta, z) for z in cycles] for zeta in H1.cocycles]
        n = len(cycles)
        if H1.betti != n or rank(mat) != n:
            raise ArithmeticError("global cycles are not a basis of H_1")
        out = []
        for i in range(n):
            out.append(solve_rational([list(col) for col in zip(*mat)], [int(i == j) for j in range(n)]))
        return out

    def global_dual_cocycles(self):
        H1 = self.homology(1)
        return [_combine(H1.cocycles, p) for p in self.global_duals]

    def basis_is_integral(self):
        names, cycles = self.global_basis
        H1 = self.homology(1)
        mat = [[pair(zeta, z) for z in cycles] for zeta in H1.cocycles]
        _, D, _ = smith_normal_form(mat)
        return all(D[i][i] == 1 for i in range(len(D)))

    def omega_dual(self, h):
        return self.global_dual_cocycles()[len(self.choices.base) + h]

    def unit(self):
        return {s: 1 for s in self.nerve.simplices[0]}

    def omega_product(self, S):
        """The global cocycle omega_{S_1} cup ... cup omega_{S_r}."""
        if not S:
            return self.unit()
        duals = self.global_dual_cocycles()
        nb = len(self.choices.base)
        c = duals[nb + S[0]]
        for k, h in enumerate(S[1:], start=1):
            c = cup(self.nerve, c, k, duals[nb + h], 1)
        return c

    # restriction ------------------------------------------------------------------

    def restrict_class(self, cochain, k, layer):
        """phi_L^* of a global k-cocycle, in the local monomial basis."""
        basis = self.basis_at(layer)
        monos, _ = basis.monomials(k)
        coeffs = basis.express(cochain, k)
        return [(c, m.name) for c, m in zip(coeffs, monos)]

    def restriction_h1(self, layer):
        """Matrix of phi_L^* on H^1: rows global dual basis, columns local basis."""
        basis = self.basis_at(layer)
        out = []
        for c in self.global_dual_cocycles():
            out.append([pair(c, z) for z in basis.cycles])
        return out

    def lambda_coefficients(self, layer):
        """a_{hi}: lambda-hat^{N_h} = sum_i a_{hi} lambda-hat^{M_i} in the torus."""
        arr = self.arr
        BT = self.choices.B[0]
        base = [self.torus_class(self.lambda_hat(arr.layers[i], BT)) for i in self.choices.base]
        out = []
        for n in self.choices.N[layer.index]:
            v = self.torus_class(self.lambda_hat(arr.layers[n], BT))
            out.append(solve_rational([list(col) for col in zip(*base)], list(v)))
        return out

    def formula_h1(self, layer):
        """phi_L^* on H^1 from the closed formulas (no cochain evaluation)."""
        arr = self.arr
        basis = self.basis_at(layer)
        nb = len(self.choices.base)
        a = self.lambda_coefficients(layer)
        BL = self.choices.B[layer.index]
        BT = self.choices.B[0]
        rows = []
        for i in range(nb):
            row = [a[hh][i] for hh in range(len(basis.lambda_layers))]
            row += [0] * len(basis.omega_tori)
            rows.append(row)
        for h in range(len(arr.hypertori)):
            row = []
            for n in basis.lambda_layers:
                N = arr.layers[n]
                total = 0
                for f in self.faces_in(N):
                    F = self.fc.faces[f]
                    here = [i for i, (_, s) in enumerate(F.label) if s == 0]
                    if h not in here or h in N.atoms:
                        continue
                    j = arr.a0_of[h]
                    if BL[j] != BT[j]:
                        total += self.epsilon(h, BL) * self.eta(h, N) * self.orientation_sign(N)
                row.append(total)
            row += [1 if h == t else 0 for t in basis.omega_tori]
            rows.append(row)
        return rows

    # omega_{S,L} ------------------------------------------------------------------

    def omega_slots(self):
        """All (S, L) with S an nbc set of A[L] of size rk L."""
        out = []
        for L in self.arr.layers:
            for S in self.basis_at(L).nbc() if L.rank else [()]:
                if len(S) == L.rank:
                    out.append((S, L))
        return out

    def support_faces(self, Y):
        """Faces of A_0 spanning the flat of Y."""
        poset = self.arr.a0.face_poset
        return [F for F in poset.faces if tuple(j for j, a in enumerate(F) if a == 0) == Y.flat]

    def omega_sl(self, S, L):
        key = (tuple(S), L.index)
        if key in self._omega_sl:
            return self._omega_sl[key]
        arr = self.arr
        r = len(S)
        Hr = self.homology(r)
        target = self.omega_product(S)
        group = arr.stabilizer(S)
        rows, rhs, log = [], [], []
        for Y in arr.layers:
            Sp = [h for h in S if h in Y.atoms]
            chis = [list(arr.hypertori[h].chi) for h in Sp]
            inside = set(Sp) <= set(L.atoms) and component_contains(chis, Y.base, L.base, arr.dim)
            if inside:
                stab = sum(1 for g in group.elements
                           if component_contains(chis, Y.base, tuple(a + b for a, b in zip(Y.base, g)), arr.dim))
            for F0 in self.support_faces(Y):
                loc = self.local(Y, F0)
                for w in loc.homology(r).cycles:
                    rows.append([pair(z, w) for z in Hr.cocycles])
                    rhs.append(Fraction(pair(target, w), stab) if inside else Fraction(0))
                log.append((Y.name, F0, inside, stab if inside else None))
        sol = solve_rational(rows, rhs, Hr.betti) if rows else [Fraction(0)] * Hr.betti
        unique = rank(rows) == Hr.betti if rows else Hr.betti == 0
        result = OmegaSL(S, L, sol, unique, sol is not None and all(x.denominator == 1 for x in sol), log)
        self._omega_sl[key] = result
        return result

    def omega_sl_cocycle(self, S, L):
        res = self.omega_sl(S, L)
        return _combine(self.homology(len(S)).cocycles, res.coordinates)

    def omega_sl_name(self, S, L):
        names = ",".join(self.arr.hypertori[h].name for h in S)
        return "omega_{%s}@%s" % (names, L.name)

    # the restriction table ----------------------------------------------------------

    def table_rows(self):
        """(row name, degree, global cocycle) in table order."""
        arr = self.arr
        names, _ = self.global_basis
        duals = self.global_dual_cocycles()
        rows = [(names[i], 1, duals[i]) for i in range(len(names))]
        for S, L in self.omega_slots():
            if L.rank >= 2:
                rows.append((self.omega_sl_name(S, L), L.rank, self.omega_sl_cocycle(S, L)))
        return rows

    def restriction_table(self):
        layers = self.arr.layers
        header = ["class"] + ["S_%s" % L.name for L in layers]
        body = []
        for name, k, c in self.table_rows():
            row = [name]
            for L in layers:
                row.append(render(self.restrict_class(c, k, L)))
            body.append(row)
        return header, body

    # torus cohomology ------------------------------------------------------------------

    @cached_property
    def torus_cocycles(self):
        """Integral cocycles tau_1..tau_d on Sal pulled back from the torus,
        dual to the standard basis of H_1(T) = Z^d."""
        from .homology import ChainMap
        from .toric import TorusProjection
        fnerve = Nerve(self.fc)
        H1 = fnerve.complex().homology(1)
        d = self.arr.dim
        disp = []
        for z in H1.cycles:
            v = [0] * d
            for s, c in z.items():
                sh = self.fc.morphisms[s[0]].shift
                for i in range(d):
                    v[i] += c * sh[i]
            disp.append(v)
        taus = []
        for i in range(d):
            tau = {}
            for j, zeta in enumerate(H1.cocycles):
                if disp[j][i]:
                    for s, c in zeta.items():
                        tau[s] = tau.get(s, 0) + disp[j][i] * c
            taus.append({s: c for s, c in tau.items() if c})
        cm = ChainMap(TorusProjection(self.arr), self.nerve, fnerve)
        return [cm.pull(t, 1) for t in taus], disp

    def torus_monomial(self, I):
        taus, _ = self.torus_cocycles
        if not I:
            return self.unit()
        c = taus[I[0]]
        for k, i in enumerate(I[1:], start=1):
            c = cup(self.nerve, c, k, taus[i], 1)
        return c


@dataclass
class OmegaSL:
    S: tuple
    L: object
    coordinates: list
    unique: bool
    integral: bool
    conditions: list

    @property
    def exists(self):
        return self.coordinates is not None


def map_chamber(functor, C):
    """Image under a projection functor of a chamber of the source A_0."""
    src, tgt = functor.source, functor.target
    out = [0] * len(tgt.a0_normals)
    for k, i in enumerate(functor.subset):
        out[tgt.a0_of[k]] = C[src.a0_of[i]] * src.a0_sign[i] * tgt.a0_sign[k]
    return tuple(out)


def induced_generators(functor, gen):
    """Generators on the target of ``functor`` with compatible choices:
    B(T) and every R_H are pushed forward from the source."""
    tgt = functor.target
    data = {"B": {"T": sign_word(map_chamber(functor, gen.choices.B[0]))}, "R": {}}
    for k, i in enumerate(functor.subset):
        R = gen.choices.R[gen.hypertorus_layer(i).index]
        data["R"][tgt.hypertorus_layer(k).name] = sign_word(map_chamber(functor, R))
    return Generators(tgt, build_choices(tgt, data, gen.choices.orientation))


def column_basis_names(gen):
    """Monomial names available in each column of the restriction table."""
    out = {}
    for L in gen.arr.layers:
        basis = gen.basis_at(L)
        names = []
        for k in range(gen.arr.dim + 1):
            names += [m.name for m in basis.monomials(k)[0]]
        out["S_%s" % L.name] = names
    return out
