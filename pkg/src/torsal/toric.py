"""Complexified toric arrangements, their layers, faces and Salvetti category.

Points of the compact torus are angle vectors x in Q^d taken mod Z^d.  A
hypertorus with character chi and offset theta is {<chi, x> = theta mod 1};
its lifts are the hyperplanes <chi, x> = theta + k.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

from .hyperplanes import HyperplaneArrangement, SalvettiPoset, fill, sign
from .lattice import (dot, frac_mod1, floor_frac, hermite_normal_form, integer_kernel,
                      mat_vec, primitive, quotient_group, rank, saturation,
                      solve_linear_integer)


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class Hypertorus:
    name: str
    chi: tuple
    offset: Fraction


@dataclass
class Layer:
    index: int
    name: str
    rank: int
    atoms: tuple
    base: tuple
    directions: list
    annihilator: list
    local: tuple
    flat: tuple

    @property
    def dim(self):
        return len(self.directions)

    def quotient_coords(self, x):
        return tuple(frac_mod1(dot(row, x)) for row in self.annihilator)

    def contains_point(self, x):
        return all((dot(row, x) - dot(row, self.base)).denominator == 1 for row in self.annihilator)


def _to_fraction(value):
    if isinstance(value, dict):
        num, den = value.get("num"), value.get("den")
    elif isinstance(value, (list, tuple)) and len(value) == 2:
        num, den = value
    elif isinstance(value, int) and not isinstance(value, bool):
        num, den = value, 1
    else:
        raise InputError("offset must be {num, den} with integers")
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in (num, den)) or den <= 0:
        raise InputError("offset must be {num, den} with integers and den > 0")
    return frac_mod1(Fraction(num, den))


def component_contains(rows, base, x, ncols):
    """Is x on the component through ``base`` of {<r, y> = <r, base> mod 1}?"""
    if not rows:
        return True
    ann = saturation(rows, ncols)
    return all((dot(r, x) - dot(r, base)).denominator == 1 for r in ann)


class ToricArrangement:
    def __init__(self, dimension, hypertori, ordering=None, essential=True):
        if not isinstance(dimension, int) or isinstance(dimension, bool) or dimension < 0:
            raise InputError("dimension must be a non-negative integer")
        self.dim = dimension
        self.hypertori = []
        seen = {}
        for h in hypertori:
            chi = tuple(h.chi)
            if len(chi) != dimension or not all(isinstance(a, int) and not isinstance(a, bool) for a in chi):
                raise InputError("character of %s must be %d integers" % (h.name, dimension))
            if not any(chi) or not primitive(chi):
                raise InputError("character of %s must be nonzero and primitive" % h.name)
            theta = frac_mod1(h.offset)
            key = self._normal_key(chi, theta)
            if key in seen:
                raise InputError("hypertori %s and %s coincide" % (seen[key], h.name))
            seen[key] = h.name
            self.hypertori.append(Hypertorus(str(h.name), chi, theta))
        names = [h.name for h in self.hypertori]
        if len(set(names)) != len(names):
            raise InputError("hypertorus names must be distinct")
        if essential and rank([list(h.chi) for h in self.hypertori]) != dimension:
            raise InputError("arrangement is not essential (characters must span Q^%d)" % dimension)
        if ordering is None:
            self.ordering = list(range(len(self.hypertori)))
        else:
            pos = {n: i for i, n in enumerate(names)}
            try:
                self.ordering = [pos[n] if isinstance(n, str) else int(n) for n in ordering]
            except KeyError as exc:
                raise InputError("unknown hypertorus in ordering: %s" % exc)
            if sorted(self.ordering) != list(range(len(names))):
                raise InputError("ordering must list every hypertorus once")
        self._setup_a0()

    @staticmethod
    def _normal_key(chi, theta):
        for a in chi:
            if a:
                if a > 0:
                    return chi, theta
                return tuple(-b for b in chi), frac_mod1(-theta)
        return chi, theta

    @classmethod
    def from_json(cls, data, essential=True):
        if not isinstance(data, dict):
            raise InputError("input must be a JSON object")
        try:
            d = data["dimension"]
            raw = data["hypertori"]
        except KeyError as exc:
            raise InputError("missing field %s" % exc)
        if not isinstance(raw, list):
            raise InputError("hypertori must be a list")
        tori = []
        for k, h in enumerate(raw):
            if not isinstance(h, dict) or "chi" not in h:
                raise InputError("hypertorus %d needs a chi field" % k)
            chi = h["chi"]
            if not isinstance(chi, list):
                raise InputError("chi must be a list of integers")
            tori.append(Hypertorus(h.get("name", "H%d" % k), tuple(chi), _to_fraction(h.get("offset", 0))))
        return cls(d, tori, data.get("ordering"), essential=essential)

    def to_json(self):
        out = {
            "dimension": self.dim,
            "hypertori": [{"name": h.name, "chi": list(h.chi),
                           "offset": {"num": h.offset.numerator, "den": h.offset.denominator}}
                          for h in self.hypertori],
        }
        if self.ordering != list(range(len(self.hypertori))):
            out["ordering"] = [self.hypertori[i].name for i in self.ordering]
        return out

    def __len__(self):
        return len(self.hypertori)

    def names(self):
        return [h.name for h in self.hypertori]

    # --- the linear arrangement A_0 -------------------------------------------

    def _setup_a0(self):
        normals = []
        self.a0_of = []
        self.a0_sign = []
        for h in self.hypertori:
            for j, n in enumerate(normals):
                if n == h.chi:
                    self.a0_of.append(j)
                    self.a0_sign.append(1)
                    break
                if n == tuple(-a for a in h.chi):
                    self.a0_of.append(j)
                    self.a0_sign.append(-1)
                    break
            else:
                normals.append(h.chi)
                self.a0_of.append(len(normals) - 1)
                self.a0_sign.append(1)
        self.a0_normals = normals
        self.a0 = HyperplaneArrangement(normals, dim=self.dim)
        self._local_cache = {}
        self._salvetti_cache = {}

    def local_arrangement(self, positions):
        positions = tuple(positions)
        if positions not in self._local_cache:
            self._local_cache[positions] = HyperplaneArrangement(
                [self.a0_normals[j] for j in positions], dim=self.dim)
        return self._local_cache[positions]

    def local_salvetti(self, positions):
        positions = tuple(positions)
        if positions not in self._salvetti_cache:
            self._salvetti_cache[positions] = SalvettiPoset(self.local_arrangement(positions).face_poset)
        return self._salvetti_cache[positions]

    def flat_positions(self, atoms):
        """A_0 hyperplanes containing the linear flat cut out by ``atoms``."""
        if not atoms:
            return ()
        rows = [list(self.hypertori[i].chi) for i in atoms]
        r = rank(rows)
        return tuple(j for j, n in enumerate(self.a0_normals) if rank(rows + [list(n)]) == r)

    # --- layers -----------------------------------------------------------------

    def label(self, x):
        """Per hypertorus: (floor of <chi,x> - theta, 0 if on a lift else 1)."""
        out = []
        for h in self.hypertori:
            v = dot(h.chi, x) - h.offset
            k = floor_frac(v)
            out.append((k, 0 if v == k else 1))
        return tuple(out)

    def _make_layer(self, atoms, point):
        d = self.dim
        rows = [list(self.hypertori[i].chi) for i in atoms]
        directions = integer_kernel(rows, d) if rows else [
            [1 if i == j else 0 for i in range(d)] for j in range(d)]
        if rows:
            sat = saturation(rows, d)
            H, _ = hermite_normal_form(sat)
            ann = [r for r in H if any(r)]
        else:
            ann = []
        q = [frac_mod1(dot(r, point)) for r in ann]
        base = [Fraction(0)] * d
        for j in range(len(ann)):
            e = [1 if i == j else 0 for i in range(len(ann))]
            col = solve_linear_integer(ann, e).solution
            for i in range(d):
                base[i] += q[j] * col[i]
        return dict(atoms=tuple(atoms), base=tuple(base), directions=directions,
                    annihilator=ann, rank=len(ann))

    def _atoms_at(self, directions, point):
        out = []
        for i, h in enumerate(self.hypertori):
            if all(dot(h.chi, v) == 0 for v in directions):
                if (dot(h.chi, point) - h.offset).denominator == 1:
                    out.append(i)
        return tuple(out)

    @cached_property
    def layers(self):
        d = self.dim
        top = self._make_layer((), [Fraction(0)] * d)
        found = {((), ()): top}
        frontier = [top]
        while frontier:
            nxt = []
            for L in frontier:
                B = L["directions"]
                b = L["base"]
                for i, h in enumerate(self.hypertori):
                    if i in L["atoms"]:
                        continue
                    c = [dot(h.chi, v) for v in B]
                    if not any(c):
                        continue
                    g = 0
                    for a in c:
                        g = gcd(g, a)
                    cp = [a // g for a in c]
                    e = solve_linear_integer([cp], [1]).solution
                    rhs = h.offset - dot(h.chi, b)
                    for a in range(g):
                        t = [Fraction(ei) * (rhs + a) / g for ei in e]
                        x = [b[j] + sum(t[m] * B[m][j] for m in range(len(B))) for j in range(d)]
                        rows = [list(self.hypertori[k].chi) for k in L["atoms"] + (i,)]
                        dirs = integer_kernel(rows, d)
                        atoms = self._atoms_at(dirs, x)
                        new = self._make_layer(atoms, x)
                        key = (new["atoms"], tuple(frac_mod1(dot(r, new["base"])) for r in new["annihilator"]))
                        if key not in found:
                            found[key] = new
                            nxt.append(new)
            frontier = nxt
        raw = sorted(found.values(), key=lambda L: (L["rank"], L["base"], L["atoms"]))
        names = self.names()
        groups = {}
        for L in raw:
            groups.setdefault(L["atoms"], []).append(L)
        out = []
        for k, L in enumerate(raw):
            if not L["atoms"]:
                name = "T"
            else:
                name = "&".join(names[i] for i in L["atoms"])
                same = groups[L["atoms"]]
                if len(same) > 1:
                    name += "#%d" % (same.index(L) + 1)
            local = tuple(sorted(set(self.a0_of[i] for i in L["atoms"])))
            out.append(Layer(k, name, L["rank"], L["atoms"], L["base"], L["directions"],
                             L["annihilator"], local, self.flat_positions(L["atoms"])))
        return out

    def layer_by_name(self, name):
        for L in self.layers:
            if L.name == name:
                return L
        raise KeyError(name)

    def layer_leq(self, L, M):
        """L <= M in the layer poset, i.e. M is contained in L."""
        return set(L.atoms) <= set(M.atoms) and L.contains_point(M.base)

    def layer_of_point(self, atoms, x):
        atoms = tuple(sorted(atoms))
        for L in self.layers:
            if L.atoms == atoms and L.contains_point(x):
                return L
        raise LookupError("no layer with atoms %s through %s" % (atoms, x))

    def hypertorus_layer(self, i):
        return self.layer_of_point((i,), self._point_on(i))

    def _point_on(self, i):
        h = self.hypertori[i]
        e = solve_linear_integer([list(h.chi)], [1]).solution
        return tuple(Fraction(a) * h.offset for a in e)

    def stabilizer(self, subset):
        """Component group of the subgroup fixing every hypertorus in ``subset``."""
        return quotient_group([list(self.hypertori[i].chi) for i in subset], self.dim)

    # --- faces -----------------------------------------------------------------

    @cached_property
    def faces(self):
        return FaceCategory(self)

    @cached_property
    def salvetti(self):
        return SalvettiCategory(self)


def _eps(arr, w, u):
    """Step size keeping w + eps*u inside the star of w."""
    eps = Fraction(1)
    for i, h in enumerate(arr.hypertori):
        s = abs(dot(h.chi, u))
        if not s:
            continue
        v = dot(h.chi, w) - h.offset
        r = v - floor_frac(v)
        dist = min(r, 1 - r) if r else Fraction(1)
        eps = min(eps, dist / (2 * s))
    return eps


@dataclass
class TorusFace:
    index: int
    dim: int
    witness: tuple
    label: tuple
    local: tuple
    support: int


@dataclass
class FaceMorphism:
    index: int
    src: int
    tgt: int
    sign: tuple
    shift: tuple

    @property
    def is_identity(self):
        return not any(self.sign)


class FaceCategory:
    """Faces of the compact torus and their boundary attachments.

    A morphism F -> G is a face K of the local arrangement at F; the
    coface of F's lift in direction K is the lift of G shifted by
    ``shift``.
    """

    def __init__(self, arr):
        self.arr = arr
        d = arr.dim
        X = [list(h.chi) for h in arr.hypertori]
        cols = [[X[i][j] for i in range(len(X))] for j in range(d)]
        H, U = hermite_normal_form(cols)
        self._hnf = [(r, next(c for c, a in enumerate(r) if a)) for r in H if any(r)]
        self._hnf_u = U[:len(self._hnf)]
        self.faces = []
        self._by_key = {}
        for L in arr.layers:
            if L.rank != d:
                continue
            poset = arr.local_arrangement(L.local).face_poset
            for K in poset.faces:
                u = poset.witness[K]
                w = tuple(b + _eps(arr, L.base, u) * a for b, a in zip(L.base, u))
                self.locate(w, create=True)
        self.faces.sort(key=lambda F: (F.dim, F.support, F.label))
        old_keys = dict(self._by_key)
        remap = {}
        for k, F in enumerate(self.faces):
            remap[F.index] = k
            F.index = k
        self._by_key = {key: remap[v] for key, v in old_keys.items()}
        self.morphisms = []
        self._lookup = {}
        self.out = [[] for _ in self.faces]
        for F in self.faces:
            poset = arr.local_arrangement(F.local).face_poset
            for K in poset.faces:
                u = poset.witness[K]
                w = tuple(b + _eps(arr, F.witness, u) * a for b, a in zip(F.witness, u))
                G, shift = self.locate(w)
                m = FaceMorphism(len(self.morphisms), F.index, G, K, shift)
                self.morphisms.append(m)
                self._lookup[(F.index, K)] = m.index
                self.out[F.index].append(m.index)
        for m in self.morphisms:
            tgt = self.faces[m.tgt]
            F = self.faces[m.src]
            zero = tuple(p for p, s in zip(F.local, m.sign) if s == 0)
            assert zero == tgt.local

    def _reduce(self, K):
        K = list(K)
        n = [0] * self.arr.dim
        for (row, c), urow in zip(self._hnf, self._hnf_u):
            q = K[c] // row[c]
            if q:
                K = [a - q * b for a, b in zip(K, row)]
                n = [a + q * b for a, b in zip(n, urow)]
        return tuple(K), tuple(n)

    def locate(self, w, create=False):
        """Face containing the point w (in R^d): (face index, shift)."""
        lab = self.arr.label(w)
        ks = [k for k, _ in lab]
        ss = tuple(s for _, s in lab)
        red, n = self._reduce(ks)
        key = (ss, red)
        if key not in self._by_key:
            if not create:
                raise LookupError("point does not lie on a known face")
            wrep = tuple(a - b for a, b in zip(w, n))
            atoms = tuple(i for i, s in enumerate(ss) if s == 0)
            d = self.arr.dim
            rows = [list(self.arr.hypertori[i].chi) for i in atoms]
            dim = d - (rank(rows) if rows else 0)
            local = tuple(sorted(set(self.arr.a0_of[i] for i in atoms)))
            support = self.arr.layer_of_point(atoms, wrep).index
            F = TorusFace(len(self.faces), dim, wrep, tuple(zip(red, ss)), local, support)
            self.faces.append(F)
            self._by_key[key] = F.index
        return self._by_key[key], n

    def __len__(self):
        return len(self.faces)

    def counts(self):
        out = [0] * (self.arr.dim + 1)
        for F in self.faces:
            out[F.dim] += 1
        return out

    def morphism(self, src, sign_vector):
        return self._lookup[(src, tuple(sign_vector))]

    def identity(self, F):
        return self._lookup[(F, tuple(0 for _ in self.faces[F].local))]

    def compose(self, a, b):
        """b after a."""
        ma, mb = self.morphisms[a], self.morphisms[b]
        assert ma.tgt == mb.src
        F = self.faces[ma.src]
        G = self.faces[ma.tgt]
        return self._lookup[(ma.src, fill(F.local, G.local, ma.sign, mb.sign))]

    def displacement(self, m):
        """Vector from the source witness to the target's translate."""
        mm = self.morphisms[m]
        wF = self.faces[mm.src].witness
        wG = self.faces[mm.tgt].witness
        return tuple(g + t - f for f, g, t in zip(wF, wG, mm.shift))

    # category protocol used by the nerve
    def n_objects(self):
        return len(self.faces)

    def arrows(self):
        return [(m.src, m.tgt, m.is_identity) for m in self.morphisms]


class SalvettiCategory:
    """The Grothendieck construction of the Salvetti diagram.

    Objects are pairs (face, cell of the local Salvetti poset).  A morphism
    (F, x) -> (G, y) over m: F -> G exists when x <= i_m(y).
    """

    def __init__(self, arr):
        self.arr = arr
        fc = arr.faces
        self.fc = fc
        self.objects = []
        self.index = {}
        for F in fc.faces:
            sal = arr.local_salvetti(F.local)
            for cell in sal.cells:
                self.index[(F.index, cell)] = len(self.objects)
                self.objects.append((F.index, cell))
        self.morphisms = []
        self._lookup = {}
        for m in fc.morphisms:
            F = fc.faces[m.src]
            G = fc.faces[m.tgt]
            salF = arr.local_salvetti(F.local)
            salG = arr.local_salvetti(G.local)
            for y in salG.cells:
                z = self.push(m.index, y)
                for x in salF.down(z):
                    a = self.index[(F.index, x)]
                    b = self.index[(G.index, y)]
                    key = (a, b, m.index)
                    self._lookup[key] = len(self.morphisms)
                    self.morphisms.append((a, b, m.index))

    def push(self, m, y):
        """D(m)(y): the image of a cell at the target inside the source poset."""
        mm = self.fc.morphisms[m]
        F = self.fc.faces[mm.src]
        G = self.fc.faces[mm.tgt]
        return (fill(F.local, G.local, mm.sign, y[0]), fill(F.local, G.local, mm.sign, y[1]))

    def __len__(self):
        return len(self.objects)

    def obj(self, face, cell):
        return self.index[(face, (tuple(cell[0]), tuple(cell[1])))]

    def morphism(self, a, b, m):
        return self._lookup[(a, b, m)]

    def find(self, a, b, m):
        return self._lookup.get((a, b, m))

    def compose(self, i, j):
        a, b, m = self.morphisms[i]
        b2, c, n = self.morphisms[j]
        assert b == b2
        return self._lookup[(a, c, self.fc.compose(m, n))]

    def object_dim(self, k):
        F, cell = self.objects[k]
        return self.fc.faces[F].dim + self.arr.local_salvetti(self.fc.faces[F].local).dim(cell)

    def n_objects(self):
        return len(self.objects)

    def arrows(self):
        out = []
        for a, b, m in self.morphisms:
            out.append((a, b, a == b and self.fc.morphisms[m].is_identity))
        return out

    def subcategory(self, layer, F0):
        """Objects of S_{L,F0}: faces inside L with cells from S^{F0}.

        ``F0`` is a face of A_0 (sign vector over all of A_0) lying in the
        linear flat of L.
        """
        arr = self.arr
        keep = []
        for k, (f, cell) in enumerate(self.objects):
            F = self.fc.faces[f]
            if not layer.contains_point(F.witness) or not set(layer.atoms) <= _atoms_of(F):
                continue
            F0loc = tuple(F0[j] for j in F.local)
            G, C = cell
            sal = arr.local_salvetti(F.local)
            ok = any(C == _compose_local(B, G) for B in sal.poset.chambers
                     if all(a == 0 or a == b for a, b in zip(F0loc, B)))
            if ok:
                keep.append(k)
        return keep


def _compose_local(C, G):
    return tuple(g if g else c for c, g in zip(C, G))


def _atoms_of(F):
    return {i for i, (_, s) in enumerate(F.label) if s == 0}


# --- functors between Salvetti categories -----------------------------------

class ProjectionFunctor:
    """Salvetti functor induced by keeping a subset of hypertori and
    passing to coordinates y = P x (P integer, mapping Z^d onto Z^r).

    With P the identity this is the sub-arrangement map; with P a basis
    of the annihilator of a layer's directions it is the quotient map.
    """

    def __init__(self, source, subset, coords, target_dim, names=None):
        self.source = source
        self.subset = tuple(subset)
        self.coords = coords
        tori = []
        for i in self.subset:
            h = source.hypertori[i]
            if coords is None:
                chi = h.chi
            else:
                chi = tuple(solve_linear_integer([list(col) for col in zip(*coords)], list(h.chi)).solution)
            tori.append(Hypertorus(h.name, chi, h.offset))
        ordering = [self.subset.index(i) for i in source.ordering if i in self.subset]
        self.target = ToricArrangement(target_dim, tori, ordering)
        self._face_map = {}
        self._sign_maps = {}

    def project(self, x):
        if self.coords is None:
            return tuple(x)
        return tuple(mat_vec(self.coords, list(x)))

    def face(self, f):
        if f not in self._face_map:
            F = self.source.faces.faces[f]
            g, _ = self.target.faces.locate(self.project(F.witness))
            self._face_map[f] = g
        return self._face_map[f]

    def sign_map(self, f):
        """List of (source local position, target local position, factor)."""
        if f not in self._sign_maps:
            src = self.source
            F = src.faces.faces[f]
            G = self.target.faces.faces[self.face(f)]
            pairs = []
            for k, i in enumerate(self.subset):
                if F.label[i][1] != 0:
                    continue
                j = src.a0_of[i]
                jt = self.target.a0_of[k]
                factor = src.a0_sign[i] * self.target.a0_sign[k]
                pairs.append((F.local.index(j), G.local.index(jt), factor))
            pairs.sort(key=lambda p: p[1])
            assert [p[1] for p in pairs] == list(range(len(G.local)))
            self._sign_maps[f] = pairs
        return self._sign_maps[f]

    def map_sign(self, f, K):
        return tuple(K[a] * s for a, _, s in self.sign_map(f))

    def on_object(self, k):
        f, (G, C) = self.source.salvetti.objects[k]
        g = self.face(f)
        return self.target.salvetti.obj(g, (self.map_sign(f, G), self.map_sign(f, C)))

    def on_face_morphism(self, m):
        mm = self.source.faces.morphisms[m]
        return self.target.faces.morphism(self.face(mm.src), self.map_sign(mm.src, mm.sign))

    def on_morphism(self, i):
        a, b, m = self.source.salvetti.morphisms[i]
        return self.target.salvetti.morphism(self.on_object(a), self.on_object(b), self.on_face_morphism(m))


def quotient_functor(arr, layer):
    """Phi_L: Sal(A) -> Sal(A_L / L_0)."""
    return ProjectionFunctor(arr, layer.atoms, layer.annihilator, layer.rank)


def subarrangement_functor(arr, subset):
    return ProjectionFunctor(arr, sorted(subset), None, arr.dim)


class TranslationFunctor:
    """mu_g for a torsion point g fixing every hypertorus."""

    def __init__(self, arr, g):
        self.arr = arr
        self.g = tuple(Fraction(a) for a in g)
        for h in arr.hypertori:
            if dot(h.chi, self.g).denominator != 1:
                raise ValueError("translation does not preserve %s" % h.name)
        self.source = self.target = arr
        self._faces = {}

    def face(self, f):
        if f not in self._faces:
            F = self.arr.faces.faces[f]
            self._faces[f] = self.arr.faces.locate(tuple(a + b for a, b in zip(F.witness, self.g)))[0]
        return self._faces[f]

    def on_object(self, k):
        f, cell = self.arr.salvetti.objects[k]
        return self.arr.salvetti.obj(self.face(f), cell)

    def on_face_morphism(self, m):
        mm = self.arr.faces.morphisms[m]
        return self.arr.faces.morphism(self.face(mm.src), mm.sign)

    def on_morphism(self, i):
        a, b, m = self.arr.salvetti.morphisms[i]
        return self.arr.salvetti.morphism(self.on_object(a), self.on_object(b), self.on_face_morphism(m))

    def on_layer(self, L):
        x = tuple(a + b for a, b in zip(L.base, self.g))
        return self.arr.layer_of_point(L.atoms, x)


class TorusProjection:
    """The functor (F, x) -> F from the Salvetti category to the face category."""

    def __init__(self, arr):
        self.source = arr
        self.arr = arr

    def on_object(self, k):
        return self.arr.salvetti.objects[k][0]

    def on_morphism(self, i):
        return self.arr.salvetti.morphisms[i][2]
