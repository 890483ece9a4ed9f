from fractions import Fraction
from itertools import combinations, product

from hypothesis import assume, given, settings, strategies as st

from torsal.hyperplanes import (HyperplaneArrangement, all_minimal_galleries, compose, face_leq,
                                fill, minimal_gallery, nbc_basis, negate, opposite_chamber,
                                restrict, salvetti_poset, separators, zero_set)
from torsal.lattice import rank

from conftest import chamber


# --- an independent feasibility oracle: Fourier-Motzkin on exact rationals ---

def _feasible(eqs, strict):
    """Is there x with a.x = b for (a, b) in eqs and a.x > b for (a, b) in strict?"""
    eqs = [([Fraction(v) for v in a], Fraction(b)) for a, b in eqs]
    strict = [([Fraction(v) for v in a], Fraction(b)) for a, b in strict]
    n = len(eqs[0][0]) if eqs else (len(strict[0][0]) if strict else 0)
    for var in range(n):
        pivot = next((e for e in eqs if e[0][var]), None)
        if pivot is not None:
            a, b = pivot
            def sub(row):
                c, d = row
                f = c[var] / a[var]
                return [x - f * y for x, y in zip(c, a)], d - f * b
            eqs = [sub(e) for e in eqs if e is not pivot]
            strict = [sub(s) for s in strict]
            continue
        lower = [s for s in strict if s[0][var] > 0]
        upper = [s for s in strict if s[0][var] < 0]
        rest = [s for s in strict if not s[0][var]]
        for (a1, b1), (a2, b2) in product(lower, upper):
            f1, f2 = -a2[var], a1[var]
            rest.append(([f1 * x + f2 * y for x, y in zip(a1, a2)], f1 * b1 + f2 * b2))
        strict = rest
    return all(b == 0 for _, b in eqs) and all(b < 0 for _, b in strict)


def brute_faces(arr):
    out = {}
    for sv in product((-1, 0, 1), repeat=len(arr)):
        eqs, strict = [], []
        for s, n, c in zip(sv, arr.normals, arr.offsets):
            if s == 0:
                eqs.append((n, c))
            else:
                strict.append(([s * x for x in n], s * c))
        if _feasible(eqs, strict):
            zs = [list(arr.normals[i]) for i in range(len(sv)) if sv[i] == 0]
            out[sv] = arr.dim - (rank(zs) if zs else 0)
    return out


def distinct_hyperplanes(draw_list):
    seen = set()
    for n, c in draw_list:
        g = next(x for x in n if x)
        key = (tuple(Fraction(x, g) for x in n), Fraction(c, g))
        if key in seen:
            return False
        seen.add(key)
    return True


def arrangements(central=False, dims=(1, 2, 3), max_n=4):
    def build(d):
        normal = st.lists(st.integers(-2, 2), min_size=d, max_size=d).filter(any)
        offset = st.just(0) if central else st.integers(-2, 2)
        return st.lists(st.tuples(normal, offset), min_size=0, max_size=max_n).filter(
            distinct_hyperplanes).map(lambda hs: HyperplaneArrangement(
                [h[0] for h in hs], [h[1] for h in hs], d))
    return st.sampled_from(dims).flatmap(build)


@settings(max_examples=80, deadline=None)
@given(arrangements())
def test_faces_match_brute_force(arr):
    poset = arr.face_poset
    assert poset.dim == brute_faces(arr)
    for F in poset.faces:
        assert arr.sign_vector(poset.witness[F]) == F


@settings(max_examples=60, deadline=None)
@given(arrangements(dims=(2, 3), max_n=4))
def test_composition_identities(arr):
    poset = arr.face_poset
    faces = poset.faces
    for F, G in product(faces, repeat=2):
        FG = compose(F, G)
        assert FG in poset
        assert compose(FG, G) == FG
    flats = {zero_set(F) for F in faces}
    for X in flats:
        for G, K in product(faces, repeat=2):
            lhs = compose(restrict(G, X), restrict(K, X))
            rhs = restrict(compose(G, K), X)
            assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(arrangements(dims=(2, 3)))
def test_galleries(arr):
    poset = arr.face_poset
    chambers = poset.chambers
    for C, D in product(chambers, repeat=2):
        gal = minimal_gallery(poset, C, D)
        assert gal[0] == C and gal[-1] == D
        assert len(gal) - 1 == len(separators(C, D))
        assert all(X in chambers for X in gal)
        for a, b in zip(gal, gal[1:]):
            assert sum(1 for x, y in zip(a, b) if x != y) == 1
            assert poset.adjacent(a, b)
        crossed = [separators(a, b)[0] for a, b in zip(gal, gal[1:])]
        assert sorted(crossed) == sorted(separators(C, D))
        assert gal in all_minimal_galleries(poset, C, D)


@settings(max_examples=30, deadline=None)
@given(arrangements(dims=(1, 2), max_n=3))
def test_salvetti_order(arr):
    sal = salvetti_poset(arr)
    cells = sal.cells
    for x in cells:
        assert sal.leq(x, x)
    for x, y in product(cells, repeat=2):
        if x != y and sal.leq(x, y):
            assert not sal.leq(y, x)
            assert sal.dim(x) < sal.dim(y)
            for z in cells:
                if sal.leq(y, z):
                    assert sal.leq(x, z)
    counts = {}
    for G in arr.face_poset.faces:
        k = arr.face_poset.codim(G)
        counts[k] = counts.get(k, 0) + len(arr.face_poset.chambers_above(G))
    assert sal.counts() == [counts.get(k, 0) for k in range(max(counts) + 1)]


def test_central_lines_give_2n_chambers():
    for n in range(1, 6):
        normals = [(1, k) for k in range(n)]
        assert len(HyperplaneArrangement(normals).face_poset.chambers) == 2 * n


def characteristic_coefficients(vectors, d):
    """|coefficient of t^(d-k)| of the characteristic polynomial, k = 0..d."""
    coeff = [0] * (d + 1)
    for size in range(len(vectors) + 1):
        for sub in combinations(vectors, size):
            r = rank([list(v) for v in sub]) if sub else 0
            coeff[r] += (-1) ** size
    return [abs(c) for c in coeff]


@settings(max_examples=80, deadline=None)
@given(arrangements(central=True, dims=(2, 3), max_n=5))
def test_nbc_counts_match_characteristic_polynomial(arr):
    assume(len(arr) > 0)
    vecs = [tuple(n) for n in arr.normals]
    nbc = nbc_basis(vecs)
    by_size = [0] * (arr.dim + 1)
    for s in nbc:
        by_size[len(s)] += 1
    assert by_size == characteristic_coefficients(vecs, arr.dim)
    reverse = nbc_basis(vecs, list(reversed(range(len(vecs)))))
    assert len(reverse) == len(nbc)


# --- the example's linear arrangement W0: x0 = 0, W1: x0 + 2 x1 = 0, W2: x1 = 0 ---

A0 = HyperplaneArrangement([(1, 0), (1, 2), (0, 1)])
B0 = chamber("-++")
B1 = chamber("--+")


def test_example_face_poset():
    poset = A0.face_poset
    assert len(poset) == 13
    assert poset.counts() == [1, 6, 6]
    assert A0.sign_vector((-1, 1)) == B0
    assert A0.sign_vector((-3, 1)) == B1
    assert B0 in poset.chambers and B1 in poset.chambers
    assert HyperplaneArrangement([], dim=2).face_poset.faces == [()]


def test_compose_examples():
    origin = (0, 0, 0)
    assert compose(origin, B0) == B0
    for F in A0.face_poset.faces:
        assert compose(F, F) == F
        assert compose(F, B1) == B1


def test_restrict_examples():
    assert restrict(B0, (0, 1, 2)) == B0
    assert restrict(B0, (0,)) == (-1,)
    assert restrict((0, 0, 0), (1, 2)) == (0, 0)


def test_separators_examples():
    assert separators(B0, B0) == ()
    assert separators(B0, B1) == (1,)
    assert separators(B0, negate(B0)) == (0, 1, 2)


def test_opposite_chamber_examples():
    poset = A0.face_poset
    assert opposite_chamber(poset, B0, ()) == B0
    assert opposite_chamber(poset, B0, (0,)) == chamber("+++")
    assert A0.sign_vector((1, 1)) == chamber("+++")
    for C in poset.chambers:
        assert opposite_chamber(poset, C, (0, 1, 2)) == negate(C)


def test_minimal_gallery_examples():
    poset = A0.face_poset
    assert minimal_gallery(poset, B0, B0) == [B0]
    target = opposite_chamber(poset, negate(B0), (0,))
    assert target == chamber("---")
    gal = minimal_gallery(poset, B0, target)
    assert gal == [B0, B1, chamber("---")]
    assert [separators(a, b) for a, b in zip(gal, gal[1:])] == [(1,), (2,)]
    for C in poset.chambers:
        assert len(minimal_gallery(poset, C, negate(C))) - 1 == 3


def test_salvetti_examples():
    assert salvetti_poset(HyperplaneArrangement([], dim=2)).counts() == [1]
    assert salvetti_poset(HyperplaneArrangement([(1,)])).counts() == [2, 2]
    assert salvetti_poset(A0).counts() == [6, 12, 6]


def test_fill_examples():
    poset = A0.face_poset
    ray = (0, 1, 1)
    assert ray in poset
    images = [fill((0, 1, 2), (0,), ray, K) for K in [(-1,), (1,)]]
    assert images == [chamber("-++"), chamber("+++")]
    assert all(X in poset.chambers and face_leq(ray, X) for X in images)
    assert fill((0, 1, 2), (), ray, ()) == ray
    for F in poset.faces:
        assert fill((0, 1, 2), (0, 1, 2), (0, 0, 0), F) == F


def test_nbc_examples():
    assert nbc_basis([(1, 0), (0, 1)], [1, 0])[-1] == (1, 0)
    assert [s for s in nbc_basis([(1, 0), (0, 1)]) if len(s) == 2] == [(0, 1)]
    vecs = [(1, 0), (1, 2), (0, 1)]
    top = [s for s in nbc_basis(vecs, [2, 0, 1]) if len(s) == 2]
    assert top == [(2, 0), (2, 1)]
    top = [s for s in nbc_basis(vecs, [0, 1, 2]) if len(s) == 2]
    assert top == [(0, 1), (0, 2)]
