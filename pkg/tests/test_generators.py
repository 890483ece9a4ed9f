from fractions import Fraction
from itertools import product

import pytest

from torsal import verify
from torsal.generators import (Generators, build_choices, induced_generators, map_chamber, render,
                               sign_word)
from torsal.homology import add_chains, pair
from torsal.hyperplanes import negate, separators
from torsal.lattice import rank
from torsal.toric import InputError, subarrangement_functor

from conftest import RANDOM, chamber, failures, layer, suite_checks

B0 = chamber("-++")
B1 = chamber("--+")


def vertex_at(arr, name):
    L = layer(arr, name)
    return next(F.index for F in arr.faces.faces if F.dim == 0 and F.support == L.index)


def statuses(checks):
    out = {}
    for c in checks:
        out[c.status] = out.get(c.status, 0) + 1
    return out


# --- choices -------------------------------------------------------------------

def test_choices_of_the_example(example, example_gen):
    ch = example_gen.choices
    assert ch.B[layer(example, "H2").index] == B1
    assert all(ch.B[L.index] == B0 for L in example.layers if L.name != "H2")
    assert [example.layers[i].name for i in ch.base] == ["H0", "H2"]
    assert ch.chamber_name(B0) == "B0" and ch.chamber_name(B1) == "B1"
    poset = example.a0.face_poset
    for M in example.layers:
        if M.dim == 1:
            R = ch.R[M.index]
            F = tuple(0 if j in M.flat else a for j, a in enumerate(R))
            assert poset.dim[F] == 1
            gal = example_gen.gallery(M)
            assert len(gal) - 1 == len(separators(gal[0], gal[-1]))


def test_default_choices(random_generators):
    arr = random_generators.arr
    ch = random_generators.choices
    poset = arr.a0.face_poset
    for L in arr.layers:
        B = ch.B[L.index]
        F = tuple(0 if j in L.flat else a for j, a in enumerate(B))
        assert poset.dim[F] == arr.a0.flat_dimension(L.flat)
        assert len(ch.N[L.index]) == L.dim
    tor = [random_generators.torus_class(random_generators.lambda_hat(arr.layers[i], ch.B[0]))
           for i in ch.base]
    assert rank([list(v) for v in tor]) == arr.dim


@pytest.mark.parametrize("data, message", [
    ({"B": {"nowhere": "-++"}}, "nowhere"),
    ({"B": {"T": "-+"}}, "not a chamber"),
    ({"B": {"H0&H1&H2": "+0+"}}, "not a chamber"),
    ({"B": {"H0": "--+"}}, "H0"),
    ({"base_layers": ["H0", "H0"]}, "independent"),
    ({"orientation": "sideways"}, "orientation"),
])
def test_bad_choices(example, data, message):
    with pytest.raises(InputError, match=message):
        build_choices(example, data)


# --- chains ---------------------------------------------------------------------

def test_path_at_p(example, example_gen):
    f = vertex_at(example, "H0&H1&H2")
    M = layer(example, "H0")
    p = example_gen.path(M, f, B0)
    assert p["vertices"] == [(C, C) for C in (B0, B1, chamber("---"))]
    assert len(p["edges"]) == 2
    assert p["walls"] == [1, 2]
    R = example_gen.choices.R[M.index]
    for cell in p["vertices"] + p["edges"]:
        assert cell[1][0] == R[0] and cell[0][0] in (0, R[0])


def test_path_on_an_edge_is_one_vertex(example, example_gen):
    M = layer(example, "H0")
    lam = example_gen.lambda_chain(M, B0)
    edge_faces = [f for f in example_gen.faces_in(M) if example.faces.faces[f].dim == 1]
    assert edge_faces
    objs = {example.salvetti.morphisms[s[0]][k] for s in lam for k in (0, 1)}
    for f in edge_faces:
        assert len([o for o in objs if example.salvetti.objects[o][0] == f]) == 1


def test_lambda_cycles(example, example_gen):
    nerve = example_gen.nerve
    poset = example.a0.face_poset
    for M in example.layers:
        if M.dim != 1:
            continue
        for B in poset.chambers:
            lam = example_gen.lambda_chain(M, B)
            assert nerve.boundary_of_chain(lam, 1) == {}
    BT = example_gen.choices.B[0]
    tor = [example_gen.torus_class(example_gen.lambda_hat(layer(example, n), BT)) for n in ("H0", "H2")]
    assert [tuple(abs(a) for a in v) for v in tor] == [(0, 1), (1, 0)]
    assert rank([list(v) for v in tor]) == 2


def test_lambda_inside_local_subcategories(example, example_gen):
    poset = example.a0.face_poset
    for L in example.layers:
        for M in example.layers:
            if M.dim != 1 or not example.layer_leq(L, M):
                continue
            for B in poset.chambers:
                F0 = tuple(0 if j in L.flat else a for j, a in enumerate(B))
                if poset.dim.get(F0) != example.a0.flat_dimension(L.flat):
                    continue
                loc = example_gen.local(L, F0)
                assert loc.contains_chain(example_gen.lambda_chain(M, B), 1)


def test_xi_against_other_chambers(example, example_gen):
    nerve = example_gen.nerve
    poset = example.a0.face_poset
    f = vertex_at(example, "H0&H1&H2")
    M = layer(example, "H0")
    for B in poset.chambers:
        p = example_gen.path(M, f, B)
        for i, j in enumerate(p["walls"]):
            h = j  # a0 positions coincide with hypertori here
            xi = example_gen.xi_chain(h, B, f, M)
            assert nerve.boundary_of_chain(xi, 1) == {}
            om = example_gen.omega_chain(example.faces.morphism(f, p["edges"][i][0]))
            s = example_gen.epsilon(h, B) * example_gen.eta(h, M)
            assert add_chains((1, xi), (-s, om)) == {}
            for B2 in poset.chambers:
                p2 = example_gen.path(M, f, B2)
                assert (p["bars"][i] == p2["edges"][i]) == (B[j] != B2[j])


def test_omega_cycles(example, example_gen):
    nerve = example_gen.nerve
    H1 = example_gen.homology(1)
    classes = []
    for h in range(3):
        om = example_gen.omega_hat(h)
        assert nerve.boundary_of_chain(om, 1) == {}
        assert example_gen.torus_class(om) == (0, 0)
        classes.append(H1.coordinates(om))
    assert rank(classes) == 3
    for m in example.faces.morphisms:
        G = example.faces.faces[m.tgt]
        if G.dim == 1:
            assert nerve.boundary_of_chain(example_gen.omega_chain(m.index), 1) == {}


def test_epsilon(example, example_gen):
    for h in range(3):
        R = example_gen.choices.R[example.hypertorus_layer(h).index]
        assert example_gen.epsilon(h, R) == 1
    assert example_gen.choices.R[layer(example, "H0").index] == B0
    assert example_gen.epsilon(0, negate(B0)) == -1
    for C in example.a0.face_poset.chambers:
        assert example_gen.epsilon(0, C) == (1 if C[0] == B0[0] else -1)


def test_basis_change_at_the_chain_level(example, example_gen):
    M = layer(example, "H0")
    assert add_chains((1, example_gen.lambda_chain(M, B0)), (-1, example_gen.lambda_chain(M, B0))) == {}
    diff = add_chains((1, example_gen.lambda_chain(M, B0)), (-1, example_gen.lambda_chain(M, B1)))
    squares = add_chains(*[(1, example_gen.xi_chain(1, B0, vertex_at(example, n), M))
                           for n in ("H0&H1&H2", "H0&H1")])
    assert diff == squares
    assert not failures(verify.basis_change_chains(example_gen))


def test_basis_change_everywhere(random_generators):
    assert not failures(verify.basis_change_chains(random_generators))


# --- degree one bases ------------------------------------------------------------------

def test_global_basis(example_gen):
    names, cycles = example_gen.global_basis
    assert names == ["lambda^H0", "lambda^H2", "omega_H0", "omega_H1", "omega_H2"]
    duals = example_gen.global_dual_cocycles()
    assert [[pair(d, z) for z in cycles] for d in duals] == [[int(i == j) for j in range(5)] for i in range(5)]
    assert example_gen.basis_is_integral()


def test_local_bases(example, example_gen):
    for L in example.layers:
        basis = example_gen.basis_at(L)
        n = len(basis.cycles)
        assert n == L.dim + len(L.atoms) == basis.local.homology(1).betti
        assert basis.pairing_matrix() == [[int(i == j) for j in range(n)] for i in range(n)]


def test_restriction_to_t_is_identity_on_torus_classes(example, example_gen):
    got = example_gen.restriction_h1(layer(example, "T"))
    assert got[:2] == [[1, 0], [0, 1]]
    assert got[2:] == [[0, 0]] * 3


def test_restriction_to_h1(example, example_gen):
    got = example_gen.restriction_h1(layer(example, "H1"))
    assert [abs(r[0]) for r in got[:2]] == [1, 2]
    assert got == example_gen.formula_h1(layer(example, "H1"))


def test_omega_h1_restricts_to_h2_with_coefficient_one(example, example_gen):
    """The coefficient is forced by the basis change relation: only the
    wall of H1 separates B0 from B1, and H1 meets H2 in a single point."""
    H2 = layer(example, "H2")
    cx = example_gen.complex
    diff = add_chains((1, example_gen.lambda_hat(H2, B1)), (-1, example_gen.lambda_hat(H2, B0)))
    signs = [s for s in (1, -1)
             if cx.solve_boundary(1, add_chains((1, diff), (-s, example_gen.omega_hat(1)))) is not None]
    assert len(signs) == 1
    coeff = example_gen.restriction_h1(H2)[3][0]
    assert coeff == signs[0]


def test_restriction_formulas(random_generators):
    for L in random_generators.arr.layers:
        assert random_generators.restriction_h1(L) == random_generators.formula_h1(L)


# --- omega_{S,L} -------------------------------------------------------------------------

def test_omega_sl_low_ranks(example, example_gen):
    unit = example_gen.omega_sl_cocycle((), layer(example, "T"))
    assert example_gen.homology(0).evaluate(unit) == [1]
    H1 = example_gen.homology(1)
    for h in range(3):
        c = example_gen.omega_sl_cocycle((h,), example.hypertorus_layer(h))
        assert H1.evaluate(c) == H1.evaluate(example_gen.omega_dual(h))


def test_omega_sl_at_p(example, example_gen):
    P = layer(example, "H0&H1&H2")
    res = example_gen.omega_sl((2, 0), P)
    assert res.exists and res.unique and res.integral
    assert example.stabilizer((2, 0)).is_trivial()
    c = example_gen.omega_sl_cocycle((2, 0), P)
    assert render(example_gen.restrict_class(c, 2, P)) == "1*omega_H2.omega_H0"
    for L in example.layers:
        if L.index != P.index:
            assert all("lambda" in name for coeff, name in example_gen.restrict_class(c, 2, L) if coeff)


def test_omega_sl_slots(example_gen, random_generators):
    for gen in (example_gen, random_generators):
        for S, L in gen.omega_slots():
            res = gen.omega_sl(S, L)
            assert res.exists and res.unique and res.integral, gen.omega_sl_name(S, L)


def test_averaging_identity(example, example_gen):
    checks = verify.averaging_checks(example_gen, (0, 1), layer(example, "H0&H1&H2"))
    assert checks and not failures(checks)


def test_induced_choices(example, example_gen):
    sf = subarrangement_functor(example, [0, 2])
    assert map_chamber(sf, B0) == (-1, 1)
    sg = induced_generators(sf, example_gen)
    assert sg.choices.B[0] == (-1, 1)


# --- the suites ---------------------------------------------------------------------

@pytest.mark.parametrize("suite", [s for s in verify.SUITES if s != "coherence"])
def test_suites_on_example(suite):
    checks = suite_checks("example", suite)
    assert checks and not failures(checks)


def test_injectivity_details(example_gen):
    checks = verify.injectivity_suite(example_gen)
    assert [c.status for c in checks] == ["pass"] * 3
    assert checks[1].detail.startswith("rank 5 of 5")
    assert checks[2].detail.startswith("rank 7 of 7")


def test_module_structure_details(example_gen):
    names = {c.name: c for c in verify.module_suite(example_gen)}
    assert names["T degree 0 spanned"].status == "pass"
    assert names["H0 degree 1 spanned"].status == "pass"
    assert names["H0&H1&H2 degree 2 spanned"].status == "pass"
    assert example_gen.basis_at(layer(example_gen.arr, "H0&H1&H2")).nbc() == [(), (2,), (0,), (1,), (2, 0), (2, 1)]


def test_coherence(example, boolean_gen):
    full = verify.coherence_suite(example)
    assert [c.status for c in full] == ["inapplicable"]
    checks = verify.coherence_suite(boolean_gen.arr)
    assert checks[0].status == "pass"
    assert statuses(checks) == {"pass": len(checks)}
    zero = verify.coherence_suite(boolean_gen.arr, q_values=[0])
    assert all(c.status == "pass" for c in zero)
    bad = verify.coherence_suite(boolean_gen.arr, chamber=(1, 1, 1))
    assert bad[0].status == "inapplicable"


@pytest.mark.parametrize("index", range(len(RANDOM)), ids=lambda i: "random%d" % i)
@pytest.mark.parametrize("suite", verify.SUITES)
def test_suites_on_corpus(index, suite):
    checks = suite_checks(index, suite)
    assert checks and not failures(checks)


def test_lex_orientation(example):
    gen = Generators(example, build_choices(example, None, "lex"))
    for M in example.layers:
        if M.dim == 1:
            v = gen.torus_class(gen.lambda_hat(M, gen.choices.B[0]))
            lead = next(a for a in v if a)
            assert lead > 0
    assert not failures(verify.restriction_suite(gen))
