"""Machine checks of the structural statements about the generators.

Each suite returns a list of Check records; nothing raises on a failed
mathematical check, so a report can always be printed in full.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from .generators import Generators, build_choices, induced_generators, sign_word
from .homology import ChainMap, Nerve, add_chains, cup, pair
from .hyperplanes import adjacent_to_flat, separators
from .lattice import elementary_divisors, rank, saturation, solve_rational
from .toric import (ProjectionFunctor, TranslationFunctor, component_contains,
                    quotient_functor, subarrangement_functor)


@dataclass
class Check:
    suite: str
    name: str
    status: str          # pass, fail, inapplicable or note
    detail: str = ""


def _check(suite, name, ok, detail=""):
    return Check(suite, name, "pass" if ok else "fail", detail)


def _perm_sign(seq, target):
    idx = [seq.index(x) for x in target]
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign


def _minor(M, rows, cols):
    """Determinant of a small square submatrix (Leibniz expansion)."""
    n = len(rows)
    if n == 0:
        return 1
    total = 0
    for p in permutations(range(n)):
        term = _perm_sign(list(range(n)), list(p))
        for i in range(n):
            term *= M[rows[i]][cols[p[i]]]
            if not term:
                break
        total += term
    return total


def _class_equal(gen, a, b, k):
    H = gen.homology(k)
    return H.evaluate(a) == H.evaluate(b)


# --- chains ----------------------------------------------------------------------

def chain_suite(gen):
    arr = gen.arr
    nerve = gen.nerve
    poset = arr.a0.face_poset
    out = []
    lines = [L for L in arr.layers if L.dim == 1]
    for M in lines:
        for B in poset.chambers:
            lam = gen.lambda_chain(M, B)
            out.append(_check("chains", "boundary Lambda %s %s" % (M.name, sign_word(B)),
                              not nerve.boundary_of_chain(lam, 1)))
            RM = gen.choices.R[M.index]
            for f in gen.faces_in(M):
                F = gen.fc.faces[f]
                if F.dim:
                    continue
                p = gen.path(M, f, B)
                shared = [k for k, j in enumerate(F.local) if j in M.flat]
                ok = all(cell[1][k] == RM[F.local[k]] and cell[0][k] in (0, RM[F.local[k]])
                         for cell in p["vertices"] + p["edges"] for k in shared)
                out.append(_check("chains", "path keeps R_M signs %s at %d" % (M.name, f), ok))
                for j in p["walls"]:
                    h = next(h for h in range(len(arr.hypertori))
                             if arr.a0_of[h] == j and F.label[h][1] == 0)
                    xi = gen.xi_chain(h, B, f, M)
                    i = p["walls"].index(j)
                    W = p["edges"][i][0]
                    m = gen.fc.morphism(f, W)
                    om = gen.omega_chain(m)
                    s = gen.epsilon(h, B) * gen.eta(h, M)
                    out.append(_check("chains", "Xi = eps*eta*Omega %s %s at %d" % (
                        M.name, arr.hypertori[h].name, f),
                        not nerve.boundary_of_chain(xi, 1) and add_chains((1, xi), (-s, om)) == {}))
                    for B2 in poset.chambers:
                        p2 = gen.path(M, f, B2)
                        sep = B[j] != B2[j]
                        out.append(_check("chains", "bar edge vs other chamber %s %d %s %s" % (
                            M.name, f, sign_word(B), sign_word(B2)),
                            (p["bars"][i] == p2["edges"][i]) == sep))
    for m in gen.fc.morphisms:
        G = gen.fc.faces[m.tgt]
        if G.dim == arr.dim - 1 and len(G.local) == 1:
            om = gen.omega_chain(m.index)
            out.append(_check("chains", "boundary Omega m=%d" % m.index, not nerve.boundary_of_chain(om, 1)))
    out.extend(basis_change_chains(gen))
    return out


def basis_change_chains(gen, pairs=None):
    """Lambda_B - Lambda_B' against the sum of Xi squares, coefficient by coefficient."""
    arr = gen.arr
    poset = arr.a0.face_poset
    out = []
    for M in [L for L in arr.layers if L.dim == 1]:
        for B, B2 in pairs or [(a, b) for a in poset.chambers for b in poset.chambers]:
            lhs = add_chains((1, gen.lambda_chain(M, B)), (-1, gen.lambda_chain(M, B2)))
            terms = []
            for f in gen.faces_in(M):
                F = gen.fc.faces[f]
                if F.dim:
                    continue
                for h, (_, s) in enumerate(F.label):
                    if s or h in M.atoms:
                        continue
                    j = arr.a0_of[h]
                    if B[j] != B2[j]:
                        terms.append((1, gen.xi_chain(h, B, f, M)))
            rhs = add_chains(*terms)
            diff = add_chains((1, lhs), (-1, rhs))
            out.append(_check("chains", "basis change %s %s->%s" % (M.name, sign_word(B), sign_word(B2)),
                              not diff, "" if not diff else "offending: %s" % sorted(diff)[:3]))
    return out


# --- homology ----------------------------------------------------------------

def homology_suite(gen):
    arr = gen.arr
    poset = arr.a0.face_poset
    cx = gen.complex
    out = []
    for k in range(arr.dim + 1):
        H = gen.homology(k)
        out.append(_check("homology", "torsion-free H_%d" % k, not H.torsion, "betti %d" % H.betti))
    names, cycles = gen.global_basis
    duals = gen.global_dual_cocycles()
    ident = [[pair(d, z) for z in cycles] for d in duals]
    n = len(cycles)
    out.append(_check("homology", "global pairing identity",
                      ident == [[int(i == j) for j in range(n)] for i in range(n)]))
    index = abs(_minor([list(v) for v in (gen.torus_class(c) for c in cycles[:arr.dim])],
                       list(range(arr.dim)), list(range(arr.dim))))
    out.append(Check("homology", "global basis integral", "note",
                     "Z-basis" if gen.basis_is_integral() else
                     "rational basis only; lambda-hats span an index-%d sublattice of H_1(T)" % index))
    for L in arr.layers:
        basis = gen.basis_at(L)
        P = basis.pairing_matrix()
        m = len(P)
        out.append(_check("homology", "pairing identity at %s" % L.name,
                          P == [[int(i == j) for j in range(m)] for i in range(m)]))
        out.append(_check("homology", "b_1 at %s = dim + |A_L|" % L.name,
                          basis.local.homology(1).betti == L.dim + len(L.atoms)))
    # basis change up to boundaries
    for M in [L for L in arr.layers if L.dim == 1]:
        sigma = gen.orientation_sign(M)
        for B in poset.chambers:
            for B2 in poset.chambers:
                terms = [(sigma, gen.lambda_chain(M, B)), (-sigma, gen.lambda_chain(M, B2))]
                for f in gen.faces_in(M):
                    F = gen.fc.faces[f]
                    if F.dim:
                        continue
                    for h, (_, s) in enumerate(F.label):
                        if s or h in M.atoms:
                            continue
                        j = arr.a0_of[h]
                        if B[j] != B2[j]:
                            c = sigma * gen.epsilon(h, B) * gen.eta(h, M)
                            terms.append((-c, gen.omega_hat(h)))
                z = add_chains(*terms)
                ok = cx.solve_boundary(1, z) is not None
                out.append(_check("homology", "lambda basis change is a boundary %s %s %s" % (
                    M.name, sign_word(B), sign_word(B2)), ok))
        ref = gen.lambda_chain(M, gen.choices.R[M.index])
        for gal in gen.galleries(M):
            other = gen.lambda_chain(M, gen.choices.R[M.index], gal)
            ok = cx.solve_boundary(1, add_chains((1, ref), (-1, other))) is not None
            out.append(_check("homology", "gallery independence %s %s" % (
                M.name, "/".join(sign_word(C) for C in gal)), ok))
    for h in range(len(arr.hypertori)):
        ref = gen.omega_hat(h)
        for m in gen.fc.morphisms:
            G = gen.fc.faces[m.tgt]
            if G.dim == arr.dim - 1 and G.label[h][1] == 0:
                z = add_chains((1, gen.omega_chain(m.index)), (-1, ref))
                out.append(_check("homology", "Omega independent of m %s m=%d" % (
                    arr.hypertori[h].name, m.index), cx.solve_boundary(1, z) is not None))
        out.append(_check("homology", "omega-hat %s dies in the torus" % arr.hypertori[h].name,
                          not any(gen.torus_class(ref))))
    tor = [gen.torus_class(c) for c in cycles[:arr.dim]]
    out.append(_check("homology", "lambda-hats independent in the torus", rank([list(v) for v in tor]) == arr.dim))
    for L in arr.layers:
        for M in [N for N in arr.layers if N.dim == 1 and arr.layer_leq(L, N)]:
            for B in poset.chambers:
                if not adjacent_to_flat(poset, B, L.flat):
                    continue
                F0 = tuple(0 if j in L.flat else a for j, a in enumerate(B))
                loc = gen.local(L, F0)
                out.append(_check("homology", "Lambda inside S_L %s %s %s" % (L.name, M.name, sign_word(B)),
                                  loc.contains_chain(gen.lambda_chain(M, B), 1)))
    return out


# --- restriction ------------------------------------------------------------------

def restriction_suite(gen):
    arr = gen.arr
    d = arr.dim
    out = []
    for L in arr.layers:
        got = gen.restriction_h1(L)
        want = gen.formula_h1(L)
        out.append(_check("restriction", "phi^* on H^1 matches formulas at %s" % L.name, got == want,
                          "" if got == want else "computed %s formula %s" % (got, want)))
    # the ideal generated by the lambdas goes into the local ideal
    duals = gen.global_dual_cocycles()
    nb = len(gen.choices.base)
    for L in arr.layers:
        ok = True
        for k in range(1, d + 1):
            Hk1 = gen.homology(k - 1)
            for i in range(nb):
                for zeta in (Hk1.cocycles if k > 1 else [gen.unit()]):
                    c = cup(gen.nerve, duals[i], 1, zeta, k - 1) if k > 1 else duals[i]
                    for coeff, name in gen.restrict_class(c, k, L):
                        if coeff and "lambda" not in name:
                            ok = False
        out.append(_check("restriction", "ideal goes to local ideal at %s" % L.name, ok))
    for s in range(1, d + 1):
        for I in combinations(range(d), s):
            tau = gen.torus_monomial(I)
            for L in arr.layers:
                if L.rank > d - s:
                    vals = gen.local(L, gen.layer_face(L)).homology(s).cycles
                    ok = all(pair(tau, w) == 0 for w in vals)
                    out.append(_check("restriction", "torus class %s vanishes at %s" % (I, L.name), ok))
    out.extend(quotient_suite(gen))
    return out


def quotient_suite(gen):
    """Pull-back of omega along the quotient by a layer."""
    arr = gen.arr
    out = []
    H1 = gen.homology(1)
    for L in arr.layers:
        if L.rank == 0:
            continue
        functor = quotient_functor(arr, L)
        tg = induced_generators(functor, gen)
        cm = ChainMap(functor, gen.nerve, tg.nerve)
        for k, h in enumerate(functor.subset):
            pulled = cm.pull(tg.omega_dual(k), 1)
            ok = H1.evaluate(pulled) == H1.evaluate(gen.omega_dual(h))
            out.append(_check("restriction", "quotient pull-back of omega_%s via %s" % (
                arr.hypertori[h].name, L.name), ok))
    return out


# --- omega_{S,L} ---------------------------------------------------------------------

def omega_sl_suite(gen, averaging=True):
    arr = gen.arr
    out = []
    for S, L in gen.omega_slots():
        res = gen.omega_sl(S, L)
        name = gen.omega_sl_name(S, L)
        out.append(_check("omega-sl", "%s exists" % name, res.exists))
        out.append(_check("omega-sl", "%s unique" % name, res.unique))
        out.append(_check("omega-sl", "%s integral" % name, res.integral))
        if not res.exists:
            continue
        c = gen.omega_sl_cocycle(S, L)
        if not S:
            out.append(_check("omega-sl", "%s is the unit" % name, _class_equal(gen, c, gen.unit(), 0)))
        elif len(S) == 1:
            out.append(_check("omega-sl", "%s is omega_H" % name, _class_equal(gen, c, gen.omega_dual(S[0]), 1)))
    if averaging:
        for S, L in gen.omega_slots():
            if len(S) == arr.dim and arr.dim >= 2:
                out.extend(averaging_checks(gen, S, L))
    return out


def averaging_checks(gen, S, L):
    """Sum of translates of omega_{S,L} over Stab(Y) against the split
    product through the quotient by Y, inside Sal(A_S)."""
    sf = subarrangement_functor(gen.arr, S)
    sub = sf.target
    sg = induced_generators(sf, gen)
    Ssub = tuple(sf.subset.index(h) for h in S)
    Lsub = sub.layer_of_point(Ssub, L.base)
    target = sg.omega_sl_cocycle(Ssub, Lsub)
    Hd = sg.homology(len(S))
    group = sub.stabilizer(range(len(sub.hypertori)))
    out = []
    for Y in sub.layers:
        if not 0 < Y.rank < sub.dim:
            continue
        chis = [list(sub.hypertori[h].chi) for h in Y.atoms]
        stab = [g for g in group.elements
                if component_contains(chis, Y.base, tuple(a + b for a, b in zip(Y.base, g)), sub.dim)]
        lhs = {}
        for g in stab:
            cm = ChainMap(TranslationFunctor(sub, g), sg.nerve, sg.nerve)
            for s, v in cm.pull(target, len(S)).items():
                lhs[s] = lhs.get(s, 0) + v
        S1 = [h for h in Ssub if h in Y.atoms]
        S2 = [h for h in Ssub if h not in Y.atoms]
        eps = _perm_sign(list(Ssub), S1 + S2)
        functor = quotient_functor(sub, Y)
        tg = induced_generators(functor, sg)
        point = tg.arr.layers[[i for i, l in enumerate(tg.arr.layers)
                               if l.rank == Y.rank and l.contains_point(functor.project(Y.base))][0]]
        Sbar = tuple(functor.subset.index(h) for h in S1)
        pulled = ChainMap(functor, sg.nerve, tg.nerve).pull(tg.omega_sl_cocycle(Sbar, point), len(S1))
        rhs = pulled
        for k, h in enumerate(S2):
            rhs = cup(sg.nerve, rhs, len(S1) + k, sg.omega_dual(h), 1)
        ok = Hd.evaluate(lhs) == [eps * v for v in Hd.evaluate(rhs)]
        out.append(_check("omega-sl", "averaging identity %s at Y=%s" % (
            gen.omega_sl_name(S, L), Y.name), ok))
    return out


# --- injectivity, generation, module structure ---------------------------------

def injectivity_suite(gen):
    arr = gen.arr
    out = []
    for k in range(arr.dim + 1):
        H = gen.homology(k)
        rows = []
        for L in arr.layers:
            for w in gen.local(L, gen.layer_face(L)).homology(k).cycles:
                rows.append([pair(z, w) for z in H.cocycles])
        r = rank(rows) if rows else 0
        divs = elementary_divisors(rows) if rows and H.betti else []
        out.append(_check("injectivity", "degree %d" % k, r == H.betti,
                          "rank %d of %d, elementary divisors %s" % (r, H.betti, divs)))
    return out


def _span_check(vectors, betti):
    if betti == 0:
        return True, []
    if not vectors:
        return False, []
    divs = elementary_divisors(vectors)
    return len(divs) == betti and all(x == 1 for x in divs), divs


def generation_suite(gen):
    arr = gen.arr
    d = arr.dim
    out = []
    slots = gen.omega_slots()
    for k in range(d + 1):
        H = gen.homology(k)
        vecs = []
        for S, L in slots:
            r = len(S)
            if r > k:
                continue
            om = gen.omega_sl_cocycle(S, L)
            for I in combinations(range(d), k - r):
                c = om if not I else cup(gen.nerve, gen.torus_monomial(I), k - r, om, r)
                vecs.append(H.evaluate(c))
        ok, divs = _span_check(vecs, H.betti)
        out.append(_check("generation", "degree %d" % k, ok,
                          "%d products, elementary divisors %s" % (len(vecs), divs)))
    return out


def module_suite(gen):
    arr = gen.arr
    d = arr.dim
    out = []
    cx = gen.complex
    for L in arr.layers:
        basis = gen.basis_at(L)
        loc = basis.local
        for k in range(d + 1):
            Hk = loc.homology(k)
            vecs = []
            for S in basis.nbc():
                if len(S) > k:
                    continue
                om = gen.omega_product(S)
                for I in combinations(range(d), k - len(S)):
                    c = om if not I else cup(loc.nerve, gen.torus_monomial(I), k - len(S), om, len(S))
                    vecs.append(Hk.evaluate(c))
            ok, divs = _span_check(vecs, Hk.betti)
            out.append(_check("module", "%s degree %d spanned" % (L.name, k), ok, "divisors %s" % divs))
        for h in basis.omega_tori:
            local = gen.local_omega_hat(h, L)
            ok = loc.contains_chain(local, 1) and cx.solve_boundary(
                1, add_chains((1, local), (-1, gen.omega_hat(h)))) is not None
            out.append(_check("module", "omega-hat %s represented in S_%s" % (arr.hypertori[h].name, L.name), ok))
    for h in range(len(arr.hypertori)):
        z = gen.omega_hat(h)
        name = arr.hypertori[h].name
        functor = quotient_functor(arr, gen.hypertorus_layer(h))
        tnerve = Nerve(functor.target.salvetti)
        img = ChainMap(functor, gen.nerve, tnerve).push(z, 1)
        out.append(_check("module", "omega-hat %s nontrivial in the quotient" % name,
                          any(tnerve.complex().homology(1).coordinates(img))))
        out.append(_check("module", "omega-hat %s trivial in the torus" % name, not any(gen.torus_class(z))))
        rest = [i for i in range(len(arr.hypertori)) if i != h]
        if not rest:
            out.append(Check("module", "omega-hat %s dies after deletion" % name, "inapplicable", "no other hypertori"))
            continue
        chis = [list(arr.hypertori[i].chi) for i in rest]
        r = rank(chis)
        if r == arr.dim:
            functor = subarrangement_functor(arr, rest)
        else:
            functor = ProjectionFunctor(arr, rest, saturation(chis, arr.dim), r)
        tnerve = Nerve(functor.target.salvetti)
        img = ChainMap(functor, gen.nerve, tnerve).push(z, 1)
        out.append(_check("module", "omega-hat %s dies after deletion" % name,
                          not any(tnerve.complex().homology(1).coordinates(img))))
    return out


# --- coherence ---------------------------------------------------------------------------

def coherence_suite(arr, q_values=None, chamber=None):
    poset = arr.a0.face_poset
    good = [B for B in poset.chambers if all(adjacent_to_flat(poset, B, L.flat) for L in arr.layers)]
    if chamber is not None and tuple(chamber) not in good:
        return [Check("coherence", "hypothesis", "inapplicable",
                      "chamber %s misses some layer flat" % sign_word(chamber))]
    if not good:
        return [Check("coherence", "hypothesis", "inapplicable",
                      "no chamber whose closure meets every layer flat in full dimension")]
    B = tuple(chamber) if chamber is not None else good[0]
    word = sign_word(B)
    data = {"B": {L.name: word for L in arr.layers},
            "R": {L.name: word for L in arr.layers if L.rank == 1 or L.dim == 1}}
    gen = Generators(arr, build_choices(arr, data))
    out = [Check("coherence", "hypothesis", "pass", "chamber %s" % word)]
    d = arr.dim
    tclass = {}

    def torus(L, n):
        key = (L.index, n)
        if key not in tclass:
            tclass[key] = gen.torus_class(gen.lambda_hat(arr.layers[n], B))
        return tclass[key]

    qs = range(d) if q_values is None else q_values
    for k in range(d + 1):
        H = gen.homology(k)
        for c in H.cocycles:
            for L in arr.layers:
                for q in qs:
                    if L.rank <= q:
                        continue
                    out.append(_check("coherence", "degree %d class, L=%s, q=%d" % (k, L.name, q),
                                      _coherent(gen, c, k, L, q, torus)))
    return out


def _coherent(gen, c, k, L, q, torus):
    arr = gen.arr
    bL = gen.basis_at(L)
    monos, _ = bL.monomials(k)
    lhs = {}
    for coeff, m in zip(bL.express(c, k), monos):
        if coeff and len(m.omegas) == q:
            target = [Lp for Lp in arr.layers if Lp.rank == q and set(m.omegas) <= set(Lp.atoms)
                      and arr.layer_leq(Lp, L)]
            key = (target[0].index, m.lambdas, m.omegas)
            lhs[key] = lhs.get(key, 0) + coeff
    rhs = {}
    NL = bL.lambda_layers
    for Lp in arr.layers:
        if Lp.rank != q or not arr.layer_leq(Lp, L):
            continue
        bP = gen.basis_at(Lp)
        NP = bP.lambda_layers
        # inclusion L into L' on H_1 of the layers, through torus classes
        base = [list(torus(Lp, n)) for n in NP]
        Bm = [solve_rational([list(col) for col in zip(*base)], list(torus(L, n))) for n in NL]
        pm, _ = bP.monomials(k)
        for coeff, m in zip(bP.express(c, k), pm):
            if not coeff or len(m.omegas) != q:
                continue
            for J in combinations(range(len(NL)), len(m.lambdas)):
                w = _minor(Bm, list(J), list(m.lambdas))
                if w:
                    key = (Lp.index, J, m.omegas)
                    rhs[key] = rhs.get(key, 0) + coeff * w
    lhs = {key: v for key, v in lhs.items() if v}
    rhs = {key: v for key, v in rhs.items() if v}
    return lhs == rhs


SUITES = ("chains", "homology", "restriction", "omega-sl", "injectivity", "generation", "coherence", "module")


def run(arr, gen, which="all"):
    chosen = SUITES if which == "all" else (which,)
    out = []
    for name in chosen:
        if name == "chains":
            out += chain_suite(gen)
        elif name == "homology":
            out += homology_suite(gen)
        elif name == "restriction":
            out += restriction_suite(gen)
        elif name == "omega-sl":
            out += omega_sl_suite(gen)
        elif name == "injectivity":
            out += injectivity_suite(gen)
        elif name == "generation":
            out += generation_suite(gen)
        elif name == "coherence":
            out += coherence_suite(arr)
        elif name == "module":
            out += module_suite(gen)
        else:
            raise ValueError("unknown suite %r" % name)
    return out
