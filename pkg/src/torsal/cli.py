"""Command line front end.

Exit codes: 0 when everything passes, 1 when a mathematical check fails,
2 on bad input.
"""
import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import verify
from .corpus import corpus
from .generators import Generators, build_choices, column_basis_names
from .tables import compare
from .toric import InputError, ToricArrangement

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def fmt(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def vec(v):
    return "(" + ",".join(fmt(a) for a in v) + ")"


def load_json(path, what):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError("cannot read %s %s: %s" % (what, path, exc.strerror))
    except json.JSONDecodeError as exc:
        raise InputError("%s %s: invalid JSON at line %d column %d: %s" % (
            what, path, exc.lineno, exc.colno, exc.msg))


def load(args):
    data = load_json(args.input, "input")
    arr = ToricArrangement.from_json(data)
    choices = data.get("choices") if isinstance(data, dict) else None
    if args.choices:
        choices = load_json(args.choices, "choices")
    return arr, build_choices(arr, choices)


def emit(args, header, rows, extra=None):
    if args.format == "json":
        doc = {"columns": header, "rows": [dict(zip(header, r)) for r in rows]}
        if extra:
            doc.update(extra)
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print("\t".join(header))
        for r in rows:
            print("\t".join(str(x) for x in r))
        for key, value in (extra or {}).items():
            if isinstance(value, list):
                for item in value:
                    print("# %s\t%s" % (key, item if isinstance(item, str) else json.dumps(item, sort_keys=True)))
            else:
                print("# %s\t%s" % (key, value))


# --- commands ------------------------------------------------------------------

def cmd_layers(args):
    arr, _ = load(args)
    rows = []
    for L in arr.layers:
        atoms = ",".join(arr.hypertori[i].name for i in L.atoms)
        dirs = ";".join(vec(v) for v in L.directions)
        rows.append([L.name, L.rank, vec(L.base), dirs, atoms])
    emit(args, ["layer", "rank", "base", "directions", "hypertori"], rows)
    return EXIT_OK


def cmd_faces(args):
    arr, _ = load(args)
    fc = arr.faces
    rows = []
    for F in fc.faces:
        rows.append([F.index, F.dim, vec(F.witness), arr.layers[F.support].name, len(fc.out[F.index])])
    emit(args, ["face", "dim", "witness", "support", "out_morphisms"], rows,
         {"counts": " ".join(str(c) for c in fc.counts()),
          "linear_faces": " ".join(str(c) for c in arr.a0.face_poset.counts())})
    return EXIT_OK


def cmd_salvetti(args):
    from .homology import Nerve
    arr, _ = load(args)
    sal = arr.salvetti
    by_dim = {}
    for k in range(sal.n_objects()):
        d = sal.object_dim(k)
        by_dim[d] = by_dim.get(d, 0) + 1
    nerve = Nerve(sal, max_dim=args.max_degree)
    rows = [[k, by_dim.get(k, 0), nerve.count(k)] for k in range(max(max(by_dim), nerve.dim) + 1)]
    emit(args, ["degree", "objects", "nerve_simplices"], rows,
         {"morphisms": str(len(sal.morphisms)), "face_morphisms": str(len(arr.faces.morphisms))})
    return EXIT_OK


def _degrees(args, arr):
    top = arr.dim if args.max_degree is None else min(args.max_degree, arr.dim)
    return range(top + 1)


def _torsion(hs):
    return " ".join("[%s]" % ",".join(map(str, h.torsion)) for h in hs)


def cmd_betti(args):
    arr, choices = load(args)
    gen = Generators(arr, choices)
    rows = []
    degs = _degrees(args, arr)
    hs = [gen.homology(k) for k in degs]
    rows.append(["Sal", " ".join(str(h.betti) for h in hs), _torsion(hs)])
    for L in arr.layers:
        loc = gen.local(L, gen.layer_face(L))
        hs = [loc.homology(k) for k in degs]
        rows.append(["S_%s" % L.name, " ".join(str(h.betti) for h in hs),
                     _torsion(hs)])
    emit(args, ["complex", "betti", "torsion"], rows)
    return EXIT_OK


def _reference_issues(args, gen, header, body):
    if not args.reference:
        return None
    ref = load_json(args.reference, "reference table")
    return compare(header, body, ref, column_basis_names(gen))


def cmd_generators(args):
    arr, choices = load(args)
    gen = Generators(arr, choices)
    header, body = gen.restriction_table()
    issues = _reference_issues(args, gen, header, body)
    extra = {}
    if issues is not None:
        extra["reference_mismatches"] = [
            "%s | %s | computed %s | reference %s | %s" % (
                i["row"], i["column"], i["computed"], i["reference"], i["status"]) for i in issues]
    emit(args, header, body, extra)
    return EXIT_OK


def cmd_restrict(args):
    arr, choices = load(args)
    gen = Generators(arr, choices)
    names, _ = gen.global_basis
    rows = []
    status = EXIT_OK
    for L in arr.layers:
        basis = gen.basis_at(L)
        got = gen.restriction_h1(L)
        want = gen.formula_h1(L)
        for name, g, w in zip(names, got, want):
            match = g == w
            if not match:
                status = EXIT_FAIL
            rows.append(["S_%s" % L.name, name,
                         "+".join("%s*%s" % (fmt(c), n) for c, n in zip(g, basis.names) if c),
                         "+".join("%s*%s" % (fmt(c), n) for c, n in zip(w, basis.names) if c),
                         "pass" if match else "fail"])
    emit(args, ["layer", "class", "computed", "formula", "status"], rows)
    return status


def cmd_omega_sl(args):
    arr, choices = load(args)
    gen = Generators(arr, choices)
    rows = []
    status = EXIT_OK
    for S, L in gen.omega_slots():
        res = gen.omega_sl(S, L)
        ok = res.exists and res.unique and res.integral
        if not ok:
            status = EXIT_FAIL
        coords = " ".join(fmt(c) for c in res.coordinates) if res.exists else "-"
        rows.append([gen.omega_sl_name(S, L), len(S), res.exists, res.unique, res.integral, coords])
    emit(args, ["class", "degree", "exists", "unique", "integral", "coordinates"], rows)
    return status


def _threads():
    try:
        return max(1, int(os.environ.get("TORSAL_THREADS", "1")))
    except ValueError:
        return 1


def _run_one(arr, choices, which):
    gen = Generators(arr, choices)
    return verify.run(arr, gen, which)


def cmd_verify(args):
    arr, choices = load(args)
    gen = Generators(arr, choices)
    checks = verify.run(arr, gen, args.which)
    if args.reference:
        header, body = gen.restriction_table()
        for i in _reference_issues(args, gen, header, body):
            checks.append(verify.Check("table", "%s @ %s" % (i["row"], i["column"]), "note",
                                       "reference mismatch, condition-check pass: computed %s, reference %s (%s)" % (
                                           i["computed"], i["reference"], i["status"])))
    if args.random:
        arrangements = corpus(args.seed, args.random)
        with ThreadPoolExecutor(max_workers=_threads()) as pool:
            results = list(pool.map(lambda a: _run_one(a, None, args.which), arrangements))
        for n, (a, res) in enumerate(zip(arrangements, results)):
            label = "random[%d] %s" % (n, ";".join("%s:%s=%s" % (h.name, vec(h.chi), fmt(h.offset))
                                                    for h in a.hypertori))
            for c in res:
                checks.append(verify.Check(c.suite, "%s %s" % (label, c.name), c.status, c.detail))
    rows = [[c.status, c.suite, c.name, c.detail] for c in checks]
    failed = sum(1 for c in checks if c.status == "fail")
    counts = {}
    for c in checks:
        counts[c.status] = counts.get(c.status, 0) + 1
    summary = " ".join("%s=%d" % (k, counts[k]) for k in sorted(counts))
    emit(args, ["status", "suite", "check", "detail"], rows, {"summary": summary})
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {
    "layers": cmd_layers,
    "faces": cmd_faces,
    "salvetti": cmd_salvetti,
    "betti": cmd_betti,
    "generators": cmd_generators,
    "restrict": cmd_restrict,
    "omega-sl": cmd_omega_sl,
    "verify": cmd_verify,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="torsal", description="Toric Salvetti complexes and their cohomology generators.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", "-i", required=True, help="arrangement JSON file")
        p.add_argument("--choices", help="JSON file with chamber and layer choices")
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.add_argument("--max-degree", type=int, default=None)
        p.add_argument("--seed", type=int, default=0, help="seed for the random corpus (verify --random)")
        if name in ("generators", "verify"):
            p.add_argument("--reference", help="reference table JSON to compare against, up to row sign")
        if name == "verify":
            p.add_argument("which", nargs="?", default="all", choices=("all",) + verify.SUITES)
            p.add_argument("--random", type=int, default=0, help="also check this many random arrangements")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
