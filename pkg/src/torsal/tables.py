"""Parsing and comparison of restriction tables.

Cells are sums "c*name" joined by "+"; a name is a product of degree-one
factors joined by ".".  Since the factors anticommute, two products of
the same factors differ by the sign of the permutation between them.
"""
import re
from fractions import Fraction

TERM = re.compile(r"^([+-]?\d+(?:/\d+)?)\*(.+)$")


def parse_cell(text):
    """'c*a.b+c*d' -> {tuple(factors): Fraction}."""
    out = {}
    text = (text or "").strip()
    if not text:
        return out
    for part in re.split(r"\+(?=[-\d])", text):
        m = TERM.match(part.strip())
        if not m:
            raise ValueError("cannot parse term %r" % part)
        coeff = Fraction(m.group(1))
        factors = tuple(m.group(2).split("."))
        out[factors] = out.get(factors, 0) + coeff
    return {k: v for k, v in out.items() if v}


def _sort_sign(factors, reference):
    """Sign taking ``factors`` to the order of ``reference`` (same multiset)."""
    pos = [reference.index(f) for f in factors]
    sign = 1
    for i in range(len(pos)):
        for j in range(i + 1, len(pos)):
            if pos[i] > pos[j]:
                sign = -sign
    return sign


def normalize(cell, basis_names):
    """Rewrite each monomial in the factor order used by ``basis_names``.

    Monomials whose factor set matches no basis name are kept as they are.
    """
    by_set = {}
    for name in basis_names:
        f = tuple(name.split("."))
        by_set[frozenset(f)] = f
    out = {}
    for factors, c in cell.items():
        if len(set(factors)) < len(factors):
            continue
        target = by_set.get(frozenset(factors))
        if target is None:
            key, sign = factors, 1
        else:
            key, sign = target, _sort_sign(factors, list(target))
        out[key] = out.get(key, 0) + sign * c
    return {k: v for k, v in out.items() if v}


def row_key(name):
    """Row names 'omega_{A,B}@L' compare as sets; other names verbatim."""
    m = re.match(r"^omega_\{(.*)\}@(.+)$", name)
    if m:
        return ("omega", frozenset(m.group(1).split(",")), m.group(2))
    return ("plain", name)


def compare(header, body, reference, basis_names):
    """Compare a computed table with a reference one, allowing a sign per row.

    ``basis_names`` maps a column name to the monomial names used there.
    Returns a list of dicts (class, column, computed, reference, status)
    for every disagreeing cell; rows missing on either side are reported
    with column None.
    """
    cols = header[1:]
    computed = {row_key(r[0]): (r[0], dict(zip(cols, r[1:]))) for r in body}
    issues = []
    seen = set()
    for ref in reference["rows"]:
        key = row_key(ref["class"])
        seen.add(key)
        if key not in computed:
            issues.append(dict(row=ref["class"], column=None, computed=None,
                               reference=ref["cells"], status="row not produced"))
            continue
        name, cells = computed[key]
        best = None
        for sign in (1, -1):
            bad = []
            for col in cols:
                mine = normalize(parse_cell(cells.get(col, "")), basis_names.get(col, []))
                theirs = normalize(parse_cell(ref["cells"].get(col, "")), basis_names.get(col, []))
                theirs = {k: sign * v for k, v in theirs.items()}
                if mine != theirs:
                    bad.append((col, cells.get(col, ""), ref["cells"].get(col, "")))
            if best is None or len(bad) < len(best[1]):
                best = (sign, bad)
        for col, mine, theirs in best[1]:
            issues.append(dict(row=ref["class"], column=col, computed=mine, reference=theirs,
                               status="cell differs (row sign %+d)" % best[0]))
    for key, (name, _) in computed.items():
        if key not in seen:
            issues.append(dict(row=name, column=None, computed="row", reference=None,
                               status="row missing from reference"))
    return issues
