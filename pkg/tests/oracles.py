"""Independent checks that do not go through the normal form."""

from fractions import Fraction as F

# affine maps x -> s*x + b stored as (s, b); composition in writing order
AFFINE = {
    "bs": {"a": (F(1), F(1)), "t": (F(1, 2), F(0))},
    "uv": {"u": (F(1), F(1)), "v": (F(1), F(3)), "e1": (F(1), F(0)), "e2": (F(3), F(0)), "e3": (F(1, 24), F(0))},
}


def _mul(p, q):
    # matrix product [[s,b],[0,1]] @ [[s',b'],[0,1]]
    return (p[0] * q[0], p[0] * q[1] + p[1])


def _pow(p, k):
    s, b = p
    if k < 0:
        s, b = 1 / s, -b / s
        k = -k
    out, base = (F(1), F(0)), (s, b)
    while k:
        if k & 1:
            out = _mul(out, base)
        base = _mul(base, base)
        k >>= 1
    return out


def affine_image(table, w):
    g = w.graph
    out = (F(1), F(0))
    for i, (v, k) in enumerate(w.syllables):
        if i:
            e = w.edges[i - 1]
            if e in table:
                out = _mul(out, table[e])
            else:
                out = _mul(out, _pow(table[g.reverse(e)], -1))
        out = _mul(out, _pow(table[v], k))
    return out


def abelianization(g):
    """(free rank, torsion invariants) of the fundamental group of a connected GBS graph."""
    from sympy import ZZ, Matrix
    from sympy.matrices.normalforms import invariant_factors

    from gbskit.presentation import pi1_presentation

    pres = pi1_presentation(g)
    index = {x: i for i, x in enumerate(pres.generators)}
    rows = []
    for r in pres.relations:
        row = [0] * len(index)
        for x, k in r.lhs:
            row[index[x]] += k
        for x, k in r.rhs:
            row[index[x]] -= k
        rows.append(row)
    diag = [abs(int(d)) for d in invariant_factors(Matrix(rows), domain=ZZ)] if rows else []
    rank = len(index) - sum(1 for d in diag if d)
    return rank, sorted(d for d in diag if d > 1)
