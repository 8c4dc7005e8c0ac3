"""Independent cross-check oracles based on dense linear algebra.

These deliberately avoid the Groebner machinery: ideal membership is decided
by solving for cofactors degree by degree, and degree-bounded elimination is
a nullspace computation.  They exist to catch bugs in the main algorithms,
so they must stay independent of them.
"""

from __future__ import annotations

from .errors import RingError
from .polyalg import Poly


def monomials_upto(nvars, deg):
    """All exponent tuples with total degree <= deg, ascending and stable."""
    out = []

    def rec(prefix, remaining, budget):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for e in range(budget + 1):
            rec(prefix + [e], remaining - 1, budget - e)

    rec([], nvars, deg)
    out.sort()
    return out


def _eliminate_rows(rows, rhs_key):
    """Sparse Gaussian elimination on dict rows; True iff system consistent.

    Each row maps column keys to coefficients; ``rhs_key`` marks the
    augmented column and is never chosen as a pivot.
    """
    pivots = {}
    for row in rows:
        r = dict(row)
        while True:
            cand = [c for c in r if c != rhs_key]
            if not cand:
                if rhs_key in r:
                    return False
                break
            lead = min(cand)
            if lead not in pivots:
                pivots[lead] = r
                break
            piv = pivots[lead]
            factor = r[lead] / piv[lead]
            for c, v in piv.items():
                nv = r.get(c, 0) - factor * v
                if nv == 0:
                    r.pop(c, None)
                else:
                    r[c] = nv
    return True


def membership_oracle(g, gens, bound):
    """Is g a combination of the generators with cofactor degrees <= bound?

    Sound in both directions for the fixed bound: a solution found is a real
    membership witness; no solution means no witness exists within the bound.
    """
    ring = g.ring
    fld = ring.field
    if fld.name != "QQ":
        raise RingError("oracle implemented for rational coefficients")
    gens = [h for h in gens if not h.is_zero()]
    if g.is_zero():
        return True
    if not gens:
        return False
    cof_monos = monomials_upto(ring.n, bound)
    cols = [(i, m) for i in range(len(gens)) for m in cof_monos]
    col_index = {c: k for k, c in enumerate(cols)}
    rows_by_mono = {}

    def add(mono, col, coef):
        row = rows_by_mono.setdefault(mono, {})
        row[col] = row.get(col, 0) + coef

    for i, h in enumerate(gens):
        for m in cof_monos:
            col = col_index[(i, m)]
            for hm, hc in h.terms.items():
                prod = tuple(a + b for a, b in zip(m, hm))
                add(prod, col, hc)
    RHS = -1
    for gm, gc in g.terms.items():
        add(gm, RHS, gc)
    rows = [rows_by_mono[m] for m in sorted(rows_by_mono)]
    return _eliminate_rows(rows, RHS)


def _nullspace(rows, ncols):
    """Basis of the nullspace of a dense Fraction matrix given as lists."""
    from fractions import Fraction

    mat = [list(map(Fraction, r)) for r in rows]
    m = len(mat)
    piv_col_of_row = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, m):
            if mat[i][c] != 0:
                sel = i
                break
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(m):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        piv_col_of_row.append(c)
        r += 1
        if r == m:
            break
    pivot_cols = set(piv_col_of_row)
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row_i, pc in enumerate(piv_col_of_row):
            vec[pc] = -mat[row_i][free]
        basis.append(vec)
    return basis


def subring_members_upto(gens, keep_mask, deg, cof_bound):
    """Degree-bounded oracle for elimination ideals.

    Returns polynomials supported on the kept variables, of degree <= deg,
    that are combinations of the generators with cofactors of degree <=
    cof_bound.  Computed as a nullspace, no Groebner bases involved.
    """
    if not gens:
        return []
    ring = gens[0].ring
    sub_monos = [
        m
        for m in monomials_upto(ring.n, deg)
        if all(e == 0 for i, e in enumerate(m) if not keep_mask[i])
    ]
    cof_monos = monomials_upto(ring.n, cof_bound)
    cols = [("p", m) for m in sub_monos]
    for i in range(len(gens)):
        cols += [(i, m) for m in cof_monos]
    col_index = {c: k for k, c in enumerate(cols)}
    eq_monos = sorted(
        set(monomials_upto(ring.n, max(deg, cof_bound + max(
            g.total_degree() for g in gens
        ))))
    )
    eq_index = {m: k for k, m in enumerate(eq_monos)}
    rows = [[0] * len(cols) for _ in eq_monos]
    for m in sub_monos:
        rows[eq_index[m]][col_index[("p", m)]] = 1
    for i, h in enumerate(gens):
        for m in cof_monos:
            col = col_index[(i, m)]
            for hm, hc in h.terms.items():
                prod = tuple(a + b for a, b in zip(m, hm))
                rows[eq_index[prod]][col] -= hc
    basis = _nullspace(rows, len(cols))
    out = []
    for vec in basis:
        terms = {}
        for k, m in enumerate(sub_monos):
            if vec[k] != 0:
                terms[m] = ring.field.coerce(vec[k])
        if terms:
            out.append(Poly(ring, terms))
    return out
