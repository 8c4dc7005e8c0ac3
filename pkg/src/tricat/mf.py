"""Matrix factorizations of a hypersurface polynomial and stable Hom/End.

A factorization is a pair of square matrices with A*B = B*A = f*I over the
ambient polynomial ring; it stands for the maximal Cohen-Macaulay module
presented by A over the quotient by f.  Morphisms are pairs of matrices
intertwining the factorizations exactly over the ambient ring; null-homotopic
morphisms are the ones factoring through free modules.  Stable Hom is the
quotient and is computed uniformly by syzygy machinery: solve the linear
intertwining conditions, quotient by the homotopy images, present the result
with generators and relations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError, RingError
from . import modgb
from .modgb import (
    TaggedBasis,
    ideal_quotient_by_vector,
    intersect_ideals,
    kernel_of_matrix,
    prune_generators,
    quotient_presentation,
    vec_is_zero,
)
from .polyalg import (
    GREVLEX,
    Ideal,
    Poly,
    PolyRing,
    QuotientPresentation,
    div_rem,
    eliminate,
    ideals_equal_up_to_radical,
    jacobian_ideal,
    parse_ring_decl,
)
from .report import CheckReport


# ---------------------------------------------------------------------------
# Matrix helpers (lists of lists of Poly; may be rectangular or empty).


def mat_shape(mat):
    return len(mat), len(mat[0]) if mat else 0


def mat_mul(ring, a, b):
    p = len(a)
    q = len(b)
    r = len(b[0]) if b else 0
    if a and len(a[0]) != q:
        raise RingError("matrix shape mismatch")
    out = []
    for i in range(p):
        row = []
        for j in range(r):
            acc = ring.zero()
            for k in range(q):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[x.scale(c) for x in row] for row in a]


def mat_eye(ring, n, value=None):
    one = value if value is not None else ring.one()
    return [
        [one if i == j else ring.zero() for j in range(n)] for i in range(n)
    ]


def mat_zero(ring, rows, cols):
    return [[ring.zero() for _ in range(cols)] for _ in range(rows)]


def mat_unit(ring, rows, cols, p, q):
    m = mat_zero(ring, rows, cols)
    m[p][q] = ring.one()
    return m


def mat_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def poly_exact_div(p, f):
    """p / f when the division is exact; error otherwise."""
    quots, rem = div_rem(p, [f], GREVLEX)
    if not rem.is_zero():
        raise RingError("inexact polynomial division")
    return quots[0]


# ---------------------------------------------------------------------------
# Matrix factorizations.


class MatrixFactorization:
    def __init__(self, ring, f, a, b, name="mf"):
        self.ring = ring
        self.f = f
        self.a = [[p for p in row] for row in a]
        self.b = [[p for p in row] for row in b]
        self.name = name
        na = mat_shape(self.a)
        nb = mat_shape(self.b)
        if na[0] != na[1] or nb[0] != nb[1] or na != nb:
            raise RingError(
                f"matrix factorization needs equal square matrices, got {na} and {nb}"
            )
        self.n = na[0]

    def __repr__(self):
        return f"MF({self.name}, n={self.n}, f={self.f})"


def check_mf(m):
    """A*B = B*A = f*I, exactly."""
    fi = mat_eye(m.ring, m.n, m.f)
    return mat_eq(mat_mul(m.ring, m.a, m.b), fi) and mat_eq(
        mat_mul(m.ring, m.b, m.a), fi
    )


def shift(m):
    """Suspension: swap the two matrices."""
    return MatrixFactorization(m.ring, m.f, m.b, m.a, name=f"shift({m.name})")


def trivial_mf(ring, f, flipped=False):
    one = [[ring.one()]]
    ff = [[f]]
    if flipped:
        return MatrixFactorization(ring, f, ff, one, name="trivial'")
    return MatrixFactorization(ring, f, one, ff, name="trivial")


def direct_sum(m1, m2):
    if m1.ring != m2.ring or m1.f != m2.f:
        raise RingError("direct sum needs the same hypersurface")
    n = m1.n + m2.n
    a = mat_zero(m1.ring, n, n)
    b = mat_zero(m1.ring, n, n)
    for i in range(m1.n):
        for j in range(m1.n):
            a[i][j] = m1.a[i][j]
            b[i][j] = m1.b[i][j]
    for i in range(m2.n):
        for j in range(m2.n):
            a[m1.n + i][m1.n + j] = m2.a[i][j]
            b[m1.n + i][m1.n + j] = m2.b[i][j]
    return MatrixFactorization(
        m1.ring, m1.f, a, b, name=f"{m1.name}(+){m2.name}"
    )


@dataclass
class MFMorphism:
    src: MatrixFactorization
    dst: MatrixFactorization
    a0: list
    a1: list

    def check(self, strict=False):
        """Intertwining identities; modulo f by default, exact if strict."""
        r = self.src.ring
        e1 = mat_sub(
            mat_mul(r, self.a0, self.src.a), mat_mul(r, self.dst.a, self.a1)
        )
        e2 = mat_sub(
            mat_mul(r, self.a1, self.src.b), mat_mul(r, self.dst.b, self.a0)
        )
        if strict:
            return all(p.is_zero() for m in (e1, e2) for row in m for p in row)
        fid = Ideal(r, [self.src.f])
        return all(
            fid.contains(p) for m in (e1, e2) for row in m for p in row
        )

    def strictified(self):
        """Equivalent pair satisfying the identities exactly over the ring.

        The first identity is repaired by an exact correction along B'; the
        second then holds automatically for a matrix factorization.
        """
        r = self.src.ring
        e1 = mat_sub(
            mat_mul(r, self.a0, self.src.a), mat_mul(r, self.dst.a, self.a1)
        )
        corr = [[poly_exact_div(p, self.src.f) for p in row] for row in e1]
        a1 = mat_add(self.a1, mat_mul(r, self.dst.b, corr))
        out = MFMorphism(self.src, self.dst, self.a0, a1)
        if not out.check(strict=True):
            raise RingError("pair does not represent a morphism")
        return out


def identity_morphism(m):
    return MFMorphism(m, m, mat_eye(m.ring, m.n), mat_eye(m.ring, m.n))


def compose(g, h):
    """h after g (g: X -> Y, h: Y -> Z)."""
    if g.dst is not h.src and (g.dst.a != h.src.a or g.dst.b != h.src.b):
        raise RingError("morphisms do not compose")
    r = g.src.ring
    return MFMorphism(
        g.src, h.dst, mat_mul(r, h.a0, g.a0), mat_mul(r, h.a1, g.a1)
    )


def block_inclusion(m1, msum, offset=0):
    """Inclusion of a summand into a block direct sum."""
    r = m1.ring
    a0 = mat_zero(r, msum.n, m1.n)
    for i in range(m1.n):
        a0[offset + i][i] = r.one()
    return MFMorphism(m1, msum, a0, [row[:] for row in a0])


def block_projection(msum, m1, offset=0):
    r = m1.ring
    a0 = mat_zero(r, m1.n, msum.n)
    for i in range(m1.n):
        a0[i][offset + i] = r.one()
    return MFMorphism(msum, m1, a0, [row[:] for row in a0])


# ---------------------------------------------------------------------------
# The Hom complex: solutions, homotopies, presentations.


@dataclass
class FPModule:
    """Finitely presented module over the hypersurface quotient ring.

    Presented by ``ngens`` generators and relation vectors over the ambient
    polynomial ring; the ambient ideal records the quotient presentation.
    """

    ring: PolyRing
    ambient_ideal: Ideal
    ngens: int
    relations: list
    carriers: list = None  # generator vectors in the morphism coordinates
    analysis: object = None

    def pretty(self):
        if self.ngens == 0:
            return "0"
        rel = (
            "; ".join(
                ",".join(str(p) for p in v) for v in self.relations
            )
            or "0"
        )
        return f"<{self.ngens} generators | relations {rel}>"


@dataclass
class SubmoduleCoords:
    module: FPModule
    coords: list  # vectors over the module generators


class HomAnalysis:
    """Solution module of the intertwining conditions plus its submodules."""

    def __init__(self, m1, m2):
        if m1.ring != m2.ring or m1.f != m2.f:
            raise RingError("morphisms need the same hypersurface")
        self.m1 = m1
        self.m2 = m2
        self.ring = m1.ring
        self.f = m1.f
        n, n2 = m1.n, m2.n
        self.nvars = 2 * n2 * n
        r = self.ring

        def a0_idx(i, j):
            return i * n + j

        def a1_idx(i, j):
            return n2 * n + i * n + j

        self._a0_idx, self._a1_idx = a0_idx, a1_idx
        rows = []
        # alpha0 * A - A' * alpha1 = 0
        for i in range(n2):
            for c in range(n):
                row = [r.zero()] * self.nvars
                for j in range(n):
                    row[a0_idx(i, j)] = row[a0_idx(i, j)] + m1.a[j][c]
                for j in range(n2):
                    row[a1_idx(j, c)] = row[a1_idx(j, c)] - m2.a[i][j]
                rows.append(row)
        # alpha1 * B - B' * alpha0 = 0
        for i in range(n2):
            for c in range(n):
                row = [r.zero()] * self.nvars
                for j in range(n):
                    row[a1_idx(i, j)] = row[a1_idx(i, j)] + m1.b[j][c]
                for j in range(n2):
                    row[a0_idx(j, c)] = row[a0_idx(j, c)] - m2.b[i][j]
                rows.append(row)
        self.sol_gens = kernel_of_matrix(rows, r)

        self.h_gens = []
        for p in range(n2):
            for q in range(n):
                h0 = mat_unit(r, n2, n, p, q)
                pair = (
                    mat_mul(r, m2.a, h0),
                    mat_mul(r, h0, m1.a),
                )
                self.h_gens.append(self.vec_of_pair(*pair))
                h1 = mat_unit(r, n2, n, p, q)
                pair = (
                    mat_mul(r, h1, m1.b),
                    mat_mul(r, m2.b, h1),
                )
                self.h_gens.append(self.vec_of_pair(*pair))
        # maps whose matrices land in the image of A' induce zero on the
        # underlying modules before stabilization
        self.k_gens = self.h_gens[0::2]
        self._tb = {}

    def vec_of_pair(self, a0, a1):
        n, n2 = self.m1.n, self.m2.n
        out = [None] * self.nvars
        for i in range(n2):
            for j in range(n):
                out[self._a0_idx(i, j)] = a0[i][j]
                out[self._a1_idx(i, j)] = a1[i][j]
        return tuple(out)

    def vec_of(self, mor):
        return self.vec_of_pair(mor.a0, mor.a1)

    def mor_of(self, vec):
        n, n2 = self.m1.n, self.m2.n
        a0 = [
            [vec[self._a0_idx(i, j)] for j in range(n)] for i in range(n2)
        ]
        a1 = [
            [vec[self._a1_idx(i, j)] for j in range(n)] for i in range(n2)
        ]
        return MFMorphism(self.m1, self.m2, a0, a1)

    def basis(self, key, gens):
        if key not in self._tb:
            self._tb[key] = TaggedBasis(gens, self.ring, self.nvars)
        return self._tb[key]

    def h_basis(self):
        return self.basis("h", self.h_gens)

    def k_basis(self):
        return self.basis("k", self.k_gens)

    def is_solution(self, vec):
        mor = self.mor_of(vec)
        return mor.check(strict=True)

    def stable_zero(self, vec):
        return self.h_basis().contains(vec)


def _present(ana, subgens, keep_first_vec=None):
    """Choose generators of solutions modulo a submodule and present."""
    gens = list(ana.sol_gens)
    keep = 0
    if keep_first_vec is not None:
        gens = [keep_first_vec] + gens
        keep = 1
    kept = prune_generators(gens, subgens, ana.ring, ana.nvars, keep_first=keep)
    chosen = [gens[i] for i in kept]
    if keep and TaggedBasis(subgens, ana.ring, ana.nvars).contains(
        keep_first_vec
    ):
        chosen = chosen[1:]
        kept = kept[1:]
    rels = quotient_presentation(chosen, subgens, ana.ring, ana.nvars)
    return chosen, rels


def hom_space(m1, m2):
    """Module of morphisms up to maps inducing zero before stabilization."""
    ana = HomAnalysis(m1, m2)
    chosen, rels = _present(ana, ana.k_gens)
    return FPModule(
        ana.ring, Ideal(ana.ring, [ana.f]), len(chosen), rels, chosen, ana
    )


def homotopy_submodule(m1, m2):
    """Span of the null-homotopic morphisms inside the morphism module."""
    hom = hom_space(m1, m2)
    ana = hom.analysis
    tb = TaggedBasis(list(hom.carriers) + ana.k_gens, ana.ring, ana.nvars)
    coords = []
    k = hom.ngens
    for h in ana.h_gens:
        rem, cof = tb.reduce(h)
        if not vec_is_zero(rem):
            raise RingError("homotopy escapes the morphism module")
        coords.append(tuple(cof[:k]))
    uniq = []
    for c in coords:
        if not vec_is_zero(c) and not any(
            modgb.vec_eq(c, d) for d in uniq
        ):
            uniq.append(c)
    return SubmoduleCoords(hom, uniq)


def stable_hom(m1, m2):
    """Morphisms modulo homotopy, minimally presented."""
    ana = HomAnalysis(m1, m2)
    chosen, rels = _present(ana, ana.h_gens)
    return FPModule(
        ana.ring, Ideal(ana.ring, [ana.f]), len(chosen), rels, chosen, ana
    )


def annihilator(mod):
    """Ideal of ring elements killing every generator of the module."""
    ring = mod.ring
    if mod.ngens == 0:
        return Ideal(ring, [ring.one()])
    k = mod.ngens
    rel = list(mod.relations)
    out = None
    for i in range(k):
        e = tuple(
            ring.one() if j == i else ring.zero() for j in range(k)
        )
        q = ideal_quotient_by_vector(rel, e, ring, k)
        out = q if out is None else intersect_ideals(out, q)
    if not out.gens:
        return Ideal(ring, [])
    return out


# ---------------------------------------------------------------------------
# Stable endomorphism rings.


@dataclass
class StableEndPresentation:
    mf: MatrixFactorization
    module: FPModule
    generators: list  # MFMorphism, identity first
    gen_names: list  # "1" then ring-presentation variable names
    product_table: dict  # (i, j) -> tuple of coordinate Polys
    commutative: bool
    noncommuting: list
    full_ring: PolyRing
    full_ideal: Ideal
    reduced_ring: PolyRing
    reduced_ideal: Ideal
    is_zero: bool

    def presentation_str(self):
        if self.is_zero:
            return "0 (zero ring)"
        gens = ", ".join(str(g) for g in self.reduced_ideal.gens) or "0"
        return f"{self.reduced_ring}/({gens})"


def stable_end_ring(m):
    """Generators, products and a ring presentation of the stable End.

    The identity is the first generator; remaining module generators get one
    presentation variable each.  The presented ideal collects the module
    relations (linear in the variables) and the product-table relations; a
    commutative presentation is only emitted when every commutator reduces
    to zero, and witnesses are reported otherwise.
    """
    ana = HomAnalysis(m, m)
    ring = ana.ring
    idv = ana.vec_of(identity_morphism(m))
    if not ana.is_solution(idv):
        raise RingError("identity fails the intertwining conditions")

    if m.n == 0 or ana.stable_zero(idv):
        zero_mod = FPModule(ring, Ideal(ring, [ana.f]), 0, [], [], ana)
        return StableEndPresentation(
            m, zero_mod, [], [], {}, True, [], ring,
            Ideal(ring, [ring.one()]), ring, Ideal(ring, [ring.one()]), True,
        )

    chosen, rels = _present(ana, ana.h_gens, keep_first_vec=idv)
    module = FPModule(ring, Ideal(ring, [ana.f]), len(chosen), rels, chosen, ana)
    gens = [ana.mor_of(v) for v in chosen]
    k = len(chosen)

    tb = TaggedBasis(list(chosen) + ana.h_gens, ring, ana.nvars)

    def coords_of(vec):
        rem, cof = tb.reduce(vec)
        if not vec_is_zero(rem):
            raise RingError("composite escapes the chosen generators")
        return tuple(cof[:k])

    table = {}
    for i in range(k):
        for j in range(k):
            comp = compose(gens[j], gens[i])  # g_i after g_j
            table[(i, j)] = coords_of(ana.vec_of(comp))

    noncommuting = []
    for i in range(k):
        for j in range(i + 1, k):
            if table[(i, j)] != table[(j, i)]:
                noncommuting.append(
                    (i, j, table[(i, j)], table[(j, i)])
                )
    commutative = not noncommuting

    if k == 2:
        var_names = [ring.fresh_name("w")]
    else:
        var_names = [ring.fresh_name(f"w{i}") for i in range(1, k)]
    gen_names = ["1"] + var_names
    full_ring = ring.extend(var_names)

    def lift(p):
        return Poly(full_ring, {m_ + (0,) * (k - 1): c for m_, c in p.terms.items()})

    wvars = [full_ring.one()] + [
        full_ring.var(ring.n + t) for t in range(k - 1)
    ]
    ideal_gens = [lift(ana.f)]
    for rv in rels:
        acc = full_ring.zero()
        for t in range(k):
            acc = acc + lift(rv[t]) * wvars[t]
        if not acc.is_zero():
            ideal_gens.append(acc)
    for i in range(1, k):
        for j in range(i, k):
            acc = wvars[i] * wvars[j]
            for t in range(k):
                acc = acc - lift(table[(i, j)][t]) * wvars[t]
            if not acc.is_zero():
                ideal_gens.append(acc)
    full_ideal = Ideal(full_ring, ideal_gens)

    # base variables that already vanish in the quotient are eliminated from
    # the reduced presentation
    dead = [
        nm
        for nm in ring.names
        if full_ideal.contains(full_ring.var(list(full_ring.names).index(nm)))
    ]
    reduced = eliminate(full_ideal, dead) if dead else full_ideal
    return StableEndPresentation(
        m, module, gens, gen_names, table, commutative, noncommuting,
        full_ring, full_ideal, reduced.ring if dead else full_ring,
        reduced, False,
    )


def full_support_check(m):
    """Does the stable End see every singular point of the hypersurface?

    True when the annihilator of the stable endomorphism module cuts out the
    same locus as the Jacobian ideal of f.
    """
    pres = stable_end_ring(m)
    ann = annihilator(pres.module)
    return ideals_equal_up_to_radical(ann, jacobian_ideal(m.f))


# ---------------------------------------------------------------------------
# MF file format:
#   mf over QQ[x,y,z] f = x^2*y + z^2
#   A = [[x, z], [-z, x*y]]
#   B = [[x*y, -z], [z, x]]


def _parse_matrix(ring, text, lineno):
    text = text.strip()
    if not (text.startswith("[[") and text.endswith("]]")):
        if text == "[]":
            return []
        raise ParseError("matrix must look like [[..],[..]]", lineno)
    inner = text[1:-1]
    rows = []
    depth = 0
    cur = ""
    parts = []
    for ch in inner:
        if ch == "[":
            depth += 1
            if depth == 1:
                cur = ""
                continue
        if ch == "]":
            depth -= 1
            if depth == 0:
                parts.append(cur)
                continue
        if depth >= 1:
            cur += ch
    for part in parts:
        entries = [e for e in part.split(",")]
        rows.append([ring.poly(e) for e in entries])
    if any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("ragged matrix", lineno)
    return rows


def parse_mf(text):
    ring = None
    f = None
    a = None
    b = None
    name = "mf"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        mobj = re.match(r"mf\s+over\s+(.+?)\s+f\s*=\s*(.+)$", line)
        if mobj:
            try:
                ring = parse_ring_decl(mobj.group(1))
                f = ring.poly(mobj.group(2))
            except RingError as exc:
                raise ParseError(str(exc), lineno) from exc
            continue
        mobj = re.match(r"name\s+(\S+)$", line)
        if mobj:
            name = mobj.group(1)
            continue
        mobj = re.match(r"([AB])\s*=\s*(.+)$", line)
        if mobj:
            if ring is None:
                raise ParseError("matrix before 'mf over' header", lineno)
            try:
                mat = _parse_matrix(ring, mobj.group(2), lineno)
            except RingError as exc:
                raise ParseError(str(exc), lineno) from exc
            if mobj.group(1) == "A":
                a = mat
            else:
                b = mat
            continue
        raise ParseError(f"unrecognized mf line: '{line}'", lineno)
    if ring is None or a is None or b is None:
        raise ParseError("mf file needs 'mf over', 'A =' and 'B =' lines")
    try:
        return MatrixFactorization(ring, f, a, b, name=name)
    except RingError as exc:
        raise ParseError(str(exc)) from exc
