"""Groebner bases for submodules of free modules over a polynomial ring.

Vectors are tuples of Poly.  Terms are (position, monomial) pairs ordered
position-over-term: a fixed priority list ranks the positions, grevlex
breaks ties inside a position.  Putting the "value" positions of a tagged
vector ahead of its "tag" positions turns ordinary division into an
elimination device: syzygies, membership with explicit cofactors and
quotient-module presentations all come from one tagged basis.
"""

from __future__ import annotations

from .errors import RingError
from .polyalg import (
    GREVLEX,
    Ideal,
    Poly,
    PolyRing,
    eliminate,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


def vec_zero(ring, rank):
    z = ring.zero()
    return tuple(z for _ in range(rank))


def vec_is_zero(v):
    return all(p.is_zero() for p in v)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(v, c):
    return tuple(a.scale(c) for a in v)


def vec_mul_term(v, c, mono):
    return tuple(a.mul_term(c, mono) for a in v)


def vec_mul_poly(v, p):
    return tuple(a * p for a in v)


def vec_eq(u, v):
    return all(a == b for a, b in zip(u, v))


class ModuleOrder:
    """Position-over-term order given by a priority ranking of positions."""

    def __init__(self, rank, priority=None, mono_order=GREVLEX):
        self.rank = rank
        self.priority = list(priority) if priority else list(range(rank))
        self.mono_order = mono_order
        self._rank_of = {p: r for r, p in enumerate(self.priority)}

    def leading(self, v):
        """(position, monomial, coefficient) of the leading term, or None."""
        for p in self.priority:
            if not v[p].is_zero():
                m = v[p].lm(self.mono_order)
                return p, m, v[p].terms[m]
        return None


def vec_div_rem(v, basis, order, ring):
    """Divide a vector by basis vectors; returns (quotients, remainder).

    Reduction happens only against basis elements whose leading position
    matches and whose leading monomial divides; anything else moves to the
    remainder one term at a time.
    """
    fld = ring.field
    quots = [ring.zero() for _ in basis]
    leads = [order.leading(b) for b in basis]
    rem = list(vec_zero(ring, order.rank))
    cur = list(v)
    while True:
        lead = order.leading(tuple(cur))
        if lead is None:
            break
        pos, mono, coef = lead
        for i, b in enumerate(basis):
            lb = leads[i]
            if lb is None or lb[0] != pos:
                continue
            if not mono_divides(lb[1], mono):
                continue
            qc = fld.div(coef, lb[2])
            qm = mono_div(mono, lb[1])
            quots[i] = quots[i] + Poly(ring, {qm: qc})
            sub = vec_mul_term(b, qc, qm)
            cur = [a - s for a, s in zip(cur, sub)]
            break
        else:
            rem[pos] = rem[pos] + Poly(ring, {mono: coef})
            cur[pos] = cur[pos] - Poly(ring, {mono: coef})
    return quots, tuple(rem)


def module_groebner(gens, order, ring):
    """Buchberger for submodules of a free module (no product criterion)."""
    G = [g for g in gens if not vec_is_zero(g)]
    fld = ring.field

    def pair_key(p):
        li = order.leading(G[p[0]])
        lj = order.leading(G[p[1]])
        if li[0] != lj[0]:
            return (0, (0, ()), p)
        return (1, order.mono_order.key(mono_lcm(li[1], lj[1])), p)

    pairs = {(i, j) for i in range(len(G)) for j in range(i)}
    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        li = order.leading(G[i])
        lj = order.leading(G[j])
        if li[0] != lj[0]:
            continue
        l = mono_lcm(li[1], lj[1])
        s = vec_sub(
            vec_mul_term(G[i], fld.div(fld.one, li[2]), mono_div(l, li[1])),
            vec_mul_term(G[j], fld.div(fld.one, lj[2]), mono_div(l, lj[1])),
        )
        _, rem = vec_div_rem(s, G, order, ring)
        if vec_is_zero(rem):
            continue
        new = len(G)
        G.append(rem)
        pairs |= {(new, t) for t in range(new)}

    # minimal + tail-reduced, deterministic output
    minimal = []
    for i, g in enumerate(G):
        pi, mi, _ = order.leading(g)
        dominated = False
        for j, h in enumerate(G):
            if i == j:
                continue
            pj, mj, _ = order.leading(h)
            if pj == pi and mono_divides(mj, mi) and (mj != mi or j < i):
                dominated = True
                break
        if not dominated:
            minimal.append(g)
    out = []
    for i in range(len(minimal)):
        others = minimal[:i] + minimal[i + 1 :]
        _, rem = vec_div_rem(minimal[i], others, order, ring)
        out.append(rem)
    out = [v for v in out if not vec_is_zero(v)]
    out.sort(key=lambda v: (
        order._rank_of[order.leading(v)[0]],
        order.mono_order.key(order.leading(v)[1]),
    ))
    monic = []
    for v in out:
        _, _, c = order.leading(v)
        monic.append(vec_scale(v, fld.div(fld.one, c)))
    return monic


class TaggedBasis:
    """Groebner basis of vectors extended with unit tags.

    Instances answer membership-in-span with explicit cofactors and produce
    generators of the syzygy module of the given vectors.
    """

    def __init__(self, vectors, ring, rank):
        self.ring = ring
        self.rank = rank
        self.m = len(vectors)
        ext = []
        for i, v in enumerate(vectors):
            if len(v) != rank:
                raise RingError("vector of wrong rank")
            tag = [ring.zero()] * self.m
            tag[i] = ring.one()
            ext.append(tuple(list(v) + tag))
        self.order = ModuleOrder(rank + self.m)
        self.gb = module_groebner(ext, self.order, ring) if ext else []
        self.value_gb = [
            g for g in self.gb if not vec_is_zero(g[:rank])
        ]
        self.value_order = ModuleOrder(rank)

    def syzygy_gens(self):
        """Generators of {c in S^m : sum c_i v_i = 0}."""
        return [g[self.rank :] for g in self.gb if vec_is_zero(g[: self.rank])]

    def reduce(self, v):
        """(remainder, cofactors): v = sum cof_i v_i + remainder."""
        if len(v) != self.rank:
            raise RingError("vector of wrong rank")
        w = tuple(list(v) + [self.ring.zero()] * self.m)
        basis = self.value_gb
        quots, rem = vec_div_rem(w, basis, self.order, self.ring)
        cof = [self.ring.zero() - p for p in rem[self.rank :]]
        return rem[: self.rank], cof

    def contains(self, v):
        rem, _ = self.reduce(v)
        return vec_is_zero(rem)


def syzygies(vectors, ring, rank):
    return TaggedBasis(vectors, ring, rank).syzygy_gens()


def kernel_of_matrix(rows, ring):
    """Kernel of the linear map defined by a list of rows over the ring.

    rows[i][j] is the coefficient of unknown j in equation i.  Returns
    generators of the solution module in S^(#unknowns).
    """
    if not rows:
        return []
    ncols = len(rows[0])
    cols = [
        tuple(rows[i][j] for i in range(len(rows))) for j in range(ncols)
    ]
    return syzygies(cols, ring, len(rows))


def quotient_presentation(gens, subgens, ring, rank):
    """Relations of span(gens) modulo span(subgens) in the gens coordinates.

    Returns the list of relation vectors c in S^k with sum c_i g_i inside
    the submodule.
    """
    k = len(gens)
    tb = TaggedBasis(list(gens) + list(subgens), ring, rank)
    rels = []
    for s in tb.syzygy_gens():
        head = s[:k]
        if not vec_is_zero(head):
            rels.append(head)
    # dedupe deterministically
    seen = []
    for r in rels:
        if not any(vec_eq(r, s) for s in seen):
            seen.append(r)
    return seen


def prune_generators(gens, subgens, ring, rank, keep_first=0):
    """Indices of a minimal generating subset modulo a submodule.

    Greedy scan; the first ``keep_first`` generators are always retained
    (used to pin the identity morphism in endomorphism computations).
    """
    kept = list(range(min(keep_first, len(gens))))
    for i in range(keep_first, len(gens)):
        span = [gens[j] for j in kept] + list(subgens)
        tb = TaggedBasis(span, ring, rank)
        if not tb.contains(gens[i]):
            kept.append(i)
    # second pass: drop early generators made redundant by later ones
    changed = True
    while changed:
        changed = False
        for idx in list(kept):
            if idx < keep_first:
                continue
            others = [gens[j] for j in kept if j != idx] + list(subgens)
            tb = TaggedBasis(others, ring, rank)
            if tb.contains(gens[idx]):
                kept.remove(idx)
                changed = True
                break
    return kept


def ideal_quotient_by_vector(subgens, v, ring, rank):
    """The ideal {r in S : r*v inside span(subgens)}."""
    tb = TaggedBasis([v] + list(subgens), ring, rank)
    gens = []
    for s in tb.syzygy_gens():
        c0 = s[0]
        if not c0.is_zero():
            gens.append(c0)
    return Ideal(ring, gens) if gens else Ideal(ring, [])


def intersect_ideals(i1, i2):
    """Ideal intersection via the auxiliary-variable elimination trick."""
    ring = i1.ring
    if i2.ring != ring:
        raise RingError("ideals live in different rings")
    tname = ring.fresh_name("t")
    ring2 = ring.extend([tname])

    def lift(p):
        return Poly(ring2, {m + (0,): c for m, c in p.terms.items()})

    t = ring2.var(ring2.n - 1)
    gens = [t * lift(g) for g in i1.gens]
    gens += [(ring2.one() - t) * lift(g) for g in i2.gens]
    elim = eliminate(Ideal(ring2, gens), [tname])
    # eliminate() projects into the subring with the same variable names
    back = []
    for g in elim.gens:
        back.append(
            Poly(ring, {m: c for m, c in g.terms.items()})
        )
    return Ideal(ring, back)
