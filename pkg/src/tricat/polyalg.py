"""Exact multivariate polynomials over QQ or GF(p) with Groebner machinery.

Everything is exact: rational coefficients are `fractions.Fraction`, prime
fields are ints mod p.  Default monomial order is grevlex; lex (with a
variable permutation) is reserved for elimination.  Buchberger can track how
each basis element combines the original generators, which yields explicit
membership cofactors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import RingError
from .report import CheckReport


# ---------------------------------------------------------------------------
# Coefficient fields.


class FieldQQ:
    name = "QQ"
    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def coerce(x):
        return Fraction(x)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def neg(a):
        return -a

    def __repr__(self):
        return "QQ"


class FieldGF:
    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise RingError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"
        self.char = p
        self.zero = 0
        self.one = 1

    def coerce(self, x):
        if isinstance(x, Fraction):
            num = x.numerator % self.p
            den = x.denominator % self.p
            if den == 0:
                raise RingError(f"denominator divisible by {self.p}")
            return num * pow(den, self.p - 2, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError
        return a * pow(b, self.p - 2, self.p) % self.p

    def neg(self, a):
        return -a % self.p

    def __repr__(self):
        return self.name


QQ = FieldQQ()


# ---------------------------------------------------------------------------
# Monomial orders.  A monomial is a tuple of exponents.


def _deg(m):
    return sum(m)


class MonomialOrder:
    def __init__(self, name, key):
        self.name = name
        self.key = key

    def greater(self, a, b):
        return self.key(a) > self.key(b)

    def __repr__(self):
        return self.name


def grevlex_order():
    def key(m):
        return (sum(m), tuple(-e for e in reversed(m)))

    return MonomialOrder("grevlex", key)


def lex_order(perm=None):
    """Lex order; with perm, variables compare in the permuted sequence.

    Putting the eliminated variables first in perm makes this an
    elimination order for them.
    """
    if perm is None:
        return MonomialOrder("lex", lambda m: m)
    perm = tuple(perm)
    return MonomialOrder(
        f"lex{perm}", lambda m: tuple(m[i] for i in perm)
    )


GREVLEX = grevlex_order()
LEX = lex_order()


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Rings and polynomials.


class PolyRing:
    def __init__(self, field, names):
        self.field = field
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise RingError("duplicate variable names")
        self.n = len(self.names)
        self._zero_mono = (0,) * self.n

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.field.name == other.field.name
        )

    def __hash__(self):
        return hash((self.names, self.field.name))

    def __repr__(self):
        return f"{self.field.name}[{','.join(self.names)}]"

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {self._zero_mono: self.field.one})

    def const(self, c):
        c = self.field.coerce(c)
        if c == self.field.zero:
            return self.zero()
        return Poly(self, {self._zero_mono: c})

    def var(self, i):
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.n
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.var(i) for i in range(self.n)]

    def poly(self, expr):
        return parse_poly(self, expr)

    def extend(self, extra_names):
        return PolyRing(self.field, self.names + tuple(extra_names))

    def fresh_name(self, base):
        name = base
        while name in self.names:
            name += "_"
        return name


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- construction helpers

    @staticmethod
    def _merge(ring, terms):
        return Poly(ring, {m: c for m, c in terms.items() if c != ring.field.zero})

    def is_zero(self):
        return not self.terms

    def _chk(self, other):
        if self.ring != other.ring:
            raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")

    # -- arithmetic

    def __add__(self, other):
        self._chk(other)
        f = self.ring.field
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = f.add(res.get(m, f.zero), c)
            if s == f.zero:
                res.pop(m, None)
            else:
                res[m] = s
        return Poly(self.ring, res)

    def __neg__(self):
        f = self.ring.field
        return Poly(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._chk(other)
        f = self.ring.field
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = f.add(res.get(m, f.zero), f.mul(c1, c2))
                if s == f.zero:
                    res.pop(m, None)
                else:
                    res[m] = s
        return Poly(self.ring, res)

    __rmul__ = __mul__

    def scale(self, c):
        f = self.ring.field
        c = f.coerce(c)
        if c == f.zero:
            return self.ring.zero()
        return Poly(self.ring, {m: f.mul(v, c) for m, v in self.terms.items()})

    def mul_term(self, c, mono):
        f = self.ring.field
        if c == f.zero:
            return self.ring.zero()
        return Poly(
            self.ring,
            {mono_mul(m, mono): f.mul(v, c) for m, v in self.terms.items()},
        )

    def __pow__(self, k):
        if k < 0:
            raise RingError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    # -- structure

    def total_degree(self):
        return max((_deg(m) for m in self.terms), default=-1)

    def lm(self, order=GREVLEX):
        return max(self.terms, key=order.key)

    def lc(self, order=GREVLEX):
        return self.terms[self.lm(order)]

    def monic(self, order=GREVLEX):
        if self.is_zero():
            return self
        f = self.ring.field
        c = self.lc(order)
        return Poly(
            self.ring, {m: f.div(v, c) for m, v in self.terms.items()}
        )

    def diff(self, var):
        if isinstance(var, str):
            var = self.ring.names.index(var)
        f = self.ring.field
        res = {}
        for m, c in self.terms.items():
            e = m[var]
            if e == 0:
                continue
            coef = f.mul(c, f.coerce(e))
            if coef == f.zero:
                continue
            m2 = list(m)
            m2[var] = e - 1
            m2 = tuple(m2)
            res[m2] = f.add(res.get(m2, f.zero), coef)
        return Poly._merge(self.ring, res)

    def substitute(self, images, target_ring):
        """Evaluate under variable -> polynomial images in the target ring."""
        if len(images) != self.ring.n:
            raise RingError("one image per variable required")
        out = target_ring.zero()
        pow_cache = [{} for _ in range(self.ring.n)]

        def power(i, e):
            if e not in pow_cache[i]:
                pow_cache[i][e] = images[i] ** e
            return pow_cache[i][e]

        for m, c in self.terms.items():
            t = target_ring.const(c)
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            out = out + t
        return out

    def project(self, target_ring, index_map):
        """Reindex variables into a subring; fails if a dropped one occurs."""
        res = {}
        for m, c in self.terms.items():
            m2 = [0] * target_ring.n
            for i, e in enumerate(m):
                if not e:
                    continue
                if index_map[i] is None:
                    raise RingError(
                        f"variable {self.ring.names[i]} does not survive projection"
                    )
                m2[index_map[i]] = e
            res[tuple(m2)] = c
        return Poly(target_ring, res)

    # -- display

    def __str__(self):
        if self.is_zero():
            return "0"
        items = sorted(self.terms.items(), key=lambda t: GREVLEX.key(t[0]),
                       reverse=True)
        parts = []
        for m, c in items:
            factors = [
                self.ring.names[i] + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(m)
                if e
            ]
            cs = str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if factors and cs == "1":
                body = "*".join(factors)
            elif factors:
                body = cs + "*" + "*".join(factors)
            else:
                body = cs
            parts.append(("- " if neg else "+ ") + body)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self):
        return f"<{self}>"


# ---------------------------------------------------------------------------
# Division and Buchberger.


def div_rem(f, gs, order=GREVLEX):
    """Multivariate division: f = sum(q_i g_i) + r with no lm(g) dividing
    any monomial of r.  Deterministic: first divisor in list order wins."""
    ring = f.ring
    fld = ring.field
    quots = [ring.zero() for _ in gs]
    rem = {}
    p = Poly(ring, dict(f.terms))
    lms = [(g.lm(order), g.lc(order)) if not g.is_zero() else None for g in gs]
    while not p.is_zero():
        mp = p.lm(order)
        cp = p.terms[mp]
        for i, g in enumerate(gs):
            if lms[i] is None:
                continue
            mg, cg = lms[i]
            if mono_divides(mg, mp):
                qc = fld.div(cp, cg)
                qm = mono_div(mp, mg)
                quots[i] = quots[i] + Poly(ring, {qm: qc})
                p = p - g.mul_term(qc, qm)
                break
        else:
            rem[mp] = cp
            del p.terms[mp]
            p = Poly(ring, p.terms)
            continue
    return quots, Poly(ring, rem)


def normal_form(f, basis, order=None):
    """Remainder of f on division by a (Groebner) basis."""
    if isinstance(basis, GroebnerBasis):
        order = order or basis.order
        gs = basis.polys
    else:
        gs = list(basis)
        order = order or GREVLEX
    return div_rem(f, gs, order)[1]


def s_poly(f, g, order):
    mf, mg = f.lm(order), g.lm(order)
    l = mono_lcm(mf, mg)
    fld = f.ring.field
    return f.mul_term(fld.div(fld.one, f.lc(order)), mono_div(l, mf)) - g.mul_term(
        fld.div(fld.one, g.lc(order)), mono_div(l, mg)
    )


@dataclass
class GroebnerBasis:
    ring: PolyRing
    order: MonomialOrder
    polys: list
    reps: list = None  # reps[i][j]: coefficient of source gen j in polys[i]
    ngens: int = 0

    def nf(self, f):
        return div_rem(f, self.polys, self.order)[1]

    def contains(self, f):
        return self.nf(f).is_zero()

    def cofactors(self, f):
        """Write f over the original generators, or None if not a member."""
        if self.reps is None:
            raise RingError("basis was computed without representation tracking")
        quots, rem = div_rem(f, self.polys, self.order)
        if not rem.is_zero():
            return None
        out = [self.ring.zero() for _ in range(self.ngens)]
        for q, rep in zip(quots, self.reps):
            if q.is_zero():
                continue
            for j in range(self.ngens):
                out[j] = out[j] + q * rep[j]
        return out


def buchberger(gens, order=GREVLEX, track=False):
    """Reduced Groebner basis (unique for the order, leading coeffs 1)."""
    ring = gens[0].ring if gens else None
    if ring is None:
        raise RingError("buchberger needs at least the ring; pass [ring.zero()]")
    fld = ring.field
    G = []
    reps = []
    k = len(gens)
    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        G.append(g)
        if track:
            r = [ring.zero()] * k
            r[i] = ring.one()
            reps.append(r)
    if not G:
        return GroebnerBasis(ring, order, [], [] if track else None, k)

    pairs = {(i, j) for i in range(len(G)) for j in range(i)}
    while pairs:
        i, j = min(
            pairs,
            key=lambda p: (
                order.key(mono_lcm(G[p[0]].lm(order), G[p[1]].lm(order))),
                p,
            ),
        )
        pairs.discard((i, j))
        mi, mj = G[i].lm(order), G[j].lm(order)
        if mono_lcm(mi, mj) == mono_mul(mi, mj):
            continue  # coprime leading monomials reduce to zero
        s = s_poly(G[i], G[j], order)
        quots, rem = div_rem(s, G, order)
        if rem.is_zero():
            continue
        if track:
            l = mono_lcm(mi, mj)
            ci = fld.div(fld.one, G[i].lc(order))
            cj = fld.div(fld.one, G[j].lc(order))
            rep = [
                reps[i][t].mul_term(ci, mono_div(l, mi))
                - reps[j][t].mul_term(cj, mono_div(l, mj))
                for t in range(k)
            ]
            for q, r in zip(quots, reps):
                if q.is_zero():
                    continue
                rep = [rep[t] - q * r[t] for t in range(k)]
            reps.append(rep)
        new = len(G)
        G.append(rem)
        pairs |= {(new, t) for t in range(new)}

    # minimalize: drop elements whose lead is divisible by another lead
    minimal = []
    for i, g in enumerate(G):
        mi = g.lm(order)
        dominated = any(
            j != i
            and mono_divides(G[j].lm(order), mi)
            and (G[j].lm(order) != mi or j < i)
            for j in range(len(G))
        )
        if not dominated:
            minimal.append(i)

    # tail-reduce to the unique reduced basis
    polys = [G[i] for i in minimal]
    rtrack = [reps[i] for i in minimal] if track else None
    changed = True
    while changed:
        changed = False
        for i in range(len(polys)):
            others = polys[:i] + polys[i + 1 :]
            quots, rem = div_rem(polys[i], others, order)
            if rem != polys[i]:
                changed = True
                if track:
                    rep = rtrack[i]
                    oth_reps = rtrack[:i] + rtrack[i + 1 :]
                    for q, r in zip(quots, oth_reps):
                        if q.is_zero():
                            continue
                        rep = [rep[t] - q * r[t] for t in range(k)]
                    rtrack[i] = rep
                polys[i] = rem
        polys2, rt2 = [], []
        for i, p in enumerate(polys):
            if not p.is_zero():
                polys2.append(p)
                if track:
                    rt2.append(rtrack[i])
        polys, rtrack = polys2, (rt2 if track else None)

    order_key = lambda t: order.key(t[0].lm(order))
    if track:
        pairs_sorted = sorted(zip(polys, rtrack), key=order_key)
        polys = [p for p, _ in pairs_sorted]
        rtrack = [r for _, r in pairs_sorted]
    else:
        polys.sort(key=lambda p: order.key(p.lm(order)))
    out_polys = []
    out_reps = [] if track else None
    for i, p in enumerate(polys):
        c = p.lc(order)
        out_polys.append(p.monic(order))
        if track:
            inv = fld.div(fld.one, c)
            out_reps.append([r.scale(inv) for r in rtrack[i]])
    return GroebnerBasis(ring, order, out_polys, out_reps, k)


class Ideal:
    def __init__(self, ring, gens):
        self.ring = ring
        self.gens = [g for g in gens]
        for g in self.gens:
            if g.ring != ring:
                raise RingError("generator from a different ring")
        self._gb = {}
        self._gbt = {}

    def groebner(self, order=GREVLEX, track=False):
        cache = self._gbt if track else self._gb
        if order.name not in cache:
            if not any(not g.is_zero() for g in self.gens):
                cache[order.name] = GroebnerBasis(
                    self.ring, order, [], [] if track else None, len(self.gens)
                )
            else:
                cache[order.name] = buchberger(self.gens, order, track)
        return cache[order.name]

    def nf(self, f):
        return self.groebner().nf(f)

    def contains(self, f):
        return self.nf(f).is_zero()

    def cofactors(self, f):
        return self.groebner(track=True).cofactors(f)

    def is_unit(self):
        return self.contains(self.ring.one())

    def equals(self, other):
        if self.ring != other.ring:
            raise RingError("ideals live in different rings")
        return all(self.contains(g) for g in other.gens) and all(
            other.contains(g) for g in self.gens
        )

    def __repr__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


# ---------------------------------------------------------------------------
# Radical membership, Jacobian ideals, elimination.


def radical_member(g, ideal):
    """Does g vanish on the zero set of the ideal?

    Decided by the auxiliary-variable trick: g is in the radical iff the
    ideal extended by 1 - t*g (t fresh) is the unit ideal.
    """
    ring = ideal.ring
    if g.ring != ring:
        raise RingError("polynomial and ideal live in different rings")
    if g.is_zero():
        return True
    tname = ring.fresh_name("t")
    ring2 = ring.extend([tname])

    def lift(p):
        return Poly(
            ring2, {m + (0,): c for m, c in p.terms.items()}
        )

    t = ring2.var(ring2.n - 1)
    gens2 = [lift(p) for p in ideal.gens]
    gens2.append(ring2.one() - t * lift(g))
    return Ideal(ring2, gens2).is_unit()


def jacobian_ideal(f):
    """Ideal generated by f and all first partial derivatives.

    Over GF(p) a positive exponent divisible by p would silently kill
    derivative information, so that case is rejected.
    """
    ring = f.ring
    p = ring.field.char
    if p:
        for m in f.terms:
            for i, e in enumerate(m):
                if e > 0 and e % p == 0:
                    raise RingError(
                        f"characteristic {p} divides an exponent of "
                        f"{ring.names[i]}; Jacobian criterion unavailable"
                    )
    gens = [f] + [f.diff(i) for i in range(ring.n)]
    return Ideal(ring, [g for g in gens if not g.is_zero()])


def ideals_equal_up_to_radical(i1, i2):
    """V(I) = V(J): every generator of each lies in the radical of the other."""
    if i1.ring != i2.ring:
        raise RingError("ideals live in different rings")
    return all(radical_member(g, i2) for g in i1.gens) and all(
        radical_member(g, i1) for g in i2.gens
    )


def eliminate(ideal, kill_names):
    """Intersection with the subring omitting the named variables.

    Uses a lex basis with the killed variables compared first.
    """
    ring = ideal.ring
    kill = set(kill_names)
    for nm in kill:
        if nm not in ring.names:
            raise RingError(f"unknown variable '{nm}'")
    kill_idx = [i for i, nm in enumerate(ring.names) if nm in kill]
    keep_idx = [i for i, nm in enumerate(ring.names) if nm not in kill]
    order = lex_order(kill_idx + keep_idx)
    gb = buchberger(ideal.gens, order) if any(
        not g.is_zero() for g in ideal.gens
    ) else GroebnerBasis(ring, order, [])
    target = PolyRing(ring.field, [ring.names[i] for i in keep_idx])
    index_map = [None] * ring.n
    for j, i in enumerate(keep_idx):
        index_map[i] = j
    kept = []
    for g in gb.polys:
        if all(all(m[i] == 0 for i in kill_idx) for m in g.terms):
            kept.append(g.project(target, index_map))
    return Ideal(target, kept)


# ---------------------------------------------------------------------------
# Quotient presentations and isomorphism certificates.


@dataclass
class QuotientPresentation:
    ring: PolyRing
    ideal: Ideal

    def __str__(self):
        gens = ", ".join(str(g) for g in self.ideal.gens) or "0"
        return f"{self.ring}/({gens})"


@dataclass
class RingMapCert:
    source: QuotientPresentation
    target: QuotientPresentation
    fwd: dict  # source var name -> Poly over target ring
    inv: dict  # target var name -> Poly over source ring


def _images(qp, mapping, codomain):
    out = []
    for nm in qp.ring.names:
        if nm not in mapping:
            raise RingError(f"certificate misses an image for '{nm}'")
        img = mapping[nm]
        if img.ring != codomain.ring:
            raise RingError(f"image of '{nm}' lives in the wrong ring")
        out.append(img)
    return out


def check_ring_iso(cert):
    """Verify a claimed isomorphism of quotient rings from its certificate.

    Checks that both maps are well defined (ideal generators land in the
    other ideal) and that both composites fix every variable modulo the
    respective ideal.
    """
    rep = CheckReport(True)
    src, tgt = cert.source, cert.target
    fwd = _images(src, cert.fwd, tgt)
    inv = _images(tgt, cert.inv, src)
    for g in src.ideal.gens:
        img = g.substitute(fwd, tgt.ring)
        rep.add(
            f"forward well-defined on {g}", tgt.ideal.contains(img), str(img)
        )
    for g in tgt.ideal.gens:
        img = g.substitute(inv, src.ring)
        rep.add(
            f"inverse well-defined on {g}", src.ideal.contains(img), str(img)
        )
    for i, nm in enumerate(src.ring.names):
        back = fwd[i].substitute(inv, src.ring)
        diff = back - src.ring.var(i)
        rep.add(
            f"inv(fwd({nm})) = {nm}", src.ideal.contains(diff), str(back)
        )
    for i, nm in enumerate(tgt.ring.names):
        back = inv[i].substitute(fwd, tgt.ring)
        diff = back - tgt.ring.var(i)
        rep.add(
            f"fwd(inv({nm})) = {nm}", tgt.ideal.contains(diff), str(back)
        )
    return rep


# ---------------------------------------------------------------------------
# Expression parser: x0^2*x1 + x2^2 - 3/2*x0, parentheses allowed.


class _Tok:
    def __init__(self, kind, val, pos):
        self.kind = kind
        self.val = val
        self.pos = pos


def _tokenize(s):
    toks = []
    i = 0
    while i < len(s):
        c = s[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            toks.append(_Tok("int", int(s[i:j]), i))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < len(s) and (s[j].isalnum() or s[j] == "_"):
                j += 1
            toks.append(_Tok("name", s[i:j], i))
            i = j
        elif c in "+-*/^()":
            toks.append(_Tok(c, c, i))
            i += 1
        else:
            raise RingError(f"bad character '{c}' at position {i}")
    toks.append(_Tok("end", None, len(s)))
    return toks


def parse_poly(ring, s):
    toks = _tokenize(s)
    pos = [0]

    def peek():
        return toks[pos[0]]

    def take(kind=None):
        t = toks[pos[0]]
        if kind and t.kind != kind:
            raise RingError(
                f"expected {kind} at position {t.pos} in '{s}'"
            )
        pos[0] += 1
        return t

    def parse_expr():
        t = peek()
        neg = False
        if t.kind in "+-":
            take()
            neg = t.kind == "-"
        acc = parse_term()
        if neg:
            acc = -acc
        while peek().kind in "+-":
            op = take().kind
            nxt = parse_term()
            acc = acc - nxt if op == "-" else acc + nxt
        return acc

    def parse_term():
        acc = parse_factor()
        while True:
            t = peek()
            if t.kind == "*":
                take()
                acc = acc * parse_factor()
            elif t.kind == "/":
                take()
                d = take("int").val
                if d == 0:
                    raise RingError("division by zero")
                acc = acc.scale(Fraction(1, d))
            else:
                return acc

    def parse_factor():
        t = peek()
        neg = False
        if t.kind == "-":
            take()
            neg = True
        base = parse_base()
        if peek().kind == "^":
            take()
            e = take("int").val
            base = base**e
        return -base if neg else base

    def parse_base():
        t = take()
        if t.kind == "int":
            return ring.const(t.val)
        if t.kind == "name":
            if t.val not in ring.names:
                raise RingError(
                    f"unknown variable '{t.val}' at position {t.pos}; "
                    f"ring is {ring}"
                )
            return ring.var(t.val)
        if t.kind == "(":
            inner = parse_expr()
            take(")")
            return inner
        raise RingError(f"unexpected token at position {t.pos} in '{s}'")

    out = parse_expr()
    take("end")
    return out


def parse_ring_decl(s):
    """Parse 'QQ[x,y,z]' or 'GF(7)[a,b]' into a PolyRing."""
    s = s.strip()
    if s.startswith("QQ[") and s.endswith("]"):
        names = [v.strip() for v in s[3:-1].split(",") if v.strip()]
        return PolyRing(QQ, names)
    if s.startswith("GF(") and "]" in s and s.endswith("]"):
        close = s.index(")")
        p = int(s[3:close])
        rest = s[close + 1 :]
        if not rest.startswith("[") or not rest.endswith("]"):
            raise RingError(f"bad ring declaration '{s}'")
        names = [v.strip() for v in rest[1:-1].split(",") if v.strip()]
        return PolyRing(FieldGF(p), names)
    raise RingError(f"bad ring declaration '{s}'")
