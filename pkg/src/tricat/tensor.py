"""Tensor structure on a support model: ideals, primes and their spectrum.

Products are valued in multisets of model objects (a decomposition of the
product into objects), so the support of a product is the union over its
members.  A subset of objects "absorbs" the product when every member of
every product with an arbitrary object stays inside.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bitset import (
    bits,
    intersection_close,
    is_subset,
    mask_of,
    next_closure_family,
    union_close,
)
from .errors import ModelError
from .models import CheckReport, ZERO, f_sigma, g_sigma, is_classifying


class TensorTable:
    """Symmetric product table with a distinguished unit object.

    Pairs not listed explicitly fall back to the intersection product: the
    product of two objects is the object supported on the intersection of
    their supports (an error if the model realizes no such object).
    """

    def __init__(self, model, unit, products=None, name=None):
        self.model = model
        self.name = name or f"tensor_{model.name}"
        self.unit = model.obj_index(unit)
        self._table = {}
        by_support = {}
        for o in model.objects:
            by_support.setdefault(model.sigma[o.index], o.index)
        products = products or {}
        for (a, b), members in products.items():
            key = tuple(sorted((model.obj_index(a), model.obj_index(b))))
            val = tuple(sorted(model.obj_index(x) for x in members))
            if key in self._table and self._table[key] != val:
                raise ModelError(f"conflicting products for pair {a},{b}")
            self._table[key] = val
        for i in range(model.nobj):
            for j in range(i, model.nobj):
                if (i, j) in self._table:
                    continue
                meet = model.sigma[i] & model.sigma[j]
                if meet not in by_support:
                    raise ModelError(
                        "no product declared for pair "
                        f"({model.objects[i].id},{model.objects[j].id}) and no "
                        f"object supported on {model.space.set_str(meet)}"
                    )
                self._table[(i, j)] = (by_support[meet],)
        zi = model.zero_index
        for i in range(model.nobj):
            if self._table[tuple(sorted((i, zi)))] != (zi,):
                raise ModelError(
                    f"product of '{model.objects[i].id}' with 0 must be 0"
                )
            got = self._table[tuple(sorted((i, self.unit)))]
            if got != (i,):
                raise ModelError(
                    f"unit law fails: {model.objects[i].id} (x) unit = "
                    + "{"
                    + ",".join(model.objects[k].id for k in got)
                    + "}"
                )

    def product(self, i, j):
        return self._table[tuple(sorted((i, j)))]

    def product_mask(self, i, j):
        return mask_of(self.product(i, j))


@dataclass
class TensorIdeal:
    members: int


@dataclass
class BalmerSpace:
    table: TensorTable
    primes: list  # object masks
    names: list
    spp: dict  # object id -> prime mask
    closed_family: list
    support_report: CheckReport


def _is_ideal(t, mask):
    m = t.model
    for i in bits(mask):
        for j in range(m.nobj):
            if not is_subset(t.product_mask(i, j), mask):
                return False, (i, j)
    return True, None


def tensor_ideal_closure(t, start):
    """Least thick, product-absorbing subset containing the given objects."""
    m = t.model
    cur = m.thick_closure(start)
    while True:
        grown = cur
        for i in bits(cur):
            for j in range(m.nobj):
                grown |= t.product_mask(i, j)
        grown = m.thick_closure(grown)
        if grown == cur:
            return TensorIdeal(cur)
        cur = grown


def radical(t, ideal):
    """Objects with some tensor power inside the ideal.

    Powers of an object run through finitely many object subsets, so the
    iteration stops at the first repeat.  The result is re-checked to be a
    thick tensor ideal.
    """
    m = t.model
    mask = ideal.members
    if not m.is_thick(mask) or not _is_ideal(t, mask)[0]:
        raise ModelError("radical needs a thick tensor ideal")
    out = 0
    for i in range(m.nobj):
        seen = set()
        power = 1 << i
        while power not in seen:
            seen.add(power)
            if is_subset(power, mask):
                out |= 1 << i
                break
            power = mask_of(
                k for a in bits(power) for k in t.product(a, i)
            )
    res = TensorIdeal(out)
    if not m.is_thick(out) or not _is_ideal(t, out)[0]:
        raise ModelError(
            "radical failed to be a thick tensor ideal on this product table"
        )
    return res


def is_prime(t, ideal):
    """Product lands in the ideal only if one factor is already inside."""
    m = t.model
    mask = ideal.members
    if mask == m.all_mask:
        raise ModelError("prime ideals are proper")
    for i in range(m.nobj):
        for j in range(i, m.nobj):
            if is_subset(t.product_mask(i, j), mask):
                if not (mask >> i) & 1 and not (mask >> j) & 1:
                    return False
    return True


def balmer_spectrum(t):
    """Enumerate prime thick tensor ideals and the topology they carry."""
    m = t.model
    ideals = [
        x
        for x in next_closure_family(
            lambda s: tensor_ideal_closure(t, s).members, m.nobj
        )
        if _is_ideal(t, x)[0]
    ]
    primes = [
        x for x in ideals if x != m.all_mask and is_prime(t, TensorIdeal(x))
    ]
    primes.sort()
    pos = {x: k for k, x in enumerate(primes)}
    names = [f"Q{k}" for k in range(len(primes))]
    spp = {}
    for o in m.objects:
        spp[o.id] = mask_of(
            k for k, x in enumerate(primes) if not (x >> o.index) & 1
        )
    full = (1 << len(primes)) - 1
    closed_family = intersection_close(sorted(set(spp.values())), full)

    rep = CheckReport(True)
    rep.add("Spp(0) empty", spp[ZERO] == 0)
    bad = [
        f"{a}(+){b}={c}"
        for a, b, c in m.sums
        if spp[c] != spp[a] | spp[b]
    ]
    rep.add("Spp sum additivity", not bad, "; ".join(bad))
    bad = [
        f"({l},{mid},{n})"
        for l, mid, n in m.triangles
        if not is_subset(spp[mid], spp[l] | spp[n])
    ]
    rep.add("Spp triangle inclusion", not bad, "; ".join(bad))
    bad = []
    for i in range(m.nobj):
        for j in range(i, m.nobj):
            got = 0
            for k in t.product(i, j):
                got |= spp[m.objects[k].id]
            if got != spp[m.objects[i].id] & spp[m.objects[j].id]:
                bad.append(f"({m.objects[i].id},{m.objects[j].id})")
    rep.add("Spp tensorial", not bad, "; ".join(bad))
    return BalmerSpace(t, primes, names, spp, closed_family, rep)


def check_tensorial(t):
    """Supports multiply by intersection: sigma(M (x) N) = sigma(M) n sigma(N)."""
    m = t.model
    for i in range(m.nobj):
        for j in range(i, m.nobj):
            got = 0
            for k in t.product(i, j):
                got |= m.sigma[k]
            if got != m.sigma[i] & m.sigma[j]:
                return False
    return True


def check_unit_generation(t):
    """Evaluate the unit-generation equivalences on this finite model.

    (i) every thick subcategory is a tensor ideal, (ii) the unit generates
    everything, (iii) the support maps biject thick subcategories with
    specialization-closed subsets, (iv) every thick tensor ideal is radical.
    When the model uses the canonical closure and (ii) and (iv) hold, (i)
    and (iii) are asserted to follow; a violation would mean the finite
    model broke the expected implication and is loudly reported.
    """
    m = t.model
    rep = CheckReport(True)
    thicks = m.thick_subcategories()

    non_ideal = None
    witness_pair = None
    for x in thicks:
        ok, pair = _is_ideal(t, x)
        if not ok:
            non_ideal = x
            witness_pair = pair
            break
    cond_i = non_ideal is None
    detail_i = ""
    if not cond_i:
        i, j = witness_pair
        detail_i = (
            f"thick non-ideal {m.object_set_str(non_ideal)}: "
            f"{m.objects[i].id} (x) {m.objects[j].id} escapes"
        )
    rep.checks.append(("(i) every thick subcategory is a tensor ideal",
                       cond_i, detail_i))

    cond_ii = m.thick_closure(1 << t.unit) == m.all_mask
    rep.checks.append(("(ii) unit generates the category", cond_ii, ""))

    cond_iii, wit = is_classifying(m)
    rep.checks.append(
        ("(iii) thick subcategories match specialization-closed sets",
         cond_iii, wit)
    )

    ideals = [x for x in thicks if _is_ideal(t, x)[0]]
    not_radical = [
        x for x in ideals if radical(t, TensorIdeal(x)).members != x
    ]
    cond_iv = not not_radical
    rep.checks.append(
        ("(iv) every thick tensor ideal is radical", cond_iv,
         m.object_set_str(not_radical[0]) if not_radical else "")
    )
    rep.extras.update(
        {"i": cond_i, "ii": cond_ii, "iii": cond_iii, "iv": cond_iv}
    )
    rep.ok = True  # informational; implication check below drives failure

    if m.closure_mode == "canonical" and cond_ii and cond_iv:
        holds = cond_i and cond_iii
        rep.add("(ii)+(iv) imply (i) and (iii)", holds,
                "" if holds else "finite model violated the implication")
    else:
        rep.checks.append(
            ("(ii)+(iv) imply (i) and (iii)", True, "not applicable")
        )
    return rep


def classify_radical_ideals(t):
    """Match radical thick tensor ideals with Thomason subsets of the spectrum.

    On these finite spaces Thomason subsets are exactly the specialization
    closed ones, i.e. unions of point closures in the computed topology.
    """
    m = t.model
    spc = balmer_spectrum(t)
    rep = CheckReport(True)
    rep.extras["spectrum"] = spc

    ideals = [
        x
        for x in next_closure_family(
            lambda s: tensor_ideal_closure(t, s).members, m.nobj
        )
        if _is_ideal(t, x)[0]
    ]
    radical_ideals = sorted(
        x for x in ideals if radical(t, TensorIdeal(x)).members == x
    )

    npr = len(spc.primes)
    cl_pt = []
    for k in range(npr):
        c = (1 << npr) - 1
        for fam in spc.closed_family:
            if (fam >> k) & 1:
                c &= fam
        cl_pt.append(c)
    # specialization-closed = union of point closures; finite, so Thomason
    thomason = union_close(cl_pt)
    spcl_set = set(thomason)

    rep.extras["radical_ideal_count"] = len(radical_ideals)
    rep.extras["thomason_count"] = len(thomason)

    def f_spp(x):
        w = 0
        for i in bits(x):
            w |= spc.spp[m.objects[i].id]
        return w

    def g_spp(w):
        return mask_of(
            i for i in range(m.nobj)
            if is_subset(spc.spp[m.objects[i].id], w)
        )

    ok = len(radical_ideals) == len(thomason)
    rep.add(
        "counts agree",
        ok,
        f"{len(radical_ideals)} radical ideals vs {len(thomason)} subsets",
    )
    for x in radical_ideals:
        w = f_spp(x)
        if w not in spcl_set or g_spp(w) != x:
            rep.add(
                "g(f(ideal)) = ideal", False,
                m.object_set_str(x),
            )
            return rep
    rep.add("g(f(ideal)) = ideal for all radical ideals", True)
    for w in thomason:
        x = g_spp(w)
        if x not in set(radical_ideals) or f_spp(x) != w:
            rep.add("f(g(subset)) = subset", False, bin(w))
            return rep
    rep.add("f(g(subset)) = subset for all Thomason subsets", True)
    return rep


def intersection_table(model, unit=None, name=None):
    """Canonical table where products are intersections of supports.

    The default unit is the object supported on the whole space.
    """
    if unit is None:
        full = model.space.full
        cands = [
            o.id for o in model.objects if model.sigma[o.index] == full
        ]
        if not cands:
            raise ModelError("no full-support object to act as unit")
        unit = cands[0]
    return TensorTable(model, unit, None, name=name)
