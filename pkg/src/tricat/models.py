"""Finite stand-ins for triangulated categories carrying support data.

A model is a finite object set with a support map into a finite space,
declared direct sums and triangles, and a thick-closure operator on object
subsets.  Shift acts as the identity on object classes, so the shift axiom
for supports holds by construction and is only reported, never computed.

Two closure modes exist.  The canonical one derives thickness from supports
(thick(S) = every object whose support lies in the union of supports over S);
the explicit one is given by its family of fixed points, which lets one build
models that deliberately fail to be classifying.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bitset import (
    bits,
    intersection_close,
    is_subset,
    mask_of,
    next_closure_family,
    popcount,
    union_close,
)
from .errors import ModelError, ParseError, SpaceError
from .report import CheckReport
from . import spaces as sp

ZERO = "0"


@dataclass(frozen=True)
class ObjectId:
    id: str
    index: int


@dataclass
class ThickSubcat:
    members: int
    is_fixed_point: bool = True


class SupportModel:
    def __init__(
        self,
        space,
        object_ids,
        sigma,
        sums=(),
        triangles=(),
        closure="canonical",
        name="model",
    ):
        self.name = name
        self.space = space
        if ZERO not in object_ids:
            object_ids = [ZERO] + list(object_ids)
        if len(set(object_ids)) != len(object_ids):
            raise ModelError("duplicate object ids")
        self.objects = [ObjectId(o, i) for i, o in enumerate(object_ids)]
        self._index = {o: i for i, o in enumerate(object_ids)}
        self.nobj = len(object_ids)
        self.all_mask = (1 << self.nobj) - 1
        self.sigma = [0] * self.nobj
        for oid, mask in sigma.items():
            if oid not in self._index:
                raise ModelError(f"support given for unknown object '{oid}'")
            self.sigma[self._index[oid]] = mask
        for o in self.objects:
            if o.id != ZERO and o.id not in sigma:
                raise ModelError(f"missing support for object '{o.id}'")
            if not space.is_closed(self.sigma[o.index]):
                raise ModelError(
                    f"support of '{o.id}' is not closed: "
                    f"{space.set_str(self.sigma[o.index])}"
                )
        self.sums = [tuple(self._req(x) for x in t) for t in sums]
        self.triangles = [tuple(self._req(x) for x in t) for t in triangles]
        self._thick_cache = {}
        if closure == "canonical":
            self.closure_mode = "canonical"
            self.closure_family = None
        else:
            self.closure_mode = "explicit"
            family = sorted(set(closure))
            if self.all_mask not in family:
                raise ModelError("explicit closure family must contain all objects")
            closed = set(intersection_close(family, self.all_mask))
            if closed != set(family):
                missing = sorted(closed - set(family))[0]
                raise ModelError(
                    "explicit closure family not intersection-closed; "
                    f"missing {self.object_set_str(missing)}"
                )
            zbit = 1 << self._index[ZERO]
            for f in family:
                if not f & zbit:
                    raise ModelError("every thick subcategory must contain '0'")
            self.closure_family = family

    # -- basic access -------------------------------------------------------

    def _req(self, oid):
        if oid not in self._index:
            raise ModelError(f"unknown object id '{oid}'")
        return oid

    def obj_index(self, oid):
        return self._index[self._req(oid)]

    def object_set_str(self, mask):
        return "{" + ",".join(self.objects[i].id for i in bits(mask)) + "}"

    @property
    def zero_index(self):
        return self._index[ZERO]

    # -- thick closure ------------------------------------------------------

    def thick_closure(self, mask):
        mask |= 1 << self.zero_index
        if mask in self._thick_cache:
            return self._thick_cache[mask]
        if self.closure_mode == "canonical":
            w = 0
            for i in bits(mask):
                w |= self.sigma[i]
            res = mask_of(
                i for i in range(self.nobj) if is_subset(self.sigma[i], w)
            )
        else:
            # intersection of all family members containing mask
            res = self.all_mask
            for f in self.closure_family:
                if is_subset(mask, f):
                    res &= f
        self._thick_cache[mask] = res
        return res

    def is_thick(self, mask):
        return self.thick_closure(mask) == mask

    def thick_subcategories(self):
        """All fixed points of the closure operator, lectically enumerated."""
        return next_closure_family(self.thick_closure, self.nobj)

    def principal_thicks(self):
        """thick(M) for every object M, deduped, ascending by mask."""
        return sorted({self.thick_closure(1 << i) for i in range(self.nobj)})


# ---------------------------------------------------------------------------
# Support-data axioms and the canonical model.


def check_support_axioms(m):
    """Verify the support-data axioms against the declared structure.

    Covers: empty support of the zero object, additivity on declared sums,
    the triangle inclusion on declared triangles, and the strengthened
    emptiness condition (support empty only for the zero object).  The shift
    axiom holds vacuously because objects are shift classes.
    """
    rep = CheckReport(True)
    rep.add("sigma(0) empty", m.sigma[m.zero_index] == 0,
            m.space.set_str(m.sigma[m.zero_index]))
    bad = []
    for a, b, c in m.sums:
        u = m.sigma[m.obj_index(a)] | m.sigma[m.obj_index(b)]
        if m.sigma[m.obj_index(c)] != u:
            bad.append(f"{a}(+){b}={c}")
    rep.add("sum additivity", not bad, "; ".join(bad))
    bad = []
    for l, mid, n in m.triangles:
        if not is_subset(
            m.sigma[m.obj_index(mid)],
            m.sigma[m.obj_index(l)] | m.sigma[m.obj_index(n)],
        ):
            bad.append(f"({l},{mid},{n})")
    rep.add("triangle inclusion", not bad, "; ".join(bad))
    rep.add("shift invariance", True, "vacuous: objects are shift classes")
    only_zero = all(
        m.sigma[i] != 0 for i in range(m.nobj) if i != m.zero_index
    )
    rep.extras["condition_1prime"] = only_zero
    rep.checks.append(
        ("emptiness detects zero (1')", only_zero, "informational")
    )
    return rep


def build_canonical_model(space, name=None):
    """Model with one object per nonempty closed set, supported there.

    Sums are declared for every object pair (unions of closed sets stay
    closed on these spaces) and each sum contributes its rotated triangle.
    """
    closed = [z for z in space.up_sets() if z != 0]
    ids = [ZERO] + ["M_" + "_".join(space.points[i].id for i in bits(z))
                    for z in closed]
    sigma = {oid: z for oid, z in zip(ids[1:], closed)}
    sigma[ZERO] = 0
    by_mask = {z: oid for oid, z in zip(ids[1:], closed)}
    by_mask[0] = ZERO
    sums = []
    for i, z in enumerate([0] + closed):
        for w in ([0] + closed)[i:]:
            u = z | w
            sums.append((by_mask[z], by_mask[w], by_mask[u]))
    triangles = [(a, c, b) for a, b, c in sums]
    return SupportModel(
        space, ids, sigma, sums, triangles, "canonical",
        name=name or f"canonical_{space.name}",
    )


# ---------------------------------------------------------------------------
# The two support maps and the classifying test.


def f_sigma(m, thick_mask):
    """Union of supports over an object subset; always specialization-closed."""
    w = 0
    for i in bits(thick_mask):
        w |= m.sigma[i]
    return w


def g_sigma(m, w):
    """Objects supported inside w.  w must be specialization-closed."""
    if not m.space.is_closed(w):
        raise SpaceError(
            f"{m.space.set_str(w)} is not specialization-closed"
        )
    members = mask_of(
        i for i in range(m.nobj) if is_subset(m.sigma[i], w)
    )
    return ThickSubcat(members, m.is_thick(members))


def is_classifying(m):
    """Brute-force check that f/g are mutually inverse bijections.

    Returns (bool, witness-string).  Enumerates every thick subcategory and
    every specialization-closed subset rather than trusting either side.
    """
    for w in m.space.up_sets():
        x = g_sigma(m, w).members
        w2 = f_sigma(m, x)
        if w2 != w:
            return False, (
                f"f(g({m.space.set_str(w)})) = {m.space.set_str(w2)}"
            )
    for x in m.thick_subcategories():
        w = f_sigma(m, x)
        if not m.space.is_closed(w):
            return False, (
                f"f({m.object_set_str(x)}) = {m.space.set_str(w)} not closed"
            )
        x2 = g_sigma(m, w).members
        if x2 != x:
            return False, (
                f"g(f({m.object_set_str(x)})) = {m.object_set_str(x2)}"
            )
    return True, ""


def realize_closed(m, z):
    """Some object supported exactly on the closed set z (smallest index).

    For irreducible z the witness is hunted through g(z) from its generic
    point, mirroring how such an object is known to exist.
    """
    ok, wit = is_classifying(m)
    if not ok:
        raise ModelError(f"model is not classifying ({wit})")
    if not m.space.is_closed(z):
        raise SpaceError(f"{m.space.set_str(z)} is not closed")
    gens = [i for i in bits(z) if m.space.up[i] == z]
    if gens:
        g = gens[0]
        for i in bits(g_sigma(m, z).members):
            if m.sigma[i] & (1 << g):
                # support sits inside z and touches the generic point, so
                # it is all of z
                return m.objects[i]
    for i in range(m.nobj):
        if m.sigma[i] == z:
            return m.objects[i]
    raise ModelError(
        f"no object realizes {m.space.set_str(z)}; classifying data inconsistent"
    )


# ---------------------------------------------------------------------------
# Spectrum of the thick-subcategory lattice.


@dataclass
class SpectrumResult:
    model: SupportModel
    point_masks: list  # irreducible principal thicks, as object masks
    point_ids: list  # printable names
    spec_space: sp.SpecSpace
    supp: dict  # object id -> mask over spectrum points
    closed_family: list  # masks over spectrum points
    phi: dict  # model-space point id -> spectrum point id (when defined)
    alexandrov_discrepancy: list  # closed family vs order up-sets mismatch


def spec_of(m):
    """Points, supports and topology of the spectrum of the thick lattice.

    A principal thick subcategory is irreducible when it only arises as the
    closure of a union of two principal ones trivially.  The topology is
    generated by the object supports as a closed subbasis; the specialization
    order is derived from that topology, and any gap between the generated
    topology and the order topology is recorded, not resolved.
    """
    pth = m.principal_thicks()
    zero_thick = m.thick_closure(1 << m.zero_index)
    candidates = [x for x in pth if x != zero_thick]
    points = []
    for x in candidates:
        irreducible = True
        for x1 in pth:
            for x2 in pth:
                if m.thick_closure(x1 | x2) == x and x1 != x and x2 != x:
                    irreducible = False
                    break
            if not irreducible:
                break
        if irreducible:
            points.append(x)
    points.sort()
    nspec = len(points)
    pos = {x: k for k, x in enumerate(points)}

    def pname(x):
        lead = min(
            (i for i in range(m.nobj) if m.thick_closure(1 << i) == x),
            default=None,
        )
        return f"P[{m.objects[lead].id}]" if lead is not None else f"P{pos[x]}"

    names = [pname(x) for x in points]
    if len(set(names)) != nspec:
        names = [f"P{k}" for k in range(nspec)]

    supp = {}
    for o in m.objects:
        tm = m.thick_closure(1 << o.index)
        supp[o.id] = mask_of(k for k, x in enumerate(points) if is_subset(x, tm))

    full = (1 << nspec) - 1
    basis = union_close(sorted(set(supp.values())))
    closed_family = intersection_close(basis, full)

    # specialization order: q in cl{p} iff every closed set containing p
    # contains q
    leq_pairs = []
    for p in range(nspec):
        for q in range(nspec):
            if p == q:
                continue
            if all(
                (c >> q) & 1
                for c in closed_family
                if (c >> p) & 1
            ):
                leq_pairs.append((names[p], names[q]))
    spec_space = sp.SpecSpace(names, leq_pairs, name=f"Spec({m.name})")

    discrepancy = sorted(
        set(closed_family) ^ set(spec_space.up_sets())
    )

    phi = {}
    for pt in m.space.points:
        x = g_sigma(m, m.space.up[pt.index]).members
        if x in pos:
            phi[pt.id] = names[pos[x]]
    return SpectrumResult(
        m, points, names, spec_space, supp, closed_family, phi, discrepancy
    )


def verify_reconstruction(m):
    """Check that the space is recovered from the thick lattice alone.

    Builds phi(x) = g(closure of x), checks it lands bijectively on the
    spectrum points, carries the closed sets of the space exactly onto the
    generated topology of the spectrum, and matches supports objectwise.
    """
    ok, wit = is_classifying(m)
    if not ok:
        raise ModelError(f"model is not classifying ({wit})")
    res = spec_of(m)
    rep = CheckReport(True)
    rep.extras["spectrum"] = res
    pos = {x: k for k, x in enumerate(res.point_masks)}

    phi_idx = {}
    total = True
    for pt in m.space.points:
        x = g_sigma(m, m.space.up[pt.index]).members
        if x not in pos:
            total = False
            rep.add(
                f"phi({pt.id}) lands in spectrum", False,
                m.object_set_str(x),
            )
        else:
            phi_idx[pt.index] = pos[x]
    rep.add("phi total", total)
    if not total:
        return rep
    bij = len(set(phi_idx.values())) == m.space.n == len(res.point_masks)
    rep.add("phi bijective", bij,
            f"{m.space.n} space points vs {len(res.point_masks)} spectrum points")
    if not bij:
        return rep

    def push(mask):
        return mask_of(phi_idx[i] for i in bits(mask))

    image_family = sorted(push(z) for z in m.space.up_sets())
    rep.add(
        "phi carries closed sets onto spectrum topology",
        image_family == res.closed_family,
        f"{len(image_family)} vs {len(res.closed_family)} closed sets",
    )
    bad = []
    for o in m.objects:
        if push(m.sigma[o.index]) != res.supp[o.id]:
            bad.append(o.id)
    rep.add("supports transported objectwise", not bad, ",".join(bad))
    phi_map = {
        m.space.points[i].id: res.point_ids[k] for i, k in phi_idx.items()
    }
    rep.extras["phi"] = phi_map
    rep.add(
        "phi homeomorphism (closed-set transport)",
        sp.check_homeomorphism(m.space, res.spec_space, phi_map),
    )
    rep.add(
        "phi order isomorphism (cross-check)",
        sp.order_isomorphic(m.space, res.spec_space, phi_map),
    )
    rep.add(
        "no subbasis/order topology discrepancy",
        not res.alexandrov_discrepancy,
        f"{len(res.alexandrov_discrepancy)} sets differ"
        if res.alexandrov_discrepancy
        else "",
    )
    return rep


# ---------------------------------------------------------------------------
# Transport along an equivalence and quotient models.


def _closure_compatible(a, b, fwd_idx):
    """Does the object bijection map the thick family of a onto that of b?"""
    fam_a = a.thick_subcategories()
    fam_b = set(b.thick_subcategories())
    for t in fam_a:
        img = mask_of(fwd_idx[i] for i in bits(t))
        if img not in fam_b:
            return False, a.object_set_str(t)
    if len(fam_a) != len(fam_b):
        extra = sorted(fam_b - {mask_of(fwd_idx[i] for i in bits(t)) for t in fam_a})
        return False, "image misses " + b.object_set_str(extra[0])
    return True, ""


def transport_support(a, b, fmap):
    """Pull b's support data back along an object bijection F and compare.

    F must send zero to zero and identify the two thick-subcategory
    families.  The pulled-back data is verified to be classifying support
    data for a, and the induced point map between the underlying spaces is
    returned together with the objectwise support identification.
    """
    if set(fmap.keys()) != {o.id for o in a.objects}:
        raise ModelError("object map is not total on the source objects")
    if sorted(fmap.values()) != sorted(o.id for o in b.objects):
        raise ModelError("object map is not a bijection onto the target objects")
    if fmap[ZERO] != ZERO:
        raise ModelError("object map must send 0 to 0")
    fwd_idx = {a.obj_index(k): b.obj_index(v) for k, v in fmap.items()}
    ok, witness = _closure_compatible(a, b, fwd_idx)
    if not ok:
        raise ModelError(
            f"object map does not commute with thick closure at {witness}"
        )

    rep = CheckReport(True)
    tau = [b.sigma[fwd_idx[i]] for i in range(a.nobj)]

    # pulled-back data is a support data for a
    rep.add("pulled-back sigma(0) empty", tau[a.zero_index] == 0)
    bad = [
        f"{x}(+){y}={z}"
        for x, y, z in a.sums
        if tau[a.obj_index(z)]
        != tau[a.obj_index(x)] | tau[a.obj_index(y)]
    ]
    rep.add("pulled-back sum additivity", not bad, "; ".join(bad))
    bad = [
        f"({x},{y},{z})"
        for x, y, z in a.triangles
        if not is_subset(
            tau[a.obj_index(y)],
            tau[a.obj_index(x)] | tau[a.obj_index(z)],
        )
    ]
    rep.add("pulled-back triangle inclusion", not bad, "; ".join(bad))

    # classifying for a: f/g between a's thick family and b's space
    def g_tau(w):
        return mask_of(i for i in range(a.nobj) if is_subset(tau[i], w))

    def f_tau(x):
        w = 0
        for i in bits(x):
            w |= tau[i]
        return w

    fam_a = set(a.thick_subcategories())
    ok = True
    wit = ""
    for w in b.space.up_sets():
        x = g_tau(w)
        if x not in fam_a or f_tau(x) != w:
            ok, wit = False, b.space.set_str(w)
            break
    if ok:
        for x in fam_a:
            if g_tau(f_tau(x)) != x:
                ok, wit = False, a.object_set_str(x)
                break
    rep.add("pulled-back data classifying", ok, wit)
    if not rep.ok:
        return rep

    # induced homeomorphism between the spaces
    phi = {}
    for pt in a.space.points:
        x = g_sigma(a, a.space.up[pt.index]).members
        w = f_tau(x)
        try:
            phi[pt.id] = sp.generic_point(b.space, w).id
        except SpaceError:
            rep.add(
                f"image of cl({pt.id}) irreducible", False, b.space.set_str(w)
            )
            return rep
    rep.extras["phi"] = phi
    rep.add("induced map homeomorphism",
            sp.check_homeomorphism(a.space, b.space, phi))

    def push(mask):
        return b.space.mask(phi[a.space.points[i].id] for i in bits(mask))

    bad = [
        o.id
        for o in a.objects
        if push(a.sigma[o.index]) != tau[o.index]
    ]
    rep.add("supports map to transported supports", not bad, ",".join(bad))
    return rep


def check_order_transport(a, b, fmap):
    """After a transport, punctured down-set complements must correspond.

    For every point p the set of points not below p is specialization
    closed; the induced homeomorphism has to match these sets across the
    two spaces.
    """
    base = transport_support(a, b, fmap)
    rep = CheckReport(True)
    if not base.ok:
        rep.add("transport succeeded", False)
        return rep
    phi = base.extras["phi"]
    rep.extras["phi"] = phi
    for pt in a.space.points:
        wa = a.space.full & ~a.space.down[pt.index]
        q = b.space._idx(phi[pt.id])
        wb = b.space.full & ~b.space.down[q]
        img = b.space.mask(phi[a.space.points[i].id] for i in bits(wa))
        rep.add(
            f"kill-set of {pt.id} transported", img == wb,
            f"{b.space.set_str(img)} vs {b.space.set_str(wb)}",
        )
    return rep


def quotient_model(m, w, name=None):
    """Collapse every object supported inside w and puncture the space.

    Models the quotient by the subcategory of objects vanishing outside w:
    surviving objects keep their support restricted to the remaining points.
    With w the set of points not below p this is localization at p, and the
    killed objects are exactly those whose support misses p.
    """
    if not m.space.is_closed(w):
        raise SpaceError(f"{m.space.set_str(w)} is not specialization-closed")
    ok, wit = is_classifying(m)
    if not ok:
        raise ModelError(f"model is not classifying ({wit})")
    kill = g_sigma(m, w).members

    keep_pts = [p for p in m.space.points if not (w >> p.index) & 1]
    names = [p.id for p in keep_pts]
    pairs = [
        (p.id, q.id)
        for p in keep_pts
        for q in keep_pts
        if m.space.leq(p.id, q.id)
    ]
    new_space = sp.SpecSpace(
        names, pairs, name=f"{m.space.name}-minus-{popcount(w)}pts"
    )
    restrict = {
        p.id: new_space._idx(p.id) for p in keep_pts
    }

    def push_support(mask):
        return mask_of(
            restrict[m.space.points[i].id] for i in bits(mask)
            if m.space.points[i].id in restrict
        )

    survivors = [
        o for o in m.objects
        if o.id != ZERO and not (kill >> o.index) & 1
    ]
    ids = [ZERO] + [o.id for o in survivors]
    sigma = {o.id: push_support(m.sigma[o.index]) for o in survivors}
    sigma[ZERO] = 0

    def rename(oid):
        i = m.obj_index(oid)
        return ZERO if (kill >> i) & 1 else oid

    sums = sorted(
        {tuple(rename(x) for x in t) for t in m.sums}
    )
    triangles = sorted(
        {tuple(rename(x) for x in t) for t in m.triangles}
    )

    if m.closure_mode == "canonical":
        closure = "canonical"
    else:
        idx_new = {oid: k for k, oid in enumerate(ids)}
        family = set()
        for f in m.closure_family:
            g = 1 << idx_new[ZERO]
            for i in bits(f):
                oid = m.objects[i].id
                if oid in idx_new:
                    g |= 1 << idx_new[oid]
            family.add(g)
        closure = sorted(family)
    return SupportModel(
        new_space, ids, sigma, sums, triangles, closure,
        name=name or f"{m.name}/quotient",
    )


# ---------------------------------------------------------------------------
# Model file format:
#   model <name>
#   use_space <name>
#   object <id> supp { <point ids> }
#   sum <a> <b> -> <c>
#   triangle <l> <m> <n>
#   closure canonical
#   closure explicit { <ids> } -> { <ids> } ; ...
#   quotient { <point ids> }             (optional; used by model-quotient)
#   tensor unit <id>
#   prod <a> <b> -> { <ids> }


def _parse_braced(tokens, start, lineno):
    if start >= len(tokens) or tokens[start] != "{":
        raise ParseError("expected '{'", lineno)
    out = []
    i = start + 1
    while i < len(tokens) and tokens[i] != "}":
        out.append(tokens[i])
        i += 1
    if i >= len(tokens):
        raise ParseError("unterminated '{'", lineno)
    return out, i + 1


def parse_model(text, space):
    """Parse a model file against an already-parsed space.

    Returns (SupportModel, tensor_spec) where tensor_spec is None or a dict
    {"unit": id, "products": {(a, b): [ids]}} for the tensor layer.
    """
    name = None
    use_space = None
    objects = []
    sigma = {}
    sums = []
    triangles = []
    closure_decl = "canonical"
    explicit_pairs = []
    quotient_pts = None
    tensor_unit = None
    products = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.replace("{", " { ").replace("}", " } ").split()
        head = toks[0]
        if head == "model" and len(toks) == 2:
            name = toks[1]
        elif head == "use_space" and len(toks) == 2:
            use_space = toks[1]
        elif head == "object":
            if len(toks) < 3 or toks[2] != "supp":
                raise ParseError("object line needs: object <id> supp { .. }", lineno)
            oid = toks[1]
            pts, _ = _parse_braced(toks, 3, lineno)
            for p in pts:
                if p not in space._index:
                    raise ParseError(
                        f"unknown point '{p}' in support of '{oid}'", lineno
                    )
            if oid in sigma:
                raise ParseError(f"duplicate object '{oid}'", lineno)
            objects.append(oid)
            sigma[oid] = space.mask(pts)
        elif head == "sum" and len(toks) == 5 and toks[3] == "->":
            sums.append((toks[1], toks[2], toks[4]))
        elif head == "triangle" and len(toks) == 4:
            triangles.append((toks[1], toks[2], toks[3]))
        elif head == "closure":
            if len(toks) >= 2 and toks[1] == "canonical":
                closure_decl = "canonical"
            elif len(toks) >= 2 and toks[1] == "explicit":
                closure_decl = "explicit"
                rest = toks[2:]
                while rest:
                    src, k = _parse_braced(rest, 0, lineno)
                    if k >= len(rest) or rest[k] != "->":
                        raise ParseError("explicit closure needs '->'", lineno)
                    dst, k2 = _parse_braced(rest, k + 1, lineno)
                    explicit_pairs.append((src, dst))
                    rest = rest[k2:]
                    if rest and rest[0] == ";":
                        rest = rest[1:]
            else:
                raise ParseError("closure must be canonical or explicit", lineno)
        elif head == "quotient":
            pts, _ = _parse_braced(toks, 1, lineno)
            quotient_pts = pts
        elif head == "tensor" and len(toks) == 3 and toks[1] == "unit":
            tensor_unit = toks[2]
        elif head == "prod" and len(toks) >= 5 and toks[3] == "->":
            members, _ = _parse_braced(toks, 4, lineno)
            products[(toks[1], toks[2])] = members
        else:
            raise ParseError(f"unrecognized model line: '{line}'", lineno)

    if name is None:
        raise ParseError("missing 'model <name>' header")
    if use_space is not None and use_space != space.name:
        raise ParseError(
            f"model expects space '{use_space}' but got '{space.name}'"
        )
    if ZERO not in sigma:
        objects = [ZERO] + objects
        sigma[ZERO] = 0

    if closure_decl == "explicit":
        order = [ZERO] + [o for o in objects if o != ZERO]
        idx = {o: i for i, o in enumerate(order)}
        for src, dst in explicit_pairs:
            for o in src + dst:
                if o not in idx:
                    raise ParseError(f"unknown object '{o}' in closure block")
        family = {mask_of(idx[o] for o in dst) | 1 << idx[ZERO]
                  for _, dst in explicit_pairs}
        family.add((1 << len(order)) - 1)
        closure = sorted(family)
    else:
        closure = "canonical"

    for t in sums + triangles:
        for o in t:
            if o not in sigma:
                raise ParseError(f"unknown object '{o}' in sum/triangle")
    model = SupportModel(
        space, objects, sigma, sums, triangles, closure, name=name
    )
    tensor_spec = None
    if tensor_unit is not None or products:
        if tensor_unit is None:
            raise ParseError("tensor block needs 'tensor unit <id>'")
        for (a, b), mem in products.items():
            for o in (a, b, *mem):
                if o not in sigma:
                    raise ParseError(f"unknown object '{o}' in prod line")
        tensor_spec = {"unit": tensor_unit, "products": products}
    if quotient_pts is not None:
        model.quotient_request = space.mask(quotient_pts)
    return model, tensor_spec
