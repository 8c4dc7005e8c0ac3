"""Finite posets standing in for noetherian sober topological spaces.

Convention used everywhere: ``p <= q`` means ``q`` lies in the closure of
``{p}`` (q specializes p).  Closed sets are then exactly the up-sets of the
order, every finite poset is sober, and specialization-closed = closed under
arbitrary unions of closed sets = the same up-set family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .bitset import bits, is_subset, mask_of, popcount
from .errors import ParseError, SpaceError


@dataclass(frozen=True)
class Point:
    id: str
    index: int


class SpecSpace:
    """Immutable finite poset with bitset machinery for its closed sets.

    ``up[i]`` is the mask of the closure of point i (reflexive).
    """

    def __init__(self, names, leq_pairs, name="space"):
        if len(set(names)) != len(names):
            raise SpaceError("duplicate point ids")
        self.name = name
        self.points = [Point(nm, i) for i, nm in enumerate(names)]
        self._index = {nm: i for i, nm in enumerate(names)}
        n = len(names)
        self.n = n
        self.full = (1 << n) - 1
        up = [1 << i for i in range(n)]
        for a, b in leq_pairs:
            up[self._idx(a)] |= 1 << self._idx(b)
        # reflexive-transitive closure (Warshall on bitmasks)
        changed = True
        while changed:
            changed = False
            for i in range(n):
                m = up[i]
                for j in bits(m):
                    if up[j] & ~m:
                        m |= up[j]
                if m != up[i]:
                    up[i] = m
                    changed = True
        for i in range(n):
            for j in bits(up[i]):
                if j != i and up[j] & (1 << i):
                    raise SpaceError(
                        f"specialization cycle through '{names[i]}' and '{names[j]}'"
                    )
        self.up = up
        self.down = [
            mask_of(j for j in range(n) if up[j] & (1 << i)) for i in range(n)
        ]

    def _idx(self, point):
        if isinstance(point, Point):
            return point.index
        if isinstance(point, int):
            if not 0 <= point < self.n:
                raise SpaceError(f"point index {point} out of range")
            return point
        try:
            return self._index[point]
        except KeyError:
            raise SpaceError(f"unknown point id '{point}'") from None

    def point(self, point):
        return self.points[self._idx(point)]

    def leq(self, p, q):
        """p <= q, i.e. q is in the closure of p."""
        return bool(self.up[self._idx(p)] & (1 << self._idx(q)))

    def is_closed(self, mask):
        return all(is_subset(self.up[i], mask) for i in bits(mask))

    def set_str(self, mask):
        return "{" + ",".join(self.points[i].id for i in bits(mask)) + "}"

    def mask(self, ids):
        return mask_of(self._idx(p) for p in ids)

    def up_sets(self):
        """All closed sets (= up-sets), ascending by mask value.

        Every up-set is a union of point closures, so we fold over the
        include/exclude choices per point and dedupe.
        """
        acc = set()

        def rec(i, cur):
            if i == self.n:
                acc.add(cur)
                return
            rec(i + 1, cur)
            rec(i + 1, cur | self.up[i])

        rec(0, 0)
        return sorted(acc)

    def __repr__(self):
        rels = [
            f"{p.id}<={self.points[j].id}"
            for p in self.points
            for j in bits(self.up[p.index])
            if j != p.index
        ]
        return f"SpecSpace({self.name}: {[p.id for p in self.points]}, {rels})"


@dataclass
class SubsetFamily:
    tag: str  # "Cl" | "Spcl" | "Irr"
    members: list = field(default_factory=list)


def closure(space, p):
    """Smallest closed set containing p: the up-set of p."""
    return space.up[space._idx(p)]


def is_specialization_closed(space, mask):
    """True iff ``mask`` is a union of point closures (an up-set)."""
    return space.is_closed(mask)


def irreducible_components(space, mask):
    """Maximal point closures inside a closed set; their union is the set."""
    if not space.is_closed(mask):
        raise SpaceError(f"set {space.set_str(mask)} is not closed")
    cls = sorted({space.up[i] for i in bits(mask)})
    comps = [c for c in cls if not any(is_subset(c, d) and c != d for d in cls)]
    return comps


def generic_point(space, mask):
    """The unique point whose closure is the given irreducible closed set."""
    if not space.is_closed(mask):
        raise SpaceError(f"set {space.set_str(mask)} is not closed")
    gens = [i for i in bits(mask) if space.up[i] == mask]
    if not gens:
        raise SpaceError(f"set {space.set_str(mask)} is not irreducible")
    return space.points[gens[0]]


def enumerate_families(space):
    """Enumerations of (Cl, Spcl, Irr).

    On finite Alexandrov models the closed sets and the specialization-closed
    sets are both the full up-set family; irreducible closed sets are exactly
    the point closures.
    """
    ups = space.up_sets()
    cl = SubsetFamily("Cl", list(ups))
    spcl = SubsetFamily("Spcl", list(ups))
    irr = SubsetFamily("Irr", sorted({space.up[i] for i in range(space.n)}))
    return cl, spcl, irr


def check_homeomorphism(a, b, phi):
    """Is the point map ``phi`` (a-id -> b-id) a homeomorphism?

    Checked definitionally: phi is a bijection and both phi and its inverse
    carry closed sets to closed sets.  For Alexandrov models this is the same
    as being an order isomorphism, which ``order_isomorphic`` cross-checks.
    """
    imgs = {}
    for p in a.points:
        if p.id not in phi:
            raise SpaceError(f"point map is not total: missing '{p.id}'")
        imgs[p.index] = b._idx(phi[p.id])
    if a.n != b.n or len(set(imgs.values())) != a.n:
        return False
    fwd = [imgs[i] for i in range(a.n)]

    def push(mask):
        return mask_of(fwd[i] for i in bits(mask))

    cl_a = a.up_sets()
    cl_b = set(b.up_sets())
    if any(push(z) not in cl_b for z in cl_a):
        return False
    if len(cl_a) != len(cl_b):
        return False
    return True


def order_isomorphic(a, b, phi):
    """Independent test: phi preserves and reflects the order relation."""
    try:
        fwd = {p.id: phi[p.id] for p in a.points}
    except KeyError as exc:
        raise SpaceError(f"point map is not total: missing {exc}") from None
    if len(set(fwd.values())) != a.n or a.n != b.n:
        return False
    for p in a.points:
        for q in a.points:
            if a.leq(p.id, q.id) != b.leq(fwd[p.id], fwd[q.id]):
                return False
    return True


# ---------------------------------------------------------------------------
# Poset generation: all isomorphism classes on small ground sets.

_POSET_CACHE = {}


def _labelled_posets(n):
    """All partial orders on n labelled points, as tuples of up-masks."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []

    def build(assign):
        up = [1 << i for i in range(n)]
        for (i, j), c in zip(pairs, assign):
            if c == 1:
                up[i] |= 1 << j
            elif c == 2:
                up[j] |= 1 << i
        # transitivity check
        for i in range(n):
            m = up[i]
            for j in bits(m):
                if up[j] & ~m:
                    return None
        return tuple(up)

    def rec(k, assign):
        if k == len(pairs):
            t = build(assign)
            if t is not None:
                out.append(t)
            return
        for c in (0, 1, 2):
            assign.append(c)
            rec(k + 1, assign)
            assign.pop()

    rec(0, [])
    return out


def _canonical_form(up):
    n = len(up)
    best = None
    for perm in permutations(range(n)):
        relabel = tuple(
            sorted(mask_of(perm[j] for j in bits(up[i])) for i in range(n))
        )
        key = tuple(relabel)
        if best is None or key < best:
            best = key
    return best


def all_posets_upto_iso(n):
    """One representative SpecSpace per isomorphism class of n-point posets."""
    if n in _POSET_CACHE:
        return _POSET_CACHE[n]
    seen = {}
    for up in _labelled_posets(n):
        key = _canonical_form(up)
        if key not in seen:
            seen[key] = up
    spaces = []
    for k, up in enumerate(sorted(seen.values())):
        names = [f"p{i}" for i in range(n)]
        pairs = [
            (names[i], names[j]) for i in range(n) for j in bits(up[i]) if j != i
        ]
        spaces.append(SpecSpace(names, pairs, name=f"poset{n}_{k}"))
    _POSET_CACHE[n] = spaces
    return spaces


def random_space(rng, max_points=5):
    n = rng.randrange(1, max_points + 1)
    posets = all_posets_upto_iso(n)
    return posets[rng.randrange(len(posets))]


def relabelled(space, perm, name=None):
    """Copy of the space with point i renamed to its image under perm."""
    names = [None] * space.n
    for i in range(space.n):
        names[perm[i]] = space.points[i].id
    # keep ids but permute indices; build pairs in new labels
    pairs = []
    for i in range(space.n):
        for j in bits(space.up[i]):
            if j != i:
                pairs.append((space.points[i].id, space.points[j].id))
    reordered = [names[i] for i in range(space.n)]
    return SpecSpace(reordered, pairs, name=name or (space.name + "_perm"))


# ---------------------------------------------------------------------------
# Space file format:
#   space <name>
#   point <id>
#   spec <p> -> <q>        (q lies in the closure of p; covering pairs)


def parse_space(text):
    name = None
    points = []
    pairs = []
    declared = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "space" and len(toks) == 2:
            if name is not None:
                raise ParseError("duplicate 'space' line", lineno)
            name = toks[1]
        elif toks[0] == "point" and len(toks) == 2:
            if toks[1] in declared:
                raise ParseError(f"duplicate point '{toks[1]}'", lineno)
            declared.add(toks[1])
            points.append(toks[1])
        elif toks[0] == "spec" and len(toks) == 4 and toks[2] == "->":
            p, q = toks[1], toks[3]
            for t in (p, q):
                if t not in declared:
                    raise ParseError(f"unknown point '{t}' in spec line", lineno)
            pairs.append((p, q))
        else:
            raise ParseError(f"unrecognized space line: '{line}'", lineno)
    if name is None:
        raise ParseError("missing 'space <name>' header")
    try:
        return SpecSpace(points, pairs, name=name)
    except SpaceError as exc:
        raise ParseError(str(exc)) from exc
