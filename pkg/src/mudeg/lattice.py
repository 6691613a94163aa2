"""Complete subgroup lattices of small groups, normal cores, coset actions,
and centralizers in the ambient symmetric group.

Subgroups are bitsets (python ints) over the parent's element table, so
intersection, conjugation and containment are word-parallel integer ops.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _sym_permutations

from .errors import CapExceeded
from .perms import DEFAULT_MAX_ORDER, Perm, PermGroup

DEFAULT_MAX_SUBGROUPS = 200_000


class Subgroup:
    """A subgroup of a tabulated group, stored as a member bitset."""

    __slots__ = ("table", "mask", "members", "_gens")

    def __init__(self, table, mask, members=None, gens=None):
        self.table = table
        self.mask = mask
        if members is None:
            members = tuple(_bit_indices(mask))
        self.members = members
        self._gens = tuple(gens) if gens is not None else None

    @property
    def order(self):
        return len(self.members)

    @property
    def index(self):
        return len(self.table) // len(self.members)

    def generator_indices(self):
        """A small generating set (element indices), computed greedily."""
        if self._gens is None:
            self._gens = small_generators(self.table, self.mask, self.members)
        return self._gens

    def generator_perms(self):
        return tuple(self.table[i] for i in self.generator_indices())

    def as_group(self):
        gens = self.generator_perms()
        if not gens:
            gens = (Perm.identity(self.table.group.degree),)
        return PermGroup(gens)

    def contains_index(self, i):
        return (self.mask >> i) & 1 == 1

    def __contains__(self, p):
        i = self.table.index.get(p.images)
        return i is not None and self.contains_index(i)

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.table is self.table
                and other.mask == self.mask)

    def __hash__(self):
        return hash(self.mask)

    def __repr__(self):
        return f"Subgroup(order={self.order}, index={self.index})"


def _bit_indices(mask):
    out = []
    while mask:
        lsb = mask & -mask
        out.append(lsb.bit_length() - 1)
        mask ^= lsb
    return out


def _closure(h_members, gens, start_mask, rows, bits):
    """Members and bitset of <H, gens> grown coset-by-coset.

    h_members must already be closed and gens must contain generators of H
    plus the new elements; the BFS then walks right cosets of H, adding a
    whole coset (|H| lookups) per newly reached representative.
    """
    mask = start_mask
    members = list(h_members)
    reps = [0]
    pos = 0
    while pos < len(reps):
        w = reps[pos]
        pos += 1
        rw = rows[w]
        for s in gens:
            t = rw[s]
            if not (mask >> t) & 1:
                add = 0
                for h in h_members:
                    e = rows[h][t]
                    members.append(e)
                    add |= bits[e]
                mask |= add
                reps.append(t)
    return mask, members


def small_generators(table, mask, members=None):
    """Greedy small generating set for the subgroup given by mask."""
    rows = table.rows()
    bits = table.bits()
    if members is None:
        members = _bit_indices(mask)
    gens = []
    cur_mask = 1
    cur_members = (0,)
    for e in members:
        if not (cur_mask >> e) & 1:
            gens.append(e)
            cur_mask, cur = _closure(cur_members, tuple(gens), cur_mask, rows, bits)
            cur_members = tuple(cur)
            if cur_mask == mask:
                break
    return tuple(gens)


def generated_subgroup(G, elements, max_order=DEFAULT_MAX_ORDER):
    """Subgroup of G generated by the given perms (or element indices)."""
    tab = G.element_table(max_order)
    rows = tab.rows()
    bits = tab.bits()
    idx = []
    for e in elements:
        idx.append(e if isinstance(e, int) else tab.index_of(e))
    mask, members = 1, (0,)
    gens = []
    for e in idx:
        if not (mask >> e) & 1:
            gens.append(e)
            mask, mem = _closure(members, tuple(gens), mask, rows, bits)
            members = tuple(mem)
    return Subgroup(tab, mask, tuple(sorted(members)), tuple(gens))


def trivial_subgroup(G, max_order=DEFAULT_MAX_ORDER):
    return Subgroup(G.element_table(max_order), 1, (0,), ())


def full_subgroup(G, max_order=DEFAULT_MAX_ORDER):
    tab = G.element_table(max_order)
    n = len(tab)
    return Subgroup(tab, (1 << n) - 1, tuple(range(n)))


class SubgroupLattice:
    """Every subgroup of the parent exactly once, with cores and normality.

    Ids are assignment order of the enumeration sweep, which is
    deterministic, so ids are stable across runs and safe to cache.
    """

    def __init__(self, table, subgroups, core_ids, normal_flags, class_ids):
        self.table = table
        self.subgroups = subgroups
        self.core_ids = core_ids
        self.normal_flags = normal_flags
        self.class_ids = class_ids
        self.by_mask = {s.mask: i for i, s in enumerate(subgroups)}

    def __len__(self):
        return len(self.subgroups)

    def id_of(self, sub):
        return self.by_mask[sub.mask]

    def core_subgroup(self, sid):
        return self.subgroups[self.core_ids[sid]]

    def normal_subgroups(self):
        return [s for s, f in zip(self.subgroups, self.normal_flags) if f]

    def minimal_normal_subgroups(self):
        normals = [s for s in self.normal_subgroups() if s.order > 1]
        out = []
        for s in normals:
            if not any(t.order < s.order and t.mask & s.mask == t.mask for t in normals):
                out.append(s)
        return out

    def order_counts(self):
        counts = {}
        for s in self.subgroups:
            counts[s.order] = counts.get(s.order, 0) + 1
        return dict(sorted(counts.items()))


def all_subgroups(G, max_subgroups=DEFAULT_MAX_SUBGROUPS, max_order=DEFAULT_MAX_ORDER):
    """Enumerate every subgroup of G by single-element extension closure.

    Sweep: starting from the trivial subgroup, extend each known subgroup H
    by each element g outside it and record <H, g> if unseen, to fixpoint.
    This is complete because any K equals <H, g> for a maximal H < K and
    any g in K minus H.  Two exact reductions keep it fast: extending by g
    only depends on the cyclic subgroup <g>, so only one representative per
    cyclic subgroup is tried; and <H, g> only depends on the coset Hg, so
    cosets already covered for this H are skipped.
    """
    tab = G.element_table(max_order)
    n = len(tab)
    rows = tab.rows()
    bits = tab.bits()

    reps = []
    seen_cyc = set()
    for g in range(1, n):
        m = 1
        x = g
        while x != 0:
            m |= bits[x]
            x = rows[x][g]
        if m not in seen_cyc:
            seen_cyc.add(m)
            reps.append(g)

    full = (1 << n) - 1
    masks = [1]
    members_list = [(0,)]
    gens_list = [()]
    by_mask = {1: 0}
    i = 0
    while i < len(masks):
        h_mask = masks[i]
        h_members = members_list[i]
        h_gens = gens_list[i]
        i += 1
        if h_mask == full:
            continue
        seen = h_mask
        for c in reps:
            if (seen >> c) & 1:
                continue
            cm = 0
            for h in h_members:
                cm |= bits[rows[h][c]]
            seen |= cm
            new_gens = h_gens + (c,)
            new_mask, new_members = _closure(h_members, new_gens, h_mask, rows, bits)
            if new_mask not in by_mask:
                if len(masks) >= max_subgroups:
                    raise CapExceeded("subgroups", max_subgroups,
                                      detail=f"lattice of group of order {n}")
                by_mask[new_mask] = len(masks)
                masks.append(new_mask)
                members_list.append(tuple(sorted(new_members)))
                gens_list.append(new_gens)

    subgroups = [Subgroup(tab, m, mem, gen)
                 for m, mem, gen in zip(masks, members_list, gens_list)]
    count = len(subgroups)

    cmaps = tab.conj_maps()
    normal_flags = []
    for s in subgroups:
        ok = True
        for cmap in cmaps:
            conj = 0
            for e in s.members:
                conj |= bits[cmap[e]]
            if conj != s.mask:
                ok = False
                break
        normal_flags.append(ok)

    # core(H) = largest normal subgroup inside H; since the join of two
    # normal subgroups of H is again normal and inside H, it is the first
    # hit scanning normal subgroups by descending order
    normals_desc = sorted((sid for sid in range(count) if normal_flags[sid]),
                          key=lambda sid: (-subgroups[sid].order, sid))
    core_ids = []
    for s in subgroups:
        hm = s.mask
        for nid in normals_desc:
            nm = subgroups[nid].mask
            if nm & hm == nm:
                core_ids.append(nid)
                break

    class_ids = [-1] * count
    next_class = 0
    for sid in range(count):
        if class_ids[sid] != -1:
            continue
        frontier = [masks[sid]]
        class_ids[sid] = next_class
        while frontier:
            cur = frontier.pop()
            cur_members = subgroups[by_mask[cur]].members
            for cmap in cmaps:
                conj = 0
                for e in cur_members:
                    conj |= bits[cmap[e]]
                cid = by_mask.get(conj)
                if cid is None:
                    raise RuntimeError("lattice incomplete: conjugate subgroup missing")
                if class_ids[cid] == -1:
                    class_ids[cid] = next_class
                    frontier.append(conj)
        next_class += 1

    return SubgroupLattice(tab, subgroups, core_ids, normal_flags, class_ids)


def conjugate_subgroup(H, g):
    """The conjugate H^g as a subgroup of the same table."""
    tab = H.table
    rows = tab.rows()
    bits = tab.bits()
    gi = g if isinstance(g, int) else tab.index_of(g)
    inv_gi = tab.inverse_index()[gi]
    row_inv = rows[inv_gi]
    mask = 0
    members = []
    for e in H.members:
        img = rows[row_inv[e]][gi]
        members.append(img)
        mask |= bits[img]
    return Subgroup(tab, mask, tuple(sorted(members)))


def intersect(H, K):
    """Intersection of two subgroups of the same parent."""
    if H.table is not K.table:
        raise ValueError("subgroups of different parents")
    return Subgroup(H.table, H.mask & K.mask)


def is_normal(G, H):
    """Whether H is normal in G (stable under generator conjugation)."""
    tab = G.element_table()
    if H.table is not tab:
        raise ValueError("subgroup does not belong to this group's table")
    bits = tab.bits()
    for cmap in tab.conj_maps():
        conj = 0
        for e in H.members:
            conj |= bits[cmap[e]]
        if conj != H.mask:
            return False
    return True


def core(G, H):
    """The normal core of H in G: the intersection of all conjugates of H."""
    tab = G.element_table()
    if H.table is not tab:
        raise ValueError("subgroup does not belong to this group's table")
    bits = tab.bits()
    cmaps = tab.conj_maps()
    by_mask = {H.mask: H.members}
    frontier = [H.members]
    result = H.mask
    while frontier:
        cur = frontier.pop()
        for cmap in cmaps:
            mask = 0
            members = []
            for e in cur:
                img = cmap[e]
                members.append(img)
                mask |= bits[img]
            if mask not in by_mask:
                by_mask[mask] = members
                frontier.append(members)
                result &= mask
    return Subgroup(tab, result)


def order_profile(G, max_order=DEFAULT_MAX_ORDER):
    """Histogram of element orders."""
    tab = G.element_table(max_order)
    profile = {}
    for o in tab.orders():
        profile[o] = profile.get(o, 0) + 1
    return dict(sorted(profile.items()))


def coset_order_check(G, A, w, predicate):
    """True iff every element of the right coset A*w satisfies the order
    predicate."""
    tab = G.element_table()
    rows = tab.rows()
    orders = tab.orders()
    wi = w if isinstance(w, int) else tab.index_of(w)
    return all(predicate(orders[rows[a][wi]]) for a in A.members)


@dataclass
class CosetAction:
    """Action of a group on the right cosets of a subgroup."""

    group: PermGroup
    images: tuple
    reps: tuple
    subgroup: Subgroup


def coset_action(G, H, max_order=DEFAULT_MAX_ORDER):
    """The action of G on the right cosets of H.

    Cosets are numbered by their least element index, ascending, so coset 0
    is H itself.  Each generator s maps coset Hg to Hgs.  The kernel is the
    core of H, so the action is faithful exactly when H is core-free.
    """
    tab = G.element_table(max_order)
    if H.table is not tab:
        raise ValueError("subgroup does not belong to this group's table")
    rows = tab.rows()
    if not H.contains_index(0):
        raise ValueError("subgroup does not contain the identity")
    for a in H.members:
        ra = rows[a]
        for b in H.members:
            if not H.contains_index(ra[b]):
                raise ValueError("member set is not closed under products")
    n = len(tab)
    coset_of = [-1] * n
    reps = []
    for e in range(n):
        if coset_of[e] != -1:
            continue
        k = len(reps)
        reps.append(e)
        for h in H.members:
            coset_of[rows[h][e]] = k
    images = []
    for g in G.generators:
        gi = tab.index_of(g)
        images.append(Perm(tuple(coset_of[rows[r][gi]] for r in reps)))
    image_group = PermGroup(images)
    return CosetAction(image_group, tuple(images), tuple(reps), H)


def is_faithful_action(G, image):
    """True iff the image of a coset action has full order."""
    group = image.group if isinstance(image, CosetAction) else image
    return group.order() == G.order()


def centralizer_in_sym(G, force_brute=False):
    """The full centralizer of G inside Sym(degree), degree <= 10.

    For transitive G the centralizer is semiregular, so each candidate is
    pinned by the image of point 0 and checked; otherwise fall back to
    brute force over all degree! permutations.
    """
    n = G.degree
    if n > 10:
        raise ValueError("centralizer_in_sym limited to degree <= 10")
    gens = G.generators
    elements = []
    if G.is_transitive() and not force_brute:
        # Schreier tree: how to reach each point from 0, in BFS order
        parent = {0: None}
        order = [0]
        qi = 0
        while qi < len(order):
            pt = order[qi]
            qi += 1
            for g in gens:
                img = g(pt)
                if img not in parent:
                    parent[img] = (pt, g)
                    order.append(img)
        for j in range(n):
            # a centralizing c satisfies c(pt^g) = c(pt)^g, so c is pinned
            # by c(0) = j along the tree; then validate
            images = [-1] * n
            images[0] = j
            for pt in order[1:]:
                src, g = parent[pt]
                images[pt] = g(images[src])
            if sorted(images) != list(range(n)):
                continue
            c = Perm(images)
            if all((c * g).images == (g * c).images for g in gens):
                elements.append(c)
    else:
        for images in _sym_permutations(range(n)):
            c = Perm._raw(images)
            if all((c * g).images == (g * c).images for g in gens):
                elements.append(c)
    if not elements:
        elements = [Perm.identity(n)]
    return PermGroup(elements)


def internal_direct_product(W, A, B, max_order=DEFAULT_MAX_ORDER):
    """True iff W is the internal direct product of subgroups A and B."""
    tab = W.element_table(max_order)
    if A.table is not tab or B.table is not tab:
        raise ValueError("subgroups do not belong to this group's table")
    if A.mask & B.mask != 1:
        return False
    if A.order * B.order != len(tab):
        return False
    rows = tab.rows()
    a_gens = A.generator_indices()
    b_gens = B.generator_indices()
    for a in a_gens:
        ra = rows[a]
        for b in b_gens:
            if ra[b] != rows[b][a]:
                return False
    return True


def diagonal_center(W, max_order=DEFAULT_MAX_ORDER):
    """The central cyclic subgroup <gamma_0 * ... * gamma_{n-1}> of a
    wreath product built by wreath_cyclic; it has order m and commutes with
    every generator."""
    mn = W.meta.get("wreath")
    if mn is None:
        raise ValueError("group was not built by wreath_cyclic")
    m, n = mn
    gamma = W.generators[0]
    for g in W.generators[1:n]:
        gamma = gamma * g
    for g in W.generators:
        if not gamma.commutes_with(g):
            raise RuntimeError("diagonal element is not central")
    sub = generated_subgroup(W, [gamma], max_order)
    if sub.order != m:
        raise RuntimeError(f"diagonal subgroup has order {sub.order}, expected {m}")
    return sub
