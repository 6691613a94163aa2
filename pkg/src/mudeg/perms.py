"""Permutation arithmetic, groups with stabilizer chains, and element tables.

Conventions used everywhere in this package: points are 0-based, and
products read left to right, so (p * q)(i) == q(p(i)).  Conjugation is
x.conj(g) == g^-1 * x * g.
"""

from __future__ import annotations

from array import array
from hashlib import sha256
from math import lcm, prod

from .errors import CapExceeded

DEFAULT_MAX_ORDER = 2000


class Perm:
    """A permutation stored as the tuple of images of 0..n-1."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection on 0..{len(images) - 1}: {images!r}")
        self.images = images

    @classmethod
    def _raw(cls, images):
        # trusted constructor for internal products
        p = object.__new__(cls)
        p.images = images
        return p

    @classmethod
    def identity(cls, n):
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n, *cycles):
        """Build a permutation of 0..n-1 from disjoint cycles."""
        images = list(range(n))
        seen = set()
        for cyc in cycles:
            for pt in cyc:
                if not 0 <= pt < n:
                    raise ValueError(f"point {pt} out of range for degree {n}")
                if pt in seen:
                    raise ValueError(f"point {pt} repeated across cycles")
                seen.add(pt)
            for a, b in zip(cyc, cyc[1:]):
                images[a] = b
            if cyc:
                images[cyc[-1]] = cyc[0]
        return cls(images)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def __mul__(self, other):
        # apply self, then other
        a, b = self.images, other.images
        if len(a) != len(b):
            raise ValueError(f"degree mismatch: {len(a)} vs {len(b)}")
        return Perm._raw(tuple(b[v] for v in a))

    def inverse(self):
        images = self.images
        inv = [0] * len(images)
        for i, v in enumerate(images):
            inv[v] = i
        return Perm._raw(tuple(inv))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self, g):
        """g^-1 * self * g."""
        return g.inverse() * self * g

    def commutes_with(self, other):
        return (self * other).images == (other * self).images

    def is_identity(self):
        return all(i == v for i, v in enumerate(self.images))

    def cycles(self):
        """Nontrivial cycles, each starting at its least point, sorted."""
        images = self.images
        seen = set()
        out = []
        for i in range(len(images)):
            if i in seen or images[i] == i:
                continue
            cyc = [i]
            j = images[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = images[j]
            out.append(tuple(cyc))
        return out

    def order(self):
        """Least k >= 1 with self^k = identity (lcm of cycle lengths)."""
        return lcm(1, *(len(c) for c in self.cycles()))

    def cycle_string(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Perm{self.cycle_string()}"


def compose(p, q):
    """Product "apply p, then q"."""
    return p * q


def element_order(p):
    """Multiplicative order of a permutation."""
    return p.order()


class StabilizerChain:
    """Base-and-strong-generating-set structure for order and membership.

    Built by a deterministic Schreier-Sims pass: base points are always the
    least moved point of the residue being inserted, orbits are explored in
    BFS order with generators in insertion order, and Schreier generators
    are processed in sorted orbit order.  No randomization anywhere, so the
    same generators always yield the same chain.
    """

    def __init__(self, generators, degree):
        self.degree = degree
        self.base = []
        self.level_gens = []
        self.transversals = []
        for g in generators:
            self._add(g, 0)

    def _rebuild_transversal(self, lev):
        b = self.base[lev]
        gens = self.level_gens[lev]
        tr = {b: Perm.identity(self.degree)}
        frontier = [b]
        while frontier:
            nxt = []
            for pt in frontier:
                rep = tr[pt]
                for g in gens:
                    img = g(pt)
                    if img not in tr:
                        tr[img] = rep * g
                        nxt.append(img)
            frontier = nxt
        self.transversals[lev] = tr

    def _sift_from(self, p, lev):
        for i in range(lev, len(self.base)):
            beta = p(self.base[i])
            rep = self.transversals[i].get(beta)
            if rep is None:
                return p, i
            p = p * rep.inverse()
        return p, len(self.base)

    def _add(self, p, lev):
        residue, at = self._sift_from(p, lev)
        if residue.is_identity():
            return
        if at == len(self.base):
            moved = min(i for i, v in enumerate(residue.images) if v != i)
            self.base.append(moved)
            self.level_gens.append([])
            self.transversals.append({})
        self.level_gens[at].append(residue)
        self._rebuild_transversal(at)
        # re-close the chain condition at this level
        tr = self.transversals[at]
        for beta in sorted(tr):
            u = tr[beta]
            for s in self.level_gens[at]:
                v = tr[s(beta)]
                schreier = (u * s) * v.inverse()
                if not schreier.is_identity():
                    self._add(schreier, at + 1)

    def order(self):
        return prod(len(t) for t in self.transversals)

    def sift(self, p):
        """Residue of p; identity iff p is in the group."""
        return self._sift_from(p, 0)[0]

    def contains(self, p):
        return p.degree == self.degree and self.sift(p).is_identity()


class ElementTable:
    """All elements of a small group in a fixed deterministic order.

    Elements are produced by BFS from the identity (generators in input
    order) and then sorted by image tuple, which puts the identity at
    index 0.  The full Cayley table is built lazily; rows are int arrays so
    products of element indices are plain lookups.
    """

    def __init__(self, group, perms, bfs_images, via):
        self.group = group
        self.perms = perms
        self.index = {p.images: i for i, p in enumerate(perms)}
        self._bfs_images = bfs_images
        self._via = via
        self._rows = None
        self._inv = None
        self._orders = None
        self._bits = None
        self._conj = None

    @classmethod
    def build(cls, group, max_order=DEFAULT_MAX_ORDER):
        n = group.order()
        if n > max_order:
            raise CapExceeded("order", max_order, actual=n, detail=f"|G| = {n}")
        gens = group.generators
        ident = Perm.identity(group.degree)
        via = {ident.images: None}
        bfs_images = [ident.images]
        elems = [ident]
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for gpos, g in enumerate(gens):
                    q = p * g
                    if q.images not in via:
                        via[q.images] = (p.images, gpos)
                        bfs_images.append(q.images)
                        elems.append(q)
                        nxt.append(q)
            frontier = nxt
        if len(elems) != n:
            raise RuntimeError(f"enumerated {len(elems)} elements but chain order is {n}")
        perms = sorted(elems)
        return cls(group, perms, bfs_images, via)

    def __len__(self):
        return len(self.perms)

    def __getitem__(self, i):
        return self.perms[i]

    def index_of(self, p):
        try:
            return self.index[p.images]
        except KeyError:
            raise ValueError(f"{p!r} is not an element of this group") from None

    def rows(self):
        """Full Cayley table: rows()[i][j] = index of perms[i] * perms[j]."""
        if self._rows is not None:
            return self._rows
        n = len(self.perms)
        idx = self.index
        rows = [array("h", bytes(2 * n)) for _ in range(n)]
        for i in range(n):
            rows[i][0] = i
        gen_idx = []
        for g in self.group.generators:
            gi = idx[g.images]
            gen_idx.append(gi)
            gimg = g.images
            for i, p in enumerate(self.perms):
                rows[i][gi] = idx[tuple(gimg[v] for v in p.images)]
        # every other element is parent * generator along the BFS tree, so
        # its column follows from an already-filled column by index lookups
        done = set([0] + gen_idx)
        for images in self._bfs_images:
            j = idx[images]
            if j in done:
                continue
            parent_images, gpos = self._via[images]
            pj = idx[parent_images]
            gj = gen_idx[gpos]
            for i in range(n):
                rows[i][j] = rows[rows[i][pj]][gj]
            done.add(j)
        self._rows = rows
        return rows

    def bits(self):
        if self._bits is None:
            self._bits = [1 << i for i in range(len(self.perms))]
        return self._bits

    def inverse_index(self):
        if self._inv is None:
            idx = self.index
            self._inv = [idx[p.inverse().images] for p in self.perms]
        return self._inv

    def orders(self):
        if self._orders is None:
            self._orders = [p.order() for p in self.perms]
        return self._orders

    def conj_maps(self):
        """Per group generator s, the index map e -> s^-1 * e * s."""
        if self._conj is None:
            rows = self.rows()
            inv = self.inverse_index()
            n = len(self.perms)
            maps = []
            for g in self.group.generators:
                s = self.index[g.images]
                row_si = rows[inv[s]]
                maps.append([rows[row_si[e]][s] for e in range(n)])
            self._conj = maps
        return self._conj

    def content_hash(self):
        h = sha256()
        for p in self.perms:
            h.update(",".join(map(str, p.images)).encode())
            h.update(b";")
        return h.hexdigest()


class PermGroup:
    """A finite permutation group given by generators on a fixed point set.

    Order and membership come from a stabilizer chain; complete element
    enumeration is capped (default 2000) and cached.  Instances are
    immutable after construction apart from lazily built caches, and safe
    to share for concurrent reads.
    """

    def __init__(self, generators, meta=None):
        gens = tuple(generators)
        if not gens:
            raise ValueError("at least one generator required")
        deg = gens[0].degree
        for g in gens[1:]:
            if g.degree != deg:
                raise ValueError(f"generator degree mismatch: {g.degree} vs {deg}")
        self.generators = gens
        self.degree = deg
        self.meta = dict(meta or {})
        self._chain = None
        self._table = None

    def chain(self):
        if self._chain is None:
            self._chain = StabilizerChain(self.generators, self.degree)
        return self._chain

    def order(self):
        return self.chain().order()

    def __contains__(self, p):
        return self.chain().contains(p)

    def is_abelian(self):
        gens = self.generators
        return all(gens[i].commutes_with(gens[j])
                   for i in range(len(gens)) for j in range(i + 1, len(gens)))

    def is_transitive(self):
        seen = {0} if self.degree else set()
        frontier = [0] if self.degree else []
        while frontier:
            pt = frontier.pop()
            for g in self.generators:
                img = g(pt)
                if img not in seen:
                    seen.add(img)
                    frontier.append(img)
        return len(seen) == self.degree

    def element_table(self, max_order=DEFAULT_MAX_ORDER):
        if self._table is None:
            self._table = ElementTable.build(self, max_order)
        elif len(self._table) > max_order:
            raise CapExceeded("order", max_order, actual=len(self._table),
                              detail=f"|G| = {len(self._table)}")
        return self._table

    def __repr__(self):
        name = self.meta.get("expr")
        if name:
            return f"PermGroup({name})"
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"
