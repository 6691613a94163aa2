"""Finite presentations, word evaluation, and Todd-Coxeter coset enumeration.

Words are tuples of signed letters: letter +k stands for generator k-1,
letter -k for its inverse.  The text format for presentations is one line
"gens: x y a b" followed by one relator per line, each relator a product of
factors joined by "*", a factor being a generator name with an optional
integer exponent ("x^4", "a^-1*b*a*b").
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import CapExceeded, ExprError
from .perms import Perm, PermGroup

DEFAULT_MAX_COSETS = 100_000

_NAME_RE = re.compile(r"^[A-Za-z_]\w*$")
_FACTOR_RE = re.compile(r"^([A-Za-z_]\w*)(?:\^(-?\d+))?$")


def parse_word(text, names):
    """Parse a word like "a^-1*b*a*b" into a signed-letter tuple."""
    text = text.strip()
    if not text:
        raise ExprError("empty word")
    lookup = {name: i for i, name in enumerate(names)}
    letters = []
    for factor in text.split("*"):
        factor = factor.strip()
        m = _FACTOR_RE.match(factor)
        if not m:
            raise ExprError(f"bad word factor {factor!r}")
        name, exp = m.group(1), m.group(2)
        if name not in lookup:
            raise ExprError(f"unknown generator {name!r} (have: {' '.join(names)})")
        k = int(exp) if exp is not None else 1
        letter = lookup[name] + 1
        if k < 0:
            letter, k = -letter, -k
        letters.extend([letter] * k)
    return tuple(letters)


def word_text(word, names):
    """Inverse of parse_word, with adjacent equal letters folded."""
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        letter = word[i]
        name = names[abs(letter) - 1]
        exp = (j - i) if letter > 0 else -(j - i)
        parts.append(name if exp == 1 else f"{name}^{exp}")
        i = j
    return "*".join(parts)


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: generator names plus relator words."""

    names: tuple
    relators: tuple

    def __post_init__(self):
        if not self.relators:
            raise ExprError("presentation needs at least one relator")
        for w in self.relators:
            for letter in w:
                if letter == 0 or abs(letter) > len(self.names):
                    raise ExprError(f"letter {letter} out of range in relator {w!r}")

    @property
    def ngens(self):
        return len(self.names)

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines or not lines[0].startswith("gens:"):
            raise ExprError('presentation must start with a "gens:" line')
        names = tuple(lines[0][len("gens:"):].split())
        if not names:
            raise ExprError("no generators listed")
        for name in names:
            if not _NAME_RE.match(name):
                raise ExprError(f"bad generator name {name!r}")
        if len(set(names)) != len(names):
            raise ExprError("duplicate generator name")
        relators = tuple(parse_word(ln, names) for ln in lines[1:])
        return cls(names, relators)


def evaluate_word(images, word):
    """Product of the given permutations (or inverses) along a word."""
    if not images:
        raise ValueError("evaluate_word needs at least one image")
    result = Perm.identity(images[0].degree)
    for letter in word:
        k = abs(letter) - 1
        if k >= len(images):
            raise IndexError(f"word letter {letter} out of range for {len(images)} images")
        g = images[k]
        result = result * (g if letter > 0 else g.inverse())
    return result


class CosetTable:
    """Raw result of a coset enumeration.

    rows[i][c] is the target coset of live coset i under column c (column
    2k is generator k, column 2k+1 its inverse; -1 means undefined, which
    never survives a completed enumeration).  p is the union-find array:
    coset i is live iff p[i] == i.
    """

    def __init__(self, ngens):
        self.ngens = ngens
        self.rows = [[-1] * (2 * ngens)]
        self.p = [0]
        self.cursor = 0

    def rep(self, k):
        p = self.p
        r = k
        while p[r] != r:
            r = p[r]
        while p[k] != r:
            p[k], k = r, p[k]
        return r

    def is_live(self, i):
        return self.p[i] == i

    @property
    def defined_count(self):
        return len(self.rows)

    @property
    def live_count(self):
        return sum(1 for i in range(len(self.p)) if self.p[i] == i)

    def is_complete(self):
        return all(-1 not in row for i, row in enumerate(self.rows) if self.p[i] == i)


def _col(letter):
    return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1


def todd_coxeter(pres, subgroup_words=(), max_cosets=DEFAULT_MAX_COSETS):
    """Enumerate cosets of <subgroup_words> in the presented group.

    Systematic HLT strategy: cosets are processed in definition order, every
    relator is scanned (and filled) at every live coset, then any remaining
    undefined generator entries are defined.  Coincidences are handled with
    a union-find and the usual table-merging routine.  Returns (index,
    table); termination with k live cosets proves the index is exactly k.
    Hitting max_cosets raises CapExceeded -- that means the enumeration did
    not close within the cap, not that the index is infinite.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    ct = CosetTable(pres.ngens)
    table = ct.rows
    rep = ct.rep
    ncols = 2 * pres.ngens
    relator_cols = [tuple(_col(v) for v in w) for w in pres.relators]
    subgroup_cols = [tuple(_col(v) for v in w) for w in subgroup_words]

    def define(alpha, x):
        if len(table) >= max_cosets:
            raise CapExceeded("cosets", max_cosets,
                              detail="enumeration did not close within the coset cap")
        beta = len(table)
        table.append([-1] * ncols)
        ct.p.append(beta)
        table[alpha][x] = beta
        table[beta][x ^ 1] = alpha

    def merge(k, l, queue):
        k, l = rep(k), rep(l)
        if k != l:
            if l < k:
                k, l = l, k
            ct.p[l] = k
            queue.append(l)

    def coincidence(a, b):
        queue = []
        merge(a, b, queue)
        qi = 0
        while qi < len(queue):
            y = queue[qi]
            qi += 1
            for x in range(ncols):
                d = table[y][x]
                if d != -1:
                    table[d][x ^ 1] = -1
                    mu, nu = rep(y), rep(d)
                    t = table[mu][x]
                    if t != -1:
                        merge(nu, t, queue)
                    else:
                        t = table[nu][x ^ 1]
                        if t != -1:
                            merge(mu, t, queue)
                        else:
                            table[mu][x] = nu
                            table[nu][x ^ 1] = mu

    def scan_and_fill(alpha, word):
        f, i = alpha, 0
        b, j = alpha, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] != -1:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] != -1:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if j == i:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            define(f, word[i])

    for w in subgroup_cols:
        scan_and_fill(0, w)
    alpha = 0
    while alpha < len(table):
        if rep(alpha) != alpha:
            alpha += 1
            continue
        dead = False
        for w in relator_cols:
            scan_and_fill(alpha, w)
            if rep(alpha) != alpha:
                dead = True
                break
        if not dead:
            for x in range(ncols):
                if rep(alpha) != alpha:
                    break
                if table[alpha][x] == -1:
                    define(alpha, x)
        alpha += 1
        ct.cursor = alpha
    return ct.live_count, ct


def verify_presentation_isomorphism(pres, images, max_cosets=DEFAULT_MAX_COSETS):
    """True iff the presented group is isomorphic to <images>.

    Two halves: every relator must evaluate to the identity on the images
    (so the assignment extends to a homomorphism onto <images>), and the
    coset enumeration over the trivial subgroup must terminate with exactly
    |<images>| cosets (so the presented group is no bigger).  Together these
    pin the isomorphism for finite groups.
    """
    if len(images) != pres.ngens:
        raise ValueError(f"need {pres.ngens} images, got {len(images)}")
    for w in pres.relators:
        if not evaluate_word(images, w).is_identity():
            return False
    presented_order, _ = todd_coxeter(pres, (), max_cosets)
    return presented_order == PermGroup(images).order()
