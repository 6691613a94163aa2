"""Constructors for the standard families: cyclic, symmetric, alternating,
dihedral, abelian products, direct products, wreath products C_m wr Sym(n),
and the monomial reflection subgroups G(m,p,n)."""

from __future__ import annotations

from math import factorial

from .perms import Perm, PermGroup


def cyclic(m):
    """C_m acting on m points as a single m-cycle."""
    if m < 1:
        raise ValueError("cyclic(m) needs m >= 1")
    return PermGroup([Perm.from_cycles(m, tuple(range(m)))], meta={"expr": f"C{m}"})


def symmetric(n):
    """Sym(n) in its natural action."""
    if n < 1:
        raise ValueError("symmetric(n) needs n >= 1")
    if n == 1:
        gens = [Perm.identity(1)]
    elif n == 2:
        gens = [Perm.from_cycles(2, (0, 1))]
    else:
        gens = [Perm.from_cycles(n, (0, 1)), Perm.from_cycles(n, tuple(range(n)))]
    return PermGroup(gens, meta={"expr": f"S{n}"})


def alternating(n):
    """Alt(n) in its natural action (n >= 3)."""
    if n < 3:
        raise ValueError("alternating(n) needs n >= 3")
    if n == 3:
        gens = [Perm.from_cycles(3, (0, 1, 2))]
    elif n % 2 == 1:
        gens = [Perm.from_cycles(n, (0, 1, 2)), Perm.from_cycles(n, tuple(range(n)))]
    else:
        gens = [Perm.from_cycles(n, (0, 1, 2)), Perm.from_cycles(n, tuple(range(1, n)))]
    return PermGroup(gens, meta={"expr": f"A{n}"})


def dihedral(n):
    """The dihedral group of order 2n on n points (n >= 3)."""
    if n < 3:
        raise ValueError("dihedral(n) needs n >= 3")
    rot = Perm.from_cycles(n, tuple(range(n)))
    refl = Perm([(n - i) % n for i in range(n)])
    return PermGroup([rot, refl], meta={"expr": f"D{n}"})


def direct_product(G, H):
    """External direct product acting on deg(G) + deg(H) points."""
    dg, dh = G.degree, H.degree
    idg = tuple(range(dg))
    idh = tuple(range(dg, dg + dh))
    gens = []
    for g in G.generators:
        gens.append(Perm._raw(g.images + idh))
    for h in H.generators:
        gens.append(Perm._raw(idg + tuple(v + dg for v in h.images)))
    ge = G.meta.get("expr", "?")
    he = H.meta.get("expr", "?")
    return PermGroup(gens, meta={"expr": f"{ge} x {he}"})


def abelian(orders):
    """Direct product of cyclic groups, on sum(orders) points."""
    orders = list(orders)
    if not orders:
        raise ValueError("abelian() needs at least one cyclic order")
    G = cyclic(orders[0])
    for m in orders[1:]:
        G = direct_product(G, cyclic(m))
    G.meta["expr"] = " x ".join(f"C{m}" for m in orders)
    return G


def _block_perm(sigma, m, n):
    """Point permutation induced by a block permutation sigma of 0..n-1."""
    images = [0] * (m * n)
    for i in range(n):
        for j in range(m):
            images[i * m + j] = sigma[i] * m + j
    return Perm(images)


def wreath_cyclic(m, n):
    """C_m wr Sym(n) in its imprimitive action on m*n points.

    Points come in n blocks of size m.  Generators, in order: one m-cycle
    per block (gamma_0..gamma_{n-1}), then the block transposition swapping
    the last two blocks, then the full block n-cycle.  For n = 3 the two
    block generators are the transposition of blocks 1,2 and the 3-cycle
    (blocks 0 1 2) so the classical relations can be checked literally.
    """
    if m < 2 or n < 2:
        raise ValueError("wreath_cyclic(m, n) needs m >= 2 and n >= 2")
    deg = m * n
    gens = []
    for i in range(n):
        gens.append(Perm.from_cycles(deg, tuple(range(i * m, (i + 1) * m))))
    swap = list(range(n))
    swap[n - 2], swap[n - 1] = n - 1, n - 2
    gens.append(_block_perm(swap, m, n))
    rot = [(i + 1) % n for i in range(n)]
    gens.append(_block_perm(rot, m, n))
    return PermGroup(gens, meta={"expr": f"C{m} wr S{n}", "wreath": (m, n)})


def _wreath_data(W):
    mn = W.meta.get("wreath")
    if mn is None:
        raise ValueError("group was not built by wreath_cyclic")
    return mn


def reflection_generators(W, p):
    """Generators of the copy of G(m,p,n) inside a wreath product W.

    The base subgroup is the set of exponent vectors with coordinate sum
    congruent to 0 mod p; it is generated by the differences
    gamma_i * gamma_{i+1}^-1 together with gamma_0^p.
    """
    m, n = _wreath_data(W)
    if m % p != 0:
        raise ValueError(f"p = {p} does not divide m = {m}")
    gammas = W.generators[:n]
    gens = []
    for i in range(n - 1):
        gens.append(gammas[i] * gammas[i + 1].inverse())
    if p != m:
        gens.append(gammas[0] ** p)
    gens.extend(W.generators[n:])
    return gens


def reflection_group(m, p, n):
    """The monomial reflection group G(m,p,n) on m*n points, order m^n n!/p."""
    if n < 2:
        raise ValueError("reflection_group needs n >= 2")
    if m < 2:
        raise ValueError("reflection_group needs m >= 2")
    if p < 1 or m % p != 0:
        raise ValueError(f"p = {p} must divide m = {m}")
    W = wreath_cyclic(m, n)
    gens = reflection_generators(W, p)
    G = PermGroup(gens, meta={"expr": f"G({m},{p},{n})", "reflection": (m, p, n)})
    expected = m**n * factorial(n) // p
    got = G.order()
    if got != expected:
        raise RuntimeError(
            f"G({m},{p},{n}) construction bug: order {got}, expected {expected}")
    return G


def g443_generators(W):
    """The four standard generators (x, y, a, b) of the G(4,4,3) copy in
    W = C4 wr Sym(3).

    x and y generate the base subgroup (a product of two C4's), a and b are
    the block generators.  The defining relations x^a = x^b = y, y^a = x,
    y^b = x^-1 y^-1 are re-checked here; failure means the wreath
    construction itself is broken.
    """
    m, n = _wreath_data(W)
    if (m, n) != (4, 3):
        raise ValueError("g443_generators needs W = wreath_cyclic(4, 3)")
    g1, g2, g3 = W.generators[0], W.generators[1], W.generators[2]
    a, b = W.generators[3], W.generators[4]
    x = g1.inverse() * (g2 * g2) * g3.inverse()
    y = g1.inverse() * g2.inverse() * (g3 * g3)
    if x.conj(a) != y or x.conj(b) != y:
        raise RuntimeError("generator relation x^a = x^b = y failed")
    if y.conj(a) != x:
        raise RuntimeError("generator relation y^a = x failed")
    if y.conj(b) != x.inverse() * y.inverse():
        raise RuntimeError("generator relation y^b = x^-1 y^-1 failed")
    return x, y, a, b
