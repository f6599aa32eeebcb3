"""2x2 matrix groups over Z/N: closure, projection, CRT products, invariants.

Matrices are tuples (a, b, c, d) for [[a, b], [c, d]] with entries reduced
mod N; subgroups store packed-integer element sets so membership tests are
single set lookups.
"""

from __future__ import annotations

from itertools import product
from math import gcd


def mat_mul(m1, m2, n):
    a, b, c, d = m1
    e, f, g, h = m2
    return (
        (a * e + b * g) % n,
        (a * f + b * h) % n,
        (c * e + d * g) % n,
        (c * f + d * h) % n,
    )


def mat_det(m, n):
    a, b, c, d = m
    return (a * d - b * c) % n


def mat_trace(m, n):
    return (m[0] + m[3]) % n


def mat_inv(m, n):
    det = mat_det(m, n)
    if gcd(det, n) != 1:
        raise ValueError(f"matrix {m} not invertible mod {n}")
    di = pow(det, -1, n)
    a, b, c, d = m
    return ((d * di) % n, (-b * di) % n, (-c * di) % n, (a * di) % n)


def mat_pack(m, n):
    a, b, c, d = m
    return ((a * n + b) * n + c) * n + d


def mat_unpack(x, n):
    d = x % n
    x //= n
    c = x % n
    x //= n
    b = x % n
    return (x // n, b, c, d)


def mat_project(m, n, m_new):
    if n % m_new:
        raise ValueError(f"{m_new} does not divide {n}")
    return tuple(v % m_new for v in m)


def identity(n):
    return (1, 0, 0, 1)


def minus_identity(n):
    return (1 % n, 0, 0, 1 % n) if n <= 2 else (n - 1, 0, 0, n - 1)


def gl2_order(n):
    """|GL2(Z/n)| via multiplicativity and the prime-power formula."""
    order = 1
    for p, e in _factor(n).items():
        order *= p ** (4 * (e - 1)) * (p * p - 1) * (p * p - p)
    return order


def sl2_order(n):
    order = 1
    for p, e in _factor(n).items():
        order *= p ** (3 * (e - 1)) * p * (p * p - 1)
    return order


def _factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class Subgroup:
    """A subgroup of GL2(Z/n), stored as a frozenset of packed matrices."""

    __slots__ = ("n", "generators", "elements")

    def __init__(self, n, generators, elements=None):
        self.n = n
        self.generators = tuple(tuple(g) for g in generators)
        for g in self.generators:
            if gcd(mat_det(g, n), n) != 1:
                raise ValueError(f"generator {g} not invertible mod {n}")
        if elements is None:
            elements = closure(self.generators, n)
        self.elements = frozenset(elements)

    # -- basic protocol ----------------------------------------------------
    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, m):
        return mat_pack(tuple(v % self.n for v in m), self.n) in self.elements

    def __iter__(self):
        for x in self.elements:
            yield mat_unpack(x, self.n)

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.n == other.n
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.n, self.elements))

    def __le__(self, other):
        return self.n == other.n and self.elements <= other.elements

    # -- invariants --------------------------------------------------------
    def contains_minus_identity(self):
        return mat_pack(minus_identity(self.n), self.n) in self.elements

    def det_image(self):
        return {mat_det(m, self.n) for m in self}

    def det_surjective(self):
        units = sum(1 for a in range(self.n) if gcd(a, self.n) == 1)
        return len(self.det_image()) == units

    def trace_det_pairs(self):
        return frozenset((mat_trace(m, self.n), mat_det(m, self.n)) for m in self)

    def adjoin_minus_identity(self):
        mi = minus_identity(self.n)
        if mat_pack(mi, self.n) in self.elements:
            return self
        elems = set(self.elements)
        for x in self.elements:
            elems.add(mat_pack(mat_mul(mat_unpack(x, self.n), mi, self.n), self.n))
        return Subgroup(self.n, self.generators + (mi,), elems)

    def project(self, m_new):
        elems = {
            mat_pack(mat_project(mat_unpack(x, self.n), self.n, m_new), m_new)
            for x in self.elements
        }
        gens = [mat_project(g, self.n, m_new) for g in self.generators]
        return Subgroup(m_new, gens, elems)

    def intersect_sl2(self):
        return frozenset(
            x for x in self.elements if mat_det(mat_unpack(x, self.n), self.n) == 1
        )

    def conjugate(self, m):
        mi = mat_inv(m, self.n)
        elems = {
            mat_pack(mat_mul(mat_mul(m, mat_unpack(x, self.n), self.n), mi, self.n), self.n)
            for x in self.elements
        }
        gens = [mat_mul(mat_mul(m, g, self.n), mi, self.n) for g in self.generators]
        return Subgroup(self.n, gens, elems)

    # -- lines and fixed vectors -------------------------------------------
    def stable_lines(self):
        """Lines of (Z/n)^2 (cyclic submodules generated by a primitive vector)
        stable under every element. n should be a prime power."""
        out = []
        for v in _line_representatives(self.n):
            line = _line_of(v, self.n)
            if all(_apply(mat_unpack(x, self.n), v, self.n) in line for x in self.elements):
                out.append(v)
        return out

    def fixed_points(self):
        """Nonzero vectors fixed by the whole group."""
        n = self.n
        mats = [mat_unpack(x, n) for x in self.elements]
        out = []
        for v in product(range(n), repeat=2):
            if v == (0, 0):
                continue
            if all(_apply(m, v, n) == v for m in mats):
                out.append(v)
        return out

    def __repr__(self):
        return f"Subgroup(n={self.n}, order={self.order})"


def _apply(m, v, n):
    a, b, c, d = m
    return ((a * v[0] + b * v[1]) % n, (c * v[0] + d * v[1]) % n)


def _line_representatives(n):
    """One primitive representative per line of (Z/n)^2, n a prime power."""
    p = min(_factor(n))
    reps = [(1, b) for b in range(n)]
    reps += [(a * p % n, 1) for a in range(n // p)]
    # dedupe by the line itself
    seen = set()
    out = []
    for v in reps:
        line = _line_of(v, n)
        key = frozenset(line)
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


def _line_of(v, n):
    return {((t * v[0]) % n, (t * v[1]) % n) for t in range(n)}


def closure(generators, n):
    """BFS closure; returns the set of packed elements."""
    ident = mat_pack(identity(n), n)
    gens = [tuple(g) for g in generators]
    seen = {ident}
    frontier = [identity(n)]
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                prod = mat_mul(m, g, n)
                key = mat_pack(prod, n)
                if key not in seen:
                    seen.add(key)
                    new.append(prod)
        frontier = new
    return seen


def full_group(n):
    """GL2(Z/n) via standard generators."""
    gens = [(1, 1, 0, 1), (0, 1 if n <= 2 else n - 1, 1, 0)]
    # a generator of the determinant: primitive root data per prime power via CRT
    for a in range(2, n):
        if gcd(a, n) == 1:
            gens.append((a, 0, 0, 1))
    g = Subgroup(n, gens)
    assert g.order == gl2_order(n), (g.order, gl2_order(n))
    return g


def crt_product(g1, g2):
    """Largest subgroup of GL2(Z/n1n2) projecting into ±g1 and ±g2.

    Components are adjoined −I first; the result is the full fiber product,
    materialized. Use the componentwise paths for large levels.
    """
    n1, n2 = g1.n, g2.n
    if gcd(n1, n2) != 1:
        raise ValueError("levels must be coprime")
    a, b = g1.adjoin_minus_identity(), g2.adjoin_minus_identity()
    n = n1 * n2
    # CRT coefficients
    u = n2 * pow(n2, -1, n1)  # = 1 mod n1, 0 mod n2
    v = n1 * pow(n1, -1, n2)
    elems = set()
    for x in a.elements:
        m1 = mat_unpack(x, n1)
        for y in b.elements:
            m2 = mat_unpack(y, n2)
            m = tuple((m1[i] * u + m2[i] * v) % n for i in range(4))
            elems.add(mat_pack(m, n))
    gens = [
        tuple((g[i] * u + identity(n2)[i] * v) % n for i in range(4))
        for g in a.generators
    ] + [
        tuple((identity(n1)[i] * u + g[i] * v) % n for i in range(4))
        for g in b.generators
    ]
    return Subgroup(n, gens, elems)


def is_conjugate(g1, g2, ambient=None):
    """Conjugacy of subgroups of GL2(Z/p), p prime <= 13, by invariant
    filtering then brute force over the ambient group."""
    if g1.n != g2.n:
        return False
    if g1.order != g2.order:
        return False
    if sorted(g1.trace_det_pairs()) != sorted(g2.trace_det_pairs()):
        return False
    if g1.elements == g2.elements:
        return True
    if ambient is None:
        ambient = full_group(g1.n)
    target = g2.elements
    for x in ambient.elements:
        m = mat_unpack(x, g1.n)
        mi = mat_inv(m, g1.n)
        ok = True
        for g in g1.generators:
            c = mat_mul(mat_mul(m, g, g1.n), mi, g1.n)
            if mat_pack(c, g1.n) not in target:
                ok = False
                break
        if ok and all(
            mat_pack(
                mat_mul(mat_mul(m, mat_unpack(y, g1.n), g1.n), mi, g1.n), g1.n
            )
            in target
            for y in g1.elements
        ):
            return True
    return False


def is_conjugate_subgroup(g1, g2, ambient=None):
    """Is some conjugate of g1 contained in g2? Brute force; small levels only."""
    if g1.n != g2.n:
        return False
    if g1.order > g2.order:
        return False
    if not set(g1.trace_det_pairs()) <= set(g2.trace_det_pairs()):
        return False
    if g1.elements <= g2.elements:
        return True
    if ambient is None:
        ambient = full_group(g1.n)
    target = g2.elements
    for x in ambient.elements:
        m = mat_unpack(x, g1.n)
        mi = mat_inv(m, g1.n)
        ok = True
        for y in g1.elements:
            c = mat_mul(mat_mul(m, mat_unpack(y, g1.n), g1.n), mi, g1.n)
            if mat_pack(c, g1.n) not in target:
                ok = False
                break
        if ok:
            return True
    return False
