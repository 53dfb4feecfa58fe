"""Rees coordinates of J-classes, star/sharp maps and local sets.

Every J-class J gets coordinates A x G x B: A and B number the R- and
L-classes of J by least member, G is the Schutzenberger group of the
H-class holding the least element h0 of J.  Anchors are always the least
element solving their defining equation.
"""
import logging
from collections import namedtuple

import numpy as np

from .exceptions import StabilityError
from .monoid import compute_green, is_stable


def _least(candidates):
    """Return the least index of a boolean vector or None."""
    found = np.flatnonzero(candidates)
    return int(found[0]) if len(found) else None


class ReesView(object):
    """Coordinates of one J-class."""

    def __init__(self, monoid, green, jclass):
        """Fix the anchors and build coordinates for the class."""
        table = monoid.table
        self.monoid = monoid
        self.green = green
        self.jclass = jclass
        self.members = list(green.J_classes[jclass])
        self.h0 = self.members[0]
        self.A = sorted(set(int(green.R[m]) for m in self.members),
                        key=lambda r: green.R_classes[r][0])
        self.B = sorted(set(int(green.L[m]) for m in self.members),
                        key=lambda l: green.L_classes[l][0])
        self._a_index = dict((r, i) for i, r in enumerate(self.A))
        self._b_index = dict((l, i) for i, l in enumerate(self.B))
        self.H = sorted(green.H_class(self.h0))
        self._g_index = dict((h, i) for i, h in enumerate(self.H))
        h0 = self.h0
        L0, R0 = green.L[h0], green.R[h0]

        self.a_hat, self.b_hat = [], []
        self.e, self.e_bar, self.f, self.f_bar = [], [], [], []
        for r in self.A:
            hat = _least((green.R == r) & (green.L == L0))
            if hat is None:
                raise StabilityError("R-class %s misses the L-class of %s"
                                     % (r, h0), witness=(r, h0))
            e = _least(table[:, hat] == h0)
            e_bar = _least(table[:, h0] == hat)
            if e is None or e_bar is None:
                raise StabilityError("No row anchor for R-class %s" % r,
                                     witness=r)
            self.a_hat.append(hat)
            self.e.append(e)
            self.e_bar.append(e_bar)
        for l in self.B:
            hat = _least((green.R == R0) & (green.L == l))
            if hat is None:
                raise StabilityError("L-class %s misses the R-class of %s"
                                     % (l, h0), witness=(l, h0))
            f = _least(table[hat] == h0)
            f_bar = _least(table[h0] == hat)
            if f is None or f_bar is None:
                raise StabilityError("No column anchor for L-class %s" % l,
                                     witness=l)
            self.b_hat.append(hat)
            self.f.append(f)
            self.f_bar.append(f_bar)

        self.tilde = []
        for h in self.H:
            x = _least(table[h0] == h)
            if x is None:
                raise StabilityError("No translation from %s to %s"
                                     % (h0, h), witness=(h0, h))
            self.tilde.append(x)
        n_g = len(self.H)
        self.group = np.empty((n_g, n_g), dtype=np.int64)
        for i, h in enumerate(self.H):
            for j in range(n_g):
                self.group[i, j] = self._g_index[int(table[h,
                                                            self.tilde[j]])]
        self._inverse = [int(np.flatnonzero(self.group[i] == 0)[0])
                         for i in range(n_g)]

        self._coords = {}
        self._elements = {}
        for u in self.members:
            a = self._a_index[int(green.R[u])]
            b = self._b_index[int(green.L[u])]
            core = int(table[table[self.e[a], u], self.f[b]])
            if core not in self._g_index:
                raise StabilityError("Element %s does not land in the "
                                     "distinguished H-class" % u, witness=u)
            key = (a, self._g_index[core], b)
            if key in self._elements:
                raise StabilityError(
                    "Coordinates %s are not injective" % (key,),
                    witness=(u, self._elements[key]))
            self._coords[u] = key
            self._elements[key] = u
        if len(self._elements) != len(self.A) * n_g * len(self.B):
            raise StabilityError("Coordinates of J-class %s are not onto"
                                 % jclass, witness=jclass)

        self.C = {}
        for b in range(len(self.B)):
            for a in range(len(self.A)):
                p = int(table[self.element(0, 0, b), self.element(a, 0, 0)])
                self.C[(b, a)] = self._coords[p][1] \
                    if p in self._coords else None
        logging.debug("J-class %s: |A|=%s |G|=%s |B|=%s"
                      % (jclass, len(self.A), n_g, len(self.B)))

    @property
    def group_order(self):
        """Return |G|."""
        return len(self.H)

    @property
    def is_regular(self):
        """Return True if some sandwich entry is non-zero."""
        return any(c is not None for c in self.C.values())

    def coords(self, u):
        """Return (a, g, b) for u in this J-class."""
        return self._coords[u]

    def element(self, a, g, b):
        """Return the element with coordinates (a, g, b)."""
        return self._elements[(a, g, b)]

    def a_index(self, rclass):
        """Return the A-index of a global R-class id."""
        return self._a_index[rclass]

    def b_index(self, lclass):
        """Return the B-index of a global L-class id."""
        return self._b_index[lclass]

    def g_mul(self, g, h):
        """Multiply two group indices."""
        return int(self.group[g, h])

    def g_inv(self, g):
        """Return the inverse of a group index."""
        return self._inverse[g]

    def rees_product(self, x, y):
        """Multiply coordinate triples, None standing for zero."""
        a, g, b = x
        a2, g2, b2 = y
        c = self.C[(b, a2)]
        if c is None:
            return None
        return (a, self.g_mul(self.g_mul(g, c), g2), b2)


StarSharp = namedtuple('StarSharp', ['star', 'sharp'])
LocalSets = namedtuple('LocalSets', ['y_set', 'q_set', 'a_prime', 'gamma'])


def coordinatize(monoid, green=None):
    """Return one ReesView per J-class, indexed by J-class id."""
    green = green or compute_green(monoid)
    stable, witness = is_stable(monoid, green)
    if not stable:
        raise StabilityError("Monoid is not stable at %s" % (witness,),
                             witness=witness)
    return [ReesView(monoid, green, j) for j in range(len(green.J_classes))]


def star_sharp(monoid, green, views):
    """Return the star and sharp maps as integer arrays."""
    table = monoid.table
    star = np.empty(monoid.size, dtype=np.int64)
    sharp = np.empty(monoid.size, dtype=np.int64)
    for m in range(monoid.size):
        view = views[green.J[m]]
        a, _, _ = view.coords(m)
        target = view.element(a, 0, 0)
        s = _least(table[m] == target)
        t = _least(table[target] == m)
        if s is None or t is None:
            raise StabilityError("No star/sharp for element %s" % m,
                                 witness=m)
        star[m] = s
        sharp[m] = t
    return StarSharp(star, sharp)


class Rees(object):
    """Coordinates, star/sharp maps and local sets of a monoid M^I."""

    def __init__(self, monoid, green=None, generators=None):
        """Coordinatize every J-class and fix the star/sharp maps."""
        self.monoid = monoid
        self.green = green or compute_green(monoid)
        self.views = coordinatize(monoid, self.green)
        self.star, self.sharp = star_sharp(monoid, self.green, self.views)
        if generators is None:
            generators = [g for _, g in monoid.generators]
        self.generators = sorted(set(generators))
        self._local = {}

    def view(self, m):
        """Return the ReesView of the J-class of m."""
        return self.views[self.green.J[m]]

    def coords(self, m):
        """Return the coordinates of m inside its J-class."""
        return self.view(m).coords(m)

    def anchor(self, m):
        """Return mm*, the (a,1,1) element of the R-class of m."""
        return int(self.monoid.table[m, self.star[m]])

    def unit_of_lclass(self, lclass):
        """Return the element (1,1,b) of a global L-class."""
        member = self.green.L_classes[lclass][0]
        view = self.view(member)
        return view.element(0, 0, view.b_index(lclass))

    def local_sets(self, m):
        """Return the LocalSets of m, caching the result."""
        if m not in self._local:
            self._local[m] = local_sets(self, m)
        return self._local[m]


def local_sets(rees, m):
    """Compute Y_m, Q_m (as L-class ids), A'_m and gamma_m."""
    table = rees.monoid.table
    green = rees.green
    y_set = frozenset(y for y in rees.generators
                      if green.lt_L[table[y, m], m])
    q_set = frozenset(int(green.L[table[y, m]]) for y in y_set)
    gamma = min(int(table[y, m]) for y in y_set) if y_set else None
    view = rees.view(m)
    _, g, b = view.coords(m)
    a_prime = []
    for a in range(len(view.A)):
        other = view.element(a, g, b)
        if any(green.lt_L[table[y, other], other] for y in rees.generators):
            a_prime.append(a)
    return LocalSets(y_set, q_set, frozenset(a_prime), gamma)


def schutz_translation(view, u, v):
    """Return g0 with ((a,h,b)v) having group coordinate h*g0 for all h."""
    monoid, green = view.monoid, view.green
    uv = monoid.mul(u, v)
    if green.R[uv] != green.R[u]:
        raise StabilityError("uv is not R-related to u", witness=(u, v))
    a, _, b = view.coords(u)
    g0 = view.coords(monoid.mul(view.element(a, 0, b), v))[1]
    for h in range(view.group_order):
        got = view.coords(monoid.mul(view.element(a, h, b), v))[1]
        if got != view.g_mul(h, g0):
            raise StabilityError("Translation is not a right multiplication",
                                 witness=(u, v, h))
    return g0


def check_rees_law(view):
    """Return None if the Rees product reproduces in-class products."""
    monoid = view.monoid
    members = set(view.members)
    for u in view.members:
        for v in view.members:
            uv = monoid.mul(u, v)
            expected = view.rees_product(view.coords(u), view.coords(v))
            if uv in members:
                if expected != view.coords(uv):
                    return (u, v)
            elif expected is not None:
                return (u, v)
    return None


def check_star_sharp(rees):
    """Return None if mm*m# = m and (m R m' iff mm* = m'm'*)."""
    table = rees.monoid.table
    anchors = [rees.anchor(m) for m in range(rees.monoid.size)]
    for m in range(rees.monoid.size):
        if table[anchors[m], rees.sharp[m]] != m:
            return ('i', m)
    for m in range(rees.monoid.size):
        for n in range(rees.monoid.size):
            same = rees.green.R[m] == rees.green.R[n]
            if same != (anchors[m] == anchors[n]):
                return ('ii', m, n)
    return None


def check_star_compatibility(rees):
    """Return None if Y_m = Y_mm* and b -> (1,1,b)m* is a bijection."""
    table = rees.monoid.table
    for m in range(rees.monoid.size):
        anchor = rees.anchor(m)
        here, there = rees.local_sets(m), rees.local_sets(anchor)
        if here.y_set != there.y_set:
            return ('Y', m)
        image = set()
        for q in here.q_set:
            unit = rees.unit_of_lclass(q)
            image.add(int(rees.green.L[table[unit, rees.star[m]]]))
        if image != set(there.q_set):
            return ('Q', m)
    return None


def check_a_prime_r_invariant(rees):
    """Return None if R-related elements share A'."""
    green = rees.green
    for members in green.R_classes:
        first = rees.local_sets(members[0]).a_prime
        for m in members[1:]:
            if rees.local_sets(m).a_prime != first:
                return (members[0], m)
    return None
