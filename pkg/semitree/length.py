"""Length functions, weight functions and the Holonomy length functions.

Tables are dense int64 matrices.  The value OMEGA stands for the
infinite length and only appears to keep the API total.
"""
import logging
from collections import OrderedDict

import numpy as np

from .exceptions import LengthAxiomError, OrderError
from .monoid import class_heights, compute_green, j_height, w_set
from .rhodes import chain_product, wedge_index, wedge_L

OMEGA = np.iinfo(np.int64).max


def is_omega(value):
    """Return True for the infinite length."""
    return int(value) == OMEGA


class LengthTable(object):
    """A symmetric table D over a finite universe.

    table is the product table of the universe (ids into universe), used
    by the right contraction axiom.
    """

    def __init__(self, universe, values, table=None):
        """Store the values as an int64 matrix."""
        self.universe = list(universe)
        self.values = np.array(values, dtype=np.int64)
        n = len(self.universe)
        if self.values.shape != (n, n):
            raise LengthAxiomError("Length table has shape %s for a universe"
                                   " of %s" % (self.values.shape, n))
        self.table = None if table is None else np.asarray(table)

    @property
    def size(self):
        """Return the size of the universe."""
        return len(self.universe)

    @property
    def max_value(self):
        """Return l, the largest value of the table."""
        return int(self.values.max())

    def __getitem__(self, pair):
        return int(self.values[pair])

    def restrict(self, indices, table=None):
        """Return the table restricted to a subset of the universe."""
        indices = list(indices)
        return LengthTable([self.universe[i] for i in indices],
                           self.values[np.ix_(indices, indices)], table)


class AxiomReport(object):
    """Per axiom pass/fail results with the first witness found."""

    def __init__(self):
        """Start with no results."""
        self.results = OrderedDict()

    def record(self, name, witness):
        """Store the outcome of one axiom."""
        self.results[name] = (witness is None, witness)

    @property
    def passed(self):
        """Return True if every recorded axiom holds."""
        return all(ok for ok, _ in self.results.values())

    def failures(self):
        """Return the failed axioms with their witnesses."""
        return dict((name, witness) for name, (ok, witness)
                    in self.results.items() if not ok)

    def __repr__(self):
        return 'AxiomReport(%s)' % ', '.join(
            '%s=%s' % (name, 'ok' if ok else witness)
            for name, (ok, witness) in self.results.items())


def _first(mask):
    """Return the first True position of a mask as a tuple, or None."""
    found = np.argwhere(mask)
    if len(found) == 0:
        return None
    return tuple(int(i) for i in found[0])


def check_length_axioms(T, require_strict=False):
    """Check axioms L1 to L4, and L5 when strictness is required."""
    D = T.values
    n = T.size
    report = AxiomReport()
    report.record('L1', _first(D != D.T))

    diagonal = np.diag(D)
    worst = np.unravel_index(int(np.argmax(D)), D.shape)
    if D[worst] > diagonal.min():
        report.record('L2', (int(worst[0]), int(worst[1]),
                             int(np.argmin(diagonal))))
    else:
        report.record('L2', None)

    if T.table is not None:
        witness = None
        for m in range(n):
            col = T.table[:, m]
            hit = _first(D > D[np.ix_(col, col)])
            if hit is not None:
                witness = (hit[0], hit[1], m)
                break
        report.record('L3', witness)

    witness = None
    for middle in range(n):
        hit = _first(D < np.minimum.outer(D[:, middle], D[middle, :]))
        if hit is not None:
            witness = (hit[0], middle, hit[1])
            break
    report.record('L4', witness)

    if require_strict:
        level = diagonal.max()
        report.record('L5', _first((D == level) & ~np.eye(n, dtype=bool)))
    logging.debug("Length axioms: %r" % report)
    return report


def quasi_ultrametric(T):
    """Return d = 2l - 2D."""
    if T.max_value == OMEGA:
        raise LengthAxiomError("Unbounded length table has no "
                               "quasi-ultrametric")
    return 2 * T.max_value - 2 * T.values


def check_quasi_ultrametric(d, table=None):
    """Check Q1 to Q3 and right contraction of a distance table."""
    d = np.asarray(d)
    n = d.shape[0]
    report = AxiomReport()
    report.record('Q1', _first(d != d.T))
    report.record('Q2', _first(np.diag(d) != 0))
    witness = None
    for middle in range(n):
        hit = _first(d > np.maximum.outer(d[:, middle], d[middle, :]))
        if hit is not None:
            witness = (hit[0], middle, hit[1])
            break
    report.record('Q3', witness)
    if table is not None:
        witness = None
        for m in range(n):
            col = table[:, m]
            hit = _first(d[np.ix_(col, col)] > d)
            if hit is not None:
                witness = (hit[0], hit[1], m)
                break
        report.record('contraction', witness)
    return report


def is_ultrametric(d):
    """Return True if d is a quasi-ultrametric separating points."""
    d = np.asarray(d)
    report = check_quasi_ultrametric(d)
    separated = _first((d == 0) & ~np.eye(d.shape[0], dtype=bool)) is None
    return report.passed and separated


class WeightFunction(object):
    """Weights on the J-classes of M^I, zero on the class of I."""

    def __init__(self, green, weights):
        """Validate non-negativity and w(J_I) = 0."""
        self.green = green
        self.weights = dict((int(p), int(w)) for p, w in weights.items())
        top = green.top_class()
        if self.weights.get(top, 0) != 0:
            raise OrderError("Weight of the top J-class must be 0",
                             witness=top)
        for p in range(len(green.J_classes)):
            self.weights.setdefault(p, 0)
            if self.weights[p] < 0:
                raise OrderError("Negative weight on J-class %s" % p,
                                 witness=p)

    def __call__(self, p):
        return self.weights[p]

    def __eq__(self, other):
        return isinstance(other, WeightFunction) and \
            self.weights == other.weights

    def __repr__(self):
        return 'WeightFunction(%s)' % self.weights


def null_weight(green):
    """Return the weight function that is zero everywhere."""
    return WeightFunction(green, {})


def unit_weight(green):
    """Return weight 1 on every class below the top."""
    top = green.top_class()
    return WeightFunction(green, dict((p, 0 if p == top else 1)
                                      for p in range(len(green.J_classes))))


def class_weight(green, element):
    """Return weight 1 on the J-class of one element, 0 elsewhere."""
    return WeightFunction(green, {int(green.J[element]): 1})


def dedekind_forward(w):
    """Return h_w(p), the heaviest chain from p up to the top."""
    return class_heights(w.green, w)


def dedekind_inverse(green, h):
    """Return the weight function w with h_w = h."""
    top = green.top_class()
    if h.get(top, 0) != 0:
        raise OrderError("h must vanish on the top J-class", witness=top)
    for p, q in green.j_poset.edges:
        # q lies below p
        if h[q] < h[p]:
            raise OrderError("h is not order reversing at %s, %s" % (p, q),
                             witness=(p, q))
    weights = {}
    for p in green.j_poset.nodes:
        covers = list(green.j_poset.predecessors(p))
        weights[p] = h[p] - max(h[q] for q in covers) if covers else 0
    return WeightFunction(green, weights)


def random_heights(green, rng, spread=3):
    """Draw an order reversing h with h(top) = 0."""
    top = green.top_class()
    weights = dict((p, 0 if p == top else rng.randint(0, spread))
                   for p in green.j_poset.nodes)
    return dedekind_forward(WeightFunction(green, weights))


def f_from_weights(w):
    """Return f_w as an array indexed by element."""
    heights = dedekind_forward(w)
    green = w.green
    return np.array([heights[int(green.J[m])]
                     for m in range(green.monoid.size)], dtype=np.int64)


def check_j_preserving(green, f):
    """Return None if f(I) = 0 and f(m'mm'') >= f(m), else a witness."""
    f = np.asarray(f)
    if f[green.monoid.identity] != 0:
        return (green.monoid.identity,)
    return _first(green.leq_J & (f[:, None] < f[None, :]))


def check_constant_on_j(green, f):
    """Return None if f is constant on J-classes."""
    f = np.asarray(f)
    return _first((green.J[:, None] == green.J[None, :]) &
                  (f[:, None] != f[None, :]))


def holonomy_table(rh, f):
    """Return D(s,t) = f(s ^_L t) off the diagonal, 1 + max f on it."""
    green = rh.green
    f = np.asarray(f, dtype=np.int64)
    witness = check_j_preserving(green, f)
    if witness is not None:
        raise OrderError("f is not <=_J-preserving at %s" % (witness,),
                         witness=witness)
    n = rh.size
    values = np.empty((n, n), dtype=np.int64)
    for i, sigma in enumerate(rh.elements):
        for j, tau in enumerate(rh.elements):
            values[i, j] = f[wedge_L(green, sigma, tau)] if i != j else 0
    np.fill_diagonal(values, 1 + int(f.max()))
    return LengthTable(rh.elements, values, rh.table)


def holonomy_table_from_weights(rh, w):
    """Return the Holonomy table of f_w."""
    return holonomy_table(rh, f_from_weights(w))


class HLength(object):
    """The refined length function H on L-chains of M^I."""

    def __init__(self, monoid, green=None):
        """Precompute h_J and W(M^I)."""
        self.monoid = monoid
        self.green = green or compute_green(monoid)
        self.h = j_height(monoid, self.green)
        self.w = w_set(monoid, self.green)
        self.top = 2 * int(self.h.max()) + 2

    def v_related(self, sigma, tau):
        """Decide (sigma, tau) in V by the finite criterion."""
        green = self.green
        i = wedge_index(green, sigma, tau)
        m, n = sigma.term(i), tau.term(i)
        if green.R[m] != green.R[n]:
            return False
        k, l = sigma.length, tau.length
        if i == k == l:
            return True
        if i < k and i < l:
            return True
        if i == k < l:
            return m in self.w
        if i == l < k:
            return n in self.w
        return False

    def v_related_by_definition(self, sigma, tau, chains):
        """Decide (sigma, tau) in V by quantifying over all chains rho."""
        green = self.green
        target = green.L[wedge_L(green, sigma, tau)]
        for rho in chains:
            left = chain_product(green, rho, sigma)
            right = chain_product(green, rho, tau)
            a = wedge_L(green, left, right)
            if green.L[a] == target and \
                    green.R[a] != green.R[wedge_L(green, right, left)]:
                return False
        return True

    def value(self, sigma, tau):
        """Return H(sigma, tau)."""
        if sigma == tau:
            return self.top
        base = 2 * int(self.h[wedge_L(self.green, sigma, tau)])
        return base + 1 if self.v_related(sigma, tau) else base

    def table(self, rh):
        """Return H restricted to the chains of rh."""
        n = rh.size
        values = np.empty((n, n), dtype=np.int64)
        for i, sigma in enumerate(rh.elements):
            for j in range(i, n):
                values[i, j] = values[j, i] = self.value(sigma,
                                                         rh.elements[j])
        return LengthTable(rh.elements, values, rh.table)


def v_related(hlength, sigma, tau):
    """Decide (sigma, tau) in V."""
    return hlength.v_related(sigma, tau)


def h_table(rh, hlength=None):
    """Return the H length table over the chains of rh."""
    hlength = hlength or HLength(rh.base, rh.green)
    return hlength.table(rh)


def check_left_contraction(H, rh):
    """Return None if H(rho s, rho t) >= H(s, t) for all triples."""
    D = H.values
    for rho in range(rh.size):
        row = rh.table[rho]
        hit = _first(D[np.ix_(row, row)] < D)
        if hit is not None:
            return (rho, hit[0], hit[1])
    return None


def check_wedge_heights(hlength, rh):
    """Return None if equal wedge heights against s force equal wedges."""
    green = hlength.green
    h = hlength.h
    for sigma in rh.elements:
        wedges = [wedge_L(green, sigma, tau) for tau in rh.elements]
        seen = {}
        for j, m in enumerate(wedges):
            other = seen.setdefault(int(h[m]), (m, j))
            if other[0] != m:
                return (sigma.terms, other[1], j)
    return None


def check_v_translation(hlength, rh):
    """Return None if V survives right translation at the same J-level."""
    green = hlength.green
    elements = rh.elements
    for s in range(rh.size):
        for t in range(rh.size):
            sigma, tau = elements[s], elements[t]
            if not hlength.v_related(sigma, tau):
                continue
            wedge = wedge_L(green, sigma, tau)
            for r in range(rh.size):
                left, right = elements[rh.mul(s, r)], elements[rh.mul(t, r)]
                if green.J[wedge_L(green, left, right)] == green.J[wedge] \
                        and not hlength.v_related(left, right):
                    return (s, t, r)
    return None
