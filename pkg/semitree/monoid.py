"""Finite monoids, Green's relations and J-heights.

Elements are integer ids into a dense Cayley table; row index is the left
factor.  Transformation monoids compose on the right, x(fg) = (xf)g.
"""
import logging
from collections import deque

import networkx as nx
import numpy as np

from .exceptions import MonoidError, NotAssociativeError, IdentityError, \
    MorphismError, OrderError


def transformation_name(images):
    """Return the one-line display name of a transformation."""
    if len(images) < 10:
        return ''.join(str(x + 1) for x in images)
    return '(' + ' '.join(str(x + 1) for x in images) + ')'


class FiniteMonoid(object):
    """A finite monoid given by its Cayley table."""

    def __init__(self, table, identity=0, generators=None, names=None,
                 validate=True, check_generation=True,
                 transformations=None):
        """Build the monoid, validating the table unless told otherwise."""
        self.table = np.array(table, dtype=np.int64)
        if self.table.ndim != 2 or \
                self.table.shape[0] != self.table.shape[1]:
            raise MonoidError("Cayley table must be square, got shape %s"
                              % (self.table.shape,))
        self.size = self.table.shape[0]
        if self.size < 1:
            raise MonoidError("A monoid needs at least one element")
        if not 0 <= identity < self.size:
            raise MonoidError("Identity %s out of range" % identity)
        self.identity = int(identity)
        self.generators = [(str(label), int(element))
                           for label, element in (generators or [])]
        if names is None:
            names = [str(i) for i in range(self.size)]
        self.names = list(names)
        self.transformations = transformations
        if validate:
            self._validate(check_generation)
        logging.debug("Built monoid of order %s with %s generators"
                      % (self.size, len(self.generators)))

    def _validate(self, check_generation):
        """Check ranges, identity laws, associativity and generation."""
        n = self.size
        table = self.table
        if table.min() < 0 or table.max() >= n:
            bad = tuple(int(i) for i in np.argwhere((table < 0) |
                                                    (table >= n))[0])
            raise MonoidError("Table entry at %s out of range" % (bad,),
                              witness=bad)
        ids = np.arange(n)
        left = table[self.identity] != ids
        right = table[:, self.identity] != ids
        if left.any() or right.any():
            x = int(np.flatnonzero(left | right)[0])
            raise IdentityError("Identity law fails at element %s"
                                % self.names[x], witness=x)
        for a in range(n):
            # (ab)c against a(bc), one left factor at a time
            lhs = table[table[a]]
            rhs = table[a][table]
            if not np.array_equal(lhs, rhs):
                b, c = (int(i) for i in np.argwhere(lhs != rhs)[0])
                raise NotAssociativeError(
                    "Associativity fails for (%s, %s, %s)" % (a, b, c),
                    witness=(a, b, c))
        for label, element in self.generators:
            if not 0 <= element < n:
                raise MonoidError("Generator %s out of range" % label,
                                  witness=label)
        if check_generation and self.generators:
            reached = self.closure([self.identity])
            if len(reached) != n:
                missing = min(set(range(n)) - reached)
                raise MonoidError("Element %s is not a product of generators"
                                  % self.names[missing], witness=missing)

    @classmethod
    def from_table(cls, table, identity=0, generators=None, names=None):
        """Build a monoid from an explicit Cayley table."""
        return cls(table, identity, generators, names)

    @classmethod
    def from_generators(cls, domain_size, gens):
        """Close a list of transformations under composition.

        gens is a list of (label, images) pairs, images being 0-based.
        Element 0 is the identity map; other elements follow in breadth
        first discovery order.
        """
        if not gens and domain_size == 0:
            raise MonoidError("Empty generator list on an empty domain")
        parsed = []
        for label, images in gens:
            images = tuple(int(x) for x in images)
            if len(images) != domain_size:
                raise MonoidError("Generator %s has %s images, expected %s"
                                  % (label, len(images), domain_size),
                                  witness=label)
            for x in images:
                if not 0 <= x < domain_size:
                    raise MonoidError("Generator %s maps to %s, outside "
                                      "[0, %s)" % (label, x, domain_size),
                                      witness=label)
            parsed.append((str(label), images))

        identity = tuple(range(domain_size))
        index = {identity: 0}
        elements = [identity]
        queue = deque([identity])
        while queue:
            f = queue.popleft()
            for _, g in parsed:
                c = tuple(g[x] for x in f)
                if c not in index:
                    index[c] = len(elements)
                    elements.append(c)
                    queue.append(c)
        n = len(elements)
        logging.debug("Transformation closure reached %s elements" % n)
        table = np.zeros((n, n), dtype=np.int64)
        for i, f in enumerate(elements):
            for j, g in enumerate(elements):
                table[i, j] = index[tuple(g[x] for x in f)]
        generators = [(label, index[g]) for label, g in parsed]
        names = [transformation_name(f) for f in elements]
        return cls(table, 0, generators, names,
                   transformations=elements)

    def mul(self, a, b):
        """Multiply two elements."""
        return int(self.table[a, b])

    def product(self, word):
        """Multiply a sequence of elements, the empty word giving 1."""
        result = self.identity
        for x in word:
            result = int(self.table[result, x])
        return result

    def power(self, m, k):
        """Return m to the k-th power."""
        result = self.identity
        for _ in range(k):
            result = int(self.table[result, m])
        return result

    def is_idempotent(self, m):
        """Return True if mm = m."""
        return int(self.table[m, m]) == m

    def is_regular(self, m):
        """Return True if m = mxm for some x."""
        return bool((self.table[self.table[m], m] == m).any())

    def is_aperiodic_element(self, m):
        """Return True if m^(n+1) = m^n for some n."""
        seen = {}
        power = m
        k = 1
        while power not in seen:
            seen[power] = k
            power = int(self.table[power, m])
            k += 1
        return k - seen[power] == 1

    def closure(self, start, generators=None):
        """Return everything reachable from start by right generators."""
        if generators is None:
            generators = [g for _, g in self.generators]
        reached = set(start)
        queue = deque(start)
        while queue:
            x = queue.popleft()
            for g in generators:
                y = int(self.table[x, g])
                if y not in reached:
                    reached.add(y)
                    queue.append(y)
        return reached

    def index_of(self, name):
        """Return the id of the element with the given display name."""
        return self.names.index(name)


def adjoin_identity(monoid):
    """Return M^I, a copy of M with a new identity I at index n."""
    n = monoid.size
    table = np.empty((n + 1, n + 1), dtype=np.int64)
    table[:n, :n] = monoid.table
    table[n, :] = np.arange(n + 1)
    table[:, n] = np.arange(n + 1)
    names = list(monoid.names) + ['I']
    logging.debug("Adjoining identity to monoid of order %s" % n)
    return FiniteMonoid(table, n, monoid.generators, names,
                        check_generation=False,
                        transformations=monoid.transformations)


def _equivalence_ids(leq):
    """Number the classes of a preorder matrix by least member."""
    graph = nx.from_numpy_array(leq.astype(np.int8),
                                create_using=nx.DiGraph)
    classes = sorted((sorted(c) for c in
                      nx.strongly_connected_components(graph)),
                     key=lambda c: c[0])
    ids = np.empty(leq.shape[0], dtype=np.int64)
    for k, members in enumerate(classes):
        ids[members] = k
    return ids, classes


class GreenData(object):
    """Green's relations of a finite monoid.

    leq_X[a, b] is True iff a <=_X b.  Class ids are numbered by least
    member.  j_poset holds the cover relation of the J-class order with
    edges from the upper class to the lower one.
    """

    def __init__(self, monoid):
        """Compute every relation from the Cayley table."""
        self.monoid = monoid
        table = monoid.table
        n = monoid.size
        rows = np.arange(n)
        self.leq_R = np.zeros((n, n), dtype=bool)
        self.leq_R[table, rows[:, None]] = True
        self.leq_L = np.zeros((n, n), dtype=bool)
        self.leq_L[table, rows[None, :]] = True
        self.leq_J = (self.leq_R.astype(np.int64) @
                      self.leq_L.astype(np.int64)) > 0

        self.L, self.L_classes = _equivalence_ids(self.leq_L)
        self.R, self.R_classes = _equivalence_ids(self.leq_R)
        self.J, self.J_classes = _equivalence_ids(self.leq_J)
        pairs = {}
        self.H = np.empty(n, dtype=np.int64)
        self.H_classes = []
        for m in range(n):
            key = (int(self.L[m]), int(self.R[m]))
            if key not in pairs:
                pairs[key] = len(self.H_classes)
                self.H_classes.append([])
            self.H[m] = pairs[key]
            self.H_classes[pairs[key]].append(m)

        self.lt_L = self.leq_L & (self.L[:, None] != self.L[None, :])
        self.lt_R = self.leq_R & (self.R[:, None] != self.R[None, :])
        self.lt_J = self.leq_J & (self.J[:, None] != self.J[None, :])

        order = nx.DiGraph()
        order.add_nodes_from(range(len(self.J_classes)))
        for p, members in enumerate(self.J_classes):
            for q, others in enumerate(self.J_classes):
                if p != q and self.leq_J[others[0], members[0]]:
                    order.add_edge(p, q)
        self.j_order = order
        self.j_poset = nx.transitive_reduction(order)
        self.j_poset.add_nodes_from(order.nodes)
        logging.debug("Green classes: %s L, %s R, %s J, %s H"
                      % (len(self.L_classes), len(self.R_classes),
                         len(self.J_classes), len(self.H_classes)))

    def L_class(self, m):
        """Return the members of the L-class of m."""
        return self.L_classes[self.L[m]]

    def R_class(self, m):
        """Return the members of the R-class of m."""
        return self.R_classes[self.R[m]]

    def J_class(self, m):
        """Return the members of the J-class of m."""
        return self.J_classes[self.J[m]]

    def H_class(self, m):
        """Return the members of the H-class of m."""
        return self.H_classes[self.H[m]]

    def top_class(self):
        """Return the id of the maximum J-class."""
        sources = [p for p in self.j_poset.nodes
                   if self.j_poset.in_degree(p) == 0]
        if len(sources) != 1:
            raise OrderError("No unique maximum J-class: %s" % sources,
                             witness=sources)
        return sources[0]


def compute_green(monoid):
    """Return the GreenData of a monoid."""
    return GreenData(monoid)


def class_heights(green, weight):
    """Longest weighted path from the top of the J-poset to every class."""
    top = green.top_class()
    heights = {}
    for p in nx.topological_sort(green.j_poset):
        parents = list(green.j_poset.predecessors(p))
        if not parents:
            heights[p] = weight(p) if p != top else 0
        else:
            heights[p] = weight(p) + max(heights[q] for q in parents)
    return heights


def j_height(monoid, green=None):
    """Return h_J as an integer array indexed by element."""
    green = green or compute_green(monoid)
    top = green.top_class()
    if green.J[monoid.identity] != top:
        raise OrderError("The identity does not lie in the maximum J-class")
    heights = class_heights(green, lambda p: 0 if p == top else 1)
    return np.array([heights[int(green.J[m])] for m in range(monoid.size)],
                    dtype=np.int64)


def is_stable(monoid, green=None):
    """Check ax J a => ax R a and xa J a => xa L a.

    Returns (True, None) or (False, (rule, a, x)).
    """
    green = green or compute_green(monoid)
    table = monoid.table
    J, R, L = green.J, green.R, green.L
    bad = (J[table] == J[:, None]) & (R[table] != R[:, None])
    if bad.any():
        a, x = (int(i) for i in np.argwhere(bad)[0])
        return False, ('S1', a, x)
    bad = (J[table] == J[None, :]) & (L[table] != L[None, :])
    if bad.any():
        x, a = (int(i) for i in np.argwhere(bad)[0])
        return False, ('S2', a, x)
    return True, None


def w_set(monoid, green=None):
    """Return the elements whose L-class equals their H-class."""
    green = green or compute_green(monoid)
    return set(m for m in range(monoid.size)
               if len(green.L_class(m)) == len(green.H_class(m)))


def check_homomorphism(source, target, mapping):
    """Return None if mapping is a monoid morphism, else a witness pair."""
    mapping = np.asarray(mapping, dtype=np.int64)
    if mapping.shape != (source.size,):
        raise MorphismError("Mapping covers %s elements, expected %s"
                            % (mapping.shape[0], source.size))
    if mapping[source.identity] != target.identity:
        return (source.identity, source.identity)
    bad = mapping[source.table] != target.table[mapping[:, None],
                                                mapping[None, :]]
    if bad.any():
        return tuple(int(i) for i in np.argwhere(bad)[0])
    return None


def is_aperiodic_morphism(source, target, mapping):
    """Return True if every preimage of an aperiodic element is aperiodic."""
    witness = check_homomorphism(source, target, mapping)
    if witness is not None:
        raise MorphismError("Mapping is not a homomorphism at %s"
                            % (witness,), witness=witness)
    target_flags = [target.is_aperiodic_element(t)
                    for t in range(target.size)]
    for s in range(source.size):
        if target_flags[mapping[s]] and not source.is_aperiodic_element(s):
            logging.debug("Element %s is periodic over an aperiodic image"
                          % s)
            return False
    return True


def check_right_compatible(green):
    """Return None if <=_L is right and <=_R left compatible."""
    table = green.monoid.table
    for m in range(green.monoid.size):
        col = table[:, m]
        bad = green.leq_L & ~green.leq_L[col][:, col]
        if bad.any():
            a, b = (int(i) for i in np.argwhere(bad)[0])
            return ('L', a, b, m)
        row = table[m]
        bad = green.leq_R & ~green.leq_R[row][:, row]
        if bad.any():
            a, b = (int(i) for i in np.argwhere(bad)[0])
            return ('R', a, b, m)
    return None


def check_stability_consequence(green):
    """Return None if <_R and <_L are both contained in <_J."""
    for name, strict in (('R', green.lt_R), ('L', green.lt_L)):
        bad = strict & ~green.lt_J
        if bad.any():
            a, b = (int(i) for i in np.argwhere(bad)[0])
            return (name, a, b)
    return None


def check_l_r_lift(green):
    """Return None if a <_L b and b R bc always give a R ac <_L bc."""
    table = green.monoid.table
    R = green.R
    for c in range(green.monoid.size):
        col = table[:, c]
        premise = green.lt_L & (R[col] == R)[None, :]
        holds = (R[col] == R)[:, None] & green.lt_L[col][:, col]
        bad = premise & ~holds
        if bad.any():
            a, b = (int(i) for i in np.argwhere(bad)[0])
            return (a, b, c)
    return None


def check_identity(monoid, p, q):
    """Return None if x^(p+q) = x^p for all x, else the failing x."""
    for x in range(monoid.size):
        if monoid.power(x, p + q) != monoid.power(x, p):
            return x
    return None
