"""Partial maps, sequential maps and wreath products of partial
transformation monoids.

A point of X_i x ... x X_1 is the tuple (x_i, ..., x_1); alphabets are
listed level 1 first.  Maps act on the right and compose left to right.
"""
import logging
from collections import deque
from itertools import product

import numpy as np

from .elliptic import EllipticMTree, Ray, RootedTree
from .exceptions import MorphismError, SequentialError, TransitivityError, \
    TreeError, LabelingError
from .length import LengthTable


class PartialMap(object):
    """A partial self-map of a finite alphabet."""

    __slots__ = ('_map', '_key')

    def __init__(self, mapping=None):
        """Freeze a dict x -> image."""
        self._map = dict(mapping or {})
        self._key = frozenset(self._map.items())

    @classmethod
    def identity(cls, alphabet):
        """Return Id_X."""
        return cls((x, x) for x in alphabet)

    def __call__(self, x):
        return self._map.get(x)

    def __eq__(self, other):
        return isinstance(other, PartialMap) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __len__(self):
        return len(self._map)

    def __repr__(self):
        return 'PartialMap(%s)' % ', '.join(
            '%s->%s' % (x, y) for x, y in sorted(self._map.items()))

    def items(self):
        """Return the (x, image) pairs."""
        return self._map.items()

    @property
    def domain(self):
        """Return dom."""
        return set(self._map)

    @property
    def image(self):
        """Return the set of images."""
        return set(self._map.values())

    def compose(self, other):
        """Return self followed by other."""
        return PartialMap((x, other._map[y]) for x, y in self._map.items()
                          if y in other._map)

    def is_total(self, alphabet):
        """Return True if defined on the whole alphabet."""
        return len(self._map) == len(alphabet)

    def is_permutation(self, alphabet):
        """Return True if this is a member of S(X)."""
        return self.is_total(alphabet) and len(self.image) == len(alphabet)

    def is_constant(self):
        """Return True if this is a member of K(X)."""
        return len(self.image) <= 1

    def is_partial_identity(self):
        """Return True if every defined point is fixed."""
        return all(x == y for x, y in self._map.items())

    def is_identity(self, alphabet):
        """Return True if this is Id_X."""
        return self.is_total(alphabet) and self.is_partial_identity()


def closure(maps, alphabet):
    """Return the submonoid of P(X) generated by maps."""
    generators = list(set(maps))
    start = PartialMap.identity(alphabet)
    reached = {start}
    queue = deque([start])
    for g in generators:
        if g not in reached:
            reached.add(g)
            queue.append(g)
    while queue:
        x = queue.popleft()
        for g in generators:
            y = x.compose(g)
            if y not in reached:
                reached.add(y)
                queue.append(y)
    logging.debug("Local monoid on %s symbols has %s elements"
                  % (len(alphabet), len(reached)))
    return reached


def points(alphabets, level):
    """Enumerate X_level x ... x X_1."""
    return product(*[alphabets[j] for j in reversed(range(level))])


class SequentialMap(object):
    """A sequential partial self-map of X_l x ... x X_1 and its suffixes."""

    def __init__(self, alphabets, mapping=None):
        """Store the alphabets (level 1 first) and the point images."""
        self.alphabets = tuple(tuple(x) for x in alphabets)
        self.levels = len(self.alphabets)
        self.mapping = dict(mapping or {})
        self._key = frozenset(self.mapping.items())

    @classmethod
    def identity(cls, alphabets):
        """Return Id_X on every point of every level."""
        return build_from_components(
            alphabets,
            lambda prefix, i: PartialMap.identity(alphabets[i - 1]))

    def __call__(self, point):
        return self.mapping.get(point)

    def __eq__(self, other):
        return isinstance(other, SequentialMap) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __contains__(self, point):
        return point in self.mapping

    def __repr__(self):
        return 'SequentialMap(%s points)' % len(self.mapping)

    def domain_at(self, level):
        """Return the points of dom at the given level."""
        return [p for p in self.mapping if len(p) == level]

    def restriction(self, level):
        """Return the map restricted to points of one level."""
        return dict((p, q) for p, q in self.mapping.items()
                    if len(p) == level)

    def validate(self):
        """Raise SequentialError unless SQ1 to SQ3 hold."""
        for p, q in self.mapping.items():
            if len(p) != len(q) or len(p) > self.levels:
                raise SequentialError("Point %s changes level" % (p,),
                                      witness=p)
            for i, x in enumerate(reversed(p)):
                if x not in self.alphabets[i] or \
                        q[len(q) - 1 - i] not in self.alphabets[i]:
                    raise SequentialError("Point %s leaves the alphabets"
                                          % (p,), witness=p)
            if p and p[1:] not in self.mapping:
                raise SequentialError("Domain is not suffix closed at %s"
                                      % (p,), witness=p)
            if p and self.mapping[p[1:]] != q[1:]:
                raise SequentialError("Map is not sequential at %s" % (p,),
                                      witness=p)
        return True

    def compose(self, other):
        """Return self followed by other."""
        if self.alphabets != other.alphabets:
            raise SequentialError("Alphabet mismatch")
        return SequentialMap(self.alphabets,
                             ((p, other.mapping[q])
                              for p, q in self.mapping.items()
                              if q in other.mapping))

    def local_component(self, prefix, i):
        """Return (., a_(i-1), ..., a_1) phi pi_i as a PartialMap."""
        if prefix not in self.mapping:
            logging.debug("Prefix %s is outside the domain" % (prefix,))
            return PartialMap()
        return PartialMap((x, self.mapping[(x,) + prefix][0])
                          for x in self.alphabets[i - 1]
                          if (x,) + prefix in self.mapping)

    def level_agrees(self, other, level):
        """Return True if both maps restrict equally to one level."""
        return self.restriction(level) == other.restriction(level)


def check_local_composition(phi, other, prefix, i):
    """Return True if the local component of a product splits."""
    left = phi.compose(other).local_component(prefix, i)
    moved = phi(prefix)
    if moved is None:
        return left == PartialMap()
    right = phi.local_component(prefix, i).compose(
        other.local_component(moved, i))
    return left == right


def build_from_components(alphabets, component):
    """Assemble a sequential map from its local components.

    component(prefix, i) returns the PartialMap used at a prefix of
    level i - 1.
    """
    mapping = {(): ()}
    frontier = [()]
    for i in range(1, len(alphabets) + 1):
        grown = []
        for prefix in frontier:
            xi = component(prefix, i)
            for x, y in xi.items():
                mapping[(x,) + prefix] = (y,) + mapping[prefix]
                grown.append((x,) + prefix)
        frontier = grown
    return SequentialMap(alphabets, mapping)


class WreathProduct(object):
    """A finite set of sequential maps closed under composition."""

    def __init__(self, alphabets, elements, local_monoids=None):
        """Tabulate the product of the given elements."""
        self.alphabets = tuple(tuple(x) for x in alphabets)
        self.elements = list(elements)
        self.local_monoids = local_monoids
        self._index = dict((phi, i) for i, phi in enumerate(self.elements))
        n = len(self.elements)
        self.table = np.empty((n, n), dtype=np.int64)
        for i, phi in enumerate(self.elements):
            for j, other in enumerate(self.elements):
                key = phi.compose(other)
                if key not in self._index:
                    raise SequentialError("Elements are not closed under "
                                          "composition", witness=(i, j))
                self.table[i, j] = self._index[key]
        logging.debug("Wreath product with %s elements over %s levels"
                      % (n, len(self.alphabets)))

    @classmethod
    def generated(cls, alphabets, generators, local_monoids=None):
        """Close a list of sequential maps under composition."""
        start = SequentialMap.identity(alphabets)
        reached = [start]
        seen = {start}
        queue = deque([start])
        while queue:
            phi = queue.popleft()
            for g in generators:
                psi = phi.compose(g)
                if psi not in seen:
                    seen.add(psi)
                    reached.append(psi)
                    queue.append(psi)
        return cls(alphabets, reached, local_monoids)

    @property
    def size(self):
        """Return the number of elements."""
        return len(self.elements)

    def index(self, phi):
        """Return the id of an element."""
        return self._index[phi]

    def contains(self, phi):
        """Check (W1) to (W3) against the local monoids."""
        try:
            phi.validate()
        except SequentialError:
            return False
        if self.local_monoids is None:
            return True
        for i in range(1, len(self.alphabets) + 1):
            for prefix in phi.domain_at(i - 1):
                if phi.local_component(prefix, i) not in \
                        self.local_monoids[i - 1]:
                    return False
        return True


def full_wreath(alphabets, monoids):
    """Enumerate M_l o ... o M_1 for monoids of total maps."""
    alphabets = tuple(tuple(x) for x in alphabets)
    choices = [()]
    for i in range(1, len(alphabets) + 1):
        prefixes = list(points(alphabets, i - 1))
        choices = [c + (pick,) for c in choices
                   for pick in product(monoids[i - 1], repeat=len(prefixes))]
    maps = []
    for choice in choices:
        # choice[i - 1] assigns one component to every prefix of level i - 1
        table = {}
        for i, picks in enumerate(choice, start=1):
            for prefix, xi in zip(points(alphabets, i - 1), picks):
                table[(prefix, i)] = xi
        maps.append(build_from_components(
            alphabets, lambda prefix, i, table=table: table[(prefix, i)]))
    logging.debug("Full wreath product has %s elements" % len(maps))
    return maps


def wreath_order(orders, sizes):
    """Return |M_l o ... o M_1| for full transformation monoids.

    orders and sizes are listed level 1 first.
    """
    total = 1
    below = 1
    for order, size in zip(orders, sizes):
        total *= order ** below
        below *= size
    return total


def realizable_orders(bounds, sizes):
    """Return every order wreath_order can reach with |M_i| <= bounds[i]."""
    return set(wreath_order(orders, sizes) for orders in
               product(*[range(1, b + 1) for b in bounds]))


def tuple_tree(alphabets):
    """Return the tree X_l x ... x X_1 with the empty tuple as root."""
    parent = {(): None}
    frontier = [()]
    for alphabet in alphabets:
        grown = []
        for v in frontier:
            for x in alphabet:
                parent[(x,) + v] = v
                grown.append((x,) + v)
        frontier = grown
    return RootedTree(parent)


class EllWreathIso(object):
    """The isomorphism Ell(r0, T(n_l..n_1)) -> M(X_l) o ... o M(X_1)."""

    def __init__(self, tree):
        """Read the alphabets off a uniformly branching tuple tree."""
        if tree.root != ():
            raise TreeError("Tree vertices must be tuples rooted at ()")
        alphabets = []
        for i in range(tree.height):
            counts = set(len(tree.sons(v)) for v in tree.level(i))
            if len(counts) != 1:
                raise TreeError("Tree is not uniformly branching at depth %s"
                                % i, witness=i)
            alphabets.append(tuple(sorted(set(w[0] for w in
                                              tree.level(i + 1)))))
        self.tree = tree
        self.alphabets = tuple(alphabets)

    def forward(self, theta):
        """Return the restriction of an elliptic contraction to leaves."""
        leaves = self.tree.level(self.tree.height)
        return dict((v, theta[v]) for v in leaves)

    def backward(self, leaf_map):
        """Return the domain extension of a leaf map to all vertices."""
        theta = {(): ()}
        for leaf, image in leaf_map.items():
            for i in range(len(leaf) + 1):
                v, w = leaf[i:], image[i:]
                if theta.setdefault(v, w) != w:
                    raise SequentialError("Leaf map is not sequential at %s"
                                          % (v,), witness=v)
        return theta

    def sequential(self, theta):
        """Return an elliptic contraction as a total sequential map."""
        return SequentialMap(self.alphabets, theta)


def ell_wreath_iso(tree):
    """Return the restriction/extension isomorphism for a tuple tree."""
    return EllWreathIso(tree)


def pointed_wreath_tree(components):
    """Build the elliptic tree of M_l o ... o M_1 from pointed components.

    components lists (alphabet, point, maps) level 1 first, maps being
    total PartialMaps of the alphabet.
    """
    alphabets = []
    for i, (alphabet, point, maps) in enumerate(components, start=1):
        reached = closure(maps, alphabet)
        orbit = set(xi(point) for xi in reached)
        if orbit != set(alphabet):
            missing = sorted(set(alphabet) - orbit)[0]
            raise TransitivityError("Component %s does not reach %s from %s"
                                    % (i, missing, point),
                                    witness=(i, missing))
        alphabets.append(tuple(alphabet))
    monoids = [sorted(closure(maps, alphabet), key=repr)
               for alphabet, _, maps in components]
    elements = full_wreath(alphabets, monoids)
    product_ = WreathProduct(alphabets, elements)
    tree = tuple_tree(alphabets)
    base = Ray(tuple(tuple(point for _, point, _ in
                           reversed(components[:i]))
                     for i in range(len(components) + 1)))
    action = [dict((v, phi(v)) for v in tree.vertices)
              for phi in product_.elements]
    identity = product_.index(SequentialMap.identity(alphabets))
    chi = EllipticMTree(tree, base, action, product_.table, identity)
    return chi, product_


def pointed_length(phi, other, base_ray):
    """Return max{i : (x_i..x_1)phi = (x_i..x_1)phi'} on the base ray."""
    best = 0
    for i, point in enumerate(base_ray.path):
        if phi(point) != other(point):
            break
        best = i
    return best


class GenericEmbedding(object):
    """The maps Psi_m = psi^-1 theta_m psi for a labelled elliptic tree."""

    def __init__(self, chi, labels, alphabets, psi, maps, unit=None):
        """Keep every piece of the construction around.

        unit is the index of the map playing the role of I, if any.
        """
        self.unit = unit
        self.chi = chi
        self.labels = labels
        self.alphabets = alphabets
        self.psi = psi
        self.maps = maps


def check_locally_injective(tree, labels):
    """Return None if labels separate the sons of every vertex."""
    for v in tree.vertices:
        sons = tree.sons(v)
        if len(set(labels[w] for w in sons)) != len(sons):
            return v
    return None


def ray_encoding(tree, labels):
    """Return psi: v -> (f(v_i), ..., f(v_1))."""
    psi = {tree.root: ()}
    for v in tree.vertices:
        if v != tree.root:
            psi[v] = (labels[v],) + psi[tree.father(v)]
    return psi


def generic_embed(chi, labels, adjoin_identity=True):
    """Embed a faithful elliptic M-tree into iterated partial wreaths.

    With adjoin_identity the identity of all of X is appended after the
    elements of chi, unless some element already acts as it.
    """
    tree = chi.tree
    bad = check_locally_injective(tree, labels)
    if bad is not None:
        raise LabelingError("Labels are not injective on the sons of %s"
                            % (bad,), witness=bad)
    if not chi.is_faithful:
        raise TreeError("Action is not faithful")
    alphabets = []
    for i in range(1, tree.height + 1):
        seen = []
        for v in tree.level(i):
            if labels[v] not in seen:
                seen.append(labels[v])
        alphabets.append(tuple(seen))
    psi = ray_encoding(tree, labels)
    maps = [SequentialMap(alphabets, ((psi[v], psi[chi.act(v, m)])
                                      for v in tree.vertices))
            for m in range(chi.size)]
    for m in range(chi.size):
        for n in range(chi.size):
            if maps[m].compose(maps[n]) != maps[int(chi.table[m, n])]:
                raise MorphismError("Psi is not a homomorphism at %s, %s"
                                    % (m, n), witness=(m, n))
    if len(set(maps)) != len(maps):
        raise MorphismError("Psi is not injective")
    identity = SequentialMap.identity(alphabets)
    if identity in maps:
        unit = maps.index(identity)
    elif adjoin_identity:
        unit = len(maps)
        maps.append(identity)
    else:
        unit = None
    return GenericEmbedding(chi, labels, alphabets, psi, maps, unit)


def wreath_length_table(maps, table=None):
    """Return D(phi, psi) = largest j with equal restrictions to 1..j."""
    n = len(maps)
    levels = maps[0].levels if maps else 0
    values = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        values[i, i] = levels
        for j in range(i + 1, n):
            depth = 0
            while depth < levels and maps[i].level_agrees(maps[j],
                                                          depth + 1):
                depth += 1
            values[i, j] = values[j, i] = depth
    return LengthTable(list(range(n)), values, table)


def leaf_action(tree, leaves, images):
    """Extend a map on numbered leaves to an elliptic contraction."""
    theta = {tree.root: tree.root}
    for leaf, target in zip(leaves, images):
        source = tree.ray(leaf)
        moved = tree.ray(leaves[target])
        for v, w in zip(source.path, moved.path):
            if theta.setdefault(v, w) != w:
                raise TreeError("Leaf map does not extend at %s" % (v,),
                                witness=v)
    return theta
