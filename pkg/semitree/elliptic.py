"""Rooted trees, elliptic contractions and elliptic M-trees.

A tree vertex is any sortable hashable value.  Uniformly branching trees
use tuples (x_i, ..., x_1) with the root the empty tuple; trees built by
the Chiswell construction use pairs (k, m) with m the least element of
its class.  Monoids act on the right, v(mm') = (vm)m'.
"""
import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .exceptions import LengthAxiomError, TreeError
from .length import LengthTable, check_length_axioms


class RootedTree(object):
    """A finite rooted tree given by its father map."""

    def __init__(self, parent, labels=None):
        """Build children lists and depths from a vertex -> father dict.

        The root is the unique vertex whose father is None.
        """
        roots = [v for v, p in parent.items() if p is None]
        if len(roots) != 1:
            raise TreeError("Expected one root, found %s" % len(roots),
                            witness=roots)
        self.root = roots[0]
        self.parent = dict(parent)
        graph = nx.DiGraph()
        graph.add_nodes_from(self.parent)
        for v, p in self.parent.items():
            if p is not None:
                if p not in self.parent:
                    raise TreeError("Father %s of %s is not a vertex"
                                    % (p, v), witness=v)
                graph.add_edge(p, v)
        if not nx.is_arborescence(graph):
            raise TreeError("Father map does not describe a rooted tree")
        self.graph = graph
        self.depth = nx.single_source_shortest_path_length(graph, self.root)
        self.children = dict((v, sorted(graph.successors(v)))
                             for v in self.parent)
        self.height = max(self.depth.values())
        self.labels = labels or {}
        self._levels = [[] for _ in range(self.height + 1)]
        for v in sorted(self.parent, key=lambda u: (self.depth[u], u)):
            self._levels[self.depth[v]].append(v)
        logging.debug("Tree with %s vertices, depth %s"
                      % (len(self.parent), self.height))

    @property
    def vertices(self):
        """Return every vertex, level by level."""
        return [v for level in self._levels for v in level]

    @property
    def size(self):
        """Return the number of vertices."""
        return len(self.parent)

    def level(self, i):
        """Return the vertices at depth i in sorted order."""
        return list(self._levels[i])

    def father(self, v):
        """Return the father of v, None at the root."""
        return self.parent[v]

    def sons(self, v):
        """Return Sons(v)."""
        return self.children[v]

    def leaves(self):
        """Return the vertices without sons."""
        return [v for v in self.vertices if not self.children[v]]

    @property
    def is_uniform(self):
        """Return True if every leaf sits at the same depth."""
        return all(self.depth[v] == self.height for v in self.leaves())

    def ancestor(self, v, i):
        """Return the depth-i vertex on the path from the root to v."""
        if i > self.depth[v]:
            raise TreeError("Vertex %s has depth %s < %s"
                            % (v, self.depth[v], i), witness=v)
        for _ in range(self.depth[v] - i):
            v = self.parent[v]
        return v

    def descendants(self, v):
        """Return every vertex below v."""
        return nx.descendants(self.graph, v)

    def ray(self, v):
        """Return the ray from the root to v."""
        path = [v]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return Ray(tuple(reversed(path)))

    def distance(self, u, v):
        """Return the geodesic distance d_T(u, v)."""
        meet = ray_wedge(self.ray(u), self.ray(v))
        return self.depth[u] + self.depth[v] - 2 * meet.length


@dataclass(frozen=True)
class Ray:
    """A geodesic from the root, stored root first."""

    path: tuple

    @property
    def length(self):
        """Return |alpha|, the depth of the endpoint."""
        return len(self.path) - 1

    @property
    def endpoint(self):
        """Return the deepest vertex of the ray."""
        return self.path[-1]

    def term(self, i):
        """Return alpha_i."""
        return self.path[i]


def ray_wedge(alpha, beta):
    """Return the longest common initial segment of two rays."""
    k = 0
    top = min(len(alpha.path), len(beta.path))
    while k < top and alpha.path[k] == beta.path[k]:
        k += 1
    return Ray(alpha.path[:k])


def build_uniform_tree(branching):
    """Return T(n_l, ..., n_1) with vertices (x_i, ..., x_1), x_j < n_j."""
    branching = [int(n) for n in branching]
    for n in branching:
        if n < 1:
            raise TreeError("Branching numbers must be positive, got %s"
                            % branching, witness=n)
    sizes = list(reversed(branching))
    parent = {(): None}
    frontier = [()]
    for n in sizes:
        grown = []
        for v in frontier:
            for x in range(n):
                child = (x,) + v
                parent[child] = v
                grown.append(child)
        frontier = grown
    labels = dict((v, ','.join(str(x + 1) for x in v)) for v in parent)
    return RootedTree(parent, labels)


def is_elliptic_contraction(tree, mapping):
    """Check the root is fixed and fathers go to fathers.

    Returns (True, None) or (False, witness vertex).
    """
    if mapping.get(tree.root) != tree.root:
        return False, tree.root
    for w in tree.vertices:
        v = tree.father(w)
        if v is None:
            continue
        image = mapping.get(w)
        if image is None or tree.father(image) != mapping.get(v):
            return False, w
        assert tree.depth[image] == tree.depth[w]
    return True, None


class EllipticMTree(object):
    """A uniform tree with a base ray and a right action by contractions.

    elements are the acting monoid elements in id order, table their
    product and action[m] the vertex map of m.
    """

    def __init__(self, tree, base_ray, action, table, identity=0,
                 names=None):
        """Store the action; call validate() to check it."""
        self.tree = tree
        self.base_ray = base_ray
        self.action = action
        self.table = np.asarray(table)
        self.identity = identity
        self.size = self.table.shape[0]
        self.names = names or [str(m) for m in range(self.size)]

    def act(self, v, m):
        """Return vm."""
        return self.action[m][v]

    def base_image(self, m):
        """Return the ray alpha m."""
        return self.tree.ray(self.act(self.base_ray.endpoint, m))

    def validate(self):
        """Raise TreeError unless (E1) to (E3) and the action laws hold."""
        tree = self.tree
        if not tree.is_uniform:
            raise TreeError("Tree is not uniform")
        if self.base_ray.length != tree.height or \
                self.base_ray.term(0) != tree.root:
            raise TreeError("Base ray is not a maximal ray")
        for m in range(self.size):
            ok, witness = is_elliptic_contraction(tree, self.action[m])
            if not ok:
                raise TreeError("Element %s is not an elliptic contraction "
                                "at %s" % (self.names[m], witness),
                                witness=(m, witness))
        for v in tree.vertices:
            if self.act(v, self.identity) != v:
                raise TreeError("Identity moves %s" % (v,), witness=v)
        for m in range(self.size):
            for n in range(self.size):
                mn = int(self.table[m, n])
                for v in tree.vertices:
                    if self.act(self.act(v, m), n) != self.act(v, mn):
                        raise TreeError("Action is not a morphism at %s, %s"
                                        % (m, n), witness=(m, n, v))
        reached = set(self.act(alpha, m) for alpha in self.base_ray.path
                      for m in range(self.size))
        if reached != set(tree.vertices):
            missing = sorted(set(tree.vertices) - reached)[0]
            raise TreeError("Action is not transitive from the base ray: "
                            "%s is missed" % (missing,), witness=missing)
        return True

    @property
    def is_faithful(self):
        """Return True if distinct elements act differently."""
        seen = set()
        for m in range(self.size):
            key = tuple(self.action[m][v] for v in self.tree.vertices)
            if key in seen:
                return False
            seen.add(key)
        return True

    @property
    def is_strongly_faithful(self):
        """Return True if alpha m = alpha m' forces m = m'."""
        leaf = self.base_ray.endpoint
        return len(set(self.act(leaf, m) for m in range(self.size))) == \
            self.size


def check_action_well_defined(D):
    """Return None if [k,m] = [k,n] gives [k,mm'] = [k,nm']."""
    values = D.values
    for m in range(D.size):
        col = D.table[:, m]
        bad = values[np.ix_(col, col)] < values
        if bad.any():
            a, b = (int(i) for i in np.argwhere(bad)[0])
            return (a, b, m)
    return None


def chiswell_build(D, identity=0, names=None):
    """Build the elliptic tree whose vertices are the classes [k, m]."""
    report = check_length_axioms(D)
    if not report.passed:
        raise LengthAxiomError("Length table fails %s"
                               % sorted(report.failures()),
                               report=report)
    if D.table is None:
        raise TreeError("Chiswell construction needs the product table")
    values = D.values
    n = D.size
    depth = D.max_value
    canon = np.empty((depth + 1, n), dtype=np.int64)
    for k in range(depth + 1):
        # least member of each class, rows being class masks
        canon[k] = np.argmax(values >= k, axis=1)
    parent = {(0, int(canon[0, identity])): None}
    for k in range(1, depth + 1):
        for c in sorted(set(int(c) for c in canon[k])):
            parent[(k, c)] = (k - 1, int(canon[k - 1, c]))
    names = names or [str(m) for m in range(n)]
    labels = dict(((k, c), '[%s, %s]' % (k, names[c])) for k, c in parent)
    tree = RootedTree(parent, labels)
    assert nx.is_tree(tree.graph.to_undirected())
    action = []
    for m in range(n):
        moved = canon[:, D.table[:, m]]
        action.append(dict(((k, c), (k, int(moved[k, c])))
                           for k, c in parent))
    base = Ray(tuple((k, int(canon[k, identity]))
                     for k in range(depth + 1)))
    logging.debug("Chiswell tree: %s vertices, depth %s, %s leaves"
                  % (tree.size, depth, len(tree.level(depth))))
    return EllipticMTree(tree, base, action, D.table, identity, names)


def d_chi(chi):
    """Return D_chi(m, m') = |alpha m ^ alpha m'|."""
    rays = [chi.base_image(m) for m in range(chi.size)]
    values = np.empty((chi.size, chi.size), dtype=np.int64)
    for m in range(chi.size):
        for n in range(m, chi.size):
            values[m, n] = values[n, m] = ray_wedge(rays[m],
                                                    rays[n]).length
    return LengthTable(list(range(chi.size)), values, chi.table)


def iso_check(chi, other):
    """Compare two elliptic trees of one monoid by their length tables.

    Returns (True, vertex map) when D_chi = D_other, else (False, None).
    """
    if chi.size != other.size:
        return False, None
    if not np.array_equal(d_chi(chi).values, d_chi(other).values):
        return False, None
    mapping = {}
    for i, alpha in enumerate(chi.base_ray.path):
        beta = other.base_ray.term(i)
        for m in range(chi.size):
            v, w = chi.act(alpha, m), other.act(beta, m)
            if mapping.setdefault(v, w) != w:
                logging.debug("Vertex map is not well defined at %s" % (v,))
                return False, None
    if len(set(mapping.values())) != len(mapping) or \
            len(mapping) != other.tree.size:
        raise TreeError("Isomorphism is not a bijection")
    if mapping[chi.tree.root] != other.tree.root:
        raise TreeError("Isomorphism moves the root")
    for v in chi.tree.vertices:
        for m in range(chi.size):
            if mapping[chi.act(v, m)] != other.act(mapping[v], m):
                raise TreeError("Isomorphism does not commute with %s"
                                % chi.names[m], witness=(v, m))
    return True, mapping


def minimal_representation(hlength, n, sigma):
    """Return the shortest prefix of sigma in the class [n, sigma]."""
    if n > hlength.top:
        raise TreeError("Level %s exceeds the tree depth %s"
                        % (n, hlength.top), witness=n)
    for i in range(sigma.length + 1):
        rep = sigma.prefix(i)
        if hlength.value(rep, sigma) >= n:
            return rep
    return sigma


def is_minimal(hlength, n, sigma):
    """Decide whether sigma is its own minimal representative at level n."""
    if sigma.length == 0:
        return True
    below = sigma.term(sigma.length - 1)
    height = int(hlength.h[below])
    k = n // 2
    if n % 2 == 0:
        return height < k
    return height < k or (height == k and below not in hlength.w)


def to_dot(tree, labels=False, depth_cap=None):
    """Return the DOT text of a tree, one rank per level."""
    top = tree.height if depth_cap is None else min(depth_cap, tree.height)
    names = {}
    lines = ['digraph tree {', '\tgraph []']
    for k in range(top + 1):
        lines.append('\t{')
        lines.append('\t\trank = same;')
        for idx, v in enumerate(tree.level(k)):
            names[v] = 'v_%d_%d' % (k, idx)
            if labels:
                text = tree.labels.get(v, str(v)).replace('"', '\\"')
                lines.append('\t\t"%s" [label="%s"];' % (names[v], text))
            else:
                lines.append('\t\t"%s";' % names[v])
        lines.append('\t}')
    for k in range(1, top + 1):
        for v in tree.level(k):
            lines.append('\t"%s" -> "%s";'
                         % (names[tree.father(v)], names[v]))
    lines.append('}')
    return '\n'.join(lines) + '\n'
