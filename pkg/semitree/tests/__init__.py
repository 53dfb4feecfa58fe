"""Shared fixture helpers for the semitree tests."""
import os

from semitree.cli import load_monoid_file
from semitree.elliptic import EllipticMTree, Ray, build_uniform_tree
from semitree.wreath import leaf_action

FIXTURES = os.path.join(os.path.dirname(__file__), 'fixtures')


def fixture_path(name):
    """Return the path of a fixture document."""
    return os.path.join(FIXTURES, name)


def load_fixture(name):
    """Load a fixture document and return its monoid."""
    return load_monoid_file(fixture_path(name)).monoid


def ella_tree():
    """Return the four point monoid acting on the leaves of T(2,2).

    Leaf j is the vertex (j mod 2, j div 2).
    """
    monoid = load_fixture('ella.json')
    tree = build_uniform_tree([2, 2])
    leaves = [(j % 2, j // 2) for j in range(4)]
    action = [leaf_action(tree, leaves, images)
              for images in monoid.transformations]
    base = Ray(((), (0,), (0, 0)))
    return EllipticMTree(tree, base, action, monoid.table, monoid.identity,
                         monoid.names)
