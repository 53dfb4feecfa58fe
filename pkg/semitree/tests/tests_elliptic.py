"""
Semitree Elliptic Tree Test File.

Rooted trees, elliptic contractions, the Chiswell construction and DOT
output.
"""
from semitree.elliptic import EllipticMTree, RootedTree, Ray, \
    build_uniform_tree, check_action_well_defined, chiswell_build, d_chi, \
    is_elliptic_contraction, is_minimal, iso_check, minimal_representation, \
    ray_wedge, to_dot
from semitree.exceptions import TreeError
from semitree.length import HLength, f_from_weights, h_table, \
    holonomy_table, unit_weight
from semitree.monoid import adjoin_identity, compute_green
from semitree.rhodes import build_rh
from semitree.tests import ella_tree, load_fixture
import numpy as np
import unittest

FIXTURES = ('trivial.json', 'flipflop.json', 'c2.json', 'c3.json',
            'band.json', 't2.json', 'ella.json')


def build(name):
    """Return M^I, its Green data and Rh(M^I) for a fixture."""
    base = adjoin_identity(load_fixture(name))
    green = compute_green(base)
    return base, green, build_rh(base, green)


class TreeTests(unittest.TestCase):
    """
    Semitree Rooted Tree Test Class.

    Uniformly branching trees, rays and contractions.
    """

    def test_uniform_sizes(self):
        """Test the vertex counts of T(3,2), T(1) and T(2,2)."""
        tree = build_uniform_tree([3, 2])
        self.assertEqual(tree.size, 9)
        self.assertEqual(tree.height, 2)
        self.assertEqual(tree.level(1), [(0,), (1,)])
        self.assertEqual(len(tree.leaves()), 6)
        self.assertTrue(tree.is_uniform)
        self.assertEqual(build_uniform_tree([1]).size, 2)
        self.assertEqual(build_uniform_tree([2, 2]).size, 7)

    def test_bad_branching(self):
        """Test a zero branching number is refused."""
        with self.assertRaises(TreeError):
            build_uniform_tree([2, 0])

    def test_bad_father_maps(self):
        """Test father maps that are not rooted trees."""
        with self.assertRaises(TreeError):
            RootedTree({'a': None, 'b': None})
        with self.assertRaises(TreeError):
            RootedTree({'a': None, 'b': 'c'})

    def test_rays(self):
        """Test wedges and distances of leaves of T(2,2)."""
        tree = build_uniform_tree([2, 2])
        self.assertEqual(ray_wedge(tree.ray((0, 0)), tree.ray((1, 0))),
                         Ray(((), (0,))))
        self.assertEqual(ray_wedge(tree.ray((0, 0)), tree.ray((0, 1))),
                         Ray(((),)))
        self.assertEqual(tree.distance((0, 0), (1, 0)), 2)
        self.assertEqual(tree.distance((0, 0), (0, 1)), 4)
        self.assertEqual(tree.ancestor((1, 0), 1), (0,))
        self.assertEqual(tree.descendants((1,)), {(0, 1), (1, 1)})

    def test_contractions(self):
        """Test the identity, a collapse and a depth violation."""
        tree = build_uniform_tree([2, 2])
        identity = dict((v, v) for v in tree.vertices)
        self.assertEqual(is_elliptic_contraction(tree, identity),
                         (True, None))
        collapse = dict((v, v[:-1] + (0,) if v else v)
                        for v in tree.vertices)
        self.assertEqual(is_elliptic_contraction(tree, collapse),
                         (True, None))
        broken = dict(identity)
        broken[(0, 0)] = (1,)
        self.assertEqual(is_elliptic_contraction(tree, broken),
                         (False, (0, 0)))


class EllipticTests(unittest.TestCase):
    """
    Semitree Elliptic M-Tree Test Class.

    The four point monoid on T(2,2) and Chiswell trees of length tables.
    """

    def test_ella_action(self):
        """Test the four point monoid acts faithfully and transitively."""
        chi = ella_tree()
        self.assertTrue(chi.validate())
        self.assertTrue(chi.is_faithful)
        self.assertFalse(chi.is_strongly_faithful)

    def test_ella_lengths(self):
        """Test D_chi on the four point monoid."""
        chi = ella_tree()
        names = chi.names
        D = d_chi(chi)
        c, d = names.index('3434'), names.index('3444')
        b, one = names.index('2244'), names.index('1234')
        self.assertEqual(D[c, d], 2)
        self.assertEqual(D[one, b], 1)
        self.assertEqual(D[one, c], 0)
        self.assertEqual(D[one, one], 2)

    def test_ella_round_trip(self):
        """Test rebuilding the tree from D_chi gives an isomorphic tree."""
        chi = ella_tree()
        rebuilt = chiswell_build(d_chi(chi), chi.identity, chi.names)
        self.assertEqual(rebuilt.tree.size, chi.tree.size)
        ok, mapping = iso_check(chi, rebuilt)
        self.assertTrue(ok)
        self.assertEqual(mapping[chi.tree.root], rebuilt.tree.root)

    def test_self_iso(self):
        """Test a tree is isomorphic to itself by the identity."""
        chi = ella_tree()
        ok, mapping = iso_check(chi, chi)
        self.assertTrue(ok)
        self.assertTrue(all(v == w for v, w in mapping.items()))

    def test_h_tree(self):
        """Test the H tree of the flip-flop has one leaf per chain."""
        _, _, rh = build('flipflop.json')
        chi = chiswell_build(h_table(rh), rh.identity)
        self.assertEqual(chi.tree.height, 6)
        self.assertEqual(len(chi.tree.level(6)), rh.size)
        self.assertTrue(chi.is_strongly_faithful)
        self.assertTrue(chi.validate())

    def test_round_trips(self):
        """Test d_chi inverts the Chiswell construction on every fixture."""
        for name in FIXTURES:
            _, green, rh = build(name)
            for D in (h_table(rh),
                      holonomy_table(rh, f_from_weights(unit_weight(green)))):
                self.assertIsNone(check_action_well_defined(D), name)
                chi = chiswell_build(D, rh.identity)
                self.assertTrue(np.array_equal(d_chi(chi).values, D.values),
                                name)
                self.assertTrue(chi.is_strongly_faithful, name)

    def test_different_tables(self):
        """Test trees of different length tables are not isomorphic."""
        _, green, rh = build('flipflop.json')
        chi = chiswell_build(h_table(rh), rh.identity)
        other = chiswell_build(
            holonomy_table(rh, f_from_weights(unit_weight(green))),
            rh.identity)
        self.assertEqual(iso_check(chi, other), (False, None))

    def test_broken_base_ray(self):
        """Test a base ray leaving its own path gives no vertex map."""
        chi = ella_tree()
        bent = EllipticMTree(chi.tree, Ray(((), (1,), (0, 0))), chi.action,
                             chi.table, chi.identity, chi.names)
        self.assertTrue(np.array_equal(d_chi(bent).values,
                                       d_chi(chi).values))
        self.assertEqual(iso_check(bent, chi), (False, None))


class MinimalTests(unittest.TestCase):
    """
    Semitree Minimal Representation Test Class.

    Shortest chains representing the vertices of the H tree.
    """

    def test_root(self):
        """Test every chain reduces to (I) at level 0."""
        base, green, rh = build('flipflop.json')
        H = HLength(base, green)
        for sigma in rh.elements:
            rep = minimal_representation(H, 0, sigma)
            self.assertEqual(rep.terms, (base.identity,))

    def test_too_deep(self):
        """Test a level below the leaves is refused."""
        base, green, rh = build('flipflop.json')
        with self.assertRaises(TreeError):
            minimal_representation(HLength(base, green), 7, rh.elements[0])

    def test_criterion(self):
        """Test the minimality criterion against the shortest prefix."""
        for name in ('flipflop.json', 'band.json', 't2.json', 'ella.json'):
            base, green, rh = build(name)
            H = HLength(base, green)
            for sigma in rh.elements:
                for n in range(H.top + 1):
                    rep = minimal_representation(H, n, sigma)
                    self.assertTrue(is_minimal(H, n, rep))
                    self.assertEqual(is_minimal(H, n, sigma), rep == sigma)


class DotTests(unittest.TestCase):
    """
    Semitree DOT Output Test Class.

    Ranked DOT text of small trees.
    """

    def test_uniform(self):
        """Test T(3,2) has nine nodes and eight edges."""
        text = to_dot(build_uniform_tree([3, 2]))
        lines = text.splitlines()
        self.assertEqual(len([x for x in lines if '->' in x]), 8)
        self.assertEqual(len([x for x in lines if x.startswith('\t\t"')]),
                         9)
        self.assertEqual(lines[0], 'digraph tree {')
        self.assertEqual(lines[-1], '}')

    def test_deterministic(self):
        """Test the same tree prints the same text."""
        self.assertEqual(to_dot(build_uniform_tree([3, 2]), labels=True),
                         to_dot(build_uniform_tree([3, 2]), labels=True))

    def test_labels_and_cap(self):
        """Test labels are printed and depth caps drop deeper levels."""
        text = to_dot(build_uniform_tree([3, 2]), labels=True, depth_cap=1)
        self.assertIn('[label="2"]', text)
        self.assertEqual(text.count('->'), 2)
        self.assertEqual(text.count('rank = same'), 2)


if __name__ == '__main__':
    unittest.main()
