"""
Semitree Zeiger Embedding Test File.

U-sets, alphabets, labels and the embedding of Rh_Y(M^I) into an
iterated wreath product, verified on every fixture.
"""
from semitree.exceptions import LabelingError
from semitree.length import HLength
from semitree.monoid import adjoin_identity, compute_green
from semitree.rees import Rees
from semitree.rhodes import LChain
from semitree.tests import load_fixture
from semitree.wreath import PartialMap, wreath_length_table
from semitree.zeiger import DOWN, Symbol, USets, embedding_generators, \
    local_permutation_groups, permutation_blocks, son_label, \
    verify_embedding, zeiger_embed
import numpy as np
import unittest

FIXTURES = ('trivial.json', 'flipflop.json', 'c2.json', 'c3.json',
            'band.json', 't2.json', 'ella.json')


class SymbolTests(unittest.TestCase):
    """
    Semitree Symbol Test Class.

    Display and order of alphabet letters.
    """

    def test_display(self):
        """Test the short display of every kind of letter."""
        self.assertEqual(str(DOWN), 'v')
        self.assertEqual(str(Symbol('A', 2, a=0)), 'R2:1')
        self.assertEqual(str(Symbol('A*', 2, a=1)), 'R2:(2,*)')
        self.assertEqual(str(Symbol('G*', 3, g=1)), 'R3:(2,*)')
        self.assertEqual(str(Symbol('GQ', 3, g=0, b=4)), 'R3:(1,L4)')

    def test_order(self):
        """Test letters sort by kind, then tag, then coordinates."""
        letters = [Symbol('G*', 1, g=1), DOWN, Symbol('G*', 1, g=0),
                   Symbol('A', 0, a=0)]
        self.assertEqual(sorted(letters),
                         [Symbol('A', 0, a=0), Symbol('G*', 1, g=0),
                          Symbol('G*', 1, g=1), DOWN])


class LabelTests(unittest.TestCase):
    """
    Semitree Labeling Test Class.

    Generators, U-sets and the labels of the H tree.
    """

    def test_generators(self):
        """Test the identity is added only when it is not a product."""
        self.assertEqual(embedding_generators(load_fixture('flipflop.json')),
                         [0, 1, 2])
        self.assertEqual(embedding_generators(load_fixture('c3.json')), [1])
        self.assertEqual(embedding_generators(load_fixture('c3.json'),
                                              [0, 2]), [0, 2])

    def test_u_sets(self):
        """Test every U-set is a union of R-classes."""
        for name in FIXTURES:
            base = adjoin_identity(load_fixture(name))
            green = compute_green(base)
            usets = USets(Rees(base, green), HLength(base, green))
            self.assertIsNone(usets.check_r_closed(), name)

    def test_no_case(self):
        """Test a son two levels longer than its father has no label."""
        base = adjoin_identity(load_fixture('flipflop.json'))
        green = compute_green(base)
        with self.assertRaises(LabelingError):
            son_label(Rees(base, green), HLength(base, green), 0,
                      LChain((3,)), LChain((1, 0, 3)))

    def test_label_kinds(self):
        """Test sons of even vertices get A letters, of odd ones G letters."""
        for name in ('flipflop.json', 'c3.json', 'band.json'):
            emb = zeiger_embed(load_fixture(name))
            for level in range(1, emb.depth + 1):
                kinds = set(x.kind for x in
                            emb.labels.symbols_at(emb.tree, level))
                if level % 2 == 1:
                    self.assertTrue(kinds <= {'down', 'A', 'A*'}, name)
                else:
                    self.assertTrue(kinds <= {'down', 'G*', 'GQ'}, name)

    def test_r_class_letters(self):
        """Test distinct R-classes of one J-class get disjoint A letters."""
        emb = zeiger_embed(load_fixture('band.json'))
        green = emb.green
        split = 0
        for k in range(emb.usets.top + 1):
            members = emb.usets(0, k) | emb.usets(1, k)
            letters = {}
            for x in emb.declared[2 * k]:
                if x.kind in ('A', 'A*'):
                    letters.setdefault(x.tag, set()).add(x)
            self.assertEqual(set(letters),
                             set(int(green.R[m]) for m in members))
            for r in letters:
                for s in letters:
                    if r != s:
                        self.assertFalse(letters[r] & letters[s])
            for j in set(int(green.J[m]) for m in members):
                tags = set(int(green.R[m]) for m in members
                           if green.J[m] == j)
                split += len(tags) > 1
        self.assertGreater(split, 0)

    def test_flipflop_tree(self):
        """Test the shape of the flip-flop tree."""
        emb = zeiger_embed(load_fixture('flipflop.json'))
        self.assertEqual(emb.rh.size, 6)
        self.assertEqual(emb.depth, 6)
        self.assertEqual(len(emb.alphabets), 6)
        self.assertEqual(len(emb.tree.level(6)), 6)
        self.assertTrue(any(len(emb.tree.sons(v)) == 3
                            for v in emb.tree.level(3)))


class EmbeddingTests(unittest.TestCase):
    """
    Semitree Zeiger Embedding Test Class.

    Builds the embedding of every fixture and runs the verification
    suite.
    """

    def test_trivial(self):
        """Test the trivial monoid has four levels and no permutations."""
        emb = zeiger_embed(load_fixture('trivial.json'))
        self.assertEqual(emb.rh.size, 2)
        self.assertEqual(emb.depth, 4)
        self.assertEqual(local_permutation_groups(emb), {})

    def test_aperiodic(self):
        """Test the flip-flop carries no permutations."""
        emb = zeiger_embed(load_fixture('flipflop.json'))
        self.assertEqual(local_permutation_groups(emb), {})

    def test_cyclic(self):
        """Test C3 acts by a 3-cycle on the deepest level."""
        emb = zeiger_embed(load_fixture('c3.json'))
        self.assertEqual(emb.rh.size, 4)
        self.assertEqual(emb.depth, 4)
        self.assertEqual([len(x) for x in emb.alphabets], [1, 3, 1, 4])
        self.assertEqual(set(x.kind for x in emb.alphabets[3]),
                         {'down', 'G*'})
        groups = local_permutation_groups(emb)
        self.assertEqual(sorted(groups), [4])
        self.assertEqual(len(groups[4]), 2)
        for xi in groups[4]:
            shifts = permutation_blocks(emb, xi)
            self.assertEqual(len(shifts), 1)
            self.assertIn(list(shifts.values())[0], (1, 2))

    def test_shared_shift(self):
        """Test the G* and GQ letters of one R-class move by one shift."""
        emb = zeiger_embed(load_fixture('c3.json'))
        xi = local_permutation_groups(emb)[4][0]
        (r, g0), = permutation_blocks(emb, xi).items()
        view = emb.rees.view(emb.green.R_classes[r][0])
        e = view.g_mul(view.g_inv(0), 0)
        star = dict((Symbol('G*', r, g=g),
                     Symbol('G*', r, g=view.g_mul(g, g0)))
                    for g in range(view.group_order))
        same, split = dict(star), dict(star)
        for g in range(view.group_order):
            x = Symbol('GQ', r, g=g, b=0)
            same[x] = Symbol('GQ', r, g=view.g_mul(g, g0), b=0)
            split[x] = Symbol('GQ', r, g=view.g_mul(g, e), b=0)
        self.assertEqual(permutation_blocks(emb, PartialMap(same)), {r: g0})
        self.assertIsNone(permutation_blocks(emb, PartialMap(split)))
        for name in ('c3.json', 't2.json'):
            emb = zeiger_embed(load_fixture(name))
            for perms in local_permutation_groups(emb).values():
                for xi in perms:
                    shifts = permutation_blocks(emb, xi)
                    self.assertIsNotNone(shifts, name)
                    tags = set(x.tag for x, _ in xi.items()
                               if x.kind in ('G*', 'GQ'))
                    self.assertEqual(set(shifts), tags, name)

    def test_identity_map(self):
        """Test the identity chain fixes every point it is defined on."""
        emb = zeiger_embed(load_fixture('band.json'))
        phi = emb.maps[emb.rh.identity]
        self.assertTrue(all(p == q for p, q in phi.mapping.items()))

    def test_alphabets(self):
        """Test the labels only use declared letters."""
        for name in FIXTURES:
            emb = zeiger_embed(load_fixture(name))
            self.assertEqual(emb.alphabets, emb.declared, name)

    def test_recover(self):
        """Test the wreath length of the image is H_Y."""
        for name in ('flipflop.json', 'c3.json', 't2.json'):
            emb = zeiger_embed(load_fixture(name))
            D = wreath_length_table(emb.maps, emb.rh.table)
            self.assertTrue(np.array_equal(D.values, emb.H.values), name)

    def test_verify(self):
        """Test every check passes on every fixture."""
        for name in FIXTURES:
            report = verify_embedding(zeiger_embed(load_fixture(name)))
            self.assertTrue(report.passed,
                            '%s: %s' % (name, report.failures()))
            self.assertIn('Zeiger', report.results)
            self.assertIn('recover', report.results)

    def test_skip_recover(self):
        """Test the recover check can be skipped."""
        report = verify_embedding(zeiger_embed(load_fixture('c2.json')),
                                  skip_recover=True)
        self.assertNotIn('recover', report.results)
        self.assertTrue(report.passed)


if __name__ == '__main__':
    unittest.main()
