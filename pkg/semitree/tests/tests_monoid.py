"""
Semitree Monoid Test File.

Cayley tables, transformation closures and Green's relations.
"""
from semitree.exceptions import IdentityError, MonoidError, \
    NotAssociativeError
from semitree.monoid import FiniteMonoid, adjoin_identity, \
    check_l_r_lift, check_homomorphism, check_identity, \
    check_right_compatible, check_stability_consequence, compute_green, \
    is_stable, j_height, w_set
from semitree.tests import load_fixture
import unittest


class MonoidTests(unittest.TestCase):
    """
    Semitree Monoid Test Class.

    Builds monoids from tables and from generating transformations and
    checks that malformed input is refused.
    """

    def test_flipflop_closure(self):
        """Test the flip-flop closes to the identity and two constants."""
        monoid = load_fixture('flipflop.json')
        self.assertEqual(monoid.size, 3)
        self.assertEqual(monoid.identity, 0)
        self.assertEqual(monoid.names, ['12', '11', '22'])
        self.assertEqual(monoid.generators, [('r1', 1), ('r2', 2)])
        self.assertEqual(monoid.mul(1, 2), 2)
        self.assertEqual(monoid.mul(2, 1), 1)

    def test_ella_closure(self):
        """Test the four point example closes to five transformations."""
        monoid = load_fixture('ella.json')
        self.assertEqual(monoid.size, 5)
        self.assertEqual(sorted(monoid.names),
                         ['1234', '2244', '3434', '3444', '4444'])

    def test_composition_order(self):
        """Test x(fg) = (xf)g for transformations."""
        monoid = FiniteMonoid.from_generators(3, [('a', [1, 2, 2]),
                                                  ('b', [0, 0, 1])])
        a = monoid.index_of('233')
        b = monoid.index_of('112')
        ab = monoid.mul(a, b)
        self.assertEqual(monoid.transformations[ab], (0, 1, 1))

    def test_table_not_associative(self):
        """Test a non associative table is refused with a witness."""
        table = [[0, 1, 2], [1, 2, 2], [2, 1, 2]]
        with self.assertRaises(NotAssociativeError) as ctx:
            FiniteMonoid.from_table(table)
        self.assertEqual(len(ctx.exception.witness), 3)

    def test_table_identity(self):
        """Test a table whose identity row is wrong."""
        with self.assertRaises(IdentityError):
            FiniteMonoid.from_table([[0, 0], [1, 1]])

    def test_table_out_of_range(self):
        """Test a table entry outside the element range."""
        with self.assertRaises(MonoidError):
            FiniteMonoid.from_table([[0, 2], [1, 0]])

    def test_table_generation(self):
        """Test generators that miss an element are refused."""
        with self.assertRaises(MonoidError) as ctx:
            FiniteMonoid.from_table([[0, 1], [1, 0]],
                                    generators=[('e', 0)])
        self.assertEqual(ctx.exception.witness, 1)

    def test_bad_images(self):
        """Test an image outside the domain names the generator."""
        with self.assertRaises(MonoidError) as ctx:
            FiniteMonoid.from_generators(2, [('good', [0, 0]),
                                             ('broken', [0, 5])])
        self.assertEqual(ctx.exception.witness, 'broken')
        self.assertIn('broken', str(ctx.exception))

    def test_adjoin_identity(self):
        """Test M^I gets a fresh identity at the end."""
        base = adjoin_identity(load_fixture('flipflop.json'))
        self.assertEqual(base.size, 4)
        self.assertEqual(base.identity, 3)
        self.assertEqual(base.names[-1], 'I')
        self.assertEqual(list(base.table[3]), [0, 1, 2, 3])
        self.assertEqual(list(base.table[:, 3]), [0, 1, 2, 3])

    def test_powers(self):
        """Test powers and aperiodicity of single elements."""
        c3 = load_fixture('c3.json')
        self.assertEqual(c3.power(1, 3), 0)
        self.assertFalse(c3.is_aperiodic_element(1))
        flipflop = load_fixture('flipflop.json')
        self.assertTrue(flipflop.is_aperiodic_element(1))
        self.assertTrue(flipflop.is_idempotent(2))


class GreenTests(unittest.TestCase):
    """
    Semitree Green Relations Test Class.

    Checks the classes, heights and the stability lemmas on small monoids.
    """

    def helper_green(self, name):
        """Return M^I and its Green data for a fixture."""
        base = adjoin_identity(load_fixture(name))
        return base, compute_green(base)

    def test_flipflop_classes(self):
        """Test the J-classes of the flip-flop with identity."""
        base, green = self.helper_green('flipflop.json')
        self.assertEqual(green.J_classes, [[0], [1, 2], [3]])
        self.assertEqual(green.R[1], green.R[2])
        self.assertNotEqual(green.L[1], green.L[2])
        self.assertEqual(green.top_class(), green.J[3])
        self.assertEqual(len(green.H_classes), 4)

    def test_j_height(self):
        """Test h_J counts the J-classes above an element."""
        base, green = self.helper_green('flipflop.json')
        self.assertEqual(list(j_height(base, green)), [1, 2, 2, 0])
        base, green = self.helper_green('c3.json')
        self.assertEqual(list(j_height(base, green)), [1, 1, 1, 0])

    def test_j_poset(self):
        """Test the cover relation of the flip-flop J-order is a path."""
        _, green = self.helper_green('flipflop.json')
        top = green.J[3]
        middle = green.J[0]
        bottom = green.J[1]
        self.assertEqual(sorted(green.j_poset.edges),
                         sorted([(top, middle), (middle, bottom)]))

    def test_stable(self):
        """Test finite monoids are stable."""
        for name in ('flipflop.json', 'band.json', 't2.json', 'ella.json'):
            base, green = self.helper_green(name)
            self.assertEqual(is_stable(base, green), (True, None))

    def test_w_set(self):
        """Test W(M^I) on the flip-flop and on the rectangular band."""
        base, green = self.helper_green('flipflop.json')
        self.assertEqual(w_set(base, green), {0, 1, 2, 3})
        base, green = self.helper_green('band.json')
        self.assertEqual(w_set(base, green), {0, 5})

    def test_lemmas(self):
        """Test the compatibility and stability lemmas hold."""
        for name in ('flipflop.json', 'band.json', 't2.json', 'ella.json'):
            _, green = self.helper_green(name)
            self.assertIsNone(check_right_compatible(green))
            self.assertIsNone(check_stability_consequence(green))
            self.assertIsNone(check_l_r_lift(green))

    def test_identity(self):
        """Test the identity x^(p+q) = x^p on C3 with identity."""
        base, _ = self.helper_green('c3.json')
        self.assertIsNone(check_identity(base, 1, 3))
        self.assertEqual(check_identity(base, 1, 1), 1)

    def test_homomorphism(self):
        """Test the automorphism of C3 and a map that is not one."""
        c3 = load_fixture('c3.json')
        self.assertIsNone(check_homomorphism(c3, c3, [0, 2, 1]))
        self.assertIsNotNone(check_homomorphism(c3, c3, [0, 1, 1]))


if __name__ == '__main__':
    unittest.main()
