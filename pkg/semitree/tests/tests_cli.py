"""
Semitree Command Line Test File.

Runs the subcommands on the fixture documents and checks exit codes and
report text.
"""
import argparse
import io
import json
from contextlib import redirect_stderr, redirect_stdout

from semitree.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, branching_type, \
    main, non_negative_type, parse_monoid
from semitree.tests import fixture_path, load_fixture
import unittest


class CommandLineTests(unittest.TestCase):
    """
    Semitree Command Line Test Class.

    Each test runs main() with captured output.
    """

    def helper_run(self, *argv):
        """Run the command line, returning (exit code, stdout, stderr)."""
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_analyze_flipflop(self):
        """Test the flip-flop summary."""
        code, out, _ = self.helper_run('analyze',
                                       fixture_path('flipflop.json'))
        self.assertEqual(code, EXIT_OK)
        self.assertIn('|M^I|: 4', out)
        self.assertIn('|Rh(M^I)|: 6', out)
        self.assertIn('max h_J: 2', out)
        self.assertIn('result: PASS', out)

    def test_analyze_trivial(self):
        """Test the trivial monoid has two chains."""
        code, out, _ = self.helper_run('analyze', fixture_path('trivial.json'),
                                       '--phi3')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('|Rh(M^I)|: 2', out)
        self.assertIn('|Phi_3|:', out)

    def test_bad_images(self):
        """Test an image outside the domain names the generator."""
        code, out, err = self.helper_run('analyze',
                                         fixture_path('bad_images.json'))
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn('broken', err)
        self.assertEqual(out, '')

    def test_malformed(self):
        """Test truncated JSON is an input error with a position."""
        code, _, err = self.helper_run('embed-verify',
                                       fixture_path('malformed.json'))
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn('line', err)

    def test_missing_file(self):
        """Test a missing document is an input error."""
        code, _, _ = self.helper_run('analyze', fixture_path('nothing.json'))
        self.assertEqual(code, EXIT_INPUT)

    def test_failed_identity(self):
        """Test a declared identity that fails names the witness."""
        code, out, _ = self.helper_run('analyze',
                                       fixture_path('c3_band_law.json'))
        self.assertEqual(code, EXIT_FAILED)
        self.assertIn('x^2 = x^1 on M: FAIL x', out)
        self.assertIn('result: FAIL', out)

    def test_dump_table(self):
        """Test the dumped table reads back as the same monoid."""
        code, out, _ = self.helper_run('analyze', fixture_path('ella.json'),
                                       '--dump-table')
        self.assertEqual(code, EXIT_OK)
        monoid = parse_monoid(json.loads(out)).monoid
        original = load_fixture('ella.json')
        self.assertEqual(monoid.table.tolist(), original.table.tolist())
        self.assertEqual(monoid.names, original.names)
        self.assertEqual(monoid.generators, original.generators)

    def test_embed_verify(self):
        """Test the flip-flop passes every check."""
        code, out, _ = self.helper_run('embed-verify',
                                       fixture_path('flipflop.json'))
        self.assertEqual(code, EXIT_OK)
        self.assertIn('Zeiger: PASS', out)
        self.assertIn('recover: PASS', out)
        self.assertIn('round trip: PASS', out)
        self.assertIn('result: PASS', out)

    def test_embed_verify_cyclic(self):
        """Test C3 lists its permutation level."""
        code, out, _ = self.helper_run('embed-verify',
                                       fixture_path('c3.json'),
                                       '--skip-recover')
        self.assertEqual(code, EXIT_OK)
        self.assertIn("permutation levels: {'4': 2}", out)
        self.assertNotIn('recover', out)

    def test_embed_verify_json(self):
        """Test the machine-readable report."""
        code, out, _ = self.helper_run('--json', 'embed-verify',
                                       fixture_path('band.json'),
                                       '--weights', 'null')
        self.assertEqual(code, EXIT_OK)
        doc = json.loads(out)
        self.assertTrue(doc['passed'])
        self.assertTrue(doc['embedding']['checks']['Zeiger']['passed'])
        self.assertEqual(doc['holonomy']['values']['weights'], 'null')
        self.assertEqual(doc['dedekind']['values']['seed'], 20170401)

    def test_export_uniform(self):
        """Test T(3,2) prints nine nodes and eight edges, twice alike."""
        code, out, _ = self.helper_run('export-dot', '--uniform', '3,2')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.count('->'), 8)
        self.assertEqual(len([x for x in out.splitlines()
                              if x.startswith('\t\t"')]), 9)
        _, again, _ = self.helper_run('export-dot', '--uniform', '3,2')
        self.assertEqual(out, again)

    def test_export_star(self):
        """Test the null Holonomy tree of the trivial monoid is a star."""
        code, out, _ = self.helper_run('export-dot',
                                       fixture_path('trivial.json'),
                                       '--tree', 'null', '--labels')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.count('->'), 2)
        self.assertEqual(out.count('[label='), 3)

    def test_export_needs_input(self):
        """Test export-dot without a file or a branching."""
        code, _, err = self.helper_run('export-dot')
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn('--uniform', err)


class ArgumentTests(unittest.TestCase):
    """
    Semitree Argument Type Test Class.

    Validation of the custom argparse types.
    """

    def test_branching(self):
        """Test branching lists."""
        self.assertEqual(branching_type('3,2'), [3, 2])
        with self.assertRaises(argparse.ArgumentTypeError):
            branching_type('3,x')
        with self.assertRaises(argparse.ArgumentTypeError):
            branching_type('3,0')

    def test_non_negative(self):
        """Test non-negative integers."""
        self.assertEqual(non_negative_type('0'), 0)
        with self.assertRaises(argparse.ArgumentTypeError):
            non_negative_type('-1')


if __name__ == '__main__':
    unittest.main()
