"""
Unit tests for the command-line front end
"""

import io
import json
import unittest
from contextlib import redirect_stderr, redirect_stdout

from src.cli import build_parser, expected_line_size, run
from src.finite_ring import ring_by_selector


def invoke(*argv):
    """Run the CLI and capture exit code, standard output and standard error"""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestParser(unittest.TestCase):
    """Test cases for argument handling"""

    def test_defaults(self):
        """Test global flags and the match default format"""
        args = build_parser().parse_args(['match', '--table', '8'])
        self.assertEqual(args.workers, 1)
        self.assertEqual(args.format, 'json')

    def test_bad_input(self):
        """Test exit code 2 for unknown commands and invalid values"""
        self.assertEqual(invoke('frobnicate')[0], 2)
        self.assertEqual(invoke('match', '--table', '5')[0], 2)
        self.assertEqual(invoke('--workers', '0', 'cube')[0], 2)
        code, out, err = invoke('line', 'points', '--ring', 'gf2x9')
        self.assertEqual(code, 2)
        self.assertEqual(out, '')
        self.assertIn('gf2x9', err)
        self.assertEqual(invoke('fano', '--pencil', '0')[0], 2)
        self.assertEqual(invoke('mermin', '--square', '7')[0], 2)
        self.assertEqual(invoke('pauli', 'table')[0], 2)

    def test_expected_line_size(self):
        """Test 3^n and q+1"""
        self.assertEqual(expected_line_size(ring_by_selector('gf2x3')), 27)
        self.assertEqual(expected_line_size(ring_by_selector('gf8')), 9)


class TestCommands(unittest.TestCase):
    """Test cases for the individual commands"""

    def test_ring_info(self):
        """Test ring output and checks"""
        code, out, _ = invoke('ring', 'info', '--ring', 'gf2x3')
        self.assertEqual(code, 0)
        self.assertIn('composite zero-divisors: y, c, m', out)
        code, out, _ = invoke('ring', 'info', '--ring', 'gf2x2', '--format', 'json')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['payload']['units'], ['1'])

    def test_line_points(self):
        """Test the points of the nine-point line"""
        code, out, _ = invoke('line', 'points', '--ring', 'gf2x2', '--format', 'json')
        self.assertEqual(code, 0)
        payload = json.loads(out)['payload']
        self.assertEqual(payload['count'], 9)
        self.assertEqual(payload['points'][0], '(0,1)')

    def test_line_graph_dot(self):
        """Test DOT export of the distant graph"""
        code, out, _ = invoke('line', 'graph', '--ring', 'gf2x2', '--format', 'dot')
        self.assertEqual(code, 0)
        self.assertEqual(out.count(' -- '), 18)

    def test_pauli(self):
        """Test tables and bases"""
        code, out, _ = invoke('pauli', 'table', '--set', 'A')
        self.assertEqual(code, 0)
        self.assertIn('known erratum', out)
        code, out, _ = invoke('pauli', 'mubs', '--format', 'json')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['payload']['pairs_checked'], 10)

    def test_mermin(self):
        """Test the signs of the first square"""
        code, out, _ = invoke('mermin', '--square', '1', '--format', 'json')
        self.assertEqual(code, 0)
        payload = json.loads(out)['payload']
        self.assertEqual(payload['col_phases'], ['+', '+', '-'])
        self.assertEqual(payload['row_phases'], ['+', '+', '+'])

    def test_fano(self):
        """Test a pencil in A"""
        code, out, _ = invoke('fano', '--pencil', '3')
        self.assertEqual(code, 0)
        self.assertEqual(out.count('entangled'), 2)

    def test_cube_and_coupling(self):
        """Test the cube export and the coupling report"""
        code, out, _ = invoke('cube', '--format', 'dot')
        self.assertEqual(code, 0)
        self.assertEqual(out.count(' -- '), 12)
        code, out, _ = invoke('coupling', '--format', 'json')
        self.assertEqual(code, 0)
        pairs = [p['pair'] for p in json.loads(out)['payload']['pairs']]
        self.assertEqual(pairs, [[1, 2], [6, 12], [9, 14]])

    def test_match(self):
        """Test the rectangular table"""
        code, out, _ = invoke('match', '--table', '9')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['payload']['mismatch_count'], 14)

    def test_match_text(self):
        """Test the printed layout with flag marks"""
        code, out, _ = invoke('match', '--table', '8', '--format', 'text')
        self.assertEqual(code, 0)
        self.assertEqual(out.count('!'), 4)

    def test_shells(self):
        """Test the shell census and the coupling failure"""
        code, out, _ = invoke('shells', '--format', 'json')
        self.assertEqual(code, 0)
        payload = json.loads(out)['payload']
        self.assertEqual(payload['census_gf2x3']['outer'], 12)
        self.assertTrue(payload['quad_shell']['failure_detected'])


class TestVerifyAll(unittest.TestCase):
    """Test case for the full verification run"""

    def test_verify_all(self):
        """Test that every check passes"""
        code, out, _ = invoke('verify-all')
        self.assertEqual(code, 0, out)
        self.assertNotIn('❌', out)


if __name__ == '__main__':
    unittest.main()
