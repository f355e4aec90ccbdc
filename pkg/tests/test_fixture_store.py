"""
Unit tests for fixture loading
"""

import os
import shutil
import tempfile
import unittest
from unittest import mock

from src.fixture_store import FIXTURE_ENV_VAR, FixtureError, FixtureStore


class TestBundledFixtures(unittest.TestCase):
    """Test cases for the fixtures shipped with the package"""

    def setUp(self):
        """Set up the default store"""
        self.store = FixtureStore()

    def test_product_table(self):
        """Test the header order of the first product table"""
        table = self.store.product_table(1)
        self.assertEqual(table.row_labels, [0, 1, 2, 3, 6, 14, 9, 12])
        self.assertEqual(table.cells[5][7], '-i2')

    def test_relation_flags(self):
        """Test flagged cell counts of the distant tables"""
        self.assertEqual(self.store.relation_table(6).flagged_cells(), [])
        self.assertEqual(len(self.store.relation_table(8).flagged_cells()), 4)
        self.assertEqual(len(self.store.relation_table(9).flagged_cells()), 14)
        self.assertIn(('(y,1)', '(1,c)'), self.store.relation_table(8).flagged_cells())

    def test_ring_table(self):
        """Test the GF(4) tables"""
        table = self.store.ring_table('table4_gf4')
        self.assertEqual(table.names, ['0', '1', 'x', 'x+1'])
        self.assertEqual(table.add[2][3], '1')

    def test_mermin_and_eigenbases(self):
        """Test the Mermin squares and the eigenbasis keys"""
        grids = self.store.mermin_grids()
        self.assertEqual(len(grids), 4)
        self.assertEqual(grids[0][2], [7, 8, 9])
        bases = self.store.eigenbases()
        self.assertIn((1, 2, 3), bases)
        self.assertTrue(all(len(entries) == 4 for entries in bases.values()))


class TestFixtureOverrides(unittest.TestCase):
    """Test cases for custom fixture directories and malformed files"""

    def setUp(self):
        """Set up a temporary fixture directory"""
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Clean up the temporary directory"""
        shutil.rmtree(self.temp_dir)

    def write(self, name, text):
        with open(os.path.join(self.temp_dir, name), 'w', encoding='utf-8') as f:
            f.write(text)

    def test_environment_override(self):
        """Test that PRG_FIXTURES selects the directory"""
        self.write('mermin.txt', '1 2 3\n4 10 14\n7 8 9\n')
        with mock.patch.dict(os.environ, {FIXTURE_ENV_VAR: self.temp_dir}):
            store = FixtureStore()
        self.assertEqual(store.fixture_dir, self.temp_dir)
        self.assertEqual(store.mermin_grids(), [[[1, 2, 3], [4, 10, 14], [7, 8, 9]]])

    def test_missing_file(self):
        """Test that a missing file raises FixtureError"""
        with self.assertRaises(FixtureError):
            FixtureStore(self.temp_dir).relation_table(6)

    def test_empty_file(self):
        """Test that a file holding only comments is rejected"""
        self.write('table6.txt', '# nothing here\n')
        with self.assertRaises(FixtureError):
            FixtureStore(self.temp_dir).relation_table(6)

    def test_malformed_relation(self):
        """Test bad cells and ragged rows"""
        self.write('table6.txt', '* a b\na - x\nb + -\n')
        with self.assertRaises(FixtureError):
            FixtureStore(self.temp_dir).relation_table(6)
        self.write('table7.txt', '* a b\na -\nb + -\n')
        with self.assertRaises(FixtureError):
            FixtureStore(self.temp_dir).relation_table(7)

    def test_malformed_ring_table(self):
        """Test a ring fixture with a single block"""
        self.write('ring.txt', '+ 0 1\n0 0 1\n1 1 0\n')
        with self.assertRaises(FixtureError):
            FixtureStore(self.temp_dir).ring_table('ring')

    def test_malformed_mermin(self):
        """Test a square that is not 3x3"""
        self.write('mermin.txt', '1 2\n3 4\n')
        with self.assertRaises(FixtureError):
            FixtureStore(self.temp_dir).mermin_grids()

    def test_fixture_error_is_value_error(self):
        """Test that callers catching ValueError also see fixture problems"""
        self.assertTrue(issubclass(FixtureError, ValueError))


if __name__ == '__main__':
    unittest.main()
