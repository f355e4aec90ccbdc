"""
Unit tests for finite commutative rings
"""

import unittest

import numpy as np

from src.finite_ring import (Ideal, RingElement, direct_product_ring, poly_mod, poly_mul, poly_name,
                             quotient_ring_gf2, ring_by_selector, same_addition_table, verify_ring_table)
from src.fixture_store import FixtureStore


def names(ring, elements):
    return sorted(ring.name(e) for e in elements)


class TestDirectProducts(unittest.TestCase):
    """Test cases for GF(2)^n"""

    def setUp(self):
        """Set up the two- and three-factor rings"""
        self.perp = direct_product_ring(2)
        self.triangle = direct_product_ring(3)

    def test_element_names(self):
        """Test the customary element orders"""
        self.assertEqual(self.perp.element_names, ['0', '1', 'x', 'x+1'])
        self.assertEqual(self.triangle.element_names, ['0', '1', 'b', 'y', 'r', 'c', 'g', 'm'])
        self.assertEqual(direct_product_ring(4).element_names[12], 'x12')

    def test_quad_identity_and_zero_names(self):
        """Test that GF(2)^4 prints its zero as '0' and its identity as '1'"""
        quad = direct_product_ring(4)
        self.assertEqual(quad.name(quad.one), '1')
        self.assertEqual(quad.name(quad.zero), '0')
        self.assertEqual(quad.element('1').index, 5)
        self.assertEqual(quad.element_names[:6], ['0', 'x1', 'x2', 'x3', 'x4', '1'])
        with self.assertRaises(ValueError):
            quad.element('x5')

    def test_axioms(self):
        """Test that every product ring satisfies the ring axioms"""
        for n in range(1, 5):
            ring = direct_product_ring(n)
            self.assertTrue(ring.check_axioms(), ring.ring_id)
            self.assertTrue(ring.units_form_group())
            self.assertEqual(ring.characteristic(), 2)

    def test_units_and_zero_divisors(self):
        """Test that 1 is the only unit"""
        self.assertEqual(names(self.perp, self.perp.units()), ['1'])
        self.assertEqual(names(self.perp, self.perp.zero_divisors()), ['0', 'x', 'x+1'])
        self.assertEqual(len(self.triangle.nontrivial_zero_divisors()), 6)
        self.assertFalse(self.triangle.is_field())
        self.assertTrue(direct_product_ring(1).is_field())

    def test_arithmetic(self):
        """Test named arithmetic"""
        x, y = self.perp.element('x'), self.perp.element('x+1')
        self.assertEqual(self.perp.name(self.perp.mul(x, y)), '0')
        self.assertEqual(self.perp.name(self.perp.add(x, y)), '1')
        self.assertEqual(self.perp.sub(x, y), self.perp.add(x, y))
        self.assertEqual(self.triangle.name(self.triangle.mul('y', 'c')), 'g')

    def test_maximal_ideals_triangle(self):
        """Test the three maximal ideals and their generators"""
        ideals = self.triangle.maximal_ideals()
        self.assertEqual([names(self.triangle, m.elements) for m in ideals],
                         [['0', 'g', 'r', 'y'], ['0', 'b', 'c', 'g'], ['0', 'b', 'm', 'r']])
        self.assertEqual([self.triangle.name(m.generator) for m in ideals], ['y', 'c', 'm'])
        self.assertTrue(all(m.is_maximal for m in ideals))

    def test_radical_and_locality(self):
        """Test the trivial radical of a non-local ring"""
        self.assertEqual(self.triangle.jacobson_radical().elements, frozenset({0}))
        self.assertFalse(self.triangle.is_local())
        self.assertFalse(self.perp.is_local())

    def test_composite_zero_divisors(self):
        """Test zero-divisors generating maximal ideals"""
        self.assertEqual(names(self.triangle, self.triangle.composite_zero_divisors()), ['c', 'm', 'y'])

    def test_quotients_by_maximal_ideals(self):
        """Test that R/M is the two-element field"""
        for ring in (self.triangle, direct_product_ring(4)):
            for ideal in ring.maximal_ideals():
                quotient = ring.quotient_by_ideal(ideal)
                self.assertEqual(quotient.order, 2)
                self.assertTrue(quotient.is_field())
                self.assertTrue(quotient.check_axioms())

    def test_ideals(self):
        """Test ideal recognition and generation"""
        self.assertTrue(self.perp.is_ideal({0, 2}))
        self.assertFalse(self.perp.is_ideal({0, 1}))
        ideal = self.triangle.ideal_generated(['b', 'r'])
        self.assertEqual(names(self.triangle, ideal.elements), ['0', 'b', 'm', 'r'])
        self.assertEqual(self.triangle.name(ideal.generator), 'm')
        self.assertEqual(len(self.triangle.principal_ideal('g')), 2)
        with self.assertRaises(ValueError):
            self.triangle.quotient_by_ideal(Ideal(self.triangle.ring_id, frozenset({0, 1})))

    def test_element_errors(self):
        """Test lookup of unknown and foreign elements"""
        with self.assertRaises(ValueError):
            self.perp.element('z')
        with self.assertRaises(ValueError):
            self.perp.element(9)
        with self.assertRaises(ValueError):
            self.perp.mul(RingElement('gf2x3', 1), 1)

    def test_factor_range(self):
        """Test the supported number of factors"""
        for n in (0, 7):
            with self.assertRaises(ValueError):
                direct_product_ring(n)

    def test_tables_read_only(self):
        """Test immutability of the tables"""
        with self.assertRaises(ValueError):
            self.perp.add_table[0, 0] = 1


class TestQuotientRings(unittest.TestCase):
    """Test cases for GF(2)[x]/<f>"""

    def test_polynomials(self):
        """Test carry-less arithmetic"""
        self.assertEqual(poly_name(0b1011), 'x^3+x+1')
        self.assertEqual(poly_mul(0b11, 0b11), 0b101)
        self.assertEqual(poly_mod(0b100, 0b111), 0b11)

    def test_fields(self):
        """Test GF(4) and GF(8)"""
        gf4, gf8 = ring_by_selector('gf4'), ring_by_selector('gf8')
        self.assertEqual(gf4.element_names, ['0', '1', 'x', 'x+1'])
        self.assertTrue(gf4.is_field())
        self.assertTrue(gf8.is_field())
        self.assertEqual(gf8.order, 8)
        self.assertTrue(gf8.is_local())

    def test_local_ring(self):
        """Test GF(2)[x]/<x^2>"""
        ring = quotient_ring_gf2(0b100)
        self.assertTrue(ring.check_axioms())
        self.assertFalse(ring.is_field())
        self.assertTrue(ring.is_local())
        self.assertEqual(names(ring, ring.jacobson_radical().elements), ['0', 'x'])

    def test_shared_addition(self):
        """Test that GF(2)^2 and GF(4) share addition but not multiplication"""
        perp, gf4 = direct_product_ring(2), quotient_ring_gf2(0b111)
        self.assertTrue(same_addition_table(perp, gf4))
        self.assertFalse(np.array_equal(perp.mul_table, gf4.mul_table))
        self.assertFalse(same_addition_table(perp, direct_product_ring(3)))

    def test_bad_modulus(self):
        """Test constant moduli"""
        for modulus in (0, 1):
            with self.assertRaises(ValueError):
                quotient_ring_gf2(modulus)

    def test_unknown_selector(self):
        """Test ring selection"""
        with self.assertRaises(ValueError):
            ring_by_selector('gf2x9')


class TestPrintedRingTables(unittest.TestCase):
    """Test cases for the printed ring tables"""

    def setUp(self):
        """Set up the fixture store"""
        self.store = FixtureStore()

    def test_printed_tables_match(self):
        """Test that the printed tables agree with the constructions"""
        for selector, fixture in (('gf2x2', 'table4_rperp'), ('gf4', 'table4_gf4'), ('gf2x3', 'table5')):
            printed = self.store.ring_table(fixture)
            ring = ring_by_selector(selector)
            self.assertEqual(verify_ring_table(ring, printed.names, printed.add, printed.mul), [], fixture)

    def test_detects_difference(self):
        """Test that an altered cell is reported"""
        printed = self.store.ring_table('table4_rperp')
        mul = [row[:] for row in printed.mul]
        mul[2][2] = '0'
        diffs = verify_ring_table(direct_product_ring(2), printed.names, printed.add, mul)
        self.assertEqual(diffs, [{'op': 'x', 'row': 'x', 'col': 'x', 'printed': '0', 'computed': 'x'}])

    def test_wrong_order(self):
        """Test a mismatched element order"""
        with self.assertRaises(ValueError):
            verify_ring_table(direct_product_ring(2), ['0', '1', 'x+1', 'x'], [], [])


if __name__ == '__main__':
    unittest.main()
