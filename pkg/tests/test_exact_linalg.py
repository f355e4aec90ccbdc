"""
Unit tests for exact Gaussian arithmetic, matrices and eigenbases
"""

import unittest

from sympy.polys.domains import QQ, QQ_I, ZZ_I

from src.exact_linalg import (I_UNIT, ONE, ZERO, ExactMatrix, SignSignature, StateVector, format_gaussian,
                              gaussian, gaussian_norm, inner, is_unbiased_pair, joint_eigenbasis, matmul,
                              normalize_unit, parse_gaussian, schmidt_rank, tensor)


def _sigma():
    return {
        'I': ExactMatrix.from_entries(2, 2, [1, 0, 0, 1]),
        'X': ExactMatrix.from_entries(2, 2, [0, 1, 1, 0]),
        'Y': ExactMatrix.from_entries(2, 2, [0, -I_UNIT, I_UNIT, 0]),
        'Z': ExactMatrix.from_entries(2, 2, [1, 0, 0, -1]),
    }


class TestGaussianIntegers(unittest.TestCase):
    """Test cases for Gaussian integer helpers"""

    def test_parse(self):
        """Test parsing of printed Gaussian integers"""
        self.assertEqual(parse_gaussian('3'), ZZ_I(3, 0))
        self.assertEqual(parse_gaussian('-i'), ZZ_I(0, -1))
        self.assertEqual(parse_gaussian('2i'), ZZ_I(0, 2))
        self.assertEqual(parse_gaussian('1+i'), ZZ_I(1, 1))
        self.assertEqual(parse_gaussian('1-2i'), ZZ_I(1, -2))
        self.assertEqual(parse_gaussian('−i'), ZZ_I(0, -1))

    def test_parse_rejects_garbage(self):
        """Test that malformed text raises ValueError"""
        for text in ('', 'abc', 'i2', '1+'):
            with self.assertRaises(ValueError):
                parse_gaussian(text)

    def test_coercion(self):
        """Test ints, text and ZZ_I elements"""
        self.assertEqual(gaussian(-2), ZZ_I(-2, 0))
        self.assertEqual(gaussian('i'), I_UNIT)
        self.assertIs(gaussian(I_UNIT), I_UNIT)
        for bad in (True, 1.5, None):
            with self.assertRaises(ValueError):
                gaussian(bad)

    def test_format(self):
        """Test printing"""
        self.assertEqual(format_gaussian(I_UNIT), 'i')
        self.assertEqual(format_gaussian(-I_UNIT), '-i')
        self.assertEqual(format_gaussian(ZZ_I(1, -1)), '1-i')
        self.assertEqual(format_gaussian(ZZ_I(0, -2)), '-2i')
        self.assertEqual(format_gaussian(ZZ_I(-4, 0)), '-4')
        self.assertEqual(format_gaussian(ZERO), '0')

    def test_arithmetic(self):
        """Test ring operations, norms and unit normalisation"""
        self.assertEqual(I_UNIT * I_UNIT, -ONE)
        self.assertEqual(ZZ_I(1, 1) * ZZ_I(1, -1), ZZ_I(2, 0))
        self.assertEqual(gaussian_norm(ZZ_I(3, 4)), 25)
        self.assertEqual(normalize_unit(ZZ_I(0, -3)), I_UNIT)
        self.assertEqual(normalize_unit(ZZ_I(-1, -1)) * ZZ_I(-1, -1), ZZ_I(1, 1))
        with self.assertRaises(ValueError):
            normalize_unit(ZERO)


class TestExactMatrix(unittest.TestCase):
    """Test cases for exact matrices"""

    def setUp(self):
        """Set up Pauli matrices"""
        self.sigma = _sigma()

    def test_pauli_relations(self):
        """Test XY = iZ and involutions"""
        x, y, z, i = (self.sigma[k] for k in 'XYZI')
        self.assertEqual(matmul(x, y), z.scale(I_UNIT))
        self.assertEqual(matmul(y, x), z.scale(-I_UNIT))
        for m in (x, y, z):
            self.assertEqual(matmul(m, m), i)
            self.assertTrue(m.is_hermitian())
        self.assertFalse(x.scale(I_UNIT).is_hermitian())

    def test_rational_entries(self):
        """Test Gaussian-rational entries and addition"""
        half = QQ_I(QQ(1, 2), 0)
        m = ExactMatrix.from_entries(1, 2, [half, QQ_I(QQ(2, 4), 0)])
        self.assertEqual(m.entry(0, 1), half)
        self.assertEqual(m + m, ExactMatrix.from_entries(1, 2, [1, 1]))
        self.assertEqual(repr(m), 'ExactMatrix[1/2 1/2]')
        self.assertTrue((m + -m).is_zero())

    def test_tensor_block_order(self):
        """Test that the left factor indexes the coarse blocks"""
        zi = tensor(self.sigma['Z'], self.sigma['I'])
        self.assertEqual([format_gaussian(zi.entry(k, k)) for k in range(4)], ['1', '1', '-1', '-1'])
        xy = tensor(self.sigma['X'], self.sigma['Y'])
        self.assertEqual(xy.entry(0, 3), QQ_I(0, -1))
        self.assertEqual(xy.entry(3, 0), QQ_I(0, 1))

    def test_dimension_errors(self):
        """Test shape validation"""
        with self.assertRaises(ValueError):
            matmul(self.sigma['X'], ExactMatrix.identity(4))
        with self.assertRaises(ValueError):
            ExactMatrix.from_entries(2, 2, [1, 2, 3])
        with self.assertRaises(ValueError):
            self.sigma['X'] + ExactMatrix.identity(4)
        with self.assertRaises(ValueError):
            ExactMatrix.from_entries(1, 1, ['x'])

    def test_rank(self):
        """Test rank of projectors"""
        identity = ExactMatrix.identity(2)
        self.assertEqual(identity.rank(), 2)
        self.assertEqual((identity + self.sigma['Z']).rank(), 1)
        self.assertEqual((identity + -identity).rank(), 0)

    def test_trace_and_apply(self):
        """Test trace and matrix-vector product"""
        self.assertEqual(self.sigma['Z'].trace(), QQ_I.zero)
        self.assertEqual(ExactMatrix.identity(4).trace(), QQ_I(4, 0))
        v = StateVector.of(1, 2)
        self.assertEqual(self.sigma['X'].apply(v), StateVector.of(2, 1))
        self.assertEqual(self.sigma['Y'].apply(StateVector.of(1, 0)), StateVector.of(0, 'i'))

    def test_apply_requires_integral_result(self):
        """Test that a fractional image is rejected"""
        half = ExactMatrix.from_entries(1, 1, [QQ_I(QQ(1, 2), 0)])
        with self.assertRaises(ValueError):
            half.apply(StateVector.of(1))
        self.assertEqual(half.apply(StateVector.of(2)), StateVector.of(1))


class TestStateVector(unittest.TestCase):
    """Test cases for state vectors and signatures"""

    def test_parse_and_str(self):
        """Test the printed vector format"""
        v = StateVector.parse('(1,0,0,-i)')
        self.assertEqual(v.entries[3], -I_UNIT)
        self.assertEqual(str(v), '(1,0,0,-i)')
        with self.assertRaises(ValueError):
            StateVector.parse('1,0')

    def test_primitive(self):
        """Test content removal and unit rotation"""
        self.assertEqual(StateVector.of(0, -1, 1, 0).primitive(), StateVector.of(0, 1, -1, 0))
        self.assertEqual(StateVector.of(2, '2i', 0, 0).primitive(), StateVector.of(1, 'i', 0, 0))
        self.assertEqual(StateVector.of('1+i', 2).primitive(), StateVector.of(1, '1-i'))
        self.assertTrue(StateVector.of(1, 'i', 0, 0).same_ray(StateVector.of('i', -1, 0, 0)))
        with self.assertRaises(ValueError):
            StateVector.of(0, 0).primitive()

    def test_signature(self):
        """Test sign signatures"""
        self.assertEqual(str(SignSignature.parse('+-+')), '+-+')
        self.assertEqual(SignSignature.parse('−−+').signs, (-1, -1, 1))
        with self.assertRaises(ValueError):
            SignSignature.parse('+0')

    def test_schmidt_rank(self):
        """Test product versus entangled vectors"""
        self.assertEqual(schmidt_rank(StateVector.of(1, 0, 0, 1)), 2)
        self.assertEqual(schmidt_rank(StateVector.of(1, 1, 1, 1)), 1)
        self.assertEqual(schmidt_rank(StateVector.of(1, 0, 0, 'i')), 2)
        with self.assertRaises(ValueError):
            schmidt_rank(StateVector.of(1, 0, 0))
        with self.assertRaises(ValueError):
            schmidt_rank(StateVector.of(0, 0, 0, 0))

    def test_inner(self):
        """Test the conjugate-linear inner product"""
        self.assertEqual(inner(StateVector.of('i', 0), StateVector.of('i', 0)), ONE)
        self.assertEqual(inner(StateVector.of(1, 'i'), StateVector.of(1, 'i')), ZZ_I(2, 0))
        self.assertEqual(inner(StateVector.of(1, 0), StateVector.of(0, 1)), ZERO)
        with self.assertRaises(ValueError):
            inner(StateVector.of(1), StateVector.of(1, 0))


class TestEigenbases(unittest.TestCase):
    """Test cases for joint eigenbases and unbiasedness"""

    def setUp(self):
        """Set up two-qubit operators"""
        s = _sigma()
        self.zi = tensor(s['Z'], s['I'])
        self.iz = tensor(s['I'], s['Z'])
        self.xi = tensor(s['X'], s['I'])
        self.ix = tensor(s['I'], s['X'])
        self.zz = tensor(s['Z'], s['Z'])
        self.xx = tensor(s['X'], s['X'])

    def test_computational_basis(self):
        """Test the eigenbasis of ZI and IZ"""
        basis = joint_eigenbasis(self.zi, self.iz)
        self.assertEqual([str(v) for v, _ in basis], ['(1,0,0,0)', '(0,1,0,0)', '(0,0,1,0)', '(0,0,0,1)'])
        self.assertEqual([str(s) for _, s in basis], ['+++', '+--', '-+-', '--+'])

    def test_bell_basis_sign_order(self):
        """Test that ZZ and XX give the Bell vectors in (+,+), (+,-), (-,+), (-,-) order"""
        basis = joint_eigenbasis(self.zz, self.xx)
        expected = [StateVector.of(1, 0, 0, 1), StateVector.of(1, 0, 0, -1),
                    StateVector.of(0, 1, 1, 0), StateVector.of(0, -1, 1, 0)]
        for (vector, _), target in zip(basis, expected):
            self.assertTrue(vector.same_ray(target))
        self.assertEqual([str(v) for v, _ in basis], ['(1,0,0,1)', '(1,0,0,-1)', '(0,1,1,0)', '(0,1,-1,0)'])
        self.assertEqual([str(s)[:2] for _, s in basis], ['++', '+-', '-+', '--'])
        self.assertEqual([str(s) for _, s in basis], ['+++', '+--', '-+-', '--+'])

    def test_rejects_bad_pairs(self):
        """Test non-commuting and dependent operators"""
        with self.assertRaises(ValueError):
            joint_eigenbasis(self.zi, self.xi)
        with self.assertRaises(ValueError):
            joint_eigenbasis(self.zi, self.zi)

    def test_unbiased(self):
        """Test the exact unbiasedness identity"""
        z_basis = [v for v, _ in joint_eigenbasis(self.zi, self.iz)]
        x_basis = [v for v, _ in joint_eigenbasis(self.xi, self.ix)]
        self.assertTrue(is_unbiased_pair(z_basis, x_basis))
        self.assertFalse(is_unbiased_pair(z_basis, z_basis))


if __name__ == '__main__':
    unittest.main()
