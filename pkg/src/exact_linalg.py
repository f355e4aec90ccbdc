"""
Exact Linear Algebra
Gaussian-integer state vectors and Gaussian-rational matrices on top of
sympy's DomainMatrix, with eigenbasis extraction for two-qubit operators
"""

import logging
import re
from dataclasses import dataclass
from functools import reduce
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy.polys.domains import QQ, QQ_I, ZZ, ZZ_I
from sympy.polys.domains.gaussiandomains import GaussianInteger, GaussianRational
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import ExactQuotientFailed

logger = logging.getLogger(__name__)

_GAUSSIAN_PATTERN = re.compile(r'^(?:(?P<re>[+-]?\d+)(?=$|[+-]))?(?:(?P<im>[+-]?\d*)i)?$')

ZERO = ZZ_I.zero
ONE = ZZ_I.one
I_UNIT = ZZ_I(0, 1)
UNITS = (ONE, I_UNIT, -ONE, -I_UNIT)


def gaussian(value: Union[GaussianInteger, int, str]) -> GaussianInteger:
    """Coerce an int, a ZZ_I element or printed text to a Gaussian integer"""
    if isinstance(value, str):
        return parse_gaussian(value)
    if isinstance(value, GaussianInteger):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return ZZ_I(int(value), 0)
    raise ValueError(f"Not a Gaussian integer: {value!r}")


def parse_gaussian(text: str) -> GaussianInteger:
    """Parse '3', '-i', '2i', '1+i', '1-2i'"""
    cleaned = text.replace(' ', '').replace('−', '-')
    match = _GAUSSIAN_PATTERN.match(cleaned)
    if not cleaned or not match or (match.group('re') is None and match.group('im') is None):
        raise ValueError(f"Cannot parse Gaussian integer: {text!r}")
    real = int(match.group('re')) if match.group('re') is not None else 0
    imag_text = match.group('im')
    if imag_text is None:
        imag = 0
    elif imag_text in ('', '+'):
        imag = 1
    elif imag_text == '-':
        imag = -1
    else:
        imag = int(imag_text)
    return ZZ_I(real, imag)


def format_gaussian(z: Union[GaussianInteger, GaussianRational]) -> str:
    """Printed form: '1-i', 'i', '-2i', '-4', '1/2'"""
    if not z.y:
        return str(z.x)
    imag = {'1': 'i', '-1': '-i'}.get(str(z.y), f"{z.y}i")
    if not z.x:
        return imag
    sign = '' if imag.startswith('-') else '+'
    return f"{z.x}{sign}{imag}"


def gaussian_norm(z: GaussianInteger) -> int:
    """Squared modulus |z|^2"""
    return int(z.x) ** 2 + int(z.y) ** 2


def conjugate(z):
    return z.parent()(z.x, -z.y)


def normalize_unit(z: GaussianInteger) -> GaussianInteger:
    """The unit u for which u*z lies in the quadrant re > 0, im >= 0"""
    for unit in UNITS:
        w = unit * z
        if w.x > 0 and w.y >= 0:
            return unit
    raise ValueError("Zero has no normalizing unit")


def _to_field(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, GaussianInteger):
        return QQ_I(int(value.x), int(value.y))
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return QQ_I(int(value), 0)
    raise ValueError(f"Not a matrix entry: {value!r}")


def _to_ring(value: GaussianRational) -> GaussianInteger:
    if QQ.denom(value.x) != 1 or QQ.denom(value.y) != 1:
        raise ValueError(f"{format_gaussian(value)} is not a Gaussian integer")
    return ZZ_I(int(QQ.numer(value.x)), int(QQ.numer(value.y)))


class ExactMatrix:
    """Dense matrix over the Gaussian rationals QQ_I"""

    def __init__(self, rep: DomainMatrix):
        if rep.domain != QQ_I:
            rep = rep.convert_to(QQ_I)
        if 0 in rep.shape:
            raise ValueError(f"Malformed matrix shape: {rep.shape}")
        self.rep = rep.to_dense()

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Sequence) -> 'ExactMatrix':
        """Build from a row-major list of ints, ZZ_I or QQ_I elements"""
        if len(entries) != rows * cols:
            raise ValueError(f"Expected {rows * cols} entries, got {len(entries)}")
        values = [_to_field(e) for e in entries]
        return cls(DomainMatrix([values[r * cols:(r + 1) * cols] for r in range(rows)], (rows, cols), QQ_I))

    @classmethod
    def identity(cls, n: int) -> 'ExactMatrix':
        return cls(DomainMatrix.eye(n, QQ_I))

    @property
    def rows(self) -> int:
        return self.rep.shape[0]

    @property
    def cols(self) -> int:
        return self.rep.shape[1]

    @property
    def entries(self) -> List[GaussianRational]:
        return self.rep.to_list_flat()

    def entry(self, i: int, j: int) -> GaussianRational:
        return self.rep.to_list()[i][j]

    def column(self, j: int) -> List[GaussianRational]:
        return [row[j] for row in self.rep.to_list()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rep.shape == other.rep.shape and self.rep.to_list() == other.rep.to_list()

    def __hash__(self):
        return hash((self.rep.shape, tuple(self.entries)))

    def __add__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        if self.rep.shape != other.rep.shape:
            raise ValueError(f"Shape mismatch: {self.rep.shape} vs {other.rep.shape}")
        return ExactMatrix(self.rep + other.rep)

    def __neg__(self) -> 'ExactMatrix':
        return ExactMatrix(-self.rep)

    def scale(self, factor: Union[GaussianInteger, int]) -> 'ExactMatrix':
        return ExactMatrix(self.rep * _to_field(factor))

    def conjugate_transpose(self) -> 'ExactMatrix':
        return ExactMatrix(self.rep.transpose().applyfunc(conjugate))

    def is_hermitian(self) -> bool:
        return self == self.conjugate_transpose()

    def trace(self) -> GaussianRational:
        rows = self.rep.to_list()
        return reduce(lambda acc, k: acc + rows[k][k], range(min(self.rep.shape)), QQ_I.zero)

    def is_zero(self) -> bool:
        return self.rep.is_zero_matrix

    def rank(self) -> int:
        return self.rep.rank()

    def apply(self, v: 'StateVector') -> 'StateVector':
        """Matrix-vector product; the result must be integral"""
        if len(v.entries) != self.cols:
            raise ValueError(f"Vector length {len(v.entries)} does not match {self.cols} columns")
        column = DomainMatrix([[_to_field(e)] for e in v.entries], (self.cols, 1), QQ_I)
        image = (self.rep * column).to_list_flat()
        try:
            return StateVector(tuple(_to_ring(e) for e in image))
        except ValueError as exc:
            raise ValueError("Matrix-vector product is not integral") from exc

    def __repr__(self) -> str:
        body = '; '.join(' '.join(format_gaussian(e) for e in row) for row in self.rep.to_list())
        return f"ExactMatrix[{body}]"


@dataclass(frozen=True)
class StateVector:
    """Unnormalized vector with Gaussian-integer entries"""
    entries: Tuple[GaussianInteger, ...]

    @classmethod
    def of(cls, *values) -> 'StateVector':
        return cls(tuple(gaussian(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> 'StateVector':
        """Parse '(1,0,0,-i)'"""
        inner_text = text.strip()
        if not (inner_text.startswith('(') and inner_text.endswith(')')):
            raise ValueError(f"Cannot parse state vector: {text!r}")
        return cls.of(*inner_text[1:-1].split(','))

    def norm_squared(self) -> int:
        return sum(gaussian_norm(e) for e in self.entries)

    def is_zero(self) -> bool:
        return all(e == ZERO for e in self.entries)

    def scale(self, factor: Union[GaussianInteger, int]) -> 'StateVector':
        f = gaussian(factor)
        return StateVector(tuple(e * f for e in self.entries))

    def primitive(self) -> 'StateVector':
        """Divide out the content and rotate the first nonzero entry into re > 0, im >= 0"""
        if self.is_zero():
            raise ValueError("Zero vector has no primitive form")
        content = reduce(ZZ_I.gcd, self.entries, ZERO)
        try:
            reduced = [ZZ_I.exquo(e, content) for e in self.entries]
        except ExactQuotientFailed as exc:
            raise ValueError(f"Content {format_gaussian(content)} does not divide {self}") from exc
        lead = next(e for e in reduced if e != ZERO)
        unit = normalize_unit(lead)
        return StateVector(tuple(e * unit for e in reduced))

    def same_ray(self, other: 'StateVector') -> bool:
        """Equal up to a nonzero Gaussian scalar"""
        return self.primitive() == other.primitive()

    def __str__(self) -> str:
        return '(' + ','.join(format_gaussian(e) for e in self.entries) + ')'


@dataclass(frozen=True)
class SignSignature:
    """Eigenvalue signs of a commuting triple"""
    signs: Tuple[int, ...]

    @classmethod
    def parse(cls, text: str) -> 'SignSignature':
        text = text.replace('−', '-')
        if not text or any(ch not in '+-' for ch in text):
            raise ValueError(f"Cannot parse sign signature: {text!r}")
        return cls(tuple(1 if ch == '+' else -1 for ch in text))

    def __str__(self) -> str:
        return ''.join('+' if s > 0 else '-' for s in self.signs)


def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Exact matrix product"""
    if a.cols != b.rows:
        raise ValueError(f"Dimension mismatch: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    return ExactMatrix(a.rep * b.rep)


def tensor(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product; the left factor indexes the coarse blocks"""
    left, right = a.rep.to_list(), b.rep.to_list()
    rows = [[x * y for x in left_row for y in right_row] for left_row in left for right_row in right]
    return ExactMatrix(DomainMatrix(rows, (a.rows * b.rows, a.cols * b.cols), QQ_I))


def inner(u: StateVector, v: StateVector) -> GaussianInteger:
    """Sum of conj(u_k) * v_k"""
    if len(u.entries) != len(v.entries):
        raise ValueError(f"Length mismatch: {len(u.entries)} vs {len(v.entries)}")
    return reduce(lambda acc, pair: acc + conjugate(pair[0]) * pair[1], zip(u.entries, v.entries), ZERO)


def eigenvalue_sign(m: ExactMatrix, v: StateVector) -> int:
    """+1 or -1 if v is an eigenvector of m with that eigenvalue"""
    image = m.apply(v)
    if image == v:
        return 1
    if image == v.scale(-1):
        return -1
    raise ValueError(f"{v} is not a +-1 eigenvector")


def _integral_ray(column: Sequence[GaussianRational]) -> StateVector:
    den = reduce(ZZ.lcm, (QQ.denom(c) for e in column for c in (e.x, e.y)), ZZ.one)
    return StateVector(tuple(_to_ring(e * QQ_I(int(den), 0)) for e in column)).primitive()


def joint_eigenbasis(a: ExactMatrix, b: ExactMatrix,
                     third: Optional[ExactMatrix] = None) -> List[Tuple[StateVector, SignSignature]]:
    """
    Common eigenvectors of two commuting involutions from the projectors (I + s1 A)(I + s2 B)

    The basis comes back in sign order (s1, s2) = (+,+), (+,-), (-,+), (-,-), so the
    signatures read '++.', '+-.', '-+.', '--.'; for ZZ and XX this is the Bell order
    (1,0,0,1), (1,0,0,-1), (0,1,1,0), (0,1,-1,0). Each vector is the primitive form of
    the first nonzero projector column.
    """
    if matmul(a, b) != matmul(b, a):
        raise ValueError("Operators do not commute")
    third = third if third is not None else matmul(a, b)
    identity = ExactMatrix.identity(a.rows)
    basis = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            projector = matmul(identity + a.scale(s1), identity + b.scale(s2))
            if projector.rank() != 1:
                raise ValueError(f"Operators are not independent: joint eigenspace ({s1:+d},{s2:+d}) "
                                 f"has dimension {projector.rank()}")
            column = next(j for j in range(projector.cols) if any(e != QQ_I.zero for e in projector.column(j)))
            vector = _integral_ray(projector.column(column))
            signature = SignSignature((eigenvalue_sign(a, vector), eigenvalue_sign(b, vector),
                                       eigenvalue_sign(third, vector)))
            basis.append((vector, signature))
    logger.debug("Joint eigenbasis: %s", ', '.join(str(v) for v, _ in basis))
    return basis


def schmidt_rank(v: StateVector) -> int:
    """1 for a product two-qubit state, 2 for an entangled one"""
    if len(v.entries) != 4:
        raise ValueError(f"Schmidt rank needs a 4-vector, got length {len(v.entries)}")
    if v.is_zero():
        raise ValueError("Zero vector has no Schmidt rank")
    e = v.entries
    return 1 if e[0] * e[3] - e[1] * e[2] == ZERO else 2


def _check_orthogonal(basis: Sequence[StateVector]):
    for i, u in enumerate(basis):
        if u.is_zero():
            raise ValueError("Basis contains the zero vector")
        for v in basis[i + 1:]:
            if inner(u, v) != ZERO:
                raise ValueError(f"Basis is not orthogonal: {u} and {v}")


def is_unbiased_pair(first: Sequence[StateVector], second: Sequence[StateVector]) -> bool:
    """4 |<u,v>|^2 == |u|^2 |v|^2 for every cross pair"""
    _check_orthogonal(first)
    _check_orthogonal(second)
    q = len(first[0].entries)
    return all(q * gaussian_norm(inner(u, v)) == u.norm_squared() * v.norm_squared()
               for u in first for v in second)
