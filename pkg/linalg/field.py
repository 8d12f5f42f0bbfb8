"""Exact field arithmetic and dense matrix kernels.

Matrices are two-dimensional numpy arrays. Over a prime field F_p the
entries are stored as ``int64`` residues (``object`` for very large p so
that products cannot overflow), over the rationals as ``object`` arrays
holding :py:class:`fractions.Fraction` (or plain ``int``) values. No
floating point is ever involved.

Every other package gets its field from the input descriptor and then
only talks to the :py:class:`Field` interface.
"""
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import itertools
import logging
from fractions import Fraction

import numpy as np
from sympy import QQ, GF, Poly, Rational, Symbol
from sympy.polys.matrices import DomainMatrix

from .exceptions import DimensionMismatch, FieldError

logger = logging.getLogger(__name__)

Mat = np.ndarray

Scalar = Union[int, Fraction]

_X = Symbol('x')


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def parse_scalar(value: Union[int, str, Fraction]) -> Fraction:
    """Read a scalar from the input format (an int or an "a/b" string).

    Raises
    ------
    FieldError
        If the value is neither an integer nor a fraction string.
    """
    if isinstance(value, bool):
        raise FieldError("booleans are not field elements: {!r}".format(value))
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as error:
            raise FieldError("malformed scalar {!r}".format(value)) from error
    raise FieldError("unsupported scalar {!r}".format(value))


class Field:
    """Abstract exact field.

    Subclasses fix the storage ``dtype`` and provide reduction of
    integer arrays, scalar inversion and the conversion from the input
    format. Everything else (row reduction, kernels, factorizations,
    characteristic polynomials) is implemented here once for all fields.
    """

    #: Tag used in reports and certificates.
    kind: str = None

    def __init__(self):
        # Prohibited instantiation of base class.
        if self.__class__ == Field:
            raise NotImplementedError

    # ------------ Public interface ----------------

    @property
    def size(self) -> Optional[int]:
        """Number of field elements, None for infinite fields."""
        return None

    def element(self, value) -> Scalar:
        return self._from_python(parse_scalar(value))

    def matrix(self, data, rows: int = None, cols: int = None) -> Mat:
        """Create a matrix from (nested) data.

        Parameters
        ----------
        data
            Nested sequence of scalars, or a flat sequence together with
            `rows` and `cols` (row-major order).
        """
        if rows is not None and cols is not None:
            flat = [self.element(x) for x in data]
            if len(flat) != rows * cols:
                raise DimensionMismatch("expected {}x{} entries, got {}".format(rows, cols, len(flat)))
            result = self.zeros(rows, cols)
            for index, x in enumerate(flat):
                result[index // cols, index % cols] = x
            return result
        data = [[self.element(x) for x in row] for row in data]
        if not data:
            return self.zeros(0, cols or 0)
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise DimensionMismatch("ragged matrix data")
        result = self.zeros(len(data), width)
        for i, row in enumerate(data):
            for j, x in enumerate(row):
                result[i, j] = x
        return result

    def vector(self, data) -> np.ndarray:
        data = [self.element(x) for x in data]
        result = np.zeros(len(data), dtype=self.dtype)
        for i, x in enumerate(data):
            result[i] = x
        return result

    def asarray(self, array) -> Mat:
        """Coerce an integer or field-valued array to the field's storage."""
        array = np.asarray(array)
        if array.dtype != self.dtype:
            array = array.astype(self.dtype)
        return self._reduce(array)

    def zeros(self, rows: int, cols: int) -> Mat:
        return np.zeros((rows, cols), dtype=self.dtype)

    def zero_vector(self, n: int) -> np.ndarray:
        return np.zeros(n, dtype=self.dtype)

    def eye(self, n: int) -> Mat:
        result = self.zeros(n, n)
        for i in range(n):
            result[i, i] = 1
        return result

    def unit_vector(self, n: int, i: int) -> np.ndarray:
        result = self.zero_vector(n)
        result[i] = 1
        return result

    def add(self, a: Mat, b: Mat) -> Mat:
        return self._reduce(a + b)

    def sub(self, a: Mat, b: Mat) -> Mat:
        return self._reduce(a - b)

    def neg(self, a: Mat) -> Mat:
        return self._reduce(-a)

    def scale(self, c: Scalar, a: Mat) -> Mat:
        return self._reduce(a * self._from_python(Fraction(c)))

    def matmul(self, a: Mat, b: Mat) -> Mat:
        if a.shape[-1] != b.shape[0]:
            raise DimensionMismatch("cannot multiply shapes {} and {}".format(a.shape, b.shape))
        if a.shape[-1] == 0:
            shape = a.shape[:-1] + b.shape[1:]
            return np.zeros(shape, dtype=self.dtype)
        return self._reduce(a @ b)

    def kron(self, a: Mat, b: Mat) -> Mat:
        if a.size == 0 or b.size == 0:
            return self.zeros(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
        return self._reduce(np.kron(a, b))

    def tensordot(self, a: np.ndarray, b: np.ndarray, axes) -> np.ndarray:
        if a.size == 0 or b.size == 0:
            shape = np.tensordot(np.zeros(a.shape, dtype=np.int64),
                                 np.zeros(b.shape, dtype=np.int64), axes=axes).shape
            return np.zeros(shape, dtype=self.dtype)
        result = np.tensordot(a, b, axes=axes)
        if result.dtype != self.dtype:
            result = result.astype(self.dtype)
        return self._reduce(result)

    def hstack(self, blocks: Sequence[Mat], rows: int = None) -> Mat:
        blocks = [b for b in blocks]
        if not blocks:
            return self.zeros(rows or 0, 0)
        return np.hstack(blocks).astype(self.dtype)

    def vstack(self, blocks: Sequence[Mat], cols: int = None) -> Mat:
        blocks = [b for b in blocks]
        if not blocks:
            return self.zeros(0, cols or 0)
        return np.vstack(blocks).astype(self.dtype)

    def block_diag(self, blocks: Sequence[Mat]) -> Mat:
        rows = sum(b.shape[0] for b in blocks)
        cols = sum(b.shape[1] for b in blocks)
        result = self.zeros(rows, cols)
        r = c = 0
        for b in blocks:
            result[r:r + b.shape[0], c:c + b.shape[1]] = b
            r += b.shape[0]
            c += b.shape[1]
        return result

    def inv(self, x: Scalar) -> Scalar:
        return self._inv(x)

    def normalize(self, v: np.ndarray) -> np.ndarray:
        """Rescale a nonzero vector so that its first nonzero entry is 1."""
        lead = np.nonzero(v != 0)[0]
        if len(lead) == 0:
            raise FieldError("cannot normalize the zero vector")
        return self._reduce(v * self._inv(v[int(lead[0])]))

    def is_zero(self, a: np.ndarray) -> bool:
        return not np.any(a != 0)

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and not np.any(a != b)

    def rref(self, m: Mat) -> Tuple[Mat, List[int]]:
        """Reduced row echelon form.

        Returns
        -------
        The reduced matrix and the list of pivot columns.
        """
        a = np.array(m, dtype=self.dtype, copy=True)
        if a.ndim != 2:
            raise DimensionMismatch("rref expects a matrix, got shape {}".format(a.shape))
        rows, cols = a.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            candidates = np.nonzero(a[r:, c] != 0)[0]
            if len(candidates) == 0:
                continue
            i = r + int(candidates[0])
            if i != r:
                a[[r, i]] = a[[i, r]]
            a[r] = self._reduce(a[r] * self._inv(a[r, c]))
            factors = a[:, c].copy()
            factors[r] = 0
            others = np.nonzero(factors != 0)[0]
            if len(others):
                a[others] = self._reduce(a[others] - np.outer(factors[others], a[r]))
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self, m: Mat) -> int:
        if m.size == 0:
            return 0
        return len(self.rref(m)[1])

    def kernel_basis(self, m: Mat) -> Mat:
        """Basis of the null space of `m`, as the columns of a matrix."""
        rows, cols = m.shape
        if rows == 0:
            return self.eye(cols)
        reduced, pivots = self.rref(m)
        pivot_set = set(pivots)
        free = [c for c in range(cols) if c not in pivot_set]
        kernel = self.zeros(cols, len(free))
        for k, column in enumerate(free):
            kernel[column, k] = 1
            for r, pivot in enumerate(pivots):
                kernel[pivot, k] = -reduced[r, column]
        return self._reduce(kernel)

    def solve_factorization(self, a: Mat, b: Mat) -> Optional[Mat]:
        """Find X with ``b @ X == a``.

        Parameters
        ----------
        a
            Matrix of shape (n, m).
        b
            Matrix of shape (n, q).

        Returns
        -------
        A (q, m) matrix X, or None if the column space of `a` is not
        contained in the column space of `b`.

        Raises
        ------
        DimensionMismatch
            If `a` and `b` have a different number of rows.
        """
        if a.ndim != 2 or b.ndim != 2 or a.shape[0] != b.shape[0]:
            raise DimensionMismatch("cannot factor {} through {}".format(a.shape, b.shape))
        n, q = b.shape
        m = a.shape[1]
        solution = self.zeros(q, m)
        if n == 0 or m == 0:
            return solution
        reduced, pivots = self.rref(np.hstack([b, a]).astype(self.dtype))
        if any(pivot >= q for pivot in pivots):
            return None
        for r, pivot in enumerate(pivots):
            solution[pivot] = reduced[r, q:]
        return solution

    def solve(self, b: Mat, v: np.ndarray) -> Optional[np.ndarray]:
        """Solve ``b @ x == v`` for a vector `x` (None if unsolvable)."""
        x = self.solve_factorization(v.reshape(-1, 1), b)
        return None if x is None else x[:, 0]

    def column_space(self, m: Mat) -> Mat:
        """A basis of the column space, chosen among the columns of `m`."""
        if m.size == 0:
            return self.zeros(m.shape[0], 0)
        return m[:, self.rref(m)[1]]

    def complement_basis(self, m: Mat) -> Mat:
        """Standard basis vectors completing the column space of `m`."""
        n = m.shape[0]
        k = m.shape[1]
        _, pivots = self.rref(np.hstack([m, self.eye(n)]).astype(self.dtype))
        chosen = [p - k for p in pivots if p >= k]
        result = self.zeros(n, len(chosen))
        for column, i in enumerate(chosen):
            result[i, column] = 1
        return result

    def in_span(self, m: Mat, v: np.ndarray) -> bool:
        return self.solve(m, v) is not None

    def coordinates(self, basis: Mat, v: np.ndarray) -> np.ndarray:
        """Coordinates of `v` in the (independent) columns of `basis`.

        Raises
        ------
        FieldError
            If `v` does not lie in the span.
        """
        x = self.solve(basis, v)
        if x is None:
            raise FieldError("vector does not lie in the given span")
        return x

    def inverse(self, m: Mat) -> Mat:
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch("only square matrices are invertible, got {}".format(m.shape))
        x = self.solve_factorization(self.eye(m.shape[0]), m)
        if x is None:
            raise FieldError("matrix is singular")
        return x

    def is_invertible(self, m: Mat) -> bool:
        return m.shape[0] == m.shape[1] and self.rank(m) == m.shape[0]

    def power(self, m: Mat, k: int) -> Mat:
        result = self.eye(m.shape[0])
        for _ in range(k):
            result = self.matmul(result, m)
        return result

    def is_nilpotent(self, m: Mat) -> bool:
        current = m
        for _ in range(m.shape[0]):
            if self.is_zero(current):
                return True
            current = self.matmul(current, m)
        return self.is_zero(current)

    def charpoly(self, m: Mat) -> List[Scalar]:
        """Characteristic polynomial det(x - m), coefficients from degree 0 up."""
        n = m.shape[0]
        if n == 0:
            return [self._from_python(Fraction(1))]
        domain = self.sympy_domain
        rows = [[domain.from_sympy(_to_sympy(m[i, j])) for j in range(n)] for i in range(n)]
        coefficients = DomainMatrix(rows, (n, n), domain).charpoly()
        return [self._from_python(_to_fraction(domain.to_sympy(c))) for c in reversed(coefficients)]

    def roots(self, coefficients: Sequence[Scalar]) -> List[Scalar]:
        """Distinct roots in the field of a polynomial (low degree first), sorted."""
        poly = Poly([_to_sympy(c) for c in reversed(list(coefficients))] or [0], _X, domain=self.sympy_domain)
        if poly.is_zero or poly.degree() < 1:
            return []
        return sorted({self._from_python(_to_fraction(root)) for root in poly.ground_roots()})

    def eigenvalues(self, m: Mat) -> List[Scalar]:
        return self.roots(self.charpoly(m))

    def random_matrix(self, rows: int, cols: int, rng: np.random.Generator) -> Mat:
        """To be implemented by subclasses."""
        raise NotImplementedError

    def random_vector(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return self.random_matrix(n, 1, rng)[:, 0]

    def elements(self) -> Iterator[Scalar]:
        """Enumerate the field. Only finite fields support this."""
        raise FieldError("the field {} is not enumerable".format(self))

    def all_vectors(self, n: int) -> Mat:
        """All vectors of k^n as the columns of an n x |k|^n matrix."""
        values = list(self.elements())
        columns = list(itertools.product(values, repeat=n))
        result = self.zeros(n, len(columns))
        for c, column in enumerate(columns):
            result[:, c] = column
        return result

    def to_python(self, x) -> Union[int, str]:
        """JSON-friendly rendering of a scalar."""
        x = Fraction(x)
        return int(x) if x.denominator == 1 else str(x)

    def to_list(self, a: np.ndarray) -> list:
        if a.ndim == 1:
            return [self.to_python(x) for x in a]
        return [self.to_list(row) for row in a]

    def spec(self) -> dict:
        """To be implemented by subclasses."""
        raise NotImplementedError

    # ------------------- Things to be implemented by subclasses -------------------

    @property
    def dtype(self):
        raise NotImplementedError

    @property
    def sympy_domain(self):
        raise NotImplementedError

    def _reduce(self, array: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _inv(self, x: Scalar) -> Scalar:
        raise NotImplementedError

    def _from_python(self, x: Fraction) -> Scalar:
        raise NotImplementedError

    def _s_add(self, x: Scalar, y: Scalar) -> Scalar:
        raise NotImplementedError

    def _s_sub(self, x: Scalar, y: Scalar) -> Scalar:
        raise NotImplementedError

    def _s_mul(self, x: Scalar, y: Scalar) -> Scalar:
        raise NotImplementedError


class PrimeField(Field):
    """The prime field F_p."""

    kind = 'prime'

    def __init__(self, p: int):
        super().__init__()
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError("{!r} is not a prime".format(p))
        self.p = p
        self._dtype = np.int64 if p < 2**20 else object

    def __repr__(self):
        return 'F{}'.format(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(('prime', self.p))

    @property
    def size(self) -> int:
        return self.p

    @property
    def dtype(self):
        return self._dtype

    @property
    def sympy_domain(self):
        return GF(self.p)

    def spec(self) -> dict:
        return {'prime': self.p}

    def to_python(self, x) -> int:
        return int(x) % self.p

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def random_matrix(self, rows: int, cols: int, rng: np.random.Generator) -> Mat:
        values = rng.integers(0, self.p, size=(rows, cols))
        return values.astype(self._dtype)

    def _reduce(self, array):
        return np.mod(array, self.p)

    def _inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise FieldError("division by zero in F{}".format(self.p))
        return pow(x, self.p - 2, self.p)

    def _from_python(self, x: Fraction) -> int:
        if x.denominator % self.p == 0:
            raise FieldError("{} has no image in F{}".format(x, self.p))
        return x.numerator * pow(x.denominator, self.p - 2, self.p) % self.p

    def _s_add(self, x, y):
        return (x + y) % self.p

    def _s_sub(self, x, y):
        return (x - y) % self.p

    def _s_mul(self, x, y):
        return (x * y) % self.p


class RationalField(Field):
    """The rational numbers, with exact Fraction entries."""

    kind = 'rationals'

    def __repr__(self):
        return 'Q'

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash('rationals')

    @property
    def dtype(self):
        return object

    @property
    def sympy_domain(self):
        return QQ

    def spec(self) -> dict:
        return {'rationals': True}

    def random_matrix(self, rows: int, cols: int, rng: np.random.Generator) -> Mat:
        values = rng.integers(-3, 4, size=(rows, cols))
        result = self.zeros(rows, cols)
        for i in range(rows):
            for j in range(cols):
                result[i, j] = Fraction(int(values[i, j]))
        return result

    def _reduce(self, array):
        return array

    def _inv(self, x):
        if x == 0:
            raise FieldError("division by zero in Q")
        return Fraction(1) / Fraction(x)

    def _from_python(self, x: Fraction) -> Fraction:
        return x

    def _s_add(self, x, y):
        return x + y

    def _s_sub(self, x, y):
        return x - y

    def _s_mul(self, x, y):
        return x * y


def _to_sympy(x) -> Rational:
    x = Fraction(x)
    return Rational(x.numerator, x.denominator)


def _to_fraction(x: Rational) -> Fraction:
    return Fraction(int(x.p), int(x.q))

def field_from_spec(spec: dict) -> Field:
    """Build a field from its descriptor form ``{"prime": p}`` or ``{"rationals": true}``."""
    if spec.get('prime') is not None:
        return PrimeField(int(spec['prime']))
    if spec.get('rationals'):
        return RationalField()
    raise FieldError("cannot interpret field descriptor {!r}".format(spec))


def field_from_option(option: str) -> Field:
    """Parse the command line form: a prime number or ``Q``."""
    if option.strip().upper() in ('Q', 'QQ', 'RATIONALS'):
        return RationalField()
    try:
        return PrimeField(int(option))
    except ValueError as error:
        raise FieldError("cannot interpret field option {!r}".format(option)) from error
