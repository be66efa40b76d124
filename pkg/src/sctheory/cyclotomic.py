"""Exact arithmetic in the cyclotomic field Q(zeta_m).

Elements are stored in the power basis ``1, z, ..., z**(phi(m)-1)`` of
``Q[x]/Phi_m(x)``.  Since the representation is always reduced modulo the
cyclotomic polynomial, two elements are equal exactly when their coefficient
tuples are equal, which makes ``CycNumber`` hashable and cheap to compare.

Row spaces of matrices over the field are compared by fraction-free
(Bareiss) elimination over the ring Z[zeta_m].
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from numbers import Rational

__all__ = [
    "CycNumber",
    "CycMatrix",
    "RowSpace",
    "cyclotomic_poly",
    "euler_phi",
    "root_of_unity",
    "rowspace_equal",
]


def euler_phi(m: int) -> int:
    result, k = m, m
    p = 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


def _poly_divexact(num, den):
    """Exact division of integer polynomials (low-to-high coefficients)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], lead)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        out[i] = q
        if q:
            for j, d in enumerate(den):
                num[i + j] -= q * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("polynomial division is not exact")
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


@functools.lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    # reductions of x**j mod Phi_m for j < max(m, 2*phi - 1)
    phi = euler_phi(m)
    cyc = cyclotomic_poly(m)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(max(m, 2 * phi - 1)):
        rows.append(tuple(cur))
        # multiply by x and reduce the overflow with the monic Phi_m
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * cyc[i]
    return tuple(rows)


def _norm_coeff(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _norm_coeff(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def _reduce(m: int, long):
    """Reduce a coefficient list of arbitrary length modulo Phi_m."""
    table = _power_table(m)
    phi = len(table[0])
    out = list(long[:phi]) + [0] * max(0, phi - len(long))
    for j in range(phi, len(long)):
        c = long[j]
        if c:
            row = table[j % m] if j >= len(table) else table[j]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return out


class CycNumber:
    """An element of Q(zeta_m), immutable and canonical."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor: int, coeffs=None):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        phi = euler_phi(conductor)
        if coeffs is None:
            coeffs = (0,) * phi
        elif len(coeffs) != phi:
            coeffs = _reduce(conductor, list(coeffs))
        self.conductor = conductor
        self.coeffs = tuple(_norm_coeff(c) for c in coeffs)
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def rational(cls, m: int, value) -> CycNumber:
        phi = euler_phi(m)
        return cls(m, (value,) + (0,) * (phi - 1))

    @classmethod
    def _raw(cls, m: int, coeffs: tuple) -> CycNumber:
        obj = cls.__new__(cls)
        obj.conductor = m
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    # -- structure --------------------------------------------------------

    def __eq__(self, other):
        # structural; values with different conductors compare via equals()
        if isinstance(other, CycNumber):
            return self.conductor == other.conductor and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def equals(self, other: CycNumber) -> bool:
        """Field equality, lifting both sides to a common conductor."""
        m = math.lcm(self.conductor, other.conductor)
        return self.lift(m).coeffs == other.lift(m).coeffs

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.conductor, self.coeffs))
        return self._hash

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z{self.conductor}^{i}")
        return " + ".join(terms) if terms else "0"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def _check(self, other: CycNumber):
        if self.conductor != other.conductor:
            raise ValueError(
                f"conductor mismatch: {self.conductor} vs {other.conductor}"
            )

    def _coerce(self, other):
        if isinstance(other, CycNumber):
            self._check(other)
            return other
        if isinstance(other, (int, Rational)):
            return CycNumber.rational(self.conductor, other)
        return None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycNumber._raw(
            self.conductor,
            tuple(_norm_coeff(a + b) for a, b in zip(self.coeffs, other.coeffs)),
        )

    __radd__ = __add__

    def __neg__(self):
        return CycNumber._raw(self.conductor, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycNumber._raw(
            self.conductor,
            tuple(_norm_coeff(a - b) for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycNumber):
            return CycNumber._raw(
                self.conductor, tuple(_norm_coeff(a * other) for a in self.coeffs)
            )
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        long = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        long[i + j] += x * y
        return CycNumber(self.conductor, _reduce(self.conductor, long))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = CycNumber.rational(self.conductor, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, CycNumber):
            if not other.is_rational():
                raise TypeError("division is only defined by rationals")
            other = other.coeffs[0]
        if not isinstance(other, (int, Rational)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division by zero rational")
        return CycNumber._raw(
            self.conductor,
            tuple(_norm_coeff(Fraction(a) / other) for a in self.coeffs),
        )

    def inverse(self) -> CycNumber:
        """Multiplicative inverse via the field norm.

        The product of the other Galois conjugates times self is the norm,
        a nonzero rational, so dividing that product by it inverts self.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycNumber.rational(self.conductor, 1 / Fraction(self.coeffs[0]))
        m = self.conductor
        acc = CycNumber.rational(m, 1)
        for k in range(2, m):
            if math.gcd(k, m) == 1:
                acc = acc * self._substitute(k)
        norm = self * acc
        return acc / norm.coeffs[0]

    def _substitute(self, k: int) -> CycNumber:
        # x -> x**k, reduced; k taken mod m
        m = self.conductor
        table = _power_table(m)
        out = [0] * len(self.coeffs)
        for j, c in enumerate(self.coeffs):
            if c:
                row = table[(j * k) % m]
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return CycNumber._raw(m, tuple(_norm_coeff(c) for c in out))

    def conj(self) -> CycNumber:
        """Complex conjugate, zeta -> zeta**-1."""
        return self._substitute(-1)

    def galois(self, k: int) -> CycNumber:
        """Image under the field automorphism zeta -> zeta**k."""
        if math.gcd(k, self.conductor) != 1:
            raise ValueError(f"{k} is not a unit mod {self.conductor}")
        return self._substitute(k)

    def lift(self, m: int) -> CycNumber:
        """Embed into Q(zeta_m) for a multiple m of the conductor."""
        if m == self.conductor:
            return self
        if m % self.conductor:
            raise ValueError(f"{self.conductor} does not divide {m}")
        step = m // self.conductor
        long = [0] * ((len(self.coeffs) - 1) * step + 1)
        for j, c in enumerate(self.coeffs):
            long[j * step] = c
        return CycNumber(m, _reduce(m, long))

    def abs2(self) -> CycNumber:
        return self * self.conj()

    def to_complex(self) -> complex:
        """Floating-point value; for display and cross-checks only."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(complex(float(c)) * z**i for i, c in enumerate(self.coeffs))

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> CycNumber:
        if isinstance(data, (int, str)) and not isinstance(data, bool):
            raise TypeError("CycNumber JSON needs a conductor")
        m = int(data["conductor"])
        coeffs = [Fraction(c) for c in data["coeffs"]]
        if len(coeffs) != euler_phi(m):
            raise ValueError("coefficient count must equal phi(conductor)")
        return cls(m, coeffs)


@functools.lru_cache(maxsize=4096)
def root_of_unity(m: int, k: int) -> CycNumber:
    """zeta_m ** k in canonical form."""
    if m < 1:
        raise ValueError("conductor must be positive")
    return CycNumber._raw(m, _power_table(m)[k % m])


# ---------------------------------------------------------------------------
# matrices and row spaces
# ---------------------------------------------------------------------------


class CycMatrix:
    """A dense matrix of CycNumbers sharing one conductor."""

    def __init__(self, rows, conductor: int | None = None):
        rows = [list(r) for r in rows]
        if conductor is None:
            conductor = next(
                (x.conductor for r in rows for x in r if isinstance(x, CycNumber)), 1
            )
        self.conductor = conductor
        self.rows = [
            [x if isinstance(x, CycNumber) else CycNumber.rational(conductor, x)
             for x in r]
            for r in rows
        ]
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        self.ncols = widths.pop() if widths else 0
        for r in self.rows:
            for x in r:
                if x.conductor != conductor:
                    raise ValueError("all entries must share the conductor")

    @property
    def shape(self):
        return len(self.rows), self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, CycMatrix) and self.rows == other.rows

    def __matmul__(self, other: CycMatrix) -> CycMatrix:
        if self.ncols != len(other.rows):
            raise ValueError("shape mismatch")
        zero = CycNumber(self.conductor)
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                acc = zero
                for k, x in enumerate(r):
                    if not x.is_zero():
                        acc = acc + x * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return CycMatrix(out, self.conductor)

    def conj(self) -> CycMatrix:
        return CycMatrix([[x.conj() for x in r] for r in self.rows], self.conductor)

    def transpose(self) -> CycMatrix:
        return CycMatrix([list(c) for c in zip(*self.rows)], self.conductor)

    def scale(self, c) -> CycMatrix:
        return CycMatrix([[x * c for x in r] for r in self.rows], self.conductor)

    @classmethod
    def identity(cls, n: int, conductor: int = 1) -> CycMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], conductor)


# Ring Z[zeta_m] with elements as integer tuples in the power basis.

def _zsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _zmul(m, a, b):
    if not any(a) or not any(b):
        return (0,) * len(a)
    long = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    long[i + j] += x * y
    return tuple(_reduce(m, long))


def _zscale(c, a):
    return tuple(c * x for x in a)


def _zdivexact(m, a, b):
    """a / b in Z[zeta_m], where b is known to divide a.

    Multiplies through by the product of the other Galois conjugates of b,
    which turns the divisor into its (integer) field norm.
    """
    if not any(b[1:]):
        d = b[0]
        out = []
        for x in a:
            q, r = divmod(x, d)
            if r:
                raise ArithmeticError("inexact division in Z[zeta]")
            out.append(q)
        return tuple(out)
    num, den = a, b
    bnum = CycNumber._raw(m, b)
    for k in range(2, m):
        if math.gcd(k, m) == 1:
            conjugate = bnum._substitute(k).coeffs
            num = _zmul(m, num, conjugate)
            den = _zmul(m, den, conjugate)
    return _zdivexact(m, num, den)


def _integral_rows(matrix: CycMatrix):
    rows = []
    for r in matrix.rows:
        denom = 1
        for x in r:
            for c in x.coeffs:
                if isinstance(c, Fraction):
                    denom = math.lcm(denom, c.denominator)
        rows.append([tuple(int(c * denom) for c in x.coeffs) for x in r])
    return rows


class RowSpace:
    """Row span of a CycMatrix, held as a fraction-free echelon basis."""

    def __init__(self, matrix: CycMatrix):
        self.conductor = matrix.conductor
        self.ncols = matrix.ncols
        self.pivots = _bareiss_echelon(self.conductor, _integral_rows(matrix))
        self._canonical = None

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains_row(self, row) -> bool:
        m = self.conductor
        if len(row) != self.ncols:
            raise ValueError("column-count mismatch")
        v = _integral_rows(CycMatrix([row], m))[0]
        for col, prow in self.pivots:
            c = v[col]
            if any(c):
                p = prow[col]
                v = [_zsub(_zmul(m, p, x), _zmul(m, c, y)) for x, y in zip(v, prow)]
        return not any(any(x) for x in v)

    def __contains__(self, row) -> bool:
        return self.contains_row(row)

    def canonical(self) -> tuple:
        """Reduced row echelon form as a hashable tuple (pivot 1, zeros above).

        Two row spaces are equal iff their canonical forms are equal.
        """
        if self._canonical is None:
            m = self.conductor
            rows = [[CycNumber._raw(m, x) for x in prow] for _, prow in self.pivots]
            cols = [c for c, _ in self.pivots]
            for i in range(len(rows) - 1, -1, -1):
                inv = rows[i][cols[i]].inverse()
                rows[i] = [x * inv for x in rows[i]]
                for k in range(i):
                    f = rows[k][cols[i]]
                    if not f.is_zero():
                        rows[k] = [a - f * b for a, b in zip(rows[k], rows[i])]
            self._canonical = tuple(tuple(r) for r in rows)
        return self._canonical

    def __eq__(self, other):
        if not isinstance(other, RowSpace):
            return NotImplemented
        if self.ncols != other.ncols:
            raise ValueError("column-count mismatch")
        if self.rank != other.rank:
            return False
        m = self.conductor
        for _, prow in other.pivots:
            row = [CycNumber._raw(m, x) for x in prow]
            if not self.contains_row(row):
                return False
        return True


def _bareiss_echelon(m, rows):
    """Fraction-free row echelon form; returns [(pivot column, row), ...]."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    phi = euler_phi(m)
    one = (1,) + (0,) * (phi - 1)
    prev = one
    r = 0
    out = []
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if any(rows[i][c])), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, len(rows)):
            row = rows[i]
            f = row[c]
            if any(f):
                for j in range(c + 1, ncols):
                    val = _zsub(_zmul(m, p, row[j]), _zmul(m, f, prow[j]))
                    row[j] = val if prev == one else _zdivexact(m, val, prev)
            elif p != prev:
                for j in range(c + 1, ncols):
                    val = _zmul(m, p, row[j])
                    row[j] = val if prev == one else _zdivexact(m, val, prev)
            row[c] = (0,) * phi
        out.append((c, tuple(prow)))
        prev = p
        r += 1
        if r == len(rows):
            break
    return out


def rowspace_equal(a: CycMatrix, b: CycMatrix) -> bool:
    """True iff a and b span the same row space over Q(zeta_m)."""
    if a.ncols != b.ncols:
        raise ValueError("column-count mismatch")
    if a.conductor != b.conductor:
        raise ValueError("conductor mismatch")
    return RowSpace(a) == RowSpace(b)
