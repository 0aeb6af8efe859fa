"""An explicit four-dimensional representation of the braid group B_3.

A and B are the images of sigma_1 and sigma_2, triangular with spectrum
{q^-12, q^2, -q^-6, -1}.  The entry A[1][2] is -(q^4 + 1)/q^10; with the
sign flipped inside the numerator the braid relation fails, which is how the
entry was pinned down (see ``build_AB(..., alternate_sign=True)``).
"""
from __future__ import annotations

from dataclasses import dataclass

from .braid import Spectrum, same_up_to_scale
from .category import qpower
from .cyclo import CycloNumber


class SpectrumMismatch(ValueError):
    pass


class CycloMatrix:
    """Square matrix over a cyclotomic field, entries kept at one conductor."""

    __slots__ = ("rows", "n", "conductor")

    def __init__(self, rows, conductor: int | None = None):
        rows = [[e if isinstance(e, CycloNumber) else CycloNumber.rational(e) for e in r] for r in rows]
        self.n = len(rows)
        if any(len(r) != self.n for r in rows):
            raise ValueError("matrix must be square")
        if conductor is None:
            conductor = 1
            for r in rows:
                for e in r:
                    conductor = _lcm(conductor, e.conductor)
        self.conductor = conductor
        self.rows = [[e.lift(conductor) for e in r] for r in rows]

    @classmethod
    def identity(cls, n: int, conductor: int = 1) -> "CycloMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], conductor)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "CycloMatrix") -> "CycloMatrix":
        if self.conductor != other.conductor:
            c = _lcm(self.conductor, other.conductor)
            return CycloMatrix(self.rows, c) @ CycloMatrix(other.rows, c)
        n = self.n
        zero = CycloNumber.rational(0).lift(self.conductor)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    a = self.rows[i][k]
                    if a.is_zero():
                        continue
                    b = other.rows[k][j]
                    if not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return CycloMatrix(out, self.conductor)

    def __eq__(self, other):
        if not isinstance(other, CycloMatrix) or other.n != self.n:
            return NotImplemented
        return all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def diagonal(self) -> list[CycloNumber]:
        return [self.rows[i][i] for i in range(self.n)]

    def scalar_value(self) -> CycloNumber | None:
        """c if the matrix equals c * I, else None."""
        c = self.rows[0][0]
        for i in range(self.n):
            for j in range(self.n):
                e = self.rows[i][j]
                if (i == j and e != c) or (i != j and not e.is_zero()):
                    return None
        return c

    def inverse(self) -> "CycloMatrix":
        """Gauss-Jordan elimination over the field."""
        n = self.n
        one = CycloNumber.rational(1).lift(self.conductor)
        zero = CycloNumber.rational(0).lift(self.conductor)
        aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = aug[col][col].inverse()
            aug[col] = [e * inv for e in aug[col]]
            for r in range(n):
                if r != col and not aug[r][col].is_zero():
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return CycloMatrix([r[n:] for r in aug], self.conductor)

    def determinant(self) -> CycloNumber:
        n = self.n
        m = [list(r) for r in self.rows]
        det = CycloNumber.rational(1).lift(self.conductor)
        for col in range(n):
            pivot = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
            if pivot is None:
                return CycloNumber.rational(0)
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = -det
            det = det * m[col][col]
            inv = m[col][col].inverse()
            for r in range(col + 1, n):
                if not m[r][col].is_zero():
                    f = m[r][col] * inv
                    m[r] = [a - f * b for a, b in zip(m[r], m[col])]
        return det

    def to_complex(self) -> list[list[complex]]:
        return [[e.to_complex() for e in r] for r in self.rows]

    def __repr__(self):
        return f"CycloMatrix({self.rows!r})"


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def build_AB(ell: int, alternate_sign: bool = False) -> tuple[CycloMatrix, CycloMatrix]:
    """Images of sigma_1 and sigma_2 at q = zeta_(2 ell).

    ``alternate_sign=True`` puts (q^4 - 1) in A[1][2]; that variant violates
    the braid relation and is kept only to show it.
    """
    if ell < 2:
        raise ValueError("ell must be at least 2")

    def q(e):
        return qpower(ell, e)

    t = q(8) + q(4) + 1
    s = q(4) - 1 if alternate_sign else q(4) + 1
    A = [
        [q(-12), t * q(-6), -t * q(-14), -1],
        [0, q(2), -s * q(-10), -1],
        [0, 0, -q(-6), -1],
        [0, 0, 0, -1],
    ]
    B = [
        [-1, 0, 0, 0],
        [q(-6), -q(-6), 0, 0],
        [q(6), -(q(4) + 1) * q(2), q(2), 0],
        [-1, t * q(-8), -t * q(-12), q(-12)],
    ]
    n = 2 * ell
    return CycloMatrix(A, n), CycloMatrix(B, n)


def braid_relation_holds(A: CycloMatrix, B: CycloMatrix) -> bool:
    return A @ B @ A == B @ A @ B


def proportional_power_check(C: CycloMatrix, jmax: int) -> int | None:
    """First j in 1..jmax with C^j a scalar matrix, or None."""
    power = C
    for j in range(1, jmax + 1):
        if power.scalar_value() is not None:
            return j
        if j < jmax:
            power = power @ C
    return None


def default_jmax(ell: int) -> int:
    return max(24, ell)


@dataclass(frozen=True)
class MatrixCertificate:
    ell: int
    jmax: int
    result: str  # "no-proportional-power" or "proportional-power"
    conductor: int
    braid_relation: bool
    first_scalar_power: int | None = None
    matched_spectrum: tuple[str, ...] | None = None

    @property
    def infinite(self) -> bool:
        return self.braid_relation and self.result == "no-proportional-power"

    def to_json(self) -> dict:
        doc = {
            "ell": self.ell,
            "jmax": self.jmax,
            "result": self.result,
            "conductor": self.conductor,
            "braid_relation": self.braid_relation,
        }
        if self.first_scalar_power is not None:
            doc["first_scalar_power"] = self.first_scalar_power
        if self.matched_spectrum is not None:
            doc["matched_spectrum"] = list(self.matched_spectrum)
        return doc


def escalate(ell: int, jmax: int | None = None, spectrum: Spectrum | None = None) -> MatrixCertificate:
    """Look for a scalar power of C = A B^-1 up to ``jmax``.

    When a spectrum is given it must agree with diag(A) up to a global
    factor, otherwise the matrices do not describe that representation.
    """
    A, B = build_AB(ell)
    matched = None
    if spectrum is not None:
        if not same_up_to_scale(spectrum.values, A.diagonal()):
            raise SpectrumMismatch(f"spectrum {spectrum.describe()} does not match diag(A) at ell={ell}")
        matched = tuple(spectrum.describe())
    jmax = default_jmax(ell) if jmax is None else jmax
    ok = braid_relation_holds(A, B)
    C = A @ B.inverse()
    j = proportional_power_check(C, jmax)
    return MatrixCertificate(
        ell=ell,
        jmax=jmax,
        result="no-proportional-power" if j is None else "proportional-power",
        conductor=A.conductor,
        braid_relation=ok,
        first_scalar_power=j,
        matched_spectrum=matched,
    )
