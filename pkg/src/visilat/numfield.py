"""Number fields with a power integral basis and exact ring arithmetic.

Three kinds of field are supported:

* ``rational``:  K = Q, O = Z, basis {1}.
* ``quadratic``: K = Q(sqrt(d)) for squarefree integer d not in {0, 1}.  The
  basis generator is (1 + sqrt(d))/2 when d = 1 (mod 4) and sqrt(d)
  otherwise, so {1, theta} is always a Z-basis of the full ring of integers.
* ``monogenic``: K = Q[x]/(f) for a monic irreducible integer polynomial f,
  under the caller's assertion that Z[theta] is the full ring of integers.

Elements are integer coordinate vectors over the fixed basis {1, theta, ...,
theta^(n-1)}; all arithmetic is exact arbitrary-precision integer work.
Polynomials are coefficient tuples, constant term first.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from typing import Sequence

from .errors import FieldError

# Quadratic fields whose ring of integers is known to be a PID; everything
# else gets a warning because the density theory assumes a PID.
PID_WHITELIST = {-1, -2, -3, -7, -11, 2, 3, 5, 13}


@dataclass(frozen=True)
class FieldSpec:
    """A number field K together with its ring of integers O.

    ``mult_tensor[i][j][k]`` gives the coefficient of e_k in e_i * e_j, so the
    tensor fully determines multiplication in O over the basis.
    ``gen_minpoly`` is the monic minimal polynomial of the basis generator
    theta (constant term first); the basis is always {1, theta, ...,
    theta^(n-1)}.
    """

    kind: str
    degree: int
    basis_labels: tuple[str, ...]
    mult_tensor: tuple
    discriminant: int
    gen_minpoly: tuple[int, ...]
    d: int | None = None

    def element(self, coords: Sequence[int]) -> "AlgInt":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.degree:
            raise ValueError(
                f"expected {self.degree} coordinates, got {len(coords)}")
        return AlgInt(self, coords)

    def zero(self) -> "AlgInt":
        return AlgInt(self, (0,) * self.degree)

    def one(self) -> "AlgInt":
        return AlgInt(self, (1,) + (0,) * (self.degree - 1))

    def basis_element(self, i: int) -> "AlgInt":
        c = [0] * self.degree
        c[i] = 1
        return AlgInt(self, tuple(c))

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational"}
        if self.kind == "quadratic":
            return {"kind": "quadratic", "d": self.d}
        return {"kind": "monogenic", "minpoly": list(self.gen_minpoly)}

    def __repr__(self):
        return f"FieldSpec({json.dumps(self.to_json())}, n={self.degree})"


@dataclass(frozen=True)
class AlgInt:
    """An element of O as an integer coordinate vector over the basis."""

    field: FieldSpec
    coords: tuple[int, ...]

    def _check(self, other: "AlgInt"):
        if self.field != other.field:
            raise ValueError("elements belong to different fields")

    def __add__(self, other: "AlgInt") -> "AlgInt":
        self._check(other)
        return AlgInt(self.field,
                      tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgInt") -> "AlgInt":
        self._check(other)
        return AlgInt(self.field,
                      tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "AlgInt":
        return AlgInt(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other: "AlgInt") -> "AlgInt":
        self._check(other)
        return AlgInt(self.field,
                      mul_coords(self.field, self.coords, other.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def norm(self) -> int:
        """Field norm: det of the multiplication-by-self matrix (signed)."""
        return norm_of_coords(self.field, self.coords)

    def __repr__(self):
        return f"AlgInt{self.coords}"


def mul_coords(field: FieldSpec, a: Sequence[int],
               b: Sequence[int]) -> tuple[int, ...]:
    """Coordinate-level product via the multiplication tensor."""
    n = field.degree
    T = field.mult_tensor
    out = [0] * n
    for i in range(n):
        ai = a[i]
        if not ai:
            continue
        Ti = T[i]
        for j in range(n):
            bj = b[j]
            if not bj:
                continue
            Tij = Ti[j]
            c = ai * bj
            for k in range(n):
                if Tij[k]:
                    out[k] += c * Tij[k]
    return tuple(out)


def norm_of_coords(field: FieldSpec, a: Sequence[int]) -> int:
    """Exact field norm of the element with coordinates ``a``."""
    n = field.degree
    if n == 1:
        return a[0]
    if n == 2:
        # theta^2 = t0 + t1*theta; N(x + y*theta) = x^2 + t1*x*y - t0*y^2
        t0, t1 = field.mult_tensor[1][1]
        x, y = a
        return x * x + t1 * x * y - t0 * y * y
    rows = [mul_coords(field, a, _unit(n, i)) for i in range(n)]
    return _det_bareiss(rows)


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(n))


def _det_bareiss(mat: Sequence[Sequence[int]]) -> int:
    """Fraction-free exact determinant of an integer matrix."""
    m = [list(row) for row in mat]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ----------------------------------------------------------------------
# field construction
# ----------------------------------------------------------------------

def make_field(kind: str, d: int | None = None,
               minpoly: Sequence[int] | None = None) -> FieldSpec:
    """Build a validated FieldSpec of the given kind.

    ``quadratic`` needs a squarefree d not in {0, 1}; ``monogenic`` needs a
    monic irreducible integer polynomial (constant term first) and trusts the
    caller that its power basis is integral.
    """
    if kind == "rational":
        return _build(kind="rational", gen_minpoly=(0, 1), labels=("1",),
                      disc=1)
    if kind == "quadratic":
        if d is None:
            raise FieldError("quadratic field needs d")
        d = int(d)
        if d in (0, 1) or not _is_squarefree(d):
            raise FieldError(f"d={d} must be squarefree and not 0 or 1")
        if d not in PID_WHITELIST:
            warnings.warn(
                f"quadratic field with d={d} is not on the class-number-one "
                "whitelist; density formulas assume O is a PID",
                stacklevel=2)
        if d % 4 == 1:
            # theta = (1 + sqrt(d))/2, minimal polynomial x^2 - x + (1-d)/4
            mp = ((1 - d) // 4, -1, 1)
            labels = ("1", f"(1+sqrt({d}))/2")
            disc = d
        else:
            mp = (-d, 0, 1)
            labels = ("1", f"sqrt({d})")
            disc = 4 * d
        return _build(kind="quadratic", gen_minpoly=mp, labels=labels,
                      disc=disc, d=d)
    if kind == "monogenic":
        if minpoly is None:
            raise FieldError("monogenic field needs a minimal polynomial")
        mp = tuple(int(c) for c in minpoly)
        while len(mp) > 1 and mp[-1] == 0:
            mp = mp[:-1]
        n = len(mp) - 1
        if n < 2:
            raise FieldError("monogenic minimal polynomial must have degree >= 2")
        if mp[-1] != 1:
            raise FieldError("minimal polynomial must be monic")
        if not _poly_irreducible(mp):
            raise FieldError("minimal polynomial is reducible over Q")
        warnings.warn(
            "monogenic field is not on the class-number-one whitelist; "
            "density formulas assume O is a PID", stacklevel=2)
        labels = ("1", "theta") + tuple(f"theta^{k}" for k in range(2, n))
        return _build(kind="monogenic", gen_minpoly=mp, labels=labels,
                      disc=_poly_discriminant(mp))
    raise FieldError(f"unknown field kind {kind!r}")


def field_from_json(data: dict | str) -> FieldSpec:
    """Parse a field descriptor like {"kind":"quadratic","d":-1}."""
    if isinstance(data, str):
        data = json.loads(data)
    kind = data.get("kind")
    if kind == "rational":
        return make_field("rational")
    if kind == "quadratic":
        return make_field("quadratic", d=data["d"])
    if kind == "monogenic":
        return make_field("monogenic", minpoly=data["minpoly"])
    raise FieldError(f"unknown field kind {kind!r}")


def _build(kind, gen_minpoly, labels, disc, d=None) -> FieldSpec:
    n = len(gen_minpoly) - 1
    tensor = _power_basis_tensor(gen_minpoly)
    fs = FieldSpec(kind=kind, degree=n, basis_labels=labels,
                   mult_tensor=tensor, discriminant=disc,
                   gen_minpoly=gen_minpoly, d=d)
    _validate_tensor(fs)
    return fs


def _power_basis_tensor(minpoly: tuple[int, ...]) -> tuple:
    """e_i * e_j = theta^(i+j) reduced mod the minimal polynomial."""
    n = len(minpoly) - 1
    powers = [list(_unit(n, k)) for k in range(n)]
    cur = list(powers[-1])
    for _ in range(n - 1):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(n):
                cur[j] -= top * minpoly[j]
        powers.append(list(cur))
    return tuple(tuple(tuple(powers[i + j]) for j in range(n))
                 for i in range(n))


def _validate_tensor(field: FieldSpec):
    n = field.degree
    T = field.mult_tensor
    for i in range(n):
        for j in range(n):
            if T[i][j] != T[j][i]:
                raise FieldError("multiplication tensor is not commutative")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = mul_coords(field, T[i][j], _unit(n, k))
                rhs = mul_coords(field, _unit(n, i), T[j][k])
                if lhs != rhs:
                    raise FieldError("multiplication tensor is not associative")


def element_from_poly(field: FieldSpec, coeffs: Sequence[int]) -> AlgInt:
    """Evaluate an integer polynomial (constant first) at the basis generator."""
    n = field.degree
    val = [0] * n
    xpow = list(_unit(n, 0))
    for c in coeffs:
        if c:
            for k in range(n):
                val[k] += c * xpow[k]
        # multiply xpow by theta
        top = xpow[-1]
        xpow = [0] + xpow[:-1]
        if top:
            for j in range(n):
                xpow[j] -= top * field.gen_minpoly[j]
    return AlgInt(field, tuple(val))


# ----------------------------------------------------------------------
# integer polynomial utilities for construction-time validation
# ----------------------------------------------------------------------

def _is_squarefree(d: int) -> bool:
    d = abs(d)
    if d == 0:
        return False
    if d % 4 == 0:
        return False
    f = 3
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 2
    return True


def _poly_irreducible(coeffs: tuple[int, ...]) -> bool:
    # sympy only used here; quadratic/rational kinds never import it
    from sympy import Poly, Symbol

    return Poly(list(reversed(coeffs)), Symbol("x")).is_irreducible


def _poly_discriminant(f: tuple[int, ...]) -> int:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') for monic f."""
    n = len(f) - 1
    fprime = tuple(i * f[i] for i in range(1, len(f)))
    res = _resultant(f, fprime)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res


def _resultant(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Resultant via the Sylvester matrix determinant."""
    da = len(a) - 1
    db = len(b) - 1
    if db < 0 or all(c == 0 for c in b):
        return 0
    size = da + db
    ahigh = list(reversed(a))
    bhigh = list(reversed(b))
    rows = []
    for i in range(db):
        rows.append([0] * i + ahigh + [0] * (size - da - 1 - i))
    for i in range(da):
        rows.append([0] * i + bhigh + [0] * (size - db - 1 - i))
    return _det_bareiss(rows)


def first_rational_primes(t: int) -> list[int]:
    """The first t rational primes."""
    out = []
    cand = 2
    while len(out) < t:
        if all(cand % p for p in out if p * p <= cand):
            out.append(cand)
        cand += 1 if cand == 2 else 2
    return out


def rational_primes_up_to(x: int) -> list[int]:
    """All rational primes <= x by sieve."""
    if x < 2:
        return []
    mark = bytearray([1]) * (x + 1)
    mark[0] = mark[1] = 0
    for p in range(2, math.isqrt(x) + 1):
        if mark[p]:
            mark[p * p::p] = bytearray(len(mark[p * p::p]))
    return [i for i in range(2, x + 1) if mark[i]]
