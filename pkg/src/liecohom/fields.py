"""Exact scalars over the rationals and prime fields.

A :class:`Field` is a light, hashable description of the ground field
together with the arithmetic on its *raw* values.  Raw values are what
every other module stores in matrices and structure-constant tables:

* over ``Q``: ``int`` when the value is integral, otherwise a
  :class:`fractions.Fraction` (always lowest terms, positive denominator);
* over ``F_p``: an ``int`` in ``range(p)``.

:class:`FieldElement` wraps a raw value with its field for user-facing
arithmetic where mixing fields must be caught.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import FieldError


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


@dataclass(frozen=True)
class Field:
    """Ground field: ``Field(0)`` is Q, ``Field(p)`` is F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not is_prime(self.p):
            raise FieldError(f"F_p requires a prime p, got {self.p}")

    # -- identity -------------------------------------------------------

    @property
    def kind(self) -> str:
        return "Rationals" if self.p == 0 else "PrimeField"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self) -> str:
        return "Q" if self.p == 0 else f"Fp:{self.p}"

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``"Q"`` or ``"Fp:<p>"``."""
        t = text.strip()
        if t in ("Q", "QQ"):
            return cls(0)
        if t.startswith("Fp:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise FieldError(f"bad field spec {text!r}") from None
            return cls(p)
        raise FieldError(f"bad field spec {text!r}; expected 'Q' or 'Fp:<p>'")

    # -- conversion -----------------------------------------------------

    def __call__(self, x) -> int | Fraction:
        """Canonical raw value of ``x`` (int, Fraction, str or FieldElement)."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldError(f"element of {x.field} used in {self}")
            return x.value
        if isinstance(x, str):
            return self.parse_scalar(x)
        if isinstance(x, bool):
            x = int(x)
        if self.p == 0:
            if isinstance(x, int):
                return x
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            raise FieldError(f"cannot convert {x!r} to an exact rational")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise FieldError(f"{x} has denominator divisible by {self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        raise FieldError(f"cannot convert {x!r} to F_{self.p}")

    def parse_scalar(self, text: str) -> int | Fraction:
        t = text.strip()
        try:
            if self.p == 0:
                return self(Fraction(t))
            r = int(t)
        except (ValueError, ZeroDivisionError):
            raise FieldError(f"bad scalar {text!r} for {self}") from None
        if not 0 <= r < self.p:
            raise FieldError(f"residue {text!r} not in [0, {self.p})")
        return r

    def format(self, x) -> str:
        x = self(x)
        return str(x)

    def element(self, x) -> "FieldElement":
        return FieldElement(self, self(x))

    # -- raw arithmetic -------------------------------------------------

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a, b):
        return self(a + b)

    def sub(self, a, b):
        return self(a - b)

    def mul(self, a, b):
        return self(a * b)

    def neg(self, a):
        return self(-a)

    def inv(self, a):
        if a == 0:
            raise FieldError("division by zero")
        if self.p == 0:
            return self(1 / Fraction(a))
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self) -> range:
        if self.p == 0:
            raise FieldError("Q is infinite")
        return range(self.p)

    def vector(self, values: Iterable) -> list:
        return [self(v) for v in values]


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: int | Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", self.field(self.value))

    def _other(self, other) -> int | Fraction:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed fields: {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.div(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        if k < 0:
            return FieldElement(self.field, self.field.inv(self.value)) ** (-k)
        out = FieldElement(self.field, 1)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.field.format(self.value)

    @classmethod
    def from_string(cls, field: Field, text: str) -> "FieldElement":
        return cls(field, field.parse_scalar(text))


def field_arithmetic(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two elements of one field."""
    if not isinstance(a, FieldElement) or not isinstance(b, FieldElement):
        raise FieldError("field_arithmetic expects FieldElement operands")
    if a.field != b.field:
        raise FieldError(f"mixed fields: {a.field} and {b.field}")
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    if op not in ops:
        raise FieldError(f"unknown operation {op!r}")
    return ops[op](b)


# -- polynomials and root search ---------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    divs = [1]
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            divs = [x * d**k for x in divs for k in range(e + 1)]
        d += 1
    if n > 1:
        divs = divs + [x * n for x in divs]
    return sorted(divs)


def _unwrap(coeffs: Sequence, field: Field | None) -> tuple[list, Field]:
    if field is None:
        fields = {c.field for c in coeffs if isinstance(c, FieldElement)}
        if len(fields) > 1:
            raise FieldError("mixed fields in polynomial")
        field = fields.pop() if fields else QQ
    return [field(c) for c in coeffs], field


def rational_root_candidates(charpoly: Sequence, field: Field | None = None) -> set[FieldElement]:
    """Candidate roots of a monic polynomial given low-to-high.

    Over Q this is the rational root theorem applied after clearing
    denominators (plus 0); over F_p it is every element.
    """
    coeffs, field = _unwrap(charpoly, field)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if coeffs[-1] != 1:
        raise FieldError("characteristic polynomial must be monic")
    if field.p:
        return {FieldElement(field, r) for r in field.elements()}
    out = {FieldElement(field, 0)}
    scale = reduce(math.lcm, (Fraction(c).denominator for c in coeffs), 1)
    ints = [int(c * scale) for c in coeffs]
    nonzero = [c for c in ints if c != 0]
    low, lead = nonzero[0], nonzero[-1]
    if len(nonzero) == 1:
        return out
    for num in _divisors(low):
        for den in _divisors(lead):
            for s in (1, -1):
                out.add(FieldElement(field, field(Fraction(s * num, den))))
    return out


def poly_eval(coeffs: Sequence, x, field: Field):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return field(acc)


def poly_deflate(coeffs: Sequence, root, field: Field) -> list:
    """Divide low-to-high ``coeffs`` by (x - root); the root must be exact."""
    hi = list(reversed(coeffs))
    out = [hi[0]]
    for c in hi[1:]:
        out.append(field(c + out[-1] * root))
    if out[-1] != 0:
        raise FieldError(f"{root} is not a root")
    return list(reversed(out[:-1]))


def roots_with_multiplicity(coeffs: Sequence, field: Field) -> dict:
    """Map each root in ``field`` of a monic polynomial to its multiplicity."""
    coeffs = [field(c) for c in coeffs]
    roots: dict = {}
    for cand in sorted(rational_root_candidates(coeffs, field), key=lambda e: e.value):
        r = cand.value
        while len(coeffs) > 1 and poly_eval(coeffs, r, field) == 0:
            coeffs = poly_deflate(coeffs, r, field)
            roots[r] = roots.get(r, 0) + 1
    return roots
