"""Exact scalars: Python ints, ``fractions.Fraction`` and prime-field residues.

Integers and rationals are the built-in ``int`` and ``Fraction`` types. Prime
field elements are :class:`Fp` values; a :class:`FieldKind` tags which of the
two fields a computation lives in and converts raw numbers into it.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

MAX_MODULUS = 10**6


class FieldMismatch(ValueError):
    pass


def is_prime(p: int) -> bool:
    """Trial division; moduli in this package stay below 10**6."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


# Pascal triangle, grown row by row on demand. Reads of completed rows need no
# lock; growth is serialized.
_pascal: list[list[int]] = [[1]]
_pascal_lock = threading.Lock()


def _grow_pascal(m: int) -> None:
    with _pascal_lock:
        while len(_pascal) <= m:
            prev = _pascal[-1]
            row = [1] * (len(prev) + 1)
            for k in range(1, len(prev)):
                row[k] = prev[k - 1] + prev[k]
            _pascal.append(row)


def binomial(m: int, k: int) -> int:
    """C(m, k) for m >= 0; zero outside 0 <= k <= m.

    A negative upper index raises ``ValueError`` instead of being extended.
    """
    if m < 0:
        raise ValueError(f"binomial upper index must be nonnegative, got {m}")
    if k < 0 or k > m:
        return 0
    if m >= len(_pascal):
        if m > 2000:
            return math.comb(m, k)
        _grow_pascal(m)
    return _pascal[m][k]


class Fp:
    """Residue modulo a prime ``p``; immutable."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("Fp is immutable")

    def _coerce(self, other) -> int | None:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.value, e, self.p), self.p)

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * Fp(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(o, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def field_inverse(x: Fp) -> Fp:
    return x.inverse()


Scalar = Union[int, Fraction, Fp]


@dataclass(frozen=True)
class FieldKind:
    """Either the rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or not 2 <= self.p <= MAX_MODULUS:
                raise ValueError(f"modulus must be an integer in [2, {MAX_MODULUS}], got {self.p!r}")
            if not is_prime(self.p):
                raise ValueError(f"modulus {self.p} is not prime")

    @classmethod
    def rational(cls) -> "FieldKind":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "FieldKind":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldKind":
        """Parse ``rational`` or ``fp:P``."""
        text = text.strip()
        if text == "rational":
            return cls.rational()
        if text.startswith("fp:"):
            return cls.prime(int(text[3:]))
        raise ValueError(f"unknown field {text!r}")

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __str__(self):
        return "rational" if self.p is None else f"fp:{self.p}"

    def element(self, x) -> Scalar:
        """Convert an int, Fraction, numeric string or Fp into this field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            if isinstance(x, Fp):
                raise FieldMismatch("prime-field element used where a rational was expected")
            return Fraction(x)
        if isinstance(x, Fp):
            if x.p != self.p:
                raise FieldMismatch(f"F_{x.p} element used in F_{self.p}")
            return x
        x = Fraction(x)
        num = Fp(x.numerator, self.p)
        if x.denominator == 1:
            return num
        return num / x.denominator

    @property
    def zero(self) -> Scalar:
        return self.element(0)

    @property
    def one(self) -> Scalar:
        return self.element(1)

    def contains(self, x) -> bool:
        if self.p is None:
            return isinstance(x, (int, Fraction)) and not isinstance(x, bool)
        return isinstance(x, Fp) and x.p == self.p

    def to_residue(self, x) -> int:
        """Canonical integer residue of ``x`` in F_p."""
        if self.p is None:
            raise ValueError("rationals have no residues")
        return self.element(x).value


def format_scalar(x: Scalar) -> str:
    """Exact decimal text: ``7``, ``-3/4``; prime residues print their representative."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)
