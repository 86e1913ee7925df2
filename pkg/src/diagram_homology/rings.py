"""Exact coefficient rings: the integers, the integers mod m, and the rationals.

Elements are plain Python numbers: ``int`` for ``Z`` and ``Z/m`` (reduced to
the canonical residue ``0 <= x < m``) and :class:`fractions.Fraction` for ``Q``.
A :class:`Ring` is a small immutable descriptor that knows how to coerce and
combine them.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

Element = Union[int, Fraction]

INTEGERS = "Z"
INTEGERS_MOD = "Zmod"
RATIONALS = "Q"


class RingError(ValueError):
    pass


class NotAUnitError(RingError):
    pass


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Ring:
    kind: str
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in (INTEGERS, INTEGERS_MOD, RATIONALS):
            raise RingError(f"unknown ring kind {self.kind!r}")
        if self.kind == INTEGERS_MOD:
            if self.modulus < 2:
                raise RingError("modulus must be at least 2")
        elif self.modulus != 0:
            raise RingError(f"{self.kind} takes no modulus")

    # -- descriptors -------------------------------------------------------

    @property
    def is_field(self) -> bool:
        if self.kind == RATIONALS:
            return True
        if self.kind == INTEGERS_MOD:
            return _is_prime(self.modulus)
        return False

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == INTEGERS_MOD else 0

    def __str__(self) -> str:
        if self.kind == INTEGERS_MOD:
            return f"Zmod:{self.modulus}"
        return self.kind

    # -- elements ----------------------------------------------------------

    @property
    def zero(self) -> Element:
        return Fraction(0) if self.kind == RATIONALS else 0

    @property
    def one(self) -> Element:
        return Fraction(1) if self.kind == RATIONALS else 1

    def __call__(self, x) -> Element:
        """Coerce an int, Fraction, or literal string into this ring."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        elif not isinstance(x, (int, Fraction)):
            try:
                x = operator.index(x)
            except TypeError:
                raise RingError(f"cannot coerce {x!r} into {self}") from None
        if self.kind == RATIONALS:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator == 1:
                x = x.numerator
            elif self.kind == INTEGERS:
                raise RingError(f"{x} is not an integer")
            else:
                return self.mul(x.numerator, self.inverse(x.denominator % self.modulus))
        if self.kind == INTEGERS_MOD:
            return x % self.modulus
        return x

    def add(self, a: Element, b: Element) -> Element:
        return self._reduce(a + b)

    def sub(self, a: Element, b: Element) -> Element:
        return self._reduce(a - b)

    def neg(self, a: Element) -> Element:
        return self._reduce(-a)

    def mul(self, a: Element, b: Element) -> Element:
        return self._reduce(a * b)

    def pow(self, a: Element, k: int) -> Element:
        if k < 0:
            return self.pow(self.inverse(a), -k)
        if self.kind == INTEGERS_MOD:
            return pow(a, k, self.modulus)
        return a**k

    def eq(self, a: Element, b: Element) -> bool:
        return self._reduce(a - b) == 0

    def is_zero(self, a: Element) -> bool:
        return self._reduce(a) == 0

    def _reduce(self, a: Element) -> Element:
        if self.kind == INTEGERS_MOD:
            return a % self.modulus
        return a

    # -- units -------------------------------------------------------------

    def is_invertible(self, x: Element) -> bool:
        x = self(x)
        if self.kind == INTEGERS:
            return abs(x) == 1
        if self.kind == INTEGERS_MOD:
            return gcd(x, self.modulus) == 1
        return x != 0

    def inverse(self, x: Element) -> Element:
        x = self(x)
        if not self.is_invertible(x):
            raise NotAUnitError(f"{x} is not a unit in {self}")
        if self.kind == INTEGERS:
            return x
        if self.kind == INTEGERS_MOD:
            return pow(x, -1, self.modulus)
        return 1 / x

    def div(self, a: Element, b: Element) -> Element:
        return self.mul(a, self.inverse(b))


ZZ = Ring(INTEGERS)
QQ = Ring(RATIONALS)


def Zmod(m: int) -> Ring:
    return Ring(INTEGERS_MOD, m)


def GF(p: int) -> Ring:
    if not _is_prime(p):
        raise RingError(f"{p} is not prime")
    return Ring(INTEGERS_MOD, p)


def parse_ring(spec: str) -> Ring:
    """Parse ``Z``, ``Q``, ``Zmod:6`` or ``Fp:5``."""
    s = spec.strip()
    if s in ("Z", "ZZ"):
        return ZZ
    if s in ("Q", "QQ"):
        return QQ
    head, sep, tail = s.partition(":")
    if sep and head in ("Zmod", "Fp"):
        try:
            m = int(tail)
        except ValueError:
            raise RingError(f"bad modulus in ring spec {spec!r}") from None
        return GF(m) if head == "Fp" else Zmod(m)
    raise RingError(f"unrecognised ring spec {spec!r}")


def parse_element(ring: Ring, literal: str) -> Element:
    """Parse an integer or fraction literal; fractions are accepted only over Q."""
    try:
        value = Fraction(literal.strip())
    except (ValueError, ZeroDivisionError):
        raise RingError(f"bad ring element literal {literal!r}") from None
    if value.denominator != 1 and ring.kind != RATIONALS:
        raise RingError(f"fraction {literal!r} only allowed over Q")
    return ring(value)


@dataclass(frozen=True)
class Params:
    """The loop parameter ``delta`` and the contractible-component parameter ``epsilon``."""

    delta: Element
    epsilon: Element

    @classmethod
    def make(cls, ring: Ring, delta=0, epsilon=1) -> "Params":
        return cls(ring(delta), ring(epsilon))
