"""Exact scalar arithmetic: the rationals and prime fields.

Scalars are plain ``fractions.Fraction`` values over the rationals and small
``Fp`` wrapper objects over a prime field, so all downstream code can use
ordinary operators.  A ``Field`` object is only needed to construct scalars,
parse them from text, and serialize them back.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidInput


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Fp:
    """Residue in a prime field, with operator arithmetic.

    Mixed arithmetic with ints is allowed (ints are reduced mod p); mixing
    residues from different primes is an error.
    """

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> "Fp":
        if isinstance(other, Fp):
            if other.p != self.p:
                raise InvalidInput(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise InvalidInput(f"denominator divisible by {self.p}")
            return Fp(other.numerator * pow(other.denominator, -1, self.p), self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else Fp(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else Fp(self.v - o.v, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else Fp(o.v - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else Fp(self.v * o.v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.v == 0:
            raise ZeroDivisionError("division by zero residue")
        return Fp(self.v * pow(o.v, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o.__truediv__(self)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __bool__(self):
        return self.v != 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"{self.v}~{self.p}"


class Field:
    """Constructor/serializer for scalars of one ground field."""

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise InvalidInput(f"{p} is not prime")
        self.p = p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def zero(self):
        return Fraction(0) if self.p is None else Fp(0, self.p)

    def one(self):
        return Fraction(1) if self.p is None else Fp(1, self.p)

    def of(self, x):
        """Coerce an int, Fraction, Fp or 'p/q' string into this field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p is None:
            if isinstance(x, Fp):
                raise InvalidInput("cannot lift a residue to the rationals")
            return Fraction(x)
        if isinstance(x, Fp):
            if x.p != self.p:
                raise InvalidInput(f"mixed moduli {self.p} and {x.p}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise InvalidInput(f"denominator divisible by {self.p}")
            return Fp(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Fp(int(x), self.p)

    def to_str(self, x) -> str:
        if isinstance(x, Fp):
            return str(x.v)
        return str(x)

    def elements(self):
        """Iterate over all field elements (prime fields only)."""
        if self.p is None:
            raise InvalidInput("cannot enumerate the rationals")
        return (Fp(v, self.p) for v in range(self.p))

    @property
    def tag(self) -> str:
        return "q" if self.p is None else f"fp:{self.p}"

    @staticmethod
    def from_tag(tag: str) -> "Field":
        if tag == "q":
            return Field()
        if tag.startswith("fp:"):
            return Field(int(tag[3:]))
        raise InvalidInput(f"unknown field tag {tag!r}")

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)
