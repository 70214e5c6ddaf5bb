"""Coefficient fields: exact rationals and prime fields GF(p).

Coefficient values are plain Python objects (`Fraction` for the rationals,
`int` in ``[0, p)`` for GF(p)); the field object supplies the arithmetic so
polynomial code stays generic.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CoefficientError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RationalField:
    """The field of exact rationals; values are `fractions.Fraction`."""

    name = "QQ"
    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise CoefficientError(f"cannot interpret {value!r} as a rational")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def invert(self, a):
        if a == 0:
            raise CoefficientError("division by zero")
        return 1 / a

    def div(self, a, b):
        return a * self.invert(b)

    def render(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """GF(p) for a prime p < 2**31; values are ints in ``[0, p)``."""

    characteristic: int

    def __init__(self, p: int):
        if not isinstance(p, int) or not 2 <= p < 2**31:
            raise CoefficientError(f"prime field modulus out of range: {p!r}")
        if not _is_prime(p):
            raise CoefficientError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, value):
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise CoefficientError(
                    f"denominator of {value} is divisible by {self.p}"
                )
            return value.numerator * pow(den, -1, self.p) % self.p
        raise CoefficientError(f"cannot interpret {value!r} in {self.name}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def invert(self, a):
        if a % self.p == 0:
            raise CoefficientError("division by zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.invert(b) % self.p

    def render(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """Return the (cached) prime field with p elements."""
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]
