"""Sparse multivariate polynomials with exact coefficients.

A `PolyRing` fixes the variable names, the coefficient field and the
monomial order; it is an immutable value object (two structurally equal
rings are interchangeable).  A `Polynomial` stores its nonzero terms as a
tuple of ``(exponent_vector, coefficient)`` pairs, strictly descending in
the ring's order, so equality and printing are structural.

Arithmetic between polynomials of different rings is rejected; use
`transport` to move a polynomial into a ring that contains (by name) all
of its variables.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import (
    CoefficientError,
    ExponentOverflowError,
    RingMismatchError,
)
from .fields import QQ, RationalField
from .orders import Block, GRevLex, Lex, MonomialOrder, Weighted, grevlex

# Exponents are kept machine-word sized; growth past this bound is a bug
# in the caller (desk-scale degrees are tiny), so it is an error, not a
# silent promotion to big integers.
EXPONENT_LIMIT = 2**62


class PolyRing:
    """A polynomial ring k[x1..xn] with a fixed monomial order."""

    __slots__ = ("variables", "field", "order", "_index")

    def __init__(self, variables, field=QQ, order: MonomialOrder = grevlex):
        variables = tuple(str(v) for v in variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        if isinstance(order, Block) and order.block_size > len(variables):
            raise ValueError("elimination block larger than the variable count")
        if isinstance(order, Weighted) and len(order.weights) != len(variables):
            raise ValueError("weight vector length does not match variable count")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "order", order)
        object.__setattr__(
            self, "_index", {name: i for i, name in enumerate(variables)}
        )

    def __setattr__(self, name, value):
        raise AttributeError("PolyRing is immutable")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def key(self, exps):
        return self.order.key(exps)

    # -- constructors -------------------------------------------------

    def poly(self, coefficients: dict) -> "Polynomial":
        """Build a polynomial from an {exponent_vector: coefficient} map."""
        terms = []
        for exps, c in coefficients.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise ValueError(
                    f"exponent vector {exps} has wrong length for {self}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = self.field.coerce(c)
            if c != self.field.zero:
                terms.append((exps, c))
        terms.sort(key=lambda t: self.key(t[0]), reverse=True)
        return Polynomial(self, tuple(terms))

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        if c == self.field.zero:
            return self.zero
        return Polynomial(self, (((0,) * self.nvars, c),))

    def var(self, name: str) -> "Polynomial":
        if name not in self._index:
            raise ValueError(f"{name} is not a variable of {self}")
        exps = tuple(
            1 if i == self._index[name] else 0 for i in range(self.nvars)
        )
        return Polynomial(self, ((exps, self.field.one),))

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(name) for name in self.variables)

    # -- derived rings -------------------------------------------------

    def extend(self, new_vars, where: str = "back", order=None) -> "PolyRing":
        """Ring with extra variables at the front or back.

        Existing polynomials move over coefficient-identically via
        `transport`.
        """
        new_vars = tuple(str(v) for v in new_vars)
        clash = set(new_vars) & set(self.variables)
        if clash:
            raise ValueError(f"variable names already present: {sorted(clash)}")
        if where == "back":
            variables = self.variables + new_vars
        elif where == "front":
            variables = new_vars + self.variables
        else:
            raise ValueError("where must be 'front' or 'back'")
        return PolyRing(variables, self.field, order or self.order)

    def restricted_order(self) -> MonomialOrder:
        """Order to reuse on a subring: lex and grevlex restrict; the
        block/weighted orders do not, so fall back to grevlex."""
        if isinstance(self.order, (Lex, GRevLex)):
            return self.order
        return grevlex

    # -- value-object protocol ----------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __repr__(self):
        base = f"{self.field!r}[{','.join(self.variables)}]"
        if self.order != grevlex:
            return f"{base} with order {self.order!r}"
        return base


def _check_same_ring(p: "Polynomial", q: "Polynomial"):
    if p.ring != q.ring:
        raise RingMismatchError(
            f"operands live in different rings: {p.ring!r} vs {q.ring!r}"
        )


def _mul_exps(a, b):
    out = tuple(x + y for x, y in zip(a, b))
    if any(e > EXPONENT_LIMIT for e in out):
        raise ExponentOverflowError(f"exponent exceeds {EXPONENT_LIMIT}")
    return out


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _div_exps(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _lcm_exps(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial; terms strictly descending in the order."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: tuple):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- inspection ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def leading_term(self):
        if not self.terms:
            return None
        return self.terms[0]

    @property
    def leading_monomial(self):
        if not self.terms:
            return None
        return self.terms[0][0]

    @property
    def leading_coefficient(self):
        if not self.terms:
            return None
        return self.terms[0][1]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def is_constant(self) -> bool:
        return not self.terms or all(e == 0 for e in self.terms[0][0])

    def constant_value(self):
        """Coefficient value of a constant polynomial."""
        if self.is_zero:
            return self.ring.field.zero
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms[0][1]

    def degree_in(self, name: str) -> int:
        i = self.ring._index[name]
        if not self.terms:
            return -1
        return max(e[i] for e, _ in self.terms)

    def uses_variable(self, name: str) -> bool:
        i = self.ring._index[name]
        return any(e[i] for e, _ in self.terms)

    # -- arithmetic ----------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, Polynomial):
            _check_same_ring(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return _merge(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return _merge(self, other, -1)

    def __rsub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return _merge(other, self, -1)

    def __neg__(self):
        field = self.ring.field
        return Polynomial(
            self.ring, tuple((e, field.neg(c)) for e, c in self.terms)
        )

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.ring.zero
        field = self.ring.field
        acc: dict = {}
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                e = _mul_exps(ea, eb)
                c = field.mul(ca, cb)
                if e in acc:
                    s = field.add(acc[e], c)
                    if s == field.zero:
                        del acc[e]
                    else:
                        acc[e] = s
                elif c != field.zero:
                    acc[e] = c
        terms = sorted(acc.items(), key=lambda t: self.ring.key(t[0]), reverse=True)
        return Polynomial(self.ring, tuple(terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        """Multiply by a coefficient."""
        field = self.ring.field
        c = field.coerce(c)
        if c == field.zero:
            return self.ring.zero
        return Polynomial(
            self.ring, tuple((e, field.mul(k, c)) for e, k in self.terms)
        )

    def term_mul(self, exps, coeff) -> "Polynomial":
        """Multiply by the single term coeff * x^exps."""
        field = self.ring.field
        coeff = field.coerce(coeff)
        if coeff == field.zero or self.is_zero:
            return self.ring.zero
        return Polynomial(
            self.ring,
            tuple((_mul_exps(e, exps), field.mul(c, coeff)) for e, c in self.terms),
        )

    # -- normalization -------------------------------------------------

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        lc = self.leading_coefficient
        if lc == self.ring.field.one:
            return self
        inv = self.ring.field.invert(lc)
        return self.scale(inv)

    def content(self):
        """Positive rational content (gcd of coefficients); 0 for the zero
        polynomial.  Only meaningful over the rationals."""
        if not isinstance(self.ring.field, RationalField):
            raise CoefficientError("content is defined over the rationals")
        if self.is_zero:
            return Fraction(0)
        num = 0
        den = 1
        for _, c in self.terms:
            num = gcd(num, abs(c.numerator))
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Polynomial":
        """Divide out the content and normalize the leading sign (over QQ);
        over GF(p) just make the polynomial monic."""
        if self.is_zero:
            return self
        if not isinstance(self.ring.field, RationalField):
            return self.monic()
        c = self.content()
        if self.leading_coefficient < 0:
            c = -c
        return self.scale(1 / c)

    # -- comparison / rendering ----------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        field = self.ring.field
        names = self.ring.variables
        pieces = []
        for e, c in self.terms:
            mono = "*".join(
                name if k == 1 else f"{name}^{k}"
                for name, k in zip(names, e)
                if k > 0
            )
            negative = isinstance(c, Fraction) and c < 0
            mag = -c if negative else c
            if mono:
                body = mono if mag == field.one else f"{field.render(mag)}*{mono}"
            else:
                body = field.render(mag)
            pieces.append((negative, body))
        out = []
        for i, (negative, body) in enumerate(pieces):
            if i == 0:
                out.append(f"-{body}" if negative else body)
            else:
                out.append(f" - {body}" if negative else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return str(self)


def _merge(p: Polynomial, q: Polynomial, sign: int) -> Polynomial:
    """Merge two sorted term lists (sign applies to q)."""
    ring = p.ring
    field = ring.field
    key = ring.key
    out = []
    i = j = 0
    tp, tq = p.terms, q.terms
    while i < len(tp) and j < len(tq):
        ea, ca = tp[i]
        eb, cb = tq[j]
        if ea == eb:
            c = field.add(ca, cb) if sign > 0 else field.sub(ca, cb)
            if c != field.zero:
                out.append((ea, c))
            i += 1
            j += 1
        elif key(ea) > key(eb):
            out.append((ea, ca))
            i += 1
        else:
            out.append((eb, cb if sign > 0 else field.neg(cb)))
            j += 1
    out.extend(tp[i:])
    for eb, cb in tq[j:]:
        out.append((eb, cb if sign > 0 else field.neg(cb)))
    return Polynomial(ring, tuple(out))


def transport(p: Polynomial, ring: PolyRing) -> Polynomial:
    """Re-express p in another ring containing all of p's variables by name.

    Works for extensions, permutations and restrictions (restriction fails
    if p actually uses a variable the target lacks).  Coefficients move
    identically; the fields must agree.
    """
    if p.ring == ring:
        return p
    if p.ring.field != ring.field:
        raise RingMismatchError(
            f"coefficient fields differ: {p.ring.field!r} vs {ring.field!r}"
        )
    positions = []
    for i, name in enumerate(p.ring.variables):
        j = ring._index.get(name)
        positions.append(j)
    coeffs = {}
    for e, c in p.terms:
        out = [0] * ring.nvars
        for i, k in enumerate(e):
            if k == 0:
                continue
            j = positions[i]
            if j is None:
                raise RingMismatchError(
                    f"{p} uses variable {p.ring.variables[i]!r}, "
                    f"absent from {ring!r}"
                )
            out[j] = k
        coeffs[tuple(out)] = c
    return ring.poly(coeffs)


def multivariate_division(p: Polynomial, divisors) -> tuple:
    """Divide p by an ordered list of divisors.

    Returns ``(quotients, remainder)`` with ``p = sum(q_i * d_i) + r`` and
    no term of r divisible by any divisor's leading term.  Reduction always
    uses the first divisor in list order whose leading term divides the
    current term, which makes the output deterministic.
    """
    divisors = list(divisors)
    ring = p.ring
    for d in divisors:
        _check_same_ring(p, d)
        if d.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
    field = ring.field
    quotients = [ring.zero for _ in divisors]
    remainder = ring.zero
    work = p
    while not work.is_zero:
        e, c = work.terms[0]
        for i, d in enumerate(divisors):
            de, dc = d.terms[0]
            if _divides(de, e):
                q_exps = _div_exps(e, de)
                q_coeff = field.div(c, dc)
                quotients[i] = quotients[i] + Polynomial(
                    ring, ((q_exps, q_coeff),)
                )
                work = work - d.term_mul(q_exps, q_coeff)
                break
        else:
            lt = Polynomial(ring, ((e, c),))
            remainder = remainder + lt
            work = work - lt
    return quotients, remainder


def exact_division(p: Polynomial, d: Polynomial) -> Polynomial:
    """Quotient p/d when d divides p exactly; raises otherwise."""
    (q,), r = multivariate_division(p, [d])
    if not r.is_zero:
        raise ValueError(f"{d} does not divide {p}")
    return q
