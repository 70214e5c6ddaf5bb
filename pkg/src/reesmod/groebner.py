"""Buchberger's algorithm, normal forms and reduced Groebner bases.

The reduced basis is the canonical form used everywhere else for ideal
equality and membership.  Determinism contract: for a fixed input list the
output is fixed — pairs are selected by smallest lcm in the ring order
(normal strategy), reduction is first-match in basis order, and the final
basis is auto-reduced, monic and sorted ascending by leading monomial.

Pair pruning uses the two classical Buchberger criteria in their
Gebauer-Moeller formulation (coprime leading terms, chain criterion).
Intermediate polynomials over the rationals are kept content-free to
avoid big-integer blowup in elimination orders.

Long computations check a cooperative cancellation hook between S-pair
reductions; install one with `cancellation` or pass ``cancel=`` directly.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from fractions import Fraction

from .errors import ComputationCancelled, OrderMismatchError, RingMismatchError
from .fields import RationalField
from .rings import (
    Polynomial,
    PolyRing,
    _div_exps,
    _divides,
    _lcm_exps,
)

_cancel_hook: ContextVar = ContextVar("reesmod_gb_cancel", default=None)

# When set (via record_bases), every basis produced by buchberger() is
# appended here so a test run can re-verify the S-polynomial postcondition
# wholesale afterwards.
_recorder: ContextVar = ContextVar("reesmod_gb_recorder", default=None)


@contextmanager
def cancellation(check):
    """Install a cooperative cancellation hook for the enclosed block.

    ``check`` is called with no arguments between S-pair reductions; a
    truthy return aborts the computation with `ComputationCancelled`.
    """
    token = _cancel_hook.set(check)
    try:
        yield
    finally:
        _cancel_hook.reset(token)


@contextmanager
def record_bases():
    """Collect every Groebner basis computed inside the block."""
    bases: list[GroebnerBasis] = []
    token = _recorder.set(bases)
    try:
        yield bases
    finally:
        _recorder.reset(token)


def _maybe_cancel(local):
    check = local or _cancel_hook.get()
    if check is not None and check():
        raise ComputationCancelled("Groebner basis computation cancelled")


class GroebnerBasis:
    """A reduced Groebner basis: monic, auto-reduced, sorted ascending."""

    __slots__ = ("ring", "polys")

    def __init__(self, ring: PolyRing, polys: tuple):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "polys", polys)

    def __setattr__(self, name, value):
        raise AttributeError("GroebnerBasis is immutable")

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ring == other.ring and self.polys == other.polys

    def __hash__(self):
        return hash((self.ring, self.polys))

    def __repr__(self):
        return "<" + ", ".join(str(p) for p in self.polys) + ">"

    @property
    def is_zero_ideal(self) -> bool:
        return not self.polys

    @property
    def is_unit_ideal(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant()

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self)

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """The classical S-polynomial (leading terms cancel)."""
    ef, cf = f.terms[0]
    eg, cg = g.terms[0]
    field = f.ring.field
    lcm = _lcm_exps(ef, eg)
    return f.term_mul(_div_exps(lcm, ef), field.invert(cf)) - g.term_mul(
        _div_exps(lcm, eg), field.invert(cg)
    )


def normal_form(p: Polynomial, basis) -> Polynomial:
    """Fully reduce p (head and tail) against a list of nonzero divisors."""
    polys = list(basis)
    if not polys:
        return p
    ring = p.ring
    for b in polys:
        if b.ring != ring:
            raise RingMismatchError("normal form across different rings")
    field = ring.field
    remainder = ring.zero
    work = p
    heads = [b.terms[0] for b in polys]
    while not work.is_zero:
        e, c = work.terms[0]
        for b, (be, bc) in zip(polys, heads):
            if _divides(be, e):
                work = work - b.term_mul(_div_exps(e, be), field.div(c, bc))
                break
        else:
            lt = Polynomial(ring, ((e, c),))
            remainder = remainder + lt
            work = work - lt
    return remainder


def _primitive_scalar(p: Polynomial):
    """Scalar s with p.scale(s) content-free (QQ) or monic (GF)."""
    if isinstance(p.ring.field, RationalField):
        c = p.content()
        if p.leading_coefficient < 0:
            c = -c
        return 1 / c
    return p.ring.field.invert(p.leading_coefficient)


class _Tracked:
    """Polynomial paired with its expression in the original generators."""

    __slots__ = ("poly", "rep")

    def __init__(self, poly, rep):
        self.poly = poly
        self.rep = rep


def _reduce_tracked(item, basis, ring, field):
    """Normal form of item.poly against basis, mirroring on the rep."""
    remainder = ring.zero
    work = item.poly
    rep = list(item.rep) if item.rep is not None else None
    while not work.is_zero:
        e, c = work.terms[0]
        for other in basis:
            be, bc = other.poly.terms[0]
            if _divides(be, e):
                q_exps = _div_exps(e, be)
                q_coeff = field.div(c, bc)
                work = work - other.poly.term_mul(q_exps, q_coeff)
                if rep is not None:
                    for k, r in enumerate(other.rep):
                        if not r.is_zero:
                            rep[k] = rep[k] - r.term_mul(q_exps, q_coeff)
                break
        else:
            lt = Polynomial(ring, ((e, c),))
            remainder = remainder + lt
            work = work - lt
    return _Tracked(remainder, rep)


def _buchberger_tracked(gens, *, cancel=None, track=False):
    gens = list(gens)
    if not gens:
        return [], []
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("generators live in different rings")
    field = ring.field

    basis: list[_Tracked] = []
    pairs: list[tuple] = []  # (i, j) with i < j

    def lm(i):
        return basis[i].poly.terms[0][0]

    def add_element(item):
        t = len(basis)
        lm_t = item.poly.terms[0][0]
        lcms = [_lcm_exps(lm(i), lm_t) for i in range(t)]
        # chain (M) criterion among the new pairs
        keep = []
        for i in range(t):
            li = lcms[i]
            if any(
                lcms[j] != li and _divides(lcms[j], li)
                for j in range(t)
                if j != i
            ):
                continue
            keep.append(i)
        # among equal lcms keep the earliest partner
        seen = {}
        for i in keep:
            seen.setdefault(lcms[i], i)
        survivors = sorted(seen.values())
        # coprime (first) criterion
        fresh = []
        for i in survivors:
            ei = lm(i)
            if all(min(a, b) == 0 for a, b in zip(ei, lm_t)):
                continue
            fresh.append((i, t))
        # chain criterion against the existing pair queue
        kept_old = []
        for i, j in pairs:
            lij = _lcm_exps(lm(i), lm(j))
            if (
                _divides(lm_t, lij)
                and _lcm_exps(lm(i), lm_t) != lij
                and _lcm_exps(lm(j), lm_t) != lij
            ):
                continue
            kept_old.append((i, j))
        pairs[:] = kept_old + fresh
        basis.append(item)

    for k, g in enumerate(gens):
        if g.is_zero:
            continue
        s = _primitive_scalar(g)
        rep = None
        if track:
            rep = [ring.zero] * len(gens)
            rep[k] = ring.constant(s)
        add_element(_Tracked(g.scale(s), rep))

    key = ring.key
    while pairs:
        _maybe_cancel(cancel)
        best = min(pairs, key=lambda ij: (key(_lcm_exps(lm(ij[0]), lm(ij[1]))), ij))
        pairs.remove(best)
        i, j = best
        fi, fj = basis[i], basis[j]
        ei, ci = fi.poly.terms[0]
        ej, cj = fj.poly.terms[0]
        lcm = _lcm_exps(ei, ej)
        ui, uj = _div_exps(lcm, ei), _div_exps(lcm, ej)
        inv_i, inv_j = field.invert(ci), field.invert(cj)
        s_poly = fi.poly.term_mul(ui, inv_i) - fj.poly.term_mul(uj, inv_j)
        rep = None
        if track:
            rep = [
                a.term_mul(ui, inv_i) - b.term_mul(uj, inv_j)
                for a, b in zip(fi.rep, fj.rep)
            ]
        reduced = _reduce_tracked(_Tracked(s_poly, rep), basis, ring, field)
        if reduced.poly.is_zero:
            continue
        s = _primitive_scalar(reduced.poly)
        add_element(
            _Tracked(
                reduced.poly.scale(s),
                [r.scale(s) for r in reduced.rep] if track else None,
            )
        )

    # minimalize: drop elements whose leading monomial another one divides
    order_idx = sorted(range(len(basis)), key=lambda i: (key(lm(i)), i))
    minimal: list[_Tracked] = []
    for i in order_idx:
        mi = lm(i)
        if any(_divides(m.poly.terms[0][0], mi) for m in minimal):
            continue
        minimal.append(basis[i])
    # tail-reduce each element against the others, then make monic
    reduced_basis: list[_Tracked] = []
    for pos, item in enumerate(minimal):
        others = minimal[:pos] + minimal[pos + 1 :]
        red = _reduce_tracked(item, others, ring, field)
        inv = field.invert(red.poly.leading_coefficient)
        red.poly = red.poly.scale(inv)
        if track:
            red.rep = [r.scale(inv) for r in red.rep]
        minimal[pos] = red
        reduced_basis.append(red)
    reduced_basis.sort(key=lambda m: key(m.poly.terms[0][0]))
    return (
        [m.poly for m in reduced_basis],
        [m.rep for m in reduced_basis] if track else [],
    )


def buchberger(gens, *, cancel=None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Zero generators are discarded; the empty input yields the zero ideal.
    """
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        raise ValueError("cannot infer the ring of an empty generator list")
    polys, _ = _buchberger_tracked(gens, cancel=cancel)
    gb = GroebnerBasis(gens[0].ring, tuple(polys))
    bases = _recorder.get()
    if bases is not None:
        bases.append(gb)
    return gb


def groebner_basis_of(ring: PolyRing, gens, *, cancel=None) -> GroebnerBasis:
    """Like `buchberger` but usable for the zero ideal (needs the ring)."""
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        return GroebnerBasis(ring, ())
    return buchberger(gens, cancel=cancel)


def buchberger_with_lift(gens, *, cancel=None):
    """Reduced basis plus, for each element, its expression in ``gens``.

    Returns ``(basis_polys, reps)`` where ``basis_polys[i] ==
    sum(reps[i][k] * gens[k])`` exactly.
    """
    gens = list(gens)
    nonzero = [g for g in gens if not g.is_zero]
    if not nonzero:
        return [], []
    polys, reps = _buchberger_tracked(nonzero, cancel=cancel, track=True)
    if len(nonzero) != len(gens):
        # re-spread representation vectors over the original positions
        ring = nonzero[0].ring
        nonzero_pos = [k for k, g in enumerate(gens) if not g.is_zero]
        spread = []
        for rep in reps:
            full = [ring.zero] * len(gens)
            for k, r in zip(nonzero_pos, rep):
                full[k] = r
            spread.append(full)
        reps = spread
    return polys, reps


def ideal_equal(g1: GroebnerBasis, g2: GroebnerBasis) -> bool:
    """Equality of ideals = structural equality of reduced bases."""
    if g1.ring != g2.ring:
        if (
            g1.ring.variables == g2.ring.variables
            and g1.ring.field == g2.ring.field
        ):
            raise OrderMismatchError(
                "reduced bases are only canonical per monomial order"
            )
        raise RingMismatchError("ideal comparison across different rings")
    return g1.polys == g2.polys


def verify_buchberger_postcondition(gb: GroebnerBasis) -> bool:
    """Wholesale check: every S-polynomial of basis pairs reduces to zero."""
    polys = list(gb.polys)
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if not normal_form(s_polynomial(polys[i], polys[j]), polys).is_zero:
                return False
    return True
