"""Ideals, fractional ideals and ring maps, with the standard toolkit:
sum, product, power, intersection, quotient, saturation, elimination,
kernels of algebra maps, regular-sequence testing and denominator ideals.

An `Ideal` remembers its generator list as given (several constructions
depend on the listed order) and lazily caches the reduced Groebner basis;
the cache is the only mutable slot and is guarded by a lock.
"""

from __future__ import annotations

import threading

from .errors import RingMismatchError
from .groebner import (
    GroebnerBasis,
    buchberger_with_lift,
    groebner_basis_of,
    ideal_equal,
    normal_form,
)
from .orders import Block
from .rings import (
    Polynomial,
    PolyRing,
    exact_division,
    multivariate_division,
    transport,
)


class Ideal:
    """An ideal of a polynomial ring, given by an ordered generator list."""

    def __init__(self, ring: PolyRing, generators):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring.constant(g)
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} not in {ring!r}")
            if not g.is_zero:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb: GroebnerBasis | None = None
        self._gb_lock = threading.Lock()

    def groebner_basis(self, *, cancel=None) -> GroebnerBasis:
        if self._gb is None:
            with self._gb_lock:
                if self._gb is None:
                    self._gb = groebner_basis_of(
                        self.ring, self.generators, cancel=cancel
                    )
        return self._gb

    # -- membership -----------------------------------------------------

    def normal_form(self, p: Polynomial) -> Polynomial:
        return self.groebner_basis().normal_form(p)

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "Ideal") -> bool:
        """Ideal equality via canonical reduced bases."""
        return ideal_equal(self.groebner_basis(), other.groebner_basis())

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.groebner_basis().is_unit_ideal

    # -- lattice operations ----------------------------------------------

    def _require_same_ring(self, other: "Ideal"):
        if self.ring != other.ring:
            raise RingMismatchError("ideals live in different rings")

    def __add__(self, other: "Ideal") -> "Ideal":
        self._require_same_ring(other)
        return Ideal(self.ring, self.generators + other.generators)

    def product(self, other: "Ideal") -> "Ideal":
        self._require_same_ring(other)
        gens = []
        seen = set()
        for a in self.generators:
            for b in other.generators:
                p = a * b
                if p.terms not in seen:
                    seen.add(p.terms)
                    gens.append(p)
        return Ideal(self.ring, gens)

    def power(self, n: int) -> "Ideal":
        if n < 0:
            raise ValueError("ideal power needs n >= 0")
        result = Ideal(self.ring, [self.ring.one])
        for _ in range(n):
            result = result.product(self)
        return result

    def intersect(self, other: "Ideal") -> "Ideal":
        """I ∩ J by the auxiliary-variable elimination ⟨wI, (1-w)J⟩ ∩ A."""
        self._require_same_ring(other)
        if self.is_zero or other.is_zero:
            return Ideal(self.ring, [])
        w = _fresh_name("w", self.ring.variables)
        ext = PolyRing((w,) + self.ring.variables, self.ring.field, Block(1))
        wv = ext.var(w)
        gens = [wv * transport(g, ext) for g in self.generators]
        gens += [(ext.one - wv) * transport(g, ext) for g in other.generators]
        return eliminate(Ideal(ext, gens), [w], target_ring=self.ring)

    def quotient(self, g: Polynomial) -> "Ideal":
        """(I : g), the elements whose product with g lands in I."""
        if not isinstance(g, Polynomial):
            g = self.ring.constant(g)
        if g.is_zero:
            raise ValueError("ideal quotient by zero")
        if g.ring != self.ring:
            raise RingMismatchError("quotient divisor in a different ring")
        meet = self.intersect(Ideal(self.ring, [g]))
        return Ideal(self.ring, [exact_division(m, g) for m in meet.generators])

    def quotient_ideal(self, other: "Ideal") -> "Ideal":
        """(I : J) = intersection of (I : g) over J's generators."""
        self._require_same_ring(other)
        if other.is_zero:
            raise ValueError("ideal quotient by the zero ideal")
        result = None
        for g in other.generators:
            q = self.quotient(g)
            result = q if result is None else result.intersect(q)
        return result

    def saturation(self, other: "Ideal") -> "Ideal":
        """(I : J^∞): iterate the quotient until the basis stabilizes."""
        self._require_same_ring(other)
        if other.is_zero:
            raise ValueError("saturation by the zero ideal")
        current = self
        while True:
            step = current.quotient_ideal(other)
            if ideal_equal(step.groebner_basis(), current.groebner_basis()):
                return current
            current = step

    def saturation_principal(self, g: Polynomial) -> "Ideal":
        """(I : g^∞) in a single elimination: ⟨I, 1 - w·g⟩ ∩ A.

        Independent route kept alongside the iterated quotient so the two
        can cross-check each other.
        """
        if g.is_zero:
            raise ValueError("saturation by zero")
        if g.ring != self.ring:
            raise RingMismatchError("saturation element in a different ring")
        w = _fresh_name("w", self.ring.variables)
        ext = PolyRing((w,) + self.ring.variables, self.ring.field, Block(1))
        gens = [transport(p, ext) for p in self.generators]
        gens.append(ext.one - ext.var(w) * transport(g, ext))
        return eliminate(Ideal(ext, gens), [w], target_ring=self.ring)

    # -- presentation ----------------------------------------------------

    def reduce_generators(self) -> "Ideal":
        """Drop generators that lie in the ideal of the remaining ones.

        Scans from the last generator to the first, so earlier listed
        generators win; the result generates the same ideal.
        """
        gens = list(self.generators)
        i = len(gens) - 1
        while i >= 0 and len(gens) > 1:
            rest = gens[:i] + gens[i + 1 :]
            if groebner_basis_of(self.ring, rest).contains(gens[i]):
                gens.pop(i)
            i -= 1
        return Ideal(self.ring, gens)

    def __repr__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


def _fresh_name(stem: str, taken) -> str:
    name = stem
    while name in taken:
        name = "@" + name
    return name


def eliminate(ideal: Ideal, variables, target_ring: PolyRing | None = None) -> Ideal:
    """The contraction I ∩ k[remaining variables].

    Re-bases to a block order with the eliminated variables in front,
    computes the basis there and keeps the generators free of them.  The
    result lives in ``target_ring`` when given (its variables must be
    exactly the remaining ones), else in a fresh ring on the remaining
    variables with the original order kind.
    """
    ring = ideal.ring
    to_drop = set(str(v) for v in variables)
    unknown = to_drop - set(ring.variables)
    if unknown:
        raise ValueError(f"not variables of {ring!r}: {sorted(unknown)}")
    front = [v for v in ring.variables if v in to_drop]
    rest = [v for v in ring.variables if v not in to_drop]
    if target_ring is None:
        target_ring = PolyRing(rest, ring.field, ring.restricted_order())
    elif set(target_ring.variables) != set(rest):
        raise ValueError("target ring variables do not match the remaining ones")
    if not front:
        return Ideal(target_ring, [transport(g, target_ring) for g in ideal.generators])
    work = PolyRing(front + rest, ring.field, Block(len(front)))
    gens = [transport(g, work) for g in ideal.generators]
    basis = groebner_basis_of(work, gens)
    k = len(front)
    kept = [p for p in basis if all(not any(e[:k]) for e, _ in p.terms)]
    return Ideal(target_ring, [transport(p, target_ring) for p in kept])


class RingMap:
    """An algebra homomorphism between polynomial rings, one image per
    source variable."""

    def __init__(self, source: PolyRing, target: PolyRing, images):
        images = tuple(images)
        if len(images) != source.nvars:
            raise ValueError(
                f"{source.nvars} variables need {source.nvars} images, "
                f"got {len(images)}"
            )
        fixed = []
        for im in images:
            if not isinstance(im, Polynomial):
                im = target.constant(im)
            if im.ring != target:
                raise RingMismatchError(f"image {im} not in {target!r}")
            fixed.append(im)
        if source.field != target.field:
            raise RingMismatchError("source and target fields differ")
        self.source = source
        self.target = target
        self.images = tuple(fixed)

    def apply(self, p: Polynomial) -> Polynomial:
        if p.ring != self.source:
            raise RingMismatchError(f"{p} is not in the source ring")
        powers: list[dict[int, Polynomial]] = [dict() for _ in self.images]

        def image_power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            if e not in cache:
                cache[e] = self.images[i] ** e
            return cache[e]

        result = self.target.zero
        for exps, c in p.terms:
            term = self.target.constant(c)
            for i, e in enumerate(exps):
                if e:
                    term = term * image_power(i, e)
            result = result + term
        return result

    def __repr__(self):
        pairs = ", ".join(
            f"{v} -> {im}" for v, im in zip(self.source.variables, self.images)
        )
        return f"RingMap({pairs})"


def kernel_of_map(phi: RingMap) -> Ideal:
    """ker(phi) via the graph ideal and elimination of the target block."""
    src, tgt = phi.source, phi.target
    fresh = []
    taken = set(tgt.variables)
    for name in src.variables:
        n = _fresh_name(name, taken)
        taken.add(n)
        fresh.append(n)
    work = PolyRing(tgt.variables + tuple(fresh), tgt.field, Block(tgt.nvars))
    gens = [
        work.var(fresh[i]) - transport(phi.images[i], work)
        for i in range(src.nvars)
    ]
    basis = groebner_basis_of(work, gens)
    k = tgt.nvars
    kept = []
    for p in basis:
        if any(any(e[:k]) for e, _ in p.terms):
            continue
        kept.append(src.poly({e[k:]: c for e, c in p.terms}))
    return Ideal(src, kept)


def is_regular_sequence(elems) -> tuple[bool, int | None]:
    """Test that each element is a nonzerodivisor and a non-unit modulo
    its predecessors; returns ``(ok, failing_index)``.

    The empty sequence is vacuously regular.  The test is order-sensitive
    by nature.
    """
    elems = list(elems)
    if not elems:
        return True, None
    ring = elems[0].ring
    previous = Ideal(ring, [])
    for i, a in enumerate(elems):
        if a.ring != ring:
            raise RingMismatchError("sequence elements in different rings")
        if a.is_zero:
            return False, i
        if not previous.quotient(a).equals(previous):
            return False, i
        previous = previous + Ideal(ring, [a])
        if previous.is_unit():
            return False, i
    return True, None


def lift_through_generators(f: Polynomial, generators) -> list[Polynomial]:
    """Write f as sum(c_i * g_i) over the listed generators.

    Divides f by the tracked reduced basis of the generators and pushes
    the quotients back through the basis elements' own representations,
    so the answer is deterministic for a fixed list.  Raises if f is not
    in the ideal.
    """
    from .errors import NotInIdealError

    generators = list(generators)
    nonzero = [g for g in generators if not g.is_zero]
    if not nonzero:
        raise NotInIdealError(f"{f} is not in the zero ideal")
    basis, reps = buchberger_with_lift(generators)
    quotients, remainder = multivariate_division(f, basis)
    if not remainder.is_zero:
        raise NotInIdealError(f"{f} is not in the ideal of {generators}")
    ring = f.ring
    coeffs = [ring.zero] * len(generators)
    for q, rep in zip(quotients, reps):
        if q.is_zero:
            continue
        for k, r in enumerate(rep):
            if not r.is_zero:
                coeffs[k] = coeffs[k] + q * r
    return coeffs


class FractionalIdeal:
    """A finitely generated submodule of the fraction field, by a list of
    numerator/denominator pairs.

    Restricted to integral domains, which every polynomial ring over a
    field here is.  Fractions are normalized so the denominator is
    content-free with positive leading coefficient (rationals) or monic
    (prime fields); zero numerators are dropped.
    """

    def __init__(self, ring: PolyRing, generators):
        fixed = []
        for num, den in generators:
            if not isinstance(num, Polynomial):
                num = ring.constant(num)
            if not isinstance(den, Polynomial):
                den = ring.constant(den)
            if num.ring != ring or den.ring != ring:
                raise RingMismatchError("fraction parts in a different ring")
            if den.is_zero:
                raise ZeroDivisionError("fraction with zero denominator")
            if num.is_zero:
                continue
            from .groebner import _primitive_scalar

            s = _primitive_scalar(den)
            fixed.append((num.scale(s), den.scale(s)))
        self.ring = ring
        self.generators = tuple(fixed)

    def __repr__(self):
        return (
            "<"
            + ", ".join(
                f"({n})/({d})" if not d.is_constant() else f"{n}"
                for n, d in self.generators
            )
            + ">"
        )


def denominator_ideal(j: FractionalIdeal) -> Ideal:
    """All ring elements whose product with the module lands in the ring:
    the intersection of the quotients (den_i : num_i)."""
    ring = j.ring
    result = None
    for num, den in j.generators:
        q = Ideal(ring, [den]).quotient(num)
        result = q if result is None else result.intersect(q)
    if result is None:
        return Ideal(ring, [ring.one])
    return result
