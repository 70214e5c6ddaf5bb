"""Blowup presentations and ring modifications.

Given an ideal I of A with an ordered generator list a_0..a_r, the graded
subalgebra A[I·t] ⊂ A[t] is presented as A[T_0..T_r]/kernel by sending
T_i to a_i·t and eliminating t.  On top of that presentation this module
computes:

* the modification ring A[I/f] for a centre (I, f) — both as the Rees
  quotient (kernel + ⟨1 - T_0⟩ once f is arranged first) and as the
  kernel of T_i ↦ a_i/f, with the two asserted equal;
* the proper transform (kernel plus a linear lift of f) and the strict
  transform (total transform saturated by the exceptional ideal), plus
  their comparison as closed subschemes (equality after saturating by
  the irrelevant ideal ⟨T_0..T_r⟩);
* the 2x2-minor ideal of the generator/variable matrix, which agrees
  with the kernel exactly when the generators form a regular sequence;
* a semi-decision test for membership of a fraction p/f^k in A[I/f];
* centre extraction from a fractional ideal and a common denominator.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CentreError, PresentationError, RingMismatchError
from .ideals import (
    FractionalIdeal,
    Ideal,
    RingMap,
    _fresh_name,
    eliminate,
    lift_through_generators,
)
from .rings import (
    Polynomial,
    PolyRing,
    multivariate_division,
    transport,
)


def _default_rees_names(count: int, taken) -> tuple[str, ...]:
    names = []
    used = set(taken)
    for i in range(count):
        name = _fresh_name(f"T{i}", used)
        used.add(name)
        names.append(name)
    return tuple(names)


class ReesPresentation:
    """Presentation A[T_0..T_r] -> A[I·t] with its kernel ideal."""

    def __init__(self, base_ring, rees_ring, generators, rees_vars, kernel):
        self.base_ring = base_ring
        self.rees_ring = rees_ring
        self.generators = tuple(generators)
        self.rees_vars = tuple(rees_vars)
        self.kernel = kernel

    def rees_variable_polys(self) -> tuple[Polynomial, ...]:
        return tuple(self.rees_ring.var(n) for n in self.rees_vars)

    def generator_in_rees_ring(self, i: int) -> Polynomial:
        return transport(self.generators[i], self.rees_ring)

    def degree_in_rees_vars(self, p: Polynomial) -> int:
        idx = [self.rees_ring._index[n] for n in self.rees_vars]
        if p.is_zero:
            return -1
        return max(sum(e[i] for i in idx) for e, _ in p.terms)

    def kernel_is_homogeneous(self) -> bool:
        """Every kernel generator is homogeneous in the T variables."""
        idx = [self.rees_ring._index[n] for n in self.rees_vars]
        for g in self.kernel.generators:
            degs = {sum(e[i] for i in idx) for e, _ in g.terms}
            if len(degs) > 1:
                return False
        return True

    def substitute_rees_variables(self, p: Polynomial) -> Polynomial:
        """Image of p under T_i ↦ a_i·t, landing in base_ring[t]."""
        t = _fresh_name("t", self.base_ring.variables)
        target = self.base_ring.extend([t], "back")
        tv = target.var(t)
        images = []
        for name in self.rees_ring.variables:
            if name in self.rees_vars:
                i = self.rees_vars.index(name)
                images.append(transport(self.generators[i], target) * tv)
            else:
                images.append(target.var(name))
        return RingMap(self.rees_ring, target, images).apply(p)

    def irrelevant_ideal(self) -> Ideal:
        return Ideal(self.rees_ring, self.rees_variable_polys())

    def saturate_irrelevant(self, ideal: Ideal) -> Ideal:
        return ideal.saturation(self.irrelevant_ideal())

    def __repr__(self):
        return (
            f"ReesPresentation({self.base_ring!r} -> {self.rees_ring!r}, "
            f"kernel={self.kernel!r})"
        )


def rees_presentation(ideal: Ideal, var_names=None) -> ReesPresentation:
    """Present the graded algebra of an ideal by eliminating the grading
    variable t from the graph relations T_i - a_i·t."""
    gens = ideal.generators
    if not gens:
        raise ValueError("the graded-algebra presentation needs generators")
    ring = ideal.ring
    if var_names is None:
        names = _default_rees_names(len(gens), ring.variables)
    else:
        names = tuple(str(n) for n in var_names)
        if len(names) != len(gens):
            raise ValueError(
                f"{len(gens)} generators need {len(gens)} variable names, "
                f"got {len(names)}"
            )
        if len(set(names)) != len(names) or set(names) & set(ring.variables):
            raise ValueError("presentation variable names must be fresh and distinct")
    rees_ring = ring.extend(names, "back")
    t = _fresh_name("t", ring.variables + names)
    from .orders import Block

    work = PolyRing((t,) + ring.variables + names, ring.field, Block(1))
    tv = work.var(t)
    graph = [
        work.var(names[i]) - transport(gens[i], work) * tv
        for i in range(len(gens))
    ]
    kernel = eliminate(Ideal(work, graph), [t], target_ring=rees_ring)
    return ReesPresentation(ring, rees_ring, gens, names, kernel)


class ModificationCentre:
    """A centre (I, f): an ideal together with a nonzero element of it."""

    def __init__(self, ideal: Ideal, f: Polynomial):
        if not isinstance(f, Polynomial):
            f = ideal.ring.constant(f)
        if f.ring != ideal.ring:
            raise RingMismatchError("centre element in a different ring")
        if f.is_zero:
            raise CentreError("the divisor element of a centre must be nonzero")
        if not ideal.contains(f):
            raise CentreError(f"{f} is not in the ideal {ideal!r}")
        self.ideal = ideal
        self.f = f

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    def extended_generators(self) -> tuple[Polynomial, ...]:
        """Generator list rearranged so f sits at index 0 (prepended when
        it is not listed); the ideal is unchanged since f belongs to it."""
        gens = list(self.ideal.generators)
        for i, g in enumerate(gens):
            if g == self.f:
                return (gens[i],) + tuple(gens[:i] + gens[i + 1 :])
        return (self.f,) + tuple(gens)

    def presentation(self, var_names=None) -> ReesPresentation:
        """Presentation on the listed generators (as given, f not moved)."""
        return rees_presentation(self.ideal, var_names)

    def __repr__(self):
        return f"({self.ideal!r}, {self.f})"


@dataclass
class ModificationRing:
    """The subring of fractions a/f^k presented as a quotient of A[T]."""

    centre: ModificationCentre
    presentation: ReesPresentation
    relations: Ideal
    direct_kernel: Ideal
    distinguished_index: int = 0

    @property
    def base_ring(self) -> PolyRing:
        return self.presentation.base_ring

    @property
    def rees_ring(self) -> PolyRing:
        return self.presentation.rees_ring

    @property
    def rees_vars(self) -> tuple[str, ...]:
        return self.presentation.rees_vars

    @property
    def generators(self) -> tuple[Polynomial, ...]:
        return self.presentation.generators

    def generator_images(self):
        """(variable, generator, fraction-image rendering) per T variable."""
        f = self.centre.f
        out = []
        for name, a in zip(self.rees_vars, self.generators):
            out.append((name, a, f"({a})/({f})"))
        return out

    def is_trivial(self) -> bool:
        """True when the relations collapse the presentation back onto the
        base ring (the modification changes nothing)."""
        expected = Ideal(
            self.rees_ring,
            [
                self.rees_ring.one - self.rees_ring.var(self.rees_vars[0]),
            ],
        )
        return self.relations.equals(expected)


def modification_ring(centre: ModificationCentre, var_names=None) -> ModificationRing:
    """Present the ring of fractions with denominator powers of f and
    numerators in the matching power of I.

    Computes the quotient presentation (graded kernel plus ⟨1 - T_0⟩, with
    f arranged as generator 0) and, independently, the kernel of
    T_i ↦ a_i/f via ⟨f·T_i - a_i⟩ saturated by f; the two must agree.
    """
    ext = Ideal(centre.ring, centre.extended_generators())
    pres = rees_presentation(ext, var_names)
    rr = pres.rees_ring
    t0 = rr.var(pres.rees_vars[0])
    relations = Ideal(rr, pres.kernel.generators + (rr.one - t0,))
    f_r = transport(centre.f, rr)
    graph = [
        f_r * rr.var(pres.rees_vars[i]) - pres.generator_in_rees_ring(i)
        for i in range(len(pres.generators))
    ]
    direct = Ideal(rr, graph).saturation(Ideal(rr, [f_r]))
    if not relations.equals(direct):
        raise PresentationError(
            "quotient presentation and direct fraction kernel disagree "
            f"for centre {centre!r}"
        )
    return ModificationRing(centre, pres, relations, direct)


def proper_transform(
    centre: ModificationCentre, presentation: ReesPresentation | None = None
) -> Ideal:
    """Kernel plus the degree-one lift of f through the listed generators.

    The lift comes from deterministic division against the tracked basis
    of the generators; any two lifts differ by a kernel element, so the
    ideal does not depend on the choice.
    """
    pres = presentation or centre.presentation()
    coeffs = lift_through_generators(centre.f, list(pres.generators))
    rr = pres.rees_ring
    lift = rr.zero
    for c, name in zip(coeffs, pres.rees_vars):
        if not c.is_zero:
            lift = lift + transport(c, rr) * rr.var(name)
    return Ideal(rr, pres.kernel.generators + (lift,))


def exceptional_ideal(
    centre: ModificationCentre, presentation: ReesPresentation | None = None
) -> Ideal:
    """Kernel plus I acting in degree zero: the preimage of the blown-up
    locus."""
    pres = presentation or centre.presentation()
    rr = pres.rees_ring
    degree_zero = tuple(transport(g, rr) for g in centre.ideal.generators)
    return Ideal(rr, pres.kernel.generators + degree_zero)


def strict_transform(
    centre: ModificationCentre, presentation: ReesPresentation | None = None
) -> Ideal:
    """Total transform of f saturated by the exceptional ideal."""
    pres = presentation or centre.presentation()
    rr = pres.rees_ring
    total = Ideal(rr, pres.kernel.generators + (transport(centre.f, rr),))
    degree_zero = Ideal(rr, [transport(g, rr) for g in centre.ideal.generators])
    return total.saturation(degree_zero)


@dataclass
class TransformPair:
    presentation: ReesPresentation
    proper: Ideal
    strict: Ideal
    proper_saturated: Ideal
    strict_saturated: Ideal
    equal_as_subschemes: bool


def transforms_equal(
    centre: ModificationCentre, var_names=None
) -> TransformPair:
    """Compare proper and strict transforms as closed subschemes of the
    blowup: compute both on one presentation and test equality after
    saturating each by the irrelevant ideal."""
    pres = centre.presentation(var_names)
    proper = proper_transform(centre, pres)
    strict = strict_transform(centre, pres)
    proper_sat = pres.saturate_irrelevant(proper)
    strict_sat = pres.saturate_irrelevant(strict)
    return TransformPair(
        presentation=pres,
        proper=proper,
        strict=strict,
        proper_saturated=proper_sat,
        strict_saturated=strict_sat,
        equal_as_subschemes=proper_sat.equals(strict_sat),
    )


def determinantal_ideal(sequence, var_names=None) -> Ideal:
    """Ideal of 2x2 minors a_i·T_j - a_j·T_i of the two-row matrix with
    rows (a_0..a_r) and (T_0..T_r)."""
    seq = list(sequence)
    if not seq:
        raise ValueError("empty sequence")
    ring = seq[0].ring
    for a in seq:
        if a.ring != ring:
            raise RingMismatchError("sequence elements in different rings")
    if var_names is None:
        names = _default_rees_names(len(seq), ring.variables)
    else:
        names = tuple(var_names)
    rr = ring.extend(names, "back")
    minors = []
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            minors.append(
                transport(seq[i], rr) * rr.var(names[j])
                - transport(seq[j], rr) * rr.var(names[i])
            )
    return Ideal(rr, minors)


@dataclass
class MembershipResult:
    status: str  # "member" | "inconclusive"
    exponent: int | None
    searched_up_to: int

    @property
    def is_member(self) -> bool:
        return self.status == "member"

    def render(self) -> str:
        if self.is_member:
            return f"member at N={self.exponent}"
        return f"non-member up to N={self.searched_up_to}"


def membership_in_modification(
    centre: ModificationCentre,
    numerator: Polynomial,
    exponent: int,
    n_max: int = 20,
) -> MembershipResult:
    """Semi-decision test for p/f^k lying in the modification ring.

    Searches the smallest N in [k, n_max] with p·f^(N-k) in I^N.  Failure
    up to n_max is inconclusive, not a proof of non-membership.
    """
    if exponent < 0:
        raise ValueError("denominator exponent must be nonnegative")
    if n_max < exponent:
        raise ValueError(f"search bound {n_max} is below the exponent {exponent}")
    if not isinstance(numerator, Polynomial):
        numerator = centre.ring.constant(numerator)
    if numerator.ring != centre.ring:
        raise RingMismatchError("numerator in a different ring")
    power = centre.ideal.power(exponent)
    candidate = numerator
    n = exponent
    while True:
        if power.groebner_basis().contains(candidate):
            return MembershipResult("member", n, n_max)
        if n == n_max:
            return MembershipResult("inconclusive", None, n_max)
        n += 1
        power = power.product(centre.ideal)
        candidate = candidate * centre.f


def fraction_membership(
    centre: ModificationCentre,
    numerator: Polynomial,
    denominator: Polynomial,
    localization: Polynomial | None = None,
    n_max: int = 20,
) -> MembershipResult:
    """Membership of an arbitrary fraction p/q in the modification ring,
    optionally after inverting a localization element g.

    p/q lies in the (localized) ring iff p·f^N falls into ⟨q⟩·I^N
    (saturated by g) for some N; the search is capped at n_max.
    """
    ring = centre.ring
    if denominator.is_zero:
        raise ZeroDivisionError("fraction with zero denominator")
    den_ideal = Ideal(ring, [denominator])
    power = Ideal(ring, [ring.one])
    candidate = numerator
    for n in range(n_max + 1):
        target = den_ideal.product(power)
        if localization is not None:
            target = target.saturation_principal(localization)
        if target.groebner_basis().contains(candidate):
            return MembershipResult("member", n, n_max)
        power = power.product(centre.ideal)
        candidate = candidate * centre.f
    return MembershipResult("inconclusive", None, n_max)


def centre_from_fractional(j: FractionalIdeal, f: Polynomial) -> ModificationCentre:
    """Build the centre (⟨f⟩ + f·J, f) from a fractional ideal and a
    common denominator f; rejects f when some f·(p/q) is not polynomial.

    The generator list is reduced (members of the ideal of the others are
    dropped) so simple centres come out in their familiar shape.
    """
    ring = j.ring
    if not isinstance(f, Polynomial):
        f = ring.constant(f)
    if f.is_zero:
        raise CentreError("the common denominator must be nonzero")
    cleared = []
    for num, den in j.generators:
        quotients, remainder = multivariate_division(f * num, [den])
        if not remainder.is_zero:
            raise CentreError(
                f"{f} is not a common denominator of {j!r}: "
                f"({f})*({num})/({den}) is not polynomial"
            )
        cleared.append(quotients[0])
    ideal = Ideal(ring, [f] + cleared).reduce_generators()
    return ModificationCentre(ideal, f)


def chart_contraction(
    pres: ReesPresentation, extra: Ideal | None, index: int
) -> Ideal:
    """Dehomogenize to the affine chart T_index = 1.

    Returns the image of (kernel + extra) in the polynomial ring on the
    remaining variables; the chart ring is its quotient.
    """
    rr = pres.rees_ring
    name = pres.rees_vars[index]
    chart_ring = PolyRing(
        [v for v in rr.variables if v != name],
        rr.field,
        rr.restricted_order(),
    )
    images = [
        chart_ring.one if v == name else chart_ring.var(v)
        for v in rr.variables
    ]
    sub = RingMap(rr, chart_ring, images)
    gens = list(pres.kernel.generators)
    if extra is not None:
        if extra.ring != rr:
            raise RingMismatchError("chart ideal must live in the rees ring")
        gens += list(extra.generators)
    return Ideal(chart_ring, [sub.apply(g) for g in gens])


def clear_denominators_substitution(
    pres: ReesPresentation, f: Polynomial, p: Polynomial
) -> Polynomial:
    """f^d · p(T_i := a_i/f) as a polynomial, d the T-degree of p.

    Zero output certifies that the relation p vanishes under the fraction
    substitution T_i ↦ a_i/f.
    """
    rr = pres.rees_ring
    base = pres.base_ring
    idx = {rr._index[n]: i for i, n in enumerate(pres.rees_vars)}
    d = pres.degree_in_rees_vars(p)
    if d < 0:
        return base.zero
    result = base.zero
    for exps, c in p.terms:
        term = base.constant(c)
        t_deg = 0
        for pos, e in enumerate(exps):
            if e == 0:
                continue
            if pos in idx:
                term = term * pres.generators[idx[pos]] ** e
                t_deg += e
            else:
                term = term * base.var(rr.variables[pos]) ** e
        result = result + term * f ** (d - t_deg)
    return result
