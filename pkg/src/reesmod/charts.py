"""Glued geometry at desk scale: affine chart atlases, divisors given by
local equations, compatible chart ideals, and the global modification
computed chart by chart.

Gluing is verified, never synthesized: transition maps are fractions with
denominators restricted to powers of the overlap element, and every check
(cocycle, unit cross-ratios of divisor data, ideal compatibility, overlap
consistency of the chart modifications) reduces to exact ideal arithmetic
in the charts.  Checks that rest on the membership semi-test can come back
INCONCLUSIVE at the search bound; that is reported, never treated as a
failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ChartDataError, GlobalModificationError
from .ideals import Ideal
from .modification import (
    ModificationCentre,
    ModificationRing,
    fraction_membership,
    modification_ring,
)
from .rings import Polynomial, PolyRing


class PolyFraction:
    """An exact fraction of polynomials in one ring (domain), compared by
    cross-multiplication; no gcd reduction is attempted."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        if den.is_zero:
            raise ZeroDivisionError("polynomial fraction with zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Polynomial) -> "PolyFraction":
        return cls(p, p.ring.one)

    def __mul__(self, other: "PolyFraction") -> "PolyFraction":
        return PolyFraction(self.num * other.num, self.den * other.den)

    def __add__(self, other: "PolyFraction") -> "PolyFraction":
        return PolyFraction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __pow__(self, n: int) -> "PolyFraction":
        return PolyFraction(self.num**n, self.den**n)

    def divided_by(self, other: "PolyFraction") -> "PolyFraction":
        if other.num.is_zero:
            raise ZeroDivisionError("division by a zero fraction")
        return PolyFraction(self.num * other.den, self.den * other.num)

    def same_fraction(self, other: "PolyFraction") -> bool:
        return (self.num * other.den) == (other.num * self.den)

    def __repr__(self):
        if self.den.is_constant():
            if self.den == self.den.ring.one:
                return str(self.num)
        return f"({self.num})/({self.den})"


@dataclass(frozen=True)
class LocalImage:
    """num / g^power — the image of one chart variable on an overlap."""

    num: Polynomial
    power: int


@dataclass(frozen=True)
class Overlap:
    """Transition data for the ordered pair (i, j): the overlap is the
    locus g != 0 in chart i, and each variable of chart j maps to
    num / g^power there."""

    g: Polynomial
    images: tuple


class ChartAtlas:
    """Affine charts with localization-based transition maps."""

    def __init__(self, charts, overlaps: dict):
        charts = tuple(charts)
        if not charts:
            raise ChartDataError("an atlas needs at least one chart")
        fields = {ring.field for ring in charts}
        if len(fields) != 1:
            raise ChartDataError("all charts must share one coefficient field")
        for (i, j), ov in overlaps.items():
            if not (0 <= i < len(charts) and 0 <= j < len(charts)):
                raise ChartDataError(f"overlap ({i},{j}) out of range")
            if ov.g.ring != charts[i] or ov.g.is_zero:
                raise ChartDataError(
                    f"overlap element for ({i},{j}) must be nonzero in chart {i}"
                )
            if len(ov.images) != charts[j].nvars:
                raise ChartDataError(
                    f"transition ({i},{j}) needs one image per variable of chart {j}"
                )
            for im in ov.images:
                if im.num.ring != charts[i] or im.power < 0:
                    raise ChartDataError(
                        f"bad transition image in overlap ({i},{j})"
                    )
        self.charts = charts
        self.overlaps = dict(overlaps)

    def transition(self, i: int, j: int) -> Overlap | None:
        return self.overlaps.get((i, j))

    def apply_transition(self, i: int, j: int, p: Polynomial) -> PolyFraction:
        """Transport p from chart j into the fraction field of chart i."""
        ov = self.overlaps[(i, j)]
        if p.ring != self.charts[j]:
            raise ChartDataError(f"{p} is not a chart-{j} element")
        target = self.charts[i]
        result = PolyFraction.from_poly(target.zero)
        for exps, c in p.terms:
            term = PolyFraction.from_poly(target.constant(c))
            for m, e in enumerate(exps):
                if e:
                    im = ov.images[m]
                    term = term * PolyFraction(im.num, ov.g ** im.power) ** e
            result = result + term
        return result


@dataclass(frozen=True)
class CartierDivisor:
    """One nonzero local equation per chart."""

    equations: tuple

    def __post_init__(self):
        for f in self.equations:
            if f.is_zero:
                raise ChartDataError("divisor local equations must be nonzero")


@dataclass(frozen=True)
class IdealSheaf:
    """One ideal per chart; compatibility is checked, not assumed."""

    ideals: tuple


@dataclass
class CheckEntry:
    kind: str
    location: tuple
    ok: bool
    detail: str
    inconclusive: bool = False


@dataclass
class Report:
    entries: list = field(default_factory=list)

    def add(self, kind, location, ok, detail, inconclusive=False):
        self.entries.append(CheckEntry(kind, location, ok, detail, inconclusive))

    def extend(self, other: "Report"):
        self.entries.extend(other.entries)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def inconclusive_count(self) -> int:
        return sum(1 for e in self.entries if e.inconclusive)

    def failures(self):
        return [e for e in self.entries if not e.ok]


def _localized_member(p: Polynomial, ideal: Ideal, g: Polynomial) -> bool:
    """p ∈ (ideal : g^∞)?"""
    if ideal.is_zero:
        return p.is_zero
    return ideal.saturation_principal(g).contains(p)


def validate_atlas(atlas: ChartAtlas) -> Report:
    """Identity, two-sided inverse and cocycle checks on the transitions,
    compared as cleared fractions."""
    report = Report()
    charts = atlas.charts
    for (i, j), ov in sorted(atlas.overlaps.items()):
        if i == j:
            ok = all(
                im.power == 0 and im.num == charts[i].var(name)
                for im, name in zip(ov.images, charts[i].variables)
            )
            report.add(
                "self_transition",
                (i, i),
                ok,
                "identity on the diagonal" if ok else "non-identity self map",
            )
    pairs = sorted(
        (i, j)
        for (i, j) in atlas.overlaps
        if i != j and (j, i) in atlas.overlaps
    )
    for i, j in pairs:
        for name in charts[i].variables:
            var = charts[i].var(name)
            back = atlas.apply_transition(j, i, var)
            if back.num.is_zero and not var.is_zero:
                report.add(
                    "round_trip", (i, j), False,
                    f"{name} maps to zero on the overlap",
                )
                continue
            fwd_num = atlas.apply_transition(i, j, back.num)
            fwd_den = atlas.apply_transition(i, j, back.den)
            if fwd_den.num.is_zero:
                report.add(
                    "round_trip", (i, j), False,
                    f"denominator of {name} transports to zero",
                )
                continue
            composite = fwd_num.divided_by(fwd_den)
            ok = composite.same_fraction(PolyFraction.from_poly(var))
            report.add(
                "round_trip",
                (i, j),
                ok,
                f"{name} survives the round trip"
                if ok
                else f"round trip moves {name}: got {composite!r}",
            )
    triples = sorted(
        (i, j, k)
        for (i, j) in atlas.overlaps
        for k in range(len(charts))
        if len({i, j, k}) == 3
        and (j, k) in atlas.overlaps
        and (i, k) in atlas.overlaps
    )
    for i, j, k in triples:
        for name in charts[k].variables:
            var = charts[k].var(name)
            through = atlas.apply_transition(j, k, var)
            top_num = atlas.apply_transition(i, j, through.num)
            top_den = atlas.apply_transition(i, j, through.den)
            if top_den.num.is_zero:
                report.add(
                    "cocycle", (i, j, k), False,
                    f"{name}: intermediate denominator transports to zero",
                )
                continue
            left = top_num.divided_by(top_den)
            right = atlas.apply_transition(i, k, var)
            ok = left.same_fraction(right)
            report.add(
                "cocycle",
                (i, j, k),
                ok,
                f"{name} agrees"
                if ok
                else f"cocycle breaks at {name}: {left!r} vs {right!r}",
            )
    return report


def validate_divisor(atlas: ChartAtlas, divisor: CartierDivisor) -> Report:
    """Local equations must differ by a unit of the localized ring on each
    overlap: both cross-ratios pass a saturated-membership test."""
    report = Report()
    if len(divisor.equations) != len(atlas.charts):
        raise ChartDataError("one local equation per chart is required")
    for f, ring in zip(divisor.equations, atlas.charts):
        if f.ring != ring:
            raise ChartDataError(f"local equation {f} is not in {ring!r}")
    for (i, j), ov in sorted(atlas.overlaps.items()):
        if i == j:
            continue
        fi = divisor.equations[i]
        t = atlas.apply_transition(i, j, divisor.equations[j])
        if t.num.is_zero:
            report.add(
                "divisor_unit", (i, j), False,
                "local equation transports to zero",
            )
            continue
        ratio_ok = _localized_member(fi * t.den, Ideal(fi.ring, [t.num]), ov.g)
        inverse_ok = _localized_member(t.num, Ideal(fi.ring, [fi]), ov.g)
        ok = ratio_ok and inverse_ok
        report.add(
            "divisor_unit",
            (i, j),
            ok,
            "cross-ratio is a unit on the overlap"
            if ok
            else f"cross-ratio ({fi})*({t.den})/({t.num}) is not a unit "
            f"on the overlap",
        )
    return report


def validate_sheaf(
    atlas: ChartAtlas, sheaf: IdealSheaf, divisor: CartierDivisor | None = None
) -> Report:
    """Chart ideals must be compatible across overlaps and, when divisor
    data is supplied, contain the local equations."""
    report = Report()
    if len(sheaf.ideals) != len(atlas.charts):
        raise ChartDataError("one chart ideal per chart is required")
    for idx, (ideal, ring) in enumerate(zip(sheaf.ideals, atlas.charts)):
        if ideal.ring != ring:
            raise ChartDataError(f"chart ideal {idx} lives in the wrong ring")
    if divisor is not None:
        for idx, (ideal, f) in enumerate(zip(sheaf.ideals, divisor.equations)):
            ok = ideal.contains(f)
            report.add(
                "sheaf_contains_divisor",
                (idx,),
                ok,
                "local equation lies in the chart ideal"
                if ok
                else f"{f} is not in the chart ideal {ideal!r}",
            )
    for (j, i), ov in sorted(atlas.overlaps.items()):
        # transition (j, i) carries chart-i elements into chart j
        if i == j:
            continue
        target = sheaf.ideals[j]
        for h in sheaf.ideals[i].generators:
            frac = atlas.apply_transition(j, i, h)
            ok = _localized_member(frac.num, target, ov.g)
            report.add(
                "sheaf_compatible",
                (i, j),
                ok,
                f"generator {h} transports into the localized ideal"
                if ok
                else f"generator {h} escapes the localized chart ideal",
            )
    return report


@dataclass
class GlobalModification:
    atlas: ChartAtlas
    divisor: CartierDivisor
    sheaf: IdealSheaf
    chart_rings: tuple
    report: Report


def modify_global(
    atlas: ChartAtlas,
    divisor: CartierDivisor,
    sheaf: IdealSheaf,
    n_max: int = 20,
) -> GlobalModification:
    """Modify every chart at its local centre and verify, on each overlap,
    that the two chart subalgebras agree inside the shared fraction field.

    Validation failures abort with the report attached; consistency is a
    semi-decision (membership search up to n_max), so it can be
    INCONCLUSIVE but never silently wrong.
    """
    report = Report()
    report.extend(validate_atlas(atlas))
    report.extend(validate_divisor(atlas, divisor))
    report.extend(validate_sheaf(atlas, sheaf, divisor))
    if not report.ok:
        raise GlobalModificationError(
            "atlas/divisor/sheaf validation failed", report
        )
    centres = [
        ModificationCentre(ideal, f)
        for ideal, f in zip(sheaf.ideals, divisor.equations)
    ]
    rings = tuple(modification_ring(c) for c in centres)
    for (j, i), ov in sorted(atlas.overlaps.items()):
        if i == j:
            continue
        # transport chart i's algebra generators a_k/f_i into chart j
        source = rings[i]
        f_frac = atlas.apply_transition(j, i, source.centre.f)
        if f_frac.num.is_zero:
            report.add(
                "consistency", (i, j), False,
                "local equation transports to zero",
            )
            continue
        for k, a in enumerate(source.generators):
            if k == source.distinguished_index:
                continue  # a_0/f = 1 transports trivially
            a_frac = atlas.apply_transition(j, i, a)
            value = a_frac.divided_by(f_frac)
            result = fraction_membership(
                centres[j], value.num, value.den, localization=ov.g, n_max=n_max
            )
            if result.is_member:
                report.add(
                    "consistency",
                    (i, j, k),
                    True,
                    f"generator {k} of chart {i} is a member of chart {j}'s "
                    f"algebra at N={result.exponent}",
                )
            else:
                report.add(
                    "consistency",
                    (i, j, k),
                    True,
                    f"membership of generator {k} undecided up to N={n_max}",
                    inconclusive=True,
                )
    return GlobalModification(atlas, divisor, sheaf, rings, report)


def complement_of_divisor(
    atlas: ChartAtlas, divisor: CartierDivisor, n_max: int = 20
) -> GlobalModification:
    """Modification with the unit ideal sheaf: each chart becomes its own
    localization away from the local equation; the presentation is checked
    against the expected ⟨f·T - 1⟩ shape."""
    sheaf = IdealSheaf(
        tuple(Ideal(ring, [ring.one]) for ring in atlas.charts)
    )
    gm = modify_global(atlas, divisor, sheaf, n_max=n_max)
    for idx, mr in enumerate(gm.chart_rings):
        rr = mr.rees_ring
        names = mr.rees_vars
        expected_gens = [rr.one - rr.var(names[0])]
        if len(names) > 1:
            from .rings import transport

            expected_gens.append(
                transport(divisor.equations[idx], rr) * rr.var(names[1]) - rr.one
            )
        ok = mr.relations.equals(Ideal(rr, expected_gens))
        gm.report.add(
            "localization_presentation",
            (idx,),
            ok,
            "chart ring presents the localization"
            if ok
            else "chart presentation differs from the localization shape",
        )
    return gm
