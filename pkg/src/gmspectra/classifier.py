"""Threshold searches for level-one characters over strata and models.

Everything here evaluates one inequality in different guises: a model
passes a cutoff tau when its level-one character chi1_log reaches
(2-tau)/(11-12tau) * (2g-2+n) * ell, the exact condition for the
alpha-invariant to be at least tau.  The search enumerates signatures
(at most four branches survive the Clifford cap), runs every admissible
hyperelliptic tagging, resolves the nonhyperelliptic side through the
Clifford profile, the shipped catalog, explicit exclusion rules and the
special-locus overrides, walks symmetric semigroups when there is a
single zero, appends ordinary marked points up to the budget, and
optionally re-scores every record for dangling branch subsets.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import branch_algebra as ba
from . import catalog as cat
from . import curve_models as cm
from . import invariants as inv
from . import semigroup as sg
from .signature import Signature, derive, enumerate_signatures, n_plus

DEFAULT_THRESHOLD = Fraction(3, 8)
GENUS_BOUND = 8  # desk-scale searches; raise explicitly for more

__all__ = [
    "Candidate",
    "EXCLUSIONS",
    "RegressionCheck",
    "RegressionError",
    "RegressionReport",
    "SemigroupRecord",
    "Tagging",
    "UnresolvedSignatureError",
    "alpha_search",
    "clifford_cap",
    "clifford_profile_chi1",
    "hyperelliptic_chi1",
    "hyperelliptic_chi1_routes",
    "hyperelliptic_taggings",
    "nonvarying_regression",
    "ordinary_point_budget",
    "semigroup_search",
    "threshold_coefficient",
]


def threshold_coefficient(threshold) -> Fraction:
    """Coefficient c with "alpha >= tau iff chi1_log >= c*(2g-2+n)*ell".

    c = (2-tau)/(11-12tau); tau = 3/8 gives 1/4 and tau = 5/9 gives 1/3.
    """
    tau = Fraction(threshold)
    if not 0 <= tau < Fraction(11, 12):
        raise ValueError(f"threshold must lie in [0, 11/12), got {tau}")
    return (2 - tau) / (11 - 12 * tau)


def clifford_cap(sig: Signature) -> Fraction:
    """Largest chi1_log any curve model allows: (g+1)*ell/2.

    Signatures with n >= 5 have the cap below the pass threshold, so the
    searches prune them outright.
    """
    return Fraction((sig.genus + 1) * sig.ell, 2)


# ---------------------------------------------------------------------------
# candidates


@dataclass(frozen=True)
class Candidate:
    """One (signature, model) pair scored against the threshold."""

    signature: tuple[int, ...]
    model: str
    chi1_log: int
    threshold_lhs: Fraction
    threshold_rhs: Fraction
    passed: bool
    item: str  # genus-one | hyperelliptic | stratum | locus
    component: Optional[str] = None
    dangling: tuple[int, ...] = ()

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def sort_key(self):
        return (self.signature, self.model, self.dangling)


def _make_candidate(
    sig: Signature,
    model: str,
    chi1: int,
    coeff: Fraction,
    item: str,
    component: Optional[str],
    dangling: tuple[int, ...] = (),
) -> Candidate:
    reduction = sum(sig.weights_a[i] for i in dangling)
    rhs = coeff * ((2 * sig.genus - 2 + sig.n) * sig.ell - reduction)
    lhs = Fraction(chi1)
    return Candidate(
        signature=tuple(sig.orders),
        model=model,
        chi1_log=chi1,
        threshold_lhs=lhs,
        threshold_rhs=rhs,
        passed=lhs >= rhs,
        item=item,
        component=component,
        dangling=dangling,
    )


def ordinary_point_budget(sig: Signature, chi1_log: int, threshold=DEFAULT_THRESHOLD) -> int:
    """Largest k with chi1_log >= c*(2g-2+n+k)*ell.

    Appending an ordinary marked point leaves chi1_log unchanged while the
    right-hand side grows by c*ell per point, so the budget is a floor.
    Negative when even the bare signature misses the bound.
    """
    coeff = threshold_coefficient(threshold)
    slack = Fraction(chi1_log) / (coeff * sig.ell) - (2 * sig.genus - 2 + sig.n)
    return math.floor(slack)


# ---------------------------------------------------------------------------
# hyperelliptic taggings


@dataclass(frozen=True)
class Tagging:
    """A hyperelliptic placement of the zeros: Weierstrass, pairs, free.

    ``weierstrass`` lists the order of each zero at a Weierstrass point
    (those orders must be even), ``pairs`` the common order of each
    conjugate pair (one entry per pair), ``free`` the number of ordinary
    marked points.
    """

    weierstrass: tuple[int, ...]
    pairs: tuple[int, ...]
    free: int = 0

    @property
    def label(self) -> str:
        parts = sorted(
            [(v, "p") for v in self.pairs] + [(v, "w") for v in self.weierstrass],
            key=lambda t: (-t[0], t[1]),
        )
        rendered = [f"{kind}{v}" for v, kind in parts] + ["o"] * self.free
        return "hyperelliptic(" + ",".join(rendered) + ")"

    def with_free(self, extra: int) -> "Tagging":
        return Tagging(self.weierstrass, self.pairs, self.free + extra)

    def model_tags(self, sig: Signature) -> tuple[str, ...]:
        # spread the descriptor back over the concrete (sorted) orders
        by_value: dict[int, list[int]] = {}
        for i, v in enumerate(sig.orders):
            by_value.setdefault(v, []).append(i)
        tags: list[Optional[str]] = [None] * sig.n
        pair_id = 0
        for v, idxs in by_value.items():
            if v == 0:
                for i in idxs:
                    tags[i] = "free"
                continue
            p = self.pairs.count(v)
            for k in range(p):
                tags[idxs[2 * k]] = f"pair:{pair_id}"
                tags[idxs[2 * k + 1]] = f"pair:{pair_id}"
                pair_id += 1
            for i in idxs[2 * p :]:
                tags[i] = "w"
        return tuple(tags)  # type: ignore[return-value]


def hyperelliptic_taggings(sig: Signature) -> tuple[Tagging, ...]:
    """Every admissible tagging of the signature, canonically deduplicated.

    Zeros of odd order must sit in conjugate pairs of equal order, so an
    odd value occurring an odd number of times admits no tagging at all.
    Even values choose how many of their occurrences pair up; the rest go
    to Weierstrass points.  Order-0 entries are always free.
    """
    counts = Counter(v for v in sig.orders if v > 0)
    free = sum(1 for v in sig.orders if v == 0)
    per_value: list[list[tuple[int, int]]] = []
    for v, c in sorted(counts.items(), reverse=True):
        if v % 2:
            if c % 2:
                return ()
            per_value.append([(v, c // 2)])
        else:
            per_value.append([(v, p) for p in range(c // 2 + 1)])
    out = []
    for combo in itertools.product(*per_value):
        w: list[int] = []
        pairs: list[int] = []
        for v, p in combo:
            pairs.extend([v] * p)
            w.extend([v] * (counts[v] - 2 * p))
        out.append(
            Tagging(
                tuple(sorted(w, reverse=True)),
                tuple(sorted(pairs, reverse=True)),
                free,
            )
        )
    return tuple(out)


def hyperelliptic_chi1_routes(sig: Signature, tagging: Tagging) -> tuple[int, Fraction]:
    """chi1_log of a tagging: summed model filtration and the closed form.

    The closed form is (g+1)*ell/2 minus half the correction (ell - a_i)/2
    per Weierstrass zero; pairs and free points contribute no correction.
    """
    model = cm.HyperellipticModel(sig.genus, tagging.model_tags(sig))
    dims = cm.filtration_dims(model, sig, 1)
    summed = sum(dims[1:])
    shortcut = clifford_cap(sig) - sum(
        Fraction(sig.ell - sig.ell // (v + 1), 4) for v in tagging.weierstrass
    )
    return summed, shortcut


def hyperelliptic_chi1(sig: Signature, tagging: Tagging) -> int:
    summed, shortcut = hyperelliptic_chi1_routes(sig, tagging)
    if shortcut != summed:
        raise RuntimeError(
            f"hyperelliptic chi1 routes disagree on {sig} {tagging.label}: "
            f"model {summed}, closed form {shortcut}"
        )
    return summed


# ---------------------------------------------------------------------------
# nonhyperelliptic resolution


class UnresolvedSignatureError(RuntimeError):
    """The Clifford screen passed but no exact value or rule applies."""


# Signatures whose nonhyperelliptic screen passes but where a geometric
# construction rules the component out; these facts are not derivable from
# section-count arithmetic alone, so they are shipped as explicit rules.
EXCLUSIONS: dict[tuple[tuple[int, ...], Optional[str]], str] = {
    ((7, 5), None): (
        "keeping every level at the nonhyperelliptic Clifford maximum forces "
        "h0(3p1+2p2) = 3, but that degree-5 net maps the curve onto a plane "
        "quintic of arithmetic genus 6, below its geometric genus 7"
    ),
    ((6, 4), "odd"): (
        "odd parity forces h0(3p1+2p2) = 3, embedding the curve as a plane "
        "quintic; projecting from p1 yields a base-point-free degree-4 pencil "
        "whose fiber 2p1+2p2 contradicts h0(2p1+p2) = 2 forcing p2 as a base "
        "point"
    ),
    ((6, 4), "even"): (
        "even parity caps h0(3p1+2p2) at 2, one below the Clifford maximum, "
        "and that divisor class occurs at five filtration levels, dropping "
        "chi1_log below the bound"
    ),
    ((6, 2), "even"): (
        "even parity with every level at the Clifford maximum forces "
        "h0(4p1+p2) = 3, realizing the curve as a plane quintic with a cusp "
        "at p1 whose tangent line would meet the branch with multiplicity "
        "above 3"
    ),
}


def clifford_profile_chi1(sig: Signature) -> int:
    """chi1_log if every filtration level sat at the Clifford maximum.

    Cross-checked against the parity-count identity
    chi1 = (g*ell - N+)/2 + a_1 before returning.
    """
    dims = cm.filtration_dims(cm.CliffordMaxModel(sig.genus), sig, 1)
    total = sum(dims[1:])
    a1 = sig.weights_a[0]
    nplus = n_plus(sig, a1 + 1, sig.ell - a1)
    if 2 * total != sig.genus * sig.ell - nplus + 2 * a1:
        raise RuntimeError(f"Clifford profile identity failed on {sig}")
    return total


def _nonhyp_components(sig: Signature) -> list[Optional[str]]:
    # spin components exist once all orders are even; an equal odd pair
    # (g-1, g-1) carries a single nonhyperelliptic component; genus three
    # splits off hyperelliptic pieces only for (4) and (2,2)
    orders = sig.orders
    g = sig.genus
    if g < 3:
        return []
    if g == 3:
        return ["odd"] if orders in ((4,), (2, 2)) else [None]
    if all(v % 2 == 0 for v in orders):
        return ["odd", "even"]
    if sig.n == 2 and orders[0] == orders[1]:
        return ["nonhyp"]
    return [None]


def _divisor_condition_label(divisor: Sequence[int], h0: int) -> str:
    terms = []
    for i, c in enumerate(divisor):
        if c == 1:
            terms.append(f"p{i + 1}")
        elif c > 1:
            terms.append(f"{c}p{i + 1}")
    return f"override[h0({'+'.join(terms)})={h0}]"


def _nonhyp_records(sig, rhs, entries):
    """(model, chi1, item, component) rows for the nonhyperelliptic side."""
    g = sig.genus
    if g < 3:
        return []
    cap_total = clifford_profile_chi1(sig)
    if Fraction(cap_total) < rhs:
        return []
    if sig.orders[0] == 1:
        # every level is canonical or trivial, so the profile is exact for
        # any nonhyperelliptic curve
        return [("clifford-max", cap_total, "stratum", None)]
    specials = [
        e for e in entries if e.signature == sig.orders and e.locus_condition
    ]
    if specials:
        out = []
        for e in specials:
            divisor, h0 = e.locus_condition
            model = cm.OverrideModel(
                cm.CliffordMaxModel(g), ((tuple(divisor), h0),)
            )
            chi1 = sum(cm.filtration_dims(model, sig, 1)[1:])
            if chi1 != e.expected.chi1_log:
                raise RuntimeError(
                    f"{e.id}: override filtration gives {chi1}, "
                    f"stored {e.expected.chi1_log}"
                )
            out.append(
                (_divisor_condition_label(divisor, h0), chi1, "locus", e.component)
            )
        return out
    out = []
    for comp in _nonhyp_components(sig):
        matches = [
            e
            for e in entries
            if e.signature == sig.orders
            and e.locus_condition is None
            and e.component == comp
        ]
        if matches:
            values = {e.expected.chi1_log for e in matches}
            if len(values) != 1:
                raise RuntimeError(
                    f"catalog disagrees on chi1_log for {sig.orders} {comp}"
                )
            label = "catalog[" + "|".join(sorted(e.id for e in matches)) + "]"
            out.append((label, values.pop(), "stratum", comp))
        elif (sig.orders, comp) in EXCLUSIONS:
            continue
        else:
            raise UnresolvedSignatureError(
                f"{sig.orders} component {comp}: Clifford screen passes "
                f"({cap_total} >= {rhs}) but no catalog value, exclusion "
                f"rule or exact profile applies"
            )
    return out


# ---------------------------------------------------------------------------
# symmetric semigroups at a single zero


@dataclass(frozen=True)
class SemigroupRecord:
    """A symmetric semigroup scored against the single-zero threshold."""

    semigroup: sg.NumericalSemigroup
    chi1_log: int
    element_sum: int  # the g smallest elements
    hyperelliptic: bool
    spin: Optional[str]
    passed: bool


def semigroup_search(g: int, threshold=DEFAULT_THRESHOLD) -> tuple[SemigroupRecord, ...]:
    """Score every symmetric semigroup of genus g for the (2g-2) stratum.

    chi1_log = g(2g-1) - sum of the g smallest elements, cross-checked by
    summing the section-count filtration; at tau = 3/8 passing is the
    element-sum bound sum <= g^2 - 1.
    """
    if g < 2:
        raise ValueError("single-zero strata need genus at least 2")
    coeff = threshold_coefficient(threshold)
    sig = derive((2 * g - 2,))
    rhs = coeff * (2 * g - 2 + 1) * sig.ell
    out = []
    for H in sg.enumerate_symmetric(g):
        total = sum(H.first_elements(g))
        chi1 = g * (2 * g - 1) - total
        dims = cm.filtration_dims(cm.UnibranchModel(H), sig, 1)
        if sum(dims[1:]) != chi1:
            raise RuntimeError(f"unibranch chi1 routes disagree for {H}")
        spin = None
        if not H.hyperelliptic:
            spin = "odd" if H.count_upto(g - 1) % 2 else "even"
        out.append(
            SemigroupRecord(
                semigroup=H,
                chi1_log=chi1,
                element_sum=total,
                hyperelliptic=H.hyperelliptic,
                spin=spin,
                passed=Fraction(chi1) >= rhs,
            )
        )
    return tuple(out)


def _unibranch_records(g: int, threshold) -> list[tuple[str, int, str, Optional[str]]]:
    """Nonhyperelliptic semigroup rows; hyperelliptic ones are taggings.

    A passing semigroup is a full stratum when every same-spin symmetric
    semigroup of the genus passes (so the whole spin component clears the
    bound), and only a locus inside the stratum otherwise.
    """
    records = [r for r in semigroup_search(g, threshold) if not r.hyperelliptic]
    all_pass: dict[str, bool] = {}
    for r in records:
        all_pass[r.spin] = all_pass.get(r.spin, True) and r.passed
    out = []
    for r in records:
        item = "stratum" if all_pass[r.spin] else "locus"
        out.append((f"unibranch({r.semigroup})", r.chi1_log, item, r.spin))
    return out


# ---------------------------------------------------------------------------
# the search


def _zero_extended(sig: Signature, k: int) -> Signature:
    return derive(sig.orders + (0,) * k)


def alpha_search(
    g: int,
    catalog=None,
    threshold=DEFAULT_THRESHOLD,
    *,
    dangling: bool = False,
    max_branches: int = 4,
    genus_bound: int = GENUS_BOUND,
) -> tuple[Candidate, ...]:
    """All models at genus g whose alpha-invariant clears the threshold.

    Emits passing candidates only.  With ``dangling`` each scored record
    is re-evaluated for every subset Q of its core branches with the
    right-hand side lowered by sum of a_i over Q, which can admit models
    the plain search rejects; appended ordinary points never dangle.
    ``max_branches`` widens the enumeration only to demonstrate that the
    Clifford cap prunes everything beyond four branches.
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    if g > genus_bound:
        raise ValueError(
            f"genus {g} beyond the configured bound {genus_bound}; "
            "pass genus_bound explicitly to go further"
        )
    entries = list(catalog) if catalog is not None else list(cat.entries())
    coeff = threshold_coefficient(threshold)

    # (sig, model label, chi1, item, component, tagging-or-None)
    rows: list[tuple[Signature, str, int, str, Optional[str], Optional[Tagging]]] = []
    if g == 1:
        rows.append((derive((0,)), "elliptic", 1, "genus-one", None, None))
    else:
        for sig in enumerate_signatures(g, max_branches):
            rhs = coeff * (2 * g - 2 + sig.n) * sig.ell
            if clifford_cap(sig) < rhs:
                continue  # kills every n >= 5 signature
            for tagging in hyperelliptic_taggings(sig):
                chi1 = hyperelliptic_chi1(sig, tagging)
                rows.append(
                    (sig, tagging.label, chi1, "hyperelliptic", "hyp", tagging)
                )
            if sig.n == 1:
                for label, chi1, item, comp in _unibranch_records(g, threshold):
                    rows.append((sig, label, chi1, item, comp, None))
            else:
                for label, chi1, item, comp in _nonhyp_records(sig, rhs, entries):
                    rows.append((sig, label, chi1, item, comp, None))

    found: dict[tuple, Candidate] = {}

    def emit(cand: Candidate) -> None:
        found.setdefault((cand.signature, cand.model, cand.dangling), cand)

    for sig, label, chi1, item, comp, tagging in rows:
        subsets: list[tuple[int, ...]] = [()]
        if dangling:
            subsets = [
                q
                for r in range(sig.n + 1)
                for q in itertools.combinations(range(sig.n), r)
            ]
        for q in subsets:
            cand = _make_candidate(sig, label, chi1, coeff, item, comp, q)
            if not cand.passed:
                continue
            emit(cand)
            reduction = sum(sig.weights_a[i] for i in q)
            slack = (
                Fraction(chi1) / coeff + reduction
            ) / sig.ell - (2 * g - 2 + sig.n)
            for k in range(1, math.floor(slack) + 1):
                ext = _zero_extended(sig, k)
                ext_label = tagging.with_free(k).label if tagging else label
                emit(_make_candidate(ext, ext_label, chi1, coeff, item, comp, q))

    return tuple(sorted(found.values(), key=Candidate.sort_key))


# ---------------------------------------------------------------------------
# nonvarying regression


class RegressionError(AssertionError):
    """A recomputed invariant differs from the shipped value."""


@dataclass(frozen=True)
class RegressionCheck:
    entry_id: str
    field: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class RegressionReport:
    checks: tuple[RegressionCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> tuple[RegressionCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)


def nonvarying_regression(entries=None, *, raise_on_mismatch: bool = True) -> RegressionReport:
    """Recompute every shipped invariant of the nonvarying catalog entries.

    Covers the gap sequence, delta, genus, the Gorenstein test, spin
    parity, both characters from the weight spectra, alpha, slope, and
    the ambient weights read off the generator degrees.  A mismatch is a
    hard failure naming the entry and field unless ``raise_on_mismatch``
    is disabled, in which case the report carries the failures.
    """
    if entries is None:
        entries = cat.nonvarying_entries()
    checks: list[RegressionCheck] = []

    def check(entry_id: str, field: str, expected, actual) -> None:
        c = RegressionCheck(entry_id, field, expected, actual)
        if raise_on_mismatch and not c.ok:
            raise RegressionError(
                f"{entry_id}: {field}: expected {expected!r}, got {actual!r}"
            )
        checks.append(c)

    for e in entries:
        sig = derive(e.signature)
        alg = e.algebra()
        exp = e.expected
        check(e.id, "gap_sequence", tuple(exp.gap_sequence), ba.gap_sequence(alg))
        delta, genus = ba.delta_and_genus(alg)
        check(e.id, "delta", exp.delta, delta)
        check(e.id, "genus", sig.genus, genus)
        report = ba.conductor_and_gorenstein(alg)
        check(e.id, "gorenstein", True, report.gorenstein)
        if all(v % 2 == 0 for v in e.signature):
            half = tuple(v // 2 for v in e.signature)
            parity = ba.section_space(alg, half).dimension % 2
            spin = "odd" if parity else "even"
        else:
            spin = None
        check(e.id, "spin", exp.spin, spin)
        chi1 = inv.weight_spectrum(alg, 1).chi_log
        chi2 = inv.weight_spectrum(alg, 2).chi_log
        check(e.id, "chi1_log", exp.chi1_log, chi1)
        check(e.id, "chi2_log", exp.chi2_log, chi2)
        check(e.id, "alpha", exp.alpha, inv.alpha(chi1, chi2))
        check(e.id, "slope", exp.slope, inv.slope(chi1, chi2, sig))
        degrees = sorted(gen.degree for gen in alg.generators) + [1]
        check(
            e.id,
            "ambient_weights",
            sorted(exp.ambient_weights),
            sorted(degrees),
        )
    return RegressionReport(tuple(checks))
