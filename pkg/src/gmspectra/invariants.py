"""Weight spectra and the exact rational invariants built from them.

The m-th spectrum lists the multiplicities N_{m,lam} of the scaling weights
on m-fold pluricanonical sections; its weighted sum is the character
chi_m^log.  From the first two characters come the alpha-invariant and the
slope, always as exact fractions.  A standalone lattice-point identity
cross-checks the one-branch toric count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import branch_algebra as ba
from .curve_models import filtration_dims
from .signature import Signature, ladder


@dataclass(frozen=True)
class WeightSpectrum:
    m: int
    entries: tuple[tuple[int, int], ...]  # (weight, multiplicity), ascending

    @property
    def chi_log(self) -> int:
        return sum(lam * mult for lam, mult in self.entries)

    @property
    def total_multiplicity(self) -> int:
        return sum(mult for _, mult in self.entries)

    def multiplicity(self, lam: int) -> int:
        for weight, mult in self.entries:
            if weight == lam:
                return mult
        return 0

    def nonzero_weights(self) -> tuple[int, ...]:
        """Positive weights repeated with multiplicity, ascending."""
        out = []
        for lam, mult in self.entries:
            if lam > 0:
                out.extend([lam] * mult)
        return tuple(out)


def weight_spectrum(source, m: int = 1, sig: Signature | None = None) -> WeightSpectrum:
    """Spectrum from a branch algebra, or from an h0 model plus signature.

    Algebra route: N_{m,lam} = dim R_{m*ell - lam}.  Model route: successive
    differences of the filtration dimensions.  Both need level m within the
    algebra's degree cap (the model route has no cap).
    """
    if m < 1:
        raise ValueError("pluricanonical level m must be at least 1")
    if isinstance(source, ba.BranchAlgebra):
        top = m * source.signature.ell
        if top > source.degree_cap:
            raise ValueError(
                f"level {m} needs graded dimensions up to {top}, cap is {source.degree_cap}"
            )
        counts = [(lam, source.dim(top - lam)) for lam in range(top + 1)]
    else:
        if sig is None:
            raise ValueError("model sources need the signature")
        dims = filtration_dims(source, sig, m)
        counts = [
            (lam, dims[lam] - (dims[lam + 1] if lam + 1 < len(dims) else 0))
            for lam in range(len(dims))
        ]
        if any(c < 0 for _, c in counts):
            raise ValueError("filtration dimensions are not non-increasing")
    return WeightSpectrum(m, tuple((lam, c) for lam, c in counts if c > 0))


@dataclass(frozen=True)
class WeightIdentityReport:
    top_multiplicity_ok: bool  # N_{m,(m-1)ell} = n - 1
    ladder_differences_ok: bool  # N_{m,lam} = sum_i (l_{lam+1,i} - l_{lam,i}) below (m-1)ell
    shifted_tail_ok: bool  # weights above (m-1)ell are (m-1)ell + w_i
    chi_formula_ok: bool  # chi_m^log = (m-1)m(2g-2+n)ell/2 + sum w_i
    notes: tuple[str, ...]

    @property
    def all_pass(self) -> bool:
        return (
            self.top_multiplicity_ok
            and self.ladder_differences_ok
            and self.shifted_tail_ok
            and self.chi_formula_ok
        )


def verify_weight_identities(
    spectrum_m: WeightSpectrum, spectrum_1: WeightSpectrum, sig: Signature
) -> WeightIdentityReport:
    """Check the four structural identities tying level m to level one."""
    m = spectrum_m.m
    if m < 2:
        raise ValueError("identities compare level m >= 2 against level one")
    if spectrum_1.m != 1:
        raise ValueError("second argument must be the level-one spectrum")
    n = sig.n
    ell = sig.ell
    pivot = (m - 1) * ell
    notes = []

    top_ok = spectrum_m.multiplicity(pivot) == n - 1
    if not top_ok:
        notes.append(
            f"multiplicity at {pivot} is {spectrum_m.multiplicity(pivot)}, not {n - 1}"
        )

    ladder_ok = True
    for lam in range(pivot):
        expected = sum(ladder(sig, lam + 1)) - sum(ladder(sig, lam))
        if spectrum_m.multiplicity(lam) != expected:
            ladder_ok = False
            notes.append(
                f"multiplicity at {lam} is {spectrum_m.multiplicity(lam)}, "
                f"ladder difference gives {expected}"
            )
            break

    tail = tuple(
        lam for lam, mult in spectrum_m.entries if lam > pivot for _ in range(mult)
    )
    shifted = tuple(pivot + w for w in spectrum_1.nonzero_weights())
    tail_ok = sorted(tail) == sorted(shifted)
    if not tail_ok:
        notes.append(f"tail weights {tail} differ from shifted {shifted}")

    g = sig.genus
    expected_chi = (m - 1) * m * (2 * g - 2 + n) * ell // 2 + sum(
        spectrum_1.nonzero_weights()
    )
    chi_ok = spectrum_m.chi_log == expected_chi
    if not chi_ok:
        notes.append(f"chi_{m}^log is {spectrum_m.chi_log}, formula gives {expected_chi}")

    return WeightIdentityReport(top_ok, ladder_ok, tail_ok, chi_ok, tuple(notes))


# ------------------------------------------------- characters and ratios


def chi2_from_log(chi2_log: int, sig: Signature) -> int:
    """Drop the logarithmic correction: chi_2 = chi_2^log - sum_i a_i."""
    return chi2_log - sum(sig.weights_a)


def alpha(
    chi1_log: int, chi2_log: int, sig: Signature | None = None, dangling=()
) -> Fraction:
    """The alpha-invariant (13x1 - 2x2) / (13x1 - x2) on log characters.

    Dangling branch indices subtract their weight a_i from chi_2^log first;
    passing any requires the signature.
    """
    adjusted = chi2_log
    if dangling:
        if sig is None:
            raise ValueError("dangling branches need the signature for their weights")
        adjusted -= sum(sig.weights_a[i] for i in set(dangling))
    den = 13 * chi1_log - adjusted
    if den == 0:
        raise ValueError("alpha undefined: 13*chi1_log equals the adjusted chi2_log")
    return Fraction(13 * chi1_log - 2 * adjusted, den)


def slope(chi1_log: int, chi2_log: int, sig: Signature) -> Fraction:
    """Slope of the character pair, computed along both routes.

    Route one is (13*chi_1 - chi_2)/chi_1; route two rewrites it through
    the level-two character identity.  They agree exactly iff the pair
    satisfies that identity, so a mismatch raises.
    """
    if chi1_log <= 0:
        raise ValueError("chi1_log must be positive")
    chi2 = chi2_from_log(chi2_log, sig)
    direct = Fraction(13 * chi1_log - chi2, chi1_log)
    g, n, ell = sig.genus, sig.n, sig.ell
    deficit = (2 * g - 2 + n) * ell - sum(sig.weights_a)
    rewritten = 12 - Fraction(deficit, chi1_log)
    if direct != rewritten:
        raise ValueError(
            f"slope routes disagree ({direct} vs {rewritten}): "
            "chi2_log does not satisfy the level-two identity"
        )
    return direct


@dataclass(frozen=True)
class AlphaSlopeRecord:
    chi1_log: int
    chi2_log: int
    chi2: int
    alpha: Fraction
    slope: Fraction
    dangling: tuple[int, ...] = ()


def alpha_slope_record(
    chi1_log: int, chi2_log: int, sig: Signature, dangling=()
) -> AlphaSlopeRecord:
    return AlphaSlopeRecord(
        chi1_log=chi1_log,
        chi2_log=chi2_log,
        chi2=chi2_from_log(chi2_log, sig),
        alpha=alpha(chi1_log, chi2_log, sig, dangling),
        slope=slope(chi1_log, chi2_log, sig),
        dangling=tuple(sorted(set(dangling))),
    )


# ------------------------------------------------------- toric identity


@dataclass(frozen=True)
class ToricIdentityReport:
    p: int
    q: int
    branches: int  # b = gcd(p, q)
    closed_form: Fraction
    lattice_count: int
    chi1_log: int  # the lattice count, which is the character

    @property
    def equal(self) -> bool:
        return self.closed_form == self.lattice_count


def toric_lattice_identity(p: int, q: int) -> ToricIdentityReport:
    """Compare the closed form against a brute-force lattice count.

    With b = gcd(p, q) and c = pq - p - q, the claim is
    (c^2 + pq(c + 1) - b^2) / (12b) = sum over n = 0..(c-b)/b of the number
    of lattice points (i, j) >= 0 with qi + pj <= nb.  Degenerate inputs
    with c < b (genus zero) are rejected.
    """
    if p < 2 or q < 2:
        raise ValueError("both parameters must be at least 2")
    b = gcd(p, q)
    c = p * q - p - q
    if c - b < 0:
        raise ValueError(f"degenerate pair ({p}, {q}): pq - p - q < gcd")
    closed = Fraction(c * c + p * q * (c + 1) - b * b, 12 * b)
    total = 0
    for step in range(0, (c - b) // b + 1):
        cap = step * b
        for i in range(cap // q + 1):
            total += (cap - q * i) // p + 1
    return ToricIdentityReport(p, q, b, closed, total, total)
