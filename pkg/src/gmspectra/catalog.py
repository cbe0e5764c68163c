"""Shipped singularity catalog.

Each entry records a branch-algebra presentation (generator monomial terms and
dualizing units) together with the frozen invariants it is expected to
reproduce: gap sequence, delta, both characters, alpha, slope, spin parity,
and the ambient weighted-projective weights.  Entries live in
``data/strata.json``; parametric families (A/D series, elliptic multiple
points, monomial curves) are constructed on demand by :func:`family`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from importlib import resources
from math import lcm
from typing import Optional, Sequence, Union

from . import branch_algebra as ba
from . import semigroup as sg
from .semigroup import NumericalSemigroup
from .signature import derive

Terms = tuple[tuple[int, int, Fraction], ...]


@dataclass(frozen=True)
class ExpectedInvariants:
    gap_sequence: tuple[int, ...]
    delta: int
    chi1_log: int
    chi2_log: int
    alpha: Fraction
    slope: Fraction
    spin: Optional[str]
    ambient_weights: tuple[int, ...]


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    aliases: tuple[str, ...]
    signature: tuple[int, ...]
    component: Optional[str]  # hyp / odd / even / nonhyp, or None
    nonvarying: bool
    generators: tuple[tuple[str, Terms], ...]
    dualizing_units: tuple[Fraction, ...]
    expected: ExpectedInvariants
    # (divisor, h0) pinning a special locus inside a varying stratum
    locus_condition: Optional[tuple[tuple[int, ...], int]] = None

    def algebra(self, degree_cap: Optional[int] = None) -> ba.BranchAlgebra:
        sig = derive(self.signature)
        gens = [ba.generator(sig, terms, name) for name, terms in self.generators]
        return ba.close(sig, gens, degree_cap=degree_cap)


def _coeff(value) -> Fraction:
    return Fraction(value) if not isinstance(value, str) else Fraction(value)


def _entry_from_doc(doc: dict) -> CatalogEntry:
    exp = doc["expected"]
    expected = ExpectedInvariants(
        gap_sequence=tuple(exp["gap_sequence"]),
        delta=exp["delta"],
        chi1_log=exp["chi1_log"],
        chi2_log=exp["chi2_log"],
        alpha=Fraction(exp["alpha"]),
        slope=Fraction(exp["slope"]),
        spin=exp["spin"],
        ambient_weights=tuple(exp["ambient_weights"]),
    )
    locus = None
    if doc.get("locus_condition"):
        locus = (tuple(doc["locus_condition"]["divisor"]), doc["locus_condition"]["h0"])
    return CatalogEntry(
        id=doc["id"],
        aliases=tuple(doc.get("aliases", ())),
        signature=tuple(doc["signature"]),
        component=doc.get("component"),
        nonvarying=doc["nonvarying"],
        generators=tuple(
            (g["name"], tuple((t[0], t[1], _coeff(t[2])) for t in g["terms"]))
            for g in doc["generators"]
        ),
        dualizing_units=tuple(_coeff(u) for u in doc["dualizing_units"]),
        expected=expected,
        locus_condition=locus,
    )


_CACHE: Optional[tuple[CatalogEntry, ...]] = None


def entries() -> tuple[CatalogEntry, ...]:
    """All stored entries, in file order."""
    global _CACHE
    if _CACHE is None:
        text = resources.files("gmspectra.data").joinpath("strata.json").read_text()
        _CACHE = tuple(_entry_from_doc(doc) for doc in json.loads(text)["entries"])
    return _CACHE


def get(key: str) -> CatalogEntry:
    """Look up a stored entry by id or alias (case-sensitive)."""
    for entry in entries():
        if key == entry.id or key in entry.aliases:
            return entry
    known = ", ".join(e.id for e in entries())
    raise KeyError(f"no catalog entry {key!r}; known ids: {known}")


def nonvarying_entries() -> tuple[CatalogEntry, ...]:
    return tuple(e for e in entries() if e.nonvarying)


def special_locus_entries() -> tuple[CatalogEntry, ...]:
    """Entries pinned to an h^0 locus inside a varying stratum."""
    return tuple(e for e in entries() if e.locus_condition is not None)


def as_dict(entry: CatalogEntry) -> dict:
    """JSON-ready representation (fractions rendered as 'p/q')."""
    doc = {
        "id": entry.id,
        "aliases": list(entry.aliases),
        "signature": list(entry.signature),
        "component": entry.component,
        "nonvarying": entry.nonvarying,
        "generators": [
            {"name": name, "terms": [[b, e, str(c) if c.denominator != 1 else int(c)] for b, e, c in terms]}
            for name, terms in entry.generators
        ],
        "dualizing_units": [str(u) if u.denominator != 1 else int(u) for u in entry.dualizing_units],
        "expected": {
            "gap_sequence": list(entry.expected.gap_sequence),
            "delta": entry.expected.delta,
            "chi1_log": entry.expected.chi1_log,
            "chi2_log": entry.expected.chi2_log,
            "alpha": str(entry.expected.alpha),
            "slope": str(entry.expected.slope),
            "spin": entry.expected.spin,
            "ambient_weights": list(entry.expected.ambient_weights),
        },
    }
    if entry.locus_condition is not None:
        divisor, h0 = entry.locus_condition
        doc["locus_condition"] = {"divisor": list(divisor), "h0": h0}
    return doc


# --- parametric families -------------------------------------------------

def _alpha_from_characters(chi1: int, chi2_log: int) -> Fraction:
    den = 13 * chi1 - chi2_log
    if den == 0:
        raise ValueError("alpha undefined: chi2_log = 13 * chi1_log")
    return Fraction(13 * chi1 - 2 * chi2_log, den)


def _slope_from_characters(chi1: int, chi2_log: int, a_sum: int) -> Fraction:
    return Fraction(13 * chi1 - (chi2_log - a_sum), chi1)


def _expected(sig: Sequence[int], gap: Sequence[int], delta: int, chi1: int,
              chi2_log: int, spin: Optional[str], ambient: Sequence[int]) -> ExpectedInvariants:
    ell = lcm(*(m + 1 for m in sig))
    a_sum = sum(ell // (m + 1) for m in sig)
    return ExpectedInvariants(
        gap_sequence=tuple(gap),
        delta=delta,
        chi1_log=chi1,
        chi2_log=chi2_log,
        alpha=_alpha_from_characters(chi1, chi2_log),
        slope=_slope_from_characters(chi1, chi2_log, a_sum),
        spin=spin,
        ambient_weights=tuple(ambient),
    )


def _monomial_entry(H: NumericalSemigroup) -> CatalogEntry:
    if not H.symmetric:
        raise ValueError(f"monomial entry needs a symmetric semigroup, got {H}")
    g = H.genus
    sig = (2 * g - 2,)
    gens = tuple((f"x{i+1}", ((0, h, Fraction(1)),)) for i, h in enumerate(H.generators))
    chi1 = sum(H.gaps)
    chi2_log = (2 * g - 1) ** 2 + chi1
    gap = tuple(0 if H.contains(j) else 1 for j in range(1, 2 * g))
    if H.hyperelliptic:
        ident, component, spin = f"A{2 * g}", "hyp", None
    else:
        spin = "even" if H.count_upto(g - 1) % 2 == 0 else "odd"
        component = spin
        ident = {(3, 4): "E6", (3, 5): "E8"}.get(H.generators, f"monomial{H}")
    return CatalogEntry(
        id=ident,
        aliases=(),
        signature=sig,
        component=component,
        nonvarying=H.hyperelliptic or ident in ("E6", "E8"),
        generators=gens,
        dualizing_units=(Fraction(1),),
        expected=_expected(sig, gap, g, chi1, chi2_log, spin, (*H.generators, 1)),
    )


def family(name: str, *, g: Optional[int] = None, n: Optional[int] = None,
           H: Union[NumericalSemigroup, Sequence[int], None] = None) -> CatalogEntry:
    """Construct a parametric-family entry.

    Names: ``A`` (one branch, y^2 = x^{2g+1}), ``A-odd`` (two conjugate
    branches, y^2 = x^{2g+2}), ``D-odd`` (x(y^2 - x^{2g-1})), ``D-even``
    (x(y^2 - x^{2g})), ``elliptic`` (n >= 3 concurrent general lines), and
    ``monomial`` (symmetric semigroup H).
    """
    one = Fraction(1)
    if name == "A":
        if g is None or g < 2:
            raise ValueError("family 'A' needs g >= 2")
        return _monomial_entry(sg.from_generators((2, 2 * g + 1)))
    if name == "A-odd":
        if g is None or g < 2:
            raise ValueError("family 'A-odd' needs g >= 2")
        sig = (g - 1, g - 1)
        gens = (
            ("x", ((0, 1, one), (1, 1, one))),
            ("y", ((0, g + 1, one), (1, g + 1, -one))),
        )
        exp = _expected(sig, (1,) * g, g + 1, g * (g + 1) // 2,
                        (5 * g * g + g) // 2, None, (1, g + 1, 1))
        return CatalogEntry(f"A{2*g+1}", (), sig, "hyp", True, gens,
                            (one, -one), exp)
    if name == "D-odd":
        if g is None or g < 2:
            raise ValueError("family 'D-odd' needs g >= 2")
        sig = (2 * g - 2, 0)
        gens = (
            ("x", ((0, 2, one),)),
            ("y", ((0, 2 * g - 1, one), (1, 1, one))),
        )
        gap = tuple(1 if j % 2 == 1 else 0 for j in range(1, 2 * g))
        exp = _expected(sig, gap, g + 1, g * g, 5 * g * g - 2 * g, None,
                        (2, 2 * g - 1, 1))
        return CatalogEntry(f"D{2*g+1}", (), sig, "hyp", True, gens,
                            (one, -one), exp)
    if name == "D-even":
        if g is None or g < 2:
            raise ValueError("family 'D-even' needs g >= 2")
        sig = (g - 1, g - 1, 0)
        gens = (
            ("x", ((0, 1, one), (1, 1, one))),
            ("y", ((0, g, one), (1, g, -one), (2, 1, one))),
        )
        exp = _expected(sig, (1,) * g, g + 2, g * (g + 1) // 2,
                        (5 * g * g + 3 * g) // 2, None, (1, g, 1))
        return CatalogEntry(f"D{2*g+2}", (), sig, "hyp", True, gens,
                            (one, -one, -2 * one), exp)
    if name == "elliptic":
        if n is None or n < 3:
            raise ValueError("family 'elliptic' needs n >= 3")
        sig = (0,) * n
        gens = tuple(
            (f"x{j+1}", tuple((i, 1, Fraction((i + 1) ** j)) for i in range(n)))
            for j in range(n - 1)
        )
        exp = _expected(sig, (1,), n, 1, n + 1, None, (1,) * n)
        return CatalogEntry(f"elliptic-{n}", (), sig, None, False, gens,
                            tuple(_elliptic_units(n)), exp)
    if name == "monomial":
        if H is None:
            raise ValueError("family 'monomial' needs H")
        semi = H if isinstance(H, NumericalSemigroup) else sg.from_generators(tuple(H))
        return _monomial_entry(semi)
    raise ValueError(f"unknown family {name!r}")


def _elliptic_units(n: int) -> list[Fraction]:
    # residues of t_i^{-1} dt_i pairing: for concurrent lines with slopes
    # v_i = i+1 the dualizing germ weights are the Lagrange denominators
    # u_i = 1 / prod_{j != i} (v_i - v_j), scaled to integers
    vals = [i + 1 for i in range(n)]
    units = []
    for i, v in enumerate(vals):
        prod = 1
        for j, w in enumerate(vals):
            if j != i:
                prod *= v - w
        units.append(Fraction(1, prod))
    scale = lcm(*(u.denominator for u in units))
    return [u * scale for u in units]


def with_ordinary_points(entry: CatalogEntry, k: int) -> CatalogEntry:
    """Append ``k`` ordinary (order-zero) branches to a catalog entry.

    The first character is unchanged, the second grows by k*ell, delta grows
    by k, and the gap sequence, spin, and slope are untouched.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    sig = entry.signature
    n = len(sig)
    m1 = sig[0]
    ell = lcm(*(m + 1 for m in sig))
    new_sig = (*sig, *(0,) * k)
    one = Fraction(1)
    extra = tuple(
        (f"s{j+1}", ((0, m1 + 1, one), (n + j, 1, one)))
        for j in range(k)
    )
    old = entry.expected
    expected = ExpectedInvariants(
        gap_sequence=old.gap_sequence,
        delta=old.delta + k,
        chi1_log=old.chi1_log,
        chi2_log=old.chi2_log + k * ell,
        alpha=_alpha_from_characters(old.chi1_log, old.chi2_log + k * ell),
        slope=old.slope,
        spin=old.spin,
        ambient_weights=(*old.ambient_weights[:-1], *(ell,) * k, 1),
    )
    return CatalogEntry(
        id=f"{entry.id}+{k}pt",
        aliases=(),
        signature=new_sig,
        component=entry.component,
        nonvarying=False,
        generators=(*entry.generators, *extra),
        dualizing_units=(*entry.dualizing_units, *(-one,) * k),
        expected=expected,
    )
