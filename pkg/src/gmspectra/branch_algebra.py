"""Graded subalgebras of a product of polynomial branches.

The ambient ring is a product of n polynomial rings, one per branch,
with the degree of an exponent-e monomial on branch i set to e*a_i.
A homogeneous element of degree k is stored as its coefficient vector
over the branches that can carry degree k (those with a_i | k), and
multiplication is componentwise, so closing a generating set under
products reduces to degree-by-degree linear algebra over the
rationals.  Everything downstream (delta, gap sequence, conductor,
section spaces) reads off the graded bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .signature import Signature, derive

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class MonomialVector:
    """A homogeneous combination of one monomial per branch."""

    terms: tuple[tuple[int, int, Fraction], ...]  # (branch, exponent, coefficient)
    degree: int
    name: str = ""

    def coefficient(self, branch: int) -> Fraction:
        for b, _, c in self.terms:
            if b == branch:
                return c
        return _ZERO

    def __str__(self) -> str:
        parts = []
        for b, e, c in self.terms:
            mono = f"t{b + 1}" + (f"^{e}" if e > 1 else "")
            parts.append(mono if c == 1 else f"({c})*{mono}")
        body = " + ".join(parts) if parts else "0"
        return f"{self.name} = {body}" if self.name else body


def generator(sig: Signature, terms, name: str = "") -> MonomialVector:
    """Validate and package generator terms as (branch, exponent, coeff)."""
    seen = {}
    degree = None
    for branch, exp, coeff in terms:
        coeff = Fraction(coeff)
        if coeff == 0:
            continue
        if not 0 <= branch < sig.n:
            raise ValueError(f"branch {branch} out of range for {sig}")
        if exp < 1:
            raise ValueError(f"exponent {exp} must be at least 1")
        if branch in seen:
            raise ValueError(f"branch {branch} appears twice in one generator")
        d = exp * sig.weights_a[branch]
        if degree is None:
            degree = d
        elif d != degree:
            raise ValueError(
                f"non-homogeneous generator: degree {d} on branch {branch}, "
                f"expected {degree}"
            )
        seen[branch] = (branch, exp, coeff)
    if degree is None:
        raise ValueError("generator has no nonzero terms")
    return MonomialVector(tuple(seen[b] for b in sorted(seen)), degree, name)


# ------------------------------------------------- exact linear algebra


def _rref(rows):
    """Reduced row echelon form of rational row vectors, canonical order."""
    pivots: list[tuple[int, list[Fraction]]] = []
    for row in rows:
        r = list(row)
        for col, p in pivots:
            if r[col]:
                f = r[col]
                r = [x - f * y for x, y in zip(r, p)]
        lead = next((j for j, x in enumerate(r) if x), None)
        if lead is None:
            continue
        inv = r[lead]
        pivots.append((lead, [x / inv for x in r]))
    pivots.sort(key=lambda cp: cp[0])
    for idx in range(len(pivots) - 1, -1, -1):
        col, r = pivots[idx]
        for col2, r2 in pivots[idx + 1 :]:
            if r[col2]:
                f = r[col2]
                r = [x - f * y for x, y in zip(r, r2)]
        pivots[idx] = (col, r)
    return tuple(tuple(r) for _, r in pivots)


def _in_span(rows, vector) -> bool:
    r = list(vector)
    for row in rows:
        lead = next(j for j, x in enumerate(row) if x)
        if r[lead]:
            f = r[lead]
            r = [x - f * y for x, y in zip(r, row)]
    return not any(r)


def _vanishing_subspace(rows, zero_cols):
    """Basis of the subspace of span(rows) vanishing on the given columns."""
    if not rows:
        return ()
    ncols = len(rows[0])
    zero_cols = sorted(set(zero_cols))
    order = zero_cols + [j for j in range(ncols) if j not in zero_cols]
    permuted = _rref([tuple(r[j] for j in order) for r in rows])
    cut = len(zero_cols)
    kept = [r for r in permuted if next(j for j, x in enumerate(r) if x) >= cut]
    inverse = [0] * ncols
    for pos, j in enumerate(order):
        inverse[j] = pos
    return tuple(tuple(r[inverse[j]] for j in range(ncols)) for r in kept)


# ----------------------------------------------------------- the algebra


@dataclass(eq=False)
class BranchAlgebra:
    signature: Signature
    generators: tuple[MonomialVector, ...]
    degree_cap: int
    graded_basis: dict[int, tuple[tuple[Fraction, ...], ...]]
    _gap_full: tuple[int, ...] | None = field(default=None, repr=False)

    @property
    def branches(self) -> int:
        return self.signature.n

    def slots(self, k: int) -> tuple[int, ...]:
        a = self.signature.weights_a
        return tuple(i for i in range(self.signature.n) if k % a[i] == 0)

    def dim(self, k: int) -> int:
        if not 0 <= k <= self.degree_cap:
            raise ValueError(f"degree {k} outside [0, {self.degree_cap}]")
        return len(self.graded_basis[k])

    def contains(self, terms) -> bool:
        """Membership of a homogeneous element given as generator-style terms."""
        element = generator(self.signature, terms)
        k = element.degree
        if k > self.degree_cap:
            raise ValueError(f"degree {k} beyond cap {self.degree_cap}")
        sl = self.slots(k)
        vec = tuple(element.coefficient(i) for i in sl)
        if any(element.coefficient(i) for i in range(self.signature.n) if i not in sl):
            return False
        return _in_span(self.graded_basis[k], vec)


def default_degree_cap(sig: Signature, m_max: int = 2) -> int:
    top_order = sig.orders[0] + 2
    return max(m_max * sig.ell, max(a * top_order for a in sig.weights_a))


def close(sig: Signature, generators_in, degree_cap: int | None = None) -> BranchAlgebra:
    """Span all products of the generators, degree by degree, up to the cap."""
    if degree_cap is None:
        degree_cap = default_degree_cap(sig)
    if degree_cap < 2 * sig.ell:
        raise ValueError(f"degree cap {degree_cap} below 2*ell = {2 * sig.ell}")
    gens = []
    for g in generators_in:
        if isinstance(g, MonomialVector):
            g = generator(sig, g.terms, g.name)  # revalidate against sig
        else:
            g = generator(sig, g)
        gens.append(g)
    a = sig.weights_a
    n = sig.n
    basis: dict[int, tuple] = {0: ((_ONE,) * n,)}
    slot_cache = {k: tuple(i for i in range(n) if k % a[i] == 0) for k in range(degree_cap + 1)}
    for k in range(1, degree_cap + 1):
        sl = slot_cache[k]
        candidates = []
        for g in gens:
            d = g.degree
            if d > k:
                continue
            prev = basis[k - d]
            prev_pos = {i: pos for pos, i in enumerate(slot_cache[k - d])}
            coeffs = {b: c for b, _, c in g.terms}
            for v in prev:
                w = tuple(
                    coeffs.get(i, _ZERO) * v[prev_pos[i]] if i in prev_pos else _ZERO
                    for i in sl
                )
                if any(w):
                    candidates.append(w)
        basis[k] = _rref(candidates)
    return BranchAlgebra(sig, tuple(gens), degree_cap, basis)


def graded_dims(alg: BranchAlgebra) -> tuple[int, ...]:
    return tuple(len(alg.graded_basis[k]) for k in range(alg.degree_cap + 1))


# --------------------------------------------------- singularity numbers


def _gap_sequence_full(alg: BranchAlgebra) -> tuple[int, ...]:
    """Codimensions of the leading-coefficient spaces at orders 1..max(m)+2."""
    if alg._gap_full is not None:
        return alg._gap_full
    sig = alg.signature
    a = sig.weights_a
    n = sig.n
    top = sig.orders[0] + 2
    if alg.degree_cap < top * max(a):
        raise ValueError(
            f"degree cap {alg.degree_cap} cannot reach order {top} on every branch"
        )
    alphas = []
    for j in range(1, top + 1):
        rank = 0
        for k in sorted({j * a[i] for i in range(n)}):
            sl = alg.slots(k)
            below = [pos for pos, i in enumerate(sl) if k // a[i] < j]
            level = [pos for pos, i in enumerate(sl) if k // a[i] == j]
            sub = _vanishing_subspace(alg.graded_basis[k], below)
            rank += len(_rref([tuple(r[p] for p in level) for r in sub]))
        alphas.append(n - rank)
    alg._gap_full = tuple(alphas)
    return alg._gap_full


def gap_sequence(alg: BranchAlgebra) -> tuple[int, ...]:
    """Gap sequence (alpha_1, ..., alpha_{max(m)+1}) of the singular point."""
    return _gap_sequence_full(alg)[: alg.signature.orders[0] + 1]


def delta_and_genus(alg: BranchAlgebra) -> tuple[int, int]:
    """(delta, arithmetic genus): delta counts the order-0 piece too."""
    g = sum(gap_sequence(alg))
    delta = alg.signature.n - 1 + g
    assert g == delta - alg.signature.n + 1
    return delta, g


@dataclass(frozen=True)
class ConductorReport:
    conductor: tuple[int, ...]  # per-branch exponents c_i
    quotient_length: int  # dim of R modulo the pure-monomial ideal
    gorenstein: bool
    conductor_bound_ok: bool  # every c_i within the expected window
    delta: int


def conductor_and_gorenstein(alg: BranchAlgebra) -> ConductorReport:
    """Per-branch conductor exponents and the length test len(R/c) = delta.

    c_i is the least exponent from which pure powers of t_i all lie in R
    across the checked window ending at max(m)+2; inputs whose conductor
    ideal genuinely starts beyond that window are reported with
    conductor_bound_ok = False rather than rejected.
    """
    sig = alg.signature
    a = sig.weights_a
    n = sig.n
    top = sig.orders[0] + 2
    if alg.degree_cap < top * max(a):
        raise ValueError(
            f"degree cap {alg.degree_cap} cannot reach exponent {top} on every branch"
        )
    conductor = []
    bound_ok = True
    for i in range(n):
        pure = [alg.contains([(i, e, 1)]) for e in range(1, top + 1)]
        c = top + 1
        for e in range(top, 0, -1):
            if pure[e - 1]:
                c = e
            else:
                break
        conductor.append(c)
        if c > top:
            bound_ok = False
    delta, _ = delta_and_genus(alg)
    k_top = max(a[i] * conductor[i] for i in range(n))
    if k_top > alg.degree_cap:
        raise ValueError(f"conductor window needs degree {k_top} > cap {alg.degree_cap}")
    length = 0
    for k in range(k_top + 1):
        sl = alg.slots(k)
        outside = [pos for pos, i in enumerate(sl) if k // a[i] < conductor[i]]
        inside = _vanishing_subspace(alg.graded_basis[k], outside)
        length += len(alg.graded_basis[k]) - len(inside)
    return ConductorReport(
        conductor=tuple(conductor),
        quotient_length=length,
        gorenstein=bound_ok and length == delta,
        conductor_bound_ok=bound_ok,
        delta=delta,
    )


@dataclass(frozen=True)
class SectionSpace:
    dimension: int
    by_degree: tuple[tuple[int, int], ...]  # (degree, dim) with dim > 0


def section_space(alg: BranchAlgebra, divisor) -> SectionSpace:
    """Sections bounded by the divisor: pole order at most c_i on branch i.

    Degree-k elements contribute when their branch-i component vanishes
    wherever k/a_i exceeds c_i; a negative c_i excludes its branch in
    every degree, including the constants.
    """
    sig = alg.signature
    a = sig.weights_a
    if len(divisor) != sig.n:
        raise ValueError(f"divisor needs {sig.n} coefficients, got {len(divisor)}")
    k_top = max((a[i] * c for i, c in enumerate(divisor) if c >= 0), default=-1)
    if k_top > alg.degree_cap:
        raise ValueError(f"divisor needs degree {k_top} > cap {alg.degree_cap}")
    per = []
    total = 0
    for k in range(k_top + 1):
        sl = alg.slots(k)
        excluded = [pos for pos, i in enumerate(sl) if k > a[i] * divisor[i]]
        d = len(_vanishing_subspace(alg.graded_basis[k], excluded))
        if d:
            per.append((k, d))
            total += d
    return SectionSpace(total, tuple(per))


# --------------------------------------------------------- validation


@dataclass(frozen=True)
class GConditionReport:
    no_bare_parameters: bool  # (G1)
    homogeneous: bool  # (G2), structural after close()
    conductor_bound: bool  # (G3)
    dualizing_pairs: bool  # (G4)
    gap_tail: bool  # (G5)
    notes: tuple[str, ...]

    @property
    def all_pass(self) -> bool:
        return (
            self.no_bare_parameters
            and self.homogeneous
            and self.conductor_bound
            and self.dualizing_pairs
            and self.gap_tail
        )


def validate_G_conditions(alg: BranchAlgebra, dualizing_units=None) -> GConditionReport:
    """Check the five structural conditions of a dualizing-graded branch ring."""
    sig = alg.signature
    n = sig.n
    notes = []
    if dualizing_units is None:
        units = (_ONE,) * n
    else:
        units = tuple(Fraction(u) for u in dualizing_units)
        if len(units) != n or any(u == 0 for u in units):
            raise ValueError("need one nonzero unit per branch")

    g1 = True
    for i in range(n):
        if alg.contains([(i, 1, 1)]):
            g1 = False
            notes.append(f"bare parameter on branch {i} lies in the ring")

    top = sig.orders[0] + 2
    g3 = True
    for i in range(n):
        reach = alg.degree_cap // sig.weights_a[i]
        for e in range(top, reach + 1):
            if not alg.contains([(i, e, 1)]):
                g3 = False
                notes.append(f"pure power t{i + 1}^{e} missing from the ring")
                break

    g4 = True
    for i in range(n):
        for j in range(i + 1, n):
            terms = [
                (i, sig.orders[i] + 1, units[j]),
                (j, sig.orders[j] + 1, -units[i]),
            ]
            if not alg.contains(terms):
                g4 = False
                notes.append(f"dualizing pair test fails for branches ({i}, {j})")

    full = _gap_sequence_full(alg)
    maxm = sig.orders[0]
    g5 = full[maxm] == 1 and all(v == 0 for v in full[maxm + 1 :])
    if not g5:
        notes.append(f"gap tail is {full[maxm:]}, expected (1, 0, ...)")

    return GConditionReport(
        no_bare_parameters=g1,
        homogeneous=True,
        conductor_bound=g3,
        dualizing_pairs=g4,
        gap_tail=g5,
        notes=tuple(notes),
    )


# ------------------------------------------------------------- JSON I/O


def algebra_from_json(doc: dict, degree_cap: int | None = None):
    """Build (algebra, dualizing units) from a plain JSON document.

    Branch indices are 0-based; coefficients and units are rational
    strings such as "1", "-1", or "3/2".
    """
    sig = derive(doc["signature"])
    gens = [
        generator(
            sig,
            [(m["branch"], m["exp"], Fraction(m["coeff"])) for m in gd["monomials"]],
            name=gd.get("name", ""),
        )
        for gd in doc["generators"]
    ]
    units = tuple(Fraction(u) for u in doc.get("dualizing_units", ["1"] * sig.n))
    if len(units) != sig.n:
        raise ValueError("dualizing_units length must match the number of branches")
    return close(sig, gens, degree_cap), units


def algebra_summary(alg: BranchAlgebra) -> dict:
    """Plain-JSON summary of the computed singularity invariants."""
    delta, genus = delta_and_genus(alg)
    report = conductor_and_gorenstein(alg)
    return {
        "delta": delta,
        "genus": genus,
        "gap_sequence": list(gap_sequence(alg)),
        "conductor": list(report.conductor),
        "gorenstein": report.gorenstein,
        "graded_dims": list(graded_dims(alg)),
    }
