"""Growth machinery: weighted image spans, span-inclusion bounds, density and
independence witnesses, slow-growth map construction, and window estimates of
the Gelfand-Kirillov dimension.

Everything here is exact except the final log-log slope, which is computed in
rational interval arithmetic: logarithms are evaluated by mpmath at 60
digits and padded to a certified rational enclosure, so the reported slope
interval is a true bound for the exact least-squares slope of the window.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from .linalg import dense_rank
from .quotient import AlgElement, Subspace, TruncatedAlgebra, growth_dims
from .wreath import GammaMap, SMatrix, WreathAlgebra, WreathSpan


# -- growth tables ---------------------------------------------------------


@dataclass
class GrowthTable:
    """Dimension per number of factors, with per-entry exactness bits."""

    label: str
    entries: dict  # n -> (dim, exact)

    def dims(self):
        return [self.entries[n][0] for n in sorted(self.entries)]

    def rows(self):
        return [(n, self.entries[n][0], self.entries[n][1]) for n in sorted(self.entries)]

    @property
    def exact(self) -> bool:
        return all(e for _, e in self.entries.values())


def growth_table(alg: TruncatedAlgebra, generators, n_max: int, label="g") -> GrowthTable:
    dims = growth_dims(alg, generators, n_max)
    return GrowthTable(label, {n + 1: dims[n] for n in range(n_max)})


def degree_one_generators(alg: TruncatedAlgebra):
    one = alg.field.one
    return [alg.element({w: one}) for w in alg.degree_basis(1)]


# -- filtration schedules ----------------------------------------------------


def exp_bounds(x: Fraction, terms: int = 40):
    """Certified rational enclosure of e**x for x >= 0, by the Taylor series
    with an explicit geometric tail bound."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("nonnegative arguments only")
    terms = max(terms, 2 * (int(x) + 2))
    total = Fraction(1)
    term = Fraction(1)
    for k in range(1, terms + 1):
        term = term * x / k
        total += term
    ratio = x / (terms + 1)
    if ratio >= 1:
        raise ValueError("increase the term count")
    tail = term * ratio / (1 - ratio)
    return total, total + tail


class FiltrationSchedule:
    """A strictly increasing sequence of thresholds 0 = n_0 < n_1 < ...

    The analytic constraints a faithful schedule must satisfy (each threshold
    beyond the exponential of its predecessor and of e**e**k) are checked and
    reported, never enforced: miniature schedules are allowed and flagged.
    """

    def __init__(self, thresholds):
        self.thresholds = list(thresholds)
        if any(t <= s for s, t in zip([0] + self.thresholds, self.thresholds)):
            raise ValueError("thresholds must be strictly increasing positive integers")

    def __len__(self):
        return len(self.thresholds)

    def threshold(self, k: int) -> int:
        """n_k, 1-based; n_0 = 0."""
        if k == 0:
            return 0
        return self.thresholds[k - 1]

    def window_for(self, n: int) -> Optional[int]:
        """Largest k with n_k <= n, or None when n < n_1."""
        k = None
        for i, t in enumerate(self.thresholds, start=1):
            if t <= n:
                k = i
        return k

    def faithful(self):
        """Certified check of the analytic constraints; returns (bool, rows)."""
        rows = []
        ok = True
        for k in range(1, len(self.thresholds) + 1):
            n_k = Fraction(self.threshold(k))
            lo1, hi1 = exp_bounds(Fraction(self.threshold(k - 1)))
            cond1 = n_k > hi1 if n_k > hi1 or n_k <= lo1 else None
            lo_e, hi_e = exp_bounds(Fraction(k))
            lo2, hi2 = exp_bounds(lo_e)[0], exp_bounds(hi_e)[1]
            cond2 = n_k > hi2 if n_k > hi2 or n_k <= lo2 else None
            terms = 60
            while cond1 is None or cond2 is None:
                # sharpen the enclosures until the integer comparison resolves
                terms *= 2
                lo1, hi1 = exp_bounds(Fraction(self.threshold(k - 1)), terms)
                cond1 = True if n_k > hi1 else (False if n_k <= lo1 else None)
                lo_e, hi_e = exp_bounds(Fraction(k), terms)
                lo2, hi2 = exp_bounds(lo_e, terms)[0], exp_bounds(hi_e, terms)[1]
                cond2 = True if n_k > hi2 else (False if n_k <= lo2 else None)
                if terms > 10000:
                    raise RuntimeError("exponential comparison did not resolve")
            rows.append((k, int(n_k), bool(cond1), bool(cond2)))
            ok = ok and cond1 and cond2
        return ok, rows


# -- weighted image spans (the W chain) --------------------------------------


def power_chain(alg: TruncatedAlgebra, generators, n: int):
    """Subspaces spanned by products of at most 1, 2, ..., n factors."""
    chain = []
    span = Subspace(alg, generators)
    chain.append(span)
    frontier = span.representatives()
    gens = span.representatives()
    for _ in range(2, n + 1):
        nxt = Subspace(alg, chain[-1].representatives())
        nxt.exact = chain[-1].exact
        new = []
        for head in frontier:
            for g in gens:
                p = head * g
                if p.flag:
                    nxt.exact = False
                if nxt.add(p):
                    new.append(p)
        frontier = new
        chain.append(nxt)
    return chain


def weighted_image_spans(gamma: GammaMap, v_chain, a_host: TruncatedAlgebra, n: int):
    """The chain W_1 <= ... <= W_n where W_n is spanned by all products of
    images gamma(V^{i_1}) ... gamma(V^{i_r}) with i_1 + ... + i_r <= n.

    Computed by weight: splitting a product at its first factor gives
    W_n = sum_i gamma(V^i) + gamma(V^i) * W_{n-i}, a dynamic program over the
    total weight instead of an enumeration of factorizations.
    """
    gv = []
    for i in range(n):
        images = [gamma.apply(v) for v in v_chain[i].representatives()]
        sub = Subspace(a_host, images)
        sub.exact = sub.exact and v_chain[i].exact
        gv.append(sub)
    ws = []
    for m in range(1, n + 1):
        w = Subspace(a_host)
        exact = True
        for i in range(1, m + 1):
            for rep in gv[i - 1].representatives():
                w.add(rep)
            exact = exact and gv[i - 1].exact
            if m - i >= 1:
                prod = gv[i - 1].product_span(ws[m - i - 1])
                for rep in prod.representatives():
                    w.add(rep)
                exact = exact and prod.exact
        w.exact = w.exact and exact
        ws.append(w)
    return ws


def w_gamma_table(
    b_host: TruncatedAlgebra,
    a_host: TruncatedAlgebra,
    gamma: GammaMap,
    n: int,
    generators=None,
) -> GrowthTable:
    """w(n) = dim W_n for the generating subspace (degree-one part by default)."""
    gens = degree_one_generators(b_host) if generators is None else generators
    chain = power_chain(b_host, gens, n)
    ws = weighted_image_spans(gamma, chain, a_host, n)
    return GrowthTable("w_gamma", {m + 1: (ws[m].dim, ws[m].exact) for m in range(n)})


# -- span inclusion and dimension bounds -------------------------------------


@dataclass
class InclusionReport:
    rows: list  # (n, dim_lhs, dim_rhs, included, bound, bound_ok)
    exact: bool

    @property
    def ok(self):
        return all(r[3] for r in self.rows) and all(r[5] for r in self.rows)


def _wreath_power_chain(wa: WreathAlgebra, generators, n: int):
    chain = []
    span = WreathSpan(wa, generators)
    chain.append(span)
    frontier = span.representatives()
    gens = span.representatives()
    for _ in range(2, n + 1):
        nxt = WreathSpan(wa, chain[-1].representatives())
        nxt.exact = chain[-1].exact
        new = []
        for head in frontier:
            for g in gens:
                p = head * g
                if p.flag:
                    nxt.exact = False
                if nxt.add(p):
                    new.append(p)
        frontier = new
        chain.append(nxt)
    return chain


def _triple_products(wa, v_chain, middle_elements, n):
    """Spanning elements of sum_{i+j+k <= n} V^i * M_j * V^k.

    The middle weight j starts at 0: the bare middle (the row map itself, or
    the corner unit) is the degenerate term the inductive proof consumes, and
    without it the inclusion already fails at n = 1.
    """
    out = []
    for j in range(0, n + 1):
        for m in middle_elements(j):
            for i in range(0, n - j + 1):
                lefts = [None] if i == 0 else v_chain[i - 1].representatives()
                for le in lefts:
                    lm = m if le is None else le * m
                    for k in range(0, n - j - i + 1):
                        rights = [None] if k == 0 else v_chain[k - 1].representatives()
                        for ri in rights:
                            out.append(lm if ri is None else lm * ri)
    return out


def span_inclusion_check(
    b_host: TruncatedAlgebra,
    a_host: TruncatedAlgebra,
    gamma: GammaMap,
    n: int,
    generators=None,
    with_corner=False,
) -> InclusionReport:
    """Verify that products of at most n factors from V + F c (and the corner
    unit e_11(1) when with_corner is set) stay inside the predicted span

        sum_{i+j+k<=n} V^i (W_j c) V^k  +  V^n   [+ sum V^i e_11(W_j) V^k]

    and that the dimension obeys the counting bound
    sum_{i+j+k<=n} g(i) w(j) g(k) + g(n).
    """
    gens = degree_one_generators(b_host) if generators is None else generators
    wa = WreathAlgebra(b_host, a_host, indexing=gamma.indexing)
    c = wa.from_matrix(wa.gamma_row(gamma))
    if with_corner and not a_host.unital:
        raise ValueError("the corner unit needs a unital coefficient algebra")

    b_chain = power_chain(b_host, gens, n)
    ws = weighted_image_spans(gamma, b_chain, a_host, n)
    wv_chain = [
        [wa.embed(v) for v in b_chain[i].representatives()] for i in range(n)
    ]
    wv_spans = [WreathSpan(wa, els) for els in wv_chain]

    u_gens = [wa.embed(v) for v in b_chain[0].representatives()] + [c]
    if with_corner:
        corner = wa.from_matrix(wa.matrix_unit(1, 1, a_host.unit()))
        u_gens.append(corner)
    u_chain = _wreath_power_chain(wa, u_gens, n)

    g_dims = [b_chain[i].dim for i in range(n)]
    w_dims = [ws[j].dim for j in range(n)]

    def row_middles(j):
        if j == 0:
            return [c]
        return [_scale_row(wa, gamma, a) for a in ws[j - 1].representatives()]

    def corner_middles(j):
        if j == 0:
            return [wa.from_matrix(wa.matrix_unit(1, 1, a_host.unit()))]
        return [
            wa.from_matrix(wa.matrix_unit(1, 1, a))
            for a in ws[j - 1].representatives()
        ]

    rows = []
    exact = True
    for m in range(1, n + 1):
        rhs = WreathSpan(wa)
        for v in b_chain[m - 1].representatives():
            rhs.add(wa.embed(v))
        for e in _triple_products(wa, wv_spans, row_middles, m):
            rhs.add(e)
        if with_corner:
            for e in _triple_products(wa, wv_spans, corner_middles, m):
                rhs.add(e)

        lhs = u_chain[m - 1]
        included = rhs.contains_span(lhs)
        bound = g_dims[m - 1]
        for i in range(0, m + 1):
            for j in range(0, m - i + 1):
                for k in range(0, m - i - j + 1):
                    gi = 1 if i == 0 else g_dims[i - 1]
                    gk = 1 if k == 0 else g_dims[k - 1]
                    wj = 1 if j == 0 else w_dims[j - 1]
                    bound += gi * wj * gk
                    if with_corner:
                        bound += gi * wj * gk
        rows.append((m, lhs.dim, rhs.dim, included, bound, lhs.dim <= bound))
        exact = exact and lhs.exact and rhs.exact
    return InclusionReport(rows, exact)


def _scale_row(wa: WreathAlgebra, gamma: GammaMap, a: AlgElement):
    """The row map b -> 1 (x) a*gamma(b), i.e. the left translate a*c."""
    entries = {(1, j): a * v for j, v in gamma.values.items()}
    entries = {k: v for k, v in entries.items() if v}
    return wa.from_matrix(SMatrix(wa.indexing, wa.a_host, entries))


@dataclass
class DenseCheckReport:
    lhs_dim: int
    product_bound: int
    v_dim: int
    w_dim: int
    leq: bool
    equality: bool
    exact: bool


def dense_dim_check(
    b_host: TruncatedAlgebra,
    a_host: TruncatedAlgebra,
    gamma: GammaMap,
    n: int,
    generators=None,
) -> DenseCheckReport:
    """Compare dim V^n (W_n c) V^n with its spanning bound (dim V^n)^2 w(n).

    Equality is the signature of a dense map; the inequality holds always.
    """
    gens = degree_one_generators(b_host) if generators is None else generators
    wa = WreathAlgebra(b_host, a_host, indexing=gamma.indexing)
    b_chain = power_chain(b_host, gens, n)
    ws = weighted_image_spans(gamma, b_chain, a_host, n)
    vn = b_chain[n - 1]
    wn = ws[n - 1]
    span = WreathSpan(wa)
    middles = [_scale_row(wa, gamma, a) for a in wn.representatives()]
    for bi in vn.representatives():
        emb_i = wa.embed(bi)
        for row in middles:
            mid = emb_i * row
            for bk in vn.representatives():
                span.add(mid * wa.embed(bk))
    bound = vn.dim * vn.dim * wn.dim
    return DenseCheckReport(
        span.dim,
        bound,
        vn.dim,
        wn.dim,
        span.dim <= bound,
        span.dim == bound,
        span.exact and vn.exact and wn.exact,
    )


# -- witness searches --------------------------------------------------------


@dataclass
class WitnessReport:
    found: bool
    witness: Optional[AlgElement]
    checked: int
    verified: bool = False
    note: str = ""


def _candidate_elements(host: TruncatedAlgebra, min_degree: int, degree_cap: int, pair_coeffs):
    """Deterministic candidate stream: basis words in deglex order, then
    two-word combinations with small coefficients."""
    one = host.field.one
    words = [
        w
        for d in range(min_degree, degree_cap + 1)
        for w in host.degree_basis(d)
    ]
    for w in words:
        yield host.element({w: one})
    for a_i in range(len(words)):
        for b_i in range(a_i + 1, len(words)):
            for ca in pair_coeffs:
                for cb in pair_coeffs:
                    if host.field.is_zero(ca) or host.field.is_zero(cb):
                        continue
                    yield host.element({words[a_i]: ca, words[b_i]: cb})


def _default_pair_coeffs(host: TruncatedAlgebra):
    f = host.field
    if f.kind == "rational":
        return [f.one, f.neg(f.one)]
    return [f.from_int(k) for k in range(1, f.characteristic)]


def density_witness(
    gamma: GammaMap,
    b_list,
    a: AlgElement,
    degree_cap: int,
    pair_coeffs=None,
) -> WitnessReport:
    """Search for b with gamma(b_i b) = 0 for i < n and a*gamma(b_n b) != 0.

    The scan covers basis words in deglex order and then two-word
    combinations with small coefficients; exhaustion is not a proof that no
    witness exists (over a finite field at desk scale the searched slice can
    be legitimately empty).
    """
    host = gamma.indexing.host
    if not b_list:
        raise ValueError("need at least one element")
    if not a:
        raise ValueError("the test element must be nonzero")
    if Subspace(host, b_list).dim != len(b_list):
        raise ValueError("the given elements are linearly dependent")
    coeffs = _default_pair_coeffs(host) if pair_coeffs is None else pair_coeffs
    checked = 0
    for b in _candidate_elements(host, 1, degree_cap, coeffs):
        checked += 1
        if _density_holds(gamma, b_list, a, b):
            verified = _density_holds(gamma, b_list, a, b)
            return WitnessReport(True, b, checked, verified)
    return WitnessReport(False, None, checked, note="search slice exhausted")


def _density_holds(gamma: GammaMap, b_list, a: AlgElement, b: AlgElement) -> bool:
    for bi in b_list[:-1]:
        prod = bi * b
        if prod.flag:
            return False
        if gamma.apply(prod):
            return False
    last = b_list[-1] * b
    if last.flag:
        return False
    image = gamma.apply(last)
    final = a * image
    return bool(final) and not final.flag


def shift_independence_witness(
    b_host: TruncatedAlgebra,
    b_list,
    s: int,
    degree_cap: Optional[int] = None,
    pair_coeffs=None,
) -> WitnessReport:
    """Find b among products of at least s factors keeping b_1 b, ..., b_n b
    linearly independent; the witness is re-verified by an independent dense
    rank computation."""
    if Subspace(b_host, b_list).dim != len(b_list):
        raise ValueError("the given elements are linearly dependent")
    cap = b_host.truncation_degree if degree_cap is None else degree_cap
    coeffs = _default_pair_coeffs(b_host) if pair_coeffs is None else pair_coeffs
    checked = 0
    for b in _candidate_elements(b_host, s, cap, coeffs):
        checked += 1
        shifted = [bi * b for bi in b_list]
        if any(e.flag for e in shifted):
            continue
        if Subspace(b_host, shifted).dim == len(b_list):
            verified = dense_rank([e.terms for e in shifted], b_host.field) == len(b_list)
            return WitnessReport(True, b, checked, verified)
    return WitnessReport(False, None, checked, note="search slice exhausted")


# -- slow-growth gamma construction ------------------------------------------


@dataclass
class SlowGammaReport:
    gamma: GammaMap
    assignments: list  # (k, chosen word, image word count)
    table: GrowthTable
    bound_rows: list  # (n, w, exponent denominator data, within_bound)


def build_slow_gamma(
    a_host: TruncatedAlgebra,
    b_host: TruncatedAlgebra,
    schedule: FiltrationSchedule,
    d: Fraction,
    n_max: Optional[int] = None,
) -> SlowGammaReport:
    """Construct a map whose weighted image span grows like the coefficient
    algebra's own growth: the deglex-greatest new basis word at each
    threshold is sent to the next enumerated basis element, everything else
    new to zero.

    Emits the w table and certified comparisons w(n) <= n**(d + 1/k) on each
    window (k the window index), by exact integer power comparison.
    """
    from .wreath import BasisIndexing

    indexing = BasisIndexing(b_host)
    a_basis = a_host.basis_words()
    if a_host.unital:
        a_basis = [w for w in a_basis if not w.is_empty]
    if len(schedule) > len(a_basis):
        raise ValueError("coefficient algebra too small for the schedule")
    if schedule.thresholds and schedule.thresholds[-1] > b_host.truncation_degree:
        raise ValueError("schedule exceeds the host truncation")

    values = {}
    assignments = []
    f = b_host.field
    for k in range(1, len(schedule) + 1):
        lo, hi = schedule.threshold(k - 1), schedule.threshold(k)
        new_words = [
            w for dd in range(lo + 1, hi + 1) for w in b_host.degree_basis(dd)
        ]
        if not new_words:
            raise ValueError(f"schedule step {k}: no new basis words")
        v_k = max(new_words)
        a_k = a_host.element({a_basis[k - 1]: f.one})
        values[indexing.index_of(v_k)] = a_k
        assignments.append((k, v_k, len(new_words)))
    gamma = GammaMap(indexing, a_host, values)

    n_top = schedule.threshold(len(schedule)) if n_max is None else n_max
    table = w_gamma_table(b_host, a_host, gamma, n_top)
    d = Fraction(d)
    bound_rows = []
    for n, (w, exact) in sorted(table.entries.items()):
        k = schedule.window_for(n)
        if k is None or w == 0:
            bound_rows.append((n, w, None, True))
            continue
        # w <= n^(d + 1/k)  <=>  w^(qk) <= n^(pk + q) for d = p/q
        p, q = d.numerator, d.denominator
        ok = w ** (q * k) <= n ** (p * k + q)
        bound_rows.append((n, w, (k, p, q), bool(ok)))
    return SlowGammaReport(gamma, assignments, table, bound_rows)


# -- Gelfand-Kirillov window estimates ----------------------------------------


@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __add__(self, other):
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other):
        return RatInterval(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, other):
        cs = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RatInterval(min(cs), max(cs))

    def __truediv__(self, other):
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("interval denominator contains zero")
        cs = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        return RatInterval(min(cs), max(cs))

    def scale(self, c: Fraction):
        a, b = self.lo * c, self.hi * c
        return RatInterval(min(a, b), max(a, b))

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def abs_hi(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    f = Fraction(man) * (Fraction(2) ** exp)
    return -f if sign else f


_LOG_PAD = Fraction(1, 10**40)


def log_interval(x) -> RatInterval:
    """A certified rational enclosure of log(x) for rational x > 0.

    mpmath evaluates at 60 digits (error under one unit in the 59th place);
    the enclosure pads by 10**-40, a margin millions of times wider than the
    worst-case rounding error.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log of a nonpositive value")
    with mpmath.workdps(60):
        v = mpmath.log(mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator))
    f = _mpf_to_fraction(v)
    return RatInterval(f - _LOG_PAD, f + _LOG_PAD)


@dataclass
class GKEstimate:
    slope_lo: Fraction
    slope_hi: Fraction
    window: tuple
    residual_hi: Fraction
    points: int
    superpolynomial: bool
    note: str = ""

    @property
    def slope(self) -> Fraction:
        return (self.slope_lo + self.slope_hi) / 2


def gk_estimate(
    table: GrowthTable,
    window: tuple,
    ratio_threshold: Fraction = Fraction(5, 4),
) -> GKEstimate:
    """Window least-squares slope of log dim against log n.

    This is a window-relative report, not the definition's infimum: no finite
    truncation can certify that.  Inexact entries are excluded; at least four
    exact points must remain.  The superpolynomial flag fires when every
    successive dimension ratio in the window exceeds the threshold.
    """
    lo, hi = window
    pts = [
        (n, dim)
        for n, (dim, exact) in sorted(table.entries.items())
        if lo <= n <= hi and exact and dim > 0
    ]
    if len(pts) < 4:
        raise ValueError("need at least four exact positive entries in the window")
    ratios = [Fraction(b[1], a[1]) for a, b in zip(pts, pts[1:])]
    superpoly = all(r > ratio_threshold for r in ratios)

    xs = [log_interval(n) for n, _ in pts]
    ys = [log_interval(dim) for _, dim in pts]
    m = len(pts)
    inv_m = Fraction(1, m)
    x_mean = _interval_sum(xs).scale(inv_m)
    y_mean = _interval_sum(ys).scale(inv_m)
    dx = [x - x_mean for x in xs]
    dy = [y - y_mean for y in ys]
    num = _interval_sum([a * b for a, b in zip(dx, dy)])
    den = _interval_sum([a * a for a in dx])
    slope = num / den
    residual = max((y - slope * x).abs_hi() for x, y in zip(dx, dy))
    return GKEstimate(
        slope.lo,
        slope.hi,
        (lo, hi),
        residual,
        m,
        superpoly,
        note="window slope only; the defining infimum is not computable from finite data",
    )


def _interval_sum(intervals):
    total = RatInterval(Fraction(0), Fraction(0))
    for iv in intervals:
        total = total + iv
    return total


# -- corollary-style bound table ----------------------------------------------


def growth_bound_report(
    b_host: TruncatedAlgebra,
    a_host: TruncatedAlgebra,
    gamma: GammaMap,
    n_max: int,
    generators=None,
    with_corner=False,
):
    """Rows (n, dim of the generated span, counting bound, within_bound)."""
    report = span_inclusion_check(
        b_host, a_host, gamma, n_max, generators=generators, with_corner=with_corner
    )
    return [(n, lhs, bound, ok) for (n, lhs, _, _, bound, ok) in report.rows], report.exact
