"""The binary sequence family and its exact correlation distribution.

Family members have period 2^n - 1 and are indexed by (alpha, beta) pairs
(norm + quadratic + linear trace terms), by beta alone (no linear term), and
by the bare quadratic term, depending on the parity case. Every periodic
cross-correlation reduces to S(alpha', beta', gamma') - 1 for parameters swept
bijectively by the relative shift, so the full correlation histogram is
predicted exactly by compositions of the closed-form sum distributions. The
literally tabulated histogram rows are also evaluated and compared, and any
discrepancy is reported as a flag, never silently repaired.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .distribution import ValueDistribution, VerificationError, pack_bits_hex
from .expsum import s_spectrum_formula, t_spectrum_formula
from .field import (_factorize, rel_trace_table, scale_table,
                    subfield_elements)

__all__ = [
    "BinarySequence", "SequenceFamily", "family_size", "build_family",
    "correlation", "correlation_distribution",
    "correlation_distribution_formula", "correlation_table_printed",
    "check_inequivalence", "family_dump_lines",
]


def _exact(frac):
    if frac.denominator != 1 or frac < 0:
        raise VerificationError(f"count expression is not a natural number: {frac}")
    return int(frac)


def _p2(e):
    return Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)


@dataclass(frozen=True, eq=False)
class BinarySequence:
    """One period of a binary sequence plus its family label."""

    label: str
    bits: np.ndarray

    @property
    def period(self):
        return len(self.bits)


@dataclass(frozen=True, eq=False)
class SequenceFamily:
    """All members for one parameter set, in deterministic build order."""

    params: object
    members: tuple
    expected_size: int

    @property
    def size(self):
        return len(self.members)


def family_size(params):
    """Member count: 2^(3m), plus 2^m - 1 or 2^m extra in the even cases."""
    base = 1 << (3 * params.m)
    if params.case == "EvenM":
        return base + (1 << params.m) - 1
    if params.case == "EvenK":
        return base + (1 << params.m)
    return base


def build_family(ctx, params):
    """Construct every member sequence; bit lam is the term at pi^lam."""
    q = ctx.q
    L = q - 1
    lam = np.arange(L, dtype=np.int64)
    p1 = ctx.exp_table[(lam * (params.e_norm % L)) % L]
    p2 = ctx.exp_table[(lam * (params.e_quad % L)) % L]
    pl = ctx.exp_table[lam]
    tr1m = rel_trace_table(ctx, 1, params.m)
    trn = ctx.trace_table
    sub = subfield_elements(ctx, params.m)

    members = []
    for alpha in sub:
        a1 = tr1m[scale_table(ctx, alpha)[p1]]
        for beta in range(q):
            bits = (a1 ^ trn[scale_table(ctx, beta)[p2] ^ pl].astype(np.int64))
            members.append(BinarySequence(label=f"F1({alpha},{beta})",
                                          bits=bits.astype(np.uint8)))
    if params.case in ("EvenM", "EvenK"):
        a1 = tr1m[p1]
        for i in range((1 << params.m) - 1):
            beta = int(ctx.exp_table[i])
            bits = a1 ^ trn[scale_table(ctx, beta)[p2]].astype(np.int64)
            members.append(BinarySequence(label=f"F2({beta})",
                                          bits=bits.astype(np.uint8)))
    if params.case == "EvenK":
        members.append(BinarySequence(label="F3",
                                      bits=trn[p2].astype(np.uint8)))
    fam = SequenceFamily(params=params, members=tuple(members),
                         expected_size=family_size(params))
    if fam.size != fam.expected_size:
        raise VerificationError(
            f"family has {fam.size} members, expected {fam.expected_size}")
    return fam


def correlation(a, b, tau):
    """Periodic cross-correlation of two members at shift tau."""
    shifted = np.roll(b.bits, -tau)
    return int(len(a.bits) - 2 * int(np.count_nonzero(a.bits ^ shifted)))


def correlation_distribution(family, workers=1):
    """Histogram of correlations over all member pairs and all shifts."""
    mats = np.stack([m.bits for m in family.members])
    signs = (1 - 2 * mats.astype(np.float32))
    count = len(family.members)
    L = mats.shape[1]
    # C[i,j](L - tau) = C[j,i](tau), so the all-pairs histogram at shift
    # L - tau duplicates the one at tau; L is odd, leaving tau = 0 unpaired.
    taus = range((L - 1) // 2 + 1)

    def work(tau_span):
        # Buffers are reused across shifts; the products are exact integers
        # in float32 (partial sums stay far below 2^24).
        acc = np.zeros(2 * L + 1, dtype=np.int64)
        prod = np.empty((count, count), dtype=np.float32)
        flat = prod.reshape(-1)
        idx = np.empty(count * count, dtype=np.intp)
        rolled = np.empty_like(signs)
        for tau in tau_span:
            rolled[:, :L - tau] = signs[:, tau:]
            rolled[:, L - tau:] = signs[:, :tau]
            np.matmul(signs, rolled.T, out=prod)
            np.copyto(idx, flat, casting="unsafe")
            idx += L
            hist = np.bincount(idx, minlength=2 * L + 1)
            acc += hist if tau == 0 else 2 * hist
        return acc

    if workers > 1:
        spans = np.array_split(np.arange(len(taus)), workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, [s.tolist() for s in spans]))
        acc = sum(parts)
    else:
        acc = work(taus)
    counts = {int(v - L): int(c) for v, c in enumerate(acc) if c}
    dist = ValueDistribution.from_counts(counts)
    if dist.total != count * count * L:
        raise VerificationError(f"correlation sweep covered {dist.total} triples")
    return dist


def _t_zero_alpha_count(params, kappa):
    """Number of beta with T(0, beta) = kappa + 1, as a Fraction."""
    q = params.q
    m, d = params.m, params.d
    if kappa == q - 1:
        return Fraction(1)
    if params.case == "EvenK" and kappa == -1:
        return Fraction(q - 1)
    if params.case == "EvenM":
        if kappa == (1 << m) - 1:
            return Fraction((1 << d) * (q - 1), (1 << d) + 1)
        if kappa == -(1 << (m + d)) - 1:
            return Fraction(q - 1, (1 << d) + 1)
    return Fraction(0)


def _bare_norm_quad_count(params, kappa):
    """Shift counts for the single no-linear-term sequence against itself."""
    if kappa == params.q - 1:
        return Fraction(1)
    if kappa == -(1 << params.m) - 1:
        return Fraction((1 << params.m) - 2)
    return Fraction(0)


def correlation_distribution_formula(params):
    """Exact correlation histogram composed from the sum distributions.

    Pair blocks are counted separately (both members with linear term, one
    with, none, and the bare quadratic member when present) and each block's
    shift sweep is an exact cover of sum parameters, so every count is an
    integer combination of the closed-form multiplicities. Notes carry the
    comparison against the literally tabulated rows.
    """
    t_dist = t_spectrum_formula(params)
    s_dist = s_spectrum_formula(params)
    q = params.q
    m = params.m
    L = q - 1
    case = params.case
    kappas = sorted({v - 1 for v in s_dist.values})
    counts = {}
    for kappa in kappas:
        sk = Fraction(s_dist.count(kappa + 1))
        tk = Fraction(t_dist.count(kappa + 1))
        t0k = _t_zero_alpha_count(params, kappa)
        lk = _bare_norm_quad_count(params, kappa)
        total = Fraction(1 << (3 * m)) * ((q - 2) * sk + tk) / (q - 1)
        if case in ("EvenM", "EvenK"):
            m12 = Fraction((1 << m) - 1) * (sk - tk)
            m22 = (Fraction((1 << m) - 2) * (q - 2) * tk / (q - 1)
                   + Fraction(q - 2) * t0k / (q - 1)
                   + lk / ((1 << m) + 1))
            total += 2 * m12 + m22
        if case == "EvenK":
            m13 = sk - tk
            m23 = (Fraction(q - 2) * (tk - t0k) / (q - 1)
                   + (Fraction(1, (1 << m) + 1)
                      if kappa == -(1 << m) - 1 else Fraction(0)))
            m33 = Fraction((q - 2) if kappa == -1 else 0) + (
                Fraction(1) if kappa == q - 1 else Fraction(0))
            total += 2 * m13 + 2 * m23 + m33
        counts[kappa] = _exact(total)
    dist = ValueDistribution.from_counts(counts)
    expected_total = family_size(params) ** 2 * L
    if dist.total != expected_total:
        raise VerificationError(
            f"composed correlation counts total {dist.total}, "
            f"expected {expected_total}")
    return dist.with_notes(_reconcile_printed(params, dist))


def correlation_table_printed(params):
    """The tabulated histogram rows, evaluated literally: (value, Fraction)."""
    n, m, d = params.n, params.m, params.d
    p = _p2
    if params.case == "EvenM":
        den = p(2 * d) - 1
        rows = [
            ((1 << m) - 1,
             (p(4 * n + 2 * d - 1) - p(4 * n + d - 1) - p(4 * n - 1)
              + p(7 * m + 2 * d - 1) - p(7 * m + d - 1) + p(3 * n + 2 * d - 1)
              - p(5 * m + 2 * d) + p(5 * m + d) + p(5 * m)
              - p(2 * n + 2 * d + 1) + p(2 * n + d + 1) + p(2 * n)
              - p(3 * m + 2 * d) - p(3 * m) + p(n + 2 * d) - p(n + d + 1)
              + p(m + 2 * d + 1) - p(m + d) - p(2 * d) + p(d)) / den),
            (-(1 << m) - 1,
             (p(4 * n + 2 * d - 1) - p(4 * n + d - 1) - p(4 * n - 1)
              - p(7 * m + 2 * d - 1) + p(7 * m + d - 1) + p(7 * m)
              + p(3 * n + 2 * d - 1) - p(3 * n) - p(5 * m + 2 * d + 1)
              + p(5 * m + d) + p(5 * m + 1) + p(2 * n + 2 * d) - p(2 * n + 1)
              - p(3 * m + d + 1) + p(n + 2 * d) + p(n + d) + p(n) - p(m)
              - p(2 * d) + p(d) + 2) / den),
            ((1 << (m + d)) - 1,
             p(m - d) * (p(m - d) + 1) * (p(m + d) - 1)
             * (p(5 * m - 1) - p(n) - p(m) + 1) / den),
            (-(1 << (m + d)) - 1,
             (p(4 * n - d - 1) - p(7 * m - 1) - p(7 * m - 2 * d - 1)
              + p(3 * n - d - 1) - p(5 * m - d) + p(2 * n) - p(2 * n - d)
              + p(2 * n - 2 * d) + p(3 * m) + p(3 * m - 2 * d) + p(n + d)
              - p(n + 1) - p(n - d) - p(n - 2 * d) + 3 * p(m - d)
              - p(d + 1)) / den),
            (-1,
             p(4 * n - d) - p(7 * m - 2 * d) + p(5 * m) - p(5 * m - d + 1)
             - p(2 * n - d + 1) + p(2 * n - 2 * d + 1) + p(3 * m - d + 1)
             + p(3 * m - 2 * d + 1) - p(n + 1) - p(n - 2 * d + 1) - p(m + 1)
             + p(m - d + 1) + 2),
            ((1 << n) - 1, p(3 * m) + p(m) - 1),
        ]
    elif params.case == "EvenK":
        den = p(2 * d) - 1
        rows = [
            ((1 << m) - 1,
             (p(4 * n + 2 * d - 1) - p(4 * n + d - 1) - p(4 * n - 1)
              + p(7 * m + 2 * d - 1) - p(7 * m + d - 1) + p(3 * n + 2 * d - 1)
              - p(2 * n + 2 * d) + p(2 * n + d) + p(2 * n) - p(3 * m + 2 * d)
              + p(3 * m + d) - p(n + 2 * d)) / den),
            (-(1 << m) - 1,
             (p(4 * n + 2 * d - 1) - p(4 * n + d - 1) - p(4 * n - 1)
              - p(7 * m + 2 * d - 1) + p(7 * m + d - 1) + p(7 * m)
              + p(3 * n + 2 * d - 1) - p(3 * n) - p(5 * m + 2 * d) + p(5 * m)
              + p(2 * n + d) - p(3 * m + d) - p(3 * m) + p(n) + p(m + 2 * d)
              - p(m)) / den),
            ((1 << (m + d)) - 1,
             p(n - d) * (p(m - d) + 1) * (p(m + d) - 1)
             * (p(2 * n - 1) - 1) / den),
            (-(1 << (m + d)) - 1,
             p(n - d) * (p(m - d) - 1) * (p(m + d) - 1)
             * (p(2 * n - 1) - 1) / den),
            (-1,
             p(4 * n - d) - p(7 * m - 2 * d) + p(5 * m) - p(2 * n - d + 1)
             + p(3 * m - 2 * d + 1) - p(m + 1)),
            ((1 << n) - 1, p(3 * m) + p(m)),
        ]
    else:
        e2 = p(n) - p(n - 2 * d) - p(n - 3 * d) + p(m) - p(m - d) + 1
        xi2 = (p(3 * m - d) - p(3 * m - 2 * d) + p(3 * m - 3 * d)
               - p(3 * m - 4 * d) + p(3 * m - 5 * d) + p(n - d)
               - 2 * p(n - 2 * d) + p(n - 3 * d) - p(n - 4 * d) + 1)
        bsum = p(m) + p(m - d) + p(m - 2 * d) + 1
        den = (p(d) + 1) * (p(2 * d) - 1)
        rows = [
            (1 << m, p(2 * n + 3 * d - 1) * (p(n) - 2) * e2 / den),
            (-(1 << m),
             p(3 * m + 3 * d) * (p(3 * m - 1) - p(n) + 1) * e2 / den),
            (1 << (m + d),
             p(3 * m) * (p(2 * n - d - 1) + p(3 * m - 1) - p(n - d) - p(m)
                         + p(d)) * bsum / (p(d) + 1) ** 2),
            (-(1 << (m + d)),
             p(2 * n - 1) * (p(m - d) - 1) * (p(n) - 2) * bsum
             / (p(d) + 1) ** 2),
            (1 << (m + 2 * d),
             p(2 * n - 2 * d - 1) * (p(m - 2 * d) + 1) * (p(m - d) - 1)
             * (p(n) - 2) / den),
            (-(1 << (m + 2 * d)),
             p(3 * m) * (p(m - d) - 1)
             * (p(2 * n - 2 * d - 1) - p(3 * m - 2 * d - 1) - p(n - 2 * d)
                + p(m - 2 * d) + 1) / den),
            (0, p(3 * m) * (p(n) - 2) * xi2),
            (1 << m, p(3 * m)),
        ]
    return tuple(rows)


def _reconcile_printed(params, composed):
    """Compare the literal table rows against the composed histogram.

    Returns note strings describing every discrepancy: a constant offset
    between tabulated values and true correlations, rows whose multiplicity
    disagrees, duplicated values, rows that are not integers, and totals that
    do not cover |family|^2 (2^n - 1). Empty means the table matches as
    printed.
    """
    printed = correlation_table_printed(params)
    notes = []
    best_shift, best_score = 0, -1
    for shift in (0, -1):
        score = sum(1 for v, c in printed
                    if c.denominator == 1 and composed.count(v + shift) == c)
        if score > best_score:
            best_shift, best_score = shift, score
    if best_shift:
        notes.append(
            "tabulated values match derived counts only after subtracting 1 "
            "(kappa = tabulated value - 1); offset applied for comparison")
    seen = set()
    m, d = params.m, params.d
    for v, c in printed:
        kappa = v + best_shift
        if c.denominator != 1 or c < 0:
            note = (f"tabulated multiplicity at value {v} is not a "
                    f"natural number: {c}")
            deficit = composed.count(kappa) - c
            pattern = Fraction(
                (1 << (m + 2 * d)) - (1 << (m + d)) - (1 << (m + 1)),
                (1 << (2 * d)) - 1)
            if deficit == pattern:
                note += ("; its deficit against the derived count equals "
                         "(2^(m+2d) - 2^(m+d) - 2^(m+1))/(2^(2d) - 1), an "
                         "expression that vanishes only at d = 1")
            notes.append(note)
            continue
        ci = int(c)
        if kappa in seen:
            note = (f"tabulated value {v} appears twice under the applied "
                    f"offset")
            if composed.count(params.q - 1) == ci:
                note += (f"; its multiplicity {ci} equals the derived count "
                         f"at {params.q - 1}, the likely intended value")
            notes.append(note)
            continue
        seen.add(kappa)
        derived = composed.count(kappa)
        if ci != derived:
            notes.append(f"tabulated multiplicity {ci} at kappa={kappa} "
                         f"disagrees with derived {derived}")
    printed_total = sum(c for _, c in printed)
    expected = family_size(params) ** 2 * (params.q - 1)
    if printed_total != expected:
        notes.append(f"tabulated multiplicities total {printed_total}, "
                     f"expected {expected}")
    covered = {v + best_shift for v, _ in printed}
    for kappa, cnt in composed.entries:
        if kappa not in covered:
            notes.append(f"derived kappa={kappa} (count {cnt}) has no "
                         f"tabulated row")
    return tuple(notes)


def check_inequivalence(family):
    """True iff every member has full period and no two are cyclic shifts."""
    params = family.params
    if params.n > 6:
        raise ValueError("exhaustive inequivalence check is limited to n <= 6")
    L = params.q - 1
    mask = (1 << L) - 1
    packed = []
    for member in family.members:
        v = 0
        for i, b in enumerate(member.bits):
            v |= int(b) << i
        packed.append(v)

    def rot(v, r):
        return ((v >> r) | (v << (L - r))) & mask

    for v in packed:
        for prime in _factorize(L):
            if rot(v, L // prime) == v:
                return False
    canon = {min(rot(v, r) for r in range(L)) for v in packed}
    return len(canon) == len(packed)


def family_dump_lines(family):
    """label,hex rows in build order."""
    return [f"{m.label},{pack_bits_hex(m.bits)}" for m in family.members]
