"""Binary cyclic codes from trace forms and their weight distributions.

Codewords of length 2^n - 1 are generated coordinatewise from the same trace
expressions the exponential sums integrate, so every weight is tied to a sum
value by w = 2^(n-1) - value/2. The narrow code (dimension 3m over GF(2)) is
cut out by the parity-check product h2*h3; the wide code (dimension 5m) by
h1*h2*h3, where the h_i are minimal polynomials of pi^-1, pi^-(2^k+1) and
pi^-(2^m+1).
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .distribution import ValueDistribution, VerificationError, pack_bits_hex
from .expsum import s_spectrum_formula, t_spectrum_formula
from .field import (_gf2_polymul, _gf2_polymod, is_irreducible, power_table,
                    rel_trace_table, scale_table, subfield_elements,
                    trace_bit_matrix)

__all__ = [
    "MinimalPolynomial", "minimal_poly", "h_polynomials", "parity_check_mask",
    "code_dimension", "codeword_c1", "codeword_c2", "weight_distribution",
    "weight_distribution_formula", "spectrum_pushforward", "check_cyclicity",
    "codeword_dump_lines",
]

CODES = ("c1", "c2")


@dataclass(frozen=True)
class MinimalPolynomial:
    """Minimal polynomial of pi^exponent over GF(2), coeff bit i at x^i."""

    exponent: int
    coset: tuple
    coeffs: int
    degree: int


def minimal_poly(ctx, e):
    """Minimal polynomial of pi^e, via the 2-cyclotomic coset of e."""
    order = ctx.order
    e %= order
    coset = []
    c = e
    while c not in coset:
        coset.append(c)
        c = (c * 2) % order
    poly = [1]
    for c in coset:
        root = ctx.pow(ctx.pi, c)
        new = [0] * (len(poly) + 1)
        for i, co in enumerate(poly):
            new[i + 1] ^= co
            new[i] ^= ctx.mul(co, root)
        poly = new
    if any(co not in (0, 1) for co in poly):
        raise VerificationError("coset product has coefficients outside GF(2)")
    mask = 0
    for i, co in enumerate(poly):
        mask |= co << i
    return MinimalPolynomial(exponent=e, coset=tuple(coset), coeffs=mask,
                             degree=len(coset))


def h_polynomials(ctx, params):
    """(h1, h2, h3): minimal polynomials of pi^-1, pi^-(2^k+1), pi^-(2^m+1)."""
    return (minimal_poly(ctx, -1),
            minimal_poly(ctx, -params.e_quad),
            minimal_poly(ctx, -params.e_norm))


def parity_check_mask(ctx, params, code):
    """Parity-check polynomial: h2*h3 for c1, h1*h2*h3 for c2."""
    h1, h2, h3 = h_polynomials(ctx, params)
    mask = _gf2_polymul(h2.coeffs, h3.coeffs)
    if code == "c2":
        mask = _gf2_polymul(mask, h1.coeffs)
    elif code != "c1":
        raise ValueError(f"code must be one of {CODES}, got {code!r}")
    return mask


def code_dimension(params, code):
    if code == "c1":
        return 3 * params.m
    if code == "c2":
        return 5 * params.m
    raise ValueError(f"code must be one of {CODES}, got {code!r}")


def _lam_powers(ctx, e):
    """pi^(lam*e) for lam in [0, 2^n - 1)."""
    lam = np.arange(ctx.order, dtype=np.int64)
    return ctx.exp_table[(lam * (e % ctx.order)) % ctx.order]


def codeword_c1(ctx, params, alpha, beta):
    """uint8 coordinates Tr_m(alpha pi^(lam e1)) + Tr_n(beta pi^(lam e2))."""
    if ctx.pow(alpha, 1 << params.m) != alpha:
        raise ValueError(f"alpha {alpha:#x} is not in the GF(2^{params.m}) subfield")
    tr1m = rel_trace_table(ctx, 1, params.m)
    p1 = _lam_powers(ctx, params.e_norm)
    p2 = _lam_powers(ctx, params.e_quad)
    w1 = tr1m[scale_table(ctx, alpha)[p1]]
    w2 = ctx.trace_table[scale_table(ctx, beta)[p2]].astype(np.int64)
    return (w1 ^ w2).astype(np.uint8)


def codeword_c2(ctx, params, alpha, beta, gamma):
    """codeword_c1 plus the linear coordinate Tr_n(gamma pi^lam)."""
    base = codeword_c1(ctx, params, alpha, beta)
    pl = _lam_powers(ctx, 1)
    w3 = ctx.trace_table[scale_table(ctx, gamma)[pl]]
    return base ^ w3


def weight_distribution(ctx, params, code, workers=1):
    """Direct Hamming-weight histogram over every codeword.

    c1 enumerates all (alpha, beta); c2 all (alpha, beta, gamma). Weights are
    computed with inner products (|a| + |b| - 2 a.b) so whole coefficient
    blocks reduce to one matrix product per subfield row.
    """
    if code not in CODES:
        raise ValueError(f"code must be one of {CODES}, got {code!r}")
    q = ctx.q
    length = ctx.order
    sub = subfield_elements(ctx, params.m)
    tr1m = rel_trace_table(ctx, 1, params.m)
    p1 = _lam_powers(ctx, params.e_norm)
    p2 = _lam_powers(ctx, params.e_quad)

    arows = np.empty((len(sub), length), dtype=np.uint8)
    for i, a in enumerate(sub):
        arows[i] = tr1m[scale_table(ctx, a)[p1]]
    brows = trace_bit_matrix(ctx, p2, np.arange(q, dtype=np.int64))
    bw = brows.sum(axis=1, dtype=np.int64)
    bf = brows.astype(np.float32)

    if code == "c2":
        grows = trace_bit_matrix(ctx, _lam_powers(ctx, 1),
                                 np.arange(q, dtype=np.int64))
        gw = grows.sum(axis=1, dtype=np.int64)
        gf = grows.astype(np.float32)

    def work(ai):
        arow = arows[ai]
        counts = Counter()
        if code == "c1":
            dots = bf @ arow.astype(np.float32)
            w = int(arow.sum()) + bw - 2 * dots.astype(np.int64)
            vals, cts = np.unique(w, return_counts=True)
            counts.update(dict(zip(vals.tolist(), cts.tolist())))
        else:
            base = arow[None, :] ^ brows
            basew = base.sum(axis=1, dtype=np.int64)
            dots = base.astype(np.float32) @ gf.T
            w = basew[:, None] + gw[None, :] - 2 * dots.astype(np.int64)
            vals, cts = np.unique(w, return_counts=True)
            counts.update(dict(zip(vals.tolist(), cts.tolist())))
        return counts

    idxs = range(len(sub))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, idxs))
    else:
        parts = [work(i) for i in idxs]
    merged = Counter()
    for c in parts:
        merged.update(c)
    dist = ValueDistribution.from_counts(merged)
    if dist.total != 1 << code_dimension(params, code):
        raise VerificationError(
            f"{code} sweep covered {dist.total} words, "
            f"expected {1 << code_dimension(params, code)}")
    return dist


def spectrum_pushforward(dist, n):
    """Map an exponential-sum distribution to weights via w = 2^(n-1) - v/2."""
    half = 1 << (n - 1)
    for v, _ in dist.entries:
        if v % 2:
            raise VerificationError(f"sum value {v} is odd; cannot be a weight")
    return dist.map_values(lambda v: half - v // 2)


def weight_distribution_formula(params, code):
    """Closed-form weight table: pushforward of the matching sum distribution."""
    if code == "c1":
        return spectrum_pushforward(t_spectrum_formula(params), params.n)
    if code == "c2":
        return spectrum_pushforward(s_spectrum_formula(params), params.n)
    raise ValueError(f"code must be one of {CODES}, got {code!r}")


def check_cyclicity(ctx, params, code, exhaustive=None):
    """Shift-closure: rotating any codeword lands on another codeword.

    Rotation by one maps the word of (alpha, beta[, gamma]) to the word of
    (alpha pi^e1, beta pi^e2[, gamma pi]). Exhaustive for n <= 6 by default,
    else a deterministic sample of parameter tuples.
    """
    if code not in CODES:
        raise ValueError(f"code must be one of {CODES}, got {code!r}")
    if exhaustive is None:
        exhaustive = ctx.n <= 6
    q = ctx.q
    sub = subfield_elements(ctx, params.m)
    pe1 = ctx.pow(ctx.pi, params.e_norm)
    pe2 = ctx.pow(ctx.pi, params.e_quad)
    if exhaustive:
        alphas = sub
        betas = range(q)
        gammas = range(q) if code == "c2" else [0]
    else:
        alphas = sub[:3] + sub[-1:]
        step = max(1, q // 7)
        betas = list(range(0, q, step)) + [q - 1]
        gammas = ([0, 1, q - 1] if code == "c2" else [0])
    for alpha in alphas:
        for beta in betas:
            for gamma in gammas:
                if code == "c1":
                    w = codeword_c1(ctx, params, alpha, beta)
                    w2 = codeword_c1(ctx, params, ctx.mul(alpha, pe1),
                                     ctx.mul(beta, pe2))
                else:
                    w = codeword_c2(ctx, params, alpha, beta, gamma)
                    w2 = codeword_c2(ctx, params, ctx.mul(alpha, pe1),
                                     ctx.mul(beta, pe2), ctx.mul(gamma, ctx.pi))
                if not np.array_equal(np.roll(w, -1), w2):
                    return False
    return True


def codeword_dump_lines(ctx, params, code, limit=None):
    """Hex-packed codeword rows, one per parameter tuple, deterministic order."""
    sub = subfield_elements(ctx, params.m)
    q = ctx.q
    lines = []
    for alpha in sub:
        for beta in range(q):
            if code == "c1":
                lines.append(pack_bits_hex(codeword_c1(ctx, params, alpha, beta)))
            else:
                for gamma in range(q):
                    lines.append(pack_bits_hex(
                        codeword_c2(ctx, params, alpha, beta, gamma)))
            if limit and len(lines) >= limit:
                return lines[:limit]
    return lines


def check_parity(ctx, params, code, word):
    """word(x) * h(x) == 0 mod x^(2^n - 1) + 1; the parity-check relation."""
    h = parity_check_mask(ctx, params, code)
    wmask = 0
    for i, b in enumerate(word):
        wmask |= int(b) << i
    prod = _gf2_polymul(wmask, h)
    ring = (1 << ctx.order) | 1
    return _gf2_polymod(prod, ring) == 0
