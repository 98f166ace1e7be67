"""Schoolbook reference implementations used to freeze golden test values.

Everything here is deliberately naive: carry-less polynomial arithmetic on int
bit masks, repeated-squaring powers, power-sum traces, direct summation. No
exp/log tables, no numpy, no imports from the package under test. Slow but
obvious; the test suite trusts this file over everything else.
"""

from collections import Counter
from math import gcd

__all__ = [
    "gf2_mul", "gf2_pow", "trace_rel", "smallest_primitive", "subfield",
    "t_value", "s_value", "t_spectrum_naive", "s_spectrum_naive",
    "gamma_sweep_naive", "kernel_count_naive", "kernel_profile_naive",
    "psi_roots_naive", "bluher_naive", "as_points_naive", "min_poly_naive",
    "codeword_bits_c1", "codeword_bits_c2", "family_naive", "correlation_naive",
]


def gf2_mul(a, b, modulus, n):
    """Product of two field elements modulo the degree-n modulus."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if (a >> n) & 1:
            a ^= modulus
    return r


def gf2_pow(a, e, modulus, n):
    """a**e by repeated squaring, e >= 0."""
    r = 1
    while e:
        if e & 1:
            r = gf2_mul(r, a, modulus, n)
        a = gf2_mul(a, a, modulus, n)
        e >>= 1
    return r


def trace_rel(x, i, j, modulus, n):
    """Relative trace sum_{t < j//i} x**(2**(i*t)). Absolute trace when i=1, j=n."""
    acc = 0
    y = x
    for _ in range(j // i):
        acc ^= y
        for _ in range(i):
            y = gf2_mul(y, y, modulus, n)
    return acc


def smallest_primitive(n):
    """Smallest (n+1)-bit modulus whose residue class of x has order 2**n - 1.

    The multiplicative walk doubles as an irreducibility test: for any modulus
    with nonzero constant term that is reducible, the unit group is strictly
    smaller than 2**n - 1, so the order of x can never reach it.
    """
    q = 1 << n
    for mask in range(q | 1, q << 1, 2):
        y = 2
        order = 1
        while y != 1 and order <= q:
            y = gf2_mul(y, 2, mask, n)
            order += 1
        if y == 1 and order == q - 1:
            return mask
    raise ValueError(f"no primitive modulus of degree {n}")


def subfield(m, modulus, n):
    """GF(2**m) inside GF(2**n): 0 first, then consecutive powers of pi**step."""
    q1 = (1 << n) - 1
    step = q1 // ((1 << m) - 1)
    g = gf2_pow(2, step, modulus, n)
    elems = [0]
    y = 1
    for _ in range((1 << m) - 1):
        elems.append(y)
        y = gf2_mul(y, g, modulus, n)
    return elems


def _tables(k, modulus, n):
    m = n // 2
    q = 1 << n
    u = [gf2_pow(x, (1 << m) + 1, modulus, n) for x in range(q)]
    v = [gf2_pow(x, (1 << k) + 1, modulus, n) for x in range(q)]
    trn = [trace_rel(x, 1, n, modulus, n) for x in range(q)]
    tr1m = {y: trace_rel(y, 1, m, modulus, n) for y in subfield(m, modulus, n)}
    return m, q, u, v, trn, tr1m


def t_value(alpha, beta, k, modulus, n):
    """Direct sum of (-1)**(Tr_m(alpha*x^(2^m+1)) + Tr_n(beta*x^(2^k+1)))."""
    _, q, u, v, trn, tr1m = _tables(k, modulus, n)
    total = 0
    for x in range(q):
        bit = tr1m[gf2_mul(alpha, u[x], modulus, n)] ^ trn[gf2_mul(beta, v[x], modulus, n)]
        total += 1 - 2 * bit
    return total


def s_value(alpha, beta, gamma, k, modulus, n):
    """Same as t_value with the extra linear term Tr_n(gamma*x)."""
    _, q, u, v, trn, tr1m = _tables(k, modulus, n)
    total = 0
    for x in range(q):
        bit = (tr1m[gf2_mul(alpha, u[x], modulus, n)]
               ^ trn[gf2_mul(beta, v[x], modulus, n)]
               ^ trn[gf2_mul(gamma, x, modulus, n)])
        total += 1 - 2 * bit
    return total


def t_spectrum_naive(k, modulus, n):
    """Counter of T values over all (alpha, beta) in GF(2^m) x GF(2^n)."""
    m, q, u, v, trn, tr1m = _tables(k, modulus, n)
    out = Counter()
    for alpha in subfield(m, modulus, n):
        au = [tr1m[gf2_mul(alpha, u[x], modulus, n)] for x in range(q)]
        for beta in range(q):
            t = 0
            for x in range(q):
                t += 1 - 2 * (au[x] ^ trn[gf2_mul(beta, v[x], modulus, n)])
            out[t] += 1
    return out


def s_spectrum_naive(k, modulus, n):
    """Counter of S values over all (alpha, beta, gamma). Feasible for n <= 6."""
    m, q, u, v, trn, tr1m = _tables(k, modulus, n)
    trg = [[trn[gf2_mul(g, x, modulus, n)] for x in range(q)] for g in range(q)]
    out = Counter()
    for alpha in subfield(m, modulus, n):
        au = [tr1m[gf2_mul(alpha, u[x], modulus, n)] for x in range(q)]
        for beta in range(q):
            base = [au[x] ^ trn[gf2_mul(beta, v[x], modulus, n)] for x in range(q)]
            for g in range(q):
                row = trg[g]
                s = 0
                for x in range(q):
                    s += 1 - 2 * (base[x] ^ row[x])
                out[s] += 1
    return out


def gamma_sweep_naive(alpha, beta, k, modulus, n):
    """Counter of S(alpha, beta, gamma) over gamma for one fixed pair."""
    m, q, u, v, trn, tr1m = _tables(k, modulus, n)
    base = [tr1m[gf2_mul(alpha, u[x], modulus, n)]
            ^ trn[gf2_mul(beta, v[x], modulus, n)] for x in range(q)]
    out = Counter()
    for g in range(q):
        s = 0
        for x in range(q):
            s += 1 - 2 * (base[x] ^ trn[gf2_mul(g, x, modulus, n)])
        out[s] += 1
    return out


def kernel_count_naive(alpha, beta, k, modulus, n):
    """Number of zeros of alpha*x^(2^m) + beta*x^(2^k) + beta^(2^(n-k))*x^(2^(n-k))."""
    m = n // 2
    q = 1 << n
    bnk = gf2_pow(beta, 1 << (n - k), modulus, n)
    cnt = 0
    for x in range(q):
        val = (gf2_mul(alpha, gf2_pow(x, 1 << m, modulus, n), modulus, n)
               ^ gf2_mul(beta, gf2_pow(x, 1 << k, modulus, n), modulus, n)
               ^ gf2_mul(bnk, gf2_pow(x, 1 << (n - k), modulus, n), modulus, n))
        cnt += val == 0
    return cnt


def kernel_profile_naive(k, modulus, n):
    """Counter of kernel sizes over all (alpha, beta) != (0, 0)."""
    m = n // 2
    q = 1 << n
    out = Counter()
    for alpha in subfield(m, modulus, n):
        for beta in range(q):
            if alpha == 0 and beta == 0:
                continue
            out[kernel_count_naive(alpha, beta, k, modulus, n)] += 1
    return out


def psi_roots_naive(alpha, beta, k, modulus, n):
    """Zeros in GF(2^n) of beta^(2^(n-k)) * z^(2^j+1) + alpha*z + beta, j=(m-k) mod n."""
    m = n // 2
    q = 1 << n
    j = (m - k) % n
    bnk = gf2_pow(beta, 1 << (n - k), modulus, n)
    cnt = 0
    for z in range(q):
        val = (gf2_mul(bnk, gf2_pow(z, (1 << j) + 1, modulus, n), modulus, n)
               ^ gf2_mul(alpha, z, modulus, n) ^ beta)
        cnt += val == 0
    return cnt


def bluher_naive(b, h, modulus, l):
    """Zeros in GF(2^l)* of z^(2^h+1) + b*z + b."""
    cnt = 0
    for z in range(1, 1 << l):
        val = gf2_pow(z, (1 << h) + 1, modulus, l) ^ gf2_mul(b, z, modulus, l) ^ b
        cnt += val == 0
    return cnt


def as_points_naive(alpha_p, beta, k, d, modulus, n):
    """Pairs (x, y) with alpha_p*x^(2^m+1) + beta*x^(2^k+1) = y^(2^d) + y."""
    m = n // 2
    q = 1 << n
    lhs = Counter()
    for y in range(q):
        lhs[gf2_pow(y, 1 << d, modulus, n) ^ y] += 1
    cnt = 0
    for x in range(q):
        f = (gf2_mul(alpha_p, gf2_pow(x, (1 << m) + 1, modulus, n), modulus, n)
             ^ gf2_mul(beta, gf2_pow(x, (1 << k) + 1, modulus, n), modulus, n))
        cnt += lhs[f]
    return cnt


def min_poly_naive(e, modulus, n):
    """Minimal polynomial of pi**e over GF(2), returned as a bit mask."""
    q1 = (1 << n) - 1
    e %= q1
    coset = []
    c = e
    while c not in coset:
        coset.append(c)
        c = (c * 2) % q1
    poly = [1]
    for c in coset:
        root = gf2_pow(2, c, modulus, n)
        new = [0] * (len(poly) + 1)
        for i, co in enumerate(poly):
            new[i + 1] ^= co
            new[i] ^= gf2_mul(co, root, modulus, n)
        poly = new
    assert all(co in (0, 1) for co in poly), "coset product left the prime field"
    mask = 0
    for i, co in enumerate(poly):
        mask |= co << i
    return mask


def codeword_bits_c1(alpha, beta, k, modulus, n):
    """Bit lambda of the length 2^n-1 word: Tr_m(alpha*pi^(lam*e1)) + Tr_n(beta*pi^(lam*e2))."""
    m = n // 2
    L = (1 << n) - 1
    e1, e2 = (1 << m) + 1, (1 << k) + 1
    pw = [gf2_pow(2, lam, modulus, n) for lam in range(L)]
    tr1m = {y: trace_rel(y, 1, m, modulus, n) for y in subfield(m, modulus, n)}
    return tuple(
        tr1m[gf2_mul(alpha, pw[(lam * e1) % L], modulus, n)]
        ^ trace_rel(gf2_mul(beta, pw[(lam * e2) % L], modulus, n), 1, n, modulus, n)
        for lam in range(L))


def codeword_bits_c2(alpha, beta, gamma, k, modulus, n):
    """codeword_bits_c1 plus the Tr_n(gamma*pi^lam) term."""
    L = (1 << n) - 1
    pw = [gf2_pow(2, lam, modulus, n) for lam in range(L)]
    base = codeword_bits_c1(alpha, beta, k, modulus, n)
    return tuple(
        base[lam] ^ trace_rel(gf2_mul(gamma, pw[lam], modulus, n), 1, n, modulus, n)
        for lam in range(L))


def family_naive(k, modulus, n):
    """All family sequences as (label, bits) with bit lambda = a(pi^lambda)."""
    m = n // 2
    q = 1 << n
    L = q - 1
    d = gcd(m, k)
    e1, e2 = (1 << m) + 1, (1 << k) + 1
    pw = [gf2_pow(2, lam, modulus, n) for lam in range(L)]
    trn = [trace_rel(x, 1, n, modulus, n) for x in range(q)]
    sub = subfield(m, modulus, n)
    tr1m = {y: trace_rel(y, 1, m, modulus, n) for y in sub}
    seqs = []
    for alpha in sub:
        for beta in range(q):
            bits = tuple(
                tr1m[gf2_mul(alpha, pw[(lam * e1) % L], modulus, n)]
                ^ trn[gf2_mul(beta, pw[(lam * e2) % L], modulus, n) ^ pw[lam]]
                for lam in range(L))
            seqs.append((f"F1({alpha},{beta})", bits))
    if (m // d) % 2 == 0 or (k // d) % 2 == 0:
        for i in range((1 << m) - 1):
            beta = pw[i]
            bits = tuple(
                tr1m[pw[(lam * e1) % L]]
                ^ trn[gf2_mul(beta, pw[(lam * e2) % L], modulus, n)]
                for lam in range(L))
            seqs.append((f"F2({beta})", bits))
    if (k // d) % 2 == 0:
        bits = tuple(trn[pw[(lam * e2) % L]] for lam in range(L))
        seqs.append(("F3", bits))
    return seqs


def correlation_naive(a_bits, b_bits, tau):
    """Periodic cross-correlation of two equal-length bit tuples at shift tau."""
    L = len(a_bits)
    return sum(1 - 2 * (a_bits[lam] ^ b_bits[(lam + tau) % L]) for lam in range(L))
