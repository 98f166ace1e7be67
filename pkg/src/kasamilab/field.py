"""GF(2^n) arithmetic on int bit masks, with table-driven numpy kernels.

Elements are ints whose bit j is the coefficient of x^j in the polynomial
basis. A FieldContext holds the exp/log/trace tables for one modulus; the
heavier derived tables (power maps, relative traces, sign matrices) are built
on demand and cached on the context.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

__all__ = [
    "FieldElement", "FieldContext", "Params", "build_field", "derive_params",
    "add", "mul", "pow_", "inv", "trace_abs", "trace_rel", "subfield_elements",
    "find_primitive_polynomial", "is_irreducible", "is_primitive",
    "power_table", "scale_table", "rel_trace_table", "canonical_index",
    "trace_bit_matrix", "bit_count",
]

FieldElement = int

CASES = ("EvenM", "EvenK", "BothOdd")


def bit_count(a):
    """Per-element popcount of an integer ndarray."""
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(a.astype(np.uint64)).astype(np.int64)
    a = a.astype(np.uint64, copy=True)
    a = a - ((a >> np.uint64(1)) & np.uint64(0x5555555555555555))
    a = (a & np.uint64(0x3333333333333333)) + ((a >> np.uint64(2)) & np.uint64(0x3333333333333333))
    a = (a + (a >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return ((a * np.uint64(0x0101010101010101)) >> np.uint64(56)).astype(np.int64)


def _factorize(x):
    """Prime factors (with multiplicity dropped) by trial division."""
    out = []
    p = 2
    while p * p <= x:
        if x % p == 0:
            out.append(p)
            while x % p == 0:
                x //= p
        p += 1 if p == 2 else 2
    if x > 1:
        out.append(x)
    return out


def _gf2_polymul(a, b):
    """Carry-less product in GF(2)[x]."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _gf2_polymod(a, m):
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _gf2_mulmod(a, b, m):
    return _gf2_polymod(_gf2_polymul(a, b), m)


def _gf2_powmod(a, e, m):
    r = 1
    a = _gf2_polymod(a, m)
    while e:
        if e & 1:
            r = _gf2_mulmod(r, a, m)
        a = _gf2_mulmod(a, a, m)
        e >>= 1
    return r


def _gf2_gcd(a, b):
    while b:
        a, b = b, _gf2_polymod(a, b)
    return a


def is_irreducible(mask, n):
    """mask encodes a degree-n polynomial irreducible over GF(2)."""
    if mask.bit_length() - 1 != n or not mask & 1:
        return False
    if _gf2_powmod(2, 1 << n, mask) != 2:
        return False
    for p in _factorize(n):
        h = _gf2_powmod(2, 1 << (n // p), mask)
        if _gf2_gcd(h ^ 2, mask) != 1:
            return False
    return True


def is_primitive(mask, n):
    """Irreducible and the residue class of x generates the unit group."""
    if not is_irreducible(mask, n):
        return False
    order = (1 << n) - 1
    for p in _factorize(order):
        if _gf2_powmod(2, order // p, mask) == 1:
            return False
    return True


def find_primitive_polynomial(n):
    """Smallest (n+1)-bit mask that is primitive of degree n."""
    for mask in range((1 << n) | 1, 1 << (n + 1), 2):
        if is_primitive(mask, n):
            return mask
    raise ValueError(f"no primitive polynomial of degree {n}")


@dataclass(frozen=True)
class Params:
    """Derived arithmetic facts for one (n, k) parameter pair."""

    n: int
    m: int
    k: int
    d: int
    d_prime: int
    q0: int
    s: int
    case: str

    @property
    def q(self):
        return 1 << self.n

    @property
    def e_norm(self):
        """Exponent of the norm-type term, 2^m + 1."""
        return (1 << self.m) + 1

    @property
    def e_quad(self):
        """Exponent of the quadratic-form term, 2^k + 1."""
        return (1 << self.k) + 1


def derive_params(n, k):
    """Validate (n, k) and classify the parity case."""
    if n % 2 or not 4 <= n <= 24:
        raise ValueError(f"n must be even with 4 <= n <= 24, got {n}")
    m = n // 2
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must satisfy 1 <= k <= {n - 1}, got {k}")
    if k == m:
        raise ValueError(f"k = n/2 = {m} is excluded")
    d = gcd(m, k)
    d_prime = gcd(m + k, 2 * k)
    if (m // d) % 2 == 0:
        case = "EvenM"
    elif (k // d) % 2 == 0:
        case = "EvenK"
    else:
        case = "BothOdd"
    # exactly one case holds; BothOdd is equivalent to d_prime == 2d
    assert d_prime == (2 * d if case == "BothOdd" else d)
    return Params(n=n, m=m, k=k, d=d, d_prime=d_prime, q0=1 << d, s=n // d, case=case)


@dataclass(frozen=True, eq=False)
class FieldContext:
    """Tables for one GF(2^n) instance."""

    n: int
    modulus: int
    pi: FieldElement
    exp_table: np.ndarray
    log_table: np.ndarray
    trace_table: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def q(self):
        return 1 << self.n

    @property
    def order(self):
        return (1 << self.n) - 1

    def add(self, a, b):
        return a ^ b

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        la = int(self.log_table[a])
        lb = int(self.log_table[b])
        return int(self.exp_table[(la + lb) % self.order])

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 cannot be raised to a negative power")
            return 1 if e == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * e) % self.order])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return int(self.exp_table[(-int(self.log_table[a])) % self.order])

    def trace_abs(self, x):
        return int(self.trace_table[x])

    def trace_rel(self, x, i, j):
        """Relative trace from GF(2^j) down to GF(2^i); x must lie in GF(2^j)."""
        if j % i or self.n % j:
            raise ValueError(f"need i | j | n, got i={i}, j={j}, n={self.n}")
        if self.pow(x, 1 << j) != x:
            raise ValueError(f"element {x:#x} is not in the subfield GF(2^{j})")
        acc = 0
        y = x
        for _ in range(j // i):
            acc ^= y
            y = self.pow(y, 1 << i)
        return acc


def build_field(n, modulus=None):
    """Construct GF(2^n) tables; modulus defaults to the smallest primitive mask."""
    if not 2 <= n <= 24:
        raise ValueError(f"n must satisfy 2 <= n <= 24, got {n}")
    if modulus is None:
        modulus = find_primitive_polynomial(n)
    else:
        if not is_irreducible(modulus, n):
            raise ValueError(f"modulus {modulus:#x} is reducible over GF(2)")
        if not is_primitive(modulus, n):
            raise ValueError(f"modulus {modulus:#x} is irreducible but not primitive")
    q = 1 << n
    exp = np.zeros(q - 1, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    x = 1
    for i in range(q - 1):
        exp[i] = x
        log[x] = i
        x <<= 1
        if (x >> n) & 1:
            x ^= modulus
    assert x == 1, "exp table walk did not return to 1"

    tr_mask = 0
    for j in range(n):
        acc = 0
        y = 1 << j
        for _ in range(n):
            acc ^= y
            y = _gf2_mulmod(y, y, modulus)
        assert acc in (0, 1)
        tr_mask |= acc << j
    trace = (bit_count(np.arange(q, dtype=np.int64) & tr_mask) & 1).astype(np.uint8)

    return FieldContext(n=n, modulus=modulus, pi=2, exp_table=exp,
                        log_table=log, trace_table=trace)


# Thin functional aliases over the context methods.

def add(ctx, a, b):
    return ctx.add(a, b)


def mul(ctx, a, b):
    return ctx.mul(a, b)


def pow_(ctx, a, e):
    return ctx.pow(a, e)


def inv(ctx, a):
    return ctx.inv(a)


def trace_abs(ctx, x):
    return ctx.trace_abs(x)


def trace_rel(ctx, x, i, j):
    return ctx.trace_rel(x, i, j)


def subfield_elements(ctx, m):
    """GF(2^m) inside GF(2^n): 0 first, then consecutive powers of pi^step."""
    if ctx.n % m:
        raise ValueError(f"GF(2^{m}) is not a subfield of GF(2^{ctx.n})")
    step = ctx.order // ((1 << m) - 1)
    return [0] + [int(ctx.exp_table[(step * j) % ctx.order])
                  for j in range((1 << m) - 1)]


def power_table(ctx, e):
    """Vector of x^e over all field elements x; out[0] = 0 (e >= 1 intended)."""
    key = ("pow", e % ctx.order)
    if key not in ctx._cache:
        out = np.zeros(ctx.q, dtype=np.int64)
        idx = (np.arange(ctx.order, dtype=np.int64) * (e % ctx.order)) % ctx.order
        out[ctx.exp_table] = ctx.exp_table[idx]
        out.setflags(write=False)
        ctx._cache[key] = out
    return ctx._cache[key]


def scale_table(ctx, c):
    """Vector of c*x over all field elements x."""
    out = np.zeros(ctx.q, dtype=np.int64)
    if c:
        lc = int(ctx.log_table[c])
        idx = (np.arange(ctx.order, dtype=np.int64) + lc) % ctx.order
        out[ctx.exp_table] = ctx.exp_table[idx]
    return out


def rel_trace_table(ctx, i, j):
    """Vector of sum_{t < j//i} x^(2^(i t)); equals Tr over GF(2^j) entries."""
    if j % i or ctx.n % j:
        raise ValueError(f"need i | j | n, got i={i}, j={j}, n={ctx.n}")
    key = ("rtr", i, j)
    if key not in ctx._cache:
        frob = power_table(ctx, 1 << i)
        acc = np.zeros(ctx.q, dtype=np.int64)
        y = np.arange(ctx.q, dtype=np.int64)
        for _ in range(j // i):
            acc ^= y
            y = frob[y]
        acc.setflags(write=False)
        ctx._cache[key] = acc
    return ctx._cache[key]


def canonical_index(ctx):
    """Element -> 0 for 0, else 1 + discrete log; fixes record ordering."""
    key = ("canon",)
    if key not in ctx._cache:
        out = np.zeros(ctx.q, dtype=np.int64)
        out[ctx.exp_table] = np.arange(1, ctx.q, dtype=np.int64)
        out.setflags(write=False)
        ctx._cache[key] = out
    return ctx._cache[key]


def trace_bit_matrix(ctx, base, coeffs):
    """uint8 rows of Tr(c * base[j]) for each coefficient c, built in chunks."""
    order = ctx.order
    base = np.asarray(base, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=np.int64)
    lbase = ctx.log_table[base]
    base_zero = base == 0
    out = np.empty((len(coeffs), len(base)), dtype=np.uint8)
    lc = ctx.log_table[coeffs]
    chunk = max(1, (1 << 22) // max(1, len(base)))
    for i0 in range(0, len(coeffs), chunk):
        cs = coeffs[i0:i0 + chunk]
        idx = (lc[i0:i0 + chunk, None] + lbase[None, :]) % order
        vals = ctx.exp_table[idx]
        vals[:, base_zero] = 0
        vals[cs == 0, :] = 0
        out[i0:i0 + chunk] = ctx.trace_table[vals]
    return out
