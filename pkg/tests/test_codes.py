"""Cyclic code machinery: minimal polynomials, codewords, weight counts."""

import numpy as np
import pytest

import reference as ref
from kasamilab import (build_field, check_cyclicity, check_parity,
                       code_dimension, codeword_c1, codeword_c2,
                       derive_params, h_polynomials, minimal_poly,
                       parity_check_mask, s_spectrum, subfield_elements,
                       t_spectrum, weight_distribution,
                       weight_distribution_formula)
from kasamilab.codes import codeword_dump_lines, spectrum_pushforward
from kasamilab.field import _gf2_polymod, is_irreducible

# (n, k) -> coefficient masks of (h1, h2, h3), frozen from the naive coset product.
H_POLYS = {
    (4, 1): (0x19, 0x1F, 0x7),
    (6, 1): (0x61, 0x75, 0xB),
    (6, 2): (0x61, 0x73, 0xB),
    (8, 2): (0x171, 0x19F, 0x19),
}
WEIGHTS = {
    (4, 1, "c1"): {0: 1, 6: 25, 8: 30, 10: 3, 12: 5},
    (4, 1, "c2"): {0: 1, 4: 105, 6: 280, 8: 435, 10: 168, 12: 35},
}


def test_minimal_poly_example(ctx4):
    # pi^5 has order 3, so its minimal polynomial is x^2 + x + 1.
    mp = minimal_poly(ctx4, 5)
    assert mp.coeffs == 0x7 and mp.degree == 2 and mp.coset == (5, 10)


@pytest.mark.parametrize("n,mod", [(4, 0x13), (6, 0x43)])
def test_minimal_poly_matches_oracle(n, mod):
    ctx = build_field(n)
    for e in range(1, (1 << n) - 1):
        assert minimal_poly(ctx, e).coeffs == ref.min_poly_naive(e, mod, n)


def test_minimal_poly_is_irreducible_divisor(ctx6):
    L = 63
    for e in (1, 3, 9, 21, 31):
        mp = minimal_poly(ctx6, e)
        assert is_irreducible(mp.coeffs, mp.degree)
        assert _gf2_polymod((1 << L) | 1, mp.coeffs) == 0


def test_minimal_poly_has_root(ctx6):
    for e in (1, 5, 11):
        mp = minimal_poly(ctx6, e)
        root = ctx6.pow(ctx6.pi, e)
        acc = 0
        for i in range(mp.degree + 1):
            if (mp.coeffs >> i) & 1:
                acc ^= ctx6.pow(root, i)
        assert acc == 0


@pytest.mark.parametrize("nk,masks", sorted(H_POLYS.items()))
def test_h_polynomials_frozen(nk, masks):
    n, k = nk
    ctx, p = build_field(n), derive_params(n, k)
    hs = h_polynomials(ctx, p)
    assert tuple(h.coeffs for h in hs) == masks
    assert tuple(h.degree for h in hs) == (n, n, n // 2)
    # h1, h2, h3 are the minimal polynomials of pi^-1, pi^-e2, pi^-e1.
    L = (1 << n) - 1
    assert tuple(h.exponent for h in hs) == \
        (L - 1, L - p.e_quad, L - p.e_norm)


@pytest.mark.parametrize("nk", [(4, 1), (6, 1), (6, 2)])
def test_parity_check_degree_is_dimension(nk):
    n, k = nk
    ctx, p = build_field(n), derive_params(n, k)
    assert parity_check_mask(ctx, p, "c1").bit_length() - 1 == \
        code_dimension(p, "c1")
    assert parity_check_mask(ctx, p, "c2").bit_length() - 1 == \
        code_dimension(p, "c2")


def test_code_dimensions(p41, p61):
    assert code_dimension(p41, "c1") == 6 and code_dimension(p41, "c2") == 10
    assert code_dimension(p61, "c1") == 9 and code_dimension(p61, "c2") == 15


def test_codeword_matches_oracle(ctx4, p41):
    sub = subfield_elements(ctx4, 2)
    for alpha, beta in [(0, 0), (sub[1], 7), (sub[3], 15)]:
        got = codeword_c1(ctx4, p41, alpha, beta)
        assert tuple(int(b) for b in got) == \
            ref.codeword_bits_c1(alpha, beta, 1, 0x13, 4)
    for alpha, beta, gamma in [(sub[2], 3, 9), (0, 0, 1)]:
        got = codeword_c2(ctx4, p41, alpha, beta, gamma)
        assert tuple(int(b) for b in got) == \
            ref.codeword_bits_c2(alpha, beta, gamma, 1, 0x13, 4)


@pytest.mark.parametrize("nk", [(4, 1), (6, 1), (6, 2)])
@pytest.mark.parametrize("code", ["c1", "c2"])
def test_weights_three_ways(nk, code):
    n, k = nk
    ctx, p = build_field(n), derive_params(n, k)
    brute = weight_distribution(ctx, p, code)
    spec = t_spectrum(ctx, p) if code == "c1" else s_spectrum(ctx, p)
    assert brute.as_dict() == spectrum_pushforward(spec, n).as_dict()
    assert brute.as_dict() == weight_distribution_formula(p, code).as_dict()
    assert brute.total == 1 << code_dimension(p, code)


@pytest.mark.parametrize("key,expected", sorted(WEIGHTS.items()))
def test_weights_frozen(key, expected):
    n, k, code = key
    dist = weight_distribution(build_field(n), derive_params(n, k), code)
    assert dist.as_dict() == expected


def test_codewords_injective(ctx4, p41):
    words = []
    for alpha in subfield_elements(ctx4, 2):
        for beta in range(16):
            for gamma in range(16):
                words.append(codeword_c2(ctx4, p41, alpha, beta, gamma))
    packed = np.packbits(np.array(words), axis=1)
    assert len(np.unique(packed, axis=0)) == 1 << 10
    c1_packed = packed[::16]  # gamma = 0 rows are exactly the c1 words
    assert len(np.unique(c1_packed, axis=0)) == 1 << 6


@pytest.mark.parametrize("code", ["c1", "c2"])
def test_cyclicity_exhaustive(ctx4, p41, code):
    assert check_cyclicity(ctx4, p41, code, exhaustive=True)


@pytest.mark.slow
def test_cyclicity_sampled_n8(ctx8, p82):
    assert check_cyclicity(ctx8, p82, "c1")
    assert check_cyclicity(ctx8, p82, "c2")


def test_parity_check_accepts_codewords(ctx6, p61):
    sub = subfield_elements(ctx6, 3)
    for alpha, beta in [(0, 1), (sub[4], 44), (sub[7], 63)]:
        word = codeword_c1(ctx6, p61, alpha, beta)
        assert check_parity(ctx6, p61, "c1", word)
        assert check_parity(ctx6, p61, "c2", word)  # c1 words lie inside c2


def test_parity_check_rejects_corrupted_word(ctx4, p41):
    word = codeword_c1(ctx4, p41, 1, 7).copy()
    word[3] ^= 1  # minimum distance exceeds 1, so this leaves the code
    assert not check_parity(ctx4, p41, "c1", word)
    assert not check_parity(ctx4, p41, "c2", word)


def test_codeword_dump(ctx4, p41):
    lines = codeword_dump_lines(ctx4, p41, "c1", limit=3)
    assert lines == ["0000", "de7b", "9452"]
    full = codeword_dump_lines(ctx4, p41, "c1")
    assert len(full) == 1 << 6
    assert len(set(full)) == 1 << 6
