"""Kernel sizes, rank profiles, auxiliary root counts, and their closed forms."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import reference as ref
from kasamilab import (bluher_counts, bluher_counts_formula, build_field,
                       derive_params, kernel_size, phi_eval, psi_root_count,
                       rank_of, rank_profile, rank_profile_formula,
                       subfield_elements)

# (n, k) -> (n0, n2, n4), frozen from the naive kernel enumeration.
PROFILES = {
    (4, 1): (28, 35, 0),
    (6, 1): (280, 210, 21),
    (6, 2): (196, 315, 0),
}


@pytest.mark.parametrize("nk,expected", sorted(PROFILES.items()))
def test_rank_profile_frozen(nk, expected):
    n, k = nk
    ctx, p = build_field(n), derive_params(n, k)
    prof = rank_profile(ctx, p)
    assert (prof.n0, prof.n2, prof.n4) == expected
    total = (1 << p.m) * (1 << n) - 1
    assert prof.n0 + prof.n2 + prof.n4 == total


@pytest.mark.parametrize("nk", sorted(PROFILES))
def test_rank_profile_matches_formula(nk):
    n, k = nk
    prof = rank_profile(build_field(n), derive_params(n, k))
    form = rank_profile_formula(derive_params(n, k))
    assert (prof.n0, prof.n2, prof.n4) == (form.n0, form.n2, form.n4)


@pytest.mark.slow
def test_rank_profile_frozen_n8():
    prof = rank_profile(build_field(8), derive_params(8, 2))
    assert (prof.n0, prof.n2, prof.n4) == (3024, 1071, 0)
    form = rank_profile_formula(derive_params(8, 2))
    assert (form.n0, form.n2, form.n4) == (3024, 1071, 0)


def test_kernel_size_matches_oracle(ctx4, p41):
    for alpha in subfield_elements(ctx4, 2):
        for beta in range(16):
            if alpha == 0 and beta == 0:
                continue
            assert kernel_size(ctx4, p41, alpha, beta) == \
                ref.kernel_count_naive(alpha, beta, 1, 0x13, 4)


def test_kernel_profile_matches_oracle(ctx6):
    prof = rank_profile(build_field(6), derive_params(6, 1))
    naive = ref.kernel_profile_naive(1, 0x43, 6)
    # q0-dimension 0/2/4 <-> kernel size q0^0/q0^2/q0^4.
    assert prof.n0 == naive[1]
    assert prof.n2 == naive[4]
    assert prof.n4 == naive[16]


def test_rank_of_consistent_with_kernel(ctx6, p61):
    sub = subfield_elements(ctx6, 3)
    for alpha, beta in [(0, 1), (1, 0), (sub[2], 5), (sub[3], 40), (1, 63)]:
        dim, rank = rank_of(ctx6, p61, alpha, beta)
        assert dim in (0, 2, 4)
        assert rank == p61.s - dim
        assert kernel_size(ctx6, p61, alpha, beta) == p61.q0 ** dim


@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 15))
@settings(max_examples=60)
def test_phi_is_additive(beta, x, y):
    ctx, p = build_field(4), derive_params(4, 1)
    assert phi_eval(ctx, p, 1, beta, x) ^ phi_eval(ctx, p, 1, beta, y) == \
        phi_eval(ctx, p, 1, beta, x ^ y)


def test_kernel_is_q0_subspace(ctx4, p41):
    sub = subfield_elements(ctx4, 2)
    for alpha in sub:
        for beta in range(16):
            if alpha == 0 and beta == 0:
                continue
            roots = [x for x in range(16)
                     if phi_eval(ctx4, p41, alpha, beta, x) == 0]
            elems = set(roots)
            assert 0 in elems
            for x in roots:  # closed under addition => GF(q0)-subspace here
                for y in roots:
                    assert x ^ y in elems


def test_psi_roots_match_oracle(ctx4, p41):
    joint = {}
    for alpha in subfield_elements(ctx4, 2):
        for beta in range(1, 16):
            if alpha == 0:
                continue
            cnt = psi_root_count(ctx4, p41, alpha, beta)
            assert cnt == ref.psi_roots_naive(alpha, beta, 1, 0x13, 4)
            key = (cnt, kernel_size(ctx4, p41, alpha, beta))
            joint[key] = joint.get(key, 0) + 1
    # Root count 0 pairs with trivial kernel, 2^d+1 with the 4-element kernel.
    assert joint == {(0, 1): 15, (3, 4): 30}


# (l, h) -> (e, n0, n1, n2, n_top), frozen from the naive root histogram.
BLUHER = {
    (4, 1): (1, 5, 8, 0, 2),
    (4, 2): (2, 6, 4, 5, 0),
    (4, 3): (1, 5, 8, 0, 2),
    (6, 1): (1, 21, 32, 0, 10),
    (6, 2): (2, 26, 15, 21, 1),
    (6, 3): (3, 28, 8, 27, 0),
    (6, 4): (2, 26, 15, 21, 1),
    (6, 5): (1, 21, 32, 0, 10),
}


@pytest.mark.parametrize("lh,expected", sorted(BLUHER.items()))
def test_bluher_frozen_both_ways(lh, expected):
    l, h = lh
    bc = bluher_counts(build_field(l), h)
    assert (bc.e, bc.n0, bc.n1, bc.n2, bc.n_top) == expected
    bf = bluher_counts_formula(l, h)
    assert (bf.e, bf.n0, bf.n1, bf.n2, bf.n_top) == expected
    assert bc.n0 + bc.n1 + bc.n2 + bc.n_top == (1 << l) - 1


@pytest.mark.parametrize("l", [4, 6])
def test_bluher_matches_oracle_histogram(l):
    mod = ref.smallest_primitive(l)
    ctx = build_field(l)
    for h in range(1, l):
        bc = bluher_counts(ctx, h)
        hist = {}
        for b in range(1, 1 << l):
            c = ref.bluher_naive(b, h, mod, l)
            hist[c] = hist.get(c, 0) + 1
        top = (1 << bc.e) + 1
        assert bc.n0 == hist.get(0, 0)
        assert bc.n1 == hist.get(1, 0)
        assert bc.n2 == hist.get(2, 0)
        assert bc.n_top == hist.get(top, 0)


@pytest.mark.slow
def test_bluher_formula_n8():
    ctx = build_field(8)
    for h in range(1, 8):
        bc = bluher_counts(ctx, h)
        bf = bluher_counts_formula(8, h)
        assert (bc.n0, bc.n1, bc.n2, bc.n_top) == (bf.n0, bf.n1, bf.n2, bf.n_top)


def test_rank_profile_records(ctx4, p41):
    prof = rank_profile(ctx4, p41, keep_records=True)
    assert prof.records is not None
    assert len(prof.records) == prof.n0 + prof.n2 + prof.n4
