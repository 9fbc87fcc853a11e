import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treesieve.exactring import (
    CrtLedger,
    InconsistentResiduesError,
    InsufficientPrimesError,
    PrimeField,
    crt_reconstruct,
    det_exact_int,
    det_mod,
    det_mod_batch,
    interpolate,
    interpolate_coeff,
    interpolate_coeff_2d,
    random_prime_with_root,
    roots_power_sum,
)


@pytest.mark.parametrize("p, i, expected", [(3, 3, 3), (3, 2, 0), (2, 5, 0), (1, 7, 1), (4, 0, 4)])
def test_roots_power_sum_examples(p, i, expected):
    assert roots_power_sum(p, i) == expected


def test_roots_power_sum_rejects_bad_order():
    with pytest.raises(ValueError):
        roots_power_sum(0, 1)


def test_det_exact_examples():
    assert det_exact_int([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert det_exact_int([[0, 1], [1, 0]]) == -1
    assert det_exact_int([]) == 1
    # reduced Laplacian of K4 -> 16 spanning trees
    assert det_exact_int([[3, -1, -1], [-1, 3, -1], [-1, -1, 3]]) == 16


def test_det_exact_needs_row_swap_and_big_values():
    M = [[0, 2, 1], [3, 0, 4], [5, 6, 0]]
    assert det_exact_int(M) == 0 * (0 * 0 - 4 * 6) - 2 * (3 * 0 - 4 * 5) + 1 * (3 * 6 - 0 * 5)
    big = [[10**30, 1], [1, 10**30]]
    assert det_exact_int(big) == 10**60 - 1


def test_det_exact_rejects_non_square():
    with pytest.raises(ValueError):
        det_exact_int([[1, 2]])


def test_det_mod_examples():
    q = 10007
    assert det_mod([[1, 0], [0, 1]], q) == 1
    assert det_mod([[1, 2, 3], [1, 2, 3], [4, 5, 6]], q) == 0
    rng = random.Random(4)
    M = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
    assert det_mod(M, q) == det_exact_int(M) % q


def test_det_mod_matches_exact_on_random_matrices():
    rng = random.Random(0)
    q = 2**31 - 1
    for _ in range(500):
        n = rng.randint(1, 6)
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert det_mod(M, q) == det_exact_int(M) % q


def test_det_mod_batch_matches_scalar():
    fld = random_prime_with_root(2, 31, random.Random(1))
    rng = np.random.default_rng(3)
    M = rng.integers(-3, 4, size=(300, 5, 5))
    M[::7, 2] = M[::7, 1]  # singular slice
    M[::11, :, 0] = 0  # zero first column
    got = det_mod_batch(M % fld.q, fld.q)
    for i in range(M.shape[0]):
        assert got[i] == det_exact_int(M[i].tolist()) % fld.q


def test_det_mod_batch_empty_and_limits():
    assert det_mod_batch(np.zeros((3, 0, 0), dtype=np.int64), 7).tolist() == [1, 1, 1]
    with pytest.raises(ValueError):
        det_mod_batch(np.zeros((1, 2, 2), dtype=np.int64), (1 << 31) + 11)


@pytest.mark.parametrize("p", [2, 3, 5, 6, 8])
def test_random_prime_with_root(p):
    fld = random_prime_with_root(p, 31, random.Random(p))
    assert fld.q.bit_length() == 31
    assert (fld.q - 1) % p == 0
    assert pow(fld.zeta, p, fld.q) == 1
    assert all(pow(fld.zeta, j, fld.q) != 1 for j in range(1, p))
    if p == 2:
        assert fld.zeta == fld.q - 1


def test_prime_field_rejects_wrong_order():
    with pytest.raises(ValueError):
        PrimeField(7, 3, 1)


def test_interpolation_examples():
    q = 10007
    assert interpolate_coeff([0, 1, 2], [0, 1, 4], 2, q) == 1
    assert interpolate_coeff([0, 1], [5, 8], 0, q) == 5
    grid = [[a * b for b in (0, 1)] for a in (0, 1)]
    assert interpolate_coeff_2d([0, 1], [0, 1], grid, (1, 1), q) == 1
    with pytest.raises(ValueError):
        interpolate([1, 1], [2, 3], q)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 2**31 - 2), min_size=1, max_size=13))
def test_interpolation_recovers_random_polynomials(coeffs):
    q = 2**31 - 1
    pts = list(range(3, 3 + len(coeffs)))
    vals = [sum(c * pow(x, d, q) for d, c in enumerate(coeffs)) % q for x in pts]
    assert interpolate(pts, vals, q) == coeffs


def test_crt_examples():
    L = CrtLedger(10)
    L.add(5, 3)
    L.add(7, 3)
    assert crt_reconstruct(L) == 3
    L = CrtLedger(17)
    L.add(5, 4)
    L.add(7, 6)
    assert crt_reconstruct(L) == -1
    short = CrtLedger(100)
    short.add(5, 1)
    short.add(7, 1)
    with pytest.raises(InsufficientPrimesError):
        crt_reconstruct(short)


def test_crt_inconsistent_residue():
    L = CrtLedger(1)
    L.add(5, 1)
    with pytest.raises(InconsistentResiduesError):
        L.add(5, 2)


def test_crt_identity_on_random_integers():
    rng = random.Random(9)
    primes = [random_prime_with_root(2, 31, rng).q for _ in range(8)]
    primes = sorted(set(primes))
    for _ in range(200):
        B = rng.randint(0, 10**rng.randint(1, 40))
        t = rng.randint(-B, B)
        L = CrtLedger(B)
        for q in primes:
            if L.sufficient():
                break
            L.add(q, t)
        assert crt_reconstruct(L) == t


def test_ledger_merge():
    a, b = CrtLedger(10), CrtLedger(10)
    a.add(5, 3)
    b.add(7, 3)
    assert crt_reconstruct(a.merge(b)) == 3
