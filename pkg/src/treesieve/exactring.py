"""Exact arithmetic: prime fields with roots of unity, CRT, interpolation, determinants.

Everything here is exact.  Python ints carry the big-integer side; the
batched determinant kernel works on int64 numpy arrays and therefore needs
primes below 2**31 so that a product of two residues fits in 63 bits.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

import numpy as np
from sympy import factorint, isprime

# Largest modulus the int64 batch kernel accepts.
BATCH_MODULUS_LIMIT = 1 << 31


class InsufficientPrimesError(ValueError):
    """The CRT ledger cannot yet pin down an integer of the declared bound."""


class InconsistentResiduesError(ValueError):
    """Two residues for the same prime disagree."""


@dataclass(frozen=True)
class PrimeField:
    """F_q together with an element ``zeta`` of multiplicative order exactly ``p``."""

    q: int
    p: int
    zeta: int

    def __post_init__(self):
        if (self.q - 1) % self.p:
            raise ValueError(f"q={self.q} is not 1 mod p={self.p}")
        if not _has_order(self.zeta, self.p, self.q):
            raise ValueError(f"zeta={self.zeta} does not have order {self.p} mod {self.q}")

    def root_powers(self) -> list[int]:
        """[1, zeta, zeta**2, ..., zeta**(p-1)] reduced mod q."""
        out = [1]
        for _ in range(self.p - 1):
            out.append(out[-1] * self.zeta % self.q)
        return out

    def inv(self, a: int) -> int:
        return pow(a, -1, self.q)


def _has_order(g: int, p: int, q: int) -> bool:
    if pow(g, p, q) != 1:
        return False
    return all(pow(g, p // r, q) != 1 for r in factorint(p)) if p > 1 else True


def random_prime_with_root(p: int, bits: int = 31, rng: random.Random | None = None) -> PrimeField:
    """Sample a prime ``q = 1 (mod p)`` with ``bits`` bits and an order-``p`` element.

    Candidates are drawn uniformly from the residue class among ``bits``-bit
    integers and resampled until prime; ``zeta`` is ``g**((q-1)/p)`` for a
    random ``g``, resampled until its order is exactly ``p``.
    """
    if p < 1:
        raise ValueError("root order must be >= 1")
    if bits < 3:
        raise ValueError("bits must be >= 3")
    rng = rng or random.Random()
    lo, hi = 1 << (bits - 1), (1 << bits) - 1
    # q = 1 + p*j with lo <= q <= hi
    jlo = -(-(lo - 1) // p)
    jhi = (hi - 1) // p
    if jlo > jhi:
        raise ValueError(f"no {bits}-bit integers are 1 mod {p}")
    while True:
        q = 1 + p * rng.randint(jlo, jhi)
        if q > 2 and isprime(q):
            break
    if p == 1:
        return PrimeField(q, 1, 1)
    cofactor = (q - 1) // p
    while True:
        zeta = pow(rng.randrange(2, q), cofactor, q)
        if _has_order(zeta, p, q):
            return PrimeField(q, p, zeta)


def roots_power_sum(p: int, i: int, fld: PrimeField | None = None) -> int:
    """Sum of ``x**i`` over all ``p``-th roots of unity.

    Summed inside a prime field and lifted back to the integers; the result is
    checked against the closed form (``p`` if ``p | i`` else 0).
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if i < 0:
        raise ValueError("exponent must be >= 0")
    fld = fld or random_prime_with_root(p, 31, random.Random(p * 1009 + i))
    if fld.p != p:
        raise ValueError("field carries a root of the wrong order")
    s = sum(pow(r, i, fld.q) for r in fld.root_powers()) % fld.q
    lifted = s if s <= fld.q // 2 else s - fld.q
    expected = p if i % p == 0 else 0
    if lifted != expected:
        raise ArithmeticError(f"root sum {lifted} != closed form {expected} (p={p}, i={i})")
    return lifted


# ---------------------------------------------------------------------------
# determinants

def det_exact_int(M: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by Bareiss fraction-free elimination."""
    a = [list(map(int, row)) for row in M]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def det_mod(M: Sequence[Sequence[int]], q: int) -> int:
    """Determinant over F_q by Gaussian elimination, pivot on first nonzero."""
    a = [[int(x) % q for x in row] for row in M]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    det = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k] % q
        inv = pow(a[k][k], -1, q)
        for i in range(k + 1, n):
            f = a[i][k] * inv % q
            if f:
                rk, ri = a[k], a[i]
                for j in range(k + 1, n):
                    ri[j] = (ri[j] - f * rk[j]) % q
    return det % q


def _pow_vec(a: np.ndarray, e: int, q: int) -> np.ndarray:
    out = np.ones_like(a)
    base = a % q
    while e:
        if e & 1:
            out = out * base % q
        base = base * base % q
        e >>= 1
    return out


def det_mod_batch(M: np.ndarray, q: int) -> np.ndarray:
    """Determinants of a stack of matrices over F_q.

    ``M`` has shape ``(B, n, n)`` with entries in ``[0, q)`` and is consumed
    (modified in place).  Requires ``q < 2**31``.
    """
    if q >= BATCH_MODULUS_LIMIT:
        raise ValueError("batch kernel needs q < 2**31")
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 3 or M.shape[1] != M.shape[2]:
        raise ValueError("expected shape (B, n, n)")
    B, n, _ = M.shape
    det = np.ones(B, dtype=np.int64)
    if n == 0:
        return det
    alive = np.ones(B, dtype=bool)
    ar = np.arange(B)
    for k in range(n):
        nz = M[:, k:, k] != 0
        has = nz.any(axis=1)
        alive &= has
        piv = nz.argmax(axis=1) + k
        swap = piv != k
        if swap.any():
            idx = ar[swap]
            rows_p = M[idx, piv[swap]].copy()
            M[idx, piv[swap]] = M[idx, k]
            M[idx, k] = rows_p
            det[swap] = (q - det[swap]) % q
        pivot = M[:, k, k]
        pivot = np.where(has, pivot, 1)
        det = det * pivot % q
        if k == n - 1:
            break
        inv = _pow_vec(pivot, q - 2, q)
        f = M[:, k + 1:, k] * inv[:, None] % q
        M[:, k + 1:, k + 1:] = (M[:, k + 1:, k + 1:] - f[:, :, None] * M[:, k, None, k + 1:]) % q
    det[~alive] = 0
    return det


# ---------------------------------------------------------------------------
# interpolation

def interpolate(points: Sequence[int], values: Sequence[int], q: int) -> list[int]:
    """Coefficients (lowest degree first) of the interpolating polynomial over F_q."""
    pts = [x % q for x in points]
    if len(set(pts)) != len(pts):
        raise ValueError("interpolation points must be distinct")
    if len(pts) != len(values):
        raise ValueError("points and values differ in length")
    n = len(pts)
    # master polynomial prod (y - x_j)
    master = [1]
    for x in pts:
        nxt = [0] * (len(master) + 1)
        for d, c in enumerate(master):
            nxt[d + 1] = (nxt[d + 1] + c) % q
            nxt[d] = (nxt[d] - x * c) % q
        master = nxt
    coeffs = [0] * n
    for j, (xj, vj) in enumerate(zip(pts, values)):
        # basis numerator = master / (y - xj) by synthetic division
        quo = [0] * n
        carry = 0
        for d in range(n, 0, -1):
            carry = (master[d] + carry * xj) % q
            quo[d - 1] = carry
        denom = 1
        for k, xk in enumerate(pts):
            if k != j:
                denom = denom * (xj - xk) % q
        scale = vj * pow(denom, -1, q) % q
        for d in range(n):
            coeffs[d] = (coeffs[d] + scale * quo[d]) % q
    return coeffs


def interpolate_coeff(points: Sequence[int], values: Sequence[int], degree: int, q: int) -> int:
    """Coefficient of ``y**degree`` in the polynomial through ``(points, values)``."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    coeffs = interpolate(points, values, q)
    return coeffs[degree] if degree < len(coeffs) else 0


def interpolate_coeff_2d(
    points1: Sequence[int],
    points2: Sequence[int],
    grid: Sequence[Sequence[int]],
    degrees: tuple[int, int],
    q: int,
) -> int:
    """Coefficient of ``y1**d1 * y2**d2`` from values on the grid ``points1 x points2``.

    ``grid[a][b]`` is the value at ``(points1[a], points2[b])``.
    """
    d1, d2 = degrees
    inner = [interpolate_coeff(points2, row, d2, q) for row in grid]
    return interpolate_coeff(points1, inner, d1, q)


# ---------------------------------------------------------------------------
# CRT

@dataclass
class CrtLedger:
    """Residues of one unknown integer ``t`` with ``|t| <= bound``."""

    bound: int
    residues: dict[int, int] = field(default_factory=dict)

    def add(self, prime: int, residue: int) -> None:
        residue %= prime
        old = self.residues.get(prime)
        if old is not None and old != residue:
            raise InconsistentResiduesError(f"prime {prime}: residue {residue} != {old}")
        self.residues[prime] = residue

    def merge(self, other: "CrtLedger") -> "CrtLedger":
        out = CrtLedger(max(self.bound, other.bound), dict(self.residues))
        for p, r in other.residues.items():
            out.add(p, r)
        return out

    @property
    def modulus(self) -> int:
        return prod(self.residues)

    def sufficient(self) -> bool:
        return self.modulus > 2 * self.bound


def crt_reconstruct(ledger: CrtLedger) -> int:
    """The unique integer of absolute value at most ``ledger.bound`` matching every residue."""
    if not ledger.sufficient():
        raise InsufficientPrimesError(
            f"prime product {ledger.modulus} does not exceed 2*bound = {2 * ledger.bound}"
        )
    x, m = 0, 1
    for p, r in sorted(ledger.residues.items()):
        # x + m*k = r (mod p)
        k = (r - x) * pow(m, -1, p) % p
        x += m * k
        m *= p
    if x > m // 2:
        x -= m
    if abs(x) > ledger.bound:
        raise InconsistentResiduesError(f"reconstructed {x} exceeds bound {ledger.bound}")
    return x
