"""Construction and verification of mutually unbiased bases (MUBs).

Two orthonormal bases of C^d are mutually unbiased when every cross-basis
overlap has modulus 1/sqrt(d). Supported constructions:

  * any d, n = 2: computational basis + discrete Fourier basis;
  * d = 2, n <= 3: the Pauli Z/X/Y eigenbases;
  * odd prime d, n <= d+1: computational basis plus the quadratic-phase
    family whose basis x has components <j|phi_x^a> =
    d^{-1/2} exp(2*pi*i*(x*j^2 + a*j)/d) for x = 1..d.

For odd primes the quadratic-phase family with x = 1..d together with the
computational basis realizes the maximal count of d+1 bases. Prime powers
p^k with k > 1 would need Galois-field arithmetic and are not constructed;
asking for them raises MubConstructionError.

Outcome index a and basis index x are 0-based everywhere; basis 0 is always
the computational basis (for d = 2 that is the Z eigenbasis).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SUPPORTED_FAMILIES = (
    "(any d >= 2, n = 2), (d = 2, n <= 3), (odd prime d, n <= d + 1)"
)


class MubConstructionError(ValueError):
    """Requested (d, n) has no implemented MUB construction."""


def is_prime(d: int) -> bool:
    """Deterministic trial division; fine for the d <= 64 regime."""
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % k == 0:
            return False
        k += 1
    return True


def supported_family(d: int, n: int) -> bool:
    """Whether build_mub can construct n bases in dimension d."""
    if d < 2 or n < 2:
        return False
    if n == 2:
        return True
    if d == 2:
        return n <= 3
    return is_prime(d) and n <= d + 1


@dataclass(frozen=True)
class MubSet:
    """n orthonormal bases of C^d, stored as bases[x, a, j] = <j|phi_x^a>.

    A plain carrier: nothing is validated on construction, so corrupted
    sets can be represented and fed to verify_mub. Sets returned by
    build_mub always pass verification.
    """

    d: int
    n: int
    bases: np.ndarray

    def basis(self, x: int) -> np.ndarray:
        """The d x d array of basis x, one vector per row."""
        return self.bases[x]

    def vector(self, x: int, a: int) -> np.ndarray:
        """The a-th vector of basis x."""
        return self.bases[x, a]

    def to_json_dict(self) -> dict:
        """JSON-friendly form: amplitudes as [re, im] pairs."""
        return {
            "d": self.d,
            "n": self.n,
            "bases": [
                [[[float(c.real), float(c.imag)] for c in vec] for vec in basis]
                for basis in self.bases
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "MubSet":
        bases = np.array(
            [[[complex(re, im) for re, im in vec] for vec in basis] for basis in data["bases"]],
            dtype=complex,
        )
        return cls(d=int(data["d"]), n=int(data["n"]), bases=bases)


@dataclass(frozen=True)
class MubVerification:
    """Result of checking the defining overlap relations at a tolerance.

    max_deviation is the worst |observed − expected| over all vector pairs,
    where expected is delta_{a,b} within a basis and 1/sqrt(d) across bases.
    worst_pair holds the offending indices (x, a, y, b).
    """

    passed: bool
    max_deviation: float
    worst_pair: tuple[int, int, int, int]
    tol: float


def _pauli_bases() -> np.ndarray:
    s = 1.0 / np.sqrt(2.0)
    return np.array(
        [
            [[1, 0], [0, 1]],                    # Z
            [[s, s], [s, -s]],                   # X
            [[s, 1j * s], [s, -1j * s]],         # Y
        ],
        dtype=complex,
    )


def _fourier_basis(d: int) -> np.ndarray:
    j = np.arange(d)
    return np.exp(2j * np.pi * np.outer(j, j) / d) / np.sqrt(d)


def _quadratic_basis(d: int, x: int) -> np.ndarray:
    # Vector a has j-th component d^{-1/2} exp(2 pi i (x j^2 + a j)/d);
    # for x = d the quadratic phase drops out and this is the Fourier basis.
    j = np.arange(d)
    quad = np.exp(2j * np.pi * x * (j * j % d) / d)
    lin = np.exp(2j * np.pi * np.outer(np.arange(d), j) / d)
    return quad[np.newaxis, :] * lin / np.sqrt(d)


def build_mub(d: int, n: int) -> MubSet:
    """Construct n mutually unbiased bases in dimension d.

    Raises MubConstructionError when (d, n) falls outside the supported
    families listed in the module docstring.
    """
    if d < 2:
        raise MubConstructionError(f"dimension must be >= 2, got d={d}")
    if n < 2:
        raise MubConstructionError(f"need at least two bases, got n={n}")
    if d == 2:
        if n > 3:
            raise MubConstructionError(
                f"(d=2, n={n}) not available: at most 3 MUBs exist for qubits; "
                f"supported families: {SUPPORTED_FAMILIES}"
            )
        bases = _pauli_bases()[:n]
    elif is_prime(d):
        if n > d + 1:
            raise MubConstructionError(
                f"(d={d}, n={n}) not available: at most d+1 = {d + 1} MUBs exist; "
                f"supported families: {SUPPORTED_FAMILIES}"
            )
        bases = np.stack([np.eye(d, dtype=complex)] + [_quadratic_basis(d, x) for x in range(1, n)])
    else:
        if n > 2:
            raise MubConstructionError(
                f"(d={d}, n={n}) not available: d is not prime and only the "
                f"computational + Fourier pair is constructed for such d; "
                f"supported families: {SUPPORTED_FAMILIES}"
            )
        bases = np.stack([np.eye(d, dtype=complex), _fourier_basis(d)])
    return MubSet(d=d, n=n, bases=bases)


def verify_mub(mub: MubSet, tol: float = 1e-10) -> MubVerification:
    """Check the defining overlap relations of a MubSet.

    Report-style: never raises on a bad set, just flags it with the worst
    deviation and the indices where it occurs.
    """
    d, n = mub.d, mub.n
    flat = mub.bases.reshape(n * d, d)
    gram = np.abs(flat.conj() @ flat.T)

    expected = np.full((n * d, n * d), 1.0 / np.sqrt(d))
    for x in range(n):
        block = slice(x * d, (x + 1) * d)
        expected[block, block] = np.eye(d)

    dev = np.abs(gram - expected)
    flat_idx = int(np.argmax(dev))
    i, j = divmod(flat_idx, n * d)
    worst = (i // d, i % d, j // d, j % d)
    max_dev = float(dev[i, j])
    return MubVerification(passed=max_dev <= tol, max_deviation=max_dev,
                           worst_pair=worst, tol=tol)


def conjugate_basis(mub: MubSet, x: int) -> np.ndarray:
    """Component-wise complex conjugate of basis x, one vector per row.

    Conjugation in the computational basis preserves orthonormality, so the
    returned family is again an orthonormal basis.
    """
    if not 0 <= x < mub.n:
        raise IndexError(f"basis index {x} out of range [0, {mub.n})")
    return mub.bases[x].conj()
