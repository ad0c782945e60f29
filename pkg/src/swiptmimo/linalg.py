"""Complex dense-matrix primitives: SVD, Hermitian eigendecomposition, Haar sampling.

All decompositions return singular values / eigenvalues in descending order;
downstream mode-pairing conventions rely on this.
"""

import numpy as np

from .errors import InvalidInputError

# Relative tolerances for decomposition contracts.
RECON_RTOL = 1e-10
UNITARY_TOL = 1e-12
HERMITIAN_RTOL = 1e-12


def check_finite(a, name="matrix"):
    """Raise InvalidInputError if `a` contains NaN or Inf."""
    a = np.asarray(a)
    if not np.all(np.isfinite(a)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return a


def hermitize(a):
    """Return the Hermitian part (A + A^H)/2."""
    return 0.5 * (a + a.conj().swapaxes(-2, -1))


def check_hermitian(a, rtol=HERMITIAN_RTOL, name="matrix"):
    """Validate conjugate symmetry of `a` within a relative tolerance."""
    a = check_finite(np.asarray(a, dtype=complex), name)
    scale = np.linalg.norm(a)
    dev = np.linalg.norm(a - a.conj().T)
    if dev > rtol * max(scale, 1.0):
        raise InvalidInputError(
            f"{name} is not Hermitian (relative deviation {dev / max(scale, 1e-300):.2e})")
    return a


def is_psd(a, tol_factor=1e-10):
    """True if all eigenvalues of Hermitian `a` exceed -tol_factor * lambda_max."""
    w = np.linalg.eigvalsh(hermitize(np.asarray(a, dtype=complex)))
    top = max(w[-1], 0.0)
    return bool(w[0] >= -tol_factor * max(top, 1.0))


def complex_gaussian(shape, rng):
    """Standard circular complex Gaussian entries, unit variance per entry.

    Draw order (real block then imaginary block) is part of the seeding
    contract shared with the Monte-Carlo ensemble builder.
    """
    re = rng.standard_normal(shape)
    im = rng.standard_normal(shape)
    return (re + 1j * im) / np.sqrt(2.0)


def haar_from_gaussian(z):
    """Map (stacked) complex Gaussian matrices to Haar-distributed unitaries.

    QR with the R-diagonal phase correction; without the correction the QR
    factorization is not uniform over the unitary group.
    """
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    phase = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1.0), 1.0)
    return q * phase[..., None, :]


def haar_unitary(n, rng):
    """Draw an n x n unitary matrix from the Haar measure."""
    if n < 1:
        raise InvalidInputError("haar_unitary requires n >= 1")
    return haar_from_gaussian(complex_gaussian((n, n), rng))


def svd(a):
    """Full SVD with descending singular values.

    Returns (L, sigma, R) such that a = L @ diag_pad(sigma) @ R^H, with L and
    R square unitary and sigma of length min(rows, cols).
    """
    a = check_finite(np.asarray(a, dtype=complex), "svd input")
    left, sigma, right_h = np.linalg.svd(a, full_matrices=True)
    return left, sigma, right_h.conj().T


def herm_eig(a, check=True):
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Returns (eigvals, eigvecs) with eigvecs[:, k] the unit eigenvector of
    eigvals[k]. Eigenvector phase is unconstrained.
    """
    if check:
        a = check_hermitian(a)
    else:
        a = np.asarray(a, dtype=complex)
    w, v = np.linalg.eigh(hermitize(a))
    return w[::-1].copy(), v[:, ::-1].copy()


def pad_diag(sigma, rows, cols):
    """Embed a singular-value vector into a rows x cols rectangular diagonal."""
    out = np.zeros((rows, cols))
    k = len(sigma)
    out[:k, :k] = np.diag(sigma)
    return out
