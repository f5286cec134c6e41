"""Dense linear-algebra substrate.

Everything that needs factorization internals lives here: SVD with a
deterministic sign convention, spectral norms, the block canonical form
P D P^T of orthogonal matrices, and the matrix exponential of
skew-symmetric matrices through the same block path.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import PhaseAtPiError
from .tolerances import TAU_ORTH, TAU_PHASE
from .validation import check_orthogonal, check_square

__all__ = [
    "SvdFactors",
    "SchurBlock",
    "CanonicalForm",
    "skew_part",
    "sym_part",
    "svd_factors",
    "spectral_norm",
    "orthogonal_schur",
    "exp_skew",
]


def skew_part(a):
    """Skew-symmetric part (A - A^T) / 2."""
    return (a - a.T) / 2.0


def sym_part(a):
    """Symmetric part (A + A^T) / 2."""
    return (a + a.T) / 2.0


@dataclass(frozen=True, eq=False)
class SvdFactors:
    """Factors of C = U diag(sigma) V^T with sigma nonincreasing and >= 0.

    Column signs of U (mirrored into V) are fixed so the largest-magnitude
    entry of each U column is positive, which makes the factors deterministic.
    """

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    @property
    def sigma_max(self):
        return float(self.sigma[0])

    @property
    def sigma_min(self):
        return float(self.sigma[-1])

    def reconstruct(self):
        return (self.u * self.sigma) @ self.v.T


def svd_factors(c):
    """Singular value decomposition with deterministic signs.

    Parameters
    ----------
    c : (n, n) array_like
        Square matrix with finite entries.

    Returns
    -------
    SvdFactors
    """
    c = check_square(c, "C")
    u, s, vt = np.linalg.svd(c)
    v = vt.T
    for j in range(u.shape[1]):
        k = int(np.argmax(np.abs(u[:, j])))
        if u[k, j] < 0:
            u[:, j] = -u[:, j]
            v[:, j] = -v[:, j]
    return SvdFactors(u=u, sigma=s, v=v)


def spectral_norm(a):
    """Largest singular value of a finite matrix."""
    a = check_square(a, "A")
    if a.shape[0] == 0:
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False)[0])


@dataclass(frozen=True)
class SchurBlock:
    """One diagonal block of the canonical form.

    size 1 with angle 0 is an eigenvalue +1; size 1 with angle pi is a lone
    eigenvalue -1 (only present when det = -1); size 2 is a plane rotation by
    ``angle``, with angle pi for a paired couple of -1 eigenvalues.
    """

    start: int
    size: int
    angle: float


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """Block canonical form Q = P D P^T of an orthogonal matrix.

    ``p`` is orthogonal and ``blocks`` describes D: diagonal entries +-1 and
    2x2 rotation blocks. Paired -1 eigenvalues are stored as a single 2x2
    rotation by pi, so a lone -1 survives exactly when det(Q) = -1.
    """

    p: np.ndarray
    blocks: tuple

    @property
    def n(self):
        return self.p.shape[0]

    @property
    def phi(self):
        """Full phase vector, one entry per eigenvalue.

        A 2x2 rotation by r contributes the couple (r, -r); a rotation by pi
        contributes (pi, pi) since both eigenvalues are -1; diagonal entries
        contribute 0 or pi. Phases live in (-pi, pi].
        """
        out = np.zeros(self.n)
        for b in self.blocks:
            if b.size == 1:
                out[b.start] = b.angle
            elif b.angle == math.pi:
                out[b.start] = math.pi
                out[b.start + 1] = math.pi
            else:
                out[b.start] = b.angle
                out[b.start + 1] = -b.angle
        return out

    @property
    def r_max(self):
        """Largest rotation magnitude max_i |phi_i|."""
        if self.n == 0:
            return 0.0
        return float(np.max(np.abs(self.phi)))

    @property
    def det_sign(self):
        """+1 or -1; -1 exactly when a lone pi entry is present."""
        for b in self.blocks:
            if b.size == 1 and b.angle != 0.0:
                return -1
        return 1

    def d_matrix(self):
        """Materialize the block-diagonal middle factor D."""
        d = np.zeros((self.n, self.n))
        for b in self.blocks:
            if b.size == 1:
                d[b.start, b.start] = 1.0 if b.angle == 0.0 else -1.0
            else:
                c, s = math.cos(b.angle), math.sin(b.angle)
                d[b.start, b.start] = c
                d[b.start, b.start + 1] = -s
                d[b.start + 1, b.start] = s
                d[b.start + 1, b.start + 1] = c
        return d

    def reconstruct(self):
        return self.p @ self.d_matrix() @ self.p.T

    def log_generator(self):
        """Skew generator Omega with exp_m(Omega) reconstructing the source.

        Only defined when every phase is strictly inside (-pi, pi); callers
        must branch on pi phases before asking for a logarithm.
        """
        w = np.zeros((self.n, self.n))
        for b in self.blocks:
            if b.angle == 0.0:
                continue
            if b.size == 1 or b.angle == math.pi:
                raise PhaseAtPiError("matrix logarithm undefined at phase pi")
            w[b.start, b.start + 1] = -b.angle
            w[b.start + 1, b.start] = b.angle
        return skew_part(self.p @ w @ self.p.T)


def _walk_blocks(t):
    """Yield (start, size) for the 1x1 / 2x2 diagonal blocks of a real Schur factor."""
    n = t.shape[0]
    i = 0
    while i < n:
        if i + 1 < n and t[i + 1, i] != 0.0:
            yield i, 2
            i += 2
        else:
            yield i, 1
            i += 1


def _block_angle(t, i):
    """Rotation angle of the 2x2 Schur block at (i, i)."""
    s = (t[i + 1, i] - t[i, i + 1]) / 2.0
    c = (t[i, i] + t[i + 1, i + 1]) / 2.0
    return math.atan2(s, c)


def orthogonal_schur(q, tol=TAU_ORTH):
    """Canonical form P D P^T of an orthogonal matrix.

    Q is reduced by a real Schur decomposition; 2x2 blocks with complex
    eigenvalue couples become plane rotations, real eigenvalues become +-1
    diagonal entries, and couples of -1 entries are merged (via a column
    permutation of P) into single rotation-by-pi blocks. Angles within
    TAU_PHASE of pi are classified as exactly pi, and rotations within
    TAU_PHASE of zero are truncated to identity entries.

    Raises
    ------
    NotOrthogonalError
        If ||Q^T Q - I||_F exceeds ``tol``.
    """
    q = check_orthogonal(q, tol, "Q")
    n = q.shape[0]
    t, p = scipy.linalg.schur(q, output="real")

    raw = []  # (orig_start, size, angle)
    for i, size in _walk_blocks(t):
        if size == 2:
            r = _block_angle(t, i)
            if abs(r) >= math.pi - TAU_PHASE:
                raw.append((i, 2, math.pi))
            elif abs(r) <= TAU_PHASE:
                raw.append((i, 1, 0.0))
                raw.append((i + 1, 1, 0.0))
            else:
                raw.append((i, 2, r))
        else:
            raw.append((i, 1, 0.0 if t[i, i] > 0.0 else math.pi))

    # Pair lone -1 entries, in diagonal order, into rotation-by-pi blocks.
    minus_ones = [b[0] for b in raw if b[1] == 1 and b[2] == math.pi]
    partner = {}
    for a, b in zip(minus_ones[0::2], minus_ones[1::2]):
        partner[a] = b
        partner[b] = a
    leftover = minus_ones[-1] if len(minus_ones) % 2 == 1 else None

    perm = []
    blocks = []
    emitted = set()
    for start, size, angle in raw:
        if start in emitted:
            continue
        if size == 1 and angle == math.pi and start != leftover:
            mate = partner[start]
            blocks.append(SchurBlock(start=len(perm), size=2, angle=math.pi))
            perm.extend([start, mate])
            emitted.update([start, mate])
        else:
            blocks.append(SchurBlock(start=len(perm), size=size, angle=angle))
            perm.extend(range(start, start + size))
            emitted.update(range(start, start + size))

    return CanonicalForm(p=p[:, perm], blocks=tuple(blocks))


def exp_skew(omega):
    """Matrix exponential of a skew-symmetric matrix via its Schur block form.

    Exact 2x2 rotation blocks are assembled from the block eigenangles, so the
    result is orthogonal to roundoff and shares its factorization path with
    the canonical-form logarithm.
    """
    omega = check_square(omega, "Omega")
    n = omega.shape[0]
    if n == 0:
        return np.zeros((0, 0))
    t, p = scipy.linalg.schur(omega, output="real")
    e = np.eye(n)
    for i, size in _walk_blocks(t):
        if size == 2:
            th = (t[i + 1, i] - t[i, i + 1]) / 2.0
            c, s = math.cos(th), math.sin(th)
            e[i, i] = c
            e[i, i + 1] = -s
            e[i + 1, i] = s
            e[i + 1, i + 1] = c
    return p @ e @ p.T
