"""Why a 1e-8 roundtrip is out of reach for some random Jacobi matrices.

Small off-diagonal entries make an eigenvalue of J almost equal to one of
J minus its last row and column.  The spectral weights then depend on a
difference of nearly equal doubles, and the rounding already present in the
input spectra is amplified by roughly 1/gap.  Computing the spectra at 50
digits and rounding them does not help: the information is gone once the
spectra are stored as doubles.

    python3 demos/jacobi_conditioning.py
"""

import mpmath
import numpy as np

from lintree.jacobi_recon import InterlacingError, JacobiMatrix, reconstruct

rng = np.random.default_rng(4)
rows = []
for _ in range(1000):
    n = int(rng.integers(1, 11))
    A = JacobiMatrix(rng.uniform(-2, 2, n), 2.0 * (1.0 - rng.random(n - 1))).to_dense()
    om, mu = np.linalg.eigvalsh(A), np.linalg.eigvalsh(A[:-1, :-1])
    gap = float(np.min(np.abs(om[:, None] - mu[None, :]))) if n > 1 else 1.0
    try:
        err = float(np.max(np.abs(reconstruct(om, mu).to_dense() - A)))
    except InterlacingError:
        err = np.inf
    rows.append((gap, err, A))

bad = [r for r in rows if r[1] > 1e-8]
print(f"{len(rows) - len(bad)} of {len(rows)} roundtrips within 1e-8")
print("error times gap, over all finite cases:",
      f"{max(e * g for g, e, _ in rows if np.isfinite(e)):.1e}")
print("\n   gap        error    off-diagonal min")
for gap, err, A in sorted(bad, key=lambda r: r[0])[:8]:
    print(f"{gap:9.1e} {err:10.1e} {np.min(np.abs(np.diag(A, 1))):12.1e}")

mpmath.mp.dps = 50
still = 0
for _, _, A in bad:
    exact = [np.array(sorted(float(x) for x in mpmath.eigsy(mpmath.matrix(M.tolist()))[0]))
             for M in (A, A[:-1, :-1])]
    try:
        still += np.max(np.abs(reconstruct(*exact).to_dense() - A)) > 1e-8
    except InterlacingError:
        still += 1
print(f"\nwith correctly rounded spectra {still} of the {len(bad)} still miss 1e-8")
