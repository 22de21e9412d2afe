"""Type II Hermite-Pade denominators for two logarithms.

For f_j(z) = log((z - a_j)/(z - b_j)) = sum_{k>=1} f_{j,k} z^{-k} with
f_{j,k} = (b_j^k - a_j^k)/k, the common denominator P of degree n1 + n2
is fixed by  f_j P - Q_j = O(z^{-n_j - 1}).  Writing P = sum p_i z^i, the
coefficient of z^{-m} in f_j P is  sum_i p_i f_{j,i+m},  which gives n1 + n2
homogeneous equations (m = 1..n_j) for n1 + n2 + 1 unknowns.

The moment matrix is violently ill-conditioned (its entries grow like
max|point|^(n1+n2)), so the null vector and the zeros are computed in
mpmath with a working precision that grows with the order.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .errors import InputError
from .poly import CPoly, RootSet


@dataclass(frozen=True)
class HPSystem:
    n: tuple[int, int]
    moments: tuple[tuple[complex, ...], tuple[complex, ...]]
    denominator: CPoly
    zeros: RootSet
    rank_deficient: bool
    nullity: int
    full_degree: bool
    defect: float  # max |coefficient of z^-m in f_j P - Q_j| / max|p_i|


def moments(a: complex, b: complex, count: int, ctx=mp) -> list:
    """f_0 .. f_{count-1} of log((z - a)/(z - b)) at infinity."""
    a, b = ctx.mpmathify(a), ctx.mpmathify(b)
    return [ctx.mpf(0)] + [(b ** k - a ** k) / k for k in range(1, count)]


def _system(points, n, ctx):
    N = n[0] + n[1]
    rows, mom = [], []
    for (a, b), nj in zip(points, n):
        f = moments(a, b, N + nj + 1, ctx)
        mom.append(f)
        for m in range(1, nj + 1):
            rows.append([f[i + m] for i in range(N + 1)])
    return rows, mom


def _to_complex(x) -> complex:
    return complex(x)


def solve_hp(a1, b1, a2, b2, n=(20, 20), dps: int | None = None,
             rank_rtol: float | None = None) -> HPSystem:
    """Denominator P_n and its zeros.

    The null vector is the right singular vector of the smallest singular
    value.  If more than one singular value falls below ``rank_rtol`` times
    the largest, the index is not normal: the result is still returned,
    with ``rank_deficient`` set, from the last singular vector.  P is made
    monic in the degree it attains; ``full_degree`` says whether that is
    n1 + n2.
    """
    n1, n2 = int(n[0]), int(n[1])
    if n1 < 0 or n2 < 0:
        raise InputError(f"multi-index must be nonnegative, got {n}")
    N = n1 + n2
    pts = [complex(p) for p in (a1, b1, a2, b2)]
    if not all(np.isfinite(pts)):
        raise InputError("branch points must be finite")
    ctx = mp.mp.clone()
    ctx.dps = dps or max(50, 2 * N + 10)
    rank_rtol = rank_rtol if rank_rtol is not None else ctx.mpf(10) ** (15 - ctx.dps)
    rows, mom = _system([(pts[0], pts[1]), (pts[2], pts[3])], (n1, n2), ctx)
    moms = tuple(tuple(_to_complex(x) for x in f) for f in mom)
    if N == 0:
        return HPSystem((n1, n2), moms, CPoly([1.0]), RootSet((), 0.0), False, 0, True, 0.0)

    # square up with a zero row so the SVD returns the full right basis
    A = ctx.matrix(rows + [[0] * (N + 1)])
    _, S, V = ctx.svd(A, compute_uv=True)
    sv = sorted((abs(S[i]) for i in range(N + 1)), reverse=True)
    small = sum(1 for s in sv if s <= rank_rtol * sv[0])
    nullity = max(small, 1)
    # A = U diag(S) V, so the null vector is the conjugated last row of V
    p = [ctx.conj(V[N, i]) for i in range(N + 1)]
    scale = max(abs(x) for x in p)
    deg = max(i for i in range(N + 1) if abs(p[i]) > rank_rtol * scale)
    coeffs = [x / p[deg] for x in p[: deg + 1]]  # monic in the attained degree
    p = coeffs + [ctx.mpf(0)] * (N - deg)
    defect_vec = ctx.matrix(rows) * ctx.matrix(p)
    defect = max(abs(defect_vec[i]) for i in range(N)) / max(abs(x) for x in p)

    if deg >= 1:
        zs = ctx.polyroots(coeffs[::-1], maxsteps=500, extraprec=4 * ctx.prec)
        resid = max(abs(ctx.polyval(coeffs[::-1], z)) for z in zs)
        zeros = RootSet(tuple(sorted(((_to_complex(z), 1) for z in zs),
                                     key=lambda t: (round(t[0].real, 12), round(t[0].imag, 12)))),
                        float(resid))
    else:
        zeros = RootSet((), 0.0)
    return HPSystem((n1, n2), moms, CPoly([_to_complex(x) for x in coeffs]), zeros,
                    nullity > 1, nullity, deg == N, float(defect))
