"""Complex polynomials with ascending coefficients and a clustered root solver.

The root solver takes the eigenvalues of the companion matrix
(``numpy.polynomial.polynomial.polyroots``), polishes them with Newton steps
and then merges clusters into multiple roots.  Two roots are merged when
their distance is below ``cluster_tol * (1 + |r|)`` or below the splitting
radius that a relative coefficient perturbation of size ``noise`` can produce
for a root of that multiplicity.  The second rule is what lets double roots
of polynomials assembled with cancellation (the reduced discriminant, for
instance) be recognised as double.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import InputError, NonConvergenceError

DROP_TOL = 1e-12


class CPoly:
    """Immutable complex polynomial, coefficients in ascending degree.

    Exact trailing zeros are removed at construction; the zero polynomial has
    an empty coefficient array and degree -1.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex] = ()):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                     dtype=complex).ravel()
        nz = np.nonzero(c)[0]
        c = c[: nz[-1] + 1] if nz.size else c[:0]
        c.setflags(write=False)
        self._c = c

    @classmethod
    def from_roots(cls, roots: Sequence[complex]) -> "CPoly":
        return cls(npoly.polyfromroots(np.asarray(roots, dtype=complex)))

    @classmethod
    def monomial(cls, k: int, coeff: complex = 1.0) -> "CPoly":
        c = np.zeros(k + 1, dtype=complex)
        c[k] = coeff
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def is_zero(self) -> bool:
        return len(self._c) == 0

    def coeff(self, k: int) -> complex:
        return complex(self._c[k]) if 0 <= k < len(self._c) else 0j

    @property
    def leading(self) -> complex:
        return complex(self._c[-1]) if len(self._c) else 0j

    def scale(self) -> float:
        """Largest coefficient modulus (0 for the zero polynomial)."""
        return float(np.max(np.abs(self._c))) if len(self._c) else 0.0

    def trim(self, rtol: float = DROP_TOL) -> "CPoly":
        """Drop leading coefficients below ``rtol * max|coeff|``."""
        if self.is_zero:
            return self
        cut = rtol * self.scale()
        c = self._c
        n = len(c)
        while n and abs(c[n - 1]) <= cut:
            n -= 1
        return CPoly(c[:n])

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self._c), len(other._c))
        c = np.zeros(n, dtype=complex)
        c[: len(self._c)] += self._c
        c[: len(other._c)] += other._c
        return CPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return CPoly(-self._c)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return CPoly()
        return CPoly(npoly.polymul(self._c, other._c))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = CPoly([1.0])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, z):
        return peval(self, z)

    def deriv(self, m: int = 1) -> "CPoly":
        if self.degree < m:
            return CPoly()
        return CPoly(npoly.polyder(self._c, m))

    def divmod(self, other: "CPoly"):
        q, r = npoly.polydiv(self._c, other._c)
        return CPoly(q), CPoly(r)

    def allclose(self, other, rtol: float = 1e-12, atol: float = 0.0) -> bool:
        other = _as_poly(other)
        n = max(len(self._c), len(other._c))
        a = np.zeros(n, complex)
        b = np.zeros(n, complex)
        a[: len(self._c)] = self._c
        b[: len(other._c)] = other._c
        ref = max(self.scale(), other.scale(), 1e-300)
        return bool(np.all(np.abs(a - b) <= atol + rtol * ref))

    def __eq__(self, other):
        if not isinstance(other, CPoly):
            return NotImplemented
        return np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        terms = ", ".join(_fmt(c) for c in self._c)
        return f"CPoly([{terms}])"


def _fmt(c: complex) -> str:
    return f"{c.real:.6g}" if c.imag == 0 else f"{c:.6g}"


def _as_poly(p) -> CPoly:
    if isinstance(p, CPoly):
        return p
    if np.isscalar(p):
        return CPoly([p])
    return CPoly(p)


def add(p: CPoly, q: CPoly) -> CPoly:
    return p + q


def sub(p: CPoly, q: CPoly) -> CPoly:
    return p - q


def mul(p: CPoly, q: CPoly) -> CPoly:
    return p * q


def derivative(p: CPoly, m: int = 1) -> CPoly:
    return p.deriv(m)


def peval(p: CPoly, z):
    """Horner evaluation; works on scalars and arrays."""
    c = p.coeffs
    if not len(c):
        return np.zeros_like(np.asarray(z, dtype=complex)) if np.ndim(z) else 0j
    acc = c[-1] * np.ones_like(np.asarray(z, dtype=complex)) if np.ndim(z) else complex(c[-1])
    for a in c[-2::-1]:
        acc = acc * z + a
    return acc


def eval_bound(p: CPoly, z: complex) -> float:
    """sum |c_k| |z|^k, the natural scale for rounding errors of p(z)."""
    return float(np.polyval(np.abs(p.coeffs[::-1]), abs(z))) if not p.is_zero else 0.0


@dataclass(frozen=True)
class RootSet:
    """Roots with multiplicities; ``residual_bound`` bounds |p(r)| over them."""

    roots: tuple[tuple[complex, int], ...]
    residual_bound: float

    @property
    def values(self) -> np.ndarray:
        return np.array([r for r, _ in self.roots], dtype=complex)

    @property
    def multiplicities(self) -> np.ndarray:
        return np.array([m for _, m in self.roots], dtype=int)

    @property
    def degree(self) -> int:
        return int(sum(m for _, m in self.roots))

    def expanded(self) -> np.ndarray:
        return np.array([r for r, m in self.roots for _ in range(m)], dtype=complex)

    def simple(self) -> np.ndarray:
        return np.array([r for r, m in self.roots if m == 1], dtype=complex)

    def with_multiplicity(self, m: int) -> np.ndarray:
        return np.array([r for r, k in self.roots if k == m], dtype=complex)

    def __len__(self):
        return len(self.roots)


def _newton_polish(c: np.ndarray, r: complex, iters: int = 6) -> complex:
    dc = npoly.polyder(c)
    best, fbest = r, abs(npoly.polyval(r, c))
    x = r
    for _ in range(iters):
        f = npoly.polyval(x, c)
        df = npoly.polyval(x, dc)
        if df == 0:
            break
        x = x - f / df
        fx = abs(npoly.polyval(x, c))
        if fx < fbest:
            best, fbest = x, fx
        else:
            break
    return complex(best)


def _center(p: CPoly, members: list) -> complex:
    """Cluster centre; a k-fold root is a simple root of the (k-1)-th derivative."""
    m = complex(np.mean(members))
    k = len(members)
    if k == 1:
        return members[0]
    polished = _newton_polish(p.deriv(k - 1).coeffs, m)
    spread = max(abs(x - m) for x in members)
    return polished if abs(polished - m) <= spread else m


def _split_radius(p: CPoly, center: complex, k: int, noise: float) -> float:
    """Radius by which a k-fold root at ``center`` splits under coefficient noise."""
    if k < 2 or noise <= 0:
        return 0.0
    dk = abs(peval(p.deriv(k), center)) / factorial(k)
    if dk == 0:
        return np.inf
    return 2.0 * (noise * eval_bound(p, center) / dk) ** (1.0 / k)


def roots(p: CPoly, cluster_tol: float = 1e-7, noise: float = 1e-12,
          residual_rtol: float = 1e-10) -> RootSet:
    """All complex roots of ``p`` with clustered multiplicities.

    Raises NonConvergenceError when a reported root leaves a residual larger
    than ``residual_rtol * sum|c_k||r|^k``.
    """
    if cluster_tol <= 0:
        raise InputError("cluster_tol must be positive")
    p = p.trim(0.0)
    if p.degree < 1:
        raise InputError("roots() needs a polynomial of degree >= 1")
    c = p.coeffs
    raw = npoly.polyroots(c) if p.degree > 1 else np.array([-c[0] / c[1]])
    if not np.all(np.isfinite(raw)):
        raise NonConvergenceError("companion eigenvalues are not finite")
    raw = [_newton_polish(c, complex(r)) for r in raw]

    # agglomerate: repeatedly merge the closest admissible pair
    clusters = [[r] for r in raw]
    while len(clusters) > 1:
        pairs = sorted(
            (abs(np.mean(a) - np.mean(b)), i, j)
            for i, a in enumerate(clusters) for j, b in enumerate(clusters) if i < j)
        for d, i, j in pairs:
            members = clusters[i] + clusters[j]
            center = complex(np.mean(members))
            limit = max(cluster_tol * (1 + abs(center)),
                        _split_radius(p, center, len(members), noise))
            if 2 * max(abs(m - center) for m in members) <= limit:
                clusters[i] = members
                del clusters[j]
                break
        else:
            break
    clusters = [(_center(p, m), len(m)) for m in clusters]

    out = []
    resid = 0.0
    for center, k in clusters:
        f = abs(peval(p, center))
        bound = eval_bound(p, center)
        if f > residual_rtol * max(bound, 1e-300) and k == 1:
            raise NonConvergenceError(
                f"root {center} leaves residual {f:.3g} (scale {bound:.3g})")
        resid = max(resid, f)
        out.append((center, k))
    out.sort(key=lambda t: (round(t[0].real, 12), round(t[0].imag, 12)))
    return RootSet(tuple(out), resid)
