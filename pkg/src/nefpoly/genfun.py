"""Floating-point verification of the generating-function layer.

The exact layer certifies algebraic identities; this module ties them to the
analytic ones, for the families that carry closed forms:

* partial sums of sum_n (m - m0)^n / n! * P_n(x) against the closed-form
  density f(x, m) of the tilted member; convergence holds in a window
  around m0 whose radius is finite and family-dependent, so probes report
  non-convergence instead of erroring outside it;
* the bilinear identity: exp{k(psi(m) + psi(m')) - k(psi(m)) - k(psi(m'))}
  against the truncated double series 1 + sum a_nq (m - m0)^n (m' - m0)^q
  built from exact normalized Gram entries;
* the exponential (Sheffer-type) generating function of the scaled sequence
  Q_n = t^n P_n: sum_n Q_n(x) z^n / n! against exp{a(z) x + b(z)} with
  a(z) = psi(t z + m0) and b(z) = -k(a(z));
* adaptive quadrature of P_n P_q against the base density, cross-checking
  exact Gram entries end to end.

The Sheffer probe reuses the partial-sum engine verbatim with weight
w = t*z (the two agree bitwise when handed identical float weights).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

from scipy import integrate as _integrate

from .families import RebasedForms
from .ortho import GramMatrix
from .polyseq import PolySequence
from .ratpoly import Poly, RationalLike, rat


def weighted_partial_sums(polys: Sequence[Poly], x: float, w: float) -> list[float]:
    """Partial sums S_N = sum_{n<=N} w^n / n! * P_n(x), for N = 0..len-1."""
    sums = []
    acc = 0.0
    wn_over_fact = 1.0  # w^n / n!
    for n, p in enumerate(polys):
        if n > 0:
            wn_over_fact *= w / n
        acc += wn_over_fact * p.eval_float(x)
        sums.append(acc)
    return sums


@dataclass(frozen=True)
class ConvergenceProbe:
    """Partial sums of the density series at one (x, m), with their target."""

    family: str
    m0: float
    x: float
    m: float
    order: int
    partial_sums: tuple[float, ...]
    target: float
    abs_tol: float = 1e-8

    @property
    def residuals(self) -> tuple[float, ...]:
        return tuple(abs(s - self.target) for s in self.partial_sums)

    @property
    def residual(self) -> float:
        return abs(self.partial_sums[-1] - self.target)

    @property
    def converged(self) -> bool:
        return self.residual <= self.abs_tol

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "m0": self.m0,
            "m": self.m,
            "x": self.x,
            "N": self.order,
            "residual": self.residual,
            "converged": self.converged,
        }


def partial_sum_density(
    seq: PolySequence,
    forms: RebasedForms,
    x: float,
    m: float,
    order: int | None = None,
    abs_tol: float = 1e-8,
) -> ConvergenceProbe:
    """Probe the density series at (x, m) against the closed-form density."""
    if order is None:
        order = seq.order
    if order > seq.order:
        raise ValueError(f"sequence only reaches order {seq.order}")
    w = m - forms.m0
    sums = weighted_partial_sums(seq.polys[: order + 1], x, w)
    return ConvergenceProbe(
        family=forms.family,
        m0=forms.m0,
        x=x,
        m=m,
        order=order,
        partial_sums=tuple(sums),
        target=forms.density(x, m),
        abs_tol=abs_tol,
    )


@dataclass(frozen=True)
class ShefferProbe:
    """Exponential generating function probe for the scaled sequence t^n P_n."""

    family: str
    m0: float
    t: float
    z: float
    x: float
    order: int
    partial_sums: tuple[float, ...]
    target: float
    abs_tol: float = 1e-8

    @property
    def residual(self) -> float:
        return abs(self.partial_sums[-1] - self.target)

    @property
    def converged(self) -> bool:
        return self.residual <= self.abs_tol

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "m0": self.m0,
            "t": self.t,
            "z": self.z,
            "x": self.x,
            "N": self.order,
            "residual": self.residual,
            "converged": self.converged,
        }


def sheffer_check(
    seq: PolySequence,
    forms: RebasedForms,
    t: RationalLike,
    z: float,
    x: float,
    order: int | None = None,
    abs_tol: float = 1e-8,
) -> ShefferProbe:
    """Compare sum_n t^n P_n(x) z^n / n! with exp{a(z) x + b(z)}.

    a(z) = psi(t z + m0) and b(z) = -k(a(z)), so the target is exactly the
    closed-form density at mean t z + m0; the sum is the partial-sum engine
    with weight w = t*z.
    """
    t = rat(t)
    if t == 0:
        raise ValueError("Sheffer scaling t must be nonzero")
    if order is None:
        order = seq.order
    if order > seq.order:
        raise ValueError(f"sequence only reaches order {seq.order}")
    tf = float(t)
    w = tf * z
    sums = weighted_partial_sums(seq.polys[: order + 1], x, w)
    return ShefferProbe(
        family=forms.family,
        m0=forms.m0,
        t=tf,
        z=z,
        x=x,
        order=order,
        partial_sums=tuple(sums),
        target=forms.density(x, forms.m0 + w),
        abs_tol=abs_tol,
    )


@dataclass(frozen=True)
class BilinearProbe:
    family: str
    m0: float
    m: float
    m_prime: float
    order: int
    lhs: float
    rhs: float
    abs_tol: float = 1e-6

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def converged(self) -> bool:
        return self.residual <= self.abs_tol

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "m0": self.m0,
            "m": self.m,
            "m_prime": self.m_prime,
            "N": self.order,
            "residual": self.residual,
            "converged": self.converged,
        }


def bilinear_identity(
    forms: RebasedForms,
    g: GramMatrix,
    m: float,
    m_prime: float,
    order: int | None = None,
    abs_tol: float = 1e-6,
) -> BilinearProbe:
    """exp{k(psi(m) + psi(m')) - k(psi(m)) - k(psi(m'))} vs. the Gram series.

    The right side is 1 + sum_{n,q>=1} a_nq (m-m0)^n (m'-m0)^q truncated at
    the given order, with the exact normalized entries a_nq cast to float.
    """
    if order is None:
        order = g.order
    if order > g.order:
        raise ValueError(f"Gram matrix only reaches order {g.order}")
    th, tp = forms.psi(m), forms.psi(m_prime)
    lhs = math.exp(
        forms.cumulant(th + tp) - forms.cumulant(th) - forms.cumulant(tp)
    )
    u, v = m - forms.m0, m_prime - forms.m0
    upow = 1.0
    rhs = 1.0
    for n in range(1, order + 1):
        upow *= u
        vpow = 1.0
        for q in range(1, order + 1):
            vpow *= v
            anq = g.normalized(n, q)
            if anq != 0:
                rhs += float(anq) * upow * vpow
    return BilinearProbe(
        family=forms.family,
        m0=forms.m0,
        m=m,
        m_prime=m_prime,
        order=order,
        lhs=lhs,
        rhs=rhs,
        abs_tol=abs_tol,
    )


@dataclass(frozen=True)
class QuadratureResult:
    n: int
    q: int
    value: float
    error_estimate: float
    converged: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "value": self.value,
            "error_estimate": self.error_estimate,
            "converged": self.converged,
        }


def _integrate_halfline(
    f: Callable[[float], float],
    start: float,
    growth: float = 4.0,
    stop_below: float = 1e-13,
    cap: float = 1e20,
) -> tuple[float, float]:
    """Adaptive quadrature of f over [start, inf) by geometric panels.

    A single QUADPACK call on an interval spanning many decades can place
    all of its initial nodes past the region carrying the mass and converge
    to the wrong answer without complaint; geometric panels keep every call
    well conditioned.  Truncation is decided by panel *contributions*, not
    integrand values: a power-law tail keeps contributing long after the
    integrand itself looks negligible.  Two consecutive negligible panels
    end the sweep (past the last sign change these tails decrease
    monotonically).  Returns (value, error estimate incl. neglected tail).
    """
    total = 0.0
    err = 0.0
    left = start
    small = 0
    while left < cap and small < 2:
        right = left * growth
        v, e = _integrate.quad(f, left, right, epsabs=1e-14, epsrel=1e-12, limit=100)
        total += v
        err += e
        small = small + 1 if abs(v) < stop_below else 0
        left = right
    return total, err + stop_below


def quadrature_crosscheck(
    forms: RebasedForms,
    seq: PolySequence,
    n: int,
    q: int,
    rel_target: float = 1e-8,
    abs_target: float = 1e-7,
) -> QuadratureResult:
    """Numerically integrate P_n P_q against the base density on its support.

    The lower tail is handled by the substitution y = 1/x (the density's
    x -> 0+ behaviour is quadrature-hostile otherwise); both half-lines are
    swept by geometric panels until the remaining contributions are
    negligible.  Non-convergence is reported through the flag, never raised.
    """
    pn, pq = seq.polys[n], seq.polys[q]

    def integrand(x: float) -> float:
        return pn.eval_float(x) * pq.eval_float(x) * forms.base_density(x)

    lo, hi = forms.support
    if not (lo == 0.0 and hi == math.inf):
        raise ValueError("quadrature is implemented for supports (0, inf)")

    split = max(forms.m0, 1.0)

    def lower_sub(y: float) -> float:  # x = 1/y on (0, split]
        return integrand(1.0 / y) / (y * y)

    with warnings.catch_warnings():
        # QUADPACK roundoff chatter is not a verdict; the achieved error
        # bounds below are.
        warnings.simplefilter("ignore", _integrate.IntegrationWarning)
        v1, e1 = _integrate_halfline(lower_sub, 1.0 / split)
        v2, e2 = _integrate_halfline(integrand, split)
    value = v1 + v2
    err = e1 + e2
    converged = err <= max(abs_target, rel_target * abs(value))
    return QuadratureResult(
        n=n, q=q, value=value, error_estimate=err, converged=converged
    )
