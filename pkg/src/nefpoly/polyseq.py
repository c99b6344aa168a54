"""Mean-derivative polynomial sequences, built two independent ways.

The sequence attached to a family anchored at m0 is P_n(x), the n-th
derivative in the mean of the density f(x, m) relative to the anchored base
measure, taken at m = m0.  Two constructions are implemented:

* a four-term recurrence driven by the variance coefficients,

      a0 P_{n+1} = (x - n a1 - m0) P_n - n(a2 (n-1) + 1) P_{n-1}
                   - a3 n(n-1)(n-2) P_{n-2},

  extended down to n = 0, 1 with P_{-1} = P_{-2} = 0, which reproduces
  P_0 = 1 and P_1 = (x - m0)/a0;

* the Faa di Bruno expansion of the n-th mean-derivative of
  exp{psi(m) x - k(psi(m))}: a sum over integer partitions of n of products
  of the linear polynomials g_j(x) = j! (psi_j x - (k o psi)_j), where
  psi_j and (k o psi)_j are exact Taylor coefficients from the series layer.

Agreement of the two, coefficient by coefficient in exact arithmetic, is one
of the package's core verification targets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .nef_model import VarianceSpec, kpsi_series, psi_series
from .ratpoly import Poly, RationalLike, X, rat


class DegenerateScalingError(ValueError):
    """Scaling a sequence by t = 0 collapses every polynomial past degree 0."""


@dataclass(frozen=True)
class PolySequence:
    """P_0..P_N for one variance spec, with the construction recorded."""

    spec: VarianceSpec
    polys: tuple[Poly, ...]
    provenance: str

    @property
    def m0(self) -> Fraction:
        return self.spec.m0

    @property
    def order(self) -> int:
        return len(self.polys) - 1

    def __len__(self) -> int:
        return len(self.polys)

    def __getitem__(self, n: int) -> Poly:
        return self.polys[n]


def recurrence_sequence(spec: VarianceSpec, order: int) -> PolySequence:
    """Generate P_0..P_order by the four-term recurrence."""
    if order < 0:
        raise ValueError("sequence order must be >= 0")
    a0, a1, a2, a3 = spec.a
    inv_a0 = 1 / a0
    polys = [Poly.one()]
    prev1 = Poly.zero()  # P_{n-1}
    prev2 = Poly.zero()  # P_{n-2}
    for n in range(order):
        shift = X - (n * a1 + spec.m0)
        nxt = shift * polys[n] - (n * (a2 * (n - 1) + 1)) * prev1
        if a3 != 0 and n >= 3:
            nxt = nxt - (a3 * n * (n - 1) * (n - 2)) * prev2
        prev2 = prev1
        prev1 = polys[n]
        polys.append(nxt.scale(inv_a0))
    return PolySequence(spec=spec, polys=tuple(polys), provenance="recurrence")


def _partitions(n: int, max_part: int | None = None) -> Iterator[dict[int, int]]:
    """Integer partitions of n as {part: multiplicity} dicts."""
    if n == 0:
        yield {}
        return
    if max_part is None:
        max_part = n
    for part in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - part, part):
            out = dict(rest)
            out[part] = out.get(part, 0) + 1
            yield out


def faa_di_bruno_sequence(spec: VarianceSpec, order: int) -> PolySequence:
    """Generate P_0..P_order by partition expansion of the mean derivatives.

    P_n = sum over partitions (1^{k_1} 2^{k_2} ... n^{k_n}) of n of

        n! / (k_1! ... k_n!) * prod_j (g_j(x)/j!)^{k_j},

    with g_j(x) the j-th mean-derivative at m0 of psi(m) x - k(psi(m)),
    a degree-1 polynomial obtained exactly from the series layer.
    """
    if order < 0:
        raise ValueError("sequence order must be >= 0")
    polys = [Poly.one()]
    if order >= 1:
        psi = psi_series(spec, order)
        kpsi = kpsi_series(spec, order)
        g = [Poly.zero()]  # g[j], 1-indexed
        for j in range(1, order + 1):
            fj = math.factorial(j)
            g.append(Poly((-fj * kpsi[j], fj * psi[j])))
        for n in range(1, order + 1):
            total = Poly.zero()
            n_fact = math.factorial(n)
            for part in _partitions(n):
                weight = Fraction(n_fact)
                term = Poly.one()
                for j, kj in part.items():
                    weight /= math.factorial(kj) * math.factorial(j) ** kj
                    term = term * g[j] ** kj
                total = total + term.scale(weight)
            polys.append(total)
    return PolySequence(spec=spec, polys=tuple(polys), provenance="faadibruno")


@dataclass(frozen=True)
class SequenceDiff:
    """Indices where two sequences disagree, with both polynomials."""

    mismatches: tuple[tuple[int, Poly, Poly], ...]

    @property
    def identical(self) -> bool:
        return not self.mismatches


def compare_sequences(a: PolySequence, b: PolySequence) -> SequenceDiff:
    """Coefficient-exact diff of two sequences anchored at the same mean.

    Sequences for different variance specs may be compared (they diff at
    every n >= 1 already through P_1); different anchors make the
    comparison meaningless and are rejected.
    """
    if a.m0 != b.m0:
        raise ValueError("sequences are anchored at different means")
    upto = min(a.order, b.order)
    mism = tuple(
        (n, a.polys[n], b.polys[n])
        for n in range(upto + 1)
        if a.polys[n] != b.polys[n]
    )
    return SequenceDiff(mismatches=mism)


def scale_sequence(seq: PolySequence, t: RationalLike) -> PolySequence:
    """Q_n = t**n P_n.  Degree and the orthogonality zero-pattern survive."""
    t = rat(t)
    if t == 0:
        raise DegenerateScalingError("scaling factor t must be nonzero")
    power = Fraction(1)
    polys = []
    for p in seq.polys:
        polys.append(p.scale(power))
        power *= t
    return PolySequence(
        spec=seq.spec, polys=tuple(polys), provenance=f"{seq.provenance}*t^n"
    )
