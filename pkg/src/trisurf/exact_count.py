r"""
Exact counts of rooted genus-g triangulations and derived estimators.

tau(n, g) counts rooted triangulations with 2n faces and genus g.  The
values satisfy the exact recurrence

    (n+1) tau(n,g) = 4n(3n-2)(3n-4) tau(n-2, g-1)
                     + 4(3n-1) tau(n-1, g)
                     + 4 * sum_{i+j=n-2} sum_{g1+g2=g}
                           (3i+2)(3j+2) tau(i,g1) tau(j,g2)
                     + 2 * [n == g == 1]

seeded with tau(0,0) = 1 and tau(n,g) = 0 for negative indices or
g > (n+1)/2.  All table entries are exact Python integers; ratio
estimators are computed as exact rationals and only converted to float
at the API boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


def genus_cap(n: int) -> int:
    """Largest admissible genus for 2n faces: floor((n+1)/2)."""
    return (n + 1) // 2


def round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


@dataclass(frozen=True)
class RatioEstimates:
    theta: float
    n: int
    g: int
    lambda_est: float
    psi_direct: float
    psi_formula: float
    f_est: float
    rel_gap: float


class CountTable:
    """Memoized table of tau(n, g) with the estimators built on it."""

    # H(x) truncation: stop when the next term falls below this fraction
    # of the partial sum; hard cap below.
    H_REL_TOL = 1e-15
    H_MAX_K = 200

    def __init__(self):
        self._memo: dict[tuple[int, int], int] = {(0, 0): 1}
        self.max_n = 0

    # -- exact values --------------------------------------------------------

    def tau(self, n: int, g: int) -> int:
        if n < 0 or g < 0 or 2 * g > n + 1:
            return 0
        if n > self.max_n:
            self.fill(n)
        return self._memo.get((n, g), 0)

    def fill(self, max_n: int) -> None:
        """Extend the table to all n <= max_n (all admissible g)."""
        for n in range(self.max_n + 1, max_n + 1):
            for g in range(genus_cap(n) + 1):
                self._memo[(n, g)] = self._compute(n, g)
        self.max_n = max(self.max_n, max_n)

    def _compute(self, n: int, g: int) -> int:
        total = self.rhs(n, g)
        val, rem = divmod(total, n + 1)
        if rem:
            raise ArithmeticError(f"recurrence not divisible at (n,g)=({n},{g})")
        return val

    def rhs(self, n: int, g: int) -> int:
        """Right-hand side of the recurrence, i.e. (n+1) tau(n,g)."""
        memo = self._memo
        total = 0
        if n >= 2 and g >= 1:
            total += 4 * n * (3 * n - 2) * (3 * n - 4) * memo.get((n - 2, g - 1), 0)
        if n >= 1:
            total += 4 * (3 * n - 1) * memo.get((n - 1, g), 0)
        if n >= 2:
            conv = 0
            for i in range(n - 1):
                j = n - 2 - i
                # tau(i, g1) vanishes unless g - (j+1)//2 <= g1 <= (i+1)//2
                lo = max(0, g - genus_cap(j))
                hi = min(g, genus_cap(i))
                if lo > hi:
                    continue
                inner = 0
                for g1 in range(lo, hi + 1):
                    a = memo.get((i, g1), 0)
                    if a:
                        b = memo.get((j, g - g1), 0)
                        if b:
                            inner += a * b
                if inner:
                    conv += (3 * i + 2) * (3 * j + 2) * inner
            total += 4 * conv
        if n == 1 and g == 1:
            total += 2
        return total

    # -- estimators -----------------------------------------------------------

    def lambda_est(self, n: int, g: int) -> float:
        """Finite-n size ratio tau(n-1,g)/tau(n,g)."""
        return float(self.lambda_fraction(n, g))

    def lambda_fraction(self, n: int, g: int) -> Fraction:
        denom = self.tau(n, g)
        if denom == 0:
            raise ValueError(f"tau({n},{g}) = 0; size ratio undefined")
        return Fraction(self.tau(n - 1, g), denom)

    def psi_direct(self, n: int, g: int) -> float:
        """Finite-n genus ratio n^2 tau(n,g-1)/tau(n,g)."""
        if g < 1:
            raise ValueError("psi_direct needs g >= 1")
        denom = self.tau(n, g)
        if denom == 0:
            raise ValueError(f"tau({n},{g}) = 0; genus ratio undefined")
        return float(Fraction(n * n * self.tau(n, g - 1), denom))

    def h_truncated(self, x: float | Fraction, K: int | None = None) -> float:
        return float(self._h_fraction(Fraction(x), K))

    def _h_fraction(self, x: Fraction, K: int | None) -> Fraction:
        """Partial sum of H(x) = sum_k x^k (3k+2) tau(k,0) through k = K.

        With K=None the sum stops once the next term is negligible
        (H_REL_TOL), capped at H_MAX_K; in that mode x must lie below the
        empirical convergence threshold tau(max_n-1,0)/tau(max_n,0).
        """
        if x < 0:
            raise ValueError("h_truncated needs x >= 0")
        adaptive = K is None
        if adaptive:
            if self.max_n < 2:
                self.fill(8)
            if x >= self.lambda_fraction(self.max_n, 0):
                raise ValueError(
                    f"x={float(x):g} is not below the planar convergence threshold")
            K = self.H_MAX_K
        total = Fraction(0)
        power = Fraction(1)
        for k in range(K + 1):
            term = power * (3 * k + 2) * self.tau(k, 0)
            total += term
            if adaptive and k > 0 and total > 0 and term < self.H_REL_TOL * total:
                break
            power *= x
        return total

    def psi_formula(self, lambda_hat: float | Fraction, K: int | None = None) -> float:
        """Genus ratio from the size ratio:
        (1 - 12 L - 24 L^2 H(L)) / (36 L^2) at L = lambda_hat.

        The L^2 denominator is forced by the exact recurrence: dividing it
        by tau(n,g) gives 1 = 36 L^2 [n^2 tau(n,g-1)/tau(n,g)] + 12 L
        + 24 L^2 H(L) + o(1), and the three independent estimates (this
        formula, the direct ratio, exp(-f')) agree numerically only with
        this exponent.
        """
        lam = Fraction(lambda_hat)
        if lam == 0:
            raise ZeroDivisionError("psi_formula undefined at lambda = 0")
        h = self._h_fraction(lam, K)
        value = (1 - 12 * lam - 24 * lam * lam * h) / (36 * lam * lam)
        return float(value)

    def f_est(self, n: int, g: int) -> float:
        """Exponential-rate estimate (log tau(n,g) - 2g log n)/n."""
        if n < 1:
            raise ValueError("f_est needs n >= 1")
        t = self.tau(n, g)
        if t == 0:
            raise ValueError(f"tau({n},{g}) = 0; f undefined")
        return (_log_bigint(t) - 2 * g * math.log(n)) / n

    def psi_consistency_report(self, theta: float, n_list: Sequence[int],
                               K: int | None = None) -> "PsiReport":
        """Per-n comparison of the two genus-ratio estimates at g = round(theta n).

        Also estimates exp(-f'(theta)) by a central difference of f_est
        in g at the largest n in the list.
        """
        rows = []
        for n in n_list:
            g = round_half_up(theta * n)
            lam = self.lambda_fraction(n, g)
            direct = self.psi_direct(n, g)
            formula = self.psi_formula(lam, K)
            gap = abs(direct - formula) / abs(direct) if direct else math.inf
            rows.append(RatioEstimates(theta, n, g, float(lam), direct,
                                       formula, self.f_est(n, g), gap))
        exp_neg_fprime = None
        if rows:
            n = max(n_list)
            g = round_half_up(theta * n)
            if self.tau(n, g + 1) > 0 and self.tau(n, g - 1) > 0:
                # f' in theta = g/n: step of 1 in g is a step of 1/n in theta
                fprime = (self.f_est(n, g + 1) - self.f_est(n, g - 1)) * n / 2.0
                exp_neg_fprime = math.exp(-fprime)
        return PsiReport(tuple(rows), exp_neg_fprime)


@dataclass(frozen=True)
class PsiReport:
    rows: tuple[RatioEstimates, ...]
    exp_neg_fprime: float | None


def _log_bigint(t: int) -> float:
    # math.log handles arbitrary ints exactly enough (frexp splitting),
    # relative error ~1e-16.
    return math.log(t)
