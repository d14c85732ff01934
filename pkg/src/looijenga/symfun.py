"""Partitions and exact principal specialisations of Schur functions.

The alphabet ``q^{rho+mu}`` is ``x_i = q^{mu_i - i + 1/2}`` for ``i >= 1``.  It has
finitely many "shifted" letters followed by a geometric tail, so elementary
symmetric functions have closed forms and every Schur value is computed from
a Jacobi-Trudi determinant in those closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from .qalg import ONE, ZERO, LaurentQ, RationalQ, q_factorial, q_int

__all__ = [
    "Partition",
    "partitions",
    "hook",
    "schur_principal",
    "power_sum_shifted",
    "elementary_shifted",
    "schur_shifted",
    "skew_schur_shifted",
    "skew_schur_shifted_lr",
    "skew_hook_principal",
    "schur_finite",
    "skew_schur_finite",
    "littlewood_richardson",
    "cauchy_pairing",
    "cauchy_pairing_product",
    "hook_character",
    "MAX_PARTITION_SIZE",
    "schur_jacobi_trudi",
    "series_exp",
    "series_mul",
    "series_inv",
    "EMPTY",
]

MAX_PARTITION_SIZE = 24


@dataclass(frozen=True, order=True)
class Partition:
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            parts = tuple(p for p in parts if p != 0)
            if any(p < 0 for p in parts):
                raise ValueError("partition parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        """0-based part access; 0 beyond the length."""
        return self.parts[i] if i < len(self.parts) else 0

    def __iter__(self):
        return iter(self.parts)

    @property
    def transpose(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    t = transpose

    def multiplicities(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    @property
    def z(self) -> int:
        from math import factorial

        out = 1
        for j, m in self.multiplicities().items():
            out *= factorial(m) * j ** m
        return out

    @property
    def kappa(self) -> int:
        return sum(p * (p - 2 * i - 1) for i, p in enumerate(self.parts))

    def cells(self) -> Iterator[Tuple[int, int]]:
        for i, p in enumerate(self.parts):
            for j in range(p):
                yield i, j

    def hook_length(self, i: int, j: int) -> int:
        tr = self.transpose
        return self.parts[i] - j + tr.parts[j] - i - 1

    def hooks(self) -> List[int]:
        tr = self.transpose
        return [self.parts[i] - j + tr.parts[j] - i - 1 for i, j in self.cells()]

    def is_hook(self) -> bool:
        return len(self.parts) <= 1 or all(p == 1 for p in self.parts[1:])

    def contains(self, other: "Partition") -> bool:
        return len(other) <= len(self) and all(self[i] >= other[i] for i in range(len(other)))

    def subpartitions(self) -> Iterator["Partition"]:
        """All partitions whose diagram sits inside this one."""

        def rec(i: int, bound: int, acc: List[int]):
            yield Partition(tuple(acc))
            if i >= len(self.parts):
                return
            for p in range(min(bound, self.parts[i]), 0, -1):
                acc.append(p)
                yield from rec(i + 1, p, acc)
                acc.pop()

        yield from rec(0, self[0], [])

    def to_json_obj(self) -> List[int]:
        return list(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"


EMPTY = Partition()


def hook(i: int, j: int) -> Partition:
    """The hook (i - j, 1^j) of size i."""
    if i == 0:
        return EMPTY
    if not 0 <= j < i:
        raise ValueError("hook needs 0 <= j < i")
    return Partition((i - j,) + (1,) * j)


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> Tuple[Partition, ...]:
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return (EMPTY,)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append(Partition((first,) + rest.parts))
    return tuple(out)


# ----------------------------------------------------------------------------
# specialisations


@lru_cache(maxsize=None)
def schur_principal(lam: Partition) -> RationalQ:
    """s_lambda(q^rho) = q^{kappa/4} / prod [h]_q."""
    den = ONE
    for h in lam.hooks():
        den = den * q_int(h)
    return RationalQ(LaurentQ.monomial(lam.kappa // 2), den)


def _shifted_letters(mu: Partition) -> List[int]:
    """Half-exponents of the finitely many shifted letters."""
    return [2 * (mu[i] - i - 1) + 1 for i in range(len(mu))]


@lru_cache(maxsize=None)
def power_sum_shifted(d: int, mu: Partition = Partition()) -> RationalQ:
    if d < 1:
        raise ValueError("d must be positive")
    ell = len(mu)
    finite = LaurentQ({})
    for e in _shifted_letters(mu):
        finite = finite + LaurentQ.monomial(d * e)
    # tail: q^{d(-ell-1/2)} / (1 - q^{-d})
    tail = RationalQ(LaurentQ.monomial(-d * (2 * ell + 1)), ONE - LaurentQ.monomial(-2 * d))
    return tail + finite


@lru_cache(maxsize=None)
def _tail_elementary(ell: int, k: int) -> RationalQ:
    # e_k(u, u r, u r^2, ...) with u = q^{-ell-1/2}, r = q^{-1}
    num = LaurentQ.monomial(-k * (2 * ell + 1) - k * (k - 1))
    den = ONE
    for j in range(1, k + 1):
        den = den * (ONE - LaurentQ.monomial(-2 * j))
    return RationalQ(num, den)


@lru_cache(maxsize=None)
def _finite_elementary(letters: Tuple[int, ...]) -> Tuple[LaurentQ, ...]:
    coeffs = [ONE]
    for e in letters:
        x = LaurentQ.monomial(e)
        new = coeffs + [ZERO]
        for k in range(1, len(new)):
            new[k] = new[k] + coeffs[k - 1] * x
        coeffs = new
    return tuple(coeffs)


@lru_cache(maxsize=None)
def elementary_shifted(k: int, mu: Partition = Partition()) -> RationalQ:
    """e_k(q^{rho+mu})."""
    if k < 0:
        return RationalQ(ZERO)
    fin = _finite_elementary(tuple(_shifted_letters(mu)))
    out = RationalQ(ZERO)
    for a in range(min(k, len(fin) - 1) + 1):
        out = out + _tail_elementary(len(mu), k - a) * fin[a]
    return out


def _det(matrix: List[List[RationalQ]]) -> RationalQ:
    """Division-free Laplace expansion with memoised column subsets."""
    n = len(matrix)
    if n == 0:
        return RationalQ(ONE)
    memo: Dict[Tuple[int, int], RationalQ] = {}

    def rec(row: int, used: int) -> RationalQ:
        if row == n:
            return RationalQ(ONE)
        key = (row, used)
        if key in memo:
            return memo[key]
        total = RationalQ(ZERO)
        sign = 1
        for c in range(n):
            if used & (1 << c):
                continue
            entry = matrix[row][c]
            if entry:
                sub = rec(row + 1, used | (1 << c))
                if sub:
                    term = entry * sub
                    total = total + term if sign > 0 else total - term
            sign = -sign
        memo[key] = total
        return total

    return rec(0, 0)


def _jacobi_trudi(lam: Partition, nu: Partition, ek: Callable[[int], RationalQ]) -> RationalQ:
    """s_{lam/nu} = det(e_{lam'_i - nu'_j - i + j})."""
    if not lam.contains(nu):
        return RationalQ(ZERO)
    lt, nt = lam.transpose, nu.transpose
    n = len(lt)
    zero = RationalQ(ZERO)
    mat = []
    for i in range(n):
        row = []
        for j in range(n):
            k = lt[i] - nt[j] - i + j
            row.append(ek(k) if k >= 0 else zero)
        mat.append(row)
    return _det(mat)


def _check_size(lam: Partition):
    if lam.size > MAX_PARTITION_SIZE:
        raise ValueError(f"partition size {lam.size} exceeds cap {MAX_PARTITION_SIZE}")


@lru_cache(maxsize=None)
def schur_shifted(lam: Partition, mu: Partition = Partition()) -> RationalQ:
    """s_lambda(q^{rho+mu})."""
    _check_size(lam)
    if not mu.parts:
        return schur_principal(lam)
    return _jacobi_trudi(lam, EMPTY, lambda k: elementary_shifted(k, mu))


@lru_cache(maxsize=None)
def skew_schur_shifted(lam: Partition, delta: Partition, mu: Partition = Partition()) -> RationalQ:
    """s_{lambda/delta}(q^{rho+mu})."""
    _check_size(lam)
    if not delta.parts:
        return schur_shifted(lam, mu)
    return _jacobi_trudi(lam, delta, lambda k: elementary_shifted(k, mu))


def skew_schur_shifted_lr(lam: Partition, delta: Partition, mu: Partition = Partition()) -> RationalQ:
    """Same value expanded as sum_nu LR^lam_{delta nu} s_nu(q^{rho+mu})."""
    out = RationalQ(ZERO)
    if not lam.contains(delta):
        return out
    for nu in partitions(lam.size - delta.size):
        c = littlewood_richardson(lam, delta, nu)
        if c:
            out = out + schur_shifted(nu, mu) * c
    return out


def skew_hook_principal(i: int, j: int, gamma: Partition) -> RationalQ:
    """s_{(i-j,1^j)/gamma}(q^rho) by the hook product formula.

    For gamma = (k-l, 1^l) the value is
    q^{(i-k-1)(i-2j-k+2l)/4} / ([i-k+l-j]! [j-l]!), and 0 for non-hooks.
    The formula misses the factor [i-j]/[i] when gamma is empty, so that
    case goes through the Schur value of the hook itself.
    """
    lam = hook(i, j)
    if not gamma.parts:
        return schur_principal(lam)
    if not gamma.is_hook() or not lam.contains(gamma):
        return RationalQ(ZERO)
    k, l = gamma.size, len(gamma) - 1
    if i - k + l - j < 0 or j - l < 0:
        return RationalQ(ZERO)
    num = LaurentQ.monomial((i - k - 1) * (i - 2 * j - k + 2 * l) // 2)
    return RationalQ(num, q_factorial(i - k + l - j) * q_factorial(j - l))


def schur_finite(lam: Partition, xs: Sequence[LaurentQ]) -> RationalQ:
    return skew_schur_finite(lam, EMPTY, xs)


def skew_schur_finite(lam: Partition, delta: Partition, xs: Sequence[LaurentQ]) -> RationalQ:
    """Skew Schur polynomial in finitely many Laurent-monomial letters."""
    es = [ONE]
    for x in xs:
        new = es + [ZERO]
        for k in range(1, len(new)):
            new[k] = new[k] + es[k - 1] * x
        es = new
    zero = RationalQ(ZERO)
    return _jacobi_trudi(lam, delta, lambda k: RationalQ(es[k]) if k < len(es) else zero)


# ----------------------------------------------------------------------------
# Littlewood-Richardson


@lru_cache(maxsize=None)
def littlewood_richardson(lam: Partition, mu: Partition, nu: Partition) -> int:
    """c^lam_{mu nu} by counting LR tableaux of shape lam/mu and content nu."""
    if lam.size != mu.size + nu.size or not lam.contains(mu) or not lam.contains(nu):
        return 0
    rows = [(mu[r], lam[r]) for r in range(len(lam))]
    content = list(nu.parts)
    m = len(content)
    filling: Dict[Tuple[int, int], int] = {}
    count = [0] * (m + 1)

    def cells_in_order():
        for r, (a, b) in enumerate(rows):
            for c in range(b - 1, a - 1, -1):
                yield r, c

    order = list(cells_in_order())

    def rec(idx: int) -> int:
        if idx == len(order):
            return 1
        r, c = order[idx]
        hi = m
        right = filling.get((r, c + 1))
        if right is not None:
            hi = min(hi, right)
        lo = 1
        above = filling.get((r - 1, c))
        if above is not None:
            lo = above + 1
        total = 0
        for v in range(lo, hi + 1):
            if count[v] >= content[v - 1]:
                continue
            if v > 1 and count[v] + 1 > count[v - 1]:
                continue
            count[v] += 1
            filling[(r, c)] = v
            total += rec(idx + 1)
            del filling[(r, c)]
            count[v] -= 1
        return total

    return rec(0)


# ----------------------------------------------------------------------------
# Cauchy pairings


def cauchy_pairing(alpha: Partition, beta: Partition, order: int) -> List[RationalQ]:
    """Coefficients of Q^0..Q^order in {alpha, beta}_Q = sum_lam s_lam(q^{rho+alpha}) s_{lam^t}(-Q q^{rho+beta})."""
    out = []
    for k in range(order + 1):
        c = RationalQ(ZERO)
        for lam in partitions(k):
            c = c + schur_shifted(lam, alpha) * schur_shifted(lam.transpose, beta)
        out.append(c if k % 2 == 0 else -c)
    return out


def cauchy_pairing_product(alpha: Partition, beta: Partition, order: int) -> List[RationalQ]:
    """Same series from prod_{i,j}(1 - Q x_i y_j) = exp(-sum_n Q^n p_n(x) p_n(y)/n)."""
    logs = [RationalQ(ZERO)] + [
        power_sum_shifted(n, alpha) * power_sum_shifted(n, beta) * Fraction(-1, n) for n in range(1, order + 1)
    ]
    return series_exp(logs, order)


def series_exp(logs: List[RationalQ], order: int) -> List[RationalQ]:
    """exp of a series with zero constant term, via f' = f * g'."""
    f = [RationalQ(ONE)] + [RationalQ(ZERO)] * order
    for n in range(1, order + 1):
        acc = RationalQ(ZERO)
        for k in range(1, n + 1):
            if k < len(logs) and logs[k]:
                acc = acc + logs[k] * f[n - k] * k
        f[n] = acc * Fraction(1, n)
    return f


def series_mul(a: List[RationalQ], b: List[RationalQ], order: int) -> List[RationalQ]:
    out = [RationalQ(ZERO) for _ in range(order + 1)]
    for i in range(min(order, len(a) - 1) + 1):
        if not a[i]:
            continue
        for j in range(min(order - i, len(b) - 1) + 1):
            if b[j]:
                out[i + j] = out[i + j] + a[i] * b[j]
    return out


def series_inv(a: List[RationalQ], order: int) -> List[RationalQ]:
    if not a or not a[0]:
        raise ZeroDivisionError("series has no constant term")
    inv0 = RationalQ(ONE) / a[0]
    out = [inv0]
    for n in range(1, order + 1):
        acc = RationalQ(ZERO)
        for k in range(1, min(n, len(a) - 1) + 1):
            if a[k]:
                acc = acc + a[k] * out[n - k]
        out.append(-acc * inv0)
    return out


def hook_character(nu: Partition, d: int) -> int:
    """Character of the d-cycle on the irreducible nu: (-1)^s on hooks (d-s, 1^s)."""
    if nu.size != d:
        raise ValueError("hook_character needs |nu| = d")
    if d == 0:
        return 1
    if not nu.is_hook():
        return 0
    return (-1) ** (len(nu) - 1)


def schur_jacobi_trudi(lam: Partition, mu: Partition = Partition()) -> RationalQ:
    """s_lambda(q^{rho+mu}) always through the determinant (used as an oracle)."""
    return _jacobi_trudi(lam, EMPTY, lambda k: elementary_shifted(k, mu))
