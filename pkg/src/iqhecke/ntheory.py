"""Rational-integer helpers shared by the ring layer: Kronecker symbols and
factorization with a budget guard."""

from __future__ import annotations

from sympy import factorint as _sympy_factorint

__all__ = ["kronecker", "factorint", "FactorBudgetError", "DEFAULT_FACTOR_BUDGET"]

DEFAULT_FACTOR_BUDGET = 10**12


class FactorBudgetError(RuntimeError):
    """Raised when a factorization request exceeds the configured budget."""


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), defined for all integers n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    # (a/2) factor: 0 for even a, +1 if a = ±1 (mod 8), -1 if a = ±3 (mod 8)
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        t = 0
        while n % 2 == 0:
            n //= 2
            t += 1
        if t % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    # Jacobi symbol by quadratic reciprocity on the odd part.
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def factorint(n: int, budget: int | None = DEFAULT_FACTOR_BUDGET) -> dict[int, int]:
    """Factor |n| into primes, refusing inputs beyond the budget."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    if budget is not None and n > budget:
        raise FactorBudgetError(f"factoring budget exceeded: {n} > {budget}")
    return {int(p): int(e) for p, e in _sympy_factorint(n).items()}
