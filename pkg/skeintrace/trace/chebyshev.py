#!/usr/bin/env python3
"""
Chebyshev Polynomials F_k

F_0 = 2, F_1 = x and F_{k+1} = x F_k - F_{k-1}; F_k(x + x^-1) = x^k + x^-k.
"""

from functools import lru_cache
from typing import Callable, Tuple, TypeVar

T = TypeVar("T")


@lru_cache(maxsize=None)
def chebyshev_F(k: int) -> Tuple[int, ...]:
    """Integer coefficients of F_k, constant term first"""

    if k < 0:
        raise ValueError(f"F_k needs k >= 0, got {k}")
    previous, current = (2,), (0, 1)
    if k == 0:
        return previous
    for _ in range(k - 1):
        shifted = (0,) + current
        padded = previous + (0,) * (len(shifted) - len(previous))
        previous, current = current, tuple(a - b for a, b in zip(shifted, padded))
    return current


def evaluate_chebyshev(k: int, x: T, scalar: Callable[[int], T]) -> T:
    """F_k(x) by Horner's rule; `scalar` lifts integers into the ring of x"""

    coefficients = chebyshev_F(k)
    result = scalar(coefficients[-1])
    for c in reversed(coefficients[:-1]):
        result = result * x + scalar(c)
    return result


def chebyshev_text(k: int, variable: str = "x") -> str:
    parts = []
    for power, c in reversed(list(enumerate(chebyshev_F(k)))):
        if not c:
            continue
        monomial = "" if power == 0 else variable if power == 1 else f"{variable}^{power}"
        if not monomial:
            parts.append(str(c))
        elif c == 1:
            parts.append(monomial)
        elif c == -1:
            parts.append(f"-{monomial}")
        else:
            parts.append(f"{c}{monomial}")
    return " + ".join(parts).replace("+ -", "- ")
