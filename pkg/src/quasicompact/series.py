"""Truncated formal power series on coefficient arrays.

A series is a 1-D float array ``a`` standing for ``sum_k a[k] z**k``; every
operation keeps the length of its input.
"""

from __future__ import annotations

import math

import numpy as np


def exp_shift(shift: float, length: int) -> np.ndarray:
    """Coefficients of ``exp(shift * z)``."""
    k = np.arange(length)
    return np.array([shift ** int(n) / math.factorial(int(n)) for n in k], dtype=float)


def mul(a, b) -> np.ndarray:
    n = len(a)
    return np.convolve(a, b)[:n]


def exp(a) -> np.ndarray:
    """``exp`` of a series via ``n b_n = sum_{k=1}^n k a_k b_{n-k}``."""
    a = np.asarray(a, dtype=float)
    n = len(a)
    b = np.zeros(n)
    b[0] = math.exp(a[0])
    for m in range(1, n):
        k = np.arange(1, m + 1)
        b[m] = (k * a[k]) @ b[m - k] / m
    return b


def log(a) -> np.ndarray:
    """``log`` of a series with positive constant term."""
    a = np.asarray(a, dtype=float)
    if a[0] <= 0:
        raise ValueError("log needs a positive constant term")
    n = len(a)
    b = np.zeros(n)
    b[0] = math.log(a[0])
    for m in range(1, n):
        k = np.arange(1, m)
        acc = m * a[m] - (k * b[k]) @ a[m - k] if m > 1 else m * a[m]
        b[m] = acc / (m * a[0])
    return b


def power(a, alpha: float) -> np.ndarray:
    return exp(alpha * log(a))


def grunwald_symbol(alpha: float, length: int) -> np.ndarray:
    """Series of ``((1 - exp(-z)) / z) ** alpha``."""
    k = np.arange(length)
    base = np.array([(-1.0) ** int(n) / math.factorial(int(n) + 1) for n in k])
    return power(base, alpha)
