"""Small exact-rational linear algebra and polynomial fitting helpers.

Polynomials are lists of Fraction coefficients in ascending degree order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple


def solve_linear(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> List[Fraction]:
    """Solve A x = b by Gauss-Jordan elimination over the rationals."""
    n = len(rhs)
    aug = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular linear system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col]
        aug[col] = [v / inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


def poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_shift(coeffs: Sequence[Fraction], h: Fraction) -> List[Fraction]:
    """Coefficients of p(x + h) given those of p(x)."""
    out = [Fraction(0)] * len(coeffs)
    basis = [Fraction(1)]  # (x + h)^i
    for c in coeffs:
        for i, b in enumerate(basis):
            out[i] += c * b
        basis = poly_mul(basis, [Fraction(h), Fraction(1)])
    return out


def fit_polynomial(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> List[Fraction]:
    """Interpolate the unique degree <= len(xs)-1 polynomial through the points."""
    n = len(xs)
    if len(ys) != n:
        raise ValueError(f"need {n} values for {n} sample points, got {len(ys)}")
    rows = [[Fraction(x) ** p for p in range(n)] for x in xs]
    return solve_linear(rows, ys)


def fit_rational(xs: Sequence[Fraction], ys: Sequence[Fraction], num_deg: int,
                 den_deg: int, den_const: Fraction) -> Tuple[List[Fraction], List[Fraction]]:
    """Fit y = N(x)/D(x) with deg N <= num_deg, deg D <= den_deg, D(0) fixed.

    Linear in the unknown coefficients:  N(x_i) - y_i * (D(x_i) - den_const)
    = y_i * den_const.  Requires exactly num_deg + den_deg + 1 samples.
    """
    unknowns = num_deg + 1 + den_deg
    if len(xs) != unknowns:
        raise ValueError(f"need exactly {unknowns} samples, got {len(xs)}")
    rows = []
    rhs = []
    for x, y in zip(xs, ys):
        x = Fraction(x)
        row = [x ** p for p in range(num_deg + 1)]
        row += [-y * x ** p for p in range(1, den_deg + 1)]
        rows.append(row)
        rhs.append(y * den_const)
    sol = solve_linear(rows, rhs)
    num = sol[: num_deg + 1]
    den = [Fraction(den_const)] + sol[num_deg + 1:]
    return num, den
