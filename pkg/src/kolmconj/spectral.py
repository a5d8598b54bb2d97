"""Galerkin machinery on truncated Fourier windows.

The bracket operator f -> {psi, f} is assembled as a dense matrix on a
canonical mode window, the Misiolek quadratic form is built from it on an
enlarged window (so the form is exact on the span and negative eigenvalues
are rigorous witnesses rather than truncation artifacts), and numerical
minimizers are certified by rationalizing their coefficients and
re-evaluating the index with exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .trigpoly import (COS, SIN, CONSTANT_MODE, KolmogorovFlow, Mode, TrigPoly,
                       bracket, canonicalize, misiolek_index)

FULL = "full"
SUBSPACES = (COS, SIN, FULL)


class CertificationError(RuntimeError):
    """Raised when a numerical candidate cannot be certified exactly."""


def fold_index(j: int, k: int, N: int, parity: str = COS) -> Tuple[Optional[Mode], int]:
    """Map an arbitrary integer pair to its canonical in-window mode.

    Returns (mode, sign) with sign +1/-1 from the parity folding rules, or
    (None, 0) when the folded index falls outside the order-N window (or
    hits the excluded constant mode).
    """
    mode, sign = canonicalize(parity, j, k)
    if mode is None or mode == CONSTANT_MODE or mode.j > N or abs(mode.k) > N:
        return None, 0
    return mode, sign


class SpectralWindow:
    """Canonical mode window: 0 < j^2+k^2, |j| <= N, |k| <= N, constant excluded.

    Each parity subspace holds exactly 2N^2 + 2N modes, ordered
    lexicographically by (j, k, parity) -- deterministic across runs.
    """

    __slots__ = ("N", "subspace", "modes", "_index")

    def __init__(self, N: int, subspace: str = COS):
        if N < 1:
            raise ValueError("window order must be >= 1")
        if subspace not in SUBSPACES:
            raise ValueError(f"unknown subspace {subspace!r}")
        parities = (COS, SIN) if subspace == FULL else (subspace,)
        modes = []
        for parity in parities:
            for j in range(0, N + 1):
                ks = range(1, N + 1) if j == 0 else range(-N, N + 1)
                for k in ks:
                    modes.append(Mode(j, k, parity))
        modes.sort()
        self.N = N
        self.subspace = subspace
        self.modes = tuple(modes)
        self._index = {m: i for i, m in enumerate(self.modes)}

    def __len__(self) -> int:
        return len(self.modes)

    def index_of(self, mode: Mode) -> Optional[int]:
        return self._index.get(mode)

    def fold(self, j: int, k: int, parity: str) -> Tuple[Optional[int], int]:
        mode, sign = fold_index(j, k, self.N, parity)
        if mode is None:
            return None, 0
        idx = self._index.get(mode)
        if idx is None:
            return None, 0
        return idx, sign

    def __repr__(self) -> str:  # pragma: no cover
        return f"SpectralWindow(N={self.N}, subspace={self.subspace!r}, dim={len(self)})"


@dataclass
class CoeffVector:
    """Real coefficients aligned with a window's mode list."""

    window: SpectralWindow
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (len(self.window),):
            raise ValueError("coefficient length does not match window")

    def dominant_mode(self) -> Mode:
        return self.window.modes[int(np.argmax(np.abs(self.values)))]


def coefficient_vector(f: TrigPoly, window: SpectralWindow) -> CoeffVector:
    """Exact coefficients of f laid out on the window; f must fit inside it."""
    values = np.zeros(len(window))
    for mode, c in f.terms.items():
        idx = window.index_of(mode)
        if idx is None:
            raise ValueError(f"mode {mode!r} not contained in {window!r}")
        values[idx] = float(c)
    return CoeffVector(window, values)


def assemble_bracket_matrix(flow: KolmogorovFlow, win_in: SpectralWindow,
                            win_out: SpectralWindow) -> np.ndarray:
    """Matrix of f -> {psi, f} from win_in into win_out.

    Output coefficient at canonical mode (j, k):

        (1/4) [ (mk-nj)(A[j-m,k-n] - A[j+m,k+n])
              + (mk+nj)(A[j-m,k+n] - A[j+m,k-n]) ]

    where A is the even (cosine) or odd (sine) extension of the input
    coefficients to the full integer lattice.  The output window must be
    large enough that no bracket mode is lost, which makes the resulting
    quadratic form exact on the span of win_in.
    """
    if win_in.subspace != win_out.subspace:
        raise ValueError("input and output windows must share a subspace")
    m, n = flow.m, flow.n
    if win_out.N < win_in.N + max(m, n):
        raise ValueError(
            f"output window order {win_out.N} too small: need >= {win_in.N + max(m, n)}")
    mat = np.zeros((len(win_out), len(win_in)))
    for row, mode in enumerate(win_out.modes):
        j, k, parity = mode.j, mode.k, mode.parity
        for weight, jj, kk in (
            (m * k - n * j, j - m, k - n),
            (n * j - m * k, j + m, k + n),
            (m * k + n * j, j - m, k + n),
            (-(m * k + n * j), j + m, k - n),
        ):
            if weight == 0:
                continue
            col, sign = win_in.fold(jj, kk, parity)
            if sign:
                mat[row, col] += 0.25 * weight * sign
    return mat


def assemble_L_cos(flow: KolmogorovFlow, win_in: SpectralWindow,
                   win_out: SpectralWindow) -> np.ndarray:
    if win_in.subspace != COS:
        raise ValueError("expected cosine windows")
    return assemble_bracket_matrix(flow, win_in, win_out)


def assemble_L_sin(flow: KolmogorovFlow, win_in: SpectralWindow,
                   win_out: SpectralWindow) -> np.ndarray:
    if win_in.subspace != SIN:
        raise ValueError("expected sine windows")
    return assemble_bracket_matrix(flow, win_in, win_out)


@dataclass
class QuadForm:
    """Dense symmetric matrix B with v^T B v = MI({psi, f_v}) / (2 pi^2)."""

    window: SpectralWindow
    flow: KolmogorovFlow
    matrix: np.ndarray


def assemble_quadform(flow: KolmogorovFlow, window: SpectralWindow) -> QuadForm:
    ext = SpectralWindow(window.N + max(flow.m, flow.n), window.subspace)
    mat = assemble_bracket_matrix(flow, window, ext)
    weights = np.array([md.laplace_weight for md in ext.modes], dtype=float) - flow.lambda2
    B = mat.T @ (weights[:, None] * mat)
    return QuadForm(window, flow, 0.5 * (B + B.T))


@dataclass
class ReducedForm:
    """Sobolev-weighted reduction S = D^{-p/2} B D^{-p/2}, D = diag(j^2+k^2).

    The minimal eigenvalue of S has the same sign as the infimum of the
    Misiolek index over the (possibly constrained) window span; `modes`
    tracks which window modes remain after constraints.
    """

    quadform: QuadForm
    p: int
    modes: Tuple[Mode, ...]
    matrix: np.ndarray


def reduce_symmetric(q: QuadForm, p: int) -> ReducedForm:
    if p < 0:
        raise ValueError("Sobolev order must be >= 0")
    d = np.array([m.laplace_weight for m in q.window.modes], dtype=float)
    scale = d ** (-p / 2)
    S = q.matrix * np.outer(scale, scale)
    return ReducedForm(q, p, q.window.modes, 0.5 * (S + S.T))


def constrain(r: ReducedForm, zeroed: Iterable[Mode]) -> ReducedForm:
    """Force the listed Fourier coefficients to zero (drop rows/columns)."""
    zero_set = set(zeroed)
    unknown = zero_set.difference(r.modes)
    if unknown:
        raise ValueError(f"cannot constrain modes outside the window: {sorted(unknown)}")
    keep = [i for i, m in enumerate(r.modes) if m not in zero_set]
    if not keep:
        raise ValueError("constraining away every mode leaves nothing to minimize")
    sub = r.matrix[np.ix_(keep, keep)]
    return ReducedForm(r.quadform, r.p, tuple(r.modes[i] for i in keep), sub)


def minimizer_coefficients(r: ReducedForm, vector: np.ndarray) -> CoeffVector:
    """Map an eigenvector of the reduced form back to f-coefficients.

    Undoes the D^{-p/2} change of variables, reinstates constrained modes
    as zeros, and normalizes so the largest-magnitude coefficient is 1
    (for reproducible output).
    """
    window = r.quadform.window
    values = np.zeros(len(window))
    for u, mode in zip(np.asarray(vector, dtype=float), r.modes):
        values[window.index_of(mode)] = u * mode.laplace_weight ** (-r.p / 2)
    peak = np.max(np.abs(values))
    if peak == 0:
        raise ValueError("zero eigenvector")
    return CoeffVector(window, values / peak)


@dataclass
class CertifiedResult:
    """Exact Misiolek value of a rationalized candidate field."""

    mi_over_pi2: Fraction
    detected: bool
    field: TrigPoly
    max_denominator: int


def certify_candidate(v: CoeffVector, flow: KolmogorovFlow,
                      max_denominator: int = 10 ** 6) -> CertifiedResult:
    """Rationalize a float coefficient vector and evaluate the index exactly.

    Coefficients are scaled so the largest magnitude is 1, rounded to
    nearby rationals (continued fractions, denominator capped), and the
    Misiolek index of the bracket of the rebuilt field is computed with
    exact arithmetic.  mi_over_pi2 < 0 is a rigorous conjugate-point
    certificate; the scaling does not affect the sign (the index is
    homogeneous of degree 2).
    """
    peak = np.max(np.abs(v.values))
    if peak == 0:
        raise ValueError("cannot certify the zero vector")
    terms = {}
    for mode, val in zip(v.window.modes, v.values):
        c = Fraction(float(val / peak)).limit_denominator(max_denominator)
        if c:
            terms[mode] = c
    f = TrigPoly(terms)
    phi = bracket(flow.stream(), f)
    if phi.is_zero():
        raise CertificationError("rationalized candidate lies in the kernel of the "
                                 "bracket operator")
    q = misiolek_index(phi, flow)
    return CertifiedResult(q, q < 0, f, max_denominator)
