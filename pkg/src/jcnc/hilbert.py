"""Finite-dimensional composite Hilbert-space kernel.

Dense operators on tensor products of small mode spaces: truncated bosonic
operators, Kronecker composition, partial trace / partial transpose,
Hermitian spectra, negativity, and l1-coherence. Everything is a pure
function of immutable inputs; matrices stay small (total dimension <~ 64),
so plain dense numpy is used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# Validation tolerances for density operators.
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

# Eigenvalues of a partial transpose above this floor count as zero, so
# floating-point noise never registers as entanglement.
NEGATIVITY_EIG_FLOOR = -1e-12

# Hermiticity deviation allowed before an eigensolve is refused.
EIGH_HERMITICITY_TOL = 1e-10


class DimensionError(ValueError):
    """A mode dimension is too small or inconsistent."""


class LabelError(KeyError):
    """A subsystem label is unknown or duplicated."""


class ShapeError(ValueError):
    """A matrix or vector has the wrong shape or symmetry."""


class StateValidationError(ValueError):
    """A density operator or state vector violates its invariants."""


@dataclass(frozen=True)
class ModeLayout:
    """Ordered subsystems of a tensor-product space.

    Basis order is row-major over the listed order: the leftmost label
    varies slowest. Labels are unique and every dimension is >= 2.
    """

    subsystems: tuple[tuple[str, int], ...]

    def __post_init__(self):
        subs = tuple((str(lbl), int(d)) for lbl, d in self.subsystems)
        object.__setattr__(self, "subsystems", subs)
        labels = [lbl for lbl, _ in subs]
        if len(set(labels)) != len(labels):
            raise LabelError(f"duplicate subsystem labels in {labels}")
        for lbl, d in subs:
            if d < 2:
                raise DimensionError(f"subsystem {lbl!r} has dim {d} < 2")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lbl for lbl, _ in self.subsystems)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.subsystems)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LabelError(f"unknown subsystem label {label!r}") from None

    def __add__(self, other: "ModeLayout") -> "ModeLayout":
        return ModeLayout(self.subsystems + other.subsystems)


def single_mode(label: str, dim: int) -> ModeLayout:
    return ModeLayout(((label, dim),))


@dataclass(frozen=True, eq=False)
class StateVector:
    """Unit-norm complex amplitude vector over a ModeLayout."""

    layout: ModeLayout
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.layout.dim:
            raise ShapeError(
                f"amplitude length {amps.size} != layout dim {self.layout.dim}"
            )
        if abs(np.linalg.norm(amps) - 1.0) > 1e-12:
            raise StateValidationError(
                f"state norm {np.linalg.norm(amps)} deviates from 1 beyond 1e-12"
            )
        object.__setattr__(self, "amplitudes", amps)

    def density(self) -> "DensityOperator":
        return DensityOperator(self.layout, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, unit-trace, positive-semidefinite matrix over a ModeLayout."""

    layout: ModeLayout
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        d = self.layout.dim
        if m.shape != (d, d):
            raise ShapeError(f"matrix shape {m.shape} != ({d}, {d})")
        diag = density_diagnostics(m, PSD_TOL)
        if diag.hermiticity_deviation > HERMITICITY_TOL:
            raise StateValidationError(
                f"hermiticity deviation {diag.hermiticity_deviation:.3e} > {HERMITICITY_TOL}"
            )
        if diag.trace_deviation > TRACE_TOL:
            raise StateValidationError(
                f"trace deviation {diag.trace_deviation:.3e} > {TRACE_TOL}"
            )
        if diag.min_eigenvalue < -PSD_TOL:
            raise StateValidationError(
                f"most negative eigenvalue {diag.min_eigenvalue:.3e} < -{PSD_TOL}"
            )
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalues in ascending order."""

    eigenvalues: np.ndarray

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=float).reshape(-1)
        object.__setattr__(self, "eigenvalues", ev)


@dataclass(frozen=True)
class DensityDiagnostics:
    """Report of the three density-operator invariants against a tolerance."""

    hermiticity_deviation: float
    trace_deviation: float
    min_eigenvalue: float
    tol: float
    ok: bool


def annihilation(d: int) -> np.ndarray:
    """Truncated bosonic annihilation operator: (n-1, n) entry sqrt(n)."""
    if d < 2:
        raise DimensionError(f"annihilation needs dim >= 2, got {d}")
    return np.diag(np.sqrt(np.arange(1, d)), 1).astype(complex)


def number_operator(d: int) -> np.ndarray:
    a = annihilation(d)
    return a.conj().T @ a


def fock(n: int, d: int) -> np.ndarray:
    """Fock basis vector |n> in dimension d."""
    if not 0 <= n < d:
        raise DimensionError(f"Fock index {n} outside [0, {d})")
    v = np.zeros(d, dtype=complex)
    v[n] = 1.0
    return v


def tensor(factors: Sequence):
    """Kronecker product of matrices or vectors, in the given order.

    Accepts either raw ndarrays (all square matrices or all vectors) or
    layout-carrying DensityOperator / StateVector values, whose layouts are
    concatenated in order.
    """
    if len(factors) == 0:
        raise ValueError("tensor needs at least one factor")
    if all(isinstance(f, DensityOperator) for f in factors):
        layout = factors[0].layout
        for f in factors[1:]:
            layout = layout + f.layout
        mat = tensor([f.matrix for f in factors])
        return DensityOperator(layout, mat)
    if all(isinstance(f, StateVector) for f in factors):
        layout = factors[0].layout
        for f in factors[1:]:
            layout = layout + f.layout
        amps = tensor([f.amplitudes for f in factors])
        return StateVector(layout, amps)
    arrays = []
    for f in factors:
        if isinstance(f, (DensityOperator, StateVector)):
            raise TypeError("cannot mix layout-carrying values with raw arrays")
        arrays.append(np.asarray(f, dtype=complex))
    ndims = {a.ndim for a in arrays}
    if ndims == {2}:
        for a in arrays:
            if a.shape[0] != a.shape[1]:
                raise ShapeError(f"non-square matrix factor of shape {a.shape}")
    elif ndims != {1}:
        raise TypeError("tensor factors must be all matrices or all vectors")
    out = arrays[0]
    for a in arrays[1:]:
        out = np.kron(out, a)
    return out


def _as_tensor(matrix: np.ndarray, dims: tuple[int, ...]) -> np.ndarray:
    return matrix.reshape(dims + dims)


def partial_trace(rho: DensityOperator, keep: Iterable[str]) -> DensityOperator:
    """Reduced operator over the kept labels, in their original order."""
    keep = set(keep)
    if not keep:
        raise LabelError("keep set must be nonempty")
    for lbl in keep:
        if lbl not in rho.layout.labels:
            raise LabelError(f"unknown subsystem label {lbl!r}")
    n = len(rho.layout.dims)
    keep_idx = [i for i, lbl in enumerate(rho.layout.labels) if lbl in keep]
    t = _as_tensor(rho.matrix, rho.layout.dims)
    row = list(range(n))
    col = [i + n if i in keep_idx else i for i in range(n)]
    out_axes = [i for i in keep_idx] + [i + n for i in keep_idx]
    reduced = np.einsum(t, row + col, out_axes)
    d_keep = int(np.prod([rho.layout.dims[i] for i in keep_idx]))
    sub = ModeLayout(tuple(rho.layout.subsystems[i] for i in keep_idx))
    mat = reduced.reshape(d_keep, d_keep)
    # exact diagonal-block sum; symmetrize only to scrub representation noise
    mat = 0.5 * (mat + mat.conj().T)
    return DensityOperator(sub, mat)


def partial_transpose(rho: DensityOperator, subsystem: str) -> np.ndarray:
    """Transpose applied to the indices of one subsystem only."""
    i = rho.layout.index(subsystem)
    n = len(rho.layout.dims)
    t = _as_tensor(rho.matrix, rho.layout.dims)
    t = np.swapaxes(t, i, i + n)
    d = rho.layout.dim
    return t.reshape(d, d)


def hermitian_eigenvalues(matrix: np.ndarray) -> Spectrum:
    """Ascending real spectrum of a Hermitian matrix."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    dev = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if dev > EIGH_HERMITICITY_TOL:
        raise ShapeError(f"hermiticity deviation {dev:.3e} > {EIGH_HERMITICITY_TOL}")
    return Spectrum(np.linalg.eigvalsh(m))


def negativity(rho: DensityOperator, subsystem: str) -> float:
    """Summed magnitudes of negative partial-transpose eigenvalues."""
    spec = hermitian_eigenvalues(partial_transpose(rho, subsystem))
    ev = spec.eigenvalues
    return float(-np.sum(ev[ev < NEGATIVITY_EIG_FLOOR])) + 0.0


def l1_coherence(rho: DensityOperator) -> float:
    """Sum of absolute off-diagonal entries in the computational basis."""
    m = np.abs(rho.matrix)
    return float(np.sum(m) - np.sum(np.diag(m)))


def density_diagnostics(matrix: np.ndarray, tol: float) -> DensityDiagnostics:
    """Raw invariant check on an arbitrary square matrix."""
    m = np.asarray(matrix, dtype=complex)
    herm = float(np.max(np.abs(m - m.conj().T)))
    trace_dev = float(abs(np.trace(m) - 1.0))
    # eigenvalues of the Hermitian part; meaningful once herm is small
    min_eig = float(np.min(np.linalg.eigvalsh(0.5 * (m + m.conj().T))))
    ok = herm <= tol and trace_dev <= tol and min_eig >= -tol
    return DensityDiagnostics(herm, trace_dev, min_eig, tol, ok)


def validate_density(rho, tol: float = PSD_TOL) -> DensityDiagnostics:
    """Diagnostics for a DensityOperator or raw matrix; never raises."""
    m = rho.matrix if isinstance(rho, DensityOperator) else rho
    return density_diagnostics(m, tol)
