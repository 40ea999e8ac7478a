"""Beam-splitter nonclassicality machinery.

A balanced beam splitter mixes a single-mode state with a vacuum ancilla of
the same dimension; the negativity of the two-mode output quantifies the
input's nonclassicality (its entanglement potential). Reduced single-mode
outputs retain residual nonclassicality, which further beam-splitter layers
deplete; the cascade tracks every branch independently and sums per-layer
potentials into running totals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .hilbert import (
    DensityOperator,
    DimensionError,
    ModeLayout,
    annihilation,
    negativity,
    partial_trace,
)

MAX_CASCADE_LAYERS = 6

ANCILLA_SUFFIX = "0"


@lru_cache(maxsize=None)
def beam_splitter_unitary(d: int) -> np.ndarray:
    """exp(-i (pi/4) (a^dag b + a b^dag)) on mode (x) ancilla, both dim d.

    The generator commutes with total photon number, so vacuum-ancilla
    inputs never overflow the truncation. Sign convention:
    |1,0> -> (|1,0> - i|0,1>)/sqrt(2), vacuum fixed.
    """
    if d < 2:
        raise DimensionError(f"beam splitter needs dim >= 2, got {d}")
    a = annihilation(d)
    gen = np.kron(a.conj().T, a) + np.kron(a, a.conj().T)
    w, v = np.linalg.eigh(gen)
    u = (v * np.exp(-1j * (np.pi / 4) * w)) @ v.conj().T
    u.setflags(write=False)
    return u


def qubit_beam_splitter() -> np.ndarray:
    """4x4 beam-splitter analogue for a two-level mode.

    Acts as the bosonic d=2 beam splitter on span{|00>, |01>, |10>} and as
    identity on |1,1>; the ancilla is always vacuum, so the |1,1> extension
    is unobservable.
    """
    s = 1.0 / math.sqrt(2.0)
    u = np.eye(4, dtype=complex)
    u[1, 1] = u[2, 2] = s
    u[1, 2] = u[2, 1] = -1j * s
    return u


def _ancilla_label(label: str) -> str:
    return label + ANCILLA_SUFFIX


def bs_output(rho_mode: DensityOperator) -> DensityOperator:
    """Mix a single-mode state with a same-dimension vacuum ancilla."""
    if len(rho_mode.layout.subsystems) != 1:
        raise DimensionError("bs_output expects a single-mode state")
    label, d = rho_mode.layout.subsystems[0]
    u = qubit_beam_splitter() if d == 2 else beam_splitter_unitary(d)
    vac = np.zeros((d, d), dtype=complex)
    vac[0, 0] = 1.0
    out = u @ np.kron(rho_mode.matrix, vac) @ u.conj().T
    out = 0.5 * (out + out.conj().T)
    layout = ModeLayout(((label, d), (_ancilla_label(label), d)))
    return DensityOperator(layout, out)


def entanglement_potential(rho_mode: DensityOperator) -> float:
    """Negativity across the beam-splitter output bipartition."""
    out = bs_output(rho_mode)
    return negativity(out, out.layout.labels[1])


@dataclass
class BranchNode:
    """One state in the cascade tree with its entanglement potential."""

    depth: int
    state: DensityOperator
    potential: float
    children: list["BranchNode"] = field(default_factory=list)


@dataclass(frozen=True)
class CascadeReport:
    """Per-layer branch potentials for one subsystem's cascade.

    Layer n holds 2^(n-1) branch potentials; the children of branch i in
    layer n sit at positions 2i and 2i+1 of layer n+1.
    """

    subsystem: str
    layers: tuple[tuple[float, ...], ...]
    layer_sums: tuple[float, ...]
    depletion_ratios: tuple[float, ...]

    def __post_init__(self):
        for n, layer in enumerate(self.layers):
            if len(layer) != 2**n:
                raise ValueError(f"layer {n + 1} has {len(layer)} entries, expected {2**n}")


@dataclass(frozen=True)
class TotalsRecord:
    """Correlation negativity plus running per-layer totals."""

    N_c: float
    per_layer: tuple[float, ...]
    extrapolated: float


def cascade(rho_mode: DensityOperator, layers: int) -> CascadeReport:
    """Recursive beam-splitter cascade on a single-mode state.

    Each node's two reduced beam-splitter outputs become its children;
    branches are computed independently, never assumed symmetric.
    """
    if layers < 1:
        raise ValueError(f"need at least one layer, got {layers}")
    if layers > MAX_CASCADE_LAYERS:
        raise ValueError(
            f"{layers} layers exceeds the {MAX_CASCADE_LAYERS}-layer guard "
            f"(2^layers eigenproblems of size dim^2)"
        )
    label = rho_mode.layout.subsystems[0][0]
    nodes = [BranchNode(1, rho_mode, entanglement_potential(rho_mode))]
    all_layers = []
    for depth in range(1, layers + 1):
        all_layers.append(tuple(node.potential for node in nodes))
        if depth == layers:
            break
        next_nodes = []
        for node in nodes:
            out = bs_output(node.state)
            mode_label, anc_label = out.layout.labels
            for kept in (mode_label, anc_label):
                reduced = partial_trace(out, {kept})
                child = BranchNode(depth + 1, reduced, entanglement_potential(reduced))
                node.children.append(child)
                next_nodes.append(child)
        nodes = next_nodes
    sums = tuple(float(sum(layer)) for layer in all_layers)
    ratios = tuple(
        sums[i] / sums[i - 1] for i in range(1, len(sums)) if sums[i - 1] > 0.0
    )
    return CascadeReport(label, tuple(all_layers), sums, ratios)


def total_nonclassicality(
    N_c: float, field_report: CascadeReport, atom_report: CascadeReport, layer: int
) -> float:
    """Correlation negativity plus every branch potential through `layer`."""
    if layer < 1:
        raise ValueError(f"layer must be >= 1, got {layer}")
    for report in (field_report, atom_report):
        if len(report.layer_sums) < layer:
            raise ValueError(
                f"cascade for {report.subsystem!r} has {len(report.layer_sums)} "
                f"layers, need {layer}"
            )
    return N_c + sum(
        field_report.layer_sums[n] + atom_report.layer_sums[n] for n in range(layer)
    )


def extrapolate_total(
    N_c: float, N_f: float, N_a: float, ratio: float = 2.0 / 5.0
) -> float:
    """Geometric-series limit of the cascade totals.

    The default ratio 2/5 is two branches times the observed ~1/5 per-layer
    depletion; it is a named default, not a constant.
    """
    if not 0.0 <= ratio < 1.0:
        raise ValueError(f"ratio must be in [0, 1), got {ratio}")
    return N_c + (N_f + N_a) / (1.0 - ratio)


def depletion_ratios(report: CascadeReport, floor: float = 1e-3) -> list[float]:
    """Per-branch child/parent potential ratios where the parent exceeds floor."""
    if len(report.layers) < 2:
        raise ValueError("depletion ratios need at least two layers")
    ratios = []
    for n in range(len(report.layers) - 1):
        parents = report.layers[n]
        children = report.layers[n + 1]
        for i, parent in enumerate(parents):
            if parent > floor:
                ratios.append(children[2 * i] / parent)
                ratios.append(children[2 * i + 1] / parent)
    return ratios
