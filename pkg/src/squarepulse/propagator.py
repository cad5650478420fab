"""Exact evolution under piecewise-constant Hamiltonians.

The pulse propagator is a closed-form two-level rotation on the coupled
pair combined with pure phases on spectator levels; `matrix_exp_oracle`
is an independent eigendecomposition-based check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    EigenFailure,
    NegativeDuration,
    NonPositiveField,
    NotNormalized,
)
from .operators import block_params
from .spectrum import SystemSpec

STATE_NORM_ATOL = 1e-12


def validate_state(amplitudes: np.ndarray, n_levels: int | None = None) -> np.ndarray:
    """Return ``amplitudes`` as a normalized complex vector or raise."""
    psi = np.asarray(amplitudes, dtype=complex).ravel()
    if n_levels is not None and psi.size != n_levels:
        raise DimensionMismatch(f"state has {psi.size} amplitudes, expected {n_levels}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > STATE_NORM_ATOL:
        raise NotNormalized(f"state norm {norm} deviates from 1 beyond {STATE_NORM_ATOL}")
    return psi


def ground_state(n_levels: int) -> np.ndarray:
    psi = np.zeros(n_levels, dtype=complex)
    psi[0] = 1.0
    return psi


@dataclass(frozen=True)
class PulseCycle:
    """One control cycle: pulse at amplitude ``d`` for ``tau``, then free flight."""

    m: int
    d: float
    tau: float
    tau_free: float

    def __post_init__(self) -> None:
        if self.d <= 0:
            raise NonPositiveField(f"cycle {self.m}: field amplitude {self.d} <= 0")
        if self.tau < 0 or self.tau_free < 0:
            raise NegativeDuration(f"cycle {self.m}: negative duration")


@dataclass(frozen=True)
class PulseSchedule:
    """Ordered cycles m = 1..N-1 for one system."""

    spec: SystemSpec
    cycles: tuple[PulseCycle, ...]

    def __post_init__(self) -> None:
        n = self.spec.n_levels
        if len(self.cycles) != n - 1:
            raise DimensionMismatch(
                f"schedule has {len(self.cycles)} cycles, expected {n - 1}"
            )
        for i, cyc in enumerate(self.cycles, start=1):
            if cyc.m != i:
                raise DimensionMismatch(f"cycle at position {i} has index {cyc.m}")


@dataclass(frozen=True)
class Trajectory:
    times: tuple[float, ...]
    states: tuple[np.ndarray, ...]


def matrix_exp_oracle(hamiltonian: np.ndarray, t: float) -> np.ndarray:
    """exp(-i H t) via Hermitian eigendecomposition (brute-force oracle)."""
    h = np.asarray(hamiltonian, dtype=complex)
    try:
        evals, evecs = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(str(exc)) from exc
    return (evecs * np.exp(-1j * evals * t)) @ evecs.conj().T


def free_propagator(spec: SystemSpec, t: float) -> np.ndarray:
    """Evolution under the drift alone: diagonal phases exp(-i E_n t)."""
    if t < 0:
        raise NegativeDuration(f"negative free-evolution time {t}")
    return np.diag(np.exp(-1j * np.asarray(spec.energies) * t))


def pulse_propagator(spec: SystemSpec, m: int, d: float, t: float) -> np.ndarray:
    """Closed-form propagator of drift + d * coupling(m) for time ``t``.

    The coupled pair undergoes an exact Rabi rotation carrying the pair's
    mean-energy phase; every spectator level n acquires exp(-i E_n t).
    """
    if t < 0:
        raise NegativeDuration(f"negative pulse duration {t}")
    lo, hi = spec.coupled_levels(m)
    p = block_params(spec, m, d)
    u = np.diag(np.exp(-1j * np.asarray(spec.energies) * t)).astype(complex)

    c, s = np.cos(p.rabi * t), np.sin(p.rabi * t)
    # 2x2 block in the (lo, hi) basis, higher level as +z
    half_gap = 0.5 * p.gap
    block = np.array(
        [
            [c + 1j * s * half_gap / p.rabi, -1j * s * d / p.rabi],
            [-1j * s * d / p.rabi, c - 1j * s * half_gap / p.rabi],
        ],
        dtype=complex,
    ) * np.exp(-1j * p.mean_energy * t)
    u[lo, lo] = block[0, 0]
    u[lo, hi] = block[0, 1]
    u[hi, lo] = block[1, 0]
    u[hi, hi] = block[1, 1]
    return u


def _state_within_cycle(
    spec: SystemSpec, cycle: PulseCycle, start: np.ndarray, offset: float
) -> np.ndarray:
    """State at time ``offset`` into a cycle that began in state ``start``."""
    if offset <= cycle.tau:
        return pulse_propagator(spec, cycle.m, cycle.d, offset) @ start
    after_pulse = pulse_propagator(spec, cycle.m, cycle.d, cycle.tau) @ start
    return free_propagator(spec, offset - cycle.tau) @ after_pulse


def simulate(
    schedule: PulseSchedule,
    initial: np.ndarray | None = None,
    samples_per_segment: int = 0,
) -> tuple[np.ndarray, Trajectory]:
    """Run the full schedule and return (final state, sampled trajectory).

    ``samples_per_segment`` intermediate states are recorded uniformly
    within each cycle, plus each cycle's endpoint and the initial state.
    """
    spec = schedule.spec
    psi = (
        ground_state(spec.n_levels)
        if initial is None
        else validate_state(initial, spec.n_levels)
    )
    times = [0.0]
    states = [psi.copy()]
    t0 = 0.0
    for cycle in schedule.cycles:
        duration = cycle.tau + cycle.tau_free
        for k in range(1, samples_per_segment + 1):
            offset = duration * k / (samples_per_segment + 1)
            times.append(t0 + offset)
            states.append(_state_within_cycle(spec, cycle, psi, offset))
        psi = free_propagator(spec, cycle.tau_free) @ (
            pulse_propagator(spec, cycle.m, cycle.d, cycle.tau) @ psi
        )
        t0 += duration
        times.append(t0)
        states.append(psi.copy())
    # guard strict monotonicity against zero-duration segments
    eps_times: list[float] = []
    keep: list[int] = []
    for i, t in enumerate(times):
        if not eps_times or t > eps_times[-1]:
            eps_times.append(t)
            keep.append(i)
        else:
            eps_times[-1] = t
            keep[-1] = i
    traj = Trajectory(tuple(eps_times), tuple(states[i] for i in keep))
    return psi, traj
