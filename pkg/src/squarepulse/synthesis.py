"""Invert a target state into a pulse schedule.

Magnitudes fix the rotation angles through the hyperspherical closed
forms, the field ratio fixes pulse widths, and the remaining relative
phases are matched by solving a linear congruence system in the
free-evolution times over a bounded set of 2*pi windings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .errors import (
    DimensionMismatch,
    FidelityBelowFloor,
    InfeasibleMagnitudes,
    NotNormalized,
    SingularPhaseSystem,
    WindingBoundExceeded,
)
from .ledger import AmplitudeLedger, LedgerMode, evaluate_ledger, forward_ledger
from .operators import block_params
from .propagator import PulseCycle, PulseSchedule, simulate, validate_state
from .spectrum import SystemKind, SystemSpec, coupled_gap

TWO_PI = 2.0 * np.pi
MAGNITUDE_NORM_ATOL = 1e-9
_RATIO_SLACK = 1e-6


@dataclass(frozen=True)
class SynthesisOptions:
    field_ratio: float = 100.0
    winding_bound: int = 8
    zero_threshold: float = 1e-10

    def __post_init__(self) -> None:
        if self.field_ratio <= 1:
            raise ValueError("field_ratio must exceed 1")
        if self.winding_bound < 0:
            raise ValueError("winding_bound must be >= 0")
        if not 0 <= self.zero_threshold < 1:
            raise ValueError("zero_threshold must be in [0, 1)")


@dataclass(frozen=True)
class SynthesisReport:
    schedule: PulseSchedule
    angles: tuple[float, ...]
    predicted: np.ndarray
    simulated: np.ndarray
    fidelity: float
    residual_phases: tuple[float, ...]


def _clip_ratio(ratio: float, what: str) -> float:
    if ratio > 1.0 + _RATIO_SLACK:
        raise InfeasibleMagnitudes(f"{what}: factor ratio {ratio} exceeds 1")
    return min(ratio, 1.0)


def solve_angles(
    kind: SystemKind,
    magnitudes: Sequence[float],
    zero_threshold: float = 1e-10,
) -> tuple[float, ...]:
    """Rotation angles in [0, pi/2] reproducing the target magnitudes.

    Works down the hyperspherical decomposition level by level; once the
    running prefix product vanishes the remaining magnitudes must vanish
    too and the remaining angles are set to zero.
    """
    mags = np.asarray(magnitudes, dtype=float)
    if np.any(mags < 0):
        raise InfeasibleMagnitudes("magnitudes must be nonnegative")
    if abs(np.sum(mags**2) - 1.0) > MAGNITUDE_NORM_ATOL:
        raise NotNormalized(f"squared magnitudes sum to {np.sum(mags ** 2)}")
    n = mags.size
    theta = np.zeros(n - 1)

    def check_residual(start: int) -> None:
        bad = [k + 1 for k in range(start, n) if mags[k] > zero_threshold]
        if bad:
            raise InfeasibleMagnitudes(
                f"levels {bad} carry mass behind a vanished prefix product"
            )

    prefix = 1.0
    if kind is SystemKind.GAP_TO_GROUND:
        # level m+1 magnitude = sin(theta_m) * prod_{i<m} cos(theta_i)
        for m in range(1, n):
            if prefix < zero_threshold:
                check_residual(m)
                break
            theta[m - 1] = np.arcsin(_clip_ratio(mags[m] / prefix, f"level {m + 1}"))
            prefix *= np.cos(theta[m - 1])
    else:
        # level k magnitude = cos(theta_k) * prod_{i<k} sin(theta_i)
        for k in range(1, n):
            if prefix < zero_threshold:
                check_residual(k - 1)
                break
            theta[k - 1] = np.arccos(_clip_ratio(mags[k - 1] / prefix, f"level {k}"))
            prefix *= np.sin(theta[k - 1])
    return tuple(theta)


def angles_to_widths(
    spec: SystemSpec, theta: Sequence[float], rho: float
) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Per-cycle field amplitudes d_m = rho * gap_m and widths theta_m / Omega_m."""
    d = []
    tau = []
    for m, th in enumerate(theta, start=1):
        dm = rho * coupled_gap(spec, m)
        d.append(dm)
        tau.append(th / block_params(spec, m, dm).rabi)
    return tuple(d), tuple(tau)


def _wrap_nonpositive(x: float) -> float:
    """Reduce an angle into (-2*pi, 0]."""
    r = -(-x % TWO_PI)
    return r if r != -TWO_PI else 0.0


def solve_free_times(
    spec: SystemSpec,
    ledger: AmplitudeLedger,
    theta: Sequence[float],
    tau: Sequence[float],
    d: Sequence[float],
    target_phases: Sequence[float | None],
    winding_bound: int = 8,
) -> tuple[float, ...]:
    """Nonnegative free-evolution times matching the target relative phases.

    ``target_phases[k-2]`` is the wanted phase of level k relative to level
    1 (``None`` for levels excluded by zero magnitude).  Each constraint is
    solved modulo 2*pi by scanning winding assignments up to the bound and
    keeping the feasible solution of least total duration (lexicographic
    winding order breaks ties).
    """
    n = spec.n_levels
    n_cycles = n - 1
    if len(target_phases) != n - 1:
        raise DimensionMismatch(f"expected {n - 1} relative phases")
    if ledger.mode is not LedgerMode.PHYSICAL:
        raise ValueError("free-time solving requires a physical-mode ledger")

    base = ledger.levels[0].phase
    base_const = float(np.dot(base.coeff_tau, tau)) - base.quarter_turns * np.pi / 2
    rows = []
    rhs0 = []
    for k, phi in zip(range(2, n + 1), target_phases):
        if phi is None:
            continue
        form = ledger.levels[k - 1].phase
        const = float(np.dot(form.coeff_tau, tau)) - form.quarter_turns * np.pi / 2
        rows.append(np.asarray(form.coeff_tau_free) - np.asarray(base.coeff_tau_free))
        rhs0.append(_wrap_nonpositive(float(phi) - (const - base_const)))
    n_c = len(rows)
    if n_c == 0:
        return (0.0,) * n_cycles

    delta = np.vstack(rows)
    psi = np.asarray(rhs0)
    scale = np.max(np.abs(delta))

    if n_c == n_cycles:
        if np.linalg.matrix_rank(delta, tol=1e-9 * scale) < n_cycles:
            raise SingularPhaseSystem("phase coefficient rows are rank deficient")
        inv = np.linalg.inv(delta)
        x0 = inv @ psi
        shift = -TWO_PI * inv  # per-unit-winding change of the solution
        grid = np.array(
            list(itertools.product(range(winding_bound + 1), repeat=n_c)), dtype=float
        )
        cand = x0[None, :] + grid @ shift.T
        feasible = np.all(cand >= -1e-12, axis=1)
        if not np.any(feasible):
            raise WindingBoundExceeded(
                f"no nonnegative solution within winding bound {winding_bound}"
            )
        sums = np.where(feasible, cand.sum(axis=1), np.inf)
        best = int(np.argmin(sums))  # first occurrence = lexicographic tie-break
        return tuple(np.clip(cand[best], 0.0, None))

    # under-determined: minimize total time subject to the congruences
    best_sol: np.ndarray | None = None
    best_sum = np.inf
    for winding in itertools.product(range(winding_bound + 1), repeat=n_c):
        rhs = psi - TWO_PI * np.asarray(winding, dtype=float)
        res = linprog(
            c=np.ones(n_cycles),
            A_eq=delta,
            b_eq=rhs,
            bounds=[(0.0, None)] * n_cycles,
            method="highs",
        )
        if res.status == 0 and res.fun < best_sum - 1e-12:
            best_sum = res.fun
            best_sol = res.x
    if best_sol is None:
        raise WindingBoundExceeded(
            f"no nonnegative solution within winding bound {winding_bound}"
        )
    return tuple(np.clip(best_sol, 0.0, None))


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """Global-phase-invariant overlap |<a|b>|^2."""
    return float(abs(np.vdot(a, b)) ** 2)


def synthesize(
    spec: SystemSpec,
    target: np.ndarray,
    options: SynthesisOptions | None = None,
) -> SynthesisReport:
    """Full pipeline: angles -> widths -> free times -> verified schedule."""
    opts = options or SynthesisOptions()
    psi = validate_state(target, spec.n_levels)
    mags = np.abs(psi)
    theta = solve_angles(spec.kind, mags, opts.zero_threshold)
    d, tau = angles_to_widths(spec, theta, opts.field_ratio)

    ledger = forward_ledger(spec, LedgerMode.PHYSICAL)
    ref_phase = float(np.angle(psi[0])) if mags[0] > opts.zero_threshold else 0.0
    target_phases: list[float | None] = [
        float(np.angle(psi[k])) - ref_phase if mags[k] > opts.zero_threshold else None
        for k in range(1, spec.n_levels)
    ]
    tau_free = solve_free_times(
        spec, ledger, theta, tau, d, target_phases, opts.winding_bound
    )

    schedule = PulseSchedule(
        spec=spec,
        cycles=tuple(
            PulseCycle(m=m, d=d[m - 1], tau=tau[m - 1], tau_free=tau_free[m - 1])
            for m in range(1, spec.n_levels)
        ),
    )
    predicted = evaluate_ledger(ledger, theta, tau, tau_free)
    simulated, _ = simulate(schedule)
    fid = fidelity(psi, simulated)

    residuals = []
    for k in range(1, spec.n_levels):
        if target_phases[k - 1] is None:
            residuals.append(0.0)
            continue
        got = np.angle(simulated[k]) - np.angle(simulated[0])
        want = np.angle(psi[k]) - np.angle(psi[0])
        residuals.append(float(np.angle(np.exp(1j * (got - want)))))

    floor = 1.0 - 10.0 / (2.0 * opts.field_ratio) ** 2 - 1e-6
    if fid < floor:
        raise FidelityBelowFloor(f"fidelity {fid} below floor {floor}")
    return SynthesisReport(
        schedule=schedule,
        angles=theta,
        predicted=predicted,
        simulated=simulated,
        fidelity=fid,
        residual_phases=tuple(residuals),
    )
