"""Symbolic per-level amplitudes after the full cycle sequence.

Each level's amplitude is a product of sin/cos factors of the per-cycle
rotation angles times a phase that is linear in the pulse widths and
free-evolution times.  Two bookkeeping modes exist:

* physical mode: spectator levels keep unit magnitude and every segment's
  phase is accumulated in one fixed lab frame, so the ledger is exactly
  unitary and its phases are directly comparable across cycles;
* paper mode: reproduces the published recursions verbatim, in which
  spectators pick up cosine factors and each cycle re-zeroes the energy
  origin of the driven pair.  Paper mode is generally not normalized and
  is kept for reproduction only.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch
from .spectrum import SystemKind, SystemSpec

HALF_TURN = np.pi / 2


class LedgerMode(Enum):
    PAPER = "paper"
    PHYSICAL = "physical"


@dataclass(frozen=True)
class PhaseLinearForm:
    """phase(tau, tau_free) = sum(ct*tau) + sum(cf*tau_free) - q*pi/2."""

    coeff_tau: tuple[float, ...]
    coeff_tau_free: tuple[float, ...]
    quarter_turns: int

    def evaluate(self, tau: Sequence[float], tau_free: Sequence[float]) -> float:
        if len(tau) != len(self.coeff_tau) or len(tau_free) != len(self.coeff_tau_free):
            raise DimensionMismatch("duration lists do not match phase coefficients")
        return (
            float(np.dot(self.coeff_tau, tau))
            + float(np.dot(self.coeff_tau_free, tau_free))
            - self.quarter_turns * HALF_TURN
        )


@dataclass(frozen=True)
class LevelAmplitude:
    """Magnitude factor list (("cos"|"sin", 1-based angle index)) plus phase."""

    factors: tuple[tuple[str, int], ...]
    phase: PhaseLinearForm

    def magnitude(self, theta: np.ndarray) -> np.ndarray:
        """Evaluate the factor product; ``theta`` may be batched (..., N-1)."""
        th = np.asarray(theta, dtype=float)
        out = np.ones(th.shape[:-1])
        for kind, idx in self.factors:
            col = th[..., idx - 1]
            out = out * (np.cos(col) if kind == "cos" else np.sin(col))
        return out


@dataclass(frozen=True)
class AmplitudeLedger:
    spec: SystemSpec
    mode: LedgerMode
    levels: tuple[LevelAmplitude, ...]
    notes: tuple[str, ...] = ()

    @property
    def n_angles(self) -> int:
        return self.spec.n_levels - 1

    def to_dict(self) -> dict:
        """JSON-ready dump with factor lists as strings like "cos(1)"."""
        return {
            "mode": self.mode.value,
            "levels": [
                {
                    "magnitude_factors": [f"{k}({i})" for k, i in lv.factors],
                    "coeff_tau": list(lv.phase.coeff_tau),
                    "coeff_tau_free": list(lv.phase.coeff_tau_free),
                    "quarter_turns": lv.phase.quarter_turns,
                }
                for lv in self.levels
            ],
            "notes": list(self.notes),
        }


class _Symbolic:
    """Mutable amplitude expression used while running the recursion."""

    __slots__ = ("factors", "ct", "cf", "q", "populated")

    def __init__(self, n_cycles: int, populated: bool) -> None:
        self.factors: list[tuple[str, int]] = []
        self.ct = np.zeros(n_cycles)
        self.cf = np.zeros(n_cycles)
        self.q = 0
        self.populated = populated

    def branch(self, n_cycles: int) -> "_Symbolic":
        child = _Symbolic(n_cycles, populated=True)
        child.factors = list(self.factors)
        child.ct = self.ct.copy()
        child.cf = self.cf.copy()
        child.q = self.q
        return child


PAPER_INDEX_NOTE = (
    "printed closed-form cosine product for the ground-coupled system skips "
    "index k+1; the recursion requires skipping k-1, which is used here"
)
PAPER_POWER_NOTE = (
    "printed relative-phase prefactor mixes level indices; the power (-i)^(m-1) "
    "implied by the closed-form amplitudes is used"
)


def forward_ledger(spec: SystemSpec, mode: LedgerMode) -> AmplitudeLedger:
    """Propagate the ground state symbolically through all N-1 cycles."""
    n = spec.n_levels
    n_cycles = n - 1
    energies = spec.energies
    levels = [_Symbolic(n_cycles, populated=(k == 0)) for k in range(n)]

    for m in range(1, n_cycles + 1):
        lo, hi = spec.coupled_levels(m)
        i = m - 1
        source = levels[lo]
        child = source.branch(n_cycles)
        child.factors.append(("sin", m))
        child.q += 1
        source.factors.append(("cos", m))

        if mode is LedgerMode.PHYSICAL:
            mean = 0.5 * (energies[lo] + energies[hi])
            for k, lv in enumerate(levels):
                if not lv.populated or k == hi:
                    continue
                lv.ct[i] -= mean if k == lo else energies[k]
            child.ct[i] -= mean
        else:
            # published recursion: spectators gain both cosine factors and
            # pulse-time phases; the driven pair's pulse phase is dropped
            # by the per-cycle re-zeroing of the energy origin
            for k, lv in enumerate(levels):
                if not lv.populated or k in (lo, hi):
                    continue
                lv.factors.append(("cos", m))
                lv.ct[i] -= energies[k]

        levels[hi] = child
        for k, lv in enumerate(levels):
            if lv.populated:
                lv.cf[i] -= energies[k]

    notes: tuple[str, ...] = ()
    if mode is LedgerMode.PAPER:
        notes = (
            (PAPER_INDEX_NOTE, PAPER_POWER_NOTE)
            if spec.kind is SystemKind.GAP_TO_GROUND
            else (PAPER_POWER_NOTE,)
        )
    return AmplitudeLedger(
        spec=spec,
        mode=mode,
        levels=tuple(
            LevelAmplitude(
                factors=tuple(lv.factors),
                phase=PhaseLinearForm(tuple(lv.ct), tuple(lv.cf), lv.q),
            )
            for lv in levels
        ),
        notes=notes,
    )


def evaluate_ledger(
    ledger: AmplitudeLedger,
    theta: Sequence[float],
    tau: Sequence[float],
    tau_free: Sequence[float],
) -> np.ndarray:
    """Numeric amplitudes at the given angles and durations.

    Physical-mode output is normalized by construction; paper-mode output
    is returned as-is and may not be.
    """
    th = np.asarray(theta, dtype=float)
    if th.size != ledger.n_angles:
        raise DimensionMismatch(f"expected {ledger.n_angles} angles, got {th.size}")
    return np.array(
        [
            lv.magnitude(th) * np.exp(1j * lv.phase.evaluate(tau, tau_free))
            for lv in ledger.levels
        ],
        dtype=complex,
    )


def paper_closed_form(
    spec: SystemSpec,
    theta: Sequence[float],
    tau: Sequence[float],
    tau_free: Sequence[float],
) -> np.ndarray:
    """Direct evaluation of the published closed-form target amplitudes.

    The ground-coupled system's cosine product skips the angle consumed as
    a sine (index k-1), resolving the printed index-set typo in favor of
    the recursion it was derived from.
    """
    n = spec.n_levels
    th = np.asarray(theta, dtype=float)
    t = np.asarray(tau, dtype=float)
    tp = np.asarray(tau_free, dtype=float)
    if th.size != n - 1 or t.size != n - 1 or tp.size != n - 1:
        raise DimensionMismatch(f"expected {n - 1} entries per list")
    e = np.asarray(spec.energies)
    cos, sin = np.cos(th), np.sin(th)
    amps = np.zeros(n, dtype=complex)

    if spec.kind is SystemKind.GAP_TO_GROUND:
        amps[0] = np.prod(cos) * np.exp(-1j * e[0] * np.sum(tp))
        for k in range(2, n + 1):  # 1-based target level
            mag = sin[k - 2] * np.prod(np.delete(cos, k - 2))
            phase = e[0] * np.sum(tp[: k - 2]) + e[k - 1] * (
                np.sum(t[k - 1 :]) + np.sum(tp[k - 2 :])
            )
            amps[k - 1] = -1j * mag * np.exp(-1j * phase)
    else:
        amps[0] = np.prod(cos) * np.exp(
            -1j * e[0] * (np.sum(t[1:]) + np.sum(tp))
        )
        for k in range(2, n):
            mag = np.prod(cos[k - 1 :]) * np.prod(sin[: k - 1])
            phase = e[k - 1] * (
                np.sum(t[k:]) + np.sum(tp[k:]) + tp[k - 1]
            ) + np.dot(e[1:k], tp[: k - 1])
            amps[k - 1] = (-1j) ** (k - 1) * mag * np.exp(-1j * phase)
        amps[n - 1] = (-1j) ** (n - 1) * np.prod(sin) * np.exp(
            -1j * np.dot(e[1:], tp)
        )
    return amps
