"""Beamsplitter unitaries, permanent-based bosonic scattering, and the
closed-form one- and two-photon output distributions.

Conventions fixed here and relied on everywhere else:

* the two-mode beamsplitter unitary is the symmetric form
  ``[[cos t, i sin t], [i sin t, cos t]]`` with transmittance T = cos^2 t;
* "transmitted" means a photon leaves through the output port with the same
  number as its input port, "reflected" means it crosses over;
* partial distinguishability is a convex mixture: weight ``eta`` of ideal
  identical bosons plus weight ``1 - eta`` of classical distinguishable
  particles.  This keeps every probability non-negative for any splitting
  ratio and gives the usual two-photon coincidence formula
  ``T^2 + R^2 - 2 eta T R``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import DEFAULT_PRUNE, FockState, PureState, fock_basis, pure_state


@dataclass(frozen=True)
class BeamsplitterSpec:
    """A lossless two-mode beamsplitter parametrized by a mixing angle in radians."""

    theta: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.theta):
            raise ValueError(f"theta must be finite, got {self.theta!r}")

    @property
    def transmittance(self) -> float:
        return math.cos(self.theta) ** 2

    @property
    def reflectance(self) -> float:
        return math.sin(self.theta) ** 2


BALANCED = BeamsplitterSpec(math.pi / 4)


@dataclass(frozen=True)
class DistinguishabilityParam:
    """Squared mode overlap of the two photons: 1 = identical, 0 = fully distinguishable."""

    eta: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.eta <= 1.0):
            raise ValueError(f"eta must lie in [0, 1], got {self.eta!r}")


@dataclass(frozen=True)
class SinglePhotonDistribution:
    p_transmitted: float
    p_reflected: float


@dataclass(frozen=True)
class PairDistribution:
    """Output statistics for one photon in each input port.

    ``p_coincidence`` is the total probability of one photon per output port.
    For partially distinguishable photons (eta < 1) the classical fraction of
    that coincidence splits into (both transmitted, both reflected) and is
    reported in ``resolved_coincidence``; the interfering bosonic fraction is
    a single unresolvable outcome and carries no such split.
    """

    p_bunch_port1: float
    p_bunch_port2: float
    p_coincidence: float
    resolved_coincidence: tuple[float, float] | None = None


def beamsplitter_unitary(bs: BeamsplitterSpec) -> np.ndarray:
    """2x2 mode unitary of the beamsplitter in the fixed symmetric convention."""
    c, s = math.cos(bs.theta), math.sin(bs.theta)
    return np.array([[c, 1j * s], [1j * s, c]], dtype=complex)


def permanent(matrix) -> complex:
    """Matrix permanent via Ryser's formula with Gray-code subset updates.

    Runs in O(2^n * n) for an n x n matrix; exact up to floating point.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"permanent requires a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if n == 0:
        raise ValueError("permanent requires at least a 1x1 matrix")

    row_sums = np.zeros(n, dtype=complex)
    total = 0j
    gray = 0
    for k in range(1, 1 << n):
        new_gray = k ^ (k >> 1)
        changed = new_gray ^ gray
        j = changed.bit_length() - 1
        if new_gray & changed:
            row_sums += m[:, j]
        else:
            row_sums -= m[:, j]
        term = complex(np.prod(row_sums))
        total += -term if new_gray.bit_count() & 1 else term
        gray = new_gray
    return total if n % 2 == 0 else -total


def scattering_amplitude(unitary, state_in: FockState, state_out: FockState) -> complex:
    """Transition amplitude <out| U |in> for non-interacting bosons.

    Equals the permanent of the unitary with column i repeated n_i times and
    row j repeated m_j times, divided by sqrt(prod n_i! * prod m_j!).
    """
    u = np.asarray(unitary, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"unitary must be square, got shape {u.shape}")
    modes = u.shape[0]
    if state_in.modes != modes or state_out.modes != modes:
        raise ValueError(
            f"mode count mismatch: unitary has {modes}, states have "
            f"{state_in.modes} and {state_out.modes}")
    if state_in.total != state_out.total:
        raise ValueError(
            f"photon number mismatch: {state_in.total} in vs {state_out.total} out")
    if state_in.total == 0:
        return 1 + 0j

    cols = np.repeat(np.arange(modes), state_in.occupations)
    rows = np.repeat(np.arange(modes), state_out.occupations)
    sub = u[np.ix_(rows, cols)]
    weight = 1.0
    for n in state_in.occupations:
        weight *= math.factorial(n)
    for n in state_out.occupations:
        weight *= math.factorial(n)
    return permanent(sub) / math.sqrt(weight)


def apply_interferometer(state: PureState, unitary, *,
                         prune: float = DEFAULT_PRUNE) -> PureState:
    """Linear extension of the scattering amplitudes to a full superposition."""
    u = np.asarray(unitary, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] != state.modes:
        raise ValueError(
            f"unitary shape {u.shape} does not match {state.modes} modes")
    out_terms: dict[FockState, complex] = {}
    for fock, amp in state.terms.items():
        for out in fock_basis(fock.total, state.modes):
            a = amp * scattering_amplitude(u, fock, out)
            if a != 0j:
                out_terms[out] = out_terms.get(out, 0j) + a
    return pure_state(out_terms, modes=state.modes, prune=prune)


def single_outcome_distribution(bs: BeamsplitterSpec) -> SinglePhotonDistribution:
    """One photon in, vacuum in the other port: transmit with T, reflect with R."""
    return SinglePhotonDistribution(bs.transmittance, bs.reflectance)


def pair_outcome_distribution(bs: BeamsplitterSpec,
                              d: DistinguishabilityParam) -> PairDistribution:
    """One photon in each input port, with tunable mutual distinguishability.

    Ideal bosons bunch: each both-photons-in-one-port outcome has probability
    2TR and the coincidence survives with (T - R)^2.  Distinguishable
    particles behave as independent coins: TR per bunch port, T^2 + R^2 for
    the coincidence.  The returned distribution is the eta-weighted mixture.
    """
    T, R = bs.transmittance, bs.reflectance
    eta = d.eta
    p_bunch = (1.0 + eta) * T * R
    p_coinc = eta * (T - R) ** 2 + (1.0 - eta) * (T * T + R * R)
    resolved = None
    if eta < 1.0:
        resolved = ((1.0 - eta) * T * T, (1.0 - eta) * R * R)
    return PairDistribution(p_bunch, p_bunch, p_coinc, resolved)
