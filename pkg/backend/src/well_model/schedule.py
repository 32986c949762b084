"""Gate schedules in the well and the coefficient dynamics they generate."""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from circuits import equal_up_to_global_phase, oracle_gate, oracle_generator, propagator, rotation_z
from circuits.gates import H, I2, X, Z
from models import (
    CoefficientScheme,
    GateSchedule,
    GateSegment,
    InvalidInputError,
    OracleId,
    SegmentKind,
    WellWaveFunction,
)
from .basis import eigenenergy, omega

logger = logging.getLogger(__name__)

# δV switched on for π/4 gives R_x(π/2); for π/2 it gives X up to phase.
XPERT_HALF_TURN = math.pi / 4.0
XPERT_NOT = math.pi / 2.0

QUBITS = ("data", "aux", "both")


def free_wait(angle: float, mass: float) -> float:
    """
    Shortest positive time after which the free evolution of each qubit equals R_z(angle)
    up to a global phase, i.e. ωt ≡ angle/2 (mod π).
    """
    w = omega(mass)
    phase = (math.copysign(1.0, w) * angle / 2.0) % math.pi
    if phase == 0.0:
        phase = math.pi
    return phase / abs(w)


def segment_generator(segment: GateSegment, mass: float) -> np.ndarray:
    """4×4 Hamiltonian of a segment in |data, aux> order."""
    if segment.kind is SegmentKind.FREE:
        return omega(mass) * (np.kron(Z, I2) + np.kron(I2, Z))
    if segment.kind is SegmentKind.XPERT_DATA:
        return np.kron(X, I2)
    if segment.kind is SegmentKind.XPERT_AUX:
        return np.kron(I2, X)
    return oracle_generator(segment.oracle, segment.duration).matrix


def _free_phases(mass: float, dt: float) -> np.ndarray:
    single = np.exp(np.array([-1j, 1j]) * omega(mass) * dt)
    return np.kron(single, single)


def evolve_coeffs(w: WellWaveFunction, segment: GateSegment, dt: float,
                  scheme: CoefficientScheme = CoefficientScheme.EXACT) -> WellWaveFunction:
    """
    Advance the coefficients one step of length dt under the segment Hamiltonian.

    EXACT uses phase factors for free segments and the matrix exponential otherwise;
    RK4 and EULER step i dc/dt = G c. The Euler oracle step reads
    a' = a + i(a - b)dt, b' = b - i(a - b)dt.
    """
    if not dt > 0:
        raise InvalidInputError(f"Step size must be positive, got {dt}")
    c = w.coeffs
    if scheme is CoefficientScheme.EXACT:
        if segment.kind is SegmentKind.FREE:
            return w.with_coeffs(_free_phases(w.mass, dt) * c)
        return w.with_coeffs(propagator(segment_generator(segment, w.mass), dt) @ c)

    g = segment_generator(segment, w.mass)

    def rhs(v):
        return -1j * (g @ v)

    if scheme is CoefficientScheme.EULER:
        return w.with_coeffs(c + dt * rhs(c))
    k1 = rhs(c)
    k2 = rhs(c + 0.5 * dt * k1)
    k3 = rhs(c + 0.5 * dt * k2)
    k4 = rhs(c + dt * k3)
    return w.with_coeffs(c + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0)


def segment_steps(duration: float, dt: float) -> int:
    if not dt > 0:
        raise InvalidInputError(f"Step size must be positive, got {dt}")
    return max(1, int(math.ceil(duration / dt - 1e-12)))


def evolve_segment(w: WellWaveFunction, segment: GateSegment, dt: float,
                   scheme: CoefficientScheme = CoefficientScheme.EXACT) -> List[WellWaveFunction]:
    """
    States at every sub-step of a segment, the input state included.

    The segment is split into equal steps so it ends exactly on its boundary. Euler
    results are renormalised once at the boundary.
    """
    steps = segment_steps(segment.duration, dt)
    h = segment.duration / steps
    states = [w]
    for _ in range(steps):
        states.append(evolve_coeffs(states[-1], segment, h, scheme))
    if scheme is CoefficientScheme.EULER:
        drift = states[-1].norm_defect
        if drift > 1e-3:
            logger.warning(f"⚠️  Euler norm drift {drift:.3e} over {segment.describe()}")
        states[-1] = states[-1].normalized()
    return states


def evolve_schedule(w: WellWaveFunction, schedule: GateSchedule, dt: float,
                    scheme: CoefficientScheme = CoefficientScheme.EXACT) -> WellWaveFunction:
    for segment in schedule:
        w = evolve_segment(w, segment, dt, scheme)[-1]
    return w


# Schedules

def _qubits(qubits: str) -> str:
    if qubits not in QUBITS:
        raise InvalidInputError(f"qubits must be one of {QUBITS}, got {qubits!r}")
    return qubits


def hadamard_schedule(qubits: str, mass: float) -> GateSchedule:
    """
    H = e^{iπ/2} R_z(π/2) R_x(π/2) R_z(π/2) as free wait, δV perturbation, free wait.

    Free evolution acts on both qubits, so an untouched qubit picks up R_z(π) overall.
    """
    qubits = _qubits(qubits)
    wait = free_wait(math.pi / 2.0, mass)
    segments = [GateSegment(SegmentKind.FREE, wait, label="R_z(π/2)")]
    if qubits in ("data", "both"):
        segments.append(GateSegment(SegmentKind.XPERT_DATA, XPERT_HALF_TURN, label="R_x(π/2) data"))
    if qubits in ("aux", "both"):
        segments.append(GateSegment(SegmentKind.XPERT_AUX, XPERT_HALF_TURN, label="R_x(π/2) aux"))
    segments.append(GateSegment(SegmentKind.FREE, wait, label="R_z(π/2)"))
    return GateSchedule(tuple(segments), f"H[{qubits}]")


def oracle_schedule(f: OracleId, duration: float = math.pi / 2.0) -> GateSchedule:
    """
    f0 idles; f2 switches on U(x, y); f1 is f2 between two NOTs on the data qubit;
    f3 is a NOT on the auxiliary qubit.
    """
    f = OracleId.parse(f)
    if f is OracleId.F0:
        segments = ()
    elif f is OracleId.F2:
        segments = (GateSegment(SegmentKind.ORACLE, duration, OracleId.F2, "U(x,y)"),)
    elif f is OracleId.F1:
        segments = (
            GateSegment(SegmentKind.XPERT_DATA, XPERT_NOT, label="NOT data"),
            GateSegment(SegmentKind.ORACLE, duration, OracleId.F2, "U(x,y)"),
            GateSegment(SegmentKind.XPERT_DATA, XPERT_NOT, label="NOT data"),
        )
    else:
        segments = (GateSegment(SegmentKind.XPERT_AUX, XPERT_NOT, label="NOT aux"),)
    return GateSchedule(segments, f"U_{f.value}")


def oracle_matched_mass(duration: float = math.pi / 2.0) -> float:
    """
    Mass whose level spacing E_2 - E_1 = 3π²/2m equals the oracle's phase rate π/duration.

    The oracle rotates the ψ_1/ψ_2 relative phase at π/duration while ∇S/m moves the
    configuration at the kinetic rate, so |ψ|² is carried along the trajectories during
    U(x, y) only at this mass (3π²/4 for the default duration).
    """
    if duration <= 0:
        raise InvalidInputError(f"Oracle duration must be positive, got {duration}")
    return (eigenenergy(2, 1.0) - eigenenergy(1, 1.0)) * duration / math.pi


def deutsch_schedule(f: OracleId, mass: float, oracle_duration: float = math.pi / 2.0) -> GateSchedule:
    """H⊗H, U_f, H⊗I as one schedule."""
    return (hadamard_schedule("both", mass) + oracle_schedule(f, oracle_duration)
            + hadamard_schedule("data", mass))


def schedule_unitary(schedule: GateSchedule, mass: float) -> np.ndarray:
    """Composition of the exact segment exponentials (identity for an empty schedule)."""
    unitary = np.eye(4, dtype=np.complex128)
    for segment in schedule:
        unitary = propagator(segment_generator(segment, mass), segment.duration) @ unitary
    return unitary


def intended_hadamard(qubits: str) -> np.ndarray:
    """The two-qubit gate a Hadamard schedule should realise up to a global phase."""
    qubits = _qubits(qubits)
    idle = rotation_z(math.pi).matrix
    data = H if qubits in ("data", "both") else idle
    aux = H if qubits in ("aux", "both") else idle
    return np.kron(data, aux)


def check_schedule(schedule: GateSchedule, intended: np.ndarray, mass: float,
                   atol: float = 1e-6) -> bool:
    matches = equal_up_to_global_phase(schedule_unitary(schedule, mass), intended, atol)
    if not matches:
        logger.warning(f"⚠️  Schedule {schedule.name} does not realise the intended gate")
    return matches


def check_oracle_schedule(f: OracleId, atol: float = 1e-6) -> bool:
    return check_schedule(oracle_schedule(f), oracle_gate(OracleId.parse(f)).matrix, 1.0, atol)


@dataclass(frozen=True, eq=False)
class CoefficientTimeline:
    """
    Coefficient history of one run on the step grid of its schedule.

    Built once and shared read-only by every trajectory of an ensemble. ``segment_ids[k]``
    is the segment driving the step from ``times[k]`` to ``times[k+1]``.
    """

    schedule: GateSchedule
    mass: float
    times: np.ndarray
    coeffs: np.ndarray
    segment_ids: np.ndarray
    scheme: CoefficientScheme

    @classmethod
    def build(cls, w0: WellWaveFunction, schedule: GateSchedule, dt: float,
              scheme: CoefficientScheme = CoefficientScheme.EXACT) -> "CoefficientTimeline":
        times = [0.0]
        coeffs = [w0.coeffs]
        segment_ids: List[int] = []
        w = w0
        t0 = 0.0
        for index, segment in enumerate(schedule):
            states = evolve_segment(w, segment, dt, scheme)
            steps = len(states) - 1
            h = segment.duration / steps
            for k, state in enumerate(states[1:], start=1):
                times.append(t0 + segment.duration if k == steps else t0 + k * h)
                coeffs.append(state.coeffs)
                segment_ids.append(index)
            t0 += segment.duration
            w = states[-1]
        times_arr = np.array(times)
        coeffs_arr = np.array(coeffs)
        ids = np.array(segment_ids, dtype=int)
        for array in (times_arr, coeffs_arr, ids):
            array.setflags(write=False)
        logger.debug(f"Coefficient timeline for {schedule.name or 'schedule'}: {len(times) - 1} steps")
        return cls(schedule, w0.mass, times_arr, coeffs_arr, ids, scheme)

    @property
    def steps(self) -> int:
        return len(self.times) - 1

    @property
    def duration(self) -> float:
        return float(self.times[-1])

    def step_size(self, k: int) -> float:
        return float(self.times[k + 1] - self.times[k])

    def state(self, k: int) -> WellWaveFunction:
        return WellWaveFunction(self.coeffs[k], self.mass)

    def final_state(self) -> WellWaveFunction:
        return self.state(self.steps)

    def at(self, t: float, k: Optional[int] = None) -> np.ndarray:
        """
        Coefficients at any time in the run; between grid points the stored sample is
        propagated exactly under the active segment.
        """
        if not 0.0 <= t <= self.duration + 1e-12:
            raise InvalidInputError(f"Time {t} is outside the run [0, {self.duration}]")
        if k is None:
            k = min(max(int(np.searchsorted(self.times, t, side="right")) - 1, 0), self.steps)
        offset = t - self.times[k]
        if k == self.steps or abs(offset) < 1e-15:
            return self.coeffs[k]
        segment = self.schedule.segments[self.segment_ids[k]]
        return propagator(segment_generator(segment, self.mass), offset) @ self.coeffs[k]

    def segment_bounds(self) -> List[float]:
        return self.schedule.boundaries()


def free_schedule(duration: float, name: str = "free") -> GateSchedule:
    return GateSchedule((GateSegment(SegmentKind.FREE, duration, label="free"),), name)


def aux_only(schedule: GateSchedule) -> bool:
    """True when no segment touches the data qubit."""
    return all(segment.kind is SegmentKind.XPERT_AUX for segment in schedule)

