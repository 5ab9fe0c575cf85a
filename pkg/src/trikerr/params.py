"""Physical parameters of the three-mode Kerr cavity.

All rates are expressed in units of the reference decay rate gamma0 = 1 and
all frequencies in the frame rotating with the drive, so delta[m] is the
detuning of mode m from the drive laser.  Mode 2 (index 1) is the coherently
pumped mode; modes 1 and 3 are the side modes, populated only through the
parametric pair-scattering term.
"""

from dataclasses import dataclass, field

import numpy as np

CONFIG_KEYS = ("delta1", "delta2", "delta3", "gamma1", "gamma2", "gamma3",
               "u0", "omega2")


@dataclass(frozen=True)
class SystemParams:
    """Immutable parameter set: detunings, loss rates, interaction, drive.

    delta : array of 3 detunings delta_m = omega_m - omega_L
    gamma : array of 3 loss half-rates gamma_m > 0 (photon loss rate 2*gamma_m)
    u0 : Kerr interaction rate U0 (U0 < 0 is attractive)
    omega2 : coherent drive amplitude on mode 2, real and >= 0
    """

    delta: np.ndarray
    gamma: np.ndarray
    u0: float
    omega2: float

    def __post_init__(self):
        object.__setattr__(self, "delta", np.asarray(self.delta, dtype=float))
        object.__setattr__(self, "gamma", np.asarray(self.gamma, dtype=float))
        object.__setattr__(self, "u0", float(self.u0))
        object.__setattr__(self, "omega2", float(self.omega2))
        if self.delta.shape != (3,) or self.gamma.shape != (3,):
            raise ValueError("delta and gamma must each hold exactly 3 rates")

    @classmethod
    def pumped_ladder(cls, delta2, omega2, u0=-1.0, gamma=1.0, splitting=1.0):
        """Canonical arrangement: side modes detuned symmetrically around the
        pumped mode, delta_{1,3} = delta2 -+ splitting, equal losses.

        With this arrangement the dispersion delta_d vanishes and the
        parametric scattering 2 a2 -> a1 + a3 is energy-matched.
        """
        return cls(delta=np.array([delta2 - splitting, delta2, delta2 + splitting]),
                   gamma=np.full(3, float(gamma)), u0=u0, omega2=omega2)

    @property
    def delta_d(self):
        """Dispersion delta_d = delta2 - (delta1 + delta3)/2."""
        return self.delta[1] - 0.5 * (self.delta[0] + self.delta[2])

    def with_omega2(self, omega2):
        """Same cavity, different drive strength."""
        return SystemParams(delta=self.delta.copy(), gamma=self.gamma.copy(),
                            u0=self.u0, omega2=omega2)

    def swapped_sides(self):
        """Parameters with the side modes 1 and 3 exchanged."""
        return SystemParams(delta=self.delta[[2, 1, 0]].copy(),
                            gamma=self.gamma[[2, 1, 0]].copy(),
                            u0=self.u0, omega2=self.omega2)

    def to_dict(self):
        """Flat key/value form, keys delta1..3, gamma1..3, u0, omega2."""
        d = {f"delta{m + 1}": float(self.delta[m]) for m in range(3)}
        d.update({f"gamma{m + 1}": float(self.gamma[m]) for m in range(3)})
        d["u0"] = self.u0
        d["omega2"] = self.omega2
        return d

    @classmethod
    def from_dict(cls, d):
        missing = [k for k in CONFIG_KEYS if k not in d]
        if missing:
            raise KeyError(missing[0])
        unknown = [k for k in d if k not in CONFIG_KEYS]
        if unknown:
            raise ValueError(f"unknown parameter key: {unknown[0]!r}")
        return cls(delta=np.array([d["delta1"], d["delta2"], d["delta3"]], dtype=float),
                   gamma=np.array([d["gamma1"], d["gamma2"], d["gamma3"]], dtype=float),
                   u0=float(d["u0"]), omega2=float(d["omega2"]))


@dataclass
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)


def validate_params(p):
    """Check parameter invariants; never raises.

    Returns a report listing violated invariants plus informational notes,
    e.g. whether the analytic multistability condition of the uniform branch
    (u0*delta2 < 0 and |delta2 - delta_d| >= sqrt(3)*gamma2) holds.
    """
    violations = []
    if not np.all(p.gamma > 0):
        violations.append("gamma must be positive for every mode")
    if p.omega2 < 0:
        violations.append("omega2 must be non-negative (drive phase is fixed real)")
    if not np.isfinite(p.delta_d):
        violations.append("dispersion delta_d is not finite")

    notes = []
    if p.u0 * p.delta[1] < 0 and abs(p.delta[1] - p.delta_d) >= np.sqrt(3.0) * p.gamma[1]:
        notes.append("multistability-possible: u0*delta2 < 0 and "
                     "|delta2 - delta_d| >= sqrt(3)*gamma2")

    return ValidationReport(ok=not violations, violations=violations, notes=notes)
