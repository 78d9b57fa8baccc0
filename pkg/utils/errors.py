"""Exception types shared by the simulation packages and the CLI."""


class QuenchSimError(Exception):
    """Base error; `exit_code` is what the CLI returns for it."""

    exit_code = 1

    def details(self):
        return {}

    def to_record(self):
        """Machine-readable error record written by the CLI."""
        return {
            "error": type(self).__name__,
            "message": str(self),
            "exit_code": self.exit_code,
            "details": self.details(),
        }


class ConfigError(QuenchSimError):
    exit_code = 2

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("Invalid configuration: " + "; ".join(self.errors))

    def details(self):
        return {"errors": self.errors}


class StabilityError(QuenchSimError):
    """Raised when ω_eff,σ ≤ 2Ω for some qubit state σ."""

    exit_code = 3

    def __init__(self, sigma, margin):
        self.sigma = sigma
        self.margin = margin
        super().__init__(
            f"Unstable magnet for qubit state {sigma}: "
            f"omega_eff - 2*Omega = {margin:.6g} rad/ns"
        )

    def details(self):
        return {"sigma": self.sigma, "margin": self.margin}


class TruncationOverflow(QuenchSimError):
    exit_code = 4

    def __init__(self, r, tail_tol, cap):
        self.r = r
        self.tail_tol = tail_tol
        self.cap = cap
        super().__init__(
            f"Fock truncation for r={r} needs more than {cap} levels "
            f"to reach tail mass < {tail_tol:g}"
        )

    def details(self):
        return {"r": self.r, "tail_tol": self.tail_tol, "cap": self.cap}


class DegenerateLikelihood(QuenchSimError):
    """The likelihood is flat over the window, so no phase can be estimated."""

    exit_code = 5

    def __init__(self, span, window):
        self.span = span
        self.window = tuple(window)
        super().__init__(
            f"Likelihood is flat over window {self.window} (span {span:.3g})"
        )

    def details(self):
        return {"span": self.span, "window": list(self.window)}


class FailedLocalization(QuenchSimError):
    # reported in the adaptive-search output, never turned into an exit code
    exit_code = 0

    def __init__(self, stages):
        self.stages = list(stages)
        super().__init__(
            f"No recurrence found above the noise floor in {len(self.stages)} stage(s)"
        )

    def details(self):
        return {"stages": self.stages}
