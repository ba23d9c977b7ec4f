from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class ToleranceConfig:
    """Tolerances threaded through every numerical verdict.

    Attributes:
        rel: relative tolerance for residual checks.
        abs: absolute floor (e.g. smallest admissible eigenvalue).
        cluster: relative threshold below which eigenvalues count as equal.
        rank_cut: relative singular-value cutoff for rank decisions.
        cond_max: largest accepted condition number.
    """

    rel: float = 1e-9
    abs: float = 1e-12
    cluster: float = 1e-7
    rank_cut: float = 1e-8
    cond_max: float = 1e12

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not value > 0:
                raise ValueError(f"tolerance {name} must be strictly positive, got {value}")
        if self.cluster < self.rel:
            raise ValueError("cluster tolerance must be at least rel")

    def as_dict(self):
        return asdict(self)


DEFAULT_TOL = ToleranceConfig()
