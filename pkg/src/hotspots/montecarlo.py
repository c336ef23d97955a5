"""Exit-time Monte Carlo: empirical validation of the V-bound.

Simulates Brownian motion run at twice the usual speed (per-coordinate
increment variance 2*dt, generator = full Laplacian) exiting balls and boxes,
estimates the survival function P(tau_D > t) with Clopper-Pearson intervals,
and checks it against V(eps, d) * exp(-(1-eps) * lambda_D * t).

Discrete monitoring alone biases survival upward (a path can cross the
boundary and come back between monitoring times), which could spuriously
violate the inequality being validated.  The Brownian-bridge correction
kills a path between steps with the half-space crossing probability

    p = exp(-2 * dist_before * dist_after / (sigma^2 * dt))
      = exp(-dist_before * dist_after / dt)          (sigma^2 = 2)

using distances to the boundary before and after the step — per face for
boxes (applied independently; the per-step survival factor is the product
over faces), and via the signed radial distance R - |x| for balls.

Reproducibility: paths are generated in fixed-size chunks; chunk i uses the
Philox counter-based stream `Philox(key=seed).jumped(i)`.  The same (seed,
chunk policy) therefore yields the same sample multiset regardless of how
chunks are scheduled.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import stats

from ._format import payload_checksum
from .errors import AccuracyError, InfeasibleParameterError
from .vfunction import CustomTable, VKind, log_v
from .zeros import first_bessel_zero

#: Simulation is cut off at lambda_D * t = 80; the chance any of n paths
#: survives that long is ~ n * e^-80, i.e. never in practice.
_LAMBDA_T_CAP = 80.0


class DomainShape(enum.Enum):
    BALL = "ball"
    BOX = "box"


@dataclass(frozen=True)
class SimDomain:
    """A ball of given radius centered at the origin, or an axis box
    prod_i (0, L_i)."""

    shape: DomainShape
    dim: int
    radius: float | None = None
    sides: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.dim, int) or isinstance(self.dim, bool) or self.dim < 1:
            raise InfeasibleParameterError(f"dim must be an integer >= 1, got {self.dim!r}")
        if self.shape is DomainShape.BALL:
            if self.sides is not None:
                raise InfeasibleParameterError("ball takes no sides")
            if self.radius is None or not (0.0 < self.radius < math.inf):
                raise InfeasibleParameterError(
                    f"ball needs a positive finite radius, got {self.radius!r}"
                )
        else:
            if self.radius is not None:
                raise InfeasibleParameterError("box takes no radius")
            if self.sides is None or len(self.sides) != self.dim:
                raise InfeasibleParameterError("box needs one side per dimension")
            if not all(0.0 < s < math.inf for s in self.sides):
                raise InfeasibleParameterError("box sides must be positive and finite")

    @classmethod
    def ball(cls, radius: float, dim: int) -> "SimDomain":
        return cls(shape=DomainShape.BALL, dim=dim, radius=radius)

    @classmethod
    def box(cls, sides: tuple[float, ...]) -> "SimDomain":
        return cls(shape=DomainShape.BOX, dim=len(sides), sides=tuple(sides))

    def center(self) -> tuple[float, ...]:
        if self.shape is DomainShape.BALL:
            return (0.0,) * self.dim
        assert self.sides is not None
        return tuple(0.5 * s for s in self.sides)


@dataclass(frozen=True)
class SimConfig:
    """Everything one simulation depends on (and nothing else)."""

    domain: SimDomain
    start: tuple[float, ...]
    dt: float
    n_paths: int
    t_grid: tuple[float, ...]
    seed: int
    bridge_correction: bool = True
    chunk_size: int = 65536

    def __post_init__(self) -> None:
        if len(self.start) != self.domain.dim:
            raise InfeasibleParameterError("start point has wrong dimension")
        if not (self.dt > 0.0 and math.isfinite(self.dt)):
            raise InfeasibleParameterError(f"dt must be positive, got {self.dt!r}")
        if self.n_paths < 1:
            raise InfeasibleParameterError("n_paths must be >= 1")
        if self.chunk_size < 1:
            raise InfeasibleParameterError("chunk_size must be >= 1")
        if not (0 <= self.seed < 2 ** 64):
            raise InfeasibleParameterError("seed must be a 64-bit unsigned integer")
        grid = self.t_grid
        if any(t < 0.0 for t in grid):
            raise InfeasibleParameterError("t_grid times must be >= 0")
        diffs = [b - a for a, b in zip(grid, grid[1:])]
        if any(h <= 0.0 for h in diffs):
            raise InfeasibleParameterError("t_grid must be strictly increasing")
        if diffs and self.dt > min(diffs) / 10.0:
            raise InfeasibleParameterError(
                "dt must be at most one tenth of the smallest t_grid spacing"
            )
        if _start_distance(self.domain, self.start) < -1e-12:
            raise InfeasibleParameterError("start lies outside the domain")

    def fingerprint(self) -> str:
        dom = self.domain
        payload = {
            "shape": dom.shape.value,
            "dim": dom.dim,
            "radius": dom.radius,
            "sides": list(dom.sides) if dom.sides is not None else None,
            "start": list(self.start),
            "dt": self.dt,
            "n_paths": self.n_paths,
            "t_grid": list(self.t_grid),
            "seed": self.seed,
            "bridge_correction": self.bridge_correction,
            "chunk_size": self.chunk_size,
        }
        return payload_checksum(payload)


@dataclass(frozen=True)
class TailEstimate:
    """Empirical survival probabilities with 95% confidence intervals."""

    t_grid: tuple[float, ...]
    survival: tuple[float, ...]
    ci_low: tuple[float, ...]
    ci_high: tuple[float, ...]
    n_paths: int
    config_fingerprint: str

    def __post_init__(self) -> None:
        n = len(self.t_grid)
        if not (len(self.survival) == len(self.ci_low) == len(self.ci_high) == n):
            raise InfeasibleParameterError("tail estimate arrays must align")
        if any(b > a + 1e-15 for a, b in zip(self.survival, self.survival[1:])):
            raise AccuracyError("survival must be nonincreasing over t_grid")
        for lo, s, hi in zip(self.ci_low, self.survival, self.ci_high):
            if not (lo <= s <= hi):
                raise AccuracyError("confidence interval must contain the estimate")


@dataclass(frozen=True)
class VBoundReport:
    """Outcome of one V-bound check against a tail estimate."""

    passed: bool
    worst_margin: float
    worst_index: int
    epsilon: float
    vkind: VKind
    lambda_d: float
    dim: int
    bound_curve: tuple[float, ...]


def _start_distance(domain: SimDomain, point: tuple[float, ...]) -> float:
    """Distance from point to the boundary; negative outside."""
    if domain.shape is DomainShape.BALL:
        assert domain.radius is not None
        return domain.radius - math.sqrt(sum(c * c for c in point))
    assert domain.sides is not None
    return min(min(c, s - c) for c, s in zip(point, domain.sides))


def principal_eigenvalue(domain: SimDomain) -> float:
    """First Dirichlet eigenvalue of the (full) Laplacian on the domain.

    With the twice-speed convention the exit-time tail decays at exactly this
    rate.  Ball of radius R in dimension d: j_{d/2-1,1}^2 / R^2; box with
    sides L: pi^2 * sum_i 1/L_i^2.

    Examples
    --------
    >>> abs(principal_eigenvalue(SimDomain.box((1.0, 1.0))) - 2.0 * math.pi ** 2) < 1e-12
    True
    """
    if domain.shape is DomainShape.BOX:
        assert domain.sides is not None
        return math.pi ** 2 * sum(1.0 / (s * s) for s in domain.sides)
    assert domain.radius is not None
    if domain.dim == 1:
        j = 0.5 * math.pi  # first zero of cos = J_{-1/2} direction
    else:
        j = first_bessel_zero(0.5 * domain.dim - 1.0).value
    return (j / domain.radius) ** 2


def _chunk_exit_times(config: SimConfig, chunk_index: int,
                      chunk_paths: int) -> np.ndarray:
    """Exit times for one chunk of paths (the documented seed derivation).

    Chunk i draws from Philox(key=seed) jumped i times; within a chunk the
    draw order is one (alive, dim) normal block then one (alive,) uniform
    block per step, with exited paths compacted away between steps.
    """
    rng = np.random.Generator(np.random.Philox(key=config.seed).jumped(chunk_index))
    domain = config.domain
    dim = domain.dim
    dt = config.dt
    n = chunk_paths

    if _start_distance(domain, config.start) <= 0.0:
        return np.zeros(n, dtype=np.float64)

    lam = principal_eigenvalue(domain)
    t_cap = max(config.t_grid[-1] if config.t_grid else 0.0, _LAMBDA_T_CAP / lam)
    max_steps = int(math.ceil(t_cap / dt)) + 1

    exit_times = np.full(n, np.nan, dtype=np.float64)
    alive = np.arange(n, dtype=np.int64)
    x = np.broadcast_to(np.asarray(config.start, dtype=np.float64), (n, dim)).copy()
    step_sd = math.sqrt(2.0 * dt)

    is_ball = domain.shape is DomainShape.BALL
    if is_ball:
        radius = float(domain.radius)  # type: ignore[arg-type]
        dist_prev = radius - np.linalg.norm(x, axis=1)
    else:
        sides = np.asarray(domain.sides, dtype=np.float64)

    for step in range(max_steps):
        if alive.size == 0:
            break
        m = alive.size
        x_new = x + step_sd * rng.standard_normal((m, dim))
        u = rng.uniform(size=m)

        if is_ball:
            rad_new = np.linalg.norm(x_new, axis=1)
            dist_new = radius - rad_new
            exited = dist_new <= 0.0
            if config.bridge_correction:
                inside = ~exited
                p_cross = np.exp(-dist_prev[inside] * dist_new[inside] / dt)
                hit = np.zeros(m, dtype=bool)
                hit[inside] = u[inside] < p_cross
                exited |= hit
        else:
            low_new = x_new
            high_new = sides[None, :] - x_new
            exited = (low_new <= 0.0).any(axis=1) | (high_new <= 0.0).any(axis=1)
            if config.bridge_correction:
                inside = ~exited
                low_old = x[inside]
                high_old = sides[None, :] - x[inside]
                survive = np.ones(inside.sum(), dtype=np.float64)
                for face_old, face_new in (
                    (low_old, low_new[inside]),
                    (high_old, high_new[inside]),
                ):
                    survive *= np.prod(
                        1.0 - np.exp(-face_old * face_new / dt), axis=1
                    )
                hit = np.zeros(m, dtype=bool)
                hit[inside] = u[inside] < 1.0 - survive
                exited |= hit

        t_now = dt * (step + 1)
        exit_times[alive[exited]] = t_now
        keep = ~exited
        alive = alive[keep]
        x = x_new[keep]
        if is_ball:
            dist_prev = dist_new[keep]

    if alive.size:
        raise AccuracyError(
            f"{alive.size} paths still alive at lambda*t = {_LAMBDA_T_CAP:g}; "
            "exit-time sampling did not terminate"
        )
    return exit_times


def sample_exit_times(config: SimConfig) -> np.ndarray:
    """n_paths independent exit-time samples, deterministic given the seed.

    Paths are processed in chunks of config.chunk_size; results concatenate
    in chunk order, so the output is identical however chunks are scheduled.
    """
    out = []
    remaining = config.n_paths
    chunk_index = 0
    while remaining > 0:
        take = min(config.chunk_size, remaining)
        out.append(_chunk_exit_times(config, chunk_index, take))
        remaining -= take
        chunk_index += 1
    return np.concatenate(out) if len(out) > 1 else out[0]


def _clopper_pearson(k: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Two-sided 95% interval for each success count k out of n."""
    k = k.astype(np.float64)
    with np.errstate(invalid="ignore"):
        low = stats.beta.ppf(0.025, k, n - k + 1.0)
        high = stats.beta.ppf(0.975, k + 1.0, n - k)
    low = np.where(k == 0, 0.0, low)
    high = np.where(k == n, 1.0, high)
    return low, high


def estimate_survival(config: SimConfig) -> TailEstimate:
    """Empirical survival curve over config.t_grid with 95% CP intervals."""
    if _start_distance(config.domain, config.start) <= 0.0:
        raise InfeasibleParameterError(
            "tail estimation needs a start strictly inside the domain"
        )
    tau = sample_exit_times(config)
    grid = np.asarray(config.t_grid, dtype=np.float64)
    counts = (tau[:, None] > grid[None, :]).sum(axis=0)
    n = config.n_paths
    survival = counts / n
    low, high = _clopper_pearson(counts, n)
    return TailEstimate(
        t_grid=tuple(float(t) for t in grid),
        survival=tuple(float(s) for s in survival),
        ci_low=tuple(float(v) for v in low),
        ci_high=tuple(float(v) for v in high),
        n_paths=n,
        config_fingerprint=config.fingerprint(),
    )


def check_vbound(estimate: TailEstimate, vkind: VKind, epsilon: float,
                 lambda_d: float, dim: int,
                 vtable: CustomTable | None = None) -> VBoundReport:
    """Compare the estimate's lower confidence limits against the V-bound.

    Passes iff no grid point's lower confidence limit exceeds
    V(eps, dim) * exp(-(1-eps) * lambda_d * t).  The worst margin is the
    smallest bound - ci_low over the grid (negative means failure).
    """
    if not (0.0 < epsilon <= 1.0):
        raise InfeasibleParameterError(f"epsilon must lie in (0, 1], got {epsilon!r}")
    if not lambda_d > 0.0:
        raise InfeasibleParameterError("lambda_d must be positive")
    lv = log_v(vkind, epsilon, dim, table=vtable)
    rate = (1.0 - epsilon) * lambda_d
    bound = tuple(math.exp(lv - rate * t) for t in estimate.t_grid)
    margins = [b - lo for b, lo in zip(bound, estimate.ci_low)]
    worst_index = int(np.argmin(margins)) if margins else 0
    worst = margins[worst_index] if margins else math.inf
    return VBoundReport(
        passed=bool(worst >= 0.0),
        worst_margin=float(worst),
        worst_index=worst_index,
        epsilon=epsilon,
        vkind=vkind,
        lambda_d=lambda_d,
        dim=dim,
        bound_curve=bound,
    )


def default_t_grid(lambda_d: float, points: int = 25) -> tuple[float, ...]:
    """Evenly spaced grid [0, 12/lambda_d]: survival decays to ~e^-12."""
    if points < 2:
        raise InfeasibleParameterError("need at least 2 grid points")
    t_max = 12.0 / lambda_d
    return tuple(t_max * i / (points - 1) for i in range(points))


def default_dt(domain: SimDomain) -> float:
    """1e-4 times the squared characteristic length (radius / shortest side)."""
    if domain.shape is DomainShape.BALL:
        assert domain.radius is not None
        scale = domain.radius
    else:
        assert domain.sides is not None
        scale = min(domain.sides)
    return 1e-4 * scale * scale


def off_center_start(domain: SimDomain, offset_fraction: float = 0.5) -> tuple[float, ...]:
    """A start point displaced from the center along the first axis."""
    center = list(domain.center())
    if domain.shape is DomainShape.BALL:
        assert domain.radius is not None
        center[0] += offset_fraction * domain.radius
    else:
        assert domain.sides is not None
        center[0] += 0.5 * offset_fraction * domain.sides[0]
    return tuple(center)


def split_chunks(config: SimConfig) -> list[np.ndarray]:
    """Per-chunk samples under the documented derivation (for verification)."""
    out = []
    remaining = config.n_paths
    chunk_index = 0
    while remaining > 0:
        take = min(config.chunk_size, remaining)
        out.append(_chunk_exit_times(config, chunk_index, take))
        remaining -= take
        chunk_index += 1
    return out


def with_paths(config: SimConfig, n_paths: int) -> SimConfig:
    """A copy of config with a different path count (same everything else)."""
    return replace(config, n_paths=n_paths)
