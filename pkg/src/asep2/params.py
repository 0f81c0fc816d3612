"""Model parameters for the open two-species exclusion processes.

A parameter set is the asymmetry q, the four boundary rates (alpha, beta,
gamma, delta) and one nonzero inhomogeneity theta_j per site.  The derived
combinations eta1, eta2 are always recomputed from the primary rates.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

__all__ = ["ModelParams", "PRESETS", "load_params_file"]


@dataclass(frozen=True)
class ModelParams:
    q: float
    alpha: float
    beta: float
    gamma: float
    delta: float
    theta: tuple = (1.0,)

    def __post_init__(self):
        if self.q <= 0 or self.q == 1.0:
            raise ValueError("q must be positive and different from 1")
        for name in ("alpha", "beta", "gamma", "delta"):
            if getattr(self, name) < 0:
                raise ValueError(f"rate {name} must be nonnegative")
        theta = tuple(complex(t) for t in self.theta)
        if len(theta) < 1:
            raise ValueError("need at least one site (N >= 1)")
        if any(t == 0 for t in theta):
            raise ValueError("inhomogeneities theta_j must be nonzero")
        object.__setattr__(self, "theta", theta)

    @property
    def N(self):
        return len(self.theta)

    @property
    def eta1(self):
        return 1 - self.q + self.q * self.alpha - self.q * self.gamma

    @property
    def eta2(self):
        return 1 - self.q + self.q * self.beta - self.q * self.delta

    @property
    def rate_sum(self):
        return self.alpha + self.beta + self.gamma + self.delta

    def with_sites(self, N, theta=None):
        """Same rates on an N-site chain; homogeneous (theta_j = 1) unless a
        theta list is given."""
        if theta is None:
            theta = (1.0,) * N
        if len(theta) != N:
            raise ValueError("theta length must equal N")
        return replace(self, theta=tuple(theta))

    def with_random_theta(self, N, seed=0, spread=0.3):
        """Distinct unit-modulus inhomogeneities exp(i phi_j), phi_j uniform in
        (-spread, spread); used by identity checks where coincident theta_j
        would make the production relations degenerate."""
        rng = np.random.default_rng(seed)
        while True:
            phis = rng.uniform(-spread, spread, N)
            th = np.exp(1j * phis)
            if N == 1 or np.min(np.abs(th[:, None] - th[None, :])[~np.eye(N, dtype=bool)]) > 1e-3:
                return replace(self, theta=tuple(th))


PRESETS = {
    "paper-A": ModelParams(q=4.0, alpha=1.2, beta=2.4, gamma=3.5, delta=7.0),
    "paper-B": ModelParams(q=1.8, alpha=0.22, beta=0.41, gamma=0.76, delta=0.95),
}


def load_params_file(path):
    """Read a flat key = value parameter file.

    Recognized keys: q, alpha, beta, gamma, delta, N, theta (comma list of
    complex values).  '#' starts a comment.  N without theta means a
    homogeneous chain of that length.
    """
    kv = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, val = (s.strip() for s in line.split("=", 1))
            kv[key.lower()] = val
    missing = [k for k in ("q", "alpha", "beta", "gamma", "delta") if k not in kv]
    if missing:
        raise ValueError(f"{path}: missing keys {missing}")
    if "theta" in kv:
        theta = tuple(complex(s.strip().replace("i", "j")) for s in kv["theta"].split(","))
    else:
        theta = (1.0,) * int(kv.get("n", 1))
    return ModelParams(
        q=float(kv["q"]),
        alpha=float(kv["alpha"]),
        beta=float(kv["beta"]),
        gamma=float(kv["gamma"]),
        delta=float(kv["delta"]),
        theta=theta,
    )
