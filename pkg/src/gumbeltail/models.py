"""Distribution catalog: upper-tail quantiles, auxiliary scale functions,
norming constants and the log/exp transform calculus.

Every model exposes its quantile in upper-tail form, ``quantile(u) =
Q(1 - u)``, non-increasing in u. The auxiliary function r(u) is the slowly
varying scale of the spacing between high quantiles; it is cataloged in
closed form where one exists (``aux_exact`` says whether that form is exact
or an asymptotic head), and recovered numerically otherwise, preferring the
derivative form rho(u) = u Q'(1 - u) and falling back to the mean excess
R(Q(1 - u)) by quadrature. The three routes agree in the u -> 0 limit.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import (
    AuxNotVanishing,
    DomainError,
    KOutOfRange,
    NoCdf,
    NonPositiveEndpoint,
    StepUnderflow,
    TailUnderflow,
    ZeroScale,
)
from .normal import normal_sf, normal_upper_quantile

# Survival values below this fraction of the start point are treated as
# numerically dead mass when truncating tail integrals; keeps R(t) stable
# for doubly-exponential tails.
_TAIL_TRUNCATION = 1e-18
_QUAD_RTOL = 1e-8


@dataclass(frozen=True)
class TailModel:
    """A named distribution family seen through its upper tail.

    quantile maps u in (0, 1) to Q(1 - u); cdf and survival are optional
    (survival is preferred for tail work since 1 - cdf cancels).
    upper_endpoint / lower_endpoint are the support ends A and B.
    """

    name: str
    quantile: Callable[[np.ndarray | float], np.ndarray | float]
    cdf: Callable[[np.ndarray | float], np.ndarray | float] | None = None
    survival: Callable[[np.ndarray | float], np.ndarray | float] | None = None
    aux_r: Callable[[float], float] | None = None
    aux_exact: bool = True
    upper_endpoint: float = math.inf
    lower_endpoint: float = -math.inf
    mean_excess_finite: bool = True

    def sf(self, x):
        """Survival 1 - F(x), from the dedicated callable when present."""
        if self.survival is not None:
            return self.survival(x)
        if self.cdf is None:
            raise NoCdf(f"model {self.name!r} has no CDF")
        return 1.0 - self.cdf(x)

    def has_cdf(self) -> bool:
        return self.cdf is not None or self.survival is not None


@dataclass(frozen=True)
class NormingConstants:
    """Scale a_n = r(k/n), center b_n = (Q(1-1/n) - Q(1-k/n)) / a_n and the
    finite-n scale ratio lam = r(1/n) / r(k/n) (None when not computable)."""

    a_n: float
    b_n: float
    lam: float | None
    n: int
    k: float


@dataclass(frozen=True)
class IteratedLogSpec:
    """Depth p and tail-mass renormalizer m of the iterated-log model."""

    p: int
    m: float

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("iteration depth p must be >= 1")
        if not 0.0 < self.m <= 1.0:
            raise ValueError("tail mass m must lie in (0, 1]")


def _check_u(u: float) -> None:
    if not 0.0 < u < 1.0:
        raise DomainError(f"u must lie strictly inside (0, 1), got {u}")


def model_quantile(model: TailModel, u: float) -> float:
    """Checked evaluation of Q(1 - u) for u strictly inside (0, 1)."""
    _check_u(u)
    return float(model.quantile(u))


def rho_numeric(model: TailModel, u: float) -> float:
    """u Q'(1 - u) by central finite difference with relative step 1e-5.

    Agrees with the cataloged aux_r to 1e-4 relative wherever that form is
    exact; against asymptotic-only forms the agreement holds in the limit.
    """
    _check_u(u)
    if u < 1e-11:
        raise StepUnderflow(f"u={u} too small for a stable difference step")
    h = max(u * 1e-5, 1e-12)
    g_plus = float(model.quantile(u + h))
    g_minus = float(model.quantile(u - h))
    rho = -u * (g_plus - g_minus) / (2.0 * h)
    if not rho > 0.0:
        raise DomainError(f"rho({u}) = {rho} is not positive for {model.name!r}")
    return rho


def _tail_cutoff(model: TailModel, t: float, floor: float) -> float:
    """Smallest point where the survival drops below floor, by doubling
    then bisection; returns the upper endpoint if it comes first."""
    a = model.upper_endpoint
    if math.isfinite(a):
        return a
    hi = max(abs(t), 1.0)
    step = max(abs(t), 1.0)
    while float(model.sf(hi)) > floor:
        step *= 2.0
        hi = t + step
        if step > 1e300:
            return hi
    lo = t
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if float(model.sf(mid)) > floor:
            lo = mid
        else:
            hi = mid
    return hi


def mean_excess_R(model: TailModel, t: float) -> float:
    """Mean excess R(t) = E[X - t | X > t] by adaptive quadrature of the
    survival function on (t, A), truncated where the survival falls below
    1e-18 of its value at t."""
    if not model.has_cdf():
        raise NoCdf(f"model {model.name!r} has no CDF")
    if not model.mean_excess_finite:
        raise DomainError(f"mean excess diverges for model {model.name!r}")
    if not model.lower_endpoint < t < model.upper_endpoint:
        raise DomainError(f"t={t} outside the support of {model.name!r}")
    st = float(model.sf(t))
    if st <= 1e-300:
        raise TailUnderflow(f"survival underflows at t={t} for {model.name!r}")
    upper = _tail_cutoff(model, t, _TAIL_TRUNCATION * st)
    integral, _ = integrate.quad(
        lambda v: float(model.sf(v)), t, upper, epsrel=_QUAD_RTOL, limit=200
    )
    return integral / st


def norming(model: TailModel, n: int, k: float) -> NormingConstants:
    """Norming constants for a model at (n, k); k may be real-valued.

    a_n comes from the cataloged aux_r when present, else from the numeric
    derivative; b_n from the quantile difference; lam is the finite-n scale
    ratio r(1/n) / r(k/n), or None when it cannot be evaluated.
    """
    if not 2 <= k < n:
        raise KOutOfRange(f"need 2 <= k < n, got k={k}, n={n}")
    r = model.aux_r if model.aux_r is not None else (lambda u: rho_numeric(model, u))
    uk = k / n
    a_n = float(r(uk))
    if not a_n > 0.0:
        raise ZeroScale(f"a_n = {a_n} must be positive")
    b_n = (float(model.quantile(1.0 / n)) - float(model.quantile(uk))) / a_n
    try:
        lam = float(r(1.0 / n)) / a_n
    except (DomainError, OverflowError, ValueError):
        lam = None
    return NormingConstants(a_n=a_n, b_n=b_n, lam=lam, n=n, k=k)


def lambda_ratio(model: TailModel, policy, n: int) -> float:
    """Finite-n ratio r(1/n) / r(k/n) with k from the policy; probing a grid
    of n estimates the limit lambda."""
    from .estimators import select_k

    k = select_k(policy, n)
    r = model.aux_r if model.aux_r is not None else (lambda u: rho_numeric(model, u))
    return float(r(1.0 / n)) / float(r(k / n))


# ---------------------------------------------------------------------------
# transforms


def transform_log(model: TailModel, a: float | None = None) -> TailModel:
    """Model of log X (positive part), per-tail renormalized by a = P(X > 0).

    Quantile becomes u -> log Q(1 - a u); the auxiliary scale becomes
    s(u) = R(Q(1 - u)) / Q(1 - u), evaluated numerically when the base model
    can integrate its tail, dropped otherwise.
    """
    if not model.upper_endpoint > 0.0:
        raise NonPositiveEndpoint(f"model {model.name!r} has upper endpoint <= 0")
    if a is None:
        if model.lower_endpoint >= 0.0:
            a = 1.0
        elif model.has_cdf():
            a = float(model.sf(0.0))
        else:
            raise NoCdf(f"supply a = P(X > 0) explicitly for {model.name!r}")
    if not 0.0 < a <= 1.0:
        raise DomainError(f"a = P(X > 0) must lie in (0, 1], got {a}")

    base_q = model.quantile
    a_val = float(a)

    def quantile(u):
        return np.log(base_q(a_val * np.asarray(u, dtype=float)))

    survival = None
    cdf = None
    if model.has_cdf():
        base_sf = model.sf

        def survival(x):  # noqa: F811 - deliberate rebind
            return np.asarray(base_sf(np.exp(np.asarray(x, dtype=float)))) / a_val

        def cdf(x):  # noqa: F811
            return 1.0 - survival(x)

    aux = None
    if model.has_cdf() and model.mean_excess_finite:
        def aux(u: float) -> float:  # noqa: F811
            q = float(base_q(u))
            return mean_excess_R(model, q) / q

    b = model.lower_endpoint
    return TailModel(
        name=f"log({model.name})",
        quantile=quantile,
        cdf=cdf,
        survival=survival,
        aux_r=aux,
        aux_exact=False,
        upper_endpoint=math.log(model.upper_endpoint) if math.isfinite(model.upper_endpoint) else math.inf,
        lower_endpoint=math.log(b) if b > 0.0 else -math.inf,
    )


def _aux_vanishes(model: TailModel) -> bool:
    probe = (1e-4, 1e-6, 1e-8)
    try:
        if model.aux_r is not None:
            vals = [float(model.aux_r(u)) for u in probe]
        else:
            vals = [rho_numeric(model, u) for u in probe]
    except (DomainError, OverflowError, ValueError):
        return True
    return vals[-1] < 0.9 * vals[0]


def transform_exp(model: TailModel) -> TailModel:
    """Model of exp(X); valid when the base auxiliary scale vanishes at the
    tail, warns AuxNotVanishing otherwise.

    Quantile becomes u -> exp(Q(1 - u)); the auxiliary scale becomes
    t(u) = exp(Q(1 - u)) R(Q(1 - u)).
    """
    if not _aux_vanishes(model):
        warnings.warn(
            f"auxiliary scale of {model.name!r} does not vanish at the tail; "
            "exp transform leaves the Gumbel max-domain",
            AuxNotVanishing,
            stacklevel=2,
        )

    base_q = model.quantile

    def quantile(u):
        return np.exp(base_q(np.asarray(u, dtype=float)))

    survival = None
    cdf = None
    if model.has_cdf():
        base_sf = model.sf

        def survival(x):  # noqa: F811
            x = np.asarray(x, dtype=float)
            with np.errstate(divide="ignore"):
                return np.where(x > 0.0, np.asarray(base_sf(np.log(np.maximum(x, 1e-300)))), 1.0)

        def cdf(x):  # noqa: F811
            return 1.0 - survival(x)

    aux = None
    if model.has_cdf() and model.mean_excess_finite:
        def aux(u: float) -> float:  # noqa: F811
            q = float(base_q(u))
            return math.exp(q) * mean_excess_R(model, q)

    b = model.lower_endpoint
    return TailModel(
        name=f"exp({model.name})",
        quantile=quantile,
        cdf=cdf,
        survival=survival,
        aux_r=aux,
        aux_exact=False,
        upper_endpoint=math.exp(model.upper_endpoint) if math.isfinite(model.upper_endpoint) else math.inf,
        lower_endpoint=math.exp(b) if math.isfinite(b) else (0.0 if b == -math.inf else math.inf),
    )


# ---------------------------------------------------------------------------
# the catalog


def mason_quantile(u) -> float | np.ndarray:
    """Piecewise-linear quantile F^{-1}(1 - u) of the Mason distribution.

    Equal to m at dyadic u = 2^{-m} and linear in between; continuous and
    non-increasing on (0, 1].
    """
    arr = np.asarray(u, dtype=float)
    if np.any(arr <= 0.0) or np.any(arr > 1.0):
        raise DomainError("mason quantile needs 0 < u <= 1")
    m = np.floor(-np.log2(arr))
    hi = np.exp2(-m)
    out = m + (hi - arr) * np.exp2(m + 1.0)
    return float(out) if np.ndim(u) == 0 else out


def _iterated_log(x: float, p: int) -> float:
    for _ in range(p):
        if x <= 0.0:
            raise DomainError(f"iterated log hit a non-positive value: {x}")
        x = math.log(x)
    return x


def _iterated_exp(x: float, p: int) -> float:
    for _ in range(p):
        x = math.exp(x)
    return x


def iterated_c_n(spec: IteratedLogSpec, n: int) -> float:
    """Norming factor (2 log n) * prod_{h=1}^{p-1} log_h((2 log n)^{1/2});
    the empty product (p = 1) is 1."""
    if n < 16:
        raise DomainError(f"need n >= 16, got {n}")
    base = 2.0 * math.log(n)
    out = base
    root = math.sqrt(base)
    for h in range(1, spec.p):
        factor = _iterated_log(root, h)
        if factor <= 0.0:
            raise DomainError(
                f"iterated-log factor log_{h}((2 log n)^(1/2)) = {factor} <= 0 at n={n}"
            )
        out *= factor
    return out


def iterated_log_model(spec: IteratedLogSpec) -> TailModel:
    """Model of log_p sup(e_{p-1}(1), Z) given Z > e_{p-1}(1), for standard
    normal Z; quantile u -> log_p Q_Z(1 - m u)."""
    p, m = spec.p, spec.m

    def quantile(u):
        def one(v: float) -> float:
            if v >= 1.0:
                return 0.0
            # support is [0, inf): a sub-ulp negative from the last log is a
            # rounding artifact, flattened to the endpoint
            return max(_iterated_log(float(normal_upper_quantile(m * v)), p), 0.0)

        if np.ndim(u) == 0:
            return one(float(u))
        return np.array([one(float(v)) for v in np.asarray(u, dtype=float)])

    def survival(x):
        def one(v: float) -> float:
            if v <= 0.0:
                return 1.0
            inner = _iterated_exp(v, p)
            if inner > 40.0:
                return 0.0
            return float(normal_sf(inner)) / m

        if np.ndim(x) == 0:
            return one(float(x))
        return np.array([one(float(v)) for v in np.asarray(x, dtype=float)])

    def aux(u: float) -> float:
        val = 2.0 * math.log(1.0 / u)
        root = math.sqrt(val)
        for h in range(1, p):
            val *= _iterated_log(root, h)
        return 1.0 / val

    return TailModel(
        name=f"iterlog({p})",
        quantile=quantile,
        cdf=lambda x: 1.0 - survival(x),
        survival=survival,
        aux_r=aux,
        aux_exact=False,
        upper_endpoint=math.inf,
        lower_endpoint=0.0,
    )


def _exp_of_log_model() -> TailModel:
    # exp(X) standard exponential: F(x) = 1 - exp(-e^x) on the whole line.
    def quantile(u):
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore"):
            return np.log(np.log(1.0 / u))

    return TailModel(
        name="exp-of-log",
        quantile=quantile,
        cdf=lambda x: -np.expm1(-np.exp(np.asarray(x, dtype=float))),
        survival=lambda x: np.exp(-np.exp(np.asarray(x, dtype=float))),
        aux_r=lambda u: 1.0 / math.log(1.0 / u),
        aux_exact=True,
    )


def _normal_model() -> TailModel:
    # The cataloged aux is the asymptotic head (2 log(1/u))^{-1/2}; the exact
    # derivative u / phi(Q(1-u)) is available through rho_numeric.
    return TailModel(
        name="normal",
        quantile=normal_upper_quantile,
        cdf=lambda x: 1.0 - normal_sf(x),
        survival=normal_sf,
        aux_r=lambda u: (2.0 * math.log(1.0 / u)) ** -0.5,
        aux_exact=False,
    )


def _pareto_model() -> TailModel:
    # Unit Pareto, 1 - F(x) = 1/x on x >= 1; infinite mean excess.
    return TailModel(
        name="pareto",
        quantile=lambda u: 1.0 / np.asarray(u, dtype=float),
        cdf=lambda x: 1.0 - 1.0 / np.asarray(x, dtype=float),
        survival=lambda x: 1.0 / np.asarray(x, dtype=float),
        aux_r=lambda u: 1.0 / u,
        aux_exact=True,
        lower_endpoint=1.0,
        mean_excess_finite=False,
    )


def _exponential_model(name: str = "exponential") -> TailModel:
    def quantile(u):
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore"):
            return -np.log(u)

    return TailModel(
        name=name,
        quantile=quantile,
        cdf=lambda x: -np.expm1(-np.asarray(x, dtype=float)),
        survival=lambda x: np.exp(-np.asarray(x, dtype=float)),
        aux_r=lambda u: 1.0,
        aux_exact=True,
        lower_endpoint=0.0,
    )


def _mason_model() -> TailModel:
    return TailModel(
        name="mason",
        quantile=mason_quantile,
        lower_endpoint=0.0,
    )


def _log_normal_model() -> TailModel:
    model = transform_exp(_normal_model())
    return replace(model, name="log-normal")


_FACTORIES: dict[str, Callable[[], TailModel]] = {
    "exp-of-log": _exp_of_log_model,
    "normal": _normal_model,
    "log-normal": _log_normal_model,
    "pareto": _pareto_model,
    "exponential": _exponential_model,
    "gamma-tail": lambda: _exponential_model("gamma-tail"),
    "mason": _mason_model,
}


def model_names() -> list[str]:
    return sorted(_FACTORIES) + ["iterlog(p)"]


def get_model(name: str) -> TailModel:
    """Look up a catalog model by name; "iterlog(p)" takes an integer depth
    with tail mass m = P(Z > e_{p-1}(1)) computed from the normal survival."""
    if name.startswith("iterlog(") and name.endswith(")"):
        try:
            p = int(name[len("iterlog("):-1])
        except ValueError:
            raise DomainError(f"bad iterated-log depth in {name!r}") from None
        m = float(normal_sf(_iterated_exp(1.0, p - 1)))
        return iterated_log_model(IteratedLogSpec(p=p, m=m))
    try:
        return _FACTORIES[name]()
    except KeyError:
        raise DomainError(
            f"unknown model {name!r}; available: {', '.join(model_names())}"
        ) from None
