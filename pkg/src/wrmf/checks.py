"""Named oracle check suites comparing finite-volume sums with limit formulas."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .eos import pressure_two_component
from .finite_volume import (
    FiniteVolumeSpec,
    f_V_value,
    laplace_integral,
    log_xi_two_component,
    one_component_identity,
    u_V_moments,
)
from .phase import PhasePoint

SUITES = ("identity-4a", "identity-20", "convergence", "moments")

DEFAULT_V = {
    "identity-4a": [2.0, 10.0, 50.0],
    "identity-20": [50.0],
    "convergence": [25.0, 50.0, 100.0, 200.0],
    "moments": [50.0, 100.0, 200.0],
}

DEFAULT_TOL = {
    "identity-4a": 1e-12,
    "identity-20": 1e-8,
    "convergence": 0.02,  # bound on the error at the largest V
    "moments": 1e-6,
}


@dataclass
class Check:
    name: str
    params: dict
    residual: float
    tolerance: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = bool(abs(self.residual) <= self.tolerance)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


@dataclass
class StrictDecrease(Check):
    """Passes when the residual is strictly below the tolerance (the previous value)."""

    def __post_init__(self):
        self.passed = bool(self.residual < self.tolerance)


def one_component_sums(Vs, a=1.0, theta=1.0, mu=0.0, tol=None) -> list[Check]:
    tol = DEFAULT_TOL["identity-4a"] if tol is None else tol
    out = []
    for V in Vs:
        r = one_component_identity(FiniteVolumeSpec(V), a, theta, mu)
        out.append(Check("one-component sum vs two-component sum", dict(V=V, a=a, theta=theta, mu=mu), r, tol))
    return out


def gaussian_integral(Vs, a=1.0, mu0=0.0, mu1=0.0, tol=None) -> list[Check]:
    tol = DEFAULT_TOL["identity-20"] if tol is None else tol
    out = []
    for V in Vs:
        spec = FiniteVolumeSpec(V)
        r = laplace_integral(spec, a, mu0, mu1) - log_xi_two_component(spec, a, mu0, mu1)
        out.append(Check("gaussian integral vs double sum", dict(V=V, a=a, mu0=mu0, mu1=mu1), r, tol))
    return out


def convergence(Vs, a=1.0, mu0=0.0, mu1=0.0, tol=None) -> list[Check]:
    tol = DEFAULT_TOL["convergence"] if tol is None else tol
    p = pressure_two_component(PhasePoint(a, mu0, mu1))
    errs = [abs(log_xi_two_component(FiniteVolumeSpec(V), a, mu0, mu1) - p) for V in Vs]
    params = dict(a=a, mu0=mu0, mu1=mu1)
    out: list[Check] = []
    for (V0, e0), (V1, e1) in zip(zip(Vs, errs), zip(Vs[1:], errs[1:])):
        out.append(StrictDecrease(f"error decreases from V={V0:g} to V={V1:g}", dict(params, V=V1), e1, e0))
    out.append(Check(f"error bound at V={Vs[-1]:g}", dict(params, V=Vs[-1]), errs[-1], tol))
    return out


def moments(Vs, a=1.0, x=0.0, tol=None, h=1e-5) -> list[Check]:
    tol = DEFAULT_TOL["moments"] if tol is None else tol
    out = []
    for V in Vs:
        spec = FiniteVolumeSpec(V)
        u, du, _ = u_V_moments(spec, a, x)
        fd_u = (f_V_value(spec, a, x + h) - f_V_value(spec, a, x - h)) / (2 * h)
        fd_du = (u_V_moments(spec, a, x + h)[0] - u_V_moments(spec, a, x - h)[0]) / (2 * h)
        params = dict(V=V, a=a, x=x, h=h)
        out.append(Check("u_V vs finite difference of f_V", params, (u - fd_u) / u, tol))
        out.append(Check("u'_V vs finite difference of u_V", params, (du - fd_du) / du, tol))
    return out


def run_suite(name: str, Vs=None, tol=None, **params) -> list[Check]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
    Vs = list(DEFAULT_V[name] if not Vs else Vs)
    fn = {"identity-4a": one_component_sums, "identity-20": gaussian_integral,
          "convergence": convergence, "moments": moments}[name]
    keys = {"identity-4a": ("a", "theta", "mu"), "identity-20": ("a", "mu0", "mu1"),
            "convergence": ("a", "mu0", "mu1"), "moments": ("a", "x")}[name]
    kwargs = {k: params[k] for k in keys if params.get(k) is not None}
    return fn(Vs, tol=tol, **kwargs)


def max_abs_third_moment(V: float, a: float = 1.0, xs=None) -> float:
    """max over x of |u''_V(a, x)|; a finite-V witness that it stays bounded."""
    xs = [-5.0 + 0.25 * i for i in range(41)] if xs is None else xs
    spec = FiniteVolumeSpec(V)
    return max(abs(u_V_moments(spec, a, x)[2]) for x in xs)


__all__ = ["Check", "SUITES", "run_suite", "max_abs_third_moment"]
