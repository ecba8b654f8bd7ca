"""Even convex potentials, their spec mini-language, and axiom checks.

A potential is an even convex function M with M(0) = 0 and M(x) > 0 for
x != 0, evaluable together with a subgradient.  Each built-in family
declares its asymptotic lower-growth class, which downstream operations
use to decide whether exponential-moment hypotheses hold.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, ParseError

SUPERPOLYNOMIAL = "superpolynomial"

#: Probe points for the numeric growth-class spot check.
_GROWTH_PROBES = (10.0, 100.0, 1000.0)
#: Effective exponent used to spot-check a superpolynomial declaration.
_SUPERPOLY_PROBE_EXPONENT = 6.0

AXIOM_TOLERANCE = 1e-12


class OrliczFunction(abc.ABC):
    """An even convex potential with subgradient and declared growth class."""

    family: str

    @abc.abstractmethod
    def value(self, x):
        """Evaluate M(x). Accepts scalars or arrays."""

    @abc.abstractmethod
    def subgradient(self, x):
        """Return an element of the subdifferential of M at x (odd in x)."""

    @property
    @abc.abstractmethod
    def growth_class(self) -> Union[float, str]:
        """Lower-growth exponent g with M in Omega(x^g), or 'superpolynomial'."""

    @property
    @abc.abstractmethod
    def params(self) -> dict:
        """Family-specific parameters."""

    @abc.abstractmethod
    def spec_string(self) -> str:
        """Canonical spec text; parse_orlicz_spec() is a left inverse."""

    def growth_at_least(self, g: float) -> bool:
        gc = self.growth_class
        return gc == SUPERPOLYNOMIAL or float(gc) >= g

    @property
    def name(self) -> str:
        return self.spec_string()

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec_string()}>"


def _fmt(v: float) -> str:
    # shortest decimal that round-trips through float()
    return format(float(v), ".17g")


@dataclass(frozen=True, repr=False)
class PowerPotential(OrliczFunction):
    """M(x) = |x|^p with p >= 1."""

    p: float
    family = "power"

    def __post_init__(self):
        if not self.p >= 1.0:
            raise DomainError(
                f"power family needs p >= 1 for convexity, got p={self.p}"
            )

    def value(self, x):
        return np.abs(x) ** self.p

    def subgradient(self, x):
        # sign(0) = 0 keeps the subgradient odd at the p = 1 kink.
        return self.p * np.abs(x) ** (self.p - 1.0) * np.sign(x)

    @property
    def growth_class(self):
        return self.p

    @property
    def params(self):
        return {"p": self.p}

    def spec_string(self):
        return f"power:p={_fmt(self.p)}"


@dataclass(frozen=True, repr=False)
class MixPotential(OrliczFunction):
    """M(x) = w|x|^p + (1-w)|x|^q, a convex combination of power terms."""

    p: float
    q: float
    w: float
    family = "mix"

    def __post_init__(self):
        if not self.p >= 1.0 or not self.q >= 1.0:
            raise DomainError(
                f"mix family needs p, q >= 1, got p={self.p}, q={self.q}"
            )
        if not 0.0 <= self.w <= 1.0:
            raise DomainError(f"mix weight must lie in [0, 1], got w={self.w}")

    def value(self, x):
        a = np.abs(x)
        return self.w * a**self.p + (1.0 - self.w) * a**self.q

    def subgradient(self, x):
        a, s = np.abs(x), np.sign(x)
        return (
            self.w * self.p * a ** (self.p - 1.0)
            + (1.0 - self.w) * self.q * a ** (self.q - 1.0)
        ) * s

    @property
    def growth_class(self):
        active = [e for e, wt in ((self.p, self.w), (self.q, 1.0 - self.w)) if wt > 0.0]
        return max(active)

    @property
    def params(self):
        return {"p": self.p, "q": self.q, "w": self.w}

    def spec_string(self):
        return f"mix:p={_fmt(self.p)},q={_fmt(self.q)},w={_fmt(self.w)}"


@dataclass(frozen=True, repr=False)
class CoshPotential(OrliczFunction):
    """M(x) = cosh(x) - 1, superpolynomial growth."""

    family = "coshm1"

    def value(self, x):
        return np.cosh(x) - 1.0

    def subgradient(self, x):
        return np.sinh(x)

    @property
    def growth_class(self):
        return SUPERPOLYNOMIAL

    @property
    def params(self):
        return {}

    def spec_string(self):
        return "coshm1"


@dataclass(frozen=True, repr=False)
class ExpSquarePotential(OrliczFunction):
    """M(x) = exp(x^2) - 1, superpolynomial growth."""

    family = "expsq"

    def value(self, x):
        return np.exp(np.square(x)) - 1.0

    def subgradient(self, x):
        return 2.0 * x * np.exp(np.square(x))

    @property
    def growth_class(self):
        return SUPERPOLYNOMIAL

    @property
    def params(self):
        return {}

    def spec_string(self):
        return "expsq"


_FAMILIES = {
    "power": (PowerPotential, ("p",)),
    "mix": (MixPotential, ("p", "q", "w")),
    "coshm1": (CoshPotential, ()),
    "expsq": (ExpSquarePotential, ()),
}


def parse_orlicz_spec(spec: str) -> OrliczFunction:
    """Parse ``<family>(:<key>=<decimal>(,<key>=<decimal>)*)?`` into a potential.

    Raises ParseError naming the offending token on malformed input and
    DomainError when a parameter violates the family's domain.
    """
    text = spec.strip()
    if not text:
        raise ParseError("empty potential spec")
    family, sep, rest = text.partition(":")
    if family not in _FAMILIES:
        raise ParseError(f"unknown potential family '{family}'")
    cls, required = _FAMILIES[family]

    given: dict[str, float] = {}
    if sep:
        if not rest:
            raise ParseError(f"'{family}:' is missing its parameter list")
        for token in rest.split(","):
            key, eq, val = token.partition("=")
            if not eq or not key or not val:
                raise ParseError(f"malformed parameter token '{token}'")
            if key not in required:
                raise ParseError(
                    f"family '{family}' does not take parameter '{key}'"
                )
            if key in given:
                raise ParseError(f"duplicate parameter '{key}'")
            try:
                given[key] = float(val)
            except ValueError:
                raise ParseError(f"invalid decimal '{val}' for '{key}'") from None
    missing = [k for k in required if k not in given]
    if missing:
        raise ParseError(f"family '{family}' requires parameter '{missing[0]}'")
    return cls(**given)


BUILTIN_EXAMPLES = (
    PowerPotential(1.0),
    PowerPotential(2.0),
    PowerPotential(3.0),
    MixPotential(1.0, 2.0, 0.5),
    CoshPotential(),
    ExpSquarePotential(),
)


@dataclass(frozen=True)
class AxiomReport:
    """Worst-case violation per axiom; passes iff all are <= 1e-12."""

    violations: dict

    @property
    def passed(self) -> bool:
        return all(v <= AXIOM_TOLERANCE for v in self.violations.values())

    def failing(self):
        return sorted(k for k, v in self.violations.items() if v > AXIOM_TOLERANCE)


def verify_orlicz_axioms(f: OrliczFunction, grid) -> AxiomReport:
    """Check the potential axioms numerically on a symmetric grid.

    Report-only: never raises on a failing axiom, only on an unusable grid.
    """
    xs = np.sort(np.asarray(grid, dtype=float))
    if xs.size == 0:
        raise DomainError("axiom grid must be nonempty")
    scale = max(1.0, float(np.max(np.abs(xs))))
    if not np.allclose(xs, -xs[::-1], atol=1e-12 * scale, rtol=0.0):
        raise DomainError("axiom grid must be symmetric about 0")

    with np.errstate(over="ignore"):
        mx = np.asarray(f.value(xs), dtype=float)
        sx = np.asarray(f.subgradient(xs), dtype=float)

        zero_v = abs(float(f.value(0.0)))

        off = xs != 0.0
        if np.all(mx[off] > 0.0):
            pos_v = 0.0
        else:
            pos_v = max(1.0, float(np.max(-mx[off])))

        even_v = float(np.max(np.abs(mx - np.asarray(f.value(-xs), dtype=float))))

        # pairwise midpoint convexity and subgradient inequality
        mid = f.value((xs[:, None] + xs[None, :]) / 2.0)
        convex_v = float(np.max(mid - (mx[:, None] + mx[None, :]) / 2.0))
        convex_v = max(0.0, convex_v)

        subgrad_gap = sx[:, None] * (xs[None, :] - xs[:, None]) - (
            mx[None, :] - mx[:, None]
        )
        subgrad_v = max(0.0, float(np.nanmax(subgrad_gap)))

        growth_v = _growth_violation(f)

    return AxiomReport(
        violations={
            "zero_at_origin": zero_v,
            "positive_off_origin": pos_v,
            "even": even_v,
            "midpoint_convex": convex_v,
            "subgradient_inequality": subgrad_v,
            "growth_class": growth_v,
        }
    )


def _growth_violation(f: OrliczFunction) -> float:
    """Relative shortfall of M below C*x^g at the growth probes.

    C is taken as half the observed ratio at the first probe, so a correct
    declaration passes with violation exactly 0 while an overdeclared
    exponent collapses the ratio and shows up as an O(1) violation.
    """
    gc = f.growth_class
    g = _SUPERPOLY_PROBE_EXPONENT if gc == SUPERPOLYNOMIAL else float(gc)
    probes = np.asarray(_GROWTH_PROBES)
    with np.errstate(over="ignore"):
        vals = np.asarray(f.value(probes), dtype=float)
    ref = vals[0] / probes[0] ** g
    if not np.isfinite(ref) or ref <= 0.0:
        return 1.0
    c = 0.5 * ref
    worst = 0.0
    for x, m in zip(probes, vals):
        floor = c * x**g
        if np.isinf(m):
            continue
        worst = max(worst, max(0.0, (floor - m) / floor))
    return worst
