"""Constructors for the verified surface families.

Family 1 (vase of catenoids):
    G = rho * z * (z^k - a^k),  dh = (a^k - z^k) / (z (z^k - 1)^2) dz
Family 2 (glued double vase, rho pinned to 1):
    G = z^(k+1) (z^k - a^k) / (a^k z^k - 1)
    dh = b^(2k) z^(k-1) (z^k - a^k)(a^k z^k - 1) / (a^k (z^k - b^k)^2 (b^k z^k - 1)^2) dz
plus the classical catenoid (G = z, dh = dz/z) as a known-answer fixture.

Every constructor runs the full gate (period closure, regularity, degree
audit) and never returns a partially verified instance.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .algebra import INF, FactoredMeromorphic, monomial, shifted_power
from .errors import ParameterDomainError, SphereminError
from .periods import (
    DoubleVaseParams,
    VaseParams,
    assert_period_closed,
    solve_double_vase_a,
    solve_vase_rho,
)
from .weierstrass import WeierstrassData, degree_audit, regularity_check

VASE_PERIOD_TOL = 1e-9
DOUBLE_VASE_PERIOD_TOL = 1e-8


def _roots_by_argument(k: int, c: float):
    """The k roots of z^k = c (c > 0 real), sorted by increasing argument."""
    r = c ** (1.0 / k)
    pts = [r * cmath.exp(2j * math.pi * j / k) for j in range(k)]
    return sorted(pts, key=lambda z: (cmath.phase(z) % (2.0 * math.pi)))


def vase_weierstrass_data(k: int, a: float, rho: float) -> WeierstrassData:
    """Raw (unverified) vase data; used by the solver with trial rho."""
    ak = a ** k
    G = FactoredMeromorphic(rho, [monomial(1), shifted_power(k, ak)])
    # a^k - z^k = -(z^k - a^k)
    dh = FactoredMeromorphic(
        -1.0, [monomial(-1), shifted_power(k, ak), shifted_power(k, 1.0, -2)]
    )
    punctures = (0j, INF, *_roots_by_argument(k, 1.0))
    return WeierstrassData(G, dh, punctures)


def double_vase_weierstrass_data(k: int, b: float, a: float) -> WeierstrassData:
    """Raw (unverified) double-vase data with rho = 1."""
    ak = a ** k
    bk = b ** k
    # (a^k z^k - 1) = a^k (z^k - a^-k); (b^k z^k - 1) = b^k (z^k - b^-k);
    # the stray powers of a^k and b^(2k) cancel, leaving unit coefficients.
    G = FactoredMeromorphic(
        1.0 / ak,
        [monomial(k + 1), shifted_power(k, ak), shifted_power(k, 1.0 / ak, -1)],
    )
    dh = FactoredMeromorphic(
        1.0,
        [
            monomial(k - 1),
            shifted_power(k, ak),
            shifted_power(k, 1.0 / ak),
            shifted_power(k, bk, -2),
            shifted_power(k, 1.0 / bk, -2),
        ],
    )
    punctures = (
        0j,
        INF,
        *_roots_by_argument(k, bk),
        *_roots_by_argument(k, 1.0 / bk),
    )
    return WeierstrassData(G, dh, punctures)


@dataclass(frozen=True)
class FamilyInstance:
    """A fully verified Weierstrass data instance plus solver provenance."""

    family: str  # "vase" | "double_vase" | "catenoid"
    data: WeierstrassData
    params: object  # VaseParams | DoubleVaseParams | None
    provenance: dict

    @property
    def default_base_point(self) -> complex:
        if self.family == "vase":
            return complex(0.5 * (1.0 + self.params.a))
        return 1.0 + 0j

    def to_descriptor(self) -> dict:
        from .weierstrass import point_json

        d = {
            "family": self.family,
            "punctures": [point_json(p) for p in self.data.punctures],
        }
        if self.family == "vase":
            d.update(k=self.params.k, a=self.params.a, rho=self.params.rho)
        elif self.family == "double_vase":
            d.update(k=self.params.k, b=self.params.b, a=self.params.a, rho=1.0)
        return d


def _verify(data: WeierstrassData, tol: float):
    violations = regularity_check(data)
    if violations:
        raise SphereminError(f"regularity violations: {violations}")
    audit = degree_audit(data)
    if not audit.passed:
        raise SphereminError(f"degree audit failed: {audit}")
    assert_period_closed(data, tol)


def make_vase(k: int, a: float) -> FamilyInstance:
    """Vase of catenoids: punctures at 0, infinity and the roots of unity;
    rho from the period equation."""
    solved = solve_vase_rho(k, a)
    params = VaseParams(k, a, solved.value)
    data = vase_weierstrass_data(k, a, solved.value)
    _verify(data, VASE_PERIOD_TOL)
    return FamilyInstance(
        "vase",
        data,
        params,
        {
            "closed_form": solved.closed_form,
            "numeric_root": solved.numeric_root,
            "residual": solved.residual,
            "mismatch": solved.mismatch,
        },
    )


def make_double_vase(k: int, b: float) -> FamilyInstance:
    """Glued double vase: punctures at 0, infinity and the circles
    |z| = b and |z| = 1/b; a from the period equation, rho = 1."""
    solved = solve_double_vase_a(k, b)
    params = DoubleVaseParams(k, b, solved.value)
    data = double_vase_weierstrass_data(k, b, solved.value)
    _verify(data, DOUBLE_VASE_PERIOD_TOL)
    return FamilyInstance(
        "double_vase",
        data,
        params,
        {
            "closed_form": solved.closed_form,
            "numeric_root": solved.numeric_root,
            "residual": solved.residual,
            "mismatch": solved.mismatch,
        },
    )


def make_catenoid_fixture() -> FamilyInstance:
    """The classical catenoid (G = z, dh = dz/z), used as a known-answer
    test for the sampler."""
    G = FactoredMeromorphic(1.0, [monomial(1)])
    dh = FactoredMeromorphic(1.0, [monomial(-1)])
    data = WeierstrassData(G, dh, (0j, INF))
    _verify(data, VASE_PERIOD_TOL)
    return FamilyInstance("catenoid", data, None, {})


def make_family(family: str, k: int | None = None, a: float | None = None,
                b: float | None = None) -> FamilyInstance:
    """Dispatch by family name; validates the required parameter set."""
    if family == "vase":
        if k is None or a is None:
            raise ParameterDomainError("vase requires --k and --a")
        return make_vase(k, a)
    if family == "double_vase":
        if k is None or b is None:
            raise ParameterDomainError("double_vase requires --k and --b")
        return make_double_vase(k, b)
    if family == "catenoid":
        return make_catenoid_fixture()
    raise ParameterDomainError(f"unknown family {family!r}")


def from_descriptor(desc: dict) -> FamilyInstance:
    """Reconstruct a verified instance from its JSON descriptor; the data
    is rebuilt bit-identically from (family, k, a/b)."""
    return make_family(
        desc["family"], desc.get("k"), desc.get("a"), desc.get("b")
    )
