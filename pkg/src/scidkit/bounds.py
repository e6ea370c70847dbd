"""Upper bounds on dim S + dim I for families with constant intersection dim.

For a family of n subspaces of dimension k meeting pairwise in dimension
k - t, the sum of the total span dimension and the intersection span
dimension is bounded.  Four bounds apply in overlapping parameter ranges:

  general   n*k                      always
  pair3     2*(k + t)                n == 3 only
  linear    (n - 1)*k + 2*t          n >= 3
  refined   2*k + 2*(n-2)*t - (n-3)  n >= 3 and k >= 2*t

:func:`best_bound` resolves which regime governs, what the best bound is,
and whether it is known to be attained.  Exactly one regime applies to any
valid parameter triple.
"""

from __future__ import annotations

from dataclasses import dataclass

SHARP_YES = "yes"
SHARP_NO = "no"
SHARP_UNKNOWN = "unknown"

REGIME_MAX = "(k-t)(n-1) <= k"
REGIME_REFINED = "k >= 2t and n >= 3"
REGIME_CAPPED = "k < 2t and (k-t)(n-1) > k"


class NotApplicable(ValueError):
    """The requested bound has no content for these parameters."""


class NotAScid(ValueError):
    """Bound checking needs a family that actually has constant intersection dim."""


@dataclass(frozen=True)
class ScidParams:
    """Parameter triple (n, k, t): n members, dimension k, pairwise dim k - t."""

    n: int
    k: int
    t: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not 1 <= self.t <= self.k:
            raise ValueError(f"need 1 <= t <= k, got t={self.t}, k={self.k}")


def bound_general(params: ScidParams) -> int:
    """dim S + dim I <= n*k, for every family."""
    return params.n * params.k


def bound_pair3(params: ScidParams) -> int:
    """dim S + dim I <= 2(k + t); three-member families only."""
    if params.n != 3:
        raise NotApplicable(f"pair3 bound needs n == 3, got n={params.n}")
    return 2 * (params.k + params.t)


def bound_linear(params: ScidParams) -> int:
    """dim S + dim I <= (n-1)k + 2t for n >= 3."""
    if params.n < 3:
        raise NotApplicable(f"linear bound needs n >= 3, got n={params.n}")
    return (params.n - 1) * params.k + 2 * params.t


def bound_refined(params: ScidParams) -> int:
    """dim S + dim I <= 2k + 2(n-2)t - (n-3) for n >= 3, k >= 2t."""
    if params.n < 3:
        raise NotApplicable(f"refined bound needs n >= 3, got n={params.n}")
    if params.k < 2 * params.t:
        raise NotApplicable(f"refined bound needs k >= 2t, got k={params.k}, t={params.t}")
    n, k, t = params.n, params.k, params.t
    return 2 * k + 2 * (n - 2) * t - (n - 3)


@dataclass(frozen=True)
class BoundReport:
    """Every applicable bound, the best one, its sharpness, and the regime."""

    general: int
    pair3: int | None
    linear: int | None
    refined: int | None
    best: int
    sharp: str
    regime: str

    def applicable(self) -> list[int]:
        return [b for b in (self.general, self.pair3, self.linear, self.refined) if b is not None]

    def to_dict(self) -> dict:
        return {
            "general": self.general,
            "pair3": self.pair3,
            "linear": self.linear,
            "refined": self.refined,
            "best": self.best,
            "sharp": self.sharp,
            "regime": self.regime,
        }


def best_bound(params: ScidParams) -> BoundReport:
    """Resolve the governing regime and the best proven bound.

    Regimes, checked in order: (k-t)(n-1) <= k means n*k is attainable over
    every field (sharp yes); otherwise k >= 2t with n >= 3 activates the
    refined bound (sharpness open); otherwise k < 2t with (k-t)(n-1) > k and
    the general bound n*k stands but is never attained (sharp no).  n == 2
    always lands in the first regime.
    """
    n, k, t = params.n, params.k, params.t
    general = bound_general(params)

    def maybe(fn):
        try:
            return fn(params)
        except NotApplicable:
            return None

    pair3 = maybe(bound_pair3)
    linear = maybe(bound_linear)
    refined = maybe(bound_refined)

    if (k - t) * (n - 1) <= k:
        best, sharp, regime = general, SHARP_YES, REGIME_MAX
    elif k >= 2 * t and n >= 3:
        best, sharp, regime = refined, SHARP_UNKNOWN, REGIME_REFINED
    else:
        best, sharp, regime = general, SHARP_NO, REGIME_CAPPED

    report = BoundReport(
        general=general,
        pair3=pair3,
        linear=linear,
        refined=refined,
        best=best,
        sharp=sharp,
        regime=regime,
    )
    assert report.best == min(report.applicable()), "regime resolution must pick the minimum"
    return report


def check_family(report) -> tuple[BoundReport, bool]:
    """Evaluate the bounds against an analyzed family.

    Takes a :class:`scidkit.scid.ScidReport`; raises NotAScid unless the
    family has constant intersection dimension.  The returned flag is True if
    the measured sum exceeds any applicable bound, which would mean a bug in
    either the analysis or the bound arithmetic, never a feature of the data.
    """
    if not report.is_scid:
        raise NotAScid("bounds apply only to constant-intersection-dimension families")
    params = ScidParams(report.n, report.k, report.t)
    bounds = best_bound(params)
    violation = any(report.sum > b for b in bounds.applicable())
    return bounds, violation
