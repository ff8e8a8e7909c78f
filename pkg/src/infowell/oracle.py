"""Independent numerical verification of the closed forms.

The oracle integrates the defining integrands directly -- the kernel
integrand for I(n, k), powers of the momentum density for the entropic
moments, and rho*ln(rho) for Shannon estimates -- using globally adaptive
composite Simpson panels with Richardson error estimates at a configurable
mpmath working precision (default 30 digits).

Infinite domains are truncated at a point T where the analytic envelope
(sin^2 <= 1, so the integrand is dominated by the reciprocal quartic power)
has a certified elementary tail bound below half the requested tolerance;
the reported total error is the panel error estimate plus that tail bound.
Panels are seeded between consecutive zeros of the oscillating factor, so
every removable singularity and density zero is a panel boundary.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from mpmath import mp

from .dirichlet import IntegralIndex, theorem1_ink
from .exact import pi_poly_eval
from .measures import momentum_entropic_moment
from .well import WellState, _sinc_sq_mp, momentum_density_mp, position_density_mp

DEFAULT_ORACLE_DPS = 30


class PrecisionError(ArithmeticError):
    """Requested tolerance is unattainable at the working precision."""

    def __init__(self, message: str, required_digits: int):
        super().__init__(f"{message} (need roughly {required_digits} working digits)")
        self.required_digits = required_digits


@dataclass(frozen=True)
class QuadratureResult:
    """Truncated-domain adaptive quadrature outcome.

    The certified total error is ``abs_error_estimate + tail_bound``;
    ``truncation_T`` is the half-width of the integrated domain and
    ``subdivisions`` the number of Simpson panels used.
    """

    value: object
    abs_error_estimate: object
    tail_bound: object
    subdivisions: int
    truncation_T: object

    @property
    def total_error(self):
        return self.abs_error_estimate + self.tail_bound


# -- adaptive Simpson engine -------------------------------------------------
#
# Each panel keeps five equally spaced ordinates; its value is the
# Richardson-extrapolated composite Simpson sum and its error estimate the
# classic |S2 - S1| / 15.  Refinement always splits the panel with the
# largest estimate (ties broken by creation order), so runs are
# deterministic.


def _make_panel(f, x0, x4, f0, f2, f4):
    h = x4 - x0
    x2 = (x0 + x4) / 2
    x1 = (x0 + x2) / 2
    x3 = (x2 + x4) / 2
    f1 = f(x1)
    f3 = f(x3)
    s1 = h / 6 * (f0 + 4 * f2 + f4)
    s2 = h / 12 * (f0 + 4 * f1 + 2 * f2 + 4 * f3 + f4)
    err = abs(s2 - s1) / 15
    value = s2 + (s2 - s1) / 15
    return (x0, x4, f0, f1, f2, f3, f4, value, err)


def _roundoff_precheck(scale, abs_tol) -> None:
    """Refuse tolerances below the working-precision roundoff floor for an
    integral of the given magnitude."""
    floor = scale * mp.mpf(10) ** (4 - mp.dps)
    if scale > 0 and abs_tol < floor:
        need = int(mp.ceil(mp.log10(scale / abs_tol))) + 6
        raise PrecisionError(
            f"tolerance {mp.nstr(mp.mpf(abs_tol), 4)} is below the roundoff floor "
            f"{mp.nstr(floor, 4)} at {mp.dps} working digits",
            need,
        )


def _magnitude_probe(f: Callable, breakpoints: list):
    """Cheap midpoint-rule magnitude estimate of integral |f| over the panels."""
    total = mp.mpf(0)
    for i in range(len(breakpoints) - 1):
        mid = (breakpoints[i] + breakpoints[i + 1]) / 2
        total += abs(f(mid)) * (breakpoints[i + 1] - breakpoints[i])
    return total


def _adaptive(
    f: Callable,
    breakpoints: list,
    abs_tol,
    max_panels: int = 400_000,
):
    """Integrate f over [breakpoints[0], breakpoints[-1]] with panel error
    below abs_tol.  Runs at the current mpmath precision."""
    fvals = [f(x) for x in breakpoints]
    heap = []
    seq = 0
    for i in range(len(breakpoints) - 1):
        panel = _make_panel(
            f, breakpoints[i], breakpoints[i + 1], fvals[i], f((breakpoints[i] + breakpoints[i + 1]) / 2), fvals[i + 1]
        )
        heapq.heappush(heap, (-panel[8], seq, panel))
        seq += 1

    _roundoff_precheck(mp.fsum(abs(entry[2][7]) for entry in heap), abs_tol)

    total_err = mp.fsum(entry[2][8] for entry in heap)
    while total_err > abs_tol:
        if len(heap) >= max_panels:
            need = mp.dps + 10
            raise PrecisionError(
                f"panel budget exhausted ({max_panels}) before reaching tolerance",
                need,
            )
        neg_err, _, panel = heapq.heappop(heap)
        x0, x4, f0, f1, f2, f3, f4, _, err = panel
        x2 = (x0 + x4) / 2
        if not (x0 < x2 < x4):
            need = mp.dps + max(10, int(mp.ceil(mp.log10(1 / abs_tol))) - mp.dps)
            raise PrecisionError(
                "panel collapsed to working-precision spacing before reaching tolerance",
                need,
            )
        left = _make_panel(f, x0, x2, f0, f1, f2)
        right = _make_panel(f, x2, x4, f2, f3, f4)
        total_err += left[8] + right[8] - err
        heapq.heappush(heap, (-left[8], seq, left))
        seq += 1
        heapq.heappush(heap, (-right[8], seq, right))
        seq += 1

    panels = sorted((entry[2] for entry in heap), key=lambda p: p[0])
    value = mp.fsum(p[7] for p in panels)
    err_est = mp.fsum(p[8] for p in panels)
    return value, err_est, len(panels)


def _one_sided_quartic_tail(d, two_k: int, T):
    """Upper bound for integral_T^inf (t-d)^(-2k) (t+d)^(-2k) dt, T > d."""
    return (T + d) ** (-two_k) * (T - d) ** (1 - two_k) / (two_k - 1)


def _min_lattice_steps(bound_at, half_tol, start: int = 1) -> int:
    """Smallest integer m >= start with bound_at(m) <= half_tol."""
    m = start
    while bound_at(m) > half_tol:
        m *= 2
        if m > 1 << 62:
            raise PrecisionError("tail bound does not reach the tolerance", mp.dps + 10)
    lo, hi = max(start, m // 2), m
    while lo < hi:
        mid = (lo + hi) // 2
        if bound_at(mid) <= half_tol:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _ink_integrand(n: int, k: int, t):
    c = mp.pi * n / 2
    u = t - c
    v = t + c
    # sin^2(u) = sin^2(v) by periodicity; fold the smaller-argument factor
    # into sinc^2 so both removable singularities evaluate by their limits.
    if abs(u) <= abs(v):
        base = _sinc_sq_mp(u) / (v * v)
    else:
        base = _sinc_sq_mp(v) / (u * u)
    return base**k


def quad_ink(
    idx: IntegralIndex, tol, dps: int = DEFAULT_ORACLE_DPS, min_steps: int = 1
) -> QuadratureResult:
    """Adaptive quadrature of the defining kernel integral for I(n, k).

    ``tol`` is an absolute tolerance on the result; half of it is spent on
    the certified truncation tail, half on the panel budget.  ``min_steps``
    forces a larger truncation lattice (soundness-testing hook).
    """
    n, k = idx.n, idx.k
    with mp.workdps(dps):
        tol_mp = mp.mpf(tol)
        if tol_mp <= 0:
            raise ValueError("tolerance must be positive")
        c = mp.pi * n / 2
        central = [c + i * mp.pi for i in range(-(n + 2), 3)]
        _roundoff_precheck(
            _magnitude_probe(lambda t: _ink_integrand(n, k, t), central), tol_mp / 2
        )

        def tail_at(m: int):
            return 2 * _one_sided_quartic_tail(c, 2 * k, c + m * mp.pi)

        m = max(_min_lattice_steps(tail_at, tol_mp / 2), min_steps)
        T = c + m * mp.pi
        tail = tail_at(m)
        breakpoints = [c + i * mp.pi for i in range(-(n + m), m + 1)]
        value, est, panels = _adaptive(
            lambda t: _ink_integrand(n, k, t), breakpoints, tol_mp / 2
        )
        return QuadratureResult(value, est, tail, panels, T)


def quad_entropic_moment(
    s: WellState, k: int, tol, dps: int = DEFAULT_ORACLE_DPS, min_steps: int = 1
) -> QuadratureResult:
    """Adaptive quadrature of integral over R of momentum_density^k.

    Bypasses the closed forms entirely; k = 1 is the normalization check.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"moment order must be an integer >= 1, got {k!r}")
    n = s.n
    with mp.workdps(dps):
        tol_mp = mp.mpf(tol)
        if tol_mp <= 0:
            raise ValueError("tolerance must be positive")
        a = mp.mpf(s.a.numerator) / s.a.denominator
        c = mp.pi * n / 2
        d = c / a
        env_scale = (a * mp.pi * n * n / 2) ** k / a ** (4 * k)
        central = [(c + i * mp.pi) / a for i in range(-(n + 2), 3)]
        _roundoff_precheck(
            _magnitude_probe(lambda p: momentum_density_mp(s, p) ** k, central), tol_mp / 2
        )

        def tail_at(m: int):
            return 2 * env_scale * _one_sided_quartic_tail(d, 2 * k, (c + m * mp.pi) / a)

        m = max(_min_lattice_steps(tail_at, tol_mp / 2), min_steps)
        T = (c + m * mp.pi) / a
        tail = tail_at(m)
        breakpoints = [(c + i * mp.pi) / a for i in range(-(n + m), m + 1)]
        value, est, panels = _adaptive(
            lambda p: momentum_density_mp(s, p) ** k, breakpoints, tol_mp / 2
        )
        return QuadratureResult(value, est, tail, panels, T)


def shannon_estimate(
    s: WellState, space: str, tol, dps: int = DEFAULT_ORACLE_DPS
) -> QuadratureResult:
    """Numerical differential Shannon entropy -integral rho ln(rho).

    No closed form is asserted; the estimate is meant for stability and
    sanity checks.  Zeros of the density are panel boundaries (the
    integrand extends by x*ln(x) -> 0 there).
    """
    n = s.n
    with mp.workdps(dps):
        tol_mp = mp.mpf(tol)
        if tol_mp <= 0:
            raise ValueError("tolerance must be positive")
        a = mp.mpf(s.a.numerator) / s.a.denominator
        if space == "position":

            def f(x):
                rho = position_density_mp(s, x)
                return -rho * mp.log(rho) if rho > 0 else mp.mpf(0)

            breakpoints = [-a + 2 * a * mp.mpf(i) / n for i in range(n + 1)]
            value, est, panels = _adaptive(f, breakpoints, tol_mp)
            return QuadratureResult(value, est, mp.mpf(0), panels, a)

        if space != "momentum":
            raise ValueError(f"unknown space {space!r}")

        c = mp.pi * n / 2
        d = c / a
        env_scale = mp.pi * n * n / (2 * a**3)  # gamma(p) <= env_scale/(p^2-d^2)^2

        def tail_at(m: int):
            T = (c + m * mp.pi) / a
            if T < 2 * d:
                return mp.inf
            env_T = env_scale / (T * T - d * d) ** 2
            if env_T > mp.exp(-1):
                return mp.inf
            # For p >= T >= 2d:  gamma <= c2 (p-d)^-2  and
            # ln(1/gamma) <= 2 ln 3 - ln(env_scale) + 4 ln(p-d),
            # and -x ln x is increasing on (0, 1/e).
            c2 = env_scale / (T + d) ** 2
            q = T - d
            alpha = 2 * mp.log(3) - mp.log(env_scale)
            return 2 * c2 * (alpha + 4 * mp.log(q) + 4) / q

        def f(p):
            g = momentum_density_mp(s, p)
            return -g * mp.log(g) if g > 0 else mp.mpf(0)

        central = [(c + i * mp.pi) / a for i in range(-(n + 2), 3)]
        _roundoff_precheck(_magnitude_probe(f, central), tol_mp / 2)
        m = _min_lattice_steps(tail_at, tol_mp / 2)
        T = (c + m * mp.pi) / a
        tail = tail_at(m)
        breakpoints = [(c + i * mp.pi) / a for i in range(-(n + m), m + 1)]
        value, est, panels = _adaptive(f, breakpoints, tol_mp / 2)
        return QuadratureResult(value, est, tail, panels, T)


# -- verification reports ------------------------------------------------------


@dataclass(frozen=True)
class VerificationEntry:
    quantity: str  # "ink" or "w"
    n: int
    k: int
    closed_form: object
    oracle: Optional[QuadratureResult]
    rel_diff: Optional[object]
    passed: bool
    note: str = ""


@dataclass(frozen=True)
class VerificationReport:
    """Grid comparison of the exact closed forms against the quadrature
    oracle; an entry passes iff its relative difference is within tolerance."""

    tolerance: object
    entries: list = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(e.passed for e in self.entries)

    def failed_entries(self) -> list:
        return [e for e in self.entries if not e.passed]

    def to_json_dict(self) -> dict:
        return {
            "tolerance": mp.nstr(mp.mpf(self.tolerance), 6),
            "all_pass": self.all_pass,
            "entries": [
                {
                    "quantity": e.quantity,
                    "n": e.n,
                    "k": e.k,
                    "closed_form": mp.nstr(mp.mpf(e.closed_form), 20),
                    "oracle": mp.nstr(mp.mpf(e.oracle.value), 20) if e.oracle else None,
                    "rel_diff": mp.nstr(mp.mpf(e.rel_diff), 6) if e.rel_diff is not None else None,
                    "error_estimate": mp.nstr(mp.mpf(e.oracle.abs_error_estimate), 6)
                    if e.oracle
                    else None,
                    "tail_bound": mp.nstr(mp.mpf(e.oracle.tail_bound), 6) if e.oracle else None,
                    "subdivisions": e.oracle.subdivisions if e.oracle else None,
                    "truncation_T": mp.nstr(mp.mpf(e.oracle.truncation_T), 10)
                    if e.oracle
                    else None,
                    "pass": e.passed,
                    "note": e.note,
                }
                for e in self.entries
            ],
        }

    def to_csv_text(self) -> str:
        lines = ["quantity,n,k,closed_form,oracle,rel_diff,pass"]
        for e in self.entries:
            oracle = mp.nstr(mp.mpf(e.oracle.value), 20) if e.oracle else ""
            rel = mp.nstr(mp.mpf(e.rel_diff), 6) if e.rel_diff is not None else ""
            lines.append(
                f"{e.quantity},{e.n},{e.k},{mp.nstr(mp.mpf(e.closed_form), 20)},"
                f"{oracle},{rel},{'true' if e.passed else 'false'}"
            )
        return "\n".join(lines) + "\n"


def run_verification(
    n_max: int,
    k_max: int,
    tol,
    dps: int = DEFAULT_ORACLE_DPS,
    a: Fraction = Fraction(1),
) -> VerificationReport:
    """Compare closed forms against the oracle over the (n, k) grid.

    Emits one entry per cell for the kernel integrals and one for the
    momentum entropic moments, in deterministic n-major order.  Cells whose
    tolerance is unattainable at the working precision are marked failed
    with an annotation instead of aborting the run.
    """
    if n_max < 1 or k_max < 1:
        raise ValueError("grid bounds must be >= 1")
    with mp.workdps(dps):
        tol_mp = mp.mpf(tol)
    if tol_mp <= 0:
        raise ValueError("tolerance must be positive")

    entries: list[VerificationEntry] = []
    for quantity in ("ink", "w"):
        for n in range(1, n_max + 1):
            state = WellState(n, a)
            for k in range(1, k_max + 1):
                with mp.workdps(dps):
                    if quantity == "ink":
                        closed = pi_poly_eval(theorem1_ink(IntegralIndex(n, k)), dps).value
                    else:
                        closed = pi_poly_eval(
                            momentum_entropic_moment(state, k).exact_part, dps
                        ).value
                    abs_tol = tol_mp * abs(closed) / 2
                try:
                    if quantity == "ink":
                        qr = quad_ink(IntegralIndex(n, k), abs_tol, dps)
                    else:
                        qr = quad_entropic_moment(state, k, abs_tol, dps)
                    with mp.workdps(dps):
                        rel = abs(closed - qr.value) / abs(closed)
                        passed = bool(rel <= tol_mp)
                    entries.append(
                        VerificationEntry(quantity, n, k, closed, qr, rel, passed)
                    )
                except PrecisionError as exc:
                    entries.append(
                        VerificationEntry(
                            quantity, n, k, closed, None, None, False, note=str(exc)
                        )
                    )
    return VerificationReport(tol_mp, entries)
