"""Component elimination in the crossed product and the two stable-rank
certificates built on it.

Starting from ``a = sum_i a_i delta^i`` the cascade

    a^(1,j)   = (alpha^j(a_0) delta^0 - a_j delta^j) * a
    a^(k+1,j) = a^(k,j+1)_j delta^j * a^(k,1)
                - (delta^j * a^(k,1))_j delta^0 * a^(k,j+1)

zeroes out ``k`` consecutive delta-components at stage ``k`` and terminates
in an element supported on ``delta^0`` alone.  Every stage is reached by
left multiplication, and the same recursion applied to the multipliers
tracks an explicit witness ``L^(k,j)`` with ``L^(k,j) * a = a^(k,j)``.

Two certificate types come out of this machinery:

* ``BezoutCertificate`` — cofactors exhibiting ``delta^0`` in the left
  ideal generated by a perturbed pair, the witness that pairs generate
  densely (stable rank at most two).
* ``WindingObstruction`` — the winding number of the determinant loop of
  the matrix embedding, the witness that single elements near the
  coordinate function cannot generate (stable rank at least two).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .algebra import CrossedElement, GroupSpec, det_on_circle, matrix_embedding
from .errors import CoprimalityFailure, GroupMismatch, GroupTooSmall, PerturbationExhausted
from .poly import Poly, roots, sylvester_bezout, winding_number

CERTIFICATE_TOL = 1e-6
VERIFY_AGREEMENT_TOL = 1e-9
PERTURB_MAX_ATTEMPTS = 64
SEPARATION_BASE = 1e-4
_TINY = 1e-300


@dataclass(frozen=True)
class EliminationTrace:
    """All cascade stages for one input, with their left multipliers.

    ``levels[(k, j)]`` holds the stage elements for ``1 <= k <= n-1`` and
    ``1 <= j <= n-k``; ``multipliers[(k, j)]`` the witnesses proving each
    stage lies in the left ideal of the input.
    """

    input: CrossedElement
    levels: Mapping[tuple[int, int], CrossedElement]
    multipliers: Mapping[tuple[int, int], CrossedElement]

    def level(self, k: int, j: int) -> CrossedElement:
        return self.levels[(k, j)]

    def multiplier(self, k: int, j: int) -> CrossedElement:
        return self.multipliers[(k, j)]

    @property
    def top(self) -> CrossedElement:
        """The fully eliminated stage, supported on ``delta^0``."""
        n = self.input.spec.n
        return self.levels[(n - 1, 1)]

    @property
    def top_poly(self) -> Poly:
        return self.top.component(0)

    def multiplier_residual(self, k: int, j: int) -> float:
        """Norm of ``L^(k,j) * input - a^(k,j)``; zero up to round-off."""
        return (self.multipliers[(k, j)] * self.input - self.levels[(k, j)]).l1_norm()

    def vanishing_residual(self, k: int, j: int) -> float:
        """Relative mass of the components the stage is supposed to kill."""
        lvl = self.levels[(k, j)]
        n = self.input.spec.n
        window = sum(lvl.component((j + t) % n).wiener_norm() for t in range(k))
        return window / max(lvl.l1_norm(), _TINY)

    def top_support_residual(self) -> float:
        """Relative mass of the top stage outside the ``delta^0`` slot."""
        top = self.top
        off = sum(top.component(g).wiener_norm() for g in range(1, self.input.spec.n))
        return off / max(top.l1_norm(), _TINY)


def eliminate(a: CrossedElement) -> EliminationTrace:
    """Run the full cascade on ``a`` while tracking left multipliers."""
    spec = a.spec
    n = spec.n
    if n < 2:
        raise GroupTooSmall(
            "order-1 elements are already supported on delta^0; nothing to eliminate")

    levels: dict[tuple[int, int], CrossedElement] = {}
    mults: dict[tuple[int, int], CrossedElement] = {}

    for j in range(1, n):
        left = (CrossedElement.monomial(spec, 0, spec.twist(a.component(0), j))
                - CrossedElement.monomial(spec, j, a.component(j)))
        mults[(1, j)] = left
        levels[(1, j)] = left * a

    for k in range(1, n - 1):
        for j in range(1, n - k):
            c_head = levels[(k, j + 1)].component(j)
            # (delta^j * a^(k,1))_j is the twist of the identity component
            c_tail = spec.twist(levels[(k, 1)].component(0), j)
            head = CrossedElement.monomial(spec, j, c_head)
            tail = CrossedElement.monomial(spec, 0, c_tail)
            levels[(k + 1, j)] = head * levels[(k, 1)] - tail * levels[(k, j + 1)]
            mults[(k + 1, j)] = head * mults[(k, 1)] - tail * mults[(k, j + 1)]

    return EliminationTrace(a, levels, mults)


def closed_form_top_n2(a: CrossedElement) -> CrossedElement:
    """Order-2 top stage in closed form: ``(alpha(a_0) a_0 - a_1 alpha(a_1)) delta^0``."""
    spec = a.spec
    if spec.n != 2:
        raise ValueError("closed form is for order 2")
    a0, a1 = a.component(0), a.component(1)
    top = spec.twist(a0, 1) * a0 - a1 * spec.twist(a1, 1)
    return CrossedElement.monomial(spec, 0, top)


def closed_form_top_n3(a: CrossedElement) -> CrossedElement:
    """Order-3 top stage in closed form (four twisted 2-term factors)."""
    spec = a.spec
    if spec.n != 3:
        raise ValueError("closed form is for order 3")
    a0, a1, a2 = (a.component(i) for i in range(3))
    al = spec.twist
    t1 = al(a0, 2) * a1 - a2 * al(a2, 2)
    t2 = al(a0, 2) * al(a2, 1) - al(a1, 1) * al(a1, 2)
    t3 = al(a0, 2) * al(a0, 1) - al(a1, 1) * al(a2, 2)
    t4 = al(a0, 2) * a0 - a2 * al(a1, 2)
    return CrossedElement.monomial(spec, 0, t1 * t2 - t3 * t4)


@dataclass(frozen=True)
class ScalingReport:
    """Homogeneity data: each stage ``(k, j)`` of the scaled input should be
    ``scale**(2**k)`` times the original stage."""

    scale: complex
    deviations: Mapping[tuple[int, int], float]

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values())

    def ok(self, tol: float = 1e-8) -> bool:
        return self.max_deviation < tol


def homogeneity_check(a: CrossedElement, scale: complex) -> ScalingReport:
    """Compare ``eliminate(scale * a)`` against the predicted stage scaling."""
    if scale == 0:
        raise ValueError("scale must be nonzero")
    base = eliminate(a)
    scaled = eliminate(scale * a)
    deviations = {}
    for key, lvl in base.levels.items():
        k = key[0]
        expected = (scale ** (2 ** k)) * lvl
        err = (scaled.levels[key] - expected).l1_norm()
        deviations[key] = err / max(expected.l1_norm(), 1.0)
    return ScalingReport(scale, deviations)


def _min_separation(points: Iterable[complex], avoid: Iterable[complex]) -> float:
    pairs = [(p, s) for p in points for s in avoid]
    if not pairs:
        return math.inf
    return min(abs(p - s) for p, s in pairs)


def perturb_avoiding(a: CrossedElement, avoid: Iterable[complex], eps: float,
                     rng: np.random.Generator,
                     max_attempts: int = PERTURB_MAX_ATTEMPTS,
                     force: bool = False) -> CrossedElement:
    """Nudge the constant coefficient of ``a_0`` until the top-stage roots
    clear the set ``avoid``.

    Returns ``b`` with ``|a - b| < eps``, differing from ``a`` only in the
    constant coefficient of the identity component, whose top stage is
    nonzero with every root at distance greater than
    ``1e-4 * (1 + max|avoid|)`` from every avoided point.  The unperturbed
    input is accepted when it already qualifies, unless ``force`` asks for
    a fresh draw.  Attempt ``t`` adds a uniformly random phase of modulus
    ``eps/2 * (1 - t/128)``; after ``max_attempts`` failures the input is
    deemed pathological.
    """
    if eps <= 0:
        raise ValueError("perturbation budget must be positive")
    avoid = [complex(s) for s in avoid]
    threshold = SEPARATION_BASE * (1.0 + max((abs(s) for s in avoid), default=0.0))
    spec = a.spec

    best_sep: float | None = None

    def admissible(candidate: CrossedElement) -> bool:
        nonlocal best_sep
        top = eliminate(candidate).top_poly
        if top.is_zero:
            return False
        if not avoid:
            return True
        if top.degree == 0:
            return True
        sep = _min_separation(roots(top), avoid)
        if best_sep is None or sep > best_sep:
            best_sep = sep
        return sep > threshold

    if not force and admissible(a):
        return a

    for t in range(1, max_attempts + 1):
        modulus = 0.5 * eps * (1.0 - t / 128.0)
        shift = modulus * np.exp(2j * np.pi * rng.uniform())
        comps = list(a.comps)
        comps[0] = comps[0] + Poly.constant(shift)
        candidate = CrossedElement(spec, comps)
        if admissible(candidate):
            return candidate

    raise PerturbationExhausted(
        f"no admissible perturbation within {max_attempts} attempts "
        f"(separation threshold {threshold:.3e})",
        attempts=max_attempts, best_separation=best_sep)


@dataclass(frozen=True)
class BezoutCertificate:
    """Self-contained witness that a pair near ``(x, y)`` generates the
    crossed product as a left ideal.

    Stores the inputs, the perturbed approximants, and cofactors with
    ``c*a + d*b = delta^0``; re-verification needs two convolutions and a
    norm, nothing from the generator's internal state.
    """

    x: CrossedElement
    y: CrossedElement
    a: CrossedElement
    b: CrossedElement
    c: CrossedElement
    d: CrossedElement
    epsilon: float
    residual: float
    distance_x: float
    distance_y: float
    tolerance: float = CERTIFICATE_TOL
    seed: int | None = None

    @property
    def spec(self) -> GroupSpec:
        return self.x.spec


def bezout_certificate(x: CrossedElement, y: CrossedElement, eps: float,
                       rng: np.random.Generator, seed: int | None = None,
                       max_retries: int = 8) -> BezoutCertificate:
    """Produce a Bezout certificate for a pair within ``eps`` of ``(x, y)``.

    Perturbs ``x`` so its top stage is nonzero, perturbs ``y`` so the two
    top-stage polynomials share no root anywhere in the plane, then solves
    for cofactors of the two ``delta^0`` polynomials and pulls them back
    through the tracked multipliers.  Coprimality is demanded over all of
    the complex plane (stronger than on the disk alone) so the cofactors
    stay polynomial.

    An occasional draw produces top stages whose resultant is so small
    that the cofactor residual cannot be certified in double precision;
    each retry redraws both perturbations (within the same budgets), which
    reshuffles the resultant by orders of magnitude.
    """
    if x.spec != y.spec:
        raise GroupMismatch("certificate inputs live over different groups")
    spec = x.spec
    if spec.n < 2:
        raise GroupTooSmall("certificates need group order at least 2")

    half = eps / 2.0
    n = spec.n
    last: CoprimalityFailure | None = None
    for attempt in range(max_retries):
        fresh = attempt > 0
        a = perturb_avoiding(x, (), half, rng, force=fresh)
        trace_a = eliminate(a)
        fa = trace_a.top_poly
        avoid = roots(fa) if fa.degree >= 1 else []
        b = perturb_avoiding(y, avoid, half, rng, force=fresh)
        trace_b = eliminate(b)
        fb = trace_b.top_poly

        try:
            p, q = sylvester_bezout(fa, fb)
        except CoprimalityFailure as exc:
            last = exc
            continue
        c = CrossedElement.monomial(spec, 0, p) * trace_a.multiplier(n - 1, 1)
        d = CrossedElement.monomial(spec, 0, q) * trace_b.multiplier(n - 1, 1)

        residual = (c * a + d * b - CrossedElement.unit(spec)).l1_norm()
        if residual >= CERTIFICATE_TOL:
            last = CoprimalityFailure(
                f"assembled certificate residual {residual:.3e} exceeds "
                f"{CERTIFICATE_TOL:.0e}", residual=residual)
            continue
        return BezoutCertificate(
            x=x, y=y, a=a, b=b, c=c, d=d, epsilon=eps, residual=residual,
            distance_x=(x - a).l1_norm(), distance_y=(y - b).l1_norm(),
            seed=seed)
    raise last


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of an independent re-check of a stored certificate."""

    kind: str
    ok: bool
    failures: tuple[str, ...]
    recomputed: Mapping[str, float] = field(default_factory=dict)


def verify_bezout(cert: BezoutCertificate) -> VerificationReport:
    """Re-verify a Bezout certificate from its stored data only."""
    failures = []
    residual = (cert.c * cert.a + cert.d * cert.b
                - CrossedElement.unit(cert.spec)).l1_norm()
    dist_x = (cert.x - cert.a).l1_norm()
    dist_y = (cert.y - cert.b).l1_norm()
    if residual >= cert.tolerance:
        failures.append(f"residual {residual:.3e} >= tolerance {cert.tolerance:.0e}")
    if dist_x >= cert.epsilon:
        failures.append(f"x-distance {dist_x:.3e} >= epsilon {cert.epsilon}")
    if dist_y >= cert.epsilon:
        failures.append(f"y-distance {dist_y:.3e} >= epsilon {cert.epsilon}")
    for name, fresh, stored in (("residual", residual, cert.residual),
                                ("distance_x", dist_x, cert.distance_x),
                                ("distance_y", dist_y, cert.distance_y)):
        if abs(fresh - stored) > VERIFY_AGREEMENT_TOL:
            failures.append(
                f"stored {name} {stored:.12e} disagrees with recomputed {fresh:.12e}")
    return VerificationReport(
        kind="bezout", ok=not failures, failures=tuple(failures),
        recomputed={"residual": residual, "distance_x": dist_x, "distance_y": dist_y})


@dataclass(frozen=True)
class WindingObstruction:
    """Witness that no single element near the coordinate function can
    generate: its determinant loop winds ``n`` times around zero, which is
    homotopy-stable under perturbations up to the stated margin."""

    element: CrossedElement
    circle_min: float
    winding: int
    samples: int
    delta: float
    trials: int
    trial_windings: tuple[int, ...]
    trial_circle_min: float | None = None
    seed: int | None = None

    @property
    def spec(self) -> GroupSpec:
        return self.element.spec


def _margin_holds(n: int, delta: float, exponent: int) -> bool:
    return (1.0 - delta) ** exponent > math.factorial(n) * delta ** exponent


def winding_obstruction(spec: GroupSpec, delta: float, rng: np.random.Generator,
                        samples: int = 1024, trials: int = 10,
                        margin_exponent: int | None = None,
                        seed: int | None = None) -> WindingObstruction:
    """Build the obstruction for ``z * delta^0`` over the given group.

    Checks the margin ``(1 - delta)**e > n! * delta**e`` (``e`` defaults to
    the group order), computes the determinant loop winding at ``samples``
    and ``4 * samples`` points, and confirms the count survives ``trials``
    random perturbations of summed norm below ``delta``.
    """
    if delta <= 0 or delta >= 1:
        raise ValueError("delta must lie in (0, 1)")
    exponent = spec.n if margin_exponent is None else margin_exponent
    if not _margin_holds(spec.n, delta, exponent):
        raise ValueError(
            f"margin (1-delta)^{exponent} > {spec.n}! * delta^{exponent} fails "
            f"for delta={delta}")

    element = CrossedElement.monomial(spec, 0, Poly.monomial(1))
    path = det_on_circle(matrix_embedding(element), samples)
    w = winding_number(path)
    w_fine = winding_number(det_on_circle(matrix_embedding(element), 4 * samples))
    if w != w_fine:
        raise ValueError(
            f"winding disagrees across sample counts ({w} vs {w_fine}); "
            "raise the sample count")

    trial_windings = []
    trial_min = None
    for _ in range(trials):
        bump = _random_perturbation(spec, delta, rng)
        perturbed_path = det_on_circle(matrix_embedding(element + bump), samples)
        trial_windings.append(winding_number(perturbed_path))
        low = perturbed_path.min_modulus
        trial_min = low if trial_min is None else min(trial_min, low)

    return WindingObstruction(
        element=element, circle_min=path.min_modulus, winding=w,
        samples=samples, delta=delta, trials=trials,
        trial_windings=tuple(trial_windings), trial_circle_min=trial_min,
        seed=seed)


def _random_perturbation(spec: GroupSpec, delta: float,
                         rng: np.random.Generator) -> CrossedElement:
    """Random element of summed norm strictly below ``delta``."""
    comps = []
    for _ in range(spec.n):
        coeffs = rng.uniform(-1.0, 1.0, size=4) + 1j * rng.uniform(-1.0, 1.0, size=4)
        comps.append(Poly(coeffs))
    raw = CrossedElement(spec, comps)
    target = delta * rng.uniform(0.25, 0.9)
    norm = raw.l1_norm()
    if norm == 0.0:
        return raw
    return raw * (target / norm)


def verify_winding(obs: WindingObstruction) -> VerificationReport:
    """Re-verify an obstruction: recompute the loop at the stored and a
    quadrupled sample count and compare against stored values."""
    failures = []
    recomputed: dict[str, float] = {}
    try:
        path = det_on_circle(matrix_embedding(obs.element), obs.samples)
        w = winding_number(path)
        w_fine = winding_number(
            det_on_circle(matrix_embedding(obs.element), 4 * obs.samples))
        recomputed.update(winding=float(w), winding_fine=float(w_fine),
                          circle_min=path.min_modulus)
        if w != obs.winding:
            failures.append(f"stored winding {obs.winding} != recomputed {w}")
        if w_fine != obs.winding:
            failures.append(f"winding changed at 4x samples: {w_fine}")
        if abs(path.min_modulus - obs.circle_min) > VERIFY_AGREEMENT_TOL:
            failures.append(
                f"stored circle minimum {obs.circle_min:.12e} disagrees with "
                f"recomputed {path.min_modulus:.12e}")
        if obs.winding != obs.spec.n:
            failures.append(
                f"winding {obs.winding} differs from group order {obs.spec.n}")
        if any(tw != obs.winding for tw in obs.trial_windings):
            failures.append("a perturbation trial changed the winding count")
    except Exception as exc:  # determinant through zero, undersampled, ...
        failures.append(f"recomputation failed: {exc}")
    return VerificationReport(
        kind="winding", ok=not failures, failures=tuple(failures),
        recomputed=recomputed)
