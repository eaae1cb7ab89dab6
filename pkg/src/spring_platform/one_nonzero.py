"""Equilibrium solver for the configuration where only the first spring
(base origin to top origin) has a nonzero free length.

The free length makes the force and moment equations rational in the first
spring length L1. Multiplying through by L1 gives the unsquared pair
A L1 = B and C L1 = D, built here from the exact zero-free-length residual
forms so the defining identities hold to machine precision. Squaring and
substituting the closed form of L1 squared turns the pair into two
quartics in L whose coefficients depend on beta only; the 8x8 dialytic
determinant over the tan-half variable then yields a degree-48 polynomial.
Every root is back-substituted, polished on the exact squared pair, and
finally filtered by the unsquared residuals: squaring admits sign-flipped
root sets and the tan-half pole contributes its own factor, so a
substantial share of the 48 candidates is extraneous by construction.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .errors import (DegreeMismatch, InterpolationMismatch, MechanismError,
                     ProbeSingularity, WrongFreeLengthPattern)
from .geometry import Point2
from .mechanism import (MechanismParams, point_e, pose_from_trig,
                        residual_pair)
from .polynomials import CPolynomial, back_substitute, poly_roots, \
    polymatrix_det, solve_dense
from .solutions import (EquilibriumSolution, mark_real, pair_conjugates,
                        sort_solutions)

ACCEPT_REL_TOL = 1e-6
RESULTANT_DEGREE = 48
CLEAR_EXPONENT = 24          # trig-degree bound: three pole orders per row
CONVERGED_SQ_TOL = 1e-9      # squared-pair residual that counts as converged

_LONGDOUBLE_OK = np.finfo(np.longdouble).eps < 1e-18


def _require_pattern(params: MechanismParams) -> None:
    l01, l02, l03 = params.free_lengths
    if not (l01 > 0 and l02 == 0 and l03 == 0):
        raise WrongFreeLengthPattern(
            f"need L01 > 0 and L02 = L03 = 0, got {params.free_lengths}")


@dataclass(frozen=True)
class UnsquaredTerms:
    """Values of the pair A L1 = B, C L1 = D at one (L, beta) sample,
    together with the squared first-spring length."""

    force_coef: complex       # A
    force_rhs: complex        # B
    moment_coef: complex      # C
    moment_rhs: complex       # D
    l1_squared: complex


def _terms_from_trig(length, cos_beta, sin_beta, params: MechanismParams,
                     e: Point2) -> UnsquaredTerms:
    ca = math.cos(params.surface_angle)
    sa = math.sin(params.surface_angle)
    k1, k2, k3 = params.stiffness
    l01 = params.free_lengths[0]
    pose = pose_from_trig(length, cos_beta, sin_beta, params, e)
    o1 = params.base_origin
    a1 = params.a1_fixed
    d_o2 = pose.o2 - o1
    d_a2o1 = pose.a2 - o1
    d_a2a1 = pose.a2 - a1
    force_coef = ((k1 * d_o2.x + k2 * d_a2o1.x + k3 * d_a2a1.x) * ca
                  + (k1 * d_o2.y + k2 * d_a2o1.y + k3 * d_a2a1.y) * sa)
    r1 = o1 - pose.p
    r3 = a1 - pose.p
    moment_coef = (r1.cross(k1 * d_o2) + r1.cross(k2 * d_a2o1)
                   + r3.cross(k3 * d_a2a1))
    force_rhs = k1 * l01 * (d_o2.x * ca + d_o2.y * sa)
    moment_rhs = k1 * l01 * r1.cross(d_o2)
    l1_sq = d_o2.x * d_o2.x + d_o2.y * d_o2.y
    return UnsquaredTerms(force_coef, force_rhs, moment_coef, moment_rhs, l1_sq)


def abcd_at(length, beta, params: MechanismParams, e: Point2):
    """(A, B, C, D) of the unsquared pair at one (L, beta); complex
    arguments are fine. A and C are the zero-free-length residual forms,
    B and D carry the free-length correction."""
    _require_pattern(params)
    cb, sb = (cmath.cos(beta), cmath.sin(beta)) if isinstance(beta, complex) \
        else (math.cos(beta), math.sin(beta))
    t = _terms_from_trig(length, cb, sb, params, e)
    return t.force_coef, t.force_rhs, t.moment_coef, t.moment_rhs


def _squared_pair_values(length, cos_beta, sin_beta, params, e):
    t = _terms_from_trig(length, cos_beta, sin_beta, params, e)
    f = t.force_coef ** 2 * t.l1_squared - t.force_rhs ** 2
    m = t.moment_coef ** 2 * t.l1_squared - t.moment_rhs ** 2
    f_scale = abs(t.force_coef ** 2 * t.l1_squared) + abs(t.force_rhs ** 2)
    m_scale = abs(t.moment_coef ** 2 * t.l1_squared) + abs(t.moment_rhs ** 2)
    return f, m, f_scale, m_scale


def probe_radius(params: MechanismParams, e: Point2) -> float:
    """L-probe circle radius matched to the geometry scale, which keeps
    the quartic coefficient extraction well balanced."""
    d = e - params.base_origin
    return max(2.0, 0.5 * abs(d.norm()) + params.d_o2a2)


def quartic_pair(cos_beta, sin_beta, params: MechanismParams, e: Point2,
                 dtype=complex):
    """Ascending coefficients (F, M), each a quartic in L, of the squared
    pair at fixed beta trig values.

    Coefficients are recovered from five probe evaluations on a circle of
    L values (an interpolation that is exact for a quartic) and validated
    at three held-out L nodes; a failed validation re-probes once on a
    shifted circle before raising ProbeSingularity.
    """
    cb, sb = dtype(cos_beta), dtype(sin_beta)
    last_err = None
    base_radius = probe_radius(params, e)
    for radius in (base_radius, 1.55 * base_radius):
        nodes = [dtype(radius) * dtype(cmath.exp(2j * cmath.pi * j / 5))
                 for j in range(5)]
        f_vals, m_vals = [], []
        for node in nodes:
            t = _terms_from_trig(node, cb, sb, params, e)
            f_vals.append(t.force_coef ** 2 * t.l1_squared - t.force_rhs ** 2)
            m_vals.append(t.moment_coef ** 2 * t.l1_squared - t.moment_rhs ** 2)
        # interpolate through the actual nodes (an exact Vandermonde solve,
        # so node roundoff cannot leak across the coefficient scales)
        vander = np.array([[node ** k for k in range(5)] for node in nodes],
                          dtype=dtype)
        f_coeffs = solve_dense(vander, np.array(f_vals, dtype=dtype))
        m_coeffs = solve_dense(vander, np.array(m_vals, dtype=dtype))
        ok = True
        for held in (0.61 * radius, dtype(1.42j) * dtype(radius) / 2,
                     dtype(-0.83 + 0.4j) * dtype(radius)):
            t = _terms_from_trig(dtype(held), cb, sb, params, e)
            direct_f = t.force_coef ** 2 * t.l1_squared - t.force_rhs ** 2
            direct_m = t.moment_coef ** 2 * t.l1_squared - t.moment_rhs ** 2
            interp_f = _horner(f_coeffs, dtype(held))
            interp_m = _horner(m_coeffs, dtype(held))
            # blend in the coefficient magnitude at the node so cancelling
            # held-out values do not turn roundoff into a spurious mismatch
            mag = float(max(1.0, abs(complex(held))) ** 4)
            scale_f = abs(direct_f) + 1e-3 * float(np.sum(np.abs(f_coeffs))) * mag
            scale_m = abs(direct_m) + 1e-3 * float(np.sum(np.abs(m_coeffs))) * mag
            if (abs(interp_f - direct_f) > 1e-9 * scale_f
                    or abs(interp_m - direct_m) > 1e-9 * scale_m):
                ok = False
                break
        if ok:
            return f_coeffs, m_coeffs
        last_err = f"probe circle radius {radius} failed held-out check"
    raise ProbeSingularity(last_err or "probing failed")


def _horner(coeffs, x):
    acc = coeffs[-1]
    for c in coeffs[-2::-1]:
        acc = acc * x + c
    return acc


def quartic_pair_at(x_beta, params: MechanismParams,
                    e: Point2 | None = None):
    """Quartic pair at a tan-half value (10 ascending complex numbers)."""
    _require_pattern(params)
    if e is None:
        e = point_e(params)
    cb = (1 - x_beta * x_beta) / (1 + x_beta * x_beta)
    sb = 2 * x_beta / (1 + x_beta * x_beta)
    return quartic_pair(cb, sb, params, e)


def resultant_polynomial(params: MechanismParams,
                         e: Point2 | None = None) -> CPolynomial:
    """Eliminant of the squared quartic pair over the tan-half variable.

    Samples the 8x8 dialytic determinant, clears the tan-half denominators
    with (1 + x^2) to the trig-degree power, and interpolates; the clearing
    exponent starts at the structural bound and grows until the held-out
    validation passes. Factors of (1 + x^2) beyond the expected degree are
    deflated; if the effective degree still differs from the expected 48 a
    DegreeMismatch warning is issued and the actual-degree polynomial is
    returned. Determinant samples run in extended precision when the
    platform provides it.
    """
    _require_pattern(params)
    if e is None:
        e = point_e(params)
    dtype = np.clongdouble if _LONGDOUBLE_OK else complex

    last_exc: Exception | None = None
    for extra in range(3):
        exponent = CLEAR_EXPONENT + extra
        bound = RESULTANT_DEGREE + 2 * extra

        def evaluate(x):
            xd = dtype(x)
            cb = (dtype(1) - xd * xd) / (dtype(1) + xd * xd)
            sb = dtype(2) * xd / (dtype(1) + xd * xd)
            f_coeffs, m_coeffs = quartic_pair(cb, sb, params, e, dtype=dtype)
            matrix = np.zeros((8, 8), dtype=dtype)
            fd = f_coeffs[::-1]
            md = m_coeffs[::-1]
            for shift in range(4):
                matrix[2 * shift, 3 - shift: 8 - shift] = fd
                matrix[2 * shift + 1, 3 - shift: 8 - shift] = md
            return matrix

        def clear(x, _exp=exponent):
            xd = dtype(x)
            return (dtype(1) + xd * xd) ** _exp

        try:
            poly = polymatrix_det(evaluate, bound, clear=clear)
        except InterpolationMismatch as exc:
            last_exc = exc
            continue
        # all inputs are real, so the eliminant has real coefficients;
        # dropping the imaginary sampling noise restores exact conjugate
        # symmetry of the root set
        wide = None
        if poly.wide is not None:
            wide = poly.wide.real.astype(poly.wide.dtype)
        poly = CPolynomial(poly.coeffs.real, wide=wide)
        while poly.degree > RESULTANT_DEGREE:
            quotient, rem = poly.deflate_unit_quadratic()
            if rem > 1e-7:
                break
            poly = quotient
        if poly.degree != RESULTANT_DEGREE:
            warnings.warn(
                f"eliminant degree {poly.degree} after pole deflation "
                f"(expected {RESULTANT_DEGREE})", DegreeMismatch, stacklevel=2)
        return poly
    raise last_exc if last_exc is not None else InterpolationMismatch("no fit")


def _polish_squared(x, length, params, e, steps: int = 40):
    """Damped Newton on the exact squared pair in (x, L).

    The iteration differentiates the raw (holomorphic) pair and keeps a
    step only when the residual magnitude drops, so candidates that are
    not actual solutions (pole artifacts) stay put.
    """
    def values(xv, lv):
        cb = (1 - xv * xv) / (1 + xv * xv)
        sb = 2 * xv / (1 + xv * xv)
        return _squared_pair_values(lv, cb, sb, params, e)

    try:
        f, m, _, _ = values(x, length)
    except ZeroDivisionError:
        return x, length
    norm = abs(f) + abs(m)
    for _ in range(steps):
        if norm == 0:
            break
        hx = 1e-7 * (1 + abs(x))
        hl = 1e-7 * (1 + abs(length))
        try:
            fx, mx, _, _ = values(x + hx, length)
            fl, ml, _, _ = values(x, length + hl)
        except ZeroDivisionError:
            break
        j11, j12 = (fx - f) / hx, (fl - f) / hl
        j21, j22 = (mx - m) / hx, (ml - m) / hl
        det = j11 * j22 - j12 * j21
        if det == 0:
            break
        dx = (f * j22 - m * j12) / det
        dl = (j11 * m - j21 * f) / det
        cap = 1.0 + abs(x)
        if abs(dx) > cap:
            scale = cap / abs(dx)
            dx *= scale
            dl *= scale
        try:
            nf, nm, _, _ = values(x - dx, length - dl)
        except ZeroDivisionError:
            break
        if abs(nf) + abs(nm) >= norm:
            break
        x, length = x - dx, length - dl
        f, m, norm = nf, nm, abs(nf) + abs(nm)
        if abs(dx) + abs(dl) < 1e-15 * (1 + abs(x) + abs(length)):
            break
    return x, length


def _squared_rel(x, length, params, e) -> float:
    cb = (1 - x * x) / (1 + x * x)
    sb = 2 * x / (1 + x * x)
    f, m, fs, ms = _squared_pair_values(length, cb, sb, params, e)
    return max(abs(f) / (fs + 1e-30), abs(m) / (ms + 1e-30))


@lru_cache(maxsize=8)
def _fast_probe(radius: float):
    """Probe nodes on one circle plus the inverse of their Vandermonde."""
    nodes = tuple(radius * cmath.exp(2j * cmath.pi * j / 5) for j in range(5))
    inv = np.linalg.inv(np.array([[n ** k for k in range(5)] for n in nodes]))
    return nodes, inv


def _quartic_pair_fast(x, params, e):
    """Quartic pair at a tan-half value without held-out validation; used
    inside refinement loops after the sampling stage has already validated
    the construction many times over."""
    nodes, vander_inv = _fast_probe(probe_radius(params, e))
    cb = (1 - x * x) / (1 + x * x)
    sb = 2 * x / (1 + x * x)
    f_vals = np.empty(5, dtype=complex)
    m_vals = np.empty(5, dtype=complex)
    for i, node in enumerate(nodes):
        t = _terms_from_trig(node, cb, sb, params, e)
        f_vals[i] = t.force_coef ** 2 * t.l1_squared - t.force_rhs ** 2
        m_vals[i] = t.moment_coef ** 2 * t.l1_squared - t.moment_rhs ** 2
    return vander_inv @ f_vals, vander_inv @ m_vals


def _branch_state(x, near_length, params, e):
    """(length, m_value, m_scale) on the first-quartic root branch nearest
    to near_length, or Nones when the quartic cannot be solved."""
    f_coeffs, m_coeffs = _quartic_pair_fast(x, params, e)
    try:
        roots = poly_roots(CPolynomial(f_coeffs))
    except MechanismError:
        return None, None, None
    length = roots[int(np.argmin(np.abs(roots - near_length)))]
    m_val = _horner(m_coeffs, length)
    m_scale = float(np.sum(np.abs(m_coeffs))) * max(1.0, abs(length)) ** 4
    return length, m_val, m_scale


def _follow_branch(x0, length_seed, params, e, steps: int = 30):
    """Refine a squared-pair solution by tracking one root branch of the
    first quartic while driving the second quartic to zero in x.

    Along the branch the first equation holds exactly, so the problem is a
    one-dimensional root find for the second; this stays robust where the
    joint Newton stalls between near-double solutions. Returns (x, L) or
    None when the iteration leaves the neighbourhood or fails to converge.
    """
    x = complex(x0)
    length, m_val, m_scale = _branch_state(x, length_seed, params, e)
    if length is None:
        return None
    for _ in range(steps):
        if abs(m_val) <= 1e-12 * m_scale:
            return x, length
        delta = 1e-7 * (1 + abs(x))
        length_d, m_d, _ = _branch_state(x + delta, length, params, e)
        if length_d is None:
            return None
        derivative = (m_d - m_val) / delta
        if derivative == 0:
            return None
        step = m_val / derivative
        cap = 0.1 * (1 + abs(x))
        if abs(step) > cap:
            step *= cap / abs(step)
        x = x - step
        if abs(x - x0) > 0.5 * (1 + abs(x0)):
            return None  # left the candidate's neighbourhood
        length, m_val, m_scale = _branch_state(x, length, params, e)
        if length is None:
            return None
    return (x, length) if abs(m_val) <= 1e-10 * m_scale else None


def _gap_grid_rescue(x0, params, e, radius: float, grid: int = 7):
    """Locate the best common-root point on a small grid around x0 and
    refine from there; the last resort for candidates whose neighbourhood
    holds near-double solutions."""
    best = None
    for dx in np.linspace(-radius, radius, grid):
        for dy in np.linspace(-radius, radius, grid):
            x = x0 + dx + 1j * dy
            f_coeffs, m_coeffs = _quartic_pair_fast(x, params, e)
            try:
                roots = poly_roots(CPolynomial(f_coeffs))
            except MechanismError:
                continue
            m_scale = float(np.sum(np.abs(m_coeffs))) + 1e-30
            for root in roots:
                gap = abs(_horner(m_coeffs, root)) / \
                    (m_scale * max(1.0, abs(root)) ** 4)
                if best is None or gap < best[0]:
                    best = (gap, x, root)
    if best is None:
        return None
    return _follow_branch(best[1], best[2], params, e)


def _classify_root(x, length, params, e, accept_tol) -> EquilibriumSolution:
    cb = (1 - x * x) / (1 + x * x)
    sb = 2 * x / (1 + x * x)
    t = _terms_from_trig(length, cb, sb, params, e)
    l1 = cmath.sqrt(t.l1_squared)
    rf = abs(t.force_coef * l1 - t.force_rhs)
    rm = abs(t.moment_coef * l1 - t.moment_rhs)
    f_scale = abs(t.force_coef * l1) + abs(t.force_rhs) + 1e-30
    m_scale = abs(t.moment_coef * l1) + abs(t.moment_rhs) + 1e-30
    rel = max(rf / f_scale, rm / m_scale)
    fsq, msq, fs, ms = _squared_pair_values(length, cb, sb, params, e)
    sq_rel = max(abs(fsq) / (fs + 1e-30), abs(msq) / (ms + 1e-30))
    beta = 2 * cmath.atan(x)
    real = mark_real(beta, complex(length))
    if real:
        beta = complex(beta.real)
        length = complex(complex(length).real)
    pose = pose_from_trig(length, cb, sb, params, e)
    try:
        fres, mres = residual_pair(pose, params)
        residual_force, residual_moment = abs(fres), abs(mres)
    except MechanismError:
        residual_force = residual_moment = math.inf
    return EquilibriumSolution(
        beta=complex(beta), length=complex(length),
        residual_force=float(residual_force),
        residual_moment=float(residual_moment),
        rel_residual=float(rel), is_real=real,
        accepted=bool(rel <= accept_tol), squared_residual=float(sq_rel))


def solve_one_nonzero_free_length(params: MechanismParams,
                                  accept_tol: float = ACCEPT_REL_TOL,
                                  ) -> list[EquilibriumSolution]:
    """All equilibrium candidates for the one-nonzero-free-length case.

    Every root of the degree-48 eliminant is returned with accepted or
    rejected status: accepted roots satisfy the unsquared pair to
    accept_tol (scale-normalized), rejected ones are the extraneous roots
    that squaring and the tan-half pole introduced (their squared-pair
    residuals are recorded for reporting). A genuine beta = pi common root
    of the quartic pair, invisible to the tan-half variable, would be
    appended separately.
    """
    _require_pattern(params)
    e = point_e(params)
    poly = resultant_polynomial(params, e)
    roots = poly_roots(poly)

    # Refinement. Eliminant roots inside flat clusters carry errors far
    # above the coefficient noise, so converged points are pooled,
    # deduplicated, and assigned back to the nearest candidate roots (one
    # entry per root). A cheap first pass handles well-conditioned roots;
    # candidates still unassigned afterwards explore the root branches of
    # the first quartic, where the second quartic reduces to a
    # one-dimensional root find, plus a local grid rescue.
    records = []
    pool: list[tuple[complex, complex, float]] = []

    def try_point(point, record):
        if point is None:
            return
        x, length = _polish_squared(point[0], point[1], params, e, steps=4)
        sq = _squared_rel(x, length, params, e)
        if sq <= CONVERGED_SQ_TOL:
            pool.append((x, length, sq))
        elif record["fail"] is None or sq < record["fail"][2]:
            record["fail"] = (x, length, sq)

    for x0 in roots:
        record = {
            "x0": x0,
            "near_pole": min(abs(x0 - 1j), abs(x0 + 1j)) < 0.15,
            "note": "",
            "fail": None,
        }
        f_coeffs, m_coeffs = quartic_pair_at(x0, params, e)
        try:
            back = back_substitute(f_coeffs, m_coeffs)
            if back.used_fallback:
                record["note"] = "back-substitution fallback"
            try_point(_polish_squared(x0, back.length, params, e), record)
        except MechanismError as exc:
            record["note"] = f"back-substitution failed: {exc}"
        records.append(record)

    def assign():
        distinct: list[tuple[complex, complex]] = []
        for x, length, sq in sorted(pool, key=lambda t: t[2]):
            if not any(abs(x - xd) + abs(length - ld)
                       < 1e-6 * (1 + abs(xd) + abs(ld))
                       for xd, ld in distinct):
                distinct.append((x, length))
        order = sorted(
            ((abs(records[i]["x0"] - xd), i, j)
             for j, (xd, ld) in enumerate(distinct)
             for i in range(len(records))),
            key=lambda t: t[0])
        assignment: dict[int, tuple[complex, complex]] = {}
        taken: set[int] = set()
        for _, i, j in order:
            if i in assignment or j in taken:
                continue
            assignment[i] = distinct[j]
            taken.add(j)
        return assignment

    assignment = assign()
    spacing = {}
    for i, record in enumerate(records):
        others = [abs(record["x0"] - r["x0"]) for k, r in enumerate(records)
                  if k != i]
        spacing[i] = min(others) if others else 0.1

    retry = [i for i, record in enumerate(records)
             if i not in assignment and not record["near_pole"]]
    for i in retry:
        record = records[i]
        x0 = record["x0"]
        f_coeffs, _ = _quartic_pair_fast(x0, params, e)
        try:
            branch_seeds = poly_roots(CPolynomial(f_coeffs))
        except MechanismError:
            branch_seeds = []
        for seed in branch_seeds:
            try_point(_follow_branch(x0, seed, params, e), record)
        radius = min(max(0.05, 2.0 * spacing[i]), 0.15)
        try_point(_gap_grid_rescue(x0, params, e, radius), record)
    if retry:
        assignment = assign()

    solutions = []
    for i, record in enumerate(records):
        x0, note = record["x0"], record["note"]
        if i in assignment:
            x, length = assignment[i]
            sol = _classify_root(x, length, params, e, accept_tol)
        elif record["fail"] is not None:
            sol = _classify_root(record["fail"][0], record["fail"][1],
                                 params, e, accept_tol)
            note = (note + "; " if note else "") + "refinement not converged"
        else:
            sol = EquilibriumSolution(
                beta=2 * cmath.atan(x0) if abs(1 + x0 * x0) > 1e-12
                else complex(math.pi),
                length=complex("nan"), residual_force=math.inf,
                residual_moment=math.inf, rel_residual=math.inf,
                is_real=False, accepted=False, squared_residual=math.inf)
        if record["near_pole"] and not sol.accepted \
                and sol.squared_residual > accept_tol:
            note = (note + "; " if note else "") + "tan-half pole artifact"
        if note:
            sol = replace(sol, note=note)
        solutions.append(sol)

    solutions.extend(_beta_pi_solutions(params, e, accept_tol))
    return sort_solutions(pair_conjugates(solutions))


def _beta_pi_solutions(params, e, accept_tol):
    """Common roots of the quartic pair at beta = pi, checked directly.

    Both quartics inherit the zeros of the squared first-spring length (a
    zero-length spring annihilates the free-length terms on both sides),
    so roots there are always nearly common without being mechanism
    solutions; they are excluded explicitly.
    """
    f_coeffs, m_coeffs = quartic_pair(-1.0, 0.0, params, e)
    out = []
    try:
        f_roots = poly_roots(CPolynomial(f_coeffs))
    except MechanismError:
        return out
    m_scale = float(np.sum(np.abs(m_coeffs))) + 1e-30
    for root in f_roots:
        m_val = _horner(np.asarray(m_coeffs, dtype=complex), root)
        if abs(m_val) > 1e-8 * m_scale * max(1.0, abs(root)) ** 4:
            continue
        t = _terms_from_trig(root, -1.0, 0.0, params, e)
        if abs(t.l1_squared) < 1e-6 * (1.0 + abs(root) ** 2):
            continue  # zero-length-spring artifact, not an equilibrium
        sol = _classify_root_beta_pi(root, params, e, accept_tol)
        out.append(sol)
    return out


def _classify_root_beta_pi(length, params, e, accept_tol):
    t = _terms_from_trig(length, -1.0, 0.0, params, e)
    l1 = cmath.sqrt(t.l1_squared)
    rf = abs(t.force_coef * l1 - t.force_rhs)
    rm = abs(t.moment_coef * l1 - t.moment_rhs)
    f_scale = abs(t.force_coef * l1) + abs(t.force_rhs) + 1e-30
    m_scale = abs(t.moment_coef * l1) + abs(t.moment_rhs) + 1e-30
    rel = max(rf / f_scale, rm / m_scale)
    fsq, msq, fs, ms = _squared_pair_values(length, -1.0, 0.0, params, e)
    sq_rel = max(abs(fsq) / (fs + 1e-30), abs(msq) / (ms + 1e-30))
    real = abs(complex(length).imag) <= 1e-8
    pose = pose_from_trig(length, -1.0, 0.0, params, e)
    try:
        fres, mres = residual_pair(pose, params)
        residual_force, residual_moment = abs(fres), abs(mres)
    except MechanismError:
        residual_force = residual_moment = math.inf
    return EquilibriumSolution(
        beta=complex(math.pi), length=complex(length),
        residual_force=float(residual_force),
        residual_moment=float(residual_moment),
        rel_residual=float(rel), is_real=bool(real),
        accepted=bool(rel <= accept_tol), squared_residual=float(sq_rel),
        note="beta = pi branch")
