"""Equilibrium solver for the all-zero-free-length configuration.

With every free length zero both equilibrium residuals are affine in the
basis [L, L cos(beta), L sin(beta), cos(beta), sin(beta), 1]. The
coefficients are extracted by probing the exact residual functions at
canonical (L, beta) points rather than transcribing closed forms, the
tan-half substitution turns the two equations into polynomials linear in
L, and eliminating L leaves a quartic whose roots (complex included) are
verified by substitution back into the exact residuals.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateQuartic, NonZeroFreeLength
from .geometry import Point2
from .mechanism import MechanismParams, point_e, pose_from_trig, residual_pair
from .polynomials import CPolynomial, poly_roots
from .solutions import (EquilibriumSolution, mark_real, pair_conjugates,
                        sort_solutions)

RESIDUAL_REL_TOL = 1e-8
POLE_AGREE_REL = 1e-8  # L agreement needed to accept the beta = pi branch

# probe points; the moment equation needs (1, pi) to split the L*cos term
# from the pure-L term
_PROBES = ((0.0, 0.0), (1.0, 0.0), (0.0, math.pi / 2), (1.0, math.pi / 2),
           (0.0, math.pi), (1.0, math.pi))


@dataclass(frozen=True)
class LinearizedEquilibrium:
    """Probed coefficients of the two residuals.

    force(L, b)  = force_l * L + force_cos * cos b + force_sin * sin b
                   + force_const
    moment(L, b) = (moment_l + moment_l_cos * cos b + moment_l_sin * sin b) * L
                   + moment_cos * cos b + moment_sin * sin b
    """

    force_l: float
    force_cos: float
    force_sin: float
    force_const: float
    moment_l: float
    moment_l_cos: float
    moment_l_sin: float
    moment_cos: float
    moment_sin: float

    def force_value(self, length, cos_beta, sin_beta):
        return (self.force_l * length + self.force_cos * cos_beta
                + self.force_sin * sin_beta + self.force_const)

    def moment_value(self, length, cos_beta, sin_beta):
        coef = (self.moment_l + self.moment_l_cos * cos_beta
                + self.moment_l_sin * sin_beta)
        return coef * length + self.moment_cos * cos_beta + self.moment_sin * sin_beta

    def force_scale(self, length, cos_beta, sin_beta) -> float:
        return (abs(self.force_l * length) + abs(self.force_cos * cos_beta)
                + abs(self.force_sin * sin_beta) + abs(self.force_const))

    def moment_scale(self, length, cos_beta, sin_beta) -> float:
        return (abs(self.moment_l * length)
                + abs(self.moment_l_cos * cos_beta * length)
                + abs(self.moment_l_sin * sin_beta * length)
                + abs(self.moment_cos * cos_beta)
                + abs(self.moment_sin * sin_beta))


def linearize(params: MechanismParams, e: Point2) -> LinearizedEquilibrium:
    """Extract the affine residual coefficients by probing.

    The residuals of the zero-free-length system are exactly affine in
    [L, L cos b, L sin b, cos b, sin b, 1]; six probes determine both
    coefficient sets through one shared 6x6 solve.
    """
    if any(l0 != 0 for l0 in params.free_lengths):
        raise NonZeroFreeLength(f"free lengths {params.free_lengths}")
    rows, force_vals, moment_vals = [], [], []
    for length, beta in _PROBES:
        cb, sb = math.cos(beta), math.sin(beta)
        rows.append([length, length * cb, length * sb, cb, sb, 1.0])
        pose = pose_from_trig(length, cb, sb, params, e)
        f, m = residual_pair(pose, params)
        force_vals.append(f)
        moment_vals.append(m)
    matrix = np.array(rows)
    fc = np.linalg.solve(matrix, np.array(force_vals))
    mc = np.linalg.solve(matrix, np.array(moment_vals))
    return LinearizedEquilibrium(
        force_l=fc[0], force_cos=fc[3], force_sin=fc[4], force_const=fc[5],
        moment_l=mc[0], moment_l_cos=mc[1], moment_l_sin=mc[2],
        moment_cos=mc[3], moment_sin=mc[4])


def quartic_coefficients(lin: LinearizedEquilibrium) -> np.ndarray:
    """Ascending coefficients of the quartic in x = tan(beta/2) left after
    eliminating L from the two cleared equations."""
    # each equation times (1 + x^2): p(x) * L + q(x) = 0
    p1 = np.array([lin.force_l, 0.0, lin.force_l])
    q1 = np.array([lin.force_cos + lin.force_const,
                   2.0 * lin.force_sin,
                   lin.force_const - lin.force_cos])
    p2 = np.array([lin.moment_l + lin.moment_l_cos,
                   2.0 * lin.moment_l_sin,
                   lin.moment_l - lin.moment_l_cos])
    q2 = np.array([lin.moment_cos, 2.0 * lin.moment_sin, -lin.moment_cos])
    return np.polynomial.polynomial.polymul(q1, p2) \
        - np.polynomial.polynomial.polymul(q2, p1)


def _tan_half(x):
    return (1 - x * x) / (1 + x * x), 2 * x / (1 + x * x)


def _length_from_linear(lin: LinearizedEquilibrium, x):
    """L from whichever cleared linear equation is better conditioned,
    plus both candidates for the agreement check."""
    one_plus = 1 + x * x
    p1 = lin.force_l * one_plus
    q1 = ((lin.force_cos + lin.force_const) + 2 * lin.force_sin * x
          + (lin.force_const - lin.force_cos) * x * x)
    p2 = ((lin.moment_l + lin.moment_l_cos) + 2 * lin.moment_l_sin * x
          + (lin.moment_l - lin.moment_l_cos) * x * x)
    q2 = (lin.moment_cos + 2 * lin.moment_sin * x - lin.moment_cos * x * x)
    l1 = -q1 / p1 if p1 != 0 else None
    l2 = -q2 / p2 if p2 != 0 else None
    if l1 is None and l2 is None:
        return None, (None, None)
    primary = l1 if (l2 is None or (l1 is not None and abs(p1) >= abs(p2))) else l2
    return primary, (l1, l2)


def _polish(lin: LinearizedEquilibrium, beta, length, steps: int = 8):
    """Damped Newton refinement on the exact affine pair in (beta, L)."""
    def values(b, l):
        cb, sb = cmath.cos(b), cmath.sin(b)
        return (lin.force_value(l, cb, sb), lin.moment_value(l, cb, sb))

    f, m = values(beta, length)
    norm = abs(f) + abs(m)
    for _ in range(steps):
        cb, sb = cmath.cos(beta), cmath.sin(beta)
        j11 = -lin.force_cos * sb + lin.force_sin * cb
        j12 = lin.force_l
        j21 = ((-lin.moment_l_cos * sb + lin.moment_l_sin * cb) * length
               - lin.moment_cos * sb + lin.moment_sin * cb)
        j22 = lin.moment_l + lin.moment_l_cos * cb + lin.moment_l_sin * sb
        det = j11 * j22 - j12 * j21
        if det == 0:
            break
        db = (f * j22 - m * j12) / det
        dl = (j11 * m - j21 * f) / det
        new_beta, new_length = beta - db, length - dl
        nf, nm = values(new_beta, new_length)
        if abs(nf) + abs(nm) >= norm:
            break
        beta, length, f, m, norm = new_beta, new_length, nf, nm, abs(nf) + abs(nm)
        if norm == 0:
            break
    return beta, length


def _build_solution(params: MechanismParams, e: Point2,
                    lin: LinearizedEquilibrium, beta, length,
                    residual_tol: float, note: str = "") -> EquilibriumSolution:
    beta, length = _polish(lin, beta, length)
    pose = pose_from_trig(length, cmath.cos(beta), cmath.sin(beta), params, e)
    f, m = residual_pair(pose, params)
    cb, sb = cmath.cos(beta), cmath.sin(beta)
    f_scale = max(lin.force_scale(abs(length), abs(cb), abs(sb)), 1e-30)
    m_scale = max(lin.moment_scale(abs(length), abs(cb), abs(sb)), 1e-30)
    rel = max(abs(f) / f_scale, abs(m) / m_scale)
    real = mark_real(complex(beta), complex(length))
    if real:
        beta = complex(beta).real
        length = complex(length).real
    return EquilibriumSolution(
        beta=complex(beta), length=complex(length),
        residual_force=float(abs(f)), residual_moment=float(abs(m)),
        rel_residual=float(rel), is_real=real,
        accepted=bool(rel <= residual_tol), note=note)


def solve_zero_free_lengths(params: MechanismParams,
                            residual_tol: float = RESIDUAL_REL_TOL,
                            ) -> list[EquilibriumSolution]:
    """All equilibrium configurations for the all-zero-free-length case.

    Returns the quartic's four roots (with multiplicity, complex included)
    as verified solutions sorted by beta; a genuine beta = pi equilibrium,
    invisible to the tan-half variable, is appended when both cleared
    equations agree there.
    """
    e = point_e(params)
    lin = linearize(params, e)
    coeffs = quartic_coefficients(lin)
    scale = max(abs(c) for c in coeffs)
    ref = (abs(lin.force_l) + abs(lin.force_const)) * \
          (abs(lin.moment_l) + abs(lin.moment_l_cos) + abs(lin.moment_cos) + 1)
    if scale <= 1e-14 * max(ref, 1.0):
        raise DegenerateQuartic("eliminated polynomial is identically zero")

    quartic = CPolynomial(coeffs)
    solutions = []
    for x in poly_roots(quartic):
        pole_gap = abs(1 + x * x)
        if pole_gap < 1e-12 * (1 + abs(x) ** 2):
            solutions.append(EquilibriumSolution(
                beta=cmath.pi + 0j, length=complex("nan"),
                residual_force=math.inf, residual_moment=math.inf,
                rel_residual=math.inf, is_real=False, accepted=False,
                note="tan-half pole artifact"))
            continue
        beta = 2 * cmath.atan(x)
        length, (l1, l2) = _length_from_linear(lin, x)
        if length is None:
            continue
        note = ""
        if l1 is not None and l2 is not None:
            gap = abs(l1 - l2) / max(1.0, abs(l1), abs(l2))
            if gap > 1e-6:
                note = f"linear L estimates disagree ({gap:.1e})"
        solutions.append(_build_solution(params, e, lin, beta, length,
                                         residual_tol, note))

    pole = _beta_pi_solution(params, e, lin, residual_tol)
    if pole is not None:
        solutions.append(pole)
    return sort_solutions(pair_conjugates(solutions))


def _beta_pi_solution(params, e, lin, residual_tol):
    """The tan-half substitution cannot represent beta = pi; check that
    branch directly through the two linear-in-L equations."""
    denom_f = lin.force_l
    denom_m = lin.moment_l - lin.moment_l_cos
    if denom_f == 0 or abs(denom_m) < 1e-14 * (abs(lin.moment_l)
                                               + abs(lin.moment_l_cos) + 1e-30):
        return None
    l_force = (lin.force_cos - lin.force_const) / denom_f
    l_moment = lin.moment_cos / denom_m
    if abs(l_force - l_moment) > POLE_AGREE_REL * max(1.0, abs(l_force)):
        return None
    return _build_solution(params, e, lin, math.pi, (l_force + l_moment) / 2,
                           residual_tol, note="beta = pi branch")
