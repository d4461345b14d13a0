"""Newton polygons and Puiseux expansions of algebraic functions.

Branches of P(x, y) = 0 near a point x0 (or at infinity, via x -> 1/t) are
computed classically: the Newton polygon of the local equation yields leading
exponents and edge polynomials; multiple edge roots recurse into a deeper
polygon (bounded depth); once branches separate, coefficients are lifted term
by term in the ramified parameter s, x - x0 = s^p.  Exponent arithmetic is
exact (fractions); coefficients are complex floats, certified a posteriori by
the residual check.

Conventions:

* at a finite point series run in ascending powers of (x - x0); at infinity
  in descending powers of x (local parameter t = 1/x), and polygon slopes at
  infinity are reported as x-exponents (so y^5 + y - x at infinity shows one
  edge of slope 1/5, length 5);
* a ramification-p cycle is emitted as p conjugate series (s -> zeta_p^k s);
* results are ordered by (leading exponent, leading coefficient (re, im)).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .algebra.gaussian import GaussianRational
from .algebra.poly import BivariatePolynomial
from .errors import NonExactCenter, NumericBreakdown, OrderTooSmall

INFINITY = "infinity"

_MAX_DEPTH = 8
_EPS = 1e-13


class NewtonPolygon:
    """Lower-left hull of the support of a local equation.

    ``vertices`` are (i, j) lattice points, i the local-parameter power and
    j the y-power; each edge is (slope, lattice length) where the slope is
    the branch exponent it governs and the length counts its branches.
    """

    def __init__(self, vertices, edges):
        self.vertices = list(vertices)
        self.edges = [(Fraction(s), int(length)) for s, length in edges]

    def __repr__(self):
        return f"NewtonPolygon(vertices={self.vertices}, edges={self.edges})"


class PuiseuxSeries:
    """One branch y = sum coeff * tau^exponent in the local parameter tau."""

    def __init__(self, point, ramification, terms, order, exact_center=True):
        self.point = point
        self.ramification = int(ramification)
        self.terms = [(Fraction(e), complex(c)) for e, c in terms]
        self.order = Fraction(order)
        self.exact_center = exact_center

    @property
    def leading_exponent(self) -> Fraction:
        return self.terms[0][0]

    @property
    def leading_coefficient(self) -> complex:
        return self.terms[0][1]

    def __call__(self, x) -> complex:
        """Evaluate the truncation with principal fractional powers."""
        if self.point == INFINITY:
            tau = 1.0 / complex(x)
            return sum(c * _principal_power(tau, -e) for e, c in self.terms)
        tau = complex(x) - complex(self.point)
        return sum(c * _principal_power(tau, e) for e, c in self.terms)

    def to_json(self):
        return {
            "ramification": self.ramification,
            "exponents": [f"{e.numerator}/{e.denominator}"
                          if e.denominator != 1 else str(e.numerator)
                          for e, _ in self.terms],
            "coefficients": [[c.real, c.imag] for _, c in self.terms],
        }

    def __repr__(self):
        head = ", ".join(f"{c:.4g}*t^{e}" for e, c in self.terms[:3])
        return (f"PuiseuxSeries(p={self.ramification}, {head}"
                f"{', ...' if len(self.terms) > 3 else ''})")


def _principal_power(z: complex, e: Fraction) -> complex:
    if z == 0:
        return 0j if e > 0 else complex(math.inf)
    if e == 0:
        return 1.0 + 0j
    return cmath.exp(complex(e) * cmath.log(z))


# --- local polynomial model ----------------------------------------------


class _LocalPoly:
    """Complex polynomial in (t, y) as a sparse dict {(i, j): coeff}."""

    __slots__ = ("terms", "scale")

    def __init__(self, terms):
        scale = max((abs(c) for c in terms.values()), default=1.0)
        self.terms = {k: c for k, c in terms.items() if abs(c) > _EPS * scale}
        self.scale = max(scale, 1e-300)

    def degree_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def support(self):
        return list(self.terms)

    def coeff(self, i, j) -> complex:
        return self.terms.get((i, j), 0j)

    def spec_at_zero(self):
        """Dense coefficients of P(0, y)."""
        n = self.degree_y()
        return [self.coeff(0, j) for j in range(n + 1)]

    def shift_y(self, c: complex) -> "_LocalPoly":
        out = {}
        for (i, j), a in self.terms.items():
            b = a
            for l in range(j, -1, -1):
                out[(i, l)] = out.get((i, l), 0j) + b
                b = b * c * (l) / (j - l + 1) if l > 0 else b
        return _LocalPoly(out)

    def reverse_y(self) -> "_LocalPoly":
        n = self.degree_y()
        return _LocalPoly({(i, n - j): c for (i, j), c in self.terms.items()})

    def strip_y_power(self):
        v = min((j for _, j in self.terms), default=0)
        if v == 0:
            return self, 0
        return _LocalPoly({(i, j - v): c
                           for (i, j), c in self.terms.items()}), v

    def drop_terms(self, keys) -> "_LocalPoly":
        """Remove specific lattice terms (noise scrubbing at known zeros)."""
        dropped = set(keys)
        return _LocalPoly({k: c for k, c in self.terms.items()
                           if k not in dropped})

    def ramify_center(self, p: int, q: int, c: complex) -> "_LocalPoly":
        """s^-N * P(s^p, s^q (c + w)) with N the minimal s-valuation."""
        raw = {}
        for (i, j), a in self.terms.items():
            base = p * i + q * j
            b = a
            for l in range(j, -1, -1):
                raw[(base, l)] = raw.get((base, l), 0j) + b
                b = b * c * l / (j - l + 1) if l > 0 else b
        scale = max(abs(v) for v in raw.values())
        raw = {k: v for k, v in raw.items() if abs(v) > _EPS * scale}
        shift = min(i for i, _ in raw)
        return _LocalPoly({(i - shift, j): v for (i, j), v in raw.items()})

    def stretch_t(self, p: int) -> "_LocalPoly":
        return _LocalPoly({(i * p, j): c for (i, j), c in self.terms.items()})

    def eval_series(self, ys, order: int):
        """P(s, y(s)) truncated at s^order; ys dense (len order+1)."""
        n = self.degree_y()
        powers = [None] * (n + 1)
        powers[0] = _series_one(order)
        for j in range(1, n + 1):
            powers[j] = _series_mul(powers[j - 1], ys, order)
        out = [0j] * (order + 1)
        for (i, j), a in self.terms.items():
            if i > order:
                continue
            pj = powers[j]
            for m in range(0, order + 1 - i):
                out[i + m] += a * pj[m]
        return out

    def eval_dy_series(self, ys, order: int):
        n = self.degree_y()
        powers = [None] * max(n, 1)
        powers[0] = _series_one(order)
        for j in range(1, n):
            powers[j] = _series_mul(powers[j - 1], ys, order)
        out = [0j] * (order + 1)
        for (i, j), a in self.terms.items():
            if j == 0 or i > order:
                continue
            pj = powers[j - 1]
            for m in range(0, order + 1 - i):
                out[i + m] += a * j * pj[m]
        return out


def _series_one(order):
    s = [0j] * (order + 1)
    s[0] = 1.0 + 0j
    return s


def _series_mul(a, b, order):
    out = [0j] * (order + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > order:
            continue
        for j in range(0, order + 1 - i):
            bj = b[j] if j < len(b) else 0j
            if bj != 0:
                out[i + j] += ai * bj
    return out


# --- recentering ------------------------------------------------------------


_LONGC = np.complex256 if hasattr(np, "complex256") else complex


def _taylor_shift_numeric(coeffs, z):
    """Coefficients of p(x + z) by synthetic division, extended precision.

    The shift is the precision bottleneck for expansions at irrational
    singular points (a center error e splits an m-fold root by ~e^(1/m)),
    so the arithmetic runs in extended precision and rounds at the end.
    """
    work = [_LONGC(c) for c in coeffs]
    zl = _LONGC(z)
    out = []
    while work:
        if len(work) == 1:
            out.append(complex(work[0]))
            break
        quot = [_LONGC(0)] * (len(work) - 1)
        acc = _LONGC(0)
        for k in range(len(work) - 1, 0, -1):
            acc = work[k] + acc * zl
            quot[k - 1] = acc
        rem = work[0] + acc * zl
        out.append(complex(rem))
        work = quot
    return out


def _polish_singular_center(P: BivariatePolynomial, z: complex):
    """Refine a near-singular center against lc_y * disc_y at extended
    precision; returns the polished value, or None when z is not within
    Newton range of a singular point (ordinary points stay untouched)."""
    from .algebra.poly import discriminant_y
    if P.degree_y() < 2:
        return None
    locator = (P.leading_y() * discriminant_y(P))
    if locator.degree() < 1:
        return None
    locator = locator.squarefree_part()
    cs = [_LONGC(complex(c)) for c in locator.coeffs]
    dcs = [cs[k] * k for k in range(1, len(cs))]

    def horner(coeffs, w):
        acc = _LONGC(0)
        for c in reversed(coeffs):
            acc = acc * w + c
        return acc

    w = _LONGC(z)
    for _ in range(6):
        pv = horner(cs, w)
        dv = horner(dcs, w)
        if dv == 0:
            return None
        step = pv / dv
        if abs(complex(step)) > 1e-6 * max(1.0, abs(z)):
            return None  # not actually adjacent to a singular point
        w = w - step
        if abs(complex(step)) < 1e-30:
            break
    return w


def _recenter(P: BivariatePolynomial, point, want_exact: bool):
    """Local model in (t, y); returns (model, exact_flag)."""
    if point == INFINITY:
        dx = P.degree_x()
        rows = [row.reversed_coeffs(dx + 1) for row in P.rows]
        return _LocalPoly.from_bivariate_rows(rows), True
    if isinstance(point, (GaussianRational, int, Fraction)):
        return _LocalPoly.from_bivariate_rows(
            P.shift_x(GaussianRational.coerce(point)).rows), True
    if want_exact:
        raise NonExactCenter(
            f"exact recentering requested at non-rational point {point!r}")
    z = complex(point)
    polished = _polish_singular_center(P, z)
    if polished is not None:
        z = polished  # keep the extended-precision value for the shift
    terms = {}
    for j, row in enumerate(P.rows):
        if row.is_zero():
            continue
        shifted = _taylor_shift_numeric([complex(c) for c in row.coeffs], z)
        for i, c in enumerate(shifted):
            if c != 0:
                terms[(i, j)] = c
    return _LocalPoly(terms), False


def _rows_to_terms(rows):
    terms = {}
    for j, row in enumerate(rows):
        for i, c in enumerate(row.coeffs):
            if not c.is_zero():
                terms[(i, j)] = complex(c)
    return terms


_LocalPoly.from_bivariate_rows = staticmethod(
    lambda rows: _LocalPoly(_rows_to_terms(rows)))


# --- polygon ------------------------------------------------------------------


def _lower_hull(support):
    best = {}
    for i, j in support:
        if j not in best or i < best[j]:
            best[j] = i
    pts = sorted((j, i) for j, i in best.items())
    hull = []
    for j, i in pts:
        while len(hull) >= 2:
            (j1, i1), (j2, i2) = hull[-2], hull[-1]
            if (i2 - i1) * (j - j1) >= (i - i1) * (j2 - j1):
                hull.pop()
            else:
                break
        hull.append((j, i))
    return [(i, j) for j, i in hull]


def _polygon_edges(support):
    """[(mu, length, lo, hi)] with mu the branch exponent of the edge."""
    hull = _lower_hull(support)
    edges = []
    for (i0, j0), (i1, j1) in zip(hull, hull[1:]):
        mu = Fraction(i0 - i1, j1 - j0)
        edges.append((mu, j1 - j0, (i0, j0), (i1, j1)))
    return hull, edges


def newton_polygon(P: BivariatePolynomial, point=0) -> NewtonPolygon:
    """Newton polygon of P at a finite point or INFINITY.

    The sum of edge lengths equals deg_y of the local model; at INFINITY
    slopes are reported as x-exponents (negated t-slopes).
    """
    want_exact = isinstance(point, (GaussianRational, int, Fraction)) \
        or point == INFINITY
    model, _ = _recenter(P.primitive_y(), point, want_exact)
    hull, edges = _polygon_edges(model.support())
    sign = -1 if point == INFINITY else 1
    return NewtonPolygon(hull, [(sign * mu, L) for mu, L, _, _ in edges])


# --- seeds -------------------------------------------------------------------


def _cluster_roots(values, tol=3e-6):
    """Group numeric roots into (center, multiplicity) clusters.

    A root of multiplicity m over inexact data splits into m simple roots
    at distance ~ (data error)^(1/m), so clustering is two-stage: an
    absolute tolerance first, then a relative-gap pass that merges clusters
    far closer to each other than to everything else (ill-conditioned
    centers can push genuine multiple roots well past any fixed cutoff).
    """
    out = []
    for v in sorted(values, key=lambda z: (z.real, z.imag)):
        for k, (c, m) in enumerate(out):
            if abs(v - c) <= tol * max(1.0, abs(c)):
                out[k] = ((c * m + v) / (m + 1), m + 1)
                break
        else:
            out.append((v, 1))
    changed = True
    while changed and len(out) > 2:
        changed = False
        for i in range(len(out)):
            for j in range(i + 1, len(out)):
                d_ij = abs(out[i][0] - out[j][0])
                external = min(abs(out[i][0] - out[k][0])
                               for k in range(len(out)) if k not in (i, j))
                if d_ij <= max(tol, 0.005 * external):
                    ci, mi = out[i]
                    cj, mj = out[j]
                    merged = ((ci * mi + cj * mj) / (mi + mj), mi + mj)
                    out = [merged] + [out[k] for k in range(len(out))
                                      if k not in (i, j)]
                    changed = True
                    break
            if changed:
                break
    return out


def _edge_roots(model: _LocalPoly, mu: Fraction, lo, hi):
    """Nonzero roots of the edge polynomial, in u = c^p, with multiplicity."""
    p = mu.denominator
    i0, j0 = lo
    i1, j1 = hi
    coeffs = {}
    for (i, j), a in model.terms.items():
        if not (j0 <= j <= j1):
            continue
        if (i - i0) * (j1 - j0) == (i1 - i0) * (j - j0):
            k, rem = divmod(j - j0, p)
            if rem == 0:
                coeffs[k] = coeffs.get(k, 0j) + a
    deg = max(coeffs)
    dense = [coeffs.get(k, 0j) for k in range(deg + 1)]
    scale = max(abs(v) for v in dense)
    while dense and abs(dense[0]) <= _EPS * scale:
        dense.pop(0)  # u = 0 roots belong to steeper edges
    if len(dense) <= 1:
        return []
    return _cluster_roots(list(np.roots(list(reversed(dense)))))


def _vanishing_seeds(model: _LocalPoly, depth: int):
    """Seeds for branches with y -> 0: list of (p_total, {exp: coeff}).

    Exponents are integers in the ramified parameter s (x-local = s^p_total)
    and the seed separates its branch cycle from all others.
    """
    if depth > _MAX_DEPTH:
        raise NumericBreakdown("edge-root recursion exceeded depth "
                               f"{_MAX_DEPTH}")
    out = []
    stripped, v = model.strip_y_power()
    if not any(j > 0 for _, j in stripped.terms):
        return out
    _, edges = _polygon_edges(stripped.support())
    for mu, _L, lo, hi in edges:
        if mu <= 0:
            continue
        p, q = mu.denominator, mu.numerator
        for u, m in _edge_roots(stripped, mu, lo, hi):
            c = _principal_power(u, Fraction(1, p))
            if m == 1:
                out.append((p, {q: c}))
            else:
                deeper = stripped.ramify_center(p, q, c)
                for p2, seed2 in _vanishing_seeds(deeper, depth + 1):
                    seed = {q * p2: c}
                    for e, w in seed2.items():
                        seed[q * p2 + e] = seed.get(q * p2 + e, 0j) + w
                    out.append((p * p2, seed))
    return out


# --- lifting ------------------------------------------------------------------


def _lift(model: _LocalPoly, p_total: int, seed: dict, target: int):
    """Newton-lift a separated seed on P(s^p_total, y) to s-order target.

    Returns the dense coefficient list of y(s) up to s^target.
    """
    F = model.stretch_t(p_total)
    order = target + max((e for e in seed), default=0) + 2
    ys = [0j] * (order + 1)
    for e, c in seed.items():
        if 0 <= e <= order:
            ys[e] = c
    touched = {}
    for _round in range(8 * order + 32):
        fy = F.eval_dy_series(ys, order)
        dscale = max(max(abs(v) for v in fy), 1e-300)
        d = next((k for k, vv in enumerate(fy) if abs(vv) > 1e-9 * dscale),
                 None)
        if d is None:
            raise NumericBreakdown("dP/dy vanishes along the branch seed")
        res = F.eval_series(ys, order)
        rscale = max(max(abs(v) for v in res), 1e-300)
        floor = 2e-13 * max(F.scale, rscale)
        nu = next((k for k, vv in enumerate(res) if abs(vv) > floor), None)
        if nu is None or nu - d > target:
            return ys[:target + 1]
        e_new = nu - d
        if e_new < 0:
            raise NumericBreakdown(
                "negative lifting exponent; branch seed not separated",
                condition=abs(res[nu] / fy[d]))
        touched[e_new] = touched.get(e_new, 0) + 1
        if touched[e_new] > 4:
            # the residual is pinned at noise level (inexact center);
            # further corrections cannot improve the truncation
            return ys[:target + 1]
        ys[e_new] += -res[nu] / fy[d]
    raise NumericBreakdown("branch lifting failed to converge")


def _series_invert(ys, target: int):
    """1/y(s) for y of positive valuation; dict {exp: coeff}, exps >= -v."""
    v = next((k for k, c in enumerate(ys) if c != 0), None)
    if v is None:
        raise NumericBreakdown("cannot invert the zero series")
    core = ys[v:]
    a0 = core[0]
    need = target + v + 1
    inv = [0j] * need
    inv[0] = 1.0 / a0
    for m in range(1, need):
        acc = 0j
        for k in range(1, min(m, len(core) - 1) + 1):
            acc += core[k] * inv[m - k]
        inv[m] = -acc / a0
    return {m - v: c for m, c in enumerate(inv) if c != 0}


# --- public expansion ----------------------------------------------------------


def puiseux_expand(P: BivariatePolynomial, point=0, order=None,
                   exact=None):
    """All branch expansions of P at the point (or INFINITY).

    Returns deg_y P PuiseuxSeries counted with ramification (a cycle of
    length p appears as p conjugate series).  ``order`` bounds the included
    exponents (in x - x0, or in 1/x at infinity); it defaults to
    leading-exponent + 4.  Residuals of the truncations vanish beyond the
    requested order, which ``residual_error`` quantifies.
    """
    P = P.primitive_y()
    n = P.degree_y()
    if exact is None:
        exact = isinstance(point, (GaussianRational, int, Fraction)) \
            or point == INFINITY
    model, exact_center = _recenter(P, point, exact)

    # entries: (p_total, seed dict, kind, lift model, offset added to y)
    branch_data = []
    stripped, y_power = model.strip_y_power()
    for _ in range(y_power):
        branch_data.append((1, {0: 0j}, "zero-component", None, 0j))

    spec = stripped.spec_at_zero()
    dense = list(spec)
    while dense and abs(dense[-1]) <= _EPS * stripped.scale:
        dense.pop()

    # finite branches: cluster all roots of P(0, y); an m-fold cluster
    # recurses through the polygon of the shifted model, with the known
    # zero coefficients (0, j < m) scrubbed of numeric noise (a split
    # cluster leaves residues there that would otherwise hide the edge
    # and stall the lift)
    if len(dense) > 1:
        roots = list(np.roots(list(reversed(dense))))
        for c, m in _cluster_roots(roots):
            near_zero = abs(c) <= 3e-6 * max(1.0, stripped.scale)
            if m == 1 and not near_zero:
                branch_data.append((1, {0: c}, "finite", stripped, 0j))
                continue
            shifted = stripped if near_zero else stripped.shift_y(c)
            shifted = shifted.drop_terms([(0, j) for j in range(m)])
            offset = 0j if near_zero else c
            for p_tot, seed in _vanishing_seeds(shifted, 0):
                branch_data.append((p_tot, seed, "finite", shifted, offset))

    # pole branches: leading y-coefficient vanishes at the point
    lead_row_min = min((i for (i, j) in stripped.terms
                        if j == stripped.degree_y()), default=0)
    if lead_row_min > 0:
        reversed_model = stripped.reverse_y()
        rstripped, _ = reversed_model.strip_y_power()
        for p_tot, seed in _vanishing_seeds(rstripped, 0):
            branch_data.append((p_tot, seed, "pole", rstripped, 0j))

    leading = []
    for p_tot, seed, kind, _model, offset in branch_data:
        if kind == "pole":
            e0 = -min(seed)
        elif offset != 0:
            e0 = 0
        else:
            e0 = min(seed)
        leading.append(Fraction(e0, p_tot))
    if order is None:
        order = (max(leading) if leading else Fraction(0)) + 4
    order = Fraction(order)
    if leading and order < min(leading):
        raise OrderTooSmall(
            f"order {order} is below the smallest leading exponent "
            f"{min(leading)}")

    out = []
    for p_tot, seed, kind, lift_model, offset in branch_data:
        if kind == "zero-component":
            out.append(PuiseuxSeries(point, 1, [(Fraction(0), 0j)], order,
                                     exact_center))
            continue
        # resolve at least one term past the branch's own leading exponent,
        # even when the requested order sits below it
        lead_e = Fraction(min(seed), p_tot)
        branch_order = max(order, lead_e + 1)
        target = int(math.ceil(branch_order * p_tot)) + 1
        if kind == "pole":
            zs = _lift(lift_model, p_tot, seed, target + 2 * max(seed) + 2)
            terms_map = _series_invert(zs, target)
        else:
            ys = _lift(lift_model, p_tot, seed, target)
            terms_map = {e: c for e, c in enumerate(ys) if c != 0}
            if offset != 0:
                terms_map[0] = terms_map.get(0, 0j) + offset
        for k in range(p_tot):
            zeta = cmath.exp(2j * math.pi / p_tot) ** k
            terms = []
            for e in sorted(terms_map):
                exp = Fraction(e, p_tot)
                if exp > branch_order:
                    continue
                terms.append((exp, terms_map[e] * (zeta ** e)))
            if not terms:
                terms = [(Fraction(0), 0j)]
            if point == INFINITY:
                terms = [(-e, c) for e, c in terms]
            out.append(PuiseuxSeries(point, p_tot, terms, branch_order,
                                     exact_center))
    if len(out) != n:
        raise NumericBreakdown(
            f"found {len(out)} branches, expected {n}")
    out.sort(key=lambda s: (s.leading_exponent,
                            s.leading_coefficient.real,
                            s.leading_coefficient.imag))
    return out


def ramification_multiset(P: BivariatePolynomial, point):
    """Multiset of branch-cycle lengths at the point (local cycle type)."""
    series = puiseux_expand(P, point, order=None, exact=False)
    counts = {}
    for s in series:
        counts[s.ramification] = counts.get(s.ramification, 0) + 1
    out = []
    for p, total in sorted(counts.items()):
        out.extend([p] * (total // p))
    return tuple(sorted(out))


def residual_error(P: BivariatePolynomial, series: PuiseuxSeries) -> float:
    """Max relative residual coefficient of P(x, s(x)) at exponents <= order.

    Substituting the truncation into the local model must leave residual
    series coefficients that vanish for every exponent up to the truncation
    order; the return value is the largest such coefficient relative to the
    model's coefficient scale (1e-10 certifies ten digits).
    """
    P = P.primitive_y()
    model, _ = _recenter(P, series.point,
                         isinstance(series.point,
                                    (GaussianRational, int, Fraction))
                         or series.point == INFINITY)
    stripped, _v = model.strip_y_power()
    p = series.ramification
    # dense s-coefficients of the branch, exponents e*p (negated at infinity)
    pairs = []
    for e, c in series.terms:
        exp = -e if series.point == INFINITY else e
        s_exp = int(exp * p)
        pairs.append((s_exp, c))
    if not pairs:
        return 0.0
    v = min(e for e, _ in pairs)
    target = int(series.order * p)
    if v < 0:
        # pole branch: check the reciprocal series against the reversed model
        work = stripped.reverse_y().strip_y_power()[0]
        shifted = {e - v: c for e, c in pairs}  # now a power series
        depth = max(shifted) + 2 * (-v) + target + 2
        dense = [0j] * (depth + 1)
        for e, c in shifted.items():
            if e <= depth:
                dense[e] = c
        inv = [0j] * (depth + 1)
        inv[0] = 1.0 / dense[0]
        for m2 in range(1, depth + 1):
            acc = 0j
            for k2 in range(1, m2 + 1):
                acc += dense[k2] * inv[m2 - k2]
            inv[m2] = -acc * inv[0]
        # z = 1/y = s^{-v} / (s^{-v} y): shift the inverted unit part
        ys = [0j] * (depth + 1)
        for m2 in range(depth + 1 - (-v)):
            ys[m2 + (-v)] = inv[m2]
        F = work.stretch_t(p)
        order_s = target
        res = F.eval_series(ys, order_s)
        return max((abs(val) for val in res[:order_s + 1]),
                   default=0.0) / F.scale
    F = stripped.stretch_t(p)
    order_s = target
    ys = [0j] * (max(target, max(e for e, _ in pairs)) + 1)
    for e, c in pairs:
        if e < len(ys):
            ys[e] = c
    res = F.eval_series(ys, order_s)
    return max((abs(val) for val in res[:order_s + 1]),
               default=0.0) / F.scale
