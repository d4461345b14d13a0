"""Dense exact polynomial arithmetic over the Gaussian rationals.

Three layers:

* :class:`UnivariatePolynomial` -- coefficients lowest degree first;
* :class:`RationalFunction` -- reduced quotient with monic denominator;
* :class:`BivariatePolynomial` -- a polynomial in ``y`` whose coefficients
  are univariate polynomials in ``x`` (the natural shape for algebraic
  curves P(x, y) = 0).

Everything here is exact; the numeric layer lives in ``roots.py``.  Degrees
stay at desk scale (tens, not thousands), so dense representations and
classical algorithms are the right tool.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DegreeTooLow, ZeroPolynomial
from .gaussian import GaussianRational, ONE, ZERO


def _coerce_scalar(c) -> GaussianRational:
    return GaussianRational.coerce(c)


class UnivariatePolynomial:
    """Polynomial in one variable with GaussianRational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_coerce_scalar(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UnivariatePolynomial is immutable")

    # --- constructors ----------

    @staticmethod
    def zero() -> "UnivariatePolynomial":
        return UnivariatePolynomial()

    @staticmethod
    def constant(c) -> "UnivariatePolynomial":
        return UnivariatePolynomial([c])

    @staticmethod
    def variable() -> "UnivariatePolynomial":
        return UnivariatePolynomial([0, 1])

    @staticmethod
    def monomial(c, k: int) -> "UnivariatePolynomial":
        return UnivariatePolynomial([0] * k + [c])

    @staticmethod
    def coerce(value) -> "UnivariatePolynomial":
        if isinstance(value, UnivariatePolynomial):
            return value
        return UnivariatePolynomial.constant(value)

    # --- structure ----------

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        return len(self.coeffs) - 1

    def leading(self) -> GaussianRational:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k: int) -> GaussianRational:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self) -> GaussianRational:
        return self.coeffs[0] if self.coeffs else ZERO

    # --- ring operations ----------

    def __add__(self, other):
        other = UnivariatePolynomial.coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UnivariatePolynomial(
            [self.coefficient(k) + other.coefficient(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UnivariatePolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-UnivariatePolynomial.coerce(other))

    def __rsub__(self, other):
        return UnivariatePolynomial.coerce(other) + (-self)

    def __mul__(self, other):
        other = UnivariatePolynomial.coerce(other)
        if self.is_zero() or other.is_zero():
            return UnivariatePolynomial()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UnivariatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UnivariatePolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "UnivariatePolynomial":
        c = _coerce_scalar(c)
        return UnivariatePolynomial([a * c for a in self.coeffs])

    def divmod(self, other):
        other = UnivariatePolynomial.coerce(other)
        if other.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        num = list(self.coeffs)
        dd, dn = other.degree(), self.degree()
        if dn < dd:
            return UnivariatePolynomial(), self
        inv_lead = other.leading().inverse()
        quot = [ZERO] * (dn - dd + 1)
        for k in range(dn - dd, -1, -1):
            c = num[dd + k] * inv_lead
            quot[k] = c
            if not c.is_zero():
                for j, b in enumerate(other.coeffs):
                    num[j + k] = num[j + k] - c * b
        return UnivariatePolynomial(quot), UnivariatePolynomial(num[:dd])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other) -> "UnivariatePolynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("exact_div with nonzero remainder")
        return q

    # --- calculus / evaluation ----------

    def derivative(self) -> "UnivariatePolynomial":
        return UnivariatePolynomial(
            [c * k for k, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "UnivariatePolynomial":
        return UnivariatePolynomial(
            [ZERO] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def __call__(self, x):
        """Horner evaluation; exact on GaussianRational, numeric on complex."""
        if isinstance(x, (int, Fraction, GaussianRational)):
            acc = ZERO
            for c in reversed(self.coeffs):
                acc = acc * GaussianRational.coerce(x) + c
            return acc
        acc = 0j
        xc = complex(x)
        for c in reversed(self.coeffs):
            acc = acc * xc + complex(c)
        return acc

    def compose(self, inner: "UnivariatePolynomial") -> "UnivariatePolynomial":
        acc = UnivariatePolynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + UnivariatePolynomial.constant(c)
        return acc

    def shift(self, a) -> "UnivariatePolynomial":
        """p(x + a), exact Taylor shift."""
        return self.compose(UnivariatePolynomial([a, 1]))

    def reversed_coeffs(self, length=None) -> "UnivariatePolynomial":
        """x^d * p(1/x) padded to ``length`` coefficients before reversal."""
        n = length if length is not None else len(self.coeffs)
        cs = list(self.coeffs) + [ZERO] * (n - len(self.coeffs))
        return UnivariatePolynomial(list(reversed(cs)))

    # --- gcd machinery ----------

    def monic(self) -> "UnivariatePolynomial":
        if self.is_zero():
            return self
        return self.scale(self.leading().inverse())

    def gcd(self, other) -> "UnivariatePolynomial":
        a, b = self, UnivariatePolynomial.coerce(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def extended_gcd(self, other):
        """(g, s, t) with s*self + t*other = g, g monic."""
        other = UnivariatePolynomial.coerce(other)
        r0, r1 = self, other
        s0, s1 = UnivariatePolynomial.constant(1), UnivariatePolynomial()
        t0, t1 = UnivariatePolynomial(), UnivariatePolynomial.constant(1)
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        lead = r0.leading().inverse()
        return r0.scale(lead), s0.scale(lead), t0.scale(lead)

    def squarefree_part(self) -> "UnivariatePolynomial":
        if self.is_zero():
            raise ZeroPolynomial("squarefree part of zero")
        if self.degree() == 0:
            return UnivariatePolynomial.constant(1)
        return self.exact_div(self.gcd(self.derivative())).monic()

    # --- misc ----------

    def resultant(self, other) -> GaussianRational:
        """res(self, other) via a subresultant-free Euclidean recursion.

        Used internally (Rothstein-Trager, norms); the sign convention of
        the public bivariate resultant is fixed separately in resultant_y.
        """
        other = UnivariatePolynomial.coerce(other)
        a, b = self, other
        if a.is_zero() or b.is_zero():
            return ZERO
        res = ONE
        while b.degree() > 0:
            r = a % b
            if r.is_zero():
                return ZERO if a.degree() > 0 else ONE
            res = res * (b.leading() ** (a.degree() - r.degree())) \
                * (ONE if (a.degree() * b.degree()) % 2 == 0 else -ONE)
            a, b = b, r
        return res * (b.constant_value() ** a.degree())

    def __eq__(self, other):
        if not isinstance(other, UnivariatePolynomial):
            try:
                other = UnivariatePolynomial.coerce(other)
            except TypeError:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UnivariatePolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return self.format()

    def format(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree(), -1, -1):
            c = self.coefficient(k)
            if c.is_zero():
                continue
            if k == 0:
                term = str(c)
            else:
                xk = var if k == 1 else f"{var}^{k}"
                if c.is_one():
                    term = xk
                elif c == GaussianRational(-1):
                    term = f"-{xk}"
                else:
                    term = f"{c}*{xk}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out


def squarefree_factorization(p: UnivariatePolynomial):
    """Yun's algorithm: list of (monic factor, multiplicity), constants drop out."""
    if p.is_zero():
        raise ZeroPolynomial("squarefree factorization of zero")
    if p.degree() == 0:
        return []
    p = p.monic()
    dp = p.derivative()
    a = p.gcd(dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    k = 1
    while b.degree() > 0:
        a = b.gcd(d)
        if a.degree() > 0:
            out.append((a.monic(), k))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        k += 1
    return out


class RationalFunction:
    """Reduced quotient of univariate polynomials; denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = UnivariatePolynomial.coerce(num)
        den = UnivariatePolynomial.constant(1) if den is None \
            else UnivariatePolynomial.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = UnivariatePolynomial.constant(1)
        else:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lead = den.leading().inverse()
            num = num.scale(lead)
            den = den.scale(lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @staticmethod
    def coerce(value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, UnivariatePolynomial):
            return RationalFunction(value)
        return RationalFunction(UnivariatePolynomial.constant(value))

    @staticmethod
    def variable() -> "RationalFunction":
        return RationalFunction(UnivariatePolynomial.variable())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> GaussianRational:
        return self.num.constant_value()

    def __add__(self, other):
        other = RationalFunction.coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) + (-self)

    def __mul__(self, other):
        other = RationalFunction.coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalFunction.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (RationalFunction.coerce(1) / self) ** (-n)
        return RationalFunction(self.num ** n, self.den ** n)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den)

    def __call__(self, x):
        if isinstance(x, (int, Fraction, GaussianRational)):
            d = self.den(x)
            if d.is_zero():
                raise ZeroDivisionError("evaluation at a pole")
            return self.num(x) / d
        return self.num(x) / self.den(x)

    def __eq__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        return self.format()

    def format(self, var: str = "x") -> str:
        if self.is_polynomial():
            return self.num.format(var)
        return f"({self.num.format(var)})/({self.den.format(var)})"


class BivariatePolynomial:
    """P(x, y) stored as a polynomial in y over Q(i)[x].

    ``rows[j]`` is the univariate coefficient of y^j.  Content in y is *not*
    forcibly removed on construction; call :meth:`primitive_y` when a caller
    needs the normalized curve.
    """

    __slots__ = ("rows",)

    def __init__(self, rows=()):
        rs = [UnivariatePolynomial.coerce(r) for r in rows]
        while rs and rs[-1].is_zero():
            rs.pop()
        object.__setattr__(self, "rows", tuple(rs))

    def __setattr__(self, name, value):
        raise AttributeError("BivariatePolynomial is immutable")

    # --- constructors ----------

    @staticmethod
    def zero() -> "BivariatePolynomial":
        return BivariatePolynomial()

    @staticmethod
    def constant(c) -> "BivariatePolynomial":
        return BivariatePolynomial([UnivariatePolynomial.constant(c)])

    @staticmethod
    def var_x() -> "BivariatePolynomial":
        return BivariatePolynomial([UnivariatePolynomial.variable()])

    @staticmethod
    def var_y() -> "BivariatePolynomial":
        return BivariatePolynomial([UnivariatePolynomial(),
                                    UnivariatePolynomial.constant(1)])

    @staticmethod
    def from_univariate_in_y(p: UnivariatePolynomial) -> "BivariatePolynomial":
        return BivariatePolynomial(
            [UnivariatePolynomial.constant(c) for c in p.coeffs])

    @staticmethod
    def coerce(value) -> "BivariatePolynomial":
        if isinstance(value, BivariatePolynomial):
            return value
        if isinstance(value, UnivariatePolynomial):
            return BivariatePolynomial([value])
        return BivariatePolynomial.constant(value)

    # --- structure ----------

    def is_zero(self) -> bool:
        return not self.rows

    def degree_y(self) -> int:
        return len(self.rows) - 1

    def degree_x(self) -> int:
        return max((r.degree() for r in self.rows), default=-1)

    def coefficient_y(self, j: int) -> UnivariatePolynomial:
        if 0 <= j < len(self.rows):
            return self.rows[j]
        return UnivariatePolynomial()

    def coefficient(self, i: int, j: int) -> GaussianRational:
        return self.coefficient_y(j).coefficient(i)

    def leading_y(self) -> UnivariatePolynomial:
        if not self.rows:
            raise ZeroPolynomial("zero polynomial")
        return self.rows[-1]

    def support(self):
        """Lattice points (i, j) = (degree in x, degree in y) with nonzero coeff."""
        pts = []
        for j, row in enumerate(self.rows):
            for i, c in enumerate(row.coeffs):
                if not c.is_zero():
                    pts.append((i, j))
        return pts

    # --- ring operations ----------

    def __add__(self, other):
        other = BivariatePolynomial.coerce(other)
        n = max(len(self.rows), len(other.rows))
        return BivariatePolynomial(
            [self.coefficient_y(j) + other.coefficient_y(j) for j in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial([-r for r in self.rows])

    def __sub__(self, other):
        return self + (-BivariatePolynomial.coerce(other))

    def __rsub__(self, other):
        return BivariatePolynomial.coerce(other) + (-self)

    def __mul__(self, other):
        other = BivariatePolynomial.coerce(other)
        if self.is_zero() or other.is_zero():
            return BivariatePolynomial()
        out = [UnivariatePolynomial()] * (len(self.rows) + len(other.rows) - 1)
        for j1, r1 in enumerate(self.rows):
            if r1.is_zero():
                continue
            for j2, r2 in enumerate(other.rows):
                out[j1 + j2] = out[j1 + j2] + r1 * r2
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = BivariatePolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # --- views / substitutions ----------

    def derivative_y(self) -> "BivariatePolynomial":
        return BivariatePolynomial(
            [r.scale(j) for j, r in enumerate(self.rows)][1:])

    def derivative_x(self) -> "BivariatePolynomial":
        return BivariatePolynomial([r.derivative() for r in self.rows])

    def eval_x(self, x0) -> UnivariatePolynomial:
        """Specialize x; result is a univariate polynomial in y."""
        return UnivariatePolynomial([r(x0) for r in self.rows])

    def eval_y(self, y0) -> UnivariatePolynomial:
        acc = UnivariatePolynomial()
        for r in reversed(self.rows):
            acc = acc * UnivariatePolynomial.coerce(y0) + r
        return acc

    def __call__(self, x, y):
        if isinstance(x, (int, Fraction, GaussianRational)) and \
                isinstance(y, (int, Fraction, GaussianRational)):
            acc = ZERO
            for r in reversed(self.rows):
                acc = acc * GaussianRational.coerce(y) + r(x)
            return acc
        acc = 0j
        yc = complex(y)
        for r in reversed(self.rows):
            acc = acc * yc + r(x)
        return acc

    def shift_x(self, a) -> "BivariatePolynomial":
        return BivariatePolynomial([r.shift(a) for r in self.rows])

    def shift_y(self, a) -> "BivariatePolynomial":
        """P(x, y + a) with a in Q(i)."""
        result = BivariatePolynomial()
        shifted = BivariatePolynomial([UnivariatePolynomial.constant(a),
                                       UnivariatePolynomial.constant(1)])
        power = BivariatePolynomial.constant(1)
        for r in self.rows:
            result = result + power * BivariatePolynomial([r])
            power = power * shifted
        return result

    def swap_variables(self) -> "BivariatePolynomial":
        """Q(x, y) = P(y, x)."""
        dx = self.degree_x()
        rows = []
        for i in range(dx + 1):
            rows.append(UnivariatePolynomial(
                [self.coefficient(i, j) for j in range(self.degree_y() + 1)]))
        return BivariatePolynomial(rows)

    def primitive_y(self) -> "BivariatePolynomial":
        """Divide out the x-content so the curve is primitive in y."""
        if self.is_zero():
            return self
        g = UnivariatePolynomial()
        for r in self.rows:
            g = g.gcd(r) if not g.is_zero() else \
                (r.monic() if not r.is_zero() else g)
            if g.degree() == 0:
                break
        if g.is_zero() or g.degree() == 0:
            return self
        return BivariatePolynomial([r.exact_div(g) for r in self.rows])

    def squarefree_y(self) -> bool:
        """True when P has no repeated factor in y (gcd with dP/dy trivial)."""
        if self.degree_y() < 1:
            return True
        r = resultant_y(self, self.derivative_y())
        return not r.is_zero()

    def __eq__(self, other):
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"BivariatePolynomial(deg_x={self.degree_x()}, deg_y={self.degree_y()})"

    def __str__(self):
        return self.format()

    def format(self, xvar: str = "x", yvar: str = "y") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for j in range(self.degree_y(), -1, -1):
            row = self.coefficient_y(j)
            if row.is_zero():
                continue
            if j == 0:
                parts.append(row.format(xvar))
                continue
            yj = yvar if j == 1 else f"{yvar}^{j}"
            if row.is_constant() and row.constant_value().is_one():
                parts.append(yj)
            elif row.is_constant():
                parts.append(f"{row.constant_value()}*{yj}")
            else:
                parts.append(f"({row.format(xvar)})*{yj}")
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out


def _sylvester_determinant(rows_p, rows_q, np_, nq):
    """Exact determinant of the Sylvester matrix with P's rows first.

    ``rows_p``/``rows_q`` are coefficient sequences (highest first) whose
    entries live in any exact field element type supporting +,*,/.
    """
    n = np_ + nq
    matrix = []
    for k in range(nq):
        row = [ZERO] * n
        for idx, c in enumerate(rows_p):
            row[k + idx] = c
        matrix.append(row)
    for k in range(np_):
        row = [ZERO] * n
        for idx, c in enumerate(rows_q):
            row[k + idx] = c
        matrix.append(row)
    # fraction-based Gaussian elimination with partial pivoting by exactness
    det = ONE
    sign = 1
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not matrix[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            return ZERO
        if pivot != col:
            matrix[col], matrix[pivot] = matrix[pivot], matrix[col]
            sign = -sign
        pv = matrix[col][col]
        det = det * pv
        inv = pv.inverse()
        for r in range(col + 1, n):
            factor = matrix[r][col] * inv
            if factor.is_zero():
                continue
            matrix[r] = [a - factor * b
                         for a, b in zip(matrix[r], matrix[col])]
    return det * sign


def resultant_y(P: BivariatePolynomial, Q: BivariatePolynomial) -> UnivariatePolynomial:
    """Res_y(P, Q): Sylvester determinant in y, exact, P rows first.

    Sign convention (documented and bit-stable): the Sylvester matrix puts
    P's coefficient rows first and writes coefficients lowest y-degree
    first, so Res_y(y - a, y - b) = b - a for monic linear inputs.

    Computed by evaluation at deg-bound + 1 rational points and exact
    Newton interpolation, which keeps the determinant scalar-sized.
    """
    P = BivariatePolynomial.coerce(P)
    Q = BivariatePolynomial.coerce(Q)
    if P.is_zero() or Q.is_zero():
        raise ZeroPolynomial("resultant of the zero polynomial")
    np_, nq = P.degree_y(), Q.degree_y()
    if np_ == 0 and nq == 0:
        return UnivariatePolynomial.constant(1)
    if np_ == 0:
        return P.rows[0] ** nq
    if nq == 0:
        return Q.rows[0] ** np_
    bound = P.degree_x() * nq + Q.degree_x() * np_
    rows_p = [P.coefficient_y(k) for k in range(np_ + 1)]
    rows_q = [Q.coefficient_y(k) for k in range(nq + 1)]
    xs = []
    vals = []
    t = 0
    while len(xs) <= bound:
        x0 = GaussianRational(t)
        rp = [c(x0) for c in rows_p]
        rq = [c(x0) for c in rows_q]
        xs.append(x0)
        vals.append(_sylvester_determinant(rp, rq, np_, nq))
        t += 1
    return _lagrange_interpolate(xs, vals)


def _lagrange_interpolate(xs, vals) -> UnivariatePolynomial:
    """Exact interpolation through (xs[k], vals[k]) via Newton divided differences."""
    n = len(xs)
    table = list(vals)
    for level in range(1, n):
        for k in range(n - 1, level - 1, -1):
            table[k] = (table[k] - table[k - 1]) / (xs[k] - xs[k - level])
    poly = UnivariatePolynomial()
    for k in range(n - 1, -1, -1):
        poly = poly * UnivariatePolynomial([-xs[k], 1]) + \
            UnivariatePolynomial.constant(table[k])
    return poly


def discriminant_y(P: BivariatePolynomial) -> UnivariatePolynomial:
    """(-1)^{n(n-1)/2} Res_y(P, dP/dy) / lc_y(P), exact."""
    P = BivariatePolynomial.coerce(P)
    n = P.degree_y()
    if n < 2:
        raise DegreeTooLow("discriminant requires degree >= 2 in y")
    res = resultant_y(P, P.derivative_y())
    disc = res.exact_div(P.leading_y())
    if (n * (n - 1) // 2) % 2:
        disc = -disc
    return disc
