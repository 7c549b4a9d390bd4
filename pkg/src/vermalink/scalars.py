"""Exact scalars in q and l (l stands for lambda = q^beta).

``GradedCoeff`` is a Laurent polynomial in q and l with rational
coefficients.  ``QFrac`` is such a polynomial divided by a power of
(q - q^-1), which is the only kind of denominator the invariants produce.
``ConeSeries`` is a window-truncated power series used when a rational
value has to be compared with graded dimensions.
"""
from fractions import Fraction


def _fmt_rational(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class GradedCoeff:
    """Finite sum of c * q^a * l^b, stored as {(a, b): Fraction}."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, c in terms.items():
                if c:
                    clean[(int(key[0]), int(key[1]))] = Fraction(c)
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def monomial(cls, a=0, b=0, c=1):
        return cls({(a, b): c})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(0, 0): 1})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GradedCoeff):
            return x
        return cls({(0, 0): x})

    # arithmetic
    def __add__(self, other):
        other = GradedCoeff.coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return GradedCoeff(out)

    __radd__ = __add__

    def __neg__(self):
        return GradedCoeff({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-GradedCoeff.coerce(other))

    def __rsub__(self, other):
        return GradedCoeff.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GradedCoeff):
            other = Fraction(other)
            return GradedCoeff({k: c * other for k, c in self.terms.items()})
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return GradedCoeff(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            ((a, b), c), = self.terms.items()
            return GradedCoeff({(-a, -b): 1 / c}) ** (-n)
        out = GradedCoeff.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, a=0, b=0):
        return GradedCoeff({(x + a, y + b): c for (x, y), c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, GradedCoeff):
            try:
                other = GradedCoeff.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def coefficient(self, a, b=0):
        return self.terms.get((a, b), Fraction(0))

    def q_range(self):
        qs = [a for a, _ in self.terms]
        return (min(qs), max(qs)) if qs else (0, 0)

    def l_degrees(self):
        return sorted({b for _, b in self.terms})

    # substitutions
    def subs_l_qpow(self, N):
        """Substitute l = q^N."""
        out = {}
        for (a, b), c in self.terms.items():
            k = (a + N * b, 0)
            out[k] = out.get(k, 0) + c
        return GradedCoeff(out)

    def subs_q_inverse(self):
        return GradedCoeff({(-a, b): c for (a, b), c in self.terms.items()})

    def subs_l_inverse(self):
        return GradedCoeff({(a, -b): c for (a, b), c in self.terms.items()})

    def div_qq(self):
        """Exact division by (q - q^-1); returns None if it does not divide."""
        # f / (q - q^-1) = q f / (q^2 - 1), done separately in each l-degree
        rem = {k: c for k, c in self.terms.items()}
        out = {}
        by_l = {}
        for (a, b) in rem:
            by_l.setdefault(b, []).append(a)
        for b, qs in by_l.items():
            poly = {a + 1: rem[(a, b)] for a in qs}
            low = min(poly)
            while poly:
                top = max(poly)
                if top - 2 < low:
                    return None
                c = poly.pop(top)
                out[(top - 2, b)] = c
                poly[top - 2] = poly.get(top - 2, 0) + c
                if not poly[top - 2]:
                    del poly[top - 2]
        return GradedCoeff(out)

    # output
    def sorted_terms(self, descending=True):
        return sorted(self.terms.items(), reverse=descending)

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in self.sorted_terms():
            mono = []
            if a:
                mono.append("q" if a == 1 else f"q^{a}")
            if b:
                mono.append("l" if b == 1 else f"l^{b}")
            mag = abs(c)
            if not mono:
                body = _fmt_rational(mag)
            elif mag == 1:
                body = "*".join(mono)
            else:
                body = _fmt_rational(mag) + "*" + "*".join(mono)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def to_json(self):
        return [[a, b, f"{c.numerator}/{c.denominator}"]
                for (a, b), c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data):
        return cls({(a, b): Fraction(c) for a, b, c in data})

    def __repr__(self):
        return f"GradedCoeff({self.to_text()})"

    __str__ = to_text


Q = GradedCoeff.monomial(1, 0)
L = GradedCoeff.monomial(0, 1)
ONE = GradedCoeff.one()
ZERO = GradedCoeff.zero()
QQ = GradedCoeff({(1, 0): 1, (-1, 0): -1})  # q - q^-1


class QFrac:
    """num / (q - q^-1)^den with den >= 0."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=0):
        self.num = GradedCoeff.coerce(num)
        self.den = den
        if den < 0:
            self.num = self.num * QQ ** (-den)
            self.den = 0

    @classmethod
    def coerce(cls, x):
        return x if isinstance(x, QFrac) else cls(x, 0)

    def _lift(self, d):
        if d == self.den:
            return self.num
        return self.num * QQ ** (d - self.den)

    def __add__(self, other):
        other = QFrac.coerce(other)
        d = max(self.den, other.den)
        return QFrac(self._lift(d) + other._lift(d), d)

    __radd__ = __add__

    def __neg__(self):
        return QFrac(-self.num, self.den)

    def __sub__(self, other):
        return self + (-QFrac.coerce(other))

    def __rsub__(self, other):
        return QFrac.coerce(other) - self

    def __mul__(self, other):
        other = QFrac.coerce(other)
        return QFrac(self.num * other.num, self.den + other.den)

    __rmul__ = __mul__

    def is_zero(self):
        return self.num.is_zero()

    def reduced(self):
        num, den = self.num, self.den
        if num.is_zero():
            return QFrac(ZERO, 0)
        while den > 0:
            nxt = num.div_qq()
            if nxt is None:
                break
            num, den = nxt, den - 1
        return QFrac(num, den)

    def as_laurent(self):
        """The value as a GradedCoeff; raises if a denominator survives."""
        r = self.reduced()
        if r.den:
            raise ValueError("denominator (q - q^-1) does not cancel")
        return r.num

    def __eq__(self, other):
        if not isinstance(other, QFrac):
            try:
                other = QFrac.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        d = max(self.den, other.den)
        return self._lift(d) == other._lift(d)

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, r.den))

    def map_num(self, fn):
        return QFrac(fn(self.num), self.den)

    def mirror(self):
        """q -> q^-1, l -> l^-1; the denominator changes sign each time."""
        num = self.num.subs_q_inverse().subs_l_inverse()
        if self.den % 2:
            num = -num
        return QFrac(num, self.den)

    def to_text(self):
        r = self.reduced()
        if r.den == 0:
            return r.num.to_text()
        den = "(q - q^-1)" if r.den == 1 else f"(q - q^-1)^{r.den}"
        return f"({r.num.to_text()})/{den}"

    def to_json(self):
        r = self.reduced()
        return {"numerator": r.num.to_json(), "denominator_power": r.den}

    def __repr__(self):
        return f"QFrac({self.to_text()})"

    __str__ = to_text


def quantum_integer(n):
    """[n]_q = q^(n-1) + q^(n-3) + ... + q^(1-n), odd in n."""
    if n == 0:
        return GradedCoeff.zero()
    if n < 0:
        return -quantum_integer(-n)
    return GradedCoeff({(n - 1 - 2 * k, 0): 1 for k in range(n)})


def shifted_quantum_number(k):
    """[beta + k]_q as l*q^k - l^-1*q^-k over (q - q^-1)."""
    return QFrac(GradedCoeff({(k, 1): 1, (-k, -1): -1}), 1)


def bracket(shifted, offset):
    """[mu_i - mu_{i+1}]_q where the difference is beta*shifted + offset.

    ``shifted`` is +1, 0 or -1 (the coefficient of beta).
    """
    if shifted == 0:
        return QFrac(quantum_integer(offset), 0)
    if shifted == 1:
        return shifted_quantum_number(offset)
    if shifted == -1:
        return -shifted_quantum_number(-offset)
    raise ValueError("weights differ by more than one beta")


UNKNOT = shifted_quantum_number(0)


def specialize(c, target, N=None):
    """Specialize l -> q^N ("glN") or l -> 1 ("alexander").

    Returns a GradedCoeff with only q-exponents.  Raises ValueError if a
    (q - q^-1) denominator survives.
    """
    c = QFrac.coerce(c)
    if target == "glN":
        if N is None:
            raise ValueError("glN specialization needs N")
        num = c.num.subs_l_qpow(N)
    elif target == "alexander":
        num = c.num.subs_l_qpow(0)
    else:
        raise ValueError(f"unknown specialization {target!r}")
    return QFrac(num, c.den).as_laurent()


class ConeSeries:
    """Truncated series sum c * q^a * l^b with a in [qmin, qmax].

    Terms with q-exponent below ``qmin`` are absent by construction (the
    series is cone bounded); terms above ``qmax`` are unknown.
    """

    def __init__(self, terms, window):
        qmin, qmax, lmin, lmax = window
        self.window = (qmin, qmax, lmin, lmax)
        self.terms = {(a, b): Fraction(c) for (a, b), c in terms.items()
                      if c and qmin <= a <= qmax and lmin <= b <= lmax}
        self.truncated = True

    @classmethod
    def expand(cls, value, window):
        """Expand a QFrac using 1/(q - q^-1) = -q (1 + q^2 + q^4 + ...)."""
        value = QFrac.coerce(value)
        qmin, qmax, lmin, lmax = window
        cur = dict(value.num.terms)
        for _ in range(value.den):
            nxt = {}
            for (a, b), c in cur.items():
                e = a + 1
                while e <= qmax + 2 * value.den:
                    nxt[(e, b)] = nxt.get((e, b), 0) - c
                    e += 2
            cur = nxt
        low = min((a for a, _ in cur), default=qmin)
        return cls(cur, (min(qmin, low), qmax, lmin, lmax))

    def _valid_top(self, other):
        s, o = self.window, other.window
        return min(s[1] + o[0], o[1] + s[0], s[1], o[1])

    def __add__(self, other):
        w = (min(self.window[0], other.window[0]), min(self.window[1], other.window[1]),
             max(self.window[2], other.window[2]), min(self.window[3], other.window[3]))
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return ConeSeries(out, w)

    def __neg__(self):
        return ConeSeries({k: -c for k, c in self.terms.items()}, self.window)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (GradedCoeff, QFrac)):
            other = ConeSeries.expand(other, self.window)
        top = self._valid_top(other)
        w = (self.window[0] + other.window[0], top,
             max(self.window[2], other.window[2]), min(self.window[3], other.window[3]))
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                if a1 + a2 <= top:
                    k = (a1 + a2, b1 + b2)
                    out[k] = out.get(k, 0) + c1 * c2
        return ConeSeries(out, w)

    def coefficient(self, a, b=0):
        return self.terms.get((a, b), Fraction(0))

    def agrees_with(self, other, qmax=None):
        """Equality of coefficients on the common window up to qmax."""
        top = min(self.window[1], other.window[1])
        if qmax is not None:
            top = min(top, qmax)
        lo = max(self.window[2], other.window[2])
        hi = min(self.window[3], other.window[3])
        keys = {k for k in self.terms} | {k for k in other.terms}
        for (a, b) in keys:
            if a <= top and lo <= b <= hi:
                if self.terms.get((a, b), 0) != other.terms.get((a, b), 0):
                    return False
        return True

    def __repr__(self):
        return f"ConeSeries({GradedCoeff(self.terms).to_text()}, window={self.window})"
