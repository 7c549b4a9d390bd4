"""Independent HOMFLY-PT oracle: Hecke algebra of S_n with the Ocneanu trace,
plus a Burau-matrix Alexander polynomial.

Conventions match the invariant computed in ``verma``:
g_i^2 = (q^-1 - q) g_i + 1, so g - g^-1 = q^-1 - q (skein relation),
tr(x) on n+1 strands = delta tr(x) with delta = (l - l^-1)/(q - q^-1),
tr(x g_n) = l^-1 tr(x) (framing).
"""
from fractions import Fraction
from functools import lru_cache

from .scalars import GradedCoeff, QFrac, Q, L, ONE, UNKNOT

Z = Q ** -1 - Q  # q^-1 - q


def _compose(u, v):
    # (u v)(i) = u(v(i)), one-line notation with 0-based images
    return tuple(u[v[i]] for i in range(len(v)))


def _s(n, i):
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def _inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


class HeckeElement:
    """sum c_w T_w with coefficients GradedCoeff in q only."""

    def __init__(self, n, terms):
        self.n = n
        self.terms = {w: c for w, c in terms.items() if not c.is_zero()}

    @classmethod
    def identity(cls, n):
        return cls(n, {tuple(range(n)): ONE})

    def left_mul_gen(self, i):
        """T_{s_i} * self."""
        out = {}
        s = _s(self.n, i)
        for w, c in self.terms.items():
            inv = _inverse(w)
            sw = _compose(s, w)
            if inv[i - 1] < inv[i]:
                out[sw] = out.get(sw, GradedCoeff()) + c
            else:
                out[w] = out.get(w, GradedCoeff()) + c * Z
                out[sw] = out.get(sw, GradedCoeff()) + c
        return HeckeElement(self.n, out)

    def left_mul_gen_inverse(self, i):
        """T_{s_i}^-1 = T_{s_i} - (q^-1 - q)."""
        a = self.left_mul_gen(i)
        out = dict(a.terms)
        for w, c in self.terms.items():
            out[w] = out.get(w, GradedCoeff()) - c * Z
        return HeckeElement(self.n, out)


def braid_to_hecke(b):
    # letters are read bottom to top, so each new letter multiplies on the left
    h = HeckeElement.identity(b.n)
    for g in b.letters:
        h = h.left_mul_gen(g) if g > 0 else h.left_mul_gen_inverse(-g)
    return h


@lru_cache(maxsize=None)
def _trace_basis(w):
    """Ocneanu trace of T_w, w in S_n (n = len(w)), as a QFrac."""
    n = len(w)
    if n == 0:
        return QFrac(1)
    if w[n - 1] == n - 1:
        return UNKNOT * _trace_basis(w[:n - 1]) if n > 1 else UNKNOT
    # w = u d with d = s_{n-1} s_{n-2} ... s_k, k = w^-1(n) (1-based), u in S_{n-1}
    k = _inverse(w)[n - 1] + 1
    d = tuple(range(n))
    for j in range(k, n):  # d = s_{n-1} ... s_k, apply s_k first
        d = _compose(_s(n, j), d)
    u = _compose(w, _inverse(d))
    assert u[n - 1] == n - 1
    # tr(T_u T_{n-1} T_e) = tr(T_e T_u T_{n-1}) = l^-1 tr(T_e T_u), e = s_{n-2}...s_k
    h = HeckeElement(n - 1, {u[:n - 1]: ONE})
    # T_e T_u: left multiply T_u by T_{s_k}, then T_{s_{k+1}}, ..., T_{s_{n-2}}
    for j in range(k, n - 1):
        h = h.left_mul_gen(j)
    return QFrac(L ** -1) * trace(h)


def trace(h):
    total = QFrac(0)
    for w, c in h.terms.items():
        total = total + QFrac(c) * _trace_basis(w)
    return total


def homfly_oracle(b):
    """Normalized HOMFLY-PT via the Ocneanu trace: l^writhe tr(b)."""
    return (QFrac(L ** b.writhe) * trace(braid_to_hecke(b))).reduced()


def homfly_reduced_oracle(b):
    value = homfly_oracle(b)
    # divide by the unknot value delta = (l - l^-1)/(q - q^-1)
    num = value.num
    den = value.den - 1
    quotient = _divide_by(num, GradedCoeff({(0, 1): 1, (0, -1): -1}))
    return QFrac(quotient, den).reduced()


def _divide_by(f, g):
    """Exact division of Laurent polynomials in q and l by l - l^-1."""
    # work in l: multiply through so that g = l^-1 (l^2 - 1)
    rem = {k: Fraction(c) for k, c in f.terms.items()}
    out = {}
    while rem:
        a, b = max(rem, key=lambda k: (k[1], k[0]))
        c = rem.pop((a, b))
        # leading term of (l - l^-1) is l
        out[(a, b - 1)] = out.get((a, b - 1), 0) + c
        key = (a, b - 2)
        rem[key] = rem.get(key, 0) + c
        if not rem[key]:
            del rem[key]
        if rem and min(k[1] for k in rem) < min(k[1] for k in f.terms) - 2:
            raise ValueError("not divisible by l - l^-1")
    return GradedCoeff(out)


# Alexander polynomial from the Burau representation


def alexander_oracle(b):
    """Conway-normalized Alexander polynomial of cl(b) as a Laurent polynomial
    in q, with t = q^-2 so that t^(1/2) - t^(-1/2) = q^-1 - q.

    Uses det(I - reduced Burau(b)) = Delta(t) (1 + t + ... + t^(n-1)), then
    symmetrizes.  The sign is fixed for knots by Delta(1) = 1.
    """
    import sympy
    t = sympy.Symbol("t")
    n = b.n
    if n == 1:
        return GradedCoeff.one()
    m = n - 1
    M = sympy.eye(m)
    for g in b.letters:
        i = abs(g) - 1  # sigma_{i+1}
        B = sympy.eye(m)
        if i > 0:
            B[i, i - 1] = t
        B[i, i] = -t
        if i < m - 1:
            B[i, i + 1] = 1
        if g < 0:
            B = B.inv()
        M = B * M
    num = sympy.cancel((sympy.eye(m) - M).det() / sum(t ** k for k in range(n)))
    num, den = sympy.fraction(sympy.together(num))
    pnum = sympy.Poly(sympy.expand(num), t)
    pden = sympy.Poly(sympy.expand(den), t)
    if len(pden.terms()) != 1:
        raise ValueError("Burau determinant is not a Laurent polynomial")
    (dk,), dc = pden.terms()[0]
    coeffs = {}
    for (k,), c in pnum.terms():
        r = sympy.Rational(c / dc)
        coeffs[k - dk] = Fraction(int(r.p), int(r.q))
    if not coeffs:
        return GradedCoeff()
    center = min(coeffs) + max(coeffs)
    value = GradedCoeff({(center - 2 * k, 0): c for k, c in coeffs.items()})
    if b.components() == 1 and sum(value.terms.values()) < 0:
        value = -value
    return value
