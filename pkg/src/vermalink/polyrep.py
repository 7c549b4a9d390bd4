"""The polynomial super-representation P_nu of the floating-dot KLR algebra.

An element is a dict {(idem, xexp, omegas): rational}; the action itself
only produces integer coefficients.  ``xexp`` holds
exponents of the variables x_{r,i} in a global order (by label, then r),
``omegas`` is a strictly increasing tuple of indices of the odd variables
omega_{r,i} in the same order; the order fixes all Koszul signs.

Diagram generators are tuples, read bottom to top:
  ('x', k)          dot on strand k (1-based)
  ('t', k)          crossing of strands k and k+1
  ('w', r, i, a)    floating dot in region r (0 = leftmost), subscript i,
                    superscript a
"""
from itertools import combinations


def _poly_add(acc, key, c):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _omega_mul(s, t):
    """Product omega_s * omega_t of sorted tuples; returns (sign, tuple) or None."""
    if set(s) & set(t):
        return None
    merged = list(s) + list(t)
    # sign of the sorting permutation
    sign = 1
    for a in s:
        for b in t:
            if a > b:
                sign = -sign
    return sign, tuple(sorted(merged))


def ring_mul(f, g):
    """Product of ring elements {(xexp, omegas): c} in the supercommutative ring."""
    out = {}
    for (u1, s1), c1 in f.items():
        for (u2, s2), c2 in g.items():
            r = _omega_mul(s1, s2)
            if r is None:
                continue
            sign, s = r
            u = tuple(a + b for a, b in zip(u1, u2))
            _poly_add(out, (u, s), sign * c1 * c2)
    return out


def ring_add(f, g, scale=1):
    out = dict(f)
    for k, c in g.items():
        _poly_add(out, k, scale * c)
    return out


class PolyRep:
    """P_nu for a fixed nu given as {label: count}."""

    def __init__(self, nu):
        self.nu = {i: c for i, c in sorted(nu.items()) if c}
        self.vars = [(i, r) for i in self.nu for r in range(1, self.nu[i] + 1)]
        self.index = {v: k for k, v in enumerate(self.vars)}
        self.n = len(self.vars)
        self.zero_u = (0,) * self.n
        self._mono = {}

    # ring element helpers
    def one(self):
        return {(self.zero_u, ()): 1}

    def x(self, r, i):
        u = [0] * self.n
        u[self.index[(i, r)]] = 1
        return {(tuple(u), ()): 1}

    def omega(self, r, i):
        return {(self.zero_u, (self.index[(i, r)],)): 1}

    def xdeg(self, idx):
        u = [0] * self.n
        u[idx] = 1
        return tuple(u)

    def h(self, n, variables):
        """Complete homogeneous symmetric polynomial h_n in variables (indices)."""
        if n < 0:
            return {}
        out = {}
        for combo in _multisets(variables, n):
            u = [0] * self.n
            for v in combo:
                u[v] += 1
            _poly_add(out, (tuple(u), ()), 1)
        return out

    def e(self, n, variables):
        if n < 0 or n > len(variables):
            return {}
        out = {}
        for combo in combinations(variables, n):
            u = [0] * self.n
            for v in combo:
                u[v] += 1
            _poly_add(out, (tuple(u), ()), 1)
        return out

    def omega_power(self, r, i, a):
        """omega^a_{r,i} = sum_l (-1)^(r+a+l) h_{a+l-r}(x_l..x_r) omega_l."""
        if r < 1 or r > self.nu.get(i, 0):
            if r == 0:
                return {}
            raise IndexError("omega index out of range")
        out = {}
        for l in range(1, r + 1):
            hv = self.h(a + l - r, [self.index[(i, s)] for s in range(l, r + 1)])
            if not hv:
                continue
            sign = -1 if (r + a + l) % 2 else 1
            out = ring_add(out, ring_mul(hv, self.omega(l, i)), sign)
        return out

    # symmetric group action
    def sym_image_gen(self, k, idem, var, odd):
        """Image of a generator under s_k, as a ring element."""
        i, p = self.vars[var]
        ik, ik1 = idem[k - 1], idem[k]
        count = sum(1 for s in idem[:k] if s == i)
        if ik == ik1 == i:
            if not odd:
                if p == count:
                    return self.x(p + 1, i)
                if p == count + 1:
                    return self.x(p - 1, i)
                return self.x(p, i)
            if p == count:
                corr = ring_mul(ring_add(self.x(p, i), self.x(p + 1, i), -1), self.omega(p + 1, i))
                return ring_add(self.omega(p, i), corr)
            return self.omega(p, i)
        return self.omega(p, i) if odd else self.x(p, i)

    def sym_act_ring(self, k, idem, f):
        out = {}
        cache = {}

        def img(var, odd):
            key = (var, odd)
            if key not in cache:
                cache[key] = self.sym_image_gen(k, idem, var, odd)
            return cache[key]

        for (u, s), c in f.items():
            term = {(self.zero_u, ()): c}
            for var, e in enumerate(u):
                for _ in range(e):
                    term = ring_mul(term, img(var, False))
            for var in s:
                term = ring_mul(term, img(var, True))
            out = ring_add(out, term)
        return out

    def sym_act(self, k, elem):
        """s_k on a P_nu element {(idem, u, s): c}."""
        out = {}
        for idem, f in split(elem).items():
            new_idem = swap(idem, k)
            for (u, s), c in self.sym_act_ring(k, idem, f).items():
                _poly_add(out, (new_idem, u, s), c)
        return out

    def divided_difference(self, g, a, b):
        """Exact (g)/(x_a - x_b) for a ring element g; asserts divisibility."""
        rem = dict(g)
        out = {}
        while rem:
            key = max(rem, key=lambda k: (k[0][a], k))
            u, s = key
            if u[a] == 0:
                raise ArithmeticError("divided difference is not exact")
            c = rem.pop(key)
            u1 = list(u)
            u1[a] -= 1
            u1 = tuple(u1)
            _poly_add(out, (u1, s), c)
            u2 = list(u1)
            u2[b] += 1
            _poly_add(rem, (tuple(u2), s), c)
        return out

    # generator actions
    def act_gen(self, gen, elem):
        out = {}
        for key, c in elem.items():
            img = self._mono.get((gen, key))
            if img is None:
                idem, u, s = key
                new_idem, g = self.act_gen_ring(gen, idem, {(u, s): 1})
                img = {(new_idem, u2, s2): c2 for (u2, s2), c2 in g.items()}
                self._mono[(gen, key)] = img
            for k, c2 in img.items():
                _poly_add(out, k, c * c2)
        return out

    def act_gen_ring(self, gen, idem, f):
        kind = gen[0]
        if kind == "x":
            k = gen[1]
            i = idem[k - 1]
            l = sum(1 for s in idem[:k - 1] if s == i)
            return idem, ring_mul(self.x(l + 1, i), f)
        if kind == "t":
            k = gen[1]
            i, j = idem[k - 1], idem[k]
            sf = self.sym_act_ring(k, idem, f)
            new_idem = swap(idem, k)
            if i == j:
                l = sum(1 for s in idem[:k - 1] if s == i)
                a, b = self.index[(i, l + 1)], self.index[(i, l + 2)]
                return new_idem, self.divided_difference(ring_add(f, sf, -1), a, b)
            if abs(i - j) > 1 or i == j - 1:
                return new_idem, sf
            li = sum(1 for s in idem[:k - 1] if s == i)
            lj = sum(1 for s in idem[:k - 1] if s == j)
            factor = ring_add(self.x(li + 1, i), self.x(lj + 1, j))
            return new_idem, ring_mul(factor, sf)
        if kind == "w":
            _, r, j, a = gen
            return idem, ring_mul(self.fdot_element(idem, r, j, a), f)
        raise ValueError(f"unknown generator {gen!r}")

    def fdot_element(self, idem, r, j, a):
        left = idem[:r]
        lj = sum(1 for s in left if s == j)
        if lj == 0:
            return {}
        nb = [self.index[(lab, p)] for lab in (j - 1, j + 1)
              for p in range(1, sum(1 for s in left if s == lab) + 1)]
        lpm = len(nb)
        out = {}
        for t in range(lpm + 1):
            term = ring_mul(self.omega_power(lj, j, a + t), self.e(lpm - t, nb))
            out = ring_add(out, term, -1 if t % 2 else 1)
        return out

    def act_word(self, gens, elem):
        for g in gens:
            elem = self.act_gen(g, elem)
            if not elem:
                break
        return elem

    # degrees and windows
    def qdeg(self, u, s):
        d = 2 * sum(u)
        for v in s:
            d += 2 * (1 - self.vars[v][1])
        return d

    def ldeg(self, s):
        """lambda-degree vector as a sorted tuple of (label, degree)."""
        tally = {}
        for v in s:
            lab = self.vars[v][0]
            tally[lab] = tally.get(lab, 0) + 2
        return tuple(sorted(tally.items()))

    def window_basis(self, idem, qmax):
        """Monomials x^u omega_S on 1_idem with q-degree <= qmax."""
        out = []
        for size in range(self.n + 1):
            for s in combinations(range(self.n), size):
                base = self.qdeg(self.zero_u, s)
                budget = qmax - base
                if budget < 0:
                    continue
                for u in _compositions(self.n, budget // 2):
                    out.append((idem, u, s))
        return out

    def action_columns(self, gens, bottom, qmax):
        """Images of the window basis of 1_bottom under a generator word."""
        cols = []
        for key in self.window_basis(bottom, qmax):
            cols.append(self.act_word(gens, {key: 1}))
        return cols


def _multisets(items, n):
    if n == 0:
        yield ()
        return
    if not items:
        return
    first, rest = items[0], items[1:]
    for k in range(n, -1, -1):
        for tail in _multisets(rest, n - k):
            yield (first,) * k + tail


def _compositions(n, total):
    """All exponent vectors of length n with sum <= total."""
    if n == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(n - 1, total - first):
            yield (first,) + rest


def split(elem):
    out = {}
    for (idem, u, s), c in elem.items():
        out.setdefault(idem, {})[(u, s)] = c
    return out


def swap(idem, k):
    lst = list(idem)
    lst[k - 1], lst[k] = lst[k], lst[k - 1]
    return tuple(lst)


def elem_add(f, g, scale=1):
    out = dict(f)
    for k, c in g.items():
        _poly_add(out, k, scale * c)
    return out
