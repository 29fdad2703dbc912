"""Finite fields F_q and the cubic extension F_{q^3}.

Base-field elements are integer indices ``0..q-1``.  For prime ``q`` the index
is the residue itself; for ``q = p^e`` the index is ``sum(c_i * p**i)`` where
``c_i`` is the coefficient of ``t^i`` in the polynomial representative.

Extension elements are indices ``x0 + q*x1 + q^2*x2`` of the coordinate triple
``(x0, x1, x2)`` over the power basis ``(1, t, t^2)``.  The embedded copy of
F_q is therefore exactly the indices ``0..q-1``.
"""

from __future__ import annotations

import itertools
from typing import NamedTuple

import numpy as np
from sympy import factorint

MAX_Q = 64


class FieldError(ValueError):
    pass


class MonicCubic(NamedTuple):
    """``f = x^3 - c x^2 - b x - a``; the companion matrix has last column (a, b, c)."""

    a: int
    b: int
    c: int

    @property
    def degree(self) -> int:
        return 3


class MonicLinear(NamedTuple):
    """``x - root``."""

    root: int

    @property
    def degree(self) -> int:
        return 1


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e`` or None."""
    if q < 2:
        return None
    fac = factorint(q)
    if len(fac) != 1:
        return None
    ((p, e),) = fac.items()
    return int(p), int(e)


# -- polynomials over a prime field, coefficient lists low-degree first -----


def _poly_mod_p(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        a.pop()
    return a


def _is_irreducible_mod_p(m: list[int], p: int) -> bool:
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            div = list(low) + [1]
            r = _poly_mod_p(m, div, p)
            if not any(r):
                return False
    return True


def _smallest_irreducible_mod_p(p: int, e: int) -> tuple[int, ...]:
    # polynomials ordered by their base-p integer value (high-degree coefficient
    # most significant); returns coefficients low-degree first, monic
    for n in range(p**e):
        low = [(n // p**i) % p for i in range(e)]
        m = low + [1]
        if _is_irreducible_mod_p(m, p):
            return tuple(m)
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")


class FieldCtx:
    """Arithmetic tables for F_q.  Immutable after construction."""

    def __init__(self, q: int):
        pe = prime_power(q) if isinstance(q, int) else None
        if pe is None:
            raise FieldError(f"q={q!r} is not a prime power")
        if q > MAX_Q:
            raise FieldError(f"q={q} exceeds the supported maximum {MAX_Q}")
        self.q = q
        self.p, self.e = pe
        p, e = self.p, self.e
        if e == 1:
            self.modulus: tuple[int, ...] | None = None
            add = [[(x + y) % p for y in range(q)] for x in range(q)]
            mul = [[(x * y) % p for y in range(q)] for x in range(q)]
        else:
            self.modulus = _smallest_irreducible_mod_p(p, e)
            digits = [[(x // p**i) % p for i in range(e)] for x in range(q)]
            add = [
                [sum(((dx + dy) % p) * p**i for i, (dx, dy) in enumerate(zip(digits[x], digits[y])))
                 for y in range(q)]
                for x in range(q)
            ]
            mul = [[0] * q for _ in range(q)]
            for x in range(q):
                for y in range(x, q):
                    prod = [0] * (2 * e - 1)
                    for i, dx in enumerate(digits[x]):
                        if dx:
                            for j, dy in enumerate(digits[y]):
                                prod[i + j] = (prod[i + j] + dx * dy) % p
                    r = _poly_mod_p(prod, list(self.modulus), p)
                    v = sum(c * p**i for i, c in enumerate(r))
                    mul[x][y] = mul[y][x] = v
        self.add_t = add
        self.mul_t = mul
        self.neg_t = [row.index(0) for row in add]
        self.sub_t = [[add[x][self.neg_t[y]] for y in range(q)] for x in range(q)]
        self.inv_t = [0] + [mul[x].index(1) for x in range(1, q)]
        self._add_np = np.array(add, dtype=np.int64)
        self._mul_np = np.array(mul, dtype=np.int64)
        self._sub_np = np.array(self.sub_t, dtype=np.int64)

    def __repr__(self) -> str:
        return f"FieldCtx(q={self.q})"

    def describe(self) -> str:
        """Human-readable model of F_q, e.g. ``F_4 = F_2[t]/(t^2+t+1)``."""
        if self.modulus is None:
            return f"F_{self.q} = Z/{self.q}"
        terms = []
        for i in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
            terms.append(mono if c == 1 else (f"{c}{mono}" if i else str(c)))
        return f"F_{self.q} = F_{self.p}[t]/({'+'.join(terms)})"

    def __reduce__(self):
        return (FieldCtx, (self.q,))

    # scalar arithmetic
    def add(self, x: int, y: int) -> int:
        return self.add_t[x][y]

    def sub(self, x: int, y: int) -> int:
        return self.sub_t[x][y]

    def mul(self, x: int, y: int) -> int:
        return self.mul_t[x][y]

    def neg(self, x: int) -> int:
        return self.neg_t[x]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.inv_t[x]

    def pow(self, x: int, n: int) -> int:
        r = 1
        for _ in range(n):
            r = self.mul_t[r][x]
        return r

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_q."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    # vectorized arithmetic on integer index arrays; F_2 uses bit operations
    # because the 2-d table lookups dominate the q = 2 sweeps
    def vadd(self, x, y):
        if self.q == 2:
            return x ^ y
        return self._add_np[x, y]

    def vsub(self, x, y):
        if self.q == 2:
            return x ^ y
        return self._sub_np[x, y]

    def vmul(self, x, y):
        if self.q == 2:
            return x & y
        return self._mul_np[x, y]

    def smul(self, s: int, y):
        """Scalar times array."""
        if self.q == 2:
            return y if s else np.zeros_like(y)
        return self._mul_np[s][y]

    def sadd(self, s: int, y):
        if self.q == 2:
            return y ^ 1 if s else y
        return self._add_np[s][y]


def build_field(q: int) -> FieldCtx:
    return FieldCtx(q)


def poly_key(f: MonicCubic, F: FieldCtx) -> tuple[int, int, int]:
    """Ordering key: standard coefficients of x^2, x, 1 (high-degree first)."""
    return (F.neg(f.c), F.neg(f.b), F.neg(f.a))


def eval_cubic(F: FieldCtx, f: MonicCubic, x: int) -> int:
    x2 = F.mul(x, x)
    x3 = F.mul(x2, x)
    v = F.sub(x3, F.mul(f.c, x2))
    v = F.sub(v, F.mul(f.b, x))
    return F.sub(v, f.a)


def irreducible_cubics(F: FieldCtx) -> list[MonicCubic]:
    out = []
    for a, b, c in itertools.product(F.elements(), repeat=3):
        f = MonicCubic(a, b, c)
        if all(eval_cubic(F, f, x) != 0 for x in F.elements()):
            out.append(f)
    out.sort(key=lambda f: poly_key(f, F))
    assert len(out) == (F.q**3 - F.q) // 3
    return out


class ExtCtx:
    """F_{q^3} = F_q[t]/(f) for the smallest irreducible monic cubic f."""

    def __init__(self, base: FieldCtx):
        self.base = F = base
        q = F.q
        self.q = q
        self.size = N = q**3
        self.cubic = irreducible_cubics(F)[0]
        a, b, c = self.cubic
        # t^3 = a + b t + c t^2
        self._coords = [(i % q, (i // q) % q, i // (q * q)) for i in range(N)]

        def polymul(u: int, v: int) -> int:
            x0, x1, x2 = self._coords[u]
            y0, y1, y2 = self._coords[v]
            m, ad = F.mul_t, F.add_t
            p0 = m[x0][y0]
            p1 = ad[m[x0][y1]][m[x1][y0]]
            p2 = ad[ad[m[x0][y2]][m[x1][y1]]][m[x2][y0]]
            p3 = ad[m[x1][y2]][m[x2][y1]]
            p4 = m[x2][y2]
            # t^4 = a t + b t^2 + c t^3
            p1 = ad[p1][m[p4][a]]
            p2 = ad[p2][m[p4][b]]
            p3 = ad[p3][m[p4][c]]
            p0 = ad[p0][m[p3][a]]
            p1 = ad[p1][m[p3][b]]
            p2 = ad[p2][m[p3][c]]
            return p0 + q * p1 + q * q * p2

        order = N - 1
        cofactors = [order // r for r in factorint(order)]
        gen = None
        for g in range(2, N):
            if all(self._pow_slow(polymul, g, k) != 1 for k in cofactors):
                gen = g
                break
        if gen is None:  # N == 2 cannot happen for q >= 2
            raise FieldError("no primitive element found")
        exp = [1] * order
        for i in range(1, order):
            exp[i] = polymul(exp[i - 1], gen)
        log = [0] * N
        for i, v in enumerate(exp):
            log[v] = i
        self.generator = gen
        self.exp = exp
        self.log = log
        self.frob_t = [[k for k in range(N)] for _ in range(3)]
        self.frob_t[1] = [0] + [exp[(log[k] * q) % order] for k in range(1, N)]
        self.frob_t[2] = [self.frob_t[1][self.frob_t[1][k]] for k in range(N)]

    @staticmethod
    def _pow_slow(polymul, g: int, n: int) -> int:
        r, base = 1, g
        while n:
            if n & 1:
                r = polymul(r, base)
            base = polymul(base, base)
            n >>= 1
        return r

    def __repr__(self) -> str:
        return f"ExtCtx(q={self.q}, cubic={self.cubic})"

    def __reduce__(self):
        return (ExtCtx, (self.base,))

    def coords(self, k: int) -> tuple[int, int, int]:
        return self._coords[k]

    def from_coords(self, x0: int, x1: int, x2: int) -> int:
        return x0 + self.q * x1 + self.q * self.q * x2

    def elements(self) -> range:
        return range(self.size)

    def in_base(self, k: int) -> bool:
        return k < self.q

    def t(self) -> int:
        return self.q

    def add(self, u: int, v: int) -> int:
        ad = self.base.add_t
        x, y = self._coords[u], self._coords[v]
        return self.from_coords(ad[x[0]][y[0]], ad[x[1]][y[1]], ad[x[2]][y[2]])

    def neg(self, u: int) -> int:
        ng = self.base.neg_t
        x = self._coords[u]
        return self.from_coords(ng[x[0]], ng[x[1]], ng[x[2]])

    def sub(self, u: int, v: int) -> int:
        return self.add(u, self.neg(v))

    def mul(self, u: int, v: int) -> int:
        if u == 0 or v == 0:
            return 0
        return self.exp[(self.log[u] + self.log[v]) % (self.size - 1)]

    def inv(self, u: int) -> int:
        if u == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(-self.log[u]) % (self.size - 1)]

    def pow(self, u: int, n: int) -> int:
        if n == 0:
            return 1
        if u == 0:
            return 0
        return self.exp[(self.log[u] * n) % (self.size - 1)]


def build_extension(base: FieldCtx) -> ExtCtx:
    return ExtCtx(base)


def frobenius(E: ExtCtx, k: int, i: int) -> int:
    """k^(q^i)."""
    return E.frob_t[i % 3][k]


def conjugates(E: ExtCtx, k: int) -> tuple[int, int, int]:
    return (k, E.frob_t[1][k], E.frob_t[2][k])


class SigmaError(RuntimeError):
    pass


def sigma(E: ExtCtx, j: int, k: int) -> int:
    """Elementary symmetric function of degree j in the conjugates of k."""
    k0, k1, k2 = conjugates(E, k)
    if j == 1:
        v = E.add(E.add(k0, k1), k2)
    elif j == 2:
        v = E.add(E.add(E.mul(k0, k1), E.mul(k0, k2)), E.mul(k1, k2))
    elif j == 3:
        v = E.mul(E.mul(k0, k1), k2)
    else:
        raise ValueError(f"j must be 1, 2 or 3, got {j}")
    if not E.in_base(v):
        raise SigmaError(f"sigma_{j}({k}) = {v} is not in the base field")
    return v


def sigmas(E: ExtCtx, k: int) -> tuple[int, int, int]:
    return sigma(E, 1, k), sigma(E, 2, k), sigma(E, 3, k)


def phi(E: ExtCtx, k: int, kh: int) -> int:
    """(k + kh)(sigma1(kh) - kh) - sigma2(kh)."""
    return E.sub(E.mul(E.add(k, kh), E.sub(sigma(E, 1, kh), kh)), sigma(E, 2, kh))


def min_poly(E: ExtCtx, k: int) -> MonicCubic | MonicLinear:
    if E.in_base(k):
        return MonicLinear(k)
    s1, s2, s3 = sigmas(E, k)
    return MonicCubic(s3, E.base.neg(s2), s1)


def eval_cubic_ext(E: ExtCtx, f: MonicCubic, x: int) -> int:
    x2 = E.mul(x, x)
    v = E.sub(E.mul(x2, x), E.mul(f.c, x2))
    v = E.sub(v, E.mul(f.b, x))
    return E.sub(v, f.a)


def cubic_roots(E: ExtCtx, f: MonicCubic) -> tuple[int, int, int]:
    """Conjugate root triple (r, r^q, r^(q^2)); r has the smallest coordinate triple."""
    F = E.base
    if any(eval_cubic(F, f, x) == 0 for x in F.elements()):
        raise FieldError(f"{f} is reducible over F_{F.q}")
    roots = [r for r in E.elements() if eval_cubic_ext(E, f, r) == 0]
    r = min(roots, key=E.coords)
    out = conjugates(E, r)
    assert sorted(out) == sorted(roots)
    return out


def expand_conjugate_product(E: ExtCtx, k: int) -> tuple[int, int, int]:
    """Coefficients (e2, e1, e0) of prod_i (x - k<i>) = x^3 + e2 x^2 + e1 x + e0."""
    poly = [1]  # low-degree first, over the extension
    for r in conjugates(E, k):
        nr = E.neg(r)
        new = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            new[i + 1] = E.add(new[i + 1], c)
            new[i] = E.add(new[i], E.mul(c, nr))
        poly = new
    return poly[2], poly[1], poly[0]
