"""Exact commutative substrate: Laurent polynomials, fractions, cyclotomics.

A Laurent polynomial is a dictionary mapping exponent tuples to arbitrary
precision integers.  The exponent tuple has one slot per variable of the
ambient context: slot 0 is always the twist variable ``A``, followed by one
``Q`` variable per internal edge and one ``C`` variable per boundary edge of
the underlying trivalent graph.  Zero coefficients are never stored, so the
zero polynomial is the empty dict.

Fractions are stored with a *factored* denominator: a positive integer
constant times a multiset of primitive, monomial-content-free polynomial
factors with positive leading coefficient under graded lexicographic order.
This keeps the usual normal form (the expanded denominator has zero minimal
exponent in every variable and positive leading coefficient) while making
common-factor cancellation in sums cheap.  Fractions are never fully
gcd-reduced; equality is always decided by cross multiplication.

Cyclotomic scalars live in Q[A] / Phi_{2p}(A) for odd p >= 3, so the class
of ``A`` is an exact primitive 2p-th root of unity (A^p = -1).

Everything here is immutable after construction and all operations are
pure, so values can be shared freely across threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping


class ContextMismatch(ValueError):
    """Operands live over different variable contexts."""


class InversionError(ZeroDivisionError):
    """Attempt to invert zero (polynomial or cyclotomic)."""


class SpecializationError(ZeroDivisionError):
    """A denominator factor vanished under a cyclotomic specialization."""

    def __init__(self, message: str, factor: "LPoly | None" = None):
        super().__init__(message)
        self.factor = factor


# ---------------------------------------------------------------------------
# variable contexts
# ---------------------------------------------------------------------------

class VarContext:
    """Fixed, ordered variable set: ``A`` then Q's (internal edges) then C's.

    ``q_slots`` gives, in internal-edge order, the exponent-tuple slot of each
    Q variable; this is what exponent-shift substitution acts on.
    """

    __slots__ = ("names", "index", "q_slots", "nvars")

    def __init__(self, names: Iterable[str], q_slots: Iterable[int] = ()):
        names = tuple(names)
        if not names or names[0] != "A":
            raise ValueError("variable context must start with 'A'")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.q_slots = tuple(q_slots)
        self.nvars = len(names)

    def __eq__(self, other):
        return self is other or (isinstance(other, VarContext) and self.names == other.names)

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarContext({', '.join(self.names)})"

    def zero_exp(self) -> tuple[int, ...]:
        return (0,) * self.nvars


def _check_ctx(a, b):
    if a.ctx != b.ctx:
        raise ContextMismatch(f"mixed contexts {a.ctx!r} and {b.ctx!r}")


def _grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LPoly:
    """Multivariate Laurent polynomial with integer coefficients."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VarContext, terms: dict[tuple[int, ...], int]):
        self.ctx = ctx
        self.terms = terms  # owned; never mutated after construction

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ctx: VarContext) -> "LPoly":
        return cls(ctx, {})

    @classmethod
    def const(cls, ctx: VarContext, c: int) -> "LPoly":
        return cls(ctx, {ctx.zero_exp(): c} if c else {})

    @classmethod
    def monomial(cls, ctx: VarContext, exps: Mapping[str, int], coeff: int = 1) -> "LPoly":
        if coeff == 0:
            return cls.zero(ctx)
        e = [0] * ctx.nvars
        for name, k in exps.items():
            e[ctx.index[name]] += k
        return cls(ctx, {tuple(e): coeff})

    @classmethod
    def a_power(cls, ctx: VarContext, k: int, coeff: int = 1) -> "LPoly":
        return cls.monomial(ctx, {"A": k}, coeff)

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, LPoly) and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx.names, self.key()))

    def key(self) -> tuple:
        """Canonical hashable form (sorted term list)."""
        return tuple(sorted(self.terms.items()))

    def n_terms(self) -> int:
        return len(self.terms)

    def leading(self) -> tuple[tuple[int, ...], int]:
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def int_content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
            if g == 1:
                return 1
        return g

    def min_exponents(self) -> tuple[int, ...]:
        mins = None
        for e in self.terms:
            if mins is None:
                mins = list(e)
            else:
                for i, v in enumerate(e):
                    if v < mins[i]:
                        mins[i] = v
        return tuple(mins) if mins is not None else self.ctx.zero_exp()

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "LPoly") -> "LPoly":
        _check_ctx(self, other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LPoly(self.ctx, out)

    def __neg__(self) -> "LPoly":
        return LPoly(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LPoly") -> "LPoly":
        return self + (-other)

    def __mul__(self, other: "LPoly") -> "LPoly":
        _check_ctx(self, other)
        a, b = self.terms, other.terms
        if not a or not b:
            return LPoly.zero(self.ctx)
        if len(a) > len(b):
            a, b = b, a
        out: dict[tuple[int, ...], int] = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LPoly(self.ctx, out)

    def mul_int(self, c: int) -> "LPoly":
        if c == 0:
            return LPoly.zero(self.ctx)
        if c == 1:
            return self
        return LPoly(self.ctx, {e: c * v for e, v in self.terms.items()})

    def mul_monomial(self, exp: tuple[int, ...], coeff: int = 1) -> "LPoly":
        if coeff == 0:
            return LPoly.zero(self.ctx)
        if not any(exp):
            return self.mul_int(coeff)
        return LPoly(self.ctx, {tuple(x + y for x, y in zip(e, exp)): coeff * c
                                for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "LPoly":
        if n < 0:
            raise ValueError("negative power of a general polynomial")
        result = LPoly.const(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def shift(self, l: tuple[int, ...]) -> "LPoly":
        """Substitute Q_e -> A^{l_e} Q_e for every internal edge e."""
        if not any(l):
            return self
        slots = self.ctx.q_slots
        out: dict[tuple[int, ...], int] = {}
        for e, c in self.terms.items():
            da = 0
            for le, s in zip(l, slots):
                da += le * e[s]
            if da:
                e = (e[0] + da,) + e[1:]
            s2 = out.get(e, 0) + c
            if s2:
                out[e] = s2
            else:
                out.pop(e, None)
        return LPoly(self.ctx, out)

    def sub_a_squared(self) -> "LPoly":
        """Ring endomorphism A -> A^2 (used for mutation testing)."""
        out: dict[tuple[int, ...], int] = {}
        for e, c in self.terms.items():
            e2 = (2 * e[0],) + e[1:]
            s = out.get(e2, 0) + c
            if s:
                out[e2] = s
            else:
                out.pop(e2, None)
        return LPoly(self.ctx, out)

    # -- division ------------------------------------------------------------

    def exact_div(self, f: "LPoly", max_steps: int = 200_000) -> "LPoly | None":
        """Return self / f when the division is exact, else None.

        Both operands may be Laurent; monomial content is cleared first and
        restored on the quotient.  Works over the integers: exactness implies
        every intermediate leading coefficient divides.
        """
        _check_ctx(self, f)
        if f.is_zero():
            raise InversionError("division by zero polynomial")
        if self.is_zero():
            return self
        mp = self.min_exponents()
        mf = f.min_exponents()
        p0 = {tuple(x - y for x, y in zip(e, mp)): c for e, c in self.terms.items()}
        f0 = {tuple(x - y for x, y in zip(e, mf)): c for e, c in f.terms.items()}
        lf = max(f0, key=_grlex_key)
        cf = f0[lf]
        quot: dict[tuple[int, ...], int] = {}
        rem = dict(p0)
        steps = 0
        while rem:
            steps += 1
            if steps > max_steps:
                return None
            lr = max(rem, key=_grlex_key)
            cr = rem[lr]
            qe = tuple(x - y for x, y in zip(lr, lf))
            if any(v < 0 for v in qe):
                return None
            if cr % cf:
                return None
            qc = cr // cf
            quot[qe] = qc
            for e, c in f0.items():
                t = tuple(x + y for x, y in zip(qe, e))
                s = rem.get(t, 0) - qc * c
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        off = tuple(x - y for x, y in zip(mp, mf))
        return LPoly(self.ctx, {tuple(x + y for x, y in zip(e, off)): c
                                for e, c in quot.items()})

    # -- printing --------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ctx.names
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = [f"({c})"]
            for i, k in enumerate(e):
                if k == 0:
                    continue
                factors.append(names[i] if k == 1 else f"{names[i]}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        s = str(self)
        return f"LPoly({s if len(s) < 60 else s[:57] + '...'})"


def u_poly(ctx: VarContext, exps: Mapping[str, int], a_shift: int = 0) -> LPoly:
    """U(A^a * M) = A^a M - A^-a M^-1 for the monomial M given by exps."""
    e = [0] * ctx.nvars
    for name, k in exps.items():
        e[ctx.index[name]] += k
    e[0] += a_shift
    pos = tuple(e)
    neg = tuple(-v for v in pos)
    if pos == neg:
        return LPoly.zero(ctx)
    return LPoly(ctx, {pos: 1, neg: -1})


def quantum_int(ctx: VarContext, n: int) -> LPoly:
    """{n} = A^{2n} - A^{-2n}."""
    return u_poly(ctx, {}, 2 * n)


def _canonical_factor(p: LPoly) -> tuple[LPoly, int, tuple[int, ...], int]:
    """Split p = sign * content * monomial * canon.

    Returns (canon, sign, monomial_exponent, content) with canon primitive,
    zero minimal exponents and positive leading coefficient.
    """
    mins = p.min_exponents()
    g = p.int_content()
    cleared = {tuple(x - y for x, y in zip(e, mins)): c // g for e, c in p.terms.items()}
    lead = max(cleared, key=_grlex_key)
    sign = 1
    if cleared[lead] < 0:
        sign = -1
        cleared = {e: -c for e, c in cleared.items()}
    return LPoly(p.ctx, cleared), sign, mins, g


# ---------------------------------------------------------------------------
# fractions
# ---------------------------------------------------------------------------

# size guard: skip speculative cancellations on very large numerators
_CANCEL_NUM_LIMIT = 60_000


class Frac:
    """Quotient of Laurent polynomials in cross-multiplication semantics.

    ``den_const`` is a positive integer; ``factors`` maps a canonical key to
    (factor polynomial, multiplicity).  The mathematical denominator is
    ``den_const * prod(f^m)``.
    """

    __slots__ = ("ctx", "num", "den_const", "factors", "_den_cache")

    def __init__(self, ctx, num, den_const=1, factors=None):
        self.ctx = ctx
        self.num = num
        self.den_const = den_const
        self.factors = factors if factors is not None else {}
        self._den_cache = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_poly(cls, p: LPoly) -> "Frac":
        return cls(p.ctx, p)

    @classmethod
    def from_int(cls, ctx: VarContext, c: int) -> "Frac":
        return cls(ctx, LPoly.const(ctx, c))

    @classmethod
    def make(cls, num: LPoly, den_polys: Iterable[LPoly] = ()) -> "Frac":
        out = cls(num.ctx, num)
        for f in den_polys:
            out = out.div_poly(f)
        return out

    # -- structure ----------------------------------------------------------

    def den(self) -> LPoly:
        """Expanded denominator (cached)."""
        if self._den_cache is None:
            d = LPoly.const(self.ctx, self.den_const)
            for f, m in self.factors.values():
                for _ in range(m):
                    d = d * f
            self._den_cache = d
        return self._den_cache

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def _with_factor(self, canon: LPoly, mult: int) -> dict:
        fac = dict(self.factors)
        k = canon.key()
        if k in fac:
            f, m = fac[k]
            m += mult
            if m:
                fac[k] = (f, m)
            else:
                del fac[k]
        elif mult:
            fac[k] = (canon, mult)
        return fac

    def div_poly(self, f: LPoly) -> "Frac":
        """Divide by an arbitrary nonzero polynomial (joins the denominator)."""
        if f.is_zero():
            raise InversionError("division by zero polynomial")
        canon, sign, mono, content = _canonical_factor(f)
        num = self.num.mul_monomial(tuple(-v for v in mono), sign)
        out = Frac(self.ctx, num, self.den_const * content, self._with_factor(canon, 1))
        return out._simplified()

    # -- normalization -------------------------------------------------------

    def _simplified(self) -> "Frac":
        num, dc, fac = self.num, self.den_const, self.factors
        if num.is_zero():
            return Frac(self.ctx, num)
        changed = False
        if dc > 1:
            g = gcd(num.int_content(), dc)
            if g > 1:
                num = LPoly(self.ctx, {e: c // g for e, c in num.terms.items()})
                dc //= g
                changed = True
        if fac and num.n_terms() <= _CANCEL_NUM_LIMIT:
            newfac = dict(fac)
            for k in list(newfac):
                f, m = newfac[k]
                while m > 0:
                    q = num.exact_div(f)
                    if q is None:
                        break
                    num = q
                    m -= 1
                    changed = True
                if m:
                    newfac[k] = (f, m)
                else:
                    del newfac[k]
            fac = newfac
        if not changed:
            return self
        return Frac(self.ctx, num, dc, fac)

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "Frac") -> "Frac":
        _check_ctx(self, other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        # lcm of denominators, factor by factor
        lc = self.den_const * other.den_const // gcd(self.den_const, other.den_const)
        keys = set(self.factors) | set(other.factors)
        my_extra = LPoly.const(self.ctx, lc // self.den_const)
        ot_extra = LPoly.const(self.ctx, lc // other.den_const)
        fac = {}
        for k in keys:
            fm, mm = self.factors.get(k, (None, 0))
            fo, mo = other.factors.get(k, (None, 0))
            f = fm if fm is not None else fo
            m = max(mm, mo)
            fac[k] = (f, m)
            for _ in range(m - mm):
                my_extra = my_extra * f
            for _ in range(m - mo):
                ot_extra = ot_extra * f
        num = self.num * my_extra + other.num * ot_extra
        return Frac(self.ctx, num, lc, fac)._simplified()

    def __neg__(self) -> "Frac":
        return Frac(self.ctx, -self.num, self.den_const, self.factors)

    def __sub__(self, other: "Frac") -> "Frac":
        return self + (-other)

    def __mul__(self, other: "Frac") -> "Frac":
        _check_ctx(self, other)
        if self.is_zero() or other.is_zero():
            return Frac(self.ctx, LPoly.zero(self.ctx))
        fac = dict(self.factors)
        for k, (f, m) in other.factors.items():
            if k in fac:
                fac[k] = (f, fac[k][1] + m)
            else:
                fac[k] = (f, m)
        out = Frac(self.ctx, self.num * other.num, self.den_const * other.den_const, fac)
        return out._simplified()

    def mul_poly(self, p: LPoly) -> "Frac":
        return Frac(self.ctx, self.num * p, self.den_const, self.factors)._simplified()

    def mul_monomial(self, exps: Mapping[str, int], coeff: int = 1) -> "Frac":
        e = [0] * self.ctx.nvars
        for name, k in exps.items():
            e[self.ctx.index[name]] += k
        return Frac(self.ctx, self.num.mul_monomial(tuple(e), coeff),
                    self.den_const, self.factors)

    def mul_int(self, c: int) -> "Frac":
        if c == 0:
            return Frac(self.ctx, LPoly.zero(self.ctx))
        return Frac(self.ctx, self.num.mul_int(c), self.den_const, self.factors)._simplified()

    def inv(self) -> "Frac":
        if self.is_zero():
            raise InversionError("inversion of zero fraction")
        num = LPoly.const(self.ctx, self.den_const)
        for f, m in self.factors.values():
            for _ in range(m):
                num = num * f
        return Frac(self.ctx, num).div_poly(self.num)

    def __truediv__(self, other: "Frac") -> "Frac":
        return self * other.inv()

    def __pow__(self, n: int) -> "Frac":
        if n < 0:
            return self.inv() ** (-n)
        result = Frac.from_int(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def shift(self, l: tuple[int, ...]) -> "Frac":
        """Substitute Q_e -> A^{l_e} Q_e throughout (C and A untouched)."""
        if not any(l):
            return self
        out = Frac(self.ctx, self.num.shift(l), self.den_const, {})
        for f, m in self.factors.values():
            fs = f.shift(l)
            canon, sign, mono, content = _canonical_factor(fs)
            num = out.num.mul_monomial(tuple(-m * v for v in mono),
                                       -1 if (sign < 0 and m % 2) else 1)
            out = Frac(self.ctx, num, out.den_const * content ** m,
                       out._with_factor(canon, m))
        return out

    def sub_a_squared(self) -> "Frac":
        out = Frac(self.ctx, self.num.sub_a_squared(), self.den_const, {})
        for f, m in self.factors.values():
            fs = f.sub_a_squared()
            for _ in range(m):
                out = out.div_poly(fs)
        return out

    # -- comparison -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Frac):
            return NotImplemented
        if self.ctx != other.ctx:
            return False
        return frac_equal(self, other)

    def __hash__(self):  # pragma: no cover - fractions are not dict keys
        raise TypeError("Frac is unhashable (equality is cross-multiplication)")

    def __str__(self):
        d = self.den()
        if d.terms == {self.ctx.zero_exp(): 1}:
            return str(self.num)
        return f"{self.num} / {d}"

    def __repr__(self):
        s = str(self)
        return f"Frac({s if len(s) < 80 else s[:77] + '...'})"


def frac_equal(a: Frac, b: Frac) -> bool:
    """Cross-multiplication equality, with common den factors cancelled first."""
    _check_ctx(a, b)
    a_extra = LPoly.const(a.ctx, b.den_const)
    b_extra = LPoly.const(a.ctx, a.den_const)
    keys = set(a.factors) | set(b.factors)
    for k in keys:
        ma = a.factors.get(k, (None, 0))[1]
        mb = b.factors.get(k, (None, 0))[1]
        f = (a.factors.get(k) or b.factors.get(k))[0]
        for _ in range(mb - min(ma, mb)):
            a_extra = a_extra * f
        for _ in range(ma - min(ma, mb)):
            b_extra = b_extra * f
    return a.num * a_extra == b.num * b_extra


def shift_substitute(x: "Frac | LPoly", l: tuple[int, ...]):
    """P(Q_1,...) -> P(A^{l_1} Q_1, ..., A^{l_n} Q_n, C, A)."""
    return x.shift(tuple(l))


def poly_arith(op: str, a: LPoly, b: LPoly | None = None) -> LPoly:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown op {op!r}")


def frac_arith(op: str, a: Frac, b: Frac | None = None) -> Frac:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# cyclotomic field Q(xi), xi a primitive 2p-th root of unity
# ---------------------------------------------------------------------------

def _poly_divmod_q(a: list[Fraction], b: list[Fraction]):
    """Division with remainder in Q[x]; coefficient lists, low degree first."""
    a = list(a)
    db = len(b) - 1
    while b and b[-1] == 0:
        b = b[:-1]
        db -= 1
    q = [Fraction(0)] * max(1, len(a) - db)
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1] / b[-1]
        k = len(a) - 1 - db
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] -= c * bc
    while a and a[-1] == 0:
        a.pop()
    return q, a


def cyclotomic_polynomial(n: int) -> list[int]:
    """Coefficients of Phi_n, low degree first, computed by exact division."""
    if n == 1:
        return [-1, 1]
    poly = [Fraction(0)] * (n + 1)
    poly[0], poly[n] = Fraction(-1), Fraction(1)
    for d in range(1, n):
        if n % d == 0:
            phi_d = [Fraction(c) for c in cyclotomic_polynomial(d)]
            poly, rem = _poly_divmod_q(poly, phi_d)
            assert not rem, f"Phi_{d} must divide x^{n}-1"
    assert all(c.denominator == 1 for c in poly)
    return [int(c) for c in poly]


class CycloField:
    """Q[A] / Phi_{2p}(A) with precomputed reduction and power tables."""

    def __init__(self, p: int):
        if p < 3 or p % 2 == 0:
            raise ValueError("p must be an odd natural >= 3")
        self.p = p
        self.modulus = cyclotomic_polynomial(2 * p)
        self.deg = len(self.modulus) - 1  # Euler phi(2p)
        # x^(deg+i) mod Phi for i in range(deg)  (products have degree <= 2*deg-2)
        red = []
        cur = [Fraction(-c, self.modulus[-1]) for c in self.modulus[:-1]]
        red.append(tuple(cur))
        for _ in range(self.deg - 2):
            nxt = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(self.deg):
                    nxt[i] += top * red[0][i]
            cur = nxt
            red.append(tuple(cur))
        self._red = red
        self.zero = Cyclo(self, (Fraction(0),) * self.deg)
        self.one = self.from_rational(1)
        # A^k for k = 0 .. 2p-1 (A has multiplicative order exactly 2p)
        pows = [self.one]
        gen = Cyclo(self, tuple(Fraction(1 if i == 1 else 0) for i in range(self.deg)))
        for _ in range(2 * p - 1):
            pows.append(pows[-1] * gen)
        self.a_pows = pows
        # (-A)^k = (-1)^k A^k; (-A) has order p since A^p = -1
        self.minus_a_pows = [pows[k].neg() if k % 2 else pows[k] for k in range(p)]

    def from_rational(self, r) -> "Cyclo":
        r = Fraction(r)
        return Cyclo(self, (r,) + (Fraction(0),) * (self.deg - 1))

    def a_power(self, k: int) -> "Cyclo":
        return self.a_pows[k % (2 * self.p)]

    def minus_a_power(self, k: int) -> "Cyclo":
        return self.minus_a_pows[k % self.p]

    def _reduce(self, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        deg = self.deg
        out = coeffs[:deg] + [Fraction(0)] * (deg - len(coeffs[:deg]))
        for i, c in enumerate(coeffs[deg:]):
            if c:
                row = self._red[i]
                for j in range(deg):
                    out[j] += c * row[j]
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, CycloField) and other.p == self.p

    def __hash__(self):
        return hash(("CycloField", self.p))

    def __repr__(self):
        return f"CycloField(p={self.p})"


class Cyclo:
    """Element of Q[A]/Phi_{2p}(A); coefficient vector of length phi(2p)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, Cyclo) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.p, self.coeffs))

    def __add__(self, other: "Cyclo") -> "Cyclo":
        return Cyclo(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Cyclo") -> "Cyclo":
        return Cyclo(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def neg(self) -> "Cyclo":
        return Cyclo(self.field, tuple(-a for a in self.coeffs))

    def __neg__(self):
        return self.neg()

    def __mul__(self, other: "Cyclo") -> "Cyclo":
        a, b = self.coeffs, other.coeffs
        deg = self.field.deg
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        prod[i + j] += ca * cb
        return Cyclo(self.field, self.field._reduce(prod))

    def inv(self) -> "Cyclo":
        if self.is_zero():
            raise InversionError("inversion of zero cyclotomic")
        # extended Euclid in Q[x] against the modulus
        mod = [Fraction(c) for c in self.field.modulus]
        r0, r1 = mod, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and r1[-1] == 0:
                r1.pop()
            if len(r1) == 1:
                c = r1[0]
                return Cyclo(self.field, self.field._reduce([x / c for x in s1]))
            q, r = _poly_divmod_q(r0, r1)
            s = [Fraction(0)] * max(len(s0), len(q) + len(s1) - 1)
            for i, c0 in enumerate(s0):
                s[i] += c0
            for i, cq in enumerate(q):
                if cq:
                    for j, c1 in enumerate(s1):
                        s[i + j] -= cq * c1
            r0, r1, s0, s1 = r1, r, s1, s

    def __truediv__(self, other: "Cyclo") -> "Cyclo":
        return self * other.inv()

    def __pow__(self, n: int) -> "Cyclo":
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def as_rational(self) -> Fraction | None:
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"

    def __repr__(self):
        return f"Cyclo(p={self.field.p}, {self})"


def parse_cyclo_scalar(field: CycloField, text: str) -> Cyclo:
    """Parse '3', '-5/7', '2*(-A)^4', 'A^3', or '[c0,c1,...]' coefficient form."""
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise ValueError(f"bad cyclotomic literal {text!r}")
        parts = [s.strip() for s in text[1:-1].split(",")]
        coeffs = [Fraction(s) for s in parts]
        if len(coeffs) > field.deg:
            raise ValueError("coefficient vector longer than field degree")
        coeffs += [Fraction(0)] * (field.deg - len(coeffs))
        return Cyclo(field, tuple(coeffs))
    value = field.one
    for piece in text.split("*"):
        piece = piece.strip()
        if not piece:
            continue
        neg = False
        if piece.startswith("(-A)"):
            base = field.minus_a_power(1)
            rest = piece[4:]
        elif piece.startswith("-A"):
            base = field.minus_a_power(1)
            rest = piece[2:]
        elif piece.startswith("A"):
            base = field.a_power(1)
            rest = piece[1:]
        else:
            value = value * field.from_rational(Fraction(piece))
            continue
        k = 1
        if rest.startswith("^"):
            k = int(rest[1:])
        elif rest:
            raise ValueError(f"bad cyclotomic literal piece {piece!r}")
        value = value * base ** k
    return value


def specialize_cyclotomic(a: Frac, p: int, assign: Mapping[str, Cyclo],
                          field: CycloField | None = None) -> Cyclo:
    """Image of a fraction under A -> class of A mod Phi_{2p}, vars -> scalars."""
    if field is None:
        field = CycloField(p)
    elif field.p != p:
        raise ValueError("field/p mismatch")

    def eval_poly(poly: LPoly) -> Cyclo:
        total = field.zero
        names = poly.ctx.names
        for e, c in poly.terms.items():
            v = field.from_rational(c) * field.a_power(e[0])
            for i in range(1, len(e)):
                if e[i]:
                    v = v * assign[names[i]] ** e[i]
            total = total + v
        return total

    num = eval_poly(a.num)
    den = field.from_rational(a.den_const)
    for f, m in a.factors.values():
        fv = eval_poly(f)
        if fv.is_zero():
            raise SpecializationError(f"denominator factor vanished: {f}", f)
        den = den * fv ** m
    if den.is_zero():
        raise SpecializationError("denominator vanished under specialization")
    return num / den
