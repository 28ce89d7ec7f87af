"""Exact coefficient arithmetic: rationals and small rational functions.

Every coefficient in the workbench lives in the fraction field
``Q(x_1, ..., x_k)`` over a short tuple of named parameters (at most a
handful, e.g. ``("hW",)`` or ``("h", "cLI")``).  A :class:`Scalar` is
kept in canonical form at all times, so equality is literal
representation equality and exact zero tests are trivial:

* numerator and denominator share no nonconstant polynomial factor,
* both are primitive integer-coefficient polynomials with positive
  leading coefficient (lexicographic order over the parameter tuple),
* the rational content of the fraction, sign included, is a separate
  ``fractions.Fraction`` factor.

Polynomials are dicts mapping exponent tuples to int coefficients, so
the inner loops run on machine integers; the gcd used for cancellation
is a primitive pseudo-remainder sequence with a dense integer fast path
for the univariate case that dominates in practice.
"""

from __future__ import annotations

import math
from fractions import Fraction

Poly = dict  # exponent tuple -> int, zero coefficients never stored


def _pconst(ctx_len: int, value: int) -> Poly:
    if value == 0:
        return {}
    return {(0,) * ctx_len: value}


def _pis_const(p: Poly) -> bool:
    return len(p) == 0 or (len(p) == 1 and not any(next(iter(p))))


def _padd(a: Poly, b: Poly) -> Poly:
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def _pneg(a: Poly) -> Poly:
    return {e: -c for e, c in a.items()}


def _pscale(a: Poly, k: int) -> Poly:
    if not k:
        return {}
    return {e: c * k for e, c in a.items()}


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return {}
    if _pis_const(a):
        return _pscale(b, next(iter(a.values())))
    if _pis_const(b):
        return _pscale(a, next(iter(b.values())))
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e)
            if s is None:
                out[e] = ca * cb
            else:
                s = s + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def _ppow(a: Poly, k: int) -> Poly:
    out = None
    base = a
    while k:
        if k & 1:
            out = base if out is None else _pmul(out, base)
        k >>= 1
        if k:
            base = _pmul(base, base)
    return out if out is not None else {(): 1}


def _plead(a: Poly) -> tuple:
    """Leading (exponent, coeff) under lex order on exponent tuples."""
    e = max(a)
    return e, a[e]


def _pvars(a: Poly) -> set:
    used = set()
    for e in a:
        for i, x in enumerate(e):
            if x:
                used.add(i)
    return used


def _picontent(a: Poly) -> int:
    """Positive integer content (gcd of the coefficients)."""
    g = 0
    for c in a.values():
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


def _pprimitive_int(a: Poly) -> tuple[int, Poly]:
    """(content, primitive part) with the primitive part's lc positive."""
    if not a:
        return 1, {}
    g = _picontent(a)
    if _plead(a)[1] < 0:
        g = -g
    if g == 1:
        return 1, a
    return g, {e: c // g for e, c in a.items()}


def _pdiv_exact(a: Poly, b: Poly) -> Poly:
    """Exact polynomial division; raises if b does not divide a."""
    if not a:
        return {}
    if len(b) == 1:
        eb, cb = next(iter(b.items()))
        out_m: Poly = {}
        for e, c in a.items():
            et = tuple(x - y for x, y in zip(e, eb))
            if any(x < 0 for x in et) or c % cb:
                raise ArithmeticError("inexact polynomial division")
            out_m[et] = c // cb
        return out_m
    rem = dict(a)
    eb, cb = _plead(b)
    out: Poly = {}
    while rem:
        ea, ca = _plead(rem)
        et = tuple(x - y for x, y in zip(ea, eb))
        if any(x < 0 for x in et) or ca % cb:
            raise ArithmeticError("inexact polynomial division")
        ct = ca // cb
        out[et] = ct
        for e, c in b.items():
            key = tuple(x + y for x, y in zip(et, e))
            s = rem.get(key, 0) - ct * c
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    return out


def _deg_in(a: Poly, v: int) -> int:
    return max((e[v] for e in a), default=-1)


def _coeff_wrt(a: Poly, v: int, k: int) -> Poly:
    """Coefficient of x_v^k, as a polynomial with the v-slot zeroed."""
    out: Poly = {}
    for e, c in a.items():
        if e[v] == k:
            out[e[:v] + (0,) + e[v + 1:]] = c
    return out


def _prem(a: Poly, b: Poly, v: int) -> Poly:
    """Pseudo-remainder of a by b with respect to variable v."""
    db = _deg_in(b, v)
    lb = _coeff_wrt(b, v, db)
    rem = dict(a)
    width = len(next(iter(b)))
    while rem:
        da = _deg_in(rem, v)
        if da < db:
            break
        la = _coeff_wrt(rem, v, da)
        shift = (0,) * v + (da - db,) + (0,) * (width - v - 1)
        rem = _padd(_pmul(lb, rem), _pneg(_pmul({shift: 1}, _pmul(la, b))))
    return rem


_GCD_PRIMES = ((1 << 61) - 1, (1 << 31) - 1, 999999937, 998244353)


def _gcd_degree_mod(x: list, y: list, q: int) -> int | None:
    """Degree of gcd(x, y) over GF(q), or None when a leading coeff vanishes.

    For q not dividing either leading coefficient this degree bounds the
    true gcd degree from above, so a result of 0 proves coprimality.
    """
    if x[-1] % q == 0 or y[-1] % q == 0:
        return None
    a = [c % q for c in x]
    b = [c % q for c in y]
    while b:
        inv = pow(b[-1], -1, q)
        while len(a) >= len(b):
            c = a[-1] * inv % q
            if c:
                off = len(a) - len(b)
                for i in range(len(b) - 1):
                    a[off + i] = (a[off + i] - c * b[i]) % q
            a.pop()
        while a and a[-1] == 0:
            a.pop()
        a, b = b, a
    return len(a) - 1


def _strip_content(out: list) -> list:
    g = 0
    for c in out:
        g = math.gcd(g, c)
        if g == 1:
            return out
    if g > 1:
        out = [c // g for c in out]
    return out


def _pgcd_uni(a: Poly, b: Poly, v: int) -> Poly:
    """Primitive PRS over the integers for two polys in variable v only."""
    n = len(next(iter(a)))

    def todense(p: Poly) -> list:
        out = [0] * (_deg_in(p, v) + 1)
        for e, c in p.items():
            out[e[v]] = c
        return out

    x, y = todense(a), todense(b)
    if len(x) < len(y):
        x, y = y, x
    for q in _GCD_PRIMES:
        d = _gcd_degree_mod(x, y, q)
        if d is not None:
            if d == 0:
                return _pconst(n, 1)
            break
    x = _strip_content(x)
    y = _strip_content(y)
    while y:
        while y and y[-1] == 0:
            y.pop()
        if not y:
            break
        if len(y) == 1:
            return _pconst(n, 1)
        while len(x) >= len(y):
            f = x[-1]
            if f:
                g = y[-1]
                d = math.gcd(f, g)
                mx, my = g // d, f // d
                if mx != 1:
                    x = [mx * c for c in x]
                off = len(x) - len(y)
                for i in range(len(y)):
                    x[off + i] -= my * y[i]
            x.pop()
        g0 = 0
        for c in x:
            g0 = math.gcd(g0, c)
        if g0 > 1:
            x = [c // g0 for c in x]
        x, y = y, x
    if x and x[-1] < 0:
        x = [-c for c in x]
    out: Poly = {}
    for i, c in enumerate(x):
        if c:
            out[(0,) * v + (i,) + (0,) * (n - v - 1)] = c
    return out


def _pgcd(a: Poly, b: Poly) -> Poly:
    """Gcd of the primitive parts, returned primitive with positive lc."""
    if not a:
        return _pprimitive_int(b)[1]
    if not b:
        return _pprimitive_int(a)[1]
    if _pis_const(a) or _pis_const(b):
        return _pconst(len(next(iter(a))), 1)
    if len(a) == 1 or len(b) == 1:
        # gcd with a monomial is the largest common monomial factor
        it = iter(list(a) + list(b))
        e = list(next(it))
        for exp in it:
            for i, x in enumerate(exp):
                if x < e[i]:
                    e[i] = x
        if not any(e):
            return _pconst(len(e), 1)
        return {tuple(e): 1}
    va, vb = _pvars(a), _pvars(b)
    both = va | vb
    v = min(both)
    if len(va) == 1 and va == vb:
        return _pgcd_uni(a, b, v)
    if v not in va:
        return _pgcd(a, _content_wrt(b, v))
    if v not in vb:
        return _pgcd(_content_wrt(a, v), b)
    ca, cb = _content_wrt(a, v), _content_wrt(b, v)
    cg = _pgcd(ca, cb)
    pa, pb = _pdiv_exact(a, ca), _pdiv_exact(b, cb)
    if _deg_in(pa, v) < _deg_in(pb, v):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, v)
        if not r:
            ppg = _primitive_wrt(pb, v)
            break
        if _deg_in(r, v) == 0:
            ppg = _pconst(len(next(iter(a))), 1)
            break
        pa, pb = pb, _primitive_wrt(r, v)
    return _pprimitive_int(_pmul(cg, ppg))[1]


def _content_wrt(a: Poly, v: int) -> Poly:
    coeffs = {}
    for e, c in a.items():
        key = e[v]
        sub = coeffs.setdefault(key, {})
        sub[e[:v] + (0,) + e[v + 1:]] = c
    g: Poly = {}
    for sub in coeffs.values():
        prim = _pprimitive_int(sub)[1]
        g = _pgcd(g, prim) if g else prim
        if _pis_const(g):
            break
    return g


def _primitive_wrt(a: Poly, v: int) -> Poly:
    return _pprimitive_int(_pdiv_exact(a, _content_wrt(a, v)))[1]


def _psub_vals(a: Poly, values: list, ctx: "PolyContext") -> "Scalar":
    """Evaluate integer polynomial a at Scalar values (one per slot)."""
    acc = ctx.zero
    powcache: dict = {}
    for e, c in a.items():
        term = ctx.scalar(c)
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                p = powcache.get(key)
                if p is None:
                    p = values[i] ** k
                    powcache[key] = p
                term = term * p
        acc = acc + term
    return acc


def _pjson(a: Poly, cont: Fraction) -> list:
    items = sorted(a.items(), reverse=True)
    return [{"coeff": str(cont * c), "exponents": list(e)} for e, c in items]


def _ppow_text(name: str, k: int) -> str:
    return name if k == 1 else f"{name}^{k}"


def _pterm_text(names: tuple, e: tuple, c, lead: bool) -> str:
    mono = "*".join(_ppow_text(names[i], k) for i, k in enumerate(e) if k)
    mag = abs(c)
    if mono:
        body = mono if mag == 1 else f"{mag}*{mono}"
    else:
        body = str(mag)
    if lead:
        return body if c > 0 else "-" + body
    return (" + " if c > 0 else " - ") + body


def poly_text(names: tuple, a: Poly) -> str:
    if not a:
        return "0"
    parts = []
    for i, (e, c) in enumerate(sorted(a.items(), reverse=True)):
        parts.append(_pterm_text(names, e, c, i == 0))
    return "".join(parts)


class PolyContext:
    """An ordered tuple of parameter names fixing the coefficient field."""

    __slots__ = ("names", "_zero", "_one", "_nil")

    def __init__(self, names: tuple[str, ...] = ()):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names: {names}")
        self.names = names
        self._nil = (0,) * len(names)
        self._zero = None
        self._one = None

    def __eq__(self, other):
        return isinstance(other, PolyContext) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyContext({self.names!r})"

    @property
    def zero(self) -> "Scalar":
        if self._zero is None:
            self._zero = Scalar(self, Fraction(0), {}, {self._nil: 1})
        return self._zero

    @property
    def one(self) -> "Scalar":
        if self._one is None:
            self._one = Scalar(self, Fraction(1), {self._nil: 1}, {self._nil: 1})
        return self._one

    def scalar(self, value) -> "Scalar":
        """Lift an int, Fraction, or Scalar into this context."""
        if isinstance(value, Scalar):
            if value.ctx == self:
                return value
            if value.is_constant():
                return self.scalar(value.as_fraction())
            raise ValueError("parameter context mismatch")
        f = Fraction(value)
        if not f:
            return self.zero
        return Scalar(self, f, {self._nil: 1}, {self._nil: 1})

    def var(self, name: str) -> "Scalar":
        i = self.names.index(name)
        e = tuple(1 if j == i else 0 for j in range(len(self.names)))
        return Scalar(self, Fraction(1), {e: 1}, {self._nil: 1})


def _fr_gcd(a: Fraction, b: Fraction) -> Fraction:
    """Positive g with a/g and b/g coprime integers."""
    return Fraction(math.gcd(a.numerator * b.denominator,
                             b.numerator * a.denominator),
                    a.denominator * b.denominator)


class Scalar:
    """Canonical element of the rational function field of a PolyContext.

    Value = cont * num / den with cont a Fraction carrying sign and
    rational scale, and num/den coprime primitive integer polynomials
    with positive leading coefficients.
    """

    __slots__ = ("ctx", "cont", "num", "den", "_hash")

    def __init__(self, ctx: PolyContext, cont: Fraction, num: Poly, den: Poly):
        # Trusted constructor: fields must already be canonical.
        self.ctx = ctx
        self.cont = cont
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def make(ctx: PolyContext, num: Poly, den: Poly, cont: Fraction = Fraction(1)) -> "Scalar":
        """Build a Scalar from an arbitrary integer num/den pair."""
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num or not cont:
            return ctx.zero
        cn, pn = _pprimitive_int(num)
        cd, pd = _pprimitive_int(den)
        if not (_pis_const(pn) or _pis_const(pd)):
            g = _pgcd(pn, pd)
            if not _pis_const(g):
                pn = _pdiv_exact(pn, g)
                pd = _pdiv_exact(pd, g)
        return Scalar(ctx, cont * Fraction(cn, cd), pn, pd)

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return _pis_const(self.num) and _pis_const(self.den)

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self.cont

    def is_integer(self) -> bool:
        return self.is_constant() and self.cont.denominator == 1

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.ctx != self.ctx:
                raise ValueError("parameter context mismatch")
            return other
        return self.ctx.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        if not self.num:
            return other
        if not other.num:
            return self
        if self.is_constant() and other.is_constant():
            return self.ctx.scalar(self.cont + other.cont)
        g = _fr_gcd(self.cont, other.cont)
        fa = int(self.cont / g)
        fb = int(other.cont / g)
        da, db = self.den, other.den
        # Build over the lcm denominator; any surviving common factor of
        # the sum and the lcm divides gcd(da, db), so the one reduction
        # below is against a stored (small) denominator, never a product.
        if da == db:
            num = _padd(_pscale(self.num, fa), _pscale(other.num, fb))
            den = da
            reducible = not _pis_const(den)
        else:
            dg = _pgcd(da, db)
            if _pis_const(dg):
                num = _padd(_pscale(_pmul(self.num, db), fa),
                            _pscale(_pmul(other.num, da), fb))
                den = _pmul(da, db)
                reducible = False
            else:
                ea = _pdiv_exact(da, dg)
                eb = _pdiv_exact(db, dg)
                num = _padd(_pscale(_pmul(self.num, eb), fa),
                            _pscale(_pmul(other.num, ea), fb))
                den = _pmul(da, eb)
                reducible = True
        if not num:
            return self.ctx.zero
        if reducible:
            t = _pgcd(num, den)
            if not _pis_const(t):
                num = _pdiv_exact(num, t)
                den = _pdiv_exact(den, t)
        cn, pn = _pprimitive_int(num)
        return Scalar(self.ctx, g * cn, pn, den)

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        return Scalar(self.ctx, -self.cont, self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.num or not other.num:
            return self.ctx.zero
        if other.is_constant():
            return Scalar(self.ctx, self.cont * other.cont, self.num, self.den)
        if self.is_constant():
            return Scalar(self.ctx, self.cont * other.cont, other.num, other.den)
        g1 = _pgcd(self.num, other.den)
        g2 = _pgcd(other.num, self.den)
        na = self.num if _pis_const(g1) else _pdiv_exact(self.num, g1)
        db = other.den if _pis_const(g1) else _pdiv_exact(other.den, g1)
        nb = other.num if _pis_const(g2) else _pdiv_exact(other.num, g2)
        da = self.den if _pis_const(g2) else _pdiv_exact(self.den, g2)
        return Scalar(self.ctx, self.cont * other.cont, _pmul(na, nb), _pmul(da, db))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by zero scalar")
        if not self.num:
            return self
        if other.is_constant():
            return Scalar(self.ctx, self.cont / other.cont, self.num, self.den)
        if self.is_constant():
            return Scalar(self.ctx, self.cont / other.cont, other.den, other.num)
        g1 = _pgcd(self.num, other.num)
        g2 = _pgcd(other.den, self.den)
        na = self.num if _pis_const(g1) else _pdiv_exact(self.num, g1)
        nb = other.num if _pis_const(g1) else _pdiv_exact(other.num, g1)
        db = other.den if _pis_const(g2) else _pdiv_exact(other.den, g2)
        da = self.den if _pis_const(g2) else _pdiv_exact(self.den, g2)
        return Scalar(self.ctx, self.cont / other.cont, _pmul(na, db), _pmul(da, nb))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            inv = Scalar(self.ctx, 1 / self.cont, self.den, self.num)
            return inv ** (-k)
        if k == 0:
            return self.ctx.one
        if not self.num:
            return self
        return Scalar(self.ctx, self.cont ** k, _ppow(self.num, k), _ppow(self.den, k))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return (self.ctx == other.ctx and self.cont == other.cont
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.ctx.names, self.cont,
                 frozenset(self.num.items()), frozenset(self.den.items()))
            )
        return self._hash

    # -- structure -------------------------------------------------------

    def substitute(self, bindings: dict) -> "Scalar":
        """Replace named parameters by Scalar values (same context)."""
        values = []
        for name in self.ctx.names:
            if name in bindings:
                values.append(self.ctx.scalar(bindings[name]))
            else:
                values.append(self.ctx.var(name))
        num = _psub_vals(self.num, values, self.ctx)
        den = _psub_vals(self.den, values, self.ctx)
        if den.is_zero():
            raise ZeroDivisionError("substitution produced a zero denominator")
        return num * self.ctx.scalar(self.cont) / den

    def degree_in(self, name: str) -> int:
        """Degree of the numerator in a parameter; denominator must be free of it."""
        v = self.ctx.names.index(name)
        if _deg_in(self.den, v) > 0:
            raise ValueError(f"denominator involves {name}")
        return _deg_in(self.num, v)

    def coeff_of(self, name: str, k: int) -> "Scalar":
        """Coefficient of name**k, for scalars polynomial in that name."""
        v = self.ctx.names.index(name)
        if _deg_in(self.den, v) > 0:
            raise ValueError(f"denominator involves {name}")
        return Scalar.make(self.ctx, _coeff_wrt(self.num, v, k), dict(self.den), self.cont)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {"numer": _pjson(self.num, self.cont),
                "denom": _pjson(self.den, Fraction(1))}

    @staticmethod
    def from_json(ctx: PolyContext, obj: dict) -> "Scalar":
        def load(items) -> tuple[Fraction, Poly]:
            fr: dict = {}
            for t in items:
                e = tuple(t["exponents"])
                if len(e) != len(ctx.names):
                    raise ValueError("exponent arity does not match context")
                fr[e] = Fraction(t["coeff"])
            if not fr:
                return Fraction(1), {}
            den = 1
            for c in fr.values():
                den = den * c.denominator // math.gcd(den, c.denominator)
            return Fraction(1, den), {e: int(c * den) for e, c in fr.items()}

        cn, num = load(obj["numer"])
        cd, den = load(obj["denom"])
        return Scalar.make(ctx, num, den, cn / cd)

    def _int_pair(self) -> tuple[Poly, Poly]:
        """(num, den) display polys with the content multiplied through."""
        return (_pscale(self.num, self.cont.numerator),
                _pscale(self.den, self.cont.denominator))

    def __str__(self):
        if not self.num:
            return "0"
        num, den = self._int_pair()
        ntext = poly_text(self.ctx.names, num)
        if _pis_const(den) and next(iter(den.values())) == 1:
            return ntext
        dtext = poly_text(self.ctx.names, den)
        if len(num) > 1:
            ntext = f"({ntext})"
        if any(ch in dtext for ch in "*+- "):
            dtext = f"({dtext})"
        return f"{ntext}/{dtext}"

    __repr__ = __str__
