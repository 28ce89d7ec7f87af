"""Structure theory of Verma modules: singular vectors, characters, quotients.

Everything here is exact.  A Verma module V(c, h, h_W) is presented
through a ModuleContext; weight-space computations enumerate the PBW
basis of each level and reduce questions to sparse exact linear algebra.

The central objects:

* ``u_prime``      the pure-W (or pure-I) singular vector at level p that
                   exists exactly when 2 h_W + (p^2-1) c / 12 = 0;
* ``subsingular``  the level-rp vector with leading term L_{-p}^r that is
                   singular modulo the submodule generated by ``u_prime``;
* characters of the Verma module, the submodules J' = U(g) u' and
  J = U(g){u', u}, and the corresponding quotients;
* ``QuotientModule`` for reducing vectors to quotient-basis coordinates;
* ``classify`` assembling these into a structure report;
* ``conjecture_scan`` collecting existence/uniqueness evidence on a grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .scalar import PolyContext, Scalar
from .liealg import W22, HV, L, W, I
from .pbw import PBWMonomial, HighestWeight, ModuleVector, ModuleContext
from . import linalg


# ---------------------------------------------------------------------------
# Partitions and weight-space bases


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple:
    """All partitions of n as weakly decreasing tuples, lex descending."""
    if n < 0:
        return ()
    if n == 0:
        return ((),)
    result = []

    def extend(remaining, maxpart, prefix):
        if remaining == 0:
            result.append(tuple(prefix))
            return
        for part in range(min(remaining, maxpart), 0, -1):
            prefix.append(part)
            extend(remaining - part, part, prefix)
            prefix.pop()

    extend(n, n, [])
    return tuple(result)


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """Number of partitions of n (Euler recurrence)."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        sign = 1 if k % 2 == 1 else -1
        if g1 <= n:
            total += sign * partition_count(n - g1)
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


@lru_cache(maxsize=None)
def pair_partition_count(n: int) -> int:
    """Number of PBW monomials of level n (two commuting families)."""
    return sum(partition_count(i) * partition_count(n - i) for i in range(n + 1))


@lru_cache(maxsize=None)
def weight_space_basis(level: int) -> tuple:
    """All PBW monomials of the given level, sorted canonically.

    The order is descending in (l-part, w-part) lex, so L_{-level} comes
    first and W_{-1}^level last.  This is the column order used for
    pivoting and the term order used for rendering.
    """
    monos = []
    for wsum in range(level + 1):
        for wpart in partitions(wsum):
            for lpart in partitions(level - wsum):
                monos.append(PBWMonomial(wpart, lpart))
    monos.sort(key=lambda m: m.sort_key(), reverse=True)
    return tuple(monos)


def pure_w_basis(level: int) -> list:
    """Monomials of the given level with no L factors."""
    return [m for m in weight_space_basis(level) if not m.l]


# ---------------------------------------------------------------------------
# Locating the degenerate level


def zd_find_p(hw: HighestWeight, max_p: int = 64):
    """Smallest p >= 1 with 2 h_W + (p^2-1) c / 12 = 0, or None.

    The module is reducible exactly when such a p exists (for W(2,2)
    weights; use hv_find_p for the twisted Heisenberg-Virasoro case).
    """
    c, hW = hw["c"], hw["hW"]
    for p in range(1, max_p + 1):
        if (hW + hW + c * Fraction(p * p - 1, 12)).is_zero():
            return p
    return None


def hv_find_p(hw: HighestWeight, max_p: int = 64):
    """Degenerate level for a twisted Heisenberg-Virasoro weight.

    Returns (p, case) where case is "I" when h_I / c_LI = 1 + p (the
    singular vector is built from I modes) and "L" when h_I / c_LI = 1 - p
    (it is built from L and I modes), or None when h_I / c_LI is not an
    integer different from 1 in the scanned range.  Requires c_LI != 0.
    """
    hI, cLI = hw["hI"], hw["cLI"]
    if cLI.is_zero():
        raise ValueError("classification requires cLI != 0")
    for p in range(1, max_p + 1):
        if (hI - (1 + p) * cLI).is_zero():
            return p, "I"
        if (hI - (1 - p) * cLI).is_zero():
            return p, "L"
    return None


# ---------------------------------------------------------------------------
# Singular vectors


def _raising_generators(kind: str) -> list:
    second = W if kind == W22 else I
    return [L(1), L(2), second(1), second(2)]


def singular_space(M: ModuleContext, level: int) -> list:
    """Basis of the singular vectors at the given level.

    A vector x of level n is singular when g.x = 0 for every positive
    generator g; it is enough to impose this for L_1, L_2 and the degree
    1 and 2 modes of the second family, which generate the raising part.
    """
    basis = weight_space_basis(level)
    ctx = M.scalar_ctx
    rows: dict = {}
    for j, mono in enumerate(basis):
        for gi, g in enumerate(_raising_generators(M.hw.kind)):
            image = M.act(g, M.vector({mono: 1}))
            for tmono, coeff in image.terms.items():
                rows.setdefault((gi, tmono), {})[j] = coeff
    columns = list(range(len(basis)))
    sols = linalg.nullspace(rows.values(), columns, ctx)
    vectors = []
    for sol in sols:
        vec = M.vector({basis[j]: v for j, v in sol.items()})
        lead = max(vec.terms, key=lambda m: m.sort_key())
        vectors.append(vec.scaled(ctx.one / vec.terms[lead]))
    return vectors


def u_prime(M: ModuleContext, p: int) -> ModuleVector:
    """The singular vector at level p supported on the second family only.

    Normalized so the coefficient of W_{-p} (or I_{-p}) is 1 and no
    monomial contains an L factor.  Exists exactly at the degenerate
    level; raises ValueError otherwise.
    """
    hw = M.hw
    if hw.kind == W22:
        c, hW = hw["c"], hw["hW"]
        if not (hW + hW + c * Fraction(p * p - 1, 12)).is_zero():
            raise ValueError(f"2*hW + (p^2-1)*c/12 != 0 at p={p}; no pure-W singular vector")
    else:
        hI, cLI = hw["hI"], hw["cLI"]
        if cLI.is_zero() or not (hI - (1 + p) * cLI).is_zero():
            raise ValueError(f"hI/cLI != 1+p at p={p}; no pure-I singular vector")
    space = singular_space(M, p)
    if not space:
        raise ValueError(f"no singular vector at level {p}")
    ctx = M.scalar_ctx
    head = PBWMonomial((p,), ())
    # Solve for the combination with no L factors and coefficient 1 on the head.
    rows = []
    target_monos = set()
    for vec in space:
        target_monos.update(m for m in vec.terms if m.l)
    for tmono in sorted(target_monos, key=lambda m: m.sort_key()):
        rows.append({j: vec.terms[tmono] for j, vec in enumerate(space) if tmono in vec.terms})
    head_row = {j: vec.terms[head] for j, vec in enumerate(space) if head in vec.terms}
    head_row[linalg.RHS] = ctx.one
    rows.append(head_row)
    res = linalg.solve(rows, list(range(len(space))), ctx)
    if res is None:
        raise ValueError(f"no pure singular vector at level {p}")
    sol, _free = res
    out = M.zero()
    for j, coeff in sol.items():
        out = out + space[j].scaled(coeff)
    return out


def j_prime_span(M: ModuleContext, p: int, level: int, uprime: ModuleVector | None = None) -> list:
    """Echelonized basis of the level component of J' = U(g) u'.

    The component at the given level is spanned by y u' over PBW words y
    of degree level - p; empty when level < p.
    """
    if level < p:
        return []
    if uprime is None:
        uprime = u_prime(M, p)
    ech, order = _j_prime_echelon(M, p, level, uprime)
    out = []
    for piv in sorted(ech.pivots, key=lambda m: order[m]):
        out.append(M.vector(ech.pivots[piv]))
    return out


def _j_prime_echelon(M: ModuleContext, p: int, level: int, uprime: ModuleVector):
    """Echelonized level component of J', keyed by basis position."""
    order = {m: i for i, m in enumerate(weight_space_basis(level))}
    ech = linalg.Echelon(key=lambda m: order[m])
    if level >= p:
        for word_mono in weight_space_basis(level - p):
            vec = M.multiply(word_mono.as_word(M.hw.kind), uprime)
            ech.add(dict(vec.terms))
    return ech, order


def necessary_h(p: int, r: int, hW) -> Scalar | Fraction:
    """The only h at which a level-rp subsingular vector can exist.

    h = h_W + (13p+1)(p-1)/12 + (1-r)p/2.
    """
    return hW + Fraction((13 * p + 1) * (p - 1), 12) + Fraction((1 - r) * p, 2)


def _subsingular_columns(p: int, r: int) -> tuple:
    """Unknown monomials for the subsingular solve: level rp, no W_{-p} factor."""
    level = r * p
    lead = PBWMonomial((), (p,) * r)
    unknowns = [m for m in weight_space_basis(level)
                if p not in m.w and m != lead]
    return lead, unknowns


def subsingular(M: ModuleContext, p: int, r: int):
    """The level-rp vector singular modulo J', or None.

    Ansatz: u = L_{-p}^r v + sum over level-rp monomials with no W_{-p}
    factor, and the requirement is g.u in J' for the four raising
    generators.

    Over a one-parameter coefficient field the solve runs on integer
    specializations of the parameter and the coefficients are recovered
    by rational interpolation; the recovered vector is then certified
    exactly (g.u reduced against the level component of J' must vanish,
    for every raising generator), so the fast path never weakens the
    result.  Uniqueness transfers from any specialization where the
    system has full column rank.  Whenever sampling is inapplicable or
    the certificate fails, the direct symbolic solve decides.
    """
    if len(M.scalar_ctx.names) == 1:
        u = _subsingular_sampled(M, p, r)
        if u is not _SAMPLING_INCONCLUSIVE:
            return u
    return _subsingular_direct(M, p, r)


def _subsingular_direct(M: ModuleContext, p: int, r: int):
    """Solve the subsingular system symbolically over the coefficient field.

    The span coefficients of J' enter the linear system as extra
    unknowns; the system is consistent exactly at the necessary h.
    """
    uprime = u_prime(M, p)
    ctx = M.scalar_ctx
    level = r * p
    lead, unknowns = _subsingular_columns(p, r)
    raisers = _raising_generators(M.hw.kind)
    jspan = {1: j_prime_span(M, p, level - 1, uprime),
             2: j_prime_span(M, p, level - 2, uprime)}
    rows: dict = {}
    columns = [("x", m) for m in unknowns]
    for gi, g in enumerate(raisers):
        deg = g.mode
        for k, b in enumerate(jspan[deg]):
            columns.append(("s", gi, k))
            for tmono, coeff in b.terms.items():
                rows.setdefault((gi, tmono), {})[("s", gi, k)] = -coeff
        image = M.act(g, M.vector({lead: 1}))
        for tmono, coeff in image.terms.items():
            rows.setdefault((gi, tmono), {})[linalg.RHS] = -coeff
        for m in unknowns:
            image = M.act(g, M.vector({m: 1}))
            for tmono, coeff in image.terms.items():
                rows.setdefault((gi, tmono), {})[("x", m)] = coeff
    res = linalg.solve(rows.values(), columns, ctx)
    if res is None:
        return None
    sol, free = res
    free_x = [c for c in free if c[0] == "x"]
    if free_x:
        raise ValueError(f"subsingular solve underdetermined at p={p}, r={r}: {free_x}")
    terms = {lead: ctx.one}
    for col, coeff in sol.items():
        if col[0] == "x":
            terms[col[1]] = coeff
    return M.vector(terms)


_SAMPLING_INCONCLUSIVE = object()


def _specialize_module(M: ModuleContext, value: Fraction) -> ModuleContext:
    """The same highest weight with the single parameter set to a number."""
    name = M.scalar_ctx.names[0]
    ctx0 = PolyContext(())
    weights = {}
    for key, wgt in M.hw.weights.items():
        weights[key] = wgt.substitute({name: value}).as_fraction()
    return ModuleContext(HighestWeight(M.hw.kind, ctx0, weights))


def _dense_trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _dense_divmod(a: list, b: list) -> tuple[list, list]:
    """Quotient and remainder of dense Fraction coefficient lists."""
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    while len(rem) >= len(b):
        f = rem[-1] / b[-1]
        off = len(rem) - len(b)
        q[off] = f
        if f:
            for i in range(len(b) - 1):
                rem[off + i] -= f * b[i]
        rem.pop()
        _dense_trim(rem)
        if not rem:
            break
    return q, rem


def _dense_eval(a: list, t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * t + c
    return acc


def _rational_interpolate(ts: list, ys: list, ctx: PolyContext, name: str) -> Scalar | None:
    """The rational function of the parameter through all samples.

    Cauchy interpolation via the extended Euclidean scheme on the
    Lagrange interpolant; returns None unless a function with combined
    numerator and denominator degree at most len(ts) - 2 fits, so at
    least one sample is always a redundant consistency check.
    """
    n = len(ts)
    mod = [Fraction(1)]
    for t in ts:
        mod = [Fraction(0)] + mod
        for i in range(len(mod) - 1):
            mod[i] -= t * mod[i + 1]
    interp = [Fraction(0)] * n
    for t, y in zip(ts, ys):
        if not y:
            continue
        q, _ = _dense_divmod(mod, [-t, Fraction(1)])
        scale = y / _dense_eval(q, t)
        for i, c in enumerate(q):
            interp[i] += c * scale
    _dense_trim(interp)
    if not interp:
        return ctx.zero
    r0, r1 = mod, interp
    c0, c1 = [Fraction(0)], [Fraction(1)]
    bound = (n + 1) // 2
    while r1 and len(r1) - 1 >= bound:
        q, rem = _dense_divmod(r0, r1)
        prod = [Fraction(0)] * (len(q) + len(c1) - 1)
        for i, qc in enumerate(q):
            if qc:
                for j, cc in enumerate(c1):
                    prod[i + j] += qc * cc
        nxt = [a - b for a, b in zip(c0 + [Fraction(0)] * (len(prod) - len(c0)),
                                     prod + [Fraction(0)] * (len(c0) - len(prod)))]
        r0, r1 = r1, _dense_trim(rem)
        c0, c1 = c1, _dense_trim(nxt)
    if not r1 or not c1:
        return None
    if (len(r1) - 1) + (len(c1) - 1) > n - 2:
        return None
    if any(not _dense_eval(c1, t) for t in ts):
        return None
    z = ctx.var(name)
    num = ctx.zero
    for c in reversed(r1):
        num = num * z + ctx.scalar(c)
    den = ctx.zero
    for c in reversed(c1):
        den = den * z + ctx.scalar(c)
    return num / den


def _certify_subsingular(M: ModuleContext, p: int, u: ModuleVector,
                         uprime: ModuleVector) -> bool:
    """Exact check that g.u lies in J' for every raising generator."""
    level = u.level
    jech = {deg: _j_prime_echelon(M, p, level - deg, uprime)[0] for deg in (1, 2)}
    for g in _raising_generators(M.hw.kind):
        if jech[g.mode].reduce(dict(M.act(g, u).terms)):
            return False
    return True


def _subsingular_sampled(M: ModuleContext, p: int, r: int):
    """Sampled solve of the subsingular system with an exact certificate.

    Returns a certified vector, or the inconclusive sentinel whenever
    specializations disagree, interpolation fails to stabilize, or the
    certificate does not check out; the caller then decides symbolically.
    """
    ctx = M.scalar_ctx
    name = ctx.names[0]
    level = r * p
    try:
        uprime = u_prime(M, p)
    except (ValueError, ZeroDivisionError):
        return _SAMPLING_INCONCLUSIVE
    lead, unknowns = _subsingular_columns(p, r)
    samples: list = []
    nones = failures = 0
    t_iter = iter(range(1, 201))
    target = min(2 * level + 8, 40)
    while True:
        while len(samples) < target:
            t = next(t_iter, None)
            if t is None:
                return _SAMPLING_INCONCLUSIVE
            try:
                Mt = _specialize_module(M, Fraction(t))
                ut = _subsingular_direct(Mt, p, r)
            except (ValueError, ZeroDivisionError):
                failures += 1
                if failures > 4:
                    return _SAMPLING_INCONCLUSIVE
                continue
            if ut is None:
                nones += 1
                if nones > 4:
                    return _SAMPLING_INCONCLUSIVE
                continue
            samples.append((Fraction(t),
                            {m: cf.as_fraction() for m, cf in ut.terms.items()}))
        ts = [s[0] for s in samples]
        terms = {lead: ctx.one}
        ok = True
        for m in unknowns:
            ys = [s[1].get(m, Fraction(0)) for s in samples]
            f = _rational_interpolate(ts, ys, ctx, name)
            if f is None:
                ok = False
                break
            if not f.is_zero():
                terms[m] = f
        if ok:
            u = M.vector(terms)
            if _certify_subsingular(M, p, u, uprime):
                return u
        if target >= 80:
            return _SAMPLING_INCONCLUSIVE
        target = min(target * 2, 80)


def subsingular_r1_recursive(M: ModuleContext, p: int) -> ModuleVector:
    """The r=1 singular vector at level p via the W-coefficient recursion.

    Writing u = sum_n w_n L_{-n} v with w_p = 1 and w_n in the commutative
    algebra of W modes, the coefficients for 0 < n < p satisfy

      w_n = (p^2-1) / (2 h_W n (n^2 - p^2)) *
            ( sum_{i=n+1}^{p-1} (n+i) w_i W_{-(i-n)} + (n+p) W_{-(p-n)} )

    and w_0 is completed by solving the exact singularity conditions.
    """
    hw = M.hw
    if hw.kind != W22:
        raise ValueError("the recursion applies to W(2,2) weights")
    ctx = M.scalar_ctx
    hW = hw["hW"]
    # w[n]: pure-W vector of level p-n representing w_n . v
    wvec: dict[int, ModuleVector] = {p: M.vacuum()}
    for n in range(p - 1, 0, -1):
        acc = M.zero()
        for i in range(n + 1, p):
            acc = acc + M.act(W(-(i - n)), wvec[i]).scaled(ctx.scalar(n + i))
        acc = acc + M.act(W(-(p - n)), M.vacuum()).scaled(ctx.scalar(n + p))
        factor = ctx.scalar(Fraction(p * p - 1)) / (
            (hW + hW) * ctx.scalar(Fraction(n * (n * n - p * p))))
        wvec[n] = acc.scaled(factor)
    # assemble the known part: sum_{n>=1} w_n L_{-n} v
    known = M.zero()
    for n in range(1, p + 1):
        terms = {}
        for mono, coeff in wvec[n].terms.items():
            terms[PBWMonomial.make(mono.w, (n,))] = coeff
        known = known + M.vector(terms)
    # solve for w_0: pure-W monomials of level p except W_{-p} itself
    unknowns = [m for m in pure_w_basis(p) if m != PBWMonomial((p,), ())]
    rows: dict = {}
    for gi, g in enumerate(_raising_generators(W22)):
        image = M.act(g, known)
        for tmono, coeff in image.terms.items():
            rows.setdefault((gi, tmono), {})[linalg.RHS] = -coeff
        for m in unknowns:
            image = M.act(g, M.vector({m: 1}))
            for tmono, coeff in image.terms.items():
                rows.setdefault((gi, tmono), {})[("x", m)] = coeff
    res = linalg.solve(rows.values(), [("x", m) for m in unknowns], ctx)
    if res is None:
        raise ValueError(f"no singular vector of the assumed shape at level {p}")
    sol, free = res
    if free:
        raise ValueError(f"recursion completion underdetermined at p={p}")
    out = known
    extra = {col[1]: coeff for col, coeff in sol.items()}
    if extra:
        out = out + M.vector(extra)
    return out


# ---------------------------------------------------------------------------
# Characters


@dataclass(frozen=True)
class CharacterSeries:
    """A graded dimension series q^offset * sum coeffs[i] q^i, exact to q^N."""

    offset: Scalar
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def shift_down(self, k: int) -> "CharacterSeries":
        """Rewrite with offset lowered by k, padding k exact zero coefficients."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        return CharacterSeries(self.offset - k, (0,) * k + self.coeffs)

    def truncated(self, order: int) -> "CharacterSeries":
        return CharacterSeries(self.offset, self.coeffs[:order + 1])

    def __add__(self, other: "CharacterSeries") -> "CharacterSeries":
        if self.offset != other.offset:
            raise ValueError("offsets differ; align with shift_down first")
        n = min(len(self.coeffs), len(other.coeffs))
        return CharacterSeries(self.offset,
                               tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def text(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                q = "q" if i == 1 else f"q^{i}"
                parts.append(q if c == 1 else f"{c}{q}")
        body = " + ".join(parts) if parts else "0"
        off = str(self.offset)
        if off == "0":
            return body
        return f"q^({off}) * ({body})"

    def to_json(self) -> dict:
        return {"offset": self.offset.to_json(), "coeffs": list(self.coeffs)}


def char_verma(hw: HighestWeight, N: int) -> CharacterSeries:
    """Character of V: q^h sum_n P2(n) q^n to order N."""
    return CharacterSeries(hw["h"], tuple(pair_partition_count(n) for n in range(N + 1)))


def char_j_prime(hw: HighestWeight, p: int, N: int) -> CharacterSeries:
    """Character of J' = U(g) u': q^{h+p} sum_n P2(n) q^n."""
    return CharacterSeries(hw["h"] + p, tuple(pair_partition_count(n) for n in range(N + 1)))


def _convolve_with(mask: dict, N: int) -> tuple:
    """Coefficients of (sum_k mask[k] q^k) * sum_n P2(n) q^n to order N."""
    out = []
    for n in range(N + 1):
        out.append(sum(c * pair_partition_count(n - k) for k, c in mask.items() if k <= n))
    return tuple(out)


def char_l_prime(hw: HighestWeight, p: int, N: int) -> CharacterSeries:
    """Character of V / J': q^h (1 - q^p) sum_n P2(n) q^n."""
    return CharacterSeries(hw["h"], _convolve_with({0: 1, p: -1}, N))


def char_l(hw: HighestWeight, p: int, r: int, N: int) -> CharacterSeries:
    """Character of the irreducible quotient when the subsingular vector exists.

    q^h (1 - q^p)(1 - q^{rp}) sum_n P2(n) q^n.
    """
    mask = {0: 1}
    for k, s in ((p, -1), (r * p, -1), (p + r * p, 1)):
        mask[k] = mask.get(k, 0) + s
    return CharacterSeries(hw["h"], _convolve_with(mask, N))


def char_j(hw: HighestWeight, p: int, r: int, N: int) -> CharacterSeries:
    """Character of J = U(g){u', u}: q^{h+p} (1 + q^{(r-1)p} - q^{rp}) sum_n P2(n) q^n."""
    mask = {0: 1}
    for k, s in (((r - 1) * p, 1), (r * p, -1)):
        mask[k] = mask.get(k, 0) + s
    return CharacterSeries(hw["h"] + p, _convolve_with(mask, N))


# ---------------------------------------------------------------------------
# Quotient bases


def basis_l_prime(p: int, level: int) -> list:
    """Monomials of the level spanning V/J': those without a W_{-p} factor."""
    return [m for m in weight_space_basis(level) if p not in m.w]


def basis_l(p: int, r: int, level: int) -> list:
    """Monomials spanning the irreducible quotient: no W_{-p} factor and
    fewer than r factors L_{-p}."""
    return [m for m in weight_space_basis(level)
            if p not in m.w and m.l.count(p) < r]


class QuotientModule:
    """Reduction of module vectors to coordinates in a quotient basis.

    Given relation vectors (generators of the submodule being divided
    out) and a predicate selecting the quotient-basis monomials at each
    level, reduces any vector to an equal vector supported on the basis
    monomials.  Raises if the relations fail to eliminate exactly the
    non-basis monomials, which would mean the proposed basis is wrong.
    """

    def __init__(self, M: ModuleContext, relations: list, basis_pred):
        self.M = M
        self.relations = list(relations)
        self.basis_pred = basis_pred
        self._ech: dict[int, linalg.Echelon] = {}

    def _echelon(self, level: int) -> linalg.Echelon:
        ech = self._ech.get(level)
        if ech is not None:
            return ech
        basis = weight_space_basis(level)
        priority = {}
        nonbasis = 0
        for i, m in enumerate(basis):
            in_basis = self.basis_pred(m)
            priority[m] = (1 if in_basis else 0, i)
            if not in_basis:
                nonbasis += 1
        ech = linalg.Echelon(key=lambda m: priority[m])
        for rel in self.relations:
            deg = rel.level
            if deg is None or deg > level:
                continue
            for word_mono in weight_space_basis(level - deg):
                vec = self.M.multiply(word_mono.as_word(self.M.hw.kind), rel)
                ech.add(dict(vec.terms))
        pivots_nonbasis = sum(1 for m in ech.pivots if not self.basis_pred(m))
        if pivots_nonbasis != nonbasis or len(ech.pivots) != nonbasis:
            raise ValueError(
                f"quotient basis mismatch at level {level}: "
                f"{len(ech.pivots)} relations, {nonbasis} non-basis monomials")
        self._ech[level] = ech
        return ech

    def reduce(self, vec: ModuleVector) -> ModuleVector:
        """Rewrite a homogeneous vector in quotient-basis coordinates."""
        lvl = vec.level
        if lvl is None:
            return vec
        ech = self._echelon(lvl)
        return self.M.vector(ech.reduce(dict(vec.terms)))

    def dim(self, level: int) -> int:
        return len(weight_space_basis(level)) - len(self._echelon(level).pivots)


def quotient_verma(M: ModuleContext) -> QuotientModule:
    """The trivial quotient: the Verma module itself."""
    return QuotientModule(M, [], lambda m: True)


def quotient_l_prime(M: ModuleContext, p: int, uprime: ModuleVector | None = None) -> QuotientModule:
    if uprime is None:
        uprime = u_prime(M, p)
    return QuotientModule(M, [uprime], lambda m: p not in m.w)


def quotient_l(M: ModuleContext, p: int, r: int,
               uprime: ModuleVector | None = None,
               u: ModuleVector | None = None) -> QuotientModule:
    if uprime is None:
        uprime = u_prime(M, p)
    if u is None:
        u = subsingular(M, p, r)
        if u is None:
            raise ValueError(f"no subsingular vector at p={p}, r={r}")
    return QuotientModule(M, [uprime, u],
                          lambda m: p not in m.w and m.l.count(p) < r)


# ---------------------------------------------------------------------------
# Classification


@dataclass
class StructureReport:
    """Outcome of classifying a Verma module's submodule structure."""

    kind: str
    verdict: str                 # VermaIrreducible | UprimeOnly | UprimeAndSubsingular
    p: int | None = None
    r: int | None = None
    u_prime: ModuleVector | None = None
    u: ModuleVector | None = None
    case: str | None = None      # HV only: "I" or "L"
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "verdict": self.verdict,
            "p": self.p,
            "r": self.r,
            "uPrime": self.u_prime.to_json() if self.u_prime is not None else None,
            "u": self.u.to_json() if self.u is not None else None,
            "case": self.case,
            "notes": list(self.notes),
        }


def recover_r(p: int, hw: HighestWeight) -> Scalar:
    """Value of r implied by h = necessary_h(p, r, hW), as an exact scalar."""
    hW, h = hw["hW"], hw["h"]
    return (hW - h) * Fraction(2, p) + 1 + Fraction((13 * p + 1) * (p - 1), 6 * p)


def classify(M: ModuleContext, max_p: int = 64) -> StructureReport:
    """Structure report for the Verma module of M's highest weight."""
    hw = M.hw
    if hw.kind == W22:
        p = zd_find_p(hw, max_p)
        if p is None:
            return StructureReport(kind=W22, verdict="VermaIrreducible")
        uprime = u_prime(M, p)
        r_val = recover_r(p, hw)
        if r_val.is_integer():
            r = int(r_val.as_fraction())
            if r >= 1:
                u = subsingular(M, p, r)
                if u is not None:
                    return StructureReport(kind=W22, verdict="UprimeAndSubsingular",
                                           p=p, r=r, u_prime=uprime, u=u)
                return StructureReport(kind=W22, verdict="UprimeOnly", p=p,
                                       u_prime=uprime,
                                       notes=[f"h matches r={r} but no subsingular vector found"])
        return StructureReport(kind=W22, verdict="UprimeOnly", p=p, u_prime=uprime)
    # twisted Heisenberg-Virasoro
    found = hv_find_p(hw, max_p)
    if found is None:
        return StructureReport(kind=HV, verdict="VermaIrreducible")
    p, case = found
    if case == "I":
        uprime = u_prime(M, p)
        return StructureReport(kind=HV, verdict="UprimeOnly", p=p, case=case,
                               u_prime=uprime)
    space = singular_space(M, p)
    if not space:
        return StructureReport(kind=HV, verdict="VermaIrreducible", p=p, case=case,
                               notes=["no singular vector at the degenerate level"])
    vec = space[0]
    head = PBWMonomial((), (p,))
    if head in vec.terms:
        vec = vec.scaled(M.scalar_ctx.one / vec.terms[head])
    return StructureReport(kind=HV, verdict="UprimeOnly", p=p, case=case, u_prime=vec)


# ---------------------------------------------------------------------------
# Conjecture evidence


def conjecture_scan_point(p: int, r: int, offsets=(),
                          param_name: str = "hW") -> dict:
    """One grid point of the subsingular-existence scan.

    Works over the field of rational functions in one symbol: h_W itself
    for p >= 2 (with c = -24 h_W / (p^2-1)), and the central charge c
    for p = 1 (where h_W = 0).  Records whether the subsingular vector
    exists at the necessary h and fails to exist at h + delta for each
    offset delta; for p = 1 also checks the observed shape (only L_{-1}
    factors in the L part).
    """
    from .scalar import PolyContext

    if p == 1:
        ctx = PolyContext(("c",))
        c = ctx.var("c")
        hW = ctx.zero
    else:
        ctx = PolyContext((param_name,))
        hW = ctx.var(param_name)
        c = hW * Fraction(-24, p * p - 1)
    h = necessary_h(p, r, hW)
    hw = HighestWeight.w22(ctx, c=c, h=h, hW=hW)
    M = ModuleContext(hw)
    u = subsingular(M, p, r)
    row = {"p": p, "r": r, "found": u is not None, "offsets": {}, "shape_ok": None}
    for delta in offsets:
        hw_off = HighestWeight.w22(ctx, c=c, h=h + ctx.scalar(Fraction(delta)), hW=hW)
        M_off = ModuleContext(hw_off)
        u_off = subsingular(M_off, p, r)
        row["offsets"][str(Fraction(delta))] = u_off is None
    if p == 1 and u is not None:
        row["shape_ok"] = all(set(m.l) <= {1} for m in u.terms)
    row["ok"] = bool(row["found"]) and all(row["offsets"].values()) and (
        row["shape_ok"] is not False)
    return row


def conjecture_scan(p_max: int, r_max: int, offsets=(), param_name: str = "hW") -> list:
    """Existence and exclusivity evidence for the subsingular conjecture,
    over the full (p, r) grid up to the given bounds."""
    return [conjecture_scan_point(p, r, offsets, param_name)
            for p in range(1, p_max + 1) for r in range(1, r_max + 1)]
