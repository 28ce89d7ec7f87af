"""Tensor products of intermediate-series modules with highest weight modules.

The intermediate series V_{alpha,beta} (plus a parameter F for the twisted
Heisenberg-Virasoro algebra) has basis v_m, m running over the integers.
Tensoring with a quotient T of a Verma module gives a module spanned by
vectors v_m (x) (x v) with x a PBW monomial.  This module is not highest
weight, so all computations here are truncated: indices m are confined to
an explicit window and operator words to an explicit degree.  Within those
bounds everything is exact.

The irreducibility decisions reduce to two ingredients: a cyclicity
criterion (the tensor product is irreducible precisely when every
v_m (x) v generates it) and elimination certificates expressing
v_{m-1} (x) v, or its analogue, through vectors of higher index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .liealg import HV, W22, Generator
from .pbw import HighestWeight, ModuleContext, PBWMonomial
from .scalar import PolyContext, Scalar
from .verma import (QuotientModule, classify, necessary_h, quotient_l,
                    quotient_l_prime, singular_space, u_prime,
                    weight_space_basis)


# ---------------------------------------------------------------------------
# The intermediate series


@dataclass(frozen=True)
class IntermediateSeries:
    """Parameters of an intermediate-series module.

    The action on the basis vectors is

        L_n v_m = -(m + alpha + beta + n beta) v_{m+n},

    with the second family acting by zero (first algebra) or by the
    constant F on every mode (twisted Heisenberg-Virasoro) and all
    central elements acting by zero.  Shifting alpha by an integer gives
    an isomorphic module, so alpha matters modulo 1 plus the window
    labelling.
    """

    alpha: Scalar
    beta: Scalar
    F: Scalar

    @classmethod
    def make(cls, ctx: PolyContext, alpha, beta, F=0) -> "IntermediateSeries":
        return cls(ctx.scalar(alpha), ctx.scalar(beta), ctx.scalar(F))

    @property
    def ctx(self) -> PolyContext:
        return self.alpha.ctx

    def is_reducible_series(self) -> bool:
        """Whether the parameters name one of the primed quotient modules.

        That happens for integral alpha with beta in {0, 1} and F = 0;
        the module then loses one basis vector (a trivial quotient or
        submodule) and the primed module is used instead.
        """
        a, b, f = self.alpha, self.beta, self.F
        if not (a.is_constant() and b.is_constant() and f.is_constant()):
            return False
        if not f.is_zero() or not a.is_integer():
            return False
        return b.as_fraction() in (Fraction(0), Fraction(1))

    def excluded_index(self) -> int | None:
        """The index dropped from the primed module, if any."""
        if not self.is_reducible_series():
            return None
        a = int(self.alpha.as_fraction())
        return -a if self.beta.is_zero() else -a - 1

    def to_json(self) -> dict:
        return {"alpha": self.alpha.to_json(), "beta": self.beta.to_json(),
                "F": self.F.to_json()}


def _series_coefficient(g: Generator, m, s: IntermediateSeries) -> Scalar:
    """Coefficient of v_{m+n} in g v_m; m may be a symbolic scalar."""
    if g.family == "L":
        return -(m + s.alpha + s.beta + s.beta * g.mode)
    if g.family == "I":
        return s.F
    # W modes and every central element act by zero on the series factor.
    return s.ctx.zero


def series_action(g: Generator, m: int, s: IntermediateSeries):
    """Action of a generator on a series basis vector.

    Returns (coefficient, target index) with g v_m = coefficient * v_target.
    """
    return _series_coefficient(g, s.ctx.scalar(m), s), m + g.mode


# ---------------------------------------------------------------------------
# Truncated tensor vectors


def _column_key(col):
    m, mono = col
    return (m, mono.sort_key())


class TensorVector:
    """Finite combination of v_m (x) (monomial . v), inside a window."""

    __slots__ = ("space", "terms")

    def __init__(self, space: "TensorSpace", terms: dict):
        self.space = space
        self.terms = {key: cf for key, cf in terms.items() if not cf.is_zero()}

    @property
    def window(self):
        return self.space.window

    @property
    def hw(self):
        return self.space.M.hw

    @property
    def series(self):
        return self.space.series

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, m: int, mono: PBWMonomial) -> Scalar:
        return self.terms.get((m, mono), self.space.M.scalar_ctx.zero)

    def __add__(self, other: "TensorVector") -> "TensorVector":
        out = dict(self.terms)
        for key, cf in other.terms.items():
            _acc(out, key, cf)
        return TensorVector(self.space, out)

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        return self + other.scaled(-1)

    def scaled(self, factor) -> "TensorVector":
        f = self.space.M.scalar_ctx.scalar(factor)
        return TensorVector(self.space,
                            {key: cf * f for key, cf in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: _column_key(kv[0]))

    def to_json(self) -> dict:
        return {"window": list(self.space.window),
                "terms": [{"index": m, "monomial": mono.to_json(),
                           "coeff": cf.to_json()}
                          for (m, mono), cf in self.sorted_terms()]}

    def __repr__(self):
        return f"TensorVector({len(self.terms)} terms, window={self.space.window})"


def _acc(store: dict, key, coeff: Scalar) -> None:
    cur = store.get(key)
    val = coeff if cur is None else cur + coeff
    if val.is_zero():
        store.pop(key, None)
    else:
        store[key] = val


class TensorSpace:
    """Computation window for (intermediate series) (x) (module quotient).

    The second factor is a Verma module over the same highest weight and
    parameter context, reduced through `quotient` coordinates when one is
    given.  `index_origin` is added to every series index inside
    coefficients, so indices may be kept symbolic (origin n plus an
    integer offset) while the stored labels stay integers.
    """

    def __init__(self, M: ModuleContext, series: IntermediateSeries,
                 window: tuple, quotient: QuotientModule | None = None,
                 index_origin: Scalar | None = None):
        if series.ctx != M.scalar_ctx:
            raise ValueError("series parameters use a different context")
        self.M = M
        self.series = series
        self.window = (int(window[0]), int(window[1]))
        if self.window[0] > self.window[1]:
            raise ValueError("empty window")
        self.quotient = quotient
        self.index_origin = (M.scalar_ctx.zero if index_origin is None
                             else index_origin)
        self.excluded = series.excluded_index()
        self._module_images: dict = {}

    def vector(self, terms: dict) -> TensorVector:
        return TensorVector(self, dict(terms))

    def zero(self) -> TensorVector:
        return TensorVector(self, {})

    def vacuum_at(self, m: int) -> TensorVector:
        """The vector v_m (x) v."""
        lo, hi = self.window
        if m < lo or m > hi:
            raise ValueError(f"index {m} outside window [{lo}, {hi}]")
        if m == self.excluded:
            raise ValueError(f"index {m} is excluded from the primed series")
        one = self.M.scalar_ctx.one
        return TensorVector(self, {(m, PBWMonomial.make()): one})

    def _module_image(self, g: Generator, mono: PBWMonomial) -> dict:
        cached = self._module_images.get((g, mono))
        if cached is not None:
            return cached
        img = self.M.act(g, self.M.vector({mono: self.M.scalar_ctx.one}))
        if self.quotient is not None:
            img = self.quotient.reduce(img)
        self._module_images[(g, mono)] = img.terms
        return img.terms

    def act(self, g: Generator, x: TensorVector) -> TensorVector:
        """Leibniz action of a generator on a tensor vector."""
        ctx = self.M.scalar_ctx
        lo, hi = self.window
        out: dict = {}
        for (m, mono), cf in x.terms.items():
            coeff = _series_coefficient(g, self.index_origin + ctx.scalar(m),
                                        self.series)
            if not coeff.is_zero():
                m2 = m + g.mode
                if m2 != self.excluded:
                    if m2 < lo or m2 > hi:
                        raise ValueError(
                            f"window overflow: index {m2} outside [{lo}, {hi}]")
                    _acc(out, (m2, mono), cf * coeff)
            for mono2, c2 in self._module_image(g, mono).items():
                _acc(out, (m, mono2), cf * c2)
        return TensorVector(self, out)

    def multiply(self, word, x: TensorVector) -> TensorVector:
        """Apply a product of generators, rightmost factor first."""
        for g in reversed(tuple(word)):
            x = self.act(g, x)
        return x

    def apply_module_vector(self, u, m: int) -> TensorVector:
        """Apply an element of the lowering algebra, given as a module
        vector (sum of monomials acting on the highest weight vector),
        to v_m (x) v."""
        out = self.zero()
        start = self.vacuum_at(m)
        for mono, cf in u.terms.items():
            out = out + self.multiply(mono.as_word(self.M.hw.kind),
                                      start).scaled(cf)
        return out


def tensor_act(g: Generator, x: TensorVector) -> TensorVector:
    """Module-level entry point for the Leibniz action."""
    return x.space.act(g, x)


# ---------------------------------------------------------------------------
# Cyclicity


def _hv_quotient(M: ModuleContext, p: int, case: str, u) -> QuotientModule:
    """Quotient of a twisted Heisenberg-Virasoro Verma module by its
    singular vector: basis monomials avoid I_{-p} (case I) or L_{-p}."""
    if case == "I":
        return QuotientModule(M, [u], lambda mono: p not in mono.w)
    return QuotientModule(M, [u], lambda mono: p not in mono.l)


def _pick_quotient(M: ModuleContext, choice: str) -> QuotientModule | None:
    """Quotient of the Verma module used for the second tensor factor.

    "auto" matches the classification of the highest weight: the full
    irreducible quotient when a subsingular vector exists, the quotient
    by u' when only u' does, and no reduction for an irreducible Verma
    module.  "verma", "lprime" and "l" force a choice.
    """
    if choice == "verma":
        return None
    rep = classify(M)
    if choice == "auto":
        if rep.verdict == "VermaIrreducible":
            return None
        if rep.kind == HV:
            return _hv_quotient(M, rep.p, rep.case, rep.u_prime)
        if rep.verdict == "UprimeOnly":
            return quotient_l_prime(M, rep.p, rep.u_prime)
        return quotient_l(M, rep.p, rep.r, rep.u_prime, rep.u)
    if rep.verdict == "VermaIrreducible":
        raise ValueError("the Verma module is irreducible; no quotient exists")
    if choice == "lprime":
        if rep.kind == HV:
            return _hv_quotient(M, rep.p, rep.case, rep.u_prime)
        return quotient_l_prime(M, rep.p, rep.u_prime)
    if choice == "l":
        if rep.verdict != "UprimeAndSubsingular":
            raise ValueError("no subsingular vector; the quotient by u' is "
                             "already irreducible")
        return quotient_l(M, rep.p, rep.r, rep.u_prime, rep.u)
    raise ValueError(f"unknown quotient choice {choice!r}")


def cyclicity_check(hw: HighestWeight, s: IntermediateSeries, n: int,
                    depth: int, quotient: str = "auto") -> bool:
    """Whether v_{n-1} (x) v lies in the submodule generated by higher
    indices, within the truncation.

    The span is built from all lowering words applied to v_k (x) v for
    k in [n, n + depth], each word of the degree matching the weight of
    the target.  A True answer is a proof of membership; False means
    the truncated span misses the target.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    M = ModuleContext(hw)
    Q = _pick_quotient(M, quotient)
    space = TensorSpace(M, s, (n - 1, n + depth), quotient=Q)
    if space.excluded == n - 1:
        raise ValueError("target index is excluded from the primed series")
    kind = hw.kind
    ech = linalg.Echelon(key=_column_key)
    for k in range(n, n + depth + 1):
        if k == space.excluded:
            continue
        for word_mono in weight_space_basis(k - (n - 1)):
            vec = space.multiply(word_mono.as_word(kind), space.vacuum_at(k))
            if not vec.is_zero():
                ech.add(dict(vec.terms))
    target = {(n - 1, PBWMonomial.make()): M.scalar_ctx.one}
    return ech.contains(target)


def subquotient_free_dims(hw: HighestWeight, s: IntermediateSeries, n: int,
                          max_level: int, extra: int = 2) -> dict:
    """Level dimensions of the layer U_n / U_{n+1} of V' (x) V, truncated.

    U_k is the submodule generated by v_k (x) v.  For each degree d up
    to max_level, counts how many new directions the degree-d words on
    v_n (x) v add beyond the span of words on v_k (x) v for
    k in (n, n + extra].  A count of pair_partition_count(d) at every
    level is freeness evidence at this truncation.
    """
    M = ModuleContext(hw)
    space = TensorSpace(M, s, (n - max_level - extra, n + extra))
    kind = hw.kind
    dims = {}
    for d in range(1, max_level + 1):
        ech = linalg.Echelon(key=_column_key)
        for k in range(n + 1, n + extra + 1):
            if k == space.excluded:
                continue
            for word_mono in weight_space_basis(d + (k - n)):
                vec = space.multiply(word_mono.as_word(kind),
                                     space.vacuum_at(k))
                if not vec.is_zero():
                    ech.add(dict(vec.terms))
        before = len(ech)
        for word_mono in weight_space_basis(d):
            vec = space.multiply(word_mono.as_word(kind), space.vacuum_at(n))
            if not vec.is_zero():
                ech.add(dict(vec.terms))
        dims[d] = len(ech) - before
    return dims


# ---------------------------------------------------------------------------
# Decision data


@dataclass(frozen=True)
class TensorDecision:
    """Outcome of an irreducibility decision for a tensor product.

    reason is NoSubsingular, IntegralShift or ProductNonzero; witness is
    the split index (an integer) for IntegralShift and a nonvanishing
    scalar certificate for ProductNonzero.  An Unknown verdict carries
    its explanation in notes.
    """

    verdict: str
    reason: str | None = None
    witness: object = None
    notes: tuple = ()
    p: int | None = None
    r: int | None = None

    def to_json(self) -> dict:
        if isinstance(self.witness, Scalar):
            wit = {"scalar": self.witness.to_json(),
                   "text": str(self.witness)}
        else:
            wit = self.witness
        return {"verdict": self.verdict, "reason": self.reason,
                "witness": wit, "notes": list(self.notes),
                "p": self.p, "r": self.r}


def _require_constant(x: Scalar, name: str) -> Fraction:
    if not x.is_constant():
        raise ValueError(f"cannot decide integrality of symbolic {name}")
    return x.as_fraction()


def lambda_product(hw: HighestWeight, s: IntermediateSeries, n: int,
                   p: int, r: int) -> Scalar:
    """Product of the elimination coefficients

        lambda_j = n + (r - j) p - 1 + alpha + (1 - p) beta,  j = 0..r-1.

    Applying the subsingular vector of shape L_{-p}^r + ... to
    v_{n + rp - 1} (x) v reaches v_{n-1} (x) v with this coefficient, so
    a nonzero value certifies one cyclicity step.  The highest weight
    must sit at the degenerate point carrying that subsingular vector.
    """
    ctx = s.ctx
    hW, h, c = hw["hW"], hw["h"], hw["c"]
    if not (hW * 2 + c * Fraction(p * p - 1, 12)).is_zero():
        raise ValueError(f"weight is not degenerate at p={p}")
    if not (h - ctx.scalar(necessary_h(p, r, hW))).is_zero():
        raise ValueError(f"h is not at the subsingular point for (p, r)=({p}, {r})")
    base = ctx.scalar(n) + s.alpha + s.beta * (1 - p)
    out = ctx.one
    for j in range(r):
        out = out * (base + (r - j) * p - 1)
    return out


def subquotient_weight(hw: HighestWeight, s: IntermediateSeries,
                       n: int) -> HighestWeight:
    """Highest weight of the n-th layer U_n / U_{n+1} of V' (x) V.

    For a primed series the excluded index carries no layer and is
    rejected.  The layer is spanned by v_n (x) v over the lowering
    algebra, with L_0 eigenvalue h - n - alpha - beta; for the twisted
    algebra the I_0 eigenvalue shifts by F.
    """
    if s.is_reducible_series() and n == s.excluded_index():
        raise ValueError(f"index {n} is excluded from the primed series")
    ctx = s.ctx
    h_layer = hw["h"] - (ctx.scalar(n) + s.alpha + s.beta)
    if hw.kind == W22:
        return HighestWeight.w22(ctx, c=hw["c"], h=h_layer, hW=hw["hW"])
    return HighestWeight.hv(ctx, cL=hw["cL"], cLI=hw["cLI"], h=h_layer,
                            hI=hw["hI"] + s.F, cI=hw["cI"])


# ---------------------------------------------------------------------------
# Decision for the first algebra


def decide_tensor(hw: HighestWeight, s: IntermediateSeries) -> TensorDecision:
    """Irreducibility of V'_{alpha,beta} (x) L(c, h, hW).

    Irreducible exactly when the highest weight carries both u' and a
    subsingular vector and alpha + (1 - p) beta is not an integer.
    Requires concrete rational weights and series parameters; a symbolic
    integrality question has no answer and raises instead.
    """
    if hw.kind != W22:
        raise ValueError("decide_tensor handles the first algebra; "
                         "use decide_tensor_hv")
    a = _require_constant(s.alpha, "alpha")
    b = _require_constant(s.beta, "beta")
    del a, b
    if not s.F.is_zero():
        raise ValueError("the series parameter F must vanish for this algebra")
    for name in ("c", "h", "hW"):
        _require_constant(hw[name], name)
    M = ModuleContext(hw)
    rep = classify(M)
    if rep.verdict == "VermaIrreducible":
        return TensorDecision(
            "Reducible", "NoSubsingular", None,
            notes=("the second factor is an irreducible Verma module; "
                   "every index yields a Verma subquotient",))
    if rep.verdict == "UprimeOnly":
        return TensorDecision(
            "Reducible", "NoSubsingular", None, p=rep.p,
            notes=("u' generates the maximal submodule and no subsingular "
                   "vector exists; the layers U_n / U_{n+1} are irreducible",))
    p, r = rep.p, rep.r
    shift = s.alpha + s.beta * (1 - p)
    t = shift.as_fraction()
    if t.denominator == 1:
        k = 1 - p - int(t)
        notes = [f"U_{k} is irreducible and the quotient chain splits at "
                 f"indices {[1 - j * p - int(t) for j in range(1, r + 1)]}",
                 "quotient layers have L_0 weights h + (j - beta) p, j = 1..r"]
        if hw["hW"].is_zero() and s.is_reducible_series() and \
                s.beta.as_fraction() == 1:
            notes.append("for this primed series with hW = 0 the layer list "
                         "may also contain the weight (c, h, 0) itself")
        return TensorDecision("Reducible", "IntegralShift", k,
                              notes=tuple(notes), p=p, r=r)
    witness = lambda_product(hw, s, 0, p, r)
    return TensorDecision("Irreducible", "ProductNonzero", witness,
                          notes=("alpha + (1 - p) beta is not an integer; "
                                 "the elimination product never vanishes",),
                          p=p, r=r)


# ---------------------------------------------------------------------------
# Decision for the twisted Heisenberg-Virasoro algebra


@dataclass(frozen=True)
class HVCertificate:
    """Elimination certificate polynomials with F kept formal.

    Case "I" (hI/cLI = 1 + p): applying the pure-I singular vector to
    v_{n+p-1} (x) v and eliminating intermediate indices leaves
    F s(F) v_{n-1} (x) v.  Case "L" (hI/cLI = 1 - p): the same procedure
    on v_{n+p} (x) v leaves (q(F) n + r(F)) v_n (x) v.  The polynomials
    live in a context extended by the formal parameters n and F.
    """

    case: str
    p: int
    s_poly: Scalar | None = None
    q_poly: Scalar | None = None
    r_poly: Scalar | None = None

    def to_json(self) -> dict:
        def enc(x):
            return None if x is None else {"scalar": x.to_json(),
                                           "text": str(x)}
        return {"case": self.case, "p": self.p, "sPoly": enc(self.s_poly),
                "qPoly": enc(self.q_poly), "rPoly": enc(self.r_poly)}


def _extend_context(ctx: PolyContext, extra: tuple):
    """Context with appended parameter names, plus an exact lift map.

    Names already present keep their slot and are not duplicated.
    """
    fresh = tuple(name for name in extra if name not in ctx.names)
    ectx = PolyContext(ctx.names + fresh)
    pad = (0,) * len(fresh)

    def lift(x: Scalar) -> Scalar:
        if x.ctx == ectx:
            return x
        if x.ctx != ctx:
            raise ValueError("scalar from an unexpected context")
        num = {e + pad: cf for e, cf in x.num.items()}
        den = {e + pad: cf for e, cf in x.den.items()}
        # Appending zero exponents preserves the canonical form.
        return Scalar(ectx, x.cont, num, den)

    return ectx, lift


def _eliminate_to_target(space: TensorSpace, T: TensorVector,
                         target_index: int, top_index: int) -> Scalar:
    """Coefficient left on v_target (x) v after eliminating the
    intermediate indices of T.

    T is the image of a singular vector applied to v_top (x) v, so its
    components sit at indices in [target, top - 1].  Lowering words on
    the strictly intermediate vectors v_k (x) v, target < k < top, have
    degree below p; at those degrees the quotient has no relations, the
    word images are linearly independent, and they cover exactly the
    non-target columns.  Reducing T against them is therefore an exact
    change of generators and leaves a unique multiple of the bare
    target vector.
    """
    kind = space.M.hw.kind
    tgt = (target_index, PBWMonomial.make())

    def key(col):
        return (1 if col == tgt else 0,) + _column_key(col)

    ech = linalg.Echelon(key=key)
    for k in range(target_index + 1, top_index):
        for word_mono in weight_space_basis(k - target_index):
            vec = space.multiply(word_mono.as_word(kind), space.vacuum_at(k))
            if not vec.is_zero():
                ech.add(dict(vec.terms))
    if any(col == tgt for col in ech.pivots):
        raise ValueError("degenerate elimination: an intermediate word "
                         "reduced to the bare target vector")
    rem = ech.reduce(dict(T.terms))
    if not rem:
        return space.M.scalar_ctx.zero
    if set(rem) != {tgt}:
        raise ValueError("degenerate elimination: the reduction left "
                         "components away from the target index")
    return rem[tgt]


def hv_decision_polynomials(hw: HighestWeight, s: IntermediateSeries,
                            p: int) -> HVCertificate:
    """Elimination certificates for the twisted algebra, F formal.

    The highest weight must satisfy hI = (1 + p) cLI (case I) or
    hI = (1 - p) cLI (case L) with cI = 0 and cLI nonzero.  The returned
    polynomials are exact in the field extended by n and F; the series
    parameter F supplied in s is ignored and replaced by the formal one.
    """
    if hw.kind != HV:
        raise ValueError("certificates exist for the twisted algebra only")
    if p < 1:
        raise ValueError("p must be a positive integer")
    cLI, hI, cI = hw["cLI"], hw["hI"], hw["cI"]
    if cLI.is_zero() or not cI.is_zero():
        raise ValueError("requires c_I = 0 and c_LI nonzero")
    if (hI - cLI * (1 + p)).is_zero():
        case = "I"
    elif (hI - cLI * (1 - p)).is_zero():
        case = "L"
    else:
        raise ValueError(f"weight is not degenerate at p={p}")
    if "n" in hw.ctx.names:
        raise ValueError("the parameter name 'n' is reserved for the "
                         "series index")
    ectx, lift = _extend_context(hw.ctx, ("n", "F"))
    n_sym, f_sym = ectx.var("n"), ectx.var("F")
    hw2 = HighestWeight.hv(ectx, cL=lift(hw["cL"]), cLI=lift(cLI),
                           h=lift(hw["h"]), hI=lift(hI), cI=lift(cI))
    s2 = IntermediateSeries(lift(s.alpha), lift(s.beta), f_sym)
    M = ModuleContext(hw2)
    if case == "I":
        u = u_prime(M, p)
        quotient = _hv_quotient(M, p, "I", u)
        target, top = -1, p - 1
    else:
        space_ = singular_space(M, p)
        if len(space_) != 1:
            raise ValueError("expected a one-dimensional singular space")
        u = space_[0]
        head = PBWMonomial.make(l=(p,))
        u = u.scaled(ectx.one / u.terms[head])
        quotient = _hv_quotient(M, p, "L", u)
        target, top = 0, p
    space = TensorSpace(M, s2, (target, top), quotient=quotient,
                        index_origin=n_sym)
    T = space.apply_module_vector(u, top)
    lam = _eliminate_to_target(space, T, target, top)
    if case == "I":
        if not lam.is_zero() and lam.degree_in("n") > 0:
            raise ValueError("degenerate elimination: unexpected index "
                             "dependence in the pure-I certificate")
        return HVCertificate(case="I", p=p, s_poly=lam / f_sym)
    if not lam.is_zero() and lam.degree_in("n") > 1:
        raise ValueError("degenerate elimination: certificate is not "
                         "linear in the index")
    return HVCertificate(case="L", p=p, q_poly=lam.coeff_of("n", 1),
                         r_poly=lam.coeff_of("n", 0))


def _certificate_value(poly: Scalar, f_value: Fraction) -> Scalar:
    """Evaluate a certificate polynomial at a concrete F (and n = 0)."""
    return poly.substitute({"F": f_value, "n": 0})


def decide_tensor_hv(hw: HighestWeight, s: IntermediateSeries) -> TensorDecision:
    """Irreducibility of V'_{alpha,beta,F} (x) L(cL, cLI; h, hI).

    Requires cI = 0 and cLI nonzero, concrete rational weights and
    concrete alpha and beta.  F may be a concrete rational or symbolic;
    a symbolic F is treated as transcendental.  Cases the certificates
    cannot settle return an Unknown verdict.
    """
    if hw.kind != HV:
        raise ValueError("decide_tensor_hv handles the twisted algebra; "
                         "use decide_tensor")
    for name in ("cL", "cLI", "h", "hI", "cI"):
        _require_constant(hw[name], name)
    if not hw["cI"].is_zero():
        raise ValueError("requires c_I = 0")
    if hw["cLI"].is_zero():
        raise ValueError("requires c_LI nonzero")
    a = _require_constant(s.alpha, "alpha")
    b = _require_constant(s.beta, "beta")
    ctx = s.ctx
    f_const = s.F.is_constant()

    if hw["h"].is_zero() and hw["hI"].is_zero():
        # Tensor with the vacuum module, any F.
        if a.denominator == 1:
            k = -int(a)
            quot = ("V(cL, 1, F)" if b == 1 else "V(cL, 1 - beta, F)")
            return TensorDecision(
                "Reducible", "IntegralShift", k, p=1,
                notes=(f"U_{k} is an irreducible submodule",
                       f"the quotient is the Verma module {quot}"))
        return TensorDecision(
            "Irreducible", "ProductNonzero", -s.alpha, p=1,
            notes=("vacuum second factor: irreducible exactly when alpha "
                   "is not an integer",))

    ratio = (hw["hI"] / hw["cLI"]).as_fraction()
    if ratio.denominator != 1 or ratio == 1:
        return TensorDecision(
            "Reducible", "NoSubsingular", None,
            notes=("the second factor is an irreducible Verma module; "
                   "every index yields a Verma subquotient with I_0 "
                   "weight hI + F",))

    if ratio >= 2:
        p = int(ratio) - 1
        if f_const and s.F.is_zero():
            return TensorDecision(
                "Reducible", "NoSubsingular", None, p=p,
                notes=("F = 0 with a pure-I singular vector: every layer "
                       "U_n / U_{n+1} is irreducible",))
        cert = hv_decision_polynomials(hw, s, p)
        if not f_const:
            if cert.s_poly.is_zero():
                return TensorDecision(
                    "Unknown", None, None, p=p,
                    notes=("the pure-I certificate vanishes identically",))
            witness = cert.s_poly * cert.s_poly.ctx.var("F")
            return TensorDecision(
                "Irreducible", "ProductNonzero", witness, p=p,
                notes=("F transcendental: F s(F) cannot vanish",))
        f = s.F.as_fraction()
        val = _certificate_value(cert.s_poly, f).as_fraction() * f
        if val == 0:
            return TensorDecision(
                "Unknown", None, None, p=p,
                notes=(f"F = {f} is a root of the certificate polynomial "
                       "F s(F); the criterion is silent here",))
        return TensorDecision("Irreducible", "ProductNonzero", ctx.scalar(val),
                              p=p, notes=("F s(F) is nonzero",))

    p = 1 - int(ratio)
    if f_const and s.F.is_zero():
        shift = a + (1 - p) * b
        if shift.denominator == 1:
            k = 1 - p - int(shift)
            return TensorDecision(
                "Reducible", "IntegralShift", k, p=p,
                notes=(f"U_{k} is irreducible; the quotient has weights "
                       "(cL, h + p (1 - beta), hI)",))
        witness = ctx.scalar(p - 1) + s.alpha + s.beta * (1 - p)
        return TensorDecision(
            "Irreducible", "ProductNonzero", witness, p=p,
            notes=("alpha + (1 - p) beta is not an integer",))
    cert = hv_decision_polynomials(hw, s, p)
    if not f_const:
        q, r_ = cert.q_poly, cert.r_poly
        if q.is_zero() and r_.is_zero():
            return TensorDecision(
                "Unknown", None, None, p=p,
                notes=("the certificate q(F) n + r(F) vanishes identically",))
        if q.is_zero():
            return TensorDecision(
                "Irreducible", "ProductNonzero", r_, p=p,
                notes=("F transcendental: the certificate is the nonzero "
                       "constant r(F)",))
        root = r_ / q
        if root.is_constant() and (-root.as_fraction()).denominator == 1:
            k = int(-root.as_fraction())
            return TensorDecision(
                "Unknown", None, None, p=p,
                notes=(f"the certificate vanishes at index n = {k} for "
                       "every F; the criterion is silent there",))
        return TensorDecision(
            "Irreducible", "ProductNonzero", r_, p=p,
            notes=("F transcendental: q(F) n + r(F) has no integer root",))
    f = s.F.as_fraction()
    qv = cert.q_poly.substitute({"F": f, "n": 0}).as_fraction()
    rv = cert.r_poly.substitute({"F": f, "n": 0}).as_fraction()
    if qv == 0 and rv == 0:
        return TensorDecision(
            "Unknown", None, None, p=p,
            notes=(f"the certificate vanishes identically at F = {f}",))
    if qv != 0 and (Fraction(-rv, qv)).denominator == 1:
        k = int(Fraction(-rv, qv))
        return TensorDecision(
            "Unknown", None, None, p=p,
            notes=(f"the certificate q(F) n + r(F) vanishes at index n = {k}; "
                   "the criterion is silent there",))
    return TensorDecision(
        "Irreducible", "ProductNonzero", ctx.scalar(rv), p=p,
        notes=("q(F) n + r(F) is nonzero at every integer index",))
