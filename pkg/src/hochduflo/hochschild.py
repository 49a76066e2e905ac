"""Sum-total Hochschild complexes of dg algebras on truncation windows.

A cochain of bidegree (p, r) is a degree-r map A^{(x)p} -> M, stored
columnwise over basis words; an absent column is zero, so sparsely supported
random cochains are honest cochains on the whole window.  The module provides
the Hochschild differential, the differential induced by the dg structures,
the cup product, the insertion compositions and the Gerstenhaber bracket as
exact evaluators, plus matrix-level interior-window cohomology for finite
algebras.
"""

from __future__ import annotations

from .signs import sgn
from .exact import (ZERO, ONE, BasisSpace, GradedMap, GradedVector,
                    StructuralError, WindowOverflow, as_q, cohomology_slice,
                    derive_seed, random_vector)


class TruncationWindow:
    """The bounds defining a finite Hochschild computation.

    ``max_arity`` bounds the word length, ``degree_range`` the cochain
    degrees, and ``pbw`` the enveloping filtration when one is involved.
    Components produced at the arity boundary are computed into it and
    flagged by the interior-reporting convention, never silently dropped.
    """

    def __init__(self, max_arity: int, degree_range=(-6, 6), pbw: int = 3):
        if max_arity < 1:
            raise StructuralError("the arity window must be at least one")
        self.max_arity = max_arity
        self.degree_range = tuple(degree_range)
        self.pbw = pbw

    def to_dict(self):
        return {"max_arity": self.max_arity,
                "degree_range": list(self.degree_range), "pbw": self.pbw}

    def __repr__(self):
        return "TruncationWindow(P=%d, r=%s, N=%d)" % (
            self.max_arity, self.degree_range, self.pbw)


class DgAlgebra:
    """Finite-window dg algebra presentation.

    ``mul_keys(k1, k2)`` returns the product of basis monomials as a vector;
    ``differential_key`` is d_A on basis keys (may be None for d = 0).
    """

    def __init__(self, space: BasisSpace, unit_key, mul_keys,
                 differential_key=None, name=None):
        self.space = space
        self.unit_key = unit_key
        self.mul_keys = mul_keys
        self.differential_key = differential_key
        self.name = name or space.name

    def unit(self) -> GradedVector:
        return GradedVector.basis(self.space, self.unit_key)

    def mul(self, v: GradedVector, w: GradedVector) -> GradedVector:
        out = GradedVector.zero(self.space)
        for k1, c1 in v.coeffs.items():
            for k2, c2 in w.coeffs.items():
                out.add_inplace(self.mul_keys(k1, k2), c1 * c2)
        return out

    def d_key(self, key) -> GradedVector:
        if self.differential_key is None:
            return GradedVector.zero(self.space)
        return self.differential_key(key)

    def d_vec(self, v: GradedVector) -> GradedVector:
        out = GradedVector.zero(self.space)
        for k, c in v.coeffs.items():
            out.add_inplace(self.d_key(k), c)
        return out

    def word_degree(self, word) -> int:
        return sum(self.space.degree[k] for k in word)

    def is_associative_on(self, keys=None) -> bool:
        keys = keys or self.space.keys
        for a in keys:
            for b in keys:
                ab = self.mul_keys(a, b)
                for c in keys:
                    lhs = self.mul(ab, GradedVector.basis(self.space, c))
                    rhs = self.mul(GradedVector.basis(self.space, a),
                                   self.mul_keys(b, c))
                    if lhs != rhs:
                        return False
        return True


def ground_field() -> DgAlgebra:
    space = BasisSpace("k", ((("1",), 0),))
    one = ("1",)
    return DgAlgebra(space, one, lambda a, b: GradedVector.basis(space, one),
                     name="k")


def dual_odd_algebra(dual, odd) -> DgAlgebra:
    """S(g[1])^ with the Chevalley-Eilenberg differential."""
    d_g = dual.differential(odd)
    return DgAlgebra(dual.space, (), dual.mul_keys,
                     lambda k: d_g.column(k), name=dual.space.name)


def ug_algebra(ug) -> DgAlgebra:
    return DgAlgebra(ug.space, (), ug.mul_keys, None, name=ug.space.name)


def sym_trunc_algebra(sym) -> DgAlgebra:
    return DgAlgebra(sym.space, (), sym.mul_keys, None, name=sym.space.name)


class Cochain:
    """Hochschild cochain of bidegree (p, r) over A with values in ``module``.

    ``module`` only needs a ``space`` attribute here; bimodule actions enter
    through the operator evaluators.  Values outside the stored columns are
    zero unless the cochain carries a seed, in which case they are
    deterministic seeded slices (used by the property harness).
    """

    def __init__(self, algebra: DgAlgebra, module, p: int, r: int,
                 columns=None, seed=None, letters=None, value_keys=None,
                 label=""):
        self.algebra = algebra
        self.module = module
        self.p = p
        self.r = r
        self.columns = dict(columns or {})
        self.seed = seed
        self.letters = frozenset(letters) if letters is not None else None
        self.value_keys = frozenset(value_keys) if value_keys is not None else None
        self.label = label

    def value(self, word) -> GradedVector:
        word = tuple(word)
        if len(word) != self.p:
            raise StructuralError("arity mismatch: %d letters for a %d-cochain"
                                  % (len(word), self.p))
        got = self.columns.get(word)
        if got is not None:
            return got
        if self.seed is None:
            return GradedVector.zero(self.module.space)
        if self.letters is not None and any(l not in self.letters for l in word):
            return GradedVector.zero(self.module.space)
        deg = self.algebra.word_degree(word) + self.r
        vec = random_vector(self.module.space, deg,
                            derive_seed(self.label, self.seed, word))
        if self.value_keys is not None:
            vec = GradedVector(self.module.space,
                               {k: c for k, c in vec.coeffs.items()
                                if k in self.value_keys})
        return vec

    def value_with_slot(self, before, vec: GradedVector, after) -> GradedVector:
        """Multilinear evaluation with one vector-valued slot."""
        out = GradedVector.zero(self.module.space)
        for key, c in vec.coeffs.items():
            out.add_inplace(self.value(tuple(before) + (key,) + tuple(after)), c)
        return out

    def store(self, words):
        """Materialize on a family of words (sparse matrix form)."""
        cols = {tuple(w): self.value(w) for w in words}
        return Cochain(self.algebra, self.module, self.p, self.r,
                       columns={w: v for w, v in cols.items() if v},
                       label=self.label + "#stored")


class Derived(Cochain):
    """Operator-image cochain evaluated on demand from the formula."""

    def __init__(self, algebra, module, p, r, fn, label=""):
        super().__init__(algebra, module, p, r, label=label)
        self._fn = fn

    def value(self, word):
        word = tuple(word)
        if len(word) != self.p:
            raise StructuralError("arity mismatch in %s" % (self.label or "derived"))
        return self._fn(word)


class ZeroCochain(Cochain):
    """Formally zero cochain; tolerates any arity (used for empty bidegrees)."""

    def __init__(self, algebra, module, p, r):
        super().__init__(algebra, module, p, r, label="0")

    def value(self, word):
        return GradedVector.zero(self.module.space)


def unit_cochain(algebra: DgAlgebra) -> Cochain:
    return Cochain(algebra, algebra, 0, 0, columns={(): algebra.unit()},
                   label="1")


def identity_cochain(algebra: DgAlgebra) -> Cochain:
    cols = {(k,): GradedVector.basis(algebra.space, k) for k in algebra.space.keys}
    return Cochain(algebra, algebra, 1, 0, columns=cols, label="id")


def multiplication_cochain(algebra: DgAlgebra) -> Cochain:
    return Derived(algebra, algebra, 2, 0,
                   lambda w: algebra.mul_keys(w[0], w[1]), label="mu")


def differential_cochain(algebra: DgAlgebra) -> Cochain:
    return Derived(algebra, algebra, 1, 1, lambda w: algebra.d_key(w[0]),
                   label="dA")


# ---------------------------------------------------------------------------
# operator evaluators (bimodule case: module M with left/right A-actions)
# ---------------------------------------------------------------------------

class BimoduleOps:
    """Left/right actions and differential of an A-A-bimodule presentation."""

    def __init__(self, space, lmul, rmul, differential=None):
        self.space = space
        self.lmul = lmul          # (a_key, m_vec) -> m_vec
        self.rmul = rmul          # (m_vec, a_key) -> m_vec
        self.differential = differential   # m_vec -> m_vec

    @classmethod
    def of_algebra(cls, algebra: DgAlgebra):
        def lmul(a_key, m_vec):
            return algebra.mul(GradedVector.basis(algebra.space, a_key), m_vec)

        def rmul(m_vec, a_key):
            return algebra.mul(m_vec, GradedVector.basis(algebra.space, a_key))

        return cls(algebra.space, lmul, rmul, algebra.d_vec)


def hoch_d(f: Cochain, bimod: BimoduleOps) -> Cochain:
    """The Hochschild differential d_H(f), arity p+1, same r."""
    A = f.algebra
    p, r = f.p, f.r

    def fn(word):
        out = GradedVector.zero(f.module.space)
        a0 = word[0]
        head = f.value(word[1:])
        if head:
            sign = sgn((p + r - 1) + r * A.space.degree[a0])
            out.add_inplace(bimod.lmul(a0, head), sign)
        for i in range(p):
            prod = A.mul_keys(word[i], word[i + 1])
            if prod:
                sign = sgn(p + r + i)
                out.add_inplace(
                    f.value_with_slot(word[:i], prod, word[i + 2:]), sign)
        tail = f.value(word[:-1])
        if tail:
            out.add_inplace(bimod.rmul(tail, word[-1]), sgn(r))
        return out

    return Derived(A, f.module, p + 1, r, fn, label="dH(%s)" % f.label)


def hoch_partial(f: Cochain, bimod: BimoduleOps) -> Cochain:
    """The differential induced by d_A and d_M, same arity, r+1."""
    A = f.algebra
    p, r = f.p, f.r

    def fn(word):
        out = GradedVector.zero(f.module.space)
        if bimod.differential is not None:
            head = f.value(word)
            if head:
                out.add_inplace(bimod.differential(head))
        if A.differential_key is not None:
            acc = 0
            for i in range(p):
                da = A.d_key(word[i])
                if da:
                    sign = sgn(r + acc)
                    out.add_inplace(
                        f.value_with_slot(word[:i], da, word[i + 1:]), -sign)
                acc += A.space.degree[word[i]]
        return out

    return Derived(A, f.module, p, r + 1, fn, label="del(%s)" % f.label)


def hoch_total_d(f: Cochain, bimod: BimoduleOps):
    """d_H + partial, returned as the pair of components."""
    return hoch_d(f, bimod), hoch_partial(f, bimod)


def cup(f: Cochain, g: Cochain) -> Cochain:
    """Cup product for algebra-valued cochains."""
    A = f.algebra
    p1, r1, p2, r2 = f.p, f.r, g.p, g.r
    if p1 < 0 or p2 < 0:
        return ZeroCochain(A, f.module, p1 + p2, r1 + r2)

    def fn(word):
        first, second = word[:p1], word[p1:]
        fv = f.value(first)
        if not fv:
            return GradedVector.zero(A.space)
        gv = g.value(second)
        if not gv:
            return GradedVector.zero(A.space)
        exponent = p1 * p2 + r2 * (A.word_degree(first) + p1)
        out = A.mul(fv, gv)
        return out if exponent % 2 == 0 else -out

    return Derived(A, f.module, p1 + p2, r1 + r2, fn,
                   label="(%s)u(%s)" % (f.label, g.label))


def circ(f: Cochain, g: Cochain, i: int) -> Cochain:
    """Insertion composition f o_i g, 1 <= i <= p1."""
    A = f.algebra
    p1, r1, p2, r2 = f.p, f.r, g.p, g.r
    if p1 < 0 or p2 < 0:
        return ZeroCochain(A, f.module, p1 + p2 - 1, r1 + r2)
    if not 1 <= i <= p1:
        raise StructuralError("insertion slot %d out of range 1..%d" % (i, p1))

    def fn(word):
        before = word[:i - 1]
        mid = word[i - 1:i - 1 + p2]
        after = word[i - 1 + p2:]
        gv = g.value(mid)
        if not gv:
            return GradedVector.zero(f.module.space)
        sign = sgn(r2 * A.word_degree(before))
        out = f.value_with_slot(before, gv, after)
        return out if sign == 1 else -out

    return Derived(A, f.module, p1 + p2 - 1, r1 + r2, fn,
                   label="(%s)o%d(%s)" % (f.label, i, g.label))


def gerstenhaber(f: Cochain, g: Cochain) -> Cochain:
    """The Gerstenhaber bracket [f, g]."""
    A = f.algebra
    p1, r1, p2, r2 = f.p, f.r, g.p, g.r
    if p1 + p2 - 1 < 0 or p1 < 0 or p2 < 0:
        return ZeroCochain(A, f.module, p1 + p2 - 1, r1 + r2)
    flip = sgn((p1 + r1 - 1) * (p2 + r2 - 1))

    def fn(word):
        out = GradedVector.zero(f.module.space)
        for i in range(1, p1 + 1):
            sign = sgn((p1 - 1) * r2 + (i - 1) * (p2 - 1))
            out.add_inplace(circ(f, g, i).value(word), sign)
        for j in range(1, p2 + 1):
            sign = sgn((p2 - 1) * r1 + (j - 1) * (p1 - 1))
            out.add_inplace(circ(g, f, j).value(word), -flip * sign)
        return out

    return Derived(A, f.module, p1 + p2 - 1, r1 + r2, fn,
                   label="[%s,%s]" % (f.label, g.label))


def random_cochain(algebra: DgAlgebra, module, p, r, seed, letters=None,
                   value_keys=None, label="f") -> Cochain:
    return Cochain(algebra, module, p, r, seed=seed, letters=letters,
                   value_keys=value_keys, label="%s%d" % (label, seed))


# ---------------------------------------------------------------------------
# matrix-level interior cohomology for finite algebras
# ---------------------------------------------------------------------------

def words_of(space: BasisSpace, arity: int):
    if arity < 0:
        return []
    words = [()]
    for _ in range(arity):
        words = [w + (k,) for w in words for k in space.keys]
    return words


def total_cochain_space(algebra: DgAlgebra, module_space: BasisSpace,
                        total_degree: int, arity_cap: int) -> BasisSpace:
    """Total-degree slice of the sum-total complex up to an arity cap.

    Keys are (p, word, value_key); every key is assigned degree
    ``total_degree`` so the total differential is a shift-1 graded map.
    """
    items = []
    for p in range(arity_cap + 1):
        for word in words_of(algebra.space, p):
            wdeg = algebra.word_degree(word)
            for vkey in module_space.keys:
                if p + module_space.degree[vkey] - wdeg == total_degree:
                    items.append(((p, word, vkey), total_degree))
    return BasisSpace("Hoch(%s)^%d<=%d" % (algebra.name, total_degree,
                                           arity_cap), items)


def _mul_preimage_table(algebra: DgAlgebra):
    """key -> list of (a, b, coeff) with coeff the key-component of a.b."""
    table = {}
    for a in algebra.space.keys:
        for b in algebra.space.keys:
            for key, c in algebra.mul_keys(a, b).items():
                table.setdefault(key, []).append((a, b, c))
    return table


def _d_preimage_table(algebra: DgAlgebra):
    table = {}
    if algebra.differential_key is None:
        return table
    for a in algebra.space.keys:
        for key, c in algebra.d_key(a).items():
            table.setdefault(key, []).append((a, c))
    return table


def total_differential(algebra: DgAlgebra, bimod: BimoduleOps,
                       source: BasisSpace, target: BasisSpace) -> GradedMap:
    """(d_H + partial) between total-degree slices, columnwise.

    Built through multiplication/differential preimage tables so the cost is
    proportional to the actual fan-out, not to the full word count.
    """
    mul_pre = _mul_preimage_table(algebra)
    d_pre = _d_preimage_table(algebra)
    out = GradedMap(source, target, 1)
    for (p, word, vkey) in source.keys:
        r = bimod.space.degree[vkey] - algebra.word_degree(word)
        col = GradedVector.zero(target)
        vvec = GradedVector.basis(bimod.space, vkey)

        def add(key, vec, sign):
            for mk, c in vec.coeffs.items():
                full = (key[0], key[1], mk)
                if full in target.degree:
                    col.add_term(full, sign * c)

        # d_H term 1: prepend any letter a0
        for a0 in algebra.space.keys:
            sign = sgn((p + r - 1) + r * algebra.space.degree[a0])
            add((p + 1, (a0,) + word), bimod.lmul(a0, vvec), sign)
        # d_H term 2: split one slot through a multiplication preimage
        for i in range(p):
            for (a, b, c) in mul_pre.get(word[i], ()):
                w1 = word[:i] + (a, b) + word[i + 1:]
                add((p + 1, w1), vvec.scale(c), sgn(p + r + i))
        # d_H term 3: append any letter
        for ap in algebra.space.keys:
            add((p + 1, word + (ap,)), bimod.rmul(vvec, ap), sgn(r))
        # partial: value differential
        if bimod.differential is not None:
            add((p, word), bimod.differential(vvec), 1)
        # partial: letter differentials through the preimage table
        for i in range(p):
            for (a, c) in d_pre.get(word[i], ()):
                w1 = word[:i] + (a,) + word[i + 1:]
                acc = sum(algebra.space.degree[k] for k in w1[:i])
                add((p, w1), vvec.scale(-sgn(r + acc) * c), 1)
        out.set_column((p, word, vkey), col, check=False)
    return out


def interior_hh(algebra: DgAlgebra, total_degree: int, arity_window: int,
                bimod: BimoduleOps = None):
    """Interior-window Hochschild cohomology dimension and representatives.

    Classes are reported at arities <= P-1 so the cocycle condition is fully
    checked into arity P; coboundaries are taken from arities <= P-2.
    """
    bimod = bimod or BimoduleOps.of_algebra(algebra)
    P = arity_window
    below = total_cochain_space(algebra, bimod.space, total_degree - 1,
                                max(P - 2, -1) if P >= 2 else -1)
    here = total_cochain_space(algebra, bimod.space, total_degree, P - 1)
    above = total_cochain_space(algebra, bimod.space, total_degree + 1, P)

    d_out = total_differential(algebra, bimod, here, above)
    if below.dim:
        d_in_raw = total_differential(algebra, bimod, below, here)
    else:
        d_in_raw = GradedMap.zero(below, here, 1)
    dim, reps = cohomology_slice(d_in_raw, d_out, total_degree)
    return dim, reps
