"""Finite-dimensional Lie algebras and the graded spaces built from them.

Provides structure-constant validation, PBW-normalized enveloping algebra
windows, the odd symmetric algebra S(g[1]) and its dual with the
reversed-order monomial convention, the four pairings, both contraction
actions, and Chevalley-Eilenberg differentials for the coefficient modules
used downstream (trivial, symmetric, enveloping, endomorphism).

Degree conventions: g sits in degree 0, g[1] in degree -1, (g[1])^ in
degree +1.  Basis keys are index tuples: weakly increasing for enveloping
and symmetric monomials, strictly increasing for S(g[1]), strictly
decreasing for its dual.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations, permutations

from .exact import (Q, ZERO, ONE, BasisSpace, GradedMap, GradedVector,
                    StructuralError, WindowOverflow, as_q, kernel_basis)
from .series import PolyTrunc
from .signs import sgn, koszul_sign, sort_monomial, unshuffles, unshuffle_sign, \
    tensor_interleave_sign


class LieAlgebra:
    """Structure constants c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k.

    Indices are 0-based internally; the JSON interchange format is 1-based.
    """

    def __init__(self, dimension: int, brackets, name: str = "g"):
        self.dimension = dimension
        self.name = name
        # canonical storage: (i, j) with i < j -> {k: coeff}
        table = {}
        for (i, j), comps in brackets.items():
            if not (0 <= i < dimension and 0 <= j < dimension):
                raise StructuralError("generator index out of range in %s" % name)
            if i == j:
                continue
            clean = {k: as_q(c) for k, c in comps.items() if as_q(c)}
            if not clean:
                continue
            if i < j:
                base = table.setdefault((i, j), {})
                for k, c in clean.items():
                    base[k] = base.get(k, ZERO) + c
            else:
                base = table.setdefault((j, i), {})
                for k, c in clean.items():
                    base[k] = base.get(k, ZERO) - c
        self.table = {ij: {k: c for k, c in comps.items() if c}
                      for ij, comps in table.items()}
        self.table = {ij: comps for ij, comps in self.table.items() if comps}

    def bracket(self, i: int, j: int) -> dict:
        """[e_i, e_j] as a dict k -> coefficient."""
        if i == j:
            return {}
        if i < j:
            return dict(self.table.get((i, j), {}))
        return {k: -c for k, c in self.table.get((j, i), {}).items()}

    def bracket_of_vectors(self, x: dict, y: dict) -> dict:
        out = {}
        for i, xi in x.items():
            for j, yj in y.items():
                for k, c in self.bracket(i, j).items():
                    s = out.get(k, ZERO) + xi * yj * c
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    def validate(self):
        """Check antisymmetry (structural) and the Jacobi identity exactly."""
        violations = []
        d = self.dimension
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    acc = {}
                    for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = self.bracket(a, b)
                        for m, cm in inner.items():
                            for n, cn in self.bracket(m, c).items():
                                s = acc.get(n, ZERO) + cm * cn
                                if s:
                                    acc[n] = s
                                else:
                                    acc.pop(n, None)
                    if acc:
                        violations.append((i, j, k))
        return ValidationReport(self, tuple(violations))

    # -- constructors -----------------------------------------------------

    @classmethod
    def abelian(cls, dimension: int, name=None):
        return cls(dimension, {}, name or ("abelian%d" % dimension))

    @classmethod
    def aff1(cls):
        """[e1, e2] = e2 (the nonabelian 2-dimensional algebra)."""
        return cls(2, {(0, 1): {1: 1}}, "aff1")

    @classmethod
    def heisenberg3(cls):
        """[e1, e2] = e3 central."""
        return cls(3, {(0, 1): {2: 1}}, "heisenberg3")

    @classmethod
    def sl2(cls):
        """Basis (e, f, h) with [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
        return cls(3, {(2, 0): {0: 2}, (2, 1): {1: -2}, (0, 1): {2: 1}}, "sl2")

    # -- JSON interchange --------------------------------------------------

    @classmethod
    def from_dict(cls, data: dict):
        dim = int(data["dimension"])
        name = data.get("name", "g")
        brackets = {}
        for entry in data.get("brackets", ()):
            i = int(entry["i"]) - 1
            j = int(entry["j"]) - 1
            comps = {int(k) - 1: Fraction(v) for k, v in entry["coeffs"].items()}
            key = (i, j)
            if key in brackets:
                raise StructuralError("duplicate bracket entry for (%d,%d)" % (i + 1, j + 1))
            brackets[key] = comps
        return cls(dim, brackets, name)

    @classmethod
    def from_json_file(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        entries = []
        for (i, j), comps in sorted(self.table.items()):
            entries.append({
                "i": i + 1, "j": j + 1,
                "coeffs": {str(k + 1): str(c) for k, c in sorted(comps.items())},
            })
        return {"name": self.name, "dimension": self.dimension, "brackets": entries}

    def __repr__(self):
        return "LieAlgebra(%s, dim=%d)" % (self.name, self.dimension)


class ValidationReport:
    def __init__(self, algebra, jacobi_violations):
        self.algebra = algebra
        self.jacobi_violations = jacobi_violations

    @property
    def ok(self) -> bool:
        return not self.jacobi_violations

    def __repr__(self):
        if self.ok:
            return "ValidationReport(%s: ok)" % self.algebra.name
        return "ValidationReport(%s: Jacobi fails at %s)" % (
            self.algebra.name, list(self.jacobi_violations[:3]))


# ---------------------------------------------------------------------------
# enveloping algebra windows
# ---------------------------------------------------------------------------

def _pbw_keys(dimension, cap):
    keys = [()]
    frontier = [()]
    for _ in range(cap):
        new = []
        for word in frontier:
            start = word[-1] if word else 0
            for i in range(start, dimension):
                new.append(word + (i,))
        keys.extend(new)
        frontier = new
    return keys


class UgWindow:
    """PBW window of the enveloping algebra: weakly increasing words <= cap.

    Multiplication rewrites x_j x_i = x_i x_j + [x_j, x_i] for j > i and
    terminates by filtration descent; products whose normal form would exceed
    the cap raise WindowOverflow (never silently dropped).
    """

    def __init__(self, g: LieAlgebra, cap: int):
        if cap < 0:
            raise StructuralError("PBW cap must be >= 0")
        self.g = g
        self.cap = cap
        self.space = BasisSpace("Ug(%s)<=%d" % (g.name, cap),
                                ((k, 0) for k in _pbw_keys(g.dimension, cap)))
        self._normal = {}

    @property
    def unit_key(self):
        return ()

    def unit(self) -> GradedVector:
        return GradedVector.basis(self.space, ())

    def normal_order(self, word) -> GradedVector:
        """Normal form of an arbitrary generator word, as a window vector."""
        word = tuple(word)
        if len(word) > self.cap:
            raise WindowOverflow(
                "word of length %d exceeds PBW window %d of %s"
                % (len(word), self.cap, self.g.name))
        cached = self._normal.get(word)
        if cached is not None:
            return cached
        out = self._normal_order_uncached(word)
        self._normal[word] = out
        return out

    def _normal_order_uncached(self, word):
        for t in range(len(word) - 1):
            a, b = word[t], word[t + 1]
            if a > b:
                swapped = word[:t] + (b, a) + word[t + 2:]
                out = self.normal_order(swapped).copy()
                for k, c in self.g.bracket(a, b).items():
                    out.add_inplace(self.normal_order(word[:t] + (k,) + word[t + 2:]), c)
                return out
        return GradedVector.basis(self.space, word)

    def mul_keys(self, k1, k2) -> GradedVector:
        return self.normal_order(tuple(k1) + tuple(k2))

    def mul(self, v: GradedVector, w: GradedVector) -> GradedVector:
        out = GradedVector.zero(self.space)
        for k1, c1 in v.coeffs.items():
            for k2, c2 in w.coeffs.items():
                out.add_inplace(self.mul_keys(k1, k2), c1 * c2)
        return out

    def counit(self, v: GradedVector) -> Fraction:
        """Augmentation: coefficient of the empty word."""
        return v.coeff(())

    def differential_key(self, key) -> GradedVector:
        return GradedVector.zero(self.space)

    def keys_up_to(self, bound):
        return tuple(k for k in self.space.keys if len(k) <= bound)


# ---------------------------------------------------------------------------
# S(g[1]) and its dual
# ---------------------------------------------------------------------------

class OddSym:
    """The odd symmetric algebra S(g[1]): subset monomials of degree -k."""

    def __init__(self, g: LieAlgebra):
        self.g = g
        d = g.dimension
        items = []
        for k in range(d + 1):
            for comb in combinations(range(d), k):
                items.append((comb, -k))
        self.space = BasisSpace("S(%s[1])" % g.name, items)
        self.top_key = tuple(range(d))

    def unit(self):
        return GradedVector.basis(self.space, ())

    def mul_keys(self, k1, k2) -> GradedVector:
        key, sign = sort_monomial(tuple(k1) + tuple(k2), lambda _i: -1)
        if key is None:
            return GradedVector.zero(self.space)
        return GradedVector.basis(self.space, key, sign)

    def mul(self, v, w):
        out = GradedVector.zero(self.space)
        for k1, c1 in v.coeffs.items():
            for k2, c2 in w.coeffs.items():
                out.add_inplace(self.mul_keys(k1, k2), c1 * c2)
        return out

    def coderivation_bracket_key(self, key) -> GradedVector:
        """The bracket coderivation on S(g[1]) on a basis monomial.

        Sends x_1 ... x_n to sum_{i<j} (-1)^{i+j} [x_i, x_j]-slot prepended to
        the remaining word (indices 1-based).
        """
        key = tuple(key)
        n = len(key)
        out = GradedVector.zero(self.space)
        for a in range(n):
            for b in range(a + 1, n):
                rest = key[:a] + key[a + 1:b] + key[b + 1:]
                sign = sgn((a + 1) + (b + 1))
                for k, c in self.g.bracket(key[a], key[b]).items():
                    nkey, s2 = sort_monomial((k,) + rest, lambda _i: -1)
                    if nkey is not None:
                        out.add_term(nkey, sign * s2 * c)
        return out

    def coderivation_bracket(self) -> GradedMap:
        m = GradedMap(self.space, self.space, 1)
        for key in self.space.keys:
            m.set_column(key, self.coderivation_bracket_key(key))
        return m

    def coproduct_component(self, key, left_size):
        """(left_size, n-left_size) unshuffle component of the coproduct.

        Yields ``(left_key, right_key, sign)``.
        """
        key = tuple(key)
        n = len(key)
        degs = [-1] * n
        for left, right in unshuffles(n, left_size):
            sign = unshuffle_sign(degs, left, right)
            yield (tuple(key[i] for i in left),
                   tuple(key[i] for i in right), sign)


class DualOdd:
    """S(g[1])^ with monomial keys stored in strictly decreasing order.

    The reversed storage matches the top form eps^d ... eps^1 and makes the
    dual monomial of e_{j_1} ... e_{j_k} pair to exactly +1 with it.
    """

    def __init__(self, g: LieAlgebra):
        self.g = g
        d = g.dimension
        items = []
        for k in range(d + 1):
            for comb in combinations(range(d), k):
                items.append((tuple(reversed(comb)), k))
        self.space = BasisSpace("S(%s[1])v" % g.name, items)
        self.top_key = tuple(reversed(range(d)))
        self._d_g = None

    def unit(self):
        return GradedVector.basis(self.space, ())

    def mul_keys(self, k1, k2) -> GradedVector:
        key, sign = sort_monomial(tuple(k1) + tuple(k2), lambda _i: 1,
                                  descending=True)
        if key is None:
            return GradedVector.zero(self.space)
        return GradedVector.basis(self.space, key, sign)

    def mul(self, v, w):
        out = GradedVector.zero(self.space)
        for k1, c1 in v.coeffs.items():
            for k2, c2 in w.coeffs.items():
                out.add_inplace(self.mul_keys(k1, k2), c1 * c2)
        return out

    def dual_key_of(self, s_key):
        """Key of the dual monomial of an S(g[1]) basis monomial."""
        return tuple(reversed(tuple(s_key)))

    def differential(self, odd: OddSym) -> GradedMap:
        """Chevalley-Eilenberg differential: d(f) = -(-1)^{|f|} f o del_g."""
        if self._d_g is not None:
            return self._d_g
        m = GradedMap(self.space, self.space, 1)
        for b in self.space.keys:
            col = GradedVector.zero(self.space)
            r = len(b)
            for y in odd.space.keys:
                if len(y) != r + 1:
                    continue
                val = -(sgn(r)) * pair_dual_sym(self, b, odd, y, apply_del=odd)
                if val:
                    col.add_term(self.dual_key_of(y), val)
            m.set_column(b, col)
        self._d_g = m
        return m


# ---------------------------------------------------------------------------
# pairings (Notations conventions)
# ---------------------------------------------------------------------------

def _tensor_pair(first, second, first_degrees, second_degrees, base):
    """Tensor pairing with the interleaving sign; 0 on length mismatch."""
    if len(first) != len(second):
        return ZERO
    val = ONE
    for a, b in zip(first, second):
        f = base(a, b)
        if not f:
            return ZERO
        val *= f
    return val * tensor_interleave_sign(first_degrees, second_degrees)


def _sym_pair(first, second, first_degrees, second_degrees, base):
    """Symmetric pairing: sum over permutations of the second argument."""
    if len(first) != len(second):
        return ZERO
    n = len(first)
    total = ZERO
    for perm in permutations(range(n)):
        eps = koszul_sign(second_degrees, perm)
        permuted = [second[i] for i in perm]
        pdegs = [second_degrees[i] for i in perm]
        term = _tensor_pair(first, permuted, first_degrees, pdegs, base)
        if term:
            total += eps * term
    return total


def pair_vec_dual(odd_key, dual_key) -> Fraction:
    """<x, xi> on S(g[1]) x S(g[1])^ monomials (vector argument first)."""
    first = tuple(odd_key)
    second = tuple(dual_key)
    base = lambda i, j: -ONE if i == j else ZERO      # <e_i, eps^j> = -delta
    return _sym_pair(first, second, [-1] * len(first), [1] * len(second), base)


def pair_dual_vec(dual_key, odd_key) -> Fraction:
    """<xi, x> on S(g[1])^ x S(g[1]) monomials (dual argument first)."""
    first = tuple(dual_key)
    second = tuple(odd_key)
    base = lambda i, j: ONE if i == j else ZERO       # <eps^i, e_j> = delta
    return _sym_pair(first, second, [1] * len(first), [-1] * len(second), base)


def pair_dual_sym(dual: DualOdd, dual_key, odd: OddSym, odd_key,
                  apply_del=None) -> Fraction:
    """<b, y> or, with ``apply_del``, <b, del_g y> expanded exactly."""
    if apply_del is None:
        return pair_dual_vec(dual_key, odd_key)
    total = ZERO
    for ykey, c in apply_del.coderivation_bracket_key(odd_key).items():
        total += c * pair_dual_vec(dual_key, ykey)
    return total


def tensor_pair_vec_dual(odd_keys, dual_keys) -> Fraction:
    """<x_1 (x) ... (x) x_p, xi_1 (x) ... (x) xi_p> on tensor words."""
    base = lambda i, j: -ONE if i == j else ZERO
    return _tensor_pair(tuple(odd_keys), tuple(dual_keys),
                        [-1] * len(odd_keys), [1] * len(dual_keys), base)


def tensor_pair_dual_vec(dual_keys, odd_keys) -> Fraction:
    base = lambda i, j: ONE if i == j else ZERO
    return _tensor_pair(tuple(dual_keys), tuple(odd_keys),
                        [1] * len(dual_keys), [-1] * len(odd_keys), base)


# ---------------------------------------------------------------------------
# contraction actions
# ---------------------------------------------------------------------------

def contract_step(odd: OddSym, s_key, xi: int) -> GradedVector:
    """(x_1 ... x_n) |_ eps^xi = sum_i (-1)^{n-i} <x_i, eps^xi> x^{i}."""
    s_key = tuple(s_key)
    n = len(s_key)
    out = GradedVector.zero(odd.space)
    for i in range(n):
        if s_key[i] == xi:
            # <e_i, eps^i> = -1
            out.add_term(s_key[:i] + s_key[i + 1:], -(sgn(n - (i + 1))))
    return out


def contract(odd: OddSym, v: GradedVector, dual_key) -> GradedVector:
    """Right action of a dual monomial on S(g[1]) by iterated contraction.

    The module axiom x |_ (xi . eta) = (x |_ xi) |_ eta is applied along the
    stored (decreasing) factor order of the dual key.
    """
    out = v
    for xi in tuple(dual_key):
        nxt = GradedVector.zero(odd.space)
        for key, c in out.coeffs.items():
            nxt.add_inplace(contract_step(odd, key, xi), c)
        out = nxt
    return out


def cocontract_step(dual: DualOdd, b_key, x: int) -> GradedVector:
    """(xi_1 ... xi_n) _| e_x = sum_i (-1)^{n-i} <xi_i, e_x> xi^{i}."""
    b_key = tuple(b_key)
    n = len(b_key)
    out = GradedVector.zero(dual.space)
    for i in range(n):
        if b_key[i] == x:
            out.add_term(b_key[:i] + b_key[i + 1:], sgn(n - (i + 1)))
    return out


def cocontract(dual: DualOdd, v: GradedVector, s_key) -> GradedVector:
    """Right action of an S(g[1]) monomial on the dual, factorwise."""
    out = v
    for x in tuple(s_key):
        nxt = GradedVector.zero(dual.space)
        for key, c in out.coeffs.items():
            nxt.add_inplace(cocontract_step(dual, key, x), c)
        out = nxt
    return out


def interior_product(dual: DualOdd, odd: OddSym, s_key, f: GradedVector) -> GradedVector:
    """iota_x(f) = (-1)^{|x||f|} f(x . -) for f in S(g[1])^, x an S-monomial.

    Characterized by <iota_x f, y> = (-1)^{|x||f|} <f, x . y>; computed
    columnwise against the monomial basis.
    """
    k = len(tuple(s_key))
    out = GradedVector.zero(dual.space)
    for fkey, c in f.coeffs.items():
        n = len(fkey)
        if n < k:
            continue
        sign = sgn((-k) * n)
        for ykeys in combinations(sorted(set(range(dual.g.dimension))), n - k):
            prod = odd.mul_keys(tuple(s_key), ykeys)
            if not prod:
                continue
            val = ZERO
            for pkey, pc in prod.items():
                val += pc * pair_dual_vec(fkey, pkey)
            if val:
                out.add_term(dual.dual_key_of(ykeys), sign * c * val)
    return out


# ---------------------------------------------------------------------------
# symmetric algebra on g (degree 0) and the PBW map
# ---------------------------------------------------------------------------

class SymPoly:
    """S(g) window: weakly increasing monomials of polynomial degree <= cap."""

    def __init__(self, g: LieAlgebra, cap: int):
        self.g = g
        self.cap = cap
        self.space = BasisSpace("S(%s)<=%d" % (g.name, cap),
                                ((k, 0) for k in _pbw_keys(g.dimension, cap)))

    def unit(self):
        return GradedVector.basis(self.space, ())

    def mul_keys(self, k1, k2):
        key = tuple(sorted(tuple(k1) + tuple(k2)))
        if len(key) > self.cap:
            raise WindowOverflow("polynomial degree %d exceeds window %d"
                                 % (len(key), self.cap))
        return GradedVector.basis(self.space, key)

    def mul(self, v, w):
        out = GradedVector.zero(self.space)
        for k1, c1 in v.coeffs.items():
            for k2, c2 in w.coeffs.items():
                out.add_inplace(self.mul_keys(k1, k2), c1 * c2)
        return out

    def adjoint_action(self, i: int, v: GradedVector) -> GradedVector:
        """e_i acting as the derivation extending ad_{e_i}."""
        out = GradedVector.zero(self.space)
        for key, c in v.coeffs.items():
            for t in range(len(key)):
                for k, ck in self.g.bracket(i, key[t]).items():
                    nkey = tuple(sorted(key[:t] + (k,) + key[t + 1:]))
                    out.add_term(nkey, c * ck)
        return out


def pbw_map(sym: SymPoly, ug: UgWindow, v: GradedVector) -> GradedVector:
    """Symmetrization S(g) -> Ug: monomials to averaged ordered products."""
    from math import factorial
    out = GradedVector.zero(ug.space)
    for key, c in v.coeffs.items():
        n = len(key)
        if n == 0:
            out.add_inplace(ug.unit(), c)
            continue
        scale = Q(1, factorial(n))
        for perm in permutations(range(n)):
            word = tuple(key[i] for i in perm)
            out.add_inplace(ug.normal_order(word), c * scale)
    return out


def adjoint_action_ug(ug: UgWindow, i: int, v: GradedVector) -> GradedVector:
    """e_i acting on Ug by the commutator.

    Expanded as the derivation sum over slots, so the filtration degree never
    grows and top-of-window vectors stay inside the window.
    """
    out = GradedVector.zero(ug.space)
    for key, c in v.coeffs.items():
        for t in range(len(key)):
            for k, ck in ug.g.bracket(i, key[t]).items():
                out.add_inplace(ug.normal_order(key[:t] + (k,) + key[t + 1:]),
                                c * ck)
    return out


def coadjoint_action_poly(g: LieAlgebra, i: int, p: PolyTrunc) -> PolyTrunc:
    """e_i acting on truncated polynomials S(g^) by the coadjoint derivation."""
    out = PolyTrunc.zero(p.dim, p.order)
    for key, c in p.coeffs.items():
        for t in range(len(key)):
            j = key[t]
            # ad*_{e_i}(eps^j) = -sum_k c[i][k][j] eps^k
            for k in range(g.dimension):
                coeff = g.bracket(i, k).get(j, ZERO)
                if coeff:
                    out = out + PolyTrunc(p.dim, p.order,
                                          {key[:t] + (k,) + key[t + 1:]: -c * coeff})
    return out


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg differential, parametrized by the coefficient module
# ---------------------------------------------------------------------------

class CeModule:
    """Coefficient module presentation for the Chevalley-Eilenberg complex.

    ``action(i, m)`` is the action of the generator s e_i; ``differential``
    is the internal differential (zero for all modules used here).
    """

    def __init__(self, space, action, differential=None, label="M"):
        self.space = space
        self.action = action
        self.differential = differential
        self.label = label


def ce_module_trivial(g: LieAlgebra):
    space = BasisSpace("k", ((("1",), 0),))
    return CeModule(space, lambda i, m: GradedVector.zero(space), label="k")


def ce_module_sym(sym: SymPoly):
    return CeModule(sym.space, sym.adjoint_action, label="Sg")


def ce_module_ug(ug: UgWindow):
    return CeModule(ug.space, lambda i, v: adjoint_action_ug(ug, i, v), label="Ug")


def ce_differential(odd: OddSym, module: CeModule, f: GradedMap) -> GradedMap:
    """d_CE of a cochain f: S(g[1]) -> M, with f stored columnwise.

    Implements the twisted-convolution differential: action terms with signs
    (-1)^{i+|f|}, the internal differential of M, and the bracket
    coderivation term -(-1)^{|f|} f o del_g.
    """
    if f.source is not odd.space or f.target is not module.space:
        raise StructuralError("cochain does not match the CE setup")
    r = f.shift
    out = GradedMap(odd.space, module.space, r + 1)
    for key in odd.space.keys:
        key = tuple(key)
        n = len(key)
        col = GradedVector.zero(module.space)
        for i in range(n):
            sub = key[:i] + key[i + 1:]
            val = f.columns.get(sub)
            if val:
                col.add_inplace(module.action(key[i], val), sgn((i + 1) + r))
        if module.differential is not None:
            val = f.columns.get(key)
            if val:
                col.add_inplace(module.differential(val))
        bracket_arg = odd.coderivation_bracket_key(key)
        for ykey, c in bracket_arg.items():
            val = f.columns.get(ykey)
            if val:
                col.add_inplace(val, -(sgn(r)) * c)
        out.set_column(key, col, check=False)
    return out


def invariants_basis(g: LieAlgebra, module: CeModule, degree: int = 0):
    """Exact basis of the g-invariants of a module degree slice.

    Invariants are the kernel of the stacked action map m -> (e_i . m)_i,
    i.e. the degree-0 Chevalley-Eilenberg cocycles.
    """
    d = g.dimension
    stacked_items = []
    for i in range(d):
        for key in module.space.keys:
            stacked_items.append(((i, key), module.space.degree[key]))
    stacked = BasisSpace("stack(%s)" % module.label, stacked_items)
    m = GradedMap(module.space, stacked, 0)
    for key in module.space.keys:
        col = GradedVector.zero(stacked)
        for i in range(d):
            img = module.action(i, GradedVector.basis(module.space, key))
            for mkey, c in img.coeffs.items():
                col.add_term((i, mkey), c)
        m.set_column(key, col, check=False)
    return kernel_basis(m, degree)
