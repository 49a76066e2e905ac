"""Independent oracles for the test suite.

Everything here is implemented from first principles, avoiding the package's
own routines: plain fraction Gaussian elimination (no fraction-free
pivoting), permutation signs by inversion counting, pairings by recursive
Laplace-style expansion, series coefficients by direct Cauchy products, and
PBW normal ordering by a different rewriting strategy.
"""

from fractions import Fraction
from itertools import permutations

Q = Fraction


# -- dense rational elimination (textbook, with plain division) -------------

def gauss_rank(rows):
    mat = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pv = mat[rank][c]
        mat[rank] = [x / pv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def gauss_nullity(rows, ncols):
    if not rows:
        return ncols
    return ncols - gauss_rank(rows)


# -- permutation and Koszul signs by inversion counting ----------------------

def perm_sign_oracle(perm):
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


def koszul_sign_oracle(degrees, perm):
    """Track adjacent transpositions explicitly."""
    arr = list(perm)
    sign = 1
    for i in range(len(arr)):
        j = i
        while arr[j] != i:
            j += 1
        while j > i:
            if (degrees[arr[j]] * degrees[arr[j - 1]]) % 2:
                sign = -sign
            arr[j], arr[j - 1] = arr[j - 1], arr[j]
            j -= 1
    return sign


# -- symmetric pairing by exhaustive permutation enumeration -----------------

def sym_pair_oracle(first, second, first_degs, second_degs, base):
    """<a_1 ... a_p, b_1 ... b_q> = sum over pairings with Koszul signs."""
    if len(first) != len(second):
        return Q(0)
    n = len(first)
    total = Q(0)
    for perm in permutations(range(n)):
        eps = koszul_sign_oracle(second_degs, perm)
        interleave = 0
        pdegs = [second_degs[i] for i in perm]
        for i in range(n):
            for j in range(i + 1, n):
                interleave += pdegs[i] * first_degs[j]
        val = Q(1)
        ok = True
        for i in range(n):
            b = base(first[i], second[perm[i]])
            if not b:
                ok = False
                break
            val *= b
        if ok:
            total += eps * (-1 if interleave % 2 else 1) * val
    return total


# -- truncated series for log((1 - e^{-t})/t) via a derivative recursion ----

def duflo_log_oracle(order):
    """Coefficients of log f with f = (1-e^{-t})/t, via f g' = f' solved
    degree by degree (g' = (log f)')."""
    from math import factorial
    f = [Q((-1) ** n, factorial(n + 1)) for n in range(order + 2)]
    fp = [Q(n + 1) * f[n + 1] for n in range(order + 1)]
    gp = [Q(0)] * (order + 1)
    for n in range(order + 1):
        s = fp[n]
        for k in range(n):
            s -= f[n - k] * gp[k]
        gp[n] = s / f[0]
    g = [Q(0)] * (order + 1)
    for n in range(1, order + 1):
        g[n] = gp[n - 1] / n
    return g


# -- PBW normal ordering by last-descent rewriting ---------------------------

def pbw_normal_oracle(bracket, word):
    """Normal ordering rewriting the LAST descent first.

    ``bracket(i, j)`` returns the dict of [e_i, e_j]; returns a dict from
    sorted words to coefficients.
    """
    out = {}
    stack = [(tuple(word), Q(1))]
    while stack:
        w, c = stack.pop()
        desc = None
        for t in range(len(w) - 2, -1, -1):
            if w[t] > w[t + 1]:
                desc = t
                break
        if desc is None:
            out[w] = out.get(w, Q(0)) + c
            if not out[w]:
                del out[w]
            continue
        a, b = w[desc], w[desc + 1]
        stack.append((w[:desc] + (b, a) + w[desc + 2:], c))
        for k, ck in bracket(a, b).items():
            stack.append((w[:desc] + (k,) + w[desc + 2:], c * Fraction(ck)))
    return out


# -- unshuffles by brute force ------------------------------------------------

def unshuffles_oracle(n, k):
    from itertools import combinations
    out = []
    for left in combinations(range(n), k):
        right = tuple(i for i in range(n) if i not in left)
        out.append((left, right))
    return out
