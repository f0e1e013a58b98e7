"""Independent oracles used by the test suite.

These deliberately avoid the package's own normal-ordering and elimination
code paths: the normal-order reference is a top-down recursive rewriter on
unit words, and the nullspace reference is a dense Fraction-based Gaussian
elimination.  Both are kept simple enough to be obviously correct.
"""

from fractions import Fraction

from casimir_forge.uea import GID_MASK, GID_SHIFT


def normal_order_reference(engine, word, coeff=1):
    """Normal-order a product of single generators by top-down recursion.

    word: sequence of generator ids.  Returns {run-monomial: Fraction}.
    """
    table = {}
    for (i, j), terms in engine.algebra.brackets.items():
        table[(i, j)] = tuple(terms)
        table[(j, i)] = tuple((k, -c) for k, c in terms)

    memo = {}

    def rec(w):
        if w in memo:
            return memo[w]
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                break
        else:
            memo[w] = {w: Fraction(1)}
            return memo[w]
        g1, g2 = w[i], w[i + 1]
        out = {}
        swapped = w[:i] + (g2, g1) + w[i + 2 :]
        for m, c in rec(swapped).items():
            out[m] = out.get(m, Fraction(0)) + c
        if (g1 >> GID_SHIFT) == (g2 >> GID_SHIFT):
            for k, ck in table.get((g1 & GID_MASK, g2 & GID_MASK), ()):
                shorter = w[:i] + ((g1 & ~GID_MASK) | k,) + w[i + 2 :]
                fck = Fraction(int(ck.numerator), int(ck.denominator))
                for m, c in rec(shorter).items():
                    out[m] = out.get(m, Fraction(0)) + c * fck
        out = {m: c for m, c in out.items() if c != 0}
        memo[w] = out
        return out

    c0 = Fraction(coeff)
    result = {}
    for w, c in rec(tuple(word)).items():
        runs = []
        for g in w:
            if runs and runs[-1][0] == g:
                runs[-1][1] += 1
            else:
                runs.append([g, 1])
        mono = tuple((g, e) for g, e in runs)
        result[mono] = result.get(mono, Fraction(0)) + c * c0
    return {m: c for m, c in result.items() if c != 0}


def dense_nullspace(rows, ncols):
    """Nullspace basis of a dense Fraction matrix, straightforward RREF."""
    mat = [[Fraction(x) for x in row] for row in rows]
    m = len(mat)
    piv_cols = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, m):
            if mat[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        lead = mat[r][c]
        mat[r] = [x / lead for x in mat[r]]
        for i in range(m):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    basis = []
    piv_set = set(piv_cols)
    for fc in range(ncols):
        if fc in piv_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for ri, pc in enumerate(piv_cols):
            vec[pc] = -mat[ri][fc]
        basis.append(vec)
    return basis
