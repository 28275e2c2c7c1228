"""Exact linear algebra over rationals and integer lattices.

Internal helper module: small dense matrices only (the ambient dimension is
fixed and desk-scale throughout).  Vectors are tuples, matrices are tuples of
row tuples; entries are ints or fractions.Fraction.  Everything is pure and
allocation-light rather than clever.
"""

from fractions import Fraction
from math import gcd


def vdot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def vscale(c, a):
    return tuple(c * x for x in a)


def mat_vec(M, v):
    return tuple(vdot(row, v) for row in M)


def mat_mul(A, B):
    Bt = transpose(B)
    return tuple(tuple(vdot(row, col) for col in Bt) for row in A)


def transpose(M):
    return tuple(zip(*M)) if M else ()


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    return g


def primitive(v):
    """Divide an integer vector by the gcd of its entries (direction kept)."""
    g = vec_gcd(v)
    if g <= 1:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def clear_denominators(v):
    """Scale a rational vector to a primitive integer vector, same direction."""
    fracs = [Fraction(x) for x in v]
    lcm = 1
    for x in fracs:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    return primitive(tuple(int(x * lcm) for x in fracs))


def _eliminate(M):
    """Reduced row echelon form; returns (rows, pivot column list, det).

    det is the determinant when M is square and regular, Fraction(0) when
    square and singular, and meaningless otherwise.
    """
    rows = [list(map(Fraction, r)) for r in M]
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots = []
    d = Fraction(1)
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            d = -d
        d *= rows[r][c]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if m == n and len(pivots) < n:
        d = Fraction(0)
    return rows, pivots, d


def rank(M):
    if not M:
        return 0
    _, pivots, _ = _eliminate(M)
    return len(pivots)


def det(M):
    n = len(M)
    if n == 0:
        return Fraction(1)
    _, _, d = _eliminate(M)
    return d


def solve(M, rhs):
    """Solve square nonsingular M x = rhs exactly; None when M is singular."""
    n = len(M)
    aug = [tuple(M[i]) + (rhs[i],) for i in range(n)]
    rows, pivots, _ = _eliminate(aug)
    if pivots != list(range(n)):
        return None
    return tuple(rows[i][n] for i in range(n))


def solve_general(M, rhs):
    """One rational solution of M x = rhs (any shape); None if inconsistent."""
    m = len(M)
    n = len(M[0]) if m else 0
    aug = [tuple(M[i]) + (rhs[i],) for i in range(m)]
    rows, pivots, _ = _eliminate(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return tuple(x)


def invert(M):
    """Exact inverse of a square matrix; None if singular."""
    n = len(M)
    aug = [tuple(M[i]) + tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rows, pivots, _ = _eliminate(aug)
    if pivots != list(range(n)):
        return None
    return tuple(tuple(rows[i][n:]) for i in range(n))


def adjugate(M):
    """(adj(M), det(M)) with adj(M) = det(M) * inverse(M), integer entries."""
    d = det(M)
    if d == 0:
        raise ValueError("adjugate of singular matrix")
    inv = invert(M)
    adj = tuple(tuple(int(x * d) for x in row) for row in inv)
    return adj, int(d)


def nullspace(M):
    """Rational basis of {x : M x = 0} as a tuple of vectors."""
    m = len(M)
    n = len(M[0]) if m else 0
    if m == 0:
        return identity(n)
    rows, pivots, _ = _eliminate(M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f]
        basis.append(tuple(v))
    return tuple(basis)


def hnf_solve(W, delta):
    """Integer solutions of W z = delta for integer W (d x s), delta (d).

    Returns (z0, K) with z0 one integer solution and K a tuple of integer
    kernel basis vectors, or None when no integer solution exists.  Column
    reduction by unimodular operations keeps everything exact.
    """
    d = len(W)
    s = len(W[0]) if d else 0
    if s == 0:
        if all(x == 0 for x in delta):
            return (), ()
        return None
    # column-major working copies: H[j] is column j
    H = [[int(W[i][j]) for i in range(d)] for j in range(s)]
    U = [[1 if i == j else 0 for i in range(s)] for j in range(s)]

    def col_sub(j, k, q):
        H[j] = [a - q * b for a, b in zip(H[j], H[k])]
        U[j] = [a - q * b for a, b in zip(U[j], U[k])]

    pivots = []  # (row, col) pairs, col strictly increasing
    col = 0
    for row in range(d):
        if col >= s:
            break
        if not any(H[j][row] for j in range(col, s)):
            continue
        while True:
            live = [j for j in range(col, s) if H[j][row] != 0]
            if len(live) == 1:
                break
            j0 = min(live, key=lambda j: abs(H[j][row]))
            for j in live:
                if j != j0:
                    col_sub(j, j0, H[j][row] // H[j0][row])
        j0 = next(j for j in range(col, s) if H[j][row] != 0)
        if j0 != col:
            H[j0], H[col] = H[col], H[j0]
            U[j0], U[col] = U[col], U[j0]
        if H[col][row] < 0:
            H[col] = [-a for a in H[col]]
            U[col] = [-a for a in U[col]]
        pivots.append((row, col))
        col += 1
    # forward substitution on pivot rows; columns past `col` are zero columns
    q = [0] * s
    for row, c in pivots:
        acc = delta[row] - sum(H[j][row] * q[j] for j in range(c))
        piv = H[c][row]
        if acc % piv != 0:
            return None
        q[c] = acc // piv
    z0 = tuple(sum(U[j][i] * q[j] for j in range(s)) for i in range(s))
    # rows that never became pivots must agree too
    for i in range(d):
        if sum(int(W[i][j]) * z0[j] for j in range(s)) != delta[i]:
            return None
    K = tuple(tuple(U[j][i] for i in range(s)) for j in range(col, s))
    return z0, K


def _round_half(x):
    x = Fraction(x)
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


def lll(basis, delta=Fraction(3, 4)):
    """LLL-reduce linearly independent rational basis rows.

    Textbook size-reduction + Lovasz swap, recomputing Gram-Schmidt after
    every change; fine for the tiny dimensions used here.
    """
    b = [list(map(Fraction, row)) for row in basis]
    n = len(b)
    if n <= 1:
        return tuple(tuple(r) for r in b)

    def gram():
        bstar = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        norms = []
        for i in range(n):
            v = list(b[i])
            for j in range(i):
                mu[i][j] = vdot(b[i], bstar[j]) / norms[j]
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(vdot(v, v))
        return mu, norms

    k = 1
    guard = 0
    while k < n and guard < 10000:
        guard += 1
        mu, norms = gram()
        for j in range(k - 1, -1, -1):
            q = _round_half(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                mu, norms = gram()
        if norms[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            k = max(k - 1, 1)
    return tuple(tuple(r) for r in b)
