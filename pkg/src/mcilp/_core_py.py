"""Pure-Python twins of the compiled kernels in _core.pyx.

Same signatures, same results, no C speedups.  Selected by _kernels when the
compiled extension is unavailable or MCILP_PURE_PYTHON is set.  These inner
loops run over plain Python ints (arbitrary precision), so they are exact on
any input size; the compiled versions restrict themselves to C longs and are
only used below the overflow guard enforced by callers.
"""


def lattice_scan(A, b, lower, upper):
    """All integer points of [lower, upper] satisfying A u <= b, lex order."""
    m = len(A)
    d = len(lower)
    out = []
    point = list(lower)
    while True:
        ok = True
        for i in range(m):
            s = 0
            row = A[i]
            for j in range(d):
                s += row[j] * point[j]
            if s > b[i]:
                ok = False
                break
        if ok:
            out.append(tuple(point))
        k = d - 1
        while k >= 0:
            point[k] += 1
            if point[k] <= upper[k]:
                break
            point[k] = lower[k]
            k -= 1
        if k < 0:
            return out


def pareto_filter(points):
    """Minimal elements under componentwise <= (weak dominance), lex-sorted,
    duplicates collapsed.  Reference quadratic scan."""
    pts = sorted(set(tuple(p) for p in points))
    out = []
    for i, p in enumerate(pts):
        dominated = False
        for j, q in enumerate(pts):
            if i == j:
                continue
            le = True
            strict = False
            for a, b in zip(q, p):
                if a > b:
                    le = False
                    break
                if a < b:
                    strict = True
            if le and strict:
                dominated = True
                break
        if not dominated:
            out.append(p)
    return out


def count_in_slab(points, lower, upper):
    """How many of the integer vectors fall inside [lower, upper]."""
    p = len(lower)
    n = 0
    for v in points:
        inside = True
        for j in range(p):
            x = v[j]
            if x < lower[j] or x > upper[j]:
                inside = False
                break
        if inside:
            n += 1
    return n
