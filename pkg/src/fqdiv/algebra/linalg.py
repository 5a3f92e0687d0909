"""Dense linear algebra over F_q (field elements as int codes)."""


def solve_gf(rows, rhs, field):
    """One solution z of rows * z = rhs over F_q, or None if inconsistent.

    ``rows`` is a list of equal-length lists of codes.  Free variables are
    set to zero, so the answer is deterministic.
    """
    F = field
    m = len(rows)
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, m) if aug[i][col]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = F.inv(aug[r][col])
        aug[r] = [F.mul(inv, v) for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [F.sub(v, F.mul(f, w)) for v, w in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n]:
            return None
    z = [0] * n
    for i, col in enumerate(pivots):
        z[col] = aug[i][n]
    return z
