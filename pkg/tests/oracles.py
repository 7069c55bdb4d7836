"""Independent reference computations used to check the engine.

Nothing here calls into the Smith normal form code.
"""

from fractions import Fraction
from math import gcd


def _lcm(a, b):
    return a // gcd(a, b) * b


def invariant_factors_bruteforce(A):
    """Invariant factors by Bezout steps at the top-left corner, then a gcd/lcm fix-up.

    Any nonzero entry is used as the pivot (no size heuristic).  Each step
    replaces the pivot with a gcd, so the loop for one pivot terminates.
    """
    M = [list(r) for r in A]
    diag = []
    while M and M[0]:
        spot = next(((i, j) for i, row in enumerate(M) for j, v in enumerate(row) if v), None)
        if spot is None:
            break
        i0, j0 = spot
        M[0], M[i0] = M[i0], M[0]
        for row in M:
            row[0], row[j0] = row[j0], row[0]
        while True:
            for i in range(1, len(M)):
                a, b = M[0][0], M[i][0]
                if b == 0:
                    continue
                if b % a == 0:
                    q = b // a
                    M[i] = [v - q * u for u, v in zip(M[0], M[i])]
                    continue
                g, x, y = _xgcd(a, b)
                r0, ri = M[0], M[i]
                M[0] = [x * u + y * v for u, v in zip(r0, ri)]
                M[i] = [(-b // g) * u + (a // g) * v for u, v in zip(r0, ri)]
            for j in range(1, len(M[0])):
                a, b = M[0][0], M[0][j]
                if b == 0:
                    continue
                if b % a == 0:
                    q = b // a
                    for row in M:
                        row[j] -= q * row[0]
                    continue
                g, x, y = _xgcd(a, b)
                for row in M:
                    u, v = row[0], row[j]
                    row[0] = x * u + y * v
                    row[j] = (-b // g) * u + (a // g) * v
            if not any(M[i][0] for i in range(1, len(M))) and not any(M[0][1:]):
                break
        diag.append(abs(M[0][0]))
        M = [row[1:] for row in M[1:]]
    # enforce the divisibility chain: (a, b) -> (gcd, lcm) until stable
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                a, b = diag[i], diag[j]
                g, l = gcd(a, b), _lcm(a, b)
                if (a, b) != (g, l):
                    diag[i], diag[j] = g, l
                    changed = True
    return sorted(diag)


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def rank_mod_p(A, p):
    M = [[v % p for v in row] for row in A]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        M[rank] = [v * inv % p for v in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def rank_rational(A):
    M = [[Fraction(v) for v in row] for row in A]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def coboundary_rows(K, k):
    """Coboundary k -> k+1 built straight from the simplex lists."""
    lower = {s: i for i, s in enumerate(K.layer(k))}
    rows = []
    for s in K.layer(k + 1):
        row = [0] * len(lower)
        for i in range(len(s)):
            row[lower[s[:i] + s[i + 1:]]] += (-1) ** i
        rows.append(row)
    return rows


def betti_rational(K, k):
    nk = len(K.layer(k))
    return nk - rank_rational(coboundary_rows(K, k)) - (rank_rational(coboundary_rows(K, k - 1)) if k > 0 else 0)


def dim_mod_p(K, k, p):
    nk = len(K.layer(k))
    return nk - rank_mod_p(coboundary_rows(K, k), p) - (rank_mod_p(coboundary_rows(K, k - 1), p) if k > 0 else 0)
