"""Exact linear solves over Q(zeta_N) through reduction modulo primes.

A prime p = 1 mod N has phi(N) ring maps Z[zeta_N] -> F_p (zeta -> w^k for k
a unit mod N).  Solving the reduced systems for all of them recovers the
coordinates of the solution modulo p; several primes are combined by CRT and
rational reconstruction, and the result is verified exactly by the caller.
"""

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .scalar import CycNum, euler_phi


def is_prime(p):
    """Deterministic Miller-Rabin for p < 3.2e9."""
    if p < 2:
        return False
    for q in (2, 3, 5, 7):
        if p % q == 0:
            return p == q
    d, r = p - 1, 0
    while d % 2 == 0:
        d, r = d // 2, r + 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


_PRIMES = {}


def prime_roots(N, count):
    """The first `count` primes p = 1 mod N below 2^30, each with an element of order N.

    Staying below 2^30 keeps every product of two residues inside int64.
    """
    got = _PRIMES.setdefault(N, [])
    p = got[-1][0] - N if got else (1 << 30) // N * N + 1 - N
    qs = [q for q in range(2, N + 1) if N % q == 0 and is_prime(q)]
    while len(got) < count:
        if is_prime(p):
            g = 2
            while True:
                w = pow(g, (p - 1) // N, p)
                if all(pow(w, N // q, p) != 1 for q in qs):
                    break
                g += 1
            got.append((p, w))
        p -= N
    return got[:count]


def rank_mod(A, p):
    A = np.array(A, dtype=np.int64) % p
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if len(rows):
            A[rows] = (A[rows] - np.outer(col[rows], A[r])) % p
        r += 1
    return r


def solve_mod_p(A, b, p):
    """(x, pivots) with A x = b mod p, free variables zero; None if inconsistent."""
    m, n = A.shape
    M = np.concatenate([A % p, (b % p).reshape(m, 1)], axis=1)
    r = 0
    piv = []
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(M[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = M[r] * inv % p
        col = M[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if len(rows):
            M[rows] = (M[rows] - np.outer(col[rows], M[r])) % p
        piv.append(c)
        r += 1
    if np.any(M[r:, n] % p):
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = M[i, n]
    return x, tuple(piv)


def rational_reconstruct(a, M):
    """p/q with p = a q mod M and |p|, q <= sqrt(M/2), or None."""
    a %= M
    bound = isqrt(M // 2)
    r0, r1, t0, t1 = M, a, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or gcd(r1, abs(t1)) != 1:
        return None
    return Fraction(r1, t1)


def _units(N):
    return [k for k in range(1, N + 1) if gcd(k, N) == 1][:euler_phi(N)] if N > 1 else [1]


def _embed(C, p, w, k, phi):
    """Reduce integer coordinate arrays C[..., phi] under zeta -> w^k mod p."""
    wk = pow(w, k, p)
    out = np.zeros(C.shape[:-1], dtype=np.int64)
    for i in range(phi):
        col = np.asarray(C[..., i] % p, dtype=np.int64)
        out = (out + col * pow(wk, i, p)) % p
    return out


def solve_coords(C, rhs, N, max_primes=12):
    """Solve sum_j C[i, j] x_j = rhs[i] over Q(zeta_N) with integer coordinates.

    C has shape (m, n, phi(N)) and rhs shape (m, phi(N)); entries are integers
    in the power basis.  Returns (solution as a list of CycNum, rank) with free
    variables zero, or None.  The caller verifies the solution exactly.
    """
    phi = euler_phi(N)
    units = _units(N)
    m, nvars = C.shape[0], C.shape[1]
    residues, modulus, pivots, prev = None, 1, None, None
    for count in range(1, max_primes + 1):
        p, w = prime_roots(N, count)[-1]
        vals = []
        for k in units:
            sol = solve_mod_p(_embed(C, p, w, k, phi), _embed(rhs, p, w, k, phi), p)
            if sol is None:
                return None
            x, piv = sol
            if pivots is None:
                pivots = piv
            elif piv != pivots:
                return None
            vals.append(x)
        # coordinates: solve V c = vals with V[k][i] = w^(k i)
        V = np.array([[pow(w, k * i, p) for i in range(phi)] for k in units], dtype=np.int64)
        B = np.stack(vals)  # (phi, nvars)
        coords = np.zeros((nvars, phi), dtype=object)
        for j in range(nvars):
            sol = solve_mod_p(V, B[:, j], p)
            coords[j] = [int(c) for c in sol[0]]
        if residues is None:
            residues, modulus = coords, p
        else:
            t = (coords - residues) % p * pow(modulus, -1, p) % p
            residues, modulus = residues + modulus * t, modulus * p
        cand = []
        ok = True
        for row in residues:
            fr = [rational_reconstruct(int(a), modulus) for a in row]
            if any(f is None for f in fr):
                ok = False
                break
            cand.append(tuple(fr))
        if ok and cand == prev:
            return [CycNum(N, c) for c in cand], len(pivots)
        prev = cand if ok else None
    return None


def solve_cyclotomic(rows, rhs, nvars, N, max_primes=12):
    """A solution of the sparse system sum_j rows[i][j] x_j = rhs[i] over Q(zeta_N).

    rows: list of dicts {var: CycNum}.  Returns (solution, rank) with free
    variables zero, or None when no consistent candidate is found.  The
    caller verifies the solution exactly.
    """
    phi = euler_phi(N)
    den = 1
    for row in rows:
        for z in row.values():
            for c in z.coeffs:
                den = den * c.denominator // gcd(den, c.denominator)
    for z in rhs:
        for c in z.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
    C = np.zeros((len(rows), nvars, phi), dtype=object)
    C[...] = 0
    for i, row in enumerate(rows):
        for j, z in row.items():
            C[i, j] = [int(c * den) for c in z.coeffs]
    b = np.array([[int(c * den) for c in z.coeffs] for z in rhs], dtype=object).reshape(len(rhs), phi)
    return solve_coords(C, b, N, max_primes)
