"""Exact linear algebra: Smith normal form over Z, modular solves, and
Gaussian elimination over any exact field (Fraction or CycNum entries)."""

from .scalar import CycNum


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A):
    """Return (D, U, V) with U*A*V = D diagonal, d_i | d_{i+1}, U and V unimodular.

    A is a list of integer rows (m x n).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row_dst += c * row_src
        if c:
            rs, rd = D[src], D[dst]
            for k in range(n):
                if rs[k]:
                    rd[k] += c * rs[k]
            us, ud = U[src], U[dst]
            for k in range(m):
                if us[k]:
                    ud[k] += c * us[k]

    def add_col(src, dst, c):
        if c:
            for row in D:
                if row[src]:
                    row[dst] += c * row[src]
            for row in V:
                if row[src]:
                    row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // p
                    add_row(t, i, -q)
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // p
                    add_col(t, j, -q)
                    if D[t][j]:
                        dirty = True
            if dirty:
                # move a smaller remainder into the pivot slot
                best = None
                for i in range(t, m):
                    if D[i][t] and (best is None or abs(D[i][t]) < best[0]):
                        best = (abs(D[i][t]), i, t)
                for j in range(t, n):
                    if D[t][j] and (best is None or abs(D[t][j]) < best[0]):
                        best = (abs(D[t][j]), t, j)
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # divisibility of the remaining block
            p = D[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


def diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def integer_kernel(A, ncols=None):
    """Columns (as lists) spanning {x in Z^n : A x = 0}."""
    n = ncols if ncols is not None else len(A[0])
    if not A:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    D, _, V = smith_normal_form(A)
    d = diagonal(D)
    r = sum(1 for x in d if x)
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def solve_mod(A, b, N):
    """Some integer x with A x = b (mod N), or None.  A is m x n."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [0] * n
    aug = [list(row) + [N * int(i == k) for k in range(m)] for i, row in enumerate(A)]
    D, U, V = smith_normal_form(aug)
    c = matvec(U, b)
    d = diagonal(D)
    z = [0] * (n + m)
    for i in range(m):
        di = d[i] if i < len(d) else 0
        if di == 0:
            if c[i]:
                return None
        else:
            if c[i] % di:
                return None
            z[i] = c[i] // di
    y = matvec(V, z)
    return [y[i] % N for i in range(n)]


def kernel_mod(A, N, ncols=None):
    """Generators of the lattice {x in Z^n : A x = 0 mod N}, which contains N*Z^n."""
    n = ncols if ncols is not None else len(A[0])
    if not A:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    D, _, V = smith_normal_form(A)
    d = diagonal(D)
    gens = []
    for j in range(n):
        dj = d[j] if j < len(d) else 0
        if dj == 0:
            scale = 1
        else:
            from math import gcd
            scale = N // gcd(dj, N)
        gens.append([V[i][j] * scale for i in range(n)])
    return gens


def quotient_lattice(K, I, n):
    """Structure of the quotient <K>/<I> of sublattices of Z^n, with I inside K.

    K is a list of vectors forming a basis (linearly independent).  Returns
    (factors, reps): the nontrivial invariant factors and one representative
    vector of Z^n per factor.
    """
    k = len(K)
    # coordinates of each I-vector in the K basis, by a rational solve
    from fractions import Fraction
    Kt = [[Fraction(K[j][i]) for j in range(k)] for i in range(n)]
    X = []
    for v in I:
        sol = solve_linear(Kt, [Fraction(x) for x in v])
        if sol is None:
            raise ValueError("lattice I is not contained in span of K")
        if any(s.denominator != 1 for s in sol):
            raise ValueError("lattice I is not contained in K")
        X.append([int(s) for s in sol])
    # quotient Z^k / (columns of X^T)
    M = [[X[c][r] for c in range(len(X))] for r in range(k)] if X else [[0] for _ in range(k)]
    D, U, _ = smith_normal_form(M)
    d = diagonal(D)
    d = d + [0] * (k - len(d))
    Uinv = integer_inverse(U)
    factors, reps = [], []
    for i in range(k):
        if d[i] != 1:
            col = [Uinv[r][i] for r in range(k)]
            vec = [sum(K[j][t] * col[j] for j in range(k)) for t in range(n)]
            factors.append(d[i])
            reps.append(vec)
    return factors, reps


def lattice_basis(vectors, n):
    """A Z-basis (rows) of the lattice spanned by the given integer vectors."""
    if not vectors:
        return []
    # Hermite-style reduction through SNF of the transpose: span = columns of A
    A = [[v[i] for v in vectors] for i in range(n)]
    D, U, _ = smith_normal_form(A)
    d = diagonal(D)
    Uinv = integer_inverse(U)
    return [[Uinv[i][j] * d[j] for i in range(n)] for j in range(len(d)) if d[j]]


def integer_inverse(U):
    from fractions import Fraction
    n = len(U)
    inv = inverse([[Fraction(x) for x in row] for row in U])
    return [[int(x) for x in row] for row in inv]


# ---- field elimination -------------------------------------------------------

def row_reduce(rows):
    """Reduced row echelon form; returns (rref rows, pivot columns)."""
    R = [list(r) for r in rows]
    if not R:
        return R, []
    ncols = len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = None
        for i in range(r, len(R)):
            if R[i][c]:
                p = i
                break
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        piv = R[r][c]
        if piv != 1:
            inv = 1 / piv
            R[r] = [x * inv if x else x for x in R[r]]
        pr = R[r]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y if y else x for x, y in zip(R[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R, pivots


def rank(rows):
    return len(row_reduce(rows)[1])


def solve_linear(A, b):
    """One solution x of A x = b over a field, or None."""
    if not A:
        return []
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = row_reduce(aug)
    if n in piv:
        return None
    zero = b[0] - b[0] if b else 0
    x = [zero] * n
    for i, c in enumerate(piv):
        x[c] = R[i][n]
    return x


def nullspace(A, ncols=None):
    """Basis of {x : A x = 0} over a field, as a list of vectors."""
    n = ncols if ncols is not None else len(A[0])
    if not A:
        return None
    R, piv = row_reduce(A)
    sample = A[0][0]
    zero, one = sample - sample, sample - sample + 1
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [zero] * n
        x[f] = one
        for i, c in enumerate(piv):
            x[c] = -R[i][f]
        basis.append(x)
    return basis


def inverse(A):
    n = len(A)
    sample = A[0][0]
    zero, one = sample - sample, sample - sample + 1
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(A)]
    R, piv = row_reduce(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


MODULAR_THRESHOLD = 16


def _modular_block(equations, eqs, vars_, pos, N):
    """Solve one block over Q(zeta_N) modulo primes; None unless the result checks exactly."""
    from .modular import solve_cyclotomic
    rows = [{pos[v]: c for v, c in equations[e][0].items() if c} for e in eqs]
    rhs = [CycNum(N, []) + equations[e][1] for e in eqs]
    out = solve_cyclotomic(rows, rhs, len(vars_), N)
    if out is None:
        return None
    x, r = out
    for row, b in zip(rows, rhs):
        acc = CycNum(N, [])
        for j, c in row.items():
            if x[j]:
                acc = acc + c * x[j]
        if acc != b:
            return None
    return x, r


def solve_sparse(equations, nvars, unique=False):
    """Solve a sparse system given as [(dict var -> coef, rhs)] over a field.

    The system is split into independent blocks (connected components of the
    variable/equation incidence graph) and each block is row reduced.  Free
    variables are set to zero.  Returns the solution list (None entries for
    variables that appear in no equation), or None if inconsistent, or if
    unique=True and some block is underdetermined.
    """
    parent = list(range(nvars))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for coefs, _ in equations:
        vs = [v for v, c in coefs.items() if c]
        for v in vs[1:]:
            ra, rb = find(vs[0]), find(v)
            if ra != rb:
                parent[ra] = rb
    blocks = {}
    for e, (coefs, rhs) in enumerate(equations):
        vs = [v for v, c in coefs.items() if c]
        if not vs:
            if rhs:
                return None
            continue
        blocks.setdefault(find(vs[0]), []).append(e)
    members = {}
    for v in range(nvars):
        members.setdefault(find(v), []).append(v)
    sol = [None] * nvars
    for root, eqs in blocks.items():
        vars_ = members[root]
        pos = {v: i for i, v in enumerate(vars_)}
        sample = equations[eqs[0]][1]
        zero = sample - sample
        rows = []
        for e in eqs:
            coefs, rhs = equations[e]
            row = [zero] * (len(vars_) + 1)
            for v, c in coefs.items():
                if c:
                    row[pos[v]] = row[pos[v]] + c
            row[-1] = rhs
            rows.append(row)
        if len(vars_) >= MODULAR_THRESHOLD and isinstance(sample, CycNum):
            fast = _modular_block(equations, eqs, vars_, pos, sample.conductor)
            if fast is not None:
                x, r = fast
                if unique and r < len(vars_):
                    return None
                for v, val in zip(vars_, x):
                    sol[v] = val
                continue
        R, piv = row_reduce(rows)
        if len(vars_) in piv:
            return None
        if unique and len(piv) < len(vars_):
            return None
        for v in vars_:
            sol[v] = zero
        for i, c in enumerate(piv):
            sol[vars_[c]] = R[i][-1]
    return sol
