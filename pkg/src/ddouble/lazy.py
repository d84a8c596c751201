"""Lazy 2-cocycles on DG* and their restrictions to kG, k^G and pairings.

Cocycles are CocycleTable objects over a host Hopf algebra; the host DG* has
basis g x e_x at index g*n + x.  The heavy checks on DG* run on integer
arrays: an element of Q(zeta_N) is stored as an integer vector over the
powers 1, zeta, ..., zeta^(N-1) divided by a common denominator, and
products are cyclic convolutions of such vectors.
"""

import cmath
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from . import cohomology, hopf
from .groups import SizeLimit, abelian_decomposition, dual_group, linear_characters
from .hopf import CocycleTable, NotInvertible
from .linalg import kernel_mod, solve_linear
from .modular import solve_coords
from .scalar import CycNum, _root_table, euler_phi

CENSUS_LIMIT = 6


class LazyError(ValueError):
    pass


class NotLazy(LazyError):
    def __init__(self, witness=None):
        super().__init__(f"cocycle is not lazy (witness {witness})")
        self.witness = witness


class NonUnitValue(LazyError):
    pass


class DatumInvalid(LazyError):
    pass


class PreconditionFailed(LazyError):
    def __init__(self, which, detail=""):
        super().__init__(f"precondition fails for {which}" + (f": {detail}" if detail else ""))
        self.which = which


class SolveFailed(LazyError):
    def __init__(self, which, detail=""):
        super().__init__(f"could not solve for {which}" + (f": {detail}" if detail else ""))
        self.which = which


class GroupMismatch(LazyError):
    pass


# ---- hosts ----------------------------------------------------------------------------

def host(G, N=None, kind="DGstar"):
    """The Hopf algebra of the given kind, cached on G."""
    N = N or G.exponent()
    key = ("lazy_host", kind, N)
    if key not in G._cache:
        G._cache[key] = hopf.build(kind, G, N)
    return G._cache[key]


def _is_dgstar(H):
    return H.kind == "DGstar"


class _Tables:
    """Index arrays of a group: products, inverses and g^t = t^-1 g t."""

    def __init__(self, G):
        n = G.order
        self.n = n
        self.m = np.array(G.mul, dtype=np.int64)
        self.inv = np.array(G.inv, dtype=np.int64)
        self.cj = np.array([[G.conj(g, t) for t in range(n)] for g in range(n)], dtype=np.int64)


def _tables(G):
    if "lazy_tables" not in G._cache:
        G._cache["lazy_tables"] = _Tables(G)
    return G._cache["lazy_tables"]


# ---- integer-array arithmetic in Q(zeta_N) ----------------------------------------------

SAFE = 1 << 28


def _rmat(N):
    return np.array([[int(c) for c in row] for row in _root_table(N)], dtype=np.int64)


def _widen(*arrays):
    if any(a.dtype == object for a in arrays):
        return [a.astype(object) for a in arrays]
    return list(arrays)


def _bound(a):
    return int(np.max(np.abs(a))) if a.size else 0


def cmul(A, B, N):
    """Elementwise product of coefficient arrays (last axis N), broadcasting."""
    if A.dtype != object and B.dtype != object and _bound(A) * _bound(B) * N >= (1 << 60) // SAFE:
        A, B = A.astype(object), B.astype(object)
    A, B = _widen(A, B)
    shape = np.broadcast_shapes(A.shape, B.shape)
    out = np.zeros(shape, dtype=A.dtype)
    for j in range(N):
        aj = A[..., j:j + 1]
        if not np.any(aj):
            continue
        out = out + aj * np.roll(B, j, axis=-1)
    return out


def canon(V, N):
    """Coordinates in the basis 1, zeta, ..., zeta^(phi-1)."""
    R = _rmat(N)
    if V.dtype == object:
        return np.dot(V, R.astype(object))
    return V @ R


def _guard(V):
    """Switch to Python integers before entries get near the int64 range."""
    if V.dtype != object and _bound(V) >= SAFE:
        return V.astype(object)
    return V


@dataclass
class Packed:
    """Array of elements of Q(zeta_N) with values V[..., k] / D at zeta^k."""
    V: np.ndarray
    D: int
    N: int

    @classmethod
    def of(cls, values, N, shape):
        vals = list(values)
        D = 1
        for z in vals:
            for c in z.coeffs:
                if c.denominator != 1:
                    D = lcm(D, c.denominator)
        phi = euler_phi(N)
        rows = [[int(c * D) for c in z.coeffs] for z in vals]
        big = any(abs(x) >= SAFE for r in rows for x in r)
        V = np.zeros((len(vals), N), dtype=object if big else np.int64)
        if big:
            V[...] = 0
        if vals:
            V[:, :phi] = np.array(rows, dtype=V.dtype).reshape(len(vals), phi)
        return cls(V.reshape(tuple(shape) + (N,)), D, N)

    def coords(self):
        return canon(self.V, self.N)

    def values(self):
        """Flat list of CycNum."""
        C = self.coords().reshape(-1, euler_phi(self.N))
        return [CycNum(self.N, [Fraction(int(c), self.D) for c in row]) for row in C]

    def simplify(self):
        C = self.coords()
        g = self.D
        for x in C.flat:
            if g == 1:
                break
            g = gcd(g, int(x))
        V = np.zeros(C.shape[:-1] + (self.N,), dtype=C.dtype)
        V[..., :C.shape[-1]] = C // g
        return Packed(_guard(V), self.D // g, self.N)

    def __mul__(self, other):
        return Packed(_guard(cmul(self.V, other.V, self.N)), self.D * other.D, self.N).simplify()


def _same(A, Da, B, Db, N):
    """Mask of positions where A/Da == B/Db."""
    ca, cb = canon(A, N), canon(B, N)
    if ca.dtype != object and cb.dtype != object and max(_bound(ca), 1) * Db < (1 << 62) \
            and max(_bound(cb), 1) * Da < (1 << 62):
        return np.all(ca * Db == cb * Da, axis=-1)
    ca, cb = ca.astype(object), cb.astype(object)
    return np.all(ca * Db == cb * Da, axis=-1)


def pack_table(sigma):
    H = sigma.H
    n, N = H.group.order, H.N
    return Packed.of((v for row in sigma.table for v in row), N, (n, n, n, n) if _is_dgstar(H) else (H.dim, H.dim))


def pack_vec(H, values):
    n, N = H.group.order, H.N
    return Packed.of(values, N, (n, n) if _is_dgstar(H) else (H.dim,))


def unpack_table(H, P):
    vals = P.values()
    d = H.dim
    return CocycleTable(H, [vals[i * d:(i + 1) * d] for i in range(d)])


# ---- cochains and cocycle containers ------------------------------------------------------

@dataclass
class Cochain1:
    """A 1-cochain eta on the host: values[i] = eta(basis i)."""
    H: object
    values: list
    lazy: bool = None
    almost_lazy: bool = None

    def __call__(self, i):
        return self.values[i]

    def to_json(self):
        return {"host": self.H.kind, "group": self.H.group.name, "conductor": self.H.N,
                "entries": [[i, _value_json(v)] for i, v in enumerate(self.values) if v],
                "lazy": self.lazy, "almost_lazy": self.almost_lazy}


def _value_json(v):
    e = v.as_root_exp()
    if e is not None:
        return {"exp": e.exp}
    return [str(c) for c in v.coeffs]


def _value_from_json(N, data):
    if isinstance(data, dict):
        return CycNum.root(N, data["exp"])
    return CycNum(N, [Fraction(c) for c in data])


def table_to_json(sigma):
    H = sigma.H
    return {"host": H.kind, "group": H.group.name, "conductor": H.N,
            "entries": [[i, j, _value_json(v)] for i, row in enumerate(sigma.table)
                        for j, v in enumerate(row) if v]}


def table_from_json(H, data):
    if data.get("host", H.kind) != H.kind or data.get("conductor", H.N) != H.N:
        raise GroupMismatch(f"table is for {data.get('host')} at {data.get('conductor')}")
    t = [[H.zero] * H.dim for _ in range(H.dim)]
    for i, j, v in data["entries"]:
        t[i][j] = _value_from_json(H.N, v)
    return CocycleTable(H, t)


@dataclass
class GroupCocycle:
    """beta(g, h) on G with values in Q(zeta_N)."""
    G: object
    N: int
    values: list
    invariant: bool = False

    @classmethod
    def from_exps(cls, G, N, exps, invariant=None):
        vals = [[CycNum.root(N, e) for e in row] for row in exps]
        out = cls(G, N, vals)
        out.invariant = out.is_invariant() if invariant is None else invariant
        return out

    def exps(self):
        """Exponent table if every value is a root of unity, else None."""
        out = []
        for row in self.values:
            r = []
            for v in row:
                e = v.as_root_exp()
                if e is None:
                    return None
                r.append(e.exp)
            out.append(r)
        return out

    def is_cocycle(self):
        G, b = self.G, self.values
        m, n = G.mul, G.order
        return all(b[g][h] * b[m[g][h]][k] == b[h][k] * b[g][m[h][k]]
                   for g in range(n) for h in range(n) for k in range(n))

    def is_invariant(self):
        G, b, n = self.G, self.values, self.G.order
        return all(b[g][h] == b[G.conj(g, t)][G.conj(h, t)]
                   for g in range(n) for h in range(n) for t in range(n))

    def to_json(self):
        return {"group": self.G.name, "conductor": self.N, "invariant": self.invariant,
                "values": [[_value_json(v) for v in row] for row in self.values]}


@dataclass
class PairingTable:
    """lambda(g, e_x) for a restriction that is not an indicator of an endomorphism."""
    G: object
    table: list

    def to_json(self):
        return {"group": self.G.name, "values": [[str(v) for v in row] for row in self.table]}


# ---- cocycle identity ---------------------------------------------------------------------

def _normalization_defect(H, sigma):
    d = H.dim
    one = dict(H.unit)
    for h in range(d):
        left = sum((c * sigma.table[i][h] for i, c in one.items()), H.zero)
        right = sum((c * sigma.table[h][i] for i, c in one.items()), H.zero)
        if left != H.counit[h] or right != H.counit[h]:
            return h
    return None


def _cocycle_defect_generic(H, sigma):
    S = sigma.table
    d = H.dim
    for a in range(d):
        for b in range(d):
            for c in range(d):
                lhs = H.zero
                for a1, a2, ca in H.comul[a]:
                    for b1, b2, cb in H.comul[b]:
                        x = S[a1][b1]
                        if not x:
                            continue
                        for k, ck in H.mul[a2][b2]:
                            y = S[k][c]
                            if y:
                                lhs = lhs + ca * cb * ck * x * y
                rhs = H.zero
                for b1, b2, cb in H.comul[b]:
                    for c1, c2, cc in H.comul[c]:
                        x = S[b1][c1]
                        if not x:
                            continue
                        for k, ck in H.mul[b2][c2]:
                            y = S[a][k]
                            if y:
                                rhs = rhs + cb * cc * ck * x * y
                if lhs != rhs:
                    return (a, b, c)
    return None


def _cocycle_sides_dgstar(H, P):
    """Both sides of the cocycle identity as arrays over (g,x,h,y,k,z)."""
    T = _tables(H.group)
    n, N = T.n, H.N
    m, inv, cj = T.m, T.inv, T.cj
    S = P.V
    lhs = rhs = 0
    for x1 in range(n):
        X2 = m[inv[x1], :]
        Y1 = m.T[inv[X2]]                                   # Y1[x, y] = y x2^-1
        F1 = S[:, x1][:, :, Y1].transpose(0, 2, 1, 3, 4)   # (g, x, h, y, N)
        cjh = cj[:, Y1].transpose(1, 0, 2)                 # (x, h, y)
        Pr = m[cj[:, x1][:, None, None, None], cjh[None]]   # (g, x, h, y)
        F2 = S[Pr, X2[None, :, None, None]]                 # (g, x, h, y, k, z, N)
        lhs = lhs + cmul(F1[:, :, :, :, None, None, :], F2, N)
    for y1 in range(n):
        Y2 = m[inv[y1], :]
        Z1 = m.T[inv[Y2]]                                   # Z1[y, z] = z y2^-1
        F1 = S[:, y1][:, :, Z1].transpose(0, 2, 1, 3, 4)   # (h, y, k, z, N)
        cjk = cj[:, Z1].transpose(1, 0, 2)                 # (y, k, z)
        Pr = m[cj[:, y1][:, None, None, None], cjk[None]]   # (h, y, k, z)
        F2 = S[:, :, Pr, Y2[None, :, None, None]]           # (g, x, h, y, k, z, N)
        rhs = rhs + cmul(F1[None, None], F2, N)
    return lhs, rhs


def cocycle_defect(H, sigma):
    """None if sigma is a normalized 2-cocycle on H, else a description of a failure."""
    h = _normalization_defect(H, sigma)
    if h is not None:
        return ("normalization", h)
    if not _is_dgstar(H):
        w = _cocycle_defect_generic(H, sigma)
        return None if w is None else ("cocycle", w)
    P = pack_table(sigma)
    lhs, rhs = _cocycle_sides_dgstar(H, P)
    ok = _same(lhs, 1, rhs, 1, H.N)
    if ok.all():
        return None
    n = H.group.order
    g, x, h_, y, k, z = (int(i) for i in np.argwhere(~ok)[0])
    return ("cocycle", (g * n + x, h_ * n + y, k * n + z))


def is_cocycle(H, sigma):
    """Normalization and the identity sigma(a1,b1) sigma(a2 b2, c) = sigma(b1,c1) sigma(a, b2 c2).

    Convolution invertibility is a separate check (conv_inverse).
    """
    return cocycle_defect(H, sigma) is None


# ---- laziness -----------------------------------------------------------------------------

def lazy_defect_dgstar(sigma):
    """First basis pair violating the two basis conditions for laziness on DG*, or None."""
    H = sigma.H
    T = _tables(H.group)
    n = T.n
    P = pack_table(sigma)
    m, cj = T.m, T.cj
    nz = np.any(P.coords() != 0, axis=-1)                          # (g, x, h, y)
    gh = m[:, None, :, None] * np.ones((1, n, 1, n), dtype=np.int64)
    twisted = m[cj[:, :, None, None], cj[None, None, :, :]]       # g^x h^y over (g, x, h, y)
    bad = nz & (twisted != gh)
    if bad.any():
        g, x, h, y = (int(i) for i in np.argwhere(bad)[0])
        return ("support", (g * n + x, h * n + y))
    for t in range(n):
        c = cj[:, t]
        moved = P.V[np.ix_(c, c, c, c)]
        ok = _same(P.V, P.D, moved, P.D, H.N)
        if not ok.all():
            g, x, h, y = (int(i) for i in np.argwhere(~ok)[0])
            return ("invariance", (g * n + x, h * n + y, t))
    return None


def lazy_defect_generic(sigma):
    """First (a, b) with sigma(a1,b1) a2 b2 != a1 b1 sigma(a2,b2) in H, or None."""
    H = sigma.H
    S = sigma.table
    d = H.dim
    for a in range(d):
        for b in range(d):
            left, right = {}, {}
            for a1, a2, ca in H.comul[a]:
                for b1, b2, cb in H.comul[b]:
                    x = S[a1][b1]
                    if x:
                        for k, ck in H.mul[a2][b2]:
                            left[k] = left.get(k, H.zero) + ca * cb * ck * x
                    y = S[a2][b2]
                    if y:
                        for k, ck in H.mul[a1][b1]:
                            right[k] = right.get(k, H.zero) + ca * cb * ck * y
            if hopf._clean(left) != hopf._clean(right):
                return ("commute", (a, b))
    return None


def is_lazy_cocycle(H, sigma, route="auto"):
    """Laziness of a 2-cocycle: the basis conditions on DG*, or sigma * m = m * sigma in general."""
    if route == "generic" or not _is_dgstar(H):
        return lazy_defect_generic(sigma) is None
    return lazy_defect_dgstar(sigma) is None


def is_lazy_cochain(H, eta, route="auto"):
    vals = eta.values if isinstance(eta, Cochain1) else eta
    if route != "generic" and _is_dgstar(H):
        G = H.group
        n = G.order
        for g in range(n):
            for x in range(n):
                v = vals[g * n + x]
                if G.mul[g][x] != G.mul[x][g]:
                    if v:
                        return False
                    continue
                for t in range(n):
                    if vals[G.conj(g, t) * n + G.conj(x, t)] != v:
                        return False
        return True
    for a in range(H.dim):
        left, right = {}, {}
        for a1, a2, c in H.comul[a]:
            if vals[a1]:
                left[a2] = left.get(a2, H.zero) + c * vals[a1]
            if vals[a2]:
                right[a1] = right.get(a1, H.zero) + c * vals[a2]
        if hopf._clean(left) != hopf._clean(right):
            return False
    return True


def is_almost_lazy(H, eta):
    return is_lazy_cocycle(H, coboundary(H, eta))


# ---- convolution ---------------------------------------------------------------------------

def conv1(H, f, g):
    return hopf.conv1(H, f, g)


def conv_inverse1(H, f):
    vals = f.values if isinstance(f, Cochain1) else f
    if not _is_dgstar(H):
        return hopf.conv_inverse1(H, vals)
    G = H.group
    n = G.order
    m, inv = G.mul, G.inv
    out = [H.zero] * H.dim
    for g in range(n):
        # sum_{x1} f'(g, x1) f(g^{x1}, x1^-1 x) = delta_{x,1}
        A = [[vals[G.conj(g, x1) * n + m[inv[x1]][x]] for x1 in range(n)] for x in range(n)]
        b = [H.one if x == 0 else H.zero for x in range(n)]
        sol = solve_linear(A, b)
        if sol is None:
            raise NotInvertible("1-cochain is not convolution invertible")
        for x1 in range(n):
            out[g * n + x1] = sol[x1]
    if hopf.conv1(H, out, vals) != list(H.counit) or hopf.conv1(H, vals, out) != list(H.counit):
        raise NotInvertible("1-cochain has no two-sided inverse")
    return out


def _block_system(H, P, g, h):
    """Matrix of f -> f * sigma restricted to the (g, h) block: rows (x, y), columns (x1, y1)."""
    T = _tables(H.group)
    n = T.n
    m, inv, cj = T.m, T.inv, T.cj
    x1 = np.arange(n)[None, :, None, None]
    y1 = np.arange(n)[None, None, None, :]
    x = np.arange(n)[:, None, None, None]
    y = np.arange(n)[None, None, :, None]
    G1 = cj[g, x1] * np.ones((n, n, n, n), dtype=np.int64)
    X2 = m[inv[x1], x]
    H1 = cj[h, y1] * np.ones((n, n, n, n), dtype=np.int64)
    Y2 = m[inv[y1], y]
    M = P.V[G1, X2, H1, Y2]                           # (x, x1, y, y1, N)
    return M.transpose(0, 2, 1, 3, 4).reshape(n * n, n * n, H.N)


def inverse_blocks(sigma, blocks=None):
    """Left convolution inverse of sigma on DG* restricted to the given (g, h) blocks.

    Returns {(g, h): n x n table of CycNum, indexed [x][y]}.  Each block is
    solved modulo primes and checked exactly; exact elimination is the fallback.
    """
    H = sigma.H
    n, N = H.group.order, H.N
    P = pack_table(sigma)
    phi = euler_phi(N)
    blocks = blocks if blocks is not None else [(g, h) for g in range(n) for h in range(n)]
    out = {}
    for g, h in blocks:
        M = _block_system(H, P, g, h)
        C = canon(M, N)
        rhs = np.zeros((n * n, phi), dtype=C.dtype)
        rhs[0, 0] = P.D
        sol = solve_coords(C, rhs, N)
        f = None
        if sol is not None and sol[1] == n * n:
            F = Packed.of(sol[0], N, (n * n,))
            prod = cmul(M, F.V[None, :, :], N).sum(axis=1)
            target = np.zeros((n * n, N), dtype=prod.dtype)
            target[0, 0] = F.D * P.D
            if _same(prod, 1, target, 1, N).all():
                f = sol[0]
        if f is None:
            A = [[CycNum(N, [Fraction(int(c), P.D) for c in C[r, s]]) for s in range(n * n)]
                 for r in range(n * n)]
            f = solve_linear(A, [H.one] + [H.zero] * (n * n - 1))
            if f is None:
                raise NotInvertible(f"sigma is not convolution invertible (block {g}, {h})")
        out[(g, h)] = [f[x * n:(x + 1) * n] for x in range(n)]
    return out


def conv2(H, s, t):
    if not _is_dgstar(H):
        return hopf.conv2(H, s, t)
    return unpack_table(H, _conv2_packed(H, pack_table(s), pack_table(t)))


def _conv2_packed(H, Ps, Pt):
    T = _tables(H.group)
    n, N = T.n, H.N
    m, inv, cj = T.m, T.inv, T.cj
    out = 0
    for x1 in range(n):
        X2 = m[inv[x1], :]
        for y1 in range(n):
            Y2 = m[inv[y1], :]
            A = Ps.V[:, x1, :, y1]                                          # (g, h, N)
            B = Pt.V[cj[:, x1][:, None, None, None], X2[None, :, None, None],
                     cj[:, y1][None, None, :, None], Y2[None, None, None, :]]  # (g, x, h, y, N)
            out = out + cmul(A[:, None, :, None, :], B, N)
    return Packed(_guard(out), Ps.D * Pt.D, N).simplify()


def conv_inverse(sigma):
    """Two-sided convolution inverse, verified."""
    H = sigma.H
    cached = getattr(sigma, "_lazy_inverse", None)
    if cached is not None:
        return cached
    if not _is_dgstar(H):
        inv = hopf.conv_inverse2(H, sigma)
    else:
        n = H.group.order
        blocks = inverse_blocks(sigma)
        t = [[H.zero] * H.dim for _ in range(H.dim)]
        for (g, h), f in blocks.items():
            for x in range(n):
                for y in range(n):
                    t[g * n + x][h * n + y] = f[x][y]
        inv = CocycleTable(H, t)
        trivial = CocycleTable.trivial(H)
        if conv2(H, sigma, inv) != trivial or conv2(H, inv, sigma) != trivial:
            raise NotInvertible("left inverse is not a right inverse")
    sigma._lazy_inverse = inv
    return inv


def coboundary(H, eta):
    """(d eta)(a, b) = eta(a1) eta(b1) eta^-1(a2 b2)."""
    vals = eta.values if isinstance(eta, Cochain1) else list(eta)
    inv = conv_inverse1(H, vals)
    if not _is_dgstar(H):
        d = H.dim
        t = [[H.zero] * d for _ in range(d)]
        for a in range(d):
            for b in range(d):
                acc = H.zero
                for a1, a2, ca in H.comul[a]:
                    if not vals[a1]:
                        continue
                    for b1, b2, cb in H.comul[b]:
                        if not vals[b1]:
                            continue
                        for k, ck in H.mul[a2][b2]:
                            if inv[k]:
                                acc = acc + ca * cb * ck * vals[a1] * vals[b1] * inv[k]
                t[a][b] = acc
        return CocycleTable(H, t)
    T = _tables(H.group)
    n, N = T.n, H.N
    m, inv_, cj = T.m, T.inv, T.cj
    E = pack_vec(H, vals)
    Ei = pack_vec(H, inv)
    out = 0
    for x1 in range(n):
        X2 = m[inv_[x1], :]
        Y1 = m.T[inv_[X2]]                                   # (x, y)
        A = E.V[:, x1][:, None, None, None, :]               # (g, 1, 1, 1, N)
        B = E.V[np.arange(n)[None, None, :, None], Y1[None, :, None, :]]   # (1, x, h, y, N)
        Pr = m[cj[:, x1][:, None, None, None], cj[np.arange(n)[None, None, :, None], Y1[None, :, None, :]]]
        C = Ei.V[Pr, X2[None, :, None, None]]                # (g, x, h, y, N)
        out = out + cmul(cmul(A, B, N), C, N)
    P = Packed(_guard(out), E.D * E.D * Ei.D, N).simplify()
    return unpack_table(H, P)


def tables_equal(s, t):
    if _is_dgstar(s.H):
        A, B = pack_table(s), pack_table(t)
        return bool(_same(A.V, A.D, B.V, B.D, s.H.N).all())
    return s == t


# ---- restrictions ------------------------------------------------------------------------

def restrict(sigma, which, require_lazy=False, strict=False):
    """beta_sigma on G, alpha_sigma on k^G, or lambda_sigma as a pairing.

    For lazy sigma the result is invariant and unit valued;
    other inputs get the plain formula.
    """
    H = sigma.H
    if not _is_dgstar(H):
        raise GroupMismatch("restrictions are defined on DG*")
    if require_lazy and not is_lazy_cocycle(H, sigma):
        raise NotLazy(lazy_defect_dgstar(sigma))
    G = H.group
    n = G.order
    S = sigma.table
    if which == "beta":
        vals = [[sum((S[g * n + x][h * n + y] for x in range(n) for y in range(n)), H.zero)
                 for h in range(n)] for g in range(n)]
        beta = GroupCocycle(G, H.N, vals)
        beta.invariant = beta.is_invariant()
        if strict and beta.exps() is None:
            raise NonUnitValue(f"beta has a value outside mu_{H.N}")
        return beta
    if which == "alpha":
        kd = host(G, H.N, "kdualG")
        return CocycleTable(kd, [[S[x][y] for y in range(n)] for x in range(n)])
    if which == "lambda":
        blocks = inverse_blocks(sigma, [(0, g) for g in range(n)])
        table = []
        for g in range(n):
            f = blocks[(0, g)]
            # B[t][y] = sum_u sigma(g^t x e_u, 1 x e_y)
            B = [[sum((S[G.conj(g, t) * n + u][y] for u in range(n)), H.zero) for y in range(n)]
                 for t in range(n)]
            row = []
            for w in range(n):
                acc = H.zero
                for x in range(n):
                    y = G.mul[G.inv[x]][w]
                    for t in range(n):
                        if f[x][t] and B[t][y]:
                            acc = acc + f[x][t] * B[t][y]
                row.append(acc)
            table.append(row)
        return _as_pairing(G, table, H)
    raise ValueError(f"unknown restriction {which!r}")


def _as_pairing(G, table, H):
    n = G.order
    f = []
    for g in range(n):
        hits = [x for x in range(n) if table[g][x] == H.one]
        if len(hits) != 1 or any(table[g][x] for x in range(n) if x != hits[0]):
            return PairingTable(G, table)
        f.append(hits[0])
    Z = set(G.center())
    return cohomology.LazyPairing(G, tuple(f), set(f) <= Z)


def is_trivial_pairing(lam):
    return isinstance(lam, cohomology.LazyPairing) and all(x == 0 for x in lam.f)


# ---- embeddings --------------------------------------------------------------------------

def embed(datum, which, H=None, check=True):
    """sigma_beta, sigma_alpha (central alpha) or sigma_lambda (central lambda) on DG*."""
    if which == "beta":
        beta = datum
        G, N = beta.G, beta.N
        H = H or host(G, N)
        if check and not (beta.is_invariant() and beta.is_cocycle()):
            raise DatumInvalid("beta must be a conjugation-invariant 2-cocycle")
        n = G.order
        t = [[H.zero] * H.dim for _ in range(H.dim)]
        for g in range(n):
            for h in range(n):
                t[g * n][h * n] = beta.values[g][h]
        return CocycleTable(H, t)
    if which in ("alpha", "alpha_central"):
        alpha = datum
        kd = alpha.H
        G = kd.group
        H = H or host(G, kd.N)
        n = G.order
        if check:
            Z = set(G.center())
            if any(alpha.table[x][y] for x in range(n) for y in range(n) if x not in Z or y not in Z):
                raise DatumInvalid("alpha must vanish off Z(G) x Z(G)")
            if not is_cocycle(kd, alpha):
                raise DatumInvalid("alpha is not a 2-cocycle on k^G")
        t = [[alpha.table[x][y] for h in range(n) for y in range(n)] for g in range(n) for x in range(n)]
        return CocycleTable(H, t)
    if which in ("lambda", "lambda_central"):
        lam = datum
        G = lam.G
        H = H or host(G)
        n = G.order
        if check:
            if cohomology.pairing_defects(lam):
                raise DatumInvalid("lambda fails the pairing identities")
            if not set(lam.f) <= set(G.center()):
                raise DatumInvalid("lambda must be central")
        t = [[H.zero] * H.dim for _ in range(H.dim)]
        for g in range(n):
            for h in range(n):
                for y in range(n):
                    if lam.value(g, y):
                        t[g * n][h * n + y] = H.one
        return CocycleTable(H, t)
    raise ValueError(f"unknown embedding {which!r}")


# ---- data on the three factors -------------------------------------------------------------

def _span_mod(gens, N, limit=1 << 16):
    seen = {tuple([0] * (len(gens[0]) if gens else 0))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % N for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
                    if len(seen) > limit:
                        raise SizeLimit(f"more than {limit} cocycles")
        frontier = nxt
    return sorted(seen)


def invariant_betas(G, N=None):
    """All normalized conjugation-invariant mu_N-valued 2-cocycles, as exponent tables."""
    N = N or G.exponent()
    bc = cohomology.bar_complex(G, N)
    eqs = [list(r) for r in bc.d2] + cohomology._invariance_rows(G, bc.pairs)
    K = kernel_mod(eqs, N, len(bc.pairs))
    return [bc.table(v) for v in _span_mod(K, N)]


def central_alphas(G, N=None):
    """Central lazy 2-cocycles on k^G pulled back from normalized mu_N-valued cocycles on the dual of Z(G)."""
    N = N or G.exponent()
    kd = host(G, N, "kdualG")
    Zs = list(G.center())
    Z, emb = G.subgroup(Zs, "Z")
    D = dual_group(Z)
    Zh = D.group
    if N % D.conductor:
        raise ValueError(f"conductor {N} is not a multiple of exp(Z) = {D.conductor}")
    s = N // D.conductor
    chi = [[e * s % N for e in row] for row in D.table]       # chi[i][z]
    zs = len(Zs)
    out = []
    for omega in invariant_betas(Zh, N):
        t = [[kd.zero] * G.order for _ in range(G.order)]
        for a, x in enumerate(Zs):
            for b, y in enumerate(Zs):
                acc = kd.zero
                for i in range(zs):
                    for j in range(zs):
                        acc = acc + CycNum.root(N, omega[i][j] - chi[i][a] - chi[j][b])
                t[x][y] = acc * Fraction(1, zs * zs)
        out.append(CocycleTable(kd, t))
    return out


def central_pairings(G):
    return cohomology.pairings(G, "central")


# ---- Aut action and symmetry ---------------------------------------------------------------

def act(phi, sigma):
    """(phi . sigma)(d_k, d_m) = sum_{j,l} Phi[k][j] Phi[m][l] sigma(d_j, d_l)."""
    H = sigma.H
    if phi.G is not H.group or phi.N != H.N:
        raise GroupMismatch("automorphism and cocycle live over different groups or conductors")
    cols = phi.phi().cols
    rows = [dict() for _ in range(H.dim)]
    for j, col in enumerate(cols):
        for k, c in col.items():
            rows[k][j] = c
    S = sigma.table
    t = [[H.zero] * H.dim for _ in range(H.dim)]
    for k in range(H.dim):
        for m_ in range(H.dim):
            acc = H.zero
            for j, a in rows[k].items():
                Sj = S[j]
                for l, b in rows[m_].items():
                    if Sj[l]:
                        acc = acc + a * b * Sj[l]
            t[k][m_] = acc
    return CocycleTable(H, t)


def symmetry_defect(sigma):
    """First (g, t, h, s) violating sigma(g x e_t, h^g x e_s) = sigma(h x e_{g s (g^-1)^t}, g x e_t)."""
    H = sigma.H
    G = H.group
    n = G.order
    S = sigma.table
    inv = G.inv
    for g, t, h, s in itertools.product(range(n), repeat=4):
        left = S[g * n + t][G.conj(h, g) * n + s]
        right = S[h * n + G.prod(g, s, G.conj(inv[g], t))][g * n + t]
        if left != right:
            return (g, t, h, s)
    return None


def is_symmetric(sigma):
    return symmetry_defect(sigma) is None


# ---- numeric candidates, exact answers -------------------------------------------------------

TOL = 1e-7


def recognize(z, N, max_den=10 ** 6):
    """The element of Q(zeta_N) closest to the complex number z, if phi(N) <= 2 and it fits."""
    phi = euler_phi(N)
    if phi == 1:
        if abs(z.imag) > TOL:
            return None
        a = Fraction(z.real).limit_denominator(max_den)
        return CycNum(N, [a]) if abs(float(a) - z.real) < TOL else None
    if phi == 2:
        zeta = cmath.exp(2j * cmath.pi / N)
        b = z.imag / zeta.imag
        a = z.real - b * zeta.real
        fa = Fraction(a).limit_denominator(max_den)
        fb = Fraction(b).limit_denominator(max_den)
        if abs(float(fa) - a) > TOL or abs(float(fb) - b) > TOL:
            return None
        return CycNum(N, [fa, fb])
    return None


def _solve_nu_exact(G, beta, N):
    exps = beta.exps()
    if exps is None:
        return None, None
    found = cohomology.solve_group_coboundary(G, exps, N, cohomology.default_schedule(G, N))
    if found is None:
        return None, "class"
    nu, M = found
    if M != N:
        return None, f"needs conductor {M}"
    return [CycNum.root(N, e) for e in nu], None


def _solve_nu_numeric(G, beta, N):
    n, m = G.order, G.mul
    b = np.array([[v.to_complex() for v in row] for row in beta.values])
    if np.any(np.abs(b) < TOL):
        return None
    nut = np.prod(b, axis=1)                      # nu~(g) = prod_h beta(g, h)
    nu0 = nut ** (1.0 / n)
    gamma = b * nu0[m] / np.outer(nu0, nu0)
    ang = np.angle(gamma) * n / (2 * np.pi)
    e = np.rint(ang).astype(int) % n
    if np.max(np.abs(gamma - np.exp(2j * np.pi * e / n))) > 1e-6:
        return None
    lc = linear_characters(G)
    M = n * lc.conductor
    found = cohomology.solve_group_coboundary(G, e.tolist(), n, [M])
    if found is None:
        return None
    c, M = found
    base = nu0 * np.exp(2j * np.pi * np.array(c) / M)
    for row in lc.table:
        cand = base * np.exp(2j * np.pi * np.array(row) / lc.conductor)
        vals = [recognize(z, N) for z in cand]
        if any(v is None for v in vals):
            continue
        if all(vals[g] * vals[h] == beta.values[g][h] * vals[m[g][h]] for g in range(n) for h in range(n)):
            return vals
    return None


def solve_nu(G, beta, N):
    """nu: G -> Q(zeta_N)^x with d nu = beta, exact; raises PreconditionFailed or SolveFailed."""
    n = G.order
    if all(beta.values[g][h] == CycNum.one(N) for g in range(n) for h in range(n)):
        return [CycNum.one(N)] * n
    nu, why = _solve_nu_exact(G, beta, N)
    if nu is not None:
        return nu
    if why == "class":
        raise PreconditionFailed("beta", "restriction is a nontrivial class at every conductor tried")
    nu = _solve_nu_numeric(G, beta, N)
    if nu is None:
        raise SolveFailed("beta", why or f"no solution recognized in Q(zeta_{N})")
    return nu


def _eta_equations_hold(G, alpha, eta):
    n, m, inv = G.order, G.mul, G.inv
    A = alpha.table
    for x in range(n):
        for y in range(n):
            acc = alpha.H.zero
            for z in range(n):
                a = A[m[x][inv[z]]][m[y][inv[z]]]
                if a and eta[z]:
                    acc = acc + a * eta[z]
            if acc != eta[x] * eta[y]:
                return False
    return True


def solve_eta(G, alpha, rng=None):
    """eta on k^G with d eta = alpha, exact: a common eigenvector of the maps
    L_y[x][z] = alpha(e_{x z^-1}, e_{y z^-1}) with eigenvalues eta(e_y)."""
    kd = alpha.H
    N = kd.N
    n, m, inv = G.order, G.mul, G.inv
    eps = [kd.one if x == 0 else kd.zero for x in range(n)]
    if _eta_equations_hold(G, alpha, eps):
        return eps
    rng = rng or random.Random(0)
    A = np.array([[v.to_complex() for v in row] for row in alpha.table])
    L = np.array([[[A[m[x][inv[z]], m[y][inv[z]]] for z in range(n)] for x in range(n)] for y in range(n)])
    saw_solution = False
    for _ in range(4):
        w = np.array([rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1) for _ in range(n)])
        T = np.tensordot(w, L, axes=1)
        vals, vecs = np.linalg.eig(T)
        for k in range(n):
            v = vecs[:, k]
            s = v.sum()
            if abs(s) < TOL:
                continue
            v = v / s
            if np.max(np.abs(np.einsum("yxz,z->yx", L, v) - np.outer(v, v))) > 1e-6:
                continue
            saw_solution = True
            eta = [recognize(z, N) for z in v]
            if any(e is None for e in eta):
                continue
            if _eta_equations_hold(G, alpha, eta):
                return eta
        if len(set(np.round(vals, 6))) == n and not saw_solution:
            raise PreconditionFailed("alpha", "no invertible eta with d eta = alpha")
    raise SolveFailed("alpha", f"no solution recognized in Q(zeta_{N})")


# ---- trivializations ------------------------------------------------------------------------

@dataclass
class Witness:
    """A cochain w with d w = sigma, and the pieces it was assembled from."""
    cochain: Cochain1
    nu: list
    eta: list
    mu: list
    lazy: bool
    orientation: str = "mu*(eta(x)nu)"

    def to_json(self):
        return {"witness": self.cochain.to_json(), "lazy": self.lazy, "orientation": self.orientation}


def kernel_trivialize(sigma, rng=None):
    """For lazy sigma with trivial beta, alpha and lambda classes, a cochain w with d w = sigma.

    w = mu * (eta (x) nu) where mu(g x e_x) = sigma^-1(g x 1, 1 x e_x),
    beta_sigma = d nu on G and alpha_sigma = d eta on k^G.
    """
    H = sigma.H
    if not _is_dgstar(H):
        raise GroupMismatch("kernel_trivialize works on DG*")
    if not is_lazy_cocycle(H, sigma):
        raise PreconditionFailed("lazy", str(lazy_defect_dgstar(sigma)))
    G, N = H.group, H.N
    n = G.order
    lam = restrict(sigma, "lambda")
    if not is_trivial_pairing(lam):
        raise PreconditionFailed("lambda", "lambda_sigma is not the trivial pairing")
    nu = solve_nu(G, restrict(sigma, "beta"), N)
    eta = solve_eta(G, restrict(sigma, "alpha"), rng)
    blocks = inverse_blocks(sigma, [(g, 0) for g in range(n)])
    mu = [sum((blocks[(g, 0)][u][x] for u in range(n)), H.zero) for g in range(n) for x in range(n)]
    en = [nu[g] * eta[x] for g in range(n) for x in range(n)]
    target = pack_table(sigma)
    for name, w in (("mu*(eta(x)nu)", hopf.conv1(H, mu, en)), ("(eta(x)nu)*mu", hopf.conv1(H, en, mu))):
        dw = pack_table(coboundary(H, w))
        if _same(dw.V, dw.D, target.V, target.D, N).all():
            lazy = is_lazy_cochain(H, w)
            return Witness(Cochain1(H, w, lazy=lazy, almost_lazy=True), nu, eta, mu, lazy, name)
    raise SolveFailed("witness", "d(mu * (eta (x) nu)) differs from sigma")


@dataclass
class SymmetricReduction:
    beta: GroupCocycle
    witness: Witness

    def to_json(self):
        return {"beta": self.beta.to_json(), "witness": self.witness.to_json()}


def symmetric_reduce(sigma, rng=None):
    """Split a symmetric lazy sigma as sigma_beta * d(w)."""
    H = sigma.H
    w = symmetry_defect(sigma)
    if w is not None:
        raise PreconditionFailed("symmetric", f"symmetry fails at {w}")
    beta = restrict(sigma, "beta")
    inv_beta = GroupCocycle(beta.G, beta.N, [[v.inv() for v in row] for row in beta.values], beta.invariant)
    sb_inv = embed(inv_beta, "beta", H, check=False)
    rest = conv2(H, sb_inv, sigma)
    wit = kernel_trivialize(rest, rng)
    back = conv2(H, embed(beta, "beta", H, check=False), coboundary(H, wit.cochain.values))
    if not tables_equal(back, sigma):
        raise SolveFailed("symmetric", "sigma_beta * d(w) differs from sigma")
    return SymmetricReduction(beta, wit)


# ---- random almost-lazy cochains -------------------------------------------------------------

def dgstar_characters(G, N=None):
    """Algebra maps DG* -> k: g x e_x -> chi(g) [x = x0] for linear chi and x0 in G."""
    H = host(G, N)
    lc = linear_characters(G)
    s = H.N // lc.conductor
    n = G.order
    out = []
    for row in lc.table:
        for x0 in range(n):
            out.append([CycNum.root(H.N, row[g] * s) if x == x0 else H.zero
                        for g in range(n) for x in range(n)])
    return out


def random_lazy_cochain(G, rng, N=None):
    """A lazy invertible 1-cochain on DG*: a class function on commuting pairs, normalized."""
    H = host(G, N)
    for _ in range(50):
        vals = _random_class_cochain(H, rng)
        try:
            conv_inverse1(H, vals)
        except NotInvertible:
            continue
        return vals
    raise SolveFailed("random", "no invertible lazy cochain found")


def _random_class_cochain(H, rng):
    G = H.group
    n, N = G.order, H.N
    orbit = {}
    vals = [H.zero] * H.dim
    for g in range(n):
        for x in range(n):
            if G.mul[g][x] != G.mul[x][g]:
                continue
            key = min((G.conj(g, t), G.conj(x, t)) for t in range(n))
            if key not in orbit:
                orbit[key] = CycNum.root(N, rng.randrange(N)) * rng.choice([1, 2, 3, Fraction(1, 2)])
            vals[g * n + x] = orbit[key]
    return _normalize(H, vals)


def _normalize(H, vals):
    n = H.group.order
    # eps(eta) scaling: eta(1) = sum_x eta(1 x e_x) must be 1
    s = sum((vals[x] for x in range(n)), H.zero)
    if not s:
        vals[0] = vals[0] + H.one
        s = sum((vals[x] for x in range(n)), H.zero)
    si = s.inv()
    return [v * si for v in vals]


def random_almost_lazy(G, rng, N=None, lazy=False):
    """mu = (lazy cochain) * (algebra map of DG*), invertible with lazy d mu.

    With lazy=False the algebra map is chosen so that mu itself is not lazy
    whenever G admits such a choice.
    """
    H = host(G, N)
    for _ in range(50):
        base = random_lazy_cochain(G, rng, H.N)
        chars = dgstar_characters(G, H.N)
        c = rng.choice(chars) if not lazy else chars[0]
        mu = hopf.conv1(H, base, c)
        try:
            conv_inverse1(H, mu)
        except NotInvertible:
            continue
        if lazy or not is_lazy_cochain(H, mu) or G.is_abelian():
            return mu
    raise SolveFailed("random", "no invertible almost-lazy cochain found")


# ---- conjecture explorer ----------------------------------------------------------------------

def _schur_order(A):
    """|H^2(A, k^x)| for abelian A: product of gcd(d_i, d_j) over pairs of invariant factors."""
    ds = abelian_decomposition(A).invariant_factors
    out = 1
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            out *= gcd(ds[i], ds[j])
    return out


@dataclass
class CensusReport:
    group: str
    conductor: int
    lazy_order: int
    h2c_order: int
    pc_order: int
    h2inv_order: int
    method: str
    notes: list = field(default_factory=list)

    @property
    def product(self):
        return self.h2c_order * self.pc_order * self.h2inv_order

    def to_json(self):
        return {"group": self.group, "conductor": self.conductor, "H2_L": self.lazy_order,
                "H2_c": self.h2c_order, "P_c": self.pc_order, "H2_inv": self.h2inv_order,
                "product": self.product, "equal": self.lazy_order == self.product,
                "method": self.method, "notes": self.notes, "status": "experimental"}


def conjecture_census(G, N=None):
    """Cardinalities of H^2_L(DG*), H^2_c(k^G), P_c(kG, k^G) and H^2_inv(G) at conductor N.

    Experimental evidence only.  For abelian G, DG* is the group algebra of
    G x G^ and H^2_L is its Schur multiplier.  For nonabelian G the lazy side
    counts classes of products sigma_alpha * sigma_lambda * sigma_beta told
    apart by their restrictions, which is a lower bound.
    """
    if G.order > CENSUS_LIMIT:
        raise SizeLimit(f"conjecture census limited to |G| <= {CENSUS_LIMIT}")
    N = N or G.exponent()
    Zs = list(G.center())
    Z, _ = G.subgroup(Zs, "Z")
    h2c = _schur_order(dual_group(Z).group) if Z.order > 1 else 1
    pc = len(central_pairings(G))
    h2inv = _stable_inv_order(G, N)
    notes = []
    if G.is_abelian():
        lazy_order = _schur_order(G) * _schur_order(dual_group(G).group) * len(cohomology.pairings(G, "lazy"))
        method = "abelian: Schur multiplier of G x dual(G)"
    else:
        lazy_order = _lower_bound_by_restrictions(G, N)
        method = "nonabelian: classes of sigma_alpha * sigma_lambda * sigma_beta told apart by restrictions"
        notes.append("lazy side is a lower bound at the given conductor")
    return CensusReport(G.name, N, lazy_order, h2c, pc, h2inv, method, notes)


def _stable_inv_order(G, N):
    """Order of H^2_inv(G, mu_N) classes surviving in H^2(G, mu_{N|G|})."""
    if G.order == 1:
        return 1
    res = cohomology.h2(G, N, invariant=True)
    M = N * G.order
    alive = set()
    for ks in itertools.product(*(range(d) for d in res.factors)):
        beta = [[sum(k * r[g][h] for k, r in zip(ks, res.representatives)) % N for h in range(G.order)]
                for g in range(G.order)]
        lifted = cohomology.lift(beta, N, M)
        key = None
        for prev in alive:
            diff = [[(lifted[g][h] - prev[1][g][h]) % M for h in range(G.order)] for g in range(G.order)]
            if cohomology._solve_at(G, diff, M, invariant=True) is not None:
                key = prev
                break
        if key is None:
            alive.add((ks, tuple(tuple(r) for r in lifted)))
    return len(alive)


def _lower_bound_by_restrictions(G, N):
    res = cohomology.h2(G, N, invariant=True)
    betas = []
    for ks in itertools.product(*(range(d) for d in res.factors)):
        betas.append(ks)
    lam = central_pairings(G)
    Zs = list(G.center())
    Z, _ = G.subgroup(Zs, "Z")
    h2c = _schur_order(dual_group(Z).group) if Z.order > 1 else 1
    return _stable_inv_order(G, N) * len(lam) * h2c
