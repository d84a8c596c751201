"""Group cohomology of G with trivial coefficients mu_N, in exponent form.

A cochain is an integer table of exponents mod N: nu[g] for degree 1,
beta[g][h] for degree 2.  Cocycle and coboundary computations are linear
algebra over Z with the modulus handled by Smith normal form.
"""

import itertools
from dataclasses import dataclass, field

from .groups import SizeLimit, endomorphisms
from .linalg import kernel_mod, quotient_lattice, solve_mod, smith_normal_form

H2_LIMIT = 16


# ---- cochains ------------------------------------------------------------------------

def group_coboundary(G, nu, N):
    """(d nu)(g, h) = nu(g) + nu(h) - nu(gh)."""
    n, m = G.order, G.mul
    return [[(nu[g] + nu[h] - nu[m[g][h]]) % N for h in range(n)] for g in range(n)]


def cocycle_defect(G, beta, N):
    """First (g, h, k) where beta(h,k) - beta(gh,k) + beta(g,hk) - beta(g,h) is nonzero, or None."""
    n, m = G.order, G.mul
    for g in range(n):
        for h in range(n):
            gh = m[g][h]
            for k in range(n):
                if (beta[h][k] - beta[gh][k] + beta[g][m[h][k]] - beta[g][h]) % N:
                    return (g, h, k)
    return None


def is_group_cocycle(G, beta, N):
    return cocycle_defect(G, beta, N) is None


def is_invariant(G, beta, N):
    n = G.order
    return all((beta[g][h] - beta[G.conj(g, t)][G.conj(h, t)]) % N == 0
               for g in range(n) for h in range(n) for t in range(n))


def is_normalized(G, beta, N):
    return all(beta[0][g] % N == 0 and beta[g][0] % N == 0 for g in range(G.order))


def lift(beta, N, M):
    """View a mu_N-valued table as mu_M-valued (N | M)."""
    if M % N:
        raise ValueError(f"{N} does not divide {M}")
    s = M // N
    return [[x * s % M for x in row] for row in beta]


# ---- bar complex on normalized cochains -------------------------------------------------

@dataclass
class BarComplexSlice:
    G: object
    N: int
    d1: list
    d2: list
    pairs: list = field(default_factory=list)

    def index(self, g, h):
        return (g - 1) * (self.G.order - 1) + (h - 1)

    def table(self, vec):
        n = self.G.order
        out = [[0] * n for _ in range(n)]
        for (g, h), x in zip(self.pairs, vec):
            out[g][h] = x % self.N
        return out

    def vector(self, beta):
        return [beta[g][h] % self.N for g, h in self.pairs]

    def composite_is_zero(self):
        N = self.N
        for row in self.d2:
            for j in range(len(self.d1[0])):
                if sum(row[i] * self.d1[i][j] for i in range(len(row)) if row[i]) % N:
                    return False
        return True


def bar_complex(G, N):
    """Integer matrices of d1: C^1 -> C^2 and d2: C^2 -> C^3 on normalized cochains."""
    if G.order > H2_LIMIT:
        raise SizeLimit(f"bar complex limited to |G| <= {H2_LIMIT}")
    n, m = G.order, G.mul
    nt = list(range(1, n))
    pairs = [(g, h) for g in nt for h in nt]
    pos = {p: i for i, p in enumerate(pairs)}
    d1 = []
    for g, h in pairs:
        row = [0] * (n - 1)
        row[g - 1] += 1
        row[h - 1] += 1
        if m[g][h]:
            row[m[g][h] - 1] -= 1
        d1.append(row)
    d2 = []
    for g, h, k in itertools.product(nt, nt, nt):
        row = [0] * len(pairs)
        for (a, b), s in (((h, k), 1), ((m[g][h], k), -1), ((g, m[h][k]), 1), ((g, h), -1)):
            if a and b:
                row[pos[(a, b)]] += s
        if any(row):
            d2.append(row)
    return BarComplexSlice(G, N, d1, d2, pairs)


def _invariance_rows(G, pairs):
    pos = {p: i for i, p in enumerate(pairs)}
    rows = set()
    for g, h in pairs:
        for t in range(G.order):
            a, b = G.conj(g, t), G.conj(h, t)
            if (a, b) != (g, h):
                row = [0] * len(pairs)
                row[pos[(g, h)]] += 1
                row[pos[(a, b)]] -= 1
                rows.add(tuple(row))
    return [list(r) for r in sorted(rows)]


def _class_basis(G):
    """Columns spanning normalized class functions: one indicator per nontrivial class."""
    n = G.order
    cols = []
    for cl in G.conjugacy_classes():
        if 0 in cl:
            continue
        cols.append([int(g in cl) for g in range(1, n)])
    return cols


@dataclass
class H2Result:
    G: object
    N: int
    invariant: bool
    factors: list
    representatives: list

    @property
    def order(self):
        out = 1
        for d in self.factors:
            out *= d
        return out

    def to_json(self):
        return {"group": self.G.name, "conductor": self.N, "invariant": self.invariant,
                "invariant_factors": self.factors, "order": self.order,
                "representatives": [[[g, h, x] for g, row in enumerate(b) for h, x in enumerate(row) if x]
                                    for b in self.representatives]}


def h2(G, N=None, invariant=False):
    """H^2(G, mu_N), or its conjugation-invariant version, with representative cocycles."""
    N = N or G.exponent()
    bc = bar_complex(G, N)
    k = len(bc.pairs)
    eqs = [list(r) for r in bc.d2]
    if invariant:
        eqs += _invariance_rows(G, bc.pairs)
    K = kernel_mod(eqs, N, k) if eqs else [[int(i == j) for i in range(k)] for j in range(k)]
    if invariant:
        cb = bc.d1
        cols = _class_basis(G)
        gens = [[sum(cb[r][i] * c[i] for i in range(len(c))) for r in range(k)] for c in cols]
    else:
        gens = [[bc.d1[r][j] for r in range(k)] for j in range(len(bc.d1[0]))] if bc.d1 else []
    I = gens + [[N * int(i == j) for i in range(k)] for j in range(k)]
    factors, reps = quotient_lattice(K, I, k)
    return H2Result(G, N, invariant, factors, [bc.table(v) for v in reps])


# ---- solving beta = d nu ------------------------------------------------------------------

def _solve_at(G, beta, N, invariant=False):
    n, m = G.order, G.mul
    A, b = [], []
    unknowns = n
    for g in range(n):
        for h in range(n):
            row = [0] * unknowns
            row[g] += 1
            row[h] += 1
            row[m[g][h]] -= 1
            A.append(row)
            b.append(beta[g][h] % N)
    if invariant:
        classes = [sorted(c) for c in G.conjugacy_classes()]
        P = [[int(g in c) for c in classes] for g in range(n)]
        A = [[sum(row[g] * P[g][j] for g in range(n)) for j in range(len(classes))] for row in A]
        sol = solve_mod(A, b, N)
        if sol is None:
            return None
        return [sum(P[g][j] * sol[j] for j in range(len(classes))) % N for g in range(n)]
    return solve_mod(A, b, N)


def default_schedule(G, N):
    return [N, 2 * N, N * G.order]


def solve_group_coboundary(G, beta, N, schedule=None, invariant=False):
    """(nu, M) with d nu = beta lifted to conductor M, trying each M in the schedule; None if none works."""
    schedule = schedule or [N]
    for M in schedule:
        b = lift(beta, N, M)
        nu = _solve_at(G, b, M, invariant)
        if nu is not None:
            if group_coboundary(G, nu, M) != [[x % M for x in row] for row in b]:
                raise AssertionError("coboundary solve returned a wrong witness")
            return nu, M
    return None


def stable_order(G, N=None):
    """Order of the image of H^2(G, mu_N) in H^2(G, mu_{N|G|}) (the classes surviving to k^x)."""
    res = h2(G, N)
    N = res.N
    M = N * G.order
    reps = res.representatives
    dead = 0
    total = 0
    for ks in itertools.product(*(range(d) for d in res.factors)):
        total += 1
        beta = [[sum(k * r[g][h] for k, r in zip(ks, reps)) % N for h in range(G.order)] for g in range(G.order)]
        if solve_group_coboundary(G, beta, N, [M]) is not None:
            dead += 1
    return total // dead


def h1(G, N=None):
    """Hom(G, mu_N) as exponent tables."""
    N = N or G.exponent()
    from .groups import cyclic, enumerate_homs
    C = cyclic(N)
    return [list(f.map) for f in enumerate_homs(G, C, "all")]


# ---- pairings between kG and k^G ---------------------------------------------------------

@dataclass(frozen=True)
class LazyPairing:
    """lambda(g, e_x) = [x = f(g)] for an endomorphism f of G."""
    G: object
    f: tuple
    central: bool = False

    def value(self, g, x):
        return int(self.f[g] == x)

    def table(self):
        n = self.G.order
        return [[self.value(g, x) for x in range(n)] for g in range(n)]

    def to_json(self):
        return {"f": list(self.f), "central": self.central}


def pairing_defects(lam):
    """Names of the failing pairing identities (empty when lam is a lazy pairing)."""
    G, n, m = lam.G, lam.G.order, lam.G.mul
    val = lam.value
    out = []
    if any(val(m[g][h], x) != sum(val(g, x1) * val(h, m[G.inv[x1]][x]) for x1 in range(n))
           for g in range(n) for h in range(n) for x in range(n)):
        out.append("multiplicative in g")
    if any(val(g, x) * val(g, y) != (val(g, x) if x == y else 0)
           for g in range(n) for x in range(n) for y in range(n)):
        out.append("multiplicative in f")
    if any(val(g, x) != val(m[m[t][g]][G.inv[t]], m[m[t][x]][G.inv[t]])
           for g in range(n) for x in range(n) for t in range(n)):
        out.append("conjugation invariant")
    if any(val(0, x) != int(x == 0) for x in range(n)):
        out.append("unit in g")
    if any(sum(val(g, x) for x in range(n)) != 1 for g in range(n)):
        out.append("unit in f")
    return out


def pairings(G, kind="lazy"):
    """Lazy pairings come from endomorphisms with f(t g t^-1) = t f(g) t^-1; central ones from Hom(G, Z(G))."""
    if G.order > H2_LIMIT:
        raise SizeLimit(f"pairing enumeration limited to |G| <= {H2_LIMIT}")
    Z = set(G.center())
    n, m = G.order, G.mul
    out = []
    for f in endomorphisms(G):
        fm = tuple(f.map)
        central = set(fm) <= Z
        if kind == "central" and not central:
            continue
        if any(fm[m[m[t][g]][G.inv[t]]] != m[m[t][fm[g]]][G.inv[t]] for g in range(n) for t in range(n)):
            continue
        out.append(LazyPairing(G, fm, central))
    return out


def alternation(G, beta, N):
    """<g, h> = beta(g, h) - beta(h, g) for abelian G."""
    n = G.order
    return [[(beta[g][h] - beta[h][g]) % N for h in range(n)] for g in range(n)]


def smith_invariants(A):
    D, _, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]
