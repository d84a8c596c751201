"""Galois objects over k^G: twisted group algebras, R(S, eta), alpha and Phi.

A left G-algebra is the same as a right k^G-comodule algebra; here every
comodule algebra carries its G-action as a table of matrices.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from . import cohomology, lazy
from .groups import SizeLimit, dual_group, normal_abelian_subgroups
from .hopf import NotACocycle, CocycleTable, twist_algebra
from .linalg import kernel_mod, rank, solve_mod
from .scalar import CycNum

CLASSIFY_LIMIT = 16


class GaloisError(ValueError):
    pass


class DatumInvalid(GaloisError):
    pass


class NotNormalized(GaloisError):
    pass


class Degenerate(GaloisError):
    pass


def _add(out, k, c):
    v = out.get(k)
    v = c if v is None else v + c
    if v:
        out[k] = v
    else:
        out.pop(k, None)


# ---- comodule algebras ------------------------------------------------------------------

@dataclass
class ComoduleAlgebra:
    """Algebra with basis 0..dim-1, products mul[i][j] = {k: c}, and a G-action act[g][i] = {k: c}."""
    name: str
    G: object
    N: int
    dim: int
    mul: list
    unit: dict
    act: list
    labels: list = field(default_factory=list)

    @property
    def zero(self):
        return CycNum.zero(self.N)

    def multiply(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mul[i][j].items():
                    _add(out, k, a * b * c)
        return out

    def apply(self, g, x):
        out = {}
        for i, a in x.items():
            for k, c in self.act[g][i].items():
                _add(out, k, a * c)
        return out

    def basis(self, i):
        return {i: CycNum.one(self.N)}

    def associativity_defect(self):
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            bi, bj, bk = self.basis(i), self.basis(j), self.basis(k)
            if self.multiply(self.multiply(bi, bj), bk) != self.multiply(bi, self.multiply(bj, bk)):
                return (i, j, k)
        return None

    def is_associative(self):
        return self.associativity_defect() is None

    def unit_ok(self):
        return all(self.multiply(self.unit, self.basis(i)) == self.basis(i) ==
                   self.multiply(self.basis(i), self.unit) for i in range(self.dim))

    def action_defect(self):
        """None if G acts by unital algebra automorphisms, else a witness."""
        G = self.G
        for g in range(G.order):
            if self.apply(g, self.unit) != self.unit:
                return ("unit", g)
            for i in range(self.dim):
                for j in range(self.dim):
                    lhs = self.apply(g, self.multiply(self.basis(i), self.basis(j)))
                    rhs = self.multiply(self.apply(g, self.basis(i)), self.apply(g, self.basis(j)))
                    if lhs != rhs:
                        return ("multiplicative", g, i, j)
        for g in range(G.order):
            for h in range(G.order):
                for i in range(self.dim):
                    if self.apply(g, self.apply(h, self.basis(i))) != self.apply(G.mul[g][h], self.basis(i)):
                        return ("action", g, h, i)
        if any(self.apply(0, self.basis(i)) != self.basis(i) for i in range(self.dim)):
            return ("identity", 0)
        return None

    def center_dim(self):
        rows = []
        for j in range(self.dim):
            for k in range(self.dim):
                rows.append([self.multiply(self.basis(i), self.basis(j)).get(k, self.zero)
                             - self.multiply(self.basis(j), self.basis(i)).get(k, self.zero)
                             for i in range(self.dim)])
        return self.dim - rank(rows)

    def to_json(self):
        return {"name": self.name, "group": self.G.name, "conductor": self.N, "dim": self.dim,
                "labels": self.labels,
                "mul": [[i, j, {str(k): str(c) for k, c in self.mul[i][j].items()}]
                        for i in range(self.dim) for j in range(self.dim) if self.mul[i][j]]}


def twisted_group_algebra(S, eta, N, validate=True):
    """k_eta S with s . t = eta(s, t) st and S acting by s.h = s h s^-1."""
    if validate and not cohomology.is_group_cocycle(S, eta, N):
        raise NotACocycle("eta fails the group 2-cocycle identity")
    n, m, inv = S.order, S.mul, S.inv
    one = CycNum.one(N)
    mul = [[{m[s][t]: CycNum.root(N, eta[s][t])} for t in range(n)] for s in range(n)]
    unit = {0: CycNum.root(N, -eta[0][0])}
    A = ComoduleAlgebra(f"k_eta({S.name})", S, N, n, mul, unit, [], list(S.labels))
    act = []
    for s in range(n):
        # inverse of the basis element s is eta(s, s^-1)^-1 eta(1,1) s^-1
        s_inv = {inv[s]: CycNum.root(N, -eta[s][inv[s]] - eta[0][0])}
        act.append([A.multiply(A.multiply({s: one}, {h: one}), s_inv) for h in range(n)])
    A.act = act
    return A


# ---- data -------------------------------------------------------------------------------

@dataclass
class GaloisDatum:
    """A normal abelian subgroup S of G (as G-elements) with a mu_N-valued 2-cocycle eta on S.

    eta is indexed by positions in the sorted element list S.
    """
    G: object
    S: tuple
    eta: list
    N: int

    def __post_init__(self):
        self.S = tuple(sorted(self.S))
        if not self.S or self.S[0] != 0:
            raise DatumInvalid("S must contain the identity")
        G = self.G
        if set(G.generate(list(self.S))) != set(self.S):
            raise DatumInvalid("S is not a subgroup")
        if not G.is_normal(self.S):
            raise DatumInvalid("S is not normal in G")
        if any(G.mul[a][b] != G.mul[b][a] for a in self.S for b in self.S):
            raise DatumInvalid("S is not abelian")
        self.sub, self.emb = G.subgroup(self.S, "S")
        self.pos = {s: i for i, s in enumerate(self.S)}
        k = len(self.S)
        if len(self.eta) != k or any(len(r) != k for r in self.eta):
            raise DatumInvalid("eta has the wrong shape")
        self.eta = [[e % self.N for e in row] for row in self.eta]
        if not cohomology.is_group_cocycle(self.sub, self.eta, self.N):
            raise DatumInvalid("eta is not a 2-cocycle on S")

    @property
    def order(self):
        return len(self.S)

    def form(self):
        """Exponents of <s, t> = eta(s, t) eta(t, s)^-1."""
        e, k = self.eta, self.order
        return [[(e[s][t] - e[t][s]) % self.N for t in range(k)] for s in range(k)]

    def radical(self):
        f = self.form()
        return [s for s in range(self.order) if all(x == 0 for x in f[s])]

    @property
    def nondegenerate(self):
        return self.radical() == [0]

    def conjugated(self, g):
        """eta^g(s, t) = eta(s^g, t^g) with s^g = g^-1 s g."""
        G, p, S = self.G, self.pos, self.S
        c = [p[G.conj(s, g)] for s in S]
        return [[self.eta[c[s]][c[t]] for t in range(self.order)] for s in range(self.order)]

    @property
    def G_invariant_cocycle(self):
        return all(self.conjugated(g) == self.eta for g in range(self.G.order))

    @property
    def G_invariant_class(self):
        for g in range(self.G.order):
            e = self.conjugated(g)
            diff = [[(a - b) % self.N for a, b in zip(r1, r2)] for r1, r2 in zip(e, self.eta)]
            if cohomology.solve_group_coboundary(self.sub, diff, self.N,
                                                 cohomology.default_schedule(self.sub, self.N)) is None:
                return False
        return True

    @property
    def normalized(self):
        inv = self.sub.inv
        return all(self.eta[s][inv[s]] == 0 for s in range(self.order))

    def flags(self):
        return {"nondegenerate": self.nondegenerate, "G_invariant_cocycle": self.G_invariant_cocycle,
                "G_invariant_class": self.G_invariant_class, "normalized": self.normalized}

    def to_json(self):
        return {"group": self.G.name, "S": list(self.S), "conductor": self.N,
                "eta": [[i, j, e] for i, row in enumerate(self.eta) for j, e in enumerate(row) if e],
                "flags": self.flags()}

    @classmethod
    def from_json(cls, G, data):
        k = len(data["S"])
        eta = [[0] * k for _ in range(k)]
        for i, j, e in data["eta"]:
            eta[i][j] = e
        return cls(G, tuple(data["S"]), eta, data["conductor"])


def _normalizing_rows(d, invariant):
    """Linear conditions on nu (exponents over S) making eta + d nu normalized (and G-invariant)."""
    S, k = d.sub, d.order
    m, inv = S.mul, S.inv
    rows, rhs = [], []

    def dnu(s, t):
        r = [0] * k
        r[s] += 1
        r[t] += 1
        r[m[s][t]] -= 1
        return r

    for s in range(k):
        rows.append(dnu(s, inv[s]))
        rhs.append(-d.eta[s][inv[s]])
    r0 = [0] * k
    r0[0] = 1
    rows.append(r0)
    rhs.append(0)
    if invariant:
        for g in range(d.G.order):
            c = [d.pos[d.G.conj(s, g)] for s in d.S]
            for s in range(k):
                for t in range(k):
                    a, b = dnu(c[s], c[t]), dnu(s, t)
                    rows.append([x - y for x, y in zip(a, b)])
                    rhs.append(d.eta[s][t] - d.eta[c[s]][c[t]])
    return rows, rhs


def normalize(d, invariant=None):
    """A cohomologous datum with eta(s, s^-1) = 1, at conductor N or 2N.

    With invariant=True (default: when eta is G-invariant) the adjustment also keeps eta G-invariant.
    """
    if d.normalized:
        return d
    invariant = d.G_invariant_cocycle if invariant is None else invariant
    for M in (d.N, 2 * d.N):
        s = M // d.N
        lifted = GaloisDatum(d.G, d.S, [[e * s for e in row] for row in d.eta], M)
        rows, rhs = _normalizing_rows(lifted, invariant)
        nu = solve_mod(rows, [b % M for b in rhs], M)
        if nu is None:
            continue
        S = lifted.sub
        eta = [[(lifted.eta[a][b] + nu[a] + nu[b] - nu[S.mul[a][b]]) % M for b in range(d.order)]
               for a in range(d.order)]
        return GaloisDatum(d.G, d.S, eta, M)
    raise NotNormalized(f"no normalizing coboundary at conductor {d.N} or {2 * d.N}")


def standard_klein_datum():
    """G = S = C2 x C2 with eta(a^i b^j, a^k b^l) = (-1)^(jk), normalized."""
    from .groups import construct
    G = construct("C2xC2")
    a, b = _klein_generators(G)
    coords = {}
    for i in range(2):
        for j in range(2):
            coords[G.prod(*([a] * i + [b] * j)) if i or j else 0] = (i, j)
    S = tuple(range(4))
    eta = [[coords[x][1] * coords[y][0] for y in S] for x in S]
    return normalize(GaloisDatum(G, S, eta, 2))


def _klein_generators(G):
    nontrivial = [g for g in range(1, G.order)]
    return nontrivial[0], nontrivial[1]


# ---- R(S, eta) ---------------------------------------------------------------------------

def coset_reps(G, S):
    """Minimal-index representative of each right coset S g, in increasing order."""
    reps = sorted({min(G.mul[s][g] for s in S) for g in range(G.order)})
    return reps


def build_R(d):
    """R(S, eta) = {r: G -> k_eta S | r(s g) = s.r(g)} with (g.r)(h) = r(h g).

    Basis (c, s): the function with r(c) = s at the representative c and 0 at
    the other representatives; the index is c_index * |S| + s.
    """
    G, N = d.G, d.N
    K = twisted_group_algebra(d.sub, d.eta, N)
    reps = coset_reps(G, d.S)
    rpos = {c: i for i, c in enumerate(reps)}
    k = d.order
    dim = len(reps) * k
    mul = [[{} for _ in range(dim)] for _ in range(dim)]
    for ci in range(len(reps)):
        for s in range(k):
            for t in range(k):
                for u, c in K.mul[s][t].items():
                    mul[ci * k + s][ci * k + t][ci * k + u] = c
    unit = {}
    for ci in range(len(reps)):
        for u, c in K.unit.items():
            unit[ci * k + u] = c

    def split(g):
        """g = s c with c a representative; returns (s as S-position, c index)."""
        c = min(G.mul[x][g] for x in d.S)
        s = G.mul[g][G.inv[c]]
        return d.pos[s], rpos[c]

    act = []
    for g in range(G.order):
        cols = []
        for ci in range(len(reps)):
            for s in range(k):
                out = {}
                for cj, c2 in enumerate(reps):
                    s2, ck = split(G.mul[c2][g])
                    if ck != ci:
                        continue
                    for u, c in K.act[s2][s].items():
                        _add(out, cj * k + u, c)
                cols.append(out)
        act.append(cols)
    labels = [f"({G.labels[c]},{d.sub.labels[s]})" for c in reps for s in range(k)]
    return ComoduleAlgebra(f"R({G.name})", G, N, dim, mul, unit, act, labels)


def regular_kdual(G, N=None):
    """k^G with (g.f)(h) = f(h g): the basis e_x goes to e_{x g^-1}."""
    N = N or G.exponent()
    one = CycNum.one(N)
    n = G.order
    mul = [[({x: one} if x == y else {}) for y in range(n)] for x in range(n)]
    act = [[{G.mul[x][G.inv[g]]: one} for x in range(n)] for g in range(n)]
    return ComoduleAlgebra(f"k^{G.name}", G, N, n, mul, {x: one for x in range(n)}, act,
                           [f"e[{l}]" for l in G.labels])


def galois_map_rank(A):
    """Rank of theta: A (x) kG -> End(A), theta(r (x) g)(r') = r (g.r')."""
    cols = []
    for i in range(A.dim):
        for g in range(A.G.order):
            col = []
            for j in range(A.dim):
                img = A.multiply(A.basis(i), A.apply(g, A.basis(j)))
                col.extend(img.get(k, A.zero) for k in range(A.dim))
            cols.append(col)
    rows = [list(r) for r in zip(*cols)]
    return rank(rows)


def galois_check(A):
    """True when theta: A (x) kG -> End(A) is bijective."""
    if A.dim * A.G.order != A.dim * A.dim:
        return False
    return galois_map_rank(A) == A.dim * A.dim


# ---- the bigalois criterion --------------------------------------------------------------

def bigalois_criterion(d):
    """S normal abelian (checked on construction) and the class of eta G-invariant."""
    return d.G_invariant_class


def equivariant_automorphism_count(d, M=None):
    """Brute count of G-equivariant algebra automorphisms of R(S, eta) of monomial type.

    Candidates: pick a representative c and a function nu: S -> mu_M; the
    candidate sends r to the function h -> T(r(c h)) where T(s) = nu(s) c^-1 s c.
    The nu are enumerated by backtracking, pruning those for which T is not
    multiplicative on k_eta S; each surviving candidate is checked exactly to
    be a G-equivariant bijective algebra map of R.
    """
    G = d.G
    M = M or lcm(d.N, d.sub.exponent()) * d.order
    sN = M // d.N
    R = _lift_algebra(build_R(d), M)
    K = twisted_group_algebra(d.sub, [[e * sN for e in row] for row in d.eta], M)
    reps = coset_reps(G, d.S)
    rpos = {c: i for i, c in enumerate(reps)}
    k = d.order
    m = d.sub.mul
    eta = [[e * sN % M for e in row] for row in d.eta]

    def evaluate(x, h):
        """Value r(h) in k_eta S of an element x of R."""
        c = min(G.mul[s][h] for s in d.S)
        s = d.pos[G.mul[h][G.inv[c]]]
        ci = rpos[c]
        val = {}
        for i, a in x.items():
            if i // k == ci:
                for u, cc in K.act[s][i % k].items():
                    _add(val, u, a * cc)
        return val

    def solutions(moved):
        nu = [None] * k
        nu[0] = 0

        def consistent(s):
            for t in range(k):
                if nu[t] is None:
                    continue
                for a, b in ((s, t), (t, s)):
                    u = m[a][b]
                    if nu[u] is None:
                        continue
                    if (nu[a] + nu[b] + eta[moved[a]][moved[b]] - eta[a][b] - nu[u]) % M:
                        return False
            return True

        def rec(s):
            if s == k:
                yield list(nu)
                return
            for v in range(M):
                nu[s] = v
                if consistent(s):
                    yield from rec(s + 1)
            nu[s] = None

        yield from rec(1)

    count = 0
    for c in reps:
        moved = [d.pos[G.conj(s, c)] for s in d.S]
        for nu in solutions(moved):
            cols = []
            for i in range(R.dim):
                x = R.basis(i)
                out = {}
                for cj, c2 in enumerate(reps):
                    for u, a in evaluate(x, G.mul[c][c2]).items():
                        _add(out, cj * k + moved[u], a * CycNum.root(M, nu[u]))
                cols.append(out)
            if _is_equivariant_auto(R, cols):
                count += 1
    return count


def _lift_algebra(A, M):
    def lift(d):
        return {k: v.lift(M) for k, v in d.items()}
    return ComoduleAlgebra(A.name, A.G, M, A.dim, [[lift(x) for x in row] for row in A.mul],
                           lift(A.unit), [[lift(x) for x in row] for row in A.act], A.labels)


def _apply_map(cols, x):
    out = {}
    for i, a in x.items():
        for k, c in cols[i].items():
            _add(out, k, a * c)
    return out


def _is_equivariant_auto(A, cols):
    if _apply_map(cols, A.unit) != A.unit:
        return False
    for i in range(A.dim):
        for j in range(A.dim):
            if _apply_map(cols, A.multiply(A.basis(i), A.basis(j))) != \
                    A.multiply(cols[i], cols[j]):
                return False
    for g in range(A.G.order):
        for i in range(A.dim):
            if _apply_map(cols, A.apply(g, A.basis(i))) != A.apply(g, cols[i]):
                return False
    mat = [[cols[i].get(k, A.zero) for i in range(A.dim)] for k in range(A.dim)]
    return rank(mat) == A.dim


# ---- alpha and Phi ------------------------------------------------------------------------

def alpha_from(d, check=True):
    """alpha(e_x, e_y) = |S|^-2 sum_{t,t'} eta(t,t') <t,x> <t',y> for x, y in S, else 0."""
    if not d.normalized:
        raise NotNormalized("eta(s, s^-1) must be 1 for all s")
    if not d.nondegenerate:
        raise Degenerate(f"radical of the form is {d.radical()}")
    G, N = d.G, d.N
    kd = lazy.host(G, N, "kdualG")
    f = d.form()
    k = d.order
    scale = Fraction(1, k * k)
    t = [[kd.zero] * G.order for _ in range(G.order)]
    for xi, x in enumerate(d.S):
        for yi, y in enumerate(d.S):
            acc = kd.zero
            for a in range(k):
                for b in range(k):
                    acc = acc + CycNum.root(N, d.eta[a][b] + f[a][xi] + f[b][yi])
            t[x][y] = acc * scale
    alpha = CocycleTable(kd, t)
    if check and not lazy.is_cocycle(kd, alpha):
        raise NotACocycle("alpha fails the cocycle identity")
    return alpha


@dataclass
class PhiResult:
    matrix: list
    unital: bool
    multiplicative: bool
    equivariant: bool
    bijective: bool
    in_R: bool
    witness: tuple = None

    @property
    def ok(self):
        return self.unital and self.multiplicative and self.equivariant and self.bijective and self.in_R

    def to_json(self):
        return {"unital": self.unital, "multiplicative": self.multiplicative,
                "equivariant": self.equivariant, "bijective": self.bijective, "lands_in_R": self.in_R,
                "witness": self.witness}


def phi_values(d, x):
    """Phi(e_x)(h) = |S|^-1 sum_{t, r in S} <t, r> e_x(r h) t, as {h: {t: coefficient}}."""
    G, N = d.G, d.N
    f = d.form()
    k = d.order
    out = {}
    for h in range(G.order):
        r = G.mul[x][G.inv[h]]
        if r not in d.pos:
            continue
        ri = d.pos[r]
        out[h] = {t: CycNum.root(N, f[t][ri]) * Fraction(1, k) for t in range(k)}
    return out


def phi_iso(d, alpha=None):
    """Check Phi: (k^G)_alpha -> R(S, eta) exactly: unital, multiplicative, G-equivariant, bijective."""
    G, N = d.G, d.N
    alpha = alpha or alpha_from(d)
    A = twist_algebra(alpha.H, alpha)
    R = build_R(d)
    K = twisted_group_algebra(d.sub, d.eta, N)
    reps = coset_reps(G, d.S)
    k = d.order
    n = G.order
    cols = []
    in_R = True
    for x in range(n):
        vals = phi_values(d, x)
        col = {}
        for ci, c in enumerate(reps):
            for t, a in vals.get(c, {}).items():
                _add(col, ci * k + t, a)
        cols.append(col)
        # r(s h) = s.r(h) for every s and h
        for s in d.S:
            for h in range(n):
                left = vals.get(G.mul[s][h], {})
                right = {}
                for t, a in vals.get(h, {}).items():
                    for u, c in K.act[d.pos[s]][t].items():
                        _add(right, u, a * c)
                if left != right:
                    in_R = False
    unit = {}
    for x in range(n):
        for key, a in cols[x].items():
            _add(unit, key, a)
    unital = unit == R.unit
    multiplicative, witness = True, None
    for x in range(n):
        for y in range(n):
            prod = {}
            for z, c in A.mul[x][y]:
                for key, a in cols[z].items():
                    _add(prod, key, a * c)
            if prod != R.multiply(cols[x], cols[y]):
                multiplicative, witness = False, (x, y)
                break
        if not multiplicative:
            break
    kG = regular_kdual(G, N)
    equivariant = all(_apply_map(cols, kG.apply(g, kG.basis(x))) == R.apply(g, cols[x])
                      for g in range(n) for x in range(n))
    mat = [[cols[x].get(i, R.zero) for x in range(n)] for i in range(R.dim)]
    bijective = R.dim == n and rank(mat) == n
    return PhiResult(mat, unital, multiplicative, equivariant, bijective, in_R, witness)


# ---- classification and the symmetric case ---------------------------------------------------

def _cocycles_mod(S, N):
    bc = cohomology.bar_complex(S, N)
    K = kernel_mod([list(r) for r in bc.d2], N, len(bc.pairs))
    return bc, K


def classify_lazy_kG(G, N=None):
    """Representatives (S, eta): S nontrivial normal abelian, eta G-invariant, normalized, nondegenerate.

    One representative per class of eta up to coboundaries over the conductor
    schedule; conductor N or 2N (normalization may need the square roots).
    """
    if G.order > CLASSIFY_LIMIT:
        raise SizeLimit(f"classification limited to |G| <= {CLASSIFY_LIMIT}")
    N = N or G.exponent()
    out = []
    for S in normal_abelian_subgroups(G):
        if len(S) == 1:
            continue
        sub, _ = G.subgroup(S, "S")
        if N % sub.exponent():
            continue
        res = cohomology.h2(sub, N)
        found = []
        for ks in itertools.product(*(range(f) for f in res.factors)):
            eta = [[sum(c * r[a][b] for c, r in zip(ks, res.representatives)) % N
                    for b in range(sub.order)] for a in range(sub.order)]
            d = GaloisDatum(G, S, eta, N)
            if not d.nondegenerate:
                continue
            try:
                d = normalize(d, invariant=True)
            except NotNormalized:
                continue
            if not d.G_invariant_cocycle:
                continue
            if any(_same_class(d, e) for e in found):
                continue
            found.append(d)
        out.extend(found)
    return out


def _same_class(d, e):
    if d.S != e.S:
        return False
    M = lcm(d.N, e.N)
    diff = [[(a * (M // d.N) - b * (M // e.N)) % M for a, b in zip(r1, r2)] for r1, r2 in zip(d.eta, e.eta)]
    return cohomology.solve_group_coboundary(d.sub, diff, M, [M, M * d.order]) is not None


@dataclass
class KGWitness:
    """nu on k^G with d nu = alpha (alpha lifted to the conductor used)."""
    nu: list
    conductor: int
    schedule: list
    route: str

    def to_json(self):
        return {"conductor": self.conductor, "schedule": self.schedule, "route": self.route,
                "nu": [[i, str(v)] for i, v in enumerate(self.nu) if v]}


def is_symmetric_kG(alpha):
    n = alpha.H.dim
    return all(alpha.table[x][y] == alpha.table[y][x] for x in range(n) for y in range(n))


def _support_group(G, alpha):
    n = G.order
    supp = {x for x in range(n) for y in range(n) if alpha.table[x][y] or alpha.table[y][x]}
    return sorted(G.generate(sorted(supp) or [0]))


def conductor_schedule(N, G):
    out, M = [], N
    while M < N * G.order:
        out.append(M)
        M *= 2
    out.append(N * G.order)
    return out


def symmetric_kG_check(alpha):
    """A 1-cochain nu on k^G with d nu = alpha for symmetric lazy alpha.

    alpha is supported on an abelian subgroup S; its Fourier transform
    omega(psi, psi') = sum alpha(e_x, e_y) psi(x) psi'(y) is then a 2-cocycle
    on the dual of S, and a solution c of omega = d c over the conductor
    schedule gives nu(e_x) = |S|^-1 sum_chi c(chi) chi(x)^-1.
    """
    kd = alpha.H
    G, N = kd.group, kd.N
    if not is_symmetric_kG(alpha):
        raise lazy.PreconditionFailed("symmetric", "alpha(e_x, e_y) != alpha(e_y, e_x)")
    if not lazy.is_lazy_cocycle(kd, alpha):
        raise lazy.PreconditionFailed("lazy", "alpha is not lazy on k^G")
    trivial = CocycleTable.trivial(kd)
    if alpha == trivial:
        return KGWitness(list(kd.counit), N, [N], "trivial")
    S = _support_group(G, alpha)
    if any(G.mul[a][b] != G.mul[b][a] for a in S for b in S):
        eta = lazy.solve_eta(G, alpha)
        return KGWitness(eta, N, [N], "numeric")
    sub, _ = G.subgroup(S, "S")
    D = dual_group(sub)
    M0 = lcm(N, D.conductor)
    s = M0 // D.conductor
    k = len(S)
    chi = [[e * s % M0 for e in row] for row in D.table]
    omega = []
    for i in range(k):
        row = []
        for j in range(k):
            acc = CycNum.zero(M0)
            for a, x in enumerate(S):
                for b, y in enumerate(S):
                    v = alpha.table[x][y]
                    if v:
                        acc = acc + v.lift(M0) * CycNum.root(M0, chi[i][a] + chi[j][b])
            e = acc.as_root_exp()
            if e is None:
                eta = lazy.solve_eta(G, alpha)
                return KGWitness(eta, N, [N], "numeric")
            row.append(e.exp)
        omega.append(row)
    schedule = conductor_schedule(M0, G)
    for M in schedule:
        found = cohomology.solve_group_coboundary(D.group, omega, M0, [M])
        if found is None:
            continue
        c, M = found
        nu = [CycNum.zero(M)] * G.order
        for a, x in enumerate(S):
            acc = CycNum.zero(M)
            for i in range(k):
                acc = acc + CycNum.root(M, c[i] - chi[i][a] * (M // M0))
            nu[x] = acc * Fraction(1, k)
        kdM = lazy.host(G, M, "kdualG")
        target = CocycleTable(kdM, [[v.lift(M) for v in row] for row in alpha.table])
        if lazy.coboundary(kdM, nu) == target:
            return KGWitness(nu, M, schedule, "fourier")
    raise lazy.SolveFailed("alpha", f"no splitting found over conductors {schedule}")


def alpha_from_dual_cocycle(G, S, omega, N):
    """alpha(e_x, e_y) = |S|^-2 sum omega(chi, psi) chi(x)^-1 psi(y)^-1 on k^G, from omega on the dual of S."""
    sub, _ = G.subgroup(S, "S")
    D = dual_group(sub)
    M = lcm(N, D.conductor)
    s, so = M // D.conductor, M // N
    kd = lazy.host(G, M, "kdualG")
    k = len(S)
    t = [[kd.zero] * G.order for _ in range(G.order)]
    for a, x in enumerate(S):
        for b, y in enumerate(S):
            acc = kd.zero
            for i in range(k):
                for j in range(k):
                    acc = acc + CycNum.root(M, omega[i][j] * so - (D.table[i][a] + D.table[j][b]) * s)
            t[x][y] = acc * Fraction(1, k * k)
    return CocycleTable(kd, t)


def symmetric_lazy_alphas(G, N=4):
    """All lazy symmetric alpha on k^G coming from normalized symmetric mu_N-valued cocycles
    on the duals of normal abelian subgroups (exhaustive at the exponent level)."""
    seen, out = set(), []
    for S in normal_abelian_subgroups(G):
        sub, _ = G.subgroup(S, "S")
        D = dual_group(sub)
        Sh = D.group
        bc, K = _cocycles_mod(Sh, N)
        for v in lazy._span_mod(K, N):
            omega = bc.table(v)
            if any(omega[i][j] != omega[j][i] for i in range(Sh.order) for j in range(Sh.order)):
                continue
            alpha = alpha_from_dual_cocycle(G, S, omega, N)
            key = (alpha.H.N, tuple(tuple(str(x) for x in row) for row in alpha.table))
            if key in seen:
                continue
            seen.add(key)
            if not lazy.is_lazy_cocycle(alpha.H, alpha):
                continue
            out.append((tuple(S), omega, alpha))
    return out
