"""Hopf automorphisms of DG as matrices (u, b; a, v) of homomorphism-valued blocks.

An automorphism is stored in structured form:

* ``ustar``: the group endomorphism dual to u, so u(f) = f o ustar;
* ``bidx``: for each h, the index of the linear character b(h) of G;
* ``a``: an :class:`ADatum` (A, psi) with A an abelian subgroup and psi an
  injective homomorphism from the characters of A into G, so that
  a(e_y) = [y in A] (1/|A|) sum_xi xi(y)^-1 psi(xi);
* ``v``: a group endomorphism.

The induced map is phi(e_g x h) = u((e_g)_1) b(h) x a((e_g)_2) v(h).
"""

import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from .groups import (GroupError, GroupHom, SizeLimit, automorphisms, central_automorphisms,
                     dual_group, endomorphisms, enumerate_homs, linear_characters, subgroups,
                     abelian_decomposition)
from .hopf import LinMap, NotInvertible, build, convolve
from .linalg import rank, solve_linear
from .scalar import CycNum, euler_phi

ENUM_LIMIT = 8


class AutError(ValueError):
    pass


class NotHopfMorphism(AutError):
    pass


class ConditionViolated(AutError):
    def __init__(self, which, witness):
        super().__init__(f"condition {which} fails at {witness}")
        self.which = which
        self.witness = witness


class NotBijective(AutError):
    pass


class GroupMismatch(AutError):
    pass


class DatumInvalid(AutError):
    pass


# ---- per-group context ----------------------------------------------------------

@dataclass
class SubDual:
    """Characters of an abelian subgroup A, as exponent rows aligned with A."""
    A: tuple
    rows: list
    index: dict
    point_of: dict
    pos: dict


class Context:
    """Cached data for automorphisms of DG at a fixed group and conductor."""

    def __init__(self, G, N):
        lc = linear_characters(G)
        if N % lc.conductor:
            raise ValueError(f"conductor {N} is not a multiple of {lc.conductor}")
        self.G, self.N, self.n = G, N, G.order
        s = N // lc.conductor
        self.chars = [tuple(e * s % N for e in row) for row in lc.table]
        self.char_index = {row: i for i, row in enumerate(self.chars)}
        self.char_group = lc.group
        self.roots = [CycNum.root(N, k) for k in range(N)]
        self.center = G.center()
        self._sub = {}
        self._acols = {}
        self._hopf = {}
        self._identity = None

    def hopf(self, kind):
        if kind not in self._hopf:
            self._hopf[kind] = build(kind, self.G, self.N)
        return self._hopf[kind]

    def sub_chars(self, A):
        A = tuple(sorted(A))
        if A in self._sub:
            return self._sub[A]
        G = self.G
        H, _ = G.subgroup(A)
        if not H.is_abelian():
            raise DatumInvalid(f"subgroup {A} is not abelian")
        D = dual_group(H)
        s = self.N // D.conductor
        rows = sorted(tuple(e * s % self.N for e in row) for row in D.table)
        index = {r: i for i, r in enumerate(rows)}
        point_of = {tuple(r[j] for r in rows): a for j, a in enumerate(A)}
        sd = SubDual(A, rows, index, point_of, {a: j for j, a in enumerate(A)})
        self._sub[A] = sd
        return sd

    def char_of(self, exps):
        try:
            return self.char_index[tuple(e % self.N for e in exps)]
        except KeyError:
            raise DatumInvalid("not a linear character of G") from None

    def a_cols(self, a):
        """a(e_y) for every y, as sparse dicts over G."""
        if a in self._acols:
            return self._acols[a]
        sd = self.sub_chars(a.A)
        cols = [{} for _ in range(self.n)]
        inv = CycNum.from_rational(self.N, 1) / len(a.A)
        for j, y in enumerate(a.A):
            out = {}
            for i, z in enumerate(a.psi):
                out[z] = out.get(z, CycNum.zero(self.N)) + self.roots[-sd.rows[i][j] % self.N]
            cols[y] = {z: c * inv for z, c in out.items() if c}
        self._acols[a] = cols
        return cols

    def a_apply(self, a, chi):
        """a(chi) = psi(chi restricted to A) for a character chi of G (exponent vector)."""
        sd = self.sub_chars(a.A)
        return a.psi[sd.index[tuple(chi[y] for y in a.A)]]

    def a_transpose(self, a, chi):
        """The w in A with xi(w) = chi(psi(xi)) for all characters xi of A."""
        sd = self.sub_chars(a.A)
        try:
            return sd.point_of[tuple(chi[z] for z in a.psi)]
        except KeyError:
            raise DatumInvalid("character does not transpose through a") from None

    def identity(self):
        if self._identity is None:
            n = self.n
            self._identity = AutDG(self, tuple(range(n)), (0,) * n, trivial_a(), tuple(range(n)))
        return self._identity


def context(G, N=None):
    N = N or G.exponent()
    key = ("autdg", N)
    if key not in G._cache:
        G._cache[key] = Context(G, N)
    return G._cache[key]


# ---- the a-datum ------------------------------------------------------------------

@dataclass(frozen=True)
class ADatum:
    """(A, psi): psi[i] is the image of the i-th character of A (sorted rows)."""
    A: tuple
    psi: tuple

    def is_trivial(self):
        return len(self.A) == 1


def trivial_a():
    return ADatum((0,), (0,))


def normalize_a(ctx, A0, psi0):
    """Reduce a possibly non-injective (A0, psi0) to the injective normal form."""
    G = ctx.G
    sd = ctx.sub_chars(A0)
    for i, ri in enumerate(sd.rows):
        for j, rj in enumerate(sd.rows):
            k = sd.index[tuple((x + y) % ctx.N for x, y in zip(ri, rj))]
            if psi0[k] != G.mul[psi0[i]][psi0[j]]:
                raise DatumInvalid("psi is not a homomorphism")
    K = [i for i, g in enumerate(psi0) if g == 0]
    A = tuple(y for y in sd.A if all(sd.rows[i][sd.pos[y]] == 0 for i in K))
    sd2 = ctx.sub_chars(A)
    psi = [None] * len(sd2.rows)
    for i, row in enumerate(sd.rows):
        k = sd2.index[tuple(row[sd.pos[y]] for y in A)]
        if psi[k] is None:
            psi[k] = psi0[i]
        elif psi[k] != psi0[i]:
            raise DatumInvalid("psi does not factor through the restriction")
    return ADatum(A, tuple(psi))


def check_a(ctx, a):
    G = ctx.G
    if set(G.generate(list(a.A))) != set(a.A):
        raise DatumInvalid("A is not a subgroup")
    sd = ctx.sub_chars(a.A)
    if len(a.psi) != len(sd.rows):
        raise DatumInvalid("psi has the wrong length")
    if normalize_a(ctx, a.A, a.psi) != a:
        raise DatumInvalid("psi is not injective")


# ---- automorphism matrices ----------------------------------------------------------

class AutDG:
    """A Hopf endomorphism of DG in structured (u, b; a, v) form."""

    __slots__ = ("ctx", "ustar", "bidx", "a", "v", "_phi", "_key")

    def __init__(self, ctx, ustar, bidx, a, v):
        self.ctx = ctx
        self.ustar = tuple(ustar)
        self.bidx = tuple(bidx)
        self.a = a
        self.v = tuple(v)
        self._phi = None
        self._key = (self.ustar, self.bidx, a.A, a.psi, self.v)

    @property
    def G(self):
        return self.ctx.G

    @property
    def N(self):
        return self.ctx.N

    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, AutDG) and self.ctx is other.ctx and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"AutDG({self.G.name}, u*={list(self.ustar)}, b={list(self.bidx)}, A={list(self.a.A)}, v={list(self.v)})"

    def b_exp(self, h, g):
        return self.ctx.chars[self.bidx[h]][g]

    def b_table(self):
        return [list(self.ctx.chars[i]) for i in self.bidx]

    def is_identity(self):
        return self == self.ctx.identity()

    # the induced map on DG
    def phi_col(self, g, h):
        ctx, G = self.ctx, self.ctx.G
        n, m, inv = ctx.n, G.mul, G.inv
        acols = ctx.a_cols(self.a)
        row = ctx.chars[self.bidx[h]]
        vh = self.v[h]
        out = {}
        for x in range(n):
            col = acols[m[inv[self.ustar[x]]][g]]
            if not col:
                continue
            bx = ctx.roots[row[x]]
            for z, c in col.items():
                out[x * n + m[z][vh]] = bx * c
        return out

    def phi(self):
        if self._phi is None:
            D = self.ctx.hopf("DG")
            n = self.ctx.n
            self._phi = LinMap(D, D, [self.phi_col(g, h) for g in range(n) for h in range(n)])
        return self._phi

    def phi_hash(self):
        cols = self.phi().cols
        text = json.dumps([sorted((k, str(c)) for k, c in col.items()) for col in cols])
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def linmaps(self):
        """The four blocks as linear maps u: k^G->k^G, b: kG->k^G, a: k^G->kG, v: kG->kG."""
        ctx = self.ctx
        kG, kd = ctx.hopf("kG"), ctx.hopf("kdualG")
        n, one = ctx.n, kG.one
        ucols = [{} for _ in range(n)]
        for x in range(n):
            ucols[self.ustar[x]][x] = one
        u = LinMap(kd, kd, ucols)
        b = LinMap(kG, kd, [{x: ctx.roots[ctx.chars[i][x]] for x in range(n)} for i in self.bidx])
        a = LinMap(kd, kG, ctx.a_cols(self.a))
        v = LinMap(kG, kG, [{self.v[h]: one} for h in range(n)])
        return u, b, a, v

    def gamma_map(self):
        """Action on the group-likes chi x h, indexed chi * n + h."""
        ctx, G = self.ctx, self.ctx.G
        n, N = ctx.n, ctx.N
        out = []
        for i, chi in enumerate(ctx.chars):
            pulled = [chi[self.ustar[x]] for x in range(n)]
            ai = ctx.a_apply(self.a, chi)
            for h in range(n):
                b = ctx.chars[self.bidx[h]]
                j = ctx.char_index[tuple((p + q) % N for p, q in zip(pulled, b))]
                out.append(j * n + G.mul[ai][self.v[h]])
        return out

    # group structure
    def compose(self, other):
        return compose(self, other)

    def __mul__(self, other):
        return compose(self, other)

    def inverse(self):
        return invert(self)

    def power(self, k):
        if k < 0:
            return invert(self).power(-k)
        out, base = self.ctx.identity(), self
        while k:
            if k & 1:
                out = compose(out, base)
            base = compose(base, base)
            k >>= 1
        return out

    def order(self):
        k, cur = 1, self
        while not cur.is_identity():
            cur = compose(cur, self)
            k += 1
            if k > 10 ** 6:
                raise AutError("element order too large")
        return k

    def to_json(self):
        return {
            "group": self.G.name,
            "conductor": self.N,
            "ustar": list(self.ustar),
            "b": self.b_table(),
            "a": {"A": list(self.a.A), "psi": list(self.a.psi)},
            "v": list(self.v),
            "phi_hash": self.phi_hash(),
        }


def from_json(G, data):
    ctx = context(G, data.get("conductor"))
    bidx = [ctx.char_of(row) for row in data["b"]]
    a = ADatum(tuple(data["a"]["A"]), tuple(data["a"]["psi"]))
    return from_components(ctx, data["ustar"], bidx, a, data["v"])


# ---- validation ------------------------------------------------------------------------

def check_conditions(ctx, ustar, bidx, a, v):
    """Raise ConditionViolated for the first failing compatibility condition."""
    G = ctx.G
    n, m, inv = ctx.n, G.mul, G.inv
    A = set(a.A)
    for w in sorted(set(ustar)):
        for g in range(n):
            y1, y2 = m[inv[w]][g], m[g][inv[w]]
            if (y1 in A or y2 in A) and y1 != y2:
                raise ConditionViolated(1, {"g": g, "w": w})
    for g in range(n):
        for x in range(n):
            if ustar[G.conj(x, v[g])] != G.conj(ustar[x], g):
                raise ConditionViolated(2, {"g": g, "x": x})
    sd = ctx.sub_chars(a.A)
    N = ctx.N
    for g in range(n):
        vg, vgi = v[g], inv[v[g]]
        for y in range(n):
            y2 = m[m[g][y]][inv[g]]
            if (y in A) != (y2 in A):
                raise ConditionViolated(3, {"g": g, "y": y})
            if y not in A:
                continue
            j, j2 = sd.pos[y], sd.pos[y2]
            lhs = {m[m[vg][z]][vgi]: -sd.rows[i][j] % N for i, z in enumerate(a.psi)}
            rhs = {z: -sd.rows[i][j2] % N for i, z in enumerate(a.psi)}
            if lhs != rhs:
                raise ConditionViolated(3, {"g": g, "y": y})


def check_shapes(ctx, ustar, bidx, a, v):
    G = ctx.G
    n = ctx.n
    if len(ustar) != n or len(bidx) != n or len(v) != n:
        raise NotHopfMorphism("component length differs from |G|")
    if not GroupHom(G, G, list(ustar), check=False).is_hom():
        raise NotHopfMorphism("u is not dual to a group endomorphism")
    if not GroupHom(G, G, list(v), check=False).is_hom():
        raise NotHopfMorphism("v is not a group endomorphism")
    if not GroupHom(G, ctx.char_group, list(bidx), check=False).is_hom():
        raise NotHopfMorphism("b is not a homomorphism G -> dual(G)")
    try:
        check_a(ctx, a)
    except DatumInvalid as e:
        raise NotHopfMorphism(f"a is not a Hopf map: {e}") from None


def _is_prime(p):
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


def _prime_roots(N, count):
    """The first `count` primes p = 1 mod N below 2^31, each with an element of order N."""
    got = _PRIMES.setdefault(N, [])
    p = got[-1][0] - N if got else (1 << 31) // N * N + 1 - N
    qs = [q for q in range(2, N + 1) if N % q == 0 and _is_prime(q)]
    while len(got) < count:
        if _is_prime(p):
            g = 2
            while True:
                w = pow(g, (p - 1) // N, p)
                if all(pow(w, N // q, p) != 1 for q in qs):
                    break
                g += 1
            got.append((p, w))
        p -= N
    return got[:count]


def _rank_mod(A, p):
    A = np.array(A, dtype=np.int64) % p
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if not len(nz):
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        f = A[:, c].copy()
        f[r] = 0
        A = (A - np.outer(f, A[r]) % p) % p
        r += 1
    return r


def phi_matrix_mod(M, p, w):
    """phi with |A| * entries reduced to F_p under zeta_N -> w."""
    ctx, G = M.ctx, M.ctx.G
    n, N = ctx.n, ctx.N
    pw = [pow(w, k, p) for k in range(N)]
    sd = ctx.sub_chars(M.a.A)
    acols = [{} for _ in range(n)]
    for j, y in enumerate(M.a.A):
        for i, z in enumerate(M.a.psi):
            acols[y][z] = (acols[y].get(z, 0) + pw[-sd.rows[i][j] % N]) % p
    d = n * n
    mat = [[0] * d for _ in range(d)]
    for g in range(n):
        for h in range(n):
            col = g * n + h
            row = ctx.chars[M.bidx[h]]
            for x in range(n):
                for z, c in acols[G.mul[G.inv[M.ustar[x]]][g]].items():
                    mat[x * n + G.mul[z][M.v[h]]][col] = pw[row[x]] * c % p
    return mat


def _norm_bits(M):
    """log2 of a Hadamard bound for |Norm det(|A| phi)|."""
    n, k = M.ctx.n, len(M.a.A)
    per_col = math.log2(k) + 0.5 * math.log2(n * k)
    return euler_phi(M.ctx.N) * n * n * per_col


def is_bijective(M, exact=False):
    """Bijectivity of phi.

    phi permutes the group-likes chi x h (chi linear); injectivity there is
    necessary, and sufficient for abelian G where they span DG.  Otherwise phi (scaled by |A|) is reduced modulo primes p = 1 mod N.  Full rank
    at one prime proves invertibility; deficiency at enough primes that their
    product exceeds a Hadamard bound on the norm of the determinant proves it is 0.
    exact=True uses elimination over Q(zeta_N) instead.
    """
    ctx = M.ctx
    d = ctx.n ** 2
    if exact:
        return rank(M.phi().matrix()) == d
    gamma_injective = len(set(M.gamma_map())) == len(ctx.chars) * ctx.n
    if ctx.G.is_abelian() or not gamma_injective:
        # group-likes are linearly independent, so injectivity on them is necessary
        return gamma_injective
    need = _norm_bits(M)
    bits, count = 0.0, 1
    while True:
        for p, w in _prime_roots(ctx.N, count)[count - 1:]:
            if _rank_mod(phi_matrix_mod(M, p, w), p) == d:
                return True
            bits += math.log2(p)
        if bits > need:
            return False
        count += 1


def from_components(ctx, ustar, bidx, a, v, check=True):
    """Validate (u*, b, a, v) and return the automorphism.

    check="conditions" skips the bijectivity test, for data whose inverse is
    known to lie in the same family.
    """
    if not isinstance(ctx, Context):
        ctx = context(ctx)
    M = AutDG(ctx, ustar, bidx, a, v)
    if check:
        check_shapes(ctx, M.ustar, M.bidx, a, M.v)
        check_conditions(ctx, M.ustar, M.bidx, a, M.v)
        if check != "conditions" and not is_bijective(M):
            raise NotBijective("induced map on DG is not bijective")
    return M


def from_maps(G, ustar, b_table, a, v, N=None):
    """Convenience wrapper taking GroupHoms or lists and an exponent table b[h][g]."""
    ctx = context(G, N)
    us = ustar.map if isinstance(ustar, GroupHom) else list(ustar)
    vv = v.map if isinstance(v, GroupHom) else list(v)
    if b_table is None:
        bidx = [0] * ctx.n
    else:
        bidx = [ctx.char_of(row) for row in b_table]
    return from_components(ctx, us, bidx, a or trivial_a(), vv)


# ---- composition: three routes ---------------------------------------------------------

def _same(M, M2):
    if M.ctx is not M2.ctx:
        raise GroupMismatch("automorphisms of different doubles or conductors")


def compose(M, M2):
    """Structured product M . M2 (apply M2 first)."""
    _same(M, M2)
    ctx, G = M.ctx, M.ctx.G
    n, N, m = ctx.n, ctx.N, G.mul
    us, us2 = M.ustar, M2.ustar
    chars = ctx.chars
    ustar = []
    for g in range(n):
        chi_g = [chars[M.bidx[h]][g] for h in range(n)]
        ustar.append(m[us2[us[g]]][ctx.a_transpose(M2.a, chi_g)])
    bidx = []
    for h in range(n):
        r2, r = chars[M2.bidx[h]], chars[M.bidx[M2.v[h]]]
        bidx.append(ctx.char_index[tuple((r2[us[g]] + r[g]) % N for g in range(n))])
    v = [m[ctx.a_apply(M.a, chars[M2.bidx[h]])][M.v[M2.v[h]]] for h in range(n)]
    A0 = G.generate([us2[y] for y in M.a.A] + list(M2.a.A))
    sd0, sd, sd2 = ctx.sub_chars(A0), ctx.sub_chars(M.a.A), ctx.sub_chars(M2.a.A)
    psi0 = []
    for row in sd0.rows:
        p = M.a.psi[sd.index[tuple(row[sd0.pos[us2[y]]] for y in M.a.A)]]
        q = M.v[M2.a.psi[sd2.index[tuple(row[sd0.pos[y]] for y in M2.a.A)]]]
        psi0.append(m[p][q])
    a = normalize_a(ctx, A0, psi0)
    return AutDG(ctx, ustar, bidx, a, v)


def compose_blocks(M, M2):
    """Product via the block formula on linear maps, with convolution as addition."""
    _same(M, M2)
    u, b, a, v = M.linmaps()
    u2, b2, a2, v2 = M2.linmaps()
    U = convolve(u.compose(u2), b.compose(a2))
    B = convolve(u.compose(b2), b.compose(v2))
    A = convolve(a.compose(u2), v.compose(a2))
    V = convolve(a.compose(b2), v.compose(v2))
    return from_linmaps(M.ctx, U, B, A, V)


def compose_phi(M, M2):
    """Product via composition of the induced maps on DG."""
    _same(M, M2)
    return extract_from_phi(M.ctx, M.phi().compose(M2.phi()))


def from_linmaps(ctx, u, b, a, v):
    """Structured data from the four block maps."""
    n, G = ctx.n, ctx.G
    one = ctx.roots[0]
    ustar = [None] * n
    for g, col in enumerate(u.cols):
        for x, c in col.items():
            if c != one or ustar[x] is not None:
                raise NotHopfMorphism("u is not dual to a map of G")
            ustar[x] = g
    if None in ustar:
        raise NotHopfMorphism("u is not dual to a map of G")
    bidx = []
    for col in b.cols:
        exps = []
        for x in range(n):
            r = col.get(x)
            e = r.as_root_exp() if r is not None else None
            if e is None:
                raise NotHopfMorphism("b(h) is not a character")
            exps.append(e.exp)
        bidx.append(ctx.char_of(exps))
    v_ = []
    for col in v.cols:
        if len(col) != 1 or list(col.values())[0] != one:
            raise NotHopfMorphism("v(h) is not a group element")
        v_.append(next(iter(col)))
    return AutDG(ctx, ustar, bidx, _a_from_cols(ctx, a.cols), v_)


def _a_from_cols(ctx, cols):
    one = ctx.roots[0]
    A = tuple(y for y in range(ctx.n) if cols[y])
    if set(ctx.G.generate(list(A))) != set(A):
        raise NotHopfMorphism("support of a is not a subgroup")
    sd = ctx.sub_chars(A)
    psi = []
    for row in sd.rows:
        out = {}
        for j, y in enumerate(A):
            for z, c in cols[y].items():
                out[z] = out.get(z, ctx.roots[0] - ctx.roots[0]) + ctx.roots[row[j]] * c
        out = {z: c for z, c in out.items() if c}
        if len(out) != 1 or list(out.values())[0] != one:
            raise NotHopfMorphism("a does not send characters to group elements")
        psi.append(next(iter(out)))
    return normalize_a(ctx, A, psi)


def extract_from_phi(ctx, phi):
    """Read (u*, b, a, v) off a map on DG via (id (x) eps) and (eps (x) id)."""
    n = ctx.n
    zero = ctx.roots[0] - ctx.roots[0]
    kG, kd = ctx.hopf("kG"), ctx.hopf("kdualG")

    def left(col):  # (id (x) eps)
        out = {}
        for k, c in col.items():
            out[k // n] = out.get(k // n, zero) + c
        return {x: c for x, c in out.items() if c}

    def right(col):  # (eps (x) id)
        return {k % n: c for k, c in col.items() if k // n == 0}

    def total(h):
        out = {}
        for g in range(n):
            for k, c in phi.cols[g * n + h].items():
                out[k] = out.get(k, zero) + c
        return {k: c for k, c in out.items() if c}

    u = LinMap(kd, kd, [left(phi.cols[g * n]) for g in range(n)])
    a = LinMap(kd, kG, [right(phi.cols[g * n]) for g in range(n)])
    tots = [total(h) for h in range(n)]
    b = LinMap(kG, kd, [left(t) for t in tots])
    v = LinMap(kG, kG, [right(t) for t in tots])
    return from_linmaps(ctx, u, b, a, v)


def invert(M):
    """Inverse as a power of M (the automorphism group is finite)."""
    prev, cur = M.ctx.identity(), M
    k = 1
    while not cur.is_identity():
        prev, cur = cur, compose(cur, M)
        k += 1
        if k > 10 ** 6:
            raise AutError("element order too large")
    return prev


def invert_phi(M):
    """Inverse through an exact linear solve of phi, then extraction."""
    ctx = M.ctx
    mat = M.phi().matrix()
    d = ctx.n ** 2
    D = ctx.hopf("DG")
    cols = []
    for j in range(d):
        e = [D.zero] * d
        e[j] = D.one
        x = solve_linear(mat, e)
        if x is None:
            raise NotInvertible("phi is singular")
        cols.append({i: c for i, c in enumerate(x) if c})
    return extract_from_phi(ctx, LinMap(D, D, cols))


# ---- subgroup elements -------------------------------------------------------------------

def _map_of(f):
    return list(f.map) if isinstance(f, GroupHom) else list(f)


def make_V(G, x, N=None):
    """e_g x h -> e_{x(g)} x x(h) for x in Aut(G)."""
    ctx = context(G, N)
    x = _map_of(x)
    if not GroupHom(G, G, x, check=False).is_hom() or len(set(x)) != ctx.n:
        raise DatumInvalid("V needs an automorphism of G")
    xinv = [0] * ctx.n
    for g, y in enumerate(x):
        xinv[y] = g
    return from_components(ctx, xinv, [0] * ctx.n, trivial_a(), x, check="conditions")


def make_Vc(G, w, N=None):
    """e_g x h -> e_{w(g)} x h for a central automorphism w."""
    ctx = context(G, N)
    w = _map_of(w)
    Z = set(ctx.center)
    if not GroupHom(G, G, w, check=False).is_hom() or len(set(w)) != ctx.n:
        raise DatumInvalid("Vc needs an automorphism of G")
    if any(G.mul[w[g]][G.inv[g]] not in Z for g in range(ctx.n)):
        raise DatumInvalid("w(g) g^-1 is not central")
    winv = [0] * ctx.n
    for g, y in enumerate(w):
        winv[y] = g
    return from_components(ctx, winv, [0] * ctx.n, trivial_a(), list(range(ctx.n)), check="conditions")


def make_B(G, beta, N=None):
    """e_g x h -> beta(h)(g) e_g x h; beta[h][g] is an exponent mod N."""
    ctx = context(G, N)
    try:
        bidx = [ctx.char_of(row) for row in beta]
    except DatumInvalid:
        raise DatumInvalid("beta(h) is not a linear character") from None
    if len(bidx) != ctx.n or not GroupHom(G, ctx.char_group, bidx, check=False).is_hom():
        raise DatumInvalid("beta is not multiplicative in h")
    return from_components(ctx, list(range(ctx.n)), bidx, trivial_a(), list(range(ctx.n)), check="conditions")


def make_E(G, a, N=None):
    """e_g x h -> sum_{g1 g2 = g} e_{g1} x a(e_{g2}) h for A, psi central."""
    ctx = context(G, N)
    Z = set(ctx.center)
    if not set(a.A) <= Z or not set(a.psi) <= Z:
        raise DatumInvalid("E needs A and psi(A^) inside the center")
    try:
        check_a(ctx, a)
    except DatumInvalid:
        raise
    n = ctx.n
    return from_components(ctx, list(range(n)), [0] * n, a, list(range(n)), check="conditions")


def make_subgroup_element(G, kind, datum, N=None):
    makers = {"V": make_V, "Vc": make_Vc, "B": make_B, "E": make_E}
    if kind not in makers:
        raise ValueError(f"unknown subgroup {kind!r}")
    return makers[kind](G, datum, N)


# membership predicates
def in_B(M):
    n = M.ctx.n
    return M.ustar == tuple(range(n)) and M.v == tuple(range(n)) and M.a.is_trivial()


def in_E(M):
    n = M.ctx.n
    Z = set(M.ctx.center)
    return (M.ustar == tuple(range(n)) and M.v == tuple(range(n)) and set(M.bidx) == {0}
            and set(M.a.A) <= Z and set(M.a.psi) <= Z)


def in_V(M):
    n = M.ctx.n
    if set(M.bidx) != {0} or not M.a.is_trivial() or len(set(M.v)) != n:
        return False
    return all(M.ustar[M.v[g]] == g for g in range(n))


def in_Vc(M):
    G, n = M.G, M.ctx.n
    Z = set(M.ctx.center)
    if set(M.bidx) != {0} or not M.a.is_trivial() or M.v != tuple(range(n)) or len(set(M.ustar)) != n:
        return False
    return all(G.mul[M.ustar[g]][G.inv[g]] in Z for g in range(n))


def in_VcV(M):
    """diag(u, v) with u* = (v^-1 composed with a central automorphism)."""
    G, n = M.G, M.ctx.n
    Z = set(M.ctx.center)
    if set(M.bidx) != {0} or not M.a.is_trivial() or len(set(M.v)) != n or len(set(M.ustar)) != n:
        return False
    # w = (u*)^-1 after v^-1 ... check that g -> v(u*(g)) is central
    return all(G.mul[M.v[M.ustar[g]]][G.inv[g]] in Z for g in range(n))


def in_VcVB(M):
    """(Vc x| V) x| B: a trivial and diag part in VcV."""
    n = M.ctx.n
    if not M.a.is_trivial():
        return False
    return in_VcV(AutDG(M.ctx, M.ustar, (0,) * n, M.a, M.v))


def in_VcVE(M):
    n = M.ctx.n
    Z = set(M.ctx.center)
    if set(M.bidx) != {0} or not (set(M.a.A) <= Z and set(M.a.psi) <= Z):
        return False
    return in_VcV(AutDG(M.ctx, M.ustar, M.bidx, trivial_a(), M.v))


MEMBERSHIP = {"V": in_V, "Vc": in_Vc, "B": in_B, "E": in_E, "VcV": in_VcV,
              "VcVB": in_VcVB, "VcVE": in_VcVE}


# ---- reflections ---------------------------------------------------------------------------

@dataclass
class ReflectionDatum:
    """G = H x C with C abelian; delta[i][j] = exponent of delta(C[i])(C[j]); nu[i] = nu(C[i])."""
    H: tuple
    C: tuple
    delta: tuple
    nu: tuple = None
    N: int = None

    def __post_init__(self):
        self.H = tuple(sorted(self.H))
        self.C = tuple(sorted(self.C))
        self.delta = tuple(tuple(r) for r in self.delta)
        if self.nu is None:
            self.nu = (0,) * len(self.C)
        self.nu = tuple(self.nu)

    @property
    def twisted(self):
        return any(x != 0 for x in self.nu)

    def to_json(self):
        return {"H": list(self.H), "C": list(self.C), "delta": [list(r) for r in self.delta],
                "nu": list(self.nu), "twisted": self.twisted}


def split_map(G, H, C):
    """g -> (g_H, g_C) for an internal direct product G = H x C."""
    out = {}
    for h in H:
        for c in C:
            out[G.mul[h][c]] = (h, c)
    return out


def validate_reflection(G, d, N=None):
    ctx = context(G, N or d.N)
    H, C = d.H, d.C
    if not (G.is_normal(H) and G.is_normal(C)):
        raise DatumInvalid("H and C must be normal")
    if len(H) * len(C) != G.order or set(H) & set(C) != {0}:
        raise DatumInvalid("G is not the direct product H x C")
    if set(G.generate(list(H))) != set(H) or set(G.generate(list(C))) != set(C):
        raise DatumInvalid("H or C is not a subgroup")
    if any(G.mul[a][b] != G.mul[b][a] for a in C for b in G.elements):
        raise DatumInvalid("C must be central (abelian direct factor)")
    k = len(C)
    pos = {c: i for i, c in enumerate(C)}
    N = ctx.N
    dl = d.delta
    if len(dl) != k or any(len(r) != k for r in dl):
        raise DatumInvalid("delta has the wrong shape")
    for i, c in enumerate(C):
        for j, c2 in enumerate(C):
            cc = pos[G.mul[c][c2]]
            for t in range(k):
                if dl[cc][t] % N != (dl[i][t] + dl[j][t]) % N or dl[t][cc] % N != (dl[t][i] + dl[t][j]) % N:
                    raise DatumInvalid("delta is not a bicharacter")
    if len({tuple(x % N for x in r) for r in dl}) != k:
        raise DatumInvalid("delta is degenerate")
    nu = d.nu
    if len(nu) != k or any(x not in pos for x in nu):
        raise DatumInvalid("nu must map C to C")
    if any(nu[pos[G.mul[c][c2]]] != G.mul[nu[i]][nu[j]] for i, c in enumerate(C) for j, c2 in enumerate(C)):
        raise DatumInvalid("nu is not a homomorphism")
    cur = list(C)
    for _ in range(k + 1):
        if all(x == 0 for x in cur):
            break
        cur = [nu[pos[x]] for x in cur]
    else:
        raise DatumInvalid("nu is not nilpotent")
    return ctx


def standard_delta(G, C, N=None):
    """The diagonal pairing delta(c)(c') = zeta^(sum k_i k'_i N/d_i) on invariant-factor coordinates."""
    N = N or G.exponent()
    Csub, emb = G.subgroup(C)
    dec = abelian_decomposition(Csub)
    coords = dec.coordinates()
    k = len(C)
    return tuple(tuple(sum(x * y * (N // dd) for x, y, dd in zip(coords[i], coords[j], dec.invariant_factors)) % N
                       for j in range(k)) for i in range(k))


def make_reflection(G, d, N=None):
    ctx = validate_reflection(G, d, N)
    n, m = ctx.n, G.mul
    spl = split_map(G, d.H, d.C)
    pos = {c: i for i, c in enumerate(d.C)}
    ustar = [spl[g][0] for g in range(n)]
    bidx = []
    for g in range(n):
        i = pos[spl[g][1]]
        bidx.append(ctx.char_of([d.delta[i][pos[spl[x][1]]] for x in range(n)]))
    sd = ctx.sub_chars(d.C)
    psi = [None] * len(d.C)
    for i, c in enumerate(d.C):
        psi[sd.index[tuple(x % ctx.N for x in d.delta[i])]] = c
    a = ADatum(d.C, tuple(psi))
    v = [m[spl[g][0]][d.nu[pos[spl[g][1]]]] for g in range(n)]
    return from_components(ctx, ustar, bidx, a, v)


# ---- enumeration ------------------------------------------------------------------------

def a_data(ctx):
    """All (A, psi) with A <= Z(G) and psi: A^ -> Z(G) injective."""
    G = ctx.G
    Z = set(ctx.center)
    Zs, zemb = G.subgroup(sorted(Z))
    out = []
    for A in subgroups(G):
        if not set(A) <= Z:
            continue
        H, _ = G.subgroup(A)
        D = dual_group(H)
        s = ctx.N // D.conductor
        sd = ctx.sub_chars(A)
        for f in enumerate_homs(D.group, Zs, "injective"):
            psi = [None] * len(A)
            for i, row in enumerate(D.table):
                psi[sd.index[tuple(e * s % ctx.N for e in row)]] = zemb.map[f.map[i]]
            out.append(ADatum(tuple(A), tuple(psi)))
    return out


def b_data(ctx):
    return [tuple(f.map) for f in enumerate_homs(ctx.G, ctx.char_group, "all")]


def enumerate_all(G, N=None, limit=ENUM_LIMIT):
    """Every Hopf automorphism of DG, by filtering structured candidates."""
    if G.order > limit:
        raise SizeLimit(f"automorphism enumeration limited to |G| <= {limit}")
    ctx = context(G, N)
    n, m, inv = ctx.n, G.mul, G.inv
    ends = [tuple(f.map) for f in endomorphisms(G)]
    adata = a_data(ctx)
    bdata = b_data(ctx)
    out = []
    for us in ends:
        for v in ends:
            if any(us[G.conj(x, v[g])] != G.conj(us[x], g) for g in range(n) for x in range(n)):
                continue
            for a in adata:
                try:
                    check_conditions(ctx, us, bdata[0], a, v)
                except ConditionViolated:
                    continue
                for b in bdata:
                    M = AutDG(ctx, us, b, a, v)
                    if is_bijective(M):
                        out.append(M)
    out.sort(key=lambda M: M.key())
    return out


# ---- inner automorphisms and witnesses -----------------------------------------------------

def grouplike(ctx, chi_index, t):
    """The group-like chi x t of DG."""
    n = ctx.n
    chi = ctx.chars[chi_index]
    return {x * n + t: ctx.roots[chi[x]] for x in range(n)}


def conjugation_phi(ctx, x, xinv):
    D = ctx.hopf("DG")
    return LinMap(D, D, [D.multiply(D.multiply(x, {i: D.one}), xinv) for i in range(D.dim)])


def inner_autos(G, N=None, with_sources=False):
    """Distinct automorphisms given by conjugation with group-likes chi x t."""
    ctx = context(G, N)
    G = ctx.G
    seen = {}
    for ci in range(len(ctx.chars)):
        cinv = ctx.char_index[tuple(-e % ctx.N for e in ctx.chars[ci])]
        for t in range(ctx.n):
            x = grouplike(ctx, ci, t)
            xinv = grouplike(ctx, cinv, G.inv[t])
            M = extract_from_phi(ctx, conjugation_phi(ctx, x, xinv))
            seen.setdefault(M, []).append((ci, t))
    out = sorted(seen, key=lambda M: M.key())
    if with_sources:
        return [(M, seen[M]) for M in out]
    return out


@dataclass
class WitnessResult:
    ok: bool
    reason: str = ""
    failing: object = None

    def __bool__(self):
        return self.ok


def dg_inverse(ctx, x):
    """Two-sided inverse of x in DG by a linear solve."""
    D = ctx.hopf("DG")
    d = D.dim
    cols = [D.multiply(x, {j: D.one}) for j in range(d)]
    mat = [[cols[j].get(i, D.zero) for j in range(d)] for i in range(d)]
    rhs = [D.zero] * d
    for k, c in D.unit:
        rhs[k] = c
    y = solve_linear(mat, rhs)
    if y is None:
        raise NotInvertible("x is not invertible in DG")
    y = {i: c for i, c in enumerate(y) if c}
    if D.multiply(y, x) != D.unit_elem():
        raise NotInvertible("x has no two-sided inverse")
    return y


def internal_witness_check(x, M, sigma=None):
    """Check that x implements phi = x (.) x^-1 with Delta(x)(x^-1 (x) x^-1) = sigma."""
    ctx = M.ctx
    D = ctx.hopf("DG")
    y = dg_inverse(ctx, x)
    phi = M.phi()
    for i in range(D.dim):
        if D.multiply(D.multiply(x, {i: D.one}), y) != phi.cols[i]:
            return WitnessResult(False, "phi differs from conjugation by x", i)
    xx = {(i, j): a * b for i, a in x.items() for j, b in x.items()}
    T = D.tensor_multiply(xx, D.coproduct(y))
    for i in range(D.dim):
        dh = D.coproduct({i: D.one})
        if D.tensor_multiply(T, dh) != D.tensor_multiply(dh, T):
            return WitnessResult(False, "internal condition fails", i)
    if sigma is not None:
        yy = {(i, j): a * b for i, a in y.items() for j, b in y.items()}
        s = D.tensor_multiply(D.coproduct(x), yy)
        for i in range(D.dim):
            for j in range(D.dim):
                if sigma.table[i][j] != s.get((i, j), D.zero):
                    return WitnessResult(False, "sigma differs from Delta(x)(x^-1 (x) x^-1)", (i, j))
    return WitnessResult(True)


def from_gamma(ctx, gmap):
    """Structured data from the permutation of group-likes (abelian G).

    gmap[chi * n + h] = chi' * n + h' is the image of chi x h.
    """
    G, n = ctx.G, ctx.n
    chars = ctx.chars
    if not G.is_abelian():
        raise ValueError("group-likes determine phi only for abelian G")
    sig = {tuple(chi[y] for chi in chars): y for y in range(n)}
    ustar = []
    for x in range(n):
        ustar.append(sig[tuple(chars[gmap[i * n] // n][x] for i in range(len(chars)))])
    bidx = [gmap[h] // n for h in range(n)]
    v = [gmap[h] % n for h in range(n)]
    A0 = tuple(range(n))
    sd = ctx.sub_chars(A0)
    psi0 = [gmap[ctx.char_index[row] * n] % n for row in sd.rows]
    return AutDG(ctx, ustar, bidx, normalize_a(ctx, A0, psi0), v)
