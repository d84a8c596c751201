"""Finite-dimensional Hopf algebras by structure constants: kG, k^G, the
double DG and its dual DG*, with axiom checks, convolution and cocycle twists.

Elements are sparse dicts {basis index: CycNum}.  Structure constants are
stored sparsely: mul[i][j] and antipode[i] are tuples of (k, coeff) pairs,
comul[i] is a tuple of (j, k, coeff) triples.
"""

from .linalg import solve_sparse, rank
from .scalar import CycNum


class ShapeMismatch(ValueError):
    pass


class NotACocycle(ValueError):
    pass


class NotInvertible(ValueError):
    pass


class HopfData:
    def __init__(self, kind, group, N, labels, mul, unit, comul, counit, antipode):
        self.kind = kind
        self.group = group
        self.N = N
        self.dim = len(labels)
        self.labels = labels
        self.mul = mul
        self.unit = unit
        self.comul = comul
        self.counit = counit
        self.antipode = antipode
        self.zero = CycNum.zero(N)
        self.one = CycNum.one(N)

    def __repr__(self):
        return f"HopfData({self.kind}, {self.group.name}, dim={self.dim}, N={self.N})"

    # element arithmetic
    def basis(self, i):
        return {i: self.one}

    def unit_elem(self):
        return dict(self.unit)

    def multiply(self, x, y):
        out = {}
        for i, a in x.items():
            row = self.mul[i]
            for j, b in y.items():
                ab = a * b
                for k, c in row[j]:
                    out[k] = out.get(k, self.zero) + ab * c
        return _clean(out)

    def coproduct(self, x):
        out = {}
        for i, a in x.items():
            for j, k, c in self.comul[i]:
                out[(j, k)] = out.get((j, k), self.zero) + a * c
        return _clean(out)

    def apply_antipode(self, x):
        out = {}
        for i, a in x.items():
            for k, c in self.antipode[i]:
                out[k] = out.get(k, self.zero) + a * c
        return _clean(out)

    def eps(self, x):
        s = self.zero
        for i, a in x.items():
            s = s + a * self.counit[i]
        return s

    def tensor_multiply(self, X, Y):
        out = {}
        for (i1, i2), a in X.items():
            for (j1, j2), b in Y.items():
                ab = a * b
                for k1, c1 in self.mul[i1][j1]:
                    for k2, c2 in self.mul[i2][j2]:
                        key = (k1, k2)
                        out[key] = out.get(key, self.zero) + ab * c1 * c2
        return _clean(out)

    def iterated_coproduct(self, i):
        """Delta^2 of a basis element as {(j, k, l): coeff}."""
        out = {}
        for j, m, c in self.comul[i]:
            for k, l, d in self.comul[m]:
                key = (j, k, l)
                out[key] = out.get(key, self.zero) + c * d
        return _clean(out)

    def with_mul(self, mul, kind=None):
        return HopfData(kind or self.kind, self.group, self.N, self.labels, mul,
                        self.unit, self.comul, self.counit, self.antipode)

    def to_json(self):
        def s(c):
            return str(c)
        return {
            "kind": self.kind, "group": self.group.name, "conductor": self.N, "dim": self.dim,
            "labels": self.labels,
            "mul": [[i, j, k, s(c)] for i in range(self.dim) for j in range(self.dim)
                    for k, c in self.mul[i][j]],
            "unit": [[k, s(c)] for k, c in self.unit],
            "comul": [[i, j, k, s(c)] for i in range(self.dim) for j, k, c in self.comul[i]],
            "counit": [[i, s(c)] for i, c in enumerate(self.counit) if c],
            "antipode": [[i, k, s(c)] for i in range(self.dim) for k, c in self.antipode[i]],
        }


def _clean(d):
    return {k: v for k, v in d.items() if v}


# ---- constructions ------------------------------------------------------------

def build(kind, G, N=None):
    """Build kG, k^G ('kdualG'), DG or DG* ('DGstar') at conductor N."""
    N = N or G.exponent()
    one = CycNum.one(N)
    n = G.order
    m, inv = G.mul, G.inv
    if kind == "kG":
        labels = list(G.labels)
        mul = [tuple(((m[g][h], one),) for h in range(n)) for g in range(n)]
        unit = ((0, one),)
        comul = [((g, g, one),) for g in range(n)]
        counit = [one] * n
        antipode = [((inv[g], one),) for g in range(n)]
    elif kind == "kdualG":
        labels = [f"e[{l}]" for l in G.labels]
        mul = [tuple((((x, one),) if x == y else ()) for y in range(n)) for x in range(n)]
        unit = tuple((x, one) for x in range(n))
        comul = [tuple((x1, m[inv[x1]][x], one) for x1 in range(n)) for x in range(n)]
        counit = [one if x == 0 else CycNum.zero(N) for x in range(n)]
        antipode = [((inv[x], one),) for x in range(n)]
    elif kind == "DG":
        # basis e_x x y at index x*n + y
        labels = [f"e[{G.labels[x]}]x{G.labels[y]}" for x in range(n) for y in range(n)]
        mul = []
        for x in range(n):
            for y in range(n):
                row = []
                for x2 in range(n):
                    target = m[m[y][x2]][inv[y]]
                    for y2 in range(n):
                        row.append((((x * n + m[y][y2], one),) if target == x else ()))
                mul.append(tuple(row))
        unit = tuple((x * n, one) for x in range(n))
        comul = [tuple((x1 * n + y, m[inv[x1]][x] * n + y, one) for x1 in range(n))
                 for x in range(n) for y in range(n)]
        counit = [one if x == 0 else CycNum.zero(N) for x in range(n) for y in range(n)]
        antipode = [((G.prod(inv[y], inv[x], y) * n + inv[y], one),)
                    for x in range(n) for y in range(n)]
    elif kind == "DGstar":
        # basis x x e_y at index x*n + y
        labels = [f"{G.labels[x]}xe[{G.labels[y]}]" for x in range(n) for y in range(n)]
        mul = []
        for x in range(n):
            for y in range(n):
                mul.append(tuple(((((m[x][x2] * n + y, one),) if y == y2 else ()))
                                 for x2 in range(n) for y2 in range(n)))
        unit = tuple((y, one) for y in range(n))
        comul = []
        for x in range(n):
            for y in range(n):
                terms = []
                for y1 in range(n):
                    y2 = m[inv[y1]][y]
                    terms.append((x * n + y1, G.conj(x, y1) * n + y2, one))
                comul.append(tuple(terms))
        counit = [one if y == 0 else CycNum.zero(N) for x in range(n) for y in range(n)]
        antipode = [((G.prod(inv[y], inv[x], y) * n + inv[y], one),)
                    for x in range(n) for y in range(n)]
    else:
        raise ValueError(f"unknown Hopf algebra kind {kind!r}")
    return HopfData(kind, G, N, labels, mul, unit, comul, counit, antipode)


# ---- axioms -------------------------------------------------------------------

def verify_axioms(H):
    """Exhaustive exact check of all Hopf algebra axioms; first witness reported."""
    d = H.dim
    report = {}

    def record(name, witness):
        report[name] = {"pass": witness is None, "witness": witness}

    w = None
    for i in range(d):
        for j in range(d):
            ij = H.mul[i][j]
            for k in range(d):
                left = H.multiply(dict(ij), {k: H.one})
                right = H.multiply({i: H.one}, dict(H.mul[j][k]))
                if left != right:
                    w = [i, j, k]
                    break
            if w:
                break
        if w:
            break
    record("associativity", w)

    w = None
    u = H.unit_elem()
    for i in range(d):
        b = H.basis(i)
        if H.multiply(u, b) != b or H.multiply(b, u) != b:
            w = [i]
            break
    record("unit", w)

    w = None
    for i in range(d):
        left, right = {}, {}
        for j, k, c in H.comul[i]:
            for j1, j2, c1 in H.comul[j]:
                key = (j1, j2, k)
                left[key] = left.get(key, H.zero) + c * c1
            for k1, k2, c2 in H.comul[k]:
                key = (j, k1, k2)
                right[key] = right.get(key, H.zero) + c * c2
        if _clean(left) != _clean(right):
            w = [i]
            break
    record("coassociativity", w)

    w = None
    for i in range(d):
        left, right = {}, {}
        for j, k, c in H.comul[i]:
            if H.counit[j]:
                left[k] = left.get(k, H.zero) + c * H.counit[j]
            if H.counit[k]:
                right[j] = right.get(j, H.zero) + c * H.counit[k]
        if _clean(left) != H.basis(i) or _clean(right) != H.basis(i):
            w = [i]
            break
    record("counit", w)

    w = None
    coprods = [H.coproduct(H.basis(i)) for i in range(d)]
    for i in range(d):
        for j in range(d):
            ij = dict(H.mul[i][j])
            if H.coproduct(ij) != H.tensor_multiply(coprods[i], coprods[j]):
                w = [i, j]
                break
            if H.eps(ij) != H.counit[i] * H.counit[j]:
                w = [i, j]
                break
        if w:
            break
    if w is None:
        uu = {}
        for a, ca in H.unit:
            for b, cb in H.unit:
                uu[(a, b)] = ca * cb
        if H.coproduct(u) != _clean(uu) or H.eps(u) != 1:
            w = ["unit"]
    record("bialgebra", w)

    w = None
    for i in range(d):
        target = {k: c * H.counit[i] for k, c in H.unit}
        target = _clean(target)
        left, right = {}, {}
        for j, k, c in H.comul[i]:
            for kk, v in H.multiply(H.apply_antipode({j: c}), {k: H.one}).items():
                left[kk] = left.get(kk, H.zero) + v
            for kk, v in H.multiply({j: c}, H.apply_antipode({k: H.one})).items():
                right[kk] = right.get(kk, H.zero) + v
        if _clean(left) != target or _clean(right) != target:
            w = [i]
            break
    record("antipode", w)
    report["all_pass"] = all(v["pass"] for k, v in report.items())
    return report


def check_dual_pair(DG, DGs):
    """The basis pairing <e_x x y, x' x e_y'> = delta intertwines DG and DG*."""
    d = DG.dim
    # <ab, f> = <a (x) b, Delta f>  and  <a, fg> = <Delta a, f (x) g>
    cop_star = [dict(((j, k), c) for j, k, c in DGs.comul[f]) for f in range(d)]
    cop = [dict(((j, k), c) for j, k, c in DG.comul[a]) for a in range(d)]
    for a in range(d):
        for b in range(d):
            prod = dict(DG.mul[a][b])
            for f in range(d):
                if prod.get(f, DG.zero) != cop_star[f].get((a, b), DG.zero):
                    return False, ("mul/comul", a, b, f)
    for f in range(d):
        for g in range(d):
            prod = dict(DGs.mul[f][g])
            for a in range(d):
                if prod.get(a, DG.zero) != cop[a].get((f, g), DG.zero):
                    return False, ("comul/mul", f, g, a)
    return True, None


# ---- linear maps and convolution ---------------------------------------------

class LinMap:
    """Linear map src -> dst; cols[i] is the sparse image of basis element i."""

    def __init__(self, src, dst, cols):
        self.src, self.dst = src, dst
        self.cols = [_clean(dict(c)) for c in cols]
        if len(self.cols) != src.dim:
            raise ShapeMismatch("column count differs from source dimension")

    def __call__(self, x):
        out = {}
        for i, a in x.items():
            for k, c in self.cols[i].items():
                out[k] = out.get(k, self.dst.zero) + a * c
        return _clean(out)

    def compose(self, other):
        """self after other."""
        if other.dst.dim != self.src.dim:
            raise ShapeMismatch("composition shapes")
        return LinMap(other.src, self.dst, [self(c) for c in other.cols])

    def matrix(self):
        z = self.dst.zero
        return [[self.cols[j].get(i, z) for j in range(self.src.dim)] for i in range(self.dst.dim)]

    def __eq__(self, other):
        return isinstance(other, LinMap) and self.cols == other.cols

    def is_bijective(self):
        if self.src.dim != self.dst.dim:
            return False
        return rank(self.matrix()) == self.src.dim


def identity_map(H):
    return LinMap(H, H, [{i: H.one} for i in range(H.dim)])


def unit_counit(src, dst):
    """x -> eps(x) 1_dst, the unit for convolution."""
    return LinMap(src, dst, [{k: c * src.counit[i] for k, c in dst.unit} for i in range(src.dim)])


def convolve(f, g):
    """(f*g)(x) = f(x1) g(x2)."""
    if f.src is not g.src and f.src.dim != g.src.dim:
        raise ShapeMismatch("convolution needs a common source")
    if f.dst.dim != g.dst.dim:
        raise ShapeMismatch("convolution needs a common destination")
    C, A = f.src, f.dst
    cols = []
    for i in range(C.dim):
        out = {}
        for j, k, c in C.comul[i]:
            fj, gk = f.cols[j], g.cols[k]
            if not fj or not gk:
                continue
            for key, v in A.multiply(fj, gk).items():
                out[key] = out.get(key, A.zero) + c * v
        cols.append(out)
    return LinMap(C, A, cols)


# ---- functionals on H and H (x) H --------------------------------------------

class CocycleTable:
    """Two-argument scalar table sigma[i][j] on a basis of H (dense)."""

    def __init__(self, H, table):
        self.H = H
        self.table = [list(row) for row in table]

    def __call__(self, i, j):
        return self.table[i][j]

    def __eq__(self, other):
        return isinstance(other, CocycleTable) and self.table == other.table

    @classmethod
    def trivial(cls, H):
        return cls(H, [[H.counit[i] * H.counit[j] for j in range(H.dim)] for i in range(H.dim)])

    def to_json(self):
        return [[i, j, str(v)] for i, row in enumerate(self.table) for j, v in enumerate(row) if v]


def conv1(H, f, g):
    """Convolution of 1-cochains (lists indexed by basis)."""
    out = []
    for i in range(H.dim):
        s = H.zero
        for j, k, c in H.comul[i]:
            if f[j] and g[k]:
                s = s + c * f[j] * g[k]
        out.append(s)
    return out


def conv2(H, s, t):
    """(s*t)(a, b) = s(a1, b1) t(a2, b2)."""
    S, T = s.table, t.table
    d = H.dim
    out = [[H.zero] * d for _ in range(d)]
    for a in range(d):
        ca = H.comul[a]
        for b in range(d):
            cb = H.comul[b]
            acc = H.zero
            for a1, a2, c1 in ca:
                Sa, Ta = S[a1], T[a2]
                for b1, b2, c2 in cb:
                    x = Sa[b1]
                    if x:
                        y = Ta[b2]
                        if y:
                            acc = acc + c1 * c2 * x * y
            out[a][b] = acc
    return CocycleTable(H, out)


def conv_inverse1(H, f):
    """Convolution inverse of a 1-cochain by a sparse linear solve."""
    d = H.dim
    eqs = []
    for a in range(d):
        coefs = {}
        for a1, a2, c in H.comul[a]:
            if f[a2]:
                coefs[a1] = coefs.get(a1, H.zero) + c * f[a2]
        eqs.append((coefs, H.counit[a]))
    sol = solve_sparse(eqs, d, unique=True)
    if sol is None or any(v is None for v in sol):
        raise NotInvertible("1-cochain is not convolution invertible")
    if conv1(H, f, sol) != list(H.counit):
        raise NotInvertible("left inverse is not a right inverse")
    return sol


def conv_inverse2(H, s):
    """Convolution inverse of a two-argument functional: solve f * s = eps (x) eps."""
    d = H.dim
    S = s.table
    eqs = []
    for a in range(d):
        for b in range(d):
            coefs = {}
            for a1, a2, c1 in H.comul[a]:
                Sa = S[a2]
                for b1, b2, c2 in H.comul[b]:
                    x = Sa[b2]
                    if x:
                        v = a1 * d + b1
                        coefs[v] = coefs.get(v, H.zero) + c1 * c2 * x
            eqs.append((coefs, H.counit[a] * H.counit[b]))
    sol = solve_sparse(eqs, d * d, unique=True)
    if sol is None or any(v is None for v in sol):
        raise NotInvertible("functional is not convolution invertible")
    inv = CocycleTable(H, [sol[a * d:(a + 1) * d] for a in range(d)])
    if conv2(H, s, inv) != CocycleTable.trivial(H):
        raise NotInvertible("left inverse is not a right inverse")
    return inv


# ---- twists -------------------------------------------------------------------

def twist_algebra(H, sigma, validate=False):
    """The algebra a ._sigma b = sigma(a1, b1) a2 b2 on the underlying comodule of H."""
    if validate:
        from .lazy import is_cocycle
        if not is_cocycle(H, sigma):
            raise NotACocycle("sigma fails the cocycle identity")
    d = H.dim
    S = sigma.table
    mul = []
    for a in range(d):
        row = []
        for b in range(d):
            out = {}
            for a1, a2, c1 in H.comul[a]:
                for b1, b2, c2 in H.comul[b]:
                    x = S[a1][b1]
                    if x:
                        for k, c in H.mul[a2][b2]:
                            out[k] = out.get(k, H.zero) + c1 * c2 * x * c
            row.append(tuple(sorted(_clean(out).items())))
        mul.append(row)
    return H.with_mul(mul, kind=f"twisted({H.kind})")


def doi_twist(H, sigma, validate=True):
    """The Hopf algebra with product sigma(a1,b1) a2 b2 sigma^-1(a3,b3)."""
    if validate:
        from .lazy import is_cocycle
        if not is_cocycle(H, sigma):
            raise NotACocycle("sigma fails the cocycle identity")
    inv = conv_inverse2(H, sigma).table
    S = sigma.table
    d = H.dim
    tri = [H.iterated_coproduct(i) for i in range(d)]
    mul = []
    for a in range(d):
        row = []
        for b in range(d):
            out = {}
            for (a1, a2, a3), c1 in tri[a].items():
                for (b1, b2, b3), c2 in tri[b].items():
                    x = S[a1][b1]
                    if not x:
                        continue
                    y = inv[a3][b3]
                    if not y:
                        continue
                    for k, c in H.mul[a2][b2]:
                        out[k] = out.get(k, H.zero) + c1 * c2 * x * y * c
            row.append(tuple(sorted(_clean(out).items())))
        mul.append(row)
    return H.with_mul(mul, kind=f"doi({H.kind})")


def mul_tables_equal(H, K):
    return all(dict(H.mul[i][j]) == dict(K.mul[i][j]) for i in range(H.dim) for j in range(H.dim))


# ---- the exact sequence k^G -> DG* -> kG ---------------------------------------

def canonical_maps(G, N=None, DGs=None):
    N = N or G.exponent()
    kG = build("kG", G, N)
    kd = build("kdualG", G, N)
    D = DGs or build("DGstar", G, N)
    n = G.order
    one = D.one
    iota = LinMap(kd, D, [{x: one} for x in range(n)])  # e_x -> 1 x e_x
    p = LinMap(D, kG, [({g: one} if x == 0 else {}) for g in range(n) for x in range(n)])
    s = LinMap(D, kd, [{x: one} for g in range(n) for x in range(n)])
    t = LinMap(kG, D, [{g * n + y: one for y in range(n)} for g in range(n)])
    return {"iota": iota, "p": p, "s": s, "t": t, "kG": kG, "kdualG": kd, "DGstar": D}


def is_algebra_map(f):
    A, B = f.src, f.dst
    if f(A.unit_elem()) != B.unit_elem():
        return False
    for i in range(A.dim):
        for j in range(A.dim):
            if f(dict(A.mul[i][j])) != B.multiply(f.cols[i], f.cols[j]):
                return False
    return True


def is_coalgebra_map(f):
    A, B = f.src, f.dst
    for i in range(A.dim):
        if B.eps(f.cols[i]) != A.counit[i]:
            return False
        left = {}
        for j, k, c in A.comul[i]:
            for x, a in f.cols[j].items():
                for y, b in f.cols[k].items():
                    left[(x, y)] = left.get((x, y), B.zero) + c * a * b
        if _clean(left) != B.coproduct(f.cols[i]):
            return False
    return True


def is_hopf_map(f):
    return is_algebra_map(f) and is_coalgebra_map(f)
