"""Double-coset decompositions of Aut_Hopf(DG) into parabolic pieces and reflections.

Notation for the subgroups (all of Aut_Hopf(DG)):

* ``V``: diag((x^-1)*, x) for x in Aut(G);
* ``Vc``: diag((w^-1)*, id) for central automorphisms w;
* ``B``: upper unitriangular, from bicharacters;
* ``E``: lower unitriangular, from central (A, psi).

``P_L = (Vc x| V) x| B`` and ``P_R = (Vc x| V) x| E``.  For abelian G an
automorphism is handled as an integer matrix on Gamma = dual(G) x G in a
prime-power basis; row operations from P_L and column operations from P_R
bring it to a (twisted) reflection.
"""

import itertools
from collections import Counter
from dataclasses import dataclass, field

from . import autdg as ad
from .groups import abelian_decomposition, direct_factorizations, iso_type


class DecompositionError(ValueError):
    pass


class NoBlockView(DecompositionError):
    pass


class NotPurelyNonabelian(DecompositionError):
    pass


class NotAnAutomorphism(DecompositionError):
    pass


class CaseThreeReached(DecompositionError):
    """The elimination found no injective block for a cyclic factor."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


# ---- certificates ------------------------------------------------------------------

@dataclass
class Factor:
    kind: str
    datum: dict
    element: object = field(default=None, repr=False, compare=False)

    def to_json(self):
        return {"kind": self.kind, "datum": self.datum}


@dataclass
class DecompositionCert:
    variant: str
    group: str
    conductor: int
    phi: dict
    factors: list
    cls: tuple = ()

    @property
    def phi_hash(self):
        return self.phi.get("phi_hash")

    def class_name(self):
        return class_name(self.cls)

    def to_json(self):
        return {
            "variant": self.variant,
            "group": self.group,
            "conductor": self.conductor,
            "phi": self.phi,
            "phi_hash": self.phi_hash,
            "factors": [f.to_json() for f in self.factors],
            "class": self.class_name(),
            "class_factors": list(self.cls),
        }

    @classmethod
    def from_json(cls, data):
        return cls(data["variant"], data["group"], data["conductor"], data["phi"],
                   [Factor(f["kind"], f["datum"]) for f in data["factors"]],
                   tuple(data.get("class_factors", ())))


def class_name(factors):
    return "x".join(f"C{d}" for d in factors) if factors else "1"


def _phi_json(M, with_hash=True):
    d = {"ustar": list(M.ustar), "b": M.b_table(), "a": {"A": list(M.a.A), "psi": list(M.a.psi)},
         "v": list(M.v)}
    if with_hash:
        d["phi_hash"] = M.phi_hash()
    return d


def factor_V(x, M=None):
    return Factor("V", {"x": list(x)}, M)


def factor_Vc(w, M=None):
    return Factor("Vc", {"w": list(w)}, M)


def factor_B(M):
    return Factor("B", {"beta": M.b_table()}, M)


def factor_E(M):
    return Factor("E", {"A": list(M.a.A), "psi": list(M.a.psi)}, M)


def factor_reflection(d, M):
    return Factor("twisted_reflection" if d.twisted else "reflection", d.to_json(), M)


def build_factor(G, f, N=None):
    """Rebuild a factor's automorphism from its datum, enforcing membership."""
    k, d = f.kind, f.datum
    if k == "V":
        return ad.make_V(G, d["x"], N)
    if k == "Vc":
        return ad.make_Vc(G, d["w"], N)
    if k == "B":
        return ad.make_B(G, d["beta"], N)
    if k == "E":
        return ad.make_E(G, ad.ADatum(tuple(d["A"]), tuple(d["psi"])), N)
    if k in ("reflection", "twisted_reflection"):
        rd = ad.ReflectionDatum(tuple(d["H"]), tuple(d["C"]), d["delta"], tuple(d["nu"]), N)
        if (k == "twisted_reflection") != rd.twisted:
            raise ad.DatumInvalid("reflection kind does not match nu")
        return ad.make_reflection(G, rd, N)
    raise ad.DatumInvalid(f"unknown factor kind {k!r}")


@dataclass
class VerifyResult:
    ok: bool
    diagnosis: str = ""
    index: int = None

    def __bool__(self):
        return self.ok


def verify_certificate(cert, G, phi=None, tables=False):
    """Recompute the factor product and compare it with phi."""
    try:
        ctx = ad.context(G, cert.conductor)
    except ValueError as e:
        return VerifyResult(False, f"BadConductor: {e}")
    elems = []
    for i, f in enumerate(cert.factors):
        try:
            elems.append(build_factor(G, f, cert.conductor))
        except (ad.AutError, KeyError, ValueError) as e:
            return VerifyResult(False, f"MembershipFail: {e}", i)
    refl = [i for i, f in enumerate(cert.factors) if f.kind in ("reflection", "twisted_reflection")]
    if cert.variant in ("double", "left", "right") and len(refl) != 1:
        return VerifyResult(False, "ReflectionCount")
    if cert.variant in ("left", "right") and cert.factors[refl[0]].kind != "reflection":
        return VerifyResult(False, "MembershipFail: one-sided variants need a plain reflection", refl[0])
    prod = ctx.identity()
    for M in elems:
        prod = ad.compose(prod, M)
    if phi is None:
        p = cert.phi
        bidx = [ctx.char_of(row) for row in p["b"]]
        phi = ad.AutDG(ctx, p["ustar"], bidx, ad.ADatum(tuple(p["a"]["A"]), tuple(p["a"]["psi"])), p["v"])
    if prod != phi:
        return VerifyResult(False, "ProductMismatch")
    if tables and prod.phi().cols != phi.phi().cols:
        return VerifyResult(False, "ProductMismatch (tables)")
    if cert.phi_hash is not None and tables and phi.phi_hash() != cert.phi_hash:
        return VerifyResult(False, "HashMismatch")
    return VerifyResult(True)


# ---- structure of G ------------------------------------------------------------------

def is_purely_nonabelian(G):
    return all(len(C) == 1 for H, C in direct_factorizations(G))


def _diag_inverse(M):
    n = M.ctx.n
    ui, vi = [0] * n, [0] * n
    for g in range(n):
        ui[M.ustar[g]] = g
        vi[M.v[g]] = g
    return ad.AutDG(M.ctx, ui, (0,) * n, ad.trivial_a(), vi)


def _split_diag(D):
    """D = Vc(w) V(x) for D in Vc x| V; returns the two factors."""
    G, n = D.G, D.ctx.n
    x = list(D.v)
    winv = [x[D.ustar[g]] for g in range(n)]
    w = [0] * n
    for g, y in enumerate(winv):
        w[y] = g
    Vc = ad.make_Vc(G, w, D.N)
    V = ad.make_V(G, x, D.N)
    return [factor_Vc(w, Vc), factor_V(x, V)]


def _diag_of(M):
    return ad.AutDG(M.ctx, M.ustar, (0,) * M.ctx.n, ad.trivial_a(), M.v)


def _check(pred, M, what):
    if not pred(M):
        raise DecompositionError(f"factor {what} fails its membership test")


def factor_BDE(P):
    """P = B . D . E with D in Vc x| V (needs v_P bijective)."""
    ctx, n = P.ctx, P.ctx.n
    if len(set(P.v)) != n:
        raise DecompositionError("v block is not invertible")
    vinv = [0] * n
    for h, y in enumerate(P.v):
        vinv[y] = h
    beta = [P.bidx[vinv[h]] for h in range(n)]
    Bel = ad.AutDG(ctx, range(n), beta, ad.trivial_a(), range(n))
    Binv = ad.AutDG(ctx, range(n), [ctx.char_index[tuple(-e % ctx.N for e in ctx.chars[i])] for i in beta],
                    ad.trivial_a(), range(n))
    P1 = ad.compose(Binv, P)
    D = _diag_of(P1)
    Eel = ad.compose(_diag_inverse(D), P1)
    _check(ad.in_B, Bel, "B")
    _check(ad.in_VcV, D, "VcV")
    _check(ad.in_E, Eel, "E")
    return Bel, D, Eel


def factor_DBE(P):
    """P = D . B . E with D in Vc x| V (needs v_P bijective)."""
    ctx, G, n = P.ctx, P.G, P.ctx.n
    if len(set(P.v)) != n:
        raise DecompositionError("v block is not invertible")
    vinv = [0] * n
    for h, y in enumerate(P.v):
        vinv[y] = h
    a = P.a
    einv = ad.ADatum(a.A, tuple(vinv[G.inv[z]] for z in a.psi))
    Einv = ad.AutDG(ctx, range(n), (0,) * n, einv, range(n))
    Eel = ad.AutDG(ctx, range(n), (0,) * n, ad.ADatum(a.A, tuple(vinv[z] for z in a.psi)), range(n))
    DB = ad.compose(P, Einv)
    D = _diag_of(DB)
    Bel = ad.compose(_diag_inverse(D), DB)
    _check(ad.in_VcV, D, "VcV")
    _check(ad.in_B, Bel, "B")
    _check(ad.in_E, Eel, "E")
    if not ad.compose(Eel, Einv).is_identity():
        raise DecompositionError("E inverse mismatch")
    return D, Bel, Eel


def _require_aut(M):
    try:
        ad.check_shapes(M.ctx, M.ustar, M.bidx, M.a, M.v)
        ad.check_conditions(M.ctx, M.ustar, M.bidx, M.a, M.v)
    except ad.AutError as e:
        raise NotAnAutomorphism(str(e)) from None
    if not ad.is_bijective(M):
        raise NotAnAutomorphism("phi is not bijective")


def keilberg_factorize(M, order="EDB", check=True):
    """Exact factorization for purely non-abelian G.

    order 'EDB': M = E . (Vc V) . B;  order 'DBE': M = (Vc V) . B . E.
    """
    G = M.G
    if not is_purely_nonabelian(G):
        raise NotPurelyNonabelian(f"{G.name} has a nontrivial abelian direct factor")
    if check:
        _require_aut(M)
    if order == "DBE":
        D, Bel, Eel = factor_DBE(M)
        factors = _split_diag(D) + [factor_B(Bel), factor_E(Eel)]
    elif order == "EDB":
        Binv, Dinv, Einv = factor_BDE(ad.invert(M))
        D = _diag_inverse(Dinv)
        Eel, Bel = Einv.inverse(), Binv.inverse()
        factors = [factor_E(Eel)] + _split_diag(D) + [factor_B(Bel)]
    else:
        raise ValueError(order)
    return DecompositionCert("keilberg", G.name, M.N, _phi_json(M, False), factors, ())


# ---- reflections available for one-sided variants ------------------------------------------

def plain_reflections(ctx):
    """(datum, r, r^-1) for every direct factorization with its standard pairing."""
    key = "plain_reflections"
    cache = ctx._hopf
    if key in cache:
        return cache[key]
    G = ctx.G
    out = []
    pairs = sorted(direct_factorizations(G), key=lambda hc: (len(hc[1]), hc[1], hc[0]))
    for H, C in pairs:
        d = ad.ReflectionDatum(H, C, ad.standard_delta(G, C, ctx.N), None, ctx.N)
        r = ad.make_reflection(G, d, ctx.N)
        out.append((d, r, ad.invert(r)))
    cache[key] = out
    return out


def _one_sided(M, side):
    ctx = M.ctx
    for d, r, rinv in plain_reflections(ctx):
        Q = ad.compose(rinv, M) if side == "left" else ad.compose(M, rinv)
        if len(set(Q.v)) != ctx.n:
            continue
        try:
            if side == "left":
                Bel, D, Eel = factor_BDE(Q)
                return [factor_reflection(d, r), factor_B(Bel)] + _split_diag(D) + [factor_E(Eel)], d
            D, Bel, Eel = factor_DBE(Q)
            return _split_diag(D) + [factor_B(Bel), factor_E(Eel), factor_reflection(d, r)], d
        except DecompositionError:
            continue
    raise CaseThreeReached(f"no reflection puts phi into the big cell ({side})", ad.AutDG.__repr__(M))


def _reflection_class(G, C):
    H, _ = G.subgroup(C)
    return tuple(iso_type(H)) if len(C) > 1 else ()


# ---- Gamma-matrix elimination (abelian G) ---------------------------------------------------

class GammaBasis:
    """Prime-power coordinates on Gamma = dual(G) x G; slot i < n is chi_i, slot n + i is c_i."""

    def __init__(self, ctx):
        G = ctx.G
        self.ctx = ctx
        dec = abelian_decomposition(G)
        self.q = list(dec.prime_power_orders)
        self.gens = list(dec.prime_power_generators)
        self.n = len(self.q)
        self.coords = dec.coordinates("prime_power")
        self.elem = {c: g for g, c in self.coords.items()}
        self.mod = self.q + self.q
        N = ctx.N
        self.char_coords = [tuple(chi[c] * q // N for c, q in zip(self.gens, self.q)) for chi in ctx.chars]
        self.char_of = {c: i for i, c in enumerate(self.char_coords)}
        self.p = [min(d for d in range(2, q + 1) if q % d == 0) for q in self.q]

    def vec(self, chi, h):
        return list(self.char_coords[chi]) + list(self.coords[h])

    def point(self, vec):
        n = self.n
        chi = self.char_of[tuple(x % q for x, q in zip(vec[:n], self.q))]
        h = self.elem[tuple(x % q for x, q in zip(vec[n:], self.q))]
        return chi, h

    def matrix(self, M):
        """Columns: images of chi_1..chi_n, c_1..c_n."""
        ctx, n = self.ctx, self.n
        gm = M.gamma_map()
        nG = ctx.n
        cols = []
        for i in range(n):
            unit = [0] * n
            unit[i] = 1
            chi = self.char_of[tuple(unit)]
            img = gm[chi * nG]
            cols.append(self.vec(img // nG, img % nG))
        for i in range(n):
            img = gm[self.gens[i]]
            cols.append(self.vec(img // nG, img % nG))
        return [[cols[c][r] % self.mod[r] for c in range(2 * n)] for r in range(2 * n)]

    def apply(self, mat, vec):
        m = len(mat)
        return [sum(mat[r][c] * vec[c] for c in range(m)) % self.mod[r] for r in range(m)]

    def to_aut(self, mat):
        ctx, nG = self.ctx, self.ctx.n
        gmap = []
        for chi in range(len(ctx.chars)):
            for h in range(nG):
                c, g = self.point(self.apply(mat, self.vec(chi, h)))
                gmap.append(c * nG + g)
        if len(set(gmap)) != len(gmap):
            raise DecompositionError("matrix is not invertible on Gamma")
        return ad.from_gamma(ctx, gmap)


class _Elim:
    def __init__(self, basis, mat):
        self.b = basis
        self.n = basis.n
        m = 2 * self.n
        self.m = m
        self.A = [row[:] for row in mat]
        self.L = [[int(r == c) for c in range(m)] for r in range(m)]
        self.R = [[int(r == c) for c in range(m)] for r in range(m)]
        self.log = []

    def is_dual(self, k):
        return k < self.n

    # row operations: dst += t * src, never from a dual row into a G row
    def row_add(self, src, dst, t):
        mod = self.b.mod
        if self.is_dual(src) and not self.is_dual(dst):
            raise AssertionError("row operation outside P_L")
        if (t * mod[src]) % mod[dst]:
            raise AssertionError("row operation is not a homomorphism")
        for X in (self.A, self.L):
            X[dst] = [(x + t * y) % mod[dst] for x, y in zip(X[dst], X[src])]

    def row_scale(self, r, u):
        for X in (self.A, self.L):
            X[r] = [x * u % self.b.mod[r] for x in X[r]]

    def row_swap(self, r, s):
        if self.is_dual(r) != self.is_dual(s) or self.b.mod[r] != self.b.mod[s]:
            raise AssertionError("row swap outside P_L")
        for X in (self.A, self.L):
            X[r], X[s] = X[s], X[r]

    # column operations: col dst += t * col src, never from a dual column into a G column
    def col_add(self, src, dst, t):
        mod = self.b.mod
        if self.is_dual(src) and not self.is_dual(dst):
            raise AssertionError("column operation outside P_R")
        if (t * mod[dst]) % mod[src]:
            raise AssertionError("column operation is not a homomorphism")
        for X in (self.A, self.R):
            for r in range(self.m):
                X[r][dst] = (X[r][dst] + t * X[r][src]) % mod[r]


def _unit(x, p):
    return x % p != 0


def eliminate(M):
    """Bring the Gamma matrix of M to a twisted reflection by P_L rows and P_R columns."""
    ctx = M.ctx
    basis = GammaBasis(ctx)
    n, q = basis.n, basis.q
    E = _Elim(basis, basis.matrix(M))
    A = E.A
    used, kept, refl = set(), [], []
    for i in reversed(range(n)):
        col = n + i
        cands = [n + i] + [n + r for r in range(n) if r != i] + [i] + [r for r in range(n) if r != i]
        piv = next((r for r in cands if r not in used and basis.mod[r] == q[i]
                    and _unit(A[r][col], basis.p[i])), None)
        if piv is None:
            raise CaseThreeReached(f"no injective block for cyclic factor {i}",
                                   {"matrix": [row[:] for row in A], "step": i})
        target = n + i if piv >= n else i
        if piv != target:
            E.row_swap(piv, target)
        E.row_scale(target, pow(A[target][col], -1, q[i]))
        if target == n + i:
            for r in range(E.m):
                if r != target and A[r][col]:
                    E.row_add(target, r, -A[r][col])
            kept.append(i)
        else:
            for r in range(n):
                if r != target and A[r][col]:
                    E.row_add(target, r, -A[r][col])
            refl.append(i)
        for c in range(E.m):
            if c != col and A[target][c]:
                E.col_add(col, c, -A[target][c])
        used.add(target)
        # keep the dual part of reflected columns clean after B operations
        for j in refl:
            for r in range(n):
                if r != j and A[r][n + j]:
                    E.row_add(j, r, -A[r][n + j])
    # phase 2: normalize the dual columns on the free rows with one column change
    slots = [i if i in kept else n + i for i in range(n)]
    S = [[A[slots[j]][c] for c in range(n)] for j in range(n)]
    for r in range(E.m):
        if r not in slots and any(A[r][c] for c in range(n)):
            raise DecompositionError("dual columns leak into pivot rows")
    Sinv = _invert_small(S, q)
    for X in (E.A, E.R):
        for r in range(E.m):
            row = X[r][:n]
            X[r][:n] = [sum(row[k] * Sinv[k][c] for k in range(n)) % basis.mod[r] for c in range(n)]
    return basis, E, sorted(kept), sorted(refl)


def _invert_small(S, q):
    """Inverse of an automorphism of (+) Z/q_j given by the matrix S."""
    n = len(q)
    image = {}
    for vec in itertools.product(*(range(d) for d in q)):
        out = tuple(sum(S[r][c] * vec[c] for c in range(n)) % q[r] for r in range(n))
        image[out] = vec
    if len(image) != len(list(itertools.product(*(range(d) for d in q)))):
        raise DecompositionError("normalizing block is singular")
    cols = []
    for j in range(n):
        e = tuple(int(k == j) for k in range(n))
        cols.append(image[e])
    return [[cols[c][r] for c in range(n)] for r in range(n)]


def _mat_inverse_aut(basis, mat):
    return ad.invert(basis.to_aut(mat))


def _decompose_double_abelian(M):
    ctx, G = M.ctx, M.G
    basis, E, kept, refl = eliminate(M)
    n = basis.n
    A = E.A
    gens = basis.gens
    C = tuple(sorted(G.generate([gens[i] for i in refl])))
    H = tuple(sorted(G.generate([gens[i] for i in kept])))
    posC = {c: k for k, c in enumerate(C)}
    N = ctx.N

    def coords_in(c):
        return basis.coords[c]

    delta = [[sum(coords_in(c)[i] * coords_in(c2)[i] * (N // basis.q[i]) for i in refl) % N for c2 in C]
             for c in C]
    nu_gen = {}
    for i in refl:
        vec = [0] * n
        for j in refl:
            vec[j] = A[n + j][n + i]
        nu_gen[i] = basis.elem[tuple(vec)]
    nu = [None] * len(C)
    for c in C:
        x = 0
        for i in refl:
            x = G.mul[x][G.power(nu_gen[i], coords_in(c)[i])]
        nu[posC[c]] = x
    d = ad.ReflectionDatum(H, C, delta, tuple(nu), N)
    r = ad.make_reflection(G, d, N)
    if basis.to_aut(A) != r:
        raise DecompositionError("elimination did not end at the reflection")
    left = ad.invert(basis.to_aut(E.L))
    right = ad.invert(basis.to_aut(E.R))
    Dl = _diag_of(left)
    Bl = ad.compose(_diag_inverse(Dl), left)
    Dr = _diag_of(right)
    Er = ad.compose(_diag_inverse(Dr), right)
    _check(ad.in_VcV, Dl, "VcV")
    _check(ad.in_B, Bl, "B")
    _check(ad.in_VcV, Dr, "VcV")
    _check(ad.in_E, Er, "E")
    factors = _split_diag(Dl) + [factor_B(Bl), factor_reflection(d, r)] + _split_diag(Dr) + [factor_E(Er)]
    return factors, d


def decompose(M, variant="double", check=True, hash_phi=True):
    """Certificate writing M through one (twisted) reflection and parabolic factors.

    double: M = [(Vc V) B] r [(Vc V) E] with r twisted;
    left:   M = r [B (Vc V) E] with r plain;
    right:  M = [(Vc V) B E] r with r plain.
    """
    G = M.G
    if check:
        _require_aut(M)
    if variant not in ("double", "left", "right"):
        raise ValueError(f"unknown variant {variant!r}")
    if G.is_abelian():
        if variant == "double":
            factors, d = _decompose_double_abelian(M)
        else:
            factors, d = _one_sided(M, variant)
    elif is_purely_nonabelian(G):
        cert = keilberg_factorize(M, "DBE", check=False)
        d = ad.ReflectionDatum(tuple(range(G.order)), (0,), ((0,),), None, M.N)
        r = factor_reflection(d, M.ctx.identity())
        if variant == "left":
            Bel, D, Eel = factor_BDE(M)
            factors = [r, factor_B(Bel)] + _split_diag(D) + [factor_E(Eel)]
        elif variant == "right":
            factors = cert.factors + [r]
        else:
            f = cert.factors  # Vc, V, B, E
            factors = f[:3] + [r, f[3]]
    else:
        if variant == "double":
            raise NoBlockView(f"double variant for mixed {G.name} is not implemented")
        factors, d = _one_sided(M, variant)
    cls = _reflection_class(G, d.C)
    return DecompositionCert(variant, G.name, M.N, _phi_json(M, hash_phi), factors, cls)


def reflection_class(M, variant="double"):
    return decompose(M, variant, hash_phi=False).cls


# ---- census -----------------------------------------------------------------------------

def census(G, elements=None, variant="double", orbits=False):
    """Partition Aut_Hopf(DG) by reflection class; optionally cross-check with true double cosets."""
    elements = elements if elements is not None else ad.enumerate_all(G)
    classes = Counter()
    cls_of = {}
    for M in elements:
        c = reflection_class(M, variant)
        classes[c] += 1
        cls_of[M] = c
    report = {
        "group": G.name,
        "order": len(elements),
        "classes": {class_name(c): k for c, k in sorted(classes.items(), key=lambda t: (len(t[0]), t[0]))},
        "sizes": [classes[c] for c in sorted(classes, key=lambda c: (len(c), c))],
        "sum_ok": sum(classes.values()) == len(elements),
    }
    if orbits:
        orb = double_cosets(G, elements)
        report["double_coset_sizes"] = sorted(len(o) for o in orb)
        report["class_constant_on_cosets"] = all(len({cls_of[M] for M in o}) == 1 for o in orb)
    expected = expected_sizes(G)
    if expected is not None:
        report["expected_sizes"] = expected
    return report


def parabolic_generators(G, N=None):
    """Generators of P_L and P_R."""
    from .groups import automorphisms, central_automorphisms
    ctx = ad.context(G, N)
    V = [ad.make_V(G, x.map, N) for x in automorphisms(G)]
    Vc = [ad.make_Vc(G, w.map, N) for w in central_automorphisms(G)]
    Bs = [ad.make_B(G, [list(ctx.chars[i]) for i in b], N) for b in ad.b_data(ctx)]
    Es = [ad.make_E(G, a, N) for a in ad.a_data(ctx)]
    return V + Vc + Bs, V + Vc + Es


def double_cosets(G, elements):
    """Orbits of P_L x P_R acting by (p, q) . M = p M q^-1, found by BFS on generators."""
    left, right = parabolic_generators(G, elements[0].N if elements else None)
    seen, out = set(), []
    for M in elements:
        if M in seen:
            continue
        orbit, stack = {M}, [M]
        while stack:
            X = stack.pop()
            for P in left:
                Y = ad.compose(P, X)
                if Y not in orbit:
                    orbit.add(Y)
                    stack.append(Y)
            for Q in right:
                Y = ad.compose(X, Q)
                if Y not in orbit:
                    orbit.add(Y)
                    stack.append(Y)
        seen |= orbit
        out.append(orbit)
    return out


def _gl_order(n, p):
    out = 1
    for k in range(n):
        out *= p ** n - p ** k
    return out


def expected_sizes(G):
    """Closed-form coset sizes for G = F_p^n with n <= 2, ordered by reflection rank."""
    if not G.is_abelian():
        return None
    inv = iso_type(G) or []
    if not inv or len(set(inv)) != 1:
        return None
    p = inv[0]
    if any(p % d == 0 for d in range(2, p)) or len(inv) > 2:
        return None
    if len(inv) == 1:
        big = p * p * (p - 1) ** 2
        return [big, _gl_order(2, p) - big]
    g2 = _gl_order(2, p)
    return [p ** 8 * g2 ** 2, p ** 3 * g2 ** 4 // (p - 1) ** 4, p ** 4 * g2 ** 2]


def weyl_census(n=2):
    """Double cosets of S_n x S_n in S_2n, by brute force over permutations."""
    m = 2 * n
    perms = list(itertools.permutations(range(m)))
    block = [p for p in perms if all((p[i] < n) == (i < n) for i in range(m))]

    def mul(a, b):
        return tuple(a[b[i]] for i in range(m))

    seen, sizes, reps = set(), [], []
    for w in perms:
        if w in seen:
            continue
        coset = {mul(mul(x, w), y) for x in block for y in block}
        seen |= coset
        sizes.append(len(coset))
        reps.append(sum(1 for i in range(n) if w[i] >= n))
    order = sorted(range(len(sizes)), key=lambda k: reps[k])
    return [sizes[k] for k in order]
