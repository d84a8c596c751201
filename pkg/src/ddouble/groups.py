"""Finite groups given by multiplication tables, homomorphisms, duals and
the structural searches used throughout the package.

Elements are indices 0..n-1 with 0 the identity.  Conjugation is
g^t = t^-1 g t.
"""

import itertools
import json
import re
from dataclasses import dataclass, field
from math import gcd

from .linalg import smith_normal_form, integer_inverse
from .scalar import lcm

AUT_LIMIT = 16
SUBGROUP_LIMIT = 32


class GroupError(ValueError):
    pass


class ParseError(GroupError):
    pass


class TableInvalid(GroupError):
    pass


class SizeLimit(GroupError):
    pass


class NotAbelian(GroupError):
    pass


class FiniteGroup:
    def __init__(self, table, labels=None, name="G", check=True):
        self.order = n = len(table)
        self.mul = [tuple(row) for row in table]
        self.name = name
        self.labels = list(labels) if labels else [str(i) for i in range(n)]
        if check:
            self._validate()
        self.inv = [0] * n
        for g in range(n):
            for h in range(n):
                if self.mul[g][h] == 0:
                    self.inv[g] = h
                    break
        self._cache = {}

    def _validate(self):
        n, m = self.order, self.mul
        if n == 0 or any(len(row) != n for row in m):
            raise TableInvalid("table must be square and nonempty")
        if any(m[0][g] != g or m[g][0] != g for g in range(n)):
            raise TableInvalid("element 0 is not a two-sided identity")
        for g in range(n):
            if sorted(m[g]) != list(range(n)):
                raise TableInvalid(f"row {g} is not a permutation")
            if sorted(m[h][g] for h in range(n)) != list(range(n)):
                raise TableInvalid(f"column {g} is not a permutation")
        for a in range(n):
            ma = m[a]
            for b in range(n):
                mab = m[ma[b]]
                mb = m[b]
                for c in range(n):
                    if mab[c] != ma[mb[c]]:
                        raise TableInvalid(f"associativity fails at ({a},{b},{c})")

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def __len__(self):
        return self.order

    @property
    def elements(self):
        return range(self.order)

    def m(self, a, b):
        return self.mul[a][b]

    def prod(self, *xs):
        out = 0
        for x in xs:
            out = self.mul[out][x]
        return out

    def conj(self, g, t):
        """g^t = t^-1 g t."""
        return self.mul[self.mul[self.inv[t]][g]][t]

    def power(self, g, k):
        k %= self.element_order(g)
        out = 0
        for _ in range(k):
            out = self.mul[out][g]
        return out

    def element_order(self, g):
        orders = self._cache.get("orders")
        if orders is None:
            orders = []
            for x in range(self.order):
                k, y = 1, x
                while y != 0:
                    y = self.mul[y][x]
                    k += 1
                orders.append(k)
            self._cache["orders"] = orders
        return orders[g]

    def index(self, label):
        return self.labels.index(label)

    def is_abelian(self):
        return all(self.mul[a][b] == self.mul[b][a] for a in range(self.order) for b in range(a))

    def generate(self, gens):
        """Sorted tuple of the subgroup generated by gens."""
        seen = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.mul[x][s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen))

    def generating_set(self):
        """A small generating set chosen greedily (deterministic)."""
        if "gens" in self._cache:
            return self._cache["gens"]
        gens, span = [], (0,)
        while len(span) < self.order:
            best = max((g for g in range(self.order) if g not in span),
                       key=lambda g: (len(self.generate(gens + [g])), -g))
            gens.append(best)
            span = self.generate(gens)
        self._cache["gens"] = gens
        return gens

    def exponent(self):
        return lcm(*(self.element_order(g) for g in range(self.order)))

    def center(self):
        return tuple(z for z in range(self.order)
                     if all(self.mul[z][g] == self.mul[g][z] for g in range(self.order)))

    def commutator_subgroup(self):
        comms = {self.prod(self.inv[a], self.inv[b], a, b)
                 for a in range(self.order) for b in range(self.order)}
        return self.generate(sorted(comms))

    def conjugacy_classes(self):
        if "classes" in self._cache:
            return self._cache["classes"]
        seen, classes = set(), []
        for g in range(self.order):
            if g not in seen:
                cl = tuple(sorted({self.conj(g, t) for t in range(self.order)}))
                seen.update(cl)
                classes.append(cl)
        self._cache["classes"] = classes
        return classes

    def is_normal(self, sub):
        s = set(sub)
        return all(self.conj(h, t) in s for h in sub for t in range(self.order))

    def subgroup(self, elems, name=None):
        """The subgroup on elems as its own FiniteGroup plus the embedding."""
        elems = sorted(elems)
        if elems[0] != 0:
            raise GroupError("subgroup must contain the identity")
        pos = {e: i for i, e in enumerate(elems)}
        table = [[pos[self.mul[a][b]] for b in elems] for a in elems]
        H = FiniteGroup(table, [self.labels[e] for e in elems], name or f"sub({self.name})", check=False)
        return H, GroupHom(H, self, list(elems), check=False)

    def quotient(self, normal, name=None):
        """G/N as a FiniteGroup with the quotient map."""
        normal = set(normal)
        cosets, rep_of = [], {}
        for g in range(self.order):
            if g in rep_of:
                continue
            coset = sorted(self.mul[g][x] for x in normal)
            idx = len(cosets)
            cosets.append(coset)
            for x in coset:
                rep_of[x] = idx
        table = [[rep_of[self.mul[c[0]][d[0]]] for d in cosets] for c in cosets]
        labels = ["{" + self.labels[c[0]] + "}" for c in cosets]
        Q = FiniteGroup(table, labels, name or f"{self.name}/N", check=False)
        return Q, GroupHom(self, Q, [rep_of[g] for g in range(self.order)], check=False)

    def to_json(self):
        return {"order": self.order, "table": [list(r) for r in self.mul], "labels": self.labels}


@dataclass
class GroupHom:
    src: FiniteGroup
    dst: FiniteGroup
    map: list
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        self.map = list(self.map)
        if self.check and not self.is_hom():
            raise GroupError("map is not a homomorphism")

    def is_hom(self):
        s, d, f = self.src, self.dst, self.map
        if len(f) != s.order or f[0] != 0:
            return False
        return all(f[s.mul[a][b]] == d.mul[f[a]][f[b]] for a in range(s.order) for b in range(s.order))

    def __call__(self, g):
        return self.map[g]

    def compose(self, other):
        """self after other."""
        return GroupHom(other.src, self.dst, [self.map[x] for x in other.map], check=False)

    def kernel(self):
        return tuple(g for g in range(self.src.order) if self.map[g] == 0)

    def image(self):
        return tuple(sorted(set(self.map)))

    def is_bijective(self):
        return len(set(self.map)) == self.src.order == self.dst.order

    def inverse(self):
        inv = [0] * self.dst.order
        for g, x in enumerate(self.map):
            inv[x] = g
        return GroupHom(self.dst, self.src, inv, check=False)

    def key(self):
        return tuple(self.map)

    def __eq__(self, other):
        return isinstance(other, GroupHom) and self.map == other.map

    def __hash__(self):
        return hash(tuple(self.map))


def identity_hom(G):
    return GroupHom(G, G, list(range(G.order)), check=False)


def trivial_hom(G, H):
    return GroupHom(G, H, [0] * G.order, check=False)


# ---- construction -------------------------------------------------------------

def from_elements(elems, mul, label=str, name="G"):
    """Build a table group; elems[0] must be the identity."""
    pos = {e: i for i, e in enumerate(elems)}
    table = [[pos[mul(a, b)] for b in elems] for a in elems]
    return FiniteGroup(table, [label(e) for e in elems], name)


def cyclic(n):
    def lab(k):
        return "1" if k == 0 else ("a" if k == 1 else f"a^{k}")
    return from_elements(list(range(n)), lambda a, b: (a + b) % n, lab, f"C{n}")


def dihedral(n):
    """Dihedral group of order 2n: r^k s^e with s r s = r^-1."""
    elems = [(k, e) for e in (0, 1) for k in range(n)]

    def mul(x, y):
        return ((x[0] + (-1) ** x[1] * y[0]) % n, (x[1] + y[1]) % 2)

    def lab(x):
        r = "" if x[0] == 0 else ("r" if x[0] == 1 else f"r^{x[0]}")
        s = "s" if x[1] else ""
        return (r + s) or "1"
    return from_elements(elems, mul, lab, f"Dih{n}")


def _cycle_label(p):
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j + 1)
            j = p[j]
        cycles.append("(" + "".join(map(str, c)) + ")")
    return "".join(cycles) or "1"


def symmetric(n):
    """Symmetric group on {1..n}; (pq)(i) = p(q(i)), right-to-left composition."""
    elems = [tuple(range(n))] + [p for p in itertools.permutations(range(n)) if p != tuple(range(n))]
    return from_elements(elems, lambda p, q: tuple(p[q[i]] for i in range(n)), _cycle_label, f"S{n}")


def quaternion():
    units = ["1", "i", "j", "k"]
    # (sign, unit) with Hamilton's rules
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]

    def mul(x, y):
        s, u = table[(x[1], y[1])]
        return (x[0] * y[0] * s, u)

    def lab(x):
        return ("-" if x[0] < 0 else "") + units[x[1]]
    return from_elements(elems, mul, lab, "Q8")


def direct_product(G, H):
    n, m = G.order, H.order
    table = [[G.mul[a // m][b // m] * m + H.mul[a % m][b % m] for b in range(n * m)]
             for a in range(n * m)]
    labels = [f"({G.labels[a // m]},{H.labels[a % m]})" for a in range(n * m)]
    return FiniteGroup(table, labels, f"{G.name} x {H.name}", check=False)


def from_table_json(data, name="table"):
    if isinstance(data, str):
        data = json.loads(data)
    try:
        order = int(data["order"])
        table = data["table"]
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad table json: {e}") from e
    if len(table) != order:
        raise TableInvalid("order does not match table size")
    return FiniteGroup(table, data.get("labels"), name)


_PRESET = re.compile(r"^(C|Dih|S)(\d+)$|^(D4|Q8)$")


def construct(spec):
    """Parse a group expression: C<n>, D4, Q8, S<n>, Dih<n>, products 'A x B'."""
    if isinstance(spec, dict):
        return from_table_json(spec)
    parts = [p.strip() for p in re.split(r"\s*[x×]\s*", spec.strip())]
    if len(parts) > 1:
        G = construct(parts[0])
        for p in parts[1:]:
            G = direct_product(G, construct(p))
        G.name = " x ".join(parts)
        return G
    m = _PRESET.match(parts[0])
    if not m:
        raise ParseError(f"unknown group expression {spec!r}")
    if m.group(3):
        return dihedral(4) if m.group(3) == "D4" else quaternion()
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise ParseError("order must be positive")
    if kind == "C":
        return cyclic(n)
    if kind == "Dih":
        if n < 2:
            raise ParseError("Dih<n> needs n >= 2")
        return dihedral(n)
    if n > 5:
        raise SizeLimit("S<n> supported for n <= 5")
    return symmetric(n)


def load_group(spec=None, table_path=None):
    if table_path:
        with open(table_path) as fh:
            return from_table_json(json.load(fh), name=table_path)
    return construct(spec)


# ---- invariants ---------------------------------------------------------------

def invariants(G):
    Z = G.center()
    comm = G.commutator_subgroup()
    Gab, q = G.quotient(comm, f"{G.name}_ab")
    return {
        "center": Z,
        "commutator": comm,
        "abelianization": Gab,
        "quotient_map": q,
        "conjugacy_classes": G.conjugacy_classes(),
        "exponent": G.exponent(),
    }


def enumerate_homs(G, H, filter="all"):
    """All homomorphisms G -> H (filter: all, injective, surjective, automorphisms)."""
    if filter == "automorphisms":
        if G.order != H.order:
            return []
        if G.order > AUT_LIMIT:
            raise SizeLimit(f"automorphism enumeration limited to order <= {AUT_LIMIT}")
    elif G.order > 2 * AUT_LIMIT or G.order * H.order > 4096:
        raise SizeLimit("homomorphism search too large")
    gens = G.generating_set()
    need_inj = filter in ("injective", "automorphisms")
    cands = []
    for s in gens:
        o = G.element_order(s)
        if need_inj:
            cands.append([h for h in range(H.order) if H.element_order(h) == o])
        else:
            cands.append([h for h in range(H.order) if o % H.element_order(h) == 0])
    # BFS words: each element reached as parent * generator
    order, parent = [0], {0: None}
    for x in order:
        for i, s in enumerate(gens):
            y = G.mul[x][s]
            if y not in parent:
                parent[y] = (x, i)
                order.append(y)
    out = []
    for imgs in itertools.product(*cands):
        f = [None] * G.order
        f[0] = 0
        for y in order[1:]:
            x, i = parent[y]
            f[y] = H.mul[f[x]][imgs[i]]
        ok = True
        for x in range(G.order):
            fx = H.mul[f[x]]
            gx = G.mul[x]
            for i, s in enumerate(gens):
                if f[gx[s]] != fx[imgs[i]]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        if need_inj and len(set(f)) != G.order:
            continue
        if filter == "surjective" and len(set(f)) != H.order:
            continue
        out.append(GroupHom(G, H, f, check=False))
    out.sort(key=lambda h: h.map)
    return out


def automorphisms(G):
    key = "auts"
    if key not in G._cache:
        G._cache[key] = enumerate_homs(G, G, "automorphisms")
    return G._cache[key]


def endomorphisms(G):
    key = "ends"
    if key not in G._cache:
        G._cache[key] = enumerate_homs(G, G, "all")
    return G._cache[key]


def central_automorphisms(G):
    Z = set(G.center())
    return [v for v in automorphisms(G)
            if all(G.mul[v.map[g]][G.inv[g]] in Z for g in range(G.order))]


# ---- abelian structure --------------------------------------------------------

@dataclass
class AbelianDecomposition:
    group: FiniteGroup
    invariant_factors: list
    invariant_generators: list
    prime_power_orders: list
    prime_power_generators: list

    def coordinates(self, which="invariant"):
        """Map element -> exponent vector in the chosen generator basis."""
        gens = self.invariant_generators if which == "invariant" else self.prime_power_generators
        orders = self.invariant_factors if which == "invariant" else self.prime_power_orders
        G = self.group
        coords = {}
        for exps in itertools.product(*(range(d) for d in orders)):
            x = 0
            for g, e in zip(gens, exps):
                x = G.mul[x][G.power(g, e)]
            coords[x] = exps
        return coords

    def verify(self):
        G = self.group
        for gens, orders in ((self.invariant_generators, self.invariant_factors),
                             (self.prime_power_generators, self.prime_power_orders)):
            if any(G.element_order(g) != d for g, d in zip(gens, orders)):
                return False
            if len(G.generate(gens)) != G.order:
                return False
            prod = 1
            for d in orders:
                prod *= d
            if prod != G.order:
                return False
        return True


def _factor(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def abelian_decomposition(A):
    if not A.is_abelian():
        raise NotAbelian(A.name)
    if A.order == 1:
        return AbelianDecomposition(A, [], [], [], [])
    gens = A.generating_set()
    k = len(gens)
    # spanning tree words and Schreier relations
    word = {0: [0] * k}
    queue = [0]
    rels = []
    for x in queue:
        for i, s in enumerate(gens):
            y = A.mul[x][s]
            w = list(word[x])
            w[i] += 1
            if y not in word:
                word[y] = w
                queue.append(y)
            else:
                rels.append([a - b for a, b in zip(w, word[y])])
    rels = [r for r in rels if any(r)]
    D, U, V = smith_normal_form(rels)
    d = [D[i][i] for i in range(min(len(D), k))] + [0] * max(0, k - len(D))
    Vinv = integer_inverse(V)
    inv_factors, inv_gens = [], []
    for j in range(k):
        if d[j] == 1:
            continue
        x = 0
        for i in range(k):
            x = A.mul[x][A.power(gens[i], Vinv[j][i])]
        inv_factors.append(d[j])
        inv_gens.append(x)
    pp = []
    for g, dj in zip(inv_gens, inv_factors):
        for p, e in sorted(_factor(dj).items()):
            q = p ** e
            pp.append((q, g, A.power(g, dj // q)))
    # increasing order, ties broken by the source generator index then element
    pp.sort(key=lambda t: (t[0], t[2]))
    dec = AbelianDecomposition(A, inv_factors, inv_gens, [t[0] for t in pp], [t[2] for t in pp])
    assert dec.verify()
    return dec


@dataclass
class DualGroup:
    """Characters of an abelian group as exponent tables: chi_i(a_j) = zeta_N^table[i][j]."""
    A: FiniteGroup
    conductor: int
    table: list
    group: FiniteGroup = None

    def index_of(self, exps):
        return self._lookup[tuple(e % self.conductor for e in exps)]

    def __post_init__(self):
        self._lookup = {tuple(row): i for i, row in enumerate(self.table)}
        N = self.conductor
        n = len(self.table)
        if self.group is None:
            mult = [[self.index_of([x + y for x, y in zip(self.table[i], self.table[j])])
                     for j in range(n)] for i in range(n)]
            self.group = FiniteGroup(mult, [f"chi{i}" for i in range(n)], f"dual({self.A.name})", check=False)

    def is_perfect(self):
        A = self.A
        rows_distinct = len(set(map(tuple, self.table))) == len(self.table)
        mult = all(row[A.mul[a][b]] == (row[a] + row[b]) % self.conductor
                   for row in self.table for a in range(A.order) for b in range(A.order))
        return rows_distinct and mult and len(self.table) == A.order


def dual_group(A):
    if not A.is_abelian():
        raise NotAbelian(A.name)
    if "dual" in A._cache:
        return A._cache["dual"]
    dec = abelian_decomposition(A)
    N = A.exponent()
    coords = dec.coordinates()
    rows = []
    for ks in itertools.product(*(range(d) for d in dec.invariant_factors)):
        row = [0] * A.order
        for a in range(A.order):
            c = coords[a]
            row[a] = sum(k * e * (N // d) for k, e, d in zip(ks, c, dec.invariant_factors)) % N
        rows.append(row)
    D = DualGroup(A, N, rows)
    A._cache["dual"] = D
    return D


def linear_characters(G):
    """Characters of G (through G_ab) as a DualGroup-like table indexed by elements of G."""
    if "lin_chars" in G._cache:
        return G._cache["lin_chars"]
    inv = invariants(G)
    Gab, q = inv["abelianization"], inv["quotient_map"]
    D = dual_group(Gab)
    table = [[row[q.map[g]] for g in range(G.order)] for row in D.table]
    out = DualGroup(G, D.conductor, table, group=D.group)
    G._cache["lin_chars"] = out
    return out


# ---- subgroup searches --------------------------------------------------------

def subgroups(G):
    if G.order > SUBGROUP_LIMIT:
        raise SizeLimit(f"subgroup enumeration limited to order <= {SUBGROUP_LIMIT}")
    if "subgroups" in G._cache:
        return G._cache["subgroups"]
    cyc = {G.generate([g]) for g in range(G.order)}
    subs = set(cyc)
    frontier = set(cyc)
    while frontier:
        new = set()
        for H in frontier:
            for C in cyc:
                if not set(C) <= set(H):
                    J = G.generate(list(H) + list(C))
                    if J not in subs:
                        new.add(J)
        subs |= new
        frontier = new
    out = sorted(subs, key=lambda s: (len(s), s))
    G._cache["subgroups"] = out
    return out


def normal_abelian_subgroups(G):
    out = []
    for S in subgroups(G):
        if G.is_normal(S) and all(G.mul[a][b] == G.mul[b][a] for a in S for b in S):
            out.append(S)
    return out


def direct_factorizations(G):
    """Ordered pairs (H, C) of normal subgroups, H n C = 1, HC = G, C abelian."""
    normals = [S for S in subgroups(G) if G.is_normal(S)]
    out = []
    for C in normals:
        if not all(G.mul[a][b] == G.mul[b][a] for a in C for b in C):
            continue
        for H in normals:
            if len(H) * len(C) == G.order and set(H) & set(C) == {0}:
                out.append((H, C))
    return out


def structure_search(G, what):
    if what == "normal_abelian_subgroups":
        return normal_abelian_subgroups(G)
    if what == "direct_factorizations":
        return direct_factorizations(G)
    if what == "abelian_decomposition":
        return abelian_decomposition(G)
    raise ValueError(what)


def iso_type(G):
    """Invariant factors of an abelian group, or None when nonabelian."""
    if not G.is_abelian():
        return None
    return abelian_decomposition(G).invariant_factors
