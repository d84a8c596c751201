"""Exact arithmetic in cyclotomic fields Q(zeta_N) and in root-of-unity exponents."""

from fractions import Fraction
from functools import lru_cache
from math import gcd


class ConductorMismatch(ValueError):
    pass


def _polydivmod(num, den):
    # coefficient lists, lowest degree first; den monic or not, exact rationals
    num = [Fraction(c) for c in num]
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = Fraction(den[-1])
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        c = num[-1] / lead
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
        num.pop()
        while num and num[-1] == 0:
            num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_poly(N):
    """Integer coefficients of the N-th cyclotomic polynomial, lowest degree first."""
    if N < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            q, r = _polydivmod(num, cyclotomic_poly(d))
            assert not any(r)
            num = q
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def euler_phi(N):
    return len(cyclotomic_poly(N)) - 1


@lru_cache(maxsize=None)
def _reduction(N):
    """Rows give x^k mod Phi_N for k < 2*phi(N) - 1 as integer vectors."""
    phi = cyclotomic_poly(N)
    m = len(phi) - 1
    rows = []
    for k in range(max(2 * m - 1, 1)):
        if k < m:
            row = [0] * m
            row[k] = 1
        else:
            prev = rows[k - 1]
            # multiply by x, then replace x^m by -(phi_0 + ... + phi_{m-1} x^{m-1})
            top = prev[m - 1]
            row = [0] + prev[:m - 1]
            for i in range(m):
                row[i] -= top * phi[i]
        rows.append(row)
    return rows


@lru_cache(maxsize=None)
def _root_table(N):
    return tuple(_power_coeffs(N, k) for k in range(N))


def _power_coeffs(N, k):
    m = euler_phi(N)
    k %= N
    # x^k mod Phi_N by repeated reduction
    vec = [Fraction(0)] * m
    if k < m:
        vec[k] = Fraction(1)
        return tuple(vec)
    cur = [Fraction(0)] * m
    cur[0] = Fraction(1)
    phi = cyclotomic_poly(N)
    for _ in range(k):
        top = cur[m - 1]
        cur = [Fraction(0)] + cur[:m - 1]
        for i in range(m):
            cur[i] -= top * phi[i]
    return tuple(cur)


class CycNum:
    """Element of Q(zeta_N) stored canonically modulo the N-th cyclotomic polynomial."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor, coeffs):
        m = euler_phi(conductor)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) > m:
            coeffs = _reduce_long(conductor, coeffs)
        elif len(coeffs) < m:
            coeffs = coeffs + (Fraction(0),) * (m - len(coeffs))
        self.conductor = conductor
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def _raw(cls, conductor, coeffs):
        z = object.__new__(cls)
        z.conductor = conductor
        z.coeffs = coeffs
        z._hash = None
        return z

    # constructors
    @classmethod
    def zero(cls, N):
        return cls._raw(N, (Fraction(0),) * euler_phi(N))

    @classmethod
    def one(cls, N):
        return cls.from_rational(N, 1)

    @classmethod
    def from_rational(cls, N, q):
        c = [Fraction(0)] * euler_phi(N)
        c[0] = Fraction(q)
        return cls._raw(N, tuple(c))

    @classmethod
    def root(cls, N, k=1):
        """zeta_N ** k."""
        return cls._raw(N, _root_table(N)[k % N])

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, CycNum):
            if other.conductor != self.conductor:
                raise ConductorMismatch(f"{self.conductor} vs {other.conductor}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_rational(self.conductor, other)
        if isinstance(other, RootExp):
            return self._coerce(other.to_cyc())
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycNum._raw(self.conductor, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum._raw(self.conductor, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycNum._raw(self.conductor, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum._raw(self.conductor, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        m = len(a)
        if m == 1:
            return CycNum._raw(self.conductor, (a[0] * b[0],))
        prod = [Fraction(0)] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        red = _reduction(self.conductor)
        out = prod[:m]
        for k in range(m, 2 * m - 1):
            c = prod[k]
            if c:
                row = red[k]
                for i in range(m):
                    if row[i]:
                        out[i] += c * row[i]
        return CycNum._raw(self.conductor, tuple(out))

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        N = self.conductor
        if len(self.coeffs) == 1:
            return CycNum._raw(N, (1 / self.coeffs[0],))
        # extended Euclid: s*a + t*Phi_N = const
        a = list(self.coeffs)
        while a[-1] == 0:
            a.pop()
        r0, r1 = [Fraction(c) for c in cyclotomic_poly(N)], a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _polydivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _polysub(s0, _polymul(q, s1))
        c = r1[0]
        return CycNum(N, [x / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CycNum._raw(self.conductor, tuple(a / other for a in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = CycNum.one(self.conductor)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, CycNum):
            return self.conductor == other.conductor and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, RootExp):
            return other.conductor == self.conductor and self == other.to_cyc()
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.conductor, self.coeffs))
        return self._hash

    def is_rational(self):
        return not any(self.coeffs[1:])

    def lift(self, M):
        """Same number viewed in Q(zeta_M); requires N | M."""
        N = self.conductor
        if M % N:
            raise ConductorMismatch(f"{N} does not divide {M}")
        step = M // N
        out = CycNum.zero(M)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + CycNum.root(M, i * step) * c
        return out

    def conjugate(self):
        """Complex conjugate, zeta -> zeta^{-1}."""
        N = self.conductor
        out = CycNum.zero(N)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + CycNum.root(N, -i) * c
        return out

    def to_complex(self):
        import cmath
        w = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(float(c) * w ** i for i, c in enumerate(self.coeffs))

    def as_root_exp(self):
        """Return RootExp k with self == zeta_N^k, or None."""
        try:
            return RootExp(self.conductor, _root_index(self.conductor)[self.coeffs])
        except KeyError:
            return None

    # text / json
    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if i == 0:
                terms.append(str(c))
            elif c:
                terms.append(f"{c}*z" if i == 1 else f"{c}*z^{i}")
        return " + ".join(terms) + f" @ {self.conductor}"

    def __repr__(self):
        return f"CycNum({self})"

    @classmethod
    def parse(cls, text):
        body, _, n = text.rpartition("@")
        N = int(n)
        coeffs = [Fraction(0)] * euler_phi(N)
        for term in body.split(" + "):
            term = term.strip()
            if "*z" in term:
                c, _, p = term.partition("*z")
                k = int(p[1:]) if p.startswith("^") else 1
                coeffs[k] += Fraction(c)
            else:
                coeffs[0] += Fraction(term)
        return cls(N, coeffs)

    def to_json(self):
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, N, data):
        return cls(N, [Fraction(s) for s in data])


@lru_cache(maxsize=None)
def _root_index(N):
    return {c: k for k, c in enumerate(_root_table(N))}


def _reduce_long(N, coeffs):
    m = euler_phi(N)
    _, r = _polydivmod(list(coeffs), list(cyclotomic_poly(N)))
    r = list(r) + [Fraction(0)] * (m - len(r))
    return tuple(r[:m])


def _polymul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _polysub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


class RootExp:
    """The root of unity zeta_N ** exp, multiplied by adding exponents."""

    __slots__ = ("conductor", "exp")

    def __init__(self, conductor, exp=0):
        self.conductor = conductor
        self.exp = exp % conductor

    def __mul__(self, other):
        if other.conductor != self.conductor:
            raise ConductorMismatch(f"{self.conductor} vs {other.conductor}")
        return RootExp(self.conductor, self.exp + other.exp)

    def inv(self):
        return RootExp(self.conductor, -self.exp)

    def __pow__(self, k):
        return RootExp(self.conductor, self.exp * k)

    def __eq__(self, other):
        if isinstance(other, RootExp):
            return self.conductor == other.conductor and self.exp == other.exp
        return NotImplemented

    def __hash__(self):
        return hash(("root", self.conductor, self.exp))

    def __repr__(self):
        return f"RootExp({self.conductor}, {self.exp})"

    def to_cyc(self):
        return CycNum.root(self.conductor, self.exp)

    def lift(self, M):
        if M % self.conductor:
            raise ConductorMismatch(f"{self.conductor} does not divide {M}")
        return RootExp(M, self.exp * (M // self.conductor))

    def order(self):
        return self.conductor // gcd(self.conductor, self.exp)


def as_root_exp(z):
    return z.as_root_exp()


def lcm(*ns):
    out = 1
    for n in ns:
        out = out * n // gcd(out, n)
    return out
