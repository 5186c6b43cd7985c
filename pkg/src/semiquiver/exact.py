"""Exact scalars and linear algebra.

Scalars are either :class:`fractions.Fraction` (or ``int``) or
:class:`Cyclotomic`.  Every routine here works for any mix of the two,
since ``Cyclotomic`` coerces rationals on the fly.  Nothing ever falls
back to floating point.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Sequence


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in _factor(n):
        result = result // p * (p - 1)
    return result


def moebius_number(n: int) -> int:
    f = _factor(n)
    if any(k > 1 for k in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic
    num = list(num)
    dl = len(den)
    out = [0] * (len(num) - dl + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dl - 1]
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num[: dl - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients (constant term first) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _poly_divexact(num, cyclotomic_polynomial(d))
    return tuple(num)


@lru_cache(maxsize=None)
def _powers(m: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of zeta_m^t, t = 0..m-1, in the power basis of length phi(m)."""
    phi_poly = cyclotomic_polynomial(m)
    deg = len(phi_poly) - 1
    cur = [0] * deg
    cur[0] = 1
    out = []
    for _ in range(m):
        out.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for k in range(deg):
                cur[k] -= top * phi_poly[k]
    return tuple(out)


@lru_cache(maxsize=None)
def _normalized_traces(m: int) -> tuple[Fraction, ...]:
    # trace of zeta_m^j divided by phi(m): a Ramanujan sum quotient; invariant under lifting
    phi = euler_phi(m)
    out = []
    for j in range(phi):
        g = gcd(j, m)
        q = m // g
        out.append(Fraction(moebius_number(q) * phi // euler_phi(q), phi))
    return tuple(out)


def _reduce(m: int, poly: Sequence) -> tuple[Fraction, ...]:
    pw = _powers(m)
    phi = len(pw[0])
    acc = [Fraction(0)] * phi
    for j, c in enumerate(poly):
        if not c:
            continue
        if j < phi:
            acc[j] += c
        else:
            for k, b in enumerate(pw[j % m]):
                if b:
                    acc[k] += c * b
    return tuple(acc)


class Cyclotomic:
    """An element of the m-th cyclotomic field Q(zeta_m).

    Stored as rational coordinates on 1, zeta, ..., zeta^(phi(m)-1), i.e.
    reduced modulo the m-th cyclotomic polynomial, which makes equality a
    coordinate comparison once both sides share a conductor.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Iterable = (0,)):
        m = int(conductor)
        if m < 1:
            raise ValueError("conductor must be positive")
        self.conductor = m
        self.coeffs = _reduce(m, [Fraction(c) for c in coeffs])

    @classmethod
    def _make(cls, m: int, coeffs: tuple[Fraction, ...]) -> "Cyclotomic":
        obj = cls.__new__(cls)
        obj.conductor = m
        obj.coeffs = coeffs
        return obj

    @classmethod
    def rational(cls, q) -> "Cyclotomic":
        return cls._make(1, (Fraction(q),))

    # -- structure ---------------------------------------------------------
    def lift(self, m: int) -> "Cyclotomic":
        """The same number written over conductor ``m`` (a multiple of ours)."""
        if m == self.conductor:
            return self
        if m % self.conductor:
            raise ValueError(f"cannot lift conductor {self.conductor} to {m}")
        k = m // self.conductor
        pw = _powers(m)
        acc = [Fraction(0)] * len(pw[0])
        for j, c in enumerate(self.coeffs):
            if c:
                for idx, b in enumerate(pw[(j * k) % m]):
                    if b:
                        acc[idx] += c * b
        return Cyclotomic._make(m, tuple(acc))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_integer(self) -> bool:
        return self.is_rational() and self.coeffs[0].denominator == 1

    def conjugate(self) -> "Cyclotomic":
        m = self.conductor
        pw = _powers(m)
        acc = [Fraction(0)] * len(pw[0])
        for j, c in enumerate(self.coeffs):
            if c:
                for idx, b in enumerate(pw[(-j) % m]):
                    if b:
                        acc[idx] += c * b
        return Cyclotomic._make(m, tuple(acc))

    def normalized_trace(self) -> Fraction:
        return sum((c * t for c, t in zip(self.coeffs, _normalized_traces(self.conductor))), Fraction(0))

    # -- arithmetic --------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._make(1, (Fraction(other),))
        return None

    def _common(self, other: "Cyclotomic"):
        if self.conductor == other.conductor:
            return self.conductor, self.coeffs, other.coeffs
        m = lcm(self.conductor, other.conductor)
        return m, self.lift(m).coeffs, other.lift(m).coeffs

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._make(self.conductor, (self.coeffs[0] + other,) + self.coeffs[1:])
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        m, a, b = self._common(other)
        return Cyclotomic._make(m, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._make(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._make(self.conductor, tuple(c * other for c in self.coeffs))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.conductor == 1:
            return self * other.coeffs[0]
        if self.conductor == 1:
            return other * self.coeffs[0]
        m, a, b = self._common(other)
        prod = [Fraction(0)] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic._make(m, _reduce(m, prod))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Cyclotomic._make(self.conductor, (1 / self.coeffs[0],) + self.coeffs[1:])
        m = self.conductor
        mod = [Fraction(c) for c in cyclotomic_polynomial(m)]
        inv = _poly_inverse_mod(list(self.coeffs), mod)
        return Cyclotomic._make(m, _reduce(m, inv))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison --------------------------------------------------------
    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        _, a, b = self._common(other)
        return a == b

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(("cyclotomic", self.normalized_trace()))

    def __repr__(self) -> str:
        return f"Cyclotomic({self.conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if j == 0 else f"E({self.conductor})" + (f"^{j}" if j > 1 else "")
            if j == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    # -- wire form ---------------------------------------------------------
    def to_wire(self, conductor: int | None = None) -> list[list[int]]:
        """``[[exponent, num, den], ...]`` meaning sum (num/den) * E(conductor)^exponent."""
        x = self.lift(conductor) if conductor else self
        return [[j, c.numerator, c.denominator] for j, c in enumerate(x.coeffs) if c]

    @classmethod
    def from_wire(cls, conductor: int, triples) -> "Cyclotomic":
        poly: dict[int, Fraction] = {}
        for item in triples:
            if len(item) != 3:
                raise ValueError(f"bad cyclotomic term {item!r}")
            e, num, den = (int(v) for v in item)
            if den == 0:
                raise ValueError("zero denominator in cyclotomic term")
            e %= conductor
            poly[e] = poly.get(e, Fraction(0)) + Fraction(num, den)
        dense = [Fraction(0)] * conductor
        for e, c in poly.items():
            dense[e] += c
        return cls._make(conductor, _reduce(conductor, dense))


def _poly_trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list, b: list):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_poly_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()
    return q, a


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _poly_inverse_mod(p: list, mod: list) -> list:
    # extended Euclid: s*p + t*mod = gcd, gcd a nonzero constant since mod is irreducible
    r0, r1 = list(mod), _poly_trim(list(p))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, _poly_trim(r)
        s0, s1 = s1, _poly_trim(_poly_sub(s0, _poly_mul(q, s1)))
    c = r1[0]
    return [x / c for x in s1]


def cyclo(m: int, e: int = 1) -> Cyclotomic:
    """zeta_m ** e."""
    if m < 1:
        raise ValueError("conductor must be positive")
    return Cyclotomic._make(m, tuple(Fraction(c) for c in _powers(m)[e % m]))


def simplify(x):
    """Return a Fraction when ``x`` is rational; speeds up downstream elimination."""
    if isinstance(x, Cyclotomic):
        return x.coeffs[0] if x.is_rational() else x
    return Fraction(x)


def as_cyclotomic(x) -> Cyclotomic:
    return x if isinstance(x, Cyclotomic) else Cyclotomic.rational(x)


def as_integer(x, what: str = "value") -> int:
    """Exact integer value of ``x`` or ValueError; never rounds."""
    if isinstance(x, Cyclotomic):
        if not x.is_integer():
            raise ValueError(f"{what} {x} is not a rational integer")
        return int(x.coeffs[0])
    q = Fraction(x)
    if q.denominator != 1:
        raise ValueError(f"{what} {q} is not an integer")
    return int(q)


# ---------------------------------------------------------------------------
# Dense elimination

def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form with first-nonzero pivoting, column by column.

    Returns ``(rows, pivot_columns)``; input is not modified.
    """
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse() if isinstance(m[r][c], Cyclotomic) else 1 / Fraction(m[r][c])
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    ech = Echelon()
    for row in rows:
        ech.add({j: x for j, x in enumerate(row) if x})
    return len(ech)


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of {v : M v = 0}; one vector per free column, free entry 1."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v: list = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> list | None:
    """One solution of M v = rhs, or None when the system is inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    v: list = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        v[p] = row[ncols]
    return v


class Echelon:
    """Incrementally maintained echelon basis of a span of sparse vectors.

    Vectors are dicts ``{coordinate: nonzero scalar}``; any hashable,
    orderable coordinates work.  Each stored row has its smallest
    coordinate as pivot with coefficient 1.
    """

    def __init__(self):
        self.rows: dict = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        v = {k: x for k, x in v.items() if x}
        done: dict = {}
        while v:
            p = min(v)
            row = self.rows.get(p)
            if row is None:
                done[p] = v.pop(p)
                continue
            f = v[p]
            for k, x in row.items():
                y = v.get(k, 0) - f * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
        return done

    def add(self, v: dict) -> bool:
        """Insert ``v``; return True iff it was independent of the current span."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        lead = r[p]
        inv = lead.inverse() if isinstance(lead, Cyclotomic) else 1 / Fraction(lead)
        self.rows[p] = {k: x * inv for k, x in r.items()}
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)


class ExactMatrix:
    """Immutable dense matrix over Q or a cyclotomic field."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        self.rows = tuple(tuple(simplify(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "ExactMatrix":
        m = n if m is None else m
        return cls([[0] * m for _ in range(n)], ncols=m)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"ExactMatrix([{body}])"

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self.rows), ncols=self.nrows) if self.rows else ExactMatrix.zeros(self.ncols, 0)

    T = property(transpose)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(k, x) for k, x in enumerate(r) if x]
            out.append([sum((x * col[k] for k, x in nz), Fraction(0)) for col in cols])
        return ExactMatrix(out, ncols=other.ncols)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix([[x + y for x, y in zip(a, b)] for a, b in zip(self.rows, other.rows)], ncols=self.ncols)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix([[x - y for x, y in zip(a, b)] for a, b in zip(self.rows, other.rows)], ncols=self.ncols)

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix([[c * x for x in r] for r in self.rows], ncols=self.ncols)

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def rank(self) -> int:
        return rank(self.rows)

    def nullspace(self) -> list[list]:
        return nullspace(self.rows, self.ncols)

    def apply(self, v: Sequence) -> list:
        return [sum((x * y for x, y in zip(r, v) if x), Fraction(0)) for r in self.rows]

    def flat(self) -> dict:
        return {(i, j): x for i, r in enumerate(self.rows) for j, x in enumerate(r) if x}


def block_matrix(blocks: Sequence[Sequence[ExactMatrix | None]], block_rows: int, block_cols: int) -> ExactMatrix:
    """Assemble from a grid of equally sized blocks; ``None`` is a zero block."""
    out = []
    for brow in blocks:
        for i in range(block_rows):
            line: list = []
            for blk in brow:
                line.extend(blk.rows[i] if blk is not None else [0] * block_cols)
            out.append(line)
    return ExactMatrix(out, ncols=block_cols * (len(blocks[0]) if blocks else 0))


def nilpotency_index(
    generators: Sequence,
    multiply: Callable | None = None,
    to_vector: Callable | None = None,
    dim: int | None = None,
) -> int | None:
    """Least N such that every product of N generators vanishes, else None.

    Iterates Span^(k+1) = Span^k * Span^1 on explicit bases.  By default the
    generators are square :class:`ExactMatrix` objects; pass ``multiply``
    and ``to_vector`` to run the same iteration inside another algebra (the
    vectors must be sparse dicts).  ``dim`` is the ambient dimension; a
    nilpotent subalgebra of dimension d has vanishing (d+1)-st power, which
    bounds the iteration.
    """
    if multiply is None:
        multiply = lambda a, b: a @ b  # noqa: E731
        to_vector = ExactMatrix.flat
        if dim is None:
            dim = generators[0].nrows ** 2 if generators else 0
    if dim is None:
        raise ValueError("dim is required with a custom multiply")

    def independent(items):
        ech, keep = Echelon(), []
        for x in items:
            if ech.add(to_vector(x)):
                keep.append(x)
        return keep, ech

    base, base_ech = independent(generators)
    level, level_ech = base, base_ech
    k = 1
    while k <= dim + 1:
        if not level:
            return k
        nxt, nxt_ech = independent(multiply(a, b) for a in level for b in base)
        if len(nxt) == len(level) and all(level_ech.contains(to_vector(x)) for x in nxt):
            return None
        level, level_ech = nxt, nxt_ech
        k += 1
    return None
