"""Strictly upper triangular matrices, unipotent group elements, and functionals.

All three value types are sparse maps from 1-based positions (i,j), i < j,
to non-zero field elements; zeros are never stored.  A NilMatrix holds the
matrix entries x_ij, a Functional holds the coefficients lambda(e_ij), and a
UniMatrix is I + off for a NilMatrix off.  The maps between a functional and
the matrix carrying the same numbers are the free reinterpretations
as_matrix()/as_functional().

The six actions (left/right/adjoint on matrices, left/right/coadjoint on
functionals) are pure functions; every value here is immutable and safe to
share across workers.
"""

from __future__ import annotations

from .gf import Field, FieldElement


def positions(n: int) -> list[tuple[int, int]]:
    """All strictly upper positions (i,j), 1 <= i < j <= n, in lex order."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def _clean(field: Field, n: int, entries: dict) -> dict:
    out = {}
    for (i, j), v in entries.items():
        if not (1 <= i < j <= n):
            raise ValueError(f"position ({i},{j}) is not strictly upper for n={n}")
        if v:
            out[(i, j)] = v
    return out


class _SparseUpper:
    """Shared machinery for NilMatrix and Functional."""

    __slots__ = ("field", "n", "entries", "_hash")

    def __init__(self, field: Field, n: int, entries: dict | None = None):
        self.field = field
        self.n = n
        self.entries = _clean(field, n, entries or {})
        self._hash = None

    def get(self, i: int, j: int) -> FieldElement:
        return self.entries.get((i, j), self.field.zero)

    def items(self):
        """Entries in lex position order (deterministic)."""
        return sorted(self.entries.items())

    def support(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.entries)

    def sort_key(self) -> tuple:
        """Canonical ordering key: lex over (position, element index)."""
        return tuple(sorted((i, j, v.index) for (i, j), v in self.entries.items()))

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(other) is not type(self):
            return NotImplemented
        return (
            self.n == other.n
            and self.entries == other.entries
            and self.field == other.field
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (type(self).__name__, self.field.p, self.field.k, self.n,
                 frozenset(self.entries.items()))
            )
        return self._hash

    def _combine(self, other, minus=False):
        if self.n != other.n:
            raise ValueError("size mismatch")
        out = dict(self.entries)
        for pos, v in other.entries.items():
            w = out.get(pos, self.field.zero) + (-v if minus else v)
            if w:
                out[pos] = w
            else:
                out.pop(pos, None)
        return type(self)(self.field, self.n, out)

    def __add__(self, other):
        return self._combine(other)

    def __sub__(self, other):
        return self._combine(other, minus=True)

    def __neg__(self):
        return type(self)(self.field, self.n, {p: -v for p, v in self.entries.items()})

    def scale(self, a: FieldElement):
        if not a:
            return type(self)(self.field, self.n, {})
        return type(self)(self.field, self.n, {p: a * v for p, v in self.entries.items()})

    def _body(self) -> str:
        if not self.entries:
            return "0"
        return " + ".join(
            (f"{v}*" if v != self.field.one else "") + f"({i},{j})"
            for (i, j), v in self.items()
        )


class NilMatrix(_SparseUpper):
    """An element of the strictly upper triangular nilpotent algebra."""

    def as_functional(self) -> "Functional":
        return Functional(self.field, self.n, self.entries)

    def __repr__(self) -> str:
        return f"NilMatrix(n={self.n}, {self._body()})"


class Functional(_SparseUpper):
    """A linear functional, stored by its values on the matrix units."""

    def as_matrix(self) -> NilMatrix:
        return NilMatrix(self.field, self.n, self.entries)

    def __call__(self, x: NilMatrix) -> FieldElement:
        return evaluate(self, x)

    def __repr__(self) -> str:
        return f"Functional(n={self.n}, {self._body()})"


def e_ij(field: Field, n: int, i: int, j: int, a: FieldElement | None = None) -> NilMatrix:
    return NilMatrix(field, n, {(i, j): field.one if a is None else a})


def eps_ij(field: Field, n: int, i: int, j: int, a: FieldElement | None = None) -> Functional:
    return Functional(field, n, {(i, j): field.one if a is None else a})


def nil_mul(x: NilMatrix, y: NilMatrix) -> NilMatrix:
    """Matrix product of two strictly upper matrices (again strictly upper)."""
    if x.n != y.n:
        raise ValueError("size mismatch")
    out: dict = {}
    for (i, k), a in x.entries.items():
        for (k2, j), b in y.entries.items():
            if k2 == k:
                w = out.get((i, j), x.field.zero) + a * b
                if w:
                    out[(i, j)] = w
                else:
                    out.pop((i, j), None)
    return NilMatrix(x.field, x.n, out)


class UniMatrix:
    """A unipotent group element I + off."""

    __slots__ = ("off", "_hash")

    def __init__(self, off: NilMatrix):
        self.off = off
        self._hash = None

    @property
    def field(self) -> Field:
        return self.off.field

    @property
    def n(self) -> int:
        return self.off.n

    def __mul__(self, other: "UniMatrix") -> "UniMatrix":
        """(I+X)(I+Y) = I + X + Y + XY."""
        return UniMatrix(self.off + other.off + nil_mul(self.off, other.off))

    def inv(self) -> "UniMatrix":
        """(I+X)^(-1) = I - X + X^2 - ..., at most n-1 terms."""
        acc = self.off.scale(-self.field.one)
        power = self.off
        sign = True  # next term is +X^t for even t
        while True:
            power = nil_mul(power, self.off)
            if not power:
                break
            acc = acc + power if sign else acc - power
            sign = not sign
        return UniMatrix(acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniMatrix):
            return NotImplemented
        return self.off == other.off

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("uni", self.off))
        return self._hash

    def __repr__(self) -> str:
        return f"UniMatrix(n={self.n}, I + {self.off._body()})"


def identity(field: Field, n: int) -> UniMatrix:
    return UniMatrix(NilMatrix(field, n, {}))


def elementary(field: Field, n: int, i: int, j: int, a: FieldElement) -> UniMatrix:
    """The generator I + a*e_ij."""
    return UniMatrix(NilMatrix(field, n, {(i, j): a}))


# -- actions on the algebra -------------------------------------------------

def act_left(g: UniMatrix, x: NilMatrix) -> NilMatrix:
    """g . x  (a sequence of row operations)."""
    if g.n != x.n:
        raise ValueError("size mismatch")
    return x + nil_mul(g.off, x)


def act_right(x: NilMatrix, g: UniMatrix) -> NilMatrix:
    """x . g  (a sequence of column operations)."""
    if g.n != x.n:
        raise ValueError("size mismatch")
    return x + nil_mul(x, g.off)


def act_adjoint(g: UniMatrix, x: NilMatrix) -> NilMatrix:
    """g . x . g^(-1)."""
    return act_right(act_left(g, x), g.inv())


def conj(g: UniMatrix, h: UniMatrix) -> UniMatrix:
    """g h g^(-1); matches act_adjoint through h = I + x."""
    return g * h * g.inv()


# -- actions on the dual ----------------------------------------------------

def coact_left(g: UniMatrix, lam: Functional) -> Functional:
    """(g * lam)(x) = lam(x . g).

    On coefficients: new c_kl = c_kl + sum over entries (l,b) of g-I of
    y_lb * c_kb, a restricted column operation on the coefficient matrix.
    """
    if g.n != lam.n:
        raise ValueError("size mismatch")
    out = dict(lam.entries)
    zero = lam.field.zero
    for (l, b), y in g.off.entries.items():
        for (k, b2), c in lam.entries.items():
            if b2 == b and k < l:
                w = out.get((k, l), zero) + y * c
                if w:
                    out[(k, l)] = w
                else:
                    out.pop((k, l), None)
    return Functional(lam.field, lam.n, out)


def coact_right(lam: Functional, g: UniMatrix) -> Functional:
    """(lam * g)(x) = lam(g . x).

    On coefficients: new c_kl = c_kl + sum over entries (a,k) of g-I of
    y_ak * c_al, a restricted row operation on the coefficient matrix.
    """
    if g.n != lam.n:
        raise ValueError("size mismatch")
    out = dict(lam.entries)
    zero = lam.field.zero
    for (a, k), y in g.off.entries.items():
        for (a2, l), c in lam.entries.items():
            if a2 == a and l > k:
                w = out.get((k, l), zero) + y * c
                if w:
                    out[(k, l)] = w
                else:
                    out.pop((k, l), None)
    return Functional(lam.field, lam.n, out)


def coact_coadjoint(lam: Functional, g: UniMatrix) -> Functional:
    """lam^g(x) = lam(g^(-1) . x . g) = g * lam * g^(-1)."""
    return coact_left(g, coact_right(lam, g.inv()))


def evaluate(lam: Functional, x: NilMatrix) -> FieldElement:
    """lam(x) = sum of c_ij * x_ij."""
    if lam.n != x.n:
        raise ValueError("size mismatch")
    small, big = (lam.entries, x.entries) if len(lam.entries) <= len(x.entries) else (x.entries, lam.entries)
    total = lam.field.zero
    for pos, v in small.items():
        w = big.get(pos)
        if w is not None:
            total = total + v * w
    return total


# -- JSON and text encodings -------------------------------------------------

_KINDS = {"nil": NilMatrix, "fun": Functional}


def to_json(value) -> dict:
    """{"kind": ..., "n": ..., "entries": [{"i":..,"j":..,"v":..}, ...]}."""
    if isinstance(value, UniMatrix):
        kind, inner = "uni", value.off
    elif isinstance(value, NilMatrix):
        kind, inner = "nil", value
    elif isinstance(value, Functional):
        kind, inner = "fun", value
    else:
        raise TypeError(f"cannot encode {type(value).__name__}")
    return {
        "kind": kind,
        "n": inner.n,
        "entries": [{"i": i, "j": j, "v": str(v)} for (i, j), v in inner.items()],
    }


def from_json(field: Field, data: dict):
    entries = {(e["i"], e["j"]): field.parse(e["v"]) for e in data["entries"]}
    if data["kind"] == "uni":
        return UniMatrix(NilMatrix(field, data["n"], entries))
    return _KINDS[data["kind"]](field, data["n"], entries)
