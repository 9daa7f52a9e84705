"""The tensor ring of cluster characters.

Products decompose with non-negative integer multiplicities, computed along
two independent routes that certify each other:

* the rewrite route expands colliding primary factors case by case (same
  column, same row, same cell with cancelling or non-cancelling values) and
  recurses; total degree strictly drops at every expansion, so it halts;
* the counting route counts pairs (lam1, lam2) across two clusters whose
  sum lands in a given cluster and assembles the multiplicity from the
  d/i indices of the three templates.

A CharSum is a formal non-negative integer combination of templates; keys
are always canonical templates.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from . import clusters
from .clusters import Template, coadjoint_template, invariants_of
from .errors import InvariantViolation, ResourceCapExceeded
from .gf import Field, FieldElement

DEFAULT_MAX_PAIRS = 2**24

Cell = tuple[int, int, FieldElement]


class CharSum:
    """A non-negative integer combination of cluster characters."""

    __slots__ = ("field", "n", "terms")

    def __init__(self, field: Field, n: int, terms: dict[Template, int]):
        clean = {}
        for tau, mult in terms.items():
            if mult < 0:
                raise InvariantViolation(f"negative multiplicity {mult} for {tau.text()}")
            if mult:
                clean[tau] = mult
        self.field = field
        self.n = n
        self.terms = clean

    @classmethod
    def single(cls, tau: Template, mult: int = 1) -> "CharSum":
        return cls(tau.field, tau.n, {tau: mult})

    @classmethod
    def trivial(cls, field: Field, n: int) -> "CharSum":
        return cls.single(Template(field, n, []))

    def items(self) -> list[tuple[Template, int]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    @property
    def total_degree(self) -> int:
        q = self.field.q
        return sum(mult * q ** invariants_of(tau).d for tau, mult in self.terms.items())

    def __add__(self, other: "CharSum") -> "CharSum":
        if (self.field, self.n) != (other.field, other.n):
            raise ValueError("mismatched rings")
        merged = dict(self.terms)
        for tau, mult in other.terms.items():
            merged[tau] = merged.get(tau, 0) + mult
        return CharSum(self.field, self.n, merged)

    def scale(self, factor: int) -> "CharSum":
        return CharSum(self.field, self.n, {t: factor * m for t, m in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, CharSum):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.terms == other.terms

    def __repr__(self) -> str:
        body = " + ".join(
            (f"{m}*" if m != 1 else "") + f"[{t.text()}]" for t, m in self.items()
        )
        return f"CharSum({body or '0'})"

    def to_json(self) -> dict:
        return {
            "terms": [{"template": t.text(), "mult": m} for t, m in self.items()],
            "total_degree": str(self.total_degree),
        }


def _find_collision(cells: tuple[Cell, ...]) -> tuple[int, int] | None:
    for a in range(len(cells)):
        for b in range(a + 1, len(cells)):
            if cells[a][0] == cells[b][0] or cells[a][1] == cells[b][1]:
                return a, b
    return None


def _expand_pair(field: Field, c1: Cell, c2: Cell) -> list[tuple[Cell, ...]]:
    """Replacements for a colliding pair of primary factors.

    Each returned cell tuple stands for one product term of multiplicity 1;
    degrees always drop, which is what drives the rewrite to completion.
    """
    (i1, j1, a), (i2, j2, b) = c1, c2
    if (i1, j1) == (i2, j2):
        i, j = i1, j1
        s = a + b
        col_bracket: list[Cell | None] = [None] + [
            (r, j, v) for r in range(i + 1, j) for v in field.nonzero
        ]
        if not s:
            row_bracket: list[Cell | None] = [None] + [
                (i, c, v) for c in range(i + 1, j) for v in field.nonzero
            ]
            return [
                tuple(x for x in (ca, cb) if x is not None)
                for ca in col_bracket
                for cb in row_bracket
            ]
        keep = (i, j, s)
        return [(keep,) if x is None else (keep, x) for x in col_bracket]
    if j1 == j2:
        # same column: the higher factor survives, the lower dissolves
        hi, lo = (c1, c2) if i1 < i2 else (c2, c1)
        j = j1
        bracket: list[Cell | None] = [None] + [
            (lo[0], c, v) for c in range(lo[0] + 1, j) for v in field.nonzero
        ]
        return [(hi,) if x is None else (hi, x) for x in bracket]
    # same row: the factor further right survives, the other dissolves
    hi, lo = (c1, c2) if j1 > j2 else (c2, c1)
    i = i1
    jlo = lo[1]
    bracket = [None] + [(r, jlo, v) for r in range(i + 1, jlo) for v in field.nonzero]
    return [(hi,) if x is None else (hi, x) for x in bracket]


def tensor_rewrite(field: Field, n: int, factors) -> CharSum:
    """Decompose a tensor product of primary factors (i, j, a).

    Zero-valued factors are the trivial character and are dropped.  Factor
    sets with pairwise distinct rows and columns combine into a single
    template; otherwise one colliding pair is expanded and the rewrite
    recurses on each resulting term.
    """
    cells = tuple(sorted(((i, j, v) for (i, j, v) in factors if v), key=lambda c: (c[0], c[1], c[2].index)))
    for (i, j, _) in cells:
        if not (1 <= i < j <= n):
            raise ValueError(f"factor position ({i},{j}) out of range for n={n}")
    memo: dict[tuple[Cell, ...], dict[Template, int]] = {}

    def resolve(cs: tuple[Cell, ...]) -> dict[Template, int]:
        hit = memo.get(cs)
        if hit is not None:
            return hit
        coll = _find_collision(cs)
        if coll is None:
            out = {Template(field, n, cs): 1}
        else:
            a, b = coll
            rest = tuple(c for k, c in enumerate(cs) if k not in (a, b))
            out = {}
            for repl in _expand_pair(field, cs[a], cs[b]):
                new = tuple(sorted(rest + repl, key=lambda c: (c[0], c[1], c[2].index)))
                for tau, mult in resolve(new).items():
                    out[tau] = out.get(tau, 0) + mult
        memo[cs] = out
        return out

    return CharSum(field, n, resolve(cells))


def primary_product(
    n: int, i: int, j: int, a: FieldElement, i2: int, j2: int, b: FieldElement
) -> CharSum:
    """Product of the two primary characters at (i,j,a) and (i2,j2,b)."""
    return tensor_rewrite(a.field, n, [(i, j, a), (i2, j2, b)])


def tensor_product(t1: Template, t2: Template) -> CharSum:
    """Product of two cluster characters, via primary factorization + rewrite."""
    if (t1.field, t1.n) != (t2.field, t2.n):
        raise ValueError("mismatched rings")
    return tensor_rewrite(t1.field, t1.n, list(t1.cells) + list(t2.cells))


def c_count(t1: Template, t2: Template, target: Template, max_pairs: int = DEFAULT_MAX_PAIRS) -> int:
    """|{(lam1, lam2) in Psi1 x Psi2 : lam1 + lam2 in Psi(target)}|, exactly."""
    e1 = clusters.cluster_elements(t1)
    e2 = clusters.cluster_elements(t2)
    if len(e1) * len(e2) > max_pairs:
        raise ResourceCapExceeded(
            f"{len(e1)} x {len(e2)} cluster pairs exceed the cap {max_pairs}"
        )
    count = 0
    for lam1, lam2 in product(e1, e2):
        if coadjoint_template(lam1 + lam2) == target:
            count += 1
    return count


def tensor_by_counting(t1: Template, t2: Template, max_pairs: int = DEFAULT_MAX_PAIRS) -> CharSum:
    """Decompose a product by classifying every pairwise sum of cluster elements.

    The multiplicity of a target cluster is q^(i1+i2-d1-d2-d) times the pair
    count; every coefficient must come out a non-negative integer, and the
    result must agree with the rewrite route.  Violations raise.
    """
    if (t1.field, t1.n) != (t2.field, t2.n):
        raise ValueError("mismatched rings")
    field, n = t1.field, t1.n
    q = field.q
    e1 = clusters.cluster_elements(t1)
    e2 = clusters.cluster_elements(t2)
    if len(e1) * len(e2) > max_pairs:
        raise ResourceCapExceeded(
            f"{len(e1)} x {len(e2)} cluster pairs exceed the cap {max_pairs}"
        )
    counts: dict[Template, int] = {}
    for lam1, lam2 in product(e1, e2):
        tau = coadjoint_template(lam1 + lam2)
        counts[tau] = counts.get(tau, 0) + 1
    inv1 = invariants_of(t1)
    inv2 = invariants_of(t2)
    terms: dict[Template, int] = {}
    for tau, cnt in counts.items():
        inv = invariants_of(tau)
        mult = Fraction(cnt * q ** (inv1.i + inv2.i), q ** (inv1.d + inv2.d + inv.d))
        if mult.denominator != 1 or mult < 0:
            raise InvariantViolation(
                f"non-integer multiplicity {mult} for {tau.text()} in"
                f" [{t1.text()}] x [{t2.text()}]"
            )
        terms[tau] = int(mult)
    result = CharSum(field, n, terms)
    rewritten = tensor_rewrite(field, n, list(t1.cells) + list(t2.cells))
    if result != rewritten:
        raise InvariantViolation(
            f"counting and rewrite decompositions disagree for"
            f" [{t1.text()}] x [{t2.text()}]: {result} vs {rewritten}"
        )
    return result


def fold_by_counting(field: Field, n: int, factors, max_pairs: int = DEFAULT_MAX_PAIRS) -> CharSum:
    """Product of many primary factors along the counting route only.

    Folds left, classifying cluster-pair sums at every step; each step also
    re-certifies itself against the rewrite route.  Used by the CLI --check.
    """
    cells = [(i, j, v) for (i, j, v) in factors if v]
    acc = CharSum.trivial(field, n)
    for cell in cells:
        primary = Template(field, n, [cell])
        folded = CharSum(field, n, {})
        for tau, mult in acc.items():
            folded = folded + tensor_by_counting(tau, primary, max_pairs).scale(mult)
        acc = folded
    return acc
