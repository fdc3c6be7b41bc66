"""Garside normal forms in Artin groups of finite type.

Words in the Artin generators t_i are rewritten as Delta^d x_1 ... x_k with
each x_i a simple element (a Weyl group element, stored as its integer
reflection matrix) and every adjacent pair left-weighted: the left descent
set of x_{i+1} is contained in the right descent set of x_i.  Two words are
equal in the Artin group exactly when their normal forms agree.

Delta is t(w_0), spelled by the canonical greedy reduced word; for a
disconnected graph it is the product of the component Garside elements in
vertex order.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graphs import CoxeterGraph, GraphError, classify, full_subgraph, parse_graph
from .weylrep import (
    CartanData,
    Matrix,
    canonical_involution,
    catalogue_order,
    identity_matrix,
    is_positive_root,
    longest_element,
    mat_mul,
    reduced_word,
    reflection_rep,
)

DEFAULT_ORDER_CAP = 4 * 10**6

Letter = tuple[int, int]
Word = tuple[Letter, ...]


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class GarsideNormalForm:
    """Delta power and left-weighted simple factors (reflection matrices)."""

    delta_power: int
    factors: tuple[Matrix, ...]

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    @property
    def is_identity(self) -> bool:
        return self.delta_power == 0 and not self.factors

    @property
    def is_positive(self) -> bool:
        return self.delta_power >= 0


def _require_finite(g: CoxeterGraph) -> CartanData:
    dtype = classify(g)
    if not dtype.is_finite:
        raise GraphError(f"Garside calculus needs a finite type, got {dtype}")
    return reflection_rep(g)


def _require_garside(g: CoxeterGraph, cap: int) -> CartanData:
    c = _require_finite(g)
    order = catalogue_order(classify(g))
    if order is None or order > cap:
        raise GraphError(
            f"Weyl group order {order} exceeds the cap {cap}; "
            "raise the cap to work in this rank"
        )
    return c


def garside_delta(g: CoxeterGraph) -> Word:
    """The canonical positive word spelling Delta, component by component."""
    _require_finite(g)
    letters: list[Letter] = []
    for comp in g.components():
        sub = full_subgraph(g, comp)
        _, word = longest_element(reflection_rep(sub))
        letters.extend((comp[i], 1) for i in word)
    return tuple(letters)


def conj_by_delta(g: CoxeterGraph, i: int) -> int:
    """The index j with Delta t_i Delta^{-1} = t_j."""
    _require_finite(g)
    return canonical_involution(reflection_rep(g))[i]


def _descents_right(m: Matrix, rank: int) -> set[int]:
    return {
        i for i in range(rank)
        if not is_positive_root(tuple(row[i] for row in m))
    }


def _left_weighted(c: CartanData, x, y):
    """Slide simple letters from the head of y to the tail of x until the
    pair (x, y) is left-weighted.  x and y are (matrix, inverse) pairs."""
    (xm, xi), (ym, yi) = x, y
    rank = c.rank
    moved = False
    while True:
        right_x = _descents_right(xm, rank)
        slid = None
        for i in range(rank):
            if i in right_x:
                continue
            # i is a left descent of y iff y^{-1}(alpha_i) < 0.
            if not is_positive_root(tuple(row[i] for row in yi)):
                slid = i
                break
        if slid is None:
            return moved, (xm, xi), (ym, yi)
        s = c.simple_reflections[slid]
        xm, xi = mat_mul(xm, s), mat_mul(s, xi)
        ym, yi = mat_mul(s, ym), mat_mul(yi, s)
        moved = True


def normal_form(g: CoxeterGraph, word: Word, cap: int = DEFAULT_ORDER_CAP) -> GarsideNormalForm:
    """Left-greedy normal form of an Artin word (letters (vertex, +-1))."""
    c = _require_garside(g, cap)
    w0, _ = longest_element(c)
    ident = identity_matrix(c.rank)
    delta = 0
    factors: list[tuple[Matrix, Matrix]] = []
    for vertex, exp in word:
        if not 0 <= vertex < c.rank:
            raise WordError(f"letter index {vertex} out of range")
        s = c.simple_reflections[vertex]
        if exp == 1:
            factors.append((s, s))
        elif exp == -1:
            # t_i^{-1} = Delta^{-1} t(w_0 s_i), and pushing Delta^{-1} left
            # conjugates every factor accumulated so far.
            delta -= 1
            factors = [(mat_mul(mat_mul(w0, m), w0), mat_mul(mat_mul(w0, mi), w0))
                       for m, mi in factors]
            factors.append((mat_mul(w0, s), mat_mul(s, w0)))
        else:
            raise WordError(f"letter exponent must be +1 or -1, got {exp}")
    # Bubble adjacent pairs until every one is left-weighted.
    changed = True
    while changed:
        changed = False
        for k in range(len(factors) - 1):
            moved, x, y = _left_weighted(c, factors[k], factors[k + 1])
            if moved:
                factors[k], factors[k + 1] = x, y
                changed = True
    mats = [m for m, _ in factors]
    while mats and mats[0] == w0:
        delta += 1
        mats.pop(0)
    while mats and mats[-1] == ident:
        mats.pop()
    assert all(m != ident and m != w0 for m in mats)
    return GarsideNormalForm(delta, tuple(mats))


def words_equal(g: CoxeterGraph, u: Word, v: Word, cap: int = DEFAULT_ORDER_CAP) -> bool:
    return normal_form(g, u, cap) == normal_form(g, v, cap)


def factor_words(g: CoxeterGraph, nf: GarsideNormalForm) -> tuple[tuple[int, ...], ...]:
    """Canonical reduced words of the simple factors."""
    c = reflection_rep(g)
    return tuple(reduced_word(c, m) for m in nf.factors)


# ---------------------------------------------------------------------------
# Named subgraphs and the word grammar


def resolve_subgraph(g: CoxeterGraph, name: str) -> tuple[int, ...]:
    """Vertex indices of the canonical full subgraph with the given
    catalogue type name.

    Among all vertex subsets inducing the named type, the one whose sorted
    label tuple is lexicographically largest is canonical; for an affine
    builtin this prefers the subgraph avoiding the added vertex 0 (so E7
    inside E7~ means dropping the affine vertex, A7 means dropping vertex 2).
    """
    target = classify(parse_graph(name))
    if not target.is_finite or target.kind == "reducible":
        raise WordError(f"subgraph name {name!r} must be a finite connected type")
    size = target.rank
    best: tuple[int, ...] | None = None
    best_key = None

    def label_key(subset):
        labels = [g.labels[v] for v in subset]
        try:
            return tuple(sorted(int(x) for x in labels))
        except ValueError:
            return tuple(sorted(labels))

    for subset in combinations(range(g.vertex_count), size):
        if classify(full_subgraph(g, subset)) == target:
            key = label_key(subset)
            if best_key is None or key > best_key:
                best, best_key = subset, key
    if best is None:
        raise WordError(f"no full subgraph of type {name} in {g!r}")
    return best


def _delta_word_of_subgraph(g: CoxeterGraph, name: str) -> Word:
    vertices = resolve_subgraph(g, name)
    sub = full_subgraph(g, vertices)
    return tuple((vertices[i], exp) for i, exp in garside_delta(sub))


def parse_word(g: CoxeterGraph, text: str) -> Word:
    """Parse a word: whitespace-separated letters `t<label>`, `D(<type>)`,
    or `1`, each with an optional integer exponent as in `t3^-1`."""
    letters: list[Letter] = []
    for token in text.split():
        base, _, exp_text = token.partition("^")
        if exp_text:
            try:
                exp = int(exp_text)
            except ValueError:
                raise WordError(f"bad exponent in {token!r}") from None
        else:
            exp = 1
        if base == "1":
            if exp_text:
                raise WordError("the empty word 1 takes no exponent")
            continue
        if base.startswith("D(") and base.endswith(")"):
            body = _delta_word_of_subgraph(g, base[2:-1])
        elif base.startswith("t"):
            try:
                body = ((g.index_of(base[1:]), 1),)
            except GraphError as exc:
                raise WordError(str(exc)) from None
        else:
            raise WordError(f"cannot parse letter {token!r}")
        if exp < 0:
            body = tuple((v, -e) for v, e in reversed(body))
            exp = -exp
        letters.extend(body * exp)
    return tuple(letters)


def word_text(g: CoxeterGraph, word: Word) -> str:
    if not word:
        return "1"
    return " ".join(
        f"t{g.labels[v]}" + ("" if e == 1 else "^-1") for v, e in word
    )


def inverse_word(word: Word) -> Word:
    return tuple((v, -e) for v, e in reversed(word))
