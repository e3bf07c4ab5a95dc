"""Braid words, the braid groupoid's monoidal structure, and the bracket
category built from it.

Conventions fixed once here and relied on everywhere:

* A braid word stores its letters in composition order: letters[0] is the
  leftmost factor, and words apply right to left, so the LAST letter acts
  first.  The matrix of a word under any representation is the product of
  the letter matrices in list order.
* The juxtaposition u ♮ v of braids on m and n strands keeps u's letters
  and shifts v's generator indices up by m.
* A morphism n -> n' of the bracket category is a class [n'-n, w] with w a
  braid on n' strands, two representatives being equal when they differ by
  precomposition with a braid of the first n'-n strands.

Word equality is decided by evaluation in faithful representations: the
Lawrence-Krammer matrices at seeded rational points combined with a fully
symbolic unreduced Burau comparison.  A negative answer always carries a
concrete witness; a positive answer is exact on the Burau side and
probabilistic (faithfulness of Lawrence-Krammer plus random evaluation) on
the Lawrence-Krammer side.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .laurent import EvaluationPoint, LaurentPoly, ONE, ZERO, seeded_points
from .freegroup import FreeWord


class BraidError(ValueError):
    pass


def _free_cancel(letters):
    out = []
    for letter in letters:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of the braid group on `strands` strands."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _free_cancel(self.letters))
        for letter in self.letters:
            if letter == 0 or abs(letter) > self.strands - 1:
                raise BraidError(
                    f"letter s{letter} not a generator on {self.strands} strands"
                )

    @staticmethod
    def identity(strands: int) -> "BraidWord":
        return BraidWord(strands, ())

    def compose(self, other: "BraidWord") -> "BraidWord":
        """self ∘ other: other applies first."""
        if self.strands != other.strands:
            raise BraidError("strand mismatch in composition")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-l for l in reversed(self.letters)))

    def __pow__(self, k: int) -> "BraidWord":
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.strands, base.letters * abs(k))

    def monoidal(self, other: "BraidWord") -> "BraidWord":
        """self ♮ other: lay other to the right, shifting its indices."""
        m = self.strands
        shifted = tuple(l + m if l > 0 else l - m for l in other.letters)
        return BraidWord(m + other.strands, self.letters + shifted)

    def shift(self, k: int, strands: int) -> "BraidWord":
        """id_k ♮ self, on the given total strand count."""
        if strands < self.strands + k:
            raise BraidError("shift target too small")
        return BraidWord(
            strands, tuple(l + k if l > 0 else l - k for l in self.letters)
        )

    def writhe(self) -> int:
        return sum(1 if l > 0 else -1 for l in self.letters)

    def permutation(self) -> tuple[int, ...]:
        """Underlying permutation, as images of positions 1..n."""
        perm = list(range(self.strands + 1))
        for letter in reversed(self.letters):
            i = abs(letter)
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return tuple(perm[1:])

    def is_pure(self) -> bool:
        return self.permutation() == tuple(range(1, self.strands + 1))

    def __str__(self):
        if not self.letters:
            return "id"
        return " ".join(f"s{l}" if l > 0 else f"s{-l}^-1" for l in self.letters)

    def __repr__(self):
        return f"BraidWord({self.strands}, {str(self)!r})"


_BRAID_TOKEN = re.compile(r"s(\d+)(?:\^(-?\d+))?")


def parse_braid(text: str, strands: int) -> BraidWord:
    text = text.strip()
    if text in ("", "id", "1"):
        return BraidWord.identity(strands)
    letters = []
    for part in text.split():
        m = _BRAID_TOKEN.fullmatch(part)
        if not m:
            raise BraidError(f"cannot parse braid letter {part!r}")
        i, e = int(m.group(1)), int(m.group(2) or 1)
        letters.extend([i if e > 0 else -i] * abs(e))
    return BraidWord(strands, tuple(letters))


def braiding(n: int, m: int) -> BraidWord:
    """The groupoid braiding n ♮ m -> m ♮ n on n+m strands.

    In composition order it is the concatenation, for j = 1..n, of the
    descending runs s_{m+j-1} s_{m+j-2} ... s_j; with n = 0 or m = 0 it is
    the empty word.
    """
    if n < 0 or m < 0:
        raise BraidError("negative strand counts")
    letters = []
    for j in range(1, n + 1):
        letters.extend(range(m + j - 1, j - 1, -1))
    return BraidWord(n + m, tuple(letters))


# ---------------------------------------------------------------------------
# Bracket category morphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BracketMorphism:
    """A morphism [target-source, word]: source -> target, word on `target`
    strands."""

    source: int
    target: int
    word: BraidWord

    def __post_init__(self):
        if self.source < 0 or self.target < self.source:
            raise BraidError("need 0 <= source <= target")
        if self.word.strands != self.target:
            raise BraidError("representative word must live on `target` strands")

    @staticmethod
    def identity(n: int) -> "BracketMorphism":
        return BracketMorphism(n, n, BraidWord.identity(n))

    @staticmethod
    def stabilization(source: int, target: int) -> "BracketMorphism":
        """[target-source, id]: the canonical morphism source -> target."""
        return BracketMorphism(source, target, BraidWord.identity(target))

    @staticmethod
    def from_braid(word: BraidWord) -> "BracketMorphism":
        return BracketMorphism(word.strands, word.strands, word)

    def to_json(self) -> dict:
        return {"source": self.source, "target": self.target, "word": list(self.word.letters)}

    def __str__(self):
        return f"[{self.target - self.source}, {self.word} : B_{self.target}]"


def bracket_compose(g: BracketMorphism, f: BracketMorphism) -> BracketMorphism:
    """g ∘ f = [n''-n, word(g) ∘ (id ♮ word(f))]."""
    if f.target != g.source:
        raise BraidError(f"cannot compose {g} after {f}")
    lifted = f.word.shift(g.target - g.source, g.target)
    return BracketMorphism(f.source, g.target, g.word.compose(lifted))


def bracket_monoidal(g: BracketMorphism, f: BracketMorphism) -> BracketMorphism:
    """g ♮ f, with the inverse braiding inserted to route the new strands:

    [m'-m, u] ♮ [n'-n, v] = [m'-m+n'-n, (u ♮ v) ∘ (id_{m'-m} ♮ b_{m, n'-n}^{-1} ♮ id_n)]
    """
    m, mp = g.source, g.target
    n, np_ = f.source, f.target
    side = g.word.monoidal(f.word)
    b_inv = braiding(m, np_ - n).inverse()
    router = b_inv.shift(mp - m, mp + np_ - n).monoidal(BraidWord.identity(n))
    return BracketMorphism(m + n, mp + np_, side.compose(router))


def bracket_equal(
    g: BracketMorphism,
    f: BracketMorphism,
    certainty: int = 3,
    seed: int = 0,
    coset_bound: int = 4,
) -> bool:
    """Equality of bracket-category morphisms.

    Representatives are equal when they differ by precomposition with a
    braid of the first target-source strands.  With a trivial coset group
    the answer is exact (word equality); otherwise coset representatives up
    to the given length are searched, so a negative answer is only
    "not found within bound".
    """
    if (g.source, g.target) != (f.source, f.target):
        return False
    k = g.target - g.source
    if k <= 1:
        return braid_equal(g.word, f.word, certainty, seed)
    for psi in _braid_words_up_to(k, coset_bound):
        candidate = f.word.compose(psi.monoidal(BraidWord.identity(g.source)))
        if braid_equal(g.word, candidate, certainty, seed):
            return True
    return False


def _braid_words_up_to(strands: int, length: int):
    frontier = [BraidWord.identity(strands)]
    yield frontier[0]
    letters = [l for i in range(1, strands) for l in (i, -i)]
    for _ in range(length):
        nxt = []
        for w in frontier:
            for letter in letters:
                ext = BraidWord(strands, w.letters + (letter,))
                if len(ext.letters) == len(w.letters) + 1:
                    nxt.append(ext)
                    yield ext
        frontier = nxt


def enumerate_words(strands: int, max_len: int) -> list[BraidWord]:
    """All freely reduced braid words of length at most max_len."""
    return list(_braid_words_up_to(strands, max_len))


# ---------------------------------------------------------------------------
# Word-equality oracle
# ---------------------------------------------------------------------------

_ONE_MINUS_T = ONE - LaurentPoly.monomial(1, 1, 0)
_T = LaurentPoly.monomial(1, 1, 0)
_T_INV = LaurentPoly.monomial(1, -1, 0)
_ONE_MINUS_T_INV = ONE - _T_INV


def _burau_columns(state: list[dict], letter: int):
    """Right-multiply the column family by the unreduced Burau matrix of a
    signed generator, in place.  Only two columns change."""
    i = abs(letter) - 1
    ci, cj = state[i], state[i + 1]
    if letter > 0:
        # columns of the generator: e_i -> (1-t) e_i + e_{i+1},  e_{i+1} -> t e_i
        state[i] = _col_add(_col_scale(ci, _ONE_MINUS_T), cj)
        state[i + 1] = _col_scale(ci, _T)
    else:
        state[i] = _col_scale(cj, _T_INV)
        state[i + 1] = _col_add(ci, _col_scale(cj, _ONE_MINUS_T_INV))


def _col_scale(col: dict, p: LaurentPoly) -> dict:
    return {r: v * p for r, v in col.items()}


def _col_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for r, v in b.items():
        s = out.get(r, ZERO) + v
        if s.terms:
            out[r] = s
        else:
            out.pop(r, None)
    return out


def burau_symbolic(word: BraidWord) -> list[dict]:
    """Unreduced Burau matrix of a word as a list of sparse columns.

    Accumulating by right multiplication in letter order yields the product
    of the letter matrices in composition order.
    """
    n = word.strands
    state = [{r: ONE} for r in range(n)]
    for letter in word.letters:
        _burau_columns(state, letter)
    return state


def _lk_index(n: int):
    pairs = [(j, k) for j in range(1, n + 1) for k in range(j + 1, n + 1)]
    return pairs, {p: i for i, p in enumerate(pairs)}


def _lk_generator_columns(n: int, i: int, t: Fraction, q: Fraction):
    """Columns of the Lawrence-Krammer matrix of s_i on n strands at (t, q).

    Basis v_{j,k}, 1 <= j < k <= n, ordered lexicographically.
    """
    pairs, idx = _lk_index(n)
    cols = []
    for (j, k) in pairs:
        col: dict[int, Fraction] = {}

        def put(jj, kk, val):
            col[idx[(jj, kk)]] = col.get(idx[(jj, kk)], Fraction(0)) + val

        if i == j and i == k - 1:
            put(i, i + 1, -q * t * t)
        elif i == j - 1:
            put(i, k, t)
            put(i, i + 1, t * t - t)
            put(i + 1, k, 1 - t)
        elif i == j:  # here j != k-1
            put(i + 1, k, Fraction(1))
        elif i == k - 1:  # here j != k-1's partner
            put(j, i, t)
            put(j, i + 1, 1 - t)
            put(i, i + 1, -(t * t - t) * q)
        elif i == k:
            put(j, i + 1, Fraction(1))
        else:
            put(j, k, Fraction(1))
        cols.append(col)
    return cols


def _frac_matrix_inverse(cols: list[dict], dim: int) -> list[dict]:
    """Invert a column-sparse Fraction matrix by Gauss-Jordan."""
    a = [[Fraction(0)] * dim for _ in range(dim)]
    for c, col in enumerate(cols):
        for r, v in col.items():
            a[r][c] = v
    inv = [[Fraction(1) if r == c else Fraction(0) for c in range(dim)] for r in range(dim)]
    for k in range(dim):
        piv = next((r for r in range(k, dim) if a[r][k]), None)
        if piv is None:
            raise BraidError("generator matrix unexpectedly singular")
        a[k], a[piv] = a[piv], a[k]
        inv[k], inv[piv] = inv[piv], inv[k]
        pv = a[k][k]
        a[k] = [x / pv for x in a[k]]
        inv[k] = [x / pv for x in inv[k]]
        for r in range(dim):
            if r != k and a[r][k]:
                f = a[r][k]
                a[r] = [x - f * y for x, y in zip(a[r], a[k])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[k])]
    out = []
    for c in range(dim):
        col = {r: inv[r][c] for r in range(dim) if inv[r][c]}
        out.append(col)
    return out


_lk_letter_cache: dict = {}


def _lk_letter_columns(n: int, letter: int, point: EvaluationPoint):
    key = (n, letter, point.t_value, point.q_value)
    if key not in _lk_letter_cache:
        dim = n * (n - 1) // 2
        if letter > 0:
            cols = _lk_generator_columns(n, letter, point.t_value, point.q_value)
        else:
            pos = _lk_generator_columns(n, -letter, point.t_value, point.q_value)
            cols = _frac_matrix_inverse(pos, dim)
        _lk_letter_cache[key] = cols
    return _lk_letter_cache[key]


def lk_numeric(word: BraidWord, point: EvaluationPoint) -> list[dict]:
    """Lawrence-Krammer matrix of a word at a rational point, as columns."""
    n = word.strands
    dim = n * (n - 1) // 2
    state = [{r: Fraction(1)} for r in range(dim)]
    for letter in word.letters:
        gen_cols = _lk_letter_columns(n, letter, point)
        new_state = []
        for col in gen_cols:
            acc: dict[int, Fraction] = {}
            for r, v in col.items():
                for rr, vv in state[r].items():
                    s = acc.get(rr, Fraction(0)) + v * vv
                    if s:
                        acc[rr] = s
                    else:
                        acc.pop(rr, None)
            new_state.append(acc)
        state = new_state
    return state


def braid_equal(
    u: BraidWord, v: BraidWord, certainty: int = 3, seed: int = 0
) -> bool:
    ok, _ = braid_equal_witness(u, v, certainty, seed)
    return ok


def braid_equal_witness(
    u: BraidWord, v: BraidWord, certainty: int = 3, seed: int = 0
):
    """Decide u = v in the braid group; on failure return a witness.

    The test combines Lawrence-Krammer evaluation at `certainty` seeded
    rational points (faithful representation, probabilistic detection) with
    an exact symbolic unreduced Burau comparison.
    """
    if u.strands != v.strands:
        return False, {"reason": "strand mismatch"}
    if u.letters == v.letters:
        return True, None
    n = u.strands
    if n >= 2:
        for point in seeded_points(max(1, certainty), seed):
            if lk_numeric(u, point) != lk_numeric(v, point):
                return False, {
                    "reason": "lawrence-krammer evaluation differs",
                    "t": str(point.t_value),
                    "q": str(point.q_value),
                }
    if burau_symbolic(u) != burau_symbolic(v):
        return False, {"reason": "symbolic burau matrices differ"}
    return True, None


# ---------------------------------------------------------------------------
# Local systems: homomorphisms from free groups into one-larger braid groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalSystem:
    """A family of homomorphisms F_n -> B_{n+1}, given per free generator.

    rule(n, i) is the image of gi; the extension to arbitrary words is the
    unique multiplicative one, which exists by freeness.
    """

    name: str
    rule: callable = field(compare=False)

    def generator_image(self, n: int, i: int) -> BraidWord:
        if not 1 <= i <= n:
            raise BraidError(f"g{i} outside free group of rank {n}")
        word = self.rule(n, i)
        if word.strands != n + 1:
            raise BraidError("local system rule must produce words on n+1 strands")
        return word

    def evaluate(self, w: FreeWord) -> BraidWord:
        n = w.rank
        out = BraidWord.identity(n + 1)
        for gen, exp in w.syllables:
            out = out.compose(self.generator_image(n, gen) ** exp)
        return out


def _pure_braid_rule(n: int, i: int) -> BraidWord:
    # s_1^-1 s_2^-1 ... s_{i-1}^-1 s_i^2 s_{i-1} ... s_1, on n+1 strands.
    letters = [-j for j in range(1, i)] + [i, i] + list(range(i - 1, 0, -1))
    return BraidWord(n + 1, tuple(letters))


def pure_braid_system() -> LocalSystem:
    """Conjugates of squared generators: the classical pure-braid local system."""
    return LocalSystem("pure-braid", _pure_braid_rule)


def trivial_system() -> LocalSystem:
    return LocalSystem("trivial", lambda n, i: BraidWord.identity(n + 1))


def local_system(name: str) -> LocalSystem:
    if name in ("pure-braid", "pure_braid"):
        return pure_braid_system()
    if name == "trivial":
        return trivial_system()
    if name == "corrupted-demo":
        # Deliberately broken variant for exercising failure reporting:
        # sends g1 to a single positive crossing.
        def rule(n, i):
            if i == 1:
                return BraidWord(n + 1, (1,))
            return _pure_braid_rule(n, i)

        return LocalSystem("corrupted-demo", rule)
    raise BraidError(f"unknown local system {name!r}")
