"""Free groups, their group rings, Fox calculus, and braid actions on them.

Words live in a free group of explicit rank n with generators g1..gn and
are kept freely reduced.  The augmentation ideal of the group ring is a
free right module on the differences (gi - 1); fox_derivatives computes the
coordinates of a word in that basis using the right-sided product rule

    d(uv) = d(u)·v + d(v),

which is the convention under which  w - 1 = sum_i (gi - 1)·d_i(w)  holds
with coefficients on the right.  (The classical left-sided convention
differs; everything downstream depends on this choice.)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from .laurent import ONE, ZERO, LaurentPoly


class FreeGroupError(ValueError):
    pass


def _reduce(syllables):
    out = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word in the free group of the given rank."""

    rank: int
    syllables: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", _reduce(self.syllables))
        for gen, _ in self.syllables:
            if not 1 <= gen <= self.rank:
                raise FreeGroupError(f"generator g{gen} outside rank {self.rank}")

    @staticmethod
    def identity(rank: int) -> "FreeWord":
        return FreeWord(rank, ())

    @staticmethod
    def generator(rank: int, i: int, exp: int = 1) -> "FreeWord":
        return FreeWord(rank, ((i, exp),))

    def is_identity(self) -> bool:
        return not self.syllables

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if self.rank != other.rank:
            raise FreeGroupError("rank mismatch in word product")
        return FreeWord(self.rank, self.syllables + other.syllables)

    def inverse(self) -> "FreeWord":
        return FreeWord(self.rank, tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, k: int) -> "FreeWord":
        if k == 0:
            return FreeWord.identity(self.rank)
        base = self if k > 0 else self.inverse()
        return FreeWord(base.rank, base.syllables * abs(k))

    def exponent_sum(self) -> int:
        return sum(e for _, e in self.syllables)

    def length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def shifted(self, k: int, new_rank: int) -> "FreeWord":
        """Image under gi -> g(i+k) into the free group of rank new_rank."""
        return FreeWord(new_rank, tuple((g + k, e) for g, e in self.syllables))

    def with_rank(self, new_rank: int) -> "FreeWord":
        return FreeWord(new_rank, self.syllables)

    def __str__(self):
        if not self.syllables:
            return "e"
        return "*".join(f"g{g}" if e == 1 else f"g{g}^{e}" for g, e in self.syllables)

    def __repr__(self):
        return f"FreeWord({self.rank}, {str(self)!r})"


_WORD_SYLLABLE = re.compile(r"g(\d+)(?:\^(-?\d+))?")


def parse_word(text: str, rank: int) -> FreeWord:
    text = text.strip()
    if text in ("e", "1", ""):
        return FreeWord.identity(rank)
    syllables = []
    for part in text.split("*"):
        m = _WORD_SYLLABLE.fullmatch(part.strip())
        if not m:
            raise FreeGroupError(f"cannot parse word syllable {part!r}")
        syllables.append((int(m.group(1)), int(m.group(2) or 1)))
    return FreeWord(rank, tuple(syllables))


class GroupRingElement:
    """A finite K-linear combination of free-group words (K = Laurent ring)."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms=None):
        self.rank = rank
        clean = {}
        if terms:
            for word, coeff in terms.items():
                if word.rank != rank:
                    raise FreeGroupError("word rank mismatch in group ring element")
                if not isinstance(coeff, LaurentPoly):
                    coeff = LaurentPoly.const(coeff)
                if coeff.terms:
                    clean[word] = coeff
        self.terms = clean

    @staticmethod
    def zero(rank: int) -> "GroupRingElement":
        return GroupRingElement(rank)

    @staticmethod
    def one(rank: int) -> "GroupRingElement":
        return GroupRingElement(rank, {FreeWord.identity(rank): ONE})

    @staticmethod
    def from_word(word: FreeWord, coeff: LaurentPoly = ONE) -> "GroupRingElement":
        return GroupRingElement(word.rank, {word: coeff})

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        if self.rank != other.rank:
            raise FreeGroupError("rank mismatch in group ring sum")
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, ZERO) + c
            if s.terms:
                terms[w] = s
            else:
                terms.pop(w, None)
        return GroupRingElement(self.rank, terms)

    def __neg__(self):
        return GroupRingElement(self.rank, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "GroupRingElement":
        if isinstance(other, (LaurentPoly, int)):
            return self.scale(other)
        if self.rank != other.rank:
            raise FreeGroupError("rank mismatch in group ring product")
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                s = out.get(w, ZERO) + c1 * c2
                if s.terms:
                    out[w] = s
                else:
                    out.pop(w, None)
        return GroupRingElement(self.rank, out)

    def right_mul_word(self, word: FreeWord) -> "GroupRingElement":
        return GroupRingElement(self.rank, {w * word: c for w, c in self.terms.items()})

    def scale(self, p) -> "GroupRingElement":
        if not isinstance(p, LaurentPoly):
            p = LaurentPoly.const(p)
        return GroupRingElement(self.rank, {w: c * p for w, c in self.terms.items()})

    def augmentation(self) -> LaurentPoly:
        total = ZERO
        for c in self.terms.values():
            total = total + c
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingElement)
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = [f"({c})[{w}]" for w, c in sorted(self.terms.items(), key=lambda kv: str(kv[0]))]
        return " + ".join(parts)

    __repr__ = __str__


class AugIdealElement:
    """An augmentation-ideal element in coordinates on the basis (gi - 1).

    coords[i-1] is the right coefficient of (gi - 1); the representation is
    unique because the basis is free.
    """

    __slots__ = ("rank", "coords")

    def __init__(self, rank: int, coords):
        coords = tuple(coords)
        if len(coords) != rank:
            raise FreeGroupError("coordinate count must equal rank")
        for c in coords:
            if c.rank != rank:
                raise FreeGroupError("coordinate rank mismatch")
        self.rank = rank
        self.coords = coords

    @staticmethod
    def zero(rank: int) -> "AugIdealElement":
        return AugIdealElement(rank, [GroupRingElement.zero(rank)] * rank)

    def __add__(self, other: "AugIdealElement") -> "AugIdealElement":
        return AugIdealElement(self.rank, [a + b for a, b in zip(self.coords, other.coords)])

    def scale(self, p) -> "AugIdealElement":
        return AugIdealElement(self.rank, [c.scale(p) for c in self.coords])

    def expand(self) -> GroupRingElement:
        """The group-ring element  sum_i (gi - 1)·coords[i]."""
        total = GroupRingElement.zero(self.rank)
        for i, c in enumerate(self.coords, start=1):
            gi = GroupRingElement.from_word(FreeWord.generator(self.rank, i))
            total = total + (gi - GroupRingElement.one(self.rank)) * c
        return total

    def __eq__(self, other):
        return (
            isinstance(other, AugIdealElement)
            and self.rank == other.rank
            and self.coords == other.coords
        )

    def __repr__(self):
        return "AugIdeal[" + ", ".join(str(c) for c in self.coords) + "]"


# ---------------------------------------------------------------------------
# Fox calculus (right convention)
# ---------------------------------------------------------------------------


def _syllable_derivative(rank: int, gen: int, exp: int) -> GroupRingElement:
    # d(g^m) = 1 + g + ... + g^{m-1}        for m > 0
    # d(g^m) = -(g^{-1} + ... + g^{m})      for m < 0
    terms = {}
    if exp > 0:
        for k in range(exp):
            terms[FreeWord.generator(rank, gen, k) if k else FreeWord.identity(rank)] = ONE
    else:
        for k in range(1, -exp + 1):
            terms[FreeWord.generator(rank, gen, -k)] = LaurentPoly.const(-1)
    return GroupRingElement(rank, terms)


def fox_derivatives(w: FreeWord) -> AugIdealElement:
    """Coordinates of w - 1 on the free basis (gi - 1).

    Built from the right product rule: for w = s1 s2 ... sk (syllables),
    d_i(w) = sum_r d_i(s_r) · (s_{r+1} ... s_k).
    """
    rank = w.rank
    coords = [GroupRingElement.zero(rank) for _ in range(rank)]
    syllables = w.syllables
    # Right tails, computed from the back.
    tail = FreeWord.identity(rank)
    tails = [tail]
    for gen, exp in reversed(syllables[1:]):
        tail = FreeWord(rank, ((gen, exp),)) * tail
        tails.append(tail)
    tails.reverse()
    for (gen, exp), tail in zip(syllables, tails):
        d = _syllable_derivative(rank, gen, exp).right_mul_word(tail)
        coords[gen - 1] = coords[gen - 1] + d
    return AugIdealElement(rank, coords)


def fox_derivative(w: FreeWord, i: int) -> GroupRingElement:
    return fox_derivatives(w).coords[i - 1]


# ---------------------------------------------------------------------------
# Homomorphisms between free groups
# ---------------------------------------------------------------------------


class FreeGroupMap:
    """A homomorphism F_source -> F_target given by generator images."""

    __slots__ = ("source_rank", "target_rank", "images")

    def __init__(self, source_rank: int, target_rank: int, images):
        images = tuple(images)
        if len(images) != source_rank:
            raise FreeGroupError("need one image per generator")
        for w in images:
            if w.rank != target_rank:
                raise FreeGroupError("image rank mismatch")
        self.source_rank = source_rank
        self.target_rank = target_rank
        self.images = images

    @staticmethod
    def identity(rank: int) -> "FreeGroupMap":
        return FreeGroupMap(rank, rank, [FreeWord.generator(rank, i) for i in range(1, rank + 1)])

    def __call__(self, x):
        return self.apply(x)

    def apply(self, x):
        if isinstance(x, FreeWord):
            return self.apply_word(x)
        if isinstance(x, GroupRingElement):
            return self.apply_ring(x)
        if isinstance(x, AugIdealElement):
            return self.apply_aug(x)
        raise FreeGroupError(f"cannot apply map to {type(x).__name__}")

    def apply_word(self, w: FreeWord) -> FreeWord:
        if w.rank != self.source_rank:
            raise FreeGroupError("rank mismatch in apply")
        out = FreeWord.identity(self.target_rank)
        for gen, exp in w.syllables:
            out = out * self.images[gen - 1] ** exp
        return out

    def apply_ring(self, x: GroupRingElement) -> GroupRingElement:
        if x.rank != self.source_rank:
            raise FreeGroupError("rank mismatch in apply")
        out = GroupRingElement.zero(self.target_rank)
        for w, c in x.terms.items():
            out = out + GroupRingElement.from_word(self.apply_word(w), c)
        return out

    def apply_aug(self, x: AugIdealElement) -> AugIdealElement:
        """Push forward sum (gi-1)·ci and re-expand in the target basis.

        The image of (gi - 1) is phi(gi) - 1, whose Fox coordinates give the
        re-expansion; coefficients travel through phi as ring elements.
        """
        if x.rank != self.source_rank:
            raise FreeGroupError("rank mismatch in apply")
        out = [GroupRingElement.zero(self.target_rank) for _ in range(self.target_rank)]
        for i, ci in enumerate(x.coords, start=1):
            if ci.is_zero():
                continue
            img_coords = fox_derivatives(self.apply_word(FreeWord.generator(x.rank, i)))
            phi_ci = self.apply_ring(ci)
            for j in range(self.target_rank):
                d = img_coords.coords[j]
                if not d.is_zero():
                    out[j] = out[j] + d * phi_ci
        return AugIdealElement(self.target_rank, out)

    def compose(self, other: "FreeGroupMap") -> "FreeGroupMap":
        """self ∘ other (other applied first)."""
        if other.target_rank != self.source_rank:
            raise FreeGroupError("rank mismatch in composition")
        return FreeGroupMap(
            other.source_rank,
            self.target_rank,
            [self.apply_word(w) for w in other.images],
        )

    def __eq__(self, other):
        return (
            isinstance(other, FreeGroupMap)
            and self.source_rank == other.source_rank
            and self.target_rank == other.target_rank
            and self.images == other.images
        )

    def __repr__(self):
        imgs = ", ".join(f"g{i+1}->{w}" for i, w in enumerate(self.images))
        return f"FreeGroupMap({self.source_rank}->{self.target_rank}: {imgs})"

    def is_identity(self) -> bool:
        return self == FreeGroupMap.identity(self.source_rank) and self.source_rank == self.target_rank


def include_left(n: int, k: int) -> FreeGroupMap:
    """F_n -> F_{k+n} sending gi to g(i+k): the last-copies identification."""
    return FreeGroupMap(n, n + k, [FreeWord.generator(n + k, i + k) for i in range(1, n + 1)])


def include_right(n: int, k: int) -> FreeGroupMap:
    """F_n -> F_{n+k} sending gi to gi: the first-copies identification."""
    return FreeGroupMap(n, n + k, [FreeWord.generator(n + k, i) for i in range(1, n + 1)])


# ---------------------------------------------------------------------------
# Braid actions on free groups
# ---------------------------------------------------------------------------


def _pair_map(n: int, i: int, w_img: FreeWord, v_img: FreeWord) -> FreeGroupMap:
    """The rank-n map acting by (W, V) on generators (gi, g(i+1)) and fixing
    the rest.  W and V are rank-2 words in the slot generators."""
    def place(word2: FreeWord) -> FreeWord:
        return FreeWord(n, tuple((i if g == 1 else i + 1, e) for g, e in word2.syllables))

    images = [FreeWord.generator(n, j) for j in range(1, n + 1)]
    images[i - 1] = place(w_img)
    images[i] = place(v_img)
    return FreeGroupMap(n, n, images)


@dataclass(frozen=True)
class WadaPair:
    """A pair of rank-2 words (W, V) defining a local braid action."""

    w: FreeWord
    v: FreeWord

    def __post_init__(self):
        if self.w.rank != 2 or self.v.rank != 2:
            raise FreeGroupError("Wada pair words must have rank 2")

    def as_map(self) -> FreeGroupMap:
        return FreeGroupMap(2, 2, [self.w, self.v])


def _w2(text: str) -> FreeWord:
    return parse_word(text, 2)


def wada_pair(kind: int, m: int = 1) -> WadaPair:
    """The seven classified local braid-action pairs.

    Kind 1 carries an integer parameter; its sign is normalized here so
    that kind 1 with m = 1 is exactly the Artin action (the classification
    lists the pair only up to duality, which flips that sign).
    """
    if kind == 1:
        g1 = FreeWord.generator(2, 1)
        g2 = FreeWord.generator(2, 2)
        return WadaPair(g2, (g2 ** (-m)) * g1 * (g2 ** m))
    table = {
        2: ("g1", "g2"),
        3: ("g2", "g1^-1"),
        # Kind 4 is the half-twist type g1 -> g2, g2 -> g2 g1^-1 g2; the
        # conjugated variant (g2, g2^-1 g1^-1 g2) sometimes seen in print
        # fails the braid relation and is rejected by the instantiation check.
        4: ("g2", "g2*g1^-1*g2"),
        5: ("g2^-1", "g1^-1"),
        6: ("g2^-1", "g2*g1*g2"),
        7: ("g1*g2^-1*g1^-1", "g1*g2^2"),
    }
    if kind not in table:
        raise FreeGroupError(f"unknown local action kind {kind}")
    w, v = table[kind]
    return WadaPair(_w2(w), _w2(v))


def wada_dual(pair: WadaPair, kind: str, search_bound: int = 8) -> WadaPair:
    """The swap-, backward-, or inverse-dual of a local action pair."""
    g1 = FreeWord.generator(2, 1)
    g2 = FreeWord.generator(2, 2)
    swap_map = FreeGroupMap(2, 2, [g2, g1])
    if kind == "swap":
        return WadaPair(swap_map(pair.v), swap_map(pair.w))
    if kind == "backward":
        flip = FreeGroupMap(2, 2, [g1.inverse(), g2.inverse()])
        return WadaPair(flip(pair.w).inverse(), flip(pair.v).inverse())
    if kind == "inverse":
        inv = invert_map(pair.as_map(), search_bound)
        if inv is None:
            raise FreeGroupError("inverse certificate not found")
        return WadaPair(inv.images[0], inv.images[1])
    raise FreeGroupError(f"unknown duality {kind!r}")


def _words_up_to(rank: int, length: int):
    frontier = [FreeWord.identity(rank)]
    yield frontier[0]
    letters = [FreeWord.generator(rank, i, e) for i in range(1, rank + 1) for e in (1, -1)]
    for _ in range(length):
        nxt = []
        for w in frontier:
            for letter in letters:
                prod = w * letter
                if prod.length() == w.length() + 1:
                    nxt.append(prod)
                    yield prod
        frontier = nxt


def invert_map(phi: FreeGroupMap, search_bound: int = 8) -> FreeGroupMap | None:
    """Search for the inverse automorphism by bounded generator-image search.

    The candidate images are found one generator at a time by requiring
    psi(phi(gi)) = gi; a found candidate is certified by composing both ways
    to the identity on generators, never assumed.
    """
    n = phi.source_rank
    if phi.target_rank != n:
        return None
    candidates: list[list[FreeWord]] = [[] for _ in range(n)]
    for w in _words_up_to(n, search_bound):
        img = phi.apply_word(w)
        if img.length() == 1 and img.syllables[0][1] in (1, -1):
            gen, exp = img.syllables[0]
            candidates[gen - 1].append(w if exp == 1 else w.inverse())
    for imgs in _cartesian_shortest(candidates):
        psi = FreeGroupMap(n, n, imgs)
        if psi.compose(phi).is_identity() and phi.compose(psi).is_identity():
            return psi
    return None


def _cartesian_shortest(candidates):
    if any(not c for c in candidates):
        return
    # Try shortest image tuples first; in practice the first tuple works.
    firsts = [sorted(c, key=lambda w: w.length()) for c in candidates]
    limit = 4

    def rec(i, acc):
        if i == len(firsts):
            yield list(acc)
            return
        for w in firsts[i][:limit]:
            acc.append(w)
            yield from rec(i + 1, acc)
            acc.pop()

    yield from rec(0, [])


_pair_inverse_cache: dict = {}


def artin_generator_map(n: int, gen: int) -> FreeGroupMap:
    """The classical action of a signed braid generator on F_n.

    Positive si:  gi -> g(i+1),  g(i+1) -> g(i+1)^-1 gi g(i+1),  else fixed.
    Negative letters return the exact inverse map.
    """
    i = abs(gen)
    if not 1 <= i <= n - 1:
        raise FreeGroupError(f"generator s{gen} outside braid group on {n} strands")
    g1 = FreeWord.generator(2, 1)
    g2 = FreeWord.generator(2, 2)
    if gen > 0:
        return _pair_map(n, i, g2, g2.inverse() * g1 * g2)
    return _pair_map(n, i, g1 * g2 * g1.inverse(), g1)


def wada_generator_map(n: int, gen: int, kind: int, m: int = 1) -> FreeGroupMap:
    """Action of a signed braid generator through the kind-k local pair."""
    i = abs(gen)
    if not 1 <= i <= n - 1:
        raise FreeGroupError(f"generator s{gen} outside braid group on {n} strands")
    pair = wada_pair(kind, m)
    if gen > 0:
        return _pair_map(n, i, pair.w, pair.v)
    key = (kind, m)
    if key not in _pair_inverse_cache:
        inv = invert_map(pair.as_map())
        if inv is None:
            raise FreeGroupError(f"kind {kind} local action has no inverse within bound")
        _pair_inverse_cache[key] = inv
    inv = _pair_inverse_cache[key]
    return _pair_map(n, i, inv.images[0], inv.images[1])
