"""Computable functors from the bracket category to modules over the
Laurent ring.

A BraidFunctor packages the data that determines such a functor on a
finite range of objects: a dimension per level n, a matrix per braid
generator per level, stabilization matrices for the canonical morphisms
n -> n', and (optionally) splitting data for those stabilizations.  The
package's evaluation rule for a general morphism [n'-n, w] is

    mat(w at level n') * stab(n, n'),

and check_functor verifies the two families of identities that make this
assignment well defined: stabilization composition, and the intertwining
of stabilizations with group elements up to juxtaposition by braids of the
added strands.

All matrices act on column vectors; see laurent module docstring.  Where a
classical display in the literature is written for the row convention, the
stored matrix is its transpose; the test fixtures record that orientation
choice per family.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .laurent import LaurentPoly, PolyMatrix, ONE, ZERO
from .laurent import T as VAR_T, Q as VAR_Q
from .freegroup import GroupRingElement
from .braidcat import (
    BracketMorphism,
    BraidWord,
    LocalSystem,
    braiding,
    enumerate_words,
)


class FunctorError(ValueError):
    pass


@dataclass(frozen=True)
class SplitData:
    """Splitting data for one stabilization map `incl`.

    retraction * incl = Id, coprojection * incl = 0,
    retraction * complement = 0, coprojection * complement = Id, and
    incl * retraction + complement * coprojection = Id; together these say
    [incl | complement] is invertible with inverse stacking retraction over
    coprojection, so the complement spans an explicit cokernel.
    """

    retraction: PolyMatrix
    complement: PolyMatrix
    coprojection: PolyMatrix

    def certify(self, incl: PolyMatrix) -> bool:
        n_in = incl.cols
        n_out = incl.rows
        if self.retraction.matmul(incl) != PolyMatrix.identity(n_in):
            return False
        if not self.coprojection.matmul(incl).is_zero():
            return False
        if not self.retraction.matmul(self.complement).is_zero():
            return False
        if self.coprojection.matmul(self.complement) != PolyMatrix.identity(
            self.complement.cols
        ):
            return False
        recomposed = incl.matmul(self.retraction) + self.complement.matmul(
            self.coprojection
        )
        return recomposed == PolyMatrix.identity(n_out)


def partial_permutation_split(incl: PolyMatrix) -> SplitData | None:
    """Split a column monomial matrix: one unit entry per column, distinct rows."""
    rows_used = {}
    for c in range(incl.cols):
        col = [(r, p) for (r, cc), p in incl.entries.items() if cc == c]
        if len(col) != 1 or not col[0][1].is_unit():
            return None
        r, p = col[0]
        if r in rows_used:
            return None
        rows_used[r] = (c, p)
    retr = {}
    for r, (c, p) in rows_used.items():
        retr[(c, r)] = p.unit_inverse()
    retraction = PolyMatrix(incl.cols, incl.rows, retr)
    missing = [r for r in range(incl.rows) if r not in rows_used]
    complement = PolyMatrix(
        incl.rows, len(missing), {(r, i): ONE for i, r in enumerate(missing)}
    )
    coprojection = PolyMatrix(
        len(missing), incl.rows, {(i, r): ONE for i, r in enumerate(missing)}
    )
    return SplitData(retraction, complement, coprojection)


class BraidFunctor:
    """Dimensions, generator matrices, and stabilization data on a range.

    Rules are memoized; instances behave as immutable values and the memo
    tables are idempotent, so concurrent readers are safe.  gen_rule is
    called with positive generator indices only; negative letters are
    served from the memoized inverse unless neg_rule is supplied.
    """

    def __init__(
        self,
        name: str,
        dim_rule,
        gen_rule,
        stab_rule,
        split_rule=None,
        neg_rule=None,
        eval_range: int = 16,
    ):
        self.name = name
        self._dim_rule = dim_rule
        self._gen_rule = gen_rule
        self._stab_rule = stab_rule
        self._split_rule = split_rule
        self._neg_rule = neg_rule
        self.eval_range = eval_range
        self._dims: dict = {}
        self._gens: dict = {}
        self._stabs: dict = {}
        self._splits: dict = {}
        self._words: dict = {}

    # -- core data ------------------------------------------------------

    def dim(self, n: int) -> int:
        if n < 0:
            raise FunctorError("negative level")
        if n > self.eval_range:
            raise FunctorError(
                f"{self.name}: level {n} beyond evaluation range {self.eval_range}"
            )
        if n not in self._dims:
            self._dims[n] = int(self._dim_rule(n))
        return self._dims[n]

    def gen_matrix(self, n: int, letter: int) -> PolyMatrix:
        if letter == 0 or abs(letter) > n - 1:
            raise FunctorError(f"s{letter} is not a generator on {n} strands")
        key = (n, letter)
        if key not in self._gens:
            if letter > 0:
                m = self._gen_rule(n, letter)
            elif self._neg_rule is not None:
                m = self._neg_rule(n, -letter)
            else:
                m = self.gen_matrix(n, -letter).inverse()
            d = self.dim(n)
            if (m.rows, m.cols) != (d, d):
                raise FunctorError(
                    f"{self.name}: generator matrix at level {n} has wrong shape"
                )
            self._gens[key] = m
        return self._gens[key]

    def stab(self, n: int, n2: int) -> PolyMatrix:
        if not 0 <= n <= n2:
            raise FunctorError("stabilization requires 0 <= n <= n'")
        key = (n, n2)
        if key not in self._stabs:
            if n == n2:
                m = PolyMatrix.identity(self.dim(n))
            else:
                m = self._stab_rule(n, n2)
            if (m.rows, m.cols) != (self.dim(n2), self.dim(n)):
                raise FunctorError(
                    f"{self.name}: stabilization {n}->{n2} has wrong shape"
                )
            self._stabs[key] = m
        return self._stabs[key]

    def split(self, n: int, n2: int) -> SplitData | None:
        key = (n, n2)
        if key not in self._splits:
            data = None
            if self._split_rule is not None:
                data = self._split_rule(n, n2)
            if data is None:
                data = partial_permutation_split(self.stab(n, n2))
            self._splits[key] = data
        return self._splits[key]

    # -- evaluation -------------------------------------------------------

    def word_matrix(self, word: BraidWord) -> PolyMatrix:
        """Matrix of a braid word at its own strand count (letters in
        composition order, so the product is taken in list order)."""
        n = word.strands
        key = (n, word.letters)
        if key not in self._words:
            m = PolyMatrix.identity(self.dim(n))
            for letter in word.letters:
                m = m.matmul(self.gen_matrix(n, letter))
            self._words[key] = m
        return self._words[key]

    def apply(self, phi: BracketMorphism) -> PolyMatrix:
        """Evaluate on a bracket-category morphism."""
        return self.word_matrix(phi.word).matmul(self.stab(phi.source, phi.target))

    def to_json(self, n: int) -> dict:
        gens = {}
        for i in range(1, n):
            gens[f"s{i}"] = self.gen_matrix(n, i).to_strings()
        stabs = {}
        for n2 in range(n + 1, min(n + 3, self.eval_range) + 1):
            stabs[str(n2)] = self.stab(n, n2).to_strings()
        return {
            "name": self.name,
            "n": n,
            "dim": self.dim(n),
            "generators": gens,
            "stab_to": stabs,
        }


# ---------------------------------------------------------------------------
# Built-in functor families
# ---------------------------------------------------------------------------


def _last_coords_stab(dim_rule):
    def rule(n, n2):
        d, d2 = dim_rule(n), dim_rule(n2)
        return PolyMatrix(d2, d, {(d2 - d + i, i): ONE for i in range(d)})

    return rule


def _block_gen(n: int, i: int, block: PolyMatrix) -> PolyMatrix:
    return (
        PolyMatrix.identity(i - 1)
        .direct_sum(block)
        .direct_sum(PolyMatrix.identity(n - i - 1))
    )


def constant_functor(eval_range: int = 24) -> BraidFunctor:
    return BraidFunctor(
        "constant",
        lambda n: 1,
        lambda n, i: PolyMatrix.identity(1),
        _last_coords_stab(lambda n: 1),
        neg_rule=lambda n, i: PolyMatrix.identity(1),
        eval_range=eval_range,
    )


def burau_functor(param: LaurentPoly = VAR_T, eval_range: int = 16) -> BraidFunctor:
    """Unreduced Burau at an invertible parameter.

    The classical 2x2 display [[1-y, y], [1, 0]] is written for row vectors;
    the stored block is its transpose so that it acts on columns.
    """
    if not param.is_unit():
        raise FunctorError("burau parameter must be a unit")
    y = param
    block = PolyMatrix.from_rows([[ONE - y, ONE], [y, ZERO]])

    def gen(n, i):
        return _block_gen(n, i, block)

    name = "burau" if y == VAR_T else f"burau({y})"
    return BraidFunctor(
        name, lambda n: n, gen, _last_coords_stab(lambda n: n), eval_range=eval_range
    )


def tym_functor(param: LaurentPoly = VAR_T, eval_range: int = 16) -> BraidFunctor:
    """The other irreducible 2x2-block family: blocks [[0, y], [1, 0]]."""
    if not param.is_unit():
        raise FunctorError("parameter must be a unit")
    y = param
    block = PolyMatrix.from_rows([[ZERO, y], [ONE, ZERO]])
    inv_block = PolyMatrix.from_rows([[ZERO, ONE], [y.unit_inverse(), ZERO]])

    def gen(n, i):
        return _block_gen(n, i, block)

    name = "tym" if y == VAR_T else f"tym({y})"
    return BraidFunctor(
        name,
        lambda n: n,
        gen,
        _last_coords_stab(lambda n: n),
        neg_rule=lambda n, i: _block_gen(n, i, inv_block),
        eval_range=eval_range,
    )


def _redbur_dim(n: int) -> int:
    return max(n - 1, 0)


def reduced_burau_functor(
    param: LaurentPoly = VAR_T, eval_range: int = 16
) -> BraidFunctor:
    """Reduced Burau; stored blocks are transposes of the usual displays."""
    if not param.is_unit():
        raise FunctorError("parameter must be a unit")
    y = param
    bottom = PolyMatrix.from_rows([[-y, ONE], [ZERO, ONE]])
    middle = PolyMatrix.from_rows([[ONE, ZERO, ZERO], [y, -y, ONE], [ZERO, ZERO, ONE]])
    top = PolyMatrix.from_rows([[ONE, ZERO], [y, -y]])

    def gen(n, i):
        if n == 2:
            return PolyMatrix.from_rows([[-y]])
        if i == 1:
            return bottom.direct_sum(PolyMatrix.identity(n - 3))
        if i == n - 1:
            return PolyMatrix.identity(n - 3).direct_sum(top)
        return (
            PolyMatrix.identity(i - 2)
            .direct_sum(middle)
            .direct_sum(PolyMatrix.identity(n - i - 2))
        )

    name = "reduced-burau" if y == VAR_T else f"reduced-burau({y})"
    return BraidFunctor(
        name, _redbur_dim, gen, _last_coords_stab(_redbur_dim), eval_range=eval_range
    )


def _lk_pairs(n: int):
    return [(j, k) for j in range(1, n + 1) for k in range(j + 1, n + 1)]


def lk_functor(eval_range: int = 14) -> BraidFunctor:
    """The two-variable family on the rank-one summands v_{j,k}, j < k,
    ordered lexicographically; generator action given columnwise."""
    t, q = VAR_T, VAR_Q
    t2_minus_t = t * t - t
    one_minus_t = ONE - t

    def dim(n):
        return n * (n - 1) // 2

    def gen(n, i):
        pairs = _lk_pairs(n)
        idx = {p: c for c, p in enumerate(pairs)}
        entries = {}

        def put(col, jj, kk, val):
            key = (idx[(jj, kk)], col)
            cur = entries.get(key, ZERO) + val
            if cur.terms:
                entries[key] = cur
            else:
                entries.pop(key, None)

        for col, (j, k) in enumerate(pairs):
            if i == j and i == k - 1:
                put(col, i, i + 1, -q * t * t)
            elif i == j - 1:
                put(col, i, k, t)
                put(col, i, i + 1, t2_minus_t)
                put(col, i + 1, k, one_minus_t)
            elif i == j:
                put(col, i + 1, k, ONE)
            elif i == k - 1:
                put(col, j, i, t)
                put(col, j, i + 1, one_minus_t)
                put(col, i, i + 1, -t2_minus_t * q)
            elif i == k:
                put(col, j, i + 1, ONE)
            else:
                put(col, j, k, ONE)
        return PolyMatrix(dim(n), dim(n), entries)

    def stab(n, n2):
        d = n2 - n
        pairs_small = _lk_pairs(n)
        idx2 = {p: r for r, p in enumerate(_lk_pairs(n2))}
        entries = {
            (idx2[(j + d, k + d)], c): ONE for c, (j, k) in enumerate(pairs_small)
        }
        return PolyMatrix(dim(n2), dim(n), entries)

    return BraidFunctor("lk", dim, gen, stab, eval_range=eval_range)


def atomic_functor(k: int, eval_range: int = 24) -> BraidFunctor:
    """Supported at the single level k, identity there, zero elsewhere."""

    def dim(n):
        return 1 if n == k else 0

    def stab(n, n2):
        return PolyMatrix.zeros(dim(n2), dim(n))

    def split(n, n2):
        if n == n2:
            return SplitData(
                PolyMatrix.identity(dim(n)),
                PolyMatrix.zeros(dim(n), 0),
                PolyMatrix.zeros(0, dim(n)),
            )
        # The inclusion is the zero map; the whole target is the cokernel.
        d2 = dim(n2)
        return SplitData(
            PolyMatrix.zeros(dim(n), d2),
            PolyMatrix.identity(d2),
            PolyMatrix.identity(d2),
        ) if dim(n) == 0 else None

    return BraidFunctor(
        f"atomic({k})",
        dim,
        lambda n, i: PolyMatrix.identity(dim(n)),
        stab,
        split_rule=split,
        neg_rule=lambda n, i: PolyMatrix.identity(dim(n)),
        eval_range=eval_range,
    )


def t1_functor(eval_range: int = 24) -> BraidFunctor:
    """The subfunctor of the constant functor that vanishes at level 0."""

    def dim(n):
        return 0 if n == 0 else 1

    def stab(n, n2):
        return PolyMatrix(dim(n2), dim(n), {(0, 0): ONE} if n >= 1 else {})

    return BraidFunctor(
        "t1",
        dim,
        lambda n, i: PolyMatrix.identity(dim(n)),
        stab,
        neg_rule=lambda n, i: PolyMatrix.identity(dim(n)),
        eval_range=eval_range,
    )


def power_functor(l: int, eval_range: int = 14) -> BraidFunctor:
    """Dimension n^l with identity braid action; factors through the poset
    of natural numbers.  Very useful as a degree-l yardstick."""

    def dim(n):
        return n**l

    return BraidFunctor(
        f"e({l})",
        dim,
        lambda n, i: PolyMatrix.identity(dim(n)),
        _last_coords_stab(dim),
        neg_rule=lambda n, i: PolyMatrix.identity(dim(n)),
        eval_range=eval_range,
    )


def zero_functor(eval_range: int = 24) -> BraidFunctor:
    return BraidFunctor(
        "zero",
        lambda n: 0,
        lambda n, i: PolyMatrix.zeros(0, 0),
        lambda n, n2: PolyMatrix.zeros(0, 0),
        neg_rule=lambda n, i: PolyMatrix.zeros(0, 0),
        eval_range=eval_range,
    )


# ---------------------------------------------------------------------------
# Combinators
# ---------------------------------------------------------------------------


def direct_sum(f: BraidFunctor, g: BraidFunctor) -> BraidFunctor:
    def split(n, n2):
        sf, sg = f.split(n, n2), g.split(n, n2)
        if sf is None or sg is None:
            return None
        # The stabilization is block-diagonal, so every piece of the
        # splitting data direct-sums as well.
        return SplitData(
            sf.retraction.direct_sum(sg.retraction),
            sf.complement.direct_sum(sg.complement),
            sf.coprojection.direct_sum(sg.coprojection),
        )

    return BraidFunctor(
        f"({f.name})+({g.name})",
        lambda n: f.dim(n) + g.dim(n),
        lambda n, i: f.gen_matrix(n, i).direct_sum(g.gen_matrix(n, i)),
        lambda n, n2: f.stab(n, n2).direct_sum(g.stab(n, n2)),
        split_rule=split,
        neg_rule=lambda n, i: f.gen_matrix(n, -i).direct_sum(g.gen_matrix(n, -i)),
        eval_range=min(f.eval_range, g.eval_range),
    )


def tensor(f: BraidFunctor, g: BraidFunctor) -> BraidFunctor:
    def split(n, n2):
        sf, sg = f.split(n, n2), g.split(n, n2)
        if sf is None or sg is None:
            return None
        inc_f = f.stab(n, n2)
        # Complement of (s⊗s): columns [s_f ⊗ c_g | c_f ⊗ Id].
        comp = inc_f.kron(sg.complement).hstack(
            sf.complement.kron(PolyMatrix.identity(g.dim(n2)))
        )
        copr_top = sf.retraction.kron(sg.coprojection)
        copr_bot = sf.coprojection.kron(PolyMatrix.identity(g.dim(n2)))
        copr = copr_top.transpose().hstack(copr_bot.transpose()).transpose()
        return SplitData(sf.retraction.kron(sg.retraction), comp, copr)

    return BraidFunctor(
        f"({f.name})x({g.name})",
        lambda n: f.dim(n) * g.dim(n),
        lambda n, i: f.gen_matrix(n, i).kron(g.gen_matrix(n, i)),
        lambda n, n2: f.stab(n, n2).kron(g.stab(n, n2)),
        split_rule=split,
        neg_rule=lambda n, i: f.gen_matrix(n, -i).kron(g.gen_matrix(n, -i)),
        eval_range=min(f.eval_range, g.eval_range),
    )


def scalar_twist(f: BraidFunctor, y: LaurentPoly) -> BraidFunctor:
    """Multiply every generator matrix by the unit y; stabilizations are
    unchanged.  The result need not satisfy the bracket-category criterion
    (the twist is a groupoid-level operation)."""
    if not y.is_unit():
        raise FunctorError("twist must be a unit")
    y_inv = y.unit_inverse()
    return BraidFunctor(
        f"{y}*({f.name})",
        f.dim,
        lambda n, i: f.gen_matrix(n, i).scale(y),
        f.stab,
        split_rule=f.split,
        neg_rule=lambda n, i: f.gen_matrix(n, -i).scale(y_inv),
        eval_range=f.eval_range,
    )


def translate(f: BraidFunctor, k: int) -> BraidFunctor:
    """Precompose with juxtaposition by k: level n sees level k+n of f.

    Generator s_i becomes f(s_{k+i}); the stabilization picks up the inverse
    braiding routing the k fixed strands past the added ones.
    """
    if k < 0:
        raise FunctorError("translation amount must be >= 0")
    if k == 0:
        return f

    def stab(n, n2):
        router = braiding(k, n2 - n).inverse().monoidal(BraidWord.identity(n))
        return f.word_matrix(router).matmul(f.stab(k + n, k + n2))

    def split(n, n2):
        base = f.split(k + n, k + n2)
        if base is None:
            return None
        router = braiding(k, n2 - n).inverse().monoidal(BraidWord.identity(n))
        q_mat = f.word_matrix(router)
        q_inv = f.word_matrix(router.inverse())
        return SplitData(
            base.retraction.matmul(q_inv),
            q_mat.matmul(base.complement),
            base.coprojection.matmul(q_inv),
        )

    return BraidFunctor(
        f"tau({k};{f.name})",
        lambda n: f.dim(k + n),
        lambda n, i: f.gen_matrix(k + n, k + i),
        stab,
        split_rule=split,
        neg_rule=lambda n, i: f.gen_matrix(k + n, -(k + i)),
        eval_range=f.eval_range - k,
    )


def corrupted(f: BraidFunctor, n: int, i: int, r: int, c: int, delta: LaurentPoly) -> BraidFunctor:
    """Negative control: add delta to one generator-matrix entry."""

    def gen(level, idx):
        m = f.gen_matrix(level, idx)
        if (level, idx) == (n, i):
            bump = PolyMatrix(m.rows, m.cols, {(r, c): delta})
            return m + bump
        return m

    return BraidFunctor(
        f"corrupted({f.name})",
        f.dim,
        gen,
        f.stab,
        split_rule=f.split,
        eval_range=f.eval_range,
    )


# ---------------------------------------------------------------------------
# Group-ring evaluation through a local system
# ---------------------------------------------------------------------------


def group_ring_matrix(
    f: BraidFunctor, n: int, system: LocalSystem, c: GroupRingElement
) -> PolyMatrix:
    """The linear extension of (f composed with the local system) at level
    n+1: each word w contributes its coefficient times f of the braid
    image of w."""
    if c.rank != n:
        raise FunctorError("group ring element rank must equal the level")
    d = f.dim(n + 1)
    total = PolyMatrix.zeros(d, d)
    for w, coeff in c.terms.items():
        total = total + f.word_matrix(system.evaluate(w)).scale(coeff)
    return total


# ---------------------------------------------------------------------------
# Functor and natural-transformation checks
# ---------------------------------------------------------------------------


@dataclass
class CheckReport:
    """Outcome of an exact identity check over an explicit range."""

    name: str
    params: dict
    failures: list = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, **witness):
        self.failures.append(witness)

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "verdict": "pass" if self.passed else "fail",
            "range": self.params,
            "checked": self.checked,
            "witness": self.failures[0] if self.failures else None,
            "failure_count": len(self.failures),
        }


def check_functor(f: BraidFunctor, big_n: int, word_len: int = 3) -> CheckReport:
    """Verify that f's data satisfies the functor criterion on levels <= big_n.

    Checks, exactly: braid and commutation relations plus inverse letters
    at every level; stabilization composition; and stab(n,n') * mat(w) =
    mat(psi # w) * stab(n,n') for all words w of length <= word_len on n
    strands and psi on the added strands.
    """
    report = CheckReport("functor-criterion", {"N": big_n, "L": word_len, "functor": f.name})
    for n in range(2, big_n + 1):
        for i in range(1, n - 1):
            a, b = f.gen_matrix(n, i), f.gen_matrix(n, i + 1)
            report.checked += 1
            if a.matmul(b).matmul(a) != b.matmul(a).matmul(b):
                report.record(kind="braid-relation", n=n, i=i)
        for i in range(1, n):
            for j in range(i + 2, n):
                report.checked += 1
                a, b = f.gen_matrix(n, i), f.gen_matrix(n, j)
                if a.matmul(b) != b.matmul(a):
                    report.record(kind="commutation", n=n, i=i, j=j)
            report.checked += 1
            if f.gen_matrix(n, i).matmul(f.gen_matrix(n, -i)) != PolyMatrix.identity(
                f.dim(n)
            ):
                report.record(kind="inverse", n=n, i=i)
    for n in range(0, big_n + 1):
        for n1 in range(n, big_n + 1):
            for n2 in range(n1, big_n + 1):
                report.checked += 1
                if f.stab(n1, n2).matmul(f.stab(n, n1)) != f.stab(n, n2):
                    report.record(kind="stab-composition", n=n, mid=n1, top=n2)
    for n in range(0, big_n + 1):
        for n2 in range(n, big_n + 1):
            stab = f.stab(n, n2)
            k = n2 - n
            sigma_words = enumerate_words(n, word_len)
            psi_words = enumerate_words(k, word_len)
            base = {}
            for sigma in sigma_words:
                lhs = stab.matmul(f.word_matrix(sigma))
                shifted = sigma.shift(k, n2)
                rhs0 = f.word_matrix(shifted).matmul(stab)
                report.checked += 1
                if lhs != rhs0:
                    report.record(
                        kind="intertwining", n=n, n2=n2, word=list(sigma.letters), psi=[]
                    )
                    continue
                base[sigma.letters] = lhs
            for psi in psi_words:
                if not psi.letters:
                    continue
                m_psi = f.word_matrix(psi.monoidal(BraidWord.identity(n)))
                for sigma in sigma_words:
                    lhs = base.get(sigma.letters)
                    if lhs is None:
                        continue
                    report.checked += 1
                    if m_psi.matmul(lhs) != lhs:
                        report.record(
                            kind="intertwining",
                            n=n,
                            n2=n2,
                            word=list(sigma.letters),
                            psi=list(psi.letters),
                        )
    return report


@dataclass
class NaturalMap:
    """A prospective natural transformation: one matrix per level."""

    source: BraidFunctor
    target: BraidFunctor
    components: object
    name: str = "natural-map"

    def component(self, n: int) -> PolyMatrix:
        m = self.components(n)
        if (m.rows, m.cols) != (self.target.dim(n), self.source.dim(n)):
            raise FunctorError(f"{self.name}: component at {n} has wrong shape")
        return m


def check_natural(
    eta: NaturalMap, big_n: int, include_stab: bool = True
) -> CheckReport:
    """Exact intertwining of components with generators and, optionally,
    with stabilizations.  Groupoid-level equivalences (components that only
    intertwine the braid actions) are checked with include_stab=False."""
    report = CheckReport(
        "natural-transformation",
        {"N": big_n, "map": eta.name, "stab": include_stab},
    )
    for n in range(0, big_n + 1):
        comp = eta.component(n)
        for i in range(1, n):
            report.checked += 1
            lhs = comp.matmul(eta.source.gen_matrix(n, i))
            rhs = eta.target.gen_matrix(n, i).matmul(comp)
            if lhs != rhs:
                report.record(kind="generator", n=n, i=i)
        if include_stab:
            for n2 in range(n, big_n + 1):
                report.checked += 1
                lhs = eta.component(n2).matmul(eta.source.stab(n, n2))
                rhs = eta.target.stab(n, n2).matmul(comp)
                if lhs != rhs:
                    report.record(kind="stabilization", n=n, n2=n2)
    return report


# ---------------------------------------------------------------------------
# Named constructors
# ---------------------------------------------------------------------------


def builtin(name: str, **params) -> BraidFunctor:
    name = name.lower()
    if name in ("constant", "x"):
        return constant_functor()
    if name == "burau":
        return burau_functor(params.get("param", VAR_T))
    if name in ("reduced-burau", "reduced_burau"):
        return reduced_burau_functor(params.get("param", VAR_T))
    if name == "tym":
        return tym_functor(params.get("param", VAR_T))
    if name == "lk":
        return lk_functor()
    if name == "atomic":
        return atomic_functor(int(params["k"]))
    if name == "t1":
        return t1_functor()
    if name == "e":
        return power_functor(int(params["l"]))
    if name == "zero":
        return zero_functor()
    raise FunctorError(f"unknown functor {name!r}")
