"""Degree-truncated regular representation on span{eps_m : m monic, deg m <= D}.

    mu_a eps_m   = eps_{a m}          (0 once deg(a m) > D)
    mu_a^* eps_m = eps_{m/a} if a | m, else 0
    e(lam) eps_m = chi(m lam) eps_m

Every basis term maps a column to at most one row, so matrices are stored
sparsely as {(row, col): UScalar}.  This is the independent oracle for the
algebra product and for the Gibbs traces.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .characters import LevelChar, admissible, laurent_tail
from .errors import AdmissibilityRequired, DivergentSeries, LevelMismatch, UnsafeTruncation
from .ffpoly import GlobalConfig, Poly
from .hecke import AlgebraElem
from .scalars import Cyclo, UScalar


@dataclass(frozen=True)
class TruncatedRep:
    cfg: GlobalConfig
    chi: LevelChar
    D: int
    index: tuple = field(repr=False)
    pos: dict = field(repr=False, compare=False, hash=False)
    cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    @property
    def size(self):
        return len(self.index)

    def degree(self, i):
        return len(self.index[i]) - 1


def build_rep(cfg: GlobalConfig, chi: LevelChar, D: int) -> TruncatedRep:
    if not admissible(cfg, chi):
        raise AdmissibilityRequired("the regular representation needs an admissible character")
    index = tuple(m for n in range(D + 1) for m in cfg.enumerate_monic(n))
    return TruncatedRep(cfg, chi, D, index, {m: i for i, m in enumerate(index)})


class RepMatrix:
    """Sparse square matrix over UScalar."""

    __slots__ = ("n", "p", "entries")

    def __init__(self, n: int, p: int, entries=None):
        self.n, self.p = n, p
        self.entries = {k: v for k, v in (entries or {}).items() if not v.is_zero()}

    def __matmul__(self, other: "RepMatrix") -> "RepMatrix":
        by_row: dict = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                v = a * b
                out[(i, j)] = out[(i, j)] + v if (i, j) in out else v
        return RepMatrix(self.n, self.p, out)

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return RepMatrix(self.n, self.p, out)

    def __eq__(self, other):
        return isinstance(other, RepMatrix) and self.n == other.n and self.entries == other.entries

    def column(self, j):
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def columns(self):
        cols: dict = {}
        for (i, j), v in self.entries.items():
            cols.setdefault(j, {})[i] = v
        return cols

    def diagonal(self):
        return {i: v for (i, j), v in self.entries.items() if i == j}

    def adjoint(self):
        return RepMatrix(self.n, self.p, {(j, i): v.conj() for (i, j), v in self.entries.items()})

    def to_numeric(self, u: float):
        import numpy as np

        out = np.zeros((self.n, self.n), dtype=complex)
        for (i, j), v in self.entries.items():
            out[i, j] = v.evaluate(u)
        return out

    def to_json(self):
        """Dense rows; each entry a list of {u_pow, cyclo} or [] for zero."""
        rows = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                v = self.entries.get((i, j))
                row.append([] if v is None else
                           [{"u_pow": k, "cyclo": [str(r) for r in v.d[k].c]} for k in sorted(v.d)])
            rows.append(row)
        return rows


def char_vector(R: TruncatedRep, lam) -> list:
    """Exponents of chi(m lam) for every index monic m.

    res(m x) is linear in the coefficients of m: with x = t lam expanded as
    sum_j c_j T^-j, res(T^k x) = c_{k+1}.  One expansion per lam serves every m.
    """
    cfg = R.cfg
    cache = R.cache.setdefault("charvec", {})
    vec = cache.get(lam)
    if vec is None:
        if not lam.num:
            vec = [0] * R.size
        else:
            if not cfg.divides(lam.den, R.chi.level):
                raise LevelMismatch("annihilator does not divide the character level")
            c = laurent_tail(cfg, cfg.mul(R.chi.t, lam.num), lam.den, R.D + 1)
            vec = []
            for m in R.index:
                r = 0
                for k, mk in enumerate(m):
                    if mk and c[k]:
                        r = cfg.fadd(r, cfg.fmul(mk, c[k]))
                vec.append(cfg.trace(r))
        cache[lam] = vec
    return vec


def shift_tables(R: TruncatedRep, a: Poly, b: Poly):
    """Index maps of mu_a (up) and mu_b^* (down); -1 where the vector dies."""
    cfg = R.cfg
    cache = R.cache.setdefault("shifts", {})
    if ("up", a) not in cache:
        up = []
        for m in R.index:
            up.append(R.pos[cfg.mul(a, m)] if len(m) + len(a) - 2 <= R.D else -1)
        cache[("up", a)] = up
    if ("down", b) not in cache:
        down = []
        for m in R.index:
            qt, r = cfg.divmod(m, b)
            down.append(-1 if r else R.pos[qt])
        cache[("down", b)] = down
    return cache[("up", a)], cache[("down", b)]


def _term_column(R: TruncatedRep, key, m: Poly):
    """(row monic, root exponent) for one basis term on eps_m, or None."""
    cfg = R.cfg
    a, lam, b = key
    if len(b) > 1:
        qt, r = cfg.divmod(m, b)
        if r:
            return None
        m = qt
    k = 0
    if lam.num:
        k = char_vector(R, lam)[R.pos[m]]
    if len(a) > 1:
        if len(m) - 1 + len(a) - 1 > R.D:
            return None
        m = cfg.mul(a, m)
    return m, k


def rep_apply(R: TruncatedRep, x: AlgebraElem) -> RepMatrix:
    cfg = R.cfg
    for (_, lam, _) in x.terms:
        if lam.num and not cfg.divides(lam.den, R.chi.level):
            raise LevelMismatch("annihilator does not divide the character level")
    roots = [Cyclo.root(cfg.p, k) for k in range(cfg.p)]
    out: dict = {}
    for key, v in x.terms.items():
        for j, m in enumerate(R.index):
            hit = _term_column(R, key, m)
            if hit is None:
                continue
            row, k = hit
            i = R.pos[row]
            val = v * roots[k] if k else v
            out[(i, j)] = out[(i, j)] + val if (i, j) in out else val
    return RepMatrix(R.size, cfg.p, out)


def max_up_degree(x: AlgebraElem) -> int:
    return max((len(a) - 1 for (a, _, _) in x.terms), default=0)


def interior_columns(R: TruncatedRep, *elems: AlgebraElem) -> list[int]:
    """Columns whose images under the product never touch the truncation."""
    shift = sum(max_up_degree(x) for x in elems)
    if shift > R.D:
        raise UnsafeTruncation(f"up-shift {shift} exceeds truncation degree {R.D}")
    return [j for j in range(R.size) if R.degree(j) <= R.D - shift]


def mul_oracle_check(R: TruncatedRep, x: AlgebraElem, y: AlgebraElem, product=None) -> dict:
    """Compare rep(x y) with rep(x) rep(y) exactly on the interior block.

    ``product`` defaults to the algebra product; a different product rule
    can be passed in to test it against the representation.
    """
    from .hecke import mul

    cols = interior_columns(R, x, y)
    xy = (product or mul)(x, y)
    lhs = rep_apply(R, xy).columns()
    rhs = (rep_apply(R, x) @ rep_apply(R, y)).columns()
    bad = [j for j in cols if lhs.get(j, {}) != rhs.get(j, {})]
    return {"pass": not bad, "columns_checked": len(cols), "mismatched_columns": len(bad),
            "witness": None if not bad else {"column": [int(c) for c in R.index[bad[0]]]}}


def gibbs_trace_truncated(R: TruncatedRep, x: AlgebraElem, beta: float | None = None):
    """Weighted diagonal trace of rep(x) against the truncated partition sum.

    Formal mode (beta None) returns (numerator UScalar, denominator UScalar),
    both exact through u^D; numeric mode returns their ratio at u = q^-beta.
    """
    cfg = R.cfg
    M = rep_apply(R, x)
    num = UScalar(cfg.p)
    for i, v in M.diagonal().items():
        num = num + v.shift(R.degree(i))
    den = UScalar(cfg.p, {n: Cyclo.rational(cfg.p, cfg.q**n) for n in range(R.D + 1)})
    if beta is None:
        return num, den
    if beta <= 1:
        raise DivergentSeries("Gibbs traces need beta > 1")
    u = float(cfg.q) ** (-beta)
    return num.evaluate(u) / den.evaluate(u)


def weight_conjugate(R: TruncatedRep, M: RepMatrix, n: int = 1) -> RepMatrix:
    """W^n M W^-n with W = diag(u^deg m): the flow at imaginary time."""
    return RepMatrix(M.n, M.p, {(i, j): v.shift(n * (R.degree(i) - R.degree(j)))
                                for (i, j), v in M.entries.items()})


def commutant_dimension(R: TruncatedRep, generators, block_deg: int | None = None, tol=1e-9) -> dict:
    """Numeric dimension of the joint commutant of generator matrices
    restricted to the block deg m <= block_deg.  Exploratory only."""
    import numpy as np

    block_deg = R.D if block_deg is None else block_deg
    idx = [i for i in range(R.size) if R.degree(i) <= block_deg]
    n = len(idx)
    rows = []
    eye = np.eye(n)
    for g in generators:
        A = rep_apply(R, g).to_numeric(0.5)[np.ix_(idx, idx)]
        # vec(AX - XA) = (I kron A - A^T kron I) vec(X)
        rows.append(np.kron(eye, A) - np.kron(A.T, eye))
    K = np.vstack(rows) if rows else np.zeros((0, n * n))
    sv = np.linalg.svd(K, compute_uv=False) if K.size else np.zeros(0)
    rank = int((sv > tol * max(1.0, sv.max() if sv.size else 1.0)).sum())
    return {"block_size": n, "commutant_dim": n * n - rank,
            "status": "exploratory: finite block only, nothing is asserted about the full representation"}
