"""Cocharacter data for GL_n and the subgroup apparatus it induces.

A cocharacter is a non-increasing integer weight vector d defining the
block structure of the parabolic pair P+/P-, their unipotent radicals,
the common Levi M, the depth-one kernel of reduction, and the four zip
groups used by the orbit engines.
"""

from __future__ import annotations

import itertools
from enum import Enum

from .errors import BudgetExceeded, InsufficientPrecision, NotInParabolic
from .gf import FieldSpec
from .matring import (
    FQ,
    LAURENT,
    WITTFRAC,
    Mat,
    flat_det,
    flat_identity,
    mat_decode,
)
from .series import LaurentElt
from .witt import WittCtx, WittFraction

_ENUM_CAP = 600_000  # candidate matrices scanned by an exhaustive enumeration


class SubgroupTag(Enum):
    Pplus = "Pplus"
    Pminus = "Pminus"
    Uplus = "Uplus"
    Uminus = "Uminus"
    M = "M"
    K1 = "K1"
    Hplus = "Hplus"
    Hminus = "Hminus"
    leftH = "leftH"
    rightH = "rightH"
    ZipNormal = "ZipNormal"
    ZipFrobenius = "ZipFrobenius"
    ZipLoop = "ZipLoop"
    ZipPro = "ZipPro"


class Cocharacter:
    """Dominant weight vector for GL_n with its derived block data."""

    __slots__ = ("n", "weights", "blocks", "block_of", "type_J")

    def __init__(self, weights):
        weights = tuple(int(d) for d in weights)
        if not weights:
            raise ValueError("empty weight vector")
        if any(a < b for a, b in zip(weights, weights[1:])):
            raise ValueError(f"weights must be non-increasing, got {weights}")
        self.n = len(weights)
        self.weights = weights
        blocks = []
        for d in weights:
            if blocks and blocks[-1][0] == d:
                blocks[-1][1] += 1
            else:
                blocks.append([d, 1])
        self.blocks = tuple((d, s) for d, s in blocks)
        block_of = []
        for bi, (_, s) in enumerate(self.blocks):
            block_of.extend([bi] * s)
        self.block_of = tuple(block_of)
        self.type_J = frozenset(
            i + 1 for i in range(self.n - 1) if weights[i] == weights[i + 1]
        )

    def scaled(self, k: int) -> "Cocharacter":
        if k < 1:
            raise ValueError("scale factor must be >= 1")
        return Cocharacter(tuple(k * d for d in self.weights))

    def sigma_twist(self, times: int = 1) -> "Cocharacter":
        """Frobenius twist; identity on split diagonal cocharacters."""
        return self

    def phi_twist(self, p: int) -> "Cocharacter":
        """The composite twist, which rescales the weights by p."""
        return self.sigma_twist().scaled(p)

    def is_minuscule(self) -> bool:
        return max(self.weights) - min(self.weights) <= 1

    def __eq__(self, other):
        return isinstance(other, Cocharacter) and other.weights == self.weights

    def __hash__(self):
        return hash(self.weights)

    def __repr__(self):
        return f"Cocharacter{self.weights}"


def mu_matrix(mu: Cocharacter, ring: str, *, spec: FieldSpec = None,
              prec: int = None, wctx: WittCtx = None) -> Mat:
    """diag(pi^{d_1}, ..., pi^{d_n}) over the requested ring."""
    if ring == LAURENT:
        if prec <= max(mu.weights):
            raise InsufficientPrecision(
                f"prec {prec} cannot represent t^{max(mu.weights)}"
            )
        diag = [LaurentElt.t_power(spec, d, prec) for d in mu.weights]
        return Mat.diagonal(LAURENT, diag, spec=spec, prec=prec)
    if ring == WITTFRAC:
        if max(mu.weights) >= wctx.length or -min(mu.weights) >= wctx.length:
            raise InsufficientPrecision(
                f"weights {mu.weights} out of range at Witt length {wctx.length}"
            )
        diag = [WittFraction.p_power(wctx, d) for d in mu.weights]
        return Mat.diagonal(WITTFRAC, diag, wctx=wctx)
    raise ValueError("mu matrix lives over Laurent or Witt entries")


def conj_by_mu(g: Mat, mu: Cocharacter, sign: int) -> Mat:
    """Entrywise uniformizer shift: block (i,j) scaled by pi^(sign*(d_j-d_i)).

    sign=+1 computes mu(t)^(-1) g mu(t); sign=-1 the reverse conjugation.
    """
    d = mu.weights
    rows = []
    for i in range(mu.n):
        rows.append([
            g.rows[i][j].shifted(sign * (d[j] - d[i])) for j in range(mu.n)
        ])
    return Mat(g.ring, rows)


def levi_component(p: Mat, mu: Cocharacter) -> Mat:
    """Block-diagonal part of an element of P+ or P-."""
    if not (is_member(p, SubgroupTag.Pplus, mu) or is_member(p, SubgroupTag.Pminus, mu)):
        raise NotInParabolic("matrix lies in neither parabolic")
    spec = p.rows[0][0].spec
    zero = spec.zero()
    rows = [
        [p.rows[i][j] if mu.block_of[i] == mu.block_of[j] else zero
         for j in range(mu.n)]
        for i in range(mu.n)
    ]
    return Mat(FQ, rows)


def _tau_mat(g: Mat, times: int) -> Mat:
    return Mat(FQ, [[x.frobenius(times) for x in r] for r in g.rows])


def is_member(g, tag: SubgroupTag, mu: Cocharacter, tau_power: int = 0) -> bool:
    """Membership predicates for the subgroups attached to mu.

    F_q-level tags take a single F_q matrix (or a pair for the zip tags);
    loop-level tags take truncated Laurent matrices.
    """
    if tag in (SubgroupTag.Pplus, SubgroupTag.Pminus, SubgroupTag.Uplus,
               SubgroupTag.Uminus, SubgroupTag.M):
        return _block_member(g, tag, mu)
    if tag == SubgroupTag.K1:
        return g.is_integral() and _reduces_to_identity(g, mu)
    if tag == SubgroupTag.Hplus:
        return g.is_integral() and _block_member(g.reduce(), SubgroupTag.Pplus, mu)
    if tag == SubgroupTag.Hminus:
        return g.is_integral() and _block_member(g.reduce(), SubgroupTag.Pminus, mu)
    if tag == SubgroupTag.leftH:
        return g.is_integral() and conj_by_mu(g, mu, -1).is_integral()
    if tag == SubgroupTag.rightH:
        return g.is_integral() and conj_by_mu(g, mu, +1).is_integral()
    if tag == SubgroupTag.ZipNormal:
        pm, pp = g
        return (
            _block_member(pm, SubgroupTag.Pminus, mu)
            and _block_member(pp, SubgroupTag.Pplus, mu)
            and levi_component(pm, mu) == levi_component(pp, mu)
        )
    if tag == SubgroupTag.ZipFrobenius:
        pm, pp = g
        return (
            _block_member(pm, SubgroupTag.Pminus, mu)
            and _block_member(pp, SubgroupTag.Pplus, mu)
            and levi_component(pm, mu) == _tau_mat(levi_component(pp, mu), tau_power)
        )
    if tag == SubgroupTag.ZipLoop:
        hm, hp = g
        if not (is_member(hm, SubgroupTag.Hminus, mu) and
                is_member(hp, SubgroupTag.Hplus, mu)):
            return False
        lm = levi_component(hm.reduce(), mu)
        lp = levi_component(hp.reduce(), mu)
        return lm == lp
    if tag == SubgroupTag.ZipPro:
        hm, hp = g
        if not (is_member(hp, SubgroupTag.leftH, mu) and
                is_member(hm, SubgroupTag.rightH, mu)):
            return False
        conj = conj_by_mu(hp, mu, -1)
        k = min(hm.min_precision(), conj.min_precision())
        return hm.congruent_mod(conj, k)
    raise ValueError(f"unknown tag {tag}")


def _block_member(g: Mat, tag: SubgroupTag, mu: Cocharacter) -> bool:
    b = mu.block_of
    n = mu.n
    spec = g.rows[0][0].spec
    for i in range(n):
        for j in range(n):
            x = g.rows[i][j]
            if tag in (SubgroupTag.Pplus, SubgroupTag.Uplus):
                if b[i] > b[j] and not x.is_zero():
                    return False
            if tag in (SubgroupTag.Pminus, SubgroupTag.Uminus):
                if b[i] < b[j] and not x.is_zero():
                    return False
            if tag == SubgroupTag.M and b[i] != b[j] and not x.is_zero():
                return False
    if tag in (SubgroupTag.Uplus, SubgroupTag.Uminus):
        one, zero = spec.one(), spec.zero()
        for i in range(n):
            for j in range(n):
                if b[i] == b[j]:
                    want = one if i == j else zero
                    if g.rows[i][j] != want:
                        return False
    return True


def _reduces_to_identity(g: Mat, mu: Cocharacter) -> bool:
    red = g.reduce()
    spec = red.rows[0][0].spec
    one, zero = spec.one(), spec.zero()
    return all(
        red.rows[i][j] == (one if i == j else zero)
        for i in range(g.n)
        for j in range(g.n)
    )


# -- exhaustive point enumeration (flat encodings) -------------------------------


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def group_order(tag: SubgroupTag, mu: Cocharacter, q: int) -> int:
    upper = sum(
        1 for i in range(mu.n) for j in range(mu.n)
        if mu.block_of[i] < mu.block_of[j]
    )
    m_order = 1
    for _, s in mu.blocks:
        m_order *= gl_order(s, q)
    if tag == SubgroupTag.Uplus or tag == SubgroupTag.Uminus:
        return q**upper
    if tag == SubgroupTag.M:
        return m_order
    if tag in (SubgroupTag.Pplus, SubgroupTag.Pminus):
        return q**upper * m_order
    if tag in (SubgroupTag.ZipNormal, SubgroupTag.ZipFrobenius):
        return q**upper * m_order * q**upper
    raise ValueError(f"no finite order for {tag}")


def _budget_check(spec: FieldSpec, n: int, candidates: int) -> None:
    if n > 3 or spec.q > 9 or candidates > _ENUM_CAP:
        raise BudgetExceeded(
            f"enumeration of {candidates} candidates at n={n}, q={spec.q}"
        )


_GL_CACHE: dict = {}


def enumerate_gl_flat(spec: FieldSpec, n: int) -> tuple:
    """All invertible n x n matrices over F_q, encoded, in lexicographic order."""
    key = (id(spec), n)
    if key not in _GL_CACHE:
        _budget_check(spec, n, spec.q ** (n * n))
        out = tuple(
            flat for flat in itertools.product(range(spec.q), repeat=n * n)
            if flat_det(spec, n, flat) != 0
        )
        assert len(out) == gl_order(n, spec.q)
        _GL_CACHE[key] = out
    return _GL_CACHE[key]


def upper_block_positions(mu: Cocharacter):
    return [
        (i, j)
        for i in range(mu.n)
        for j in range(mu.n)
        if mu.block_of[i] < mu.block_of[j]
    ]


def enumerate_unipotent_flat(spec: FieldSpec, mu: Cocharacter, sign: int) -> list:
    """U_+ (sign=+1) or U_- (sign=-1) as flat matrices."""
    n = mu.n
    positions = upper_block_positions(mu)
    if sign < 0:
        positions = [(j, i) for i, j in positions]
    _budget_check(spec, n, spec.q ** len(positions))
    out = []
    base = list(flat_identity(n))
    for vals in itertools.product(range(spec.q), repeat=len(positions)):
        flat = base[:]
        for (i, j), c in zip(positions, vals):
            flat[i * n + j] = c
        out.append(tuple(flat))
    return out


def enumerate_levi_flat(spec: FieldSpec, mu: Cocharacter) -> list:
    """The common Levi M: block-diagonal matrices with invertible blocks."""
    n = mu.n
    offs = []
    pos = 0
    for _, s in mu.blocks:
        offs.append((pos, s))
        pos += s
    per_block = [enumerate_gl_flat(spec, s) for _, s in offs]
    out = []
    for combo in itertools.product(*per_block):
        flat = [0] * (n * n)
        for (start, s), blk in zip(offs, combo):
            for i in range(s):
                for j in range(s):
                    flat[(start + i) * n + (start + j)] = blk[i * s + j]
        out.append(tuple(flat))
    return out


def enumerate_zip_pairs_flat(spec: FieldSpec, mu: Cocharacter, *,
                             frobenius: bool = False, tau_power: int = 0) -> list:
    """Zip group as pairs (p_-, p_+) = (u_- m', u_+ m), m' = tau(m) if twisted."""
    from .matring import flat_mul, flat_frobenius

    n = mu.n
    ups = enumerate_unipotent_flat(spec, mu, +1)
    downs = enumerate_unipotent_flat(spec, mu, -1)
    ms = enumerate_levi_flat(spec, mu)
    out = []
    for m in ms:
        mt = flat_frobenius(spec, m, tau_power) if frobenius else m
        for um in downs:
            pm = flat_mul(spec, n, um, mt)
            for up in ups:
                out.append((pm, flat_mul(spec, n, up, m)))
    return out


def enumerate_points(tag, mu: Cocharacter, spec: FieldSpec, tau_power: int = 0):
    """Exhaustive duplicate-free point list; Mat objects (pairs for zip tags)."""
    n = mu.n
    if tag == "G":
        return [mat_decode(spec, n, f) for f in enumerate_gl_flat(spec, n)]
    if tag == SubgroupTag.Uplus:
        return [mat_decode(spec, n, f) for f in enumerate_unipotent_flat(spec, mu, +1)]
    if tag == SubgroupTag.Uminus:
        return [mat_decode(spec, n, f) for f in enumerate_unipotent_flat(spec, mu, -1)]
    if tag == SubgroupTag.M:
        return [mat_decode(spec, n, f) for f in enumerate_levi_flat(spec, mu)]
    if tag in (SubgroupTag.Pplus, SubgroupTag.Pminus):
        from .matring import flat_mul

        sign = +1 if tag == SubgroupTag.Pplus else -1
        out = []
        for u in enumerate_unipotent_flat(spec, mu, sign):
            for m in enumerate_levi_flat(spec, mu):
                out.append(mat_decode(spec, n, flat_mul(spec, n, u, m)))
        return out
    if tag == SubgroupTag.ZipNormal:
        pairs = enumerate_zip_pairs_flat(spec, mu)
        return [(mat_decode(spec, n, a), mat_decode(spec, n, b)) for a, b in pairs]
    if tag == SubgroupTag.ZipFrobenius:
        pairs = enumerate_zip_pairs_flat(spec, mu, frobenius=True, tau_power=tau_power)
        return [(mat_decode(spec, n, a), mat_decode(spec, n, b)) for a, b in pairs]
    raise ValueError(f"tag {tag} is not finitely enumerable")


# -- generator sets for the orbit engines ------------------------------------------


def transvection_generators(spec: FieldSpec, n: int) -> list:
    """I + c E_ij over all off-diagonal positions and nonzero c; generates SL_n."""
    out = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for c in range(1, spec.q):
                flat = list(flat_identity(n))
                flat[i * n + j] = c
                out.append(tuple(flat))
    return out


def gl_generators(spec: FieldSpec, n: int) -> list:
    """Transvections plus diagonal matrices; generates GL_n(F_q)."""
    out = transvection_generators(spec, n)
    for diag in itertools.product(range(1, spec.q), repeat=n):
        if all(c == 1 for c in diag):
            continue
        flat = [0] * (n * n)
        for i, c in enumerate(diag):
            flat[i * n + i] = c
        out.append(tuple(flat))
    return out


def zip_pair_generators(spec: FieldSpec, mu: Cocharacter, *,
                        frobenius: bool = False, tau_power: int = 0) -> list:
    """Pairs generating the zip group: one-sided unipotents and Levi diagonal."""
    from .matring import flat_frobenius

    n = mu.n
    ident = flat_identity(n)
    gens = []
    for u in enumerate_unipotent_flat(spec, mu, -1):
        if u != ident:
            gens.append((u, ident))
    for u in enumerate_unipotent_flat(spec, mu, +1):
        if u != ident:
            gens.append((ident, u))
    for m in enumerate_levi_flat(spec, mu):
        if m != ident:
            mt = flat_frobenius(spec, m, tau_power) if frobenius else m
            gens.append((mt, m))
    return gens


# -- random loop-group elements (for sampled suites) --------------------------------


def random_laurent(spec: FieldSpec, rng, v: int, prec: int) -> LaurentElt:
    return LaurentElt(
        spec, v, prec, [spec.element(rng.randrange(spec.q)) for _ in range(prec - v)]
    )


def random_integral_mat(spec: FieldSpec, n: int, prec: int, rng,
                        unit: bool = True) -> Mat:
    """Random element of the integral loop group at the given precision."""
    while True:
        rows = [[random_laurent(spec, rng, 0, prec) for _ in range(n)] for _ in range(n)]
        m = Mat(LAURENT, rows)
        if not unit:
            return m
        red = m.reduce()
        flat = tuple(x.code for r in red.rows for x in r)
        if flat_det(spec, n, flat) != 0:
            return m


def random_k1_mat(spec: FieldSpec, n: int, prec: int, rng) -> Mat:
    """Random depth-one kernel element: identity plus t * (integral matrix)."""
    ident = Mat.identity(LAURENT, n, spec=spec, prec=prec)
    rows = [
        [random_laurent(spec, rng, 1, prec) for _ in range(n)] for _ in range(n)
    ]
    return ident + Mat(LAURENT, rows)


def random_left_h_mat(spec: FieldSpec, mu: Cocharacter, prec: int, rng) -> Mat:
    """Random element of L+G intersected with mu(t)^(-1) L+G mu(t).

    Built as mu(t)^(-1) k mu(t) for k integral with upper blocks divisible
    by t^(d_i - d_j); the reduction of k is then block lower triangular, so
    we resample until its diagonal blocks are invertible.
    """
    n = mu.n
    d = mu.weights
    while True:
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                gap = d[i] - d[j]
                row.append(random_laurent(spec, rng, max(gap, 0), prec))
            rows.append(row)
        k = Mat(LAURENT, rows)
        red = k.reduce()
        flat = tuple(x.code for r in red.rows for x in r)
        if flat_det(spec, n, flat) == 0:
            continue
        g = conj_by_mu(k, mu, +1)
        assert g.is_integral()
        return g


def random_witt_k1_mat(wctx: WittCtx, n: int, rng) -> Mat:
    """Identity plus p * (integral Witt matrix)."""
    spec = wctx.spec
    ident = Mat.identity(WITTFRAC, n, wctx=wctx)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            coords = [spec.zero()] + [
                spec.element(rng.randrange(spec.q)) for _ in range(wctx.length - 1)
            ]
            row.append(WittFraction.integral(wctx.from_coords(coords)))
        rows.append(row)
    return ident + Mat(WITTFRAC, rows)
