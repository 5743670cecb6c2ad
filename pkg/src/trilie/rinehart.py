"""Commutative coefficient algebras and Hom 3-Lie-Rinehart bundles.

A bundle couples a Hom 3-Lie algebra L with a commutative algebra A
through an anchor map rho (pairs of L acting as twisted derivations of
A) and a module action of A on L.  The check suites grade a bundle as
weak (compatibility of bracket, anchor and action) or full (the extra
A-linearity law of the anchor), always over exact rationals, with
window-missing data skipped and counted rather than guessed.
"""

from __future__ import annotations

from .exactq import (
    MatrixQ,
    SubspaceQ,
    SVec,
    kernel_basis,
    mat_columns_sv,
    sv_axpy,
    sv_scale,
    sv_to_tuple,
)
from .core3lie import Hom3Lie, center, check_hom_jacobi, check_multiplicative
from .repmod import (
    Columns,
    HomRepresentation,
    PairAction,
    check_hom_rep,
    kernel_of_rep,
    op_apply,
    op_compose,
    op_zero,
    _rho_on_vec_left,
)
from .report import MAX_FAILURES, CheckReport, SuiteReport


class CommAlgebra:
    """Commutative associative algebra on a finite rational basis.

    The multiplication table stores e_i * e_j for i <= j; a None entry
    means the product leaves the representable window.  Absent keys are
    zero products.  phi is the algebra endomorphism carried by the
    bundle; unit, when declared, is the coordinate vector of 1.
    """

    __slots__ = ("dim", "table", "phi", "unit", "_phi_cols")

    def __init__(self, dim: int, table: dict | None = None,
                 phi: MatrixQ | None = None, unit: SVec | None = None):
        if dim <= 0:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self.table: dict = {}
        for (i, j), vec in (table or {}).items():
            if not (0 <= i <= j < dim):
                raise ValueError(f"product key {(i, j)} is not ordered")
            if vec is None:
                self.table[(i, j)] = None
            else:
                vec = {m: c for m, c in vec.items() if c != 0}
                for m in vec:
                    if not 0 <= m < dim:
                        raise ValueError("product coordinate out of range")
                if vec:
                    self.table[(i, j)] = vec
        self.phi = phi if phi is not None else MatrixQ.identity(dim)
        if self.phi.nrows != dim or self.phi.ncols != dim:
            raise ValueError("phi shape mismatch")
        self.unit = dict(unit) if unit else None
        self._phi_cols = mat_columns_sv(self.phi)

    def basis_product(self, i: int, j: int):
        if i > j:
            i, j = j, i
        return self.table.get((i, j), _EMPTY)

    def product(self, u, v):
        """u * v for sparse vectors; None when a needed entry is missing."""
        if u is None or v is None:
            return None
        out: SVec = {}
        table = self.table
        for i, ci in u.items():
            for j, cj in v.items():
                vec = table.get((i, j) if i <= j else (j, i), _EMPTY)
                if vec is None:
                    return None
                if vec:
                    sv_axpy(out, ci * cj, vec)
        return out

    def phi_apply(self, vec):
        if vec is None:
            return None
        return op_apply(self._phi_cols, vec)

    def __eq__(self, other):
        if not isinstance(other, CommAlgebra):
            return NotImplemented
        if self.dim != other.dim or self.phi != other.phi:
            return False
        if (self.unit or {}) != (other.unit or {}):
            return False
        keys = set(self.table) | set(other.table)
        return all(
            self.table.get(k, _EMPTY) == other.table.get(k, _EMPTY)
            for k in keys
        )

    def __repr__(self):
        return f"CommAlgebra(dim={self.dim}, products={len(self.table)})"


_EMPTY: SVec = {}


def check_commutative_associative(A: CommAlgebra) -> CheckReport:
    """(e_i e_j) e_k == e_i (e_j e_k) over i <= j <= k."""
    rep = CheckReport("assoc")
    n = A.dim
    for i in range(n):
        ei = {i: 1}
        for j in range(i, n):
            pij = A.basis_product(i, j)
            for k in range(j, n):
                lhs = A.product(pij, {k: 1})
                rhs = A.product(ei, A.basis_product(j, k))
                if lhs is None or rhs is None:
                    rep.skip()
                    continue
                if lhs == rhs:
                    rep.tick()
                else:
                    rep.record({"i": i, "j": j, "k": k})
    return rep


def check_phi_multiplicative(A: CommAlgebra) -> CheckReport:
    """phi(e_i e_j) == phi(e_i) phi(e_j)."""
    rep = CheckReport("phi-hom")
    cols = A._phi_cols
    for i in range(A.dim):
        for j in range(i, A.dim):
            lhs = A.phi_apply(A.basis_product(i, j))
            rhs = A.product(cols[i], cols[j])
            if lhs is None or rhs is None:
                rep.skip()
                continue
            if lhs == rhs:
                rep.tick()
            else:
                rep.record({"i": i, "j": j})
    return rep


def check_unit(A: CommAlgebra) -> CheckReport:
    rep = CheckReport("unit")
    if A.unit is None:
        rep.block("no unit declared")
        return rep
    for i in range(A.dim):
        prod = A.product(A.unit, {i: 1})
        if prod is None:
            rep.skip()
        elif prod == {i: 1}:
            rep.tick()
        else:
            rep.record({"i": i})
    return rep


def check_phi_derivation(A: CommAlgebra, cols: Columns) -> SuiteReport:
    """Twisted-derivation laws for a single operator D on A.

    hd1: D(ab) = phi(a) D(b) + D(a) phi(b)
    hd2: D(abc) = phi(ab) D(c) + phi(bc) D(a) + phi(ac) D(b)
    """
    suite = SuiteReport("phi-derivation")
    hd1 = suite.add(CheckReport("hd1"))
    hd2 = suite.add(CheckReport("hd2"))
    _derivation_into(A, cols, hd1, hd2, None)
    return suite


def _derivation_into(A: CommAlgebra, cols: Columns,
                     hd1: CheckReport, hd2: CheckReport, tag) -> None:
    n = A.dim
    phic = A._phi_cols
    dvec = [cols[i] for i in range(n)]

    def wit(extra):
        return dict(extra) if tag is None else {"pair": tag, **extra}

    for i in range(n):
        for j in range(i, n):
            p = A.basis_product(i, j)
            lhs = None if p is None else op_apply(cols, p)
            r1 = A.product(phic[i], dvec[j])
            r2 = A.product(dvec[i], phic[j])
            if lhs is None or r1 is None or r2 is None:
                hd1.skip()
                continue
            rhs: SVec = dict(r1)
            sv_axpy(rhs, 1, r2)
            if lhs == rhs:
                hd1.tick()
            else:
                hd1.record(wit({"i": i, "j": j}))
    for i in range(n):
        for j in range(i, n):
            pij = A.basis_product(i, j)
            fij = A.phi_apply(pij)
            for k in range(j, n):
                p = A.product(pij, {k: 1})
                lhs = None if p is None else op_apply(cols, p)
                fjk = A.phi_apply(A.basis_product(j, k))
                fik = A.phi_apply(A.basis_product(i, k))
                t1 = A.product(fij, dvec[k])
                t2 = A.product(fjk, dvec[i])
                t3 = A.product(fik, dvec[j])
                if lhs is None or t1 is None or t2 is None or t3 is None:
                    hd2.skip()
                    continue
                rhs = dict(t1)
                sv_axpy(rhs, 1, t2)
                sv_axpy(rhs, 1, t3)
                if lhs == rhs:
                    hd2.tick()
                else:
                    hd2.record(wit({"i": i, "j": j, "k": k}))


class ModuleAction:
    """Action of a CommAlgebra on the underlying space of L.

    table maps (a, m) to the sparse L-vector e_a * e_m; absent keys act
    as zero, None marks window-missing values.
    """

    __slots__ = ("dim_a", "dim_l", "table")

    def __init__(self, dim_a: int, dim_l: int, table: dict | None = None):
        self.dim_a = dim_a
        self.dim_l = dim_l
        self.table: dict = {}
        for (a, m), vec in (table or {}).items():
            if not (0 <= a < dim_a and 0 <= m < dim_l):
                raise ValueError(f"action key {(a, m)} out of range")
            if vec is None:
                self.table[(a, m)] = None
            else:
                vec = {p: c for p, c in vec.items() if c != 0}
                if vec:
                    self.table[(a, m)] = vec

    def basis_act(self, a: int, m: int):
        return self.table.get((a, m), _EMPTY)

    def act(self, avec, lvec):
        """(sum a) * (sum x); None when any needed entry is missing."""
        if avec is None or lvec is None:
            return None
        out: SVec = {}
        table = self.table
        for a, ca in avec.items():
            for m, cm in lvec.items():
                vec = table.get((a, m), _EMPTY)
                if vec is None:
                    return None
                if vec:
                    sv_axpy(out, ca * cm, vec)
        return out

    def __eq__(self, other):
        if not isinstance(other, ModuleAction):
            return NotImplemented
        if (self.dim_a, self.dim_l) != (other.dim_a, other.dim_l):
            return False
        keys = set(self.table) | set(other.table)
        return all(
            self.table.get(k, _EMPTY) == other.table.get(k, _EMPTY)
            for k in keys
        )

    def __repr__(self):
        return f"ModuleAction({self.dim_a} on {self.dim_l})"


class RinehartBundle:
    """All the data of a (candidate) Hom 3-Lie-Rinehart algebra."""

    __slots__ = ("L", "A", "rho", "act", "name", "L_labels", "A_labels",
                 "meta")

    def __init__(self, L: Hom3Lie, A: CommAlgebra, rho: PairAction,
                 act: ModuleAction, name: str = "",
                 L_labels=None, A_labels=None, meta: dict | None = None):
        if rho.dim_l != L.n or rho.dim_v != A.dim:
            raise ValueError("anchor shape mismatch")
        if act.dim_a != A.dim or act.dim_l != L.n:
            raise ValueError("action shape mismatch")
        self.L = L
        self.A = A
        self.rho = rho
        self.act = act
        self.name = name
        self.L_labels = tuple(L_labels) if L_labels else tuple(
            f"e{m}" for m in range(L.n))
        self.A_labels = tuple(A_labels) if A_labels else tuple(
            f"a{m}" for m in range(A.dim))
        self.meta = dict(meta) if meta else {}
        if len(self.L_labels) != L.n or len(self.A_labels) != A.dim:
            raise ValueError("label count mismatch")

    @property
    def rep(self) -> HomRepresentation:
        return HomRepresentation(self.rho, self.A.phi)

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"RinehartBundle(dim L={self.L.n}, dim A={self.A.dim}{tag})"


def check_anchor_derivations(B: RinehartBundle) -> CheckReport:
    """Every rho(e_i, e_j) lands in the twisted derivations of A."""
    rep = CheckReport("rho-derivation")
    hd1 = CheckReport("hd1")
    hd2 = CheckReport("hd2")
    for (i, j), cols in sorted(B.rho.ops.items()):
        _derivation_into(B.A, cols, hd1, hd2, (i, j))
    for part in (hd1, hd2):
        rep.checked += part.checked
        rep.skipped += part.skipped
        rep.failure_count += part.failure_count
        for wit in part.failures:
            if len(rep.failures) < MAX_FAILURES:
                rep.failures.append({"law": part.name, **wit})
        if part.passed is False:
            rep.passed = False
    return rep


def check_action_module(B: RinehartBundle) -> CheckReport:
    """(ab) x == a (bx) on basis triples."""
    rep = CheckReport("action-assoc")
    A, act = B.A, B.act
    for a in range(A.dim):
        for b in range(a, A.dim):
            prod = A.basis_product(a, b)
            for m in range(B.L.n):
                lhs = act.act(prod, {m: 1})
                rhs = act.act({a: 1}, act.basis_act(b, m))
                if lhs is None or rhs is None:
                    rep.skip()
                    continue
                if lhs == rhs:
                    rep.tick()
                else:
                    rep.record({"a": a, "b": b, "m": m})
    return rep


def check_action_unital(B: RinehartBundle) -> CheckReport:
    rep = CheckReport("action-unital")
    if B.A.unit is None:
        rep.block("no unit declared")
        return rep
    for m in range(B.L.n):
        out = B.act.act(B.A.unit, {m: 1})
        if out is None:
            rep.skip()
        elif out == {m: 1}:
            rep.tick()
        else:
            rep.record({"m": m})
    return rep


def check_action_twist(B: RinehartBundle) -> CheckReport:
    """alpha(a x) == phi(a) alpha(x)."""
    rep = CheckReport("action-twist")
    acols = mat_columns_sv(B.L.alpha)
    pc = B.A._phi_cols
    for a in range(B.A.dim):
        for m in range(B.L.n):
            ax = B.act.basis_act(a, m)
            lhs = None if ax is None else op_apply(acols, ax)
            rhs = B.act.act(pc[a], acols[m])
            if lhs is None or rhs is None:
                rep.skip()
                continue
            if lhs == rhs:
                rep.tick()
            else:
                rep.record({"a": a, "m": m})
    return rep


def check_bracket_action_leibniz(B: RinehartBundle) -> CheckReport:
    """[x, y, a z] == phi(a) [x, y, z] + rho(x, y)(a) alpha(z)."""
    rep = CheckReport("bracket-action-leibniz")
    L, A, act = B.L, B.A, B.act
    n = L.n
    acols = mat_columns_sv(L.alpha)
    pc = A._phi_cols
    sc = L.sc
    for i in range(n):
        for j in range(i + 1, n):
            cols, sign = B.rho.pair(i, j)
            for m in range(n):
                br, bsign = sc.lookup(i, j, m)
                alpham = acols[m]
                for a in range(A.dim):
                    az = act.basis_act(a, m)
                    lhs = None
                    if az is not None:
                        lhs = sc.trilinear({i: 1}, {j: 1}, az)
                    rho_a = cols[a]
                    if lhs is None or br is None or rho_a is None:
                        rep.skip()
                        continue
                    rhs = act.act(pc[a], br if bsign == 1 else
                                  sv_scale(br, bsign))
                    t2 = act.act(rho_a if sign == 1 else
                                 sv_scale(rho_a, sign), alpham)
                    if rhs is None or t2 is None:
                        rep.skip()
                        continue
                    total = dict(rhs)
                    sv_axpy(total, 1, t2)
                    if lhs == total:
                        rep.tick()
                    else:
                        rep.record({"i": i, "j": j, "a": a, "z": m})
    return rep


def check_weak_rinehart(B: RinehartBundle) -> SuiteReport:
    """The weak Hom 3-Lie-Rinehart axiom suite."""
    suite = SuiteReport("weak-rinehart")
    suite.add(check_multiplicative(B.L))
    suite.add(check_hom_jacobi(B.L))
    suite.add(check_commutative_associative(B.A))
    suite.add(check_phi_multiplicative(B.A))
    suite.add(check_unit(B.A))
    suite.add(check_anchor_derivations(B))
    suite.extend(check_hom_rep(B.L, B.rep))
    suite.add(check_action_module(B))
    suite.add(check_action_unital(B))
    suite.add(check_action_twist(B))
    suite.add(check_bracket_action_leibniz(B))
    return suite


def check_action_rho_compat(B: RinehartBundle) -> CheckReport:
    """rho(a x, y) == phi(a) rho(x, y) == rho(x, a y) as operators on A."""
    rep = CheckReport("action-rho-compat")
    A, act, rho = B.A, B.act, B.rho
    n = B.L.n
    pc = A._phi_cols
    for a in range(A.dim):
        fa = pc[a]
        for i in range(n):
            for j in range(i + 1, n):
                cols, sign = rho.pair(i, j)
                ax = act.basis_act(a, i)
                ay = act.basis_act(a, j)
                left = None if ax is None else _rho_on_vec_left(rho, ax, j)
                right = None
                if ay is not None:
                    r = _rho_on_vec_left(rho, ay, i)
                    right = [None if c is None else sv_scale(c, -1)
                             for c in r]
                mid: Columns = []
                for c in range(A.dim):
                    col = cols[c]
                    if col is None:
                        mid.append(None)
                    else:
                        prod = A.product(fa, col if sign == 1 else
                                         sv_scale(col, sign))
                        mid.append(prod)
                for c in range(A.dim):
                    m = mid[c]
                    lc = None if left is None else left[c]
                    rc = None if right is None else right[c]
                    if m is None or lc is None or rc is None:
                        rep.skip()
                        continue
                    if lc != m:
                        rep.record({"a": a, "i": i, "j": j, "column": c,
                                    "leg": "rho(a*x,y) vs phi(a)rho(x,y)"})
                    elif m != rc:
                        rep.record({"a": a, "i": i, "j": j, "column": c,
                                    "leg": "phi(a)rho(x,y) vs rho(x,a*y)"})
                    else:
                        rep.tick()
    return rep


def check_full_rinehart(B: RinehartBundle) -> SuiteReport:
    """Weak suite plus the A-linearity of the anchor."""
    suite = check_weak_rinehart(B)
    suite.name = "full-rinehart"
    if suite.passed:
        suite.add(check_action_rho_compat(B))
    else:
        blocked = CheckReport("action-rho-compat")
        blocked.block("weak suite failed")
        suite.add(blocked)
    return suite


# --- the six compatibility identities -------------------------------------
#
# Each identity is a multilinear equation mixing bracket, twist, anchor
# and action.  Enumeration exploits proven formal symmetries; bulk slots
# are evaluated only when the shared inner expression is nonzero.


class _IdentityContext:
    __slots__ = ("B", "n", "m", "act_table", "alpha2", "phi2", "ab",
                 "pr", "rho_ops", "prods")

    def __init__(self, B: RinehartBundle):
        self.B = B
        L, A = B.L, B.A
        self.n = L.n
        self.m = A.dim
        self.act_table = B.act.table
        acols = mat_columns_sv(L.alpha)
        self.alpha2 = op_compose(acols, acols)
        pc = A._phi_cols
        self.phi2 = op_compose(pc, pc)
        # alpha of every ordered basis bracket
        self.ab: dict = {}
        sc = L.sc
        for i in range(self.n):
            for j in range(i + 1, self.n):
                for k in range(j + 1, self.n):
                    vec, _ = sc.lookup(i, j, k)
                    self.ab[(i, j, k)] = (None if vec is None
                                          else op_apply(acols, vec))
        # phi composed with every anchor operator
        self.pr: dict = {}
        self.rho_ops: dict = {}
        for (i, j), cols in B.rho.ops.items():
            self.rho_ops[(i, j)] = cols
            self.pr[(i, j)] = op_compose(pc, cols)
        self.prods = A.table

    def ab_at(self, i: int, j: int, k: int):
        """(alpha[e_i,e_j,e_k], sign); (None, 0) for repeats."""
        if i == j or j == k or i == k:
            return _EMPTY, 0
        sign = 1
        if i > j:
            i, j, sign = j, i, -sign
        if j > k:
            j, k, sign = k, j, -sign
            if i > j:
                i, j, sign = j, i, -sign
        return self.ab[(i, j, k)], sign

    def op_at(self, table, i, j):
        if i == j:
            return None, 0
        if i < j:
            return table.get((i, j)), 1
        return table.get((j, i)), -1

    def act_sv(self, avec: SVec, lvec: SVec):
        """avec * lvec through the module action; None when missing."""
        out: SVec = {}
        table = self.act_table
        for a, ca in avec.items():
            for m, cm in lvec.items():
                vec = table.get((a, m), _EMPTY)
                if vec is None:
                    return None
                if vec:
                    sv_axpy(out, ca * cm, vec)
        return out

    def prod_sv(self, u: SVec, v: SVec):
        out: SVec = {}
        table = self.prods
        for i, ci in u.items():
            for j, cj in v.items():
                vec = table.get((i, j) if i <= j else (j, i), _EMPTY)
                if vec is None:
                    return None
                if vec:
                    sv_axpy(out, ci * cj, vec)
        return out


_HO1_TERMS = (
    # (rho pair slots, bracket slots) over (x1..x5) as indices 0..4
    ((3, 4), (0, 1, 2)),
    ((4, 2), (0, 1, 3)),
    ((2, 3), (0, 1, 4)),
    ((1, 2), (0, 3, 4)),
    ((1, 3), (2, 0, 4)),
    ((1, 4), (2, 3, 0)),
)

_HO2_TERMS = (
    ((3, 4), (0, 1, 2)),
    ((4, 2), (0, 1, 3)),
    ((2, 3), (0, 1, 4)),
    ((2, 0), (1, 3, 4)),
    ((3, 0), (2, 1, 4)),
    ((4, 0), (2, 3, 1)),
)

_HO3_TERMS = (
    ((1, 2), (0, 3, 4)),
    ((1, 3), (2, 0, 4)),
    ((1, 4), (2, 3, 0)),
    ((0, 2), (1, 3, 4)),
    ((0, 3), (2, 1, 4)),
    ((0, 4), (2, 3, 1)),
)


def _inner_sum(ctx: _IdentityContext, terms, xs, a: int):
    """Sum of phi.rho(pair)(e_a) acting on alpha-brackets; None on gaps."""
    acc: SVec = {}
    for (p, q), (r, s, t) in terms:
        cols, sign = ctx.op_at(ctx.pr, xs[p], xs[q])
        if sign == 0:
            continue
        bvec, bsign = ctx.ab_at(xs[r], xs[s], xs[t])
        if bsign == 0:
            continue
        if cols is None:
            # absent operator means the zero map, not a gap
            continue
        avec = cols[a]
        if avec is None or bvec is None:
            return None
        if not avec or not bvec:
            continue
        term = ctx.act_sv(avec, bvec)
        if term is None:
            return None
        sv_axpy(acc, sign * bsign, term)
    return acc


def _check_ho_bracket(ctx: _IdentityContext, name: str, terms,
                      outer: bool) -> CheckReport:
    """ho1 shape (outer=False) or ho2/ho3 shape (outer=True)."""
    rep = CheckReport(name)
    n, m = ctx.n, ctx.m
    phi2 = ctx.phi2
    for x1 in range(n):
        for x2 in range(n):
            for x3 in range(n):
                for x4 in range(x3 + 1, n):
                    for x5 in range(x4 + 1, n):
                        xs = (x1, x2, x3, x4, x5)
                        for a in range(m):
                            s = _inner_sum(ctx, terms, xs, a)
                            if s is None:
                                rep.skip(m if outer else 1)
                                continue
                            if not outer:
                                if s:
                                    rep.record({"x": xs, "a": a})
                                else:
                                    rep.tick()
                                continue
                            if not s:
                                rep.tick(m)
                                continue
                            for b in range(m):
                                out = ctx.act_sv(phi2[b], s)
                                if out is None:
                                    rep.skip()
                                elif out:
                                    rep.record({"x": xs, "a": a, "b": b})
                                else:
                                    rep.tick()
    return rep


def _rho_col(ctx: _IdentityContext, i: int, j: int, a: int):
    """rho(e_i, e_j)(e_a) as a sparse A-vector; None when windowed out."""
    cols, sign = ctx.op_at(ctx.rho_ops, i, j)
    if sign == 0 or cols is None:
        return _EMPTY
    col = cols[a]
    if col is None:
        return None
    if not col:
        return _EMPTY
    return col if sign == 1 else sv_scale(col, sign)


def _pair_product_sum(ctx: _IdentityContext, combos, xs, a: int, b: int):
    """Sum over combos of rho(pair)(e_a) * rho(pair)(e_b) inside A."""
    acc: SVec = {}
    for (p, q), (r, s) in combos:
        u = _rho_col(ctx, xs[p], xs[q], a)
        v = _rho_col(ctx, xs[r], xs[s], b)
        if u is None or v is None:
            return None
        if not u or not v:
            continue
        term = ctx.prod_sv(u, v)
        if term is None:
            return None
        sv_axpy(acc, 1, term)
    return acc


_HO4_COMBOS = (((0, 1), (2, 3)), ((0, 3), (1, 2)), ((1, 3), (2, 0)))
_HO5_COMBOS = (((0, 1), (2, 3)), ((1, 2), (0, 3)), ((2, 0), (1, 3)))
_HO6_COMBOS = (((0, 3), (1, 2)), ((1, 3), (2, 0)),
               ((1, 2), (3, 0)), ((2, 0), (3, 1)))


def _act_on_alpha2(ctx: _IdentityContext, rep: CheckReport, u: SVec, xs,
                   a: int, b: int, c=None) -> None:
    """Check u acting on alpha^2 of every basis vector."""
    if not u:
        rep.tick(ctx.n)
        return
    for x5 in range(ctx.n):
        out = ctx.act_sv(u, ctx.alpha2[x5])
        if out is None:
            rep.skip()
        elif out:
            wit = {"x": xs, "x5": x5, "a": a, "b": b}
            if c is not None:
                wit["c"] = c
            rep.record(wit)
        else:
            rep.tick()


def _check_ho4(ctx: _IdentityContext) -> CheckReport:
    rep = CheckReport("identity-4")
    n, m = ctx.n, ctx.m
    A = ctx.B.A
    for x1 in range(n):
        for x2 in range(x1 + 1, n):
            for x3 in range(n):
                for x4 in range(n):
                    xs = (x1, x2, x3, x4)
                    for a in range(m):
                        for b in range(m):
                            s = _pair_product_sum(ctx, _HO4_COMBOS, xs, a, b)
                            if s is None:
                                rep.skip(n)
                                continue
                            _act_on_alpha2(ctx, rep, A.phi_apply(s),
                                           xs, a, b)
    return rep


def _check_ho5(ctx: _IdentityContext) -> CheckReport:
    rep = CheckReport("identity-5")
    n, m = ctx.n, ctx.m
    A = ctx.B.A
    phi2 = ctx.phi2
    for x1 in range(n):
        for x2 in range(x1 + 1, n):
            for x3 in range(x2 + 1, n):
                for x4 in range(n):
                    xs = (x1, x2, x3, x4)
                    for a in range(m):
                        for b in range(m):
                            s = _pair_product_sum(ctx, _HO5_COMBOS, xs, a, b)
                            if s is None:
                                rep.skip(n * m)
                                continue
                            t = A.phi_apply(s)
                            if not t:
                                rep.tick(n * m)
                                continue
                            for c in range(m):
                                u = ctx.prod_sv(phi2[c], t)
                                if u is None:
                                    rep.skip(n)
                                    continue
                                _act_on_alpha2(ctx, rep, u, xs, a, b, c)
    return rep


def _check_ho6(ctx: _IdentityContext) -> CheckReport:
    rep = CheckReport("identity-6")
    n, m = ctx.n, ctx.m
    A = ctx.B.A
    phi2 = ctx.phi2
    for x1 in range(n):
        for x2 in range(x1 + 1, n):
            for x3 in range(n):
                for x4 in range(n):
                    xs = (x1, x2, x3, x4)
                    for a in range(m):
                        for b in range(a + 1, m):
                            s = _pair_product_sum(ctx, _HO6_COMBOS, xs, a, b)
                            if s is None:
                                rep.skip(n * m)
                                continue
                            t = A.phi_apply(s)
                            if not t:
                                rep.tick(n * m)
                                continue
                            for c in range(m):
                                u = ctx.prod_sv(phi2[c], t)
                                if u is None:
                                    rep.skip(n)
                                    continue
                                _act_on_alpha2(ctx, rep, u, xs, a, b, c)
    return rep


def check_identity_suite(B: RinehartBundle) -> SuiteReport:
    """The six multilinear compatibility identities of a full bundle."""
    ctx = _IdentityContext(B)
    suite = SuiteReport("identities")
    id1 = _check_ho_bracket(ctx, "identity-1", _HO1_TERMS, outer=False)
    suite.add(id1)
    suite.add(_check_ho_bracket(ctx, "identity-2", _HO2_TERMS, outer=True))
    suite.add(_check_ho_bracket(ctx, "identity-3", _HO3_TERMS, outer=True))
    suite.add(_check_ho4(ctx))
    suite.add(_check_ho5(ctx))
    suite.add(_check_ho6(ctx))
    return suite


# --- ideals, kernels, centers ---------------------------------------------


def _space_generators(space: SubspaceQ):
    for row in space.basis:
        yield {i: c for i, c in enumerate(row) if c != 0}


def rinehart_ideal_check(B: RinehartBundle, space: SubspaceQ) -> SuiteReport:
    """The four closure laws an ideal of the bundle must satisfy."""
    if space.ambient != B.L.n:
        raise ValueError("subspace lives in the wrong ambient space")
    suite = SuiteReport("ideal")
    gens = list(_space_generators(space))
    n = B.L.n
    sc = B.L.sc

    bracket = suite.add(CheckReport("bracket-absorb"))
    for g in gens:
        for i in range(n):
            for j in range(i + 1, n):
                w = sc.trilinear(g, {i: 1}, {j: 1})
                if w is None:
                    bracket.skip()
                elif space.contains(sv_to_tuple(w, n)):
                    bracket.tick()
                else:
                    bracket.record({"generator": sv_to_tuple(g, n),
                                    "i": i, "j": j})

    twist = suite.add(CheckReport("twist-stable"))
    acols = mat_columns_sv(B.L.alpha)
    for g in gens:
        w = op_apply(acols, g)
        if space.contains(sv_to_tuple(w, n)):
            twist.tick()
        else:
            twist.record({"generator": sv_to_tuple(g, n)})

    module = suite.add(CheckReport("module-closed"))
    for g in gens:
        for a in range(B.A.dim):
            w = B.act.act({a: 1}, g)
            if w is None:
                module.skip()
            elif space.contains(sv_to_tuple(w, n)):
                module.tick()
            else:
                module.record({"generator": sv_to_tuple(g, n), "a": a})

    anchor = suite.add(CheckReport("anchor-closed"))
    for g in gens:
        for j in range(n):
            cols = _rho_on_vec_left(B.rho, g, j)
            for a in range(B.A.dim):
                u = cols[a]
                for z in range(n):
                    w = None if u is None else B.act.act(u, {z: 1})
                    if w is None:
                        anchor.skip()
                    elif space.contains(sv_to_tuple(w, n)):
                        anchor.tick()
                    else:
                        anchor.record({"generator": sv_to_tuple(g, n),
                                       "j": j, "a": a, "z": z})
    return suite


def ker_rho_ideal(B: RinehartBundle):
    """Kernel of the anchor and its ideal-law report."""
    kernel, excluded = kernel_of_rep(B.L, B.rho)
    suite = rinehart_ideal_check(B, kernel)
    if excluded:
        suite.name = "ideal (kernel on windowed data)"
    return kernel, suite


def centers(B: RinehartBundle) -> dict:
    """Z_L(A), Z_rho(L), and the consistency law tying them together."""
    n, m = B.L.n, B.A.dim
    act = B.act

    # annihilator of L inside A: rows indexed by usable (x, out-coord)
    usable_l = [x for x in range(n)
                if all(act.table.get((a, x), _EMPTY) is not None
                       for a in range(m))]
    rows = []
    for x in usable_l:
        cols = [act.basis_act(a, x) for a in range(m)]
        support = sorted({r for c in cols for r in c})
        for r in support:
            rows.append(tuple(c.get(r, 0) for c in cols))
    z_l_a = SubspaceQ(m, kernel_basis(rows, m))

    # x with [x, L, L] = 0 and rho(x, L) = 0, on window-usable data
    sc = B.L.sc
    rows_l = []
    excluded_pairs = 0
    for i in range(n):
        for j in range(i + 1, n):
            cols = []
            ok = True
            for x in range(n):
                vec, sign = sc.lookup(x, i, j)
                if vec is None:
                    ok = False
                    break
                cols.append(vec if sign == 1 else sv_scale(vec, sign))
            if not ok:
                excluded_pairs += 1
                continue
            support = sorted({r for c in cols for r in c})
            for r in support:
                rows_l.append(tuple(c.get(r, 0) for c in cols))
    for j in range(n):
        cols = []
        ok = True
        for x in range(n):
            pair_cols, sign = B.rho.pair(x, j)
            merged: SVec = {}
            for cidx, col in enumerate(pair_cols):
                if col is None:
                    ok = False
                    break
                for r, cval in col.items():
                    merged[(cidx, r)] = merged.get((cidx, r), 0) + sign * cval
            if not ok:
                break
            cols.append(merged)
        if not ok:
            excluded_pairs += 1
            continue
        support = sorted({k for c in cols for k in c})
        for k in support:
            rows_l.append(tuple(c.get(k, 0) for c in cols))
    z_rho_l = SubspaceQ(n, kernel_basis(rows_l, n))

    consistency = CheckReport("center-consistency")
    z_center, excluded_center = center(B.L)
    kernel, excluded_kernel = kernel_of_rep(B.L, B.rho)
    if excluded_pairs or excluded_center or excluded_kernel:
        consistency.block(
            f"windowed data: {excluded_pairs} pair(s) excluded")
    else:
        expected = z_center.intersect(kernel)
        if z_rho_l == expected:
            consistency.tick()
        else:
            consistency.record({
                "z_rho_dim": z_rho_l.dim,
                "center_cap_kernel_dim": expected.dim,
            })

    return {
        "Z_L_A": z_l_a,
        "Z_rho_L": z_rho_l,
        "excluded_L_coords": n - len(usable_l),
        "excluded_L_pairs": excluded_pairs,
        "consistency": consistency,
    }
