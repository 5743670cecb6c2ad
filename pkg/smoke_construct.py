"""Smoke: twist and tensor_extension on hand-built fixtures."""
import time

from trilie.symfun import ExpPoly, jacobian_bracket
from trilie.exactq import MatrixQ
from trilie.core3lie import Hom3Lie, StructureConstants3
from trilie.repmod import PairAction
from trilie.rinehart import (
    CommAlgebra, ModuleAction, RinehartBundle,
    check_full_rinehart, check_identity_suite,
)
from trilie.construct import (
    ConstructionError, TwistInput, bundle_direct_sum, change_basis,
    tensor_extension, tensor_preconditions, twist, twist_preconditions,
)


def build_tb(d):
    T_polys = []
    for i in range(d + 1):
        T_polys.append(ExpPoly.monomial(1, 0, i, 0))
        T_polys.append(ExpPoly.monomial(0, 1, i, 0))
    B_polys = [ExpPoly.monomial(0, 0, i, 0) for i in range(d + 1)]
    T_keys = {next(iter(p.terms)): i for i, p in enumerate(T_polys)}
    B_keys = {next(iter(p.terms)): i for i, p in enumerate(B_polys)}

    def coords(poly, keys):
        out = {}
        for key, c in poly.terms.items():
            idx = keys.get(key)
            if idx is None:
                return None
            out[idx] = c
        return out

    nT, nB = len(T_polys), len(B_polys)
    table, missing = {}, []
    for i in range(nT):
        for j in range(i + 1, nT):
            for k in range(j + 1, nT):
                vec = coords(jacobian_bracket(T_polys[i], T_polys[j],
                                              T_polys[k]), T_keys)
                if vec is None:
                    missing.append((i, j, k))
                elif vec:
                    table[(i, j, k)] = vec
    L = Hom3Lie(StructureConstants3(nT, table, missing),
                MatrixQ.identity(nT))
    rho_ops = {}
    for i in range(nT):
        for j in range(i + 1, nT):
            cols = [coords(jacobian_bracket(T_polys[i], T_polys[j], b),
                           B_keys) for b in B_polys]
            rho_ops[(i, j)] = cols
    rho = PairAction(nT, nB, rho_ops)
    prod_table = {}
    for i in range(nB):
        for j in range(i, nB):
            prod_table[(i, j)] = coords(B_polys[i] * B_polys[j], B_keys)
    A = CommAlgebra(nB, prod_table, MatrixQ.identity(nB), unit={0: 1})
    act_table = {}
    for a in range(nB):
        for m in range(nT):
            act_table[(a, m)] = coords(B_polys[a] * T_polys[m], T_keys)
    act = ModuleAction(nB, nT, act_table)
    return RinehartBundle(L, A, rho, act, name="tb")


def build_d4(alpha=None, adim=1):
    table = {(0, 1, 2): {3: 1}, (0, 1, 3): {2: 1},
             (0, 2, 3): {1: 1}, (1, 2, 3): {0: 1}}
    if alpha is None:
        alpha = MatrixQ.identity(4)
    L = Hom3Lie(StructureConstants3(4, table), alpha)
    prod = {(i, j): ({i + j: 1} if i + j < adim else {})
            for i in range(adim) for j in range(i, adim)}
    A = CommAlgebra(adim, prod, MatrixQ.identity(adim), unit={0: 1})
    act = ModuleAction(adim, 4, {(0, x): {x: 1} for x in range(4)})
    return RinehartBundle(L, A, PairAction(4, adim, {}), act, name="d4")


tb = build_tb(2)
nT = tb.L.n
ident = MatrixQ.identity(nT)

# identity twist reproduces the input
out = twist(TwistInput(tb, ident, MatrixQ.identity(tb.A.dim)))
assert out.L == tb.L and out.A == tb.A
assert out.rho == tb.rho and out.act == tb.act
print("identity twist: ok")

# alpha = -Id, phi = Id
neg = ident.scale(-1)
inp = TwistInput(tb, neg, MatrixQ.identity(tb.A.dim))
suite = twist_preconditions(inp)
print("twist preconditions:", suite.passed)
tw = twist(inp)
t0 = time.monotonic()
full = check_full_rinehart(tw)
ids = check_identity_suite(tw)
print("twisted full:", full.passed, "identities:", ids.passed,
      f"{time.monotonic()-t0:.2f}s")

# swapping x z^i <-> y z^i undoes the sign: bracket back to the plain
# jacobian table, anchor negated
rows = []
for r in range(nT):
    s = r + 1 if r % 2 == 0 else r - 1
    rows.append([1 if c == s else 0 for c in range(nT)])
S = MatrixQ(rows)
swapped = change_basis(tw, S)
assert swapped.L.sc.table == tb.L.sc.table
assert swapped.L.sc.missing == tb.L.sc.missing
assert swapped.L.alpha == neg
negops = {k: [None if c is None else {i: -v for i, v in c.items()}
              for c in cols] for k, cols in tb.rho.ops.items()}
assert swapped.rho == PairAction(nT, tb.A.dim, negops)
assert swapped.act == tb.act
print("basis swap reproduces the sign-flipped bundle: ok")

# twist rejects a non-endomorphism alpha
bad = MatrixQ.diagonal([1, -1] + [1] * (nT - 2))
try:
    twist(TwistInput(tb, bad, MatrixQ.identity(tb.A.dim)))
    print("BAD: non-endo accepted")
except ConstructionError as e:
    print("non-endo rejected:", e)

# composite twist = composing tables
d4 = build_d4(adim=3)
alpha1 = MatrixQ.diagonal([1, 1, -1, -1])
alpha2 = MatrixQ.diagonal([1, -1, 1, -1])
phi1 = MatrixQ([[1, 0, 0], [0, 2, 0], [0, 3, 4]])
phi2 = MatrixQ([[1, 0, 0], [0, 1, 0], [0, 5, 1]])
t_comp = twist(TwistInput(d4, alpha1 @ alpha2, phi1 @ phi2))
t_step = twist(TwistInput(d4, alpha2, phi2))
retable = {k: {i: v for i, v in
               ((i, sum(alpha1.rows[i][j] * vec.get(j, 0) for j in range(4)))
                for i in range(4)) if v}
           for k, vec in t_step.L.sc.table.items()}
assert t_comp.L.sc.table == retable
print("composite twist matches composed tables: ok")
fc = check_full_rinehart(t_comp)
print("composite twist full:", fc.passed)

# tensor: D4 x Q[z]/(z^3), rho = 0
d4m = build_d4(alpha=MatrixQ.identity(4).scale(-1), adim=1)
A3 = build_d4(adim=3).A
G = tensor_extension(d4m.L, A3, PairAction(4, 3, {}),
                     a_labels=["1", "z", "z^2"],
                     l_labels=["e1", "e2", "e3", "e4"])
assert G.L.n == 12
t0 = time.monotonic()
gf = check_full_rinehart(G)
gi = check_identity_suite(G)
print("tensor d4 full:", gf.passed, "identities:", gi.passed,
      f"{time.monotonic()-t0:.2f}s")
if not gf.passed:
    print(gf.to_text())

# tensor with a nonzero anchor: abelian L = Q^2, rho(e0,e1) = d/dz
m = 4
prod = {(i, j): ({i + j: 1} if i + j < m else {})
        for i in range(m) for j in range(i, m)}
A4 = CommAlgebra(m, prod, MatrixQ.identity(m), unit={0: 1})
# z d/dz descends to the quotient (d/dz itself does not)
zddz = [{}, {1: 1}, {2: 2}, {3: 3}]
rho2 = PairAction(2, m, {(0, 1): zddz})
L2 = Hom3Lie(StructureConstants3(2, {}), MatrixQ.identity(2))
pre = tensor_preconditions(L2, A4, rho2)
print("abelian tensor preconditions:", pre.passed)
G2 = tensor_extension(L2, A4, rho2, a_labels=["1", "z", "z^2", "z^3"],
                      l_labels=["u", "v"])
g2f = check_full_rinehart(G2)
g2i = check_identity_suite(G2)
print("tensor abelian full:", g2f.passed, "identities:", g2i.passed)
if not g2f.passed:
    print(g2f.to_text())
# [1u, 1v, z u] = rho(u,v)(z) (x) u = z (x) u  (anchor term only)
vec, sign = G2.L.sc.lookup(0, 1, 2)
print("anchor-term bracket [u,v,z*u] =", dict(vec), "sign", sign)

# the single-pair rho on D4 is not a hom-representation: refused
try:
    tensor_extension(d4m.L, A3, PairAction(4, 3, {(0, 1): [{}, {0: 1}, {1: 2}]}))
    print("BAD: invalid tensor input accepted")
except ConstructionError as e:
    print("invalid tensor input rejected:", e)
    for rep in e.report.checks:
        if rep.passed is False:
            print("  failing:", rep.name, rep.failures[:1])

# direct sum of two d4 copies over the same A
ds = bundle_direct_sum(build_d4(adim=3), build_d4(adim=3))
dsf = check_full_rinehart(ds)
print("direct sum full:", dsf.passed, "dim", ds.L.n)
