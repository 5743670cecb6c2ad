"""Smoke test: tb-rinehart(d=2) inline, full suite + identity suite,
and computational confirmation that the corrected identity-1/-3 term
indices pass while the printed variants fail."""
import time

from trilie.symfun import ExpPoly, jacobian_bracket
from trilie.exactq import MatrixQ
from trilie.core3lie import Hom3Lie, StructureConstants3
from trilie.repmod import PairAction
from trilie.rinehart import (
    CommAlgebra, ModuleAction, RinehartBundle,
    check_full_rinehart, check_identity_suite, check_weak_rinehart,
    _IdentityContext, _check_ho_bracket, _HO1_TERMS, _HO3_TERMS,
)

d = 2
# T basis: x z^i, y z^i ; B basis: z^i
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
            vec = coords(jacobian_bracket(T_polys[i], T_polys[j], T_polys[k]), T_keys)
            if vec is None:
                missing.append((i, j, k))
            elif vec:
                table[(i, j, k)] = vec
sc = StructureConstants3(nT, table, missing)
L = Hom3Lie(sc, MatrixQ.identity(nT))

rho_ops = {}
for i in range(nT):
    for j in range(i + 1, nT):
        cols = [coords(jacobian_bracket(T_polys[i], T_polys[j], b), B_keys)
                for b in B_polys]
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

B = RinehartBundle(L, A, rho, act, name="tb-rinehart-smoke")

t0 = time.monotonic()
weak = check_weak_rinehart(B)
print(weak.to_text())
print("weak passed:", weak.passed, f"{time.monotonic()-t0:.2f}s")

t0 = time.monotonic()
full = check_full_rinehart(B)
print("full passed:", full.passed, f"{time.monotonic()-t0:.2f}s")

t0 = time.monotonic()
ids = check_identity_suite(B)
print(ids.to_text())
print("identities passed:", ids.passed, f"{time.monotonic()-t0:.2f}s")

# printed-typo variants must FAIL: ho1 last bracket (x2,x4,x1), ho3 third (x2,x4,x1)
ctx = _IdentityContext(B)
typo1 = _HO1_TERMS[:5] + (((1, 4), (1, 3, 0)),)
typo3 = _HO3_TERMS[:2] + (((1, 4), (1, 3, 0)),) + _HO3_TERMS[3:]
r1 = _check_ho_bracket(ctx, "typo-1", typo1, outer=False)
r3 = _check_ho_bracket(ctx, "typo-3", typo3, outer=True)
print("printed ho1 variant passed:", r1.passed, "failures:", r1.failure_count)
print("printed ho3 variant passed:", r3.passed, "failures:", r3.failure_count)
