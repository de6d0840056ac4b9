"""Independent brute-force oracles used by the tests.

Nothing here calls the library's search code: homs are found by trying every
family of functions, implication by scanning for the greatest residual.
"""

import itertools


def residual(L, a, b):
    """Greatest c with a ∧ c ≤ b, found by scanning."""
    cands = [c for c in L.elements if L.leq(L.meet(a, c), b)]
    tops = [c for c in cands if all(L.leq(d, c) for d in cands)]
    assert len(tops) == 1
    return tops[0]


def naive_homs(A, B, membership=True):
    """Every natural, membership-respecting family of functions A → B."""
    C = A.category
    objs = list(C.objects)
    per_obj = []
    for i in objs:
        src, tgt = A.carrier(i), B.carrier(i)
        per_obj.append([dict(zip(src, img)) for img in itertools.product(tgt, repeat=len(src))])
    out = []
    for combo in itertools.product(*per_obj):
        f = dict(zip(objs, combo))
        ok = all(
            f[C.cod(m)][A.act(m, x)] == B.act(m, f[C.dom(m)][x])
            for m in C.morphisms
            for x in A.carrier(C.dom(m))
        )
        if ok and membership:
            ok = all(A.L(i).leq(A.mu(i, x), B.mu(i, f[i][x])) for i in objs for x in A.carrier(i))
        if ok:
            out.append(f)
    return out


def naive_sieves(C, i):
    """All sets of out-morphisms of ``i`` closed under post-composition."""
    outs = [m for m in C.morphisms if C.dom(m) == i]
    found = []
    for r in range(len(outs) + 1):
        for S in itertools.combinations(outs, r):
            S = set(S)
            if all(C.compose(g, f) in S for f in S for g in C.morphisms if C.dom(g) == C.cod(f)):
                found.append(frozenset(S))
    return found


def injective(components):
    return all(len(set(c.values())) == len(c) for c in components.values())
