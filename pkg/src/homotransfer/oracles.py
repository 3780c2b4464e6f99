"""Independent expansions of the transferred structure, used to audit ``transfer``.

Nothing here touches :class:`~homotransfer.bar.BarMap` composition or the
perturbation series; everything is assembled from multilinear components.
"""
from __future__ import annotations

from typing import Dict, Iterator, List, Tuple

from .ainfty import AInfinityStructure, desuspend_multilinear, suspend_multilinear
from .graded import GradedMap, amplify, compose, sum_maps, tensor_map, tensor_maps, tensor_power
from .perturbation import Contraction, TransferResult


def compositions(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Ordered ``k``-tuples of positive integers summing to ``n``."""
    if k == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def tree_formula(c: Contraction, A: AInfinityStructure, max_arity: int = 3) -> List[GradedMap]:
    """Transferred ``m_1, ..., m_max_arity`` by the planar-tree expansion.

    ``lambda_1 = S(alpha)``;
    ``lambda_n = sum_k sum_{i_1+...+i_k=n} h b_k (lambda_{i_1} (x) ... (x) lambda_{i_k})``
    with ``h = -S(H)`` and ``k >= 2``; then
    ``b^C_n = S(r) sum_k sum b_k (lambda ...)`` for ``n >= 2``.
    """
    b = [None] + [suspend_multilinear(A.m(k)) for k in range(1, max_arity + 1)]
    Sa = suspend_multilinear(c.alpha)
    Sr = suspend_multilinear(c.r)
    h = -suspend_multilinear(c.H)
    SC, SD = Sa.source, Sa.target
    field = c.field
    lam: Dict[int, GradedMap] = {1: Sa}
    out = [c.C.d]
    for n in range(2, max_arity + 1):
        terms = []
        for k in range(2, n + 1):
            if b[k].is_zero():
                continue
            for parts in compositions(n, k):
                inner = tensor_maps([lam[i] for i in parts])
                terms.append(compose(b[k], inner))
        tree = sum_maps(terms, tensor_power(SC, n), SD, (1, 0), field)
        lam[n] = compose(h, tree)
        out.append(desuspend_multilinear(compose(Sr, tree)))
    return out


def arity_two(c: Contraction, A: AInfinityStructure) -> GradedMap:
    """``r o m_2 o (alpha (x) alpha)`` in m-form."""
    return compose(c.r, compose(A.m(2), tensor_map(c.alpha, c.alpha)))


def composition_formula(T: TransferResult, max_arity: int | None = None) -> List[GradedMap]:
    """``b_C,u = sum r_{n+1+m} o (1^n (x) b^D_s (x) 1^m) o (alpha_{i_1} (x) ... (x) alpha_{i_k})``.

    The sum runs over every decomposition ``u = i_1 + ... + i_k`` and every
    ``n + s + m = k``; ``alpha_i`` and ``r_j`` are the suspended components of
    ``alpha^oo`` and ``r^oo``.  Returns the desuspended ``m_1, ..., m_N``.
    """
    N = T.N if max_arity is None else min(max_arity, T.N)
    A = T.source
    alpha = [None] + [suspend_multilinear(T.alpha_inf.f(i)) for i in range(1, N + 1)]
    r = [None] + [suspend_multilinear(T.r_inf.f(j)) for j in range(1, N + 1)]
    bD = [None] + [suspend_multilinear(A.m(s)) for s in range(1, N + 1)]
    SC, SD = alpha[1].source, alpha[1].target
    field = T.contraction.field
    out = []
    for u in range(1, N + 1):
        terms = []
        for k in range(1, u + 1):
            for parts in compositions(u, k):
                if any(alpha[i].is_zero() for i in parts):
                    continue
                inner = tensor_maps([alpha[i] for i in parts])
                for s in range(1, k + 1):
                    if bD[s].is_zero():
                        continue
                    for n in range(0, k - s + 1):
                        m = k - s - n
                        j = n + 1 + m
                        if r[j].is_zero():
                            continue
                        mid = amplify(bD[s], tensor_power(SD, n) if n else None, tensor_power(SD, m) if m else None)
                        terms.append(compose(r[j], compose(mid, inner)))
        total = sum_maps(terms, tensor_power(SC, u), SC, (1, 0), field)
        out.append(desuspend_multilinear(total))
    return out
