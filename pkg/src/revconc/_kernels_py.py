"""Pure-Python kernels over bitmask-encoded configuration families.

A configuration is an ``int`` whose bit ``i`` stands for the ``i``-th event of
the sorted universe. A family is a sequence of such masks in canonical order;
witnesses are reported as indices into that sequence. The compiled module
``_kernels`` implements the same functions with the same results.
"""

from __future__ import annotations

from typing import Sequence


def _bits(v: int):
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def stability_witnesses(masks: Sequence[int]):
    """First counterexample for each of the four non-trivial stability axioms.

    Returns ``(connected, bounded_union, intersection, coherent)`` where each
    entry is ``None`` when the axiom holds, else a tuple of indices:
    ``(i,)``, ``(i, j, k)`` with ``k`` the first bound of the union,
    ``(i, j)`` and ``(i, j, k)`` respectively. Coherence is checked on triples
    whose pairwise unions are configurations; see ``stability_report``.
    """
    present = set(masks)
    m = len(masks)

    connected = None
    for i, x in enumerate(masks):
        if x and not any((x & ~(1 << b)) in present for b in _bits(x)):
            connected = (i,)
            break

    bounded = None
    for i in range(m):
        xi = masks[i]
        for j in range(i, m):
            u = xi | masks[j]
            if u in present:
                continue
            for k in range(m):
                if u & ~masks[k] == 0:
                    bounded = (i, j, k)
                    break
            if bounded:
                break
        if bounded:
            break

    inter = None
    for i in range(m):
        xi = masks[i]
        for j in range(i, m):
            if (xi & masks[j]) not in present:
                inter = (i, j)
                break
        if inter:
            break

    coherent = None
    for i in range(m):
        xi = masks[i]
        for j in range(i, m):
            uij = xi | masks[j]
            if uij not in present:
                continue
            for k in range(j, m):
                xk = masks[k]
                if (masks[j] | xk) in present and (xi | xk) in present and (uij | xk) not in present:
                    coherent = (i, j, k)
                    break
            if coherent:
                break
        if coherent:
            break
    return connected, bounded, inter, coherent


def is_stable(masks: Sequence[int]) -> bool:
    present = set(masks)
    if 0 not in present:
        return False
    for x in masks:
        if x and not any((x & ~(1 << b)) in present for b in _bits(x)):
            return False
    m = len(masks)
    for i in range(m):
        xi = masks[i]
        for j in range(i + 1, m):
            xj = masks[j]
            if (xi & xj) not in present:
                return False
            u = xi | xj
            if u not in present:
                for xk in masks:
                    if u & ~xk == 0:
                        return False
    for i in range(m):
        xi = masks[i]
        for j in range(i + 1, m):
            uij = xi | masks[j]
            if uij not in present:
                continue
            for k in range(j + 1, m):
                xk = masks[k]
                if (masks[j] | xk) in present and (xi | xk) in present and (uij | xk) not in present:
                    return False
    return True


def _superset_bitsets(masks: Sequence[int]) -> list[int]:
    m = len(masks)
    return [sum(1 << j for j in range(m) if masks[i] & ~masks[j] == 0) for i in range(m)]


def _least(ub: int, sup: Sequence[int]) -> int:
    for u in _bits(ub):
        if sup[u] & ub == ub:
            return u
    return -1


def complete_prime_indices(masks: Sequence[int]) -> list[int]:
    """Indices of the non-empty complete primes, by the literal quantifier.

    ``p`` fails to be prime iff some pairwise-consistent ``Y`` whose least
    upper bound exists and contains ``p`` has no member above ``p``. The
    search walks cliques of the pairwise-consistency graph restricted to
    members not above ``p``, pruning once no upper bound can still lie
    above ``p``.
    """
    m = len(masks)
    full = (1 << m) - 1
    sup = _superset_bitsets(masks)
    cons = [0] * m
    for i in range(m):
        for j in range(m):
            if i == j or _least(sup[i] & sup[j], sup) >= 0:
                cons[i] |= 1 << j

    def refuted(ub: int, allowed: int, target: int) -> bool:
        for y in _bits(allowed):
            nub = ub & sup[y]
            if nub & target == 0:
                continue
            least = _least(nub, sup)
            if least >= 0 and (target >> least) & 1:
                return True
            later = allowed & cons[y] & ~((2 << y) - 1)
            if later and refuted(nub, later, target):
                return True
        return False

    primes = []
    for p in range(m):
        if masks[p] == 0:
            continue
        target = sup[p]
        if not refuted(full, full & ~target, target):
            primes.append(p)
    return primes


def stable_family_codes(table: Sequence[int]) -> list[int]:
    """Codes of the stable rooted families over ``table``.

    Bit ``k`` of a code selects ``table[k]`` (a non-empty subset mask); the
    empty configuration is always included.
    """
    out = []
    width = len(table)
    for code in range(1 << width):
        masks = [0]
        c = code
        k = 0
        while c:
            if c & 1:
                masks.append(table[k])
            c >>= 1
            k += 1
        if is_stable(masks):
            out.append(code)
    return out

