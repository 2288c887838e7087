"""Norm-ordered enumeration of nonzero ideals with factorization links.

Ideals are represented by their canonical primary generators.  The sieve
stores, for every composite entry, the index of a primary prime divisor and
of the complementary factor, so completely multiplicative functions extend
from primes to all entries in one linear pass.  Sieves grow on demand and
are cached per field; construction is pure, so forked worker processes can
reuse a parent's cache read-only.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .fields import Elem, enumerate_norm_range
from .primary import canonical_primary

__all__ = ["IdealSieve", "ideal_sieve"]


@dataclass
class IdealSieve:
    d: int
    bound: int
    elems: list[Elem]  # canonical primary generators, sorted by (norm, a, b)
    norms: np.ndarray
    spf: list[int]  # index of a primary prime factor; -1 for primes and 1
    quot: list[int]  # index of elems[i] / elems[spf[i]]
    prime_indices: list[int]

    def count_upto(self, norm_bound: int) -> int:
        """Number of leading entries with norm <= norm_bound."""
        return bisect_right(self.norms, norm_bound)

    def eval_multiplicative(self, prime_value, count: int) -> np.ndarray:
        """Values of a completely multiplicative function on the first
        `count` entries, calling prime_value only at primary primes."""
        vals = np.empty(count, dtype=np.complex128)
        vals[0] = 1.0
        spf, quot = self.spf, self.quot
        for i in range(1, count):
            p = spf[i]
            if p < 0:
                vals[i] = prime_value(self.elems[i])
            else:
                vals[i] = vals[p] * vals[quot[i]]
        return vals


def _build(d: int, bound: int) -> IdealSieve:
    reps: dict[tuple[int, int], None] = {}
    one = Elem(1, 0, d)
    elems = [one]
    for x in enumerate_norm_range(d, 2, bound):
        _, y = canonical_primary(x)
        key = (y.a, y.b)
        if key not in reps:
            reps[key] = None
            elems.append(y)
    elems.sort(key=lambda e: e.key())
    index = {(e.a, e.b): i for i, e in enumerate(elems)}
    norms = [e.norm() for e in elems]
    n_entries = len(elems)
    spf = [-1] * n_entries
    quot = [-1] * n_entries
    primes = []
    for i in range(1, n_entries):
        if spf[i] != -1:
            continue
        primes.append(i)
        p = elems[i]
        np_ = norms[i]
        limit = bound // np_
        if limit < 1:
            continue
        jmax = bisect_right(norms, limit)
        for j in range(jmax):
            prod = p * elems[j]
            t = index[(prod.a, prod.b)]
            if spf[t] == -1 and t != i:
                spf[t] = i
                quot[t] = j
    return IdealSieve(
        d=d,
        bound=bound,
        elems=elems,
        norms=np.asarray(norms, dtype=np.int64),
        spf=spf,
        quot=quot,
        prime_indices=primes,
    )


_CACHE: dict[int, IdealSieve] = {}


def ideal_sieve(d: int, bound: int) -> IdealSieve:
    """The cached sieve for d, regrown (powers of two) when bound exceeds it."""
    cur = _CACHE.get(d)
    if cur is None or cur.bound < bound:
        size = 2048
        while size < bound:
            size *= 2
        cur = _build(d, size)
        _CACHE[d] = cur
    return cur
