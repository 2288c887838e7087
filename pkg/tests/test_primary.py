import itertools

import pytest

from iqhecke.fields import FIELD_DS, Elem, enumerate_norm_range, field_data, gcd
from iqhecke.primary import (
    E_PRIMARY,
    PRIMARY,
    canonical_primary,
    is_primary,
    primary_classes,
    t_pair,
    to_eisenstein,
)

GENERIC_DS = (-2, -7, -11, -19, -43, -67, -163)


def test_parity_tables_partition_odd_classes():
    from iqhecke.primary import _column_classes

    for d in GENERIC_DS:
        cols = _column_classes(d)
        union = set().union(*cols)
        assert sum(len(c) for c in cols) == len(union)
        odd = {
            (a, b)
            for a in range(4)
            for b in range(4)
            if Elem(a, b, d).norm() % 2 == 1
        }
        assert union == odd
        # norm rows of the table
        for c in cols[0] | cols[1]:
            assert Elem(*c, d).norm() % 4 == 1
        for c in cols[2] | cols[3]:
            assert Elem(*c, d).norm() % 4 == 3


def test_spec_examples():
    assert is_primary(Elem(-1, 2, -1))
    assert not is_primary(Elem(1, 2, -1))
    assert is_primary(Elem(0, 1, -11))  # w = -k+1+w mod 4 with k=-3
    u, y = canonical_primary(Elem(2, 1, -1))
    assert y == Elem(-1, 2, -1) and u * y == Elem(2, 1, -1)
    u, y = canonical_primary(Elem(2, -1, -1))
    assert y == Elem(-1, -2, -1)
    assert canonical_primary(Elem(1, 0, -1)) == (Elem(1, 0, -1), Elem(1, 0, -1))


@pytest.mark.parametrize("d", FIELD_DS)
def test_uniqueness_norm_2000(d):
    fd = field_data(d)
    for x in enumerate_norm_range(d, 1, 2000):
        hits = sum(1 for u in fd.units if is_primary(u * x))
        assert hits == 1, (d, x)


def test_uniqueness_e_primary():
    fd = field_data(-3)
    for x in enumerate_norm_range(-3, 1, 2000):
        hits = sum(1 for u in fd.units if is_primary(u * x, E_PRIMARY))
        assert hits == 1, x


@pytest.mark.parametrize("d,kind", [(d, PRIMARY) for d in FIELD_DS] + [(-3, E_PRIMARY)])
def test_closure_products(d, kind):
    prims = [
        x for x in enumerate_norm_range(d, 2, 200) if is_primary(x, kind)
    ]
    for x, y in itertools.product(prims, prims):
        assert is_primary(x * y, kind), (d, kind, x, y)


def test_e_primary_cube_criterion():
    for n in enumerate_norm_range(-3, 1, 500):
        if n.norm() % 6 not in (1, 5):
            continue
        if not is_primary(n, E_PRIMARY):
            continue
        c, dd = to_eisenstein(n**3)
        assert dd % 6 == 0 and (c + dd) % 4 == 1, n


def test_t_pair_examples():
    assert t_pair(Elem(1, 0, -11)).t == 0 and t_pair(Elem(1, 0, -11)).t_prime == 0
    tp = t_pair(Elem(-1, 0, -2))
    assert (tp.t, tp.t_prime) == (0, 1)
    # primary with N = -1 mod 4 has t = 1
    for d in GENERIC_DS:
        for x in enumerate_norm_range(d, 3, 120):
            if x.norm() % 2 == 0 or not is_primary(x):
                continue
            if x.norm() % 4 == 3:
                assert t_pair(x).t == 1, (d, x)


def test_parity_consistency_for_primary_pairs():
    # for primary n, m the reciprocity exponent collapses to
    # ((N(n)-1)/2) ((N(m)-1)/2) mod 2
    for d in (-2, -7, -11, -19):
        prims = [
            x
            for x in enumerate_norm_range(d, 3, 150)
            if x.norm() % 2 and is_primary(x)
        ]
        for n, m in itertools.combinations(prims, 2):
            tn, tm = t_pair(n), t_pair(m)
            big_t = (tn.t * tm.t_prime + tn.t_prime * tm.t + tn.t * tm.t) % 2
            expect = ((n.norm() - 1) // 2) * ((m.norm() - 1) // 2) % 2
            assert big_t == expect, (d, n, m)


def test_error_paths():
    with pytest.raises(ValueError):
        is_primary(Elem(0, 0, -1))
    with pytest.raises(Exception):
        is_primary(Elem(1, 0, -7), E_PRIMARY)
    with pytest.raises(ValueError):
        t_pair(Elem(0, 1, -2))  # even element (norm 2)
    with pytest.raises(Exception):
        t_pair(Elem(1, 0, -1))  # wrong field
    with pytest.raises(Exception):
        primary_classes(-1)


def test_special_prime_stripping():
    # powers of declared special primes are primary, and mixed products too
    assert is_primary(Elem(1, 1, -1) ** 3)
    one_minus_w = Elem(2, -1, -3)
    assert is_primary(one_minus_w, PRIMARY) and is_primary(one_minus_w, E_PRIMARY)
    assert is_primary(Elem(2, 0, -3), E_PRIMARY)
    assert not is_primary(Elem(2, 0, -3), PRIMARY)  # 2 = -1 mod 3
    assert is_primary(Elem(-2, 0, -3), PRIMARY)
    assert is_primary(Elem(0, 1, -7)) and is_primary(Elem(1, -1, -7))
    assert is_primary(Elem(2, 0, -19))
