"""Left Groebner bases: soundness against brute force, syzygies, orders."""

import random

import pytest

from weylmod import (QQ, ZP, FreeVec, RankMismatch, WeylAlgebra,
                     bernstein_order, buchberger, free_resolution,
                     leading_term, left_normal_form, pot_block_order,
                     preimage_rows, syz_of_list)

from helpers import rand_element
from oracles import brute_member

W = WeylAlgebra(1, QQ)


def vec(*entries):
    rank = len(entries)
    return FreeVec.from_entries(list(entries), rank=rank)


def ideal_rows(*gens):
    return [vec(g) for g in gens]


def test_gb_contains_generators():
    x, d = W.x(1), W.d(1)
    rows = ideal_rows(d * d - x, x * d + 2)
    gb = buchberger(rows, bernstein_order(1))
    for r in rows:
        assert gb.contains(r)


def test_unit_ideal_detected():
    x, d = W.x(1), W.d(1)
    # [d, x] = 1 lies in the ideal generated by x and d
    gb = buchberger(ideal_rows(x, d), bernstein_order(1))
    assert gb.is_full_module()


def test_normal_form_is_linear_and_idempotent():
    rng = random.Random(37)
    x, d = W.x(1), W.d(1)
    gb = buchberger(ideal_rows(d * d - x), bernstein_order(1))
    order = bernstein_order(1)
    for _ in range(15):
        u = vec(rand_element(rng, W, deg=4, terms=3))
        v = vec(rand_element(rng, W, deg=4, terms=3))
        nu = left_normal_form(u, gb, order)
        nv = left_normal_form(v, gb, order)
        assert left_normal_form(nu, gb, order) == nu
        assert left_normal_form(u + v, gb, order) == nu + nv


def test_membership_vs_brute_force():
    rng = random.Random(41)
    for trial in range(6):
        gens = [rand_element(rng, W, deg=3, terms=2) for _ in
                range(rng.randint(1, 3))]
        rows = ideal_rows(*gens)
        gb = buchberger(rows, bernstein_order(1))
        order = bernstein_order(1)
        probes = []
        for _ in range(3):
            q = rand_element(rng, W, deg=2, terms=2)
            probes.append(q * gens[rng.randrange(len(gens))])
        probes.extend(rand_element(rng, W, deg=3, terms=2)
                      for _ in range(3))
        for p in probes:
            mine = left_normal_form(vec(p), gb, order).is_zero()
            ref = brute_member(p, gens, 8)
            assert mine == ref


def test_gb_transform_and_lifts():
    x, d = W.x(1), W.d(1)
    rows = ideal_rows(d * d - x, x * x * d)
    gb = buchberger(rows, bernstein_order(1), track=True)
    # transform rows rewrite each basis element over the input rows
    for g, t in zip(gb.elements, gb.transform):
        acc = FreeVec(1, QQ, 1, {})
        for (k, a, b, e), c in t.terms.items():
            acc = acc + rows[k].mul_monomial(a, b, e, c)
        assert acc == g
    for r, lift in zip(rows, gb.lifts):
        acc = FreeVec(1, QQ, 1, {})
        for (k, a, b, e), c in lift.terms.items():
            acc = acc + gb.elements[k].mul_monomial(a, b, e, c)
        assert acc == r


def test_syzygies_kill_generators():
    x, d = W.x(1), W.d(1)
    gens = [d * d - x, x * d + 2, x * x]
    rows = ideal_rows(*gens)
    syz = syz_of_list(rows)
    assert syz, "these generators are dependent"
    for s in syz:
        acc = FreeVec(1, QQ, 1, {})
        for (k, a, b, e), c in s.terms.items():
            acc = acc + rows[k].mul_monomial(a, b, e, c)
        assert acc.is_zero()


def test_free_resolution_composes_to_zero():
    x, d = W.x(1), W.d(1)
    rows = ideal_rows(d * d - x, x * d + 2)
    res = free_resolution(rows, 1, 4)
    for step, nxt in zip(res.matrices, res.matrices[1:]):
        for s in nxt:
            acc = FreeVec(1, QQ, step[0].rank, {})
            for (k, a, b, e), c in s.terms.items():
                acc = acc + step[k].mul_monomial(a, b, e, c)
            assert acc.is_zero()


def test_preimage_rows():
    x, d = W.x(1), W.d(1)
    target = ideal_rows(d * d - x)
    gens = ideal_rows(x * (d * d - x), d * (d * d - x) + (d * d - x))
    rel = preimage_rows(gens, target, 1)
    # the two generators are x*g and (d+1)*g, so d*e1 - (x*d - x + ?) ...
    # only verify the defining property: each relation kills the gens
    for s in rel:
        acc = FreeVec(1, QQ, 1, {})
        for (k, a, b, e), c in s.terms.items():
            acc = acc + gens[k].mul_monomial(a, b, e, c)
        # lands inside the target module
        gb = buchberger(target, bernstein_order(1))
        assert gb.contains(acc)


def test_pot_block_order_eliminates():
    # components at or above the boundary dominate the rest
    order = pot_block_order(1, 1)
    v = FreeVec.from_entries([W.x(1) ** 5, W.d(1)], rank=2)
    (comp, a, b, e), c = leading_term(v, order)
    assert comp == 1
    # below the boundary the order is the plain degree order
    w = FreeVec.from_entries([W.x(1) ** 5, W.zero()], rank=2)
    (comp, a, b, e), c = leading_term(w, order)
    assert comp == 0 and sum(a) == 5


def test_rank_mismatch_rejected():
    with pytest.raises(RankMismatch):
        left_normal_form(vec(W.x(1)),
                         [FreeVec.from_entries([W.x(1), W.d(1)], rank=2)],
                         bernstein_order(1))


def test_zp_coefficient_gb():
    A = WeylAlgebra(1, ZP)
    x, d, z = A.x(1), A.d(1), A.z()
    rows = [FreeVec.from_entries([z * d - A.one()], rank=1)]
    gb = buchberger(rows, bernstein_order(1))
    assert gb.elements
    # z*d - 1 generates: multiplying by d stays inside
    v = FreeVec.from_entries([d * (z * d - A.one())], rank=1)
    assert gb.contains(v)
