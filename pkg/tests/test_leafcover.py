import itertools
import math
import random

import pytest

from ordpure.blockade import Blockade, equal_blockade, is_band, measures
from ordpure.core import (
    AnalysisError, InputError, PreconditionError, bits, build, covers_mask, empty_graph,
    max_degree_mask,
)
from ordpure.gen import random_ordered
from ordpure.leafcover import (
    LeafCovered, Params, closed_form, derived_params, full_leaf_cover, leaf_cover_all,
    match_bullets, match_step, more_leaves, verify_leaf_covered,
)

from oracles import brute_is_band, regular_block_graph

MU_GRID = (0.3, 0.35, 0.4, 0.45, 0.5)
ROLES = [((), (), (2, 3)), ((2,), (), (3,)), ((), (2,), (3,)), ((2,), (3,), ()),
         ((), (2, 3), ()), ((3,), (2,), ()), ((2, 3), (), ()), ((), (3,), (2,))]


def regular_instances(count, seed):
    """Three blocks of 12 joined by d-regular bipartite graphs, d in {4, 5, 6}.

    ``tau = max d / 12`` satisfies the upper band bullet exactly; ``mu`` is the
    least grid value making ``tau`` a ``(1/2, mu)``-band on the blocks ``0, I, J``.
    Instances with no such ``mu`` are skipped.
    """
    rng = random.Random(seed)
    made = 0
    while made < count:
        deg = {ab: rng.choice([4, 5, 6]) for ab in itertools.combinations(range(3), 2)}
        G = regular_block_graph(3, 12, deg, rng)
        A = equal_blockade(G, 3)
        tau = max(deg.values()) / 12
        H, I, J = ROLES[made % len(ROLES)]
        core = (1,) + I + J
        mu = next((m for m in MU_GRID
                   if len(core) < 2 or is_band(G, A.sub(core), tau, 0.5, m, mode="exact").ok), None)
        if mu is None:
            continue
        made += 1
        yield G, A, H, I, J, tau, mu


def regular_band_instance(k, seed, phi=0.5, degrees=(3, 4)):
    """Blocks of 12 joined by regular graphs, with ``tau`` and least grid ``mu`` giving a band."""
    rng = random.Random(seed)
    while True:
        deg = {ab: rng.choice(degrees) for ab in itertools.combinations(range(k), 2)}
        G = regular_block_graph(k, 12, deg, rng)
        A = equal_blockade(G, k)
        tau = max(deg.values()) / 12
        mu = next((m for m in (0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5)
                   if is_band(G, A, tau, phi, m, mode="exact").ok), None)
        if mu is not None:
            return G, A, tau, mu


def complete_multipartite(k, size):
    n = k * size
    return build(n, [(u, v) for u in range(n) for v in range(u + 1, n) if u // size != v // size])


def test_verify_vacuous():
    G = empty_graph(4)
    L = LeafCovered(Blockade((), ()), (), (), (), Params.of(1, 1, 1, 0.5, 0.5, 1))
    assert verify_leaf_covered(G, L).ok


def test_verify_band_only():
    G = complete_multipartite(3, 4)
    B = equal_blockade(G, 3)
    L = LeafCovered(B, (), (1, 2, 3), (), Params.of(4, 4, 1, 0.5, 0.5, 1))
    assert verify_leaf_covered(G, L, band_mode="exact").ok
    bad = LeafCovered(B, (), (1, 2, 3), (), Params.of(4, 5, 1, 0.5, 0.5, 1))
    v = verify_leaf_covered(G, bad)
    assert not v.ok and v.bullet == 2


def test_verify_reports_cover_failure():
    G = complete_multipartite(3, 4)
    B = equal_blockade(G, 3)
    L = LeafCovered(B, (1,), (2,), (3,), Params.of(4, 4, 1, 0.5, 0.5, 1), {(1, 3): 1 << 8})
    v = verify_leaf_covered(G, L, band_mode="exact")
    # vertex 8 covers block 1 but is adjacent to block 2
    assert not v.ok and v.bullet == 3


def test_match_step_without_j():
    G = complete_multipartite(3, 4)
    A = equal_blockade(G, 3)
    r = match_step(G, A, 1, (), (2, 3), (), 1.0, 0.5, 0.5, mode="practical", band_mode="exact")
    assert r.covers == {} and r.blocks[1] == A.block(1)
    b = match_bullets(G, A, r, 1.0, 0.5, 0.5, band_mode="exact")
    assert b.sizes and b.covers and b.maxdeg_into_IJ and b.maxdeg_zero_to_H


def test_match_step_single_cover_vertex():
    G = complete_multipartite(2, 5)
    A = Blockade.of([range(5), range(5, 10)], index=[0, 1])
    r = match_step(G, A, 0, (), (), (1,), 1.0, 0.5, 0.5, mode="practical", band_mode="exact")
    assert r.covers[1].bit_count() == 1 and r.covers[1] & A.block(1)
    assert covers_mask(G, r.covers[1], r.blocks[0])
    assert r.trace[-1]["branch"] in ("half", "target")


def test_match_step_theoretical_refuses():
    G = complete_multipartite(3, 4)
    A = equal_blockade(G, 3)
    with pytest.raises(PreconditionError) as ei:
        match_step(G, A, 1, (), (2,), (3,), 1.0, 0.5, 0.5)
    assert any("4k^2 tau" in f for f in ei.value.failures)


def _independent_bullets(G, A, r, tau, phi, mu):
    """The five conclusions checked with the brute-force band oracle."""
    k, n = len(A), G.n
    a, b, z = A.as_dict(), r.blocks, r.zero
    assert b[z].bit_count() >= n ** (-k * phi) * a[z].bit_count()
    for i in r.H + r.I:
        assert 2 * b[i].bit_count() >= a[i].bit_count() and b[i] & ~a[i] == 0
    for j in r.J:
        C = r.covers[j]
        assert C & ~a[j] == 0
        assert all(any(G.adjacent(x, y) for x in bits(C)) for y in bits(b[z]))
        for i in r.H + r.I:
            assert not any(G.adjacent(x, y) for x in bits(C) for y in bits(b[i]))
    IJ = sorted(r.I + r.J)
    if len(IJ) >= 2:
        assert brute_is_band(G, [list(bits(b[i])) for i in IJ], 2 * tau, 2 * phi, 2 * mu)
    for h in r.H + (z,):
        for i in IJ:
            assert max_degree_mask(G, b[h], b[i]) <= 2 * tau * b[i].bit_count() + 1e-9
    for h in r.H:
        assert max_degree_mask(G, b[z], b[h]) <= 4 * k * tau * b[h].bit_count() + 1e-9


@pytest.mark.parametrize("inst", list(regular_instances(8, 7)), ids=lambda x: "inst")
def test_match_step_bullets_on_regular_instances(inst):
    G, A, H, I, J, tau, mu = inst
    r = match_step(G, A, 1, H, I, J, tau, 0.5, mu, mode="practical", band_mode="exact")
    assert r.feasible
    assert match_bullets(G, A, r, tau, 0.5, mu, band_mode="exact").all
    _independent_bullets(G, A, r, tau, 0.5, mu)


def test_more_leaves_trivial():
    G = complete_multipartite(2, 4)
    A = Blockade.of([range(4)], index=[1])
    L = LeafCovered(A, (), (1,), (), Params.of(4, 4, 1, 0.25, 0.25, 0.5))
    L2, res = more_leaves(G, L, 1, mode="practical")
    assert L2.H == (1,) and L2.I == () and res.covers == {}
    assert L2.blockade == A


def test_more_leaves_planted_cover():
    # block 1 complete to block 3; block 2 joined to block 3 only through vertex 11
    edges = [(u, v) for u in range(4) for v in range(8, 12)]
    edges += [(u, 11) for u in range(4, 8)]
    edges += [(u, v) for u in range(4) for v in range(4, 8) if (u + v) % 2]
    G = build(12, edges)
    A = equal_blockade(G, 3)
    p = Params.of(4, 4, 1, 0.25, 0.25, 0.5)
    L = LeafCovered(A, (), (1, 2), (3,), p)
    L2, res = more_leaves(G, L, 1, mode="practical", band_mode="exact")
    X = L2.covers[1, 3]
    assert X and X & ~A.block(3) == 0
    assert covers_mask(G, X, L2.blockade.block(1))
    assert max_degree_mask(G, X, L2.blockade.block(2)) == 0
    assert L2.params == p.promoted()


def test_promoted_parameters_exact():
    p = Params.of(64, 32, 0.125, 0.1, 0.2, 0.05)
    q = p.promoted()
    vals = q.values()
    expect = (16, 16, 0.5, 0.2, 0.4, 0.1)
    assert all(math.isclose(a, b) for a, b in zip(vals, expect))


def test_leaf_cover_all_base_case():
    G = complete_multipartite(3, 4)
    A = equal_blockade(G, 3)
    run = leaf_cover_all(G, A, (), (1, 2, 3), (), 1.0, 0.5, 0.5, mode="practical")
    assert run.structure.blockade == A and len(run.trace) == 1 and not run.steps


def test_leaf_cover_all_one_step_matches_promotion():
    G, A, tau, mu = regular_band_instance(3, 1)
    run = leaf_cover_all(G, A, (2,), (1, 2), (3,), tau, 0.5, mu, mode="practical",
                         band_mode="exact")
    assert len(run.steps) == 1
    assert run.trace[1] == run.trace[0].promoted()
    assert verify_leaf_covered(G, run.structure, band_mode="exact").ok


@pytest.mark.parametrize("seed", range(3))
def test_leaf_cover_all_two_steps_random(seed):
    G, A, tau, mu = regular_band_instance(4, seed)
    run = leaf_cover_all(G, A, (1, 3), (1, 2, 3), (4,), tau, 0.5, mu, mode="practical",
                         band_mode="exact")
    assert verify_leaf_covered(G, run.structure, band_mode="exact").ok
    assert run.structure.H == (1, 3) and set(run.structure.covers) == {(1, 4), (3, 4)}
    assert run.warnings


def test_leaf_cover_all_theoretical_refuses():
    G = complete_multipartite(3, 4)
    with pytest.raises(PreconditionError):
        leaf_cover_all(G, equal_blockade(G, 3), (1,), (1, 2), (3,), 1.0, 0.5, 0.5)


@pytest.mark.parametrize("H", [(), (1,), (1, 2), (1, 2, 3)])
def test_closed_form_matches_trace(H):
    G, A, tau, mu = regular_band_instance(4, 5)
    run = leaf_cover_all(G, A, H, (1, 2, 3), (4,), tau, 0.5, mu, mode="practical")
    assert len(run.trace) == len(H) + 1
    for s, p in enumerate(run.trace):
        q = closed_form(G, 12, 4, tau, 0.5, mu, s)
        assert all(abs(x - y) <= 2 ** -40 for x, y in zip(p.astuple(), q.astuple()))


def test_derived_params():
    Sigma, phi, mu, Lam = derived_params(3, 0.1, 0.3, 0.5)
    assert math.isclose(Sigma, 0.2)
    assert math.isclose(phi * (3 * 4 + 1), 0.3 - Sigma)
    assert math.isclose(mu, 1 / 24) and math.isclose(Lam, 0.5 / 64 / 6)


def test_full_leaf_cover_k0():
    G = random_ordered(20, 0.5, seed=0)
    f = full_leaf_cover(G, equal_blockade(G, 4), 0, 0.9, 0.5, 0.7, 1.0, mode="practical")
    assert f.selection == ()


def test_full_leaf_cover_k1():
    G = random_ordered(20, 0.5, seed=0)
    f = full_leaf_cover(G, equal_blockade(G, 4), 1, 0.9, 0.6, 0.7, 1.0, mode="practical",
                        phi=1.0, mu=0.9)
    assert len(f.selection) == 1
    run = f.partition(f.selection)
    assert run.structure.H == f.selection and verify_leaf_covered(G, run.structure).ok


def test_full_leaf_cover_dense_random():
    G = random_ordered(80, 0.5, seed=7)
    A = equal_blockade(G, 8)
    assert measures(G, A).shrinkage <= 0.5
    f = full_leaf_cover(G, A, 3, 0.9, 0.5, 0.75, 1.0, mode="practical", phi=1.0, mu=0.9,
                        band_mode="exact")
    assert f.outcome == "selection" and len(f.selection) == 3
    H = f.selection[0::2]
    run = f.partition(H)
    L = run.structure
    assert verify_leaf_covered(G, L, band_mode="exact").ok
    m = measures(G, L.blockade.sub(L.H))
    assert m.shrinkage <= 0.75 and m.linkage <= 1.0
    assert set(L.J) == set(f.selection) - set(H)


def test_full_leaf_cover_rejects_bad_sigmas():
    G = random_ordered(20, 0.5, seed=0)
    with pytest.raises(InputError):
        full_leaf_cover(G, equal_blockade(G, 4), 2, 0.5, 0.6, 0.7, 1.0, mode="practical")


def test_partition_needs_selection():
    G = empty_graph(12)
    f = full_leaf_cover(G, equal_blockade(G, 3), 2, 0.9, 0.6, 0.7, 1.0, mode="practical",
                        phi=1.0, mu=0.9)
    assert f.outcome == "anticomplete"
    with pytest.raises(AnalysisError):
        f.partition(())
