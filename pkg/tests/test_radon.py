import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flagradon import (
    CorrespondenceSpec,
    GrothendieckClass,
    NoExtremalPair,
    NotDominant,
    Weight,
    classify,
    classify_extremal,
    extremal_pair,
    gamma_lambda,
    infinitesimal_vanishing_test,
    root_system,
)
from flagradon.classical import MaximalSpec
from flagradon.radon import (
    ExtremalPair,
    big_gamma,
    bgg_terms,
    euler_class,
    euler_class_gamma,
    euler_class_xi,
    extremal_violations,
    is_extremal,
    vanishing_condition_lambda_free,
    xi_lambda,
)

from _sampling import F4, all_types, random_instances
from test_weyl import matrix_group

A2 = root_system("A", 2)
A2_SPEC = CorrespondenceSpec(A2, (1,), (2,))


def w(*c):
    return Weight(c)


# --- Grothendieck classes ----------------------------------------------------------


def test_grothendieck_class_arithmetic():
    a, b = w(1, 0), w(0, 1)
    x = GrothendieckClass({a: 1, b: -2})
    y = GrothendieckClass([(b, 2), (a, 1)])
    assert x + y == GrothendieckClass({a: 2})
    assert x - x == GrothendieckClass() and not (x - x)
    assert 3 * x == GrothendieckClass({a: 3, b: -6})
    assert len(GrothendieckClass({a: 0})) == 0
    assert hash(x) == hash(GrothendieckClass({b: -2, a: 1}))


# --- micro case ----------------------------------------------------------------------


def test_a2_two_term_case():
    entries = gamma_lambda(A2_SPEC, w(0, -3))
    assert [(str(e.x), e.len_x, e.m, e.mu, e.degree, e.singular) for e in entries] == [
        ("e", 0, 0, w(-2, 1), 0, False),
        ("s1", 1, 0, w(-3, 0), -1, False),
    ]
    assert euler_class(A2_SPEC, w(0, -3)) == GrothendieckClass({w(-2, 1): 1, w(-3, 0): -1})


def test_a2_extremal_case():
    rep = classify(A2_SPEC, w(0, -2))
    assert [str(e.x) for e in rep.nonsingular] == ["e"]
    assert rep.single_term == (w(-1, 0), 0)
    assert rep.entries[1].singular
    ext = classify_extremal(A2_SPEC)
    assert (ext.lam, ext.mu, ext.phi_iso) == (w(0, -2), w(-1, 0), True)


def test_big_gamma_and_bgg_terms():
    assert [(k, [str(x) for x in xs]) for k, xs in big_gamma(A2_SPEC)] == [(0, ["e"]), (1, ["s1"])]
    assert bgg_terms(A2_SPEC, w(0, -3)) == [(0, [w(0, -3)]), (1, [w(-2, -2)])]


@pytest.mark.parametrize(
    "rs,I,J",
    [
        (root_system("A", 4), (1, 2, 4), (2, 3, 4)),
        (root_system("B", 4), (1, 3), (2, 3, 4)),
        (root_system("D", 5), (1, 2, 3, 4), (1, 2, 3, 5)),
        (root_system("generic", 4, F4), (1, 2, 3), (2, 3, 4)),
    ],
    ids=str,
)
def test_gamma_size_and_top_length(rs, I, J):
    spec = CorrespondenceSpec(rs, I, J)
    strata = big_gamma(spec)
    order = lambda K: len(matrix_group(rs, K)[0])
    assert sum(len(v) for _, v in strata) == order(I) // order(spec.IJ)
    top = sum(1 for r in rs.positive_roots if r.support() <= set(I) and not r.support() <= set(J))
    assert strata[-1][0] == top and len(strata[-1][1]) == 1


# --- brute-force oracle for Gamma(lam) ------------------------------------------------------


def brute_gamma_lambda(spec, lam):
    """Gamma(lam) from the matrix group alone: cosets, exhaustive W_J search, Cayley lengths."""
    rs = spec.rs
    rho = np.array(rs.rho.coeffs)
    v0 = np.array((lam + rs.rho).coeffs)
    wi, dist_i = matrix_group(rs, spec.I)
    wk, _ = matrix_group(rs, spec.IJ)
    wj, dist_j = matrix_group(rs, spec.J)
    wj_mats = list(wj.items())
    longest_j = max(dist_j.values())
    longest_ij = max(matrix_group(rs, spec.IJ)[1].values())
    w0j = next(m for k, m in wj_mats if dist_j[k] == longest_j)
    out = {}
    seen = set()
    for key, m in sorted(wi.items(), key=lambda t: dist_i[t[0]]):
        if key in seen:
            continue
        seen |= {(h @ m).tobytes() for h in wk.values()}
        v = m @ v0
        hits = [(k, y) for k, y in wj_mats if all((y @ v)[j - 1] > 0 for j in spec.J)]
        xkey = Weight.of(m @ rho)
        if not hits:
            out[xkey] = (dist_i[key], None)
            continue
        (yk, y), = hits
        mm = dist_j[(w0j @ y).tobytes()] - longest_ij
        out[xkey] = (dist_i[key], (mm, Weight.of(y @ v) - rs.rho, dist_j[yk]))
    return out


@pytest.mark.parametrize("seed", range(6))
def test_gamma_lambda_against_brute_force(seed):
    small = [(s, l) for s, l in random_instances(400, seed=seed) if s.rs.rank <= 3]
    for spec, lam in small[:25]:
        want = brute_gamma_lambda(spec, lam)
        got = {e.x.key: (e.len_x, None if e.singular else (e.m, e.mu, e.y.length)) for e in gamma_lambda(spec, lam)}
        assert got == want, (spec, lam)


# --- two paths, invariants -------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_dual_paths_agree(seed):
    (spec, lam), = random_instances(1, seed=seed)
    entries = gamma_lambda(spec, lam)
    assert euler_class_gamma(entries) == euler_class_xi(spec, lam)
    xi = {x.key: n for x, n in xi_lambda(spec, lam)}
    assert len(xi) == sum(not e.singular for e in entries)
    n_ji = sum(1 for r in spec.rs.positive_roots if r.support() <= set(spec.J) and not r.support() <= set(spec.I))
    for e in entries:
        if not e.singular:
            yx = np.array(e.x.key.coeffs)
            for i in reversed(e.y.word):
                yx = yx - yx[i - 1] * np.array(spec.rs.simple_root_weights[i - 1].coeffs)
            # l(x) - m(x) = l(y_x x) - #(Delta_J^+ minus Delta_I)
            assert e.len_x - e.m == xi[Weight.of(yx)] - n_ji


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_weak_vanishing_is_sound(seed):
    (spec, lam), = random_instances(1, seed=seed)
    if infinitesimal_vanishing_test(spec, lam):
        assert all(e.singular for e in gamma_lambda(spec, lam))


def test_weak_vanishing_examples():
    assert infinitesimal_vanishing_test(A2_SPEC, w(0, 0)) is False
    assert infinitesimal_vanishing_test(A2_SPEC, w(0, -2)) is False
    # A4, p=3, q=1, a=2 lies in a vanishing band; the weak test happens to see it
    ms = MaximalSpec("A", 4, 3, 1, 2)
    assert infinitesimal_vanishing_test(ms.correspondence(), ms.lam) is True


def test_weak_vanishing_is_strictly_weaker():
    # some lam with Gamma(lam) empty is invisible to the infinitesimal-character test
    found = False
    for spec, lam in random_instances(2000, seed=3):
        if all(e.singular for e in gamma_lambda(spec, lam)) and not infinitesimal_vanishing_test(spec, lam):
            found = True
            break
    assert found


def test_not_dominant():
    with pytest.raises(NotDominant):
        gamma_lambda(A2_SPEC, w(-1, 0))
    with pytest.raises(NotDominant):
        classify(A2_SPEC, w(-1, 5))


# --- classification examples ----------------------------------------------------------------


@pytest.mark.parametrize(
    "ms,weight,shift",
    [
        (MaximalSpec("A", 4, 3, 1, 1), w(-3, 0, 0, 0), 2),
        (MaximalSpec("A", 4, 3, 1, 4), w(-2, 0, 0, 0), 0),
        (MaximalSpec("C", 3, 2, 1, 4), w(-4, 0, 0), 0),
        (MaximalSpec("C", 3, 2, 1, 1), w(-2, 0, 0), 2),
    ],
    ids=str,
)
def test_single_terms(ms, weight, shift):
    rep = classify(ms.correspondence(), ms.lam)
    assert rep.single_term == (weight, shift)
    assert rep.negative_single_term is False


def test_vanishing_band_example():
    ms = MaximalSpec("A", 4, 3, 1, 2)
    rep = classify(ms.correspondence(), ms.lam)
    assert rep.vanishes and not rep.euler


def test_epi_candidate():
    rep = classify(A2_SPEC, w(0, -3))
    assert rep.epi_candidate == w(-2, 1) and rep.epi_sufficient
    # lam + rho pairs positively with alpha_2: no candidate
    rep = classify(A2_SPEC, w(0, 1))
    assert rep.epi_candidate is None


# --- extremal cases ---------------------------------------------------------------------------


def test_extremal_pair_examples():
    assert extremal_pair(A2_SPEC) == ExtremalPair(w(0, -2), w(-1, 0), ())
    c3 = CorrespondenceSpec.maximal(root_system("C", 3), 1, 2)
    assert (extremal_pair(c3).lam, extremal_pair(c3).mu) == (w(-2, 0, 0), w(0, -1, 0))
    d5 = CorrespondenceSpec.maximal(root_system("D", 5), 4, 5)
    assert (extremal_pair(d5).lam, extremal_pair(d5).mu) == (w(0, 0, 0, -5, 0), w(0, 0, 0, 0, -3))


def test_extremal_free_directions():
    rs = root_system("A", 3)
    spec = CorrespondenceSpec(rs, (1,), (3,))
    pair = extremal_pair(spec)
    assert pair.free == (2,) and pair.lam.coeffs[1] == 0
    # moving along a free node keeps the pair extremal
    shift = Weight.fundamental(3, 2, -4)
    assert is_extremal(spec, pair.lam + shift, pair.mu + shift)
    rep = classify_extremal(spec, ExtremalPair(pair.lam + shift, pair.mu + shift, pair.free))
    assert rep.concentrated


def test_classify_extremal_examples():
    a2 = classify_extremal(CorrespondenceSpec.maximal(A2, 2, 1))
    assert (a2.concentrated, a2.phi_epi, a2.phi_iso) == (True, True, True)
    a4 = classify_extremal(CorrespondenceSpec.maximal(root_system("A", 4), 4, 2))
    assert (a4.concentrated, a4.phi_epi, a4.phi_iso) == (True, True, False)
    assert "iso" in a4.witnesses
    c2 = classify_extremal(CorrespondenceSpec.maximal(root_system("C", 2), 1, 2))
    assert (c2.concentrated, c2.phi_epi) == (True, False)
    assert set(c2.witnesses) == {"epi", "iso"}


def test_non_extremal_pair_rejected():
    with pytest.raises(NoExtremalPair):
        classify_extremal(A2_SPEC, ExtremalPair(w(0, -3), w(-2, 0)))


@pytest.mark.parametrize("rs", all_types(4), ids=repr)
def test_extremal_cases_concentrated_all_subsets(rs):
    # every pair I != J (not only maximal parabolics)
    assert list(extremal_violations(rs)) == []


@pytest.mark.parametrize("rs", all_types(4), ids=repr)
def test_extremal_nesting_and_lambda_free_form(rs):
    subsets = [tuple(i + 1 for i in range(rs.rank) if m >> i & 1) for m in range(1 << rs.rank)]
    for I in subsets:
        for J in subsets:
            if I == J:
                continue
            spec = CorrespondenceSpec(rs, I, J)
            rep = classify_extremal(spec)
            assert rep.phi_iso <= rep.phi_epi <= rep.concentrated
            assert vanishing_condition_lambda_free(spec) == rep.concentrated
