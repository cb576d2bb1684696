import pytest

from conftest import group
from george_cost.factorization import factor_unbranched, find_peel_pair, peel, product, verify_witness
from george_cost.groups import compose, enumerate_with_lengths, identity, make_element
from george_cost.models import DomainError, Factorization, PeelError
from george_cost.statistics import tvd
from george_cost.transpositions import as_element, make, simple_generators


def factorization(descriptor, factors):
    return Factorization(descriptor=descriptor, factors=factors, doubled_cost=sum(t.doubled_cost for t in factors))


@pytest.mark.parametrize(
    "flag,n,window,pair",
    [("A", 3, [2, 3, 1], (2, 3)), ("B", 2, [-1, 2], (-1, 1)), ("~A", 2, [0, 3], (0, 1))],
)
def test_find_peel_pair(flag, n, window, pair):
    assert find_peel_pair(make_element(group(flag, n), window)) == pair


def test_peel_shortens_the_element():
    w = make_element(group("A", 3), [2, 3, 1])
    v, t = peel(w, 2, 3)
    assert v.window == (2, 1, 3)
    assert (t.i, t.j) == (2, 3)
    assert tvd(v) == tvd(w) - t.doubled_cost


def test_peel_rejects_a_pair_out_of_order():
    with pytest.raises(PeelError):
        peel(make_element(group("A", 3), [2, 3, 1]), 1, 2)


def test_no_peel_pair_for_the_identity_or_branched_groups():
    with pytest.raises(PeelError):
        find_peel_pair(identity(group("~C", 3)))
    with pytest.raises(DomainError):
        find_peel_pair(make_element(group("D", 2), [-1, -2]))
    with pytest.raises(DomainError):
        factor_unbranched(identity(group("~D", 3)))


def test_factor_of_the_identity_is_empty():
    f = factor_unbranched(identity(group("B", 3)))
    assert f.factors == []
    assert f.total_cost == 0


@pytest.mark.parametrize("flag,n,bound", [("A", 3, None), ("B", 3, None), ("A", 4, 3), ("~A", 2, 5), ("~A", 3, 4), ("~C", 2, 5), ("~C", 3, 4)])
def test_greedy_factorization_costs_half_the_displacement(flag, n, bound):
    descriptor = group(flag, n)
    bound = bound if bound is not None else 2 * n * n
    for w, _ in enumerate_with_lengths(descriptor, bound):
        f = factor_unbranched(w)
        assert product(descriptor, f.factors) == w
        assert f.doubled_cost == tvd(w)
        report = verify_witness(w, f)
        assert report.valid
        assert report.optimal


def test_greedy_factorization_of_long_affine_words(rng):
    descriptor = group("~C", 4)
    generators = simple_generators(descriptor)
    for _ in range(20):
        w = identity(descriptor)
        for _ in range(12):
            w = compose(w, as_element(rng.choice(generators)))
        f = factor_unbranched(w)
        assert product(descriptor, f.factors) == w
        assert 2 * f.total_cost == tvd(w)


def test_verify_witness_in_type_d():
    d2 = group("D", 2)
    w = make_element(d2, [-1, -2])
    report = verify_witness(w, factorization(d2, [make(d2, 1, -2), make(d2, 1, 2)]))
    assert report.valid
    assert (report.total_cost, report.formula) == (8, 8)
    assert report.optimal


def test_verify_witness_flags_a_wasteful_product():
    a3 = group("A", 3)
    s1 = make(a3, 1, 2)
    report = verify_witness(identity(a3), factorization(a3, [s1, s1]))
    assert report.valid
    assert report.optimal is False


def test_verify_witness_flags_a_wrong_product():
    a3 = group("A", 3)
    report = verify_witness(make_element(a3, [2, 3, 1]), factorization(a3, [make(a3, 1, 2)]))
    assert not report.valid
    assert report.optimal is None
    assert any("product" in reason for reason in report.reasons)


def test_verify_witness_rejects_a_foreign_witness():
    report = verify_witness(identity(group("B", 2)), factorization(group("D", 2), [make(group("D", 2), 1, 2)]))
    assert not report.valid


def test_verify_witness_without_a_proved_formula():
    b3 = group("~B", 3)
    t = make(b3, 3, 5)
    report = verify_witness(as_element(t), factorization(b3, [t]))
    assert report.valid
    assert report.formula is None
    assert report.optimal


def test_verify_witness_reports_costs_below_the_lower_bound():
    a3 = group("A", 3)
    undercharged = make(a3, 1, 2).model_copy(update={"doubled_cost": 0})
    report = verify_witness(make_element(a3, [2, 1, 3]), factorization(a3, [undercharged]))
    assert report.valid
    assert report.optimal is None
    assert any("lower bound" in reason for reason in report.reasons)
