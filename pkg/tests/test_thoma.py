import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zmwreath.errors import ContractError, DomainError
from zmwreath.partitions import YoungDiagram, enumerate_partitions
from zmwreath.spectral_group import CentralFunction, alpha_of, total_I
from zmwreath.thoma import (
    DirichletParams,
    ThomaBlock,
    ThomaPoint,
    block_schur,
    dirichlet_log_density,
    dirichlet_moment,
    dirichlet_sample,
    dirichlet_samples,
    extended_schur,
    kernel,
    kernel_mean_mc,
    kernel_samples,
    mix_spectral,
    point_mass_kernel_mean,
    point_mass_sampler,
    supersym_power,
    thoma_point_from_json,
    uniform_atoms_sampler,
)
from zmwreath.zmeasure import DiagramFamily, enumerate_families, phi_z

F = DiagramFamily


def test_block_validation():
    with pytest.raises(DomainError):
        ThomaBlock((Fraction(1, 4), Fraction(1, 2)), (), 1)
    with pytest.raises(DomainError):
        ThomaBlock((Fraction(1, 2),), (Fraction(1, 2),), Fraction(1, 2))
    with pytest.raises(DomainError):
        ThomaBlock((-1,), (), 1)
    with pytest.raises(DomainError):
        ThomaPoint({"triv": ThomaBlock((), (), Fraction(1, 2))})
    ThomaPoint({"triv": ThomaBlock((0.3,), (0.2,), 0.5), "sgn": ThomaBlock((), (), 0.5)})


def test_power_sum_examples():
    b = ThomaBlock((0.3,), (0.2,), 0.7)
    assert b.power(1) == 0.7
    assert math.isclose(b.power(2), 0.05)
    a = ThomaBlock((Fraction(2, 5),), (), Fraction(1, 2))
    assert [a.power(k) for k in (2, 3)] == [Fraction(4, 25), Fraction(8, 125)]
    omega = ThomaPoint({"triv": a, "sgn": ThomaBlock((), (), Fraction(1, 2))})
    assert supersym_power(omega, "sgn", 3) == 0
    assert supersym_power(omega, "triv", 1) == Fraction(1, 2)


def test_schur_examples():
    atom = ThomaBlock((1,), (), 1)
    for n in range(1, 6):
        for lam in enumerate_partitions(n):
            assert block_schur(lam, atom) == (1 if len(lam) == 1 else 0)
    d = Fraction(3, 8)
    assert block_schur(YoungDiagram([1]), ThomaBlock((), (), d)) == d
    # a single beta atom gives the one-column indicator
    col = ThomaBlock((), (1,), 1)
    for lam in enumerate_partitions(4):
        assert block_schur(lam, col) == (1 if lam.transpose().length == 1 else 0)


def test_scaling_at_half():
    b = ThomaBlock((Fraction(1, 3), Fraction(1, 6)), (Fraction(1, 4),), Fraction(9, 10))
    lam = YoungDiagram([2, 1])
    assert block_schur(lam, b.scaled(Fraction(1, 2))) == Fraction(1, 8) * block_schur(lam, b)


blocks = st.builds(
    lambda a, b, slack: ThomaBlock(tuple(sorted(a, reverse=True)), tuple(sorted(b, reverse=True)), sum(a) + sum(b) + slack),
    st.lists(st.fractions(0, 1, max_denominator=6), max_size=3),
    st.lists(st.fractions(0, 1, max_denominator=6), max_size=3),
    st.fractions(0, 1, max_denominator=6),
)


@settings(max_examples=25, deadline=None)
@given(blocks, st.fractions(0, 3, max_denominator=7), st.integers(1, 6))
def test_block_homogeneity(block, t, n):
    for lam in enumerate_partitions(n):
        assert block_schur(lam, block.scaled(t)) == t**n * block_schur(lam, block)


def test_kernel_examples(s3):
    omega = ThomaPoint(
        {
            "triv": ThomaBlock((Fraction(1, 5),), (), Fraction(1, 4)),
            "std": ThomaBlock((), (Fraction(1, 3),), Fraction(3, 4)),
        }
    )
    assert kernel(F(), omega, s3) == 1
    assert kernel(F({"std": [1]}), omega, s3) == Fraction(3, 8)
    assert kernel(F({"sgn": [1]}), omega, s3) == 0
    f = F({"triv": [2], "std": [1, 1]})
    expected = extended_schur(YoungDiagram([2]), omega, "triv") * extended_schur(YoungDiagram([1, 1]), omega, "std") / 4
    assert kernel(f, omega, s3) == expected
    with pytest.raises(DomainError):
        kernel(F({"bogus": [1]}), omega, s3)


def test_kernel_block_homogeneity(s3):
    t = Fraction(2, 3)
    base = {
        "triv": ThomaBlock((Fraction(1, 5),), (Fraction(1, 10),), Fraction(1, 2)),
        "std": ThomaBlock((Fraction(1, 4),), (), Fraction(1, 2)),
    }
    omega = ThomaPoint(base)
    # rescale std and compensate in triv so the deltas still sum to 1
    moved = ThomaPoint({"triv": base["triv"].scaled(Fraction(4, 3)), "std": base["std"].scaled(t)})
    for f in enumerate_families(3, s3):
        a, b = f.diagram("triv").size, f.diagram("std").size
        assert kernel(f, moved, s3) == Fraction(4, 3) ** a * t**b * kernel(f, omega, s3)


def test_json_round_trip(s3):
    data = {"triv": {"alpha": ["1/5"], "beta": [], "delta": "1/4"}, "std": {"delta": "3/4"}}
    omega = thoma_point_from_json(s3, data)
    assert omega.block("std").delta == Fraction(3, 4)
    again = thoma_point_from_json(s3, omega.to_json())
    assert again == omega


def test_dirichlet_single_component(rng):
    p = DirichletParams({"a": Fraction(5, 2)})
    assert np.all(dirichlet_samples(p, 100, rng) == 1.0)
    assert dirichlet_log_density(p, {"a": 1.0}) == 0.0


def test_dirichlet_validation():
    with pytest.raises(DomainError):
        DirichletParams({})
    with pytest.raises(DomainError):
        DirichletParams({"a": 0})
    p = DirichletParams({"a": 1, "b": 2})
    with pytest.raises(DomainError):
        dirichlet_log_density(p, {"a": 0.2, "b": 0.2})


def test_beta_marginal_mean(rng):
    p = DirichletParams({"a": Fraction(3, 2), "b": Fraction(7, 2)})
    x = dirichlet_samples(p, 100_000, rng)[:, 0]
    se = x.std(ddof=1) / math.sqrt(len(x))
    assert abs(x.mean() - 0.3) < 3 * se


def test_dirichlet_mean_vector(rng):
    p = DirichletParams({"a": 1, "b": 2, "c": 5})
    x = dirichlet_samples(p, 100_000, rng)
    se = x.std(axis=0, ddof=1) / math.sqrt(len(x))
    mean = p.mean()
    for i, k in enumerate(p.labels):
        assert abs(x[:, i].mean() - float(mean[k])) < 3 * se[i]
    assert set(dirichlet_sample(p, rng)) == {"a", "b", "c"}


@mpmath.workdps(15)
def test_density_integrates_to_one():
    p = DirichletParams({"a": Fraction(3, 2), "b": Fraction(5, 2)})
    total = mpmath.quad(lambda u: mpmath.e ** dirichlet_log_density(p, {"a": float(u), "b": 1 - float(u)}), [0, 1])
    assert abs(total - 1) < 1e-8
    q = DirichletParams({"a": 2, "b": 3, "c": 4})

    def inner(u):
        return mpmath.quad(
            lambda v: mpmath.e ** dirichlet_log_density(q, {"a": float(u), "b": float(v), "c": 1 - float(u) - float(v)})
            if u + v < 1
            else 0,
            [0, 1 - u],
        )

    assert abs(mpmath.quad(inner, [0, 1]) - 1) < 1e-6


def test_dirichlet_moment_against_quadrature():
    p = DirichletParams({"a": 2, "b": 3})
    exact = dirichlet_moment(p, {"a": 2, "b": 1})
    assert exact == Fraction(2 * 3 * 3, 5 * 6 * 7)
    numeric = mpmath.quad(
        lambda u: u**2 * (1 - u) * mpmath.e ** dirichlet_log_density(p, {"a": float(u), "b": 1 - float(u)}), [0, 1]
    )
    assert abs(numeric - float(exact)) < 1e-8


def test_mix_spectral_point_masses(s3, rng):
    z = CentralFunction.from_class_values(s3, [6, 2, 0])
    samplers = {k: point_mass_sampler() for k in s3.irrep_labels}
    omega = mix_spectral(z, samplers, rng)
    assert omega.support == {"triv", "std"}
    for zeta in omega.support:
        b = omega.block(zeta)
        assert b.alpha == (b.delta,) and b.beta == ()


def test_contract_error(z2_z, rng):
    bad = {"triv": point_mass_sampler((0.5,)), "sgn": point_mass_sampler()}
    with pytest.raises(ContractError):
        mix_spectral(z2_z, bad, rng)
    with pytest.raises(ContractError):
        kernel_samples(z2_z, F({"triv": [1]}), bad, 10, rng)
    with pytest.raises(DomainError):
        mix_spectral(z2_z, {"triv": point_mass_sampler()}, rng)


def test_one_box_consistency(s3, rng):
    z = CentralFunction.from_class_values(s3, [6, 2, 1])
    samplers = {
        "triv": uniform_atoms_sampler([((1,), ()), ((0.5, 0.5), ()), ((), (1,))]),
        "sgn": point_mass_sampler(),
        "std": uniform_atoms_sampler([((0.6,), (0.4,)), ((1,), ())]),
    }
    for zeta in s3.irrep_labels:
        f = F({zeta: [1]})
        exact = phi_z(z, f)
        assert point_mass_kernel_mean(z, f) == exact
        mean, se = kernel_mean_mc(z, f, samplers, 100_000, rng)
        assert abs(mean - float(exact)) < 3 * se + 1e-12


def test_point_mass_degree_two(s3, rng):
    z = CentralFunction.from_class_values(s3, [6, 2, 1])
    samplers = {k: point_mass_sampler() for k in s3.irrep_labels}
    for f in enumerate_families(2, s3):
        exact = point_mass_kernel_mean(z, f)
        values = kernel_samples(z, f, samplers, 50_000, rng)
        se = values.std(ddof=1) / math.sqrt(len(values))
        assert abs(values.mean() - float(exact)) < 3 * se + 1e-12


def test_vectorized_matches_exact_kernel(s3):
    z = CentralFunction.from_class_values(s3, [6, 2, 1])
    samplers = {
        "triv": uniform_atoms_sampler([((0.5, 0.25), (0.25,))]),
        "sgn": point_mass_sampler(),
        "std": uniform_atoms_sampler([((0.6,), (0.4,))]),
    }
    f = F({"triv": [2, 1], "std": [2]})
    fast = kernel_samples(z, f, samplers, 5, np.random.default_rng(1))
    params = DirichletParams.from_z(z)
    deltas = dirichlet_samples(params, 5, np.random.default_rng(1))
    for row, value in zip(deltas, fast):
        d = dict(zip(params.labels, row))
        omega = ThomaPoint(
            {
                "triv": ThomaBlock((0.5 * d["triv"], 0.25 * d["triv"]), (0.25 * d["triv"],), d["triv"]),
                "sgn": ThomaBlock((d["sgn"],), (), d["sgn"]),
                "std": ThomaBlock((0.6 * d["std"],), (0.4 * d["std"],), d["std"]),
            }
        )
        assert math.isclose(float(kernel(f, omega, s3)), value, rel_tol=1e-9, abs_tol=1e-15)


def test_tau_sums_to_I(s3):
    z = CentralFunction.from_class_values(s3, [6, 2, 1])
    assert sum(DirichletParams.from_z(z).tau.values()) == total_I(z)
    assert DirichletParams.from_z(z).tau["std"] == abs(alpha_of(z, "std")) ** 2
