import itertools
from fractions import Fraction
from math import factorial

import numpy as np
import pytest

from zmwreath.errors import DomainError, ResourceBoundError
from zmwreath.numeric import conj, pochhammer
from zmwreath.partitions import enumerate_partitions, mn_character
from zmwreath.spectral_group import CentralFunction, builtin_model, total_I
from zmwreath.symfunc import a_lambda_product
from zmwreath.wreath import ColoredPermutation, cycle_type, enumerate_wreath
from zmwreath.zmeasure import DiagramFamily, dim_wreath, enumerate_families, family_zmeasure
from zmwreath.finite_characters import (
    a_coefficient,
    block_character,
    character_table,
    check_dimension,
    class_function,
    hat_power_sums,
    induced_character,
    psi_eval,
    theorem_psi_check,
    wreath_classes,
)

F = DiagramFamily
CP = ColoredPermutation


def std_matrices(s3):
    """Standard representation of S3 cut out of the action on cosets of {e, (12)}."""
    h = {0, 1}
    cosets = []
    for a in range(6):
        c = frozenset(s3.multiply(a, b) for b in h)
        if c not in cosets:
            cosets.append(c)
    basis = np.array([[1, 0], [-1, 1], [0, -1]])
    left = np.array([[1, 0, 0], [1, 1, 0]])
    mats = []
    for g in range(6):
        q = np.zeros((3, 3), dtype=int)
        for i, c in enumerate(cosets):
            image = frozenset(s3.multiply(g, a) for a in c)
            q[cosets.index(image), i] = 1
        mats.append(left @ q @ basis)
    return mats


def tensor_trace(mats, x):
    """Trace of (rho(g_1) x ... x rho(g_k)) P_s on the k-fold tensor power."""
    d = mats[0].shape[0]
    k = x.degree
    diag = np.eye(1, dtype=int)
    for g in x.colors:
        diag = np.kron(diag, mats[g])
    perm = np.zeros((d**k, d**k), dtype=int)
    for idx in itertools.product(range(d), repeat=k):
        out = [0] * k
        for i, a in enumerate(idx):
            out[x.perm[i]] = a
        perm[np.ravel_multi_index(out, (d,) * k), np.ravel_multi_index(idx, (d,) * k)] = 1
    return int(np.trace(diag @ perm))


def test_std_oracle_is_a_representation(s3):
    mats = std_matrices(s3)
    for g in range(6):
        for h in range(6):
            assert np.array_equal(mats[g] @ mats[h], mats[s3.multiply(g, h)])
        assert np.trace(mats[g]) == s3.character("std", s3.element_class(g))


def test_block_character_identity(s3):
    for k in range(4):
        assert block_character("std", k, CP.identity(s3, k)) == 2**k
    with pytest.raises(DomainError):
        block_character("std", 2, CP.identity(s3, 3))


def test_block_character_single_cycle(s3):
    x = CP((1, 4, 3), (1, 2, 0), s3)
    prod = s3.multiply(3, s3.multiply(4, 1))
    assert block_character("std", 3, x) == s3.character("std", s3.element_class(prod))


def test_block_character_matches_tensor_trace(s3, rng):
    mats = std_matrices(s3)
    for _ in range(60):
        k = int(rng.integers(1, 4))
        x = CP(rng.integers(0, 6, k), rng.permutation(k), s3)
        assert block_character("std", k, x) == tensor_trace(mats, x)


def test_s2_z2_degrees(z2):
    table = character_table(z2, 2)
    assert len(table) == 5
    identity = F({"e": [1, 1]})
    assert sorted(chi[identity] for chi in table.values()) == [1, 1, 1, 1, 2]
    assert sum(chi[identity] ** 2 for chi in table.values()) == 8
    for family, chi in table.items():
        assert chi[identity] == dim_wreath(family, z2)


@pytest.mark.parametrize("name,n", [("z2", 1), ("z2", 2), ("z2", 3), ("s3", 1), ("s3", 2)])
def test_orthonormality(name, n):
    m = builtin_model(name)
    table = character_table(m, n)
    assert len(table) == len(wreath_classes(m, n))
    for f, chi in table.items():
        assert check_dimension(f, m)
        for g, psi in table.items():
            assert chi.inner(psi) == (1 if f == g else 0)


def test_second_orthogonality(z2):
    table = character_table(z2, 2)
    classes = wreath_classes(z2, 2)
    for rho in classes:
        for sigma in classes:
            s = sum(chi[rho] * conj(chi[sigma]) for chi in table.values())
            if rho != sigma:
                assert s == 0
            else:
                assert s == 8 // classes[rho][1]


def test_class_functions_are_central(z2):
    chi = induced_character(F({"triv": [1], "sgn": [1]}), z2)
    for x in enumerate_wreath(z2, 2):
        assert chi.at(x) == chi[cycle_type(x)]


def test_trivial_group_gives_mn_table():
    m = builtin_model("trivial")
    zeta = m.irrep_labels[0]
    c = m.class_labels[0]
    for n in range(1, 5):
        for lam in enumerate_partitions(n):
            chi = induced_character(F({zeta: lam}), m)
            for rho in enumerate_partitions(n):
                assert chi[F({c: rho})] == mn_character(lam, rho)


def test_block_order_does_not_matter(s3):
    for f in enumerate_families(2, s3):
        a = induced_character(f, s3)
        b = induced_character(f, s3, order=tuple(reversed(s3.irrep_labels)))
        assert a.values == b.values


def test_character_bound(s3):
    with pytest.raises(ResourceBoundError):
        wreath_classes(s3, 5)


def test_psi_examples(s3):
    p = [CentralFunction.from_class_values(s3, v) for v in ([2, 3, 5], [7, 11, 13], [1, 4, 9])]
    assert psi_eval(p, CP.identity(s3, 3)) == 2**3
    x = CP((1, 0, 4), (1, 2, 0), s3)
    c = s3.element_class(s3.multiply(4, s3.multiply(0, 1)))
    assert psi_eval(p, x) == p[2].values()[c]
    z = p[0]
    for x in enumerate_wreath(s3, 2):
        direct = 1
        for cyc in x.cycles():
            direct *= z.values()[s3.element_class(x.cycle_product(cyc))]
        assert psi_eval([z, z], x) == direct
    with pytest.raises(DomainError):
        psi_eval(p[:1], CP((0, 0), (1, 0), s3))


def test_theorem_single_box(s3):
    p = [CentralFunction.from_class_values(s3, [Fraction(2, 3), -1, 5])]
    for zeta in s3.irrep_labels:
        lhs, rhs = theorem_psi_check(F({zeta: [1]}), p)
        assert lhs == rhs == hat_power_sums(p, zeta)[1]


@pytest.mark.parametrize("name,n", [("z2", 2), ("z2", 3), ("s3", 2)])
def test_theorem_psi(name, n):
    m = builtin_model(name)
    rng = np.random.default_rng(n)
    p = [
        CentralFunction.from_class_values(
            m, [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-9, 10, len(m.class_labels)), rng.integers(1, 7, len(m.class_labels)))]
        )
        for _ in range(n)
    ]
    for f in enumerate_families(n, m):
        lhs, rhs = theorem_psi_check(f, p)
        assert lhs == rhs


def test_theorem_psi_complex():
    m = builtin_model("z4")
    p = [
        CentralFunction.from_class_values(m, [1, [0, 2], Fraction(1, 2), [3, -1]]),
        CentralFunction.from_class_values(m, [[1, 1], 2, 0, -1]),
    ]
    for f in enumerate_families(2, m):
        lhs, rhs = theorem_psi_check(f, p)
        assert lhs == rhs


def test_a_coefficient_examples(z2_z):
    assert a_coefficient(z2_z, F()) == 1
    assert a_coefficient(z2_z, F({"triv": [1]})) == 2


@pytest.mark.parametrize("name,values,n", [("z2", [3, 1], 2), ("z2", [3, 1], 3), ("s3", [6, 2, 1], 2)])
def test_a_coefficient_chain(name, values, n):
    z = CentralFunction.from_class_values(builtin_model(name), values)
    scale = pochhammer(total_I(z), n)
    for f in enumerate_families(n, z.model):
        a = a_coefficient(z, f)
        assert a == a_lambda_product(f, z)
        assert (a * conj(a)) * factorial(n) / scale == family_zmeasure(z, f)


def test_table_json(z2):
    chi = induced_character(F({"sgn": [2]}), z2)
    rows = chi.to_json()
    assert len(rows) == 5
    assert class_function(z2, 2, lambda x: 1).norm2() == 1
