import itertools

import numpy as np
import pytest

from adaptqaoa.pauli import (
    PauliString,
    PauliSum,
    commutator,
    commutes_with_flip,
    flip_operator,
    multiply,
    nested_commutator_sum,
    string_to_matrix,
    sum_to_matrix,
    sum_x,
    sum_y,
    trace_inner,
)

from oracles import label_to_matrix, pauli_string_matrix, pauli_sum_matrix


def all_strings(n):
    for x in range(2 ** n):
        for z in range(2 ** n):
            yield PauliString(n, x, z)


class TestMultiply:
    def test_single_qubit_table(self):
        x = PauliString.from_label("X0", 1)
        y = PauliString.from_label("Y0", 1)
        z = PauliString.from_label("Z0", 1)
        assert multiply(x, y) == PauliString(1, 0, 1, 1)  # i*Z
        assert multiply(y, x) == PauliString(1, 0, 1, 3)  # -i*Z
        assert multiply(y, z) == PauliString(1, 1, 0, 1)  # i*X
        assert multiply(z, x) == PauliString(1, 1, 1, 1)  # i*Y
        assert multiply(x, x) == PauliString.identity(1)

    def test_identity_neutral(self):
        rng = np.random.default_rng(7)
        for n in (1, 2, 4):
            ident = PauliString.identity(n)
            for _ in range(20):
                p = PauliString(n, int(rng.integers(2 ** n)), int(rng.integers(2 ** n)))
                assert multiply(ident, p) == p
                assert multiply(p, ident) == p

    def test_zz_times_x_example(self):
        zz = PauliString.from_label("Z0Z1", 2)
        x0 = PauliString.from_label("X0", 2)
        prod = multiply(zz, x0)
        assert prod.label == "Y0Z1"
        assert prod.phase == 1  # +i * Y0Z1
        dense = pauli_string_matrix(zz) @ pauli_string_matrix(x0)
        np.testing.assert_allclose(dense, pauli_string_matrix(prod), atol=1e-14)

    def test_exhaustive_against_dense_n2(self):
        strings = list(all_strings(2))
        for p in strings:
            for q in strings:
                prod = multiply(p, q)
                dense = pauli_string_matrix(p) @ pauli_string_matrix(q)
                np.testing.assert_allclose(
                    dense, pauli_string_matrix(prod), atol=1e-13
                )

    def test_random_against_dense_n3(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            p = PauliString(3, int(rng.integers(8)), int(rng.integers(8)), int(rng.integers(4)))
            q = PauliString(3, int(rng.integers(8)), int(rng.integers(8)), int(rng.integers(4)))
            dense = pauli_string_matrix(p) @ pauli_string_matrix(q)
            np.testing.assert_allclose(
                dense, pauli_string_matrix(multiply(p, q)), atol=1e-13
            )

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            multiply(PauliString.identity(2), PauliString.identity(3))


class TestCommutator:
    def test_commuting_strings(self):
        zz = PauliString.from_label("Z0Z1", 2)
        z0 = PauliString.from_label("Z0", 2)
        assert not commutator(zz, z0)

    def test_zz_x0(self):
        zz = PauliString.from_label("Z0Z1", 2)
        x0 = PauliString.from_label("X0", 2)
        result = commutator(zz, x0)
        expected = PauliSum.from_string(PauliString.from_label("Y0Z1", 2), 2j)
        assert result.equals(expected)
        dense = pauli_string_matrix(zz) @ pauli_string_matrix(x0) - pauli_string_matrix(
            x0
        ) @ pauli_string_matrix(zz)
        np.testing.assert_allclose(dense, pauli_sum_matrix(result), atol=1e-13)

    def test_su2(self):
        x = PauliString.from_label("X0", 1)
        y = PauliString.from_label("Y0", 1)
        expected = PauliSum.from_string(PauliString.from_label("Z0", 1), 2j)
        assert commutator(x, y).equals(expected)

    def test_zero_iff_symplectic_even_n2(self):
        for p in all_strings(2):
            for q in all_strings(2):
                dense = pauli_string_matrix(p) @ pauli_string_matrix(q) - (
                    pauli_string_matrix(q) @ pauli_string_matrix(p)
                )
                vanishes = np.allclose(dense, 0.0, atol=1e-13)
                assert p.commutes_with(q) == vanishes
                assert bool(commutator(p, q)) == (not vanishes)


class TestFlipSymmetry:
    @pytest.mark.parametrize(
        "label,n,expected",
        [
            ("X0", 1, True),
            ("Y0", 1, False),
            ("Y0Y1", 2, True),
            ("Y0Z1", 2, True),
            ("X0Y1", 2, False),
            ("Z0", 3, False),
            ("Z0Z2", 3, True),
            ("I", 2, True),
        ],
    )
    def test_even_y_or_z_rule(self, label, n, expected):
        assert commutes_with_flip(PauliString.from_label(label, n)) is expected

    def test_matches_conjugation_by_all_x(self):
        for n in (1, 2, 3):
            flip = flip_operator(n)
            for p in all_strings(n):
                conjugated = multiply(multiply(flip, p), flip)
                assert commutes_with_flip(p) == (conjugated == p)


class TestTraceInner:
    def test_orthonormality(self):
        z0 = PauliSum.from_string(PauliString.from_label("Z0", 1))
        x0 = PauliSum.from_string(PauliString.from_label("X0", 1))
        assert trace_inner(z0, z0) == pytest.approx(1.0)
        assert trace_inner(z0, x0) == pytest.approx(0.0)

    def test_weighted_example(self):
        zz = PauliString.from_label("Z0Z1", 2)
        x0 = PauliString.from_label("X0", 2)
        a = PauliSum.from_terms([(zz, 2.0), (x0, 1.0)])
        b = PauliSum.from_terms([(zz, 3.0)])
        value = trace_inner(a, b)
        dense = np.trace(pauli_sum_matrix(a).conj().T @ pauli_sum_matrix(b)) / 4.0
        assert value == pytest.approx(6.0, abs=1e-12)
        assert value == pytest.approx(dense.real, abs=1e-12)

    def test_random_sums_against_dense(self):
        rng = np.random.default_rng(23)
        for n in (1, 2, 3):
            dim = 4 ** n
            for _ in range(20):
                terms_a = [
                    (PauliString(n, int(rng.integers(2 ** n)), int(rng.integers(2 ** n))), float(rng.normal()))
                    for _ in range(4)
                ]
                terms_b = [
                    (PauliString(n, int(rng.integers(2 ** n)), int(rng.integers(2 ** n))), float(rng.normal()))
                    for _ in range(4)
                ]
                a = PauliSum.from_terms(terms_a, n)
                b = PauliSum.from_terms(terms_b, n)
                dense = np.trace(pauli_sum_matrix(a).conj().T @ pauli_sum_matrix(b)) / (2 ** n)
                assert abs(trace_inner(a, b) - dense.real) < 1e-12
                assert abs(dense.imag) < 1e-12

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            trace_inner(PauliSum.zero(2), PauliSum.zero(3))


class TestNestedCommutator:
    def test_depth_one_commuting(self):
        z = PauliSum.from_string(PauliString.from_label("Z0", 1))
        assert not nested_commutator_sum(z, z, 1)

    def test_depth_one_su2(self):
        z = PauliSum.from_string(PauliString.from_label("Z0", 1))
        x = PauliSum.from_string(PauliString.from_label("X0", 1))
        expected = PauliSum.from_string(PauliString.from_label("Y0", 1), 2j)
        assert nested_commutator_sum(z, x, 1).equals(expected)

    def test_depth_two_dense_oracle(self):
        z = PauliSum.from_string(PauliString.from_label("Z0", 1))
        x = PauliSum.from_string(PauliString.from_label("X0", 1))
        result = nested_commutator_sum(z, x, 2)
        expected = PauliSum.from_string(PauliString.from_label("X0", 1), 4.0)
        assert result.equals(expected)
        hz = pauli_sum_matrix(z)
        hx = pauli_sum_matrix(x)
        dense = hz @ (hz @ hx - hx @ hz) - (hz @ hx - hx @ hz) @ hz
        np.testing.assert_allclose(dense, pauli_sum_matrix(result), atol=1e-13)

    def test_random_depth_against_dense(self):
        rng = np.random.default_rng(5)
        n = 2
        for _ in range(20):
            h = PauliSum.from_terms(
                [
                    (PauliString(n, int(rng.integers(4)), int(rng.integers(4))), float(rng.normal()))
                    for _ in range(3)
                ],
                n,
            )
            g = PauliSum.from_terms(
                [
                    (PauliString(n, int(rng.integers(4)), int(rng.integers(4))), float(rng.normal()))
                    for _ in range(3)
                ],
                n,
            )
            depth = int(rng.integers(1, 4))
            result = nested_commutator_sum(h, g, depth)
            hm, gm = pauli_sum_matrix(h), pauli_sum_matrix(g)
            dense = gm
            for _ in range(depth):
                dense = hm @ dense - dense @ hm
            np.testing.assert_allclose(dense, pauli_sum_matrix(result), atol=1e-10)

    def test_bad_depth(self):
        z = PauliSum.from_string(PauliString.from_label("Z0", 1))
        with pytest.raises(ValueError):
            nested_commutator_sum(z, z, 0)


class TestPauliSumBasics:
    def test_phase_folding(self):
        y = PauliString.from_label("Y0", 1)
        iy = multiply(PauliString.from_label("X0", 1), PauliString.from_label("Z0", 1))
        # X*Z = -i*Y: the key must be the phaseless Y with coefficient -i
        assert iy.phaseless() == y
        s = PauliSum.from_string(iy)
        assert s.coefficient(y) == pytest.approx(-1j)

    def test_zero_terms_pruned(self):
        z = PauliString.from_label("Z0", 1)
        s = PauliSum.from_terms([(z, 1.0), (z, -1.0)])
        assert len(s) == 0
        tiny = PauliSum.from_terms([(z, 1e-15)])
        assert len(tiny) == 0

    def test_hermiticity_of_i_commutator_chains(self):
        rng = np.random.default_rng(13)
        n = 3
        for _ in range(20):
            h = PauliSum.from_terms(
                [
                    (PauliString(n, int(rng.integers(8)), int(rng.integers(8))), float(rng.normal()))
                    for _ in range(4)
                ],
                n,
            )
            g = PauliSum.from_terms(
                [
                    (PauliString(n, int(rng.integers(8)), int(rng.integers(8))), float(rng.normal()))
                    for _ in range(4)
                ],
                n,
            )
            assert h.is_hermitian() and g.is_hermitian()
            chain = 1j * h.commutator_with(g)
            assert chain.is_hermitian()
            chain2 = 1j * h.commutator_with(chain)
            assert chain2.is_hermitian()

    def test_collective_sums(self):
        sx = sum_x(3)
        assert len(sx) == 3
        np.testing.assert_allclose(
            pauli_sum_matrix(sx),
            sum(label_to_matrix(f"X{i}", 3) for i in range(3)),
            atol=1e-14,
        )
        sy = sum_y(2)
        assert all(ps.y_count == 1 for ps, _ in sy.items())

    def test_arithmetic_against_dense(self):
        rng = np.random.default_rng(3)
        n = 2
        a = PauliSum.from_terms(
            [(PauliString(n, int(rng.integers(4)), int(rng.integers(4))), complex(rng.normal(), rng.normal())) for _ in range(4)],
            n,
        )
        b = PauliSum.from_terms(
            [(PauliString(n, int(rng.integers(4)), int(rng.integers(4))), complex(rng.normal(), rng.normal())) for _ in range(4)],
            n,
        )
        np.testing.assert_allclose(
            pauli_sum_matrix(a + b), pauli_sum_matrix(a) + pauli_sum_matrix(b), atol=1e-13
        )
        np.testing.assert_allclose(
            pauli_sum_matrix(a - b), pauli_sum_matrix(a) - pauli_sum_matrix(b), atol=1e-13
        )
        np.testing.assert_allclose(
            pauli_sum_matrix(a * b), pauli_sum_matrix(a) @ pauli_sum_matrix(b), atol=1e-13
        )
        np.testing.assert_allclose(
            pauli_sum_matrix(2.5j * a), 2.5j * pauli_sum_matrix(a), atol=1e-13
        )


class TestRendering:
    def test_labels(self):
        assert PauliString.from_label("Y0Z3", 4).label == "Y0Z3"
        assert PauliString.identity(4).label == "I"
        assert PauliString.single(6, 5, "X").label == "X5"

    def test_label_round_trip(self):
        rng = np.random.default_rng(31)
        for _ in range(50):
            p = PauliString(5, int(rng.integers(32)), int(rng.integers(32)))
            assert PauliString.from_label(p.label, 5) == p

    def test_bad_labels(self):
        with pytest.raises(ValueError):
            PauliString.from_label("Q0", 2)
        with pytest.raises(ValueError):
            PauliString.from_label("X5", 2)
        with pytest.raises(ValueError):
            PauliString.from_label("X0Y0", 2)

    def test_dense_helpers_match_oracle(self):
        for p in itertools.islice(all_strings(3), 0, 64, 7):
            np.testing.assert_allclose(
                string_to_matrix(p), pauli_string_matrix(p), atol=1e-14
            )
        s = PauliSum.from_terms(
            [(PauliString.from_label("X0Z2", 3), 1.5), (PauliString.from_label("Y1", 3), -0.5)]
        )
        np.testing.assert_allclose(sum_to_matrix(s), pauli_sum_matrix(s), atol=1e-14)
