"""Group realizations: linking data, doubled diagrams, rank-four counts."""

import pytest
from hypothesis import given, strategies as st

from conftest import COMPONENT_ROWS, component_diag, diag
from linkdyn import (
    BraidingMatrix,
    CartanMatrix,
    LinkingDatum,
    RootExpr,
    a4_realizable_zp2,
    a4_solve_zp2,
    construct,
    count_magic_solutions,
    double_datum,
    enumerate_cycles,
    find_symmetrizer,
    genus,
    genus_gcd,
    is_prime,
    magic_pairs,
    max_diagram_note_zp2,
    realize_free,
    realize_mod_p,
    sqrt_mod,
    verify,
)
from linkdyn.errors import (
    InadmissibleD,
    LinkConstraintUnsatisfiable,
    NotPrime,
    NotSymmetrizable,
    OrderNotDividing,
)

PRIMES_TO_101 = tuple(p for p in range(5, 102) if is_prime(p))


def cartan(label):
    return CartanMatrix(COMPONENT_ROWS[label])


class TestFindSymmetrizer:
    @pytest.mark.parametrize(
        "label, expected",
        [
            ("A2", (1, 1)),
            ("A3", (1, 1, 1)),
            ("B2", (1, 2)),
            ("G2", (1, 3)),
            ("B3", (1, 1, 2)),
        ],
    )
    def test_known_values(self, label, expected):
        assert find_symmetrizer(cartan(label)) == expected

    @pytest.mark.parametrize("label", ["A2", "B2", "G2", "B3"])
    def test_symmetrizes(self, label):
        rows = COMPONENT_ROWS[label]
        d = find_symmetrizer(CartanMatrix(rows))
        n = len(rows)
        for i in range(n):
            for j in range(n):
                assert d[i] * rows[i][j] == d[j] * rows[j][i]

    def test_blocks_get_independent_weights(self):
        d = find_symmetrizer(CartanMatrix(((2, 0, 0), (0, 2, -2), (0, -1, 2))))
        assert d == (1, 1, 2)

    def test_unsymmetrizable_triangle(self):
        # single, single, and double edges around a 3-cycle force d_0 = d_1
        # = d_2 and d_0 = 2 d_2 at once
        rows = ((2, -1, -1), (-1, 2, -1), (-2, -1, 2))
        with pytest.raises(NotSymmetrizable):
            find_symmetrizer(CartanMatrix(rows))


class TestDoubleDatum:
    @pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3"])
    @pytest.mark.parametrize("q_order", [5, 7])
    def test_datum_verifies(self, label, q_order):
        datum = double_datum(cartan(label), q_order=q_order)
        assert datum.verify_datum() == ()
        assert datum.order == q_order

    @pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3"])
    def test_induced_matrix_verifies(self, label):
        datum = double_datum(cartan(label))
        matrix = datum.braiding_matrix()
        report = verify(datum.diagram, matrix, "finite")
        assert report.ok, report.failures

    @pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3"])
    def test_all_cycle_genera_vanish(self, label):
        # the mirror cycle carries every arrow twice in opposite
        # directions, so both weights cancel; affine mode prices the
        # triple edges that finite mode bans from cycles
        datum = double_datum(cartan(label))
        dg = datum.diagram
        cycles = enumerate_cycles(dg)
        assert cycles
        assert all(genus(dg, c, "affine") == 0 for c in cycles)
        assert genus_gcd(dg, "affine") == 0

    @pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3"])
    @pytest.mark.parametrize("q_order", [5, 7])
    def test_character_identity_on_linked_pairs(self, label, q_order):
        datum = double_datum(cartan(label), q_order=q_order)
        dg = datum.diagram
        generators = len(datum.factors)
        for x, y in datum.linked:
            for first, second in ((x, y), (y, x)):
                a = dg.a(first, second)
                for t in range(generators):
                    combined = (
                        datum.characters[first][t] ** (1 - a)
                        * datum.characters[second][t]
                    )
                    assert combined.is_one

    def test_rank_one_values(self):
        datum = double_datum(CartanMatrix(((2,),)))
        assert datum.order == 5
        assert datum.factors == (0,)
        # the mirror generator reuses the same group element
        assert datum.elements == ((1,), (1,))
        assert datum.braiding_entry(0, 0) == RootExpr.root(5, 2)
        # the mirror character is the inverse of the original
        assert datum.characters[1][0] == RootExpr.root(5, -2)
        assert datum.linked == frozenset({(0, 1)})

    def test_entries_follow_symmetrizer(self):
        rows = COMPONENT_ROWS["B2"]
        datum = double_datum(CartanMatrix(rows), q_order=7)
        d = find_symmetrizer(CartanMatrix(rows))
        n = len(rows)
        for i in range(n):
            for j in range(n):
                assert datum.braiding_entry(i, j) == RootExpr.root(
                    7, d[i] * rows[i][j]
                )
                assert datum.braiding_entry(i, n + j) == RootExpr.root(
                    7, -d[i] * rows[i][j]
                )

    def test_scaled_symmetrizer_is_accepted(self):
        datum = double_datum(cartan("A2"), symmetrizer=(2, 2))
        assert datum.braiding_entry(0, 0) == RootExpr.root(5, 4)
        assert datum.verify_datum() == ()

    def test_wrong_symmetrizer_rejected(self):
        with pytest.raises(NotSymmetrizable):
            double_datum(cartan("A2"), symmetrizer=(1, 2))
        with pytest.raises(NotSymmetrizable):
            double_datum(cartan("A2"), symmetrizer=(0, 0))
        with pytest.raises(NotSymmetrizable):
            double_datum(cartan("A2"), symmetrizer=(1,))

    def test_collapsing_q_order_rejected(self):
        with pytest.raises(InadmissibleD):
            double_datum(CartanMatrix(((2,),)), q_order=2)
        # d = (1, 2) makes q^4 trivial at order four
        with pytest.raises(InadmissibleD):
            double_datum(cartan("B2"), q_order=4)


class TestRealizeFree:
    @pytest.mark.parametrize(
        "dd",
        [
            component_diag(["A2", "A2"], [(0, 2), (1, 3)]),
            component_diag(["A3", "A3"], [(0, 3), (1, 4), (2, 5)]),
            component_diag(["G2", "A1"], [(1, 2)]),
        ],
        ids=["A2xA2", "A3doubled", "G2+A1"],
    )
    def test_round_trip(self, dd):
        matrix = construct(dd)
        datum = realize_free(matrix, dd)
        assert datum.verify_datum() == ()
        assert datum.factors == (0,) * matrix.size
        inst = matrix.instantiate()
        for i in range(matrix.size):
            for j in range(matrix.size):
                assert datum.braiding_entry(i, j) == inst.entry(i, j)

    def test_generators_are_a_basis(self):
        dd = component_diag(["A2", "A2"], [(0, 2), (1, 3)])
        datum = realize_free(construct(dd), dd)
        for i, vector in enumerate(datum.elements):
            assert vector == tuple(
                1 if t == i else 0 for t in range(len(datum.elements))
            )

    def test_z_values_flow_through(self):
        dd = component_diag(["A2", "A2"], [(0, 2), (1, 3)])
        matrix = construct(dd)
        tags = matrix.z_indices()
        assert tags
        values = {t: RootExpr.root(5, 2) for t in tags}
        datum = realize_free(matrix, dd, z_values=values)
        assert datum.verify_datum() == ()
        inst = matrix.instantiate(values)
        for i in range(matrix.size):
            for j in range(matrix.size):
                assert datum.braiding_entry(i, j) == inst.entry(i, j)

    def test_single_vertex(self):
        solo = diag([[2]], [])
        datum = realize_free(construct(solo), solo)
        assert datum.factors == (0,)
        assert datum.braiding_entry(0, 0) == RootExpr.root(5, 1)

    def test_rejects_matrix_violating_character_identity(self):
        dd = component_diag(["A1", "A1"], [(0, 1)])
        bad = BraidingMatrix.from_text("root_order 5\nq^1 q^1\nq^1 q^1")
        with pytest.raises(LinkConstraintUnsatisfiable):
            realize_free(bad, dd)


class TestRealizeModP:
    def setup_method(self):
        self.dd = component_diag(["A2", "A2"], [(0, 2), (1, 3)])
        self.matrix = construct(self.dd)

    def test_matching_modulus(self):
        datum = realize_mod_p(self.matrix, self.dd, 5)
        assert datum.factors == (5, 5, 5, 5)
        assert datum.verify_datum() == ()
        inst = self.matrix.instantiate()
        for i in range(4):
            for j in range(4):
                assert datum.braiding_entry(i, j) == inst.entry(i, j)

    def test_coprime_modulus_rejected(self):
        with pytest.raises(OrderNotDividing, match="does not divide"):
            realize_mod_p(self.matrix, self.dd, 7)

    def test_multiple_of_order_accepted(self):
        datum = realize_mod_p(self.matrix, self.dd, 10)
        assert datum.factors == (10, 10, 10, 10)
        assert datum.verify_datum() == ()


class TestSqrtMod:
    @given(
        st.sampled_from((5, 7, 11, 13, 17, 19, 29, 97, 101)),
        st.integers(min_value=0, max_value=200),
    )
    def test_matches_exhaustive_search(self, p, a):
        expected = tuple(sorted(x for x in range(p) if x * x % p == a % p))
        assert sqrt_mod(a, p) == expected

    def test_zero(self):
        assert sqrt_mod(0, 7) == (0,)
        assert sqrt_mod(14, 7) == (0,)

    def test_known_roots(self):
        assert sqrt_mod(5, 19) == (9, 10)
        assert sqrt_mod(5, 13) == ()
        # p = 1 mod 4 goes through the long branch
        assert sqrt_mod(2, 17) == (6, 11)


class TestMagicCount:
    @pytest.mark.parametrize(
        "p, expected", [(5, 6), (7, 6), (11, 12), (13, 12)]
    )
    def test_small_counts(self, p, expected):
        assert count_magic_solutions(p) == expected

    def test_pairs_satisfy_congruence(self):
        p = 13
        pairs = magic_pairs(p)
        assert len(pairs) == count_magic_solutions(p)
        for n, m in pairs:
            assert (n * n - n * m + m * m + m + 1) % p == 0

    def test_count_is_six_z_for_all_small_primes(self):
        for p in PRIMES_TO_101:
            count = count_magic_solutions(p)
            assert count % 6 == 0
            z = count // 6
            assert p in (6 * z - 1, 6 * z + 1)

    @pytest.mark.parametrize("p", [2, 3, 4, 9, 100])
    def test_rejects_non_primes(self, p):
        with pytest.raises(NotPrime):
            count_magic_solutions(p)


class TestRankFourSystem:
    def test_routes_agree_everywhere(self):
        for p in PRIMES_TO_101:
            sol = a4_solve_zp2(p)
            assert sol.routes_agree, (p, sol.tuples, sol.closed_form)

    @pytest.mark.parametrize("p", [11, 19, 29])
    def test_tuples_satisfy_all_three_congruences(self, p):
        sol = a4_solve_zp2(p)
        assert sol.tuples
        for n, m, k, l in sol.tuples:
            assert (n * n - n * m + m * m + m + 1) % p == 0
            assert (k * k - k * l + l * l + 1) % p == 0
            assert (k * (m - 2 * n) + l * (n - 2 * m - 1) + 1) % p == 0

    def test_solvable_iff_five_is_a_square(self):
        for p in PRIMES_TO_101:
            has_solutions = bool(a4_solve_zp2(p).tuples)
            five_square = p == 5 or pow(5, (p - 1) // 2, p) == 1
            assert has_solutions == five_square, p

    def test_small_prime_outcomes(self):
        assert len(a4_solve_zp2(5).tuples) == 6
        assert a4_solve_zp2(7).tuples == ()
        assert len(a4_solve_zp2(11).tuples) == 24

    def test_report_for_agreeing_prime(self):
        realizable, lines = a4_realizable_zp2(11)
        assert realizable
        assert not any("disagree" in line for line in lines)

    # the residue shortcut and the scan part ways at 13 and 19; the report
    # has to say so either way, and these tests only pin the scan's verdict
    def test_divergence_reported_at_13(self):
        realizable, lines = a4_realizable_zp2(13)
        assert not realizable
        assert any("predicts realizable" in line for line in lines)
        assert any("disagree" in line for line in lines)

    def test_divergence_reported_at_19(self):
        realizable, lines = a4_realizable_zp2(19)
        assert realizable
        assert any("predicts not realizable" in line for line in lines)
        assert any("disagree" in line for line in lines)

    def test_size_note_is_flagged_as_quoted(self):
        note5 = max_diagram_note_zp2(5)
        assert "A_4 x A_1" in note5
        assert "not recomputed" in note5
        note7 = max_diagram_note_zp2(7)
        assert "four vertices" in note7
        assert "not recomputed" in note7
        with pytest.raises(NotPrime):
            max_diagram_note_zp2(6)


class TestDatumText:
    def test_round_trip_free(self):
        datum = double_datum(cartan("B2"), q_order=7)
        assert LinkingDatum.from_text(datum.to_text()) == datum

    def test_round_trip_finite_factors(self):
        dd = component_diag(["A2", "A2"], [(0, 2), (1, 3)])
        datum = realize_mod_p(construct(dd), dd, 5)
        back = LinkingDatum.from_text(datum.to_text())
        assert back == datum
        assert back.factors == (5, 5, 5, 5)

    def test_from_text_rejects_garbage(self):
        with pytest.raises(ValueError):
            LinkingDatum.from_text("root_order 5\nnonsense here")
        with pytest.raises(ValueError):
            LinkingDatum.from_text("root_order five")
