from fractions import Fraction

import pytest

import oracles
from circuitcodes import has_spread, lookup
from circuitcodes.bounds import (
    BoundEntry,
    BoundTable,
    corpus_seed,
    derive,
    explain,
    explain_tree,
    is_materializable,
    k4_crossover,
    materialize,
    propagate,
    replay,
    seed_exact,
    seed_formula,
    seed_table,
    singleton_k4_baseline,
    spread3_ladder,
    theorem2_bound,
    transformations,
)
from circuitcodes.errors import DomainError, InconsistentBound, NoEntry, RangeTooSmall

T = {t.id: t for t in transformations()}


@pytest.fixture(scope="module")
def full():
    return propagate(seed_table())


class TestSeeds:
    @pytest.mark.parametrize(
        "n,k,value", [(3, 2, 6), (5, 2, 14), (6, 3, 16), (16, 9, 44), (15, 9, 40), (8, 4, 22)]
    )
    def test_exact(self, n, k, value):
        e = seed_exact(n, k)
        assert e.value == value and e.exact

    def test_exact_none(self):
        assert seed_exact(10, 2) is None
        assert seed_exact(10, 7 - 4) is None  # (10,3)
        assert seed_exact(9, 5).value == 24
        assert seed_exact(10, 5) is None  # k odd < 9 has no second row

    def test_formula(self):
        assert seed_formula(8, 3).value == 32
        assert seed_formula(7, 3).value == 24
        assert seed_formula(11, 5).value == 6 * 2 ** (22 // 6 - 1) == 24
        assert seed_formula(10, 1).value == 1024

    def test_snake_rounding(self):
        e = seed_formula(10, 2)
        assert e.value == 308 and e.raw is None  # integral and even: nothing rounded
        e = seed_formula(9, 2)
        assert e.value == 154 and e.raw is None
        e = seed_formula(7, 2)  # 38.5 -> 40
        assert e.value == 40 and e.raw == Fraction(77, 2)

    def test_formula_none(self):
        assert seed_formula(3, 4) is None
        assert seed_formula(3, 7) is None  # floor(6/8) < 2

    def test_ladder_matches_corpus(self):
        for cid, n in (("lemma4-T6", 6), ("lemma4-T7", 7), ("lemma4-T8", 8)):
            assert spread3_ladder(n) == lookup(cid).code.N

    @pytest.mark.parametrize("n", range(6, 31))
    def test_ladder_sandwich(self, n):
        # 32*3^((n-8)/3) <= V <= (24/22)*32*3^((n-8)/3), compared exactly by cubing
        V = Fraction(spread3_ladder(n))
        base3 = Fraction(32**3) * Fraction(3) ** (n - 8)
        assert V**3 >= base3
        assert V**3 <= Fraction(24, 22) ** 3 * base3

    def test_ladder_domain(self):
        with pytest.raises(DomainError):
            spread3_ladder(5)


class TestTransformations:
    def test_all_present_in_order(self):
        assert [t.id for t in transformations()] == ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "demotion"]

    def test_c7(self):
        assert T["C7"].apply((3, 2, 6)) == (4, 3, 8)
        assert T["C7"].apply((17, 6, 204)) == (22, 7, 234)
        assert T["C7"].apply((2, 2, 4)) is None

    def test_c1(self):
        assert T["C1"].apply((22, 7, 234)) == (23, 7, 234 + 2 * (234 // 14)) == (23, 7, 266)

    def test_others(self):
        assert T["C2"].apply((10, 3, 48)) == (12, 3, 48 + 4 * 12)
        assert T["C2"].apply((10, 2, 48)) is None
        assert T["C3"].apply((6, 3, 16)) == (8, 3, 32)
        assert T["C3"].apply((6, 4, 16)) is None
        assert T["C4"].apply((5, 2, 14)) == (7, 2, 14 + 4 * 4)
        assert T["C5"].apply((23, 8, 100)) == (22, 7, 100 - 100 // 23)
        assert T["demotion"].apply((22, 8, 50)) == (22, 7, 50)
        assert T["demotion"].apply((22, 1, 50)) is None

    def test_c6(self):
        assert T["C6"].apply((3, 3, 16), (5, 4, 22)) == (9, 4, Fraction(16 * 24, 4))
        assert T["C6"].apply((3, 1, 8), (5, 2, 14)) == (8, 2, Fraction(8 * 14, 2))
        assert T["C6"].apply((3, 3, 18), (5, 4, 22)) is None  # 4 does not divide 18
        assert T["C6"].apply((6, 3, 16), (5, 4, 22)) is None  # n1 > n2
        assert T["C6"].apply((3, 2, 16), (5, 3, 22)) is None  # k odd

    def test_c5_rounds_up_to_even(self):
        e = derive(T["C5"], BoundEntry(11, 5, 100, "x"))
        assert e.raw == 91 and e.value == 92


class TestPropagate:
    def small(self, *entries, n_range=(2, 4), k_range=(1, 3)):
        t = BoundTable(n_range, k_range)
        for e in entries:
            t.offer(e)
        return t

    def test_six_cycle_seed(self):
        seed = corpus_seed(lookup("fig1-(3,2,6)"))
        out = propagate(self.small(seed))
        assert out.value(4, 3) == 8
        assert explain(out, 4, 3) == "C7 ← corpus fig1-(3,2,6)"
        code = materialize(out[(4, 3)])
        assert code.seq.elements == (2, 1, 3, 4, 2, 1, 3, 4)

    def test_record_seed(self):
        seed = corpus_seed(lookup("appendixB-(22,7,234)"))
        out = propagate(self.small(seed, n_range=(22, 23), k_range=(7, 7)))
        assert out.value(23, 7) == 266
        assert explain(out, 23, 7) == "C1 ← corpus appendixB-(22,7,234)"

    def test_empty(self):
        out = propagate(BoundTable((2, 4), (1, 3)))
        assert len(out) == 0 and out.rounds == 0

    def test_empty_range(self):
        with pytest.raises(RangeTooSmall):
            propagate(BoundTable((5, 4), (1, 3)))
        with pytest.raises(RangeTooSmall):
            seed_table((2, 3), (4, 1))

    def test_explain_missing(self, full):
        with pytest.raises(NoEntry):
            explain(BoundTable((2, 4), (1, 3)), 3, 2)
        with pytest.raises(NoEntry):
            full[(40, 2)]

    def test_exceeding_exact_is_rejected(self):
        t = seed_table((2, 6), (1, 3), formulas=False, codes=False)
        with pytest.raises(InconsistentBound):
            t.offer(BoundEntry(6, 3, 18, "bogus"))
        with pytest.raises(InconsistentBound):
            t.offer(BoundEntry(5, 1, 34, "bogus"))  # more than 2^n

    def test_idempotent(self, full):
        again = propagate(full)
        assert again.entries == full.entries
        assert again.rounds == 0

    def test_input_not_mutated(self):
        t = seed_table((2, 10), (1, 4))
        before = dict(t.entries)
        propagate(t)
        assert t.entries == before

    def test_invariants(self, full):
        for (n, k), e in full.entries.items():
            assert e.value % 2 == 0
            assert e.value <= 2**n
            if (n, k + 1) in full:
                assert e.value >= full.value(n, k + 1)
            if (n + 1, k) in full:
                assert full.value(n + 1, k) >= e.value
            ex = seed_exact(n, k)
            if ex is not None:
                assert e.value == ex.value
            assert replay(e) == e.value

    def test_full_grid_populated(self, full):
        assert len(full) == 29 * 10

    def test_spot_values(self, full):
        assert full.value(22, 7) == 234
        assert full.value(23, 7) == 266
        assert full.value(6, 3) == 16 and full[(6, 3)].exact

    def test_materialize(self, full):
        mats = [e for e in full.entries.values() if is_materializable(e)]
        assert mats
        for e in mats:
            code = materialize(e)
            assert (code.n, code.k) == (e.n, e.k) and code.N >= e.value
            assert has_spread(code, e.k).holds

    def test_materialize_padding_chain(self):
        B = corpus_seed(lookup("appendixB-(22,7,234)"))
        from circuitcodes.bounds import PADDING

        padded = derive(PADDING, B)
        assert padded.params == (23, 7, 240)
        c7 = derive(T["C7"], padded)
        assert is_materializable(c7)
        code = materialize(c7)
        assert code.params == c7.params == (28, 8, 270)
        assert has_spread(code, 8).holds
        assert replay(c7) == 270

    def test_not_materializable(self, full):
        e = full[(23, 7)]
        assert not is_materializable(e) and materialize(e) is None

    def test_added_seed_monotone(self, full):
        # a (17,6,204) code exists in the literature; adding it must not lower anything
        t = seed_table()
        t.offer(BoundEntry(17, 6, 204, "corpus:external-(17,6,204)"))
        more = propagate(t)
        assert all(more.value(n, k) >= e.value for (n, k), e in full.entries.items())

    def test_tree_rendering(self, full):
        text = explain_tree(full[(23, 7)])
        assert text.splitlines() == [
            "K(23,7) >= 266  [C1]",
            "  K(22,7) >= 234  [corpus:appendixB-(22,7,234)]",
        ]


class TestSpread4:
    def test_n86(self):
        m, mp = oracles.mp_spread4_bound(86)
        assert m == 56
        assert mp == 1721868840
        assert theorem2_bound(86) == 1721868840
        assert singleton_k4_baseline(86) == 805306368 == int(oracles.mp_baseline(86))

    def test_small(self):
        assert theorem2_bound(12) is None  # floor(7.842) = 7 < 8
        assert theorem2_bound(13) == 40
        assert singleton_k4_baseline(6) == 12
        assert singleton_k4_baseline(12) == 48
        with pytest.raises(DomainError):
            singleton_k4_baseline(5)

    @pytest.mark.parametrize("n", range(13, 201))
    def test_against_mp_oracle(self, n):
        _, c = oracles.mp_spread4_bound(n)
        assert theorem2_bound(n) == c + (c % 2)

    def test_crossover(self):
        for n in range(86, 201):
            assert theorem2_bound(n) > singleton_k4_baseline(n)
        n0 = k4_crossover(200)
        assert n0 is not None and n0 <= 86
