import io
import math
import random
from itertools import combinations

import numpy as np
import pytest

from atrs.mining import (
    AssociationRule,
    MiningConfig,
    apriori,
    generate_rules,
    load_basket_transactions,
    one_hot,
    read_rules_csv,
    support,
    write_rules_csv,
)
from atrs.mining._counting_py import count_candidates as count_py

F4_CONFIG = MiningConfig(min_support=0.3, min_confidence=0.5)


def brute_force_frequent(transactions, min_support):
    """Independent oracle: enumerate every non-empty itemset and filter by support."""
    transactions = [frozenset(t) for t in transactions]
    universe = sorted({x for t in transactions for x in t})
    n = len(transactions)
    out = {}
    for size in range(1, len(universe) + 1):
        for combo in combinations(universe, size):
            target = frozenset(combo)
            supp = sum(1 for t in transactions if target <= t) / n
            if supp >= min_support:
                out[target] = supp
    return out


class TestOneHot:
    def test_single_transaction(self):
        matrix = one_hot([{"a"}], ["a", "b"])
        assert matrix.tolist() == [[True, False]]

    def test_two_transactions(self):
        matrix = one_hot([{"a", "b"}, {"b"}], ["a", "b"])
        assert matrix.tolist() == [[True, True], [False, True]]

    def test_column_sums_match_item_frequencies(self, f4_transactions):
        universe = sorted({x for t in f4_transactions for x in t})
        matrix = one_hot(f4_transactions, universe)
        sums = matrix.sum(axis=0).tolist()
        expected = [
            sum(1 for t in f4_transactions if item in t) for item in universe
        ]
        assert sums == expected

    def test_unknown_item_rejected(self):
        with pytest.raises(ValueError, match="not in universe"):
            one_hot([{"z"}], ["a"])

    def test_unsorted_universe_rejected(self):
        with pytest.raises(ValueError, match="sorted"):
            one_hot([], ["b", "a"])


class TestSupport:
    def test_simple_fraction(self):
        assert support([{"a", "b"}, {"a"}, {"b"}, {"c"}], {"a"}) == 0.5

    def test_f4_pair(self, f4_transactions):
        assert support(f4_transactions, {"ipod", "piano"}) == 0.5

    def test_empty_itemset_everywhere(self, f4_transactions):
        assert support(f4_transactions, set()) == 1.0

    def test_empty_transactions_rejected(self):
        with pytest.raises(ValueError):
            support([], {"a"})


class TestApriori:
    def test_single_item(self):
        result = apriori([{"a"}, {"a"}], MiningConfig(min_support=1.0))
        assert len(result) == 1
        assert result[0].items == frozenset({"a"})
        assert result[0].support == 1.0

    def test_f4_at_030(self, f4_transactions):
        result = apriori(f4_transactions, F4_CONFIG)
        expected = brute_force_frequent(f4_transactions, 0.3)
        assert {fs.items: fs.support for fs in result} == expected
        # exactly the 7 non-empty subsets of the co-occurring triple
        assert len(result) == 7
        assert all(fs.support == 0.5 for fs in result)

    def test_f4_at_010(self, f4_transactions):
        result = apriori(f4_transactions, MiningConfig(min_support=0.1))
        got = {fs.items: fs.support for fs in result}
        assert got == brute_force_frequent(f4_transactions, 0.1)
        assert got[frozenset({"aerosol"})] == 0.25
        assert got[frozenset({"guitar"})] == 0.25
        assert len(got) == 9

    def test_empty_transactions_rejected(self):
        with pytest.raises(ValueError):
            apriori([], MiningConfig())

    def test_output_ordering(self, f4_transactions):
        result = apriori(f4_transactions, MiningConfig(min_support=0.1))
        keys = [(len(fs.items), sorted(fs.items)) for fs in result]
        assert keys == sorted(keys)

    def test_max_itemset_size(self, f4_transactions):
        result = apriori(f4_transactions, MiningConfig(min_support=0.3, max_itemset_size=2))
        assert max(len(fs.items) for fs in result) == 2

    def test_downward_closure(self, f4_transactions):
        result = apriori(f4_transactions, MiningConfig(min_support=0.1))
        reported = {fs.items for fs in result}
        for items in reported:
            for size in range(1, len(items)):
                for sub in combinations(sorted(items), size):
                    assert frozenset(sub) in reported

    def test_doubling_transactions_keeps_supports(self, f4_transactions):
        once = apriori(f4_transactions, MiningConfig(min_support=0.1))
        twice = apriori(f4_transactions * 2, MiningConfig(min_support=0.1))
        assert [(fs.items, fs.support) for fs in once] == [
            (fs.items, fs.support) for fs in twice
        ]

    def test_random_instances_match_oracle(self):
        rng = random.Random(7)
        for _ in range(40):
            n_items = rng.randint(1, 8)
            universe = [f"i{k}" for k in range(n_items)]
            transactions = [
                frozenset(rng.sample(universe, rng.randint(1, n_items)))
                for _ in range(rng.randint(1, 12))
            ]
            min_support = rng.choice([0.1, 0.3, 0.5, 0.7, 0.9])
            got = {fs.items: fs.support for fs in apriori(transactions, MiningConfig(min_support=min_support))}
            assert got == brute_force_frequent(transactions, min_support)

    def test_candidate_guardrail_warning(self):
        # 50 frequent singletons make C(50,2)=1225 size-2 candidates
        wide = frozenset(f"i{k}" for k in range(50))
        config = MiningConfig(
            min_support=0.5, max_itemset_size=2, candidate_warn_threshold=1000
        )
        with pytest.warns(RuntimeWarning, match="guardrail"):
            apriori([wide, wide], config)


class TestKernels:
    def test_pure_python_matches_selected_kernel(self):
        from atrs.mining.kernels import count_candidates as count_selected

        rng = random.Random(3)
        n_items = 70  # spans two 64-bit words in the compiled kernel
        rows = [
            frozenset(rng.sample(range(n_items), rng.randint(1, 20))) for _ in range(40)
        ]
        candidates = [
            tuple(sorted(rng.sample(range(n_items), rng.randint(1, 4)))) for _ in range(60)
        ]
        assert count_selected(rows, candidates, n_items) == count_py(rows, candidates, n_items)

    def test_kernel_empty_inputs(self):
        from atrs.mining.kernels import count_candidates as count_selected

        assert count_selected([], [(0,)], 1) == [0]
        assert count_selected([frozenset({0})], [], 1) == []


class TestMiningConfig:
    def test_defaults(self):
        config = MiningConfig()
        assert config.min_support == 0.1
        assert config.min_confidence == 0.5
        assert config.max_itemset_size is None

    @pytest.mark.parametrize("bad", [0.0, -0.1, 1.5])
    def test_rejects_bad_thresholds(self, bad):
        with pytest.raises(ValueError):
            MiningConfig(min_support=bad)
        with pytest.raises(ValueError):
            MiningConfig(min_confidence=bad)


class TestGenerateRules:
    def test_f4_reproduces_result_table(self, f4_transactions):
        itemsets = apriori(f4_transactions, F4_CONFIG)
        rules = generate_rules(itemsets, f4_transactions, F4_CONFIG)
        by_pair = {(r.antecedent, r.consequent): r for r in rules}
        rule = by_pair[(frozenset({"ipod"}), frozenset({"piano"}))]
        assert rule.support == pytest.approx(0.5, abs=1e-9)
        assert rule.confidence == pytest.approx(1.0, abs=1e-9)
        assert rule.lift == pytest.approx(2.0, abs=1e-9)
        assert rule.leverage == pytest.approx(0.25, abs=1e-9)
        assert math.isinf(rule.conviction)

    def test_f4_all_splits_emitted(self, f4_transactions):
        itemsets = apriori(f4_transactions, F4_CONFIG)
        rules = generate_rules(itemsets, f4_transactions, F4_CONFIG)
        # three 2-sets give 2 rules each; the 3-set gives 6 splits
        assert len(rules) == 12
        for r in rules:
            assert not (r.antecedent & r.consequent)
            assert r.support == pytest.approx(0.5, abs=1e-9)
            assert r.confidence == pytest.approx(1.0, abs=1e-9)

    def test_independent_items_have_unit_lift(self):
        transactions = [{"a", "b"}, {"a"}, {"b"}, {"x"}]
        config = MiningConfig(min_support=0.1, min_confidence=0.1)
        itemsets = apriori(transactions, config)
        rules = generate_rules(itemsets, transactions, config)
        rule = next(r for r in rules if r.antecedent == frozenset({"a"}) and r.consequent == frozenset({"b"}))
        assert rule.lift == pytest.approx(1.0, abs=1e-9)
        assert rule.leverage == pytest.approx(0.0, abs=1e-9)

    def test_min_confidence_filters(self, f4_transactions):
        config = MiningConfig(min_support=0.1, min_confidence=0.9)
        itemsets = apriori(f4_transactions, config)
        rules = generate_rules(itemsets, f4_transactions, config)
        assert all(r.confidence >= 0.9 for r in rules)

    def test_sorted_by_lift_then_confidence(self, f4_transactions):
        config = MiningConfig(min_support=0.1, min_confidence=0.1)
        itemsets = apriori(f4_transactions, config)
        rules = generate_rules(itemsets, f4_transactions, config)
        keys = [(-r.lift, -r.confidence, sorted(r.antecedent), sorted(r.consequent)) for r in rules]
        assert keys == sorted(keys)

    def test_metric_identities_on_random_runs(self):
        rng = random.Random(11)
        for _ in range(20):
            n_items = rng.randint(2, 7)
            universe = [f"i{k}" for k in range(n_items)]
            transactions = [
                frozenset(rng.sample(universe, rng.randint(1, n_items)))
                for _ in range(rng.randint(2, 12))
            ]
            config = MiningConfig(min_support=0.1, min_confidence=0.2)
            itemsets = apriori(transactions, config)
            rules = generate_rules(itemsets, transactions, config)
            for r in rules:
                supp_a = support(transactions, r.antecedent)
                supp_c = support(transactions, r.consequent)
                supp_union = support(transactions, r.antecedent | r.consequent)
                assert r.confidence * supp_a == pytest.approx(supp_union, abs=1e-9)
                assert r.lift * supp_c == pytest.approx(r.confidence, abs=1e-9)
                assert r.leverage == pytest.approx(supp_union - supp_a * supp_c, abs=1e-9)
                assert -0.25 <= r.leverage <= 0.25
                if math.isinf(r.conviction):
                    assert r.confidence == pytest.approx(1.0, abs=1e-12)
                else:
                    assert r.conviction == pytest.approx(
                        (1 - supp_c) / (1 - r.confidence), abs=1e-9
                    )
                # lift = 1 exactly when leverage = 0
                assert (abs(r.lift - 1.0) < 1e-9) == (abs(r.leverage) < 1e-9)


class TestRulesCsv:
    def test_roundtrip(self, f4_transactions):
        itemsets = apriori(f4_transactions, F4_CONFIG)
        rules = generate_rules(itemsets, f4_transactions, F4_CONFIG)
        sink = io.StringIO()
        write_rules_csv(rules, sink)
        loaded = read_rules_csv(io.StringIO(sink.getvalue()))
        assert loaded == rules

    def test_infinite_conviction_is_empty_cell(self):
        rule = AssociationRule(
            antecedent=frozenset({"a"}),
            consequent=frozenset({"b"}),
            support=0.5,
            confidence=1.0,
            lift=2.0,
            leverage=0.25,
            conviction=math.inf,
        )
        sink = io.StringIO()
        write_rules_csv([rule], sink)
        line = sink.getvalue().splitlines()[1]
        assert line.endswith(",")
        assert math.isinf(read_rules_csv(io.StringIO(sink.getvalue()))[0].conviction)

    def test_malformed_header_rejected(self):
        with pytest.raises(ValueError, match="header"):
            read_rules_csv(io.StringIO("a,b\n"))


class TestBasketCsv:
    def test_rows_become_transactions(self):
        text = "eggs,milk\nbread\n\nmilk,,bread\n"
        transactions, universe = load_basket_transactions(io.StringIO(text))
        assert transactions == [
            frozenset({"eggs", "milk"}),
            frozenset({"bread"}),
            frozenset({"milk", "bread"}),
        ]
        assert universe == ["bread", "eggs", "milk"]
