import io
from datetime import datetime

import pytest

from atrs.history import HistoryStore, load_history, record_search
from atrs.mining import MiningConfig
from atrs.recommender import (
    Advice,
    Engine,
    RecommenderConfig,
    advise,
    format_advice,
    load_engine,
    run_repl,
)

from conftest import CATALOG_PATH, F4_TRANSACTIONS, VECTORS_PATH

NOW = datetime(2023, 7, 31, 13, 0, 39)


def f4_store(record_in_catalog: bool = False) -> HistoryStore:
    store = HistoryStore(record_in_catalog=True)
    for t in F4_TRANSACTIONS:
        record_search(store, sorted(t), now=NOW, in_catalog=False)
    store.record_in_catalog = record_in_catalog
    return store


@pytest.fixture()
def engine(catalog, vec_table):
    return Engine(catalog, vec_table, f4_store(), clock=lambda: NOW)


class TestAdvise:
    def test_ipod_against_f4_history(self, engine):
        advice = engine.advise("ipod")
        names = {si.item.name for si in advice.rule_recommendations}
        assert "piano" in names and "coffee" in names
        assert advice.exact is not None and advice.exact.name == "ipod"

    def test_all_oov_query_gives_empty_lists(self, engine):
        advice = engine.advise("zzz qqq")
        assert advice.similar == []
        assert advice.rule_recommendations == []
        assert advice.exact is None

    def test_empty_history_no_rules(self, catalog, vec_table):
        engine = Engine(catalog, vec_table, HistoryStore(), clock=lambda: NOW)
        advice = engine.advise("ipod")
        assert advice.rule_recommendations == []
        assert len(advice.similar) == 5

    def test_recommendations_subset_of_rule_items(self, engine):
        rule_items = set()
        for rule in engine.rules:
            rule_items |= rule.mentioned_items()
        advice = engine.advise("coffee")
        assert {si.item.name for si in advice.rule_recommendations} <= rule_items

    def test_deterministic(self, catalog, vec_table):
        runs = []
        for _ in range(2):
            engine = Engine(catalog, vec_table, f4_store(), clock=lambda: NOW)
            advice = engine.advise("ipod", record=False)
            runs.append(
                (
                    [it.name for it in advice.partials],
                    [(si.item.name, si.score) for si in advice.similar],
                    [(si.item.name, si.score) for si in advice.rule_recommendations],
                )
            )
        assert runs[0] == runs[1]

    def test_verdict_matches_catalog_row(self, engine, catalog):
        advice = engine.advise("tear gas")
        assert advice.exact.prohibited is True
        assert advice.exact.carry_on is False and advice.exact.check_in is False

    def test_truncated_to_top_n(self, catalog, vec_table):
        engine = Engine(
            catalog, vec_table, f4_store(), RecommenderConfig(top_n=2), clock=lambda: NOW
        )
        advice = engine.advise("coffee")
        assert len(advice.similar) <= 2
        assert len(advice.rule_recommendations) <= 2

    def test_non_catalog_candidate_gets_neutral_item(self, catalog, vec_table):
        store = HistoryStore(record_in_catalog=True)
        # rule links a catalog item with a name the catalog does not know
        record_search(store, ["coffee", "green tea latte"], now=NOW, in_catalog=False)
        record_search(store, ["coffee", "green tea latte"], now=NOW, in_catalog=False)
        engine = Engine(catalog, vec_table, store, clock=lambda: NOW)
        advice = engine.advise("coffee")
        by_name = {si.item.name: si.item for si in advice.rule_recommendations}
        assert "green tea latte" in by_name
        ghost = by_name["green tea latte"]
        assert (ghost.carry_on, ghost.check_in, ghost.prohibited) == (False, False, False)
        assert ghost.category == ""


class TestRecordingPolicy:
    def test_catalog_hit_not_recorded_by_default(self, engine):
        before = len(engine.store)
        advice = engine.advise("ipod")
        assert advice.recorded is False
        assert len(engine.store) == before

    def test_unknown_query_recorded(self, engine):
        advice = engine.advise("warp core")
        assert advice.recorded is True
        assert engine.store.sessions[-1].items == ("warp core",)

    def test_record_false_never_appends(self, engine):
        before = len(engine.store)
        advice = engine.advise("warp core", record=False)
        assert advice.recorded is False
        assert len(engine.store) == before

    def test_record_in_catalog_flag(self, catalog, vec_table):
        engine = Engine(catalog, vec_table, f4_store(record_in_catalog=True), clock=lambda: NOW)
        advice = engine.advise("ipod")
        assert advice.recorded is True


class TestEngine:
    def test_remine_cadence(self, catalog, vec_table):
        store = HistoryStore()
        config = RecommenderConfig(remine_every=2, mining=MiningConfig(min_support=0.1))
        engine = Engine(catalog, vec_table, store, config, clock=lambda: NOW)
        engine.advise("plasma lamp")
        assert engine.rules == []  # first append: not yet re-mined
        engine.advise("plasma coil")
        # second append triggers the refresh; both sessions share 'plasma'... no
        # multi-item sessions yet, so still no rules, but universe refreshed
        assert engine.universe == ["plasma coil", "plasma lamp"]

    def test_refresh_after_every_append_by_default(self, catalog, vec_table):
        engine = Engine(catalog, vec_table, HistoryStore(), clock=lambda: NOW)
        engine.record_items(["warp core", "plasma coil"])
        engine.record_items(["warp core", "plasma coil"])
        assert any(
            rule.mentioned_items() == {"warp core", "plasma coil"} for rule in engine.rules
        )

    def test_record_items_skips_all_known(self, catalog, vec_table):
        engine = Engine(catalog, vec_table, HistoryStore(), clock=lambda: NOW)
        assert engine.record_items(["ipod", "piano"]) is None
        assert engine.record_items(["ipod", "warp core"]) is not None

    def test_persists_on_append(self, catalog, vec_table, tmp_path):
        path = tmp_path / "history.csv"
        engine = Engine(catalog, vec_table, HistoryStore(), history_path=path, clock=lambda: NOW)
        engine.advise("warp core")
        store = load_history(io.StringIO(path.read_text(encoding="utf-8")))
        assert store.sessions[0].items == ("warp core",)

    def test_concurrent_advises_lose_no_appends(self, catalog, vec_table, tmp_path):
        import threading

        path = tmp_path / "history.csv"
        engine = Engine(catalog, vec_table, HistoryStore(), history_path=path, clock=lambda: NOW)
        threads = [
            threading.Thread(target=engine.advise, args=(f"unknown gadget {k}",))
            for k in range(16)
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert len(engine.store) == 16
        indices = [s.index for s in engine.store.sessions]
        assert indices == list(range(16))
        with open(path, encoding="utf-8") as fh:
            assert len(load_history(fh).sessions) == 16


class TestFormatAdvice:
    def test_verdict_line(self, engine):
        text = format_advice(engine.advise("piano", record=False))
        assert "carry on: yes | check in: yes | prohibited: no" in text
        assert "category: instruments" in text

    def test_no_exact_match(self, engine):
        text = format_advice(engine.advise("warp core", record=False))
        assert "no exact match" in text

    def test_scores_shown_to_four_decimals(self, engine):
        advice = engine.advise("piano", record=False)
        text = format_advice(advice)
        assert f"{advice.similar[0].score:.4f}" in text

    def test_prohibited_suggestions_carry_a_marker(self, engine):
        advice = engine.advise("gel ice packs", record=False)
        text = format_advice(advice)
        prohibited = [si.item.name for si in advice.similar if si.item.prohibited]
        assert "tear gas" in prohibited
        assert any("tear gas" in line and "[prohibited]" in line for line in text.splitlines())


class TestRepl:
    def run(self, lines, tmp_path, history_name="history.csv"):
        history = tmp_path / history_name
        out = io.StringIO()
        status = run_repl(
            catalog_path=CATALOG_PATH,
            embeddings_path=VECTORS_PATH,
            history_path=history,
            stdin=io.StringIO(lines),
            stdout=out,
        )
        return status, out.getvalue(), history

    def test_piano_session(self, tmp_path):
        status, output, _ = self.run("piano\nexit\n", tmp_path)
        assert status == 0
        assert "carry on: yes | check in: yes | prohibited: no" in output
        assert "instruments" in output

    def test_exit_only_leaves_history_untouched(self, tmp_path):
        status, _, history = self.run("exit\n", tmp_path)
        assert status == 0
        assert not history.exists()

    def test_scripted_session_records_non_catalog_only(self, tmp_path):
        status, _, history = self.run("ipod\nwarp core\npiano\nexit\n", tmp_path)
        assert status == 0
        with open(history, encoding="utf-8") as fh:
            store = load_history(fh)
        assert [s.items for s in store.sessions] == [("warp core",)]

    def test_unreadable_catalog_fails_with_diagnostic(self, tmp_path, capsys):
        status = run_repl(
            catalog_path=tmp_path / "missing.csv",
            embeddings_path=VECTORS_PATH,
            history_path=tmp_path / "h.csv",
            stdin=io.StringIO("exit\n"),
            stdout=io.StringIO(),
        )
        assert status != 0
        assert "error" in capsys.readouterr().err

    def test_eof_is_clean_exit(self, tmp_path):
        status, _, _ = self.run("", tmp_path)
        assert status == 0
