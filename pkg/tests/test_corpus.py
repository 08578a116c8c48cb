import io
import json
import random
import time

import pytest

from interleaving import oracle_for_file
from lockgraph import corpus
from lockgraph.corpus import CorpusManifest, ManifestError, render_stats, run_corpus, run_corpus_command
from lockgraph.pipeline import RunConfig, run_pipeline


@pytest.fixture
def manifest(corpus_dir):
    return CorpusManifest.load(corpus_dir / "manifest.json")


def test_bundled_corpus_mode1(manifest):
    stats, code = run_corpus(manifest, RunConfig())
    assert code == 0
    assert (stats.true_positives, stats.false_positives, stats.false_negatives) == (8, 0, 0)
    assert (stats.claimed_safe, stats.raising_alarms, stats.failed_to_analyse) == (23, 8, 1)
    assert stats.claimed_safe + stats.raising_alarms + stats.failed_to_analyse == len(manifest.entries)


def test_bundled_corpus_mode2(manifest):
    m1, _ = run_corpus(manifest, RunConfig(mode=1))
    m2, code = run_corpus(manifest, RunConfig(mode=2))
    assert m2.raising_alarms >= m1.raising_alarms
    # The three double-lock traps become false positives without the heuristic.
    assert (m2.true_positives, m2.false_positives, m2.false_negatives) == (8, 3, 0)
    assert code == 1
    flagged = sorted(r.path for r in m2.results if not r.matches)
    assert flagged == ["safe/s06_trap_correlated.c", "safe/s07_trap_call.c", "safe/s08_trap_helpers.c"]


def test_safe_programs_have_no_reachable_deadlock(corpus_dir):
    entries = json.loads((corpus_dir / "manifest.json").read_text())
    for e in entries:
        if e["expected"] == "safe":
            assert oracle_for_file(corpus_dir / e["path"]) == set(), e["path"]


def test_gate_filter_matters_only_for_gate_programs(corpus_dir):
    gated = {"s02_gate_lock.c", "s22_gate_struct.c"}
    for path in sorted((corpus_dir / "safe").glob("*.c")):
        alarms = run_pipeline([str(path)], RunConfig(gate_filter=False)).alarms
        assert bool(alarms) == (path.name in gated), path.name


def test_empty_manifest(tmp_path):
    (tmp_path / "m.json").write_text("[]")
    out, err = io.StringIO(), io.StringIO()
    assert run_corpus_command(str(tmp_path / "m.json"), RunConfig(), out, err) == 0
    lines = out.getvalue().splitlines()
    assert lines[-3:] == ["claimed-safe  alarms  failed  TP  FP  FN",
                          "           0       0       0   0   0   0",
                          "mismatches: 0"]
    assert "wall time" in err.getvalue()


def test_missing_program_counts_as_failed(tmp_path):
    (tmp_path / "m.json").write_text(json.dumps([{"path": "gone.c", "expected": "safe"}]))
    stats, code = run_corpus(CorpusManifest.load(tmp_path / "m.json"), RunConfig())
    assert stats.failed_to_analyse == 1 and code == 1
    assert stats.results[0].reason == "missing file"


@pytest.mark.parametrize("doc, message", [
    ({"path": "x"}, "JSON array"),
    ([{"path": "x.c"}], "entry 0"),
    ([{"path": "x.c", "expected": "maybe"}], "entry 0"),
    ([{"path": "x.c", "expected": "safe", "more": 1}], "entry 0"),
])
def test_bad_manifest(doc, message):
    with pytest.raises(ManifestError, match=message):
        CorpusManifest.from_json(doc)


def test_unreadable_manifest(tmp_path):
    err = io.StringIO()
    assert run_corpus_command(str(tmp_path / "none.json"), RunConfig(), io.StringIO(), err) == 2
    assert "none.json" in err.getvalue()
    (tmp_path / "bad.json").write_text("[")
    assert run_corpus_command(str(tmp_path / "bad.json"), RunConfig(), io.StringIO(), err) == 2


def test_permutation_invariance(manifest):
    base, _ = run_corpus(manifest, RunConfig())
    entries = list(manifest.entries)
    random.Random(7).shuffle(entries)
    shuffled, _ = run_corpus(CorpusManifest(tuple(entries), manifest.root), RunConfig())
    by_path = {r.path: r for r in base.results}
    assert all(by_path[r.path] == r for r in shuffled.results)
    counts = lambda s: (s.claimed_safe, s.raising_alarms, s.failed_to_analyse,
                        s.true_positives, s.false_positives, s.false_negatives)
    assert counts(base) == counts(shuffled)


def test_parallel_matches_serial(manifest):
    serial, _ = run_corpus(manifest, RunConfig())
    parallel, _ = run_corpus(manifest, RunConfig(jobs=3))
    assert serial.results == parallel.results
    assert render_stats(serial, "json") == render_stats(parallel, "json")


def test_timeout_counts_as_failed(manifest, monkeypatch):
    def slow(paths, cfg):
        time.sleep(2)

    monkeypatch.setattr(corpus, "run_pipeline", slow)
    first = CorpusManifest(manifest.entries[:1], manifest.root)
    stats, code = run_corpus(first, RunConfig(timeout=0.05))
    assert stats.failed_to_analyse == 1 and code == 1
    assert stats.results[0].reason.startswith("timeout")


def test_json_stats(manifest):
    stats, _ = run_corpus(manifest, RunConfig())
    doc = json.loads(render_stats(stats, "json"))
    assert doc["stats"]["true_positives"] == 8
    fail = next(e for e in doc["entries"] if e["expected"] == "parse_fail")
    assert fail["outcome"] == "failed" and "syntax error" in fail["reason"] and fail["match"]
    assert "wall" not in json.dumps(doc)
