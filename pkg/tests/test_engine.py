import pytest

from lockgraph.absint import (
    BOTTOM, AnalysisMode, Summary, SummaryStore, acquire, analyze_function, analyze_program, release, solve,
)
from lockgraph.absint.engine import loop_heads
from lockgraph.frontend import parse_minic
from lockgraph.ir import AccessPath, Event, EventKind, FunctionDef, If, Program, While, build_cfg

P = AccessPath.parse


def summaries(source, mode=1, jobs=1):
    program, diags = parse_minic(source)
    assert program is not None, diags
    return analyze_program(program, AnalysisMode(mode), jobs)


def basic_transfer(event, s):
    if event.kind is EventKind.ACQUIRE:
        return acquire(event.lock, s)
    if event.kind is EventKind.RELEASE:
        return release(event.lock, s)
    return s


class TestSolve:
    def test_straight_line(self):
        cfg = build_cfg((Event.acquire(P("a")), Event.acquire(P("b"))))
        result = solve(cfg, basic_transfer)
        assert result.exit_state.lockset == {P("a"), P("b")}

    def test_branches_join(self):
        cfg = build_cfg((If((Event.acquire(P("a")),), (Event.acquire(P("b")),)),))
        assert solve(cfg, basic_transfer).exit_state.lockset == {P("a"), P("b")}

    def test_loop_terminates_with_may_information(self):
        body = (While((Event.acquire(P("a")), Event.release(P("a")), Event.acquire(P("b")))),)
        result = solve(build_cfg(body), basic_transfer)
        out = result.exit_state
        assert out.lockset == {P("b")}
        assert (P("b"), P("a")) in {(a, b) for a, b, _ in out.deps}
        assert max(result.visits.values()) <= 3

    def test_entry_states_only_grow(self):
        cfg = build_cfg((While((If((Event.acquire(P("a")),), (Event.release(P("a")),)),)),))
        result = solve(cfg, basic_transfer)
        assert result.entry_states[cfg.entry] == BOTTOM

    def test_loop_heads(self):
        cfg = build_cfg((While((Event.nop(),)), While((Event.nop(),))))
        assert len(loop_heads(cfg)) == 2
        assert loop_heads(build_cfg((Event.nop(),))) == frozenset()


class TestSummaryStore:
    def test_single_insertion(self):
        store = SummaryStore()
        store.put("f", Summary())
        assert "f" in store and store.get("f") == Summary()
        with pytest.raises(KeyError):
            store.put("f", Summary())
        assert store.get("g") is None


class TestProgram:
    def test_each_function_once(self):
        analysis = summaries("""
            void c(void) { lock(&A); unlock(&A); }
            void b(void) { c(); c(); }
            void a(void) { b(); c(); }
        """)
        assert dict(analysis.fixpoints) == {"a": 1, "b": 1, "c": 1}

    def test_summaries_flow_bottom_up(self):
        analysis = summaries("""
            void inner(void) { lock(&B); unlock(&B); }
            void outer(void) { lock(&A); inner(); unlock(&A); }
        """)
        deps = {(str(d.from_), str(d.to)) for d in analysis.summaries["outer"].deps}
        assert deps == {("A", "B")}

    def test_recursion_is_skipped_without_warning(self):
        analysis = summaries("""
            void even(void) { lock(&A); odd(); unlock(&A); }
            void odd(void) { lock(&B); even(); unlock(&B); }
        """)
        assert set(analysis.summaries) == {"even", "odd"}
        assert not analysis.diagnostics
        # `even` is analysed first and sees no summary; `odd` uses even's.
        odd_deps = {(str(d.from_), str(d.to)) for d in analysis.summaries["odd"].deps}
        assert odd_deps == {("B", "A")}
        assert not analysis.summaries["even"].deps

    def test_undefined_callee_warns(self):
        program = Program({"f": FunctionDef("f", (), (Event.call("ghost"),))})
        analysis = analyze_program(program)
        assert len(analysis.diagnostics) == 1
        assert "ghost" in analysis.diagnostics[0].message

    def test_arity_mismatch_warns(self):
        program = Program({
            "g": FunctionDef("g", ("m",), (Event.acquire(P("m")),)),
            "f": FunctionDef("f", (), (Event.call("g", [P("a"), P("b")]),)),
        })
        analysis = analyze_program(program)
        assert any("ignored" in d.message for d in analysis.diagnostics)

    def test_parallel_levels_match_serial(self):
        source = "\n".join(
            f"void w{i}(void) {{ lock(&L{i}); lock(&L{(i + 1) % 5}); unlock(&L{(i + 1) % 5}); unlock(&L{i}); }}"
            for i in range(5)) + "\nvoid top(void) { w0(); w1(); w2(); w3(); w4(); }"
        serial, parallel = summaries(source), summaries(source, jobs=4)
        assert serial.summaries == parallel.summaries
        assert serial.fixpoints == parallel.fixpoints

    def test_analyze_function_with_given_store(self):
        fn = FunctionDef("f", (), (Event.acquire(P("A")), Event.call("g"), Event.release(P("A"))))
        g = Summary(were_locked=frozenset({P("B")}))
        chi = analyze_function(fn, {"g": g})
        assert {(str(d.from_), str(d.to)) for d in chi.deps} == {("A", "B")}

    def test_mode_changes_trap_outcome(self, corpus_dir):
        source = (corpus_dir / "safe" / "s06_trap_correlated.c").read_text()
        m1 = summaries(source, 1).summaries["ta"]
        m2 = summaries(source, 2).summaries["ta"]
        assert (P("B"), P("A")) not in {(d.from_, d.to) for d in m1.deps}
        assert (P("B"), P("A")) in {(d.from_, d.to) for d in m2.deps}


def test_simple_loop_summary():
    analysis = summaries("void f(void) { while (c) { lock(&a); unlock(&a); } }")
    chi = analysis.summaries["f"]
    assert chi.lockset == frozenset() and chi.unlockset == {P("a")}
    assert chi.were_locked == {P("a")} and not chi.deps
    program, _ = parse_minic("void f(void) { while (c) { lock(&a); unlock(&a); } }")
    result = solve(program.functions["f"].cfg, basic_transfer)
    assert max(result.visits.values()) <= 3
