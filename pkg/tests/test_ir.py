import pytest

from lockgraph import ir
from lockgraph.ir import AccessPath, Event, EventKind, FunctionDef, If, Program, While, build_cfg

P = AccessPath.parse


class TestAccessPath:
    def test_parse_and_print(self):
        p = P("dev.lock.inner")
        assert p == AccessPath("dev", ("lock", "inner"))
        assert str(p) == "dev.lock.inner"

    @pytest.mark.parametrize("text", ["", "a..b", "1x", "a.b c", "a[0]"])
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            P(text)

    def test_syntactic_equality(self):
        assert ir.path_equal(P("a.b"), AccessPath("a", ["b"]))
        assert P("a.b") != P("a.c")
        assert P("a") != P("a.b")

    def test_substitute_keeps_selectors(self):
        binding = {"m": P("dev.mu")}
        assert ir.substitute(P("m.inner"), binding) == P("dev.mu.inner")
        assert ir.substitute(P("g"), binding) == P("g")


class TestEvent:
    def test_factories(self):
        assert Event.acquire(P("a")).kind is EventKind.ACQUIRE
        assert str(Event.release(P("a"))) == "unlock a"
        assert str(Event.call("f", [P("x"), P("y.z")])) == "call f(x, y.z)"
        assert str(Event.nop()) == "nop"

    def test_invalid_operands(self):
        with pytest.raises(ValueError):
            Event(EventKind.ACQUIRE)
        with pytest.raises(ValueError):
            Event(EventKind.CALL, lock=P("a"), callee="f")
        with pytest.raises(ValueError):
            Event(EventKind.NOP, lock=P("a"))


def test_iter_events_in_source_order():
    a, b, c = (Event.acquire(P(n)) for n in "abc")
    body = (a, If((b,), (c,)), While((Event.release(P("a")),)))
    assert [str(e) for e in ir.iter_events(body)] == ["lock a", "lock b", "lock c", "unlock a"]


class TestCfg:
    def test_straight_line(self):
        cfg = build_cfg((Event.acquire(P("a")), Event.release(P("a"))))
        assert len(cfg.nodes) == 2
        assert cfg.edges == {(cfg.entry, cfg.exit)}
        assert [str(e) for e in cfg.events()] == ["lock a", "unlock a"]

    def test_if_else(self):
        cfg = build_cfg((If((Event.acquire(P("a")),), (Event.acquire(P("b")),)),))
        assert len(cfg.nodes) == 4
        assert len(cfg.edges) == 4
        assert len(cfg.successors(cfg.entry)) == 2
        assert len(cfg.predecessors(cfg.exit)) == 2

    def test_loop_has_back_edge(self):
        cfg = build_cfg((While((Event.acquire(P("a")), Event.release(P("a")))),))
        body = next(n for n, evs in cfg.nodes.items() if evs)
        (head,) = cfg.successors(body)
        assert body in cfg.successors(head)
        assert cfg.exit in cfg.successors(head)

    def test_return_and_dead_code(self):
        body = (If((ir.Return(),), ()), Event.acquire(P("a")), ir.Return(), Event.acquire(P("dead")))
        cfg = build_cfg(body)
        assert "lock dead" not in [str(e) for e in cfg.events()]
        assert cfg.exit in cfg.successors(cfg.entry)

    def test_break_and_continue(self):
        loop = While((If((ir.Break(),), (ir.Continue(),)), Event.acquire(P("never"))))
        cfg = build_cfg((loop, Event.acquire(P("after"))))
        events = [str(e) for e in cfg.events()]
        assert "lock never" not in events
        assert "lock after" in events

    def test_jump_outside_loop_rejected(self):
        with pytest.raises(ValueError):
            build_cfg((ir.Break(),))

    def test_empty_body(self):
        cfg = build_cfg(())
        assert cfg.entry != cfg.exit
        assert cfg.edges == {(cfg.entry, cfg.exit)}

    def test_numbering_is_deterministic(self):
        body = (If((Event.acquire(P("a")),), (Event.acquire(P("b")),)), While((Event.nop(),)))
        assert build_cfg(body) == build_cfg(body)


class TestFunctionDef:
    def test_duplicate_formals(self):
        with pytest.raises(ValueError):
            FunctionDef("f", ("x", "x"))

    def test_calls(self):
        fn = FunctionDef("f", (), (Event.call("g"), If((Event.call("h"),), ())))
        assert [e.callee for e in fn.calls()] == ["g", "h"]

    def test_program_equality_ignores_mapping_type(self):
        fn = FunctionDef("f")
        assert Program({"f": fn}) == Program(dict([("f", fn)]))
        assert Program({"f": fn}) != Program({"f": fn}, frozenset({"L"}))
