import pytest

from cantortopo.closed import SafetyAutomaton
from cantortopo.spec_format import ParseError, SemanticError, parse_spec


def test_bundled_corpus_contents(model):
    assert {"full", "empty", "no11", "point0", "comb", "cyl11", "embX", "injX"} <= set(model.closed)
    assert set(model.regsets) == {"Efin1", "both"}
    assert set(model.transducers) == {"identity", "shift", "latch", "embedshift", "embinj", "scramble"}
    assert set(model.tables) == {"nowhere"}
    assert model.closed["cyl11"] == SafetyAutomaton.cylinder("11")


def test_round_trip(model):
    again = parse_spec(model.to_text())
    assert again.closed == model.closed
    assert again.regsets == model.regsets
    assert again.transducers == model.transducers
    assert again.tables == model.tables
    assert again.sets == model.sets
    assert again.to_text() == model.to_text()


def test_set_expressions(model):
    e = model.eval_set("diff(cyl(0),closed:point0)")
    assert model.eval_set("compl(compl(cyl(0)))") == model.eval_set("cyl(0)")
    from cantortopo.omega import closure

    assert closure(e) == SafetyAutomaton.cylinder("0")
    assert closure(model.eval_set("cyl(eps)")).is_full()


def test_forward_references_and_comments():
    m = parse_spec(
        """
        # transducer before its domain
        transducer t
        state a init
        edge a 0 a 1   # flip
        edge a 1 a 0
        domain d
        safety d
        state s init
        edge s 0 s
        """
    )
    assert m.transducers["t"].domain == m.closed["d"]


@pytest.mark.parametrize(
    "text,error,fragment",
    [
        ("edge a 0 a", ParseError, "outside of a block"),
        ("safety s\nstate a init\nedge a 2 a", ParseError, "malformed edge"),
        ("safety s\nstate a init\nstate a", ParseError, "duplicate state"),
        ("safety s\nstate a init\nedge a 0 b", ParseError, "undeclared state"),
        ("safety s\nstate a init\nedge a 0 a\nedge a 0 a", ParseError, "nondeterministic"),
        ("safety s\nstate a", SemanticError, "no init"),
        ("regset r\nstate a init\nedge a 0 a\naccept true", SemanticError, "non-total"),
        ("regset r\nstate a init\nedge a 0 a\nedge a 1 a\naccept inf(b)", SemanticError, "unknown state"),
        ("regset r\nstate a init\nedge a 0 a\nedge a 1 a\naccept inf(a) and", ParseError, "line 5"),
        ("transducer t\nstate a init\nedge a 0 a eps\nedge a 1 a eps\ndomain full", SemanticError, "non-productive"),
        ("transducer t\nstate a init\nedge a 0 a 0\nedge a 1 a 1\ndomain nope", SemanticError, "undefined closed set"),
        ("table x\ndepth 1\nresolution 1\nstage 1\nmap 0 1\nmap 1 0\nmap eps 1", SemanticError, "non-monotone"),
        ("table x\ndepth 1\nstage 1\nmap 0 1", SemanticError, "resolution"),
        ("set q union(cyl(0),closed:zz)", SemanticError, "undefined closed set"),
        ("set q union(cyl(0)", SemanticError, "end of set expression"),
    ],
)
def test_errors(text, error, fragment):
    with pytest.raises(error) as info:
        parse_spec(text)
    assert fragment in str(info.value)


def test_contradiction_evaluates_to_empty(model):
    from cantortopo.omega import is_empty_omega

    assert is_empty_omega(model.eval_set("inter(cyl(0), compl(cyl(0)))"))
