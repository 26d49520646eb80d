from __future__ import annotations

import random
from importlib import resources

import pytest

from foldesk.cli import EXIT_FAIL, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, main
from foldesk.export import parse_dimacs
from foldesk.prover import Sat, dpll
from foldesk.syntax import Not, parse_formula, to_text

from oracles import PROP_NAMES, clauses_satisfiable, random_prop, signature, tt_valid

DEMO = str(resources.files("foldesk") / "data" / "demo.lgd")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_valid_exit_codes(capsys):
    assert run(capsys, "valid", "(p ; ~p)")[:2] == (EXIT_OK, "*Valid*\n")
    code, out, _ = run(capsys, "valid", "--show-model", "p")
    assert code == EXIT_FAIL and out.startswith("*Not valid*") and "domain size" in out
    assert run(capsys, "valid", "ex2(p, p(a))")[:2] == (EXIT_UNKNOWN, "*Failed to validate*\n")


def test_usage_errors(capsys):
    code, _, err = run(capsys, "valid", "(p(")
    assert code == EXIT_USAGE and err.startswith("error:")
    assert main([]) == EXIT_USAGE
    assert run(capsys, "process", "/nonexistent/doc.lgd")[0] == EXIT_USAGE
    assert run(capsys, "ipol", "p")[0] == EXIT_USAGE


def test_elimination_failure_exit_code(capsys):
    code, _, err = run(capsys, "elim", "ex2(p, (p(a), all(x, (p(x) -> p(f(x)))), ~p(b)))")
    assert code == EXIT_FAIL and "elimination failed" in err
    assert run(capsys, "elim", "ex2(p, (p(a), ~p(a)))")[:2] == (EXIT_OK, "false\n")


def test_expand_with_loaded_macros(capsys):
    code, out, _ = run(capsys, "expand", "--load", DEMO, "circ(p, p(a))")
    assert code == EXIT_OK
    assert out == "p(a), ~ex2(q, (q(a), all(x, (q(x) -> p(x))), ~all(x, (p(x) -> q(x)))))\n"


def test_ipol_and_elim_commands(capsys):
    code, out, _ = run(capsys, "ipol", "(all(x, p(a, x)), q) -> (ex(x, p(x, b)) ; r)")
    assert code == EXIT_OK
    assert set(signature(parse_formula(out))[0]) == {"p"}
    code, out, _ = run(capsys, "elim", "--load", DEMO, "explanation(kb1, [wet], wet(shoes))")
    assert code == EXIT_OK and "rained_last_night" in out and "sprinkler_was_on" in out


def test_tptp_export(capsys):
    assert run(capsys, "export", "tptp", "p")[1] == "fof(f1, axiom, p).\n"
    out = run(capsys, "export", "tptp", "(all(x, p(a, x)), q)")[1]
    assert out == "fof(f1, axiom, (! [X] : p(a,X)) & q).\n"
    out = run(capsys, "export", "tptp", "--role", "conjecture", "--name", "g", "p")[1]
    assert out == "fof(g, conjecture, p).\n"


def test_dimacs_export(capsys):
    assert run(capsys, "export", "dimacs", "--no-mapping", "(p ; ~q)")[1] == "p cnf 2 1\n1 -2 0\n"
    out = run(capsys, "export", "dimacs", "(p ; ~q)")[1]
    assert out == "c 1 p\nc 2 q\np cnf 2 1\n1 -2 0\n"
    assert run(capsys, "export", "dimacs", "p(a)")[0] == EXIT_USAGE


@pytest.mark.parametrize("seed", range(25))
def test_dimacs_round_trip_agrees_with_dpll(capsys, seed):
    f = random_prop(random.Random(seed))
    code, out, _ = run(capsys, "export", "dimacs", to_text(f))
    assert code == EXIT_OK
    clauses, names = parse_dimacs(out)
    assert set(names.values()) <= set(PROP_NAMES)
    sat = not tt_valid(Not(f))
    assert isinstance(dpll(clauses), Sat) == clauses_satisfiable(clauses) == sat


def test_process_writes_file(tmp_path, capsys):
    out = tmp_path / "demo.tex"
    assert run(capsys, "process", DEMO, "--out", str(out))[0] == EXIT_OK
    assert out.read_text(encoding="utf-8").startswith("\\section*{Knowledge base}")
    assert run(capsys, "process", DEMO, "--standalone", "--out", str(out))[0] == EXIT_OK
    assert out.read_text(encoding="utf-8").startswith("\\documentclass")
