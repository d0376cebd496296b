import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwnull.algebra import parse_system
from gwnull.cli import (
    EXIT_INCONCLUSIVE,
    EXIT_INPUT,
    EXIT_OK,
    InstanceError,
    main,
    parse_instance,
    selftest,
    serialize_instance,
    suite_degree_zero,
    suite_divisor,
    suite_p1,
)
from gwnull.symgrp import FlagShape, Permutation

P1_PT = '{"n": 2, "d": [1], "u": [2, 1], "v": [2, 1], "w": [2, 1]}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_instance_examples():
    inst = parse_instance(P1_PT)
    assert inst.shape == FlagShape(2, (1,)) and inst.degree == (1,)
    inst = parse_instance('{"n": 3, "a": [1], "d": [1], "u": [2,1,3], "v": [2,1,3], "w": [2,1,3]}')
    assert inst.shape.a == (1,)


@pytest.mark.parametrize(
    "text, field, fragment",
    [
        ("{", "json", "malformed"),
        ("[1]", "json", "object"),
        ('{"n": 1, "d": [], "u": [1], "v": [1], "w": [1]}', "n", "at least 2"),
        ('{"n": "3", "d": [0,0], "u": [1,2,3], "v": [1,2,3], "w": [1,2,3]}', "n", "integer"),
        ('{"n": 3, "a": [2, 1], "d": [0,0], "u": [1,2,3], "v": [1,2,3], "w": [1,2,3]}', "a", "strictly increasing"),
        ('{"n": 3, "d": [0], "u": [1,2,3], "v": [1,2,3], "w": [1,2,3]}', "d", "has length 1 but a has length 2"),
        ('{"n": 3, "d": [0,-1], "u": [1,2,3], "v": [1,2,3], "w": [1,2,3]}', "d", "non-negative"),
        ('{"n": 3, "d": [0,0], "u": [1,1,3], "v": [1,2,3], "w": [1,2,3]}', "u", "not a bijection"),
        ('{"n": 3, "d": [0,0], "u": [1,2,3], "v": [1,2], "w": [1,2,3]}', "v", "has length 2"),
    ],
)
def test_parse_instance_errors(text, field, fragment):
    with pytest.raises(InstanceError) as e:
        parse_instance(text)
    assert e.value.field == field and fragment in e.value.reason


@settings(max_examples=50, deadline=None)
@given(
    n=st.integers(2, 5),
    data=st.data(),
)
def test_serialize_round_trip(n, data):
    a = sorted(data.draw(st.sets(st.integers(1, n - 1), min_size=1)))
    d = data.draw(st.lists(st.integers(0, 3), min_size=len(a), max_size=len(a)))
    perms = [Permutation(tuple(data.draw(st.permutations(range(1, n + 1))))) for _ in range(3)]
    doc = {"n": n, "a": a, "d": d, "u": perms[0].to_json(), "v": perms[1].to_json(), "w": perms[2].to_json()}
    inst = parse_instance(json.dumps(doc))
    assert parse_instance(serialize_instance(inst)) == inst


def test_decide_exit_ok_and_json(capsys):
    code, out, _ = run(capsys, "decide", P1_PT)
    assert code == EXIT_OK
    assert json.loads(out)["decision"] == "NONVANISHING"


def test_decide_input_error_exit(capsys):
    code, out, err = run(capsys, "decide", '{"n": 1, "d": [], "u": [1], "v": [1], "w": [1]}')
    assert code == EXIT_INPUT and out == "" and "n:" in err


def test_usage_error_exit(capsys):
    with pytest.raises(SystemExit) as e:
        main(["decide"])
    assert e.value.code == EXIT_INPUT


def test_decide_inconclusive_exit(capsys):
    inst = '{"n": 3, "d": [0,0], "u": [2,1,3], "v": [2,1,3], "w": [1,3,2]}'
    code, out, _ = run(capsys, "decide", inst, "--budget", "1")
    assert code == EXIT_INCONCLUSIVE and json.loads(out)["decision"] == "INCONCLUSIVE"


def test_decide_from_file_and_stdin(tmp_path, capsys, monkeypatch):
    f = tmp_path / "inst.json"
    f.write_text(P1_PT)
    code, out, _ = run(capsys, "decide", str(f))
    assert code == EXIT_OK
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(P1_PT))
    code, out2, _ = run(capsys, "decide", "-")
    assert out2 == out


def test_reruns_are_byte_identical(capsys):
    _, a, _ = run(capsys, "decide", P1_PT)
    _, b, _ = run(capsys, "decide", P1_PT)
    assert a == b


def test_seed_env_and_flag(capsys, monkeypatch):
    monkeypatch.setenv("GWNULL_SEED", "17")
    _, out, _ = run(capsys, "decide", P1_PT)
    assert json.loads(out)["seed"] == 17
    _, out, _ = run(capsys, "decide", P1_PT, "--seed", "3")
    assert json.loads(out)["seed"] == 3
    monkeypatch.setenv("GWNULL_SEED", "abc")
    code, _, err = run(capsys, "decide", P1_PT)
    assert code == EXIT_INPUT and "GWNULL_SEED" in err


def test_emit_system_reparses(tmp_path, capsys):
    out = tmp_path / "sys.txt"
    inst = '{"n": 3, "d": [1,0], "u": [3,1,2], "v": [2,1,3], "w": [3,1,2]}'
    code, _, _ = run(capsys, "decide", inst, "--emit-system", str(out))
    assert code == EXIT_OK
    text = out.read_text()
    back = parse_system(text)
    side = json.loads((tmp_path / "sys.txt.json").read_text())
    assert len(back.polys) == len(side["families"])
    assert set(back.registry.names) == set(side["variables"])
    code, built, _ = run(capsys, "build", inst)
    assert built == text


def test_lift_reduce_splits(capsys):
    inst = '{"n": 3, "a": [1], "d": [1], "u": [2,1,3], "v": [2,1,3], "w": [2,1,3]}'
    code, out, _ = run(capsys, "lift", inst)
    assert code == EXIT_OK and json.loads(out) == {"dhat": [1, 0], "w_prime": [1, 2, 3]}
    code, out, _ = run(capsys, "reduce", inst)
    assert json.loads(out)["dhat"] == [1, 0]
    code, out, _ = run(capsys, "splits", '{"n": 4, "d": [0,0,2], "u": [1,2,3,4], "v": [1,2,3,4], "w": [1,2,3,4]}')
    assert json.loads(out)["count"] == 2
    code, _, err = run(capsys, "splits", '{"n": 4, "d": [0,0,2], "u": [1,2,3,4], "v": [1,2,3,4], "w": [1,2,3,4]}', "--cap", "1")
    assert code == EXIT_INPUT


def test_oracle_subcommands(capsys):
    code, out, _ = run(capsys, "oracle", "struct-const", '{"u": [2,1,3], "v": [2,1,3], "w": [3,1,2]}')
    assert code == EXIT_OK and json.loads(out)["c"] == 1
    code, out, _ = run(capsys, "oracle", "quantum-monk", '{"r": 1, "w": [2,1]}')
    assert json.loads(out)["terms"] == [{"perm": [1, 2], "q": [1], "coeff": 1}]
    code, out, _ = run(capsys, "oracle", "gw", '{"n": 3, "d": [1,0], "u": [3,1,2], "v": [2,1,3], "w": [3,1,2]}')
    assert json.loads(out)["value"] == 1 and json.loads(out)["source"] == "gw_divisor"
    code, _, err = run(capsys, "oracle", "gw", '{"n": 3, "d": [1,0], "u": [3,1,2], "v": [3,1,2], "w": [3,1,2]}')
    assert code == EXIT_INPUT
    code, _, _ = run(capsys, "oracle", "quantum-monk", '{"r": 5, "w": [2,1]}')
    assert code == EXIT_INPUT


def test_export_hnpe_command(tmp_path, capsys):
    inst = '{"n": 3, "a": [1], "d": [1], "u": [2,1,3], "v": [2,1,3], "w": [2,1,3]}'
    code, out, _ = run(capsys, "export-hnpe", inst)
    doc = json.loads(out)
    assert code == EXIT_OK and doc["M"] == 1
    code, out, _ = run(capsys, "export-hnpe", inst, "-o", str(tmp_path / "h.json"))
    assert json.loads((tmp_path / "h.json").read_text()) == doc


def test_suite_sizes():
    assert len(suite_degree_zero(3)) == 35
    div = suite_divisor(3, 1)
    assert len(div) == 32 and sum(1 for c in div if c.value) == 6
    assert len(suite_p1()) == 24


def test_corrupted_oracle_is_caught():
    def flipped(u, v, w):
        from gwnull.oracles import gw_zero

        return 1 - gw_zero(u, v, w)

    rep = selftest("quick", oracles={"gw_zero": flipped})
    assert rep.failed >= 35
    assert all(c.expected_source for c in rep.cases)
