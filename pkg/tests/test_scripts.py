import pytest

from kirbyfront.diagram import COEFF_MINUS, serialize_front
from kirbyfront.families import mazur_diagram, stabilized_unknot, unknot
from kirbyfront.scripts import (
    MoveScript,
    MoveStep,
    ScriptError,
    format_script,
    parse_script,
    run_script,
)
from kirbyfront.moves import site_at


def test_empty_script_returns_initial():
    d = unknot()
    final, log = run_script(MoveScript(initial=d))
    assert final is d
    assert log == []


def test_step_failure_reports_index():
    d = unknot(coefficient=COEFF_MINUS)
    steps = (
        MoveStep(move="stabilize", site=site_at(1, 1), args={"comp": "1"}),
        MoveStep(move="stabilize", site=site_at(1, 1), args={"comp": "1"}),
        MoveStep(move="unclasp", site=site_at(0, 1, e1=2)),
    )
    with pytest.raises(ScriptError) as err:
        run_script(MoveScript(initial=d, steps=steps))
    assert err.value.step == 3


def test_assert_failure_reports_index():
    d = unknot(coefficient=COEFF_MINUS)
    steps = (
        MoveStep(
            move="stabilize",
            site=site_at(1, 1),
            args={"comp": "1"},
            asserts={"events": "99"},
        ),
    )
    with pytest.raises(ScriptError, match="step 1.*events=99"):
        run_script(MoveScript(initial=d, steps=steps))


def test_tb_assertions():
    d = unknot(coefficient=COEFF_MINUS)
    steps = (
        MoveStep(
            move="stabilize",
            site=site_at(1, 1),
            args={"comp": "1"},
            asserts={"tb:1": "-3", "rot:1": "0", "chi": "2"},
        ),
    )
    final, log = run_script(MoveScript(initial=d, steps=steps))
    assert len(final.events) == 6


def test_parse_format_round_trip():
    text = (
        "stabilize site=1..1/1..1 comp=1 assert events=6 tb:1=-3\n"
        "destabilize site=1..1/1..1 comp=1 assert events=2\n"
    )
    script = parse_script(text, initial=unknot(coefficient=COEFF_MINUS))
    final, log = run_script(script)
    assert len(final.events) == 2
    out = format_script(script)
    again = parse_script(out, initial=script.initial)
    assert again.steps == script.steps


def test_use_header_with_loader():
    d = mazur_diagram()
    store = {"mazur.front": serialize_front(d)}
    from kirbyfront.scenarios import mazur_script_text

    script = parse_script(
        "use mazur.front\n" + mazur_script_text(), loader=store.__getitem__
    )
    final, _ = run_script(script)
    assert final.events == ()


def test_bundled_data_files_replay():
    import importlib.resources as res

    pkg = res.files("kirbyfront") / "data"
    front = (pkg / "mazur.front").read_text()
    script_text = (pkg / "mazur.script").read_text()
    script = parse_script(
        script_text, loader=lambda name: (pkg / name).read_text()
    )
    final, _ = run_script(script)
    assert final.events == ()
    # the bundled diagram is the canonical serialization of the generator
    assert front == serialize_front(mazur_diagram())
