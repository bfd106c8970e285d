"""Command-line behavior: exit-code taxonomy, formats, file output."""

from __future__ import annotations

import contextlib
import io
import pathlib

from qsc.cli import main

DATA = pathlib.Path(__file__).parent / "data"
CORPUS = pathlib.Path(__file__).parents[1] / "src" / "qsc" / "corpus"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestCheck:
    def test_passing_script(self):
        code, out, _ = run("check", str(CORPUS / "ent.qsc"))
        assert code == 0 and "all nodes pass" in out

    def test_failing_script(self):
        code, out, _ = run("check", str(DATA / "failing.qsc"))
        assert code == 1 and "WrongDegrees" in out

    def test_parse_error(self):
        code, _, err = run("check", str(DATA / "broken.qsc"))
        assert code == 2 and "ScriptSyntaxError" in err

    def test_missing_file(self):
        code, _, err = run("check", "no-such-file.qsc")
        assert code == 2 and "cannot read" in err

    def test_intuitionistic_mode_accepts_the_corpus(self):
        code, _, _ = run("check", str(CORPUS / "ent.qsc"), "--mode", "intuitionistic")
        assert code == 0

    def test_machine_format(self):
        code, out, _ = run("check", str(CORPUS / "epr.qsc"), "--format", "machine")
        assert code == 0
        assert out.splitlines()[-1].startswith("result\tok")

    def test_nonassoc_attempt_rejected(self):
        code, out, _ = run("check", str(DATA / "nonassoc.qsc"))
        assert code == 1 and "VisibilityViolation" in out


class TestVerify:
    def test_teleportation(self):
        code, out, _ = run("verify", str(CORPUS / "tel.qsc"),
                           "--alpha", "0.6", "--beta", "0.8")
        assert code == 0 and "max residual" in out

    def test_structural_failure_is_a_phase_error(self):
        code, _, err = run("verify", str(DATA / "failing.qsc"))
        assert code == 3 and "structural check" in err

    def test_tolerance_breach(self):
        # within the structural degree tolerance, outside a strict semantic one
        assert run("check", str(DATA / "offbydelta.qsc"))[0] == 0
        assert run("verify", str(DATA / "offbydelta.qsc"))[0] == 0
        code, out, _ = run("verify", str(DATA / "offbydelta.qsc"), "--tol", "1e-12")
        assert code == 1 and "residual breach" in out


class TestRender:
    def test_ascii(self):
        code, out, _ = run("render", str(CORPUS / "cut-parallel.qsc"))
        assert code == 0 and "&R" in out and "[premise]" in out

    def test_linear(self):
        code, out, _ = run("render", str(CORPUS / "epr.qsc"), "--style", "linear")
        assert code == 0 and "by epr(" in out

    def test_out_file(self, tmp_path):
        target = tmp_path / "report.txt"
        code, out, _ = run("render", str(CORPUS / "epr.qsc"), "--out", str(target))
        assert code == 0 and out == ""
        assert "epr" in target.read_text()


class TestCorpus:
    def test_full_run(self):
        code, out, _ = run("corpus")
        assert code == 0 and "13/13" in out

    def test_machine_layout(self):
        code, out, _ = run("corpus", "--format", "machine")
        assert code == 0
        lines = out.splitlines()
        assert len([l for l in lines if l.startswith("entry\t")]) == 13
        assert lines[-1] == "result\t13/13"


class TestTeleport:
    def test_default_pair(self):
        code, out, _ = run("teleport")
        assert code == 0 and out.count("1.000000000") >= 4

    def test_basis_input(self):
        code, out, _ = run("teleport", "--alpha", "1", "--beta", "0")
        assert code == 0

    def test_complex_amplitudes(self):
        code, _, _ = run("teleport", "--alpha", "0.6i", "--beta", "0.8")
        assert code == 0

    def test_unnormalized_rejected(self):
        code, _, err = run("teleport", "--alpha", "1", "--beta", "1")
        assert code == 2 and "expected 1" in err

    def test_machine_rows(self):
        code, out, _ = run("teleport", "--format", "machine")
        rows = [l for l in out.splitlines() if l.startswith("outcome\t")]
        assert code == 0 and len(rows) == 4
