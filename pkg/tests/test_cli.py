"""CLI contract: exit codes, JSON reports, corpus driver."""

import io
import json
import os
from contextlib import redirect_stdout, redirect_stderr

import pytest

from finitude.cli import main

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


class TestExitCodes:
    def test_not_representable_is_1(self):
        code, out, _ = run(["algebraic", "y^5+y-x"])
        assert code == 1
        assert "120" in out

    def test_representable_is_0(self):
        code, out, _ = run(["algebraic", "y^3-x", "--tower"])
        assert code == 0
        assert "root(3, x)" in out

    def test_syntax_error_is_64(self):
        code, _out, err = run(["algebraic", "y^"])
        assert code == 64
        assert "position 2" in err

    def test_k_flag(self):
        code, _, _ = run(["algebraic", "y^5+y-x", "--k", "5"])
        assert code == 0
        code, _, _ = run(["algebraic", "y^5+y-x", "--k", "4"])
        assert code == 1


class TestReports:
    def test_json_schema(self):
        code, out, _ = run(["--json", "algebraic", "y^3-x", "--tower"])
        assert code == 0
        data = json.loads(out)
        assert data["tool"] == "finitude"
        assert data["monodromy"]["group_order"] == 3
        assert data["radicals"]["status"] == "Representable"
        assert data["settings"]["continuation_tol"] == 1e-10
        assert "elapsed_seconds" in data

    def test_idempotent_modulo_timing(self):
        _, out1, _ = run(["--json", "algebraic", "y^4-x"])
        _, out2, _ = run(["--json", "algebraic", "y^4-x"])
        d1, d2 = json.loads(out1), json.loads(out2)
        d1.pop("elapsed_seconds"), d2.pop("elapsed_seconds")
        assert d1 == d2

    def test_integrate(self):
        code, out, _ = run(["--json", "integrate", "1/(x^2-1)"])
        assert code == 0
        data = json.loads(out)
        lams = sorted(entry["lambda"]
                      for entry in data["liouville_form"]["logs"])
        assert lams == ["-1/2", "1/2"]
        assert data["derivative_verified"] is True

    def test_ode(self):
        code, out, _ = run(["--json", "ode", "2", "0", "-1"])
        assert code == 0
        assert json.loads(out)["witnesses"] == ["-1", "1"]

    def test_decompose(self):
        code, out, _ = run(["--json", "decompose", "x^6"])
        assert code == 0
        data = json.loads(out)
        assert data["chain"] == ["x^2", "x^3"]
        assert data["invertible_by_radicals"]["status"] == "Representable"

    def test_puiseux(self):
        code, out, _ = run(["--json", "puiseux", "y^2-x",
                            "--point", "0", "--order", "3"])
        assert code == 0
        data = json.loads(out)
        assert len(data["series"]) == 2
        assert data["series"][0]["exponents"][0] == "1/2"

    def test_fuchsian(self):
        path = os.path.join(REPO, "corpus", "fixtures",
                            "triangular_system.json")
        code, out, _ = run(["--json", "fuchsian", path])
        assert code == 0
        data = json.loads(out)
        assert data["verdict"]["status"] == "Representable"

    def test_config_override(self, tmp_path):
        cfg = tmp_path / "settings.cfg"
        cfg.write_text("continuation_tol = 1e-9\n# comment\n")
        code, out, _ = run(["--json", "--config", str(cfg),
                            "algebraic", "y^2-x"])
        assert code == 0
        assert json.loads(out)["settings"]["continuation_tol"] == 1e-9


class TestCorpus:
    def test_corpus_green(self):
        code, out, _ = run(["corpus", os.path.join(REPO, "corpus")])
        assert code == 0
        assert "8/8" in out

    def test_corpus_parallel(self, monkeypatch):
        monkeypatch.setenv("FINITUDE_THREADS", "4")
        code, out, _ = run(["corpus", os.path.join(REPO, "corpus")])
        assert code == 0
        assert "8/8" in out
