"""JSON interchange and the command-line interface."""
import csv
import io as stdio
import json
from fractions import Fraction

import pytest

from lsrk import catalog_get, catalog_names
from lsrk.cli import main
from lsrk.io import loads, dumps, scheme_from_dict, scheme_to_dict

F = Fraction


def run_cli(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", stdio.StringIO(stdin))
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSchemeJSON:
    def test_roundtrip_exact_twon(self):
        sch = catalog_get("(4,3)_1").twon()
        obj, name, order = loads(dumps(sch, name="(4,3)_1", order=3))
        assert name == "(4,3)_1"
        assert order == 3
        assert obj == sch

    def test_rational_strings_used_for_exact(self):
        data = scheme_to_dict(catalog_get("(5,4)_5").twon(), order=4)
        assert data["exact"] is True
        assert data["A"] == ["0", "-1", "-1", "-11", "1/10"]

    def test_float_roundtrip(self):
        sch = catalog_get("CK54_S1").twon()
        obj, _, _ = loads(dumps(sch))
        assert obj == sch

    def test_dform_payload(self):
        df = catalog_get("(5,4)_3").dform(exact=False)
        data = scheme_to_dict(df)
        assert data["repr"] == "dform"
        assert len(data["c"]) == 6 and len(data["d"]) == 6
        obj, _, _ = scheme_from_dict(data)
        assert obj == df

    def test_forced_exact_parse(self):
        text = dumps(catalog_get("CK54_S2").twon())
        obj, _, _ = loads(text, exact=True)
        assert isinstance(obj.B[0], Fraction)

    def test_unknown_repr_rejected(self):
        with pytest.raises(ValueError):
            scheme_from_dict({"repr": "mystery", "c": []})


class TestCatalogCommands:
    def test_list(self, capsys):
        code, out, _ = run_cli(capsys, "catalog", "list")
        assert code == 0
        assert "(6,4)_7" in out.splitlines()

    def test_show_emits_json(self, capsys):
        code, out, _ = run_cli(capsys, "catalog", "show", "(4,3)_1")
        assert code == 0
        data = json.loads(out)
        assert data["repr"] == "2n"
        assert data["B"] == ["1/9", "3/4", "2/5", "5/4"]

    def test_show_unknown_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "catalog", "show", "nope")
        assert code == 1
        assert "unknown scheme" in err


class TestReflectPipeline:
    def test_catalog_show_pipe_reflect(self, capsys, monkeypatch):
        _, shown, _ = run_cli(capsys, "--exact", "catalog", "show", "(4,3)_1")
        code, out, _ = run_cli(capsys, "--exact", "reflect", "-",
                               stdin=shown, monkeypatch=monkeypatch)
        assert code == 0
        data = json.loads(out)
        other = catalog_get("(4,3)_2").twon()
        assert [F(x) for x in data["A"]] == list(other.A)
        assert [F(x) for x in data["B"]] == list(other.B)
        assert [F(x) for x in data["c"]] == list(other.c)

    def test_reflect_no_dform_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "reflect", "(5,4)_5")
        assert code == 1
        assert "no d-form" in err

    def test_check_order_report_on_stderr(self, capsys):
        code, out, err = run_cli(capsys, "reflect", "CK54_S1", "--check-order")
        assert code == 0
        json.loads(out)
        assert "conservation report" in err
        assert "tall tree" in err


class TestVerifyCommand:
    def test_valid_catalog_scheme(self, capsys):
        code, out, _ = run_cli(capsys, "--exact", "verify", "(4,3)_1")
        assert code == 0
        assert "classified order: 3" in out

    def test_json_output(self, capsys):
        code, out, _ = run_cli(capsys, "--json", "verify", "(6,4)_8",
                               "--tall-trees", "5")
        assert code == 0
        data = json.loads(out)
        assert data["order"] == 4
        # exact catalog entries verify in rational arithmetic by default
        assert F(data["tall_trees"]["4"]) == F(1, 216)
        assert F(data["tall_trees"]["5"]) == F(7, 7776)

    def test_tampered_scheme_exits_1(self, capsys, tmp_path):
        data = scheme_to_dict(catalog_get("(4,3)_1").twon(exact=False),
                              name="tampered", order=3)
        data["B"][2] = "0.75"
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        code, out, _ = run_cli(capsys, "verify", str(path))
        assert code == 1

    def test_usage_error_exits_2(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["verify"])
        assert err.value.code == 2

    def test_external_scheme_file(self, capsys, tmp_path):
        # users can verify coefficient sets that are not bundled; the
        # fifth-order breaking value is always reported
        from conftest import frac_tableau_rk4

        path = tmp_path / "external.json"
        path.write_text(dumps(frac_tableau_rk4(), name="external-rk4", order=4))
        code, out, _ = run_cli(capsys, "--exact", "--json", "verify", str(path))
        assert code == 0
        data = json.loads(out)
        assert data["order"] == 4
        assert F(data["fifth_order_breaking"]) == F(1, 16)


class TestConvertFactorize:
    @pytest.mark.parametrize("name", catalog_names())
    def test_exact_catalog_roundtrip_all_reprs(self, name, capsys, monkeypatch):
        # convert every catalog entry through each representation and back;
        # exact entries must survive bit-for-bit
        entry = catalog_get(name)
        if not entry.has_dform:
            chain = ["butcher", "2n"]
        else:
            chain = ["butcher", "dform", "2n"]
        _, blob, _ = run_cli(capsys, "--exact", "catalog", "show", name)
        for target in chain:
            code, blob, _ = run_cli(capsys, "--exact", "convert", "-",
                                    "--to", target, stdin=blob,
                                    monkeypatch=monkeypatch)
            assert code == 0, (name, target)
        final = json.loads(blob)
        want = catalog_get(name).twon(exact=True)
        got = {k: [F(x) for x in final[k]] for k in ("A", "B", "c")}
        if entry.exact:
            assert got["A"] == list(want.A)
            assert got["B"] == list(want.B)
            assert got["c"] == list(want.c)
        else:
            # truncated coefficients are recursion-consistent only to their
            # own precision, so a d-form detour reproduces them to ~1e-13
            for key, ref in (("A", want.A), ("B", want.B), ("c", want.c)):
                assert max(abs(x - y) for x, y in zip(got[key], ref)) < F(1, 10 ** 12)

    def test_convert_to_dform_and_back(self, capsys, monkeypatch):
        code, out, _ = run_cli(capsys, "--exact", "convert", "(4,3)_1",
                               "--to", "dform")
        assert code == 0
        data = json.loads(out)
        assert data["d"] == ["1", "9/4", "9/5", "15/4", "1"]
        code, out, _ = run_cli(capsys, "--exact", "convert", "-", "--to", "2n",
                               stdin=out, monkeypatch=monkeypatch)
        assert code == 0
        back = json.loads(out)
        assert [F(x) for x in back["A"]] == [0, F(-5, 9), -1, F(-33, 25)]

    def test_convert_rk4_to_2n_fails(self, capsys, tmp_path):
        from conftest import frac_tableau_rk4

        path = tmp_path / "rk4.json"
        path.write_text(dumps(frac_tableau_rk4(), name="rk4"))
        code, _, err = run_cli(capsys, "convert", str(path), "--to", "2n")
        assert code == 1
        assert "2N-compatible" in err

    def test_factorize_residuals_zero(self, capsys):
        code, out, _ = run_cli(capsys, "--exact", "factorize", "(4,3)_1")
        assert code == 0
        data = json.loads(out)
        assert all(v in (0, "0", 0.0) for v in data["residuals"].values())
        assert data["D"][1][0] == "-9/4"


class TestNumericCommands:
    def test_integrate_single(self, capsys):
        code, out, _ = run_cli(capsys, "integrate", "--scheme", "CK54_S1",
                               "--problem", "1", "--h", "0.05")
        assert code == 0
        data = json.loads(out)
        assert data["steps"] == 400
        assert data["error"] < 1e-6

    def test_integrate_sweep_csv(self, capsys, tmp_path):
        out_path = tmp_path / "sweep.csv"
        code, _, _ = run_cli(capsys, "integrate", "--scheme", "(4,3)_1",
                             "--problem", "3", "--sweep", "0.025:0.2:4",
                             "--out", str(out_path))
        assert code == 0
        rows = list(csv.reader(out_path.read_text().splitlines()))
        assert rows[0] == ["h", "error", "steps"]
        assert len(rows) == 5

    def test_stability_csv(self, capsys, tmp_path):
        out_path = tmp_path / "region.csv"
        code, _, _ = run_cli(capsys, "stability", "--scheme", "(5,4)_5",
                             "--grid=-3:1:-2:2:21", "--out", str(out_path))
        assert code == 0
        rows = list(csv.reader(out_path.read_text().splitlines()))
        assert rows[0] == ["re", "im", "absR", "inside"]
        assert len(rows) == 1 + 21 * 21
        by_point = {(r[0], r[1]): r for r in rows[1:]}
        origin = by_point[("-0", "0")] if ("-0", "0") in by_point else by_point[("0", "0")]
        assert float(origin[2]) == pytest.approx(1.0)
        assert origin[3] == "1"

    def test_wcurve_csv(self, capsys):
        code, out, _ = run_cli(capsys, "wcurve", "--min", "0", "--max", "1",
                               "--step", "0.25")
        assert code == 0
        rows = list(csv.reader(out.splitlines()))
        assert rows[0] == ["c2", "c3", "branch"]
        assert len(rows) > 4

    def test_scan_csv(self, capsys, tmp_path):
        out_path = tmp_path / "branch.csv"
        code, _, _ = run_cli(capsys, "scan", "--seed", "CK54_S1",
                             "--param", "c2", "--eps", "0.05", "--steps", "25",
                             "--direction", "+1", "--out", str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()
        comments = [l for l in lines if l.startswith("#")]
        rows = list(csv.reader(l for l in lines if not l.startswith("#")))
        assert comments
        assert rows[0] == ["c2", "c5", "c3", "c4", "d2", "d3", "d4", "d5", "residual"]
        assert len(rows) == 26
        assert all(float(r[8]) <= 1e-12 for r in rows[1:])

    def test_solve54(self, capsys):
        code, out, err = run_cli(capsys, "solve54", "--fix",
                                 "c2=0.097618354692056", "--x0", "CK54_S1")
        assert code == 0
        data = json.loads(out)
        assert data["repr"] == "dform"
        assert float(data["d"][1]) == pytest.approx(1.927643001997, abs=1e-9)

    def test_solve54_array_x0(self, capsys):
        x0 = "[0.3114822768438, 0.5120100121666, 0.8971360011895," \
             " 1.927643001997, 2.195292153589, 3.703493152572, 1.923666744634]"
        code, out, _ = run_cli(capsys, "solve54", "--fix",
                               "c2=0.097618354692056", "--x0", x0)
        assert code == 0
        assert json.loads(out)["repr"] == "dform"

    def test_flag_usage_errors_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "integrate", "--scheme", "CK54_S1",
                               "--problem", "1")
        assert code == 2
        assert "usage error" in err
        code, _, err = run_cli(capsys, "solve54", "--fix", "c3=0.5",
                               "--x0", "CK54_S1")
        assert code == 2
