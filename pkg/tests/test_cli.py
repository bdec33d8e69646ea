import io
import json
from contextlib import redirect_stderr, redirect_stdout
from importlib import resources

import pytest

from padiclat.cli import main
from padiclat.fileformat import parse_lattice_file
from padiclat.scalars import NormValue, ParseError


def example_path(name):
    return str(resources.files("padiclat") / "examples" / name)


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


ZETA = example_path("zeta5_q2.lat")
LAURENT = example_path("laurent_f2t.lat")
WEIGHTED = example_path("weighted_q2.lat")


class TestFileFormat:
    def test_parse_bundled_zeta(self):
        with open(ZETA) as fh:
            lf = parse_lattice_file(fh.read())
        assert lf.cfg.p == 2 and lf.cfg.is_qp
        assert lf.basis.nrows == 4 and lf.basis.ncols == 3
        assert lf.norm_variant == "extension"
        assert lf.depth == 4 and lf.seed == 7
        assert lf.target is not None

    def test_parse_weights(self):
        text = "field Qp 2\nbasis\n1 0\n0 1\nend\nnorm weighted 2^0 2^-1\n"
        lf = parse_lattice_file(text)
        assert lf.norm_params == (NormValue.one(2), NormValue(2, -1))

    def test_missing_field_block(self):
        with pytest.raises(ParseError):
            parse_lattice_file("basis\n1\nend\n")

    def test_unclosed_basis(self):
        with pytest.raises(ParseError):
            parse_lattice_file("field Qp 2\nbasis\n1 0\n0 1\n")

    def test_ragged_columns(self):
        with pytest.raises(ParseError):
            parse_lattice_file("field Qp 2\nbasis\n1 0\n1\nend\n")

    def test_wrong_weight_count(self):
        with pytest.raises(ParseError):
            parse_lattice_file("field Qp 2\nbasis\n1 0\n0 1\nend\nnorm weighted 2^0\n")

    def test_default_norm_is_sup(self):
        lf = parse_lattice_file("field FpT 3\nbasis\n1 T\n0 1\nend\n")
        assert lf.norm_variant == "sup"


class TestCommands:
    def test_dual_identity(self, tmp_path):
        f = tmp_path / "id.lat"
        f.write_text("field Qp 2\nbasis\n1 0\n0 1\nend\n")
        code, out, _ = run_cli(["dual", str(f)])
        assert code == 0
        assert out.split() == ["1", "0", "0", "1"]

    def test_det_json(self):
        code, out, _ = run_cli(["det", ZETA, "--json"])
        assert code == 0
        assert json.loads(out) == {"determinant": "2^-11/2"}

    def test_verify_zeta_passes(self):
        code, out, _ = run_cli(["verify", ZETA])
        assert code == 0
        assert "all checks passed" in out

    def test_verify_all_bundled_examples(self):
        for path in (ZETA, LAURENT, WEIGHTED):
            code, out, _ = run_cli(["verify", path])
            assert code == 0, path

    def test_maxima_with_oracle(self):
        code, out, _ = run_cli(["maxima", ZETA, "--json"])
        assert code == 0
        data = json.loads(out)
        assert data["maxima"] == ["2^0", "2^-1", "2^-4"]
        assert data["oracle"]["agrees"] is True

    def test_cvp_reports_distance(self):
        code, out, _ = run_cli(["cvp", WEIGHTED, "--json", "--depth", "4"])
        assert code == 0
        data = json.loads(out)
        assert data["bruteforce"]["agrees"] is True
        assert data["distance"] == data["bruteforce"]["distance"]

    def test_constants_weighted(self):
        code, out, _ = run_cli(["constants", WEIGHTED, "--json"])
        assert code == 0
        data = json.loads(out)
        assert data["c1"] == "2^0" and data["c2"] == "2^1"

    def test_selftest(self):
        code, out, _ = run_cli(["selftest"])
        assert code == 0
        assert "selftest ok" in out
        assert out.count("PASS") >= 12 and "FAIL" not in out

    def test_byte_identical_reports(self):
        a = run_cli(["verify", ZETA, "--json", "--seed", "9"])
        b = run_cli(["verify", ZETA, "--json", "--seed", "9"])
        assert a == b


class TestExitCodes:
    def test_parse_error_is_2(self, tmp_path):
        f = tmp_path / "bad.lat"
        f.write_text("field Qp 2\nbasis\n1 0\n")
        code, _, err = run_cli(["det", str(f)])
        assert code == 2
        assert "parse error" in err

    def test_missing_file_is_2(self):
        code, _, _ = run_cli(["det", "/nonexistent/x.lat"])
        assert code == 2

    def test_cvp_without_target_is_2(self, tmp_path):
        f = tmp_path / "notarget.lat"
        f.write_text("field Qp 2\nbasis\n1 0\n0 1\nend\n")
        code, _, err = run_cli(["cvp", str(f)])
        assert code == 2
        assert "target" in err

    def test_dependent_basis_is_3(self, tmp_path):
        f = tmp_path / "dep.lat"
        f.write_text("field Qp 2\nbasis\n1 1\n2 2\nend\n")
        code, _, err = run_cli(["det", str(f)])
        assert code == 3
        assert "dependent" in err

    def test_uncertified_extension_is_3(self, tmp_path):
        f = tmp_path / "red.lat"
        # x^2 - 1 is reducible: -1 = 1 mod 2 makes it (x+1)^2
        f.write_text("field Qp 2\nbasis\n1 0\n0 1\nend\nnorm extension 1 0 1\n")
        code, _, err = run_cli(["maxima", str(f)])
        assert code == 3
        assert "certified" in err

    def test_uncertified_extension_det_still_works(self, tmp_path):
        f = tmp_path / "red2.lat"
        f.write_text("field Qp 2\nbasis\n1 0\n0 1\nend\nnorm extension 1 0 1\n")
        code, out, _ = run_cli(["det", str(f)])
        assert code == 0
        assert out.strip() == "2^0"

    def test_verification_failure_is_1(self, tmp_path, monkeypatch):
        import padiclat.cli as cli_mod
        from padiclat.minkowski import CheckRecord, VerificationReport

        def fake_report(*args, **kwargs):
            return VerificationReport([CheckRecord("forced", False, detail="forced failure")])

        monkeypatch.setattr(cli_mod, "verification_report", fake_report)
        f = tmp_path / "ok.lat"
        f.write_text("field Qp 2\nbasis\n1 0\n0 1\nend\n")
        code, out, _ = run_cli(["verify", str(f)])
        assert code == 1
        assert "FAIL" in out
