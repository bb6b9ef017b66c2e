"""Command-line behavior: output formats, report schema, exit codes,
and determinism of verification output."""

import io
import json

from biperiodic import cli
from biperiodic.report import CheckReport

REPORT_KEYS = ["suite", "range", "status", "first_failure", "residual",
               "elapsed_ms"]


def run_main(argv):
    """Invoke the CLI in-process, capturing stdout."""
    buf = io.StringIO()
    import contextlib
    with contextlib.redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


def test_seq_q_symbolic_rendering():
    code, out = run_main(["seq", "q", "5"])
    assert code == 0
    assert out.strip() == "a^2*b^2*x^4 + 3*a*b*x^2 + 1"


def test_seq_q_fibonacci_point():
    code, out = run_main(["seq", "q", "10", "--a", "1", "--b", "1",
                          "--x", "1"])
    assert code == 0
    assert out.strip() == "55"


def test_seq_matrix_json():
    code, out = run_main(["seq", "F", "2", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "F"
    assert payload["n"] == 2
    assert payload["value"][0][0] == "a*b*x^2 + 1"
    assert payload["value"][1][1] == "1"


def test_seq_rising_equals_scaled_double_index():
    _, first = run_main(["seq", "r", "1", "--a", "2", "--b", "3", "--x", "1"])
    _, second = run_main(["seq", "A", "2", "--a", "2", "--b", "3",
                          "--x", "1"])
    assert first == second


def test_seq_float_mode():
    code, out = run_main(["seq", "q", "6", "--a", "1", "--b", "1", "--x", "1",
                          "--float"])
    assert code == 0
    assert float(out) == 8.0


def test_seq_validation_failures():
    assert run_main(["seq", "q", "-1"])[0] == 2
    assert run_main(["seq", "q", "3", "--a", "1"])[0] == 2
    assert run_main(["seq", "w", "3", "--float"])[0] == 2
    assert run_main(["seq", "w", "3", "--a", "-1", "--b", "1", "--x", "1",
                     "--float"])[0] == 2


def test_table_rows():
    code, out = run_main(["table", "q", "--max-n", "4", "--a", "1",
                          "--b", "1", "--x", "2", "--format", "json"])
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert [r["value"] for r in rows] == ["0", "1", "2", "5", "12"]


def test_gf_text_output():
    code, out = run_main(["gf", "F"])
    assert code == 0
    assert "denominator: t^4 - a*b*x^2*t^2 - 2*t^2 + 1" in out
    assert "numerator:" in out


def test_verify_json_schema_and_exit():
    code, out = run_main(["verify", "--suites", "det,cassini", "--max-n",
                          "8"])
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    for line in lines:
        payload = json.loads(line)
        assert list(payload) == REPORT_KEYS
        assert payload["status"] == "pass"
    assert json.loads(lines[0])["suite"] == "det"
    assert json.loads(lines[1])["suite"] == "cassini"


def test_verify_all_emits_every_report_line():
    code, out = run_main(["verify", "--suites", "all", "--max-n", "4"])
    assert code == 0
    suites = [json.loads(line)["suite"] for line in out.strip().splitlines()]
    assert suites == ["explicit", "det", "cassini", "sums", "binet-F", "gf",
                      "transforms", "w-root-equation", "binet-T",
                      "negsum-infinite", "negsum-finite", "egf"]


def test_verify_deterministic_across_jobs():
    def scrub(text):
        lines = []
        for line in text.strip().splitlines():
            payload = json.loads(line)
            payload["elapsed_ms"] = None
            lines.append(json.dumps(payload))
        return lines

    _, single = run_main(["verify", "--suites", "all", "--max-n", "6"])
    _, threaded = run_main(["verify", "--suites", "all", "--max-n", "6",
                            "--jobs", "4"])
    assert scrub(single) == scrub(threaded)


def test_verify_single_suite_wide_range():
    code, out = run_main(["verify", "--suites", "cassini", "--max-n", "64"])
    assert code == 0
    assert json.loads(out)["range"] == "1..64"


def test_verify_usage_errors():
    assert run_main(["verify", "--max-n", "3"])[0] == 2
    assert run_main(["verify", "--max-n", "0"])[0] == 2
    assert run_main(["verify", "--suites", "nosuch"])[0] == 2
    assert run_main(["verify", "--suites", ""])[0] == 2
    assert run_main(["verify", "--jobs", "0"])[0] == 2


def test_verify_jobs_env_default(monkeypatch):
    monkeypatch.setenv("BIPERIODIC_JOBS", "2")
    assert run_main(["verify", "--suites", "det", "--max-n", "6"])[0] == 0
    monkeypatch.setenv("BIPERIODIC_JOBS", "junk")
    assert run_main(["verify", "--suites", "det", "--max-n", "6"])[0] == 2


def test_verify_errata_only_on_request(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, _ = run_main(["verify", "--suites", "negsum", "--max-n", "6"])
    assert code == 0
    assert not (tmp_path / "ERRATA.md").exists()
    code, _ = run_main(["verify", "--suites", "negsum", "--max-n", "6",
                        "--write-errata"])
    assert code == 0
    text = (tmp_path / "ERRATA.md").read_text()
    assert "denominator" in text
    assert "k-binomial" in text


def test_bench_exit_codes():
    code, out = run_main(["bench", "--n", "500", "--a", "1", "--b", "2",
                          "--x", "1/2", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["equal"] is True
    assert run_main(["bench", "--n", "0"])[0] == 2
    assert run_main(["bench", "--n", "10", "--modulus", "91"])[0] == 2


def test_bench_modular():
    code, out = run_main(["bench", "--n", "10000", "--modulus",
                          "1000000007", "--format", "json"])
    assert code == 0
    assert json.loads(out)["equal"] is True


def test_report_to_dict_key_order():
    report = CheckReport.passed("det", "0..8", 1.25)
    assert list(report.to_dict()) == REPORT_KEYS
    failed = CheckReport.failed("det", "0..8", 3, "nonzero", 2.5)
    assert failed.to_dict()["first_failure"] == 3
    assert failed.to_dict()["status"] == "fail"


def test_prime_checker():
    assert cli._is_probable_prime(2)
    assert cli._is_probable_prime(10 ** 9 + 7)
    assert cli._is_probable_prime(2 ** 61 - 1)
    assert not cli._is_probable_prime(1)
    assert not cli._is_probable_prime(561)  # Carmichael
    assert not cli._is_probable_prime(2 ** 61 + 1)
