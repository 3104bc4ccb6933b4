"""Command-line surface: formats, exit codes, determinism."""

import pytest

from ekconst import cli
from ekconst.offsets import greedy_offsets, v_of_q
from ekconst.specfun import gamma_n
from reference_values import EK


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCompute:
    def test_q3(self, capsys):
        code, out, _ = run(capsys, "compute", "3")
        assert code == 0
        line = next(l for l in out.splitlines() if l.startswith("ek ="))
        assert float(line.split("=")[1]) == pytest.approx(EK[3], abs=1e-12)

    def test_rejects_composite(self, capsys):
        code, _, err = run(capsys, "compute", "9")
        assert code == 2
        assert "not an odd prime" in err

    def test_rejects_two(self, capsys):
        code, _, _ = run(capsys, "compute", "2")
        assert code == 2

    def test_method_both_reports_discrepancy(self, capsys):
        code, out, _ = run(capsys, "compute", "101", "--method", "both")
        assert code == 0
        line = next(l for l in out.splitlines()
                    if l.startswith("method_discrepancy ="))
        assert float(line.split("=")[1]) <= 1e-10

    def test_mid_prime_both_methods(self, capsys):
        code, out, _ = run(capsys, "compute", "2003", "--method", "both")
        assert code == 0
        fields = dict(l.split(" = ") for l in out.splitlines() if " = " in l)
        assert float(fields["method_discrepancy"]) <= 1e-8
        assert float(fields["ek"]) == pytest.approx(5.7934213690793633,
                                                    abs=1e-9)

    def test_digit_count(self, capsys):
        _, out, _ = run(capsys, "compute", "3", "--digits", "8")
        line = next(l for l in out.splitlines() if l.startswith("ek ="))
        mantissa = line.split("=")[1].strip().split("e")[0]
        assert len(mantissa.replace("-", "").replace(".", "")) == 8


class TestScan:
    def test_usage_error_on_bad_range(self, capsys):
        code, _, err = run(capsys, "scan", "5", "3")
        assert code == 2

    def test_header_and_content(self, capsys, tmp_path):
        out_path = tmp_path / "rows.csv"
        code, _, _ = run(capsys, "scan", "3", "30", "--out", str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == cli.CSV_HEADER
        qs = [int(row.split(",")[0]) for row in lines[1:]]
        assert qs == [3, 5, 7, 11, 13, 17, 19, 23, 29]
        ek3 = float(lines[1].split(",")[1])
        assert ek3 == pytest.approx(EK[3], abs=1e-12)
        assert lines[1].endswith(",")  # v_q column empty when not requested

    def test_thread_count_does_not_change_bytes(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(capsys, "scan", "3", "60", "--out", str(a))
        run(capsys, "scan", "3", "60", "--out", str(b), "--threads", "4")
        assert a.read_bytes() == b.read_bytes()

    def test_with_vq_column(self, capsys, tmp_path):
        out_path = tmp_path / "rows.csv"
        run(capsys, "scan", "3", "8", "--out", str(out_path), "--with-vq")
        rows = out_path.read_text().splitlines()[1:]
        seq = greedy_offsets(2089)
        for row in rows:
            cells = row.split(",")
            assert float(cells[-1]) == pytest.approx(
                v_of_q(int(cells[0]), seq), abs=1e-9)

    def test_method_t_scan_matches_method_s(self, capsys, tmp_path):
        a, b = tmp_path / "s.csv", tmp_path / "t.csv"
        run(capsys, "scan", "3", "40", "--out", str(a))
        run(capsys, "scan", "3", "40", "--out", str(b), "--method", "t")
        for row_s, row_t in zip(a.read_text().splitlines()[1:],
                                b.read_text().splitlines()[1:]):
            ek_s, ek_t = float(row_s.split(",")[1]), float(row_t.split(",")[1])
            assert ek_t == pytest.approx(ek_s, abs=1e-10)


class TestCacheCommands:
    def test_precompute_merge_checksum_flow(self, capsys, tmp_path):
        cache = str(tmp_path)
        code, out, _ = run(capsys, "precompute", "101", "--tag", "S_PAIR",
                           "--range", "0", "20", "--cache", cache)
        assert code == 0
        code, _, _ = run(capsys, "precompute", "101", "--tag", "S_PAIR",
                         "--range", "20", "50", "--cache", cache)
        assert code == 0
        code, out, _ = run(capsys, "merge", "101", "--tag", "S_PAIR",
                           "--cache", cache,
                           "--out", str(tmp_path / "merged.ekc"))
        assert code == 0
        merged = (tmp_path / "merged.ekc").read_text().splitlines()
        assert merged[0].startswith("EKCACHE 1 q=101")
        assert "k0=0 k1=50" in merged[0]

    def test_checksum_full_table(self, capsys, tmp_path):
        cache = str(tmp_path)
        code, _, _ = run(capsys, "precompute", "101", "--tag", "S_PAIR",
                         "--cache", cache)
        assert code == 0
        code, out, _ = run(capsys, "checksum", "101", "--tag", "S_PAIR",
                           "--cache", cache)
        assert code == 0
        assert out.startswith("residual =")

    def test_default_merge_replaces_parts(self, capsys, tmp_path):
        cache = str(tmp_path)
        run(capsys, "precompute", "11", "--tag", "S_PAIR", "--range", "0", "2",
            "--cache", cache)
        run(capsys, "precompute", "11", "--tag", "S_PAIR", "--range", "2", "5",
            "--cache", cache)
        code, _, _ = run(capsys, "merge", "11", "--tag", "S_PAIR",
                         "--cache", cache)
        assert code == 0
        files = sorted(tmp_path.glob("S_PAIR_q11_part*.ekc"))
        assert [f.name for f in files] == ["S_PAIR_q11_part0.ekc"]
        # the merged cache now feeds compute directly
        code, out, _ = run(capsys, "compute", "11", "--cache", cache)
        assert code == 0

    def test_compute_rejects_corrupted_cache(self, capsys, tmp_path):
        cache = str(tmp_path)
        run(capsys, "precompute", "11", "--tag", "S_PAIR", "--cache", cache)
        path = tmp_path / "S_PAIR_q11_part0.ekc"
        lines = path.read_text().splitlines()
        k, v = lines[2].split()
        lines[2] = f"{k} {float(v) + 1e-5:.18e}"
        # keep the SUM trailer consistent so only the closed form can object
        total = sum(float(r.split()[1]) for r in lines[1:-1])
        lines[-1] = f"SUM {total:.18e} COUNT 5"
        path.write_text("\n".join(lines) + "\n")
        code, _, err = run(capsys, "compute", "11", "--cache", cache)
        assert code == 1
        assert "residual" in err

    def test_env_var_cache_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("EK_CACHE_DIR", str(tmp_path))
        code, out, _ = run(capsys, "precompute", "7", "--tag", "T")
        assert code == 0
        assert (tmp_path / "T_q7_part0.ekc").exists()


class TestSmallCommands:
    def test_gamma_n(self, capsys):
        code, out, _ = run(capsys, "gamma-n", "10")
        assert code == 0
        # printed with 15 significant digits
        assert float(out) == pytest.approx(gamma_n(10), rel=1e-13)

    def test_offsets(self, capsys):
        code, out, _ = run(capsys, "offsets", "3")
        assert code == 0
        assert out == "0\n2\n6\n"

    def test_vq(self, capsys):
        code, out, _ = run(capsys, "vq", "3")
        assert code == 0
        assert float(out) == pytest.approx(v_of_q(3), abs=1e-12)

    def test_stieltjes_csv(self, capsys):
        code, out, _ = run(capsys, "stieltjes", "3", "--kmax", "1")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "k,a,value"
        assert len(lines) == 1 + 2 * 3

    def test_unknown_command(self, capsys):
        assert cli.main(["frobnicate"]) == 2

    def test_domain_violations_are_usage_errors(self, capsys):
        assert cli.main(["gamma-n", "31"]) == 2
        assert cli.main(["offsets", "0"]) == 2
        assert cli.main(["stieltjes", "101"]) == 2
        assert cli.main(["vq", "2"]) == 2


class TestScanCacheInterplay:
    def test_scan_reuses_cache_without_changing_output(self, capsys, tmp_path):
        cache = str(tmp_path / "c")
        (tmp_path / "c").mkdir()
        for tag in ("LOGGAMMA", "S_PAIR"):
            run(capsys, "precompute", "13", "--tag", tag, "--cache", cache)
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(capsys, "scan", "11", "17", "--out", str(a))
        run(capsys, "scan", "11", "17", "--out", str(b), "--cache", cache)
        assert a.read_bytes() == b.read_bytes()
