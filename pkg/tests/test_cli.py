import json

from iqhecke.cli import main


def test_zeta_command(capsys):
    rc = main(["zeta", "--field=-1", "--s=2.0"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "1.50670300992299" in out


def test_incompatible_field_order_is_usage_error(capsys):
    rc = main(["moment", "--field=-7", "--j=4", "--x=10"])
    assert rc == 2
    out = capsys.readouterr().out
    assert "compatibility" in out


def test_unknown_field_rejected(capsys):
    rc = main(["zeta", "--field=-5"])
    assert rc == 2


def test_verify_symbols_small(capsys):
    rc = main(["verify-symbols", "--field=-3", "--j=3", "--max-norm=120",
               "--max-norm-supplementary=200"])
    assert rc == 0


def test_moment_csv_output(tmp_path, capsys):
    out = tmp_path / "m.csv"
    rc = main([
        "--output", str(out),
        "moment", "--field=-1", "--j=2", "--alpha=0.25", "--x=20,25", "--no-timing",
    ])
    assert rc == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == (
        "field,d,j,alpha_re,alpha_im,X,lhs_re,lhs_im,mt1_re,mt1_im,"
        "mt2_re,mt2_im,ratio_re,ratio_im,n_count"
    )
    assert len(lines) == 3
    first = lines[1].split(",")
    assert first[0] == "Q(sqrt(-1))" and first[1] == "-1" and first[2] == "2"


def test_moment_json_and_report(tmp_path, capsys):
    out = tmp_path / "m.json"
    rc = main([
        "--output", str(out), "--format", "json",
        "moment", "--field=-1", "--j=2", "--alpha=0.25", "--x=20",
    ])
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["config"]["field"] == "Q(sqrt(-1))"
    rc = main(["report", str(out)])
    assert rc == 0
    rendered = capsys.readouterr().out
    assert "|ratio-1|" in rendered


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("x=20\nalpha=0.25\n# comment\n")
    out = tmp_path / "m.csv"
    rc = main([
        "--config", str(cfg), "--output", str(out),
        "moment", "--field=-1", "--no-timing",
    ])
    assert rc == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 2  # config picked x=20 (single X)
    # explicit flag wins over the config file
    rc = main([
        "--config", str(cfg), "--output", str(out),
        "moment", "--field=-1", "--x=20,25,30", "--no-timing",
    ])
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 4
