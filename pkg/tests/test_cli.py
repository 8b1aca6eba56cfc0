import json

import pytest

from shallowwell.cli import load_config, main
from shallowwell.errors import ConfigError


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


GAUSS_CFG = "[potential]\nkind = gaussian\ns = 1.0\n"


# ---------------------------------------------------------------------------
# config handling


def test_missing_config_file_exits_2(tmp_path, capsys):
    assert main(["series", "--config", str(tmp_path / "nope.ini")]) == 2
    assert "config error" in capsys.readouterr().err


def test_unknown_key_rejected(tmp_path, capsys):
    cfg = _write(tmp_path, "c.ini", "[potential]\nkind = gaussian\nwobble = 3\n")
    assert main(["series", "--config", cfg]) == 2
    assert "wobble" in capsys.readouterr().err


def test_unknown_section_rejected(tmp_path):
    cfg = _write(tmp_path, "c.ini", GAUSS_CFG + "[plotting]\nstyle = x\n")
    with pytest.raises(ConfigError):
        load_config(cfg)


def test_bad_order_rejected(tmp_path, capsys):
    cfg = _write(tmp_path, "c.ini", GAUSS_CFG)
    assert main(["series", "--config", cfg, "--order", "9"]) == 2


def test_bad_grid_override_rejected(tmp_path):
    cfg = _write(tmp_path, "c.ini", GAUSS_CFG)
    assert main(["series", "--config", cfg, "--grid", "10,128"]) == 2
    assert main(["series", "--config", cfg, "--grid", "10,128,99"]) == 2


def test_sweep_validation(tmp_path):
    cfg = _write(
        tmp_path, "c.ini", GAUSS_CFG + "[sweep]\ns_min = 2.0\ns_max = 1.0\nsteps = 5\n"
    )
    assert main(["compare", "--config", cfg]) == 2


def test_compare_requires_sweep(tmp_path):
    cfg = _write(tmp_path, "c.ini", GAUSS_CFG)
    assert main(["compare", "--config", cfg]) == 2


def test_tabulated_requires_file(tmp_path):
    cfg = _write(tmp_path, "c.ini", "[potential]\nkind = tabulated\n")
    assert main(["series", "--config", cfg]) == 2


# ---------------------------------------------------------------------------
# series


def test_series_gaussian_text(tmp_path, capsys):
    cfg = _write(tmp_path, "c.ini", GAUSS_CFG)
    assert main(["series", "--config", cfg]) == 0
    out = capsys.readouterr().out
    assert "-0.785398163" in out
    assert "coefficient [E/s^n]" in out


def test_series_square_well_prints_rationals(tmp_path, capsys):
    cfg = _write(tmp_path, "c.ini", "[potential]\nkind = square_well\ns = 1\na = 1\n")
    assert main(["series", "--config", cfg]) == 0
    out = capsys.readouterr().out
    for rational in ("4/3", "-92/45", "1072/315", "-84752/14175"):
        assert rational in out


def test_series_zero_tabulated_all_zero(tmp_path, capsys):
    samples = _write(tmp_path, "zeros.txt", "# x V\n-1 0\n0 0\n1 0\n")
    cfg = _write(
        tmp_path, "c.ini", f"[potential]\nkind = tabulated\nfile = {samples}\n"
    )
    assert main(["series", "--config", cfg, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["coefficients"] == [0.0] * 6


def test_series_json_structure(tmp_path, capsys):
    cfg = _write(tmp_path, "c.ini", GAUSS_CFG)
    assert main(["series", "--config", cfg, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["shape"] == "gaussian"
    assert len(payload["coefficients"]) == 6
    assert payload["coefficients"][1] == pytest.approx(-0.785398163, rel=1e-8)


def test_series_csv_headers_carry_units(tmp_path, capsys):
    cfg = _write(tmp_path, "c.ini", GAUSS_CFG)
    assert main(["series", "--config", cfg, "--format", "csv"]) == 0
    header = capsys.readouterr().out.splitlines()[0]
    assert header.split(",") == [
        "order [1]",
        "coefficient [E/s^n]",
        "rel_error_estimate [1]",
    ]


def test_series_deterministic_byte_identical(tmp_path):
    cfg = _write(tmp_path, "c.ini", GAUSS_CFG)
    out1, out2 = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
    assert main(["series", "--config", cfg, "--format", "csv", "--out", out1]) == 0
    assert main(["series", "--config", cfg, "--format", "csv", "--out", out2]) == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_series_order_and_grid_overrides(tmp_path, capsys):
    cfg = _write(tmp_path, "c.ini", GAUSS_CFG)
    assert main(
        ["series", "--config", cfg, "--order", "3", "--grid", "10,64,8", "--format", "json"]
    ) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["coefficients"]) == 3
    assert payload["grid"] == {"L": 10.0, "P": 64, "q": 8}


# ---------------------------------------------------------------------------
# solve / pade / greens-check / compare


def test_solve_poschl_teller(tmp_path, capsys):
    cfg = _write(tmp_path, "c.ini", "[potential]\nkind = poschl_teller\ns = 2.0\n")
    assert main(["solve", "--config", cfg, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["energy"] == pytest.approx(-1.0, abs=1e-8)


def test_pade_reports_reference_denominator(tmp_path, capsys):
    cfg = _write(tmp_path, "c.ini", GAUSS_CFG)
    assert main(["pade", "--config", cfg, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["alpha"] == -1.0
    assert payload["denominator"] == pytest.approx(
        [1.0, 3.38542, 2.80348, 0.336931], rel=1e-3
    )


def test_greens_check_residuals_shrink(tmp_path, capsys):
    cfg = _write(tmp_path, "c.ini", GAUSS_CFG)
    assert main(["greens-check", "--config", cfg, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    res = [row["residual"] for row in payload["ladder"]]
    assert res[0] > res[1] > res[2]
    block = payload["divergent_block"]
    assert abs(block["symmetrized"]) < 1e-8 * block["scale"]


def test_compare_small_sweep(tmp_path):
    cfg = _write(
        tmp_path,
        "c.ini",
        GAUSS_CFG + "[sweep]\ns_min = 0.5\ns_max = 1.5\nsteps = 3\n",
    )
    out = str(tmp_path / "sweep.csv")
    assert main(["compare", "--config", cfg, "--out", out]) == 0
    lines = (tmp_path / "sweep.csv").read_text().splitlines()
    header = lines[0].split(",")
    assert header[0] == "s [E]" and header[-1] == "reason [text]"
    assert len(lines) == 4
    for line in lines[1:]:
        cells = line.split(",")
        s, series, pade_v, var_g, var_e, shoot = (float(c) for c in cells[:6])
        assert cells[6] == ""
        # Rayleigh-Ritz: both variational columns upper-bound the exact energy
        assert var_g >= shoot - 1e-9
        assert var_e >= shoot - 1e-9
