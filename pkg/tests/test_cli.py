"""End-to-end command line behavior: exit codes, files, determinism."""

import os

import numpy as np
import pytest

from bent3 import (TernaryFn, ctx_new, read_certificate, read_sweep,
                   read_table, spectrum_fast, spectrum_sha256, write_table)
from bent3.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


@pytest.fixture(autouse=True)
def _in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


def test_construct_binomial(capsys):
    rc = main(["construct", "--family", "binomial-general", "--k", "1",
               "--a1", "g^1"])
    assert rc == EXIT_OK
    out = capsys.readouterr().out
    assert "table=binomial-general-k1-g1-p.tbf" in out
    assert "bent=true regularity=regular degree=4" in out
    assert os.path.exists("binomial-general-k1-g1-p.tbf")
    fields, _ = read_certificate("binomial-general-k1-g1-p.cert")
    assert fields["bent"] == "true" and fields["unit"] == "+1"


def test_construct_out_prefix_and_plot(capsys):
    rc = main(["construct", "--family", "baseline", "--k", "1",
               "--out", "base", "--plot"])
    assert rc == EXIT_OK
    assert os.path.exists("base.tbf") and os.path.exists("base.cert")
    assert os.path.exists("base.spectrum.png")
    out = capsys.readouterr().out
    assert "bent=true regularity=weak-minus degree=4" in out


def test_construct_n_mismatch(capsys):
    rc = main(["construct", "--family", "trinomial", "--k", "3",
               "--n", "8"])
    assert rc == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_construct_force_naive_matches(capsys):
    rc = main(["construct", "--family", "trinomial", "--k", "2",
               "--out", "fastpath"])
    rc2 = main(["construct", "--family", "trinomial", "--k", "2",
                "--out", "naivepath", "--force-naive"])
    assert rc == rc2 == EXIT_OK
    assert (open("fastpath.cert").read().splitlines()[:9]
            == open("naivepath.cert").read().splitlines()[:9])


def test_verify_roundtrip_and_spot_checks(capsys):
    main(["construct", "--family", "binomial-general", "--k", "1",
          "--a1", "g^3", "--sign", "-", "--out", "f"])
    rc = main(["verify", "f.tbf", "--spot-check", "5", "--seed", "7"])
    assert rc == EXIT_OK
    assert os.path.exists("f.verify.cert")
    fields, transcript = read_certificate("f.verify.cert")
    cfields, _ = read_certificate("f.cert")
    assert fields["table_sha256"] == cfields["table_sha256"]
    spots = [ln for ln in transcript if "spot-check b=" in ln]
    assert len(spots) == 5 and all(ln.startswith("PASS") for ln in spots)
    # determinism under a fixed seed
    rc2 = main(["verify", "f.tbf", "--spot-check", "5", "--seed", "7",
                "--certificate", "again.cert"])
    assert rc2 == EXIT_OK
    assert (open("f.verify.cert").read() == open("again.cert").read())


def test_verify_not_bent_exits_1(capsys):
    ctx = ctx_new(4)
    f = TernaryFn(ctx, ctx.trace1.copy())
    write_table("aff.tbf", f)
    rc = main(["verify", "aff.tbf"])
    assert rc == EXIT_FAIL
    assert "bent=false" in capsys.readouterr().out
    fields, _ = read_certificate("aff.verify.cert")
    assert fields["regularity"] == "none"


def test_verify_missing_file(capsys):
    rc = main(["verify", "nope.tbf"])
    assert rc == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_spectrum_export(capsys):
    main(["construct", "--family", "binomial-general", "--k", "1",
          "--a1", "g^1", "--out", "f"])
    rc = main(["spectrum", "f.tbf", "--plot"])
    assert rc == EXIT_OK
    out = capsys.readouterr().out
    assert "spectrum=f.spectrum.tsv" in out
    lines = open("f.spectrum.tsv").read().splitlines()
    assert len(lines) == 1 + 81
    f = read_table("f.tbf")
    want = spectrum_sha256(spectrum_fast(f))
    assert f"spectrum_sha256={want}" in out
    assert os.path.exists("f.spectrum.png")


def test_mm_check_binomial(capsys):
    main(["construct", "--family", "binomial-general", "--k", "1",
          "--a1", "g^1", "--out", "f"])
    rc = main(["mm-check", "f.tbf", "--subspace", "binomial",
               "--a1", "g^1"])
    assert rc == EXIT_OK
    out = capsys.readouterr().out
    assert "regular-bent criterion" in out
    assert "PASS: Maiorana-McFarland structure established" in out
    assert os.path.exists("f.mm.txt")


def test_mm_check_trinomial_self_orthogonal(capsys):
    main(["construct", "--family", "trinomial", "--k", "3", "--out", "t"])
    rc = main(["mm-check", "t.tbf", "--subspace", "trinomial"])
    assert rc == EXIT_OK
    out = capsys.readouterr().out
    assert "self-orthogonal" in out and "PASS" in out


def test_mm_check_basis_file(capsys):
    main(["construct", "--family", "binomial-general", "--k", "1",
          "--a1", "g^1", "--out", "f"])
    ctx = ctx_new(4)
    from bent3 import binomial_subspace
    V, _ = binomial_subspace(ctx, 1, ctx.generator, "+")
    with open("basis.txt", "w") as fh:
        fh.write("# automatically chosen coset basis\n")
        for b in V.basis:
            fh.write(f"t:{'' .join(str(d) for d in ctx.digits[b])}\n")
    rc = main(["mm-check", "f.tbf", "--subspace", "file:basis.txt"])
    assert rc == EXIT_OK


def test_mm_check_failure_and_usage(capsys):
    ctx = ctx_new(4)
    f = TernaryFn(ctx, ctx.trace1.copy())     # affine: derivatives constant
    write_table("aff.tbf", f)
    rc = main(["mm-check", "aff.tbf", "--subspace", "binomial",
               "--a1", "g^1"])
    assert rc == EXIT_FAIL
    assert "FAIL" in capsys.readouterr().out
    rc2 = main(["mm-check", "aff.tbf", "--subspace", "bogus"])
    assert rc2 == EXIT_USAGE
    rc3 = main(["mm-check", "aff.tbf", "--subspace", "binomial"])
    assert rc3 == EXIT_USAGE                   # --a1 missing


def test_sweep_deterministic_and_threaded(capsys):
    rc = main(["sweep", "--n", "4", "--out", "s1.tsv"])
    assert rc == EXIT_OK
    out = capsys.readouterr().out
    assert "rows=80" in out and "bent=80" in out
    assert "regularity[regular]=80" in out and "degree[4]=80" in out
    header, rows, summary = read_sweep("s1.tsv")
    assert len(rows) == 80
    assert all(r[2] == "true" for r in rows)
    main(["sweep", "--n", "4", "--out", "s2.tsv"])
    main(["sweep", "--n", "4", "--out", "s3.tsv", "--threads", "2"])
    b1 = open("s1.tsv", "rb").read()
    assert b1 == open("s2.tsv", "rb").read() == open("s3.tsv", "rb").read()


def test_sweep_plot(capsys):
    rc = main(["sweep", "--n", "4", "--out", "sw.tsv", "--plot"])
    assert rc == EXIT_OK
    assert os.path.exists("sw.png")


def test_sweep_rejects_other_n():
    with pytest.raises(SystemExit) as e:
        main(["sweep", "--n", "6"])
    assert e.value.code == 2


def test_expand(capsys, tmp_path):
    rc = main(["expand", "--family", "exceptional-a-a5", "--k", "1",
               "--out", "exp.txt"])
    assert rc == EXIT_OK
    out = capsys.readouterr().out
    assert "family=exceptional-a-a5" in out and "polynomial=" in out
    terms = [ln for ln in out.splitlines() if ln.startswith("term ")]
    assert len(terms) == 6
    assert open("exp.txt").read().splitlines()[0] == "family=exceptional-a-a5"
    assert main(["expand", "--family", "baseline", "--k", "1"]) == EXIT_USAGE
    assert main(["expand", "--family", "exceptional-a-a5", "--k", "3"]) \
        == EXIT_USAGE


def test_version():
    with pytest.raises(SystemExit) as e:
        main(["--version"])
    assert e.value.code == 0
