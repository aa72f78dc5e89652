import csv

import numpy as np
import pytest

from fibstego.cli import main, parse_seed
from fibstego.covers import generate_cover
from fibstego.errors import FormatError
from fibstego.pgm import format_pgm, parse_pgm, read_pgm, write_pgm
from fibstego.sisr import SisrContainer


@pytest.fixture
def corpus(tmp_path):
    covers = tmp_path / "covers"
    secrets = tmp_path / "secrets"
    assert main(["gen-covers", "--count", "2", "--width", "128", "--height", "128",
                 "--seed", "1", "--out-dir", str(covers)]) == 0
    assert main(["gen-covers", "--count", "2", "--width", "32", "--height", "32",
                 "--seed", "0x10", "--out-dir", str(secrets)]) == 0
    return covers, secrets


def test_pgm_roundtrip(tmp_path, rng):
    for dtype, top in ((np.uint8, 256), (np.uint16, 65536)):
        img = rng.integers(0, top, size=(5, 7)).astype(dtype)
        blob = format_pgm(img)
        back = parse_pgm(blob)
        assert back.dtype == dtype
        np.testing.assert_array_equal(back, img)
        assert format_pgm(back) == blob
    img16 = np.array([[0x0102]], dtype=np.uint16)
    assert format_pgm(img16).endswith(b"\x01\x02")


def test_pgm_header_comments():
    data = b"P5\n# made by hand\n2 1\n# depth\n255\n\x07\x08"
    assert parse_pgm(data).tolist() == [[7, 8]]


@pytest.mark.parametrize("blob", [
    b"P2\n1 1\n255\n\x00",
    b"P5\n2 2\n255\n\x00",
    b"P5\n1 1\n1023\n\x00\x00",
    b"P5\n1 1\n",
])
def test_pgm_rejects(blob):
    with pytest.raises(FormatError):
        parse_pgm(blob)


def test_parse_seed():
    assert parse_seed("42") == 42
    assert parse_seed("0xff") == 255


def test_gen_covers_deterministic(tmp_path):
    for out in ("a", "b"):
        assert main(["gen-covers", "--count", "2", "--width", "32", "--height", "16",
                     "--seed", "5", "--out-dir", str(tmp_path / out)]) == 0
    for name in ("cover_0000.pgm", "cover_0001.pgm"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    img = read_pgm(tmp_path / "a" / "cover_0000.pgm")
    assert img.shape == (16, 32) and img.var() > 0


def test_gen_covers_seed_from_env(tmp_path, monkeypatch):
    monkeypatch.setenv("FIBSTEGO_SEED", "0x5")
    assert main(["gen-covers", "--count", "1", "--width", "8", "--height", "8",
                 "--out-dir", str(tmp_path / "env")]) == 0
    np.testing.assert_array_equal(read_pgm(tmp_path / "env" / "cover_0000.pgm"), generate_cover(8, 8, 5))


def test_sisr_cli_roundtrip(tmp_path, rng):
    for dtype, top in ((np.uint8, 256), (np.uint16, 65536)):
        src = tmp_path / f"in{top}.pgm"
        write_pgm(src, rng.integers(0, top, size=(16, 32)).astype(dtype))
        assert main(["sisr-encode", str(src), str(tmp_path / "x.sisr"), "-k", "8"]) == 0
        assert main(["sisr-decode", str(tmp_path / "x.sisr"), str(tmp_path / "out.pgm")]) == 0
        assert (tmp_path / "out.pgm").read_bytes() == src.read_bytes()


def test_sisr_cli_constant(tmp_path):
    write_pgm(tmp_path / "c.pgm", np.full((4, 4), 9, dtype=np.uint8))
    assert main(["sisr-encode", str(tmp_path / "c.pgm"), str(tmp_path / "c.sisr")]) == 0
    cont = SisrContainer.from_bytes((tmp_path / "c.sisr").read_bytes())
    assert cont.nbits == 12 and len(cont.payload) == 2


def test_sisr_cli_errors(tmp_path, capsys):
    write_pgm(tmp_path / "odd.pgm", np.zeros((5, 5), dtype=np.uint8))
    assert main(["sisr-encode", str(tmp_path / "odd.pgm"), str(tmp_path / "o.sisr")]) == 2
    assert "not divisible" in capsys.readouterr().err
    (tmp_path / "junk.sisr").write_bytes(b"not a container at all....")
    assert main(["sisr-decode", str(tmp_path / "junk.sisr"), str(tmp_path / "o.pgm")]) == 2
    (tmp_path / "junk.pgm").write_bytes(b"GIF89a")
    assert main(["sisr-encode", str(tmp_path / "junk.pgm"), str(tmp_path / "o.sisr")]) == 2


@pytest.mark.parametrize("method", ["lsb", "fib-lsb", "map"])
@pytest.mark.parametrize("sisr", [True, False])
def test_embed_extract(tmp_path, corpus, method, sisr):
    covers, secrets = corpus
    secret = secrets / "cover_0000.pgm"
    args = ["embed", "--cover", str(covers / "cover_0000.pgm"), "--secret", str(secret),
            "--method", method, "--seed", "123", "--out", str(tmp_path / "stego.pgm")]
    assert main(args + (["--sisr"] if sisr else [])) == 0
    assert main(["extract", "--stego", str(tmp_path / "stego.pgm"), "--method", method,
                 "--seed", "123", "--out", str(tmp_path / "back.pgm")]) == 0
    assert (tmp_path / "back.pgm").read_bytes() == secret.read_bytes()


def test_extract_wrong_seed(tmp_path, corpus, capsys):
    covers, secrets = corpus
    assert main(["embed", "--cover", str(covers / "cover_0000.pgm"), "--secret", str(secrets / "cover_0000.pgm"),
                 "--method", "map", "--seed", "1", "--sisr", "--out", str(tmp_path / "s.pgm")]) == 0
    assert main(["extract", "--stego", str(tmp_path / "s.pgm"), "--method", "map",
                 "--seed", "2", "--out", str(tmp_path / "b.pgm")]) == 2
    assert "header" in capsys.readouterr().err


def test_embed_capacity_exit(tmp_path, corpus, capsys):
    covers, secrets = corpus
    # secret and cover swapped: a 128x128 secret cannot fit into 32x32 pixels
    assert main(["embed", "--cover", str(secrets / "cover_0000.pgm"), "--secret", str(covers / "cover_0000.pgm"),
                 "--method", "fib-lsb", "--seed", "1", "--out", str(tmp_path / "s.pgm")]) == 3
    err = capsys.readouterr().err
    assert "needs" in err and "offers" in err


def test_embed_seed_required(tmp_path, corpus, monkeypatch):
    monkeypatch.delenv("FIBSTEGO_SEED", raising=False)
    covers, secrets = corpus
    assert main(["embed", "--cover", str(covers / "cover_0000.pgm"), "--secret", str(secrets / "cover_0000.pgm"),
                 "--out", str(tmp_path / "s.pgm")]) == 2


def test_analyze(tmp_path, corpus, capsys):
    covers, _ = corpus
    assert main(["analyze", "--in", str(covers / "cover_0000.pgm"), "--detector", "both"]) == 0
    header, values = capsys.readouterr().out.strip().splitlines()
    fields = dict(zip(header.split(","), values.split(",")))
    assert set(fields) == {"rm", "sm", "rm_neg", "sm_neg", "rs_estimate", "ws_estimate", "ws_raw"}
    assert float(fields["ws_estimate"]) < 0.2
    write_pgm(tmp_path / "deep.pgm", np.zeros((8, 8), dtype=np.uint16))
    assert main(["analyze", "--in", str(tmp_path / "deep.pgm")]) == 2


def test_analyze_detects_lsb(tmp_path, corpus, capsys):
    covers, secrets = corpus
    for method in ("lsb", "map"):
        assert main(["embed", "--cover", str(covers / "cover_0001.pgm"), "--secret", str(secrets / "cover_0000.pgm"),
                     "--method", method, "--seed", "3", "--out", str(tmp_path / f"{method}.pgm")]) == 0
    capsys.readouterr()
    results = {}
    for method in ("lsb", "map"):
        main(["analyze", "--in", str(tmp_path / f"{method}.pgm"), "--detector", "ws"])
        header, values = capsys.readouterr().out.strip().splitlines()
        results[method] = float(dict(zip(header.split(","), values.split(",")))["ws_estimate"])
    assert results["lsb"] > results["map"]


def test_experiment(tmp_path, corpus):
    covers, secrets = corpus
    out = tmp_path / "report"
    assert main(["experiment", "--covers", str(covers), "--secrets", str(secrets),
                 "--out", str(out), "--seed", "9"]) == 0
    with (out / "reduction.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 2 * 3
    with (out / "quality.csv").open() as fh:
        quality = list(csv.DictReader(fh))
    assert len(quality) == 2 * 2 * 3 * 2
    assert {r["variant"] for r in quality} == {"original", "reduced"}
    with (out / "detection.csv").open() as fh:
        assert len(list(csv.DictReader(fh))) == 2 + 2 * 2 * 3 * 2
    first = {p.name: p.read_bytes() for p in out.iterdir()}
    out2 = tmp_path / "again"
    assert main(["experiment", "--covers", str(covers), "--secrets", str(secrets),
                 "--out", str(out2), "--seed", "9"]) == 0
    assert first == {p.name: p.read_bytes() for p in out2.iterdir()}


def test_experiment_config_file(tmp_path, corpus):
    import json

    covers, secrets = corpus
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"cover_dir": str(covers), "secret_dir": str(secrets),
                               "out_dir": str(tmp_path / "o"), "methods": ["map"],
                               "block_sizes": [4, 8], "seed": 1, "detectors": False}))
    assert main(["experiment", "--config", str(cfg)]) == 0
    assert (tmp_path / "o" / "summary.csv").exists()


def test_experiment_empty_corpus(tmp_path, corpus):
    covers, _ = corpus
    (tmp_path / "empty").mkdir()
    assert main(["experiment", "--covers", str(covers), "--secrets", str(tmp_path / "empty"),
                 "--out", str(tmp_path / "o")]) == 2


def test_experiment_rr_grows_with_block_size(tmp_path):
    secrets = tmp_path / "s"
    assert main(["gen-covers", "--count", "4", "--width", "256", "--height", "128",
                 "--seed", "40", "--out-dir", str(secrets)]) == 0
    out = tmp_path / "r"
    assert main(["experiment", "--covers", str(secrets), "--secrets", str(secrets), "--out", str(out),
                 "--methods", "map", "--no-detectors"]) == 0
    with (out / "summary.csv").open() as fh:
        rr = {int(r["k"]): float(r["mean"]) for r in csv.DictReader(fh)
              if r["table"] == "reduction" and r["metric"] == "rr"}
    assert rr[4] <= rr[8] <= rr[16]
