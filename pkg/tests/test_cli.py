"""Command-line contract: exit codes, file outputs, determinism."""
from __future__ import annotations

import json

from crossrank import serialize
from crossrank.algebra import CrossedElement, GroupSpec
from crossrank.cli import main


def write_element(path, element):
    return serialize.write_file(path, serialize.crossed_to_obj(element))


def test_cert_upper_unit_pair(tmp_path, capsys):
    spec = GroupSpec(2)
    x = write_element(tmp_path / "x.json", CrossedElement.unit(spec))
    y = write_element(tmp_path / "y.json", CrossedElement.zero(spec))
    out = tmp_path / "cert.json"
    code = main(["cert-upper", str(x), str(y), "--seed", "1", "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["type"] == "bezout"
    assert payload["residual"] < 1e-12
    assert str(out) in capsys.readouterr().out


def test_cert_upper_requires_matching_groups(tmp_path):
    x = write_element(tmp_path / "x.json", CrossedElement.unit(GroupSpec(2)))
    y = write_element(tmp_path / "y.json", CrossedElement.unit(GroupSpec(3)))
    code = main(["cert-upper", str(x), str(y), "--out", str(tmp_path / "c.json")])
    assert code == 1


def test_cert_upper_is_deterministic(tmp_path):
    stem = tmp_path / "pair"
    assert main(["random", "--seed", "7", "--n", "3", "--degree-cap", "4",
                 "--out", str(stem)]) == 0
    x, y = stem.parent / "pair-x.json", stem.parent / "pair-y.json"
    out1, out2 = tmp_path / "c1.json", tmp_path / "c2.json"
    assert main(["cert-upper", str(x), str(y), "--seed", "7",
                 "--out", str(out1)]) == 0
    assert main(["cert-upper", str(x), str(y), "--seed", "7",
                 "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cert_lower_and_verify(tmp_path):
    out = tmp_path / "obstruction.json"
    assert main(["cert-lower", "--n", "5", "--samples", "4096",
                 "--epsilon", "0.05", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["winding"] == 5
    assert main(["verify", str(out)]) == 0


def test_cert_lower_order_one(tmp_path):
    out = tmp_path / "trivial.json"
    assert main(["cert-lower", "--n", "1", "--m", "0", "--epsilon", "0.1",
                 "--out", str(out)]) == 0
    assert json.loads(out.read_text())["winding"] == 1


def test_verify_round_trip_and_corruption(tmp_path):
    stem = tmp_path / "pair"
    main(["random", "--seed", "11", "--n", "2", "--out", str(stem)])
    out = tmp_path / "cert.json"
    assert main(["cert-upper", str(stem) + "-x.json", str(stem) + "-y.json",
                 "--seed", "11", "--out", str(out)]) == 0
    assert main(["verify", str(out)]) == 0

    payload = json.loads(out.read_text())
    payload["cofactors"]["c"]["comps"][0][0][0] += 1e-3
    corrupted = tmp_path / "corrupted.json"
    corrupted.write_text(json.dumps(payload))
    assert main(["verify", str(corrupted)]) == 2


def test_verify_truncated_json(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"type": "bezout", "n": 2')
    assert main(["verify", str(broken)]) == 1


def test_verify_unknown_type(tmp_path):
    weird = tmp_path / "weird.json"
    weird.write_text('{"type": "sonnet"}')
    assert main(["verify", str(weird)]) == 1


def test_verify_batch(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["cert-lower", "--n", "2", "--epsilon", "0.1", "--out", str(a)]) == 0
    assert main(["cert-lower", "--n", "3", "--epsilon", "0.05", "--out", str(b)]) == 0
    assert main(["verify", str(a), str(b)]) == 0


def test_bounds_reports_values(capsys):
    assert main(["bounds", "--ltsr-a", "2", "--n", "3", "--matrix-size", "4",
                 "--ltsr-b", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["crossed_product_bound"] == 4
    assert payload["cyclic_bound"] == 3
    assert payload["matrix_formula"] == 2  # ceil(1/4) + 1
    assert payload["reverse_bound"] == 13


def test_bounds_rejects_bad_input():
    assert main(["bounds", "--ltsr-a", "0"]) == 1


def test_random_subgroup_and_conjugate_pipeline(tmp_path):
    sub = tmp_path / "subgroup.json"
    assert main(["random-subgroup", "--seed", "3", "--n", "4",
                 "--out", str(sub)]) == 0
    conj = tmp_path / "conjugation.json"
    assert main(["conjugate", str(sub), "--out", str(conj)]) == 0
    payload = json.loads(conj.read_text())
    assert payload["residual"] < 1e-8
    assert main(["verify", str(conj)]) == 0

    derived = payload["derived_spec"]
    stem = tmp_path / "pair"
    assert main(["random", "--seed", "5", "--n", str(derived["n"]),
                 "--m", str(derived["m"]), "--out", str(stem)]) == 0
    cert = tmp_path / "cert.json"
    assert main(["cert-upper", str(stem) + "-x.json", str(stem) + "-y.json",
                 "--seed", "5", "--out", str(cert)]) == 0
    assert main(["verify", str(cert)]) == 0


def test_random_is_deterministic(tmp_path):
    s1, s2 = tmp_path / "a", tmp_path / "b"
    main(["random", "--seed", "42", "--n", "2", "--out", str(s1)])
    main(["random", "--seed", "42", "--n", "2", "--out", str(s2)])
    assert (tmp_path / "a-x.json").read_bytes() == (tmp_path / "b-x.json").read_bytes()
    assert (tmp_path / "a-y.json").read_bytes() == (tmp_path / "b-y.json").read_bytes()


def test_config_validation(tmp_path):
    # samples must be a power of two at least 64
    assert main(["cert-lower", "--n", "2", "--samples", "100",
                 "--out", str(tmp_path / "o.json")]) == 1
    assert main(["cert-lower", "--n", "2", "--samples", "32",
                 "--out", str(tmp_path / "o.json")]) == 1


def test_missing_file_is_malformed(tmp_path):
    assert main(["cert-upper", str(tmp_path / "nope.json"),
                 str(tmp_path / "nada.json"), "--out",
                 str(tmp_path / "c.json")]) == 1


def test_cert_upper_mathematical_failure_is_exit_two(tmp_path, capsys):
    # order 5 at degree cap 4 runs into the cofactor conditioning wall
    stem = tmp_path / "pair"
    assert main(["random", "--seed", "424242", "--n", "5", "--degree-cap", "4",
                 "--out", str(stem)]) == 0
    code = main(["cert-upper", f"{stem}-x.json", f"{stem}-y.json",
                 "--seed", "424242", "--out", str(tmp_path / "cert.json")])
    assert code == 2
    assert "error:" in capsys.readouterr().err
