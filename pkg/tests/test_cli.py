import json
from importlib import resources
from pathlib import Path

import jsonschema

from tautilt.cli import run

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def alg(name):
    return str(FIXTURES / f"{name}.alg")


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def schema(name):
    with resources.files("tautilt.schemas").joinpath(name).open("r") as fh:
        return json.load(fh)


def validator(name):
    base = schema(name)
    registry_schemas = {
        s["$id"]: s
        for s in (schema("representation.schema.json"), schema("ar_quiver.schema.json"), schema("hasse.schema.json"))
    }
    from referencing import Registry, Resource

    registry = Registry().with_resources(
        (k, Resource.from_contents(v)) for k, v in registry_schemas.items()
    )
    return jsonschema.Draft202012Validator(base, registry=registry)


def test_basis_verb(tmp_path, capsys):
    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "basis", alg("a3rel"))
    assert code == 0
    assert "dim 5" in out


def test_tau_verb_worked_example(tmp_path, capsys):
    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "tau", alg("a3lin"), "--module", "010")
    assert code == 0
    assert out.strip() == "001"


def test_tau_inverse(tmp_path, capsys):
    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "tau", alg("kronecker"),
                          "--no-cache", "--module", "P(2)", "--inverse")
    assert code == 0
    assert out.strip() == "23"


def test_hasse_json_vertex_count(tmp_path, capsys):
    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "--format", "json",
                          "hasse", alg("a3rel"))
    assert code == 0
    payload = json.loads(out)
    assert payload["counts"]["vertices"] == 12
    assert payload["counts"]["edges"] == 18
    validator("hasse.schema.json").validate(payload)


def test_hasse_dot_a2(tmp_path, capsys):
    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "--format", "dot",
                          "hasse", alg("a2"))
    assert code == 0
    assert out.count(" -> ") == 5
    assert out.count("label=") >= 10  # 5 nodes + 5 edge labels


def test_ar_quiver_dot_a3rel(tmp_path, capsys):
    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "--format", "dot",
                          "ar-quiver", alg("a3rel"))
    assert code == 0
    assert out.count("[label=") >= 5
    # 110 = P(1) is projective-injective here, so only two tau links survive
    assert out.count("style=dashed") == 2


def test_ar_quiver_dot_a3lin_has_three_tau_links(tmp_path, capsys):
    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "--format", "dot",
                          "ar-quiver", alg("a3lin"))
    assert code == 0
    assert out.count("style=dashed") == 3


def test_indecs_kronecker_exit_code(tmp_path, capsys):
    code, out, err = invoke(capsys, "--cache-dir", str(tmp_path), "--dim-cap", "12",
                            "indecs", alg("kronecker"))
    assert code == 1
    assert "not representation-finite within caps" in err
    assert "homology" in err


def test_usage_error_exit_code(tmp_path, capsys):
    assert invoke(capsys, "definitely-not-a-verb")[0] == 2


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    bad.write_text("algebra x { vertices: 1 2; arrows a: 1->2; }")  # missing colon
    code, _, err = invoke(capsys, "basis", str(bad))
    assert code == 2
    assert "error [algebra/parse]" in err


def test_torsion_oracle_table_a2(tmp_path, capsys):
    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "torsion-oracle", alg("a2"))
    assert code == 0
    assert "5 torsion classes" in out
    assert "01 + 10 + 11" in out


def test_rep_json_roundtrip_schema(tmp_path, capsys):
    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "--format", "json",
                          "tau", alg("a3lin"), "--module", "100")
    assert code == 0
    payload = json.loads(out)
    validator("representation.schema.json").validate(payload)


def test_ar_quiver_json_schema(tmp_path, capsys):
    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "--format", "json",
                          "indecs", alg("a3rel"))
    assert code == 0
    validator("ar_quiver.schema.json").validate(json.loads(out))


def test_cache_roundtrip_bytes(tmp_path, capsys):
    args = ["--cache-dir", str(tmp_path), "--format", "json", "indecs", alg("skewed")]
    code1, out1, _ = invoke(capsys, *args)
    assert code1 == 0
    files = list(Path(tmp_path).glob("*.json"))
    assert len(files) == 1
    code2, out2, _ = invoke(capsys, *args)
    assert code2 == 0
    assert out1 == out2


def test_hasse_from_warm_cache_matches_fresh(tmp_path, capsys):
    args = ["--cache-dir", str(tmp_path), "--format", "json", "hasse", alg("a3rel")]
    code1, fresh, _ = invoke(capsys, *args)
    assert code1 == 0
    assert len(list(Path(tmp_path).glob("*.json"))) == 1
    code2, warmed, _ = invoke(capsys, *args)   # reconstructs the AR data from disk
    assert code2 == 0
    assert warmed == fresh


def test_cache_key_changes_with_caps(tmp_path, capsys):
    invoke(capsys, "--cache-dir", str(tmp_path), "indecs", alg("a2"))
    invoke(capsys, "--cache-dir", str(tmp_path), "--dim-cap", "23", "indecs", alg("a2"))
    assert len(list(Path(tmp_path).glob("*.json"))) == 2


def test_cache_key_changes_with_source(tmp_path, capsys):
    invoke(capsys, "--cache-dir", str(tmp_path), "indecs", alg("a3lin"))
    invoke(capsys, "--cache-dir", str(tmp_path), "indecs", alg("a3rel"))
    assert len(list(Path(tmp_path).glob("*.json"))) == 2


def test_corrupt_cache_recovers(tmp_path, capsys):
    args = ["--cache-dir", str(tmp_path), "--format", "json", "indecs", alg("a2")]
    invoke(capsys, *args)
    entry = next(Path(tmp_path).glob("*.json"))
    entry.write_text("{ not json")
    code, out, err = invoke(capsys, *args)
    assert code == 0
    assert "corrupt cache entry" in err
    assert json.loads(out)["indecomposables"]


def test_mutate_verb(tmp_path, capsys):
    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "--format", "json",
                          "mutate", alg("a2"), "--summands", "01,11", "--at", "01")
    assert code == 0
    payload = json.loads(out)
    assert payload["direction"] == "left"
    assert payload["pair"] == "10+11"


def test_mutate_at_killed_vertex(tmp_path, capsys):
    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "--format", "json",
                          "mutate", alg("a2"), "--summands", "", "--kill", "1,2", "--at", "P(1)")
    assert code == 0
    payload = json.loads(out)
    assert payload["direction"] == "right"
    assert payload["pair"] == "10 | kill 2"


def test_probe_verbs(tmp_path, capsys):
    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "--format", "json",
                          "probe", alg("a3rel"))
    assert code == 0
    payload = json.loads(out)
    assert payload["tau_tilting_finite"] is True
    assert payload["count"] == 12

    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "--format", "json",
                          "--dim-cap", "10", "--vertex-cap", "16", "probe", alg("kronecker"))
    assert code == 0
    assert json.loads(out)["tau_tilting_finite"] is None


def test_statt_and_bongartz_verbs(tmp_path, capsys):
    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "--format", "json",
                          "bongartz", alg("a3lin"), "--module", "010")
    assert code == 0
    assert json.loads(out)["completion"] == ["010", "011", "111"]

    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "--format", "json",
                          "statt-check", alg("a3lin"), "--module", "010+111")
    assert code == 0
    assert json.loads(out)["support_tau_tilting"] is False


def test_grigid_verb(tmp_path, capsys):
    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "--format", "json",
                          "grigid", alg("a3lin"), "--module", "010+111")
    assert code == 0
    payload = json.loads(out)
    assert payload["tau_rigid"] is True
    assert payload["g_vectors_independent"] is True


def test_dagger_verb(tmp_path, capsys):
    code, out, _ = invoke(capsys, "--cache-dir", str(tmp_path), "--format", "json",
                          "dagger", alg("a2"), "--summands", "01,11")
    assert code == 0
    payload = json.loads(out)
    assert payload["summands"] == []
    assert payload["kill"] == [1, 2]


def test_determinism_under_seed(tmp_path, capsys):
    a = invoke(capsys, "--cache-dir", str(tmp_path), "--no-cache", "--seed", "7",
               "--format", "json", "hasse", alg("skewed"))
    b = invoke(capsys, "--cache-dir", str(tmp_path), "--no-cache", "--seed", "7",
               "--format", "json", "hasse", alg("skewed"))
    assert a == b
