import json

from birsphere.classify import (
    classify_dp4_datum,
    classify_spheremap,
    decide_conjugacy,
    parse_element,
    spheremap_from_json,
    spheremap_to_json,
)
from birsphere.cli import main
from birsphere.sphere import builtin_map


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_element_forms():
    assert parse_element("builtin:tau") == builtin_map("tau")
    g = parse_element("[[0, 1-z^2],[1, 0]]")
    assert g.fiber == builtin_map("tau").fiber
    d = parse_element("diag(z+2i, z-2i)")
    assert d.base.kind == "id"


def test_spheremap_json_roundtrip():
    for name in ("tau", "upsilon", "antipodal", "tilde_eta", "rot:1/3", "gb:1/2", "g2p:1/2"):
        g = builtin_map(name)
        data = spheremap_to_json(g)
        back = spheremap_from_json(json.loads(json.dumps(data)))
        assert back == g, name


def test_classification_table():
    expectations = {
        "tau": 4,
        "upsilon": 4,
        "antipodal": 5,
        "rot:1/2": 3,
        "rot:1/3": 3,
        "g2p:1/2": 8,
        "tilde_eta": "linear-stratum",
        "g1p:1/2": "rational-special",
        "gb:1/2": "reality-only",
    }
    for name, family in expectations.items():
        report = classify_spheremap(builtin_map(name))
        assert report.family == family, (name, report.family)


def test_classify_flipped_shift_reduces():
    g = builtin_map("gb:1/2").compose(builtin_map("tilde_eta"))
    report = classify_spheremap(g)
    assert any(c.get("kind") == "base-reduction" for c in report.certificates)
    assert report.family in (3, 4, 5, 6, 7, 8, "linear-stratum", "rational-special")


def test_decide_conjugacy():
    res = decide_conjugacy(builtin_map("tau"), builtin_map("upsilon"))
    assert res["conjugate"] and res["verified"]
    res = decide_conjugacy(builtin_map("g1p:1/2"), builtin_map("g1p:1/3"))
    assert not res["conjugate"]
    res = decide_conjugacy(builtin_map("g1p:1/2"), builtin_map("g1p:-1/2"))
    assert res["conjugate"] and res["verified"]
    res = decide_conjugacy(builtin_map("g2p:1/2"), builtin_map("g2p:1/3"))
    assert not res["conjugate"]
    res = decide_conjugacy(builtin_map("g2p:1/2"), builtin_map("g2p:-1/2"))
    assert res["conjugate"]


def test_dp4_data_route():
    rep = classify_dp4_datum("alpha1")
    assert rep.family == 2 and rep.moduli["invariant_rank"] == 1
    rep = classify_dp4_datum("geiser")
    assert rep.family == 1 and rep.moduli["minus_one_classes"] == 56


def test_cli_classify(capsys):
    code, out, _ = run_cli(capsys, "classify", "builtin:tau")
    assert code == 0
    payload = json.loads(out)
    assert payload["family"] == 4
    assert payload["certificates"][0]["verified"]


def test_cli_member_fix_h2_order(capsys):
    code, out, _ = run_cli(capsys, "member", "--group", "H0", "diag(z+2i,z-2i)")
    assert code == 0 and json.loads(out)["member"] is True
    code, out, _ = run_cli(capsys, "member", "--group", "H0", "builtin:tau")
    assert code == 0 and json.loads(out)["member"] is False
    code, out, _ = run_cli(capsys, "member", "--group", "H", "builtin:tau")
    assert code == 0 and json.loads(out)["member"] is True
    code, out, _ = run_cli(capsys, "fix", "builtin:tau")
    payload = json.loads(out)
    assert payload == {"m": "z^2-1", "sign": "-", "genus": 0}
    code, out, _ = run_cli(capsys, "h2", "builtin:g2p:1/2")
    payload = json.loads(out)
    assert payload["sign"] == "+" and len(payload["gens"]) == 1
    code, out, _ = run_cli(capsys, "order", "builtin:rot:1/6")
    assert json.loads(out)["order"] == 6


def test_cli_eval(capsys):
    code, out, _ = run_cli(capsys, "eval", "builtin:tau", "--point", "1,3/5,0,4/5")
    payload = json.loads(out)
    assert payload["defined"] and payload["image"] == ["1", "3/5", "0", "4/5"]
    code, out, _ = run_cli(capsys, "eval", "builtin:tau", "--point", "0,i,1,0")
    assert not json.loads(out)["defined"]


def test_cli_picard(capsys):
    code, out, _ = run_cli(capsys, "picard", "counts", "2")
    assert json.loads(out)["minus_one_classes"] == 56
    code, out, _ = run_cli(capsys, "picard", "dp4", "--op", "alpha1", "--check", "rank")
    assert json.loads(out)["invariant_rank"] == 1
    code, out, _ = run_cli(capsys, "picard", "dp4", "--op", "gamma1", "--check", "preserves", "--mu", "3/5+4/5i")
    assert json.loads(out)["preserves_quadrics"] is True
    code, out, _ = run_cli(capsys, "picard", "geiser")
    payload = json.loads(out)
    assert payload["swaps_with_minus_k"] and payload["invariant_rank"] == 1
    code, out, _ = run_cli(capsys, "picard", "dp4", "--check", "rho", "--mu", "3/5+4/5i")
    assert json.loads(out)["extra_symmetry"] is True


def test_cli_exit_codes(capsys):
    code, _, err = run_cli(capsys, "classify", "builtin:nonsense")
    assert code == 2
    code, _, err = run_cli(capsys, "order", "not a matrix")
    assert code == 2
    code, _, err = run_cli(capsys, "fix", "builtin:gb:1/2")
    assert code == 3  # nontrivial base action is outside the fixed-curve surface
    code, _, err = run_cli(capsys, "h2", "builtin:rot:1/3")
    assert code == 5  # base action is not the flip


def test_cli_builtin_list(capsys):
    code, out, _ = run_cli(capsys, "builtin")
    names = json.loads(out)["builtins"]
    assert "tau" in names and "g2p:t" in names


def test_classification_stable_under_rescaling(capsys):
    g = builtin_map("g1p:1/2")
    a, b, c, d = g.fiber.entries()
    from birsphere.poly import Poly
    from birsphere.projmat import ProjMat
    from birsphere.sphere import SphereMap

    scaled = SphereMap(ProjMat.of(*(p * Poly([3, 7]) for p in (a, b, c, d))), g.base)
    rep1 = classify_spheremap(g)
    rep2 = classify_spheremap(scaled)
    assert rep1.family == rep2.family and rep1.moduli == rep2.moduli


def test_cli_dp4_and_geiser_routes(capsys):
    code, out, _ = run_cli(capsys, "classify", "dp4:alpha2")
    payload = json.loads(out)
    assert code == 0 and payload["family"] == 2 and payload["moduli"]["invariant_rank"] == 1
    code, out, _ = run_cli(capsys, "classify", "geiser")
    payload = json.loads(out)
    assert payload["family"] == 1 and payload["moduli"]["minus_one_classes"] == 56


def test_cli_nonprime_order_caveat(capsys):
    code, out, _ = run_cli(capsys, "classify", "builtin:rot:1/4")
    payload = json.loads(out)
    assert payload["family"] == 3 and payload["moduli"]["angle"] == [1, 4]
    assert any("not prime" in c for c in payload["caveats"])


def test_cli_out_of_scope_contracting_involution(capsys):
    code, out, _ = run_cli(capsys, "classify", "[[i*z, 1-z^2],[1, -i*z]]")
    payload = json.loads(out)
    assert payload["family"] == "out-of-scope"
    assert payload["moduli"]["fixed_curve"]["m"] == "z^2-1/2"


def test_cli_linear_stratum_exit_code(capsys):
    code, out, _ = run_cli(capsys, "classify", "builtin:tilde_eta")
    assert code == 4  # explicitly-undecided stratum
    code, out, _ = run_cli(capsys, "classify", "builtin:tilde_eta", "--allow-undecided")
    assert code == 0
