import pytest

import flat_signatures.facade
from flat_signatures import ConfigManager, SignatureFacade
from flat_signatures.blocks import BLOCK_MAP
from flat_signatures.certificates import CertificateStore, Verdict
from flat_signatures.errors import PlanIncomplete, UnachievableValue, VerificationFailure
from flat_signatures.facade import OracleDisabledWarning
from flat_signatures.lift import DEFAULT_STEPS


@pytest.fixture
def facade(config_dir, tmp_path):
    return SignatureFacade(output_dir=tmp_path / "out")


def test_config_round_trip(config_dir, tmp_path):
    config = ConfigManager()
    assert config.show() == {"output_dir": "", "workers": 1, "oracle": True, "lift_steps": 4}
    config.set_output_dir(tmp_path / "results")
    config.set_workers(3)
    config.set_oracle(False)
    config.set_lift_steps(8)
    again = ConfigManager()
    assert again.get_output_dir() == (tmp_path / "results").resolve()
    assert again.get_workers() == 3
    assert again.get_oracle() is False
    assert again.get_lift_steps() == 8


def test_config_validation(config_dir):
    config = ConfigManager()
    with pytest.raises(ValueError):
        config.set_workers(0)
    with pytest.raises(TypeError):
        config.set_workers("2")
    with pytest.raises(TypeError):
        config.set_oracle("yes")


def test_unreadable_config_falls_back(config_dir, capsys):
    config_dir.mkdir(parents=True)
    (config_dir / "config.json").write_text("{broken")
    assert ConfigManager().get_workers() == 1
    assert "Warning" in capsys.readouterr().out


def test_facade_uses_configured_output_dir(config_dir, tmp_path):
    ConfigManager().set_output_dir(tmp_path / "configured")
    facade = SignatureFacade()
    assert facade.output_dir == (tmp_path / "configured").resolve()
    assert facade.logs_dir.exists()
    assert "Output Directory" in str(facade)


def test_lift_steps_belong_to_each_facade(config_dir, tmp_path):
    coarse = SignatureFacade(output_dir=tmp_path / "a", lift_steps=2)
    fine = SignatureFacade(output_dir=tmp_path / "b", lift_steps=16)
    assert (coarse.lift_steps, fine.lift_steps) == (2, 16)
    assert SignatureFacade(output_dir=tmp_path / "c").lift_steps == DEFAULT_STEPS
    _, path = coarse.construct("hyperparabolic", "1,1", m=-1)
    assert fine.invariants(path).signature_formula == -1
    assert coarse.verify(path).verdict == Verdict.PASS
    with pytest.raises(ValueError):
        SignatureFacade(output_dir=tmp_path / "d", lift_steps=-1)


def test_construct_writes_a_certificate(facade):
    cert, path = facade.construct("paraelliptic", "0,3", m=-1)
    assert cert.verdict == Verdict.PASS
    assert path.exists()
    assert path.parent == facade.store.certificates_path
    assert facade.invariants(path).signature_formula == -1
    assert facade.verify(path).verdict == Verdict.PASS


@pytest.mark.parametrize("p, m", [(2, -1), (2, 1), (1, 0)])
def test_unitary_construct_then_verify(facade, p, m):
    cert, path = facade.construct("up", "1,2", m=m, p=p)
    assert cert.verdict == Verdict.PASS
    assert facade.verify(path).verdict == Verdict.PASS


def test_construct_refusals(facade):
    with pytest.raises(UnachievableValue):
        facade.construct("paraelliptic", "0,3", m=3)
    with pytest.raises(PlanIncomplete):
        facade.construct("elliptic", "1,2", m=2)
    with pytest.raises(ValueError):
        facade.construct("paraelliptic", "0,3")


def test_random_construction_is_seeded(facade, tmp_path):
    runs = []
    for name in ("a.json", "b.json"):
        with pytest.warns(OracleDisabledWarning):
            cert, _ = facade.construct(
                "random", (1, 1), oracle=False, seed=7, output=tmp_path / name
            )
        runs.append(cert)
    first, second = runs
    assert first.family == "random"
    assert first.representation.boundary == second.representation.boundary


def test_verify_reports_tampering(facade):
    _, path = facade.construct("hyperparabolic", "1,1", m=1)
    path.write_text(path.read_text().replace('"signature_formula": 1', '"signature_formula": 2'))
    with pytest.raises(VerificationFailure):
        facade.verify(path)


def test_values_and_catalog():
    assert SignatureFacade.values("elliptic", "0,4") == [-4, 0, 4]
    assert SignatureFacade.values("up", [1, 2], p=2) == [-2, -1, 0, 1, 2]
    assert SignatureFacade.catalog().height == len(BLOCK_MAP)


def test_sweep_records_every_cell(facade):
    rows, path = facade.sweep("elliptic", "1,2;0,3", workers=2)
    by_cell = {(r.g, r.n, r.m): r.verdict for r in rows}
    assert [(r.g, r.n) for r in rows][:9] == [(1, 2)] * 9
    assert by_cell[(1, 2, -4)] == Verdict.PASS
    assert by_cell[(1, 2, -3)] == Verdict.UNACHIEVABLE
    assert by_cell[(1, 2, 2)] == Verdict.INCOMPLETE
    assert by_cell[(0, 3, 0)] == Verdict.UNACHIEVABLE
    assert by_cell[(0, 3, 2)] == Verdict.PASS

    table = CertificateStore.read_sweep(path)
    assert table.height == len(rows) == 9 + 5
    assert set(table["verdict"].to_list()) <= {v.value for v in Verdict}


def test_sweep_keeps_crashed_cells(facade, monkeypatch, capsys):
    original = flat_signatures.facade.plan

    def flaky(target):
        if target.m == 1:
            raise RuntimeError("worker died")
        return original(target)

    monkeypatch.setattr("flat_signatures.facade.plan", flaky)
    rows, path = facade.sweep("hyperparabolic", "0,3", workers=2)
    assert [r.m for r in rows] == [-2, -1, 0, 1, 2]
    assert [r.verdict for r in rows] == [Verdict.PASS] * 3 + [Verdict.ERROR, Verdict.PASS]
    assert CertificateStore.read_sweep(path).height == 5
    assert "A sweep cell failed" in capsys.readouterr().out


def test_sweep_skips_unsupported_surfaces(facade, capsys):
    rows, _ = facade.sweep("paraelliptic", "0,2;0,3")
    assert {(r.g, r.n) for r in rows} == {(0, 3)}
    assert all(r.verdict == Verdict.PASS for r in rows)
    assert "skipping surface (0,2)" in capsys.readouterr().out


@pytest.mark.parametrize(
    "surface, parsed",
    [("1,2", (1, 2)), ("(0, 3)", (0, 3)), ((2, 1), (2, 1)), ([0, 4], (0, 4))],
)
def test_surface_parsing(surface, parsed):
    assert SignatureFacade._validate_surface(surface) == parsed


@pytest.mark.parametrize("surface", ["1", "1,0", "a,b", "-1,2"])
def test_surface_parsing_errors(surface):
    with pytest.raises(ValueError):
        SignatureFacade._validate_surface(surface)


def test_surface_lists():
    assert SignatureFacade._validate_surfaces("0,3;1,1") == [(0, 3), (1, 1)]
    assert SignatureFacade._validate_surfaces((1, 1)) == [(1, 1)]
    assert SignatureFacade._validate_surfaces([(0, 3), "1,2"]) == [(0, 3), (1, 2)]
    with pytest.raises(TypeError):
        SignatureFacade._validate_surfaces(3)
