"""Tests for the TOML survey configuration."""

from pathlib import Path

import click
import pytest

from mm_sexpansion.config import SurveyConfig
from mm_sexpansion.expansion import Mode


class TestLoad:
    """Tests for SurveyConfig.load."""

    def test_valid_file(self, tmp_path: Path) -> None:
        """Loads and validates a survey file."""
        path = tmp_path / "survey.toml"
        path.write_text('algebra = "so3"\norder = 4\nmodes = ["full", "resred"]\nv0 = [1]\nv1 = [2, 3]\n')
        result = SurveyConfig.load(path)
        assert result.is_ok()
        cfg = result.unwrap()
        assert cfg.algebra == "so3"
        assert cfg.order == 4
        assert cfg.modes == [Mode.FULL, Mode.RESONANT_REDUCED]
        assert cfg.v1 == [2, 3]

    def test_defaults(self) -> None:
        """All four modes over order 3 of sl2."""
        cfg = SurveyConfig()
        assert cfg.algebra == "sl2"
        assert cfg.order == 3
        assert cfg.modes == list(Mode)
        assert cfg.threads == 1

    def test_modes_comma_string(self) -> None:
        """A comma-separated string of short names is accepted."""
        assert SurveyConfig(modes="full,red").modes == [Mode.FULL, Mode.REDUCED]  # type: ignore[arg-type]

    def test_missing_file(self, tmp_path: Path) -> None:
        """Missing files are errors."""
        assert SurveyConfig.load(tmp_path / "missing.toml").is_err()

    def test_invalid_toml_syntax(self, tmp_path: Path) -> None:
        """Malformed TOML is an error."""
        path = tmp_path / "bad.toml"
        path.write_text("[broken\n")
        assert SurveyConfig.load(path).is_err()

    @pytest.mark.parametrize(
        "body",
        [
            "order = 9\n",
            'modes = ["half"]\n',
            "modes = []\n",
            "v0 = [1]\n",
            "threads = 0\n",
            "tolerance = -1.0\n",
            "resume = true\n",
            "colour = true\n",
        ],
    )
    def test_validation_errors(self, tmp_path: Path, body: str) -> None:
        """Out-of-range values, half decompositions and unknown fields give validation_error."""
        path = tmp_path / "survey.toml"
        path.write_text(body)
        result = SurveyConfig.load(path)
        assert result.is_err()
        assert result.error == "validation_error"
        assert result.context
        assert len(result.context["errors"]) > 0

    def test_tilde_expansion(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """Expands ~ in the path."""
        home = tmp_path / "fakehome"
        home.mkdir()
        (home / "survey.toml").write_text("order = 2\n")
        monkeypatch.setenv("HOME", str(home))
        result = SurveyConfig.load(Path("~/survey.toml"))
        assert result.is_ok()
        assert result.unwrap().order == 2


class TestOverride:
    """Tests for SurveyConfig.override."""

    def test_replaces_given_fields(self) -> None:
        """Given fields win, the rest is kept."""
        cfg = SurveyConfig(algebra="so3", order=2)
        result = cfg.override({"order": 4, "modes": "res"})
        assert result.is_ok()
        new = result.unwrap()
        assert (new.algebra, new.order, new.modes) == ("so3", 4, [Mode.RESONANT])

    def test_validates_again(self) -> None:
        """Overrides are validated."""
        result = SurveyConfig().override({"order": 0})
        assert result.is_err()
        assert result.error == "validation_error"


class TestUnwrapOrExit:
    """Tests for SurveyConfig.unwrap_or_exit and load_or_exit."""

    def test_ok(self) -> None:
        """Returns the value of a successful result."""
        cfg = SurveyConfig()
        assert SurveyConfig.unwrap_or_exit(cfg.override({})) == cfg

    def test_validation_error_lists_fields(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Prints one line per invalid field and exits 1."""
        path = tmp_path / "survey.toml"
        path.write_text("order = 9\nthreads = 0\n")
        with pytest.raises(click.exceptions.Exit, match="1"):
            SurveyConfig.load_or_exit(path)
        err = capsys.readouterr().err
        assert "config validation errors" in err
        assert "order:" in err
        assert "threads:" in err

    def test_other_error(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Other load failures are reported too."""
        with pytest.raises(click.exceptions.Exit, match="1"):
            SurveyConfig.load_or_exit(tmp_path / "missing.toml")
        assert "can't load config" in capsys.readouterr().err


class TestPrintAndExit:
    """Tests for print_and_exit."""

    def test_prints_toml(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Prints the effective config without unset optional fields."""
        with pytest.raises(SystemExit) as exc:
            SurveyConfig(order=2).print_and_exit()
        assert exc.value.code == 0
        out = capsys.readouterr().out
        assert "order" in out
        assert "catalog" not in out
