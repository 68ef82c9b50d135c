import pytest
from pydantic import ValidationError

from config.config import DEFAULT_MODULUS, DEFAULT_PRIME_COUNT
from config.session import SessionConfig, load_session_config, read_session_file


def test_defaults(session):
    assert session.modulus == DEFAULT_MODULUS
    assert session.prime_count == DEFAULT_PRIME_COUNT
    assert session.output == "text"
    assert session.log_db is None


def test_fingerprint_leaves_out_logging(tmp_path):
    a = SessionConfig(log_db=str(tmp_path / "a.db"), verbose=True)
    assert a.fingerprint() == SessionConfig().fingerprint()
    assert set(a.fingerprint()) == {"modulus", "m_max", "k_max", "prime_count", "seed"}


def test_session_file_then_overrides(tmp_path):
    path = tmp_path / "session.yaml"
    path.write_text("modulus: 4\nseed: 7\noutput: json\n")
    config = load_session_config(str(path), {"modulus": 8, "seed": None})
    assert config.modulus == 8
    assert config.seed == 7
    assert config.output == "json"


def test_empty_session_file(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("")
    assert read_session_file(str(path)) == {}


def test_session_file_must_be_mapping(tmp_path):
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ValueError):
        read_session_file(str(path))


def test_missing_session_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_session_config(str(tmp_path / "missing.yaml"))


@pytest.mark.parametrize("values", [{"modulus": 0}, {"prime_count": 0}, {"workers": -1}, {"output": "xml"}])
def test_out_of_range(values):
    with pytest.raises(ValidationError):
        SessionConfig(**values)


def test_unknown_key_rejected(tmp_path):
    path = tmp_path / "typo.yaml"
    path.write_text("modulos: 4\n")
    with pytest.raises(ValidationError):
        load_session_config(str(path))


def test_frozen(session):
    with pytest.raises(ValidationError):
        session.modulus = 3
