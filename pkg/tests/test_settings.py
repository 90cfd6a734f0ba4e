import json

from src.settings import SettingsManager, SimulatorSettings


def test_missing_file_uses_defaults(tmp_path):
    settings = SettingsManager(tmp_path / "settings.json", environ={}).settings

    assert settings == SimulatorSettings()
    assert settings.max_exact_treewidth_vertices == 14
    assert settings.max_brute_vars == 24
    assert settings.default_method == "rank-dp"


def test_saved_settings_are_reloaded(tmp_path):
    settings_path = tmp_path / "settings.json"
    manager = SettingsManager(settings_path, environ={})
    manager.settings.max_brute_vars = 10
    manager.settings.default_method = "fourier"
    manager.save()

    reloaded = SettingsManager(settings_path, environ={}).settings

    assert reloaded.max_brute_vars == 10
    assert reloaded.default_method == "fourier"


def test_invalid_field_keeps_other_valid_settings(tmp_path):
    settings_path = tmp_path / "settings.json"
    settings_path.write_text(
        json.dumps(
            {
                "max_brute_vars": "muchas",
                "max_statevector_qubits": 12,
                "fourier_tolerance": 1,
                "campo_desconocido": True,
            }
        ),
        encoding="utf-8",
    )

    settings = SettingsManager(settings_path, environ={}).settings

    assert settings.max_brute_vars == 24
    assert settings.max_statevector_qubits == 12
    assert settings.fourier_tolerance == 0.49


def test_out_of_range_values_are_clamped(tmp_path):
    settings_path = tmp_path / "settings.json"
    settings_path.write_text(
        json.dumps(
            {
                "max_exact_treewidth_vertices": 99,
                "max_brute_vars": -3,
                "default_method": "magia",
                "default_decomposition": "aleatoria",
            }
        ),
        encoding="utf-8",
    )

    settings = SettingsManager(settings_path, environ={}).settings

    assert settings.max_exact_treewidth_vertices == 20
    assert settings.max_brute_vars == 0
    assert settings.default_method == "rank-dp"
    assert settings.default_decomposition == "auto"


def test_corrupt_file_falls_back_to_defaults(tmp_path):
    settings_path = tmp_path / "settings.json"
    settings_path.write_text("{no es json", encoding="utf-8")

    assert SettingsManager(settings_path, environ={}).settings == SimulatorSettings()


def test_environment_overrides_file(tmp_path):
    settings_path = tmp_path / "settings.json"
    settings_path.write_text(json.dumps({"max_brute_vars": 12}), encoding="utf-8")
    environ = {
        "SOPSIM_MAX_BRUTE_VARS": "4",
        "SOPSIM_DEFAULT_DECOMPOSITION": "exact",
        "SOPSIM_MAX_WMC_VARS": "no-es-entero",
    }

    settings = SettingsManager(settings_path, environ=environ).settings

    assert settings.max_brute_vars == 4
    assert settings.default_decomposition == "exact"
    assert settings.max_wmc_vars == 24


def test_settings_path_from_environment(tmp_path):
    settings_path = tmp_path / "otra" / "settings.json"
    manager = SettingsManager(environ={"SOPSIM_SETTINGS": str(settings_path)})

    assert manager.path == settings_path


def test_reset_restores_and_persists_defaults(tmp_path):
    settings_path = tmp_path / "settings.json"
    manager = SettingsManager(settings_path, environ={})
    manager.settings.max_bucket_separator = 3
    manager.save()

    manager.reset()

    assert manager.settings.max_bucket_separator == 20
    saved = json.loads(settings_path.read_text(encoding="utf-8"))
    assert saved["max_bucket_separator"] == 20
