from ..settings import DEFAULT_SETTINGS, Settings, threads_from_environ


def test_threads_from_environ():
    assert threads_from_environ({}) == 1
    assert threads_from_environ({"PINWHEEL_FORGE_THREADS": "4"}) == 4
    assert threads_from_environ({"PINWHEEL_FORGE_THREADS": "many"}) == 1
    assert threads_from_environ({"PINWHEEL_FORGE_THREADS": "0"}) == 1


def test_replace_keeps_defaults():
    settings = DEFAULT_SETTINGS.replace(tol_geo=1e-6)
    assert settings.tol_geo == 1e-6
    assert settings.tile_cap == DEFAULT_SETTINGS.tile_cap
    assert DEFAULT_SETTINGS.tol_geo == 1e-9


def test_field_names():
    assert "refine_cap" in Settings.field_names()


def test_settings_hash_by_value():
    assert hash(Settings(threads=2)) == hash(Settings(threads=2))
    assert Settings(threads=2) == Settings(threads=2)
    assert Settings(threads=2) != Settings(threads=3)
    assert len({Settings(threads=2), Settings(threads=2)}) == 1
