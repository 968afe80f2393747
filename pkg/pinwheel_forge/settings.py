import dataclasses
import os

THREADS_ENV = "PINWHEEL_FORGE_THREADS"


def threads_from_environ(environ=None):
    """Worker count from ``PINWHEEL_FORGE_THREADS``, 1 if unset or bad."""
    environ = os.environ if environ is None else environ
    try:
        value = int(environ.get(THREADS_ENV, "1"))
    except ValueError:
        return 1
    return max(1, value)


@dataclasses.dataclass
class Settings:
    """Tolerances and resource caps shared by all operations.

    A committed :class:`pinwheel_forge.registry.Forge` holds one instance
    as ``Forge.config.settings``; ``@Forge.setting`` directives override
    the defaults below. Rules built through an app carry its settings as
    ``rule.settings`` and the operations on a rule take their defaults
    from there.

    Settings are hashed by value so they can key rule caches; do not
    change one after it was committed, use :meth:`replace`.
    """

    tol_geo: float = 1e-9
    refine_cap: int = 4000
    power_iteration_cap: int = 100000
    cosine_n_cap: int = 20000
    tile_cap: int = 2_000_000
    cf_denominator: int = 10 ** 6
    threads: int = dataclasses.field(default_factory=threads_from_environ)

    def __hash__(self):
        return hash(dataclasses.astuple(self))

    @classmethod
    def field_names(cls):
        return [field.name for field in dataclasses.fields(cls)]

    def replace(self, **kw):
        return dataclasses.replace(self, **kw)


DEFAULT_SETTINGS = Settings()
