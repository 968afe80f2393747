"""Declarative registry of tiling families and settings.

Families and setting defaults are declared with directives on an
application class and become available after :func:`commit`::

  @Forge.family("pythia", params=("m", "j"))
  def build_pythia(m, j, settings=None):
      ...

  commit(Forge)
  Forge.config.families["pythia"].builder(3, 1)

Subclasses of :class:`Forge` inherit the declarations of their bases
and may override them by registering the same name again.
"""
import sys
from collections import namedtuple

from .config import Action, Configurable, Directive, commit, create_code_info
from .error import DirectiveError
from .settings import Settings

FamilyEntry = namedtuple("FamilyEntry", ["name", "builder", "params"])


class Config:
    """Namespace the committed configuration objects are set on."""


class AppMeta(type):
    """Gives every app class its own ``config`` and ``forge``."""

    def __new__(cls, name, bases, d):
        config = Config()
        extends = [base.forge for base in bases if getattr(base, "forge", None)]
        d["config"] = config
        d["forge"] = Configurable(extends, config)
        app_class = super().__new__(cls, name, bases, d)
        app_class.forge.app_class = app_class
        return app_class


class App(metaclass=AppMeta):
    """Base of configurable application classes.

    Directive debug logging goes to ``logger_name`` plus the directive
    name.
    """

    logger_name = "pinwheel_forge.directive"

    @classmethod
    def get_directive_methods(cls):
        for name in dir(cls):
            func = getattr(getattr(cls, name), "__func__", None)
            if func is not None and hasattr(func, "action_factory"):
                yield name, getattr(cls, name)

    @classmethod
    def commit(cls):
        commit(cls)
        return [cls]

    @classmethod
    def is_committed(cls):
        return cls.forge.committed


def directive(action_factory):
    """Make a directive classmethod out of an :class:`Action` subclass."""

    def method(cls, *args, **kw):
        return Directive(
            action_factory, create_code_info(sys._getframe(1)), cls, args, kw
        )

    method.action_factory = action_factory
    method.__doc__ = action_factory.__doc__
    method.__module__ = action_factory.__module__
    return classmethod(method)


class SettingAction(Action):
    """Declare the default of a :class:`Settings` field.

    The decorated function is called without arguments at commit time
    and its return value becomes the setting.
    """

    config = {"settings": Settings}

    def __init__(self, name):
        self.name = name

    def identifier(self, settings):
        return self.name

    def perform(self, obj, settings):
        if self.name not in Settings.field_names():
            raise DirectiveError("Unknown setting: %s" % self.name)
        setattr(settings, self.name, obj())


class FamilyAction(Action):
    """Register a builder for a substitution family.

    ``params`` names the integer parameters the family takes, in the
    order they appear after the colon of a family spec (``pythia:3,1``).
    """

    config = {"families": dict}
    depends = [SettingAction]

    def __init__(self, name, params=()):
        self.name = name
        self.params = tuple(params)

    def identifier(self, families):
        return self.name

    def perform(self, obj, families):
        if not callable(obj):
            raise DirectiveError("Family builder must be callable")
        families[self.name] = FamilyEntry(self.name, obj, self.params)


class Forge(App):
    """The application class holding the built-in families."""

    setting = directive(SettingAction)
    family = directive(FamilyAction)
