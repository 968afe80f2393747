"""Recording directive uses and performing them at commit time.

A :class:`Configurable` belongs to one app class. Decorating with a
directive appends a ``(Directive, obj)`` pair to it; :func:`commit`
turns the pairs into :class:`Action` objects, merges them with those of
the base classes, checks for conflicts and performs them in dependency
order.
"""
import abc
import inspect
import itertools
import logging

from .error import (
    ConflictError,
    DirectiveError,
    DirectiveReportError,
)
from .toposort import topological_sort

# Actions are performed in the order their directives were used.
_sequence = itertools.count()


class Action(metaclass=abc.ABCMeta):
    """What a directive does to the configuration.

    ``config`` maps names to factories. Committing creates one object
    per name on ``App.config`` and hands them to :meth:`identifier` and
    :meth:`perform` as keyword arguments. Action classes listed in
    ``depends`` are performed first.
    """

    config = {}
    depends = []
    directive = None

    @property
    def code_info(self):
        return None if self.directive is None else self.directive.code_info

    @abc.abstractmethod
    def identifier(self, **kw):
        """Hashable key; two actions with the same key conflict, and a
        subclass action with the key of a base class action replaces it."""

    @abc.abstractmethod
    def perform(self, obj, **kw):
        """Apply the action to the decorated ``obj``."""


class Directive:
    """One use of a directive, remembered until commit."""

    def __init__(self, action_factory, code_info, app_class, args, kw):
        self.action_factory = action_factory
        self.code_info = code_info
        self.app_class = app_class
        self.args = args
        self.kw = kw

    def __call__(self, wrapped):
        self.app_class.forge.register_directive(self, wrapped)
        return wrapped

    @property
    def name(self):
        """The attribute name of the directive on its app class."""
        for attr, method in self.app_class.get_directive_methods():
            if method.__func__.action_factory is self.action_factory:
                return attr
        return self.action_factory.__name__

    def action(self):
        try:
            action = self.action_factory(*self.args, **self.kw)
        except TypeError as e:
            raise DirectiveReportError(str(e), self.code_info)
        action.directive = self
        return action

    def describe(self, app_class, obj):
        """``@module.App.name(args) on target``, as it is logged."""
        arguments = [repr(arg) for arg in self.args]
        arguments += ["%s=%r" % item for item in sorted(self.kw.items())]
        if inspect.isfunction(obj):
            target = "%s.%s" % (obj.__module__, obj.__name__)
        else:
            target = repr(obj)
        text = "@%s.%s(%s) on %s" % (
            dotted_name(app_class),
            self.name,
            ", ".join(arguments),
            target,
        )
        if self.app_class is not app_class:
            text += " (from %s)" % dotted_name(self.app_class)
        return text

    def log(self, app_class, obj):
        logger = logging.getLogger("%s.%s" % (app_class.logger_name, self.name))
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug(self.describe(app_class, obj))


class Configurable:
    """Directive uses of one app class and what committing made of them.

    ``extends`` holds the configurables of the base classes.
    """

    app_class = None

    def __init__(self, extends, config):
        self.extends = extends
        self.config = config
        self.uses = []
        self.performed = {}
        self.committed = False

    def register_directive(self, directive, obj):
        self.uses.append((directive, obj))

    def action_classes(self):
        """Action classes known here and in the bases, dependencies first."""
        found = []
        for base in self.extends:
            found.extend(c for c in base.action_classes() if c not in found)
        for _, method in self.app_class.get_directive_methods():
            action_class = method.__func__.action_factory
            if action_class not in found:
                found.append(action_class)
        return topological_sort(found, lambda c: c.depends)

    def arguments(self, action_class):
        return {name: getattr(self.config, name) for name in action_class.config}

    def actions(self, action_class):
        """Actions of ``action_class`` to perform, in directive order.

        :raises ConflictError: if two local uses share an identifier.
        """
        kw = self.arguments(action_class)
        local = {}
        for directive, obj in self.uses:
            if directive.action_factory is not action_class:
                continue
            action = directive.action()
            action.order = next(_sequence)
            key = action.identifier(**kw)
            if key in local:
                raise ConflictError([action, local[key][0]])
            local[key] = (action, obj)
        merged = {}
        for base in self.extends:
            merged.update(base.performed.get(action_class, {}))
        merged.update(local)
        self.performed[action_class] = merged
        return sorted(merged.values(), key=lambda pair: pair[0].order)

    def execute(self):
        classes = self.action_classes()
        for action_class in classes:
            for name, factory in action_class.config.items():
                setattr(self.config, name, factory())
        for action_class in classes:
            kw = self.arguments(action_class)
            for action, obj in self.actions(action_class):
                if action.directive is not None:
                    action.directive.log(self.app_class, obj)
                try:
                    action.perform(obj, **kw)
                except DirectiveError as e:
                    raise DirectiveReportError(str(e), action.code_info)
        self.committed = True


def commit(*apps):
    """Perform the declared actions of one or more app classes.

    Base classes are committed too, before their subclasses. Committing
    again rebuilds the configuration from scratch.
    """
    configurables = topological_sort([app.forge for app in apps], lambda c: c.extends)
    for configurable in configurables:
        configurable.execute()


class CodeInfo:
    """Where a directive was used."""

    def __init__(self, path, lineno, sourceline):
        self.path = path
        self.lineno = lineno
        self.sourceline = sourceline

    def filelineno(self):
        return 'File "%s", line %s' % (self.path, self.lineno)


def create_code_info(frame):
    info = inspect.getframeinfo(frame)
    context = info.code_context
    sourceline = context[0].strip() if context else context
    return CodeInfo(info.filename, info.lineno, sourceline)


def dotted_name(cls):
    return "%s.%s" % (cls.__module__, cls.__name__)
