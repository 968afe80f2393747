class Sentinel:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return "<%s>" % self.name

    def __bool__(self):
        return False


NOT_FOUND = Sentinel("NOT_FOUND")
"""Returned when a search (occurrence, uniform patch radius) fails."""

INCONCLUSIVE = Sentinel("INCONCLUSIVE")
"""Returned when a primitivity test cannot decide within its bound."""

NOT_RATIONAL = Sentinel("NOT_RATIONAL")
"""Returned by :func:`pinwheel_forge.algebraic.is_rational_cosine` when
no cyclotomic factor matches; this answer is exact."""

NOT_PRIMITIVE = Sentinel("NOT_PRIMITIVE")
"""Returned when a substitution matrix is reducible or periodic."""
