from .error import TopologicalSortError


def topological_sort(items, get_depends):
    """`Topological sort`_ of registry actions.

    .. _`Topological sort`: https://en.wikipedia.org/wiki/Topological_sorting

    Items come out after everything they depend on; among independent
    items the input order is kept, so the result is deterministic.

    :param items: iterable of hashable items.
    :param get_depends: function returning the items an item depends on.
    :return: a list sorted topologically.
    """
    result = []
    done = set()
    in_progress = set()

    def visit(item):
        if item in done:
            return
        if item in in_progress:
            raise TopologicalSortError("Cyclic dependency at %r" % (item,))
        in_progress.add(item)
        for dependency in get_depends(item):
            visit(dependency)
        in_progress.discard(item)
        done.add(item)
        result.append(item)

    for item in items:
        visit(item)
    return result
