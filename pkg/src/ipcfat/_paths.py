"""Position bookkeeping shared by the two term languages.

A position is a tuple of child indices; ``()`` is the root.  Only term
children count; type annotations are not addressable.
"""


class InvalidPosition(LookupError):
    pass


class NotARedex(ValueError):
    """The term does not match the rule's left-hand side."""


def subterm_at(t, pos, children):
    for i in pos:
        kids = children(t)
        if not 0 <= i < len(kids):
            raise InvalidPosition(pos)
        t = kids[i]
    return t


def replace_at(t, pos, new, children, rebuild):
    if not pos:
        return new
    kids = list(children(t))
    i = pos[0]
    if not 0 <= i < len(kids):
        raise InvalidPosition(pos)
    kids[i] = replace_at(kids[i], pos[1:], new, children, rebuild)
    return rebuild(t, kids)


def iter_subterms(t, children, pos=()):
    """Pre-order walk: outside-in, left to right."""
    yield pos, t
    for i, c in enumerate(children(t)):
        yield from iter_subterms(c, children, pos + (i,))


def term_size(t, children):
    return 1 + sum(term_size(c, children) for c in children(t))
