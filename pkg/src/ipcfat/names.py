"""Fresh-name supply shared by both calculi.

Names are drawn from a per-thread counter, so a fresh name never coincides
with an earlier fresh name issued on the same thread.  Names read from user
input are reserved so the counter skips them.
"""

import re
import threading

_state = threading.local()
_STEM = re.compile(r"^(.*?)[0-9]*$")


def _get():
    if not hasattr(_state, "counter"):
        _state.counter = 0
        _state.reserved = set()
    return _state


def reset():
    """Restart the counter (used to make fuzz runs reproducible)."""
    st = _get()
    st.counter = 0
    st.reserved = set()


def reserve(names):
    _get().reserved.update(names)


def fresh(base="x", avoid=()):
    st = _get()
    stem = _STEM.match(base).group(1) or base or "x"
    while True:
        name = f"{stem}{st.counter}"
        st.counter += 1
        if name not in avoid and name not in st.reserved:
            return name
