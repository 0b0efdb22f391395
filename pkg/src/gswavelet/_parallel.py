"""Worker-count plumbing for the FFT-heavy paths."""

import os

_threads = None


def set_threads(n):
    global _threads
    if n is not None and int(n) < 1:
        raise ValueError("thread count must be >= 1")
    _threads = None if n is None else int(n)


def workers():
    if _threads is not None:
        return _threads
    env = os.environ.get("GSW_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1
