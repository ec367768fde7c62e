"""
thread-safe memoization for pure computations
"""

import threading
from cachetools import LRUCache, cached


def memoized(maxsize: int = 64):
    """lru-cache a pure function behind a lock so concurrent readers share results"""
    def decorator(func):
        cache = LRUCache(maxsize=maxsize)
        wrapper = cached(cache=cache, lock=threading.RLock())(func)
        wrapper.cache = cache
        return wrapper
    return decorator
