import os

DEFAULT_CAP = 10**7


def element_cap(cap=None):
    """Resolve an enumeration cap: explicit argument, then ``MEMORYLESS_CAP``, then 10**7."""
    if cap is not None:
        return int(cap)
    env = os.environ.get("MEMORYLESS_CAP")
    if env:
        return int(env)
    return DEFAULT_CAP
