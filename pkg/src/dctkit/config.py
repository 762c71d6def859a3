"""Budget knobs for the exhaustive desk-scale scans.

Every brute-force search (idempotents, isomorphisms, minimalization,
module enumeration) checks its worst-case count against SCAN_CAP before
starting and raises CapExceeded if it would blow past it.  The CLI's
--cap flag overrides the value for one invocation.
"""

SCAN_CAP = 1 << 16

# Minimal projective resolutions are cut off here; pd() raises CapExceeded
# when the resolution is still running at this length.
RESOLUTION_CAP = 32

# Hard ceiling on the number of paths enumerated while building an algebra.
PATH_CAP = 100_000


def scan_cap(cap=None) -> int:
    return SCAN_CAP if cap is None else cap
