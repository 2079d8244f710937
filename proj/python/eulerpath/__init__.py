"""Long directed paths in connected Eulerian digraphs.

Thin wrapper over the C++ core: graph construction, cycle decomposition,
the long-path pipeline, generators, and exact small-instance oracles.
"""

from ._core import (
    Digraph,
    EulerpathError,
    check_path,
    decompose_into_cycles,
    generate,
    is_eulerian,
    is_strongly_connected,
    long_path_from,
    min_outdegree_cycle,
    oracle_longest_cycle,
    oracle_longest_path_from,
    path_to_set,
    phi,
    run_experiment,
    sccs,
)

__all__ = [
    "Digraph",
    "EulerpathError",
    "check_path",
    "decompose_into_cycles",
    "generate",
    "is_eulerian",
    "is_strongly_connected",
    "long_path_from",
    "min_outdegree_cycle",
    "oracle_longest_cycle",
    "oracle_longest_path_from",
    "path_to_set",
    "phi",
    "run_experiment",
    "sccs",
]
