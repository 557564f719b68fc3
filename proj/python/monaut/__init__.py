"""Satisfiability of first-order formulas over the ordered naturals with
monadic predicates, decided through Büchi automata.

The usual flow is ``parse`` then ``decide``; ``universal_quantify`` and
``project`` operate on automata directly, and ``read_aut``/``write_aut``
exchange them as text files.
"""

from ._core import (
    Buchi,
    Error,
    Finite,
    Formula,
    Interpretation,
    Lasso,
    PeriodicSet,
    SatResult,
    Signature,
    accepted_lassos,
    compile,
    decide,
    decode,
    encode,
    equal_on_lassos,
    evaluate,
    lasso_membership,
    parse,
    project,
    read_aut,
    to_dot,
    universal_quantify,
    witness,
    write_aut,
)

__all__ = [
    "Buchi",
    "Error",
    "Finite",
    "Formula",
    "Interpretation",
    "Lasso",
    "PeriodicSet",
    "SatResult",
    "Signature",
    "accepted_lassos",
    "compile",
    "decide",
    "decode",
    "encode",
    "equal_on_lassos",
    "evaluate",
    "lasso_membership",
    "parse",
    "project",
    "read_aut",
    "to_dot",
    "universal_quantify",
    "witness",
    "write_aut",
]
