"""MASC modeling-language toolchain.

Thin wrapper over the native module: check/run MASC source under exact
register semantics, emit the S-expression AST, translate to the functional
IR, evaluate IR functions, and run the verification harness.
"""

from _masc import (
    MascAssertionError,
    bundled_names,
    bundled_source,
    check,
    emit_ast,
    eval_ir,
    run,
    translate,
    verify,
)

__all__ = [
    "MascAssertionError",
    "bundled_names",
    "bundled_source",
    "check",
    "emit_ast",
    "eval_ir",
    "run",
    "run_bundled",
    "translate",
    "verify",
]


def run_bundled(name, fn, args=()):
    """Run a function from one of the bundled example programs."""
    return run(bundled_source(name), fn, args)
