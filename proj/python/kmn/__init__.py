"""Python access to the Krasner (m,n)-hyperring workbench."""

from ._kmn import (  # noqa: F401
    KmnError,
    Structure,
    __version__,
    audit,
    builtin_examples,
    classify,
    enumerate,
    ideals,
    is_hyperideal,
    jacobson,
    load,
    parse,
    radical,
    search,
    theorems,
    verify,
    verify_hypergroup,
)
