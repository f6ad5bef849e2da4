"""XBRL instance parsing, validation and taxonomy discovery."""

from ._xbrlcore import (
    Dts,
    DtsError,
    Instance,
    ModelError,
    ParseError,
    XmlError,
    discover,
    find_instances,
    parse,
    rules,
    run_cli,
    validate,
)

__all__ = [
    "Dts",
    "DtsError",
    "Instance",
    "ModelError",
    "ParseError",
    "XmlError",
    "discover",
    "find_instances",
    "parse",
    "rules",
    "run_cli",
    "validate",
]
