"""Declarative self-configuration engine.

Parses application manifests and customization files, validates them
against their grammars, and applies customizations by set intersection.
The heavy lifting lives in the compiled ``_core`` extension; this module
re-exports its public surface.
"""

from autoconf._core import (
    ChangeRecord,
    Control,
    ControlType,
    Customization,
    CustomizedManifest,
    DtdError,
    ElementSet,
    Event,
    EventAction,
    GuiOverride,
    Manifest,
    ModelReport,
    Partition,
    Permission,
    PermissionAction,
    PermissionName,
    PropertyName,
    SemanticError,
    SubsetViolation,
    Toggle,
    XmlError,
    apply,
    check_references,
    customization_dtd,
    declared_names,
    diff,
    intersect,
    is_subset,
    keep_set,
    manifest_dtd,
    parse_customization,
    parse_manifest,
    referenced_names,
    run_cli,
    verify_model,
)
from autoconf._core import union as union  # noqa: F401  (shadows nothing at module scope)

__version__ = "1.0.0"

__all__ = [
    "ChangeRecord",
    "Control",
    "ControlType",
    "Customization",
    "CustomizedManifest",
    "DtdError",
    "ElementSet",
    "Event",
    "EventAction",
    "GuiOverride",
    "Manifest",
    "ModelReport",
    "Partition",
    "Permission",
    "PermissionAction",
    "PermissionName",
    "PropertyName",
    "SemanticError",
    "SubsetViolation",
    "Toggle",
    "XmlError",
    "apply",
    "check_references",
    "customization_dtd",
    "declared_names",
    "diff",
    "intersect",
    "is_subset",
    "keep_set",
    "manifest_dtd",
    "parse_customization",
    "parse_manifest",
    "referenced_names",
    "run_cli",
    "union",
    "verify_model",
]
