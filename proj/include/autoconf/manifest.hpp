#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "autoconf/controls.hpp"
#include "autoconf/dtd.hpp"
#include "autoconf/element_set.hpp"
#include "autoconf/xml.hpp"

namespace autoconf::manifest {

/// A declared control with its effective property values. Every property
/// applicable to the control type is present; parsing materializes the
/// defaults (Visible=True, Enabled=True, Text="", Checked=False, Image="",
/// Items=[]).
struct ControlDecl {
    std::string name;
    ControlType control_type = ControlType::Label;
    std::map<PropertyName, PropertyValue> properties;

    static ControlDecl with_defaults(std::string name, ControlType type);

    const PropertyValue& property(PropertyName property) const;
    void set_property(PropertyName property, PropertyValue value);
    bool visible() const;

    bool operator==(const ControlDecl&) const = default;
};

struct EventDecl {
    std::string name;
    std::string control_name;
    bool enabled = true;

    bool operator==(const EventDecl&) const = default;
};

struct PermissionDecl {
    PermissionName name = PermissionName::DiskAccess;
    bool granted = true;

    bool operator==(const PermissionDecl&) const = default;
};

/// The application being customized: controls, event-handlers bound to
/// controls, and application-wide permissions, with their current states.
/// Exactly one control is the containing Form.
struct ApplicationManifest {
    std::string app_name;
    std::vector<ControlDecl> controls;
    std::vector<EventDecl> events;
    std::vector<PermissionDecl> permissions;

    const ControlDecl* find_control(std::string_view name) const;
    ControlDecl* find_control(std::string_view name);
    const EventDecl* find_event(std::string_view name) const;
    EventDecl* find_event(std::string_view name);
    const PermissionDecl* find_permission(PermissionName name) const;
    PermissionDecl* find_permission(PermissionName name);

    bool operator==(const ApplicationManifest&) const = default;
};

/// Validate `doc` against the manifest grammar and build the manifest,
/// applying property defaults. Declaration order is preserved.
ApplicationManifest parse_manifest(const xml::Document& doc, const dtd::DtdGrammar& grammar,
                                   std::vector<std::string>* warnings = nullptr);

/// Canonical document form: control properties are emitted only when they
/// differ from the default, in canonical property order; event and
/// permission states are always explicit.
xml::Document to_document(const ApplicationManifest& m);
std::string serialize_manifest(const ApplicationManifest& m);

/// Names of visible controls, enabled events, and granted permissions.
engine::ElementSet active_set(const ApplicationManifest& m);

}  // namespace autoconf::manifest
