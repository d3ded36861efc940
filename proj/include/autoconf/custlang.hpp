#pragma once

#include <string>
#include <vector>

#include "autoconf/controls.hpp"
#include "autoconf/dtd.hpp"
#include "autoconf/xml.hpp"

namespace autoconf::custlang {

/// "+" enables (grants), "-" disables (revokes).
enum class Toggle { Enable, Disable };

std::string_view to_string(Toggle toggle);

struct GuiOverride {
    std::string control_name;
    ControlType control_type = ControlType::Label;
    PropertyName property = PropertyName::Visible;
    PropertyValue value;

    bool operator==(const GuiOverride&) const = default;
};

struct EventAction {
    std::string event_name;
    std::string control_name;
    Toggle action = Toggle::Disable;

    bool operator==(const EventAction&) const = default;
};

struct PermissionAction {
    PermissionName permission = PermissionName::DiskAccess;
    Toggle action = Toggle::Disable;

    bool operator==(const PermissionAction&) const = default;
};

struct SourceDialect {
    bool uses_event_name_tag = false;  // <eventName> instead of <name>
    bool uses_policies_tag = false;    // <POLICIES>/<policy> instead of <PERMISSIONS>/<permission>

    bool operator==(const SourceDialect&) const = default;
};

/// Lowered, semantically checked customization file. Entry order equals
/// document order.
struct CustomizationSpec {
    std::vector<GuiOverride> gui;
    std::vector<EventAction> events;
    std::vector<PermissionAction> permissions;
    SourceDialect source_dialect;

    bool empty() const { return gui.empty() && events.empty() && permissions.empty(); }
};

/// Entry equality ignoring the dialect flags.
bool same_entries(const CustomizationSpec& a, const CustomizationSpec& b);

struct LowerOptions {
    /// Reject the legacy spellings (eventName, POLICIES/policy, control
    /// types Image and CheckBox) instead of warning about them.
    bool strict_dialect = false;
};

/// Validate `doc` against the customization grammar and lower it to a
/// typed spec. A validation failure becomes a SemanticError wrapping the
/// report; semantic rule breaks raise the matching SemanticError kind.
CustomizationSpec lower_to_spec(const xml::Document& doc, const dtd::DtdGrammar& grammar,
                                const LowerOptions& options = {},
                                std::vector<std::string>* warnings = nullptr);

}  // namespace autoconf::custlang
