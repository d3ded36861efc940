#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "autoconf/dtd.hpp"

namespace autoconf {

/// The customizable control types.
enum class ControlType {
    Label,
    Textbox,
    Button,
    ToolStripMenuItem,
    Form,
    Checkbox,
    RadioButton,
    ComboBox,
    PictureBox,
};

inline constexpr ControlType kAllControlTypes[] = {
    ControlType::Label,     ControlType::Textbox,     ControlType::Button,
    ControlType::ToolStripMenuItem, ControlType::Form, ControlType::Checkbox,
    ControlType::RadioButton, ControlType::ComboBox,  ControlType::PictureBox,
};

enum class PropertyName { Visible, Enabled, Text, Checked, Image, Items };

inline constexpr PropertyName kAllProperties[] = {
    PropertyName::Visible, PropertyName::Enabled, PropertyName::Text,
    PropertyName::Checked, PropertyName::Image,   PropertyName::Items,
};

enum class PermissionName { DiskAccess, NetworkAccess, ProcessAccess };

inline constexpr PermissionName kAllPermissions[] = {
    PermissionName::DiskAccess,
    PermissionName::NetworkAccess,
    PermissionName::ProcessAccess,
};

using PropertyValue = std::variant<bool, std::string, std::vector<std::string>>;

enum class ValueKind { Boolean, String, StringList };

std::string_view to_string(ControlType type);
std::string_view to_string(PropertyName property);
std::string_view to_string(PermissionName permission);

ValueKind value_kind(PropertyName property);

/// Every control type accepts Visible, Enabled, and Text; Checkbox adds
/// Checked, PictureBox adds Image, ComboBox adds Items.
bool property_applicable(ControlType type, PropertyName property);
/// Applicable properties in canonical order (declaration order of PropertyName).
std::vector<PropertyName> applicable_properties(ControlType type);

PropertyValue default_property_value(PropertyName property);

/// Case-sensitive control-type lookup. Two legacy spellings are accepted as
/// aliases: "Image" for PictureBox and "CheckBox" for Checkbox; *via_alias
/// reports when one was used.
std::optional<ControlType> parse_control_type(std::string_view text, bool* via_alias = nullptr);
std::optional<PropertyName> parse_property_name(std::string_view text);
std::optional<PermissionName> parse_permission_name(std::string_view text);

/// "True"/"False", case-insensitive.
std::optional<bool> parse_boolean(std::string_view text);
/// Pipe-separated list; items trimmed, empty items rejected. An empty (or
/// all-whitespace) value is the empty list.
std::optional<std::vector<std::string>> parse_items(std::string_view text);

/// Booleans render as "True"/"False", lists as "a|b|c", strings verbatim.
std::string render_value(const PropertyValue& value);

std::string_view trim(std::string_view text);

class SemanticError : public std::runtime_error {
public:
    enum class Kind {
        ValidationFailed,
        UnknownControlType,
        PropertyNotApplicable,
        BadValue,
        BadActionToken,
        DuplicateTarget,
        UnknownPermissionName,
        DuplicateName,
        DanglingEventControl,
        MissingForm,
        MultipleForms,
        StrictDialectViolation,
    };

    SemanticError(Kind kind, std::string message);
    SemanticError(Kind kind, std::string message, dtd::ValidationReport report);

    Kind kind() const noexcept { return kind_; }
    /// Present for Kind::ValidationFailed.
    const std::optional<dtd::ValidationReport>& report() const noexcept { return report_; }

private:
    Kind kind_;
    std::optional<dtd::ValidationReport> report_;
};

std::string_view to_string(SemanticError::Kind kind);

}  // namespace autoconf
