#include "autoconf/controls.hpp"

#include <utility>

namespace autoconf {

std::string_view to_string(ControlType type) {
    switch (type) {
        case ControlType::Label: return "Label";
        case ControlType::Textbox: return "Textbox";
        case ControlType::Button: return "Button";
        case ControlType::ToolStripMenuItem: return "ToolStripMenuItem";
        case ControlType::Form: return "Form";
        case ControlType::Checkbox: return "Checkbox";
        case ControlType::RadioButton: return "RadioButton";
        case ControlType::ComboBox: return "ComboBox";
        case ControlType::PictureBox: return "PictureBox";
    }
    return "";
}

std::string_view to_string(PropertyName property) {
    switch (property) {
        case PropertyName::Visible: return "Visible";
        case PropertyName::Enabled: return "Enabled";
        case PropertyName::Text: return "Text";
        case PropertyName::Checked: return "Checked";
        case PropertyName::Image: return "Image";
        case PropertyName::Items: return "Items";
    }
    return "";
}

std::string_view to_string(PermissionName permission) {
    switch (permission) {
        case PermissionName::DiskAccess: return "DiskAccess";
        case PermissionName::NetworkAccess: return "NetworkAccess";
        case PermissionName::ProcessAccess: return "ProcessAccess";
    }
    return "";
}

ValueKind value_kind(PropertyName property) {
    switch (property) {
        case PropertyName::Visible:
        case PropertyName::Enabled:
        case PropertyName::Checked:
            return ValueKind::Boolean;
        case PropertyName::Text:
        case PropertyName::Image:
            return ValueKind::String;
        case PropertyName::Items:
            return ValueKind::StringList;
    }
    return ValueKind::String;
}

bool property_applicable(ControlType type, PropertyName property) {
    switch (property) {
        case PropertyName::Visible:
        case PropertyName::Enabled:
        case PropertyName::Text:
            return true;
        case PropertyName::Checked:
            return type == ControlType::Checkbox;
        case PropertyName::Image:
            return type == ControlType::PictureBox;
        case PropertyName::Items:
            return type == ControlType::ComboBox;
    }
    return false;
}

std::vector<PropertyName> applicable_properties(ControlType type) {
    std::vector<PropertyName> out;
    for (PropertyName property : kAllProperties) {
        if (property_applicable(type, property)) out.push_back(property);
    }
    return out;
}

PropertyValue default_property_value(PropertyName property) {
    switch (property) {
        case PropertyName::Visible:
        case PropertyName::Enabled: return true;
        case PropertyName::Checked: return false;
        case PropertyName::Text:
        case PropertyName::Image: return std::string();
        case PropertyName::Items: return std::vector<std::string>();
    }
    return std::string();
}

std::optional<ControlType> parse_control_type(std::string_view text, bool* via_alias) {
    if (via_alias) *via_alias = false;
    for (ControlType type : kAllControlTypes) {
        if (text == to_string(type)) return type;
    }
    if (text == "Image") {
        if (via_alias) *via_alias = true;
        return ControlType::PictureBox;
    }
    if (text == "CheckBox") {
        if (via_alias) *via_alias = true;
        return ControlType::Checkbox;
    }
    return std::nullopt;
}

std::optional<PropertyName> parse_property_name(std::string_view text) {
    for (PropertyName property : kAllProperties) {
        if (text == to_string(property)) return property;
    }
    return std::nullopt;
}

std::optional<PermissionName> parse_permission_name(std::string_view text) {
    for (PermissionName permission : kAllPermissions) {
        if (text == to_string(permission)) return permission;
    }
    return std::nullopt;
}

namespace {

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        char x = a[i];
        char y = b[i];
        if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
        if (y >= 'A' && y <= 'Z') y = static_cast<char>(y - 'A' + 'a');
        if (x != y) return false;
    }
    return true;
}

}  // namespace

std::optional<bool> parse_boolean(std::string_view text) {
    std::string_view t = trim(text);
    if (iequals(t, "true")) return true;
    if (iequals(t, "false")) return false;
    return std::nullopt;
}

std::optional<std::vector<std::string>> parse_items(std::string_view text) {
    std::string_view t = trim(text);
    std::vector<std::string> items;
    if (t.empty()) return items;
    while (true) {
        std::size_t bar = t.find('|');
        std::string_view item = trim(bar == std::string_view::npos ? t : t.substr(0, bar));
        if (item.empty()) return std::nullopt;
        items.emplace_back(item);
        if (bar == std::string_view::npos) return items;
        t = t.substr(bar + 1);
    }
}

std::string render_value(const PropertyValue& value) {
    if (const bool* b = std::get_if<bool>(&value)) return *b ? "True" : "False";
    if (const std::string* s = std::get_if<std::string>(&value)) return *s;
    const auto& items = std::get<std::vector<std::string>>(value);
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += "|";
        out += items[i];
    }
    return out;
}

std::string_view trim(std::string_view text) {
    auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!text.empty() && is_ws(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_ws(text.back())) text.remove_suffix(1);
    return text;
}

SemanticError::SemanticError(Kind kind, std::string message)
    : std::runtime_error(std::move(message)), kind_(kind) {}

SemanticError::SemanticError(Kind kind, std::string message, dtd::ValidationReport report)
    : std::runtime_error(std::move(message)), kind_(kind), report_(std::move(report)) {}

std::string_view to_string(SemanticError::Kind kind) {
    using Kind = SemanticError::Kind;
    switch (kind) {
        case Kind::ValidationFailed: return "ValidationFailed";
        case Kind::UnknownControlType: return "UnknownControlType";
        case Kind::PropertyNotApplicable: return "PropertyNotApplicable";
        case Kind::BadValue: return "BadValue";
        case Kind::BadActionToken: return "BadActionToken";
        case Kind::DuplicateTarget: return "DuplicateTarget";
        case Kind::UnknownPermissionName: return "UnknownPermissionName";
        case Kind::DuplicateName: return "DuplicateName";
        case Kind::DanglingEventControl: return "DanglingEventControl";
        case Kind::MissingForm: return "MissingForm";
        case Kind::MultipleForms: return "MultipleForms";
        case Kind::StrictDialectViolation: return "StrictDialectViolation";
    }
    return "";
}

}  // namespace autoconf
