#include "autoconf/custlang.hpp"

#include <set>
#include <utility>

namespace autoconf::custlang {

namespace {

using xml::Element;

void warn(std::vector<std::string>* warnings, std::string message) {
    if (warnings) warnings->push_back(std::move(message));
}

[[noreturn]] void raise(SemanticError::Kind kind, std::string message) {
    throw SemanticError(kind, std::move(message));
}

const Element& required_child(const Element& parent, std::string_view name) {
    const Element* child = parent.child(name);
    if (!child) {
        raise(SemanticError::Kind::ValidationFailed,
              "element '" + parent.name + "' is missing a '" + std::string(name) + "' child");
    }
    return *child;
}

std::string child_text(const Element& parent, std::string_view name) {
    return xml::canonical_text(required_child(parent, name));
}

Toggle parse_action(const Element& holder, const std::string& subject) {
    std::string token = child_text(holder, "action");
    if (token == "+") return Toggle::Enable;
    if (token == "-") return Toggle::Disable;
    raise(SemanticError::Kind::BadActionToken,
          "action for " + subject + " must be '+' or '-', got '" + token + "'");
}

struct Lowerer {
    const LowerOptions& options;
    std::vector<std::string>* warnings;
    CustomizationSpec spec;
    std::set<std::string> warned;

    // Warns once per distinct legacy spelling; rejects under strict_dialect.
    void reject_or_warn_alias(const std::string& legacy, const std::string& canonical,
                              const std::string& what) {
        if (options.strict_dialect) {
            raise(SemanticError::Kind::StrictDialectViolation,
                  what + " '" + legacy + "' is a legacy spelling of '" + canonical + "'");
        }
        if (warned.insert(what + " " + legacy).second) {
            warn(warnings, what + " '" + legacy + "' treated as '" + canonical + "'");
        }
    }

    void lower_gui(const Element& gui) {
        std::set<std::pair<std::string, PropertyName>> seen;
        std::set<std::pair<std::string, ControlType>> typed;
        for (const Element* control : gui.children_named("control")) {
            GuiOverride entry;
            entry.control_name = child_text(*control, "name");
            if (entry.control_name.empty()) {
                raise(SemanticError::Kind::BadValue, "control name must not be empty");
            }
            std::string type_text = child_text(*control, "type");
            bool via_alias = false;
            std::optional<ControlType> type = parse_control_type(type_text, &via_alias);
            if (!type) {
                raise(SemanticError::Kind::UnknownControlType,
                      "unknown control type '" + type_text + "' for control '" +
                          entry.control_name + "'");
            }
            if (via_alias) {
                reject_or_warn_alias(type_text, std::string(to_string(*type)), "control type");
            }
            entry.control_type = *type;
            for (const auto& [name, other] : typed) {
                if (name == entry.control_name && other != entry.control_type) {
                    raise(SemanticError::Kind::DuplicateTarget,
                          "control '" + entry.control_name +
                              "' is customized with conflicting types '" +
                              std::string(to_string(other)) + "' and '" +
                              std::string(to_string(entry.control_type)) + "'");
                }
            }
            typed.emplace(entry.control_name, entry.control_type);
            std::string property_text = child_text(*control, "property");
            std::optional<PropertyName> property = parse_property_name(property_text);
            if (!property) {
                raise(SemanticError::Kind::PropertyNotApplicable,
                      "'" + property_text + "' is not a customizable property");
            }
            entry.property = *property;
            if (!property_applicable(entry.control_type, entry.property)) {
                raise(SemanticError::Kind::PropertyNotApplicable,
                      "property '" + property_text + "' does not apply to control type '" +
                          std::string(to_string(entry.control_type)) + "'");
            }
            std::string value_text = child_text(*control, "value");
            switch (value_kind(entry.property)) {
                case ValueKind::Boolean: {
                    std::optional<bool> value = parse_boolean(value_text);
                    if (!value) {
                        raise(SemanticError::Kind::BadValue,
                              "value '" + value_text + "' for property '" + property_text +
                                  "' must be True or False");
                    }
                    entry.value = *value;
                    break;
                }
                case ValueKind::StringList: {
                    std::optional<std::vector<std::string>> items = parse_items(value_text);
                    if (!items) {
                        raise(SemanticError::Kind::BadValue,
                              "value '" + value_text + "' for property '" + property_text +
                                  "' has an empty list item");
                    }
                    entry.value = std::move(*items);
                    break;
                }
                case ValueKind::String:
                    entry.value = value_text;
                    break;
            }
            auto key = std::make_pair(entry.control_name, entry.property);
            if (!seen.insert(key).second) {
                raise(SemanticError::Kind::DuplicateTarget,
                      "duplicate customization for property '" + property_text +
                          "' of control '" + entry.control_name + "'");
            }
            spec.gui.push_back(std::move(entry));
        }
    }

    void lower_events(const Element& events) {
        std::set<std::string> seen;
        for (const Element* event : events.children_named("event")) {
            EventAction entry;
            const Element* name = event->child("name");
            if (!name) {
                name = &required_child(*event, "eventName");
                spec.source_dialect.uses_event_name_tag = true;
                reject_or_warn_alias("eventName", "name", "element");
            }
            entry.event_name = xml::canonical_text(*name);
            if (entry.event_name.empty()) {
                raise(SemanticError::Kind::BadValue, "event name must not be empty");
            }
            entry.control_name = child_text(*event, "controlName");
            if (entry.control_name.empty()) {
                raise(SemanticError::Kind::BadValue,
                      "controlName of event '" + entry.event_name + "' must not be empty");
            }
            entry.action = parse_action(*event, "event '" + entry.event_name + "'");
            if (!seen.insert(entry.event_name).second) {
                raise(SemanticError::Kind::DuplicateTarget,
                      "duplicate customization for event '" + entry.event_name + "'");
            }
            spec.events.push_back(std::move(entry));
        }
    }

    void lower_permissions(const Element& section, std::string_view entry_tag) {
        std::set<PermissionName> seen;
        for (const Element* holder : section.children_named(entry_tag)) {
            std::string name_text = child_text(*holder, "name");
            std::optional<PermissionName> permission = parse_permission_name(name_text);
            if (!permission) {
                raise(SemanticError::Kind::UnknownPermissionName,
                      "unknown permission '" + name_text + "'");
            }
            PermissionAction entry;
            entry.permission = *permission;
            entry.action = parse_action(*holder, "permission '" + name_text + "'");
            if (!seen.insert(entry.permission).second) {
                raise(SemanticError::Kind::DuplicateTarget,
                      "duplicate customization for permission '" + name_text + "'");
            }
            spec.permissions.push_back(entry);
        }
    }
};

}  // namespace

std::string_view to_string(Toggle toggle) {
    return toggle == Toggle::Enable ? "+" : "-";
}

bool same_entries(const CustomizationSpec& a, const CustomizationSpec& b) {
    return a.gui == b.gui && a.events == b.events && a.permissions == b.permissions;
}

CustomizationSpec lower_to_spec(const xml::Document& doc, const dtd::DtdGrammar& grammar,
                                const LowerOptions& options,
                                std::vector<std::string>* warnings) {
    dtd::ValidationReport report = dtd::validate_document(doc, grammar, "customization");
    if (!report.valid) {
        throw SemanticError(SemanticError::Kind::ValidationFailed,
                            "customization document failed structure validation",
                            std::move(report));
    }
    Lowerer lowerer{options, warnings, {}, {}};
    if (const Element* gui = doc.root.child("GUI")) lowerer.lower_gui(*gui);
    if (const Element* events = doc.root.child("EVENTS")) lowerer.lower_events(*events);
    if (const Element* permissions = doc.root.child("PERMISSIONS")) {
        lowerer.lower_permissions(*permissions, "permission");
    }
    if (const Element* policies = doc.root.child("POLICIES")) {
        lowerer.spec.source_dialect.uses_policies_tag = true;
        lowerer.reject_or_warn_alias("POLICIES", "PERMISSIONS", "element");
        lowerer.lower_permissions(*policies, "policy");
    }
    return lowerer.spec;
}

}  // namespace autoconf::custlang
