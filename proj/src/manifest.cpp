#include "autoconf/manifest.hpp"

#include <set>
#include <utility>

namespace autoconf::manifest {

namespace {

using xml::Element;
using xml::Node;
using xml::TextNode;

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

bool child_bool(const Element& parent, std::string_view name, const std::string& subject) {
    std::string text = child_text(parent, name);
    std::optional<bool> value = parse_boolean(text);
    if (!value) {
        raise(SemanticError::Kind::BadValue,
              "value '" + text + "' for " + subject + " must be True or False");
    }
    return *value;
}

PropertyValue parse_property_value(PropertyName property, const std::string& text,
                                   const std::string& control_name) {
    switch (value_kind(property)) {
        case ValueKind::Boolean: {
            std::optional<bool> value = parse_boolean(text);
            if (!value) {
                raise(SemanticError::Kind::BadValue,
                      "value '" + text + "' for property '" +
                          std::string(to_string(property)) + "' of control '" + control_name +
                          "' must be True or False");
            }
            return *value;
        }
        case ValueKind::StringList: {
            std::optional<std::vector<std::string>> items = parse_items(text);
            if (!items) {
                raise(SemanticError::Kind::BadValue,
                      "value '" + text + "' for property '" +
                          std::string(to_string(property)) + "' of control '" + control_name +
                          "' has an empty list item");
            }
            return std::move(*items);
        }
        case ValueKind::String:
            return text;
    }
    return text;
}

ControlDecl parse_control(const Element& element, std::vector<std::string>* warnings) {
    std::string name = xml::canonical_text(required_child(element, "name"));
    if (name.empty()) raise(SemanticError::Kind::BadValue, "control name must not be empty");
    std::string type_text = child_text(element, "type");
    bool via_alias = false;
    std::optional<ControlType> type = parse_control_type(type_text, &via_alias);
    if (!type) {
        raise(SemanticError::Kind::UnknownControlType,
              "unknown control type '" + type_text + "' for control '" + name + "'");
    }
    if (via_alias) {
        warn(warnings, "control type '" + type_text + "' treated as '" +
                           std::string(to_string(*type)) + "'");
    }
    ControlDecl control = ControlDecl::with_defaults(std::move(name), *type);
    std::set<PropertyName> seen;
    for (const Element* holder : element.children_named("property")) {
        std::string property_text = child_text(*holder, "name");
        std::optional<PropertyName> property = parse_property_name(property_text);
        if (!property) {
            raise(SemanticError::Kind::PropertyNotApplicable,
                  "'" + property_text + "' is not a recognized property");
        }
        if (!property_applicable(control.control_type, *property)) {
            raise(SemanticError::Kind::PropertyNotApplicable,
                  "property '" + property_text + "' does not apply to control type '" +
                      std::string(to_string(control.control_type)) + "'");
        }
        if (!seen.insert(*property).second) {
            raise(SemanticError::Kind::DuplicateName,
                  "property '" + property_text + "' declared twice for control '" +
                      control.name + "'");
        }
        std::string value_text = child_text(*holder, "value");
        control.set_property(*property, parse_property_value(*property, value_text, control.name));
    }
    return control;
}

Element text_element(std::string name, std::string text) {
    Element e;
    e.name = std::move(name);
    if (!text.empty()) e.children.push_back(Node{TextNode{std::move(text)}});
    return e;
}

Element control_to_element(const ControlDecl& control) {
    Element e;
    e.name = "control";
    e.children.push_back(Node{text_element("name", control.name)});
    e.children.push_back(Node{text_element("type", std::string(to_string(control.control_type)))});
    for (PropertyName property : applicable_properties(control.control_type)) {
        const PropertyValue& value = control.property(property);
        if (value == default_property_value(property)) continue;
        Element holder;
        holder.name = "property";
        holder.children.push_back(Node{text_element("name", std::string(to_string(property)))});
        holder.children.push_back(Node{text_element("value", render_value(value))});
        e.children.push_back(Node{std::move(holder)});
    }
    return e;
}

}  // namespace

ControlDecl ControlDecl::with_defaults(std::string name, ControlType type) {
    ControlDecl control;
    control.name = std::move(name);
    control.control_type = type;
    for (PropertyName property : applicable_properties(type)) {
        control.properties.emplace(property, default_property_value(property));
    }
    return control;
}

const PropertyValue& ControlDecl::property(PropertyName property) const {
    return properties.at(property);
}

void ControlDecl::set_property(PropertyName property, PropertyValue value) {
    properties[property] = std::move(value);
}

bool ControlDecl::visible() const { return std::get<bool>(property(PropertyName::Visible)); }

const ControlDecl* ApplicationManifest::find_control(std::string_view name) const {
    for (const ControlDecl& control : controls) {
        if (control.name == name) return &control;
    }
    return nullptr;
}

ControlDecl* ApplicationManifest::find_control(std::string_view name) {
    for (ControlDecl& control : controls) {
        if (control.name == name) return &control;
    }
    return nullptr;
}

const EventDecl* ApplicationManifest::find_event(std::string_view name) const {
    for (const EventDecl& event : events) {
        if (event.name == name) return &event;
    }
    return nullptr;
}

EventDecl* ApplicationManifest::find_event(std::string_view name) {
    for (EventDecl& event : events) {
        if (event.name == name) return &event;
    }
    return nullptr;
}

const PermissionDecl* ApplicationManifest::find_permission(PermissionName name) const {
    for (const PermissionDecl& permission : permissions) {
        if (permission.name == name) return &permission;
    }
    return nullptr;
}

PermissionDecl* ApplicationManifest::find_permission(PermissionName name) {
    for (PermissionDecl& permission : permissions) {
        if (permission.name == name) return &permission;
    }
    return nullptr;
}

ApplicationManifest parse_manifest(const xml::Document& doc, const dtd::DtdGrammar& grammar,
                                   std::vector<std::string>* warnings) {
    dtd::ValidationReport report = dtd::validate_document(doc, grammar, "application");
    if (!report.valid) {
        throw SemanticError(SemanticError::Kind::ValidationFailed,
                            "manifest document failed structure validation", std::move(report));
    }
    ApplicationManifest m;
    m.app_name = child_text(doc.root, "name");
    if (m.app_name.empty()) {
        raise(SemanticError::Kind::BadValue, "application name must not be empty");
    }
    std::set<std::string> control_names;
    const Element& controls = required_child(doc.root, "controls");
    for (const Element* element : controls.children_named("control")) {
        ControlDecl control = parse_control(*element, warnings);
        if (!control_names.insert(control.name).second) {
            raise(SemanticError::Kind::DuplicateName,
                  "control '" + control.name + "' declared twice");
        }
        m.controls.push_back(std::move(control));
    }
    std::set<std::string> event_names;
    const Element& events = required_child(doc.root, "events");
    for (const Element* element : events.children_named("event")) {
        EventDecl event;
        event.name = child_text(*element, "name");
        if (event.name.empty()) {
            raise(SemanticError::Kind::BadValue, "event name must not be empty");
        }
        if (!event_names.insert(event.name).second) {
            raise(SemanticError::Kind::DuplicateName,
                  "event '" + event.name + "' declared twice");
        }
        event.control_name = child_text(*element, "controlName");
        if (!m.find_control(event.control_name)) {
            raise(SemanticError::Kind::DanglingEventControl,
                  "event '" + event.name + "' references undeclared control '" +
                      event.control_name + "'");
        }
        event.enabled = child_bool(*element, "enabled", "event '" + event.name + "'");
        m.events.push_back(std::move(event));
    }
    std::set<PermissionName> permission_names;
    const Element& permissions = required_child(doc.root, "permissions");
    for (const Element* element : permissions.children_named("permission")) {
        std::string name_text = child_text(*element, "name");
        std::optional<PermissionName> name = parse_permission_name(name_text);
        if (!name) {
            raise(SemanticError::Kind::UnknownPermissionName,
                  "unknown permission '" + name_text + "'");
        }
        if (!permission_names.insert(*name).second) {
            raise(SemanticError::Kind::DuplicateName,
                  "permission '" + name_text + "' declared twice");
        }
        PermissionDecl permission;
        permission.name = *name;
        permission.granted = child_bool(*element, "granted", "permission '" + name_text + "'");
        m.permissions.push_back(permission);
    }
    std::size_t forms = 0;
    for (const ControlDecl& control : m.controls) {
        if (control.control_type == ControlType::Form) ++forms;
    }
    if (forms == 0) raise(SemanticError::Kind::MissingForm, "manifest declares no Form control");
    if (forms > 1) {
        raise(SemanticError::Kind::MultipleForms, "manifest declares more than one Form control");
    }
    return m;
}

xml::Document to_document(const ApplicationManifest& m) {
    xml::Document doc;
    doc.had_prolog = true;
    Element& root = doc.root;
    root.name = "application";
    root.children.push_back(Node{text_element("name", m.app_name)});
    Element controls;
    controls.name = "controls";
    for (const ControlDecl& control : m.controls) {
        controls.children.push_back(Node{control_to_element(control)});
    }
    root.children.push_back(Node{std::move(controls)});
    Element events;
    events.name = "events";
    for (const EventDecl& event : m.events) {
        Element e;
        e.name = "event";
        e.children.push_back(Node{text_element("name", event.name)});
        e.children.push_back(Node{text_element("controlName", event.control_name)});
        e.children.push_back(Node{text_element("enabled", event.enabled ? "True" : "False")});
        events.children.push_back(Node{std::move(e)});
    }
    root.children.push_back(Node{std::move(events)});
    Element permissions;
    permissions.name = "permissions";
    for (const PermissionDecl& permission : m.permissions) {
        Element e;
        e.name = "permission";
        e.children.push_back(Node{text_element("name", std::string(to_string(permission.name)))});
        e.children.push_back(Node{text_element("granted", permission.granted ? "True" : "False")});
        permissions.children.push_back(Node{std::move(e)});
    }
    root.children.push_back(Node{std::move(permissions)});
    return doc;
}

std::string serialize_manifest(const ApplicationManifest& m) {
    return xml::serialize_document(to_document(m));
}

engine::ElementSet active_set(const ApplicationManifest& m) {
    engine::ElementSet set;
    for (const ControlDecl& control : m.controls) {
        if (control.visible()) set.gui.insert(control.name);
    }
    for (const EventDecl& event : m.events) {
        if (event.enabled) set.events.insert(event.name);
    }
    for (const PermissionDecl& permission : m.permissions) {
        if (permission.granted) set.permissions.insert(std::string(to_string(permission.name)));
    }
    return set;
}

}  // namespace autoconf::manifest
