#include "autoconf/engine.hpp"

#include <algorithm>
#include <iterator>
#include <utility>

namespace autoconf::engine {

namespace {

using custlang::CustomizationSpec;
using custlang::Toggle;
using manifest::ApplicationManifest;
using manifest::ControlDecl;
using manifest::EventDecl;
using manifest::PermissionDecl;

std::string violation_message(Partition partition, const std::string& name) {
    return "subset violation: " + std::string(to_string(partition)) + " name '" + name +
           "' is not declared by the application";
}

// First undeclared reference in spec entry order, if any.
std::optional<std::pair<Partition, std::string>> first_undeclared(
    const ApplicationManifest& app, const CustomizationSpec& spec) {
    for (const custlang::GuiOverride& over : spec.gui) {
        if (!app.find_control(over.control_name)) {
            return std::make_pair(Partition::Gui, over.control_name);
        }
    }
    for (const custlang::EventAction& action : spec.events) {
        if (!app.find_event(action.event_name)) {
            return std::make_pair(Partition::Events, action.event_name);
        }
        if (!app.find_control(action.control_name)) {
            return std::make_pair(Partition::Gui, action.control_name);
        }
    }
    for (const custlang::PermissionAction& action : spec.permissions) {
        if (!app.find_permission(action.permission)) {
            return std::make_pair(Partition::Permissions,
                                  std::string(to_string(action.permission)));
        }
    }
    return std::nullopt;
}

}  // namespace

std::string_view to_string(Partition partition) {
    switch (partition) {
        case Partition::Gui: return "gui";
        case Partition::Events: return "events";
        case Partition::Permissions: return "permissions";
    }
    return "";
}

SubsetViolation::SubsetViolation(Partition partition, std::string name)
    : std::runtime_error(violation_message(partition, name)),
      partition_(partition),
      name_(std::move(name)) {}

ElementSet declared_names(const ApplicationManifest& app) {
    ElementSet set;
    for (const ControlDecl& control : app.controls) set.gui.insert(control.name);
    for (const EventDecl& event : app.events) set.events.insert(event.name);
    for (const PermissionDecl& permission : app.permissions) {
        set.permissions.insert(std::string(to_string(permission.name)));
    }
    return set;
}

ElementSet referenced_names(const CustomizationSpec& spec) {
    ElementSet set;
    for (const custlang::GuiOverride& over : spec.gui) set.gui.insert(over.control_name);
    for (const custlang::EventAction& action : spec.events) {
        set.events.insert(action.event_name);
        set.gui.insert(action.control_name);
    }
    for (const custlang::PermissionAction& action : spec.permissions) {
        set.permissions.insert(std::string(to_string(action.permission)));
    }
    return set;
}

void check_references(const ApplicationManifest& app, const CustomizationSpec& spec) {
    if (auto bad = first_undeclared(app, spec)) {
        throw SubsetViolation(bad->first, bad->second);
    }
}

ElementSet keep_set(const ApplicationManifest& app, const CustomizationSpec& spec) {
    check_references(app, spec);
    ElementSet keep = manifest::active_set(app);
    for (const custlang::GuiOverride& over : spec.gui) {
        if (over.property != PropertyName::Visible) continue;
        if (std::get<bool>(over.value)) {
            keep.gui.insert(over.control_name);
        } else {
            keep.gui.erase(over.control_name);
        }
    }
    for (const custlang::EventAction& action : spec.events) {
        if (action.action == Toggle::Enable) {
            keep.events.insert(action.event_name);
        } else {
            keep.events.erase(action.event_name);
        }
    }
    for (const custlang::PermissionAction& action : spec.permissions) {
        std::string name(to_string(action.permission));
        if (action.action == Toggle::Enable) {
            keep.permissions.insert(std::move(name));
        } else {
            keep.permissions.erase(name);
        }
    }
    return keep;
}

CustomizedManifest apply(const ApplicationManifest& app, const CustomizationSpec& spec) {
    check_references(app, spec);
    // No write happens until every override is known to be applicable.
    for (const custlang::GuiOverride& over : spec.gui) {
        const ControlDecl* control = app.find_control(over.control_name);
        if (!property_applicable(control->control_type, over.property)) {
            throw SemanticError(SemanticError::Kind::PropertyNotApplicable,
                                "property '" + std::string(to_string(over.property)) +
                                    "' does not apply to control '" + over.control_name +
                                    "' of type '" +
                                    std::string(to_string(control->control_type)) + "'");
        }
    }
    CustomizedManifest result{app, {}};
    for (const custlang::GuiOverride& over : spec.gui) {
        ControlDecl* control = result.manifest.find_control(over.control_name);
        const PropertyValue& old_value = control->property(over.property);
        if (old_value == over.value) continue;
        ChangeRecord record{Partition::Gui, over.control_name,
                            std::string(to_string(over.property)), render_value(old_value),
                            render_value(over.value)};
        control->set_property(over.property, over.value);
        result.provenance.push_back(std::move(record));
    }
    for (const custlang::EventAction& action : spec.events) {
        EventDecl* event = result.manifest.find_event(action.event_name);
        bool enabled = action.action == Toggle::Enable;
        if (event->enabled == enabled) continue;
        result.provenance.push_back({Partition::Events, action.event_name, "enabled",
                                     event->enabled ? "True" : "False",
                                     enabled ? "True" : "False"});
        event->enabled = enabled;
    }
    for (const custlang::PermissionAction& action : spec.permissions) {
        PermissionDecl* permission = result.manifest.find_permission(action.permission);
        bool granted = action.action == Toggle::Enable;
        if (permission->granted == granted) continue;
        result.provenance.push_back({Partition::Permissions,
                                     std::string(to_string(action.permission)), "granted",
                                     permission->granted ? "True" : "False",
                                     granted ? "True" : "False"});
        permission->granted = granted;
    }
    return result;
}

ModelReport verify_model(const ApplicationManifest& app, const CustomizationSpec& spec) {
    ModelReport report;
    if (auto bad = first_undeclared(app, spec)) {
        report.subset_holds = false;
        report.intersection_holds = false;
        report.witness = std::move(bad);
        return report;
    }
    report.subset_holds = true;
    ElementSet before = manifest::active_set(app);
    ElementSet keep = keep_set(app, spec);
    ElementSet expected = intersect(before, keep);
    ElementSet after;
    try {
        after = manifest::active_set(apply(app, spec).manifest);
    } catch (const SemanticError&) {
        report.intersection_holds = false;
        report.witness = std::make_pair(Partition::Gui, spec.gui.empty()
                                                            ? std::string()
                                                            : spec.gui.front().control_name);
        return report;
    }
    report.intersection_holds = after == expected;
    if (!report.intersection_holds) {
        auto pick = [](const std::set<std::string>& a, const std::set<std::string>& b)
            -> std::optional<std::string> {
            std::vector<std::string> delta;
            std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                          std::back_inserter(delta));
            if (delta.empty()) return std::nullopt;
            return delta.front();
        };
        if (auto name = pick(after.gui, expected.gui)) {
            report.witness = std::make_pair(Partition::Gui, *name);
        } else if (auto event = pick(after.events, expected.events)) {
            report.witness = std::make_pair(Partition::Events, *event);
        } else if (auto permission = pick(after.permissions, expected.permissions)) {
            report.witness = std::make_pair(Partition::Permissions, *permission);
        }
    }
    return report;
}

std::vector<ChangeRecord> diff(const ApplicationManifest& original,
                               const CustomizedManifest& customized) {
    std::vector<ChangeRecord> out;
    for (const ControlDecl& before : original.controls) {
        const ControlDecl* after = customized.manifest.find_control(before.name);
        if (!after) continue;
        for (PropertyName property : applicable_properties(before.control_type)) {
            const PropertyValue& old_value = before.property(property);
            if (!after->properties.contains(property)) continue;
            const PropertyValue& new_value = after->property(property);
            if (old_value == new_value) continue;
            out.push_back({Partition::Gui, before.name, std::string(to_string(property)),
                           render_value(old_value), render_value(new_value)});
        }
    }
    for (const EventDecl& before : original.events) {
        const EventDecl* after = customized.manifest.find_event(before.name);
        if (!after || before.enabled == after->enabled) continue;
        out.push_back({Partition::Events, before.name, "enabled",
                       before.enabled ? "True" : "False", after->enabled ? "True" : "False"});
    }
    for (const PermissionDecl& before : original.permissions) {
        const PermissionDecl* after = customized.manifest.find_permission(before.name);
        if (!after || before.granted == after->granted) continue;
        out.push_back({Partition::Permissions, std::string(to_string(before.name)), "granted",
                       before.granted ? "True" : "False", after->granted ? "True" : "False"});
    }
    return out;
}

}  // namespace autoconf::engine
