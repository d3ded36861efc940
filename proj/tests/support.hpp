#pragma once

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "autoconf/custlang.hpp"
#include "autoconf/engine.hpp"
#include "autoconf/grammars.hpp"
#include "autoconf/manifest.hpp"
#include "autoconf/xml.hpp"

namespace testsupport {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline std::string data_path(const std::string& name) {
    return std::string(AUTOCONF_DATA_DIR) + "/" + name;
}

inline std::string golden_path(const std::string& name) {
    return std::string(AUTOCONF_GOLDEN_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) { return read_file(data_path(name)); }

inline autoconf::xml::Document load_fixture_doc(const std::string& name) {
    return autoconf::xml::parse_document(read_fixture(name));
}

inline autoconf::manifest::ApplicationManifest load_stock_manifest() {
    return autoconf::manifest::parse_manifest(load_fixture_doc("stock_manifest.xml"),
                                              autoconf::grammars::manifest_grammar());
}

inline autoconf::custlang::CustomizationSpec load_custom_fixture(const std::string& name) {
    return autoconf::custlang::lower_to_spec(load_fixture_doc(name),
                                             autoconf::grammars::customization_grammar());
}

// Published stock application listings, frozen as data.
inline const std::set<std::string> kStockGui = {
    "fileToolStripMenuItem", "adminToolStripMenuItem", "firstnameLabel", "firstnameTextbox",
    "lastnameLabel", "lastnameTextbox", "countryLabel", "countryCBX", "priceLabel",
    "priceTextbox", "genderLabel", "maleRadio", "femaleRadio", "approveCheckbox",
    "createButton", "saveButton", "advertisementImage", "mainForm"};

inline const std::set<std::string> kStockEvents = {
    "createButton_Click", "saveButton_Click", "fileToolStripMenuItem_Click",
    "adminToolStripMenuItem_Click"};

inline const std::set<std::string> kStockPermissions = {"DiskAccess", "NetworkAccess",
                                                        "ProcessAccess"};

inline const std::set<std::string> kUserGui = {
    "fileToolStripMenuItem", "firstnameLabel", "firstnameTextbox", "lastnameLabel",
    "lastnameTextbox", "countryLabel", "countryCBX", "priceLabel", "priceTextbox",
    "genderLabel", "maleRadio", "femaleRadio", "createButton", "advertisementImage",
    "mainForm"};

inline const std::set<std::string> kUserEvents = {"createButton_Click",
                                                  "fileToolStripMenuItem_Click"};

inline const std::set<std::string> kAdminGui = {
    "adminToolStripMenuItem", "firstnameLabel", "firstnameTextbox", "lastnameLabel",
    "lastnameTextbox", "countryLabel", "countryCBX", "priceLabel", "priceTextbox",
    "genderLabel", "maleRadio", "femaleRadio", "approveCheckbox", "saveButton", "mainForm"};

inline const std::set<std::string> kAdminEvents = {"saveButton_Click",
                                                   "adminToolStripMenuItem_Click"};

inline const std::set<std::string> kAdminPermissions = {"DiskAccess", "NetworkAccess"};

// ---------------------------------------------------------------------------
// Random (manifest, spec) pairs. Every declared state starts on and every
// spec reference resolves, so generated pairs always satisfy the subset
// property.

struct RandomCase {
    autoconf::manifest::ApplicationManifest app;
    autoconf::custlang::CustomizationSpec spec;
};

inline autoconf::PropertyValue random_value(autoconf::PropertyName property, std::mt19937& rng) {
    using autoconf::PropertyName;
    using autoconf::ValueKind;
    switch (autoconf::value_kind(property)) {
        case ValueKind::Boolean:
            return std::uniform_int_distribution<int>(0, 1)(rng) == 1;
        case ValueKind::String: {
            static const std::vector<std::string> words = {"", "alpha", "beta", "gamma",
                                                           "delta"};
            return words[std::uniform_int_distribution<std::size_t>(0, words.size() - 1)(rng)];
        }
        case ValueKind::StringList: {
            std::vector<std::string> items;
            int n = std::uniform_int_distribution<int>(0, 3)(rng);
            for (int i = 0; i < n; ++i) items.push_back("item" + std::to_string(i));
            return items;
        }
    }
    return true;
}

inline RandomCase make_random_case(std::mt19937& rng) {
    using namespace autoconf;
    RandomCase result;
    auto chance = [&rng](double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
    };
    // One Form plus a handful of non-Form controls, defaults untouched.
    static const std::vector<ControlType> kNonFormTypes = {
        ControlType::Label,       ControlType::Textbox,    ControlType::Button,
        ControlType::ToolStripMenuItem, ControlType::Checkbox, ControlType::RadioButton,
        ControlType::ComboBox,    ControlType::PictureBox};
    result.app.app_name = "Randomized";
    int control_count = std::uniform_int_distribution<int>(1, 7)(rng);
    result.app.controls.push_back(
        manifest::ControlDecl::with_defaults("mainWindow", ControlType::Form));
    for (int i = 0; i < control_count; ++i) {
        ControlType type = kNonFormTypes[std::uniform_int_distribution<std::size_t>(
            0, kNonFormTypes.size() - 1)(rng)];
        result.app.controls.push_back(
            manifest::ControlDecl::with_defaults("c" + std::to_string(i), type));
    }
    int event_count = std::uniform_int_distribution<int>(0, 5)(rng);
    for (int i = 0; i < event_count; ++i) {
        manifest::EventDecl event;
        event.name = "e" + std::to_string(i);
        event.control_name =
            result.app
                .controls[std::uniform_int_distribution<std::size_t>(
                    0, result.app.controls.size() - 1)(rng)]
                .name;
        result.app.events.push_back(event);
    }
    for (PermissionName permission : kAllPermissions) {
        if (chance(0.8)) result.app.permissions.push_back({permission, true});
    }
    for (const manifest::ControlDecl& control : result.app.controls) {
        if (!chance(0.5)) continue;
        std::vector<PropertyName> properties = applicable_properties(control.control_type);
        PropertyName property = properties[std::uniform_int_distribution<std::size_t>(
            0, properties.size() - 1)(rng)];
        custlang::GuiOverride over;
        over.control_name = control.name;
        over.control_type = control.control_type;
        over.property = property;
        over.value = random_value(property, rng);
        result.spec.gui.push_back(std::move(over));
    }
    for (const manifest::EventDecl& event : result.app.events) {
        if (!chance(0.5)) continue;
        custlang::EventAction action;
        action.event_name = event.name;
        action.control_name = event.control_name;
        action.action = chance(0.5) ? custlang::Toggle::Enable : custlang::Toggle::Disable;
        result.spec.events.push_back(std::move(action));
    }
    for (const manifest::PermissionDecl& permission : result.app.permissions) {
        if (!chance(0.5)) continue;
        custlang::PermissionAction action;
        action.permission = permission.name;
        action.action = chance(0.5) ? custlang::Toggle::Enable : custlang::Toggle::Disable;
        result.spec.permissions.push_back(action);
    }
    return result;
}

}  // namespace testsupport
