#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "autoconf/cli.hpp"
#include "autoconf/custlang.hpp"
#include "autoconf/dtd.hpp"
#include "autoconf/engine.hpp"
#include "autoconf/grammars.hpp"
#include "autoconf/manifest.hpp"
#include "autoconf/xml.hpp"

namespace py = pybind11;
using namespace autoconf;

namespace {

manifest::ApplicationManifest parse_manifest_text(const std::string& text,
                                                  std::vector<std::string>& warnings) {
    xml::Document doc = xml::parse_document(text);
    return manifest::parse_manifest(doc, grammars::manifest_grammar(), &warnings);
}

custlang::CustomizationSpec parse_customization_text(const std::string& text, bool strict,
                                                     std::vector<std::string>& warnings) {
    xml::Document doc = xml::parse_document(text);
    return custlang::lower_to_spec(doc, grammars::customization_grammar(), {strict}, &warnings);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Declarative self-configuration engine: manifests, customization files, "
              "and their set algebra";

    py::register_exception<xml::WellFormednessError>(m, "XmlError");
    py::register_exception<dtd::DtdSyntaxError>(m, "DtdError");
    py::register_exception<SemanticError>(m, "SemanticError");
    py::register_exception<engine::SubsetViolation>(m, "SubsetViolation");

    py::enum_<ControlType>(m, "ControlType")
        .value("Form", ControlType::Form)
        .value("Label", ControlType::Label)
        .value("Textbox", ControlType::Textbox)
        .value("Button", ControlType::Button)
        .value("ToolStripMenuItem", ControlType::ToolStripMenuItem)
        .value("Checkbox", ControlType::Checkbox)
        .value("RadioButton", ControlType::RadioButton)
        .value("ComboBox", ControlType::ComboBox)
        .value("PictureBox", ControlType::PictureBox);

    py::enum_<PropertyName>(m, "PropertyName")
        .value("Visible", PropertyName::Visible)
        .value("Enabled", PropertyName::Enabled)
        .value("Text", PropertyName::Text)
        .value("Checked", PropertyName::Checked)
        .value("Image", PropertyName::Image)
        .value("Items", PropertyName::Items);

    py::enum_<PermissionName>(m, "PermissionName")
        .value("DiskAccess", PermissionName::DiskAccess)
        .value("NetworkAccess", PermissionName::NetworkAccess)
        .value("ProcessAccess", PermissionName::ProcessAccess);

    py::enum_<custlang::Toggle>(m, "Toggle")
        .value("Enable", custlang::Toggle::Enable)
        .value("Disable", custlang::Toggle::Disable);

    py::enum_<engine::Partition>(m, "Partition")
        .value("Gui", engine::Partition::Gui)
        .value("Events", engine::Partition::Events)
        .value("Permissions", engine::Partition::Permissions);

    py::class_<engine::ElementSet>(m, "ElementSet")
        .def(py::init<>())
        .def(py::init([](std::set<std::string> gui, std::set<std::string> events,
                         std::set<std::string> permissions) {
                 return engine::ElementSet{std::move(gui), std::move(events),
                                           std::move(permissions)};
             }),
             py::arg("gui") = std::set<std::string>{},
             py::arg("events") = std::set<std::string>{},
             py::arg("permissions") = std::set<std::string>{})
        .def_readwrite("gui", &engine::ElementSet::gui)
        .def_readwrite("events", &engine::ElementSet::events)
        .def_readwrite("permissions", &engine::ElementSet::permissions)
        .def("__len__", &engine::ElementSet::size)
        .def("__eq__", [](const engine::ElementSet& a, const engine::ElementSet& b) {
            return a == b;
        })
        .def("__repr__", [](const engine::ElementSet& s) {
            std::ostringstream out;
            out << "ElementSet(gui=" << s.gui.size() << ", events=" << s.events.size()
                << ", permissions=" << s.permissions.size() << ")";
            return out.str();
        });

    py::class_<manifest::ControlDecl>(m, "Control")
        .def_readonly("name", &manifest::ControlDecl::name)
        .def_readonly("control_type", &manifest::ControlDecl::control_type)
        .def_readonly("properties", &manifest::ControlDecl::properties)
        .def("visible", &manifest::ControlDecl::visible);

    py::class_<manifest::EventDecl>(m, "Event")
        .def_readonly("name", &manifest::EventDecl::name)
        .def_readonly("control_name", &manifest::EventDecl::control_name)
        .def_readonly("enabled", &manifest::EventDecl::enabled);

    py::class_<manifest::PermissionDecl>(m, "Permission")
        .def_readonly("name", &manifest::PermissionDecl::name)
        .def_readonly("granted", &manifest::PermissionDecl::granted);

    py::class_<manifest::ApplicationManifest>(m, "Manifest")
        .def_readonly("app_name", &manifest::ApplicationManifest::app_name)
        .def_readonly("controls", &manifest::ApplicationManifest::controls)
        .def_readonly("events", &manifest::ApplicationManifest::events)
        .def_readonly("permissions", &manifest::ApplicationManifest::permissions)
        .def("serialize", &manifest::serialize_manifest)
        .def("active_set", &manifest::active_set)
        .def("__eq__", [](const manifest::ApplicationManifest& a,
                          const manifest::ApplicationManifest& b) { return a == b; })
        .def("__repr__", [](const manifest::ApplicationManifest& a) {
            return "Manifest('" + a.app_name + "', " + std::to_string(a.controls.size()) +
                   " controls)";
        });

    py::class_<custlang::GuiOverride>(m, "GuiOverride")
        .def_readonly("control_name", &custlang::GuiOverride::control_name)
        .def_readonly("control_type", &custlang::GuiOverride::control_type)
        .def_readonly("property", &custlang::GuiOverride::property)
        .def_readonly("value", &custlang::GuiOverride::value);

    py::class_<custlang::EventAction>(m, "EventAction")
        .def_readonly("event_name", &custlang::EventAction::event_name)
        .def_readonly("control_name", &custlang::EventAction::control_name)
        .def_readonly("action", &custlang::EventAction::action);

    py::class_<custlang::PermissionAction>(m, "PermissionAction")
        .def_readonly("permission", &custlang::PermissionAction::permission)
        .def_readonly("action", &custlang::PermissionAction::action);

    py::class_<custlang::CustomizationSpec>(m, "Customization")
        .def_readonly("gui", &custlang::CustomizationSpec::gui)
        .def_readonly("events", &custlang::CustomizationSpec::events)
        .def_readonly("permissions", &custlang::CustomizationSpec::permissions)
        .def("__repr__", [](const custlang::CustomizationSpec& s) {
            return "Customization(" + std::to_string(s.gui.size()) + " gui, " +
                   std::to_string(s.events.size()) + " events, " +
                   std::to_string(s.permissions.size()) + " permissions)";
        });

    py::class_<engine::ChangeRecord>(m, "ChangeRecord")
        .def_readonly("partition", &engine::ChangeRecord::partition)
        .def_readonly("target", &engine::ChangeRecord::target)
        .def_readonly("field", &engine::ChangeRecord::field)
        .def_readonly("old_value", &engine::ChangeRecord::old_value)
        .def_readonly("new_value", &engine::ChangeRecord::new_value)
        .def("__eq__", [](const engine::ChangeRecord& a, const engine::ChangeRecord& b) {
            return a == b;
        })
        .def("__repr__", [](const engine::ChangeRecord& r) {
            return std::string(engine::to_string(r.partition)) + " " + r.target + " " +
                   r.field + " " + r.old_value + " -> " + r.new_value;
        });

    py::class_<engine::CustomizedManifest>(m, "CustomizedManifest")
        .def_readonly("manifest", &engine::CustomizedManifest::manifest)
        .def_readonly("provenance", &engine::CustomizedManifest::provenance);

    py::class_<engine::ModelReport>(m, "ModelReport")
        .def_readonly("subset_holds", &engine::ModelReport::subset_holds)
        .def_readonly("intersection_holds", &engine::ModelReport::intersection_holds)
        .def_readonly("witness", &engine::ModelReport::witness);

    m.def(
        "parse_manifest",
        [](const std::string& text) {
            std::vector<std::string> warnings;
            manifest::ApplicationManifest result = parse_manifest_text(text, warnings);
            return py::make_tuple(std::move(result), std::move(warnings));
        },
        py::arg("text"),
        "Parse and validate a manifest document; returns (Manifest, warnings).");

    m.def(
        "parse_customization",
        [](const std::string& text, bool strict) {
            std::vector<std::string> warnings;
            custlang::CustomizationSpec result =
                parse_customization_text(text, strict, warnings);
            return py::make_tuple(std::move(result), std::move(warnings));
        },
        py::arg("text"), py::arg("strict") = false,
        "Parse, validate, and lower a customization document; returns "
        "(Customization, warnings).");

    m.def("intersect", &engine::intersect, py::arg("a"), py::arg("b"));
    m.def("union", &engine::set_union, py::arg("a"), py::arg("b"));
    m.def("is_subset", &engine::is_subset, py::arg("inner"), py::arg("outer"));

    m.def("declared_names", &engine::declared_names, py::arg("manifest"));
    m.def("referenced_names", &engine::referenced_names, py::arg("customization"));
    m.def("check_references", &engine::check_references, py::arg("manifest"),
          py::arg("customization"));
    m.def("keep_set", &engine::keep_set, py::arg("manifest"), py::arg("customization"));
    m.def("apply", &engine::apply, py::arg("manifest"), py::arg("customization"));
    m.def("verify_model", &engine::verify_model, py::arg("manifest"),
          py::arg("customization"));
    m.def("diff", &engine::diff, py::arg("original"), py::arg("customized"));

    m.def("customization_dtd", [] { return std::string(grammars::customization_dtd()); });
    m.def("manifest_dtd", [] { return std::string(grammars::manifest_dtd()); });

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            int code = cli::run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run one command in-process; returns (exit_code, stdout, stderr).");
}
