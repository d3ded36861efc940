#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "autoconf/custlang.hpp"
#include "autoconf/element_set.hpp"
#include "autoconf/manifest.hpp"

namespace autoconf::engine {

enum class Partition { Gui, Events, Permissions };

std::string_view to_string(Partition partition);

/// The customization references a name the application does not declare.
class SubsetViolation : public std::runtime_error {
public:
    SubsetViolation(Partition partition, std::string name);

    Partition partition() const noexcept { return partition_; }
    const std::string& name() const noexcept { return name_; }

private:
    Partition partition_;
    std::string name_;
};

struct ChangeRecord {
    Partition partition = Partition::Gui;
    std::string target;     // control, event, or permission name
    std::string field;      // property name, "enabled", or "granted"
    std::string old_value;
    std::string new_value;

    bool operator==(const ChangeRecord&) const = default;
};

struct CustomizedManifest {
    manifest::ApplicationManifest manifest;
    /// One record per spec entry that changed a value, in spec entry order.
    std::vector<ChangeRecord> provenance;
};

struct ModelReport {
    bool subset_holds = false;
    bool intersection_holds = false;
    std::optional<std::pair<Partition, std::string>> witness;
};

/// Every declared name, regardless of state.
ElementSet declared_names(const manifest::ApplicationManifest& app);
/// Every name the customization refers to (including the controls bound to
/// its event entries).
ElementSet referenced_names(const custlang::CustomizationSpec& spec);

/// Throws SubsetViolation for the first name (in spec entry order) not
/// declared by the application.
void check_references(const manifest::ApplicationManifest& app,
                      const custlang::CustomizationSpec& spec);

/// The elements the customization retains: the application's active set
/// with the spec's disabled names removed and its enabled names inserted.
/// Throws SubsetViolation like check_references.
ElementSet keep_set(const manifest::ApplicationManifest& app,
                    const custlang::CustomizationSpec& spec);

/// Write every override into a copy of the application. All-or-nothing:
/// references and property applicability are checked before the first
/// write. Declarations are never added or removed; only state changes.
CustomizedManifest apply(const manifest::ApplicationManifest& app,
                         const custlang::CustomizationSpec& spec);

/// Machine check of the two model properties: the referenced names form a
/// subset of the declared names, and the active set after apply equals the
/// intersection of the application's active set with the keep set. Never
/// throws; failures carry a witness.
ModelReport verify_model(const manifest::ApplicationManifest& app,
                         const custlang::CustomizationSpec& spec);

/// The change records of `customized`, which must have been produced from
/// `original`.
std::vector<ChangeRecord> diff(const manifest::ApplicationManifest& original,
                               const CustomizedManifest& customized);

}  // namespace autoconf::engine
