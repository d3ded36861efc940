#pragma once

#include <set>
#include <string>

namespace autoconf::engine {

/// Tri-partitioned name sets. The three partitions are independent name
/// spaces; set algebra is defined partition-wise.
struct ElementSet {
    std::set<std::string> gui;
    std::set<std::string> events;
    std::set<std::string> permissions;

    bool empty() const { return gui.empty() && events.empty() && permissions.empty(); }
    std::size_t size() const { return gui.size() + events.size() + permissions.size(); }

    bool operator==(const ElementSet&) const = default;
};

ElementSet intersect(const ElementSet& a, const ElementSet& b);
ElementSet set_union(const ElementSet& a, const ElementSet& b);
/// True iff every partition of `inner` is contained in the corresponding
/// partition of `outer`.
bool is_subset(const ElementSet& inner, const ElementSet& outer);

}  // namespace autoconf::engine
