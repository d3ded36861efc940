#include "autoconf/element_set.hpp"

#include <algorithm>
#include <iterator>

namespace autoconf::engine {

namespace {

std::set<std::string> intersect_one(const std::set<std::string>& a,
                                    const std::set<std::string>& b) {
    std::set<std::string> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(out, out.end()));
    return out;
}

std::set<std::string> union_one(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::set<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

}  // namespace

ElementSet intersect(const ElementSet& a, const ElementSet& b) {
    return {intersect_one(a.gui, b.gui), intersect_one(a.events, b.events),
            intersect_one(a.permissions, b.permissions)};
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
    return {union_one(a.gui, b.gui), union_one(a.events, b.events),
            union_one(a.permissions, b.permissions)};
}

bool is_subset(const ElementSet& inner, const ElementSet& outer) {
    return std::includes(outer.gui.begin(), outer.gui.end(), inner.gui.begin(),
                         inner.gui.end()) &&
           std::includes(outer.events.begin(), outer.events.end(), inner.events.begin(),
                         inner.events.end()) &&
           std::includes(outer.permissions.begin(), outer.permissions.end(),
                         inner.permissions.begin(), inner.permissions.end());
}

}  // namespace autoconf::engine
