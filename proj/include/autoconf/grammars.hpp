#pragma once

#include <string_view>

#include "autoconf/dtd.hpp"

namespace autoconf::grammars {

inline constexpr std::string_view kCustomizationRoot = "customization";
inline constexpr std::string_view kManifestRoot = "application";

/// The embedded grammar sources, byte-identical to the .dtd files shipped
/// in data/.
std::string_view customization_dtd();
std::string_view manifest_dtd();

/// Parsed forms of the embedded grammars, built once and shared.
const dtd::DtdGrammar& customization_grammar();
const dtd::DtdGrammar& manifest_grammar();

}  // namespace autoconf::grammars
