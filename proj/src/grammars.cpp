#include "autoconf/grammars.hpp"

namespace autoconf::grammars {

namespace {

constexpr std::string_view kCustomizationDtd =
    R"(<!ELEMENT customization (GUI?, EVENTS?, (PERMISSIONS | POLICIES)?)>
<!ELEMENT GUI (control*)>
<!ELEMENT control (name, type, property, value)>
<!ELEMENT EVENTS (event*)>
<!ELEMENT event ((name | eventName), controlName, action)>
<!ELEMENT PERMISSIONS (permission*)>
<!ELEMENT POLICIES (policy*)>
<!ELEMENT permission (name, action)>
<!ELEMENT policy (name, action)>
<!ELEMENT name (#PCDATA)>
<!ELEMENT eventName (#PCDATA)>
<!ELEMENT type (#PCDATA)>
<!ELEMENT property (#PCDATA)>
<!ELEMENT value (#PCDATA)>
<!ELEMENT controlName (#PCDATA)>
<!ELEMENT action (#PCDATA)>
)";

constexpr std::string_view kManifestDtd =
    R"(<!ELEMENT application (name, controls, events, permissions)>
<!ELEMENT controls (control*)>
<!ELEMENT control (name, type, property*)>
<!ELEMENT property (name, value)>
<!ELEMENT events (event*)>
<!ELEMENT event (name, controlName, enabled)>
<!ELEMENT permissions (permission*)>
<!ELEMENT permission (name, granted)>
<!ELEMENT name (#PCDATA)>
<!ELEMENT type (#PCDATA)>
<!ELEMENT value (#PCDATA)>
<!ELEMENT controlName (#PCDATA)>
<!ELEMENT enabled (#PCDATA)>
<!ELEMENT granted (#PCDATA)>
)";

}  // namespace

std::string_view customization_dtd() { return kCustomizationDtd; }

std::string_view manifest_dtd() { return kManifestDtd; }

const dtd::DtdGrammar& customization_grammar() {
    static const dtd::DtdGrammar grammar = dtd::parse_dtd(kCustomizationDtd);
    return grammar;
}

const dtd::DtdGrammar& manifest_grammar() {
    static const dtd::DtdGrammar grammar = dtd::parse_dtd(kManifestDtd);
    return grammar;
}

}  // namespace autoconf::grammars
