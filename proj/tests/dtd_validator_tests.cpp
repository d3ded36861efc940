#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "autoconf/dtd.hpp"
#include "autoconf/grammars.hpp"
#include "autoconf/xml.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace autoconf;
using namespace autoconf::dtd;

namespace {

ValidationReport check(const std::string& doc_text, const DtdGrammar& grammar,
                       std::string_view root) {
    return validate_document(xml::parse_document(doc_text), grammar, root);
}

// The bare message; what() additionally carries the position.
std::string dtd_error(const std::string& source) {
    try {
        parse_dtd(source);
    } catch (const DtdSyntaxError& e) {
        return e.message();
    }
    FAIL("expected DtdSyntaxError");
    return {};
}

}  // namespace

TEST_CASE("embedded grammars equal the shipped grammar files") {
    CHECK(grammars::customization_dtd() == testsupport::read_fixture("customization.dtd"));
    CHECK(grammars::manifest_dtd() == testsupport::read_fixture("manifest.dtd"));
}

TEST_CASE("declaration structure of the customization grammar") {
    const DtdGrammar& g = grammars::customization_grammar();
    CHECK(g.declaration_order.front() == "customization");
    REQUIRE(g.find("customization") != nullptr);
    CHECK(declaration_source(*g.find("customization")) ==
          "(GUI?, EVENTS?, (PERMISSIONS | POLICIES)?)");
    REQUIRE(g.find("control") != nullptr);
    CHECK(declaration_source(*g.find("control")) == "(name, type, property, value)");
    REQUIRE(g.find("event") != nullptr);
    CHECK(declaration_source(*g.find("event")) == "((name | eventName), controlName, action)");
    REQUIRE(g.find("name") != nullptr);
    CHECK(declaration_source(*g.find("name")) == "(#PCDATA)");
    CHECK(g.find("nonsuch") == nullptr);
}

TEST_CASE("declaration_source round-trips through the parser") {
    for (const DtdGrammar* g :
         {&grammars::customization_grammar(), &grammars::manifest_grammar()}) {
        for (const std::string& name : g->declaration_order) {
            CAPTURE(name);
            std::string source =
                "<!ELEMENT " + name + " " + declaration_source(*g->find(name)) + ">";
            DtdGrammar reparsed = parse_dtd(source);
            REQUIRE(reparsed.find(name) != nullptr);
            CHECK(*reparsed.find(name) == *g->find(name));
        }
    }
}

TEST_CASE("dtd parser accepts the usual shapes") {
    DtdGrammar g = parse_dtd("<!-- notes -->\n"
                             "<!ELEMENT a (b+, c*, d?)>\n"
                             "<!ELEMENT b (#PCDATA)>\n"
                             "<!ELEMENT c (x | y)+>\n"
                             "<!ELEMENT d EMPTY>\n"
                             "<!ELEMENT m (#PCDATA | b | c)*>\n");
    CHECK(g.declaration_order ==
          std::vector<std::string>{"a", "b", "c", "d", "m"});
    CHECK(declaration_source(*g.find("a")) == "(b+, c*, d?)");
    CHECK(declaration_source(*g.find("c")) == "(x | y)+");
    CHECK(declaration_source(*g.find("d")) == "EMPTY");
    CHECK(g.find("m")->is_mixed());
    CHECK(declaration_source(*g.find("m")) == "(#PCDATA | b | c)*");
    // The trailing * of a mixed model is optional on input.
    DtdGrammar g2 = parse_dtd("<!ELEMENT m (#PCDATA | b | c)>");
    CHECK(*g2.find("m") == *g.find("m"));
}

TEST_CASE("duplicate declarations are deduped, conflicts rejected") {
    std::vector<std::string> warnings;
    DtdGrammar g = parse_dtd("<!ELEMENT a (b)>\n<!ELEMENT b (#PCDATA)>\n<!ELEMENT a (b)>",
                             &warnings);
    CHECK(g.declaration_order == std::vector<std::string>{"a", "b"});
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0] == "duplicate declaration of element 'a' ignored");

    CHECK(dtd_error("<!ELEMENT a (b)>\n<!ELEMENT a (c)>") ==
          "conflicting redeclaration of element 'a'");
}

TEST_CASE("dtd syntax errors") {
    CHECK(dtd_error("<!ELEMENT a ANY>") == "ANY content models are not supported");
    CHECK(dtd_error("<!ATTLIST a x CDATA #IMPLIED>") ==
          "ATTLIST declarations are not supported");
    CHECK(dtd_error("<!ENTITY x \"y\">") == "ENTITY declarations are not supported");
    CHECK(dtd_error("<!ELEMENT a (b, c | d)>") ==
          "cannot mix ',' and '|' separators in one group");
    CHECK(dtd_error("<!ELEMENT a ()>") == "empty content group");
    CHECK(dtd_error("<!ELEMENT a (b") == "unterminated content group");
    CHECK(dtd_error("<!ELEMENT a (b, #PCDATA)>") ==
          "'#PCDATA' must be the first item of a mixed group");
    CHECK(dtd_error("<!ELEMENT a (#PCDATA, b)>") == "mixed content uses '|' separators");
    CHECK(dtd_error("<!ELEMENT a (#PCDATA | b | b)>") == "duplicate name 'b' in mixed content");
    CHECK(dtd_error("<!ELEMENT a (#PCDATA | b)+>") == "mixed content takes only a '*' suffix");
    CHECK(dtd_error("<!ELEMENT a (#PCDATA+)>") ==
          "'#PCDATA' cannot carry a repetition suffix");
    CHECK(dtd_error("<!ELEMENT a ((b | #PCDATA))>") ==
          "'#PCDATA' must be the first item of a mixed group");
    CHECK(dtd_error("garbage") == "expected an element declaration");
    CHECK_THROWS_AS(parse_dtd("<!ELEMENT a>"), DtdSyntaxError);
}

TEST_CASE("matcher agrees with the brute-force oracle") {
    // Every model of both grammars, every sequence up to length 4 over the
    // model's own names plus one foreign symbol.
    for (const DtdGrammar* g :
         {&grammars::customization_grammar(), &grammars::manifest_grammar()}) {
        for (const std::string& name : g->declaration_order) {
            const ContentModel& model = *g->find(name);
            Matcher m = compile_content_model(model);
            std::vector<std::string> alphabet = model.mentioned_names();
            alphabet.push_back("zzz");
            std::size_t checked = 0;
            oracle::for_each_sequence(alphabet, 4, [&](const std::vector<std::string>& seq) {
                bool expected = oracle::content_model_accepts(model, seq);
                if (m.accepts(seq) != expected) {
                    CAPTURE(name);
                    CAPTURE(seq);
                    REQUIRE(m.accepts(seq) == expected);
                }
                ++checked;
            });
            CHECK(checked > 0);
        }
    }
}

TEST_CASE("matcher agrees with the oracle on nested repetition") {
    DtdGrammar g = parse_dtd("<!ELEMENT r ((a?, b)*, (c | d+)?)>");
    const ContentModel& model = *g.find("r");
    Matcher m = compile_content_model(model);
    oracle::for_each_sequence({"a", "b", "c", "d", "zzz"}, 5,
                              [&](const std::vector<std::string>& seq) {
                                  bool expected = oracle::content_model_accepts(model, seq);
                                  if (m.accepts(seq) != expected) {
                                      CAPTURE(seq);
                                      REQUIRE(m.accepts(seq) == expected);
                                  }
                              });
}

TEST_CASE("matcher failure diagnostics") {
    const ContentModel& control = *grammars::customization_grammar().find("control");
    Matcher m = compile_content_model(control);

    Matcher::Result r = m.match(std::vector<std::string>{"name", "type"});
    CHECK_FALSE(r.accepted);
    CHECK(r.failure_index == 2);
    CHECK(r.expected == std::vector<std::string>{"property"});
    CHECK_FALSE(r.end_allowed);

    r = m.match(std::vector<std::string>{"name", "type", "property", "value", "value"});
    CHECK_FALSE(r.accepted);
    CHECK(r.failure_index == 4);
    CHECK(r.expected.empty());
    CHECK(r.end_allowed);

    r = m.match(std::vector<std::string>{"type"});
    CHECK_FALSE(r.accepted);
    CHECK(r.failure_index == 0);
    CHECK(r.expected == std::vector<std::string>{"name"});

    r = m.match(std::vector<std::string>{"name", "type", "property", "value"});
    CHECK(r.accepted);
}

TEST_CASE("content kinds") {
    const DtdGrammar& g = grammars::customization_grammar();
    CHECK(compile_content_model(*g.find("customization")).content_kind() ==
          ContentKind::Element);
    CHECK(compile_content_model(*g.find("name")).content_kind() == ContentKind::Text);
    CHECK(compile_content_model(ContentModel::make_empty()).content_kind() ==
          ContentKind::Empty);
    DtdGrammar mixed = parse_dtd("<!ELEMENT m (#PCDATA | b)*>");
    Matcher m = compile_content_model(*mixed.find("m"));
    CHECK(m.content_kind() == ContentKind::Mixed);
    CHECK(m.allows_text());
    CHECK(m.mixed_names() == std::vector<std::string>{"b"});
    CHECK(m.accepts(std::vector<std::string>{"b", "b", "b"}));
    CHECK_FALSE(m.accepts(std::vector<std::string>{"c"}));
}

TEST_CASE("document validation accepts the shipped fixtures") {
    for (const char* name : {"user.xml", "user_raw.xml", "admin.xml", "empty.xml"}) {
        CAPTURE(name);
        ValidationReport report =
            validate_document(testsupport::load_fixture_doc(name),
                              grammars::customization_grammar(), grammars::kCustomizationRoot);
        CHECK(report.valid);
        CHECK(report.violations.empty());
    }
    ValidationReport report =
        validate_document(testsupport::load_fixture_doc("stock_manifest.xml"),
                          grammars::manifest_grammar(), grammars::kManifestRoot);
    CHECK(report.valid);
}

TEST_CASE("whitespace between element children is insignificant") {
    const DtdGrammar& g = grammars::customization_grammar();
    ValidationReport tight = check(
        "<customization><GUI><control><name>a</name><type>Button</type>"
        "<property>Visible</property><value>False</value></control></GUI></customization>",
        g, "customization");
    CHECK(tight.valid);
    ValidationReport spaced = check(
        "<customization>\n  <GUI>\n    <control>\n      <name>a</name>\n      "
        "<type>Button</type>\n      <property>Visible</property>\n      "
        "<value>False</value>\n    </control>\n  </GUI>\n</customization>",
        g, "customization");
    CHECK(spaced.valid);
}

TEST_CASE("structure violations are reported with paths") {
    const DtdGrammar& g = grammars::customization_grammar();

    SUBCASE("missing required child") {
        ValidationReport r = check(
            "<customization><GUI><control><name>a</name><type>Button</type>"
            "<value>False</value></control></GUI></customization>",
            g, "customization");
        REQUIRE_FALSE(r.valid);
        REQUIRE(r.violations.size() == 1);
        CHECK(r.violations[0].path == "/customization/GUI/control");
        CHECK(r.violations[0].expected == "(name, type, property, value)");
        CHECK(r.violations[0].found == "name, type, value");
    }

    SUBCASE("reordered children") {
        ValidationReport r = check(
            "<customization><GUI><control><type>Button</type><name>a</name>"
            "<property>Visible</property><value>False</value></control></GUI></customization>",
            g, "customization");
        REQUIRE_FALSE(r.valid);
        CHECK(r.violations[0].found == "type, name, property, value");
    }

    SUBCASE("wrong root element") {
        ValidationReport r = check("<config></config>", g, "customization");
        REQUIRE_FALSE(r.valid);
        CHECK(r.violations[0].path == "/config");
        CHECK(r.violations[0].expected == "document root element 'customization'");
    }

    SUBCASE("undeclared element") {
        ValidationReport r =
            check("<customization><EXTRAS></EXTRAS></customization>", g, "customization");
        REQUIRE_FALSE(r.valid);
        // Both the parent mismatch and the undeclared child are reported.
        CHECK(r.violations.size() == 2);
        CHECK(r.violations[1].path == "/customization/EXTRAS");
        CHECK(r.violations[1].found == "undeclared element 'EXTRAS'");
    }

    SUBCASE("character data where elements are required") {
        ValidationReport r = check("<customization>stray</customization>", g, "customization");
        REQUIRE_FALSE(r.valid);
        CHECK(r.violations[0].found == "character data");
    }

    SUBCASE("element children inside a text-only element") {
        ValidationReport r = check(
            "<customization><GUI><control><name><b></b></name><type>Button</type>"
            "<property>Visible</property><value>False</value></control></GUI></customization>",
            g, "customization");
        REQUIRE_FALSE(r.valid);
        bool found = false;
        for (const Violation& v : r.violations) {
            if (v.path == "/customization/GUI/control/name") {
                CHECK(v.expected == "(#PCDATA)");
                CHECK(v.found == "b");
                found = true;
            }
        }
        CHECK(found);
    }

    SUBCASE("content in an EMPTY element") {
        DtdGrammar empty_g = parse_dtd("<!ELEMENT a EMPTY>");
        ValidationReport r = check("<a>x</a>", empty_g, "a");
        REQUIRE_FALSE(r.valid);
        CHECK(r.violations[0].expected == "EMPTY");
        CHECK(r.violations[0].found == "character data");
    }

    SUBCASE("empty sections are fine") {
        ValidationReport r = check("<customization><GUI></GUI><EVENTS></EVENTS></customization>",
                                   g, "customization");
        CHECK(r.valid);
    }
}

TEST_CASE("every single-tag deletion from a valid fixture is caught or survives") {
    // Deleting one complete element from user.xml must either still validate
    // (for optional content) or produce a violation; it must never be
    // silently misparsed.
    std::string source = testsupport::read_fixture("user.xml");
    const DtdGrammar& g = grammars::customization_grammar();
    int violations_seen = 0;
    for (std::size_t open = source.find('<'); open != std::string::npos;
         open = source.find('<', open + 1)) {
        if (source[open + 1] == '/' || source[open + 1] == '!') continue;
        std::size_t name_end = source.find_first_of(" >", open);
        std::string name = source.substr(open + 1, name_end - open - 1);
        std::size_t close = source.find("</" + name + ">", open);
        if (close == std::string::npos) continue;
        std::string mutated = source.substr(0, open) +
                              source.substr(close + name.size() + 3);
        xml::Document doc;
        try {
            doc = xml::parse_document(mutated);
        } catch (const xml::WellFormednessError&) {
            continue;  // deleted the root
        }
        ValidationReport r = validate_document(doc, g, "customization");
        if (!r.valid) ++violations_seen;
        for (const Violation& v : r.violations) {
            CHECK_FALSE(v.path.empty());
            CHECK_FALSE(v.expected.empty());
        }
    }
    // Required leaves (name, type, ...) dominate, so most deletions violate.
    CHECK(violations_seen >= 10);
}
