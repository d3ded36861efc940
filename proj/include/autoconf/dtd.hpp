#pragma once

#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "autoconf/xml.hpp"

namespace autoconf::dtd {

class DtdSyntaxError : public std::runtime_error {
public:
    DtdSyntaxError(std::string message, xml::SourceLocation where);

    const std::string& message() const noexcept { return message_; }
    xml::SourceLocation where() const noexcept { return where_; }

private:
    std::string message_;
    xml::SourceLocation where_;
};

enum class RepeatKind { ZeroOrOne, ZeroOrMore, OneOrMore };

char repeat_suffix(RepeatKind kind);

/// Content model expression tree. Mixed content is stored as a Choice whose
/// first child is PCData; the implied repetition of mixed content is part of
/// its meaning, not spelled in the tree.
struct ContentModel {
    enum class Kind { Name, Sequence, Choice, Repeat, PCData, Empty };

    Kind kind = Kind::Empty;
    std::string name;                     // Kind::Name only
    std::vector<ContentModel> children;   // Sequence/Choice; Repeat has one child
    RepeatKind repeat = RepeatKind::ZeroOrOne;  // Kind::Repeat only

    static ContentModel make_name(std::string n);
    static ContentModel make_sequence(std::vector<ContentModel> items);
    static ContentModel make_choice(std::vector<ContentModel> items);
    static ContentModel make_repeat(ContentModel item, RepeatKind kind);
    static ContentModel make_pcdata();
    static ContentModel make_empty();

    bool is_mixed() const;
    /// Element names the model mentions, in first-appearance order.
    std::vector<std::string> mentioned_names() const;

    bool operator==(const ContentModel&) const = default;
};

/// Render the expression as it appears inside a declaration, e.g.
/// "(name, type, property, value)" or "EMPTY".
std::string declaration_source(const ContentModel& model);

struct DtdGrammar {
    std::map<std::string, ContentModel, std::less<>> declarations;
    std::vector<std::string> declaration_order;

    const ContentModel* find(std::string_view element_name) const;
};

/// Parse element declarations (plus whitespace and comments). Identical
/// duplicate declarations are dropped with a warning; conflicting ones are
/// an error, as are ATTLIST/ENTITY/NOTATION declarations and ANY models.
DtdGrammar parse_dtd(std::string_view text, std::vector<std::string>* warnings = nullptr);

enum class ContentKind { Element, Text, Mixed, Empty };

/// Deterministic acceptor for the child-name sequences of one content
/// model. Immutable and cheap to copy; safe to share across threads.
class Matcher {
public:
    struct Result {
        bool accepted = false;
        // Index of the offending child, or the sequence length when the
        // children ended too early.
        std::size_t failure_index = 0;
        // Element names that would have been accepted at the failure point.
        std::vector<std::string> expected;
        bool end_allowed = false;
    };

    Result match(std::span<const std::string> child_names) const;
    bool accepts(std::span<const std::string> child_names) const;

    ContentKind content_kind() const;
    bool allows_text() const;
    /// Names admitted by a mixed model.
    const std::vector<std::string>& mixed_names() const;

private:
    friend Matcher compile_content_model(const ContentModel& model);
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

Matcher compile_content_model(const ContentModel& model);

struct Violation {
    std::string path;      // slash-joined element path, e.g. /customization/GUI/control
    std::string expected;  // content-model description
    std::string found;     // child-name sequence or text summary

    bool operator==(const Violation&) const = default;
};

struct ValidationReport {
    bool valid = true;
    std::vector<Violation> violations;
};

/// Structure check of a whole document: root name, one content-model check
/// per element, character data rules, and undeclared elements. Whitespace
/// between children of element-content models is ignored. Failures are
/// data, not exceptions.
ValidationReport validate_document(const xml::Document& doc, const DtdGrammar& grammar,
                                   std::string_view root_name);

}  // namespace autoconf::dtd
