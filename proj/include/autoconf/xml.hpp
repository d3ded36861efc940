#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace autoconf::xml {

struct SourceLocation {
    int line = 0;
    int column = 0;

    bool operator==(const SourceLocation&) const = default;
};

/// Raised when the input is not a well-formed document in the supported
/// subset. Always carries a position inside the input.
class WellFormednessError : public std::runtime_error {
public:
    WellFormednessError(std::string message, SourceLocation where);

    const std::string& message() const noexcept { return message_; }
    SourceLocation where() const noexcept { return where_; }

private:
    std::string message_;
    SourceLocation where_;
};

struct Attribute {
    std::string name;
    std::string value;

    bool operator==(const Attribute&) const = default;
};

struct TextNode {
    std::string text;

    bool operator==(const TextNode&) const = default;
};

struct Element;
struct Node;

/// One element of the tree. Children keep document order; consecutive
/// character data is always merged into a single text node.
struct Element {
    std::string name;
    std::vector<Attribute> attributes;
    std::vector<Node> children;
    SourceLocation location;

    /// First child element with the given name, or nullptr.
    const Element* child(std::string_view child_name) const;
    /// All child elements, document order.
    std::vector<const Element*> element_children() const;
    /// Child elements with the given name, document order.
    std::vector<const Element*> children_named(std::string_view child_name) const;
    /// Names of all child elements, document order.
    std::vector<std::string> child_element_names() const;
    bool has_element_child() const;
};

struct Node {
    std::variant<Element, TextNode> value;

    bool is_element() const { return std::holds_alternative<Element>(value); }
    bool is_text() const { return std::holds_alternative<TextNode>(value); }
    const Element& element() const { return std::get<Element>(value); }
    const TextNode& text() const { return std::get<TextNode>(value); }
};

// Equality ignores source locations.
bool operator==(const Element& a, const Element& b);
inline bool operator!=(const Element& a, const Element& b) { return !(a == b); }
bool operator==(const Node& a, const Node& b);
inline bool operator!=(const Node& a, const Node& b) { return !(a == b); }

struct Document {
    Element root;
    bool had_prolog = false;
};

bool operator==(const Document& a, const Document& b);
inline bool operator!=(const Document& a, const Document& b) { return !(a == b); }

/// Parse a UTF-8 document in the supported subset: elements, attributes,
/// character data, comments, an optional XML declaration, the five
/// predefined entity references and numeric character references.
/// CDATA sections, processing instructions, DOCTYPE declarations, and
/// namespaced names are rejected. Throws WellFormednessError.
Document parse_document(std::string_view text);

/// Deterministic serialization: 2-space indentation, one element per line
/// for element-only content, inline text for text and mixed content,
/// attributes in stored order. Never emits self-closing tags.
std::string serialize_document(const Document& doc);

/// Concatenated descendant character data with surrounding whitespace
/// trimmed.
std::string canonical_text(const Element& elem);

/// Equality up to insignificant whitespace: whitespace-only text nodes are
/// ignored in elements that have element children.
bool structurally_equal(const Element& a, const Element& b);
bool structurally_equal(const Document& a, const Document& b);

}  // namespace autoconf::xml
