#include "autoconf/xml.hpp"

#include <cstdint>
#include <sstream>
#include <utility>

namespace autoconf::xml {

namespace {

constexpr int kMaxDepth = 500;

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool is_name_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_name_char(char c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '.' || c == '-';
}

bool ws_only(std::string_view s) {
    for (char c : s) {
        if (!is_ws(c)) return false;
    }
    return true;
}

std::string format_message(const std::string& message, SourceLocation where) {
    std::ostringstream os;
    os << message << " (line " << where.line << ", column " << where.column << ")";
    return os.str();
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Document parse();

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    // Location of the most recently consumed character; errors detected at
    // end of input point here so they stay inside the input's bounds.
    SourceLocation last_char_{1, 1};
    int depth_ = 0;

    bool eof() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

    void advance() {
        last_char_ = {line_, col_};
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++col_;  // UTF-8 continuation bytes share their code point's column
        }
    }
    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) advance();
    }

    SourceLocation here() const {
        return eof() ? last_char_ : SourceLocation{line_, col_};
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw WellFormednessError(message, here());
    }
    [[noreturn]] void fail_at(const std::string& message, SourceLocation where) const {
        throw WellFormednessError(message, where);
    }

    void skip_ws() {
        while (!eof() && is_ws(peek())) advance();
    }

    void expect(char c, const std::string& what) {
        if (eof() || peek() != c) fail(what);
        advance();
    }

    std::string parse_name();
    void append_text(Element& parent, std::string&& text);
    std::string parse_reference();
    void parse_comment();
    bool try_parse_xml_declaration();
    void parse_prolog(Document& doc);
    void parse_epilog();
    Element parse_element();
    void parse_content(Element& elem);
    Attribute parse_attribute();
    std::string parse_attribute_value();
};

std::string Parser::parse_name() {
    if (eof() || !is_name_start(peek())) fail("expected a name");
    std::string name;
    while (!eof() && is_name_char(peek())) {
        name.push_back(peek());
        advance();
    }
    if (!eof() && peek() == ':') {
        fail("namespaced name '" + name + ":...' — namespaces are not supported");
    }
    return name;
}

void Parser::append_text(Element& parent, std::string&& text) {
    if (text.empty()) return;
    if (!parent.children.empty() && parent.children.back().is_text()) {
        std::get<TextNode>(parent.children.back().value).text += text;
        return;
    }
    parent.children.push_back(Node{TextNode{std::move(text)}});
}

// At '&'. Returns the replacement text.
std::string Parser::parse_reference() {
    SourceLocation start = here();
    advance();  // '&'
    if (peek() == '#') {
        advance();
        bool hex = peek() == 'x';
        if (hex) advance();
        std::uint32_t cp = 0;
        bool any = false;
        while (!eof() && peek() != ';') {
            char c = peek();
            int digit;
            if (c >= '0' && c <= '9') digit = c - '0';
            else if (hex && c >= 'a' && c <= 'f') digit = c - 'a' + 10;
            else if (hex && c >= 'A' && c <= 'F') digit = c - 'A' + 10;
            else fail_at("illegal character reference", start);
            cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(digit);
            if (cp > 0x10FFFF) fail_at("illegal character reference: code point out of range", start);
            any = true;
            advance();
        }
        if (!any || eof()) fail_at("illegal character reference", start);
        advance();  // ';'
        if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) {
            fail_at("illegal character reference: code point out of range", start);
        }
        std::string out;
        append_utf8(out, cp);
        return out;
    }
    std::string name;
    while (!eof() && peek() != ';' && name.size() <= 32) {
        if (!is_name_char(peek())) break;
        name.push_back(peek());
        advance();
    }
    if (eof() || peek() != ';') fail_at("unterminated entity reference '&" + name + "'", start);
    advance();  // ';'
    if (name == "lt") return "<";
    if (name == "gt") return ">";
    if (name == "amp") return "&";
    if (name == "apos") return "'";
    if (name == "quot") return "\"";
    fail_at("unknown entity reference '&" + name + ";'", start);
}

// At "<!--".
void Parser::parse_comment() {
    SourceLocation start = here();
    advance(4);
    while (!eof()) {
        if (starts_with("--")) {
            if (peek(2) == '>') {
                advance(3);
                return;
            }
            fail("'--' is not allowed inside a comment");
        }
        advance();
    }
    fail_at("unterminated comment", start);
}

bool Parser::try_parse_xml_declaration() {
    if (!starts_with("<?xml")) return false;
    char after = peek(5);
    if (after != '?' && !is_ws(after)) return false;  // a PI like <?xmlfoo
    SourceLocation start = here();
    advance(5);
    while (!eof() && !starts_with("?>")) advance();
    if (eof()) fail_at("unterminated XML declaration", start);
    advance(2);
    return true;
}

void Parser::parse_prolog(Document& doc) {
    if (starts_with("\xEF\xBB\xBF")) advance(3);
    doc.had_prolog = try_parse_xml_declaration();
    while (true) {
        skip_ws();
        if (eof()) fail("document has no root element");
        if (starts_with("<!--")) {
            parse_comment();
            continue;
        }
        if (starts_with("<!DOCTYPE")) fail("inline DOCTYPE declarations are not supported");
        if (starts_with("<![CDATA[")) fail("CDATA sections are not supported");
        if (starts_with("<!")) fail("markup declarations are not supported");
        if (starts_with("<?")) fail("processing instructions are not supported");
        if (peek() == '<') {
            if (peek(1) == '/') fail("closing tag without a matching open tag");
            return;  // the root element starts here
        }
        fail("text outside the root element");
    }
}

void Parser::parse_epilog() {
    while (true) {
        skip_ws();
        if (eof()) return;
        if (starts_with("<!--")) {
            parse_comment();
            continue;
        }
        if (starts_with("<?")) fail("processing instructions are not supported");
        if (peek() == '<') {
            if (peek(1) == '/') fail("closing tag without a matching open tag");
            fail("multiple root elements");
        }
        fail("text outside the root element");
    }
}

Attribute Parser::parse_attribute() {
    Attribute attr;
    attr.name = parse_name();
    skip_ws();
    expect('=', "expected '=' after attribute name");
    skip_ws();
    attr.value = parse_attribute_value();
    return attr;
}

std::string Parser::parse_attribute_value() {
    if (eof() || (peek() != '"' && peek() != '\'')) fail("attribute value must be quoted");
    char quote = peek();
    SourceLocation start = here();
    advance();
    std::string value;
    while (true) {
        if (eof()) fail_at("unterminated attribute value", start);
        char c = peek();
        if (c == quote) {
            advance();
            return value;
        }
        if (c == '<') fail("'<' is not allowed in an attribute value");
        if (c == '&') {
            value += parse_reference();
            continue;
        }
        value.push_back(c);
        advance();
    }
}

Element Parser::parse_element() {
    if (++depth_ > kMaxDepth) fail("element nesting too deep");
    Element elem;
    elem.location = here();
    advance();  // '<'
    elem.name = parse_name();
    while (true) {
        bool had_ws = false;
        while (!eof() && is_ws(peek())) {
            had_ws = true;
            advance();
        }
        if (eof()) fail_at("unclosed element '" + elem.name + "'", here());
        if (peek() == '>') {
            advance();
            parse_content(elem);
            --depth_;
            return elem;
        }
        if (peek() == '/' && peek(1) == '>') {
            advance(2);
            --depth_;
            return elem;
        }
        if (!had_ws) fail("expected whitespace before attribute");
        SourceLocation attr_loc = here();
        Attribute attr = parse_attribute();
        for (const Attribute& existing : elem.attributes) {
            if (existing.name == attr.name) {
                fail_at("duplicate attribute '" + attr.name + "'", attr_loc);
            }
        }
        elem.attributes.push_back(std::move(attr));
    }
}

void Parser::parse_content(Element& elem) {
    std::string text;
    auto flush = [&] {
        append_text(elem, std::move(text));
        text.clear();
    };
    while (true) {
        if (eof()) fail_at("unclosed element '" + elem.name + "'", here());
        char c = peek();
        if (c == '<') {
            if (peek(1) == '/') {
                flush();
                SourceLocation close_loc = here();
                advance(2);
                std::string close_name = parse_name();
                skip_ws();
                expect('>', "expected '>' to close the tag");
                if (close_name != elem.name) {
                    fail_at("mismatched closing tag '</" + close_name + ">'; expected '</" +
                                elem.name + ">'",
                            close_loc);
                }
                return;
            }
            if (starts_with("<!--")) {
                parse_comment();  // comments do not interrupt a text run
                continue;
            }
            if (starts_with("<![CDATA[")) fail("CDATA sections are not supported");
            if (starts_with("<!")) fail("markup declarations are not supported");
            if (starts_with("<?")) fail("processing instructions are not supported");
            flush();
            elem.children.push_back(Node{parse_element()});
            continue;
        }
        if (c == '&') {
            text += parse_reference();
            continue;
        }
        text.push_back(c);
        advance();
    }
}

Document Parser::parse() {
    Document doc;
    parse_prolog(doc);
    doc.root = parse_element();
    parse_epilog();
    return doc;
}

// ---------------------------------------------------------------------------
// Serialization

void escape_text(std::string& out, std::string_view s) {
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
}

void escape_attr(std::string& out, std::string_view s) {
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
}

bool has_significant_text(const Element& e) {
    for (const Node& child : e.children) {
        if (child.is_text() && !ws_only(child.text().text)) return true;
    }
    return false;
}

void emit_open_tag(std::string& out, const Element& e) {
    out.push_back('<');
    out += e.name;
    for (const Attribute& attr : e.attributes) {
        out.push_back(' ');
        out += attr.name;
        out += "=\"";
        escape_attr(out, attr.value);
        out.push_back('"');
    }
    out.push_back('>');
}

void emit_inline(std::string& out, const Element& e) {
    emit_open_tag(out, e);
    for (const Node& child : e.children) {
        if (child.is_text()) {
            escape_text(out, child.text().text);
        } else {
            emit_inline(out, child.element());
        }
    }
    out += "</";
    out += e.name;
    out.push_back('>');
}

void emit(std::string& out, const Element& e, int depth) {
    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    out += indent;
    if (e.has_element_child() && !has_significant_text(e)) {
        emit_open_tag(out, e);
        out.push_back('\n');
        for (const Node& child : e.children) {
            if (child.is_element()) emit(out, child.element(), depth + 1);
        }
        out += indent;
        out += "</";
        out += e.name;
        out += ">\n";
        return;
    }
    emit_inline(out, e);
    out.push_back('\n');
}

std::vector<const Node*> normalized_children(const Element& e) {
    bool drop_ws = e.has_element_child();
    std::vector<const Node*> out;
    for (const Node& child : e.children) {
        if (drop_ws && child.is_text() && ws_only(child.text().text)) continue;
        out.push_back(&child);
    }
    return out;
}

}  // namespace

WellFormednessError::WellFormednessError(std::string message, SourceLocation where)
    : std::runtime_error(format_message(message, where)),
      message_(std::move(message)),
      where_(where) {}

const Element* Element::child(std::string_view child_name) const {
    for (const Node& node : children) {
        if (node.is_element() && node.element().name == child_name) return &node.element();
    }
    return nullptr;
}

std::vector<const Element*> Element::element_children() const {
    std::vector<const Element*> out;
    for (const Node& node : children) {
        if (node.is_element()) out.push_back(&node.element());
    }
    return out;
}

std::vector<const Element*> Element::children_named(std::string_view child_name) const {
    std::vector<const Element*> out;
    for (const Node& node : children) {
        if (node.is_element() && node.element().name == child_name) out.push_back(&node.element());
    }
    return out;
}

std::vector<std::string> Element::child_element_names() const {
    std::vector<std::string> out;
    for (const Node& node : children) {
        if (node.is_element()) out.push_back(node.element().name);
    }
    return out;
}

bool Element::has_element_child() const {
    for (const Node& node : children) {
        if (node.is_element()) return true;
    }
    return false;
}

bool operator==(const Element& a, const Element& b) {
    return a.name == b.name && a.attributes == b.attributes && a.children == b.children;
}

bool operator==(const Node& a, const Node& b) {
    if (a.value.index() != b.value.index()) return false;
    if (a.is_text()) return a.text() == b.text();
    return a.element() == b.element();
}

bool operator==(const Document& a, const Document& b) {
    return a.had_prolog == b.had_prolog && a.root == b.root;
}

Document parse_document(std::string_view text) { return Parser(text).parse(); }

std::string serialize_document(const Document& doc) {
    std::string out;
    if (doc.had_prolog) out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    emit(out, doc.root, 0);
    return out;
}

std::string canonical_text(const Element& elem) {
    std::string out;
    for (const Node& child : elem.children) {
        if (child.is_text()) {
            out += child.text().text;
        } else {
            // Descend into nested elements; their text counts too.
            std::string nested = canonical_text(child.element());
            out += nested;
        }
    }
    std::string_view trimmed = out;
    while (!trimmed.empty() && is_ws(trimmed.front())) trimmed.remove_prefix(1);
    while (!trimmed.empty() && is_ws(trimmed.back())) trimmed.remove_suffix(1);
    return std::string(trimmed);
}

bool structurally_equal(const Element& a, const Element& b) {
    if (a.name != b.name || a.attributes != b.attributes) return false;
    std::vector<const Node*> ca = normalized_children(a);
    std::vector<const Node*> cb = normalized_children(b);
    if (ca.size() != cb.size()) return false;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        const Node& na = *ca[i];
        const Node& nb = *cb[i];
        if (na.value.index() != nb.value.index()) return false;
        if (na.is_text()) {
            if (na.text().text != nb.text().text) return false;
        } else if (!structurally_equal(na.element(), nb.element())) {
            return false;
        }
    }
    return true;
}

bool structurally_equal(const Document& a, const Document& b) {
    return structurally_equal(a.root, b.root);
}

}  // namespace autoconf::xml
