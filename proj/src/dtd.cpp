#include "autoconf/dtd.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

namespace autoconf::dtd {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool is_name_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_name_char(char c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '.' || c == '-';
}

std::string format_message(const std::string& message, xml::SourceLocation where) {
    std::ostringstream os;
    os << message << " (line " << where.line << ", column " << where.column << ")";
    return os.str();
}

void collect_names(const ContentModel& m, std::vector<std::string>& out) {
    if (m.kind == ContentModel::Kind::Name) {
        if (std::find(out.begin(), out.end(), m.name) == out.end()) out.push_back(m.name);
        return;
    }
    for (const ContentModel& child : m.children) collect_names(child, out);
}

std::string render(const ContentModel& m) {
    switch (m.kind) {
        case ContentModel::Kind::Name:
            return m.name;
        case ContentModel::Kind::PCData:
            return "#PCDATA";
        case ContentModel::Kind::Empty:
            return "EMPTY";
        case ContentModel::Kind::Repeat: {
            const ContentModel& child = m.children.front();
            std::string body = render(child);
            bool grouped = child.kind == ContentModel::Kind::Sequence ||
                           child.kind == ContentModel::Kind::Choice;
            if (!grouped && child.kind != ContentModel::Kind::Name) {
                body = "(" + body + ")";
            }
            return body + repeat_suffix(m.repeat);
        }
        case ContentModel::Kind::Sequence:
        case ContentModel::Kind::Choice: {
            const char* sep = m.kind == ContentModel::Kind::Sequence ? ", " : " | ";
            std::string out = "(";
            for (std::size_t i = 0; i < m.children.size(); ++i) {
                if (i) out += sep;
                out += render(m.children[i]);
            }
            out += ")";
            if (m.is_mixed() && m.children.size() > 1) out += "*";
            return out;
        }
    }
    return {};
}

class DtdParser {
public:
    DtdParser(std::string_view text, std::vector<std::string>* warnings)
        : text_(text), warnings_(warnings) {}

    DtdGrammar parse();

private:
    std::string_view text_;
    std::vector<std::string>* warnings_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    xml::SourceLocation last_char_{1, 1};

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
        } else {
            ++col_;
        }
    }
    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) advance();
    }

    xml::SourceLocation here() const {
        return eof() ? last_char_ : xml::SourceLocation{line_, col_};
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw DtdSyntaxError(message, here());
    }
    [[noreturn]] void fail_at(const std::string& message, xml::SourceLocation where) const {
        throw DtdSyntaxError(message, where);
    }

    void skip_ws() {
        while (!eof() && is_ws(peek())) advance();
    }
    void require_ws(const std::string& context) {
        if (eof() || !is_ws(peek())) fail("expected whitespace " + context);
        skip_ws();
    }

    void parse_comment();
    std::string parse_name();
    void parse_element_decl(DtdGrammar& grammar);
    ContentModel parse_contentspec();
    ContentModel parse_group();
    ContentModel parse_item(bool first_item);
    bool try_read_suffix(RepeatKind& out);
};

void DtdParser::parse_comment() {
    xml::SourceLocation start = here();
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

std::string DtdParser::parse_name() {
    if (eof() || !is_name_start(peek())) fail("expected an element name");
    std::string name;
    while (!eof() && is_name_char(peek())) {
        name.push_back(peek());
        advance();
    }
    return name;
}

bool DtdParser::try_read_suffix(RepeatKind& out) {
    switch (peek()) {
        case '?': out = RepeatKind::ZeroOrOne; break;
        case '*': out = RepeatKind::ZeroOrMore; break;
        case '+': out = RepeatKind::OneOrMore; break;
        default: return false;
    }
    advance();
    return true;
}

ContentModel DtdParser::parse_item(bool first_item) {
    if (peek() == '(') return parse_group();
    if (peek() == '#') {
        if (!starts_with("#PCDATA")) fail("unknown keyword; only '#PCDATA' may follow '#'");
        if (!first_item) fail("'#PCDATA' must be the first item of a mixed group");
        advance(7);
        RepeatKind rk;
        if (try_read_suffix(rk)) fail("'#PCDATA' cannot carry a repetition suffix");
        return ContentModel::make_pcdata();
    }
    std::string name = parse_name();
    RepeatKind rk;
    if (try_read_suffix(rk)) return ContentModel::make_repeat(ContentModel::make_name(name), rk);
    return ContentModel::make_name(name);
}

ContentModel DtdParser::parse_group() {
    xml::SourceLocation start = here();
    advance();  // '('
    skip_ws();
    if (peek() == ')') fail("empty content group");
    std::vector<ContentModel> items;
    items.push_back(parse_item(true));
    bool mixed = items.front().kind == ContentModel::Kind::PCData;
    char sep = 0;
    while (true) {
        skip_ws();
        if (eof()) fail_at("unterminated content group", start);
        char c = peek();
        if (c == ')') {
            advance();
            break;
        }
        if (c != ',' && c != '|') fail("expected ',', '|', or ')' in a content group");
        if (sep == 0) {
            sep = c;
            if (mixed && sep != '|') fail("mixed content uses '|' separators");
        } else if (sep != c) {
            fail("cannot mix ',' and '|' separators in one group");
        }
        advance();
        skip_ws();
        items.push_back(parse_item(false));
    }
    RepeatKind rk = RepeatKind::ZeroOrOne;
    bool has_suffix = try_read_suffix(rk);
    if (mixed) {
        std::vector<std::string> seen;
        for (std::size_t i = 1; i < items.size(); ++i) {
            if (items[i].kind != ContentModel::Kind::Name) {
                fail_at("mixed content may list only element names", start);
            }
            if (std::find(seen.begin(), seen.end(), items[i].name) != seen.end()) {
                fail_at("duplicate name '" + items[i].name + "' in mixed content", start);
            }
            seen.push_back(items[i].name);
        }
        if (has_suffix && rk != RepeatKind::ZeroOrMore) {
            fail_at("mixed content takes only a '*' suffix", start);
        }
        if (items.size() == 1) return ContentModel::make_pcdata();
        return ContentModel::make_choice(std::move(items));
    }
    ContentModel model;
    if (items.size() == 1) {
        model = std::move(items.front());
    } else if (sep == ',') {
        model = ContentModel::make_sequence(std::move(items));
    } else {
        model = ContentModel::make_choice(std::move(items));
    }
    if (has_suffix) model = ContentModel::make_repeat(std::move(model), rk);
    return model;
}

ContentModel DtdParser::parse_contentspec() {
    if (peek() == '(') return parse_group();
    if (starts_with("EMPTY")) {
        advance(5);
        return ContentModel::make_empty();
    }
    if (starts_with("ANY")) fail("ANY content models are not supported");
    fail("expected 'EMPTY' or '(' to start a content model");
}

void DtdParser::parse_element_decl(DtdGrammar& grammar) {
    xml::SourceLocation start = here();
    advance(9);  // "<!ELEMENT"
    require_ws("after '<!ELEMENT'");
    std::string name = parse_name();
    require_ws("after the element name");
    ContentModel model = parse_contentspec();
    skip_ws();
    if (eof() || peek() != '>') fail("expected '>' to close the declaration");
    advance();
    auto it = grammar.declarations.find(name);
    if (it != grammar.declarations.end()) {
        if (it->second == model) {
            if (warnings_) {
                warnings_->push_back("duplicate declaration of element '" + name + "' ignored");
            }
            return;
        }
        fail_at("conflicting redeclaration of element '" + name + "'", start);
    }
    grammar.declarations.emplace(name, std::move(model));
    grammar.declaration_order.push_back(name);
}

DtdGrammar DtdParser::parse() {
    DtdGrammar grammar;
    if (starts_with("\xEF\xBB\xBF")) advance(3);
    while (true) {
        skip_ws();
        if (eof()) break;
        if (starts_with("<!--")) {
            parse_comment();
            continue;
        }
        if (starts_with("<!ELEMENT")) {
            parse_element_decl(grammar);
            continue;
        }
        if (starts_with("<!ATTLIST")) fail("ATTLIST declarations are not supported");
        if (starts_with("<!ENTITY")) fail("ENTITY declarations are not supported");
        if (starts_with("<!NOTATION")) fail("NOTATION declarations are not supported");
        fail("expected an element declaration");
    }
    return grammar;
}

// ---------------------------------------------------------------------------
// Glushkov construction over the positions of a content model.

struct NodeSets {
    bool nullable = false;
    std::vector<int> first;
    std::vector<int> last;
};

void merge(std::vector<int>& into, const std::vector<int>& from) {
    into.insert(into.end(), from.begin(), from.end());
    std::sort(into.begin(), into.end());
    into.erase(std::unique(into.begin(), into.end()), into.end());
}

struct Automaton {
    bool nullable = false;
    std::vector<std::string> symbols;  // one per position
    std::vector<int> first;
    std::vector<char> last;
    std::vector<std::vector<int>> follow;

    NodeSets build(const ContentModel& m) {
        switch (m.kind) {
            case ContentModel::Kind::Name: {
                int p = static_cast<int>(symbols.size());
                symbols.push_back(m.name);
                follow.emplace_back();
                return {false, {p}, {p}};
            }
            case ContentModel::Kind::Sequence: {
                NodeSets acc = build(m.children.front());
                for (std::size_t i = 1; i < m.children.size(); ++i) {
                    NodeSets next = build(m.children[i]);
                    for (int p : acc.last) merge(follow[static_cast<std::size_t>(p)], next.first);
                    if (acc.nullable) merge(acc.first, next.first);
                    if (next.nullable) {
                        merge(acc.last, next.last);
                    } else {
                        acc.last = next.last;
                    }
                    acc.nullable = acc.nullable && next.nullable;
                }
                return acc;
            }
            case ContentModel::Kind::Choice: {
                NodeSets acc;
                for (const ContentModel& child : m.children) {
                    NodeSets next = build(child);
                    acc.nullable = acc.nullable || next.nullable;
                    merge(acc.first, next.first);
                    merge(acc.last, next.last);
                }
                return acc;
            }
            case ContentModel::Kind::Repeat: {
                NodeSets inner = build(m.children.front());
                if (m.repeat != RepeatKind::ZeroOrOne) {
                    for (int p : inner.last) merge(follow[static_cast<std::size_t>(p)], inner.first);
                }
                if (m.repeat != RepeatKind::OneOrMore) inner.nullable = true;
                return inner;
            }
            case ContentModel::Kind::PCData:
            case ContentModel::Kind::Empty:
                return {true, {}, {}};
        }
        return {};
    }
};

}  // namespace

DtdSyntaxError::DtdSyntaxError(std::string message, xml::SourceLocation where)
    : std::runtime_error(format_message(message, where)),
      message_(std::move(message)),
      where_(where) {}

char repeat_suffix(RepeatKind kind) {
    switch (kind) {
        case RepeatKind::ZeroOrOne: return '?';
        case RepeatKind::ZeroOrMore: return '*';
        case RepeatKind::OneOrMore: return '+';
    }
    return '?';
}

ContentModel ContentModel::make_name(std::string n) {
    ContentModel m;
    m.kind = Kind::Name;
    m.name = std::move(n);
    return m;
}

ContentModel ContentModel::make_sequence(std::vector<ContentModel> items) {
    ContentModel m;
    m.kind = Kind::Sequence;
    m.children = std::move(items);
    return m;
}

ContentModel ContentModel::make_choice(std::vector<ContentModel> items) {
    ContentModel m;
    m.kind = Kind::Choice;
    m.children = std::move(items);
    return m;
}

ContentModel ContentModel::make_repeat(ContentModel item, RepeatKind kind) {
    ContentModel m;
    m.kind = Kind::Repeat;
    m.children.push_back(std::move(item));
    m.repeat = kind;
    return m;
}

ContentModel ContentModel::make_pcdata() {
    ContentModel m;
    m.kind = Kind::PCData;
    return m;
}

ContentModel ContentModel::make_empty() {
    ContentModel m;
    m.kind = Kind::Empty;
    return m;
}

bool ContentModel::is_mixed() const {
    return kind == Kind::Choice && !children.empty() &&
           children.front().kind == Kind::PCData;
}

std::vector<std::string> ContentModel::mentioned_names() const {
    std::vector<std::string> out;
    collect_names(*this, out);
    return out;
}

std::string declaration_source(const ContentModel& model) {
    switch (model.kind) {
        case ContentModel::Kind::Empty:
            return "EMPTY";
        case ContentModel::Kind::Name:
        case ContentModel::Kind::PCData:
            return "(" + render(model) + ")";
        case ContentModel::Kind::Repeat: {
            const ContentModel& child = model.children.front();
            bool grouped = child.kind == ContentModel::Kind::Sequence ||
                           child.kind == ContentModel::Kind::Choice;
            if (grouped) return render(model);
            return "(" + render(model) + ")";
        }
        default:
            return render(model);
    }
}

const ContentModel* DtdGrammar::find(std::string_view element_name) const {
    auto it = declarations.find(element_name);
    return it == declarations.end() ? nullptr : &it->second;
}

DtdGrammar parse_dtd(std::string_view text, std::vector<std::string>* warnings) {
    return DtdParser(text, warnings).parse();
}

struct Matcher::Impl {
    ContentKind kind = ContentKind::Empty;
    std::vector<std::string> mixed_names;
    Automaton automaton;
};

Matcher compile_content_model(const ContentModel& model) {
    auto impl = std::make_shared<Matcher::Impl>();
    if (model.kind == ContentModel::Kind::Empty) {
        impl->kind = ContentKind::Empty;
    } else if (model.kind == ContentModel::Kind::PCData) {
        impl->kind = ContentKind::Text;
    } else if (model.is_mixed()) {
        impl->kind = ContentKind::Mixed;
        for (std::size_t i = 1; i < model.children.size(); ++i) {
            impl->mixed_names.push_back(model.children[i].name);
        }
    } else {
        impl->kind = ContentKind::Element;
        NodeSets root = impl->automaton.build(model);
        impl->automaton.nullable = root.nullable;
        impl->automaton.first = root.first;
        impl->automaton.last.assign(impl->automaton.symbols.size(), 0);
        for (int p : root.last) impl->automaton.last[static_cast<std::size_t>(p)] = 1;
    }
    Matcher m;
    m.impl_ = std::move(impl);
    return m;
}

namespace {

std::vector<std::string> position_names(const Automaton& a, const std::vector<int>& positions) {
    std::vector<std::string> out;
    for (int p : positions) {
        const std::string& name = a.symbols[static_cast<std::size_t>(p)];
        if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
    return out;
}

}  // namespace

Matcher::Result Matcher::match(std::span<const std::string> child_names) const {
    const Impl& impl = *impl_;
    Result result;
    switch (impl.kind) {
        case ContentKind::Empty:
        case ContentKind::Text: {
            if (child_names.empty()) {
                result.accepted = true;
                result.end_allowed = true;
                return result;
            }
            result.failure_index = 0;
            result.end_allowed = true;
            return result;
        }
        case ContentKind::Mixed: {
            for (std::size_t i = 0; i < child_names.size(); ++i) {
                const std::string& name = child_names[i];
                if (std::find(impl.mixed_names.begin(), impl.mixed_names.end(), name) ==
                    impl.mixed_names.end()) {
                    result.failure_index = i;
                    result.expected = impl.mixed_names;
                    result.end_allowed = true;
                    return result;
                }
            }
            result.accepted = true;
            result.end_allowed = true;
            return result;
        }
        case ContentKind::Element:
            break;
    }
    const Automaton& a = impl.automaton;
    std::vector<int> current;
    bool at_start = true;
    auto candidates = [&] {
        if (at_start) return a.first;
        std::vector<int> out;
        for (int p : current) merge(out, a.follow[static_cast<std::size_t>(p)]);
        return out;
    };
    auto end_allowed = [&] {
        if (at_start) return a.nullable;
        return std::any_of(current.begin(), current.end(), [&](int p) {
            return a.last[static_cast<std::size_t>(p)] != 0;
        });
    };
    for (std::size_t i = 0; i < child_names.size(); ++i) {
        std::vector<int> cand = candidates();
        std::vector<int> next;
        for (int p : cand) {
            if (a.symbols[static_cast<std::size_t>(p)] == child_names[i]) next.push_back(p);
        }
        if (next.empty()) {
            result.failure_index = i;
            result.expected = position_names(a, cand);
            result.end_allowed = end_allowed();
            return result;
        }
        current = std::move(next);
        at_start = false;
    }
    if (end_allowed()) {
        result.accepted = true;
        result.end_allowed = true;
        return result;
    }
    result.failure_index = child_names.size();
    result.expected = position_names(a, candidates());
    result.end_allowed = false;
    return result;
}

bool Matcher::accepts(std::span<const std::string> child_names) const {
    return match(child_names).accepted;
}

ContentKind Matcher::content_kind() const { return impl_->kind; }

bool Matcher::allows_text() const {
    return impl_->kind == ContentKind::Text || impl_->kind == ContentKind::Mixed;
}

const std::vector<std::string>& Matcher::mixed_names() const { return impl_->mixed_names; }

namespace {

bool has_significant_text(const xml::Element& e) {
    for (const xml::Node& child : e.children) {
        if (!child.is_text()) continue;
        for (char c : child.text().text) {
            if (!is_ws(c)) return true;
        }
    }
    return false;
}

std::string join_names(const std::vector<std::string>& names) {
    if (names.empty()) return "(empty)";
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += names[i];
    }
    return out;
}

struct Validator {
    const DtdGrammar& grammar;
    ValidationReport& report;
    std::map<std::string, Matcher, std::less<>> matchers;

    const Matcher& matcher_for(const std::string& name, const ContentModel& model) {
        auto it = matchers.find(name);
        if (it == matchers.end()) {
            it = matchers.emplace(name, compile_content_model(model)).first;
        }
        return it->second;
    }

    void walk(const xml::Element& elem, const std::string& path) {
        const ContentModel* model = grammar.find(elem.name);
        if (!model) {
            report.violations.push_back(
                {path, "a declared element", "undeclared element '" + elem.name + "'"});
        } else {
            check(elem, path, *model);
        }
        for (const xml::Element* child : elem.element_children()) {
            walk(*child, path + "/" + child->name);
        }
    }

    void check(const xml::Element& elem, const std::string& path, const ContentModel& model) {
        const Matcher& m = matcher_for(elem.name, model);
        std::vector<std::string> names = elem.child_element_names();
        bool text = has_significant_text(elem);
        switch (m.content_kind()) {
            case ContentKind::Element:
                if (text) {
                    report.violations.push_back({path, declaration_source(model), "character data"});
                }
                if (!m.accepts(names)) {
                    report.violations.push_back({path, declaration_source(model), join_names(names)});
                }
                break;
            case ContentKind::Text:
                if (!names.empty()) {
                    report.violations.push_back({path, declaration_source(model), join_names(names)});
                }
                break;
            case ContentKind::Mixed:
                if (!m.accepts(names)) {
                    report.violations.push_back({path, declaration_source(model), join_names(names)});
                }
                break;
            case ContentKind::Empty:
                if (text || !names.empty()) {
                    std::string found = names.empty() ? "character data" : join_names(names);
                    report.violations.push_back({path, "EMPTY", found});
                }
                break;
        }
    }
};

}  // namespace

ValidationReport validate_document(const xml::Document& doc, const DtdGrammar& grammar,
                                   std::string_view root_name) {
    ValidationReport report;
    if (doc.root.name != root_name) {
        report.violations.push_back({"/" + doc.root.name,
                                     "document root element '" + std::string(root_name) + "'",
                                     "element '" + doc.root.name + "'"});
    }
    Validator v{grammar, report, {}};
    v.walk(doc.root, "/" + doc.root.name);
    report.valid = report.violations.empty();
    return report;
}

}  // namespace autoconf::dtd
