#pragma once
// Parser and canonical emitter for the TTL subset used by workflow
// serializations: @prefix directives, prefixed names, `a`, predicate and
// object lists, nested anonymous blank nodes, string/number/boolean
// literals, and # comments. No collections, language tags, or bare IRIs
// outside @prefix values.

#include <charconv>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "osmoflow/errors.hpp"

namespace osmoflow::ttl {

// ---------------------------------------------------------------------------
// Document model

struct Name {
    std::string prefix;  // without the colon; "" for the local prefix
    std::string local;

    std::string str() const { return prefix + ":" + local; }
    auto operator<=>(const Name&) const = default;
};

struct Pred {
    bool is_type = false;  // the `a` keyword
    Name name;             // unused when is_type

    std::string str() const { return is_type ? "a" : name.str(); }
    auto operator<=>(const Pred&) const = default;
};

struct Object;
struct PredObjects {
    Pred predicate;
    std::vector<Object> objects;
};

struct Object {
    enum class Kind { Iri, String, Integer, Real, Boolean, Blank };

    Kind kind = Kind::Iri;
    Name name;               // Iri
    std::string text;        // String (unescaped)
    long long integer = 0;   // Integer
    double real = 0.0;       // Real
    std::string lexical;     // original spelling of a number
    bool boolean = false;    // Boolean
    std::vector<PredObjects> blank;  // Blank

    static Object iri(Name n) {
        Object o;
        o.kind = Kind::Iri;
        o.name = std::move(n);
        return o;
    }
    static Object str(std::string s) {
        Object o;
        o.kind = Kind::String;
        o.text = std::move(s);
        return o;
    }
    static Object integer_value(long long v) {
        Object o;
        o.kind = Kind::Integer;
        o.integer = v;
        o.lexical = std::to_string(v);
        return o;
    }
    static Object real_value(double v) {
        Object o;
        o.kind = Kind::Real;
        o.real = v;
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, v);
        o.lexical = std::string(buf, res.ptr);
        // make sure the spelling re-parses as a real, not an integer
        if (o.lexical.find('.') == std::string::npos &&
            o.lexical.find('e') == std::string::npos &&
            o.lexical.find('E') == std::string::npos)
            o.lexical += ".0";
        return o;
    }
    static Object boolean_value(bool v) {
        Object o;
        o.kind = Kind::Boolean;
        o.boolean = v;
        return o;
    }
    static Object blank_node(std::vector<PredObjects> contents) {
        Object o;
        o.kind = Kind::Blank;
        o.blank = std::move(contents);
        return o;
    }
};

struct Statement {
    Name subject;
    std::vector<PredObjects> preds;
};

struct TtlDocument {
    std::map<std::string, std::string> prefixes;  // prefix -> IRI
    std::vector<Statement> statements;
};

// ---------------------------------------------------------------------------
// Errors

class TtlError : public Error {
public:
    TtlError(int line, int col, const std::string& msg)
        : Error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
          line_(line),
          col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

class SyntaxError : public TtlError {
public:
    using TtlError::TtlError;
};

class UnknownPrefixError : public TtlError {
public:
    UnknownPrefixError(int line, int col, const std::string& prefix)
        : TtlError(line, col, "undeclared prefix '" + prefix + ":'") {}
};

// ---------------------------------------------------------------------------
// Parser

namespace detail {

struct Token {
    enum class Kind {
        AtPrefix, PName, IriRef, Dot, Semicolon, Comma,
        LBracket, RBracket, String, Number, Boolean, A, Eof
    };
    Kind kind = Kind::Eof;
    std::string a, b;  // PName: prefix/local; IriRef, String, Number: value in `a`
    bool flag = false;  // Boolean value
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= text_.size()) {
            t.kind = Token::Kind::Eof;
            return t;
        }
        char c = text_[pos_];
        switch (c) {
            case '.': advance(); t.kind = Token::Kind::Dot; return t;
            case ';': advance(); t.kind = Token::Kind::Semicolon; return t;
            case ',': advance(); t.kind = Token::Kind::Comma; return t;
            case '[': advance(); t.kind = Token::Kind::LBracket; return t;
            case ']': advance(); t.kind = Token::Kind::RBracket; return t;
            case '"': return lex_string(t);
            case '<': return lex_iriref(t);
            case '@': return lex_at(t);
            default: break;
        }
        if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c)))
            return lex_number(t);
        if (is_name_start(c) || c == ':') return lex_name(t);
        throw SyntaxError(t.line, t.col, std::string("unexpected character '") + c + "'");
    }

private:
    static bool is_name_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool is_name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    }

    void advance() {
        if (pos_ < text_.size()) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    Token lex_string(Token t) {
        advance();  // opening quote
        std::string out;
        while (true) {
            if (pos_ >= text_.size())
                throw SyntaxError(t.line, t.col, "unterminated string literal");
            char c = text_[pos_];
            if (c == '\n')
                throw SyntaxError(t.line, t.col, "newline inside string literal");
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\') {
                advance();
                if (pos_ >= text_.size())
                    throw SyntaxError(t.line, t.col, "unterminated escape sequence");
                char e = text_[pos_];
                switch (e) {
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case 'r': out += '\r'; break;
                    default:
                        throw SyntaxError(line_, col_,
                                          std::string("unsupported escape '\\") + e + "'");
                }
                advance();
            } else {
                out += c;
                advance();
            }
        }
        t.kind = Token::Kind::String;
        t.a = std::move(out);
        return t;
    }

    Token lex_iriref(Token t) {
        advance();  // '<'
        std::string out;
        while (true) {
            if (pos_ >= text_.size())
                throw SyntaxError(t.line, t.col, "unterminated IRI reference");
            char c = text_[pos_];
            if (c == '>') {
                advance();
                break;
            }
            if (c == '\n' || c == ' ')
                throw SyntaxError(t.line, t.col, "whitespace inside IRI reference");
            out += c;
            advance();
        }
        t.kind = Token::Kind::IriRef;
        t.a = std::move(out);
        return t;
    }

    Token lex_at(Token t) {
        advance();  // '@'
        std::string word;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) {
            word += text_[pos_];
            advance();
        }
        if (word != "prefix")
            throw SyntaxError(t.line, t.col, "expected @prefix, got @" + word);
        t.kind = Token::Kind::AtPrefix;
        return t;
    }

    Token lex_number(Token t) {
        std::string out;
        if (text_[pos_] == '+' || text_[pos_] == '-') {
            out += text_[pos_];
            advance();
        }
        bool digits = false;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            out += text_[pos_];
            advance();
            digits = true;
        }
        if (!digits) throw SyntaxError(t.line, t.col, "expected digits");
        // a '.' belongs to the number only when a digit follows
        if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            out += '.';
            advance();
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                out += text_[pos_];
                advance();
            }
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            out += text_[pos_];
            advance();
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                out += text_[pos_];
                advance();
            }
            bool exp_digits = false;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                out += text_[pos_];
                advance();
                exp_digits = true;
            }
            if (!exp_digits) throw SyntaxError(t.line, t.col, "expected exponent digits");
        }
        t.kind = Token::Kind::Number;
        t.a = std::move(out);
        return t;
    }

    Token lex_name(Token t) {
        std::string prefix;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) {
            prefix += text_[pos_];
            advance();
        }
        if (pos_ >= text_.size() || text_[pos_] != ':') {
            if (prefix == "a") {
                t.kind = Token::Kind::A;
                return t;
            }
            if (prefix == "true" || prefix == "false") {
                t.kind = Token::Kind::Boolean;
                t.flag = prefix == "true";
                return t;
            }
            throw SyntaxError(t.line, t.col, "expected ':' after '" + prefix + "'");
        }
        advance();  // ':'
        std::string local;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (is_name_char(c)) {
                local += c;
                advance();
            } else if (c == '.' && pos_ + 1 < text_.size() &&
                       is_name_char(text_[pos_ + 1])) {
                // dots inside local names, but a trailing dot terminates the statement
                local += c;
                advance();
            } else {
                break;
            }
        }
        t.kind = Token::Kind::PName;
        t.a = std::move(prefix);
        t.b = std::move(local);
        return t;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lexer_(text) { shift(); }

    TtlDocument parse() {
        TtlDocument doc;
        while (tok_.kind != Token::Kind::Eof) {
            if (tok_.kind == Token::Kind::AtPrefix) {
                parse_prefix(doc);
            } else if (tok_.kind == Token::Kind::PName) {
                doc.statements.push_back(parse_statement(doc));
            } else {
                throw SyntaxError(tok_.line, tok_.col,
                                  "expected @prefix or a subject name");
            }
        }
        return doc;
    }

private:
    void shift() { tok_ = lexer_.next(); }

    void expect(Token::Kind kind, const char* what) {
        if (tok_.kind != kind)
            throw SyntaxError(tok_.line, tok_.col, std::string("expected ") + what);
        shift();
    }

    void parse_prefix(TtlDocument& doc) {
        shift();  // @prefix
        if (tok_.kind != Token::Kind::PName || !tok_.b.empty())
            throw SyntaxError(tok_.line, tok_.col, "expected prefix declaration name");
        std::string prefix = tok_.a;
        shift();
        if (tok_.kind != Token::Kind::IriRef)
            throw SyntaxError(tok_.line, tok_.col, "expected IRI reference");
        doc.prefixes[prefix] = tok_.a;
        shift();
        expect(Token::Kind::Dot, "'.'");
    }

    Name parse_name(const TtlDocument& doc) {
        if (tok_.kind != Token::Kind::PName)
            throw SyntaxError(tok_.line, tok_.col, "expected prefixed name");
        if (!doc.prefixes.count(tok_.a))
            throw UnknownPrefixError(tok_.line, tok_.col, tok_.a);
        Name n{tok_.a, tok_.b};
        shift();
        return n;
    }

    Statement parse_statement(const TtlDocument& doc) {
        Statement st;
        st.subject = parse_name(doc);
        st.preds = parse_pred_objects(doc);
        expect(Token::Kind::Dot, "'.'");
        return st;
    }

    std::vector<PredObjects> parse_pred_objects(const TtlDocument& doc) {
        std::vector<PredObjects> preds;
        while (true) {
            PredObjects po;
            if (tok_.kind == Token::Kind::A) {
                po.predicate.is_type = true;
                shift();
            } else {
                po.predicate.name = parse_name(doc);
            }
            po.objects.push_back(parse_object(doc));
            while (tok_.kind == Token::Kind::Comma) {
                shift();
                po.objects.push_back(parse_object(doc));
            }
            preds.push_back(std::move(po));
            if (tok_.kind == Token::Kind::Semicolon) {
                shift();
                // trailing ';' before '.' or ']' is admissible
                if (tok_.kind == Token::Kind::Dot || tok_.kind == Token::Kind::RBracket)
                    break;
                continue;
            }
            break;
        }
        return preds;
    }

    Object parse_object(const TtlDocument& doc) {
        switch (tok_.kind) {
            case Token::Kind::PName:
                return Object::iri(parse_name(doc));
            case Token::Kind::String: {
                Object o = Object::str(tok_.a);
                shift();
                return o;
            }
            case Token::Kind::Boolean: {
                Object o = Object::boolean_value(tok_.flag);
                shift();
                return o;
            }
            case Token::Kind::Number: {
                Object o = parse_number(tok_);
                shift();
                return o;
            }
            case Token::Kind::LBracket: {
                shift();
                std::vector<PredObjects> contents;
                if (tok_.kind != Token::Kind::RBracket)
                    contents = parse_pred_objects(doc);
                expect(Token::Kind::RBracket, "']'");
                return Object::blank_node(std::move(contents));
            }
            default:
                throw SyntaxError(tok_.line, tok_.col,
                                  "expected an object (name, literal, or blank node)");
        }
    }

    static Object parse_number(const Token& t) {
        const std::string& s = t.a;
        bool real = s.find('.') != std::string::npos ||
                    s.find('e') != std::string::npos || s.find('E') != std::string::npos;
        Object o;
        if (real) {
            o.kind = Object::Kind::Real;
            try {
                o.real = std::stod(s);
            } catch (const std::exception&) {
                throw SyntaxError(t.line, t.col, "number out of range");
            }
        } else {
            o.kind = Object::Kind::Integer;
            auto res = std::from_chars(s.data(), s.data() + s.size(), o.integer);
            if (res.ec != std::errc{})
                throw SyntaxError(t.line, t.col, "integer out of range");
        }
        o.lexical = s;
        return o;
    }

    Lexer lexer_;
    Token tok_;
};

}  // namespace detail

inline TtlDocument parse_ttl(const std::string& text) {
    return detail::Parser(text).parse();
}

// ---------------------------------------------------------------------------
// Canonical emission: prefixes sorted, subjects merged and sorted, predicate
// order preserved, 3-space continuation indent.

namespace detail {

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

inline void emit_pred_objects(const std::vector<PredObjects>& preds, int indent,
                              std::string& out);

inline void emit_object(const Object& o, int indent, std::string& out) {
    switch (o.kind) {
        case Object::Kind::Iri: out += o.name.str(); break;
        case Object::Kind::String: out += '"' + escape(o.text) + '"'; break;
        case Object::Kind::Integer:
        case Object::Kind::Real: out += o.lexical; break;
        case Object::Kind::Boolean: out += o.boolean ? "true" : "false"; break;
        case Object::Kind::Blank:
            if (o.blank.empty()) {
                out += "[ ]";
            } else {
                out += "[\n";
                emit_pred_objects(o.blank, indent + 3, out);
                out += '\n';
                out.append(indent, ' ');
                out += ']';
            }
            break;
    }
}

inline void emit_pred_objects(const std::vector<PredObjects>& preds, int indent,
                              std::string& out) {
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (i > 0) out += ";\n";
        out.append(indent, ' ');
        out += preds[i].predicate.str();
        out += ' ';
        for (std::size_t j = 0; j < preds[i].objects.size(); ++j) {
            if (j > 0) out += ", ";
            emit_object(preds[i].objects[j], indent, out);
        }
    }
}

// Merge repeated subjects (document order of predicates) and sort by name.
inline std::vector<Statement> canonical_statements(const TtlDocument& doc) {
    std::vector<Statement> merged;
    std::map<Name, std::size_t> index;
    for (const auto& st : doc.statements) {
        auto it = index.find(st.subject);
        if (it == index.end()) {
            index[st.subject] = merged.size();
            merged.push_back(st);
        } else {
            auto& dst = merged[it->second].preds;
            dst.insert(dst.end(), st.preds.begin(), st.preds.end());
        }
    }
    std::sort(merged.begin(), merged.end(),
              [](const Statement& a, const Statement& b) { return a.subject < b.subject; });
    return merged;
}

}  // namespace detail

inline std::string emit_ttl(const TtlDocument& doc) {
    std::string out;
    for (const auto& [prefix, iri] : doc.prefixes)
        out += "@prefix " + prefix + ": <" + iri + "> .\n";
    auto statements = detail::canonical_statements(doc);
    for (const auto& st : statements) {
        out += '\n';
        out += st.subject.str();
        if (!st.preds.empty()) {
            out += ' ';
            std::string body;
            detail::emit_pred_objects(st.preds, 3, body);
            // the subject carries the first predicate on its own line
            out += body.substr(3);
        }
        out += ".\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Structural equality: prefix maps equal, and the canonicalized statement
// lists equal (subjects merged and sorted; predicate and object order kept).

namespace detail {

inline bool objects_equal(const Object& a, const Object& b);

inline bool pred_objects_equal(const std::vector<PredObjects>& a,
                               const std::vector<PredObjects>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].predicate != b[i].predicate) return false;
        if (a[i].objects.size() != b[i].objects.size()) return false;
        for (std::size_t j = 0; j < a[i].objects.size(); ++j)
            if (!objects_equal(a[i].objects[j], b[i].objects[j])) return false;
    }
    return true;
}

inline bool objects_equal(const Object& a, const Object& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Object::Kind::Iri: return a.name == b.name;
        case Object::Kind::String: return a.text == b.text;
        case Object::Kind::Integer: return a.integer == b.integer;
        case Object::Kind::Real: return a.real == b.real;
        case Object::Kind::Boolean: return a.boolean == b.boolean;
        case Object::Kind::Blank: return pred_objects_equal(a.blank, b.blank);
    }
    return false;
}

}  // namespace detail

inline bool structurally_equal(const TtlDocument& a, const TtlDocument& b) {
    if (a.prefixes != b.prefixes) return false;
    auto sa = detail::canonical_statements(a);
    auto sb = detail::canonical_statements(b);
    if (sa.size() != sb.size()) return false;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (sa[i].subject != sb[i].subject) return false;
        if (!detail::pred_objects_equal(sa[i].preds, sb[i].preds)) return false;
    }
    return true;
}

}  // namespace osmoflow::ttl
