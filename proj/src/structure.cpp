#include "stylepredict/structure.hpp"

#include <algorithm>
#include <optional>
#include <unordered_set>

namespace stylepredict {

namespace {

bool is_code_kind(TokenKind k) {
    switch (k) {
        case TokenKind::Identifier:
        case TokenKind::Keyword:
        case TokenKind::Number:
        case TokenKind::String:
        case TokenKind::Char:
        case TokenKind::Punctuator:
            return true;
        default:
            return false;
    }
}

const std::unordered_set<std::string_view> kQualifiers = {
    "const", "constexpr", "constinit", "consteval", "static", "volatile",
    "mutable", "inline", "register", "thread_local", "extern", "unsigned",
    "signed", "long", "short", "typename", "virtual", "explicit",
};

const std::unordered_set<std::string_view> kTypeKeywords = {
    "bool", "char", "char8_t", "char16_t", "char32_t", "wchar_t", "short",
    "int", "long", "float", "double", "void", "auto", "unsigned", "signed",
};

int count_newlines(const std::string& s) {
    return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

// Recovers structure from the code-token subsequence. All lookahead used
// for classification is pure; counters are only touched once a construct
// has been recognized, so a failed match never double-counts.
class StructureScanner {
public:
    explicit StructureScanner(const std::vector<Token>& tokens) : toks_(tokens) {
        for (size_t i = 0; i < toks_.size(); ++i)
            if (is_code_kind(toks_[i].kind)) code_.push_back(i);
        n_ = code_.size();
    }

    StructuralFacts run() {
        token_pass();
        brace_pass();
        parse_decl_scope(0, false);
        return facts_;
    }

private:
    // ---- token access -------------------------------------------------

    const Token& tok(size_t ci) const { return toks_[code_[ci]]; }
    const std::string& text(size_t ci) const { return tok(ci).text; }
    TokenKind kind(size_t ci) const { return tok(ci).kind; }
    bool is_kw(size_t ci, std::string_view w) const {
        return ci < n_ && kind(ci) == TokenKind::Keyword && text(ci) == w;
    }
    bool is_punct(size_t ci, std::string_view p) const {
        return ci < n_ && kind(ci) == TokenKind::Punctuator && text(ci) == p;
    }
    bool is_ident(size_t ci) const { return ci < n_ && kind(ci) == TokenKind::Identifier; }

    // ---- flat tallies --------------------------------------------------

    void token_pass() {
        static const std::unordered_set<std::string_view> compound = {
            "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=",
        };
        for (size_t ci = 0; ci < n_; ++ci) {
            const Token& t = tok(ci);
            if (t.kind == TokenKind::Punctuator) {
                if (t.text == "=") ++facts_.plain_assignments;
                else if (compound.count(t.text)) ++facts_.compound_assignments;
                else if (t.text == "?") ++facts_.ternary_ops;
                else if (t.text == "++" || t.text == "--") {
                    bool postfix = false;
                    if (ci > 0) {
                        const Token& p = tok(ci - 1);
                        postfix = p.kind == TokenKind::Identifier ||
                                  p.kind == TokenKind::Number ||
                                  p.text == ")" || p.text == "]";
                    }
                    postfix ? ++facts_.postfix_incdec : ++facts_.prefix_incdec;
                }
            } else if (t.kind == TokenKind::Keyword) {
                if (t.text == "goto") ++facts_.goto_stmts;
                else if (t.text == "break") ++facts_.break_stmts;
                else if (t.text == "continue") ++facts_.continue_stmts;
                else if (t.text == "return") {
                    ++facts_.return_stmts;
                    if (ci + 1 < n_ && !is_punct(ci + 1, ";")) {
                        ++facts_.value_returns;
                        if (is_punct(ci + 1, "(")) ++facts_.paren_returns;
                    }
                }
            }
        }
    }

    void brace_pass() {
        int cur_line = 0;
        bool line_has_content = false;
        for (const Token& t : toks_) {
            if (t.line > cur_line) {
                cur_line = t.line;
                line_has_content = false;
            }
            bool blank = t.kind == TokenKind::Whitespace || t.kind == TokenKind::Newline;
            if (t.kind == TokenKind::Punctuator && t.text == "{") {
                line_has_content ? ++facts_.open_brace_same_line
                                 : ++facts_.open_brace_own_line;
            } else if (t.kind == TokenKind::Punctuator && t.text == "}") {
                ++facts_.close_braces_total;
                if (!line_has_content) ++facts_.close_brace_own_line;
            }
            if (!blank) line_has_content = true;
            int end_line = t.line + count_newlines(t.text);
            if (end_line > cur_line) {
                cur_line = end_line;
                line_has_content = !blank;
            }
        }
    }

    // ---- pure skip helpers (no counter mutation) -----------------------

    // ci at '('/'['; returns index past the matching closer, or n_ on
    // unbalanced input (lint flag set).
    size_t skip_balanced(size_t ci, std::string_view open, std::string_view close) {
        int depth = 0;
        for (size_t p = ci; p < n_; ++p) {
            if (is_punct(p, open)) ++depth;
            else if (is_punct(p, close)) {
                if (--depth == 0) return p + 1;
            }
        }
        facts_.lint_unbalanced = true;
        return n_;
    }

    // Bounded template-argument skip starting at '<'. Returns index past
    // the matching '>' or nullopt when the '<' is really a comparison.
    std::optional<size_t> skip_template_args(size_t ci) const {
        int depth = 0;
        size_t limit = std::min(n_, ci + 256);
        for (size_t p = ci; p < limit; ++p) {
            const std::string& s = text(p);
            if (kind(p) == TokenKind::Punctuator) {
                if (s == "<") ++depth;
                else if (s == ">") {
                    if (--depth == 0) return p + 1;
                } else if (s == ">>") {
                    depth -= 2;
                    if (depth <= 0) return p + 1;
                } else if (s == ";" || s == "{" || s == "}") {
                    return std::nullopt;
                }
            }
        }
        return std::nullopt;
    }

    // Pure scan to ';' at depth 0 (consumed), balancing (), [], {}.
    size_t skip_to_semicolon(size_t ci) {
        int paren = 0, brace = 0, bracket = 0;
        for (size_t p = ci; p < n_; ++p) {
            if (kind(p) != TokenKind::Punctuator) continue;
            const std::string& s = text(p);
            if (s == "(") ++paren;
            else if (s == ")") --paren;
            else if (s == "[") ++bracket;
            else if (s == "]") --bracket;
            else if (s == "{") ++brace;
            else if (s == "}") {
                if (brace == 0) return p; // statement ended by scope close
                --brace;
            } else if (s == ";" && paren <= 0 && brace == 0 && bracket <= 0) {
                return p + 1;
            }
        }
        return n_;
    }

    // ---- statement parsing ---------------------------------------------

    // Expression scan with statement counting inside any '{' encountered
    // (lambdas, compound literals). Stops, without consuming, at any of
    // the stop tokens at nesting depth 0, or at an unmatched ')' / '}'.
    size_t scan_expr(size_t ci, std::initializer_list<std::string_view> stops) {
        size_t p = ci;
        int paren = 0, bracket = 0;
        while (p < n_) {
            if (kind(p) == TokenKind::Punctuator) {
                const std::string& s = text(p);
                if (paren == 0 && bracket == 0) {
                    for (std::string_view stop : stops)
                        if (s == stop) return p;
                    if (s == ")" || s == "}") return p; // unmatched: end here
                }
                if (s == "(") ++paren;
                else if (s == ")") --paren;
                else if (s == "[") ++bracket;
                else if (s == "]") --bracket;
                else if (s == "{") {
                    p = parse_block(p + 1);
                    continue;
                }
            }
            ++p;
        }
        return p;
    }

    // ci just past '{'; returns index past the matching '}'.
    size_t parse_block(size_t ci) {
        if (++depth_ > 200) {
            facts_.lint_unbalanced = true;
            --depth_;
            return n_;
        }
        size_t p = ci;
        while (p < n_) {
            if (is_punct(p, "}")) {
                --depth_;
                return p + 1;
            }
            p = parse_statement(p);
        }
        facts_.lint_unbalanced = true;
        --depth_;
        return n_;
    }

    // Scans one statement starting at ci; returns the index just past it.
    size_t parse_statement(size_t ci) {
        if (ci >= n_) return n_;
        if (is_punct(ci, ";")) return ci + 1;
        if (is_punct(ci, "{")) return parse_block(ci + 1);

        if (kind(ci) == TokenKind::Keyword) {
            const std::string& kw = text(ci);
            if (kw == "if") return parse_if(ci);
            if (kw == "for") return parse_for(ci);
            if (kw == "while") {
                ++facts_.while_loops;
                size_t body = header_body(ci + 1);
                return parse_control_body(body);
            }
            if (kw == "do") return parse_do(ci);
            if (kw == "switch") {
                ++facts_.switch_stmts;
                size_t body = header_body(ci + 1);
                return parse_statement(body);
            }
            if (kw == "try") {
                size_t p = parse_statement(ci + 1);
                while (is_kw(p, "catch")) {
                    size_t body = header_body(p + 1);
                    p = parse_statement(body);
                }
                return p;
            }
            if (kw == "case") {
                size_t p = ci + 1;
                while (p < n_ && !is_punct(p, ":")) ++p;
                return p < n_ ? p + 1 : n_;
            }
            if (kw == "default" && is_punct(ci + 1, ":")) return ci + 2;
            if (kw == "else") return ci + 1; // orphan else; tolerate
            if (kw == "struct" || kw == "class" || kw == "union" || kw == "enum")
                return parse_record(ci);
            if (kw == "using" || kw == "typedef" || kw == "static_assert")
                return skip_to_semicolon(ci + 1);
            if (kw == "namespace") return parse_namespace(ci);
        }

        // label:
        if (is_ident(ci) && is_punct(ci + 1, ":")) return ci + 2;

        if (auto end = try_declaration(ci, /*range_for=*/false)) return *end;

        size_t p = scan_expr(ci, {";"});
        if (is_punct(p, ";")) return p + 1;
        return p; // stopped at '}' or end
    }

    // After a control keyword: expects '(', skips the balanced header,
    // returns the index of the body's first token.
    size_t header_body(size_t ci) {
        if (!is_punct(ci, "(")) return ci;
        return skip_balanced(ci, "(", ")");
    }

    size_t parse_control_body(size_t body) {
        ++facts_.control_body_sites;
        if (body < n_ && !is_punct(body, "{")) ++facts_.braceless_bodies;
        return parse_statement(body);
    }

    size_t parse_if(size_t ci) {
        ++facts_.if_stmts;
        if (ci > 0 && is_kw(ci - 1, "else")) ++facts_.else_if;
        size_t body = header_body(ci + 1);
        size_t after = parse_control_body(body);
        if (is_kw(after, "else")) {
            ++facts_.if_with_else;
            size_t ep = after + 1;
            if (is_kw(ep, "if")) return parse_statement(ep);
            ++facts_.else_plain;
            ++facts_.control_body_sites;
            if (ep < n_ && !is_punct(ep, "{")) ++facts_.braceless_bodies;
            return parse_statement(ep);
        }
        return after;
    }

    size_t parse_for(size_t ci) {
        size_t open = ci + 1;
        bool range = false;
        if (is_punct(open, "(")) {
            // ':' at paren depth 1 marks a range-for ('::' is one token)
            int depth = 0;
            for (size_t p = open; p < n_; ++p) {
                if (is_punct(p, "(")) ++depth;
                else if (is_punct(p, ")")) {
                    if (--depth == 0) break;
                } else if (is_punct(p, ":") && depth == 1) {
                    range = true;
                    break;
                } else if (is_punct(p, ";") && depth == 1) {
                    break;
                }
            }
        }
        range ? ++facts_.range_for_loops : ++facts_.for_loops;

        size_t body;
        if (is_punct(open, "(")) {
            if (range) {
                size_t p = open + 1;
                if (auto d = try_declaration(p, /*range_for=*/true)) p = *d;
                // resume from inside the header: scan to the matching ')'
                int depth = 1;
                while (p < n_ && depth > 0) {
                    if (is_punct(p, "(")) ++depth;
                    else if (is_punct(p, ")")) --depth;
                    ++p;
                }
                body = p;
            } else {
                size_t p = open + 1;
                if (auto d = try_declaration(p, false)) p = *d;
                else p = skip_to_semicolon(p);
                p = skip_to_semicolon(p);       // condition
                p = scan_expr(p, {")"});        // increment
                body = is_punct(p, ")") ? p + 1 : p;
            }
        } else {
            body = open;
        }
        return parse_control_body(body);
    }

    size_t parse_do(size_t ci) {
        ++facts_.do_while_loops;
        ++facts_.control_body_sites;
        size_t body = ci + 1;
        if (body < n_ && !is_punct(body, "{")) ++facts_.braceless_bodies;
        size_t p = parse_statement(body);
        if (is_kw(p, "while")) {
            p = header_body(p + 1); // trailing while is not a loop of its own
            if (is_punct(p, ";")) ++p;
        }
        return p;
    }

    size_t parse_record(size_t ci) {
        // struct/class/union/enum: skip the head, walk the body as a
        // declaration scope, then consume trailing declarators.
        size_t p = ci + 1;
        while (p < n_ && !is_punct(p, "{") && !is_punct(p, ";")) {
            if (is_punct(p, "(")) { // macro-ish; bail
                return skip_to_semicolon(p);
            }
            ++p;
        }
        if (p >= n_) return n_;
        if (is_punct(p, ";")) return p + 1;
        bool is_enum = is_kw(ci, "enum");
        size_t after = is_enum ? skip_balanced(p, "{", "}") : parse_decl_scope(p + 1, true);
        return skip_to_semicolon(after);
    }

    size_t parse_namespace(size_t ci) {
        size_t p = ci + 1;
        while (p < n_ && (is_ident(p) || is_punct(p, "::"))) ++p;
        if (is_punct(p, "=")) return skip_to_semicolon(p);
        if (is_punct(p, "{")) return parse_decl_scope(p + 1, true);
        return p;
    }

    // ---- declarations ---------------------------------------------------

    // Heuristic variable-declaration parse. Shape accepted:
    //   qual* type-head ('*'|'&'|'&&'|const|volatile)* name suffix
    // where type-head is a builtin type keyword, decltype(...), or a
    // (possibly ::-qualified, possibly templated) identifier chain, and
    // the declared name must be followed by '=' ';' ',' '[' '{' '(' or
    // (in a range-for header) ':'. Returns the index past the statement
    // and commits declarator facts only when the whole parse succeeds.
    std::optional<size_t> try_declaration(size_t ci, bool range_for) {
        size_t p = ci;
        bool size_qual = false;
        bool any_qual = false;
        while (p < n_ && kind(p) == TokenKind::Keyword && kQualifiers.count(text(p))) {
            if (text(p) == "unsigned" || text(p) == "signed" || text(p) == "long" ||
                text(p) == "short")
                size_qual = true;
            any_qual = true;
            ++p;
        }
        // A sized qualifier can be the whole type ("long counter;"): when
        // the identifier after it ends a declarator, read it as the
        // declared name rather than as a type head.
        bool ident_is_declarator = false;
        if (size_qual && is_ident(p)) {
            size_t peek = p + 1;
            while (is_punct(peek, "[")) peek = skip_balanced(peek, "[", "]");
            ident_is_declarator = is_punct(peek, "=") || is_punct(peek, ";") ||
                                  is_punct(peek, ",") || is_punct(peek, "{") ||
                                  (range_for && is_punct(peek, ":"));
        }
        // type head
        if (ident_is_declarator) {
            // implicit type from the qualifiers
        } else if (p < n_ && kind(p) == TokenKind::Keyword &&
                   kTypeKeywords.count(text(p))) {
            ++p;
            // "long long", "unsigned char", ...
            while (p < n_ && kind(p) == TokenKind::Keyword && kTypeKeywords.count(text(p)))
                ++p;
        } else if (is_kw(p, "decltype")) {
            ++p;
            if (!is_punct(p, "(")) return std::nullopt;
            p = skip_balanced(p, "(", ")");
        } else if (is_ident(p) || is_punct(p, "::")) {
            if (is_punct(p, "::")) ++p;
            if (!is_ident(p)) return std::nullopt;
            ++p;
            while (p < n_) {
                if (is_punct(p, "<")) {
                    auto t = skip_template_args(p);
                    if (!t) break;
                    p = *t;
                } else if (is_punct(p, "::")) {
                    if (!is_ident(p + 1)) return std::nullopt;
                    p += 2;
                } else {
                    break;
                }
            }
        } else if (!size_qual) {
            return std::nullopt;
        }
        // `const x = 1;` without a type is not a declaration we accept
        if (!size_qual && p == ci + (any_qual ? 1 : 0) && any_qual) return std::nullopt;

        // first declarator decides whether this is a declaration at all
        struct Declarator { std::string name; };
        std::vector<Declarator> declarators;
        int stars = 0, stars_bound = 0;

        size_t q = p;
        bool first = true;
        while (true) {
            while (q < n_ && (is_punct(q, "*") || is_punct(q, "&") || is_punct(q, "&&") ||
                              is_kw(q, "const") || is_kw(q, "volatile"))) {
                if (is_punct(q, "*")) {
                    ++stars;
                    size_t full = code_[q];
                    if (full > 0 && toks_[full - 1].kind != TokenKind::Whitespace &&
                        toks_[full - 1].kind != TokenKind::Newline)
                        ++stars_bound;
                }
                ++q;
            }
            if (!is_ident(q)) {
                if (first) return std::nullopt;
                break; // malformed tail; keep what we have
            }
            std::string name = text(q);
            ++q;
            while (is_punct(q, "[")) q = skip_balanced(q, "[", "]");
            bool ok = is_punct(q, "=") || is_punct(q, ";") || is_punct(q, ",") ||
                      is_punct(q, "{") || is_punct(q, "(") ||
                      (range_for && is_punct(q, ":"));
            if (!ok) {
                if (first) return std::nullopt;
                break;
            }
            declarators.push_back({std::move(name)});
            first = false;

            if (range_for && is_punct(q, ":")) break;
            if (is_punct(q, "=")) {
                q = scan_expr(q + 1, {",", ";"});
            } else if (is_punct(q, "{") || is_punct(q, "(")) {
                q = scan_expr(q, {",", ";"});
            }
            if (is_punct(q, ",")) {
                ++q;
                continue;
            }
            break;
        }
        if (declarators.empty()) return std::nullopt;

        // commit
        ++facts_.decl_statements;
        if (declarators.size() >= 2) ++facts_.multi_declarator_statements;
        for (const auto& d : declarators) {
            ++facts_.declared_variables;
            facts_.declared_name_chars += static_cast<long>(d.name.size());
        }
        facts_.declarator_stars += stars;
        facts_.declarator_stars_type_bound += stars_bound;

        if (range_for) return q; // at ':'
        if (is_punct(q, ";")) return q + 1;
        // tolerate malformed endings
        return skip_to_semicolon(q);
    }

    // ---- declaration scope (file / namespace / class level) -------------

    size_t parse_decl_scope(size_t ci, bool stop_at_brace) {
        size_t p = ci;
        while (p < n_) {
            if (is_punct(p, "}")) {
                if (stop_at_brace) return p + 1;
                ++p; // stray close at file scope
                continue;
            }
            if (is_punct(p, ";")) {
                ++p;
                continue;
            }
            if (is_punct(p, "[") && is_punct(p + 1, "[")) { // attribute
                p = skip_balanced(p, "[", "]");
                continue;
            }
            if (kind(p) == TokenKind::Keyword) {
                const std::string& kw = text(p);
                if (kw == "namespace") {
                    p = parse_namespace(p);
                    continue;
                }
                if (kw == "struct" || kw == "class" || kw == "union" || kw == "enum") {
                    p = parse_record(p);
                    continue;
                }
                if (kw == "using" || kw == "typedef" || kw == "static_assert" ||
                    kw == "friend") {
                    p = skip_to_semicolon(p + 1);
                    continue;
                }
                if (kw == "template") {
                    if (is_punct(p + 1, "<")) {
                        auto t = skip_template_args(p + 1);
                        p = t ? *t : p + 2;
                    } else {
                        ++p;
                    }
                    continue;
                }
                if (kw == "extern" && p + 1 < n_ && kind(p + 1) == TokenKind::String) {
                    if (is_punct(p + 2, "{")) {
                        p = parse_decl_scope(p + 3, true);
                    } else {
                        p += 2; // extern "C" declaration
                    }
                    continue;
                }
                if (kw == "public" || kw == "private" || kw == "protected") {
                    p = is_punct(p + 1, ":") ? p + 2 : p + 1;
                    continue;
                }
                if (kw == "if" || kw == "for" || kw == "while" || kw == "do" ||
                    kw == "switch" || kw == "try" || kw == "return") {
                    p = parse_statement(p); // tolerate code at odd scope
                    continue;
                }
            }
            if (auto fn = match_function(p)) {
                p = *fn;
                continue;
            }
            if (auto d = try_declaration(p, false)) {
                p = *d;
                continue;
            }
            {
                size_t next = scan_expr(p, {";"});
                if (is_punct(next, ";")) ++next;
                else if (is_punct(next, "}")) { /* handled at loop head */ }
                if (next == p) ++next; // always make progress
                p = next;
            }
        }
        return n_;
    }

    // ---- function detection ----------------------------------------------
    //
    // A function definition is recognized as:
    //   specifier/type tokens...  name '(' params ')' trailer... '{'
    // where the name is the identifier directly before the '(' (or an
    // operator spelling, or ~name for destructors) and the trailer admits
    // cv/ref qualifiers, noexcept/throw, override/final, a trailing return
    // type, and a constructor initializer list. Declarations without a
    // body ('= 0', '= default', ';') are not recorded.
    std::optional<size_t> match_function(size_t ci) {
        size_t p = ci;
        std::string name;
        bool saw_tilde = false;
        size_t name_pos = n_;

        // signature prefix up to '('
        while (p < n_) {
            if (is_punct(p, "(")) {
                if (name.empty()) return std::nullopt;
                break;
            }
            if (is_ident(p)) {
                name = (saw_tilde ? "~" : "") + text(p);
                name_pos = p;
                saw_tilde = false;
                ++p;
                if (is_punct(p, "<")) {
                    auto t = skip_template_args(p);
                    if (t) p = *t;
                }
                continue;
            }
            if (is_punct(p, "~")) {
                saw_tilde = true;
                ++p;
                continue;
            }
            if (is_punct(p, "::") || is_punct(p, "*") || is_punct(p, "&") ||
                is_punct(p, "&&")) {
                ++p;
                continue;
            }
            if (is_punct(p, "[") && is_punct(p + 1, "[")) {
                p = skip_balanced(p, "[", "]");
                continue;
            }
            if (kind(p) == TokenKind::Keyword) {
                const std::string& kw = text(p);
                if (kw == "operator") {
                    // operator spelling: up to '(' (or the '()' pair itself)
                    name = "operator";
                    ++p;
                    if (is_punct(p, "(") && is_punct(p + 1, ")")) {
                        name += "()";
                        p += 2;
                    } else {
                        while (p < n_ && !is_punct(p, "(")) {
                            name += text(p);
                            ++p;
                        }
                    }
                    name_pos = n_; // operator names have no single token
                    if (!is_punct(p, "(")) return std::nullopt;
                    break;
                }
                if (kQualifiers.count(kw) || kTypeKeywords.count(kw)) {
                    ++p;
                    continue;
                }
            }
            return std::nullopt;
        }
        if (p >= n_ || !is_punct(p, "(")) return std::nullopt;

        size_t params_open = p;
        size_t params_end = skip_balanced(p, "(", ")"); // past ')'
        if (params_end >= n_ && !is_punct(params_end - 1, ")")) return std::nullopt;

        // trailer
        size_t q = params_end;
        while (q < n_) {
            if (is_kw(q, "const") || is_kw(q, "volatile") || is_kw(q, "mutable")) {
                ++q;
            } else if (is_ident(q) && (text(q) == "override" || text(q) == "final")) {
                ++q;
            } else if (is_kw(q, "noexcept") || is_kw(q, "throw")) {
                ++q;
                if (is_punct(q, "(")) q = skip_balanced(q, "(", ")");
            } else if (is_punct(q, "&") || is_punct(q, "&&")) {
                ++q;
            } else if (is_punct(q, "->")) {
                ++q;
                while (q < n_ && !is_punct(q, "{") && !is_punct(q, ";") &&
                       !is_punct(q, "=")) {
                    if (is_punct(q, "(")) q = skip_balanced(q, "(", ")");
                    else if (is_punct(q, "<")) {
                        auto t = skip_template_args(q);
                        if (!t) return std::nullopt;
                        q = *t;
                    } else ++q;
                }
            } else if (is_punct(q, ":")) {
                // constructor initializer list
                ++q;
                while (q < n_ && !is_punct(q, "{")) {
                    if (is_punct(q, "(")) q = skip_balanced(q, "(", ")");
                    else if (is_punct(q, ";")) return std::nullopt;
                    else ++q;
                }
            } else {
                break;
            }
        }
        if (!is_punct(q, "{")) return std::nullopt;

        // recognized: collect the fact and walk the body
        FunctionFact fn;
        fn.name = name;
        fn.start_line = tok(ci).line;
        fn.param_count = count_params(params_open, params_end);
        fn.returns_void = return_is_void(ci, name_pos);
        fn.has_preceding_comment = preceding_comment(ci);
        param_scan(params_open, params_end);

        size_t body_end = parse_block(q + 1);
        size_t close = body_end > 0 ? body_end - 1 : q + 1;
        fn.end_line = tok(std::min(close, n_ - 1)).line;
        for (size_t r = q + 1; r < close && r < n_; ++r)
            if (is_kw(r, "return")) ++fn.return_count;
        facts_.functions.push_back(std::move(fn));
        return body_end;
    }

    int count_params(size_t open, size_t end) const {
        // tokens strictly inside the parens
        if (end <= open + 2) return 0;
        if (end == open + 3 && is_kw(open + 1, "void")) return 0;
        int commas = 0, depth = 0;
        for (size_t p = open; p < end; ++p) {
            if (is_punct(p, "(") || is_punct(p, "[") || is_punct(p, "{")) ++depth;
            else if (is_punct(p, ")") || is_punct(p, "]") || is_punct(p, "}")) --depth;
            else if (is_punct(p, ",") && depth == 1) ++commas;
        }
        return commas + 1;
    }

    // Parameters contribute to the declared-variable tallies: a parameter
    // with at least two tokens whose last (before any default value) is
    // an identifier declares that identifier.
    void param_scan(size_t open, size_t end) {
        size_t inner_last = end >= 2 ? end - 2 : 0; // index of ')' - 1
        size_t start = open + 1;
        int depth = 0;
        for (size_t p = open + 1; p <= inner_last + 1 && p < n_; ++p) {
            bool at_close = p > inner_last;
            bool split = false;
            if (!at_close) {
                if (is_punct(p, "(") || is_punct(p, "[") || is_punct(p, "{")) ++depth;
                else if (is_punct(p, ")") || is_punct(p, "]") || is_punct(p, "}")) --depth;
                else if (is_punct(p, ",") && depth == 0) split = true;
            }
            if (!split && !at_close) continue;
            size_t last_ident = n_;
            bool multi_token = p > start + 1;
            for (size_t r = start; r < p; ++r) {
                if (is_punct(r, "=")) break;
                if (is_punct(r, "*")) {
                    ++facts_.declarator_stars;
                    size_t full = code_[r];
                    if (full > 0 && toks_[full - 1].kind != TokenKind::Whitespace &&
                        toks_[full - 1].kind != TokenKind::Newline)
                        ++facts_.declarator_stars_type_bound;
                }
                if (is_ident(r)) last_ident = r;
            }
            if (last_ident != n_ && multi_token) {
                ++facts_.declared_variables;
                facts_.declared_name_chars += static_cast<long>(text(last_ident).size());
            }
            start = p + 1;
        }
    }

    bool return_is_void(size_t sig_start, size_t name_pos) const {
        if (name_pos == n_ || name_pos == 0) return false;
        // walk back over the qualified-name chain to its head
        size_t head = name_pos;
        while (head >= 2 && is_punct(head - 1, "::") &&
               (is_ident(head - 2) || is_kw(head - 2, "operator")))
            head -= 2;
        if (head == 0 || head <= sig_start) return false;
        return is_kw(head - 1, "void");
    }

    bool preceding_comment(size_t ci) const {
        size_t full = code_[ci];
        int start_line = toks_[full].line;
        for (size_t i = full; i-- > 0;) {
            const Token& t = toks_[i];
            if (t.kind == TokenKind::Whitespace || t.kind == TokenKind::Newline)
                continue;
            if (t.kind == TokenKind::LineComment || t.kind == TokenKind::BlockComment) {
                int end_line = t.line + count_newlines(t.text);
                return end_line >= start_line - 2;
            }
            return false;
        }
        return false;
    }

    const std::vector<Token>& toks_;
    std::vector<size_t> code_;
    size_t n_ = 0;
    int depth_ = 0;
    StructuralFacts facts_;
};

} // namespace

StructuralFacts scan_structure(const std::vector<Token>& tokens) {
    StructureScanner scanner(tokens);
    return scanner.run();
}

} // namespace stylepredict
