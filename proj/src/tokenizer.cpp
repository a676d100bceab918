#include "stylepredict/tokenizer.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

namespace stylepredict {

namespace {

const std::unordered_set<std::string_view>& keyword_set() {
    // C++20 keywords plus the C keywords that matter for C-family sources.
    static const std::unordered_set<std::string_view> kw = {
        "alignas", "alignof", "and", "and_eq", "asm", "auto", "bitand",
        "bitor", "bool", "break", "case", "catch", "char", "char8_t",
        "char16_t", "char32_t", "class", "compl", "concept", "const",
        "consteval", "constexpr", "constinit", "const_cast", "continue",
        "co_await", "co_return", "co_yield", "decltype", "default", "delete",
        "do", "double", "dynamic_cast", "else", "enum", "explicit", "export",
        "extern", "false", "float", "for", "friend", "goto", "if", "inline",
        "int", "long", "mutable", "namespace", "new", "noexcept", "not",
        "not_eq", "nullptr", "operator", "or", "or_eq", "private",
        "protected", "public", "register", "reinterpret_cast", "requires",
        "restrict", "return", "short", "signed", "sizeof", "static",
        "static_assert", "static_cast", "struct", "switch", "template",
        "this", "thread_local", "throw", "true", "try", "typedef", "typeid",
        "typename", "union", "unsigned", "using", "virtual", "void",
        "volatile", "wchar_t", "while", "xor", "xor_eq",
    };
    return kw;
}

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

// Multi-character punctuators, longest first (maximal munch).
constexpr std::array<std::string_view, 37> kPunctuators3Plus = {
    "<<=", ">>=", "...", "->*", "<=>",
    "::", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "##", ".*",
    "+", "-", "*", "/", "%", "<", ">", "=", "!", "&",
};

class Scanner {
public:
    explicit Scanner(std::string_view src) : src_(src) {}

    TokenizeResult run() {
        while (pos_ < src_.size()) {
            size_t start = pos_;
            int line = line_, col = col_;
            char c = src_[pos_];
            TokenKind kind;
            if (c == '\n') {
                advance();
                kind = TokenKind::Newline;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f') {
                while (pos_ < src_.size() && is_blank(src_[pos_])) advance();
                kind = TokenKind::Whitespace;
            } else if (c == '\\' && peek(1) == '\n') {
                // Line continuation outside a directive: treat as whitespace.
                advance();
                advance();
                kind = TokenKind::Whitespace;
            } else if (c == '/' && peek(1) == '/') {
                scan_line_comment();
                kind = TokenKind::LineComment;
            } else if (c == '/' && peek(1) == '*') {
                scan_block_comment();
                kind = TokenKind::BlockComment;
            } else if (c == '#' && at_line_start_) {
                scan_directive();
                kind = TokenKind::Preprocessor;
            } else if (c == '"') {
                scan_quoted('"');
                kind = TokenKind::String;
            } else if (c == '\'') {
                scan_quoted('\'');
                kind = TokenKind::Char;
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
                scan_number();
                kind = TokenKind::Number;
            } else if (ident_start(static_cast<unsigned char>(c))) {
                kind = scan_word();
            } else {
                scan_punctuator();
                kind = TokenKind::Punctuator;
            }
            Token tok;
            tok.kind = kind;
            tok.text = std::string(src_.substr(start, pos_ - start));
            tok.line = line;
            tok.column = col;
            if (kind != TokenKind::Whitespace && kind != TokenKind::Newline)
                at_line_start_ = false;
            if (kind == TokenKind::Newline) at_line_start_ = true;
            result_.tokens.push_back(std::move(tok));
        }
        return std::move(result_);
    }

private:
    static bool is_blank(char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
    }

    char peek(size_t ahead) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void scan_line_comment() {
        while (pos_ < src_.size() && src_[pos_] != '\n') {
            // A backslash-newline continues a line comment.
            if (src_[pos_] == '\\' && peek(1) == '\n') advance();
            advance();
        }
    }

    void scan_block_comment() {
        advance(); // '/'
        advance(); // '*'
        while (pos_ < src_.size()) {
            if (src_[pos_] == '*' && peek(1) == '/') {
                advance();
                advance();
                return;
            }
            advance();
        }
        result_.unterminated_construct = true;
    }

    void scan_directive() {
        // Consume to end of line, honoring backslash continuations and
        // swallowing block comments that sit inside the directive.
        while (pos_ < src_.size() && src_[pos_] != '\n') {
            if (src_[pos_] == '\\' && peek(1) == '\n') {
                advance();
                advance();
                continue;
            }
            if (src_[pos_] == '/' && peek(1) == '*') {
                advance();
                advance();
                while (pos_ < src_.size() && !(src_[pos_] == '*' && peek(1) == '/'))
                    advance();
                if (pos_ < src_.size()) {
                    advance();
                    advance();
                } else {
                    result_.unterminated_construct = true;
                }
                continue;
            }
            if (src_[pos_] == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
                break;
            }
            advance();
        }
    }

    // Ordinary or raw string/char literal starting at the quote.
    void scan_quoted(char quote) {
        advance(); // opening quote
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\\' && pos_ + 1 < src_.size()) {
                advance();
                advance();
                continue;
            }
            if (c == quote) {
                advance();
                // literal suffixes (s, sv, _udl) attach to the token
                while (pos_ < src_.size() && ident_char(static_cast<unsigned char>(src_[pos_])))
                    advance();
                return;
            }
            if (c == '\n' && quote == '\'') break; // unterminated char literal
            advance();
        }
        result_.unterminated_construct = true;
    }

    void scan_number() {
        // pp-number: covers ints, floats, hex, binary, suffixes, and
        // digit separators without needing the full grammar.
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (ident_char(static_cast<unsigned char>(c)) || c == '.') {
                char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                advance();
                if ((lower == 'e' || lower == 'p') &&
                    (peek(0) == '+' || peek(0) == '-')) {
                    advance();
                }
            } else if (c == '\'' && std::isalnum(static_cast<unsigned char>(peek(1)))) {
                advance(); // digit separator
            } else {
                break;
            }
        }
    }

    TokenKind scan_word() {
        size_t start = pos_;
        while (pos_ < src_.size() && ident_char(static_cast<unsigned char>(src_[pos_])))
            advance();
        std::string_view word = src_.substr(start, pos_ - start);
        // Encoding prefix directly attached to a quote forms a literal:
        // u8"x", L'c', R"(raw)", uR"(raw)" ...
        if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'')) {
            bool raw = !word.empty() && word.back() == 'R';
            std::string_view prefix = raw ? word.substr(0, word.size() - 1) : word;
            bool enc = prefix.empty() || prefix == "u" || prefix == "U" ||
                       prefix == "L" || prefix == "u8";
            if (enc) {
                char quote = src_[pos_];
                if (raw && quote == '"') {
                    // rewind conceptually: scan_raw_string expects pos at 'R';
                    // we are just past it, so inline the raw scan here.
                    scan_raw_tail();
                    return TokenKind::String;
                }
                scan_quoted(quote);
                return quote == '"' ? TokenKind::String : TokenKind::Char;
            }
        }
        return is_cpp_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier;
    }

    // Raw-string scan with pos_ at the opening '"'.
    void scan_raw_tail() {
        advance(); // "
        std::string delim;
        while (pos_ < src_.size() && src_[pos_] != '(' && src_[pos_] != '\n') {
            delim += src_[pos_];
            advance();
        }
        if (pos_ >= src_.size() || src_[pos_] != '(') {
            result_.unterminated_construct = true;
            return;
        }
        advance();
        std::string closer = ")" + delim + "\"";
        while (pos_ < src_.size()) {
            if (src_[pos_] == ')' && src_.substr(pos_, closer.size()) == closer) {
                for (size_t i = 0; i < closer.size(); ++i) advance();
                while (pos_ < src_.size() && ident_char(static_cast<unsigned char>(src_[pos_])))
                    advance();
                return;
            }
            advance();
        }
        result_.unterminated_construct = true;
    }

    void scan_punctuator() {
        for (std::string_view p : kPunctuators3Plus) {
            if (src_.substr(pos_, p.size()) == p) {
                for (size_t i = 0; i < p.size(); ++i) advance();
                return;
            }
        }
        advance(); // single char (including any stray byte)
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    bool at_line_start_ = true;
    TokenizeResult result_;
};

} // namespace

bool is_cpp_keyword(std::string_view word) {
    return keyword_set().count(word) > 0;
}

const char* token_kind_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::Identifier: return "identifier";
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Number: return "number";
        case TokenKind::String: return "string";
        case TokenKind::Char: return "char";
        case TokenKind::LineComment: return "line_comment";
        case TokenKind::BlockComment: return "block_comment";
        case TokenKind::Punctuator: return "punctuator";
        case TokenKind::Preprocessor: return "preprocessor";
        case TokenKind::Whitespace: return "whitespace";
        case TokenKind::Newline: return "newline";
    }
    return "?";
}

TokenizeResult tokenize(std::string_view source) {
    Scanner scanner(source);
    TokenizeResult r = scanner.run();
    // Invalid UTF-8 is carried through verbatim (round-trip wins); we only
    // flag it so downstream reporting can mention it.
    for (size_t i = 0; i < source.size(); ++i) {
        unsigned char c = source[i];
        if (c < 0x80) continue;
        size_t extra = (c >> 5) == 0x6 ? 1 : (c >> 4) == 0xe ? 2 : (c >> 3) == 0x1e ? 3 : 0;
        if (extra == 0) {
            r.replaced_invalid_utf8 = true;
            continue;
        }
        for (size_t k = 1; k <= extra; ++k) {
            if (i + k >= source.size() || (static_cast<unsigned char>(source[i + k]) >> 6) != 0x2) {
                r.replaced_invalid_utf8 = true;
                break;
            }
        }
        i += extra;
    }
    return r;
}

} // namespace stylepredict
