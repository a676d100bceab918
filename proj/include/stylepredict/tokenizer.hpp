#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace stylepredict {

enum class TokenKind {
    Identifier,
    Keyword,
    Number,
    String,
    Char,
    LineComment,
    BlockComment,
    Punctuator,
    Preprocessor,
    Whitespace,
    Newline,
};

struct Token {
    TokenKind kind;
    std::string text;
    int line = 1;   // 1-based
    int column = 1; // 1-based, bytes
};

struct TokenizeResult {
    std::vector<Token> tokens;
    // Lint flags; the token stream is still complete and lossless.
    bool replaced_invalid_utf8 = false;
    bool unterminated_construct = false;
};

// Lossless lexical scan of C/C++ source. Concatenating the token texts
// reproduces the input byte for byte. Comments, string/char literals
// (including raw strings and escapes), preprocessor directives, and line
// continuations are isolated so that keywords inside them are never seen
// as code.
//
// A preprocessor directive ('#' first non-whitespace on a line) becomes a
// single Preprocessor token spanning the directive including backslash
// continuations; the terminating newline stays a separate Newline token.
TokenizeResult tokenize(std::string_view source);

bool is_cpp_keyword(std::string_view word);

const char* token_kind_name(TokenKind kind);

} // namespace stylepredict
