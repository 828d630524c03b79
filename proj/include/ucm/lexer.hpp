// Tokenizer for the .ucm textual syntax.
#pragma once

#include "ucm/diagnostic.hpp"
#include "ucm/source.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ucm {

enum class TokenKind
{
    Ident,      // letters, digits, '_' and inner '-' (user-goal, interrupt-fail)
    Number,     // 12 or 2.5
    Label,      // digit-led word with letters: 2a, 2a1, 6b
    String,     // "..." with \" \\ \n \t escapes; value holds the unescaped text
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Colon,
    ColonColon,
    Comma,
    Dot,
    DotDot,
    Star,
    Arrow,
    Minus,
    End,
};

std::string_view describe(TokenKind kind);

struct Token
{
    TokenKind kind = TokenKind::End;
    std::string value;
    std::size_t start = 0;
    std::size_t end = 0;

    [[nodiscard]] bool is(TokenKind k) const { return kind == k; }
    [[nodiscard]] bool isWord(std::string_view word) const { return kind == TokenKind::Ident && value == word; }
};

struct LexResult
{
    std::vector<Token> tokens; // always terminated by an End token
    Diagnostics diagnostics;
};

/// Tokenizes a normalized source buffer. `//` comments and whitespace are
/// skipped. Lexical errors produce E000 diagnostics; lexing continues past
/// them.
LexResult tokenize(const SourceFile& file);

} // namespace ucm
