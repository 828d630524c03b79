#include "ucm/lexer.hpp"

#include <cctype>

namespace ucm {

namespace {

bool isIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool isIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool isDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

} // namespace

std::string_view describe(TokenKind kind)
{
    switch (kind)
    {
    case TokenKind::Ident: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::Label: return "step label";
    case TokenKind::String: return "string";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Colon: return "':'";
    case TokenKind::ColonColon: return "'::'";
    case TokenKind::Comma: return "','";
    case TokenKind::Dot: return "'.'";
    case TokenKind::DotDot: return "'..'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::End: return "end of file";
    }
    return "token";
}

LexResult tokenize(const SourceFile& file)
{
    const std::string& text = file.text();
    LexResult result;
    std::size_t i = 0;
    const std::size_t n = text.size();

    auto push = [&](TokenKind kind, std::size_t start, std::size_t end, std::string value = {}) {
        if (value.empty() && kind != TokenKind::String)
            value = text.substr(start, end - start);
        result.tokens.push_back(Token{kind, std::move(value), start, end});
    };
    auto error = [&](std::size_t start, std::size_t end, std::string message) {
        result.diagnostics.push_back(makeDiagnostic(DiagCode::E000, std::move(message), file.span(start, end)));
    };

    while (i < n)
    {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\f' || c == '\v')
        {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && text[i + 1] == '/')
        {
            while (i < n && text[i] != '\n')
                ++i;
            continue;
        }

        const std::size_t start = i;
        if (isIdentStart(c))
        {
            ++i;
            while (i < n && (isIdentChar(text[i]) ||
                             (text[i] == '-' && i + 1 < n && std::isalpha(static_cast<unsigned char>(text[i + 1])))))
                ++i;
            push(TokenKind::Ident, start, i);
            continue;
        }
        if (isDigit(c))
        {
            while (i < n && isDigit(text[i]))
                ++i;
            if (i < n && std::isalpha(static_cast<unsigned char>(text[i])))
            {
                while (i < n && std::isalnum(static_cast<unsigned char>(text[i])))
                    ++i;
                push(TokenKind::Label, start, i);
                continue;
            }
            if (i + 1 < n && text[i] == '.' && isDigit(text[i + 1]))
            {
                ++i;
                while (i < n && isDigit(text[i]))
                    ++i;
            }
            push(TokenKind::Number, start, i);
            continue;
        }
        if (c == '"')
        {
            ++i;
            std::string value;
            bool closed = false;
            while (i < n && text[i] != '\n')
            {
                if (text[i] == '"')
                {
                    closed = true;
                    ++i;
                    break;
                }
                if (text[i] == '\\' && i + 1 < n)
                {
                    const char esc = text[i + 1];
                    switch (esc)
                    {
                    case 'n': value.push_back('\n'); break;
                    case 't': value.push_back('\t'); break;
                    case '"': value.push_back('"'); break;
                    case '\\': value.push_back('\\'); break;
                    default:
                        error(i, i + 2, std::string("unknown escape sequence '\\") + esc + "'");
                        value.push_back(esc);
                    }
                    i += 2;
                    continue;
                }
                value.push_back(text[i++]);
            }
            if (!closed)
                error(start, i, "unterminated string literal");
            push(TokenKind::String, start, i, std::move(value));
            continue;
        }

        auto two = [&](char a, char b) { return c == a && i + 1 < n && text[i + 1] == b; };
        if (two(':', ':'))
        {
            i += 2;
            push(TokenKind::ColonColon, start, i);
        }
        else if (two('.', '.'))
        {
            i += 2;
            push(TokenKind::DotDot, start, i);
        }
        else if (two('-', '>'))
        {
            i += 2;
            push(TokenKind::Arrow, start, i);
        }
        else
        {
            TokenKind kind;
            switch (c)
            {
            case '{': kind = TokenKind::LBrace; break;
            case '}': kind = TokenKind::RBrace; break;
            case '[': kind = TokenKind::LBracket; break;
            case ']': kind = TokenKind::RBracket; break;
            case ':': kind = TokenKind::Colon; break;
            case ',': kind = TokenKind::Comma; break;
            case '.': kind = TokenKind::Dot; break;
            case '*': kind = TokenKind::Star; break;
            case '-': kind = TokenKind::Minus; break;
            default: {
                // Skip a whole UTF-8 sequence so the message names one character.
                std::size_t len = 1;
                const auto lead = static_cast<unsigned char>(c);
                if (lead >= 0xF0)
                    len = 4;
                else if (lead >= 0xE0)
                    len = 3;
                else if (lead >= 0xC0)
                    len = 2;
                len = std::min(len, n - i);
                error(start, start + len, "unexpected character '" + text.substr(start, len) + "'");
                i += len;
                continue;
            }
            }
            ++i;
            push(kind, start, i);
        }
    }
    result.tokens.push_back(Token{TokenKind::End, {}, n, n});
    return result;
}

} // namespace ucm
