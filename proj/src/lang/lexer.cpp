// Copyright 2026 The qisa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qisa/lang/lexer.hpp"

#include <array>
#include <cctype>

namespace qisa::lang {

namespace {

constexpr std::array kKeywords = {
    std::string_view{"REG"},    std::string_view{"INI"},   std::string_view{"QFT"},
    std::string_view{"REA"},    std::string_view{"ENT"},   std::string_view{"DIF"},
    std::string_view{"PHA"},    std::string_view{"ANN"},   std::string_view{"REPEAT"},
    std::string_view{"MODEXP"}, std::string_view{"TABLE"}, std::string_view{"DIM"},
    std::string_view{"ISQRT"},  std::string_view{"GROVER_ITERS"}, std::string_view{"PI"},
    // reserved so that no program can name a register after a control-flow word
    std::string_view{"IF"}, std::string_view{"JMP"}, std::string_view{"CALL"},
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (i_ < src_.size()) {
            const char c = src_[i_];
            if (c == '\n') {
                advance();
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r') {
                advance();
                continue;
            }
            if (c == ';') {
                while (i_ < src_.size() && src_[i_] != '\n') {
                    advance();
                }
                continue;
            }
            const SourcePos start{line_, col_};
            const std::size_t begin = i_;
            if (ident_start(c)) {
                while (i_ < src_.size() && ident_char(src_[i_])) {
                    advance();
                }
                const std::string_view word = src_.substr(begin, i_ - begin);
                out.push_back({is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, std::string(word), start});
            } else if (digit(c)) {
                out.push_back(number(begin, start));
            } else if (c == '"') {
                out.push_back(string(begin, start));
            } else if (c == ',' || c == '(' || c == ')' || c == '{' || c == '}' || c == '+' || c == '-' || c == '*' ||
                       c == '/') {
                advance();
                out.push_back({TokenKind::Punct, std::string(1, c), start});
            } else {
                throw SourceError(ErrorCode::LexError, start, "illegal character " + describe(c));
            }
        }
        return out;
    }

  private:
    static std::string describe(char c) {
        const auto u = static_cast<unsigned char>(c);
        if (u >= 0x20 && u < 0x7F) {
            return std::string("'") + c + "'";
        }
        static constexpr char hex[] = "0123456789ABCDEF";
        return std::string("byte 0x") + hex[u >> 4U] + hex[u & 0xFU];
    }

    void advance() {
        if (src_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    Token number(std::size_t begin, SourcePos start) {
        bool is_float = false;
        while (i_ < src_.size() && digit(src_[i_])) {
            advance();
        }
        if (i_ < src_.size() && src_[i_] == '.') {
            if (i_ + 1 >= src_.size() || !digit(src_[i_ + 1])) {
                throw SourceError(ErrorCode::LexError, {line_, col_}, "expected digits after '.'");
            }
            is_float = true;
            advance();
            while (i_ < src_.size() && digit(src_[i_])) {
                advance();
            }
        }
        if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
            std::size_t j = i_ + 1;
            if (j < src_.size() && (src_[j] == '+' || src_[j] == '-')) {
                ++j;
            }
            if (j >= src_.size() || !digit(src_[j])) {
                throw SourceError(ErrorCode::LexError, {line_, col_}, "malformed exponent");
            }
            is_float = true;
            while (i_ < j) {
                advance();
            }
            while (i_ < src_.size() && digit(src_[i_])) {
                advance();
            }
        }
        if (i_ < src_.size() && ident_char(src_[i_])) {
            throw SourceError(ErrorCode::LexError, {line_, col_}, "illegal character " + describe(src_[i_]) +
                                                                     " in number");
        }
        return {is_float ? TokenKind::Float : TokenKind::Integer, std::string(src_.substr(begin, i_ - begin)), start};
    }

    Token string(std::size_t begin, SourcePos start) {
        advance(); // opening quote
        while (true) {
            if (i_ >= src_.size() || src_[i_] == '\n') {
                throw SourceError(ErrorCode::LexError, start, "unterminated string");
            }
            const char c = src_[i_];
            if (c == '\\') {
                if (i_ + 1 >= src_.size() || (src_[i_ + 1] != '"' && src_[i_ + 1] != '\\')) {
                    throw SourceError(ErrorCode::LexError, {line_, col_}, "unsupported escape");
                }
                advance();
                advance();
                continue;
            }
            advance();
            if (c == '"') {
                break;
            }
        }
        return {TokenKind::String, std::string(src_.substr(begin, i_ - begin)), start};
    }

    std::string_view src_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

} // namespace

std::string_view to_string(TokenKind kind) noexcept {
    switch (kind) {
    case TokenKind::Keyword:
        return "keyword";
    case TokenKind::Identifier:
        return "identifier";
    case TokenKind::Integer:
        return "integer";
    case TokenKind::Float:
        return "float";
    case TokenKind::String:
        return "string";
    case TokenKind::Punct:
        return "punctuation";
    }
    return "token";
}

bool is_keyword(std::string_view word) noexcept {
    for (std::string_view k : kKeywords) {
        if (k == word) {
            return true;
        }
    }
    return false;
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

std::string unquote(std::string_view lexeme) {
    std::string out;
    if (lexeme.size() < 2) {
        return out;
    }
    for (std::size_t i = 1; i + 1 < lexeme.size(); ++i) {
        if (lexeme[i] == '\\' && i + 2 < lexeme.size()) {
            ++i;
        }
        out += lexeme[i];
    }
    return out;
}

std::string quote(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    out += '"';
    return out;
}

} // namespace qisa::lang
