#include "mto/toml.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <set>
#include <vector>

namespace mto {

namespace {

using nlohmann::json;

bool is_bare_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

struct Parser {
    const std::string& s;
    std::size_t i = 0;
    int line = 1;
    json root = json::object();
    json* current = &root;
    std::set<std::string> defined;

    explicit Parser(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("config parse error at line " + std::to_string(line) + ": " + msg);
    }

    bool eof() const { return i >= s.size(); }
    char peek() const { return eof() ? '\0' : s[i]; }

    char advance() {
        char c = s[i++];
        if (c == '\n') ++line;
        return c;
    }

    void skip_ws() {
        while (!eof() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }

    void skip_comment() {
        if (peek() == '#')
            while (!eof() && s[i] != '\n') ++i;
    }

    // Whitespace, comments, and newlines; used between top-level constructs
    // and inside arrays.
    void skip_filler() {
        for (;;) {
            skip_ws();
            skip_comment();
            if (peek() == '\r') {
                ++i;
                continue;
            }
            if (peek() == '\n') {
                advance();
                continue;
            }
            return;
        }
    }

    void expect_line_end() {
        skip_ws();
        skip_comment();
        if (peek() == '\r') ++i;
        if (eof()) return;
        if (peek() != '\n') fail("expected end of line");
        advance();
    }

    std::string parse_basic_string() {
        advance();
        if (peek() == '"' && i + 1 < s.size() && s[i + 1] == '"') fail("multiline strings are not supported");
        std::string out;
        for (;;) {
            if (eof() || peek() == '\n') fail("unterminated string");
            char c = advance();
            if (c == '"') return out;
            if (c != '\\') {
                out.push_back(c);
                continue;
            }
            if (eof()) fail("unterminated escape");
            char e = advance();
            switch (e) {
            case 'b': out.push_back('\b'); break;
            case 't': out.push_back('\t'); break;
            case 'n': out.push_back('\n'); break;
            case 'f': out.push_back('\f'); break;
            case 'r': out.push_back('\r'); break;
            case '"': out.push_back('"'); break;
            case '\\': out.push_back('\\'); break;
            case '/': out.push_back('/'); break;
            case 'u': {
                if (i + 4 > s.size()) fail("truncated unicode escape");
                unsigned cp = 0;
                for (int k = 0; k < 4; ++k) {
                    char h = advance();
                    cp <<= 4;
                    if (h >= '0' && h <= '9')
                        cp += static_cast<unsigned>(h - '0');
                    else if (h >= 'a' && h <= 'f')
                        cp += static_cast<unsigned>(h - 'a' + 10);
                    else if (h >= 'A' && h <= 'F')
                        cp += static_cast<unsigned>(h - 'A' + 10);
                    else
                        fail("invalid unicode escape");
                }
                if (cp < 0x80) {
                    out.push_back(static_cast<char>(cp));
                } else if (cp < 0x800) {
                    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
                    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
                } else {
                    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
                    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
                    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
                }
                break;
            }
            default: fail(std::string("unsupported escape: \\") + e);
            }
        }
    }

    std::string parse_literal_string() {
        advance();
        std::string out;
        for (;;) {
            if (eof() || peek() == '\n') fail("unterminated string");
            char c = advance();
            if (c == '\'') return out;
            out.push_back(c);
        }
    }

    std::string parse_key_segment() {
        if (peek() == '"') return parse_basic_string();
        if (peek() == '\'') return parse_literal_string();
        std::string out;
        while (!eof() && is_bare_key_char(peek())) out.push_back(advance());
        if (out.empty()) fail("expected a key");
        return out;
    }

    std::vector<std::string> parse_dotted_key() {
        std::vector<std::string> keys{parse_key_segment()};
        for (;;) {
            skip_ws();
            if (peek() != '.') return keys;
            advance();
            skip_ws();
            keys.push_back(parse_key_segment());
        }
    }

    json parse_number_or_bool() {
        std::string tok;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.' || c == '_')
                tok.push_back(advance());
            else
                break;
        }
        if (tok.empty()) fail("expected a value");
        if (tok == "true") return true;
        if (tok == "false") return false;
        std::string body = tok;
        bool neg = false;
        if (body[0] == '+' || body[0] == '-') {
            neg = body[0] == '-';
            body.erase(0, 1);
        }
        if (body == "inf") return neg ? -kInfToml() : kInfToml();
        if (body == "nan") return std::nan("");
        if (body.size() > 1 && body[0] == '0' && (body[1] == 'x' || body[1] == 'o' || body[1] == 'b'))
            fail("unsupported number format: " + tok);
        std::string digits;
        for (std::size_t k = 0; k < tok.size(); ++k) {
            if (tok[k] == '_') {
                bool ok = k > 0 && k + 1 < tok.size() && std::isdigit(static_cast<unsigned char>(tok[k - 1])) &&
                          std::isdigit(static_cast<unsigned char>(tok[k + 1]));
                if (!ok) fail("misplaced underscore in number: " + tok);
                continue;
            }
            digits.push_back(tok[k]);
        }
        bool is_float = digits.find('.') != std::string::npos || digits.find('e') != std::string::npos ||
                        digits.find('E') != std::string::npos;
        std::size_t used = 0;
        if (is_float) {
            double v = 0.0;
            try {
                v = std::stod(digits, &used);
            } catch (const std::exception&) {
                fail("invalid number: " + tok);
            }
            if (used != digits.size()) fail("unsupported value: " + tok);
            return v;
        }
        long long v = 0;
        try {
            v = std::stoll(digits, &used);
        } catch (const std::exception&) {
            fail("invalid number: " + tok);
        }
        if (used != digits.size()) fail("unsupported value: " + tok);
        return v;
    }

    static double kInfToml() { return std::numeric_limits<double>::infinity(); }

    json parse_array() {
        advance();
        json out = json::array();
        for (;;) {
            skip_filler();
            if (eof()) fail("unterminated array");
            if (peek() == ']') {
                advance();
                return out;
            }
            out.push_back(parse_value());
            skip_filler();
            if (peek() == ',') {
                advance();
                continue;
            }
            if (peek() == ']') {
                advance();
                return out;
            }
            fail("expected ',' or ']' in array");
        }
    }

    json parse_inline_table() {
        advance();
        json out = json::object();
        skip_ws();
        if (peek() == '}') {
            advance();
            return out;
        }
        for (;;) {
            skip_ws();
            auto keys = parse_dotted_key();
            skip_ws();
            if (peek() != '=') fail("expected '=' in inline table");
            advance();
            skip_ws();
            insert_value(out, keys, parse_value());
            skip_ws();
            if (peek() == ',') {
                advance();
                continue;
            }
            if (peek() == '}') {
                advance();
                return out;
            }
            fail("expected ',' or '}' in inline table");
        }
    }

    json parse_value() {
        char c = peek();
        if (c == '"') return parse_basic_string();
        if (c == '\'') return parse_literal_string();
        if (c == '[') return parse_array();
        if (c == '{') return parse_inline_table();
        return parse_number_or_bool();
    }

    void insert_value(json& table, const std::vector<std::string>& keys, json value) {
        json* node = &table;
        for (std::size_t k = 0; k + 1 < keys.size(); ++k) {
            json& child = (*node)[keys[k]];
            if (child.is_null()) child = json::object();
            if (!child.is_object()) fail("key path crosses a non-table value: " + keys[k]);
            node = &child;
        }
        if (node->contains(keys.back())) fail("duplicate key: " + keys.back());
        (*node)[keys.back()] = std::move(value);
    }

    json* walk_tables(const std::vector<std::string>& keys, std::size_t count) {
        json* node = &root;
        for (std::size_t k = 0; k < count; ++k) {
            json& child = (*node)[keys[k]];
            if (child.is_null()) child = json::object();
            if (child.is_array()) {
                if (child.empty() || !child.back().is_object()) fail("key path crosses a non-table array");
                node = &child.back();
                continue;
            }
            if (!child.is_object()) fail("key path crosses a non-table value: " + keys[k]);
            node = &child;
        }
        return node;
    }

    void parse_table_header() {
        advance();
        bool array_of_tables = peek() == '[';
        if (array_of_tables) advance();
        skip_ws();
        auto keys = parse_dotted_key();
        skip_ws();
        if (peek() != ']') fail("expected ']' in table header");
        advance();
        if (array_of_tables) {
            if (peek() != ']') fail("expected ']]' in table header");
            advance();
        }
        expect_line_end();
        json* parent = walk_tables(keys, keys.size() - 1);
        json& slot = (*parent)[keys.back()];
        std::string path;
        for (const auto& k : keys) path += "/" + k;
        if (array_of_tables) {
            if (slot.is_null()) slot = json::array();
            if (!slot.is_array()) fail("table array conflicts with existing key: " + keys.back());
            slot.push_back(json::object());
            current = &slot.back();
            return;
        }
        if (slot.is_null()) slot = json::object();
        if (!slot.is_object()) fail("table conflicts with existing key: " + keys.back());
        if (!defined.insert(path).second) fail("table defined twice: " + keys.back());
        current = &slot;
    }

    json parse_document() {
        for (;;) {
            skip_filler();
            if (eof()) return root;
            if (peek() == '[') {
                parse_table_header();
                continue;
            }
            auto keys = parse_dotted_key();
            skip_ws();
            if (peek() != '=') fail("expected '=' after key");
            advance();
            skip_ws();
            insert_value(*current, keys, parse_value());
            expect_line_end();
        }
    }
};

} // namespace

nlohmann::json parse_toml(const std::string& text) { return Parser(text).parse_document(); }

nlohmann::json parse_toml_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_toml(text);
}

} // namespace mto
