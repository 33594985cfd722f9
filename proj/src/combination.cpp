#include "mcspace/combination.hpp"

#include <cctype>

namespace mcspace {

bool is_symbol_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_symbol_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

namespace {

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;

    void skip()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool done()
    {
        skip();
        return pos >= s.size();
    }
    char peek()
    {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void error(const std::string& why) const
    {
        fail(ErrorKind::ParseError,
             why + " at column " + std::to_string(pos + 1) + " in '" + std::string(s) + "'");
    }
};

Scalar read_rational(Cursor& c)
{
    std::size_t start = c.pos;
    while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
        ++c.pos;
    if (c.pos < c.s.size() && c.s[c.pos] == '/') {
        ++c.pos;
        std::size_t den = c.pos;
        while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
            ++c.pos;
        if (den == c.pos)
            c.error("missing denominator");
    }
    return parse_scalar(std::string(c.s.substr(start, c.pos - start)));
}

std::string read_symbol(Cursor& c)
{
    std::size_t start = c.pos;
    while (c.pos < c.s.size() && is_symbol_char(c.s[c.pos]))
        ++c.pos;
    return std::string(c.s.substr(start, c.pos - start));
}

} // namespace

std::vector<CombinationTerm> parse_combination(std::string_view text)
{
    Cursor c{text};
    std::vector<CombinationTerm> out;
    if (c.done())
        c.error("empty expression");
    bool first = true;
    while (!c.done()) {
        Scalar sign = 1;
        char ch = c.peek();
        if (ch == '+' || ch == '-') {
            sign = ch == '-' ? -1 : 1;
            ++c.pos;
        } else if (!first) {
            c.error("expected '+' or '-'");
        }
        first = false;
        CombinationTerm t{sign, {}};
        ch = c.peek();
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            t.coefficient *= read_rational(c);
            ch = c.peek();
            if (ch == '*') {
                ++c.pos;
                ch = c.peek();
                if (!is_symbol_start(ch))
                    c.error("expected a symbol after '*'");
            }
            if (is_symbol_start(ch))
                t.symbol = read_symbol(c);
        } else if (is_symbol_start(ch)) {
            t.symbol = read_symbol(c);
        } else {
            c.error("expected a term");
        }
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace mcspace
