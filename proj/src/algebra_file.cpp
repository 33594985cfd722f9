#include "mcspace/algebra_file.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mcspace/combination.hpp"

namespace mcspace {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& reason)
{
    fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + reason);
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_identifier(const std::string& s)
{
    if (s.empty() || !is_symbol_start(s[0]))
        return false;
    for (char c : s)
        if (!is_symbol_char(c))
            return false;
    return true;
}

int parse_int(const std::string& s, int line)
{
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        parse_fail(line, "expected an integer, got '" + s + "'");
    }
    if (used != s.size())
        parse_fail(line, "expected an integer, got '" + s + "'");
    return v;
}

struct Pending {
    int line;
    std::string text;
};

} // namespace

AlgebraFile parse_algebra_file(const std::string& text)
{
    std::string name;
    std::vector<std::string> symbols;
    std::vector<int> degrees;
    std::map<std::string, std::size_t> index;
    std::map<std::size_t, Pending> diffs;
    std::map<std::pair<std::size_t, std::size_t>, int> bracket_lines; // unordered pair -> line
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, Pending>> brackets;
    std::map<std::size_t, int> weights;

    auto lookup = [&](const std::string& sym, int line) {
        auto it = index.find(sym);
        if (it == index.end())
            parse_fail(line, "unknown symbol '" + sym + "'");
        return it->second;
    };

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty())
            continue;

        if (s[0] == '[') {
            auto close = s.find(']');
            auto eq = s.find('=');
            if (close == std::string::npos || eq == std::string::npos || eq < close)
                parse_fail(line, "expected '[g,h] = combination'");
            auto inside = s.substr(1, close - 1);
            auto comma = inside.find(',');
            if (comma == std::string::npos)
                parse_fail(line, "expected ',' inside the bracket");
            auto g = trim(inside.substr(0, comma)), h = trim(inside.substr(comma + 1));
            if (!trim(s.substr(close + 1, eq - close - 1)).empty())
                parse_fail(line, "unexpected text before '='");
            auto i = lookup(g, line), j = lookup(h, line);
            auto key = std::minmax(i, j);
            auto [it, fresh] = bracket_lines.emplace(std::make_pair(key.first, key.second), line);
            if (!fresh)
                parse_fail(line, "bracket [" + g + "," + h + "] already defined on line " +
                                     std::to_string(it->second));
            brackets.push_back({{i, j}, {line, s.substr(eq + 1)}});
            continue;
        }

        std::istringstream words(s);
        std::string kw;
        words >> kw;
        if (kw == "algebra") {
            std::string n, extra;
            words >> n;
            if (!is_identifier(n) || (words >> extra))
                parse_fail(line, "expected 'algebra <name>'");
            if (!name.empty())
                parse_fail(line, "algebra name given twice");
            name = n;
        } else if (kw == "gen") {
            std::string sym, deg, extra;
            words >> sym >> deg;
            if (!is_identifier(sym) || deg.empty() || (words >> extra))
                parse_fail(line, "expected 'gen <symbol> <chain degree>'");
            if (index.count(sym))
                parse_fail(line, "generator '" + sym + "' declared twice");
            index[sym] = symbols.size();
            symbols.push_back(sym);
            degrees.push_back(-parse_int(deg, line));
        } else if (kw == "d") {
            auto eq = s.find('=');
            if (eq == std::string::npos)
                parse_fail(line, "expected 'd <symbol> = combination'");
            auto sym = trim(s.substr(1, eq - 1));
            auto i = lookup(sym, line);
            if (diffs.count(i))
                parse_fail(line, "d " + sym + " already defined on line " + std::to_string(diffs.at(i).line));
            diffs[i] = {line, s.substr(eq + 1)};
        } else if (kw == "weight") {
            std::string sym, w, extra;
            words >> sym >> w;
            if (sym.empty() || w.empty() || (words >> extra))
                parse_fail(line, "expected 'weight <symbol> <positive integer>'");
            auto i = lookup(sym, line);
            int value = parse_int(w, line);
            if (value < 1)
                parse_fail(line, "weights are positive");
            if (weights.count(i))
                parse_fail(line, "weight of '" + sym + "' given twice");
            weights[i] = value;
        } else {
            parse_fail(line, "unknown statement '" + kw + "'");
        }
    }
    if (name.empty())
        fail(ErrorKind::ParseError, "missing 'algebra <name>' line");

    const std::size_t n = symbols.size();
    auto combo = [&](const Pending& p) {
        Vec v(n);
        std::vector<CombinationTerm> terms;
        try {
            terms = parse_combination(p.text);
        } catch (const Error& e) {
            std::string m = e.what();
            const std::string prefix = std::string(to_string(ErrorKind::ParseError)) + ": ";
            parse_fail(p.line, m.rfind(prefix, 0) == 0 ? m.substr(prefix.size()) : m);
        }
        for (const auto& t : terms) {
            if (t.symbol.empty()) {
                if (t.coefficient != 0)
                    parse_fail(p.line, "bare nonzero number in a combination");
                continue;
            }
            v[lookup(t.symbol, p.line)] += t.coefficient;
        }
        return v;
    };

    GradedBasis basis(symbols, degrees);
    Matrix d(n, n);
    for (const auto& [i, p] : diffs) {
        auto v = combo(p);
        for (std::size_t r = 0; r < n; ++r)
            d(r, i) = v[r];
    }
    BracketTable table;
    for (const auto& [key, p] : brackets) {
        auto v = combo(p);
        if (!v.is_zero())
            table[key] = v;
    }
    std::optional<std::vector<int>> w;
    if (!weights.empty()) {
        if (weights.size() != n)
            for (std::size_t i = 0; i < n; ++i)
                if (!weights.count(i))
                    fail(ErrorKind::ParseError, "weight missing for '" + symbols[i] + "'");
        std::vector<int> ws(n);
        for (const auto& [i, value] : weights)
            ws[i] = value;
        w = ws;
    }
    return {name, Dgla::checked(basis, d, antisymmetrize(table, degrees), w)};
}

AlgebraFile load_algebra_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        fail(ErrorKind::ParseError, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_algebra_file(ss.str());
}

std::string write_algebra_file(const std::string& name, const Dgla& L)
{
    std::ostringstream out;
    const auto& sym = L.basis().symbols;
    out << "algebra " << name << "\n";
    for (std::size_t i = 0; i < L.dim(); ++i)
        out << "gen " << sym[i] << " " << -L.degree(i) << "\n";
    for (std::size_t i = 0; i < L.dim(); ++i) {
        auto v = L.differential(L.unit(i));
        if (!v.is_zero())
            out << "d " << sym[i] << " = " << L.render(v) << "\n";
    }
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = i; j < L.dim(); ++j) {
            auto v = L.bracket(L.unit(i), L.unit(j));
            if (!v.is_zero())
                out << "[" << sym[i] << "," << sym[j] << "] = " << L.render(v) << "\n";
        }
    if (L.has_filtration() && !L.filtration_from_lcs() && L.dim() > 0)
        for (std::size_t i = 0; i < L.dim(); ++i)
            out << "weight " << sym[i] << " " << L.weights()[i] << "\n";
    return out.str();
}

} // namespace mcspace
