#include "mcspace/corpus.hpp"

#include "mcspace/dold_kan.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace mcspace::corpus {
namespace {

struct Builder {
    std::vector<std::string> symbols;
    std::vector<int> degrees;
    std::vector<std::pair<std::pair<std::string, std::string>, std::vector<std::pair<Scalar, std::string>>>> brackets;
    std::vector<std::pair<std::string, std::vector<std::pair<Scalar, std::string>>>> diffs;

    void gen(const std::string& s, int cohomological)
    {
        symbols.push_back(s);
        degrees.push_back(cohomological);
    }
    void d(const std::string& s, std::vector<std::pair<Scalar, std::string>> rhs)
    {
        diffs.push_back({s, std::move(rhs)});
    }
    void br(const std::string& a, const std::string& b, std::vector<std::pair<Scalar, std::string>> rhs)
    {
        brackets.push_back({{a, b}, std::move(rhs)});
    }

    Dgla build() const
    {
        GradedBasis basis(symbols, degrees);
        const std::size_t n = basis.size();
        auto vec = [&](const std::vector<std::pair<Scalar, std::string>>& rhs) {
            Vec v(n);
            for (const auto& [c, s] : rhs)
                v[*basis.find(s)] += c;
            return v;
        };
        Matrix dm(n, n);
        for (const auto& [s, rhs] : diffs) {
            Vec v = vec(rhs);
            for (std::size_t i = 0; i < n; ++i)
                dm(i, *basis.find(s)) = v[i];
        }
        BracketTable t;
        for (const auto& [pr, rhs] : brackets)
            t[{*basis.find(pr.first), *basis.find(pr.second)}] = vec(rhs);
        return Dgla::checked(basis, dm, antisymmetrize(t, degrees));
    }
};

using Monomial = std::vector<int>;

struct Cdga {
    const std::vector<CdgaGenerator>& gens;
    int max_length;

    int length(const Monomial& m) const
    {
        int l = 0;
        for (int e : m)
            l += e;
        return l;
    }
    int degree(const Monomial& m) const
    {
        int d = 0;
        for (std::size_t i = 0; i < m.size(); ++i)
            d += m[i] * gens[i].degree;
        return d;
    }
    bool odd(std::size_t i) const { return gens[i].degree % 2 != 0; }

    // a * b as (monomial, sign); sign 0 when the product vanishes
    std::pair<Monomial, int> multiply(const Monomial& a, const Monomial& b) const
    {
        Monomial m(a.size());
        int sign = 1;
        for (std::size_t i = 0; i < a.size(); ++i) {
            m[i] = a[i] + b[i];
            if (odd(i) && m[i] > 1)
                return {m, 0};
        }
        if (length(m) > max_length)
            return {m, 0};
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (odd(i) && odd(j) && (a[i] * b[j]) % 2 != 0)
                    sign = -sign;
        return {m, sign};
    }

    std::map<Monomial, Scalar> differential(const Monomial& m) const
    {
        std::map<Monomial, Scalar> out;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0)
                continue;
            Monomial prefix(m.size(), 0), rest = m;
            for (std::size_t j = 0; j < i; ++j) {
                prefix[j] = m[j];
                rest[j] = 0;
            }
            rest[i] -= 1;
            Scalar coeff = odd(i) ? 1 : m[i];
            if (degree(prefix) % 2 != 0)
                coeff = -coeff;
            for (const auto& [j, c] : gens[i].d) {
                Monomial g(m.size(), 0);
                g[j] = 1;
                auto [pg, s1] = multiply(prefix, g);
                if (s1 == 0)
                    continue;
                auto [full, s2] = multiply(pg, rest);
                if (s2 == 0)
                    continue;
                out[full] += coeff * c * s1 * s2;
            }
        }
        for (auto it = out.begin(); it != out.end();)
            it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
        return out;
    }

    std::vector<Monomial> monomials() const
    {
        std::vector<Monomial> all;
        Monomial m(gens.size(), 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
            if (i == gens.size()) {
                if (used > 0)
                    all.push_back(m);
                return;
            }
            int cap = odd(i) ? 1 : max_length - used;
            for (int e = 0; e <= std::min(cap, max_length - used); ++e) {
                m[i] = e;
                rec(i + 1, used + e);
            }
            m[i] = 0;
        };
        rec(0, 0);
        std::stable_sort(all.begin(), all.end(), [&](const Monomial& a, const Monomial& b) {
            if (length(a) != length(b))
                return length(a) < length(b);
            return a > b;
        });
        return all;
    }

    std::string name(const Monomial& m) const
    {
        std::string s;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0)
                continue;
            s += gens[i].name;
            if (m[i] > 1)
                s += std::to_string(m[i]);
        }
        return s;
    }
};

Scalar sq(int a)
{
    return Scalar(a);
}

} // namespace

LieAlgebraData sl2()
{
    LieAlgebraData g{"sl2", {"E", "F", "H"}, {}};
    auto v = [](int e, int f, int h) { return Vec{sq(e), sq(f), sq(h)}; };
    g.table[{2, 0}] = v(2, 0, 0);
    g.table[{0, 2}] = v(-2, 0, 0);
    g.table[{2, 1}] = v(0, -2, 0);
    g.table[{1, 2}] = v(0, 2, 0);
    g.table[{0, 1}] = v(0, 0, 1);
    g.table[{1, 0}] = v(0, 0, -1);
    return g;
}

LieAlgebraData heisenberg3()
{
    LieAlgebraData g{"heis", {"X", "Y", "Z"}, {}};
    g.table[{0, 1}] = Vec{0, 0, 1};
    g.table[{1, 0}] = Vec{0, 0, -1};
    return g;
}

LieAlgebraData abelian_lie(std::size_t n)
{
    LieAlgebraData g{"ab" + std::to_string(n), {}, {}};
    for (std::size_t i = 0; i < n; ++i)
        g.symbols.push_back(n == 1 ? "A" : "A" + std::to_string(i + 1));
    return g;
}

Dgla truncated_tensor(const std::vector<CdgaGenerator>& generators, int max_length,
                      const LieAlgebraData& g)
{
    Cdga A{generators, max_length};
    auto monos = A.monomials();
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < monos.size(); ++i)
        index[monos[i]] = i;
    const std::size_t gd = g.symbols.size();
    const std::size_t n = monos.size() * gd;

    std::vector<std::string> syms;
    std::vector<int> degs;
    std::vector<int> weights;
    for (const auto& m : monos)
        for (std::size_t a = 0; a < gd; ++a) {
            syms.push_back(A.name(m) + "_" + g.symbols[a]);
            degs.push_back(A.degree(m));
            weights.push_back(A.length(m));
        }

    Matrix d(n, n);
    for (std::size_t i = 0; i < monos.size(); ++i)
        for (const auto& [m, c] : A.differential(monos[i]))
            for (std::size_t a = 0; a < gd; ++a)
                d(index.at(m) * gd + a, i * gd + a) += c;

    BracketTable t;
    for (std::size_t i = 0; i < monos.size(); ++i)
        for (std::size_t j = 0; j < monos.size(); ++j) {
            auto [m, s] = A.multiply(monos[i], monos[j]);
            if (s == 0)
                continue;
            const std::size_t k = index.at(m);
            for (const auto& [key, v] : g.table) {
                Vec out(n);
                for (std::size_t c = 0; c < gd; ++c)
                    out[k * gd + c] = s * v[c];
                t[{i * gd + key.first, j * gd + key.second}] = std::move(out);
            }
        }
    return Dgla::checked(GradedBasis(syms, degs), d, t, weights);
}

Dgla abelian(int chain_degree)
{
    Builder b;
    b.gen("e", -chain_degree);
    return b.build();
}

Dgla xab()
{
    Builder b;
    b.gen("x", 0);
    b.gen("a", 1);
    b.gen("b", 1);
    b.d("x", {{1, "a"}});
    b.br("x", "a", {{1, "b"}});
    return b.build();
}

Dgla xab_shifted()
{
    Builder b;
    b.gen("x", -2);
    b.gen("a", -1);
    b.gen("b", -3);
    b.d("x", {{1, "a"}});
    b.br("x", "a", {{1, "b"}});
    return b.build();
}

Dgla heisenberg()
{
    Builder b;
    b.gen("x", 0);
    b.gen("y", 0);
    b.gen("z", 0);
    b.br("x", "y", {{1, "z"}});
    return b.build();
}

Dgla filiform(int n)
{
    Builder b;
    for (int i = 1; i <= n; ++i)
        b.gen("e" + std::to_string(i), 0);
    for (int i = 2; i < n; ++i)
        b.br("e1", "e" + std::to_string(i), {{1, "e" + std::to_string(i + 1)}});
    return b.build();
}

Dgla upper_triangular(int k)
{
    Builder b;
    auto name = [](int i, int j) { return "E" + std::to_string(i) + std::to_string(j); };
    for (int gap = 1; gap < k; ++gap)
        for (int i = 1; i + gap <= k; ++i)
            b.gen(name(i, i + gap), 0);
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j)
            for (int l = j + 1; l <= k; ++l)
                b.br(name(i, j), name(j, l), {{1, name(i, l)}});
    return b.build();
}

Dgla wsl2()
{
    return truncated_tensor({{"w", -2, {}}}, 3, sl2());
}

Dgla deligne_sl2()
{
    return truncated_tensor({{"u", 0, {{1, Scalar(1)}}}, {"v", 1, {}}}, 2, sl2());
}

Dgla uw_sl2()
{
    return truncated_tensor({{"u", -1, {}}, {"w", -2, {{0, Scalar(1)}}}}, 2, sl2());
}

std::vector<std::string> names()
{
    return {"abelian_c0", "abelian_c1", "abelian_c2", "abelian_c3", "xab",         "xab_shifted", "heisenberg",
            "filiform4",  "filiform5",  "n4",         "wsl2",       "deligne_sl2", "uw_sl2"};
}

Dgla named(const std::string& name)
{
    if (name == "abelian_c0")
        return abelian(0);
    if (name == "abelian_c1")
        return abelian(1);
    if (name == "abelian_c2")
        return abelian(2);
    if (name == "abelian_c3")
        return abelian(3);
    if (name == "xab")
        return xab();
    if (name == "xab_shifted")
        return xab_shifted();
    if (name == "heisenberg")
        return heisenberg();
    if (name == "filiform4")
        return filiform(4);
    if (name == "filiform5")
        return filiform(5);
    if (name == "n4")
        return upper_triangular(4);
    if (name == "wsl2")
        return wsl2();
    if (name == "uw_sl2")
        return uw_sl2();
    if (name == "deligne_sl2")
        return deligne_sl2();
    fail(ErrorKind::ParseError, "unknown corpus algebra '" + name + "'");
}

// ---------------------------------------------------------------- randomness

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

Scalar small_rational(std::mt19937_64& rng, int bound)
{
    std::int64_t num = 0;
    while (num == 0)
        num = uniform(rng, -bound, bound);
    Scalar s(static_cast<long>(num), static_cast<unsigned long>(uniform(rng, 1, 3)));
    s.canonicalize();
    return s;
}

Vec random_element(const Dgla& L, int degree, std::mt19937_64& rng, std::size_t density)
{
    Vec v(L.dim());
    auto idx = L.basis().indices_in_degree(degree);
    if (idx.empty())
        return v;
    for (std::size_t k = 0; k < density; ++k)
        v[idx[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(idx.size()) - 1))]] +=
            small_rational(rng);
    return v;
}

Vec random_mc(const Dgla& L, std::mt19937_64& rng)
{
    Vec tau0(L.dim());
    if (uniform(rng, 0, 2) == 0) {
        Vec t = random_element(L, 1, rng, 2);
        if (curvature(L, t).is_zero())
            tau0 = t;
    }
    if (tau0.is_zero() && L.dim() > 0 && L.has_filtration()) {
        // cocycles of degree 1 in the top weight layer square to zero
        const int top = L.max_weight();
        std::vector<std::size_t> cols;
        for (std::size_t i = 0; i < L.dim(); ++i)
            if (L.degree(i) == 1 && L.weights()[i] == top)
                cols.push_back(i);
        Matrix dm(L.dim(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < L.dim(); ++i)
                dm(i, j) = L.differential_matrix()(i, cols[j]);
        for (const auto& z : nullspace(dm))
            if (uniform(rng, 0, 1) == 1) {
                Scalar c = small_rational(rng);
                for (std::size_t j = 0; j < cols.size(); ++j)
                    tau0[cols[j]] += c * z[j];
            }
    }
    Vec g = random_element(L, 0, rng, 2);
    return gauge_act(L, g, tau0);
}

PolyForm random_form_of_degree(int level, int degree, std::mt19937_64& rng, int terms, int max_exponent)
{
    PolyForm f(level);
    if (degree < 0 || degree > level)
        return f;
    for (int k = 0; k < terms; ++k) {
        FormKey key;
        for (int j = 1; j <= level; ++j)
            key = key.with_exponent(j, static_cast<int>(uniform(rng, 0, max_exponent)));
        // random subset of size `degree`
        std::vector<int> idx;
        for (int j = 0; j < level; ++j)
            idx.push_back(j);
        for (int j = level - 1; j > 0; --j)
            std::swap(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(uniform(rng, 0, j))]);
        unsigned mask = 0;
        for (int j = 0; j < degree; ++j)
            mask |= 1u << idx[static_cast<std::size_t>(j)];
        f.add_term(key.with_mask(mask), small_rational(rng));
    }
    return f;
}

PolyForm random_form(int level, std::mt19937_64& rng, int terms, int max_exponent)
{
    PolyForm f(level);
    for (int k = 0; k < terms; ++k)
        f += random_form_of_degree(level, static_cast<int>(uniform(rng, 0, level)), rng, 1, max_exponent);
    return f;
}

PolyForm random_faceless_form(int level, std::mt19937_64& rng)
{
    // t_0 t_1 ... t_n vanishes on every face, and so does its product with anything
    PolyForm bubble = PolyForm::constant(level, 1);
    for (int i = 0; i <= level; ++i)
        bubble = wedge(bubble, PolyForm::t(level, i));
    PolyForm f = wedge(bubble, random_form(level, rng, 2, 1));
    switch (uniform(rng, 0, 2)) {
    case 0: return f;
    case 1: return differential(f);
    default: return f + small_rational(rng) * omega(level);
    }
}

std::vector<Vec> twisted_cocycles(const Dgla& L, const Vec& tau, int degree)
{
    auto Lt = twist(L, tau);
    auto idx = L.basis().indices_in_degree(degree);
    std::vector<Vec> out;
    for (const auto& v : nullspace(Lt.as_complex().block(degree))) {
        Vec full(L.dim());
        for (std::size_t j = 0; j < idx.size(); ++j)
            full[idx[j]] = v[j];
        out.push_back(full);
    }
    return out;
}

Vec random_combination(const std::vector<Vec>& vs, std::size_t dim, std::mt19937_64& rng)
{
    Vec x(dim);
    for (const auto& v : vs)
        x += small_rational(rng) * v;
    return x;
}

LieForm random_mc_simplex(const Dgla& L, int level, std::mt19937_64& rng)
{
    auto tau = random_mc(L, rng);
    auto g = random_lie_form(L, level, 0, rng);
    return gauge_action(FormAlgebra(L, level), g, constant_include(tau, level));
}

LieForm random_lie_form(const Dgla& L, int level, int total_degree, std::mt19937_64& rng,
                        std::size_t density, int terms, int max_exponent)
{
    LieForm out(L.dim(), level);
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < L.dim(); ++i) {
        const int p = total_degree - L.degree(i);
        if (p >= 0 && p <= level)
            eligible.push_back(i);
    }
    if (eligible.empty())
        return out;
    for (std::size_t k = 0; k < density; ++k) {
        auto i = eligible[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(eligible.size()) - 1))];
        out[i] += random_form_of_degree(level, total_degree - L.degree(i), rng, terms, max_exponent);
    }
    return out;
}

LieForm random_normalized_chain(const Dgla& L, int level, std::mt19937_64& rng)
{
    FormAlgebra A(L, level);
    LieForm xi = A.differential(random_lie_form(L, level, -1, rng, 2, 2, 1));
    // add a volume-form cycle so the chain can carry homology
    std::vector<std::size_t> idx = L.basis().indices_in_degree(-level);
    auto cycles = nullspace(L.as_complex().block(-level));
    if (!cycles.empty()) {
        Vec z(L.dim());
        const auto& c = cycles[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(cycles.size()) - 1))];
        for (std::size_t j = 0; j < idx.size(); ++j)
            z[idx[j]] = c[j];
        xi += small_rational(rng) * tensor(omega(level), z);
    }
    return normalize(xi);
}

Dgla random_algebra(std::mt19937_64& rng, int max_class)
{
    const int c = static_cast<int>(uniform(rng, 1, max_class));
    const std::size_t m = c >= 4 ? 2 : static_cast<std::size_t>(uniform(rng, 1, 3));
    std::vector<CdgaGenerator> gens;
    const char* letters = "uvwpq";
    for (std::size_t i = 0; i < m; ++i)
        gens.push_back({std::string(1, letters[i]), i == 0 ? 0 : static_cast<int>(uniform(rng, -1, 1)), {}});
    // pair some sources with targets one degree up; targets stay closed
    std::vector<bool> used(m, false);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (!used[i] && !used[j] && i != j && gens[j].degree == gens[i].degree + 1 &&
                uniform(rng, 0, 1) == 1) {
                gens[i].d.push_back({j, small_rational(rng, 2)});
                used[i] = used[j] = true;
            }
    LieAlgebraData g;
    switch (uniform(rng, 0, 2)) {
    case 0: g = sl2(); break;
    case 1: g = heisenberg3(); break;
    default: g = abelian_lie(1); break;
    }
    if (c >= 3)
        g = sl2();
    return truncated_tensor(gens, c, g);
}

} // namespace mcspace::corpus
