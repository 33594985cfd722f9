#include "mcspace/forms.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace mcspace {
namespace {

Scalar factorial(int n)
{
    Scalar f = 1;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

Scalar binomial(int n, int k)
{
    return factorial(n) / (factorial(k) * factorial(n - k));
}

void check_level(int level)
{
    if (level < 0 || level > FormKey::kMaxLevel)
        fail(ErrorKind::PreconditionFailed, "simplicial level " + std::to_string(level) +
                                                " outside 0.." + std::to_string(FormKey::kMaxLevel));
}

// sign of dt_A ^ dt_B -> dt_{A u B}
int wedge_sign(unsigned a, unsigned b)
{
    int inversions = 0;
    for (unsigned rest = b; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        inversions += std::popcount(a >> (j + 1));
    }
    return inversions % 2 ? -1 : 1;
}

} // namespace

// ---------------------------------------------------------------- FormKey

int FormKey::degree() const
{
    return std::popcount(mask());
}

FormKey FormKey::with_exponent(int j, int e) const
{
    if (e < 0 || e > kMaxExponent)
        fail(ErrorKind::PreconditionFailed, "polynomial exponent " + std::to_string(e) + " out of range");
    std::uint64_t r = raw_ & ~(std::uint64_t{0x7f} << shift(j));
    return FormKey(r | (static_cast<std::uint64_t>(e) << shift(j)));
}

int FormKey::total_exponent() const
{
    int s = 0;
    for (int j = 1; j <= kMaxLevel; ++j)
        s += exponent(j);
    return s;
}

// ---------------------------------------------------------------- PolyForm

PolyForm::PolyForm(int level) : level_(level)
{
    check_level(level);
}

PolyForm PolyForm::constant(int level, const Scalar& c)
{
    PolyForm f(level);
    f.add_term(FormKey(), c);
    return f;
}

PolyForm PolyForm::t(int level, int i)
{
    if (i < 0 || i > level)
        fail(ErrorKind::PreconditionFailed, "t_" + std::to_string(i) + " does not exist at level " +
                                                std::to_string(level));
    PolyForm f(level);
    if (i > 0) {
        f.add_term(FormKey().with_exponent(i, 1), 1);
        return f;
    }
    f.add_term(FormKey(), 1);
    for (int j = 1; j <= level; ++j)
        f.add_term(FormKey().with_exponent(j, 1), -1);
    return f;
}

PolyForm PolyForm::dt(int level, int i)
{
    if (i < 0 || i > level)
        fail(ErrorKind::PreconditionFailed, "dt_" + std::to_string(i) + " does not exist at level " +
                                                std::to_string(level));
    PolyForm f(level);
    if (i > 0) {
        f.add_term(FormKey().with_mask(1u << (i - 1)), 1);
        return f;
    }
    for (int j = 1; j <= level; ++j)
        f.add_term(FormKey().with_mask(1u << (j - 1)), -1);
    return f;
}

PolyForm PolyForm::monomial(int level, const Scalar& c, const std::vector<int>& exponents,
                            const std::vector<int>& dts)
{
    PolyForm f = constant(level, c);
    for (std::size_t j = 0; j < exponents.size(); ++j)
        for (int e = 0; e < exponents[j]; ++e)
            f = wedge(f, t(level, static_cast<int>(j) + 1));
    for (int i : dts)
        f = wedge(f, dt(level, i));
    return f;
}

std::optional<int> PolyForm::degree() const
{
    std::optional<int> d;
    for (const auto& [k, c] : terms_) {
        if (d && *d != k.degree())
            return std::nullopt;
        d = k.degree();
    }
    return d;
}

PolyForm PolyForm::component(int k) const
{
    PolyForm out(level_);
    for (const auto& [key, c] : terms_)
        if (key.degree() == k)
            out.terms_.emplace(key, c);
    return out;
}

PolyForm PolyForm::twisted() const
{
    PolyForm out = *this;
    for (auto& [key, c] : out.terms_)
        if (key.degree() % 2)
            c = -c;
    return out;
}

int PolyForm::max_polynomial_degree() const
{
    int m = 0;
    for (const auto& [key, c] : terms_)
        m = std::max(m, key.total_exponent());
    return m;
}

void PolyForm::add_term(FormKey k, const Scalar& c)
{
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

PolyForm& PolyForm::operator+=(const PolyForm& o)
{
    if (o.level_ != level_)
        fail(ErrorKind::LevelMismatch, "adding forms of levels " + std::to_string(level_) + " and " +
                                           std::to_string(o.level_));
    for (const auto& [k, c] : o.terms_)
        add_term(k, c);
    return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o)
{
    if (o.level_ != level_)
        fail(ErrorKind::LevelMismatch, "subtracting forms of levels " + std::to_string(level_) +
                                           " and " + std::to_string(o.level_));
    for (const auto& [k, c] : o.terms_)
        add_term(k, -c);
    return *this;
}

PolyForm& PolyForm::operator*=(const Scalar& s)
{
    if (sgn(s) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, c] : terms_)
        c *= s;
    return *this;
}

PolyForm wedge(const PolyForm& a, const PolyForm& b)
{
    if (a.level() != b.level())
        fail(ErrorKind::LevelMismatch, "wedge of forms of levels " + std::to_string(a.level()) + " and " +
                                           std::to_string(b.level()));
    PolyForm out(a.level());
    const int n = a.level();
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            if (ka.mask() & kb.mask())
                continue;
            FormKey k = FormKey().with_mask(ka.mask() | kb.mask());
            for (int j = 1; j <= n; ++j)
                if (int e = ka.exponent(j) + kb.exponent(j))
                    k = k.with_exponent(j, e);
            Scalar c = ca * cb;
            if (wedge_sign(ka.mask(), kb.mask()) < 0)
                c = -c;
            out.add_term(k, c);
        }
    }
    return out;
}

PolyForm differential(const PolyForm& w)
{
    PolyForm out(w.level());
    for (const auto& [k, c] : w.terms()) {
        for (int j = 1; j <= w.level(); ++j) {
            const int e = k.exponent(j);
            if (e == 0 || k.has_dt(j))
                continue;
            const unsigned bit = 1u << (j - 1);
            // dt_j moves past the dt_i with i < j
            const int below = std::popcount(k.mask() & (bit - 1));
            Scalar coeff = c * e;
            if (below % 2)
                coeff = -coeff;
            out.add_term(k.with_exponent(j, e - 1).with_mask(k.mask() | bit), coeff);
        }
    }
    return out;
}

PolyForm pullback(const PolyForm& w, int target_level, const std::vector<AffineCoordinate>& coords)
{
    const int n = w.level();
    if (static_cast<int>(coords.size()) != n)
        fail(ErrorKind::DimensionMismatch, "pullback needs one affine coordinate per source coordinate");
    std::vector<PolyForm> u, du;
    for (const auto& a : coords) {
        PolyForm p = PolyForm::constant(target_level, a.offset);
        PolyForm dp(target_level);
        for (std::size_t k = 0; k < a.coeffs.size(); ++k) {
            if (sgn(a.coeffs[k]) == 0)
                continue;
            p += a.coeffs[k] * PolyForm::t(target_level, static_cast<int>(k) + 1);
            dp += a.coeffs[k] * PolyForm::dt(target_level, static_cast<int>(k) + 1);
        }
        u.push_back(std::move(p));
        du.push_back(std::move(dp));
    }
    std::vector<std::vector<PolyForm>> powers(static_cast<std::size_t>(n));
    auto power = [&](int j, int e) -> const PolyForm& {
        auto& cache = powers[static_cast<std::size_t>(j - 1)];
        if (cache.empty())
            cache.push_back(PolyForm::constant(target_level, 1));
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(wedge(cache.back(), u[static_cast<std::size_t>(j - 1)]));
        return cache[static_cast<std::size_t>(e)];
    };
    PolyForm out(target_level);
    for (const auto& [k, c] : w.terms()) {
        PolyForm term = PolyForm::constant(target_level, c);
        for (int j = 1; j <= n && !term.is_zero(); ++j)
            if (int e = k.exponent(j))
                term = wedge(term, power(j, e));
        for (int j = 1; j <= n && !term.is_zero(); ++j)
            if (k.has_dt(j))
                term = wedge(term, du[static_cast<std::size_t>(j - 1)]);
        out += term;
    }
    return out;
}

namespace {

// barycentric t_k of Omega_m as an affine function of the canonical coordinates
AffineCoordinate barycentric(int m, int k)
{
    AffineCoordinate a{0, std::vector<Scalar>(static_cast<std::size_t>(m))};
    if (k == 0) {
        a.offset = 1;
        for (auto& c : a.coeffs)
            c = -1;
    } else {
        a.coeffs[static_cast<std::size_t>(k - 1)] = 1;
    }
    return a;
}

AffineCoordinate sum(AffineCoordinate a, const AffineCoordinate& b)
{
    a.offset += b.offset;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        a.coeffs[i] += b.coeffs[i];
    return a;
}

} // namespace

PolyForm face(const PolyForm& w, int i)
{
    const int n = w.level();
    if (n == 0)
        fail(ErrorKind::LevelZero, "face of a level-0 form");
    if (i < 0 || i > n)
        fail(ErrorKind::PreconditionFailed, "face index " + std::to_string(i) + " outside 0.." +
                                                std::to_string(n));
    const int m = n - 1;
    std::vector<AffineCoordinate> coords;
    for (int j = 1; j <= n; ++j) {
        if (j < i)
            coords.push_back(barycentric(m, j));
        else if (j == i)
            coords.push_back({0, std::vector<Scalar>(static_cast<std::size_t>(m))});
        else
            coords.push_back(barycentric(m, j - 1));
    }
    return pullback(w, m, coords);
}

PolyForm degeneracy(const PolyForm& w, int i)
{
    const int n = w.level();
    if (i < 0 || i > n)
        fail(ErrorKind::PreconditionFailed, "degeneracy index " + std::to_string(i) + " outside 0.." +
                                                std::to_string(n));
    const int m = n + 1;
    check_level(m);
    std::vector<AffineCoordinate> coords;
    for (int j = 1; j <= n; ++j) {
        if (j < i)
            coords.push_back(barycentric(m, j));
        else if (j == i)
            coords.push_back(sum(barycentric(m, j), barycentric(m, j + 1)));
        else
            coords.push_back(barycentric(m, j + 1));
    }
    return pullback(w, m, coords);
}

PolyForm boundary(const PolyForm& w)
{
    if (w.level() == 0)
        fail(ErrorKind::LevelZero, "boundary of a level-0 form");
    PolyForm out(w.level() - 1);
    for (int i = 0; i <= w.level(); ++i) {
        if (i % 2)
            out -= face(w, i);
        else
            out += face(w, i);
    }
    return out;
}

Scalar evaluate_vertex(const PolyForm& w, int k)
{
    Scalar v = 0;
    for (const auto& [key, c] : w.terms()) {
        if (key.mask() != 0)
            continue;
        bool survives = true;
        for (int j = 1; j <= w.level(); ++j)
            if (key.exponent(j) != 0 && j != k)
                survives = false;
        if (survives)
            v += c;
    }
    return v;
}

int base_vertex(int level)
{
    return level;
}

Scalar epsilon(const PolyForm& w)
{
    return evaluate_vertex(w, base_vertex(w.level()));
}

bool has_top_component(const PolyForm& w)
{
    const unsigned top = (1u << w.level()) - 1;
    for (const auto& [k, c] : w.terms())
        if (k.mask() == top)
            return true;
    return false;
}

Scalar integrate(const PolyForm& w)
{
    const int n = w.level();
    const unsigned top = (1u << n) - 1;
    Scalar total = 0;
    for (const auto& [k, c] : w.terms()) {
        if (k.mask() != top)
            continue;
        Scalar num = 1;
        int s = 0;
        for (int j = 1; j <= n; ++j) {
            num *= factorial(k.exponent(j));
            s += k.exponent(j);
        }
        total += c * num / factorial(n + s);
    }
    return total;
}

PolyForm extend_nu(const PolyForm& w)
{
    const int n = w.level();
    if (n > 0)
        for (int i = 0; i <= n; ++i)
            if (!face(w, i).is_zero())
                fail(ErrorKind::FacesNotZero, "face " + std::to_string(i) + " of the form is nonzero");
    const int m = n + 1;
    check_level(m);
    PolyForm nu(m);
    for (int j = 1; j <= m; ++j) {
        // u_{j-1} = t_j + t_0, u_l = t_{l+1} otherwise
        std::vector<AffineCoordinate> coords;
        for (int l = 1; l <= n; ++l) {
            if (l == j - 1)
                coords.push_back(sum(barycentric(m, j), barycentric(m, 0)));
            else
                coords.push_back(barycentric(m, l + 1));
        }
        nu += wedge(PolyForm::t(m, j), pullback(w, m, coords));
    }
    return nu;
}

PolyForm contract_h(const PolyForm& w)
{
    const int n = w.level();
    PolyForm out(n);
    if (n == 0)
        return out;
    // radial homotopy phi_s(t) = c + s (t - c) toward the vertex c = e_n
    const PolyForm tn_minus_1 = PolyForm::t(n, n) - PolyForm::constant(n, 1);
    std::vector<PolyForm> shifted{PolyForm::constant(n, 1)};
    for (const auto& [k, c] : w.terms()) {
        const int deg = k.degree();
        if (deg == 0)
            continue;
        int lower = 0;
        FormKey base = FormKey();
        for (int j = 1; j < n; ++j) {
            lower += k.exponent(j);
            if (k.exponent(j))
                base = base.with_exponent(j, k.exponent(j));
        }
        const int an = k.exponent(n);
        while (static_cast<int>(shifted.size()) <= an)
            shifted.push_back(wedge(shifted.back(), tn_minus_1));
        // integral over s of s^{deg-1} f(phi_s)
        PolyForm integral(n);
        for (int b = 0; b <= an; ++b)
            integral += (binomial(an, b) / Scalar(deg + lower + b)) * shifted[static_cast<std::size_t>(b)];
        PolyForm mono(n);
        mono.add_term(base, c);
        integral = wedge(mono, integral);
        // contraction of dt_I with the radial vector field t - c
        PolyForm contraction(n);
        int pos = 0;
        for (int i = 1; i <= n; ++i) {
            if (!k.has_dt(i))
                continue;
            PolyForm factor = PolyForm::t(n, i);
            if (i == n)
                factor -= PolyForm::constant(n, 1);
            PolyForm rest(n);
            rest.add_term(FormKey().with_mask(k.mask() & ~(1u << (i - 1))), pos % 2 ? -1 : 1);
            contraction += wedge(factor, rest);
            ++pos;
        }
        out += wedge(integral, contraction);
    }
    return out;
}

PolyForm omega(int n)
{
    PolyForm f(n);
    f.add_term(FormKey().with_mask((1u << n) - 1), factorial(n));
    return f;
}

PolyForm omega_tilde(int k)
{
    const int m = k + 1;
    PolyForm f(m);
    const unsigned all = (1u << m) - 1;
    for (int i = 1; i <= m; ++i)
        f.add_term(FormKey().with_exponent(i, 1).with_mask(all & ~(1u << (i - 1))),
                   (i % 2 ? 1 : -1) * factorial(k));
    return f;
}

// ---------------------------------------------------------------- text

std::string render(const PolyForm& w)
{
    std::vector<std::pair<FormKey, Scalar>> terms(w.terms().begin(), w.terms().end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree())
            return a.first.degree() < b.first.degree();
        if (a.first.mask() != b.first.mask())
            return a.first.mask() < b.first.mask();
        return a.first < b.first;
    });
    std::string out;
    for (const auto& [k, c] : terms) {
        if (out.empty())
            out += sgn(c) < 0 ? "-" : "";
        else
            out += sgn(c) < 0 ? " - " : " + ";
        std::vector<std::string> factors;
        for (int j = 1; j <= w.level(); ++j)
            if (int e = k.exponent(j))
                factors.push_back("t" + std::to_string(j) + (e > 1 ? "^" + std::to_string(e) : ""));
        for (int j = 1; j <= w.level(); ++j)
            if (k.has_dt(j))
                factors.push_back("dt" + std::to_string(j));
        Scalar a = abs(c);
        std::string body;
        if (a != 1 || factors.empty())
            body = to_string(a);
        for (const auto& f : factors)
            body += (body.empty() ? "" : "*") + f;
        out += body;
    }
    return out.empty() ? "0" : out;
}

PolyForm parse_form(int level, const std::string& text)
{
    check_level(level);
    std::size_t pos = 0;
    auto error = [&](const std::string& why) -> void {
        fail(ErrorKind::ParseError, why + " at column " + std::to_string(pos + 1) + " in form '" + text + "'");
    };
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    auto number = [&]() -> int {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (start == pos)
            error("expected a number");
        if (pos - start > 6)
            error("number too large");
        return std::stoi(text.substr(start, pos - start));
    };
    PolyForm result(level);
    skip();
    if (pos == text.size())
        error("empty form");
    bool first = true;
    while (true) {
        skip();
        if (pos == text.size())
            break;
        Scalar sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            error("expected '+' or '-'");
        }
        first = false;
        PolyForm term = PolyForm::constant(level, sign);
        bool any = false;
        while (true) {
            skip();
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                std::size_t start = pos;
                number();
                if (pos < text.size() && text[pos] == '/') {
                    ++pos;
                    number();
                }
                term *= parse_scalar(text.substr(start, pos - start));
            } else if (text.compare(pos, 2, "dt") == 0) {
                pos += 2;
                int j = number();
                if (j > level)
                    error("dt" + std::to_string(j) + " does not exist at level " + std::to_string(level));
                term = wedge(term, PolyForm::dt(level, j));
            } else if (pos < text.size() && text[pos] == 't') {
                ++pos;
                int j = number();
                if (j > level)
                    error("t" + std::to_string(j) + " does not exist at level " + std::to_string(level));
                int e = 1;
                skip();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    skip();
                    e = number();
                }
                for (int r = 0; r < e; ++r)
                    term = wedge(term, PolyForm::t(level, j));
            } else {
                error("expected a factor");
            }
            any = true;
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        if (!any)
            error("empty term");
        result += term;
    }
    return result;
}

} // namespace mcspace
