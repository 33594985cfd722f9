#include "mcspace/dgla.hpp"

#include <algorithm>
#include <set>

#include "mcspace/combination.hpp"

namespace mcspace {
namespace {

SparseVec to_sparse(const Vec& v)
{
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0)
            s.push_back({i, v[i]});
    return s;
}

void add_scaled(Vec& acc, const Scalar& c, const SparseVec& s)
{
    for (const auto& e : s)
        acc[e.index] += c * e.coeff;
}

bool koszul_odd(int a, int b)
{
    return (a * b) % 2 != 0;
}

std::string pair_witness(const GradedBasis& b, std::size_t i, std::size_t j)
{
    return "(" + b.symbols[i] + "," + b.symbols[j] + ")";
}

} // namespace

BracketTable antisymmetrize(const BracketTable& table, const std::vector<int>& degrees)
{
    BracketTable out = table;
    for (const auto& [key, v] : table) {
        auto [i, j] = key;
        if (i == j || table.count({j, i}))
            continue;
        Vec m = v;
        if (!koszul_odd(degrees.at(i), degrees.at(j)))
            m *= Scalar(-1);
        out.emplace(std::make_pair(j, i), std::move(m));
    }
    return out;
}

bool ValidationReport::ok() const
{
    return first_failure() == nullptr;
}

const CheckResult* ValidationReport::first_failure() const
{
    for (const auto& c : checks)
        if (!c.passed)
            return &c;
    return nullptr;
}

// ---------------------------------------------------------------- Dgla

Dgla::Dgla(GradedBasis basis, Matrix differential, const BracketTable& brackets,
           std::optional<std::vector<int>> weights)
    : basis_(std::move(basis)), d_(std::move(differential))
{
    const std::size_t n = basis_.size();
    if (d_.rows() != n || d_.cols() != n)
        fail(ErrorKind::DimensionMismatch, "differential must be a square matrix of basis size");
    d_sparse_.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        d_sparse_[j] = to_sparse(d_.column(j));
    table_.assign(n * n, {});
    for (const auto& [key, v] : brackets) {
        if (key.first >= n || key.second >= n || v.size() != n)
            fail(ErrorKind::DimensionMismatch, "bracket table entry out of range");
        table_[key.first * n + key.second] = to_sparse(v);
    }

    // lower central series
    EchelonBasis layer(n);
    for (std::size_t i = 0; i < n; ++i)
        layer.insert(unit(i));
    for (int k = 1;; ++k) {
        if (layer.rank() == 0) {
            class_ = k - 1;
            break;
        }
        lcs_.push_back(layer.rows());
        EchelonBasis next(n);
        for (const auto& v : layer.rows())
            for (std::size_t i = 0; i < n; ++i) {
                next.insert(bracket(unit(i), v));
                next.insert(bracket(v, unit(i)));
            }
        if (next.rank() == layer.rank())
            break; // stabilized at a nonzero subspace
        layer = std::move(next);
    }

    if (weights) {
        if (weights->size() != n)
            fail(ErrorKind::DimensionMismatch, "filtration weights must list every generator");
        for (int w : *weights)
            if (w < 1)
                fail(ErrorKind::ValidationError, "filtration weights must be >= 1");
        weights_ = *weights;
        return;
    }
    if (n == 0)
        return;

    if (class_) {
        std::vector<int> w(n, 0);
        std::vector<EchelonBasis> spans;
        for (const auto& rows : lcs_) {
            EchelonBasis e(n);
            for (const auto& r : rows)
                e.insert(r);
            spans.push_back(std::move(e));
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < spans.size(); ++k)
                if (spans[k].contains(unit(i)))
                    w[i] = static_cast<int>(k) + 1;
        bool adapted = true;
        for (std::size_t k = 0; k < spans.size(); ++k) {
            auto count = std::count_if(w.begin(), w.end(), [&](int x) { return x >= static_cast<int>(k) + 1; });
            if (static_cast<std::size_t>(count) != spans[k].rank())
                adapted = false;
        }
        if (adapted) {
            weights_ = std::move(w);
            weights_from_lcs_ = true;
            return;
        }
    }

    // smallest weights with w_k >= w_i + w_j on bracket supports and w_k >= w_i on d supports
    std::vector<int> w(n, 1);
    for (std::size_t round = 0; round <= n + 1; ++round) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& e : d_sparse_[i])
                if (w[e.index] < w[i]) {
                    w[e.index] = w[i];
                    changed = true;
                }
            for (std::size_t j = 0; j < n; ++j)
                for (const auto& e : table_[i * n + j])
                    if (w[e.index] < w[i] + w[j]) {
                        w[e.index] = w[i] + w[j];
                        changed = true;
                    }
        }
        if (!changed) {
            weights_ = std::move(w);
            return;
        }
    }
    // positive cycle: no coordinate filtration exists in this basis
}

Dgla Dgla::checked(GradedBasis basis, Matrix differential, const BracketTable& brackets,
                   std::optional<std::vector<int>> weights)
{
    Dgla L(std::move(basis), std::move(differential), brackets, std::move(weights));
    auto report = validate(L);
    if (auto* f = report.first_failure())
        fail(ErrorKind::ValidationError, f->name + " check failed, witness " + f->witness);
    return L;
}

Vec Dgla::bracket(const Vec& x, const Vec& y) const
{
    const std::size_t n = dim();
    if (x.size() != n || y.size() != n)
        fail(ErrorKind::DimensionMismatch, "bracket: vector length differs from algebra dimension");
    Vec out(n);
    std::vector<std::size_t> ny;
    for (std::size_t j = 0; j < n; ++j)
        if (sgn(y[j]) != 0)
            ny.push_back(j);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(x[i]) == 0)
            continue;
        for (auto j : ny) {
            const auto& e = table_[i * n + j];
            if (!e.empty())
                add_scaled(out, x[i] * y[j], e);
        }
    }
    return out;
}

Vec Dgla::differential(const Vec& x) const
{
    if (x.size() != dim())
        fail(ErrorKind::DimensionMismatch, "differential: vector length differs from algebra dimension");
    Vec out(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        if (sgn(x[i]) != 0)
            add_scaled(out, x[i], d_sparse_[i]);
    return out;
}

int Dgla::nilpotency_class() const
{
    if (!class_)
        fail(ErrorKind::NotNilpotent, "lower central series stabilizes at a nonzero subspace");
    return *class_;
}

const std::vector<int>& Dgla::weights() const
{
    if (!has_filtration())
        fail(ErrorKind::NotAdapted, "no coordinate filtration is compatible with this basis");
    return weights_;
}

int Dgla::max_weight() const
{
    const auto& w = weights();
    return w.empty() ? 0 : *std::max_element(w.begin(), w.end());
}

int Dgla::filtration_order(const Vec& v) const
{
    const auto& w = weights();
    int best = max_weight() + 1;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0)
            best = std::min(best, w[i]);
    return best;
}

Vec Dgla::graded_piece(const Vec& v, int p) const
{
    const auto& w = weights();
    Vec out(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        if (w[i] == p)
            out[i] = v[i];
    return out;
}

std::optional<int> Dgla::degree_of(const Vec& v) const
{
    std::optional<int> deg;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (sgn(v[i]) == 0)
            continue;
        if (deg && *deg != degree(i))
            return std::nullopt;
        deg = degree(i);
    }
    return deg;
}

bool Dgla::is_homogeneous(const Vec& v, int deg) const
{
    if (v.size() != dim())
        return false;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0 && degree(i) != deg)
            return false;
    return true;
}

CochainComplex Dgla::as_complex() const
{
    return CochainComplex(basis_, d_);
}

Vec Dgla::parse_element(const std::string& text) const
{
    Vec v(dim());
    for (const auto& t : parse_combination(text)) {
        if (t.symbol.empty()) {
            if (sgn(t.coefficient) != 0)
                fail(ErrorKind::ParseError, "bare nonzero number in element '" + text + "'");
            continue;
        }
        auto idx = basis_.find(t.symbol);
        if (!idx)
            fail(ErrorKind::ParseError, "unknown symbol '" + t.symbol + "' in element '" + text + "'");
        v[*idx] += t.coefficient;
    }
    return v;
}

std::string Dgla::render(const Vec& v) const
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (sgn(v[i]) == 0)
            continue;
        Scalar c = v[i];
        if (out.empty()) {
            if (sgn(c) < 0)
                out += "-";
        } else {
            out += sgn(c) < 0 ? " - " : " + ";
        }
        Scalar a = abs(c);
        if (a != 1)
            out += to_string(a) + "*";
        out += basis_.symbols[i];
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- validation

ValidationReport validate(const Dgla& L)
{
    const std::size_t n = L.dim();
    const auto& B = L.basis();
    ValidationReport report;
    auto add = [&](const std::string& name, std::string witness) {
        report.checks.push_back({name, witness.empty(), std::move(witness)});
    };

    {
        std::string w;
        for (std::size_t i = 0; i < n && w.empty(); ++i)
            if (!L.differential(L.differential(L.unit(i))).is_zero())
                w = "(" + B.symbols[i] + ")";
        add("d^2", w);
    }
    {
        std::string w;
        for (std::size_t i = 0; i < n && w.empty(); ++i)
            for (std::size_t j = 0; j < n && w.empty(); ++j) {
                auto ei = L.unit(i), ej = L.unit(j);
                Vec lhs = L.differential(L.bracket(ei, ej));
                Vec rhs = L.bracket(L.differential(ei), ej);
                Vec second = L.bracket(ei, L.differential(ej));
                if (L.degree(i) % 2 != 0)
                    rhs -= second;
                else
                    rhs += second;
                if (!(lhs == rhs))
                    w = pair_witness(B, i, j);
            }
        add("derivation", w);
    }
    {
        std::string w;
        for (std::size_t i = 0; i < n && w.empty(); ++i)
            for (std::size_t j = i; j < n && w.empty(); ++j) {
                Vec a = L.bracket(L.unit(i), L.unit(j));
                Vec b = L.bracket(L.unit(j), L.unit(i));
                Vec s = koszul_odd(L.degree(i), L.degree(j)) ? a - b : a + b;
                if (!s.is_zero())
                    w = pair_witness(B, i, j);
            }
        add("antisymmetry", w);
    }
    {
        // (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0
        std::vector<Vec> inner(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                inner[i * n + j] = L.bracket(L.unit(i), L.unit(j));
        auto term = [&](std::size_t a, std::size_t b, std::size_t c, Vec& acc) {
            const Vec& in = inner[b * n + c];
            Scalar s = koszul_odd(L.degree(a), L.degree(c)) ? -1 : 1;
            for (std::size_t m = 0; m < n; ++m)
                if (sgn(in[m]) != 0)
                    add_scaled(acc, s * in[m], L.bracket_entry(a, m));
        };
        std::string w;
        for (std::size_t i = 0; i < n && w.empty(); ++i)
            for (std::size_t j = 0; j < n && w.empty(); ++j)
                for (std::size_t k = 0; k < n && w.empty(); ++k) {
                    Vec acc(n);
                    term(i, j, k, acc);
                    term(j, k, i, acc);
                    term(k, i, j, acc);
                    if (!acc.is_zero())
                        w = "(" + B.symbols[i] + "," + B.symbols[j] + "," + B.symbols[k] + ")";
                }
        add("jacobi", w);
    }
    {
        std::string w;
        for (std::size_t i = 0; i < n && w.empty(); ++i) {
            for (const auto& e : L.d_entry(i))
                if (L.degree(e.index) != L.degree(i) + 1 && w.empty())
                    w = "(" + B.symbols[i] + ") d lands on " + B.symbols[e.index];
            for (std::size_t j = 0; j < n && w.empty(); ++j)
                for (const auto& e : L.bracket_entry(i, j))
                    if (L.degree(e.index) != L.degree(i) + L.degree(j) && w.empty())
                        w = pair_witness(B, i, j) + " lands on " + B.symbols[e.index];
        }
        add("degree", w);
    }
    {
        std::string w;
        if (!L.has_filtration()) {
            w = "no coordinate filtration is compatible with this basis";
        } else if (n > 0) {
            const auto& wt = L.weights();
            const int top = L.max_weight();
            for (std::size_t i = 0; i < n && w.empty(); ++i) {
                for (const auto& e : L.d_entry(i))
                    if (wt[e.index] < wt[i] && w.empty())
                        w = "(" + B.symbols[i] + ") d leaves F^" + std::to_string(wt[i]);
                for (std::size_t j = 0; j < n && w.empty(); ++j)
                    for (const auto& e : L.bracket_entry(i, j))
                        if (wt[e.index] < std::min(wt[i] + wt[j], top + 1) && w.empty())
                            w = pair_witness(B, i, j) + " leaves F^" + std::to_string(wt[i] + wt[j]);
            }
            for (std::size_t i = 0; i < n && w.empty(); ++i)
                for (std::size_t j = 0; j < n && w.empty(); ++j)
                    if (wt[i] + wt[j] > top && !L.bracket_entry(i, j).empty())
                        w = pair_witness(B, i, j) + " is nonzero beyond the last filtration step";
        }
        add("filtration", w);
    }
    {
        std::string w;
        if (!L.lcs_class())
            w = "lower central series stabilizes at dimension " +
                std::to_string(L.lower_central_series().back().size());
        add("nilpotency", w);
        report.nilpotency_class = L.lcs_class().value_or(-1);
    }
    return report;
}

std::vector<std::vector<Vec>> lower_central_series(const Dgla& L)
{
    L.nilpotency_class();
    return L.lower_central_series();
}

// ---------------------------------------------------------------- MC and gauge

Vec curvature(const Dgla& L, const Vec& tau)
{
    if (!L.is_homogeneous(tau, 1))
        fail(ErrorKind::DegreeMismatch, "curvature: element is not of degree 1");
    return curvature_of(L, tau);
}

McElement make_mc(const Dgla& L, const Vec& tau)
{
    if (!curvature(L, tau).is_zero())
        fail(ErrorKind::NotMaurerCartan, "d tau + 1/2 [tau,tau] != 0 for tau = " + L.render(tau));
    return {tau};
}

GaugeElement make_gauge(const Dgla& L, const Vec& x)
{
    if (!L.is_homogeneous(x, 0))
        fail(ErrorKind::DegreeMismatch, "gauge element is not of degree 0");
    return {x};
}

namespace {

BracketTable table_of(const Dgla& L)
{
    BracketTable t;
    const std::size_t n = L.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& e = L.bracket_entry(i, j);
            if (e.empty())
                continue;
            Vec v(n);
            add_scaled(v, 1, e);
            t.emplace(std::make_pair(i, j), std::move(v));
        }
    return t;
}

std::optional<std::vector<int>> weights_of(const Dgla& L)
{
    if (L.dim() == 0 || !L.has_filtration())
        return std::nullopt;
    return L.weights();
}

} // namespace

Dgla twist(const Dgla& L, const McElement& tau)
{
    const std::size_t n = L.dim();
    Matrix d = L.differential_matrix();
    for (std::size_t j = 0; j < n; ++j) {
        Vec adj = L.bracket(tau.tau, L.unit(j));
        for (std::size_t i = 0; i < n; ++i)
            d(i, j) += adj[i];
    }
    return Dgla(L.basis(), std::move(d), table_of(L), weights_of(L));
}

Dgla twist(const Dgla& L, const Vec& tau)
{
    return twist(L, make_mc(L, tau));
}

Vec bch(const Dgla& L, const Vec& x, const Vec& y)
{
    if (x.size() != L.dim() || y.size() != L.dim())
        fail(ErrorKind::DimensionMismatch, "bch: vector length differs from algebra dimension");
    return bch<Dgla>(L, x, y);
}

McElement gauge_act(const Dgla& L, const GaugeElement& x, const McElement& tau)
{
    return {gauge_action(L, x.x, tau.tau)};
}

Vec gauge_act(const Dgla& L, const Vec& x, const Vec& tau)
{
    auto g = make_gauge(L, x);
    auto t = make_mc(L, tau);
    return gauge_act(L, g, t).tau;
}

bool stabilizer_check(const Dgla& L, const Vec& x, const Vec& tau)
{
    return gauge_act(L, x, tau) == tau;
}

GaugeElement gauge_lift(const Dgla& L, const Dgla& target, const Matrix& f,
                        const PrimitiveOracle& primitive_oracle, const McElement& tau,
                        const McElement& rho, const GaugeElement& y)
{
    if (f.rows() != target.dim() || f.cols() != L.dim())
        fail(ErrorKind::DimensionMismatch, "gauge_lift: map has the wrong shape");
    make_mc(L, tau.tau);
    make_mc(L, rho.tau);
    make_gauge(target, y.x);
    L.weights();

    auto degree0 = L.basis().indices_in_degree(0);
    Matrix f0(f.rows(), degree0.size());
    for (std::size_t j = 0; j < degree0.size(); ++j)
        for (std::size_t i = 0; i < f.rows(); ++i)
            f0(i, j) = f(i, degree0[j]);
    auto map = [&](const Vec& v) { return f.apply(v); };
    auto section = [&](const Vec& target_x) {
        auto local = solve_linear(f0, target_x);
        if (!local)
            fail(ErrorKind::PreconditionFailed, "gauge_lift: f is not surjective onto y");
        Vec x(L.dim());
        for (std::size_t j = 0; j < degree0.size(); ++j)
            x[degree0[j]] = (*local)[j];
        return x;
    };
    return {gauge_lift_generic(L, target, map, section, primitive_oracle, tau.tau, rho.tau, y.x)};
}

Dgla cone(const Dgla& L)
{
    const std::size_t n = L.dim();
    std::vector<std::string> syms;
    std::vector<int> degs;
    for (std::size_t i = 0; i < n; ++i) {
        syms.push_back("s" + L.basis().symbols[i]);
        degs.push_back(L.degree(i) - 1);
    }
    for (std::size_t i = 0; i < n; ++i) {
        syms.push_back(L.basis().symbols[i]);
        degs.push_back(L.degree(i));
    }
    // suspension names may collide with existing symbols
    std::set<std::string> seen;
    for (auto& s : syms) {
        while (!seen.insert(s).second)
            s = "s" + s;
    }

    Matrix d(2 * n, 2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        d(n + j, j) = 1;
        for (const auto& e : L.d_entry(j)) {
            d(e.index, j) -= e.coeff;
            d(n + e.index, n + j) += e.coeff;
        }
    }
    BracketTable t;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& e = L.bracket_entry(i, j);
            if (e.empty())
                continue;
            Vec plain(2 * n), susp(2 * n), mirror(2 * n);
            Scalar m = koszul_odd(L.degree(j), L.degree(i) - 1) ? 1 : -1;
            for (const auto& c : e) {
                plain[n + c.index] = c.coeff;
                susp[c.index] = c.coeff;
                mirror[c.index] = m * c.coeff;
            }
            t.emplace(std::make_pair(n + i, n + j), std::move(plain));
            t.emplace(std::make_pair(i, n + j), std::move(susp));
            t.emplace(std::make_pair(n + j, i), std::move(mirror));
        }
    std::optional<std::vector<int>> w;
    if (auto lw = weights_of(L)) {
        std::vector<int> ww = *lw;
        ww.insert(ww.end(), lw->begin(), lw->end());
        w = ww;
    }
    return Dgla(GradedBasis(std::move(syms), std::move(degs)), std::move(d), t, w);
}

} // namespace mcspace
