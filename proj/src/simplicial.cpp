#include "mcspace/simplicial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "mcspace/combination.hpp"

namespace mcspace {

// ------------------------------------------------------------------- LieForm

LieForm::LieForm(std::size_t dim, int level) : level_(level), comps_(dim, PolyForm(level)) {}

bool LieForm::is_zero() const
{
    return std::all_of(comps_.begin(), comps_.end(), [](const PolyForm& w) { return w.is_zero(); });
}

std::size_t LieForm::term_count() const
{
    std::size_t n = 0;
    for (const auto& w : comps_)
        n += w.size();
    return n;
}

LieForm& LieForm::operator+=(const LieForm& o)
{
    if (o.level_ != level_ || o.comps_.size() != comps_.size())
        fail(ErrorKind::LevelMismatch, "adding forms of different levels or algebras");
    for (std::size_t i = 0; i < comps_.size(); ++i)
        comps_[i] += o.comps_[i];
    return *this;
}

LieForm& LieForm::operator-=(const LieForm& o)
{
    if (o.level_ != level_ || o.comps_.size() != comps_.size())
        fail(ErrorKind::LevelMismatch, "subtracting forms of different levels or algebras");
    for (std::size_t i = 0; i < comps_.size(); ++i)
        comps_[i] -= o.comps_[i];
    return *this;
}

LieForm& LieForm::operator*=(const Scalar& s)
{
    for (auto& w : comps_)
        w *= s;
    return *this;
}

LieForm tensor(const PolyForm& w, const Vec& x)
{
    LieForm out(x.size(), w.level());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0)
            out[i] = x[i] * w;
    return out;
}

LieForm constant_include(const Vec& v, int level)
{
    return tensor(PolyForm::constant(level, 1), v);
}

Vec evaluate_at_vertex(const LieForm& xi, int vertex)
{
    Vec v(xi.dim());
    for (std::size_t i = 0; i < xi.dim(); ++i)
        v[i] = evaluate_vertex(xi[i], vertex);
    return v;
}

Vec vertex_evaluate(const LieForm& xi)
{
    return evaluate_at_vertex(xi, base_vertex(xi.level()));
}

// --------------------------------------------------------------- FormAlgebra

FormAlgebra::FormAlgebra(const Dgla& L, int level) : L_(&L), level_(level)
{
    if (level < 0 || level > FormKey::kMaxLevel)
        fail(ErrorKind::PreconditionFailed, "level out of range: " + std::to_string(level));
}

LieForm FormAlgebra::bracket(const LieForm& a, const LieForm& b) const
{
    LieForm out = zero();
    const std::size_t n = L_->dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].is_zero())
            continue;
        const bool odd = L_->degree(i) % 2 != 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j].is_zero())
                continue;
            const auto& entry = L_->bracket_entry(i, j);
            if (entry.empty())
                continue;
            auto prod = wedge(a[i], odd ? b[j].twisted() : b[j]);
            if (prod.is_zero())
                continue;
            for (const auto& [k, c] : entry)
                out[k] += c * prod;
        }
    }
    return out;
}

LieForm FormAlgebra::differential(const LieForm& a) const
{
    LieForm out = zero();
    for (std::size_t i = 0; i < L_->dim(); ++i) {
        if (a[i].is_zero())
            continue;
        out[i] += mcspace::differential(a[i]);
        const auto& de = L_->d_entry(i);
        if (de.empty())
            continue;
        auto tw = a[i].twisted();
        for (const auto& [k, c] : de)
            out[k] += c * tw;
    }
    return out;
}

int FormAlgebra::filtration_order(const LieForm& a) const
{
    const auto& w = L_->weights();
    int order = L_->max_weight() + 1;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (!a[i].is_zero())
            order = std::min(order, w[i]);
    return order;
}

LieForm FormAlgebra::graded_piece(const LieForm& a, int p) const
{
    const auto& w = L_->weights();
    LieForm out = zero();
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (w[i] == p)
            out[i] = a[i];
    return out;
}

bool FormAlgebra::has_total_degree(const LieForm& a, int degree) const
{
    if (a.dim() != L_->dim() || a.level() != level_)
        return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (const auto& [k, c] : a[i].terms())
            if (k.degree() + L_->degree(i) != degree)
                return false;
    return true;
}

// -------------------------------------------------------- simplicial structure

LieForm face(const LieForm& xi, int i)
{
    if (xi.level() == 0)
        fail(ErrorKind::LevelZero, "face of a level-0 simplex");
    LieForm out(xi.dim(), xi.level() - 1);
    for (std::size_t j = 0; j < xi.dim(); ++j)
        out[j] = face(xi[j], i);
    return out;
}

LieForm degeneracy(const LieForm& xi, int i)
{
    LieForm out(xi.dim(), xi.level() + 1);
    for (std::size_t j = 0; j < xi.dim(); ++j)
        out[j] = degeneracy(xi[j], i);
    return out;
}

LieForm simplicial_op(const LieForm& xi, const std::vector<SimplicialOp>& word)
{
    LieForm cur = xi;
    for (const auto& op : word)
        cur = op.kind == SimplicialOp::Face ? face(cur, op.index) : degeneracy(cur, op.index);
    return cur;
}

std::vector<SimplicialOp> parse_simplicial_word(const std::string& text)
{
    std::vector<SimplicialOp> ops;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c != 'd' && c != 's')
            fail(ErrorKind::ParseError, "expected d<i> or s<i> in '" + text + "'");
        std::size_t j = i + 1;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
            ++j;
        if (j == i + 1)
            fail(ErrorKind::ParseError, "missing index after '" + std::string(1, c) + "'");
        int index = std::stoi(text.substr(i + 1, j - i - 1));
        ops.push_back({c == 'd' ? SimplicialOp::Face : SimplicialOp::Degeneracy, index});
        i = j;
    }
    return ops;
}

// ---------------------------------------------------------- MC and the action

McCheck mc_check(const Dgla& L, const LieForm& xi)
{
    FormAlgebra A(L, xi.level());
    if (!A.has_total_degree(xi, 1))
        fail(ErrorKind::DegreeMismatch, "Maurer-Cartan simplices have total degree 1");
    auto curv = curvature_of(A, xi);
    return {curv.is_zero(), curv};
}

LieForm gauge_act_level(const Dgla& L, const LieForm& g, const LieForm& xi)
{
    if (g.level() != xi.level())
        fail(ErrorKind::LevelMismatch, "gauge element at level " + std::to_string(g.level()) +
                                           ", simplex at level " + std::to_string(xi.level()));
    FormAlgebra A(L, xi.level());
    if (!A.has_total_degree(g, 0))
        fail(ErrorKind::DegreeMismatch, "gauge elements have total degree 0");
    if (!mc_check(L, xi).ok)
        fail(ErrorKind::NotMaurerCartan, "simplex is not Maurer-Cartan");
    return gauge_action(A, g, xi);
}

namespace {

LieForm contract(const LieForm& r)
{
    LieForm c(r.dim(), r.level());
    for (std::size_t i = 0; i < r.dim(); ++i)
        if (!r[i].is_zero())
            c[i] = contract_h(r[i]);
    return c;
}

} // namespace

LieForm gauge_solve_to_vertex(const Dgla& L, const LieForm& xi)
{
    if (!mc_check(L, xi).ok)
        fail(ErrorKind::NotMaurerCartan, "simplex is not Maurer-Cartan");
    const int n = xi.level();
    FormAlgebra A(L, n);
    auto base = vertex_evaluate(xi);
    auto rho = constant_include(base, n);
    if (xi == rho)
        return A.zero();
    // H = h (x) 1 contracts ker(epsilon_n) on each graded piece
    auto oracle = [&](int p, const LieForm& r) -> std::optional<LieForm> {
        return contract(A.graded_piece(r, p));
    };
    return gauge_lift_generic(
        A, L, [](const LieForm& v) { return vertex_evaluate(v); },
        [&](const Vec& y) { return constant_include(y, n); }, oracle, xi, rho, L.zero());
}

// ------------------------------------------------------------------- fillers

HornProblem horn_of(const LieForm& simplex, int missing)
{
    HornProblem h{simplex.level(), missing, std::vector<std::optional<LieForm>>(simplex.level() + 1)};
    for (int i = 0; i <= simplex.level(); ++i)
        if (i != missing)
            h.faces[i] = face(simplex, i);
    return h;
}

void check_horn(const HornProblem& horn)
{
    const int n = horn.level;
    if (n < 1)
        fail(ErrorKind::PreconditionFailed, "horns start at level 1");
    if (horn.missing < 0 || horn.missing > n)
        fail(ErrorKind::PreconditionFailed, "missing face index out of range");
    if (static_cast<int>(horn.faces.size()) != n + 1)
        fail(ErrorKind::PreconditionFailed, "a level-" + std::to_string(n) + " horn lists " +
                                                std::to_string(n + 1) + " face slots");
    std::size_t dim = 0;
    for (int i = 0; i <= n; ++i) {
        const auto& f = horn.faces[i];
        if (i == horn.missing) {
            if (f)
                fail(ErrorKind::PreconditionFailed, "the missing face is given");
            continue;
        }
        if (!f)
            fail(ErrorKind::IncompatibleHorn, "face " + std::to_string(i) + " is absent");
        if (f->level() != n - 1)
            fail(ErrorKind::IncompatibleHorn, "face " + std::to_string(i) + " is not at level " +
                                                  std::to_string(n - 1));
        if (dim == 0)
            dim = f->dim();
        else if (f->dim() != dim)
            fail(ErrorKind::IncompatibleHorn, "faces live over different algebras");
    }
    if (n < 2)
        return;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i < j; ++i) {
            if (i == horn.missing || j == horn.missing)
                continue;
            if (!(face(*horn.faces[j], i) == face(*horn.faces[i], j - 1)))
                fail(ErrorKind::IncompatibleHorn, "d" + std::to_string(i) + " x" + std::to_string(j) +
                                                      " != d" + std::to_string(j - 1) + " x" +
                                                      std::to_string(i));
        }
}

std::optional<std::string> audit_filler(const HornProblem& horn, const LieForm& filler)
{
    if (filler.level() != horn.level)
        return "filler is at level " + std::to_string(filler.level());
    for (int i = 0; i <= horn.level; ++i) {
        if (i == horn.missing)
            continue;
        if (!(face(filler, i) == *horn.faces[i]))
            return "face d" + std::to_string(i) + " does not match";
    }
    return std::nullopt;
}

LieForm moore_filler(const Dgla& L, GroupKind kind, const HornProblem& horn)
{
    check_horn(horn);
    const int n = horn.level;
    const int k = horn.missing;
    if (n > 4)
        fail(ErrorKind::PreconditionFailed, "group horns are filled up to level 4");
    FormAlgebra lower(L, n - 1);
    for (int i = 0; i <= n; ++i) {
        if (i == k)
            continue;
        const auto& f = *horn.faces[i];
        if (!lower.has_total_degree(f, 0))
            fail(ErrorKind::DegreeMismatch, "group simplices have total degree 0");
        if (kind == GroupKind::Exp && !lower.differential(f).is_zero())
            fail(ErrorKind::PreconditionFailed, "face " + std::to_string(i) + " is not closed");
    }
    FormAlgebra A(L, n);
    auto mul = [&](const LieForm& a, const LieForm& b) { return bch(A, a, b); };
    auto mul_lower = [&](const LieForm& a, const LieForm& b) { return bch(lower, a, b); };
    const auto& x = horn.faces;

    LieForm g = k != 0 ? degeneracy(*x[0], 0) : A.zero();
    for (int r = 0; r < k; ++r) {
        auto y = mul_lower(-face(g, r), *x[r]);
        if (!y.is_zero())
            g = mul(g, degeneracy(y, r));
    }
    for (int r = n; r > k; --r) {
        auto y = mul_lower(-face(g, r), *x[r]);
        if (!y.is_zero())
            g = mul(g, degeneracy(y, r - 1));
    }
    if (auto bad = audit_filler(horn, g))
        fail(ErrorKind::Internal, "moore filler: " + *bad);
    return g;
}

namespace {

using VertexSet = std::vector<int>;

int position(const VertexSet& v, int vertex)
{
    return static_cast<int>(std::find(v.begin(), v.end(), vertex) - v.begin());
}

VertexSet without(const VertexSet& v, int vertex)
{
    VertexSet out;
    for (int u : v)
        if (u != vertex)
            out.push_back(u);
    return out;
}

// Subsets of {0..n} of the given size containing k, in lexicographic order.
std::vector<VertexSet> subsets_containing(int n, int size, int k)
{
    std::vector<VertexSet> out;
    for (unsigned mask = 0; mask < (1u << (n + 1)); ++mask) {
        if (!((mask >> k) & 1u) || __builtin_popcount(mask) != size)
            continue;
        VertexSet v;
        for (int i = 0; i <= n; ++i)
            if ((mask >> i) & 1u)
                v.push_back(i);
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

LieForm mc_horn_filler(const Dgla& L, const HornProblem& horn)
{
    check_horn(horn);
    const int n = horn.level;
    const int k = horn.missing;
    if (n > 3)
        fail(ErrorKind::PreconditionFailed, "Maurer-Cartan horns are filled up to level 3");
    for (int i = 0; i <= n; ++i)
        if (i != k && !mc_check(L, *horn.faces[i]).ok)
            fail(ErrorKind::NotMaurerCartan, "face " + std::to_string(i) + " is not Maurer-Cartan");

    VertexSet all;
    for (int i = 0; i <= n; ++i)
        all.push_back(i);

    // sub-simplex of the horn spanned by V (V misses some vertex other than k)
    auto simplex_on = [&](const VertexSet& V) {
        int i = 0;
        while (i == k || std::find(V.begin(), V.end(), i) != V.end())
            ++i;
        LieForm cur = *horn.faces[i];
        VertexSet verts = without(all, i);
        for (int pos = static_cast<int>(verts.size()) - 1; pos >= 0; --pos)
            if (std::find(V.begin(), V.end(), verts[pos]) == V.end())
                cur = face(cur, pos);
        return cur;
    };

    const Vec tau0 = evaluate_at_vertex(simplex_on({k}), 0);

    // lift[V] in G_{|V|-1} with lift[V] . (tau0 (x) 1) = simplex_on(V), coherent on
    // the faces of V that contain k
    std::map<VertexSet, LieForm> lift;
    lift.emplace(VertexSet{k}, LieForm(L.dim(), 0));
    for (int size = 2; size <= n; ++size) {
        const int m = size - 1;
        FormAlgebra A(L, m);
        FormAlgebra lower(L, m - 1);
        const auto base = constant_include(tau0, m);
        for (const auto& V : subsets_containing(n, size, k)) {
            const auto sigma = simplex_on(V);
            const int p = position(V, k);
            auto h = gauge_solve_to_vertex(L, sigma);
            auto g = bch(A, h, constant_include(-evaluate_at_vertex(h, p), m));
            if (!(gauge_action(A, g, base) == sigma))
                fail(ErrorKind::Internal, "mc horn filler: vertex transport failed");
            // correct by a stabilizer element so that faces through k agree
            HornProblem correction{m, p, std::vector<std::optional<LieForm>>(size)};
            for (int v : V) {
                if (v == k)
                    continue;
                const int q = position(V, v);
                correction.faces[q] = bch(lower, -face(g, q), lift.at(without(V, v)));
            }
            auto s = moore_filler(L, GroupKind::G, correction);
            auto corrected = bch(A, g, s);
            if (!(gauge_action(A, corrected, base) == sigma))
                fail(ErrorKind::Internal, "mc horn filler: correction left the stabilizer");
            lift.emplace(V, std::move(corrected));
        }
    }

    HornProblem group{n, k, std::vector<std::optional<LieForm>>(n + 1)};
    for (int i = 0; i <= n; ++i)
        if (i != k)
            group.faces[i] = lift.at(without(all, i));
    auto g = moore_filler(L, GroupKind::G, group);
    FormAlgebra A(L, n);
    auto filler = gauge_action(A, g, constant_include(tau0, n));
    if (auto bad = audit_filler(horn, filler))
        fail(ErrorKind::Internal, "mc horn filler: " + *bad);
    return filler;
}

// ------------------------------------------------- discreteness and Deligne

DiscretenessReport discreteness_check(const Dgla& L)
{
    DiscretenessReport rep{};
    // closest negative degree to 0 gives the smallest witness level
    std::optional<std::size_t> neg;
    for (std::size_t i = 0; i < L.dim(); ++i)
        if (L.degree(i) < 0 && (!neg || L.degree(i) > L.degree(*neg)))
            neg = i;

    int level = 1;
    if (neg) {
        const int k = -L.degree(*neg);
        level = std::min(k, 4);
        if (k <= FormKey::kMaxLevel) {
            PolyForm w = PolyForm::t(k, 0);
            for (int j = 1; j < k; ++j)
                w = wedge(w, PolyForm::dt(k, j));
            FormAlgebra Ak(L, k);
            rep.witness = Ak.differential(tensor(w, L.unit(*neg)));
            rep.witness_symbol = L.basis().symbols[*neg];
        }
    }
    rep.kernel_level = level;

    // d on total degree 0 elements of Omega_level(V) of polynomial degree <= 1
    FormAlgebra A(L, level);
    std::vector<LieForm> columns;
    for (std::size_t i = 0; i < L.dim(); ++i) {
        const int p = -L.degree(i);
        if (p < 0 || p > level)
            continue;
        for (unsigned mask = 0; mask < (1u << level); ++mask) {
            if (__builtin_popcount(mask) != p)
                continue;
            std::vector<int> dts;
            for (int j = 0; j < level; ++j)
                if ((mask >> j) & 1u)
                    dts.push_back(j + 1);
            for (int lin = 0; lin <= level; ++lin) {
                std::vector<int> exps(level, 0);
                if (lin > 0)
                    exps[lin - 1] = 1;
                LieForm col(L.dim(), level);
                col[i] = PolyForm::monomial(level, 1, exps, dts);
                columns.push_back(std::move(col));
            }
        }
    }
    std::map<std::pair<std::size_t, FormKey>, std::size_t> rows;
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> images;
    for (const auto& col : columns) {
        auto image = A.differential(col);
        std::vector<std::pair<std::size_t, Scalar>> entries;
        for (std::size_t i = 0; i < image.dim(); ++i)
            for (const auto& [key, c] : image[i].terms()) {
                auto [it, _] = rows.emplace(std::make_pair(i, key), rows.size());
                entries.emplace_back(it->second, c);
            }
        images.push_back(std::move(entries));
    }
    Matrix m(rows.size(), columns.size());
    for (std::size_t j = 0; j < images.size(); ++j)
        for (const auto& [r, c] : images[j])
            m(r, j) = c;
    rep.kernel_dimension = columns.size() - rank(m);

    auto complex = L.as_complex();
    Matrix d0 = complex.block(0);
    rep.constant_dimension = L.basis().indices_in_degree(0).size() - rank(d0);
    rep.discrete = rep.kernel_dimension == rep.constant_dimension;
    return rep;
}

DeligneComparison deligne_compare(const Dgla& L, const LieForm& g, const Vec& tau)
{
    for (std::size_t i = 0; i < L.dim(); ++i)
        if (L.degree(i) < 0)
            fail(ErrorKind::NotNonNegativelyGraded,
                 "basis element " + L.basis().symbols[i] + " has degree " + std::to_string(L.degree(i)));
    make_mc(L, tau);
    const int n = g.level();
    FormAlgebra A(L, n);
    if (!A.has_total_degree(g, 0))
        fail(ErrorKind::DegreeMismatch, "gauge elements have total degree 0");
    DeligneComparison out;
    out.simplex = gauge_action(A, g, constant_include(tau, n));
    out.recovered_gauge = gauge_solve_to_vertex(L, out.simplex);
    out.recovered_base = vertex_evaluate(out.simplex);
    const Vec eg = vertex_evaluate(g);
    out.normalized_gauge = bch(A, g, constant_include(-eg, n));
    out.normalized_base = gauge_act(L, eg, tau);
    out.agrees = out.recovered_gauge == out.normalized_gauge && out.recovered_base == out.normalized_base;
    return out;
}

// ------------------------------------------------------------------ rendering

std::string render(const Dgla& L, const LieForm& xi)
{
    std::vector<std::string> pieces;
    for (std::size_t i = 0; i < xi.dim(); ++i) {
        const auto& w = xi[i];
        if (w.is_zero())
            continue;
        const auto& sym = L.basis().symbols[i];
        const auto& terms = w.terms();
        if (terms.size() == 1 && terms.begin()->first.raw() == 0) {
            const Scalar& c = terms.begin()->second;
            if (c == 1)
                pieces.push_back(sym);
            else if (c == -1)
                pieces.push_back("-" + sym);
            else
                pieces.push_back(to_string(c) + "*" + sym);
        } else {
            pieces.push_back("(" + mcspace::render(w) + ")*" + sym);
        }
    }
    if (pieces.empty())
        return "0";
    std::string out = pieces[0];
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        if (pieces[i][0] == '-')
            out += " - " + pieces[i].substr(1);
        else
            out += " + " + pieces[i];
    }
    return out;
}

LieForm parse_lie_form(const Dgla& L, int level, const std::string& text)
{
    LieForm out(L.dim(), level);
    // split at top-level signs
    std::vector<std::pair<int, std::string>> terms;
    int depth = 0;
    int sign = 1;
    std::string cur;
    auto flush = [&] {
        std::string t;
        for (char c : cur)
            if (!std::isspace(static_cast<unsigned char>(c)))
                t += c;
        if (!t.empty())
            terms.emplace_back(sign, t);
        else if (!terms.empty() || sign != 1)
            fail(ErrorKind::ParseError, "dangling sign in '" + text + "'");
        cur.clear();
    };
    for (char c : text) {
        if (c == '(')
            ++depth;
        else if (c == ')' && --depth < 0)
            fail(ErrorKind::ParseError, "unbalanced ')' in '" + text + "'");
        if (depth == 0 && (c == '+' || c == '-')) {
            flush();
            sign = c == '-' ? -1 : 1;
            continue;
        }
        cur += c;
    }
    if (depth != 0)
        fail(ErrorKind::ParseError, "unbalanced '(' in '" + text + "'");
    flush();
    if (terms.empty())
        fail(ErrorKind::ParseError, "empty form");
    for (auto& [s, t] : terms) {
        if (t == "0")
            continue;
        Scalar coeff = s;
        std::size_t pos = 0;
        // rational prefix
        std::size_t j = 0;
        while (j < t.size() && (std::isdigit(static_cast<unsigned char>(t[j])) || t[j] == '/'))
            ++j;
        if (j > 0) {
            coeff *= parse_scalar(t.substr(0, j));
            pos = j;
            if (pos < t.size() && t[pos] == '*')
                ++pos;
        }
        PolyForm w = PolyForm::constant(level, 1);
        if (pos < t.size() && t[pos] == '(') {
            int dep = 0;
            std::size_t close = pos;
            for (; close < t.size(); ++close) {
                if (t[close] == '(')
                    ++dep;
                else if (t[close] == ')' && --dep == 0)
                    break;
            }
            w = parse_form(level, t.substr(pos + 1, close - pos - 1));
            pos = close + 1;
            if (pos < t.size() && t[pos] == '*')
                ++pos;
        }
        auto sym = t.substr(pos);
        if (sym.empty())
            fail(ErrorKind::ParseError, "term '" + t + "' has no basis symbol");
        auto idx = L.basis().find(sym);
        if (!idx)
            fail(ErrorKind::ParseError, "unknown symbol '" + sym + "'");
        out[*idx] += coeff * w;
    }
    return out;
}

} // namespace mcspace
