#include "mcspace/homotopy.hpp"

#include <random>
#include <sstream>

#include "mcspace/corpus.hpp"
#include "mcspace/dold_kan.hpp"

namespace mcspace {

namespace {

Cohomology twisted_homology(const Dgla& L, const Vec& tau, int k)
{
    return Cohomology(twist(L, tau).as_complex(), -k);
}

bool all_zero(const std::vector<Scalar>& v)
{
    for (const auto& s : v)
        if (s != 0)
            return false;
    return true;
}

Vec exp_ad(const Dgla& L, const Vec& y, const Vec& x)
{
    Vec out = x, term = x;
    Scalar fact = 1;
    for (int n = 1; !term.is_zero(); ++n) {
        if (n > L.nilpotency_class() + 1)
            fail(ErrorKind::NotNilpotent, "exp(ad y) did not terminate");
        term = L.bracket(y, term);
        fact *= n;
        out += (1 / fact) * term;
    }
    return out;
}

void require_twisted_cycle(const Dgla& L, const Vec& tau, const Vec& x, int k, const char* what)
{
    if (!x.is_zero() && !L.is_homogeneous(x, -k))
        fail(ErrorKind::PreconditionFailed, std::string(what) + " does not have degree " + std::to_string(-k));
    if (!twisted_differential(L, tau, x).is_zero())
        fail(ErrorKind::PreconditionFailed, std::string(what) + " is not a d_tau-cocycle");
}

std::string join(const std::vector<Scalar>& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ", " : "") + to_string(v[i]);
    return out + ")";
}

} // namespace

HomotopyGroupReport homotopy_groups(const Dgla& L, const Vec& tau, int k_max)
{
    make_mc(L, tau);
    if (k_max < 0 || k_max + 1 > FormKey::kMaxLevel)
        fail(ErrorKind::PreconditionFailed, "k_max out of range");
    HomotopyGroupReport rep;
    rep.tau = tau;
    const auto complex = twist(L, tau).as_complex();
    std::vector<Cohomology> H;
    for (int k = 0; k <= k_max; ++k) {
        H.emplace_back(complex, -k);
        HomotopyLevel lvl{k, H.back().dimension(), H.back().representatives(), {}, true};
        for (const auto& x : lvl.cycles) {
            auto s = constant_include(tau, k + 1) - tensor(omega(k + 1), x);
            lvl.simplices_mc = lvl.simplices_mc && mc_check(L, s).ok;
            lvl.simplices.push_back(std::move(s));
        }
        rep.levels.push_back(std::move(lvl));
    }
    for (int k1 = 0; k1 <= k_max; ++k1)
        for (int k2 = k1; k1 + k2 <= k_max; ++k2) {
            const auto& a = rep.levels[k1].cycles;
            const auto& b = rep.levels[k2].cycles;
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j) {
                    if (k1 == k2 && j < i)
                        continue;
                    auto coeffs = H[k1 + k2].decompose(L.bracket(a[i], b[j])).coefficients;
                    if (!all_zero(coeffs))
                        rep.brackets.push_back({k1, k2, i, j, coeffs});
                }
        }
    const auto& h0 = rep.levels[0].cycles;
    for (std::size_t i = 0; i < h0.size(); ++i)
        for (std::size_t j = 0; j < h0.size(); ++j) {
            auto z = bch(L, h0[i], h0[j]) - h0[i] - h0[j];
            auto coeffs = H[0].decompose(z).coefficients;
            if (!all_zero(coeffs))
                rep.pi1_products.push_back({0, 0, i, j, coeffs});
        }
    return rep;
}

std::vector<Scalar> homology_class(const Dgla& L, const Vec& tau, int k, const Vec& cycle)
{
    return twisted_homology(L, tau, k).decompose(cycle).coefficients;
}

Pi1Check pi1_group_law(const Dgla& L, const Vec& tau, std::uint64_t seed, int samples)
{
    make_mc(L, tau);
    auto H = twisted_homology(L, tau, 0);
    Pi1Check out{true, true};
    if (H.dimension() == 0)
        return out;
    std::mt19937_64 rng(seed);
    auto coin = [](std::mt19937_64& g) { return corpus::uniform(g, -2, 2); };
    const auto& reps = H.representatives();
    auto random_class = [&] {
        Vec v(L.dim());
        for (const auto& r : reps)
            v += Scalar(static_cast<long>(coin(rng))) * r;
        return v;
    };
    auto random_boundary = [&] {
        Vec c(L.dim());
        for (auto i : L.basis().indices_in_degree(-1))
            c[i] = static_cast<long>(coin(rng));
        return twisted_differential(L, tau, c);
    };
    auto cls = [&](const Vec& v) { return H.decompose(v).coefficients; };
    for (int s = 0; s < samples; ++s) {
        auto u = random_class(), v = random_class(), w = random_class();
        out.associative = out.associative &&
                          cls(bch(L, bch(L, u, v), w)) == cls(bch(L, u, bch(L, v, w)));
        auto u2 = u + random_boundary(), v2 = v + random_boundary();
        out.representative_independent =
            out.representative_independent && cls(bch(L, u2, v2)) == cls(bch(L, u, v));
    }
    return out;
}

Pi1Action pi1_action(const Dgla& L, const Vec& tau, const Vec& y, const Vec& x, int k)
{
    make_mc(L, tau);
    require_twisted_cycle(L, tau, y, 0, "y");
    require_twisted_cycle(L, tau, x, k, "x");
    Pi1Action out;
    out.algebraic = homology_class(L, tau, k, exp_ad(L, y, x));
    FormAlgebra A(L, k + 1);
    auto simplex = constant_include(tau, k + 1) - tensor(omega(k + 1), x);
    auto moved = gauge_action(A, constant_include(y, k + 1), simplex);
    Vec read(L.dim());
    for (std::size_t i = 0; i < L.dim(); ++i)
        read[i] = -integrate(moved[i]);
    out.transported = homology_class(L, tau, k, read);
    out.agrees = out.algebraic == out.transported && vertex_evaluate(moved) == tau;
    return out;
}

SamelsonVerdict samelson(const Dgla& L, const Vec& x, int p, const Vec& y, int q)
{
    // level-0 factors keep their higher BCH terms; pi_1 is handled by pi1_group_law
    if (p < 1 || q < 1 || p + q + 1 > FormKey::kMaxLevel)
        fail(ErrorKind::PreconditionFailed, "samelson: chain degrees must be at least 1");
    if ((!x.is_zero() && !L.is_homogeneous(x, -p)) || (!y.is_zero() && !L.is_homogeneous(y, -q)))
        fail(ErrorKind::DegreeMismatch, "samelson: arguments must have chain degrees p and q");
    if (!L.differential(x).is_zero() || !L.differential(y).is_zero())
        fail(ErrorKind::NotACycle, "samelson: arguments must be cycles");
    SamelsonVerdict v{};
    v.p = p;
    v.q = q;
    FormAlgebra A(L, p + q);
    const auto X = tensor(omega(p), x), Y = tensor(omega(q), y);
    const auto sh = shuffles(p, q);

    bool higher = true;
    LieForm sum = A.zero();
    auto product = [&](bool reversed) {
        LieForm acc = A.zero();
        for (std::size_t n = 0; n < sh.size(); ++n) {
            const auto& s = sh[reversed ? sh.size() - 1 - n : n];
            auto a = iterated_degeneracy(X, s.nu);
            auto b = iterated_degeneracy(Y, s.mu);
            auto comm = group_commutator(A, a, b);
            if (!reversed) {
                higher = higher && comm == A.bracket(a, b);
                sum += s.sign > 0 ? comm : -comm;
            }
            acc = bch(A, acc, s.sign > 0 ? comm : -comm);
        }
        return acc;
    };
    v.curtis = product(false);
    v.curtis_reversed = product(true);
    v.higher_terms_vanish = higher && v.curtis == sum;
    v.order_independent = v.curtis == v.curtis_reversed;
    v.shuffle = shuffle_bracket(L, X, Y);
    v.curtis_equals_shuffle = v.curtis == v.shuffle;
    v.target = tensor(omega(p + q), L.bracket(x, y));
    auto diff = integration_I(L, v.curtis - v.target);
    v.difference_class = Cohomology(L.as_complex(), -(p + q)).decompose(diff).coefficients;
    v.homologous_to_target = all_zero(v.difference_class);
    return v;
}

ConnectingVerdict connecting_identity(const Dgla& L, const Vec& tau, const Vec& x, int k)
{
    make_mc(L, tau);
    if (k < 0 || k + 1 > FormKey::kMaxLevel)
        fail(ErrorKind::PreconditionFailed, "degree out of range");
    require_twisted_cycle(L, tau, x, k, "x");
    FormAlgebra A(L, k + 1);
    const auto base = constant_include(tau, k + 1);
    const auto g = tensor(omega_tilde(k), x);
    ConnectingVerdict v;
    v.acted = gauge_action(A, g, base);
    v.expected = base - tensor(omega(k + 1), x);
    v.acted_negated = gauge_action(A, -g, base);
    v.holds = v.acted == v.expected;
    v.negated_holds = v.acted_negated == v.expected;
    return v;
}

std::string render(const Dgla& L, const HomotopyGroupReport& report)
{
    std::ostringstream out;
    out << "base point: " << L.render(report.tau) << "\n";
    std::vector<std::string> nonzero;
    for (const auto& lvl : report.levels) {
        out << "pi_" << lvl.k + 1 << ": dimension " << lvl.dimension;
        if (lvl.k == 0)
            out << " (exp of H_0 with the BCH product)";
        out << "\n";
        for (std::size_t i = 0; i < lvl.cycles.size(); ++i) {
            out << "  [" << i << "] x = " << L.render(lvl.cycles[i]) << "\n";
            out << "      simplex = " << render(L, lvl.simplices[i]) << "\n";
        }
        if (!lvl.cycles.empty())
            out << "  representatives Maurer-Cartan: " << (lvl.simplices_mc ? "yes" : "NO") << "\n";
        if (lvl.dimension != 0)
            nonzero.push_back("pi_" + std::to_string(lvl.k + 1) + " dimension " + std::to_string(lvl.dimension));
    }
    for (const auto& b : report.brackets)
        out << "bracket H_" << b.k1 << "[" << b.i << "] , H_" << b.k2 << "[" << b.j << "] -> H_"
            << b.k1 + b.k2 << " " << join(b.coefficients) << "\n";
    for (const auto& b : report.pi1_products)
        out << "pi_1 product correction [" << b.i << "] * [" << b.j << "] -> " << join(b.coefficients) << "\n";
    out << "summary: ";
    if (nonzero.empty()) {
        out << "all pi trivial";
    } else {
        for (std::size_t i = 0; i < nonzero.size(); ++i)
            out << (i ? ", " : "") << nonzero[i];
        out << "; all other pi trivial";
    }
    out << " (k <= " << report.levels.size() - 1 << ")\n";
    return out.str();
}

} // namespace mcspace
