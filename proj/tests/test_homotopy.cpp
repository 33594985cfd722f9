#include <doctest.h>

#include <random>

#include "mcspace/corpus.hpp"
#include "mcspace/homotopy.hpp"

using namespace mcspace;

namespace {

// dim ker(d_tau: L^{-k} -> L^{-k+1}) - rank(d_tau: L^{-k-1} -> L^{-k}), from raw matrices
std::size_t homology_dimension(const Dgla& L, const Vec& tau, int k)
{
    auto Lt = twist(L, tau);
    const auto& D = Lt.differential_matrix();
    auto here = L.basis().indices_in_degree(-k);
    auto up = L.basis().indices_in_degree(-k + 1);
    auto below = L.basis().indices_in_degree(-k - 1);
    Matrix out(up.size(), here.size()), in(here.size(), below.size());
    for (std::size_t j = 0; j < here.size(); ++j)
        for (std::size_t i = 0; i < up.size(); ++i)
            out(i, j) = D(up[i], here[j]);
    for (std::size_t j = 0; j < below.size(); ++j)
        for (std::size_t i = 0; i < here.size(); ++i)
            in(i, j) = D(here[i], below[j]);
    return here.size() - rank(out) - rank(in);
}

} // namespace

TEST_CASE("homotopy of abelian K(Q,k) models")
{
    for (int k = 0; k <= 3; ++k) {
        auto L = corpus::abelian(k);
        auto rep = homotopy_groups(L, L.zero(), 3);
        for (const auto& lvl : rep.levels)
            CHECK(lvl.dimension == (lvl.k == k ? 1u : 0u));
        auto text = render(L, rep);
        CHECK(text.find("summary: pi_" + std::to_string(k + 1) + " dimension 1; all other pi trivial") !=
              std::string::npos);
    }
}

TEST_CASE("homotopy dimensions agree with twisted homology")
{
    auto L = corpus::xab();
    auto rep = homotopy_groups(L, L.zero(), 2);
    CHECK(rep.levels[0].dimension == 0);
    auto tau = L.parse_element("-a - 1/2*b");
    auto rep2 = homotopy_groups(L, tau, 2);
    CHECK(rep2.levels[0].dimension == homology_dimension(L, tau, 0));
    CHECK_THROWS_AS(homotopy_groups(L, L.parse_element("x"), 2), Error);

    std::mt19937_64 rng(41);
    for (const auto& name : corpus::names()) {
        auto M = corpus::named(name);
        for (int trial = 0; trial < 3; ++trial) {
            auto t = corpus::random_mc(M, rng);
            auto r = homotopy_groups(M, t, 3);
            for (const auto& lvl : r.levels) {
                CHECK_MESSAGE(lvl.dimension == homology_dimension(M, t, lvl.k), name);
                CHECK(lvl.simplices_mc);
                CHECK(lvl.simplices.size() == lvl.dimension);
            }
        }
    }
}

TEST_CASE("pi_1 group law")
{
    std::mt19937_64 rng(42);
    for (const auto& name : {"heisenberg", "filiform4", "filiform5", "n4", "deligne_sl2", "xab"}) {
        auto L = corpus::named(name);
        auto tau = corpus::random_mc(L, rng);
        auto chk = pi1_group_law(L, tau, 7);
        CHECK(chk.associative);
        CHECK(chk.representative_independent);
    }
    auto H = corpus::heisenberg();
    auto rep = homotopy_groups(H, H.zero(), 1);
    CHECK(rep.levels[0].dimension == 3);
    CHECK_FALSE(rep.pi1_products.empty());
}

TEST_CASE("pi_1 acts on higher homotopy through exp(ad)")
{
    auto L = corpus::truncated_tensor({{"s", 0, {}}, {"w", -2, {}}}, 2, corpus::sl2());
    auto tau = L.zero();
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 6; ++trial) {
        auto y = corpus::random_element(L, 0, rng);
        if (!L.differential(y).is_zero())
            continue;
        auto x = corpus::random_element(L, -2, rng);
        auto act = pi1_action(L, tau, y, x, 2);
        CHECK(act.agrees);
    }
    auto act = pi1_action(L, tau, L.parse_element("s_E"), L.parse_element("w_F"), 2);
    CHECK(act.agrees);
    CHECK(act.algebraic != homology_class(L, tau, 2, L.parse_element("w_F")));
    CHECK_THROWS_AS(pi1_action(L, tau, L.parse_element("w_E"), L.parse_element("w_F"), 2), Error);
}

TEST_CASE("Samelson products by Curtis' formula")
{
    auto L = corpus::truncated_tensor({{"u", -1, {}}, {"v", -1, {}}}, 2, corpus::sl2());
    auto x = L.parse_element("u_E"), y = L.parse_element("v_F");
    auto v = samelson(L, x, 1, y, 1);
    CHECK(v.higher_terms_vanish);
    CHECK(v.order_independent);
    CHECK(v.curtis_equals_shuffle);
    // the product comes out as -omega^2 (x) [x,y]
    CHECK(v.curtis == -v.target);
    CHECK_FALSE(v.homologous_to_target);

    auto zero = samelson(L, x, 1, L.parse_element("u_F"), 1); // u u = 0
    CHECK(zero.curtis.is_zero());
    CHECK(zero.homologous_to_target);

    auto W = corpus::truncated_tensor({{"u", -1, {}}, {"w", -2, {}}}, 2, corpus::sl2());
    auto v12 = samelson(W, W.parse_element("u_E"), 1, W.parse_element("w_F"), 2);
    CHECK(v12.curtis_equals_shuffle);
    CHECK(v12.higher_terms_vanish);
    CHECK(v12.homologous_to_target);
    CHECK(v12.curtis == v12.target);

    CHECK_THROWS_AS(samelson(L, L.zero(), 0, y, 1), Error);
    CHECK_THROWS_AS(samelson(corpus::uw_sl2(), corpus::uw_sl2().parse_element("w_E"), 2,
                             corpus::uw_sl2().parse_element("u_F"), 1),
                    Error);
}

TEST_CASE("Samelson fuzz over corpus algebras")
{
    std::mt19937_64 rng(44);
    for (const auto& name : {"uw_sl2", "wsl2", "xab_shifted", "abelian_c1", "heisenberg", "filiform4"}) {
        auto L = corpus::named(name);
        for (int p = 1; p <= 2; ++p)
            for (int q = 1; p + q <= 3; ++q) {
                auto cyc = [&](int k) {
                    auto idx = L.basis().indices_in_degree(-k);
                    Vec z(L.dim());
                    for (const auto& c : nullspace(L.as_complex().block(-k))) {
                        auto s = corpus::small_rational(rng);
                        for (std::size_t j = 0; j < idx.size(); ++j)
                            z[idx[j]] += s * c[j];
                    }
                    return z;
                };
                auto v = samelson(L, cyc(p), p, cyc(q), q);
                INFO(name, " p=", p, " q=", q);
                CHECK(v.higher_terms_vanish);
                CHECK(v.order_independent);
                CHECK(v.curtis_equals_shuffle);
                if ((p * q) % 2 == 0)
                    CHECK(v.homologous_to_target);
                auto expected = (p * q) % 2 == 0 ? v.target : -v.target;
                CHECK(v.curtis == expected);
            }
    }
}

TEST_CASE("connecting identity")
{
    auto A = corpus::abelian(2);
    auto c = connecting_identity(A, A.zero(), A.unit(0), 2);
    CHECK(c.holds);
    CHECK_FALSE(c.negated_holds);

    auto S = corpus::xab_shifted();
    auto b = S.parse_element("b");
    auto v = connecting_identity(S, S.zero(), b, 3);
    CHECK(v.holds);
    CHECK_THROWS_AS(connecting_identity(S, S.zero(), S.parse_element("x"), 2), Error);
    CHECK_THROWS_AS(connecting_identity(S, S.zero(), b, 2), Error);
}
