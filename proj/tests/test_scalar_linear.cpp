#include <doctest.h>

#include <algorithm>
#include <random>

#include "mcspace/corpus.hpp"
#include "mcspace/scalar_linear.hpp"

using namespace mcspace;

TEST_CASE("scalars stay canonical")
{
    Scalar a = parse_scalar("6/-4");
    CHECK(to_string(a) == "-3/2");
    CHECK(a.get_den() > 0);
    CHECK_THROWS_AS(parse_scalar("1/0"), Error);
    CHECK_THROWS_AS(parse_scalar("x"), Error);
}

TEST_CASE("cohomology of small complexes")
{
    SUBCASE("single element, zero differential")
    {
        CochainComplex c(GradedBasis({"x"}, {-1}), Matrix(1, 1));
        CHECK(cohomology(c, -1).dimension() == 1);
        CHECK(cohomology(c, 0).dimension() == 0);
    }
    SUBCASE("acyclic two-term complex")
    {
        Matrix d(2, 2);
        d(1, 0) = 1;
        CochainComplex c(GradedBasis({"x", "a"}, {0, 1}), d);
        CHECK(cohomology(c, 0).dimension() == 0);
        CHECK(cohomology(c, 1).dimension() == 0);
    }
    SUBCASE("x, a, b with dx = a")
    {
        Matrix d(3, 3);
        d(1, 0) = 1;
        CochainComplex c(GradedBasis({"x", "a", "b"}, {0, 1, 1}), d);
        auto h0 = cohomology(c, 0);
        auto h1 = cohomology(c, 1);
        CHECK(h0.dimension() == 0);
        REQUIRE(h1.dimension() == 1);
        // the class is [b]: b is not a coboundary, a is
        CHECK(h1.is_coboundary(Vec{0, 1, 0}));
        CHECK_FALSE(h1.is_coboundary(Vec{0, 0, 1}));
        auto dec = h1.decompose(Vec{0, 3, 2});
        Vec rebuilt = dec.coefficients[0] * h1.representatives()[0] + c.apply(dec.primitive);
        CHECK(rebuilt == Vec{0, 3, 2});
        CHECK_THROWS_AS(h0.decompose(Vec{1, 0, 0}), Error);
    }
    SUBCASE("d o d != 0 is rejected")
    {
        Matrix d(3, 3);
        d(1, 0) = 1;
        d(2, 1) = 1;
        CHECK_THROWS_AS(CochainComplex(GradedBasis({"x", "y", "z"}, {0, 1, 2}), d), Error);
    }
}

TEST_CASE("decompose is a section on corpus complexes")
{
    std::mt19937_64 rng(7);
    for (const auto& name : corpus::names()) {
        auto L = corpus::named(name);
        auto C = L.as_complex();
        for (int k = L.basis().min_degree(); k <= L.basis().max_degree(); ++k) {
            auto H = cohomology(C, k);
            for (int trial = 0; trial < 5; ++trial) {
                // random cocycle: coboundary plus random combination of representatives
                Vec z = C.apply(corpus::random_element(L, k - 1, rng));
                for (const auto& r : H.representatives())
                    z += corpus::small_rational(rng) * r;
                auto dec = H.decompose(z);
                Vec back = C.apply(dec.primitive);
                for (std::size_t i = 0; i < dec.coefficients.size(); ++i)
                    back += dec.coefficients[i] * H.representatives()[i];
                CHECK(back == z);
            }
        }
    }
}

TEST_CASE("cohomology dimension is invariant under basis permutation")
{
    auto L = corpus::deligne_sl2();
    auto C = L.as_complex();
    const std::size_t n = L.dim();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i)
        perm[i] = (i * 5 + 3) % n;
    std::vector<std::string> syms(n);
    std::vector<int> degs(n);
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        syms[perm[i]] = L.basis().symbols[i];
        degs[perm[i]] = L.degree(i);
        for (std::size_t j = 0; j < n; ++j)
            d(perm[i], perm[j]) = C.differential()(i, j);
    }
    CochainComplex P(GradedBasis(syms, degs), d);
    for (int k = -1; k <= 2; ++k)
        CHECK(cohomology(C, k).dimension() == cohomology(P, k).dimension());
}

TEST_CASE("solve_linear")
{
    SUBCASE("identity")
    {
        Vec t{1, Scalar(-2, 3), 5};
        CHECK(*solve_linear(Matrix::identity(3), t) == t);
    }
    SUBCASE("zero map has no solution for nonzero target")
    {
        CHECK_FALSE(solve_linear(Matrix(2, 2), Vec{1, 0}).has_value());
    }
    SUBCASE("unique 2x2 solution verified by substitution")
    {
        Matrix m(2, 2);
        m(0, 0) = Scalar(1, 2);
        m(0, 1) = 3;
        m(1, 0) = -1;
        m(1, 1) = Scalar(2, 7);
        Vec t{Scalar(5, 3), 4};
        auto x = solve_linear(m, t);
        REQUIRE(x);
        CHECK(m.apply(*x) == t);
    }
    SUBCASE("dimension mismatch")
    {
        CHECK_THROWS_AS(solve_linear(Matrix(2, 2), Vec{1, 2, 3}), Error);
    }
}

TEST_CASE("echelon basis membership")
{
    EchelonBasis e(3);
    CHECK(e.insert(Vec{1, 1, 0}));
    CHECK(e.insert(Vec{0, 1, 1}));
    CHECK_FALSE(e.insert(Vec{1, 2, 1}));
    CHECK(e.contains(Vec{2, 0, -2}));
    CHECK_FALSE(e.contains(Vec{0, 0, 1}));
}
