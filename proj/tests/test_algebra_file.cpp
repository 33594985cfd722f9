#include <doctest.h>

#include "mcspace/algebra_file.hpp"
#include "mcspace/corpus.hpp"

using namespace mcspace;

namespace {

std::string error_of(const std::string& text, ErrorKind kind)
{
    try {
        parse_algebra_file(text);
    } catch (const Error& e) {
        CHECK(e.kind() == kind);
        return e.what();
    }
    FAIL("no error for:\n" << text);
    return {};
}

} // namespace

TEST_CASE("minimal abelian file")
{
    auto f = parse_algebra_file("algebra one\ngen e 3\n");
    CHECK(f.name == "one");
    CHECK(f.algebra.dim() == 1);
    CHECK(f.algebra.degree(0) == -3);
    CHECK(f.algebra.nilpotency_class() == 1);
    CHECK(validate(f.algebra).ok());
}

TEST_CASE("x,a,b file")
{
    auto f = parse_algebra_file(R"(# the standard example
algebra xab
gen x 0
gen a -1
gen b -1
d x = a        # trailing comment
[x,a] = b
)");
    const auto& L = f.algebra;
    CHECK(L.nilpotency_class() == 2);
    CHECK(validate(L).ok());
    CHECK(L.bracket(L.parse_element("a"), L.parse_element("x")) == -L.parse_element("b"));
    CHECK(L.differential(L.parse_element("x")) == L.parse_element("a"));
}

TEST_CASE("structural faults are validation errors")
{
    // d b = x breaks d[x,a] = [dx,a] + [x,da]
    auto msg = error_of("algebra bad\ngen x 0\ngen a -1\ngen b -1\nd x = a\nd b = a\n[x,a] = b\n",
                        ErrorKind::ValidationError);
    CHECK(msg.find("derivation") != std::string::npos);

    // nilpotent but (e1,e2,e3) sums to -e5
    auto jac = error_of(R"(algebra nj
gen e1 0
gen e2 0
gen e3 0
gen e4 0
gen e5 0
[e1,e2] = e3
[e1,e3] = e4
[e2,e4] = e5
)",
                        ErrorKind::ValidationError);
    CHECK(jac.find("jacobi") != std::string::npos);
    CHECK(jac.find("(e1,e2,e3)") != std::string::npos);
}

TEST_CASE("parse errors carry line numbers")
{
    auto unknown = error_of("algebra t\ngen x 0\nd x = q\n", ErrorKind::ParseError);
    CHECK(unknown.find("line 3") != std::string::npos);
    CHECK(unknown.find("'q'") != std::string::npos);

    CHECK(error_of("algebra t\ngen x 0\ngen x 1\n", ErrorKind::ParseError).find("line 3") != std::string::npos);
    CHECK(error_of("algebra t\ngen x 0\ngen a -1\nd x = a\nd x = 2*a\n", ErrorKind::ParseError)
              .find("line 5") != std::string::npos);
    auto mirror = error_of("algebra t\ngen x 0\ngen a 0\n[x,a] = a\n[a,x] = -a\n", ErrorKind::ParseError);
    CHECK(mirror.find("line 5") != std::string::npos);
    CHECK(mirror.find("line 4") != std::string::npos);
    CHECK(error_of("gen x 0\n", ErrorKind::ParseError).find("algebra") != std::string::npos);
    CHECK(error_of("algebra t\ngen x zero\n", ErrorKind::ParseError).find("line 2") != std::string::npos);
    CHECK(error_of("algebra t\ngen x 0\nfrobnicate x\n", ErrorKind::ParseError).find("line 3") !=
          std::string::npos);
    CHECK(error_of("algebra t\ngen x 0\nd x = 2*\n", ErrorKind::ParseError).find("line 3") != std::string::npos);
    CHECK(error_of("algebra t\ngen x 0\ngen y 0\nweight x 1\n", ErrorKind::ParseError).find("'y'") !=
          std::string::npos);
}

TEST_CASE("weights override the lower central series")
{
    auto f = parse_algebra_file("algebra w\ngen x 0\ngen y 0\nweight x 1\nweight y 3\n");
    CHECK(f.algebra.weights() == std::vector<int>{1, 3});
    CHECK_FALSE(f.algebra.filtration_from_lcs());
    auto again = parse_algebra_file(write_algebra_file("w", f.algebra));
    CHECK(again.algebra.weights() == std::vector<int>{1, 3});
}

TEST_CASE("round trip of the corpus")
{
    for (const auto& name : corpus::names()) {
        auto L = corpus::named(name);
        auto text = write_algebra_file(name, L);
        auto f = parse_algebra_file(text);
        INFO(name);
        CHECK(f.name == name);
        CHECK(f.algebra.basis().symbols == L.basis().symbols);
        CHECK(f.algebra.basis().degrees == L.basis().degrees);
        CHECK(f.algebra.differential_matrix() == L.differential_matrix());
        for (std::size_t i = 0; i < L.dim(); ++i)
            for (std::size_t j = 0; j < L.dim(); ++j)
                CHECK(f.algebra.bracket(L.unit(i), L.unit(j)) == L.bracket(L.unit(i), L.unit(j)));
        CHECK(f.algebra.weights() == L.weights());
        CHECK(write_algebra_file(name, f.algebra) == text);
    }
}
