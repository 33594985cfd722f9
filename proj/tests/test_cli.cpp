#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mcspace/algebra_file.hpp"
#include "mcspace/cli.hpp"
#include "mcspace/corpus.hpp"

using namespace mcspace;
using cli::Status;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string temp_file(const std::string& name, const std::string& text)
{
    auto path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

bool contains(const std::string& hay, const std::string& needle)
{
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("fnv1a64 reference values")
{
    CHECK(cli::fnv1a64("") == "fnv1a64:cbf29ce484222325");
    CHECK(cli::fnv1a64("a") == "fnv1a64:af63dc4c8601ec8c");
    CHECK(cli::fnv1a64("foobar") == "fnv1a64:85944171f73967e8");
}

TEST_CASE("report header and exit codes")
{
    auto ok = cli::run({"validate", "--corpus", "xab"});
    CHECK(ok.status == Status::Ok);
    auto text = cli::render(ok);
    CHECK(text.rfind("mc-calculus/1\ncommand: validate --corpus xab\ninput: corpus xab\ndigest: fnv1a64:", 0) == 0);
    CHECK(contains(text, "nilpotency class: 2"));
    CHECK(contains(text, "status: 0 ok\n"));

    auto unknown = cli::run({"frobnicate"});
    CHECK(unknown.status == Status::InputError);
    CHECK(contains(cli::render(unknown), "kind: UnknownCommand"));
    CHECK(cli::run({}).status == Status::InputError);
    CHECK(cli::run({"validate"}).status == Status::InputError);
    CHECK(cli::run({"validate", "--corpus", "nope"}).status == Status::InputError);
    CHECK(cli::run({"homotopy", "--corpus", "xab", "--bogus"}).status == Status::InputError);
    CHECK(cli::run({"forms", "face", "--level", "2", "--form", "t1"}).status == Status::InputError);
    CHECK(cli::run({"forms", "spin", "--level", "2", "--form", "t1"}).status == Status::InputError);

    auto help = cli::run({"homotopy", "--help"});
    CHECK(help.status == Status::Ok);
    REQUIRE(help.plain);
    CHECK(contains(*help.plain, "--kmax"));
}

TEST_CASE("input errors are rendered with context")
{
    auto path = temp_file("mc_calc_bad.dgla", "algebra bad\ngen x 0\nd x = y\n");
    auto r = cli::run({"validate", "--algebra", path});
    CHECK(r.status == Status::InputError);
    auto text = cli::render(r);
    CHECK(contains(text, "kind: ParseError"));
    CHECK(contains(text, "line 3: unknown symbol 'y'"));

    auto tau = cli::run({"gauge-act", "--corpus", "xab", "--x", "x", "--tau", "x"});
    CHECK(tau.status == Status::InputError);
    CHECK(contains(cli::render(tau), "DegreeMismatch"));
}

TEST_CASE("property failures exit with 1")
{
    // [a,a] = c, so a is not Maurer-Cartan
    auto path = temp_file("mc_calc_sq.dgla", "algebra sq\ngen a -1\ngen c -2\n[a,a] = c\n");
    auto r = cli::run({"mc-check", "--algebra", path, "--element", "a"});
    CHECK(r.status == Status::PropertyFailure);
    CHECK(contains(cli::render(r), "FAIL element is Maurer-Cartan"));
    CHECK(cli::run({"mc-check", "--algebra", path, "--element", "c"}).status == Status::InputError);
    CHECK(cli::run({"mc-check", "--corpus", "xab", "--element=-a - 1/2*b"}).status == Status::Ok);
}

TEST_CASE("homotopy of the chain-degree-2 abelian algebra")
{
    auto r = cli::run({"homotopy", "--corpus", "abelian_c2"});
    CHECK(r.status == Status::Ok);
    CHECK(contains(cli::render(r), "summary: pi_3 dimension 1; all other pi trivial"));
}

TEST_CASE("samelson on two degree-1 cycles")
{
    auto L = corpus::truncated_tensor({{"u", -1, {}}, {"v", -1, {}}}, 2, corpus::sl2());
    auto path = temp_file("mc_calc_uv.dgla", write_algebra_file("uv_sl2", L));
    auto r = cli::run({"samelson", "--algebra", path, "--x", "u_E", "--y", "v_F"});
    auto text = cli::render(r);
    CHECK(r.status == Status::Ok);
    CHECK(contains(text, "curtis: (-2*dt1*dt2)*uv_H"));
    CHECK(contains(text, "shuffle: (-2*dt1*dt2)*uv_H"));
    CHECK(contains(text, "omega^2 (x) [x,y]: (2*dt1*dt2)*uv_H"));
    CHECK(contains(text, "homologous to omega^2 (x) [x,y]: no"));
    CHECK(contains(text, "PASS Curtis product = shuffle bracket"));
    CHECK(cli::run({"samelson", "--algebra", path, "--x", "u_E + v_E*0", "--y", "0"}).status ==
          Status::InputError);
}

TEST_CASE("forms commands")
{
    auto r = cli::run({"forms", "face", "--level", "2", "--form", "t1*dt2", "--index", "0"});
    CHECK(r.status == Status::Ok);
    CHECK(contains(cli::render(r), "d_0 w: dt1 - t1*dt1"));
    auto i = cli::run({"forms", "integrate", "--level", "3", "--form", "6*dt1*dt2*dt3"});
    CHECK(contains(cli::render(i), "integral: 1"));
    auto lo = cli::run({"forms", "integrate", "--level", "3", "--form", "t1*dt2"});
    CHECK(contains(cli::render(lo), "top-degree component: no"));
    auto e = cli::run({"forms", "extend", "--level", "1", "--form", "t1"});
    CHECK(e.status == Status::InputError);
    CHECK(contains(cli::render(e), "FacesNotZero"));
    auto c = cli::run({"forms", "contract", "--level", "1", "--form", "dt1"});
    CHECK(contains(cli::render(c), "h(w): -1 + t1"));
    CHECK(c.status == Status::Ok);
}

TEST_CASE("seeded commands")
{
    auto a = cli::render(cli::run({"fill-horn", "--corpus", "heisenberg", "--level", "2", "--missing", "1", "--seed", "4"}));
    auto b = cli::render(cli::run({"fill-horn", "--corpus", "heisenberg", "--level", "2", "--missing", "1", "--seed", "4"}));
    CHECK(a == b);
    CHECK(contains(a, "seed: 4"));
    CHECK(contains(a, "PASS filler restricts to the given faces"));

    ::setenv("MC_CALC_SEED", "4", 1);
    auto env = cli::render(cli::run({"fill-horn", "--corpus", "heisenberg", "--level", "2", "--missing", "1"}));
    ::setenv("MC_CALC_SEED", "x4", 1);
    auto bad = cli::run({"fill-horn", "--corpus", "heisenberg", "--level", "2", "--missing", "1"});
    ::unsetenv("MC_CALC_SEED");
    auto dflt = cli::render(cli::run({"fill-horn", "--corpus", "heisenberg", "--level", "2", "--missing", "1"}));
    CHECK(bad.status == Status::InputError);
    // the echo differs, the results do not
    CHECK(env.substr(env.find("seed:")) == a.substr(a.find("seed:")));
    CHECK(contains(dflt, "seed: 0"));

    for (const auto* kind : {"mc", "exp", "g"})
        for (int k = 0; k <= 3; ++k) {
            auto r = cli::run({"fill-horn", "--corpus", "xab", "--level", "3", "--missing", std::to_string(k), "--kind", kind});
            CHECK_MESSAGE(r.status == Status::Ok, cli::render(r));
        }

    // d0 x2 = x2(t1 = 1) must equal d1 x0 = x0(t1 = 0)
    auto given = cli::run({"fill-horn", "--corpus", "abelian_c0", "--level", "2", "--missing", "1", "--kind", "g",
                           "--face", "0=(t1)*e", "--face", "2=(1 - t1)*e"});
    CHECK(given.status == Status::Ok);
    CHECK(contains(cli::render(given), "filler: "));
    auto broken = cli::run({"fill-horn", "--corpus", "abelian_c0", "--level", "2", "--missing", "1", "--kind", "g",
                            "--face", "0=(t1)*e", "--face", "2=e"});
    CHECK(broken.status == Status::InputError);
    CHECK(contains(cli::render(broken), "IncompatibleHorn"));
}

TEST_CASE("deligne command")
{
    auto pos = cli::run({"deligne", "--corpus", "deligne_sl2", "--level", "2"});
    CHECK(pos.status == Status::Ok);
    CHECK(contains(cli::render(pos), "[comparison]"));
    auto neg = cli::render(cli::run({"deligne", "--corpus", "abelian_c1"}));
    CHECK(contains(neg, "Z^0 Omega_.(L) discrete: no"));
    CHECK(contains(neg, "witness from e: "));
    CHECK_FALSE(contains(neg, "[comparison]"));
}

TEST_CASE("selftest is deterministic and green")
{
    auto a = cli::run({"selftest", "--seed", "0"});
    auto b = cli::run({"selftest", "--seed", "0"});
    CHECK(a.status == Status::Ok);
    CHECK(cli::render(a) == cli::render(b));
    CHECK(a.ledger.size() >= 25);
    auto c = cli::run({"selftest", "--seed", "7"});
    CHECK(c.status == Status::Ok);
}

TEST_CASE("golden reports")
{
    const std::string dir = std::string(MCSPACE_SOURCE_DIR) + "/tests/golden/";
    CHECK(cli::render(cli::run({"validate", "--corpus", "xab"})) == slurp(dir + "validate_xab.txt"));
    CHECK(cli::render(cli::run({"homotopy", "--corpus", "abelian_c2", "--kmax", "3"})) ==
          slurp(dir + "homotopy_abelian_c2.txt"));
    CHECK(cli::render(cli::run({"connecting", "--corpus", "xab_shifted", "--x", "b"})) ==
          slurp(dir + "connecting_xab_shifted.txt"));
}

TEST_CASE("corpus files match the builders")
{
    for (const auto& name : corpus::names()) {
        INFO(name);
        auto f = load_algebra_file(std::string(MCSPACE_SOURCE_DIR) + "/corpus/" + name + ".dgla");
        CHECK(f.name == name);
        CHECK(write_algebra_file(name, f.algebra) == write_algebra_file(name, corpus::named(name)));
        auto show = cli::run({"corpus", "show", name});
        REQUIRE(show.plain);
        CHECK(*show.plain == write_algebra_file(name, f.algebra));
    }
    auto list = cli::run({"corpus", "list"});
    REQUIRE(list.plain);
    CHECK(contains(*list.plain, "xab_shifted\n"));
}
