#include "mcspace/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "mcspace/algebra_file.hpp"
#include "mcspace/corpus.hpp"
#include "mcspace/dold_kan.hpp"
#include "mcspace/homotopy.hpp"

namespace mcspace::cli {

namespace {

constexpr const char* kFormat = "mc-calculus/1";

struct Loaded {
    std::string name;
    Dgla algebra;
};

struct Context {
    Report& report;
    std::string algebra_path;
    std::string corpus_name;
    std::optional<std::uint64_t> seed_flag;

    Loaded load()
    {
        if (algebra_path.empty() == corpus_name.empty())
            fail(ErrorKind::ParseError, "give exactly one of --algebra PATH and --corpus NAME");
        Loaded out = corpus_name.empty()
                         ? [&] {
                               auto f = load_algebra_file(algebra_path);
                               return Loaded{f.name, f.algebra};
                           }()
                         : Loaded{corpus_name, corpus::named(corpus_name)};
        report.input = corpus_name.empty() ? "file " + algebra_path : "corpus " + corpus_name;
        report.digest = fnv1a64(write_algebra_file(out.name, out.algebra));
        return out;
    }

    std::uint64_t seed()
    {
        std::uint64_t s = 0;
        if (seed_flag) {
            s = *seed_flag;
        } else if (const char* env = std::getenv("MC_CALC_SEED"); env && *env) {
            std::size_t used = 0;
            try {
                s = std::stoull(env, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || env[used] != '\0')
                fail(ErrorKind::ParseError, std::string("MC_CALC_SEED is not an unsigned integer: '") + env + "'");
        }
        report.seed = s;
        return s;
    }

    Section& section(const std::string& title)
    {
        report.sections.push_back({title, {}});
        return report.sections.back();
    }

    void ledger(const std::string& name, bool passed, const std::string& detail = {})
    {
        report.ledger.push_back({name, passed, detail});
    }
};

std::string yes_no(bool b)
{
    return b ? "yes" : "no";
}

std::string join(const std::vector<Scalar>& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ", " : "") + to_string(v[i]);
    return out + ")";
}

std::vector<std::string> split_lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

std::string quote(const std::string& arg)
{
    if (!arg.empty() && arg.find_first_of(" \t\"'") == std::string::npos)
        return arg;
    std::string out = "\"";
    for (char c : arg) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

Vec element(const Dgla& L, const std::string& text, int degree, const char* what)
{
    auto v = L.parse_element(text);
    if (!v.is_zero() && !L.is_homogeneous(v, degree))
        fail(ErrorKind::DegreeMismatch, std::string(what) + " must have degree " + std::to_string(degree));
    return v;
}

int chain_degree(const Dgla& L, const Vec& v, const char* what)
{
    auto d = L.degree_of(v);
    if (!d)
        fail(ErrorKind::DegreeMismatch, std::string(what) + " must be nonzero and homogeneous");
    return -*d;
}

bool nonnegative(const Dgla& L)
{
    for (std::size_t i = 0; i < L.dim(); ++i)
        if (L.degree(i) < 0)
            return false;
    return true;
}

void add_input(CLI::App* sub, Context& ctx)
{
    sub->add_option("--algebra", ctx.algebra_path, "algebra definition file");
    sub->add_option("--corpus", ctx.corpus_name, "named corpus algebra");
}

void add_seed(CLI::App* sub, Context& ctx)
{
    sub->add_option_function<std::uint64_t>(
        "--seed", [&ctx](const std::uint64_t& s) { ctx.seed_flag = s; }, "random seed (else MC_CALC_SEED, else 0)");
}

// ---------------------------------------------------------------- commands

void cmd_validate(Context& ctx)
{
    auto [name, L] = ctx.load();
    auto& s = ctx.section("validate");
    s.lines.push_back("name: " + name);
    s.lines.push_back("dimension: " + std::to_string(L.dim()));
    for (std::size_t i = 0; i < L.dim(); ++i)
        s.lines.push_back("generator " + L.basis().symbols[i] + ": chain degree " + std::to_string(-L.degree(i)) +
                          ", weight " + std::to_string(L.weights()[i]));
    s.lines.push_back("filtration: " + std::string(L.filtration_from_lcs() ? "lower central series" : "explicit"));
    auto rep = validate(L);
    s.lines.push_back("nilpotency class: " + std::to_string(rep.nilpotency_class));
    for (const auto& c : rep.checks)
        ctx.ledger(c.name, c.passed, c.witness);
}

void cmd_mc_check(Context& ctx, const std::string& text, std::optional<int> level)
{
    auto [name, L] = ctx.load();
    auto& s = ctx.section("mc-check");
    bool ok = false;
    if (level) {
        auto xi = parse_lie_form(L, *level, text);
        auto r = mc_check(L, xi);
        s.lines.push_back("element: " + render(L, xi) + " (level " + std::to_string(*level) + ")");
        s.lines.push_back("curvature: " + render(L, r.curvature));
        ok = r.ok;
    } else {
        auto tau = element(L, text, 1, "--element");
        auto c = curvature(L, tau);
        s.lines.push_back("element: " + L.render(tau));
        s.lines.push_back("curvature: " + L.render(c));
        ok = c.is_zero();
    }
    s.lines.push_back("Maurer-Cartan: " + yes_no(ok));
    ctx.ledger("element is Maurer-Cartan", ok);
}

void cmd_gauge_act(Context& ctx, const std::string& x_text, const std::string& tau_text)
{
    auto [name, L] = ctx.load();
    auto x = element(L, x_text, 0, "--x");
    auto tau = element(L, tau_text, 1, "--tau");
    make_mc(L, tau);
    auto out = gauge_act(L, x, tau);
    auto dx = twisted_differential(L, tau, x);
    auto& s = ctx.section("gauge-act");
    s.lines.push_back("x: " + L.render(x));
    s.lines.push_back("tau: " + L.render(tau));
    s.lines.push_back("x.tau: " + L.render(out));
    s.lines.push_back("d_tau x: " + L.render(dx));
    s.lines.push_back("stabilizes: " + yes_no(out == tau));
    ctx.ledger("x.tau is Maurer-Cartan", curvature(L, out).is_zero());
    ctx.ledger("x stabilizes tau iff d_tau x = 0", stabilizer_check(L, x, tau) == dx.is_zero());
}

void cmd_homotopy(Context& ctx, const std::string& tau_text, int kmax)
{
    auto [name, L] = ctx.load();
    auto tau = element(L, tau_text, 1, "--tau");
    auto rep = homotopy_groups(L, tau, kmax);
    ctx.section("homotopy").lines = split_lines(render(L, rep));
    std::size_t total = 0;
    bool mc = true;
    for (const auto& lvl : rep.levels) {
        total += lvl.simplices.size();
        mc = mc && lvl.simplices_mc;
    }
    ctx.ledger("representative simplices are Maurer-Cartan", mc, std::to_string(total) + " simplices");
}

void cmd_samelson(Context& ctx, const std::string& x_text, const std::string& y_text)
{
    auto [name, L] = ctx.load();
    auto x = L.parse_element(x_text), y = L.parse_element(y_text);
    const int p = chain_degree(L, x, "--x"), q = chain_degree(L, y, "--y");
    auto v = samelson(L, x, p, y, q);
    auto& s = ctx.section("samelson");
    s.lines.push_back("x: " + L.render(x) + " (chain degree " + std::to_string(p) + ")");
    s.lines.push_back("y: " + L.render(y) + " (chain degree " + std::to_string(q) + ")");
    s.lines.push_back("curtis: " + render(L, v.curtis));
    s.lines.push_back("curtis (reversed order): " + render(L, v.curtis_reversed));
    s.lines.push_back("shuffle: " + render(L, v.shuffle));
    s.lines.push_back("omega^" + std::to_string(p + q) + " (x) [x,y]: " + render(L, v.target));
    s.lines.push_back("class of I(curtis - omega^" + std::to_string(p + q) + " (x) [x,y]): " +
                      join(v.difference_class));
    s.lines.push_back("homologous to omega^" + std::to_string(p + q) + " (x) [x,y]: " +
                      yes_no(v.homologous_to_target));
    const auto sign = (p * q) % 2 == 0 ? v.target : -v.target;
    ctx.ledger("higher BCH terms vanish", v.higher_terms_vanish);
    ctx.ledger("Curtis product does not depend on the shuffle order", v.order_independent);
    ctx.ledger("Curtis product = shuffle bracket", v.curtis_equals_shuffle);
    ctx.ledger("Curtis product = (-1)^{pq} omega^{p+q} (x) [x,y]", v.curtis == sign);
}

void cmd_connecting(Context& ctx, const std::string& tau_text, const std::string& x_text)
{
    auto [name, L] = ctx.load();
    auto tau = element(L, tau_text, 1, "--tau");
    auto x = L.parse_element(x_text);
    const int k = chain_degree(L, x, "--x");
    auto v = connecting_identity(L, tau, x, k);
    auto& s = ctx.section("connecting");
    s.lines.push_back("x: " + L.render(x) + " (chain degree " + std::to_string(k) + ")");
    s.lines.push_back("tau (x) 1 - omega^" + std::to_string(k + 1) + " (x) x: " + render(L, v.expected));
    s.lines.push_back("(omega-tilde^" + std::to_string(k) + " (x) x).(tau (x) 1): " + render(L, v.acted));
    s.lines.push_back("(-omega-tilde^" + std::to_string(k) + " (x) x).(tau (x) 1): " + render(L, v.acted_negated));
    ctx.ledger("(omega-tilde^k (x) x).(tau (x) 1) = tau (x) 1 - omega^{k+1} (x) x", v.holds);
    ctx.ledger("tau (x) 1 - omega^{k+1} (x) x is Maurer-Cartan", mc_check(L, v.expected).ok);
}

void cmd_forms(Context& ctx, const std::string& op, int level, const std::string& text, std::optional<int> index)
{
    auto w = parse_form(level, text);
    ctx.report.input = "form at level " + std::to_string(level);
    ctx.report.digest = fnv1a64("level " + std::to_string(level) + "\n" + render(w) + "\n");
    auto& s = ctx.section("forms " + op);
    s.lines.push_back("w: " + render(w));
    auto need_index = [&] {
        if (!index)
            fail(ErrorKind::ParseError, "forms " + op + " needs --index");
        return *index;
    };
    if (op == "face") {
        const int i = need_index();
        auto f = face(w, i);
        s.lines.push_back("d_" + std::to_string(i) + " w: " + render(f));
        ctx.ledger("d_i commutes with d", face(differential(w), i) == differential(f));
    } else if (op == "degeneracy") {
        const int i = need_index();
        if (i < 0 || i > level)
            fail(ErrorKind::PreconditionFailed, "degeneracy index out of range");
        auto f = degeneracy(w, i);
        s.lines.push_back("s_" + std::to_string(i) + " w: " + render(f));
        ctx.ledger("d_i s_i w = d_{i+1} s_i w = w", face(f, i) == w && face(f, i + 1) == w);
    } else if (op == "integrate") {
        s.lines.push_back("top-degree component: " + yes_no(has_top_component(w)));
        s.lines.push_back("integral: " + to_string(integrate(w)));
    } else if (op == "extend") {
        auto v = extend_nu(w);
        s.lines.push_back("nu(w): " + render(v));
        bool ok = face(v, 0) == w;
        for (int i = 1; i <= level + 1; ++i)
            ok = ok && face(v, i).is_zero();
        ctx.ledger("face 0 of nu(w) = w and all other faces vanish", ok);
    } else if (op == "contract") {
        auto h = contract_h(w);
        s.lines.push_back("h(w): " + render(h));
        s.lines.push_back("epsilon(w): " + to_string(epsilon(w)));
        ctx.ledger("dh(w) + hd(w) = w - eta epsilon(w)",
                   differential(h) + contract_h(differential(w)) == w - PolyForm::constant(level, epsilon(w)));
    } else {
        fail(ErrorKind::UnknownCommand, "forms: unknown operation '" + op + "'");
    }
}

void cmd_deligne(Context& ctx, const std::string& tau_text, const std::string& gauge_text, int level)
{
    auto [name, L] = ctx.load();
    auto r = discreteness_check(L);
    auto& s = ctx.section("discreteness");
    s.lines.push_back("concentrated in degrees >= 0: " + yes_no(nonnegative(L)));
    s.lines.push_back("Z^0 Omega_.(L) discrete: " + yes_no(r.discrete));
    s.lines.push_back("kernel at level " + std::to_string(r.kernel_level) + ": dimension " +
                      std::to_string(r.kernel_dimension) + " (constants " + std::to_string(r.constant_dimension) +
                      ")");
    if (r.witness)
        s.lines.push_back("witness from " + r.witness_symbol + ": " + render(L, *r.witness));
    ctx.ledger("discreteness verdict matches the degree test", r.discrete == nonnegative(L));
    if (!nonnegative(L))
        return;

    std::mt19937_64 rng(ctx.seed());
    auto tau = tau_text.empty() ? corpus::random_mc(L, rng) : element(L, tau_text, 1, "--tau");
    auto g = gauge_text.empty() ? corpus::random_lie_form(L, level, 0, rng) : parse_lie_form(L, level, gauge_text);
    auto c = deligne_compare(L, g, tau);
    auto& d = ctx.section("comparison");
    d.lines.push_back("tau: " + L.render(tau));
    d.lines.push_back("g: " + render(L, g));
    d.lines.push_back("g.(tau (x) 1): " + render(L, c.simplex));
    d.lines.push_back("recovered gauge: " + render(L, c.recovered_gauge));
    d.lines.push_back("g * eta(-epsilon g): " + render(L, c.normalized_gauge));
    d.lines.push_back("recovered base: " + L.render(c.recovered_base));
    d.lines.push_back("epsilon(g).tau: " + L.render(c.normalized_base));
    ctx.ledger("recovered gauge and base match g * eta(-epsilon g) and epsilon(g).tau", c.agrees);
}

void cmd_fill_horn(Context& ctx, int level, int missing, const std::string& kind,
                   const std::vector<std::string>& face_args)
{
    auto [name, L] = ctx.load();
    if (level < 1 || missing < 0 || missing > level)
        fail(ErrorKind::PreconditionFailed, "need level >= 1 and 0 <= missing <= level");
    if (kind != "mc" && kind != "exp" && kind != "g")
        fail(ErrorKind::ParseError, "--kind is one of mc, exp, g");
    HornProblem horn;
    if (face_args.empty()) {
        std::mt19937_64 rng(ctx.seed());
        LieForm simplex;
        if (kind == "mc") {
            simplex = corpus::random_mc_simplex(L, level, rng);
        } else if (kind == "g") {
            simplex = corpus::random_lie_form(L, level, 0, rng, 2, 1, 1);
        } else {
            auto h0 = corpus::twisted_cocycles(L, L.zero(), 0);
            simplex = FormAlgebra(L, level).differential(corpus::random_lie_form(L, level, -1, rng, 2, 1, 1)) +
                      constant_include(corpus::random_combination(h0, L.dim(), rng), level);
        }
        horn = horn_of(simplex, missing);
    } else {
        horn = {level, missing, std::vector<std::optional<LieForm>>(level + 1)};
        for (const auto& f : face_args) {
            auto eq = f.find('=');
            int i = -1;
            try {
                i = eq == std::string::npos ? -1 : std::stoi(f.substr(0, eq));
            } catch (const std::exception&) {
            }
            if (i < 0 || i > level || i == missing || horn.faces[i])
                fail(ErrorKind::ParseError, "bad --face '" + f + "' (expected I=FORM, each face once, not the missing one)");
            horn.faces[i] = parse_lie_form(L, level - 1, f.substr(eq + 1));
        }
        for (int i = 0; i <= level; ++i)
            if (i != missing && !horn.faces[i])
                fail(ErrorKind::ParseError, "face " + std::to_string(i) + " is missing");
    }
    auto& s = ctx.section("fill-horn");
    s.lines.push_back("kind: " + kind + ", level " + std::to_string(level) + ", missing face " +
                      std::to_string(missing));
    for (int i = 0; i <= level; ++i)
        if (horn.faces[i])
            s.lines.push_back("face " + std::to_string(i) + ": " + render(L, *horn.faces[i]));
    LieForm filler = kind == "mc"    ? mc_horn_filler(L, horn)
                     : kind == "exp" ? moore_filler(L, GroupKind::Exp, horn)
                                     : moore_filler(L, GroupKind::G, horn);
    s.lines.push_back("filler: " + render(L, filler));
    s.lines.push_back("missing face: " + render(L, face(filler, missing)));
    auto audit = audit_filler(horn, filler);
    ctx.ledger("filler restricts to the given faces", !audit, audit.value_or(""));
    if (kind == "mc")
        ctx.ledger("filler is Maurer-Cartan", mc_check(L, filler).ok);
    if (kind == "exp")
        ctx.ledger("filler is closed", FormAlgebra(L, level).differential(filler).is_zero());
}

void cmd_selftest(Context& ctx)
{
    const auto seed = ctx.seed();
    ctx.report.input = "none";
    ctx.report.digest = fnv1a64("");
    ctx.report.ledger = selftest(seed);
    std::size_t failed = 0;
    for (const auto& l : ctx.report.ledger)
        failed += l.passed ? 0 : 1;
    auto& s = ctx.section("selftest");
    s.lines.push_back("checks: " + std::to_string(ctx.report.ledger.size()));
    s.lines.push_back("failed: " + std::to_string(failed));
}

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = {"validate", "mc-check", "gauge-act", "homotopy",
                                                   "samelson", "connecting", "forms",   "deligne",
                                                   "fill-horn", "selftest", "corpus"};
    return names;
}

} // namespace

std::string fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

std::string render(const Report& r)
{
    if (r.plain)
        return *r.plain;
    std::ostringstream out;
    out << kFormat << "\n";
    out << "command: " << r.command << "\n";
    out << "input: " << (r.input.empty() ? "none" : r.input) << "\n";
    if (!r.digest.empty())
        out << "digest: " << r.digest << "\n";
    if (r.seed)
        out << "seed: " << *r.seed << "\n";
    for (const auto& s : r.sections) {
        out << "[" << s.title << "]\n";
        for (const auto& l : s.lines)
            out << l << "\n";
    }
    if (!r.ledger.empty()) {
        out << "[ledger]\n";
        for (const auto& l : r.ledger) {
            out << (l.passed ? "PASS " : "FAIL ") << l.name;
            if (!l.detail.empty())
                out << ": " << l.detail;
            out << "\n";
        }
    }
    static const char* words[] = {"ok", "property failure", "input error"};
    out << "status: " << static_cast<int>(r.status) << " " << words[static_cast<int>(r.status)] << "\n";
    return out.str();
}

Report run(const std::vector<std::string>& args)
{
    Report report;
    for (std::size_t i = 0; i < args.size(); ++i)
        report.command += (i ? " " : "") + quote(args[i]);
    Context ctx{report, {}, {}, {}};

    auto input_error = [&](std::string_view kind, const std::string& message) {
        report.sections.clear();
        report.ledger.clear();
        report.sections.push_back({"error", {"kind: " + std::string(kind), "message: " + message}});
        report.status = Status::InputError;
        return report;
    };

    CLI::App app{"Maurer-Cartan calculus over Q for nilpotent dg Lie algebras", "mc_calc"};
    app.require_subcommand(1);

    std::function<void()> action;

    auto* validate_cmd = app.add_subcommand("validate", "check the dg Lie algebra axioms");
    add_input(validate_cmd, ctx);
    validate_cmd->callback([&] { action = [&] { cmd_validate(ctx); }; });

    std::string element_text;
    std::optional<int> level_opt;
    auto* mc = app.add_subcommand("mc-check", "test the Maurer-Cartan equation");
    add_input(mc, ctx);
    mc->add_option("--element", element_text, "degree-1 element, or a form with --level")->required();
    mc->add_option("--level", level_opt, "read --element as an element of Omega_level(L)");
    mc->callback([&] { action = [&] { cmd_mc_check(ctx, element_text, level_opt); }; });

    std::string x_text, y_text, tau_text = "0";
    auto* ga = app.add_subcommand("gauge-act", "act by exp(x) on a Maurer-Cartan element");
    add_input(ga, ctx);
    ga->add_option("--x", x_text, "degree-0 element")->required();
    ga->add_option("--tau", tau_text, "Maurer-Cartan element")->required();
    ga->callback([&] { action = [&] { cmd_gauge_act(ctx, x_text, tau_text); }; });

    int kmax = 3;
    auto* hom = app.add_subcommand("homotopy", "homotopy groups of MC_.(L) at tau");
    add_input(hom, ctx);
    hom->add_option("--tau", tau_text, "base point (default 0)");
    hom->add_option("--kmax", kmax, "largest chain degree k, giving pi_{k+1} (default 3)");
    hom->callback([&] { action = [&] { cmd_homotopy(ctx, tau_text, kmax); }; });

    auto* sam = app.add_subcommand("samelson", "Samelson product of two cycles by Curtis' formula");
    add_input(sam, ctx);
    sam->add_option("--x", x_text, "cycle of chain degree p >= 1")->required();
    sam->add_option("--y", y_text, "cycle of chain degree q >= 1")->required();
    sam->callback([&] { action = [&] { cmd_samelson(ctx, x_text, y_text); }; });

    auto* con = app.add_subcommand("connecting", "the omega-tilde gauge identity");
    add_input(con, ctx);
    con->add_option("--tau", tau_text, "Maurer-Cartan element (default 0)");
    con->add_option("--x", x_text, "d_tau-cocycle of chain degree k")->required();
    con->callback([&] { action = [&] { cmd_connecting(ctx, tau_text, x_text); }; });

    std::string op, form_text;
    int level = 1;
    std::optional<int> index;
    auto* forms = app.add_subcommand("forms", "polynomial forms on the n-simplex");
    forms->add_option("op", op, "face | degeneracy | integrate | extend | contract")->required();
    forms->add_option("--level", level, "simplex dimension n")->required();
    forms->add_option("--form", form_text, "form such as \"t1*dt2 - 1/2*dt1\"")->required();
    forms->add_option("--index", index, "face or degeneracy index");
    forms->callback([&] { action = [&] { cmd_forms(ctx, op, level, form_text, index); }; });

    std::string gauge_text;
    auto* del = app.add_subcommand("deligne", "discreteness test and, for L >= 0, the gauge comparison");
    add_input(del, ctx);
    add_seed(del, ctx);
    std::string deligne_tau;
    del->add_option("--tau", deligne_tau, "Maurer-Cartan element (default: random)");
    del->add_option("--gauge", gauge_text, "degree-0 form at --level (default: random)");
    del->add_option("--level", level, "simplex level for the comparison (default 1)");
    del->callback([&] { action = [&] { cmd_deligne(ctx, deligne_tau, gauge_text, level); }; });

    int missing = 0;
    std::string kind = "mc";
    std::vector<std::string> face_args;
    auto* fh = app.add_subcommand("fill-horn", "fill a horn in MC_.(L), exp_.(L) or G_.(L)");
    add_input(fh, ctx);
    add_seed(fh, ctx);
    fh->add_option("--level", level, "simplex dimension n")->required();
    fh->add_option("--missing", missing, "index of the missing face")->required();
    fh->add_option("--kind", kind, "mc | exp | g (default mc)");
    fh->add_option("--face", face_args, "I=FORM for each present face (default: a random horn)");
    fh->callback([&] { action = [&] { cmd_fill_horn(ctx, level, missing, kind, face_args); }; });

    auto* st = app.add_subcommand("selftest", "run the property ledger");
    add_seed(st, ctx);
    st->callback([&] { action = [&] { cmd_selftest(ctx); }; });

    std::string corpus_op, corpus_arg;
    auto* cor = app.add_subcommand("corpus", "list the example algebras or print one as a file");
    cor->add_option("op", corpus_op, "list | show")->required();
    cor->add_option("name", corpus_arg, "algebra name for show");
    cor->callback([&] {
        action = [&] {
            if (corpus_op == "list") {
                std::string out;
                for (const auto& n : corpus::names())
                    out += n + "\n";
                report.plain = out;
            } else if (corpus_op == "show") {
                report.plain = write_algebra_file(corpus_arg, corpus::named(corpus_arg));
            } else {
                fail(ErrorKind::UnknownCommand, "corpus: unknown operation '" + corpus_op + "'");
            }
        };
    });

    if (args.empty() || (args[0] != "--help" && args[0] != "-h" &&
                         std::find(command_names().begin(), command_names().end(), args[0]) ==
                             command_names().end()))
        return input_error(to_string(ErrorKind::UnknownCommand),
                           args.empty() ? "no command given" : "unknown command '" + args[0] + "'");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        report.plain = app.help();
        return report;
    } catch (const CLI::CallForAllHelp&) {
        report.plain = app.help("", CLI::AppFormatMode::All);
        return report;
    } catch (const CLI::ParseError& e) {
        return input_error("ParseError", e.what());
    }

    try {
        action();
    } catch (const Error& e) {
        std::string m = e.what();
        const std::string prefix = std::string(to_string(e.kind())) + ": ";
        return input_error(to_string(e.kind()), m.rfind(prefix, 0) == 0 ? m.substr(prefix.size()) : m);
    }
    for (const auto& l : report.ledger)
        if (!l.passed)
            report.status = Status::PropertyFailure;
    return report;
}

} // namespace mcspace::cli
