#pragma once

// Command-line surface. run() never throws: module errors become an input-error
// report, failed property checks a property-failure report.
//
// Report text (format mc-calculus/1):
//
//   mc-calculus/1
//   command: homotopy --corpus abelian_c2 --kmax 3
//   input: corpus abelian_c2
//   digest: fnv1a64:8c3f...
//   [homotopy]
//   ...
//   [ledger]
//   PASS representatives are Maurer-Cartan: 1/1
//   status: 0 ok

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mcspace::cli {

enum class Status { Ok = 0, PropertyFailure = 1, InputError = 2 };

struct LedgerLine {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct Section {
    std::string title;
    std::vector<std::string> lines;
};

struct Report {
    std::string command;
    std::string input;
    std::string digest;
    std::optional<std::uint64_t> seed;
    std::vector<Section> sections;
    std::vector<LedgerLine> ledger;
    Status status = Status::Ok;
    /// Printed verbatim instead of the report (help text, `corpus show`).
    std::optional<std::string> plain;
};

std::string render(const Report& report);

/// args excludes the program name. The seed comes from --seed, else MC_CALC_SEED, else 0.
Report run(const std::vector<std::string>& args);

/// The full property ledger; deterministic in the seed. Groups run concurrently.
std::vector<LedgerLine> selftest(std::uint64_t seed);

std::string fnv1a64(const std::string& bytes);

} // namespace mcspace::cli
