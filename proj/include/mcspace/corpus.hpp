#pragma once

// Named example algebras and random generators for property tests.
//
// Tensor examples are A (x) g with A the augmentation ideal of a free graded
// commutative algebra truncated above word length c, and g an ordinary Lie
// algebra in degree 0. Weights are word lengths, so the class is at most c.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mcspace/dgla.hpp"
#include "mcspace/forms.hpp"
#include "mcspace/simplicial.hpp"

namespace mcspace::corpus {

/// Degree-0 Lie algebra by structure constants (antisymmetric table).
struct LieAlgebraData {
    std::string name;
    std::vector<std::string> symbols;
    BracketTable table;
};

LieAlgebraData sl2();
LieAlgebraData heisenberg3();
LieAlgebraData abelian_lie(std::size_t n);

struct CdgaGenerator {
    std::string name;
    int degree; // cohomological
    std::vector<std::pair<std::size_t, Scalar>> d; // linear differential on generators
};

/// A^{+}_{<= max_length} (x) g, validated.
Dgla truncated_tensor(const std::vector<CdgaGenerator>& generators, int max_length,
                      const LieAlgebraData& g);

/// One generator e in chain degree k, d = 0, no brackets.
Dgla abelian(int chain_degree);
/// x (0), a (1), b (1): dx = a, [x,a] = b.
Dgla xab();
/// x (-2), a (-1), b (-3): dx = a, [x,a] = b. b is a cycle in chain degree 3.
Dgla xab_shifted();
Dgla heisenberg();
/// e1..en in degree 0 with [e1,ei] = e(i+1).
Dgla filiform(int n);
/// Strictly upper triangular k x k matrices, basis E_ij.
Dgla upper_triangular(int k);
/// (w, w^2, w^3) (x) sl2 with w in chain degree 2.
Dgla wsl2();
/// (u, v, u^2, uv) (x) sl2 with du = v, |u| = 0, |v| = 1.
Dgla deligne_sl2();
/// (u, w, uw, w^2) (x) sl2 with u, w in chain degrees 1, 2 and dw = u.
Dgla uw_sl2();

std::vector<std::string> names();
/// Throws ParseError for an unknown name.
Dgla named(const std::string& name);

// ---------------------------------------------------------------- randomness

/// Portable uniform integer in [lo, hi] (does not depend on the library's distributions).
std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);
/// Small rational with numerator in [-bound, bound] and denominator in {1, 2, 3}.
Scalar small_rational(std::mt19937_64& rng, int bound = 3);

/// Random element of the given degree with roughly `density` nonzero coordinates.
Vec random_element(const Dgla& L, int degree, std::mt19937_64& rng, std::size_t density = 3);

/// Random Maurer-Cartan element: g . tau0 with tau0 a top-weight degree-1 cocycle (or 0).
Vec random_mc(const Dgla& L, std::mt19937_64& rng);

/// Sparse random form at the given level: `terms` monomials, exponents <= max_exponent.
PolyForm random_form(int level, std::mt19937_64& rng, int terms = 3, int max_exponent = 2);
/// Same, restricted to form degree `degree`.
PolyForm random_form_of_degree(int level, int degree, std::mt19937_64& rng, int terms = 3,
                               int max_exponent = 2);
/// Random form all of whose faces vanish (level >= 1).
PolyForm random_faceless_form(int level, std::mt19937_64& rng);

/// Random element of Omega_level(L) of the given total degree.
LieForm random_lie_form(const Dgla& L, int level, int total_degree, std::mt19937_64& rng,
                        std::size_t density = 3, int terms = 2, int max_exponent = 1);

/// Random normalized cycle of Z^0 Omega_level(L).
LieForm random_normalized_chain(const Dgla& L, int level, std::mt19937_64& rng);

/// Basis of d_tau-cocycles of the given degree, as full-length vectors.
std::vector<Vec> twisted_cocycles(const Dgla& L, const Vec& tau, int degree);
Vec random_combination(const std::vector<Vec>& vs, std::size_t dim, std::mt19937_64& rng);

/// g . (tau (x) 1) for tau = random_mc(L) and g a random degree-0 form.
LieForm random_mc_simplex(const Dgla& L, int level, std::mt19937_64& rng);

/// Random truncated-tensor algebra with class between 1 and max_class.
Dgla random_algebra(std::mt19937_64& rng, int max_class);

} // namespace mcspace::corpus
