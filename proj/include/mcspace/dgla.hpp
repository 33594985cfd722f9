#pragma once

// Finite-dimensional nilpotent dg Lie algebras over Q.
//
// Sign conventions (fixed project-wide):
//   - degrees are cohomological; the chain degree k of the file format is -k here;
//   - the bracket table is taken literally: [e_i, e_j] = sum_k c_ij^k e_k, and
//     validate() checks [x,y] = -(-1)^{|x||y|} [y,x];
//   - d is a degree +1 derivation: d[x,y] = [dx,y] + (-1)^{|x|} [x,dy].
//
// Completeness is realised by nilpotency. Filtration-wise algorithms use a
// coordinate filtration: every basis element e_i carries a weight w_i >= 1 and
// F^p is spanned by the elements of weight >= p.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcspace/lie_series.hpp"
#include "mcspace/scalar_linear.hpp"

namespace mcspace {

struct SparseEntry {
    std::size_t index;
    Scalar coeff;
};
using SparseVec = std::vector<SparseEntry>;

/// Structure constants for ordered pairs; pairs not present bracket to zero.
using BracketTable = std::map<std::pair<std::size_t, std::size_t>, Vec>;

/// Adds [e_j, e_i] = -(-1)^{|i||j|} [e_i, e_j] for every listed pair whose mirror is absent.
BracketTable antisymmetrize(const BracketTable& table, const std::vector<int>& degrees);

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string witness; // empty when passed
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    int nilpotency_class = -1; // -1 when not nilpotent

    bool ok() const;
    const CheckResult* first_failure() const;
};

class Dgla {
public:
    using Element = Vec;

    /// Builds the structure without asserting the dgla axioms (see validate()).
    /// `weights`, when given, is a user filtration; otherwise the lower central series
    /// is used when it is spanned by basis elements, else the smallest coordinate
    /// filtration compatible with the structure constants.
    Dgla(GradedBasis basis, Matrix differential, const BracketTable& brackets,
         std::optional<std::vector<int>> weights = std::nullopt);

    /// Same, but throws ValidationError naming the first failed check and its witness.
    static Dgla checked(GradedBasis basis, Matrix differential, const BracketTable& brackets,
                        std::optional<std::vector<int>> weights = std::nullopt);

    std::size_t dim() const { return basis_.size(); }
    const GradedBasis& basis() const { return basis_; }
    int degree(std::size_t i) const { return basis_.degrees[i]; }
    const Matrix& differential_matrix() const { return d_; }
    const SparseVec& bracket_entry(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
    const SparseVec& d_entry(std::size_t i) const { return d_sparse_[i]; }

    Vec zero() const { return Vec(dim()); }
    Vec unit(std::size_t i) const { return Vec::unit(dim(), i); }

    Vec bracket(const Vec& x, const Vec& y) const;
    Vec differential(const Vec& x) const;

    /// Nilpotency class from the lower central series; nullopt if it never reaches 0.
    std::optional<int> lcs_class() const { return class_; }
    /// Throws NotNilpotent when the algebra is not nilpotent.
    int nilpotency_class() const;

    /// Lower central series layers F^1 = L, F^{k+1} = [L, F^k], each as a basis (RREF rows).
    const std::vector<std::vector<Vec>>& lower_central_series() const { return lcs_; }

    bool has_filtration() const { return !weights_.empty() || dim() == 0; }
    const std::vector<int>& weights() const;
    int max_weight() const;
    /// Smallest weight among the nonzero coordinates of v (max_weight()+1 for v = 0).
    int filtration_order(const Vec& v) const;
    /// Coordinates of weight exactly p.
    Vec graded_piece(const Vec& v, int p) const;
    bool filtration_from_lcs() const { return weights_from_lcs_; }

    /// Homogeneous degree of v; nullopt for 0 or inhomogeneous vectors.
    std::optional<int> degree_of(const Vec& v) const;
    bool is_homogeneous(const Vec& v, int degree) const;

    CochainComplex as_complex() const;

    /// Element text such as "-a - 1/2*b" against the basis symbols.
    Vec parse_element(const std::string& text) const;
    std::string render(const Vec& v) const;

private:
    GradedBasis basis_;
    Matrix d_;
    std::vector<SparseVec> d_sparse_;
    std::vector<SparseVec> table_;
    std::vector<std::vector<Vec>> lcs_;
    std::optional<int> class_;
    std::vector<int> weights_;
    bool weights_from_lcs_ = false;
};

ValidationReport validate(const Dgla& L);

/// Lower central series as nested subspaces; throws NotNilpotent.
std::vector<std::vector<Vec>> lower_central_series(const Dgla& L);

struct McElement {
    Vec tau;
};

struct GaugeElement {
    Vec x;
};

/// Throws DegreeMismatch / NotMaurerCartan.
McElement make_mc(const Dgla& L, const Vec& tau);
/// Throws DegreeMismatch.
GaugeElement make_gauge(const Dgla& L, const Vec& x);

/// d tau + 1/2 [tau, tau]; throws DegreeMismatch unless tau has degree 1.
Vec curvature(const Dgla& L, const Vec& tau);

/// L with differential d + ad_tau.
Dgla twist(const Dgla& L, const McElement& tau);
/// Throws NotMaurerCartan when tau is not Maurer-Cartan.
Dgla twist(const Dgla& L, const Vec& tau);

Vec bch(const Dgla& L, const Vec& x, const Vec& y);
McElement gauge_act(const Dgla& L, const GaugeElement& x, const McElement& tau);
Vec gauge_act(const Dgla& L, const Vec& x, const Vec& tau);

/// x . tau == tau.
bool stabilizer_check(const Dgla& L, const Vec& x, const Vec& tau);

/// primitive_oracle(n, r): given r in F^n I of degree 1 whose class in gr^n I is a
/// cocycle, return c in F^n I of degree 0 with dc = r mod F^{n+1} I, or nullopt.
using PrimitiveOracle = std::function<std::optional<Vec>(int, const Vec&)>;

/// Constructive lifting of gauge equivalences along a surjection f: L -> L'
/// (column j of f is the image of e_j). Returns x with tau = x . rho and f(x) = y.
/// Throws PreconditionFailed if f(tau) != y . f(rho), OracleFailure if the oracle
/// declines or returns an invalid primitive.
GaugeElement gauge_lift(const Dgla& L, const Dgla& target, const Matrix& f,
                        const PrimitiveOracle& primitive_oracle, const McElement& tau,
                        const McElement& rho, const GaugeElement& y);

/// Generic form of gauge_lift used both for finite algebras and for Omega_n(L).
/// Src must additionally provide filtration_order(e) and max_weight().
template <class Src, class Tgt, class MapFn, class SectionFn, class OracleFn>
typename Src::Element gauge_lift_generic(const Src& src, const Tgt& tgt, MapFn f, SectionFn section,
                                         OracleFn oracle, const typename Src::Element& tau,
                                         const typename Src::Element& rho,
                                         const typename Tgt::Element& y)
{
    if (!(f(tau) == gauge_action(tgt, y, f(rho))))
        fail(ErrorKind::PreconditionFailed, "gauge_lift: f(tau) != y . f(rho)");
    auto x = section(y);
    for (int p = 1;; ++p) {
        auto r = tau - gauge_action(src, x, rho);
        if (r.is_zero())
            break;
        if (p > src.max_weight())
            fail(ErrorKind::Internal, "gauge_lift: residual survives the last filtration step");
        if (!f(r).is_zero() || src.filtration_order(r) < p)
            fail(ErrorKind::Internal, "gauge_lift: residual left F^" + std::to_string(p) + "I");
        auto c = oracle(p, r);
        if (!c)
            fail(ErrorKind::OracleFailure, "primitive oracle declined at filtration level " +
                                               std::to_string(p));
        if (!f(*c).is_zero() || src.filtration_order(*c) < p ||
            src.filtration_order(src.differential(*c) - r) < p + 1)
            fail(ErrorKind::OracleFailure, "primitive oracle returned an invalid primitive at level " +
                                               std::to_string(p));
        x -= *c;
    }
    if (!(f(x) == y))
        fail(ErrorKind::Internal, "gauge_lift: lift does not cover y");
    return x;
}

/// Suspension cone sL # L: basis {s e_i} then {e_i}, |s e_i| = |e_i| - 1,
/// [sx,sy] = 0, [sx,y] = s[x,y], d(sx) = x - s(dx).
Dgla cone(const Dgla& L);

} // namespace mcspace
