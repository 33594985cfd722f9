#pragma once

// L-valued polynomial forms Omega_n(L) = Omega_n (x) L and the simplicial sets
// built from them: G_n(L) = Omega_n^0(L) with the BCH product, exp_n(L) its closed
// part, and MC_n(L) = MC(Omega_n(L)).
//
// Conventions on Omega_n (x) L (|w| = form degree, |x| = degree in L):
//   d(w (x) x)            = dw (x) x + (-1)^{|w|} w (x) dx
//   [w (x) x, v (x) y]    = (-1)^{|v||x|} wv (x) [x,y]

#include <optional>
#include <string>
#include <vector>

#include "mcspace/dgla.hpp"
#include "mcspace/forms.hpp"

namespace mcspace {

/// Element of Omega_n(L): one form per basis element of L.
class LieForm {
public:
    LieForm() = default;
    LieForm(std::size_t dim, int level);

    std::size_t dim() const { return comps_.size(); }
    int level() const { return level_; }
    const PolyForm& operator[](std::size_t i) const { return comps_[i]; }
    PolyForm& operator[](std::size_t i) { return comps_[i]; }
    const std::vector<PolyForm>& components() const { return comps_; }

    bool is_zero() const;
    std::size_t term_count() const;

    LieForm& operator+=(const LieForm& o);
    LieForm& operator-=(const LieForm& o);
    LieForm& operator*=(const Scalar& s);
    friend LieForm operator+(LieForm a, const LieForm& b) { return a += b; }
    friend LieForm operator-(LieForm a, const LieForm& b) { return a -= b; }
    friend LieForm operator-(LieForm a) { return a *= Scalar(-1); }
    friend LieForm operator*(const Scalar& s, LieForm a) { return a *= s; }
    friend bool operator==(const LieForm& a, const LieForm& b)
    {
        return a.level_ == b.level_ && a.comps_ == b.comps_;
    }

private:
    int level_ = 0;
    std::vector<PolyForm> comps_;
};

/// w (x) x.
LieForm tensor(const PolyForm& w, const Vec& x);
/// eta_n: constant forms.
LieForm constant_include(const Vec& v, int level);
/// epsilon_n = d_0^n (x) 1: evaluation at base_vertex(n).
Vec vertex_evaluate(const LieForm& xi);
/// Evaluation at an arbitrary vertex.
Vec evaluate_at_vertex(const LieForm& xi, int vertex);

/// Omega_n(L) as a Lie context for the generic series in lie_series.hpp.
class FormAlgebra {
public:
    using Element = LieForm;

    FormAlgebra(const Dgla& L, int level);

    const Dgla& algebra() const { return *L_; }
    int level() const { return level_; }
    LieForm zero() const { return LieForm(L_->dim(), level_); }

    LieForm bracket(const LieForm& a, const LieForm& b) const;
    LieForm differential(const LieForm& a) const;
    int nilpotency_class() const { return L_->nilpotency_class(); }
    int filtration_order(const LieForm& a) const;
    int max_weight() const { return L_->max_weight(); }
    LieForm graded_piece(const LieForm& a, int p) const;

    /// True when every term of component i has form degree `degree` - |e_i|.
    bool has_total_degree(const LieForm& a, int degree) const;

private:
    const Dgla* L_;
    int level_;
};

LieForm face(const LieForm& xi, int i);
LieForm degeneracy(const LieForm& xi, int i);

struct SimplicialOp {
    enum Kind { Face, Degeneracy } kind;
    int index;
};
/// Applies the operators in the listed order. Throws LevelZero on an illegal face.
LieForm simplicial_op(const LieForm& xi, const std::vector<SimplicialOp>& word);
/// Parses "d0,s1,d2".
std::vector<SimplicialOp> parse_simplicial_word(const std::string& text);

struct McCheck {
    bool ok;
    LieForm curvature;
};
/// Throws DegreeMismatch unless xi has total degree 1.
McCheck mc_check(const Dgla& L, const LieForm& xi);

/// Throws LevelMismatch, DegreeMismatch, NotMaurerCartan.
LieForm gauge_act_level(const Dgla& L, const LieForm& g, const LieForm& xi);

/// g in G_n(L) with xi = g . (epsilon_n(xi) (x) 1) and epsilon_n(g) = 0.
LieForm gauge_solve_to_vertex(const Dgla& L, const LieForm& xi);

/// Horn in a simplicial set built from Omega_.(L): faces[missing] is empty.
struct HornProblem {
    int level = 0;
    int missing = 0;
    std::vector<std::optional<LieForm>> faces;
};

/// The horn of all faces of `simplex` except `missing`.
HornProblem horn_of(const LieForm& simplex, int missing);

enum class GroupKind { Exp, G };

/// Throws IncompatibleHorn when the given faces violate d_i d_j = d_{j-1} d_i.
void check_horn(const HornProblem& horn);

/// Moore's filler for the simplicial groups exp_.(L) and G_.(L), levels <= 4.
LieForm moore_filler(const Dgla& L, GroupKind kind, const HornProblem& horn);

/// Filler for a horn in MC_.(L), levels <= 3.
LieForm mc_horn_filler(const Dgla& L, const HornProblem& horn);

/// Face-by-face audit; returns a description of the first mismatch.
std::optional<std::string> audit_filler(const HornProblem& horn, const LieForm& filler);

struct DiscretenessReport {
    bool discrete;
    /// d(t_0 dt_1 ... dt_{k-1} (x) x) at level k for the first x of degree -k < 0.
    std::optional<LieForm> witness;
    std::string witness_symbol;
    int kernel_level = 0;
    std::size_t kernel_dimension = 0;
    std::size_t constant_dimension = 0;
};

/// Whether Z^0 Omega_.(V) is discrete, decided on a truncated kernel computation.
DiscretenessReport discreteness_check(const Dgla& L);

struct DeligneComparison {
    LieForm simplex;            // g . (tau (x) 1)
    LieForm recovered_gauge;    // from gauge_solve_to_vertex
    Vec recovered_base;         // epsilon_n of the simplex
    LieForm normalized_gauge;   // g * eta(-epsilon g)
    Vec normalized_base;        // epsilon(g) . tau
    bool agrees;
};

/// Throws NotNonNegativelyGraded unless L = L^{>=0}.
DeligneComparison deligne_compare(const Dgla& L, const LieForm& g, const Vec& tau);

std::string render(const Dgla& L, const LieForm& xi);
/// Text such as "(t1*dt1)*x - b + 2*(dt1*dt2)*a"; a symbol without a form is constant.
LieForm parse_lie_form(const Dgla& L, int level, const std::string& text);

} // namespace mcspace
