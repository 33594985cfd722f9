#pragma once

// Polynomial differential forms on the standard n-simplex.
//
// Omega_n = Q[t_0..t_n, dt_0..dt_n] / (sum t_i - 1, sum dt_i). Forms are kept in
// canonical coordinates t_1..t_n (t_0 = 1 - t_1 - ... - t_n), each term being
//   c * t_1^{a_1} ... t_n^{a_n} dt_{i_1} ... dt_{i_k},   i_1 < ... < i_k,
// so equality of forms is equality of term maps.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcspace/scalar_linear.hpp"

namespace mcspace {

/// Packed monomial: bits 0..7 hold the dt mask, then 7 bits of exponent per t_j.
class FormKey {
public:
    static constexpr int kMaxLevel = 8;
    static constexpr int kMaxExponent = 127;

    FormKey() = default;
    explicit FormKey(std::uint64_t raw) : raw_(raw) {}

    std::uint64_t raw() const { return raw_; }
    unsigned mask() const { return static_cast<unsigned>(raw_ & 0xffu); }
    int degree() const;
    /// Exponent of t_j, j = 1..8.
    int exponent(int j) const { return static_cast<int>((raw_ >> shift(j)) & 0x7fu); }
    bool has_dt(int j) const { return (mask() >> (j - 1)) & 1u; }

    FormKey with_exponent(int j, int e) const;
    FormKey with_mask(unsigned m) const { return FormKey((raw_ & ~std::uint64_t{0xff}) | m); }
    int total_exponent() const;

    friend bool operator<(FormKey a, FormKey b) { return a.raw_ < b.raw_; }
    friend bool operator==(FormKey a, FormKey b) { return a.raw_ == b.raw_; }

private:
    static int shift(int j) { return 8 + 7 * (j - 1); }
    std::uint64_t raw_ = 0;
};

class PolyForm {
public:
    using Terms = std::map<FormKey, Scalar>;

    PolyForm() = default;
    explicit PolyForm(int level);

    static PolyForm constant(int level, const Scalar& c);
    /// Barycentric coordinate t_i, i = 0..level.
    static PolyForm t(int level, int i);
    /// dt_i, i = 0..level (dt_0 = -dt_1 - ... - dt_n).
    static PolyForm dt(int level, int i);
    static PolyForm monomial(int level, const Scalar& c, const std::vector<int>& exponents,
                             const std::vector<int>& dts);

    int level() const { return level_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Form degree when homogeneous; nullopt for zero or mixed forms.
    std::optional<int> degree() const;
    /// Part of form degree exactly k.
    PolyForm component(int k) const;
    /// (-1)^{deg} on each homogeneous part.
    PolyForm twisted() const;
    int max_polynomial_degree() const;

    void add_term(FormKey k, const Scalar& c);

    PolyForm& operator+=(const PolyForm& o);
    PolyForm& operator-=(const PolyForm& o);
    PolyForm& operator*=(const Scalar& s);
    friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
    friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
    friend PolyForm operator-(PolyForm a) { return a *= Scalar(-1); }
    friend PolyForm operator*(const Scalar& s, PolyForm a) { return a *= s; }
    friend bool operator==(const PolyForm& a, const PolyForm& b)
    {
        return a.level_ == b.level_ && a.terms_ == b.terms_;
    }

private:
    int level_ = 0;
    Terms terms_;
};

/// Wedge product; throws LevelMismatch.
PolyForm wedge(const PolyForm& a, const PolyForm& b);
PolyForm differential(const PolyForm& w);

/// Affine substitution u_j = offset + sum coeffs[k] t_{k+1} for the source canonical
/// coordinates j = 1..source level, landing in Omega_{target level}.
struct AffineCoordinate {
    Scalar offset;
    std::vector<Scalar> coeffs;
};
PolyForm pullback(const PolyForm& w, int target_level, const std::vector<AffineCoordinate>& coords);

/// Face d_i: Omega_n -> Omega_{n-1}; throws LevelZero for n = 0 and PreconditionFailed for i > n.
PolyForm face(const PolyForm& w, int i);
/// Degeneracy s_i: Omega_n -> Omega_{n+1}.
PolyForm degeneracy(const PolyForm& w, int i);
/// Alternating face sum.
PolyForm boundary(const PolyForm& w);

/// Value at the vertex e_k (0-form part only).
Scalar evaluate_vertex(const PolyForm& w, int k);
/// The vertex reached by d_0^n; evaluation there is epsilon_n.
int base_vertex(int level);
Scalar epsilon(const PolyForm& w);

/// Integral over the simplex of the top-degree component (0 when absent); the level-0
/// integral is evaluation. Orientation: integral of n! dt_1...dt_n is 1.
Scalar integrate(const PolyForm& w);
bool has_top_component(const PolyForm& w);

/// Extension of a form with vanishing faces to the next level; throws FacesNotZero naming the first nonzero face.
PolyForm extend_nu(const PolyForm& w);

/// Contracting homotopy toward base_vertex(n): d h + h d = 1 - eta epsilon.
PolyForm contract_h(const PolyForm& w);

/// omega^n = n! dt_1 ... dt_n in Omega_n.
PolyForm omega(int n);
/// omega-tilde^k in Omega_{k+1}: k! sum_{i=1}^{k+1} (-1)^{i-1} t_i dt_1 .. ^dt_i .. dt_{k+1}.
PolyForm omega_tilde(int k);

/// Deterministic rendering, e.g. "2*t1^2*t2*dt1*dt3 - 1/2*dt2".
std::string render(const PolyForm& w);
/// Inverse of render; also accepts t0 and dt0 and any factor order.
PolyForm parse_form(int level, const std::string& text);

} // namespace mcspace
