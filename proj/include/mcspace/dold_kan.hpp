#pragma once

// Normalized chains of the simplicial Lie algebra Z^0 Omega_.(L).
//
// A chain at level n is a closed total-degree-0 element xi of Omega_n(L); it is
// normalized when d_i xi = 0 for 1 <= i <= n, so the boundary sum(-1)^i d_i
// reduces to d_0. Level n sits in chain degree n.

#include <vector>

#include "mcspace/dgla.hpp"
#include "mcspace/simplicial.hpp"

namespace mcspace {

struct ShufflePair {
    std::vector<int> mu; // p entries
    std::vector<int> nu; // q entries
    int sign;            // parity of (mu_1..mu_p, nu_1..nu_q)
};

/// All (p,q)-shuffles, mu in lexicographic order.
std::vector<ShufflePair> shuffles(int p, int q);

/// s_{idx_k} ... s_{idx_1} xi (indices applied in increasing order).
LieForm iterated_degeneracy(const LieForm& xi, const std::vector<int>& indices);
PolyForm iterated_degeneracy(const PolyForm& w, const std::vector<int>& indices);

bool is_normalized(const LieForm& xi);
/// (1 - s_0 d_1)(1 - s_1 d_2) ... (1 - s_{n-1} d_n).
LieForm normalize(const LieForm& xi);

/// Throws DegreeMismatch, NotACycle or NotNormalized.
void check_chain(const Dgla& L, const LieForm& xi);

/// sum (-1)^i d_i; throws LevelZero at level 0.
LieForm chain_boundary(const LieForm& xi);

/// sum over (p,q)-shuffles of sgn(mu,nu) [s_nu x, s_mu y]; throws NotNormalized.
LieForm shuffle_bracket(const Dgla& L, const LieForm& x, const LieForm& y);

/// (-1)^{n(n-1)/2}.
int integration_sign(int level);

/// I(w (x) x) = (-1)^{n(n-1)/2} (integral of w) x; throws NotNormalized.
Vec integration_I(const Dgla& L, const LieForm& xi);

/// sum_{(mu,nu)} sgn(mu,nu) integral(s_nu a s_mu b) over Delta^{p+q}, for top forms a, b.
Scalar shuffle_integral(const PolyForm& a, const PolyForm& b);

} // namespace mcspace
