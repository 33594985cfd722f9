#pragma once

// Homotopy groups of MC_.(L) at a Maurer-Cartan point tau, read off from the
// homology of the twisted algebra L_tau:
//   pi_1(MC_.(L), tau) = exp(H_0(L_tau)) with the BCH product,
//   pi_{k+1}(MC_.(L), tau) = H_k(L_tau), represented by tau (x) 1 - omega^{k+1} (x) x.
// Samelson products are evaluated with Curtis' product of BCH commutators.

#include <string>
#include <vector>

#include "mcspace/dgla.hpp"
#include "mcspace/simplicial.hpp"

namespace mcspace {

struct HomotopyLevel {
    int k;                        // chain degree; describes pi_{k+1}
    std::size_t dimension;        // dim H_k(L_tau)
    std::vector<Vec> cycles;      // representatives x in L_tau of degree -k
    std::vector<LieForm> simplices; // tau (x) 1 - omega^{k+1} (x) x at level k+1
    bool simplices_mc = true;
};

struct BracketEntry {
    int k1, k2;
    std::size_t i, j;
    std::vector<Scalar> coefficients; // over the representatives of H_{k1+k2}
};

struct HomotopyGroupReport {
    Vec tau;
    std::vector<HomotopyLevel> levels; // k = 0..k_max
    std::vector<BracketEntry> brackets; // nonzero brackets of representatives
    /// BCH structure constants on H_0: class of bch(rep_i, rep_j) - rep_i - rep_j.
    std::vector<BracketEntry> pi1_products;
};

/// Throws NotMaurerCartan.
HomotopyGroupReport homotopy_groups(const Dgla& L, const Vec& tau, int k_max);

/// Coefficients of the class of a d_tau-cocycle of degree -k over the report's representatives.
std::vector<Scalar> homology_class(const Dgla& L, const Vec& tau, int k, const Vec& cycle);

struct Pi1Check {
    bool associative;
    bool representative_independent;
};
/// Samples classes of H_0(L_tau) and coboundary perturbations.
Pi1Check pi1_group_law(const Dgla& L, const Vec& tau, std::uint64_t seed, int samples = 6);

struct Pi1Action {
    std::vector<Scalar> algebraic;   // class of exp(ad_y) x
    std::vector<Scalar> transported; // class read off y . (tau (x) 1 - omega^{k+1} (x) x)
    bool agrees;
};
/// y a degree-0 d_tau-cocycle, x a degree -k d_tau-cocycle; throws PreconditionFailed.
Pi1Action pi1_action(const Dgla& L, const Vec& tau, const Vec& y, const Vec& x, int k);

struct SamelsonVerdict {
    int p, q;
    LieForm curtis;           // shuffle order
    LieForm curtis_reversed;  // reversed order
    LieForm shuffle;          // shuffle bracket of omega^p (x) x and omega^q (x) y
    LieForm target;           // omega^{p+q} (x) [x,y]
    bool higher_terms_vanish;
    bool order_independent;
    bool curtis_equals_shuffle;
    bool homologous_to_target;
    std::vector<Scalar> difference_class; // class of I(curtis - target) in H_{p+q}(L)
};

/// x, y cycles of chain degrees p, q >= 1; throws NotACycle, DegreeMismatch, PreconditionFailed.
SamelsonVerdict samelson(const Dgla& L, const Vec& x, int p, const Vec& y, int q);

struct ConnectingVerdict {
    LieForm acted;        // (omega-tilde^k (x) x) . (tau (x) 1)
    LieForm expected;     // tau (x) 1 - omega^{k+1} (x) x
    LieForm acted_negated; // (-omega-tilde^k (x) x) . (tau (x) 1)
    bool holds;
    bool negated_holds;
};

/// Throws PreconditionFailed unless d_tau x = 0 and x has degree -k.
ConnectingVerdict connecting_identity(const Dgla& L, const Vec& tau, const Vec& x, int k);

std::string render(const Dgla& L, const HomotopyGroupReport& report);

} // namespace mcspace
