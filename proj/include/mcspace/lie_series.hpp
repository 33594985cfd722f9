#pragma once

// Series that terminate in nilpotent Lie algebras: Baker-Campbell-Hausdorff,
// the gauge action on Maurer-Cartan elements and the group commutator.
//
// Every routine is generic over a "Lie context" C providing
//
//   using Element = ...;                      // + - scalar*, is_zero(), ==
//   Element bracket(const Element&, const Element&) const;
//   Element differential(const Element&) const;
//   int nilpotency_class() const;             // brackets of length > class vanish
//
// so the same code runs in a finite algebra L and in Omega_n(L).

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "mcspace/scalar_linear.hpp"

namespace mcspace {

/// Letters of a bracket word: 0 = first argument, 1 = second argument.
using BracketWord = std::vector<std::uint8_t>;

struct BchTerm {
    Scalar coefficient;
    BracketWord word; // right-nested: [w0,[w1,[...,w_{m-1}]]]
};

/// Dynkin's form of log(exp X exp Y) truncated after bracket length `max_length`,
/// with equal words merged. Cached per length.
const std::vector<BchTerm>& bch_terms(int max_length);

template <class C>
typename C::Element nested_bracket(const C& ctx, const BracketWord& word,
                                   const typename C::Element& x, const typename C::Element& y)
{
    typename C::Element acc = word.back() == 0 ? x : y;
    for (std::size_t i = word.size() - 1; i-- > 0;) {
        if (acc.is_zero())
            break;
        acc = ctx.bracket(word[i] == 0 ? x : y, acc);
    }
    return acc;
}

/// z with exp(z) = exp(x) exp(y); exact because brackets of length > class vanish.
template <class C>
typename C::Element bch(const C& ctx, const typename C::Element& x, const typename C::Element& y)
{
    const int c = ctx.nilpotency_class();
    if (c <= 1 || x.is_zero() || y.is_zero())
        return x + y;
    // share suffix evaluations between words
    std::map<BracketWord, typename C::Element> memo;
    auto value = [&](const BracketWord& w, auto& self) -> typename C::Element {
        if (w.size() == 1)
            return w[0] == 0 ? x : y;
        auto it = memo.find(w);
        if (it != memo.end())
            return it->second;
        BracketWord tail(w.begin() + 1, w.end());
        auto inner = self(tail, self);
        auto v = inner.is_zero() ? inner : ctx.bracket(w[0] == 0 ? x : y, inner);
        memo.emplace(w, v);
        return v;
    };
    typename C::Element z = x + y;
    for (const auto& term : bch_terms(c)) {
        if (term.word.size() == 1)
            continue;
        auto v = value(term.word, value);
        if (!v.is_zero())
            z += term.coefficient * v;
    }
    return z;
}

/// d_tau(x) = dx + [tau, x].
template <class C>
typename C::Element twisted_differential(const C& ctx, const typename C::Element& tau,
                                         const typename C::Element& x)
{
    return ctx.differential(x) + ctx.bracket(tau, x);
}

/// d tau + 1/2 [tau, tau].
template <class C>
typename C::Element curvature_of(const C& ctx, const typename C::Element& tau)
{
    return ctx.differential(tau) + Scalar(1, 2) * ctx.bracket(tau, tau);
}

/// x . tau = tau - sum_{k>=0} ad_x^k(d_tau x) / (k+1)!
template <class C>
typename C::Element gauge_action(const C& ctx, const typename C::Element& x,
                                 const typename C::Element& tau)
{
    auto term = twisted_differential(ctx, tau, x);
    auto result = tau;
    Scalar factorial = 1;
    const int cap = ctx.nilpotency_class() + 1;
    for (int k = 0; !term.is_zero(); ++k) {
        if (k > cap)
            fail(ErrorKind::NotNilpotent, "gauge series did not terminate");
        factorial *= k + 1;
        result -= (1 / factorial) * term;
        term = ctx.bracket(x, term);
    }
    return result;
}

/// Group commutator a b a^-1 b^-1 in exp(L^0); inverses are negatives.
template <class C>
typename C::Element group_commutator(const C& ctx, const typename C::Element& a,
                                     const typename C::Element& b)
{
    auto ab = bch(ctx, a, b);
    return bch(ctx, bch(ctx, ab, -a), -b);
}

} // namespace mcspace
