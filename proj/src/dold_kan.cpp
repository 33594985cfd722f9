#include "mcspace/dold_kan.hpp"

#include <algorithm>

namespace mcspace {

std::vector<ShufflePair> shuffles(int p, int q)
{
    if (p < 0 || q < 0)
        fail(ErrorKind::PreconditionFailed, "shuffle sizes are non-negative");
    std::vector<ShufflePair> out;
    const int n = p + q;
    std::vector<bool> pick(static_cast<std::size_t>(n), false);
    std::fill(pick.begin(), pick.begin() + p, true);
    // prev_permutation walks the selections with mu in lexicographic order
    do {
        ShufflePair s;
        for (int i = 0; i < n; ++i)
            (pick[static_cast<std::size_t>(i)] ? s.mu : s.nu).push_back(i);
        int inversions = 0;
        for (int a : s.mu)
            for (int b : s.nu)
                if (a > b)
                    ++inversions;
        s.sign = inversions % 2 == 0 ? 1 : -1;
        out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

LieForm iterated_degeneracy(const LieForm& xi, const std::vector<int>& indices)
{
    LieForm cur = xi;
    for (int i : indices)
        cur = degeneracy(cur, i);
    return cur;
}

PolyForm iterated_degeneracy(const PolyForm& w, const std::vector<int>& indices)
{
    PolyForm cur = w;
    for (int i : indices)
        cur = degeneracy(cur, i);
    return cur;
}

bool is_normalized(const LieForm& xi)
{
    for (int i = 1; i <= xi.level(); ++i)
        if (!face(xi, i).is_zero())
            return false;
    return true;
}

LieForm normalize(const LieForm& xi)
{
    // apply the rightmost factor first
    LieForm cur = xi;
    for (int i = xi.level(); i >= 1; --i)
        cur -= degeneracy(face(cur, i), i - 1);
    return cur;
}

void check_chain(const Dgla& L, const LieForm& xi)
{
    FormAlgebra A(L, xi.level());
    if (!A.has_total_degree(xi, 0))
        fail(ErrorKind::DegreeMismatch, "chains have total degree 0");
    if (!A.differential(xi).is_zero())
        fail(ErrorKind::NotACycle, "chain is not closed in Omega_" + std::to_string(xi.level()) + "(L)");
    if (!is_normalized(xi))
        fail(ErrorKind::NotNormalized, "a face d_i with i >= 1 is nonzero");
}

LieForm chain_boundary(const LieForm& xi)
{
    if (xi.level() == 0)
        fail(ErrorKind::LevelZero, "boundary of a level-0 chain");
    LieForm out(xi.dim(), xi.level() - 1);
    for (int i = 0; i <= xi.level(); ++i) {
        auto f = face(xi, i);
        if (i % 2 == 0)
            out += f;
        else
            out -= f;
    }
    return out;
}

LieForm shuffle_bracket(const Dgla& L, const LieForm& x, const LieForm& y)
{
    if (!is_normalized(x) || !is_normalized(y))
        fail(ErrorKind::NotNormalized, "shuffle bracket of non-normalized chains");
    const int p = x.level(), q = y.level();
    FormAlgebra A(L, p + q);
    LieForm out = A.zero();
    for (const auto& s : shuffles(p, q)) {
        auto term = A.bracket(iterated_degeneracy(x, s.nu), iterated_degeneracy(y, s.mu));
        if (s.sign > 0)
            out += term;
        else
            out -= term;
    }
    return out;
}

int integration_sign(int level)
{
    return (level * (level - 1) / 2) % 2 == 0 ? 1 : -1;
}

Vec integration_I(const Dgla& L, const LieForm& xi)
{
    if (!is_normalized(xi))
        fail(ErrorKind::NotNormalized, "integration of a non-normalized chain");
    const int n = xi.level();
    Vec out(L.dim());
    for (std::size_t i = 0; i < L.dim(); ++i)
        if (L.degree(i) == -n && !xi[i].is_zero())
            out[i] = integration_sign(n) * integrate(xi[i]);
    return out;
}

Scalar shuffle_integral(const PolyForm& a, const PolyForm& b)
{
    const int p = a.level(), q = b.level();
    Scalar total = 0;
    for (const auto& s : shuffles(p, q)) {
        auto w = wedge(iterated_degeneracy(a, s.nu), iterated_degeneracy(b, s.mu));
        total += s.sign * integrate(w);
    }
    return total;
}

} // namespace mcspace
