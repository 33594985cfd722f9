#pragma once

// Independent reference computations used only by the tests.

#include <map>
#include <vector>

#include "mcspace/dgla.hpp"

namespace oracle {

using mcspace::Matrix;
using mcspace::Scalar;

// Truncated noncommutative polynomials in letters 0,1,...
struct NcPoly {
    std::map<std::vector<int>, Scalar> terms;
    int max_degree;

    explicit NcPoly(int d) : max_degree(d) {}

    static NcPoly letter(int d, int a)
    {
        NcPoly p(d);
        p.terms[{a}] = 1;
        return p;
    }
    static NcPoly one(int d)
    {
        NcPoly p(d);
        p.terms[{}] = 1;
        return p;
    }

    NcPoly operator+(const NcPoly& o) const
    {
        NcPoly r = *this;
        for (auto& [w, c] : o.terms)
            r.terms[w] += c;
        r.prune();
        return r;
    }
    NcPoly operator-(const NcPoly& o) const { return *this + o.scaled(-1); }
    NcPoly scaled(const Scalar& s) const
    {
        NcPoly r = *this;
        for (auto& [w, c] : r.terms)
            c *= s;
        r.prune();
        return r;
    }
    NcPoly operator*(const NcPoly& o) const
    {
        NcPoly r(max_degree);
        for (auto& [a, ca] : terms)
            for (auto& [b, cb] : o.terms) {
                if (static_cast<int>(a.size() + b.size()) > max_degree)
                    continue;
                auto w = a;
                w.insert(w.end(), b.begin(), b.end());
                r.terms[w] += ca * cb;
            }
        r.prune();
        return r;
    }
    void prune()
    {
        for (auto it = terms.begin(); it != terms.end();)
            it = sgn(it->second) == 0 ? terms.erase(it) : std::next(it);
    }
    bool operator==(const NcPoly& o) const { return terms == o.terms; }
};

inline NcPoly nc_exp(const NcPoly& x)
{
    NcPoly r = NcPoly::one(x.max_degree), p = NcPoly::one(x.max_degree);
    Scalar f = 1;
    for (int k = 1; k <= x.max_degree; ++k) {
        p = p * x;
        f *= k;
        r = r + p.scaled(1 / f);
    }
    return r;
}

// log(1 + x) for x without constant term
inline NcPoly nc_log1p(const NcPoly& x)
{
    NcPoly r(x.max_degree), p = NcPoly::one(x.max_degree);
    for (int k = 1; k <= x.max_degree; ++k) {
        p = p * x;
        r = r + p.scaled(Scalar(k % 2 ? 1 : -1, k));
    }
    return r;
}

inline Matrix mat_add(const Matrix& a, const Matrix& b, const Scalar& s = 1)
{
    Matrix r = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(i, j) += s * b(i, j);
    return r;
}

// exp of a nilpotent matrix
inline Matrix mat_exp(const Matrix& n)
{
    Matrix r = Matrix::identity(n.rows()), p = Matrix::identity(n.rows());
    Scalar f = 1;
    for (std::size_t k = 1; k <= n.rows(); ++k) {
        p = p * n;
        f *= static_cast<long>(k);
        r = mat_add(r, p, 1 / f);
    }
    return r;
}

// log of a unipotent matrix
inline Matrix mat_log(const Matrix& u)
{
    Matrix n = mat_add(u, Matrix::identity(u.rows()), -1);
    Matrix r(u.rows(), u.cols()), p = Matrix::identity(u.rows());
    for (std::size_t k = 1; k <= u.rows(); ++k) {
        p = p * n;
        r = mat_add(r, p, Scalar(k % 2 ? 1 : -1, static_cast<long>(k)));
    }
    return r;
}

// Lebesgue integral of t_1^{a_1}...t_n^{a_n} over {t_i >= 0, sum t_i <= 1}, by integrating
// out t_n, t_{n-1}, ... one variable at a time with upper limit 1 - (earlier variables).
inline Scalar iterated_simplex_integral(const std::vector<int>& a)
{
    using Poly = std::map<std::vector<int>, Scalar>;
    const std::size_t n = a.size();
    Poly p;
    p[a] = 1;
    for (std::size_t v = n; v-- > 0;) {
        // 1 - t_0 - ... - t_{v-1}
        Poly limit;
        limit[std::vector<int>(n, 0)] = 1;
        for (std::size_t j = 0; j < v; ++j) {
            std::vector<int> e(n, 0);
            e[j] = 1;
            limit[e] = -1;
        }
        auto mul = [&](const Poly& x, const Poly& y) {
            Poly r;
            for (auto& [ex, cx] : x)
                for (auto& [ey, cy] : y) {
                    std::vector<int> e(n);
                    for (std::size_t j = 0; j < n; ++j)
                        e[j] = ex[j] + ey[j];
                    r[e] += cx * cy;
                }
            return r;
        };
        Poly next;
        for (auto& [e, c] : p) {
            const int k = e[v] + 1;
            Poly term;
            auto base = e;
            base[v] = 0;
            term[base] = c / k;
            for (int r = 0; r < k; ++r)
                term = mul(term, limit);
            for (auto& [ex, cx] : term)
                next[ex] += cx;
        }
        p = next;
    }
    return p[std::vector<int>(n, 0)];
}

} // namespace oracle
