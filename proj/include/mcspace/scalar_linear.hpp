#pragma once

// Exact rational scalars, dense vectors and matrices over Q, graded bases and
// the cohomology of finite cochain complexes.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "mcspace/error.hpp"

namespace mcspace {

// mpq_class keeps numerator/denominator canonical after every operation.
using Scalar = mpq_class;

Scalar parse_scalar(const std::string& text);
std::string to_string(const Scalar& s);

class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t n) : v_(n) {}
    Vec(std::initializer_list<Scalar> init) : v_(init) {}
    explicit Vec(std::vector<Scalar> v) : v_(std::move(v)) {}

    static Vec unit(std::size_t n, std::size_t i);

    std::size_t size() const { return v_.size(); }
    Scalar& operator[](std::size_t i) { return v_[i]; }
    const Scalar& operator[](std::size_t i) const { return v_[i]; }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

    bool is_zero() const;

    Vec& operator+=(const Vec& o);
    Vec& operator-=(const Vec& o);
    Vec& operator*=(const Scalar& s);
    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator-(Vec a) { return a *= Scalar(-1); }
    friend Vec operator*(const Scalar& s, Vec a) { return a *= s; }
    friend bool operator==(const Vec& a, const Vec& b) { return a.v_ == b.v_; }

private:
    std::vector<Scalar> v_;
};

// Dense row-major matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec column(std::size_t j) const;
    Vec apply(const Vec& x) const;
    Matrix operator*(const Matrix& o) const;
    bool is_zero() const;
    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> a_;
};

/// Reduced row echelon form in place; returns the pivot columns in order.
std::vector<std::size_t> rref(Matrix& m);

std::size_t rank(const Matrix& m);

/// Basis of the kernel, one vector per free column (ascending).
std::vector<Vec> nullspace(const Matrix& m);

/// Indices of a maximal independent subset of `vectors`, greedily from the front.
std::vector<std::size_t> independent_prefix(const std::vector<Vec>& vectors, std::size_t dim);

/// Incrementally maintained reduced echelon basis of a subspace of Q^dim.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<Vec>& rows() const { return rows_; }

    /// Remainder of v after reduction by the basis (zero iff v lies in the span).
    Vec reduce(Vec v) const;
    bool contains(const Vec& v) const { return reduce(v).is_zero(); }
    /// Returns true if v enlarged the span.
    bool insert(const Vec& v);

private:
    std::size_t dim_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

/// Returns some v with map(v) = target, or nullopt if target is not in the image.
/// Throws DimensionMismatch when target.size() != map.rows().
std::optional<Vec> solve_linear(const Matrix& map, const Vec& target);

struct GradedBasis {
    std::vector<std::string> symbols;
    std::vector<int> degrees; // cohomological

    GradedBasis() = default;
    GradedBasis(std::vector<std::string> symbols, std::vector<int> degrees);

    std::size_t size() const { return symbols.size(); }
    std::vector<std::size_t> indices_in_degree(int degree) const;
    std::optional<std::size_t> find(const std::string& symbol) const;
    int min_degree() const;
    int max_degree() const;
};

/// Finite cochain complex; column j of `d` is d(e_j).
class CochainComplex {
public:
    CochainComplex(GradedBasis basis, Matrix d);

    const GradedBasis& basis() const { return basis_; }
    const Matrix& differential() const { return d_; }
    Vec apply(const Vec& v) const { return d_.apply(v); }

    /// Block of d from degree k into degree k+1, in local coordinates.
    Matrix block(int degree) const;

private:
    GradedBasis basis_;
    Matrix d_;
};

struct Decomposition {
    std::vector<Scalar> coefficients; // over the representatives
    Vec primitive;                    // full-length vector in degree k-1
};

class Cohomology {
public:
    Cohomology(const CochainComplex& complex, int degree);

    int degree() const { return degree_; }
    std::size_t dimension() const { return reps_.size(); }
    /// Full-length cocycles whose classes form a basis of H^degree.
    const std::vector<Vec>& representatives() const { return reps_; }

    /// z = sum coefficients[i] * rep[i] + d(primitive). Throws NotACocycle.
    Decomposition decompose(const Vec& z) const;
    bool is_coboundary(const Vec& z) const;

private:
    std::size_t total_ = 0;
    int degree_;
    Matrix outgoing_; // d from degree k to k+1
    std::vector<std::size_t> here_, below_;
    std::vector<Vec> reps_;
    Matrix system_; // [reps | d_{k-1}] restricted to degree k
};

inline Cohomology cohomology(const CochainComplex& complex, int degree)
{
    return Cohomology(complex, degree);
}

} // namespace mcspace
