#include "mcspace/scalar_linear.hpp"

#include <algorithm>
#include <set>

namespace mcspace {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::NotAdapted: return "NotAdapted";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotMaurerCartan: return "NotMaurerCartan";
    case ErrorKind::OracleFailure: return "OracleFailure";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::LevelZero: return "LevelZero";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::FacesNotZero: return "FacesNotZero";
    case ErrorKind::IncompatibleHorn: return "IncompatibleHorn";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotNonNegativelyGraded: return "NotNonNegativelyGraded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UnknownCommand: return "UnknownCommand";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

Scalar parse_scalar(const std::string& text)
{
    Scalar s;
    try {
        s = Scalar(text, 10);
    } catch (const std::invalid_argument&) {
        fail(ErrorKind::ParseError, "not a rational number: '" + text + "'");
    }
    if (s.get_den() == 0)
        fail(ErrorKind::ParseError, "zero denominator: '" + text + "'");
    s.canonicalize();
    return s;
}

std::string to_string(const Scalar& s)
{
    return s.get_str();
}

// ---------------------------------------------------------------- Vec

Vec Vec::unit(std::size_t n, std::size_t i)
{
    Vec v(n);
    v[i] = 1;
    return v;
}

bool Vec::is_zero() const
{
    return std::all_of(v_.begin(), v_.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

Vec& Vec::operator+=(const Vec& o)
{
    if (o.size() != size())
        fail(ErrorKind::DimensionMismatch, "vector sizes differ");
    for (std::size_t i = 0; i < v_.size(); ++i)
        v_[i] += o.v_[i];
    return *this;
}

Vec& Vec::operator-=(const Vec& o)
{
    if (o.size() != size())
        fail(ErrorKind::DimensionMismatch, "vector sizes differ");
    for (std::size_t i = 0; i < v_.size(); ++i)
        v_[i] -= o.v_[i];
    return *this;
}

Vec& Vec::operator*=(const Scalar& s)
{
    for (auto& x : v_)
        x *= s;
    return *this;
}

// ---------------------------------------------------------------- Matrix

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols)
{
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            fail(ErrorKind::DimensionMismatch, "column has wrong length");
        for (std::size_t i = 0; i < rows; ++i)
            m(i, j) = cols[j][i];
    }
    return m;
}

Vec Matrix::column(std::size_t j) const
{
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        v[i] = (*this)(i, j);
    return v;
}

Vec Matrix::apply(const Vec& x) const
{
    if (x.size() != cols_)
        fail(ErrorKind::DimensionMismatch, "matrix/vector size mismatch");
    Vec y(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
        if (sgn(x[j]) == 0)
            continue;
        for (std::size_t i = 0; i < rows_; ++i) {
            const Scalar& a = (*this)(i, j);
            if (sgn(a) != 0)
                y[i] += a * x[j];
        }
    }
    return y;
}

Matrix Matrix::operator*(const Matrix& o) const
{
    if (cols_ != o.rows_)
        fail(ErrorKind::DimensionMismatch, "matrix product size mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (sgn(a) == 0)
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (sgn(o(k, j)) != 0)
                    r(i, j) += a * o(k, j);
        }
    return r;
}

bool Matrix::is_zero() const
{
    return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

// ---------------------------------------------------------------- elimination

std::vector<std::size_t> rref(Matrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        // first-pivot rule: topmost nonzero entry
        std::size_t p = row;
        while (p < m.rows() && sgn(m(p, col)) == 0)
            ++p;
        if (p == m.rows())
            continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(row, j));
        Scalar inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j)
            m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || sgn(m(i, col)) == 0)
                continue;
            Scalar f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (sgn(m(row, j)) != 0)
                    m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(const Matrix& m)
{
    Matrix c = m;
    return rref(c).size();
}

std::vector<Vec> nullspace(const Matrix& m)
{
    Matrix r = m;
    auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        Vec v(m.cols());
        v[free] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = -r(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::size_t> independent_prefix(const std::vector<Vec>& vectors, std::size_t dim)
{
    std::vector<std::size_t> kept;
    // incremental echelon basis: rows with recorded pivot columns
    std::vector<Vec> echelon;
    std::vector<std::size_t> pivot_of;
    for (std::size_t idx = 0; idx < vectors.size(); ++idx) {
        Vec v = vectors[idx];
        if (v.size() != dim)
            fail(ErrorKind::DimensionMismatch, "independent_prefix: wrong length");
        for (std::size_t r = 0; r < echelon.size(); ++r) {
            const Scalar& c = v[pivot_of[r]];
            if (sgn(c) != 0)
                v -= c * echelon[r];
        }
        std::size_t p = 0;
        while (p < dim && sgn(v[p]) == 0)
            ++p;
        if (p == dim)
            continue;
        v *= 1 / Scalar(v[p]);
        for (auto& e : echelon)
            if (sgn(e[p]) != 0)
                e -= e[p] * v;
        echelon.push_back(std::move(v));
        pivot_of.push_back(p);
        kept.push_back(idx);
    }
    return kept;
}

Vec EchelonBasis::reduce(Vec v) const
{
    if (v.size() != dim_)
        fail(ErrorKind::DimensionMismatch, "EchelonBasis: wrong vector length");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Scalar c = v[pivots_[r]];
        if (sgn(c) != 0)
            v -= c * rows_[r];
    }
    return v;
}

bool EchelonBasis::insert(const Vec& v)
{
    Vec w = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && sgn(w[p]) == 0)
        ++p;
    if (p == dim_)
        return false;
    w *= 1 / Scalar(w[p]);
    for (auto& row : rows_)
        if (sgn(row[p]) != 0)
            row -= Scalar(row[p]) * w;
    rows_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
}

std::optional<Vec> solve_linear(const Matrix& map, const Vec& target)
{
    if (target.size() != map.rows())
        fail(ErrorKind::DimensionMismatch, "solve_linear: target has length " +
                                               std::to_string(target.size()) + ", map has " +
                                               std::to_string(map.rows()) + " rows");
    Matrix aug(map.rows(), map.cols() + 1);
    for (std::size_t i = 0; i < map.rows(); ++i) {
        for (std::size_t j = 0; j < map.cols(); ++j)
            aug(i, j) = map(i, j);
        aug(i, map.cols()) = target[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == map.cols())
        return std::nullopt;
    Vec x(map.cols());
    for (std::size_t k = 0; k < pivots.size(); ++k)
        x[pivots[k]] = aug(k, map.cols());
    return x;
}

// ---------------------------------------------------------------- graded spaces

GradedBasis::GradedBasis(std::vector<std::string> syms, std::vector<int> degs)
    : symbols(std::move(syms)), degrees(std::move(degs))
{
    if (symbols.size() != degrees.size())
        fail(ErrorKind::DimensionMismatch, "graded basis: symbols and degrees differ in length");
    std::set<std::string> seen;
    for (const auto& s : symbols)
        if (!seen.insert(s).second)
            fail(ErrorKind::ValidationError, "duplicate basis symbol '" + s + "'");
}

std::vector<std::size_t> GradedBasis::indices_in_degree(int degree) const
{
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        if (degrees[i] == degree)
            r.push_back(i);
    return r;
}

std::optional<std::size_t> GradedBasis::find(const std::string& symbol) const
{
    for (std::size_t i = 0; i < symbols.size(); ++i)
        if (symbols[i] == symbol)
            return i;
    return std::nullopt;
}

int GradedBasis::min_degree() const
{
    return degrees.empty() ? 0 : *std::min_element(degrees.begin(), degrees.end());
}

int GradedBasis::max_degree() const
{
    return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
}

CochainComplex::CochainComplex(GradedBasis basis, Matrix d) : basis_(std::move(basis)), d_(std::move(d))
{
    const std::size_t n = basis_.size();
    if (d_.rows() != n || d_.cols() != n)
        fail(ErrorKind::DimensionMismatch, "differential must be square of basis size");
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (sgn(d_(i, j)) != 0 && basis_.degrees[i] != basis_.degrees[j] + 1)
                fail(ErrorKind::DegreeMismatch, "d(" + basis_.symbols[j] + ") has a component on " +
                                                    basis_.symbols[i] + " of the wrong degree");
    if (!(d_ * d_).is_zero())
        fail(ErrorKind::ValidationError, "d o d != 0");
}

Matrix CochainComplex::block(int degree) const
{
    auto src = basis_.indices_in_degree(degree);
    auto dst = basis_.indices_in_degree(degree + 1);
    Matrix m(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
        for (std::size_t i = 0; i < dst.size(); ++i)
            m(i, j) = d_(dst[i], src[j]);
    return m;
}

Cohomology::Cohomology(const CochainComplex& complex, int degree)
    : total_(complex.basis().size()), degree_(degree), outgoing_(complex.block(degree)),
      here_(complex.basis().indices_in_degree(degree)),
      below_(complex.basis().indices_in_degree(degree - 1))
{
    Matrix incoming = complex.block(degree - 1);
    const std::size_t k = here_.size();

    std::vector<Vec> candidates;
    for (std::size_t j = 0; j < incoming.cols(); ++j)
        candidates.push_back(incoming.column(j));
    const std::size_t boundary_rank = rank(incoming);
    auto cycles = nullspace(outgoing_);
    const std::size_t first_cycle = candidates.size();
    for (auto& z : cycles)
        candidates.push_back(z);

    std::vector<Vec> local_reps;
    for (auto idx : independent_prefix(candidates, k))
        if (idx >= first_cycle)
            local_reps.push_back(candidates[idx]);
    if (local_reps.size() + boundary_rank != cycles.size())
        fail(ErrorKind::Internal, "cohomology: inconsistent ranks");

    for (const auto& r : local_reps) {
        Vec full(total_);
        for (std::size_t i = 0; i < k; ++i)
            full[here_[i]] = r[i];
        reps_.push_back(std::move(full));
    }
    system_ = Matrix(k, local_reps.size() + incoming.cols());
    for (std::size_t j = 0; j < local_reps.size(); ++j)
        for (std::size_t i = 0; i < k; ++i)
            system_(i, j) = local_reps[j][i];
    for (std::size_t j = 0; j < incoming.cols(); ++j)
        for (std::size_t i = 0; i < k; ++i)
            system_(i, local_reps.size() + j) = incoming(i, j);
}

Decomposition Cohomology::decompose(const Vec& z) const
{
    if (z.size() != total_)
        fail(ErrorKind::DimensionMismatch, "decompose: wrong vector length");
    Vec local(here_.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (sgn(z[i]) == 0)
            continue;
        auto it = std::find(here_.begin(), here_.end(), i);
        if (it == here_.end())
            fail(ErrorKind::DegreeMismatch, "decompose: vector not homogeneous of degree " +
                                                std::to_string(degree_));
        local[static_cast<std::size_t>(it - here_.begin())] = z[i];
    }
    if (!outgoing_.apply(local).is_zero())
        fail(ErrorKind::NotACocycle, "decompose: d(z) != 0");
    auto sol = solve_linear(system_, local);
    if (!sol)
        fail(ErrorKind::Internal, "decompose: cocycle not in span of representatives and coboundaries");
    Decomposition out;
    out.coefficients.assign(sol->begin(), sol->begin() + static_cast<long>(reps_.size()));
    out.primitive = Vec(total_);
    for (std::size_t j = 0; j < below_.size(); ++j)
        out.primitive[below_[j]] = (*sol)[reps_.size() + j];
    return out;
}

bool Cohomology::is_coboundary(const Vec& z) const
{
    auto dec = decompose(z);
    return std::all_of(dec.coefficients.begin(), dec.coefficients.end(),
                       [](const Scalar& s) { return sgn(s) == 0; });
}

} // namespace mcspace
