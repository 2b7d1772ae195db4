#include "isosym/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "isosym/errors.hpp"

namespace isosym {

namespace {

using EigenMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Products below this many multiply-adds stay on one thread.
constexpr std::size_t parallel_threshold = 32 * 32 * 32;

Eigen::Map<const EigenMatrix> as_eigen(const ComplexMatrix& m) {
    return {m.entries().data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(what) + ": shapes " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
    }
}

void require_product_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

// Complex multiply-add written out so the serial and parallel kernels share
// one rounding sequence.
inline void fma_into(Scalar& acc, const Scalar& x, const Scalar& y) noexcept {
    const double re = x.real() * y.real() - x.imag() * y.imag();
    const double im = x.real() * y.imag() + x.imag() * y.real();
    acc = Scalar(acc.real() + re, acc.imag() + im);
}

Eigen::BDCSVD<EigenMatrix> full_svd(const ComplexMatrix& m) {
    return Eigen::BDCSVD<EigenMatrix>(as_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Scalar(0.0, 0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw DimensionMismatch("ComplexMatrix: " + std::to_string(entries_.size()) + " entries for " +
                                std::to_string(rows_) + "x" + std::to_string(cols_));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw DimensionMismatch("ComplexMatrix: ragged initializer");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = 1.0;
    }
    return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Scalar> diag) {
    ComplexMatrix out(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        out(i, i) = diag[i];
    }
    return out;
}

ComplexMatrix ComplexMatrix::column(std::span<const Scalar> v) {
    return ComplexMatrix(v.size(), 1, std::vector<Scalar>(v.begin(), v.end()));
}

ComplexMatrix ComplexMatrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
    ComplexMatrix out(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) {
            throw DimensionMismatch("from_columns: column length mismatch");
        }
        for (std::size_t i = 0; i < rows; ++i) {
            out(i, j) = columns[j][i];
        }
    }
    return out;
}

Vector ComplexMatrix::column_vector(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        v[i] = (*this)(i, j);
    }
    return v;
}

ComplexMatrix ComplexMatrix::leading_block(std::size_t n) const {
    if (n > rows_ || n > cols_) {
        throw DimensionMismatch("leading_block: block larger than matrix");
    }
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(i, j) = (*this)(i, j);
        }
    }
    return out;
}

bool ComplexMatrix::all_finite() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Scalar& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] -= other.entries_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Scalar s) noexcept {
    for (auto& z : entries_) {
        z *= s;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Scalar s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(j, i) = std::conj(m(i, j));
        }
    }
    return out;
}

ComplexMatrix matmul_reference(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_product_shape(a, b);
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Scalar acc(0.0, 0.0);
            for (std::size_t k = 0; k < a.cols(); ++k) {
                fma_into(acc, a(i, k), b(k, j));
            }
            c(i, j) = acc;
        }
    }
    return c;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_product_shape(a, b);
    const std::size_t n = a.rows();
    const std::size_t inner = a.cols();
    const std::size_t p = b.cols();
    ComplexMatrix c(n, p);
    const Scalar* ap = a.entries().data();
    const Scalar* bp = b.entries().data();
    Scalar* cp = c.entries().data();
    const bool big = n * inner * p >= parallel_threshold;

    // i-k-j order; c(i,j) still accumulates over k ascending.
#pragma omp parallel for schedule(static) if (big)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        Scalar* crow = cp + static_cast<std::size_t>(i) * p;
        for (std::size_t k = 0; k < inner; ++k) {
            const Scalar aik = ap[static_cast<std::size_t>(i) * inner + k];
            const Scalar* brow = bp + k * p;
            for (std::size_t j = 0; j < p; ++j) {
                fma_into(crow[j], aik, brow[j]);
            }
        }
    }
    return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t p = b.rows();
    const std::size_t q = b.cols();
    ComplexMatrix out(a.rows() * p, a.cols() * q);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar aij = a(i, j);
            for (std::size_t k = 0; k < p; ++k) {
                for (std::size_t l = 0; l < q; ++l) {
                    out(i * p + k, j * q + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

double fro_norm(const ComplexMatrix& m) noexcept { return vector_norm(m.entries()); }

double vector_norm(std::span<const Scalar> v) noexcept {
    // Scaled accumulation avoids overflow for large entries.
    double scale = 0.0;
    double ssq = 1.0;
    for (const auto& z : v) {
        for (double x : {z.real(), z.imag()}) {
            if (x != 0.0) {
                const double ax = std::abs(x);
                if (scale < ax) {
                    ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
                    scale = ax;
                } else {
                    ssq += (ax / scale) * (ax / scale);
                }
            }
        }
    }
    return scale * std::sqrt(ssq);
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b) - matmul(b, a); }

bool is_unitary(const ComplexMatrix& m, double tol) {
    if (!m.square()) {
        return false;
    }
    return fro_norm(matmul(adjoint(m), m) - ComplexMatrix::identity(m.rows())) <= tol;
}

std::vector<Eigenpair> eigenpairs(const ComplexMatrix& m, double tol_eig) {
    if (!m.square()) {
        throw DimensionMismatch("eigenpairs: matrix must be square");
    }
    const std::size_t n = m.rows();
    if (n == 0) {
        return {};
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(as_eigen(m)), true);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceFailure("eigenpairs: complex Schur iteration did not converge");
    }
    const double bound = tol_eig * (1.0 + fro_norm(m));
    std::vector<Eigenpair> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        Eigenpair pair;
        pair.value = solver.eigenvalues()(static_cast<Eigen::Index>(k));
        Eigen::VectorXcd v = solver.eigenvectors().col(static_cast<Eigen::Index>(k));
        v.normalize();
        const double residual = (as_eigen(m) * v - pair.value * v).norm();
        if (!(residual <= bound)) {
            throw ConvergenceFailure("eigenpairs: residual " + sci(residual) + " exceeds bound " +
                                     sci(bound));
        }
        pair.vector.assign(v.data(), v.data() + v.size());
        out.push_back(std::move(pair));
    }
    return out;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    if (m.empty()) {
        return {};
    }
    Eigen::BDCSVD<EigenMatrix> svd(as_eigen(m));
    const auto& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

namespace {

std::vector<Vector> trailing_right_vectors(const ComplexMatrix& m, double sigma_floor, bool relative) {
    const std::size_t cols = m.cols();
    if (cols == 0) {
        return {};
    }
    std::vector<Vector> basis;
    if (m.rows() == 0) {
        for (std::size_t j = 0; j < cols; ++j) {
            Vector e(cols, Scalar(0.0, 0.0));
            e[j] = 1.0;
            basis.push_back(std::move(e));
        }
        return basis;
    }
    const auto svd = full_svd(m);
    const auto& s = svd.singularValues();
    const double sigma_max = s.size() > 0 ? s(0) : 0.0;
    const double floor = relative ? sigma_floor * sigma_max : sigma_floor;
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (sigma_max > 0.0 && s(i) > floor) {
            ++rank;
        }
    }
    const auto& v = svd.matrixV();
    for (std::size_t j = rank; j < cols; ++j) {
        Vector col(cols);
        for (std::size_t i = 0; i < cols; ++i) {
            col[i] = v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        basis.push_back(std::move(col));
    }
    return basis;
}

} // namespace

std::vector<Vector> null_space(const ComplexMatrix& m, double tol_rank) {
    return trailing_right_vectors(m, tol_rank, true);
}

std::vector<Vector> null_space_below(const ComplexMatrix& m, double threshold) {
    return trailing_right_vectors(m, threshold, false);
}

Vector smallest_singular_vector(const ComplexMatrix& m) {
    const auto svd = full_svd(m);
    const auto& v = svd.matrixV();
    const Eigen::Index last = v.cols() - 1;
    Vector col(m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) {
        col[i] = v(static_cast<Eigen::Index>(i), last);
    }
    return col;
}

std::size_t matrix_rank(const std::vector<ComplexMatrix>& family, double tol_rank) {
    if (family.empty()) {
        return 0;
    }
    const std::size_t width = family.front().rows() * family.front().cols();
    ComplexMatrix stacked(family.size(), width);
    for (std::size_t r = 0; r < family.size(); ++r) {
        require_same_shape(family.front(), family[r], "matrix_rank");
        const auto e = family[r].entries();
        std::copy(e.begin(), e.end(), stacked.entries().begin() + static_cast<std::ptrdiff_t>(r * width));
    }
    const auto s = singular_values(stacked);
    if (s.empty() || s.front() == 0.0) {
        return 0;
    }
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [&](double x) { return x > tol_rank * s.front(); }));
}

namespace {

// Single-linkage groups of the points within `radius` of each other, each
// group listed in increasing index order, groups ordered by first index.
std::vector<std::vector<std::size_t>> link(const std::vector<Scalar>& points, double radius) {
    std::vector<std::size_t> parent(points.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            i = parent[i] = parent[parent[i]];
        }
        return i;
    };
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (std::abs(points[i] - points[j]) <= radius) {
                const auto a = find(i);
                const auto b = find(j);
                parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::size_t> slot(points.size(), points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto root = find(i);
        if (slot[root] == points.size()) {
            slot[root] = groups.size();
            groups.emplace_back();
        }
        groups[slot[root]].push_back(i);
    }
    return groups;
}

// Exchanges diagonal entries k and k+1 of the upper triangular t, updating
// the Schur vectors q.
void swap_adjacent(Eigen::MatrixXcd& t, Eigen::MatrixXcd& q, Eigen::Index k) {
    const Scalar t11 = t(k, k);
    const Scalar t22 = t(k + 1, k + 1);
    Scalar v0 = t(k, k + 1);
    Scalar v1 = t22 - t11;
    const double norm = std::hypot(std::abs(v0), std::abs(v1));
    if (norm == 0.0) {
        return;
    }
    v0 /= norm;
    v1 /= norm;
    // Columns: the eigenvector of the 2x2 block for t22, and its complement.
    const Scalar g00 = v0, g10 = v1, g01 = -std::conj(v1), g11 = std::conj(v0);
    const Eigen::Index n = t.rows();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Scalar a = t(k, j);
        const Scalar b = t(k + 1, j);
        t(k, j) = std::conj(g00) * a + std::conj(g10) * b;
        t(k + 1, j) = std::conj(g01) * a + std::conj(g11) * b;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const Scalar x = t(i, k);
        const Scalar y = t(i, k + 1);
        t(i, k) = x * g00 + y * g10;
        t(i, k + 1) = x * g01 + y * g11;
        const Scalar qx = q(i, k);
        const Scalar qy = q(i, k + 1);
        q(i, k) = qx * g00 + qy * g10;
        q(i, k + 1) = qx * g01 + qy * g11;
    }
    t(k + 1, k) = 0.0;
}

} // namespace

std::vector<InvariantSubspace> invariant_subspaces(const ComplexMatrix& m, double radius) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("invariant_subspaces: matrix must be square");
    }
    const auto n = static_cast<Eigen::Index>(m.rows());
    if (n == 0) {
        return {};
    }
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(Eigen::MatrixXcd(as_eigen(m)), true);
    if (schur.info() != Eigen::Success) {
        throw ConvergenceFailure("invariant_subspaces: Schur decomposition did not converge");
    }
    std::vector<Scalar> values;
    for (Eigen::Index i = 0; i < n; ++i) {
        values.push_back(schur.matrixT()(i, i));
    }
    std::vector<InvariantSubspace> out;
    for (const auto& group : link(values, radius)) {
        Eigen::MatrixXcd t = schur.matrixT();
        Eigen::MatrixXcd q = schur.matrixU();
        std::vector<bool> picked(values.size(), false);
        Scalar sum(0.0, 0.0);
        for (auto g : group) {
            picked[g] = true;
            sum += values[g];
        }
        Eigen::Index front = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!picked[static_cast<std::size_t>(i)]) {
                continue;
            }
            for (Eigen::Index k = i; k > front; --k) {
                swap_adjacent(t, q, k - 1);
                std::swap(picked[static_cast<std::size_t>(k)], picked[static_cast<std::size_t>(k - 1)]);
            }
            ++front;
        }
        ComplexMatrix basis(m.rows(), group.size());
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t c = 0; c < group.size(); ++c) {
                basis(i, c) = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
            }
        }
        out.push_back({sum / static_cast<double>(group.size()), std::move(basis)});
    }
    return out;
}

} // namespace isosym
