#include "tdual/matrix.hpp"

#include "tdual/errors.hpp"

#include <algorithm>
#include <sstream>

namespace tdual::abgroup {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw ValidationError("IntMatrix: data size does not match dimensions");
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw ValidationError("IntMatrix: ragged row data");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw ValidationError("IntMatrix: dimension mismatch in product");
    IntMatrix p(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                p.at(i, j) += a * rhs.at(k, j);
        }
    return p;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw ValidationError("IntMatrix: dimension mismatch in difference");
    IntMatrix d(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) d.data_[i] = data_[i] - rhs.data_[i];
    return d;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw ValidationError("IntMatrix: dimension mismatch in sum");
    IntMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] + rhs.data_[i];
    return s;
}

IntMatrix IntMatrix::scaled(const Int& c) const {
    IntMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] * c;
    return s;
}

IntMatrix IntMatrix::pow(unsigned long e) const {
    if (rows_ != cols_) throw ValidationError("IntMatrix: pow needs a square matrix");
    IntMatrix result = identity(rows_);
    IntMatrix base = *this;
    while (e > 0) {
        if (e & 1UL) result = result * base;
        base = base * base;
        e >>= 1UL;
    }
    return result;
}

IntMatrix IntMatrix::augment_cols(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_) throw ValidationError("IntMatrix: row mismatch in augment");
    IntMatrix m(rows_, cols_ + rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < rhs.cols_; ++j) m.at(i, cols_ + j) = rhs.at(i, j);
    }
    return m;
}

IntMatrix IntMatrix::submatrix(std::size_t row0, std::size_t col0,
                               std::size_t nrows, std::size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_)
        throw ValidationError("IntMatrix: submatrix out of range");
    IntMatrix m(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) m.at(i, j) = at(row0 + i, col0 + j);
    return m;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) at(dst, j) += c * at(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) at(i, dst) += c * at(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) = -at(i, j);
}

Int IntMatrix::determinant() const {
    if (rows_ != cols_) throw ValidationError("IntMatrix: determinant needs a square matrix");
    const std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                // Bareiss: division is exact at every step
                a.at(i, j) = num / prev;
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
    }
    os << "]";
    return os.str();
}

namespace {

// Locates the smallest nonzero |entry| in m[t.., t..]; row-major tie break.
bool find_pivot(const IntMatrix& m, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best = 0;
    for (std::size_t i = t; i < m.rows(); ++i)
        for (std::size_t j = t; j < m.cols(); ++j) {
            const Int& v = m.at(i, j);
            if (v == 0) continue;
            Int a = abs(v);
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

bool block_cleared(const IntMatrix& m, std::size_t t) {
    for (std::size_t i = t + 1; i < m.rows(); ++i)
        if (m.at(i, t) != 0) return false;
    for (std::size_t j = t + 1; j < m.cols(); ++j)
        if (m.at(t, j) != 0) return false;
    return true;
}

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix& input) {
    const std::size_t r = input.rows();
    const std::size_t c = input.cols();
    SmithDecomposition s{IntMatrix::identity(r), input, IntMatrix::identity(c)};
    IntMatrix& d = s.D;
    const std::size_t steps = std::min(r, c);

    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            std::size_t pi = t, pj = t;
            if (!find_pivot(d, t, pi, pj)) break; // remaining block is zero

            d.swap_rows(t, pi);
            s.U.swap_rows(t, pi);
            d.swap_cols(t, pj);
            s.V.swap_cols(t, pj);

            for (std::size_t i = t + 1; i < r; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = d.at(i, t) / d.at(t, t); // truncated; remainder handled next pass
                d.add_row_multiple(i, t, -q);
                s.U.add_row_multiple(i, t, -q);
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = d.at(t, j) / d.at(t, t);
                d.add_col_multiple(j, t, -q);
                s.V.add_col_multiple(j, t, -q);
            }

            if (!block_cleared(d, t)) continue;

            // Pivot is lone; enforce that it divides the remaining block.
            bool fixed = true;
            for (std::size_t i = t + 1; i < r && fixed; ++i)
                for (std::size_t j = t + 1; j < c && fixed; ++j)
                    if (!divides(d.at(t, t), d.at(i, j))) {
                        d.add_row_multiple(t, i, 1);
                        s.U.add_row_multiple(t, i, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (d.at(t, t) < 0) {
            d.negate_row(t);
            s.U.negate_row(t);
        }
    }
    return s;
}

std::vector<Int> smith_invariant_factors(IntMatrix d) {
    // Same elimination as smith_normal_form without transform bookkeeping.
    const std::size_t r = d.rows();
    const std::size_t c = d.cols();
    const std::size_t steps = std::min(r, c);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            std::size_t pi = t, pj = t;
            if (!find_pivot(d, t, pi, pj)) break;
            d.swap_rows(t, pi);
            d.swap_cols(t, pj);
            for (std::size_t i = t + 1; i < r; ++i)
                if (d.at(i, t) != 0) d.add_row_multiple(i, t, -Int(d.at(i, t) / d.at(t, t)));
            for (std::size_t j = t + 1; j < c; ++j)
                if (d.at(t, j) != 0) d.add_col_multiple(j, t, -Int(d.at(t, j) / d.at(t, t)));
            if (!block_cleared(d, t)) continue;
            bool fixed = true;
            for (std::size_t i = t + 1; i < r && fixed; ++i)
                for (std::size_t j = t + 1; j < c && fixed; ++j)
                    if (!divides(d.at(t, t), d.at(i, j))) {
                        d.add_row_multiple(t, i, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
    }
    std::vector<Int> factors;
    for (std::size_t t = 0; t < steps; ++t) factors.push_back(abs(d.at(t, t)));
    return factors;
}

std::size_t rank(const IntMatrix& m) {
    std::size_t n = 0;
    for (const Int& f : smith_invariant_factors(m))
        if (f != 0) ++n;
    return n;
}

IntMatrix kernel_basis(const IntMatrix& m) {
    // M x = 0  <=>  D y = 0 with x = V y, so the kernel is spanned by the
    // columns of V whose diagonal entry vanishes (or is past the diagonal).
    SmithDecomposition s = smith_normal_form(m);
    std::vector<std::size_t> free_cols;
    const std::size_t diag = std::min(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (j >= diag || s.D.at(j, j) == 0) free_cols.push_back(j);
    IntMatrix k(m.cols(), free_cols.size());
    for (std::size_t jj = 0; jj < free_cols.size(); ++jj)
        for (std::size_t i = 0; i < m.cols(); ++i) k.at(i, jj) = s.V.at(i, free_cols[jj]);
    return k;
}

} // namespace tdual::abgroup
