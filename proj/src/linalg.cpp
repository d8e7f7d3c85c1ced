#include "iforms/linalg.hpp"

#include "iforms/errors.hpp"

namespace iforms {

std::vector<int> echelon_ff(Mat& m) {
    // Exact forward elimination over the field, first nonzero pivot, all
    // updates skipped on zero entries. The slot matrices are sparse, so the
    // guards matter more than the update formula; division is always exact
    // over Scalar.
    const long rows = m.rows(), cols = m.cols();
    std::vector<int> pivots;
    long r = 0;
    for (long c = 0; c < cols && r < rows; ++c) {
        long p = -1;
        for (long i = r; i < rows; ++i) {
            if (!m(i, c).is_zero()) { p = i; break; }
        }
        if (p < 0) continue;
        if (p != r) m.row(p).swap(m.row(r));
        const Scalar inv = m(r, c).inverse();
        for (long i = r + 1; i < rows; ++i) {
            if (m(i, c).is_zero()) continue;
            const Scalar f = m(i, c) * inv;
            m(i, c) = Scalar(0);
            for (long j = c + 1; j < cols; ++j) {
                if (m(r, j).is_zero()) continue;
                m(i, j) -= f * m(r, j);
            }
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

Mat rref(Mat m, std::vector<int>& pivots) {
    pivots = echelon_ff(m);
    const long r = static_cast<long>(pivots.size());
    // Normalize pivots to 1 and eliminate above.
    for (long i = r - 1; i >= 0; --i) {
        const long c = pivots[i];
        const Scalar inv = m(i, c).inverse();
        if (!inv.is_one())
            for (long j = c; j < m.cols(); ++j) {
                if (!m(i, j).is_zero()) m(i, j) *= inv;
            }
        for (long k = 0; k < i; ++k) {
            if (m(k, c).is_zero()) continue;
            const Scalar f = m(k, c);
            for (long j = c; j < m.cols(); ++j) {
                if (!m(i, j).is_zero()) m(k, j) -= f * m(i, j);
            }
        }
    }
    return m.topRows(r);
}

Mat rref(Mat m) {
    std::vector<int> pivots;
    return rref(std::move(m), pivots);
}

long rank(Mat m) { return static_cast<long>(echelon_ff(m).size()); }

Mat kernel(const Mat& m) {
    std::vector<int> pivots;
    const Mat r = rref(m, pivots);
    const long cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<long> frees;
    for (long c = 0; c < cols; ++c)
        if (!is_pivot[c]) frees.push_back(c);
    Mat out = zero_matrix(static_cast<long>(frees.size()), cols);
    for (size_t t = 0; t < frees.size(); ++t) {
        const long f = frees[t];
        out(static_cast<long>(t), f) = Scalar(1);
        for (long i = 0; i < r.rows(); ++i) out(static_cast<long>(t), pivots[i]) = -r(i, f);
    }
    return rref(std::move(out));
}

Mat sum_spaces(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols() && a.rows() != 0 && b.rows() != 0)
        throw structural_error("row spaces live in different coordinate spaces");
    const long cols = a.rows() != 0 ? a.cols() : b.cols();
    Mat stack = zero_matrix(a.rows() + b.rows(), cols);
    if (a.rows()) stack.topRows(a.rows()) = a;
    if (b.rows()) stack.bottomRows(b.rows()) = b;
    return rref(std::move(stack));
}

Mat intersect_spaces(const Mat& a, const Mat& b) {
    // Zassenhaus: rows [A | A], [B | 0]; echelon; rows with zero left half
    // carry an intersection basis in the right half.
    if (a.rows() == 0 || b.rows() == 0) {
        const long cols = a.rows() ? a.cols() : b.cols();
        return zero_matrix(0, cols);
    }
    if (a.cols() != b.cols())
        throw structural_error("row spaces live in different coordinate spaces");
    const long n = a.cols();
    Mat block = zero_matrix(a.rows() + b.rows(), 2 * n);
    block.topLeftCorner(a.rows(), n) = a;
    block.topRightCorner(a.rows(), n) = a;
    block.bottomLeftCorner(b.rows(), n) = b;
    const Mat r = rref(std::move(block));
    std::vector<long> rows;
    for (long i = 0; i < r.rows(); ++i) {
        bool left_zero = true;
        for (long j = 0; j < n && left_zero; ++j) left_zero = r(i, j).is_zero();
        if (left_zero) rows.push_back(i);
    }
    Mat out = zero_matrix(static_cast<long>(rows.size()), n);
    for (size_t t = 0; t < rows.size(); ++t) out.row(static_cast<long>(t)) = r.row(rows[t]).tail(n);
    return rref(std::move(out));
}

bool in_row_space(const Vec& v, const Mat& rref_basis) {
    Vec w = v;
    for (long i = 0; i < rref_basis.rows(); ++i) {
        long c = -1;
        for (long j = 0; j < rref_basis.cols(); ++j)
            if (!rref_basis(i, j).is_zero()) { c = j; break; }
        if (c < 0) continue;
        if (!w(c).is_zero()) {
            const Scalar f = w(c);
            for (long j = 0; j < w.size(); ++j) {
                if (!rref_basis(i, j).is_zero()) w(j) -= f * rref_basis(i, j);
            }
        }
    }
    for (long j = 0; j < w.size(); ++j)
        if (!w(j).is_zero()) return false;
    return true;
}

bool rows_in_row_space(const Mat& a, const Mat& rref_basis) {
    for (long i = 0; i < a.rows(); ++i) {
        if (!in_row_space(a.row(i).transpose(), rref_basis)) return false;
    }
    return true;
}

Scalar determinant(Mat m) {
    if (m.rows() != m.cols()) throw structural_error("determinant of a non-square matrix");
    const long n = m.rows();
    if (n == 0) return Scalar(1);
    Scalar prev(1);
    int sign = 1;
    for (long c = 0; c < n - 1; ++c) {
        long p = -1;
        for (long i = c; i < n; ++i)
            if (!m(i, c).is_zero()) { p = i; break; }
        if (p < 0) return Scalar(0);
        if (p != c) { m.row(p).swap(m.row(c)); sign = -sign; }
        const Scalar pivot = m(c, c);
        for (long i = c + 1; i < n; ++i) {
            for (long j = c + 1; j < n; ++j)
                m(i, j) = (m(i, j) * pivot - m(i, c) * m(c, j)) / prev;
            m(i, c) = Scalar(0);
        }
        prev = pivot;
    }
    Scalar det = m(n - 1, n - 1);
    return sign < 0 ? -det : det;
}

Mat solve_full_column_rank(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw structural_error("solve: row count mismatch");
    const long n = a.cols(), k = b.cols();
    Mat aug = zero_matrix(a.rows(), n + k);
    aug.leftCols(n) = a;
    aug.rightCols(k) = b;
    std::vector<int> pivots;
    const Mat r = rref(std::move(aug), pivots);
    Mat x = zero_matrix(n, k);
    long row = 0;
    for (int c : pivots) {
        if (c >= n)
            throw consistency_error("solve: inconsistent linear system");
        x.row(c) = r.row(row).tail(k);
        ++row;
    }
    if (static_cast<long>(pivots.size()) != n)
        throw structural_error("solve: matrix does not have full column rank");
    return x;
}

Mat inverse(const Mat& m) {
    if (m.rows() != m.cols()) throw structural_error("inverse of a non-square matrix");
    return solve_full_column_rank(m, identity(m.rows()));
}

Mat identity(long n) {
    Mat m = zero_matrix(n, n);
    for (long i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

Mat zero_matrix(long rows, long cols) {
    Mat m(rows, cols);
    m.setConstant(Scalar(0));
    return m;
}

} // namespace iforms
