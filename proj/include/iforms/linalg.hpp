#pragma once

#include <Eigen/Core>

#include <vector>

#include "iforms/scalar.hpp"

namespace Eigen {

template <>
struct NumTraits<iforms::Scalar> {
    using Real = iforms::Scalar;
    using NonInteger = iforms::Scalar;
    using Nested = iforms::Scalar;
    using Literal = iforms::Scalar;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 40,
        MulCost = 40
    };
    static inline Real epsilon() { return iforms::Scalar(0); }
    static inline Real dummy_precision() { return iforms::Scalar(0); }
    static inline int digits10() { return 0; }
};

} // namespace Eigen

namespace iforms {

using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Exact forward elimination in place; returns the pivot columns. No
/// pivot-size heuristics: first nonzero wins, which keeps every run
/// deterministic. Division is exact over the field, zero entries skip
/// their updates entirely.
std::vector<int> echelon_ff(Mat& m);

/// Canonical reduced row echelon form with zero rows dropped. Two row spaces
/// are equal iff their rref matrices are identical.
Mat rref(Mat m);
Mat rref(Mat m, std::vector<int>& pivots);

long rank(Mat m);

/// Rows spanning the right kernel {x : m x = 0}, canonicalized by rref.
Mat kernel(const Mat& m);

/// Row-space sum and intersection of row-basis matrices (same column count).
Mat sum_spaces(const Mat& a, const Mat& b);
Mat intersect_spaces(const Mat& a, const Mat& b);

/// Membership of v in the row space of an rref matrix.
bool in_row_space(const Vec& v, const Mat& rref_basis);
/// All rows of a contained in the row space of an rref matrix.
bool rows_in_row_space(const Mat& a, const Mat& rref_basis);

/// Exact determinant by fraction-free elimination.
Scalar determinant(Mat m);

/// Solves a x = b for a with full column rank; throws consistency_error when
/// the system is inconsistent. b may have several columns.
Mat solve_full_column_rank(const Mat& a, const Mat& b);

Mat inverse(const Mat& m);

Mat identity(long n);
Mat zero_matrix(long rows, long cols);

} // namespace iforms
