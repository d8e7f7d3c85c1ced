#pragma once

#include <functional>
#include <map>

#include "iforms/form.hpp"

namespace iforms {

/// A (weight, form degree) slot of the canonical grading.
struct SlotKey {
    int w = 0;
    int k = 0;
    friend bool operator<(const SlotKey& a, const SlotKey& b) {
        return a.w != b.w ? a.w < b.w : a.k < b.k;
    }
    friend bool operator==(const SlotKey& a, const SlotKey& b) { return a.w == b.w && a.k == b.k; }
};

long slot_dim(int n, int w, int k);

/// Ordered monomial-form basis x^alpha dx_I of the slot (w, k) on R^n,
/// |alpha| = w - k. Index sets run lexicographically, exponents
/// lexicographically inside each index set.
class SlotBasis {
public:
    SlotBasis(int n, int w, int k);

    int ambient_dim() const { return n_; }
    int weight() const { return w_; }
    int form_degree() const { return k_; }
    long dim() const { return static_cast<long>(elems_.size()); }

    const std::pair<IdxSet, Expo>& element(long i) const { return elems_[static_cast<size_t>(i)]; }
    Form element_form(long i) const;

    /// Coordinates of a form whose every term lives in this slot.
    Vec coordinates(const Form& f) const;
    Form form(const Vec& coords) const;

    /// Matrix of a linear operator between full slots, columns indexed by
    /// this basis, rows by the target basis.
    Mat operator_matrix(const SlotBasis& target,
                        const std::function<Form(const Form&)>& op) const;

private:
    int n_, w_, k_;
    std::vector<std::pair<IdxSet, Expo>> elems_;
    std::map<std::pair<IdxSet, Expo>, long> index_;
};

/// Per-slot exact subspaces in the canonical slot coordinates, stored as
/// reduced-row-echelon bases so equal subspaces have equal matrices.
/// Absent slots are zero.
class GradedSubspace {
public:
    GradedSubspace() = default;

    const Mat* slot(SlotKey key) const;
    long dim(SlotKey key) const;
    void set(SlotKey key, Mat basis_rows); // rref-normalized, empty dropped
    const std::map<SlotKey, Mat>& slots() const { return slots_; }

private:
    std::map<SlotKey, Mat> slots_;
};

/// Splits forms into weight-homogeneous pieces and spans them slotwise.
GradedSubspace span_from_forms(int n, const std::vector<Form>& forms);
GradedSubspace sum(const GradedSubspace& a, const GradedSubspace& b);
GradedSubspace intersect(const GradedSubspace& a, const GradedSubspace& b);

/// Slot dimension minus the rank of the denominator at (w, k).
long quotient_dim(int n, const GradedSubspace& denom, int w, int k);

/// Per-slot matrices of an operator shifting slots by (dw, dk).
class GradedMap {
public:
    GradedMap(int dw, int dk) : dw_(dw), dk_(dk) {}

    int dw() const { return dw_; }
    int dk() const { return dk_; }
    SlotKey target(SlotKey src) const { return {src.w + dw_, src.k + dk_}; }

    const Mat* block(SlotKey src) const;
    void set(SlotKey src, Mat m) { blocks_[src] = std::move(m); }
    const std::map<SlotKey, Mat>& blocks() const { return blocks_; }

private:
    int dw_, dk_;
    std::map<SlotKey, Mat> blocks_;
};

/// Matrices of a pointwise operator on the full slots of R^n at weight w.
GradedMap graded_operator(int n, int w, int kmax, int dw, int dk,
                          const std::function<Form(const Form&)>& op);

/// Cohomology dimensions H^k for k = 0..kmax of the subcomplex `sub` at
/// weight w under the differential `d` (given on the same coordinates that
/// `sub`'s bases use). Verifies that d maps sub into sub; a violation throws
/// consistency_error, since closure is part of the theorems being checked.
std::vector<long> cohomology_dims(const GradedSubspace& sub, const GradedMap& d, int w, int kmax);

/// A slot together with a denominator subspace; quotient coordinates are the
/// coefficients on the non-pivot monomial-form basis vectors, so no coset
/// representative is ever chosen arbitrarily.
struct QuotientSlot {
    long ambient = 0;       // full slot dimension
    Mat denom;              // rref rows, cols == ambient
    std::vector<int> pivots;
    std::vector<long> comp; // complement (non-pivot) coordinate indices

    static QuotientSlot make(long ambient, Mat denominator_rows);

    long qdim() const { return static_cast<long>(comp.size()); }
    /// Reduce modulo the denominator and read off complement coordinates.
    Vec reduce(const Vec& full) const;
    /// Embed quotient coordinates on the complement basis vectors.
    Vec lift(const Vec& q) const;
    /// target.reduce . op . lift, columnwise.
    Mat induced(const Mat& op, const QuotientSlot& target) const;
};

} // namespace iforms
