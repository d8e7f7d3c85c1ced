#pragma once

#include "iforms/basic_forms.hpp"

namespace iforms {

/// Weighted circle action on R^{2m+z}: pair i spans (x_i, y_i) rotating with
/// integer weight w_i != 0; z extra coordinates are fixed. The local loop
/// space model lives in R^{1+2m+z} with the angle coordinate first.
struct CircleWeights {
    std::vector<long> weights;
    int fixed_dims = 0;

    int pairs() const { return static_cast<int>(weights.size()); }
    int action_dim() const { return 2 * pairs() + fixed_dims; }
    int ambient_dim() const { return 1 + action_dim(); }

    void validate() const;
};

/// Rotation generator on the action space (block antisymmetric).
Mat circle_generator(const CircleWeights& cw);
/// The same generator extended by zero over the angle coordinate.
LinearVectorField ambient_generator(const CircleWeights& cw);

/// (angle axis x fixed directions) union ({angle = 0} x action space).
SubspaceArrangement circle_arrangement(const CircleWeights& cw);

/// Relative quotient of the loop model: forms modulo the ideal, its
/// differentials, and dtheta ^ anything, with the induced differential.
QuotientComplex circle_relative_complex(const CircleWeights& cw, int cutoff);

/// The local model of basic relative forms for the circle action: the
/// relative quotient (ideal plus d(ideal) plus dtheta ^ .) with its induced
/// differential, the cut by contraction and Lie-derivative invariance, and
/// the induced fiber homotopy operator.
class CircleModel {
public:
    CircleModel(const CircleWeights& cw, int cutoff);

    const CircleWeights& weights() const { return cw_; }
    int cutoff() const { return cutoff_; }
    const QuotientComplex& relative() const { return rel_; }

    /// {w -> {k -> dim}} of the relative quotient slots.
    std::map<int, std::map<int, long>> relative_dims() const { return rel_.dims(); }
    /// Dimensions of the basic subspaces (horizontal + invariant).
    std::map<int, std::map<int, long>> basic_dims() const;
    long basic_dim(int w, int k) const;

    /// Induced operators on quotient coordinates.
    const Mat& induced_d(int w, int k) const { return rel_.induced_d({w, k}); }
    const Mat& induced_homotopy(int w, int k) const;    // (w,k) -> (w,k-1), k >= 1
    const Mat& induced_fiber_eval(int w) const;         // (w,0) -> (w,0)
    const Mat& induced_contraction(int w, int k) const; // (w,k) -> (w,k-1), k >= 1
    const Mat& induced_lie(int w, int k) const;         // (w,k) -> (w,k)
    const Mat& basic(int w, int k) const;

    std::vector<long> cohomology(int w) const;
    /// dK + Kd = id (k >= 1), Kd = id - eval (k = 0) on full quotient slots.
    bool homotopy_identity_holds(int w) const;

    Report cohomology_report() const;

    /// Test hook: corrupts one induced differential entry.
    void inject_fault() { rel_.inject_fault(); }

private:
    CircleWeights cw_;
    int cutoff_;
    QuotientComplex rel_;
    std::map<SlotKey, Mat> basic_;
    std::map<SlotKey, Mat> homotopy_;
    std::map<SlotKey, Mat> contraction_;
    std::map<SlotKey, Mat> lie_;
    std::map<int, Mat> eval_;
};

} // namespace iforms
