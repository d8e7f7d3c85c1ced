#pragma once

#include "iforms/slots.hpp"

namespace iforms {

/// Finite union of linear subspaces through the origin, each stored as a
/// canonical rref row basis. These are exactly the local models of loop
/// spaces of linear actions.
class SubspaceArrangement {
public:
    SubspaceArrangement(int n, const std::vector<Mat>& component_bases);

    static SubspaceArrangement full(int n);
    static SubspaceArrangement origin(int n);

    int ambient_dim() const { return n_; }
    /// Deduplicated components, deterministic order; rows = basis vectors.
    const std::vector<Mat>& components() const { return comps_; }

    bool operator==(const SubspaceArrangement& o) const;

private:
    int n_;
    std::vector<Mat> comps_;
};

/// Per-weight graded pieces of the vanishing ideal of an arrangement,
/// each a canonical basis in the degree-w monomial coordinates.
class IdealSlices {
public:
    IdealSlices(int n, std::vector<Mat> slices);

    int ambient_dim() const { return n_; }
    int cutoff() const { return static_cast<int>(slices_.size()) - 1; }
    const Mat& slice(int w) const;
    long dim(int w) const { return slice(w).rows(); }
    std::vector<Poly> slice_polys(int w) const;

private:
    int n_;
    std::vector<Mat> slices_; // index = weight
};

/// Degree-w polynomials vanishing on every component, for w <= cutoff,
/// computed as the kernel of the joint restriction map to the components.
IdealSlices vanishing_ideal_slices(const SubspaceArrangement& arr, int cutoff);

/// The quotient complex Omega^k / (I Omega^k + dI ^ Omega^{k-1} [+ extras])
/// realized slotwise with its induced differential on canonical complements.
class QuotientComplex {
public:
    int ambient_dim() const { return n_; }
    int cutoff() const { return cutoff_; }
    const IdealSlices& ideal() const { return ideal_; }

    const QuotientSlot& slot(SlotKey key) const;
    long qdim(SlotKey key) const { return slot(key).qdim(); }
    /// Induced differential, quotient coordinates (w,k) -> (w,k+1).
    const Mat& induced_d(SlotKey key) const;

    /// {w -> {k -> dim}} over all computed slots.
    std::map<int, std::map<int, long>> dims() const;

    /// Test hook: corrupts one induced differential entry.
    void inject_fault();

    friend QuotientComplex make_quotient_complex(
        const SubspaceArrangement& arr, int cutoff,
        const std::function<std::vector<Form>(int w, int k)>& extra_denominators);

private:
    int n_ = 0;
    int cutoff_ = 0;
    IdealSlices ideal_{0, {}};
    std::map<SlotKey, QuotientSlot> slots_;
    std::map<SlotKey, Mat> induced_d_;
};

QuotientComplex make_quotient_complex(
    const SubspaceArrangement& arr, int cutoff,
    const std::function<std::vector<Form>(int w, int k)>& extra_denominators);

inline QuotientComplex gg_complex(const SubspaceArrangement& arr, int cutoff) {
    return make_quotient_complex(arr, cutoff, {});
}

/// Chart transfer: the map induced on quotient complexes by pullback along a
/// linear embedding H: R^m -> R^n (n x m), from the source chart's complex to
/// the destination chart's. Validated: H injective and H^* maps the source
/// ideal slices into the destination's.
struct ChartTransfer {
    int src_dim = 0, dst_dim = 0;
    std::map<SlotKey, Mat> eta; // dst quotient coords x src quotient coords
};

ChartTransfer chart_transfer(const QuotientComplex& src, const QuotientComplex& dst, const Mat& h);

/// Exact per-slot equality of eta_ki with eta_kl . eta_li.
bool cocycle_check(const ChartTransfer& eta_li, const ChartTransfer& eta_kl,
                   const ChartTransfer& eta_ki);

bool transfers_equal(const ChartTransfer& a, const ChartTransfer& b);

/// Whether two embeddings into the same source chart induce the same
/// structure map on the destination chart: H*x_i == G*x_i modulo the
/// destination ideal for every source coordinate.
bool same_structure_map(const QuotientComplex& dst, const Mat& h, const Mat& g);

/// Slotwise isomorphism test (equal dimensions and full rank).
bool transfer_is_isomorphism(const ChartTransfer& t, const QuotientComplex& src,
                             const QuotientComplex& dst);

/// eta commutes with the induced differentials on every slot.
bool transfer_commutes_with_d(const ChartTransfer& t, const QuotientComplex& src,
                              const QuotientComplex& dst);

} // namespace iforms
