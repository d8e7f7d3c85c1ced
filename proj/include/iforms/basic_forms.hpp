#pragma once

#include "iforms/group_action.hpp"
#include "iforms/report.hpp"

namespace iforms {

/// A family of model spaces with linear identifications between them.
/// For a finite group this is one component per group element (its fixed
/// space in intrinsic coordinates) and one symmetry per pair (g, h); for a
/// slice model G x_H V it is one component per (g, fixed coset). Families of
/// forms live in the direct sum of the per-component slots; invariance is the
/// linear system omega_src = T^* omega_dst over all symmetries.
struct ComponentSystem {
    struct Symmetry {
        int src = 0, dst = 0;
        Mat transport; // linear map R^{d_src} -> R^{d_dst}
    };
    std::vector<int> dims;
    std::vector<Symmetry> symmetries;
    /// Horizontality: per component, vector fields (intrinsic coordinates)
    /// whose contraction must vanish. Empty for finite groups, where orbits
    /// through the origin germ are discrete.
    std::vector<std::vector<Mat>> tangent_fields;

    int component_count() const { return static_cast<int>(dims.size()); }
    int max_dim() const;
};

/// One component per group element over its fixed space; symmetries from all
/// (g, h) pairs via transport_map. Optional ambient Lie generator matrices
/// add contraction constraints on the components they are tangent to.
ComponentSystem group_component_system(const FiniteGroupAction& g, const LoopSpaceModel& loop,
                                       const std::vector<Mat>& lie_generators = {});

/// Components (g, coset i) with r_i^{-1} g r_i in H, carrying the fixed space
/// of rho(r_i^{-1} g r_i) in V; symmetries from all h in G via the H-part of
/// the coset factorization. This is the loop space of G acting on the
/// disjoint union of |G/H| twisted copies of V near the origin orbit.
ComponentSystem slice_component_system(const FiniteGroupAction& g, const InducedAction& induced);

/// Per-slot direct sum of the component slot bases.
struct FamilySlot {
    std::vector<SlotBasis> per_comp;
    std::vector<long> offsets;
    long total = 0;

    FamilySlot(const ComponentSystem& sys, int w, int k);
    long dim() const { return total; }
};

/// Basic families per slot, their fiberwise differential, the family
/// homotopy operator and the evaluation-at-origin augmentation, all as exact
/// matrices on the family coordinates.
class BasicComplex {
public:
    BasicComplex(ComponentSystem sys, int cutoff);

    const ComponentSystem& system() const { return sys_; }
    int cutoff() const { return cutoff_; }
    int kmax() const { return kmax_; }

    const FamilySlot& family_slot(int w, int k) const;
    /// rref basis of the basic subspace in family coordinates.
    const Mat& basic(int w, int k) const;
    long basic_dim(int w, int k) const { return basic(w, k).rows(); }

    /// Componentwise exterior differential, full family coordinates
    /// (w,k) -> (w,k+1). Verified to map basic slots into basic slots.
    const Mat& differential(int w, int k) const;
    /// Componentwise homotopy operator, (w,k) -> (w,k-1) for k >= 1.
    const Mat& homotopy(int w, int k) const;
    /// Evaluation at the origin on (w,0): identity at w = 0, zero above.
    Mat evaluation_at_origin(int w) const;

    std::map<int, std::map<int, long>> basic_dims() const;
    std::vector<long> cohomology(int w) const;

    /// Exact matrix identities dK + Kd = id (k >= 1) and Kd = id - eval (k=0)
    /// restricted to the basic slots at weight w.
    bool homotopy_identity_holds(int w) const;
    /// The homotopy operator maps basic slots into basic slots (the
    /// homothety commutes with the action).
    bool homotopy_preserves_basics(int w) const;

    /// Test hook: corrupts one induced differential entry.
    void inject_fault();

private:
    ComponentSystem sys_;
    int cutoff_;
    int kmax_;
    std::map<SlotKey, FamilySlot> fslots_;
    std::map<SlotKey, Mat> basic_;
    std::map<SlotKey, Mat> d_;
    std::map<SlotKey, Mat> k_;
};

/// The germ of Brylinski's sheaf at the origin orbit of a linear action:
/// constants on each connected fixed space, invariant under conjugation,
/// i.e. class functions on the group.
struct BrylinskiGerm {
    explicit BrylinskiGerm(const FiniteGroupAction& g) : dimension(g.class_count()) {}
    int dimension;
};

/// Checks that the basic complex of a linear finite group action resolves
/// the Brylinski germ: H^0 at weight 0 equals the number of conjugacy
/// classes, H^0 vanishes at positive weights, H^k vanishes for k >= 1, and
/// independently that the family homotopy contracts the complex.
Report resolution_check(const FiniteGroupAction& g, int cutoff, bool inject_fault = false);

/// Slotwise equality of basic dimensions between G on G x_H V (disjoint-copy
/// slice model) and H on V.
Report morita_check(const FiniteGroupAction& g, const std::vector<int>& subgroup_elements,
                    const std::vector<Mat>& rho, int cutoff);

} // namespace iforms
