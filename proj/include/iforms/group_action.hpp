#pragma once

#include <optional>

#include "iforms/arrangement.hpp"

namespace iforms {

/// Finite group of exact invertible matrices, identity first, with the
/// multiplication table, conjugacy classes and centralizers derived from the
/// matrix action. Elements are compared by exact matrix equality.
class FiniteGroupAction {
public:
    /// Breadth-first closure of the generators; deterministic element order
    /// (discovery order). Throws when the bound is exceeded or a generator is
    /// singular.
    static FiniteGroupAction close(const std::vector<Mat>& generators, int bound = 512);

    /// Builds the derived structure from a complete element list (identity
    /// may appear anywhere; it is moved to the front). Throws when the list
    /// is not closed or contains duplicates.
    static FiniteGroupAction from_elements(std::vector<Mat> elements);

    int dim() const { return n_; }
    int size() const { return static_cast<int>(elems_.size()); }
    const Mat& element(int i) const { return elems_[static_cast<size_t>(i)]; }
    const std::vector<Mat>& elements() const { return elems_; }

    int mul(int i, int j) const { return table_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    int inverse(int i) const { return inv_[static_cast<size_t>(i)]; }
    int find(const Mat& g) const;

    const std::vector<std::vector<int>>& conjugacy_classes() const { return classes_; }
    int class_count() const { return static_cast<int>(classes_.size()); }
    const std::vector<int>& centralizer(int i) const { return centralizers_[static_cast<size_t>(i)]; }

    /// Indices forming the subgroup generated by the given element indices.
    std::vector<int> subgroup_closure(const std::vector<int>& generator_indices) const;

private:
    int n_ = 0;
    std::vector<Mat> elems_;
    std::vector<std::vector<int>> table_;
    std::vector<int> inv_;
    std::vector<std::vector<int>> classes_;
    std::vector<std::vector<int>> centralizers_;

    void build_tables();
};

/// rref row basis of ker(g - I).
Mat fixed_subspace(const Mat& g);

/// Fixed subspaces of all elements plus the arrangement they form. Checks
/// exactly that each basis is pointwise fixed and that group elements carry
/// M^g onto M^{hgh^-1}.
class LoopSpaceModel {
public:
    explicit LoopSpaceModel(const FiniteGroupAction& g);

    const Mat& basis(int i) const { return bases_[static_cast<size_t>(i)]; }
    int fixed_dim(int i) const { return static_cast<int>(bases_[static_cast<size_t>(i)].rows()); }
    SubspaceArrangement arrangement() const;
    int ambient_dim() const { return n_; }

    /// Test hook: replaces the basis of one fixed space by an invertible
    /// recombination of itself (same row space, different coordinates).
    LoopSpaceModel with_recombined_basis(int i, const Mat& invertible) const;

private:
    LoopSpaceModel() = default;
    int n_ = 0;
    std::vector<Mat> bases_;
};

/// Matrix of h restricted to M^g -> M^{hgh^-1} in the model's bases.
Mat transport_map(const FiniteGroupAction& g, const LoopSpaceModel& loop, int gi, int hi);

/// The induced action of G on the block space modeling G x_H V: cosets of H
/// permute, the H-part of the coset factorization acts inside blocks.
struct InducedAction {
    FiniteGroupAction group;        // block matrices, order |G|
    std::vector<int> coset_rep;     // coset -> least G element index
    std::vector<int> coset_of;      // G element index -> coset
    int block_dim = 0;              // dim V
    std::vector<int> h_elements;    // subgroup element indices in G
    std::vector<Mat> rho;           // V-action, parallel to h_elements
};

/// subgroup_elements must be closed in G; rho maps them to matrices on V and
/// must be a homomorphism (validated exhaustively).
InducedAction induce_action(const FiniteGroupAction& g, const std::vector<int>& subgroup_elements,
                            const std::vector<Mat>& rho);

/// Extends a generator assignment to the full subgroup by words; validates
/// consistency. Returns (subgroup element indices, matrices).
std::pair<std::vector<int>, std::vector<Mat>> extend_subgroup_action(
    const FiniteGroupAction& g, const std::vector<int>& generator_indices,
    const std::vector<Mat>& generator_images);

} // namespace iforms
