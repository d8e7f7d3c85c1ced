#include "iforms/group_action.hpp"

#include <algorithm>

namespace iforms {

namespace {

bool mats_equal(const Mat& a, const Mat& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

} // namespace

int FiniteGroupAction::find(const Mat& g) const {
    for (size_t i = 0; i < elems_.size(); ++i)
        if (mats_equal(elems_[i], g)) return static_cast<int>(i);
    return -1;
}

FiniteGroupAction FiniteGroupAction::close(const std::vector<Mat>& generators, int bound) {
    if (generators.empty()) throw structural_error("group needs at least one generator");
    const int n = static_cast<int>(generators.front().rows());
    for (const Mat& g : generators) {
        if (g.rows() != n || g.cols() != n)
            throw structural_error("generators must be square matrices of equal size");
        if (determinant(g).is_zero()) throw structural_error("generator is not invertible");
    }
    FiniteGroupAction out;
    out.n_ = n;
    out.elems_.push_back(identity(n));
    for (size_t head = 0; head < out.elems_.size(); ++head) {
        for (const Mat& g : generators) {
            const Mat prod = g * out.elems_[head];
            if (out.find(prod) < 0) {
                if (static_cast<int>(out.elems_.size()) >= bound)
                    throw structural_error("group is not finite within the configured bound");
                out.elems_.push_back(prod);
            }
        }
    }
    out.build_tables();
    return out;
}

FiniteGroupAction FiniteGroupAction::from_elements(std::vector<Mat> elements) {
    if (elements.empty()) throw structural_error("empty element list");
    const int n = static_cast<int>(elements.front().rows());
    FiniteGroupAction out;
    out.n_ = n;
    long id_at = -1;
    const Mat id = identity(n);
    for (size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].rows() != n || elements[i].cols() != n)
            throw structural_error("elements must be square matrices of equal size");
        if (mats_equal(elements[i], id)) id_at = static_cast<long>(i);
    }
    if (id_at < 0) throw structural_error("identity element missing");
    std::swap(elements[0], elements[static_cast<size_t>(id_at)]);
    out.elems_ = std::move(elements);
    for (size_t i = 0; i < out.elems_.size(); ++i)
        for (size_t j = i + 1; j < out.elems_.size(); ++j)
            if (mats_equal(out.elems_[i], out.elems_[j]))
                throw structural_error("duplicate matrices: the action is not faithful");
    out.build_tables();
    return out;
}

void FiniteGroupAction::build_tables() {
    const int m = size();
    table_.assign(static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(m), -1));
    inv_.assign(static_cast<size_t>(m), -1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const int k = find(elems_[static_cast<size_t>(i)] * elems_[static_cast<size_t>(j)]);
            if (k < 0) throw structural_error("element list is not closed under products");
            table_[static_cast<size_t>(i)][static_cast<size_t>(j)] = k;
            if (k == 0) inv_[static_cast<size_t>(i)] = j;
        }
    }
    for (int i = 0; i < m; ++i)
        if (inv_[static_cast<size_t>(i)] < 0) throw structural_error("element without inverse");

    std::vector<bool> seen(static_cast<size_t>(m), false);
    for (int i = 0; i < m; ++i) {
        if (seen[static_cast<size_t>(i)]) continue;
        std::vector<int> cls;
        for (int h = 0; h < m; ++h) {
            const int c = mul(mul(h, i), inverse(h));
            if (!seen[static_cast<size_t>(c)]) {
                seen[static_cast<size_t>(c)] = true;
                cls.push_back(c);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes_.push_back(std::move(cls));
    }
    centralizers_.assign(static_cast<size_t>(m), {});
    for (int i = 0; i < m; ++i)
        for (int h = 0; h < m; ++h)
            if (mul(h, i) == mul(i, h)) centralizers_[static_cast<size_t>(i)].push_back(h);
}

std::vector<int> FiniteGroupAction::subgroup_closure(const std::vector<int>& generator_indices) const {
    std::vector<int> elems = {0};
    auto contains = [&](int x) { return std::find(elems.begin(), elems.end(), x) != elems.end(); };
    for (int gi : generator_indices)
        if (gi < 0 || gi >= size()) throw structural_error("subgroup generator index out of range");
    for (size_t head = 0; head < elems.size(); ++head) {
        for (int gi : generator_indices) {
            const int prod = mul(gi, elems[head]);
            if (!contains(prod)) elems.push_back(prod);
        }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

Mat fixed_subspace(const Mat& g) {
    if (g.rows() != g.cols()) throw structural_error("fixed subspace of a non-square matrix");
    Mat m = g;
    for (long i = 0; i < m.rows(); ++i) m(i, i) -= Scalar(1);
    return kernel(m);
}

LoopSpaceModel::LoopSpaceModel(const FiniteGroupAction& g) {
    n_ = g.dim();
    bases_.reserve(static_cast<size_t>(g.size()));
    for (int i = 0; i < g.size(); ++i) bases_.push_back(fixed_subspace(g.element(i)));
    // g v = v for each basis vector, exactly.
    for (int i = 0; i < g.size(); ++i) {
        const Mat check = bases_[static_cast<size_t>(i)] * g.element(i).transpose();
        if (!(check == bases_[static_cast<size_t>(i)]))
            throw consistency_error("fixed-space basis is not pointwise fixed");
    }
    // h carries M^g onto M^{hgh^-1}, exactly.
    for (int gi = 0; gi < g.size(); ++gi) {
        for (int hi = 0; hi < g.size(); ++hi) {
            const int ci = g.mul(g.mul(hi, gi), g.inverse(hi));
            const Mat mapped = rref(bases_[static_cast<size_t>(gi)] * g.element(hi).transpose());
            if (!mats_equal(mapped, bases_[static_cast<size_t>(ci)]))
                throw consistency_error("fixed spaces are not conjugation-equivariant");
        }
    }
}

SubspaceArrangement LoopSpaceModel::arrangement() const {
    return SubspaceArrangement(n_, bases_);
}

LoopSpaceModel LoopSpaceModel::with_recombined_basis(int i, const Mat& invertible) const {
    const Mat& b = bases_[static_cast<size_t>(i)];
    if (invertible.rows() != b.rows() || invertible.cols() != b.rows())
        throw structural_error("recombination matrix shape mismatch");
    if (determinant(invertible).is_zero()) throw structural_error("recombination must be invertible");
    LoopSpaceModel out;
    out.n_ = n_;
    out.bases_ = bases_;
    out.bases_[static_cast<size_t>(i)] = invertible * b;
    return out;
}

Mat transport_map(const FiniteGroupAction& g, const LoopSpaceModel& loop, int gi, int hi) {
    const int ci = g.mul(g.mul(hi, gi), g.inverse(hi));
    const Mat src_incl = loop.basis(gi).transpose();                  // n x d
    const Mat dst_incl = loop.basis(ci).transpose();                  // n x d
    if (src_incl.cols() == 0) return zero_matrix(dst_incl.cols(), 0); // empty map
    return solve_full_column_rank(dst_incl, g.element(hi) * src_incl);
}

std::pair<std::vector<int>, std::vector<Mat>> extend_subgroup_action(
    const FiniteGroupAction& g, const std::vector<int>& generator_indices,
    const std::vector<Mat>& generator_images) {
    if (generator_indices.size() != generator_images.size())
        throw structural_error("subgroup generators and images differ in count");
    const int v = generator_images.empty() ? 0 : static_cast<int>(generator_images.front().rows());
    for (const Mat& m : generator_images) {
        if (m.rows() != v || m.cols() != v)
            throw structural_error("subgroup action matrices must be square of equal size");
        if (determinant(m).is_zero()) throw structural_error("subgroup action matrix is singular");
    }
    std::vector<int> elems = {0};
    std::vector<Mat> images = {identity(v)};
    auto find_elem = [&](int x) -> long {
        for (size_t i = 0; i < elems.size(); ++i)
            if (elems[i] == x) return static_cast<long>(i);
        return -1;
    };
    for (size_t head = 0; head < elems.size(); ++head) {
        for (size_t gi = 0; gi < generator_indices.size(); ++gi) {
            const int prod = g.mul(generator_indices[gi], elems[head]);
            const Mat img = generator_images[gi] * images[head];
            const long at = find_elem(prod);
            if (at < 0) {
                elems.push_back(prod);
                images.push_back(img);
            } else if (!mats_equal(images[static_cast<size_t>(at)], img)) {
                throw structural_error("subgroup action is not a homomorphism");
            }
        }
    }
    // sort by element index, carrying images along
    std::vector<size_t> order(elems.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return elems[a] < elems[b]; });
    std::vector<int> selems;
    std::vector<Mat> simages;
    for (size_t i : order) {
        selems.push_back(elems[i]);
        simages.push_back(images[i]);
    }
    return {std::move(selems), std::move(simages)};
}

InducedAction induce_action(const FiniteGroupAction& g, const std::vector<int>& subgroup_elements,
                            const std::vector<Mat>& rho) {
    if (subgroup_elements.size() != rho.size())
        throw structural_error("subgroup elements and action matrices differ in count");
    if (subgroup_elements.empty()) throw structural_error("empty subgroup");
    // Validate: closed subgroup containing the identity.
    auto h_index = [&](int x) -> long {
        for (size_t i = 0; i < subgroup_elements.size(); ++i)
            if (subgroup_elements[i] == x) return static_cast<long>(i);
        return -1;
    };
    if (h_index(0) < 0) throw structural_error("subgroup must contain the identity");
    for (int a : subgroup_elements)
        for (int b : subgroup_elements)
            if (h_index(g.mul(a, b)) < 0) throw structural_error("subgroup is not closed");
    for (size_t a = 0; a < subgroup_elements.size(); ++a)
        for (size_t b = 0; b < subgroup_elements.size(); ++b) {
            const long ab = h_index(g.mul(subgroup_elements[a], subgroup_elements[b]));
            if (!mats_equal(rho[static_cast<size_t>(ab)], rho[a] * rho[b]))
                throw structural_error("subgroup action is not a homomorphism");
        }

    const int v = static_cast<int>(rho.front().rows());
    InducedAction out;
    out.block_dim = v;
    out.h_elements = subgroup_elements;
    out.rho = rho;

    // Left cosets, represented by their least element index.
    out.coset_of.assign(static_cast<size_t>(g.size()), -1);
    for (int i = 0; i < g.size(); ++i) {
        if (out.coset_of[static_cast<size_t>(i)] >= 0) continue;
        const int c = static_cast<int>(out.coset_rep.size());
        out.coset_rep.push_back(i);
        for (int h : subgroup_elements) out.coset_of[static_cast<size_t>(g.mul(i, h))] = c;
    }
    const int ncosets = static_cast<int>(out.coset_rep.size());

    // Block matrix of each group element.
    std::vector<Mat> blocks;
    blocks.reserve(static_cast<size_t>(g.size()));
    for (int gi = 0; gi < g.size(); ++gi) {
        Mat m = zero_matrix(static_cast<long>(ncosets) * v, static_cast<long>(ncosets) * v);
        for (int i = 0; i < ncosets; ++i) {
            const int gri = g.mul(gi, out.coset_rep[static_cast<size_t>(i)]);
            const int j = out.coset_of[static_cast<size_t>(gri)];
            const int h = g.mul(g.inverse(out.coset_rep[static_cast<size_t>(j)]), gri);
            const long hidx = h_index(h);
            if (hidx < 0) throw consistency_error("coset factorization escaped the subgroup");
            m.block(static_cast<long>(j) * v, static_cast<long>(i) * v, v, v) =
                rho[static_cast<size_t>(hidx)];
        }
        blocks.push_back(std::move(m));
    }
    out.group = FiniteGroupAction::from_elements(std::move(blocks));
    if (out.group.size() != g.size())
        throw consistency_error("induced action lost elements");
    return out;
}

} // namespace iforms
