#include "iforms/slots.hpp"

#include <algorithm>

namespace iforms {

long slot_dim(int n, int w, int k) {
    if (k < 0 || k > n || w < k) return 0;
    return binomial(n, k) * count_monomials(n, static_cast<unsigned>(w - k));
}

SlotBasis::SlotBasis(int n, int w, int k) : n_(n), w_(w), k_(k) {
    if (k < 0 || k > n || w < k) return;
    const auto subsets = index_subsets(n, k);
    const auto monos = monomials_of_degree(n, static_cast<unsigned>(w - k));
    elems_.reserve(subsets.size() * monos.size());
    for (const auto& idx : subsets) {
        for (const auto& e : monos) {
            index_.emplace(std::make_pair(idx, e), static_cast<long>(elems_.size()));
            elems_.emplace_back(idx, e);
        }
    }
}

Form SlotBasis::element_form(long i) const {
    const auto& [idx, e] = element(i);
    Form f(n_, k_);
    f.add_component(idx, Poly::monomial(n_, e, Scalar(1)));
    return f;
}

Vec SlotBasis::coordinates(const Form& f) const {
    if (f.ambient_dim() != n_ || f.degree() != k_)
        throw structural_error("form does not match slot shape");
    Vec v(dim());
    v.setConstant(Scalar(0));
    for (const auto& [idx, p] : f.components()) {
        for (const auto& [e, c] : p.terms()) {
            auto it = index_.find(std::make_pair(idx, e));
            if (it == index_.end())
                throw structural_error("form term outside slot weight");
            v(it->second) = c;
        }
    }
    return v;
}

Form SlotBasis::form(const Vec& coords) const {
    if (coords.size() != dim()) throw structural_error("coordinate vector size mismatch");
    Form f(n_, k_);
    for (long i = 0; i < coords.size(); ++i) {
        if (coords(i).is_zero()) continue;
        const auto& [idx, e] = elems_[static_cast<size_t>(i)];
        f.add_component(idx, Poly::monomial(n_, e, coords(i)));
    }
    return f;
}

Mat SlotBasis::operator_matrix(const SlotBasis& target,
                               const std::function<Form(const Form&)>& op) const {
    Mat m = zero_matrix(target.dim(), dim());
    for (long j = 0; j < dim(); ++j) {
        const Form img = op(element_form(j));
        m.col(j) = target.coordinates(img);
    }
    return m;
}

const Mat* GradedSubspace::slot(SlotKey key) const {
    auto it = slots_.find(key);
    return it == slots_.end() ? nullptr : &it->second;
}

long GradedSubspace::dim(SlotKey key) const {
    const Mat* m = slot(key);
    return m ? m->rows() : 0;
}

void GradedSubspace::set(SlotKey key, Mat basis_rows) {
    Mat r = rref(std::move(basis_rows));
    if (r.rows() == 0) {
        slots_.erase(key);
    } else {
        slots_[key] = std::move(r);
    }
}

GradedSubspace span_from_forms(int n, const std::vector<Form>& forms) {
    std::map<SlotKey, std::vector<Vec>> rows;
    for (const Form& f : forms) {
        if (f.ambient_dim() != n) throw structural_error("forms on different ambient spaces");
        for (const auto& [w, piece] : f.weight_components()) {
            const SlotKey key{w, piece.degree()};
            SlotBasis basis(n, key.w, key.k);
            rows[key].push_back(basis.coordinates(piece));
        }
    }
    GradedSubspace out;
    for (const auto& [key, vecs] : rows) {
        Mat m = zero_matrix(static_cast<long>(vecs.size()), vecs.front().size());
        for (size_t i = 0; i < vecs.size(); ++i) m.row(static_cast<long>(i)) = vecs[i].transpose();
        out.set(key, std::move(m));
    }
    return out;
}

GradedSubspace sum(const GradedSubspace& a, const GradedSubspace& b) {
    GradedSubspace out;
    for (const auto& [key, m] : a.slots()) {
        const Mat* mb = b.slot(key);
        out.set(key, mb ? sum_spaces(m, *mb) : m);
    }
    for (const auto& [key, m] : b.slots()) {
        if (!a.slot(key)) out.set(key, m);
    }
    return out;
}

GradedSubspace intersect(const GradedSubspace& a, const GradedSubspace& b) {
    GradedSubspace out;
    for (const auto& [key, m] : a.slots()) {
        const Mat* mb = b.slot(key);
        if (!mb) continue;
        out.set(key, intersect_spaces(m, *mb));
    }
    return out;
}

long quotient_dim(int n, const GradedSubspace& denom, int w, int k) {
    const long full = slot_dim(n, w, k);
    const long r = denom.dim({w, k});
    if (r > full) throw structural_error("denominator exceeds slot dimension");
    return full - r;
}

const Mat* GradedMap::block(SlotKey src) const {
    auto it = blocks_.find(src);
    return it == blocks_.end() ? nullptr : &it->second;
}

GradedMap graded_operator(int n, int w, int kmax, int dw, int dk,
                          const std::function<Form(const Form&)>& op) {
    GradedMap out(dw, dk);
    for (int k = 0; k <= kmax; ++k) {
        const SlotBasis src(n, w, k);
        if (src.dim() == 0) continue;
        const SlotBasis dst(n, w + dw, k + dk);
        out.set({w, k}, src.operator_matrix(dst, op));
    }
    return out;
}

std::vector<long> cohomology_dims(const GradedSubspace& sub, const GradedMap& d, int w, int kmax) {
    if (d.dk() != 1 || d.dw() != 0)
        throw structural_error("cohomology needs a degree-(0,+1) differential");
    std::vector<long> h(static_cast<size_t>(kmax) + 1, 0);
    std::vector<long> image_rank(static_cast<size_t>(kmax) + 2, 0);
    std::vector<long> kernel_dim(static_cast<size_t>(kmax) + 1, 0);
    for (int k = 0; k <= kmax; ++k) {
        const SlotKey key{w, k};
        const Mat* basis = sub.slot(key);
        const long r = basis ? basis->rows() : 0;
        if (r == 0) { kernel_dim[static_cast<size_t>(k)] = 0; continue; }
        const Mat* dk = d.block(key);
        if (!dk || dk->rows() == 0) {
            // zero target: everything is a cocycle
            kernel_dim[static_cast<size_t>(k)] = r;
            continue;
        }
        const Mat image = (*basis) * dk->transpose(); // rows = images of basis rows
        const Mat* next = sub.slot({w, k + 1});
        Mat next_basis = next ? *next : zero_matrix(0, dk->rows());
        if (!rows_in_row_space(image, next_basis))
            throw consistency_error("differential does not preserve the subcomplex at (w=" +
                                    std::to_string(w) + ", k=" + std::to_string(k) + ")");
        const long ir = rank(image);
        image_rank[static_cast<size_t>(k) + 1] = ir;
        kernel_dim[static_cast<size_t>(k)] = r - ir;
    }
    for (int k = 0; k <= kmax; ++k)
        h[static_cast<size_t>(k)] = kernel_dim[static_cast<size_t>(k)] - image_rank[static_cast<size_t>(k)];
    return h;
}

QuotientSlot QuotientSlot::make(long ambient, Mat denominator_rows) {
    QuotientSlot q;
    q.ambient = ambient;
    std::vector<int> pivots;
    q.denom = denominator_rows.rows() ? rref(std::move(denominator_rows), pivots)
                                      : zero_matrix(0, ambient);
    q.pivots = pivots;
    std::vector<bool> is_pivot(static_cast<size_t>(ambient), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    for (long c = 0; c < ambient; ++c)
        if (!is_pivot[static_cast<size_t>(c)]) q.comp.push_back(c);
    return q;
}

Vec QuotientSlot::reduce(const Vec& full) const {
    if (full.size() != ambient) throw structural_error("vector size mismatch in quotient");
    Vec v = full;
    for (size_t i = 0; i < pivots.size(); ++i) {
        const long c = pivots[i];
        if (v(c).is_zero()) continue;
        const Scalar f = v(c);
        for (long j = 0; j < ambient; ++j) {
            if (!denom(static_cast<long>(i), j).is_zero()) v(j) -= f * denom(static_cast<long>(i), j);
        }
    }
    Vec q(qdim());
    for (long t = 0; t < qdim(); ++t) q(t) = v(comp[static_cast<size_t>(t)]);
    return q;
}

Vec QuotientSlot::lift(const Vec& q) const {
    if (q.size() != qdim()) throw structural_error("quotient coordinate size mismatch");
    Vec v(ambient);
    v.setConstant(Scalar(0));
    for (long t = 0; t < qdim(); ++t) v(comp[static_cast<size_t>(t)]) = q(t);
    return v;
}

Mat QuotientSlot::induced(const Mat& op, const QuotientSlot& target) const {
    if (op.cols() != ambient || op.rows() != target.ambient)
        throw structural_error("operator shape mismatch in quotient");
    Mat m = zero_matrix(target.qdim(), qdim());
    for (long j = 0; j < qdim(); ++j) {
        Vec unit(qdim());
        unit.setConstant(Scalar(0));
        unit(j) = Scalar(1);
        m.col(j) = target.reduce(op * lift(unit));
    }
    return m;
}

} // namespace iforms
