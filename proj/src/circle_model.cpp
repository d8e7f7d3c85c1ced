#include "iforms/circle_model.hpp"

namespace iforms {

void CircleWeights::validate() const {
    if (weights.empty()) throw structural_error("circle action needs at least one weight");
    for (long w : weights)
        if (w == 0) throw structural_error("circle weights must be nonzero");
    if (fixed_dims < 0) throw structural_error("fixed_dims must be >= 0");
}

Mat circle_generator(const CircleWeights& cw) {
    cw.validate();
    Mat a = zero_matrix(cw.action_dim(), cw.action_dim());
    for (int i = 0; i < cw.pairs(); ++i) {
        const long w = cw.weights[static_cast<size_t>(i)];
        a(2 * i, 2 * i + 1) = Scalar(-w);
        a(2 * i + 1, 2 * i) = Scalar(w);
    }
    return a;
}

LinearVectorField ambient_generator(const CircleWeights& cw) {
    const Mat inner = circle_generator(cw);
    Mat a = zero_matrix(cw.ambient_dim(), cw.ambient_dim());
    a.bottomRightCorner(cw.action_dim(), cw.action_dim()) = inner;
    return LinearVectorField(a);
}

SubspaceArrangement circle_arrangement(const CircleWeights& cw) {
    cw.validate();
    const int n = cw.ambient_dim();
    // angle axis times the fixed directions
    Mat axis = zero_matrix(1 + cw.fixed_dims, n);
    axis(0, 0) = Scalar(1);
    for (int j = 0; j < cw.fixed_dims; ++j) axis(1 + j, 1 + 2 * cw.pairs() + j) = Scalar(1);
    // {angle = 0} times the action space
    Mat fiber = zero_matrix(cw.action_dim(), n);
    for (int j = 0; j < cw.action_dim(); ++j) fiber(j, 1 + j) = Scalar(1);
    return SubspaceArrangement(n, {axis, fiber});
}

QuotientComplex circle_relative_complex(const CircleWeights& cw, int cutoff) {
    cw.validate();
    const int n = cw.ambient_dim();
    // Relative denominator: dtheta ^ Omega^{k-1}, slotwise.
    auto dtheta_part = [n](int w, int k) {
        std::vector<Form> out;
        if (k < 1 || w < k) return out;
        Form dtheta(n, 1);
        dtheta.add_component({0}, Poly::constant(n, Scalar(1)));
        const SlotBasis lower(n, w - 1, k - 1);
        for (long i = 0; i < lower.dim(); ++i) {
            const Form gen = wedge(dtheta, lower.element_form(i));
            if (!gen.is_zero()) out.push_back(gen);
        }
        return out;
    };
    return make_quotient_complex(circle_arrangement(cw), cutoff, dtheta_part);
}

CircleModel::CircleModel(const CircleWeights& cw, int cutoff) : cw_(cw), cutoff_(cutoff) {
    cw_.validate();
    const int n = cw_.ambient_dim();
    rel_ = circle_relative_complex(cw_, cutoff_);

    const LinearVectorField xi = ambient_generator(cw_);
    std::vector<bool> fiber_mask(static_cast<size_t>(n), true);
    fiber_mask[0] = false; // the homothety scales the action space only

    // Induced operators on quotient coordinates, with exact checks that each
    // ambient operator preserves the denominator (so the induced matrix is
    // well defined; these are theorem checks, not defensive code).
    auto induced_operator = [&](int w, int k, int dk,
                                const std::function<Form(const Form&)>& op) -> Mat {
        const QuotientSlot& s = rel_.slot({w, k});
        const SlotBasis sb(n, w, k);
        const bool has_target = k + dk >= 0 && k + dk <= n;
        const QuotientSlot* t = has_target ? &rel_.slot({w, k + dk}) : nullptr;
        const SlotBasis tb(n, w, has_target ? k + dk : 0);
        for (long i = 0; i < s.denom.rows(); ++i) {
            const Form img = op(sb.form(s.denom.row(i).transpose()));
            if (!has_target) {
                if (!img.is_zero())
                    throw consistency_error("operator escaped the computed range");
                continue;
            }
            if (!in_row_space(tb.coordinates(img), t->denom))
                throw consistency_error("operator does not descend to the relative quotient at (w=" +
                                        std::to_string(w) + ", k=" + std::to_string(k) + ")");
        }
        Mat m = zero_matrix(has_target ? t->qdim() : 0, s.qdim());
        for (long j = 0; j < s.qdim(); ++j) {
            Vec unit(s.qdim());
            unit.setConstant(Scalar(0));
            unit(j) = Scalar(1);
            const Form img = op(sb.form(s.lift(unit)));
            if (has_target) m.col(j) = t->reduce(tb.coordinates(img));
        }
        return m;
    };

    for (int w = 0; w <= cutoff_; ++w) {
        for (int k = 0; k <= n; ++k) {
            const QuotientSlot& s = rel_.slot({w, k});
            std::vector<Mat> constraint_blocks;
            if (k >= 1) {
                Mat iota = induced_operator(w, k, -1, [&](const Form& f) { return contract(xi, f); });
                contraction_.emplace(SlotKey{w, k}, iota);
                constraint_blocks.push_back(std::move(iota));
            }
            Mat lie = induced_operator(w, k, 0, [&](const Form& f) { return lie_derivative(xi, f); });
            lie_.emplace(SlotKey{w, k}, lie);
            constraint_blocks.push_back(std::move(lie));
            long rows = 0;
            for (const Mat& b : constraint_blocks) rows += b.rows();
            Mat stacked = zero_matrix(rows, s.qdim());
            long at = 0;
            for (const Mat& b : constraint_blocks) {
                stacked.middleRows(at, b.rows()) = b;
                at += b.rows();
            }
            basic_.emplace(SlotKey{w, k}, s.qdim() == 0 ? zero_matrix(0, 0) : kernel(stacked));
            if (k >= 1) {
                homotopy_.emplace(SlotKey{w, k}, induced_operator(w, k, -1, [&](const Form& f) {
                                      return fiber_homotopy(f, fiber_mask);
                                  }));
            }
        }
        eval_.emplace(w, induced_operator(w, 0, 0, [&](const Form& f) {
                          return fiber_restrict_to_origin(f, fiber_mask);
                      }));
    }
}

std::map<int, std::map<int, long>> CircleModel::basic_dims() const {
    std::map<int, std::map<int, long>> out;
    for (const auto& [key, m] : basic_) out[key.w][key.k] = m.rows();
    return out;
}

long CircleModel::basic_dim(int w, int k) const { return basic(w, k).rows(); }

const Mat& CircleModel::basic(int w, int k) const {
    auto it = basic_.find({w, k});
    if (it == basic_.end()) throw structural_error("basic slot out of computed range");
    return it->second;
}

const Mat& CircleModel::induced_homotopy(int w, int k) const {
    auto it = homotopy_.find({w, k});
    if (it == homotopy_.end()) throw structural_error("homotopy out of computed range");
    return it->second;
}

const Mat& CircleModel::induced_fiber_eval(int w) const {
    auto it = eval_.find(w);
    if (it == eval_.end()) throw structural_error("evaluation out of computed range");
    return it->second;
}

const Mat& CircleModel::induced_contraction(int w, int k) const {
    auto it = contraction_.find({w, k});
    if (it == contraction_.end()) throw structural_error("contraction out of computed range");
    return it->second;
}

const Mat& CircleModel::induced_lie(int w, int k) const {
    auto it = lie_.find({w, k});
    if (it == lie_.end()) throw structural_error("Lie derivative out of computed range");
    return it->second;
}

std::vector<long> CircleModel::cohomology(int w) const {
    const int n = cw_.ambient_dim();
    GradedSubspace sub;
    GradedMap d(0, 1);
    for (int k = 0; k <= n; ++k) {
        sub.set({w, k}, basic(w, k));
        d.set({w, k}, rel_.induced_d({w, k}));
    }
    return cohomology_dims(sub, d, w, n);
}

bool CircleModel::homotopy_identity_holds(int w) const {
    const int n = cw_.ambient_dim();
    for (int k = 0; k <= n; ++k) {
        const long q = rel_.qdim({w, k});
        if (q == 0) continue;
        if (k == 0) {
            const Mat kd = induced_homotopy(w, 1) * rel_.induced_d({w, 0});
            const Mat rhs = identity(q) - induced_fiber_eval(w);
            if (!(kd == rhs)) return false;
        } else {
            Mat sum = rel_.induced_d({w, k - 1}) * induced_homotopy(w, k);
            if (k + 1 <= n) sum += induced_homotopy(w, k + 1) * rel_.induced_d({w, k});
            if (!(sum == identity(q))) return false;
        }
    }
    return true;
}

Report CircleModel::cohomology_report() const {
    Report report;
    Json rel = Json::object(), bas = Json::object(), coh = Json::object();
    for (const auto& [w, row] : relative_dims()) {
        Json jrow = Json::object();
        for (const auto& [k, dim] : row) jrow[std::to_string(k)] = dim;
        rel[std::to_string(w)] = jrow;
    }
    for (const auto& [w, row] : basic_dims()) {
        Json jrow = Json::object();
        for (const auto& [k, dim] : row) jrow[std::to_string(k)] = dim;
        bas[std::to_string(w)] = jrow;
    }
    report.tables["relative_dims"] = rel;
    report.tables["basic_dims"] = bas;

    const int n = cw_.ambient_dim();
    for (int w = 0; w <= cutoff_; ++w) {
        std::vector<long> h;
        try {
            h = cohomology(w);
        } catch (const consistency_error&) {
            report.check_true("basic_complex_closed", "w=" + std::to_string(w), false);
            continue;
        }
        Json jrow = Json::array();
        for (long v : h) jrow.push_back(v);
        coh[std::to_string(w)] = jrow;
        report.check("h0_is_one", "w=" + std::to_string(w), 1, h[0]);
        for (int k = 1; k <= n; ++k)
            report.check("hk_vanishes", "(w=" + std::to_string(w) + ",k=" + std::to_string(k) + ")",
                         0, h[static_cast<size_t>(k)]);
        report.check_true("homotopy_identity", "w=" + std::to_string(w), homotopy_identity_holds(w));
        bool k_basic = true;
        for (int k = 1; k <= n && k_basic; ++k) {
            const Mat& b = basic(w, k);
            if (b.rows() == 0) continue;
            const Mat image = b * induced_homotopy(w, k).transpose();
            if (!rows_in_row_space(image, basic(w, k - 1))) k_basic = false;
        }
        report.check_true("homotopy_preserves_basics", "w=" + std::to_string(w), k_basic);
    }
    report.tables["cohomology"] = coh;
    return report;
}

} // namespace iforms
