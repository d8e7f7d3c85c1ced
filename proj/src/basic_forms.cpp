#include "iforms/basic_forms.hpp"

#include <algorithm>

namespace iforms {

int ComponentSystem::max_dim() const {
    int m = 0;
    for (int d : dims) m = std::max(m, d);
    return m;
}

ComponentSystem group_component_system(const FiniteGroupAction& g, const LoopSpaceModel& loop,
                                       const std::vector<Mat>& lie_generators) {
    ComponentSystem sys;
    sys.dims.reserve(static_cast<size_t>(g.size()));
    for (int i = 0; i < g.size(); ++i) sys.dims.push_back(loop.fixed_dim(i));
    for (int gi = 0; gi < g.size(); ++gi) {
        for (int hi = 0; hi < g.size(); ++hi) {
            const int ci = g.mul(g.mul(hi, gi), g.inverse(hi));
            sys.symmetries.push_back({gi, ci, transport_map(g, loop, gi, hi)});
        }
    }
    sys.tangent_fields.assign(static_cast<size_t>(g.size()), {});
    for (const Mat& xi : lie_generators) {
        if (xi.rows() != g.dim() || xi.cols() != g.dim())
            throw structural_error("Lie generator must be a square ambient matrix");
        for (int i = 0; i < g.size(); ++i) {
            const Mat incl = loop.basis(i).transpose(); // n x d
            if (incl.cols() == 0) continue;
            const Mat image = xi * incl;
            // Only tangent fields restrict: xi(M^g) inside M^g.
            if (!rows_in_row_space(image.transpose(), loop.basis(i))) continue;
            sys.tangent_fields[static_cast<size_t>(i)].push_back(
                solve_full_column_rank(incl, image));
        }
    }
    return sys;
}

ComponentSystem slice_component_system(const FiniteGroupAction& g, const InducedAction& induced) {
    ComponentSystem sys;
    const int ncosets = static_cast<int>(induced.coset_rep.size());
    auto h_index = [&](int x) -> long {
        for (size_t i = 0; i < induced.h_elements.size(); ++i)
            if (induced.h_elements[i] == x) return static_cast<long>(i);
        return -1;
    };
    // Components: pairs (g, coset) with r_i^{-1} g r_i in H.
    std::map<std::pair<int, int>, int> comp_index;
    std::vector<Mat> bases; // rref bases of V^{h-part} in V
    for (int gi = 0; gi < g.size(); ++gi) {
        for (int i = 0; i < ncosets; ++i) {
            const int r = induced.coset_rep[static_cast<size_t>(i)];
            const int h = g.mul(g.mul(g.inverse(r), gi), r);
            const long hidx = h_index(h);
            if (hidx < 0) continue;
            comp_index[{gi, i}] = static_cast<int>(sys.dims.size());
            Mat fixed = fixed_subspace(induced.rho[static_cast<size_t>(hidx)]);
            sys.dims.push_back(static_cast<int>(fixed.rows()));
            bases.push_back(std::move(fixed));
        }
    }
    // Symmetries: h in G maps component (g, i) to (hgh^-1, j) where
    // j = coset(h r_i), acting by rho of the H-part h' = r_j^{-1} h r_i.
    for (const auto& [key, src] : comp_index) {
        const auto [gi, i] = key;
        for (int hi = 0; hi < g.size(); ++hi) {
            const int gci = g.mul(g.mul(hi, gi), g.inverse(hi));
            const int hri = g.mul(hi, induced.coset_rep[static_cast<size_t>(i)]);
            const int j = induced.coset_of[static_cast<size_t>(hri)];
            const int hpart = g.mul(g.inverse(induced.coset_rep[static_cast<size_t>(j)]), hri);
            const long hidx = h_index(hpart);
            if (hidx < 0) throw consistency_error("coset factorization escaped the subgroup");
            auto it = comp_index.find({gci, j});
            if (it == comp_index.end())
                throw consistency_error("symmetry target component missing in slice model");
            const int dst = it->second;
            const Mat src_incl = bases[static_cast<size_t>(src)].transpose();
            const Mat dst_incl = bases[static_cast<size_t>(dst)].transpose();
            Mat t = src_incl.cols() == 0
                        ? zero_matrix(dst_incl.cols(), 0)
                        : solve_full_column_rank(dst_incl,
                                                 induced.rho[static_cast<size_t>(hidx)] * src_incl);
            sys.symmetries.push_back({src, dst, std::move(t)});
        }
    }
    sys.tangent_fields.assign(sys.dims.size(), {});
    return sys;
}

FamilySlot::FamilySlot(const ComponentSystem& sys, int w, int k) {
    per_comp.reserve(sys.dims.size());
    for (int d : sys.dims) {
        per_comp.emplace_back(d, w, k);
        offsets.push_back(total);
        total += per_comp.back().dim();
    }
}

BasicComplex::BasicComplex(ComponentSystem sys, int cutoff)
    : sys_(std::move(sys)), cutoff_(cutoff), kmax_(sys_.max_dim()) {
    if (cutoff < 0) throw structural_error("cutoff must be >= 0");
    for (int w = 0; w <= cutoff_; ++w) {
        for (int k = 0; k <= kmax_; ++k) {
            fslots_.emplace(SlotKey{w, k}, FamilySlot(sys_, w, k));
        }
    }

    // Basic subspace per slot: kernel of the stacked invariance (and
    // horizontality) constraints.
    for (int w = 0; w <= cutoff_; ++w) {
        for (int k = 0; k <= kmax_; ++k) {
            const FamilySlot& fs = fslots_.at({w, k});
            std::vector<Mat> blocks;
            std::vector<long> rows_per_block;
            long total_rows = 0;
            auto add_block = [&](Mat m) {
                total_rows += m.rows();
                rows_per_block.push_back(m.rows());
                blocks.push_back(std::move(m));
            };
            std::vector<std::pair<Mat, std::pair<int, int>>> constraints;
            for (const auto& sym : sys_.symmetries) {
                const SlotBasis& sb = fs.per_comp[static_cast<size_t>(sym.src)];
                const SlotBasis& db = fs.per_comp[static_cast<size_t>(sym.dst)];
                if (sb.dim() == 0 && db.dim() == 0) continue;
                // omega_src - T^* omega_dst = 0
                Mat row = zero_matrix(sb.dim(), fs.total);
                for (long i = 0; i < sb.dim(); ++i)
                    row(i, fs.offsets[static_cast<size_t>(sym.src)] + i) = Scalar(1);
                if (db.dim() > 0 && sb.dim() > 0) {
                    const Mat p = db.operator_matrix(
                        sb, [&](const Form& f) { return pullback(sym.transport, f); });
                    row.block(0, fs.offsets[static_cast<size_t>(sym.dst)], sb.dim(), db.dim()) -= p;
                } else if (db.dim() > 0 && sb.dim() == 0) {
                    // source slot is zero: T^* omega_dst must vanish there,
                    // which is automatic since the source slot space is zero.
                }
                if (row.rows() > 0) add_block(std::move(row));
            }
            for (int c = 0; c < sys_.component_count(); ++c) {
                const SlotBasis& sb = fs.per_comp[static_cast<size_t>(c)];
                if (sb.dim() == 0) continue;
                for (const Mat& xi : sys_.tangent_fields[static_cast<size_t>(c)]) {
                    const LinearVectorField field(xi);
                    // horizontality i_xi = 0 (k >= 1) plus the infinitesimal
                    // invariance L_xi = 0 of the connected group; together
                    // they cut a subcomplex, separately they do not.
                    if (k >= 1) {
                        const SlotBasis tb(sys_.dims[static_cast<size_t>(c)], w, k - 1);
                        const Mat contraction =
                            sb.operator_matrix(tb, [&](const Form& f) { return contract(field, f); });
                        Mat row = zero_matrix(contraction.rows(), fs.total);
                        row.block(0, fs.offsets[static_cast<size_t>(c)], contraction.rows(),
                                  sb.dim()) = contraction;
                        add_block(std::move(row));
                    }
                    const Mat lie = sb.operator_matrix(
                        sb, [&](const Form& f) { return lie_derivative(field, f); });
                    Mat lrow = zero_matrix(lie.rows(), fs.total);
                    lrow.block(0, fs.offsets[static_cast<size_t>(c)], lie.rows(), sb.dim()) = lie;
                    add_block(std::move(lrow));
                }
            }
            Mat stacked = zero_matrix(total_rows, fs.total);
            long at = 0;
            for (size_t b = 0; b < blocks.size(); ++b) {
                stacked.middleRows(at, rows_per_block[b]) = blocks[b];
                at += rows_per_block[b];
            }
            basic_.emplace(SlotKey{w, k}, fs.total == 0 ? zero_matrix(0, 0) : kernel(stacked));
        }
    }

    // Componentwise differential and homotopy as block-diagonal matrices.
    for (int w = 0; w <= cutoff_; ++w) {
        for (int k = 0; k <= kmax_; ++k) {
            const FamilySlot& fs = fslots_.at({w, k});
            const FamilySlot* up = k + 1 <= kmax_ ? &fslots_.at({w, k + 1}) : nullptr;
            Mat dm = zero_matrix(up ? up->total : 0, fs.total);
            if (up) {
                for (int c = 0; c < sys_.component_count(); ++c) {
                    const SlotBasis& sb = fs.per_comp[static_cast<size_t>(c)];
                    const SlotBasis& tb = up->per_comp[static_cast<size_t>(c)];
                    if (sb.dim() == 0 || tb.dim() == 0) continue;
                    dm.block(up->offsets[static_cast<size_t>(c)], fs.offsets[static_cast<size_t>(c)],
                             tb.dim(), sb.dim()) =
                        sb.operator_matrix(tb, [](const Form& f) { return ext_d(f); });
                }
            }
            d_.emplace(SlotKey{w, k}, std::move(dm));
            if (k >= 1) {
                const FamilySlot& down = fslots_.at({w, k - 1});
                Mat km = zero_matrix(down.total, fs.total);
                for (int c = 0; c < sys_.component_count(); ++c) {
                    const SlotBasis& sb = fs.per_comp[static_cast<size_t>(c)];
                    const SlotBasis& tb = down.per_comp[static_cast<size_t>(c)];
                    if (sb.dim() == 0 || tb.dim() == 0) continue;
                    km.block(down.offsets[static_cast<size_t>(c)], fs.offsets[static_cast<size_t>(c)],
                             tb.dim(), sb.dim()) =
                        sb.operator_matrix(tb, [](const Form& f) { return poincare_homotopy(f); });
                }
                k_.emplace(SlotKey{w, k}, std::move(km));
            }
        }
    }

    // Closure of basics under the fiberwise differential; failure would
    // contradict the Cartan argument, so it is an internal error.
    for (int w = 0; w <= cutoff_; ++w) {
        for (int k = 0; k < kmax_; ++k) {
            const Mat& b = basic_.at({w, k});
            if (b.rows() == 0) continue;
            const Mat image = b * d_.at({w, k}).transpose();
            if (!rows_in_row_space(image, basic_.at({w, k + 1})))
                throw consistency_error("fiberwise differential left the basic subspace at (w=" +
                                        std::to_string(w) + ", k=" + std::to_string(k) + ")");
        }
    }
}

const FamilySlot& BasicComplex::family_slot(int w, int k) const {
    auto it = fslots_.find({w, k});
    if (it == fslots_.end()) throw structural_error("family slot out of computed range");
    return it->second;
}

const Mat& BasicComplex::basic(int w, int k) const {
    auto it = basic_.find({w, k});
    if (it == basic_.end()) throw structural_error("basic slot out of computed range");
    return it->second;
}

const Mat& BasicComplex::differential(int w, int k) const {
    auto it = d_.find({w, k});
    if (it == d_.end()) throw structural_error("differential out of computed range");
    return it->second;
}

const Mat& BasicComplex::homotopy(int w, int k) const {
    auto it = k_.find({w, k});
    if (it == k_.end()) throw structural_error("homotopy operator out of computed range");
    return it->second;
}

Mat BasicComplex::evaluation_at_origin(int w) const {
    const FamilySlot& fs = family_slot(w, 0);
    return w == 0 ? identity(fs.total) : zero_matrix(fs.total, fs.total);
}

std::map<int, std::map<int, long>> BasicComplex::basic_dims() const {
    std::map<int, std::map<int, long>> out;
    for (const auto& [key, m] : basic_) out[key.w][key.k] = m.rows();
    return out;
}

std::vector<long> BasicComplex::cohomology(int w) const {
    GradedSubspace sub;
    GradedMap d(0, 1);
    for (int k = 0; k <= kmax_; ++k) {
        sub.set({w, k}, basic_.at({w, k}));
        d.set({w, k}, d_.at({w, k}));
    }
    return cohomology_dims(sub, d, w, kmax_);
}

bool BasicComplex::homotopy_preserves_basics(int w) const {
    for (int k = 1; k <= kmax_; ++k) {
        const Mat& b = basic_.at({w, k});
        if (b.rows() == 0) continue;
        const Mat image = b * k_.at({w, k}).transpose();
        if (!rows_in_row_space(image, basic_.at({w, k - 1}))) return false;
    }
    return true;
}

bool BasicComplex::homotopy_identity_holds(int w) const {
    for (int k = 0; k <= kmax_; ++k) {
        const Mat& b = basic_.at({w, k});
        if (b.rows() == 0) continue;
        Mat lhs;
        if (k == 0) {
            // Kd = id - eval0 on basic 0-form families.
            lhs = kmax_ >= 1 ? Mat(b * d_.at({w, 0}).transpose() * k_.at({w, 1}).transpose())
                             : zero_matrix(b.rows(), b.cols());
            const Mat rhs = b - b * evaluation_at_origin(w).transpose();
            if (!(lhs == rhs)) return false;
        } else {
            Mat sum = b * k_.at({w, k}).transpose() * d_.at({w, k - 1}).transpose();
            if (k + 1 <= kmax_)
                sum += b * d_.at({w, k}).transpose() * k_.at({w, k + 1}).transpose();
            if (!(sum == b)) return false;
        }
    }
    return true;
}

void BasicComplex::inject_fault() {
    for (auto it = d_.rbegin(); it != d_.rend(); ++it) {
        if (it->second.rows() > 0 && it->second.cols() > 0) {
            it->second(0, 0) += Scalar(1);
            return;
        }
    }
}

Report resolution_check(const FiniteGroupAction& g, int cutoff, bool inject_fault) {
    const LoopSpaceModel loop(g);
    BasicComplex bc(group_component_system(g, loop), cutoff);
    if (inject_fault) bc.inject_fault();
    const BrylinskiGerm germ(g);

    Report report;
    Json dims = Json::object();
    for (const auto& [w, row] : bc.basic_dims()) {
        Json jrow = Json::object();
        for (const auto& [k, dim] : row) jrow[std::to_string(k)] = dim;
        dims[std::to_string(w)] = jrow;
    }
    report.tables["basic_dims"] = dims;

    Json cohom = Json::object();
    for (int w = 0; w <= cutoff; ++w) {
        std::vector<long> h;
        try {
            h = bc.cohomology(w);
        } catch (const consistency_error& e) {
            report.check_true("basic_complex_closed", "w=" + std::to_string(w), false);
            continue;
        }
        Json jrow = Json::array();
        for (long v : h) jrow.push_back(v);
        cohom[std::to_string(w)] = jrow;
        if (w == 0) {
            report.check("h0_equals_class_count", "w=0", germ.dimension, h[0]);
        } else {
            report.check("h0_vanishes", "w=" + std::to_string(w), 0, h[0]);
        }
        for (int k = 1; k <= bc.kmax(); ++k)
            report.check("hk_vanishes", "(w=" + std::to_string(w) + ",k=" + std::to_string(k) + ")",
                         0, h[static_cast<size_t>(k)]);
        report.check_true("homotopy_identity", "w=" + std::to_string(w),
                          bc.homotopy_identity_holds(w));
        report.check_true("homotopy_preserves_basics", "w=" + std::to_string(w),
                          bc.homotopy_preserves_basics(w));
    }
    report.tables["cohomology"] = cohom;
    return report;
}

Report morita_check(const FiniteGroupAction& g, const std::vector<int>& subgroup_elements,
                    const std::vector<Mat>& rho, int cutoff) {
    const InducedAction induced = induce_action(g, subgroup_elements, rho);
    BasicComplex g_side(slice_component_system(g, induced), cutoff);

    // H acting on V directly; requires rho faithful, as all slice actions
    // built from matrix subgroups here are.
    std::vector<Mat> h_mats = rho;
    FiniteGroupAction h_group = FiniteGroupAction::from_elements(std::move(h_mats));
    const LoopSpaceModel h_loop(h_group);
    BasicComplex h_side(group_component_system(h_group, h_loop), cutoff);

    Report report;
    Json gt = Json::object(), ht = Json::object();
    const int kmax = std::max(g_side.kmax(), h_side.kmax());
    for (int w = 0; w <= cutoff; ++w) {
        Json grow = Json::object(), hrow = Json::object();
        for (int k = 0; k <= kmax; ++k) {
            const long gd = k <= g_side.kmax() ? g_side.basic_dim(w, k) : 0;
            const long hd = k <= h_side.kmax() ? h_side.basic_dim(w, k) : 0;
            grow[std::to_string(k)] = gd;
            hrow[std::to_string(k)] = hd;
            report.check("slice_dims_equal",
                         "(w=" + std::to_string(w) + ",k=" + std::to_string(k) + ")", hd, gd);
        }
        gt[std::to_string(w)] = grow;
        ht[std::to_string(w)] = hrow;
    }
    report.tables["induced_side_dims"] = gt;
    report.tables["subgroup_side_dims"] = ht;
    return report;
}

} // namespace iforms
