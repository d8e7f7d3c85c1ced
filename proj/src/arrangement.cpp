#include "iforms/arrangement.hpp"

#include <algorithm>

namespace iforms {

namespace {

// Deterministic matrix ordering for deduplication.
int compare_mats(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) return a.rows() < b.rows() ? -1 : 1;
    if (a.cols() != b.cols()) return a.cols() < b.cols() ? -1 : 1;
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) {
            const int c = Scalar::compare(a(i, j), b(i, j));
            if (c != 0) return c;
        }
    return 0;
}

} // namespace

SubspaceArrangement::SubspaceArrangement(int n, const std::vector<Mat>& component_bases) : n_(n) {
    if (n < 0) throw structural_error("negative ambient dimension");
    for (const Mat& b : component_bases) {
        if (b.rows() > 0 && b.cols() != n)
            throw structural_error("component basis vectors have wrong length");
        Mat r = b.rows() > 0 ? rref(b) : zero_matrix(0, n);
        if (r.rows() != b.rows())
            throw structural_error("component basis is linearly dependent");
        comps_.push_back(std::move(r));
    }
    if (comps_.empty()) throw structural_error("arrangement needs at least one component");
    std::sort(comps_.begin(), comps_.end(),
              [](const Mat& a, const Mat& b) { return compare_mats(a, b) < 0; });
    comps_.erase(std::unique(comps_.begin(), comps_.end(),
                             [](const Mat& a, const Mat& b) { return compare_mats(a, b) == 0; }),
                 comps_.end());
}

SubspaceArrangement SubspaceArrangement::full(int n) {
    return SubspaceArrangement(n, {identity(n)});
}

SubspaceArrangement SubspaceArrangement::origin(int n) {
    return SubspaceArrangement(n, {zero_matrix(0, n)});
}

bool SubspaceArrangement::operator==(const SubspaceArrangement& o) const {
    if (n_ != o.n_ || comps_.size() != o.comps_.size()) return false;
    for (size_t i = 0; i < comps_.size(); ++i)
        if (compare_mats(comps_[i], o.comps_[i]) != 0) return false;
    return true;
}

IdealSlices::IdealSlices(int n, std::vector<Mat> slices) : n_(n), slices_(std::move(slices)) {}

const Mat& IdealSlices::slice(int w) const {
    if (w < 0 || w >= static_cast<int>(slices_.size()))
        throw structural_error("ideal slice weight out of range");
    return slices_[static_cast<size_t>(w)];
}

std::vector<Poly> IdealSlices::slice_polys(int w) const {
    const Mat& m = slice(w);
    const auto monos = monomials_of_degree(n_, static_cast<unsigned>(w));
    std::vector<Poly> out;
    out.reserve(static_cast<size_t>(m.rows()));
    for (long i = 0; i < m.rows(); ++i) {
        Poly p(n_);
        for (long j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) p.add_term(monos[static_cast<size_t>(j)], m(i, j));
        out.push_back(std::move(p));
    }
    return out;
}

IdealSlices vanishing_ideal_slices(const SubspaceArrangement& arr, int cutoff) {
    if (cutoff < 0) throw structural_error("cutoff must be >= 0");
    const int n = arr.ambient_dim();
    std::vector<Mat> slices;
    for (int w = 0; w <= cutoff; ++w) {
        const auto monos = monomials_of_degree(n, static_cast<unsigned>(w));
        const long cols = static_cast<long>(monos.size());
        // Joint restriction map: stack, per component, the coordinates of
        // each ambient monomial restricted to the component.
        std::vector<Vec> rows;
        for (const Mat& comp : arr.components()) {
            const int d = static_cast<int>(comp.rows());
            const auto target = monomials_of_degree(d, static_cast<unsigned>(w));
            if (target.empty()) continue;
            std::map<Expo, long> tindex;
            for (size_t t = 0; t < target.size(); ++t) tindex.emplace(target[t], static_cast<long>(t));
            std::vector<Vec> block(target.size(), [&] {
                Vec z(cols);
                z.setConstant(Scalar(0));
                return z;
            }());
            const Mat incl = comp.transpose(); // n x d, columns = basis vectors
            for (long j = 0; j < cols; ++j) {
                const Poly restricted =
                    linear_substitute(Poly::monomial(n, monos[static_cast<size_t>(j)], Scalar(1)), incl);
                for (const auto& [e, c] : restricted.terms())
                    block[static_cast<size_t>(tindex.at(e))](j) = c;
            }
            for (auto& r : block) rows.push_back(std::move(r));
        }
        Mat rmap = zero_matrix(static_cast<long>(rows.size()), cols);
        for (size_t i = 0; i < rows.size(); ++i) rmap.row(static_cast<long>(i)) = rows[i].transpose();
        slices.push_back(kernel(rmap));
    }
    return IdealSlices(n, std::move(slices));
}

const QuotientSlot& QuotientComplex::slot(SlotKey key) const {
    auto it = slots_.find(key);
    if (it == slots_.end()) throw structural_error("quotient slot out of computed range");
    return it->second;
}

const Mat& QuotientComplex::induced_d(SlotKey key) const {
    auto it = induced_d_.find(key);
    if (it == induced_d_.end()) throw structural_error("induced differential out of computed range");
    return it->second;
}

std::map<int, std::map<int, long>> QuotientComplex::dims() const {
    std::map<int, std::map<int, long>> out;
    for (const auto& [key, slot] : slots_) out[key.w][key.k] = slot.qdim();
    return out;
}

void QuotientComplex::inject_fault() {
    for (auto it = induced_d_.rbegin(); it != induced_d_.rend(); ++it) {
        if (it->second.rows() > 0 && it->second.cols() > 0) {
            it->second(0, 0) += Scalar(1);
            return;
        }
    }
}

QuotientComplex make_quotient_complex(
    const SubspaceArrangement& arr, int cutoff,
    const std::function<std::vector<Form>(int w, int k)>& extra_denominators) {
    if (cutoff < 1) throw structural_error("cutoff must be >= 1");
    const int n = arr.ambient_dim();
    QuotientComplex qc;
    qc.n_ = n;
    qc.cutoff_ = cutoff;
    qc.ideal_ = vanishing_ideal_slices(arr, cutoff);

    // Differentials of the ideal slice bases, reused across slots.
    std::vector<std::vector<Form>> dideal(static_cast<size_t>(cutoff) + 1);
    for (int m = 1; m <= cutoff; ++m)
        for (const Poly& q : qc.ideal_.slice_polys(m))
            dideal[static_cast<size_t>(m)].push_back(ext_d(Form::from_poly(q)));

    for (int w = 0; w <= cutoff; ++w) {
        for (int k = 0; k <= n; ++k) {
            const SlotBasis basis(n, w, k);
            const long dim = basis.dim();
            std::vector<Vec> rows;
            if (dim > 0) {
                // I Omega^k: the degree (w-k) ideal slice times each dx_I.
                // Slot coordinates are blocks over index sets, so an ideal
                // row embeds directly into each block.
                const int cdeg = w - k;
                if (cdeg >= 0) {
                    const Mat& islice = qc.ideal_.slice(cdeg);
                    const long mono_count = count_monomials(n, static_cast<unsigned>(cdeg));
                    const long blocks = binomial(n, k);
                    for (long b = 0; b < blocks; ++b) {
                        for (long i = 0; i < islice.rows(); ++i) {
                            Vec v(dim);
                            v.setConstant(Scalar(0));
                            v.segment(b * mono_count, mono_count) = islice.row(i).transpose();
                            rows.push_back(std::move(v));
                        }
                    }
                }
                // dI ^ Omega^{k-1}. Only the top ideal degree m = w-k+1 with
                // constant multipliers contributes new directions: for m
                // below it, x^beta dq = d(q x^beta) - q d(x^beta), the first
                // term is d of a higher slice element and the second lies in
                // I Omega^k already.
                if (k >= 1 && w - k + 1 >= 1 && w - k + 1 <= cutoff) {
                    const auto subsets = index_subsets(n, k - 1);
                    for (const Form& dq : dideal[static_cast<size_t>(w - k + 1)]) {
                        for (const auto& J : subsets) {
                            Form base(n, k - 1);
                            base.add_component(J, Poly::constant(n, Scalar(1)));
                            const Form gen = wedge(dq, base);
                            if (gen.is_zero()) continue;
                            rows.push_back(basis.coordinates(gen));
                        }
                    }
                }
                if (extra_denominators) {
                    for (const Form& f : extra_denominators(w, k)) {
                        if (f.is_zero()) continue;
                        rows.push_back(basis.coordinates(f));
                    }
                }
            }
            Mat denom = zero_matrix(static_cast<long>(rows.size()), dim);
            for (size_t i = 0; i < rows.size(); ++i) denom.row(static_cast<long>(i)) = rows[i].transpose();
            qc.slots_.emplace(SlotKey{w, k}, QuotientSlot::make(dim, std::move(denom)));
        }
    }

    // The differential must descend: d J_{w,k} inside J_{w,k+1}. This is the
    // well-definedness statement for the quotient complex, checked exactly.
    for (int w = 0; w <= cutoff; ++w) {
        for (int k = 0; k < n; ++k) {
            const QuotientSlot& s = qc.slots_.at({w, k});
            const QuotientSlot& t = qc.slots_.at({w, k + 1});
            const SlotBasis sb(n, w, k), tb(n, w, k + 1);
            for (long i = 0; i < s.denom.rows(); ++i) {
                const Form img = ext_d(sb.form(s.denom.row(i).transpose()));
                if (!in_row_space(tb.coordinates(img), t.denom))
                    throw consistency_error("differential does not preserve the denominator at (w=" +
                                            std::to_string(w) + ", k=" + std::to_string(k) + ")");
            }
        }
    }

    for (int w = 0; w <= cutoff; ++w) {
        for (int k = 0; k <= n; ++k) {
            const QuotientSlot& s = qc.slots_.at({w, k});
            const SlotBasis sb(n, w, k);
            const long tdim = k + 1 <= n ? qc.slots_.at({w, k + 1}).qdim() : 0;
            Mat dmat = zero_matrix(tdim, s.qdim());
            if (k + 1 <= n && s.qdim() > 0 && tdim > 0) {
                const QuotientSlot& t = qc.slots_.at({w, k + 1});
                const SlotBasis tb(n, w, k + 1);
                for (long j = 0; j < s.qdim(); ++j) {
                    Vec unit(s.qdim());
                    unit.setConstant(Scalar(0));
                    unit(j) = Scalar(1);
                    const Form img = ext_d(sb.form(s.lift(unit)));
                    dmat.col(j) = t.reduce(tb.coordinates(img));
                }
            }
            qc.induced_d_.emplace(SlotKey{w, k}, std::move(dmat));
        }
    }
    return qc;
}

ChartTransfer chart_transfer(const QuotientComplex& src, const QuotientComplex& dst, const Mat& h) {
    const int n = src.ambient_dim();
    const int m = dst.ambient_dim();
    if (h.rows() != n || h.cols() != m)
        throw structural_error("chart mismatch: embedding must map the destination chart's space "
                               "into the source chart's");
    if (rank(h) != m) throw structural_error("chart mismatch: embedding is not injective");
    const int cutoff = std::min(src.cutoff(), dst.cutoff());

    // Ideal compatibility: H^* I_src inside I_dst, per weight.
    for (int w = 0; w <= cutoff; ++w) {
        const SlotBasis dst_basis(m, w, 0);
        for (const Poly& q : src.ideal().slice_polys(w)) {
            const Poly pulled = linear_substitute(q, h);
            const Vec v = dst_basis.coordinates(Form::from_poly(pulled));
            if (!in_row_space(v, dst.ideal().slice(w)))
                throw structural_error("chart mismatch: ideal does not pull back into the "
                                       "destination ideal at weight " + std::to_string(w));
        }
    }

    ChartTransfer t;
    t.src_dim = n;
    t.dst_dim = m;
    for (int w = 0; w <= cutoff; ++w) {
        for (int k = 0; k <= std::max(n, m); ++k) {
            const bool src_has = k <= n, dst_has = k <= m;
            const long sdim = src_has ? src.qdim({w, k}) : 0;
            const long ddim = dst_has ? dst.qdim({w, k}) : 0;
            Mat eta = zero_matrix(ddim, sdim);
            if (sdim > 0 && ddim > 0) {
                const QuotientSlot& s = src.slot({w, k});
                const QuotientSlot& d = dst.slot({w, k});
                const SlotBasis sb(n, w, k), db(m, w, k);
                for (long j = 0; j < sdim; ++j) {
                    Vec unit(sdim);
                    unit.setConstant(Scalar(0));
                    unit(j) = Scalar(1);
                    const Form img = pullback(h, sb.form(s.lift(unit)));
                    eta.col(j) = d.reduce(db.coordinates(img));
                }
            }
            t.eta.emplace(SlotKey{w, k}, std::move(eta));
        }
    }
    return t;
}

bool cocycle_check(const ChartTransfer& eta_li, const ChartTransfer& eta_kl,
                   const ChartTransfer& eta_ki) {
    if (eta_li.src_dim != eta_ki.src_dim || eta_kl.dst_dim != eta_ki.dst_dim ||
        eta_li.dst_dim != eta_kl.src_dim)
        throw structural_error("cocycle transfers do not share chart shapes");
    for (const auto& [key, direct] : eta_ki.eta) {
        auto it1 = eta_li.eta.find(key);
        auto it2 = eta_kl.eta.find(key);
        if (it1 == eta_li.eta.end() || it2 == eta_kl.eta.end()) continue;
        if (it2->second.cols() != it1->second.rows())
            throw structural_error("cocycle transfer shapes do not compose");
        const Mat composed = it2->second * it1->second;
        if (composed.rows() != direct.rows() || composed.cols() != direct.cols())
            throw structural_error("cocycle transfer shapes do not match");
        if (!(composed == direct)) return false;
    }
    return true;
}

bool transfers_equal(const ChartTransfer& a, const ChartTransfer& b) {
    if (a.src_dim != b.src_dim || a.dst_dim != b.dst_dim) return false;
    if (a.eta.size() != b.eta.size()) return false;
    for (const auto& [key, m] : a.eta) {
        auto it = b.eta.find(key);
        if (it == b.eta.end()) return false;
        if (m.rows() != it->second.rows() || m.cols() != it->second.cols()) return false;
        if (!(m == it->second)) return false;
    }
    return true;
}

bool same_structure_map(const QuotientComplex& dst, const Mat& h, const Mat& g) {
    if (h.rows() != g.rows() || h.cols() != g.cols()) return false;
    const int m = static_cast<int>(h.cols());
    const SlotBasis basis(m, 1, 0);
    for (long i = 0; i < h.rows(); ++i) {
        Poly diff(m);
        for (long j = 0; j < m; ++j) {
            const Scalar c = h(i, j) - g(i, j);
            if (!c.is_zero()) diff += c * Poly::variable(m, static_cast<int>(j));
        }
        if (diff.is_zero()) continue;
        if (!in_row_space(basis.coordinates(Form::from_poly(diff)), dst.ideal().slice(1)))
            return false;
    }
    return true;
}

bool transfer_is_isomorphism(const ChartTransfer& t, const QuotientComplex& src,
                             const QuotientComplex& dst) {
    for (const auto& [key, eta] : t.eta) {
        const long sdim = key.k <= src.ambient_dim() ? src.qdim(key) : 0;
        const long ddim = key.k <= dst.ambient_dim() ? dst.qdim(key) : 0;
        if (eta.cols() != sdim || eta.rows() != ddim) return false;
        if (sdim != ddim) return false;
        if (sdim > 0 && rank(eta) != sdim) return false;
    }
    return true;
}

bool transfer_commutes_with_d(const ChartTransfer& t, const QuotientComplex& src,
                              const QuotientComplex& dst) {
    for (const auto& [key, eta] : t.eta) {
        const SlotKey next{key.w, key.k + 1};
        auto it = t.eta.find(next);
        if (it == t.eta.end()) continue;
        const bool src_has = key.k + 1 <= src.ambient_dim();
        const bool dst_has = key.k + 1 <= dst.ambient_dim();
        // d eta and eta d, as maps src(w,k) -> dst(w,k+1)
        Mat lhs = zero_matrix(dst_has ? dst.qdim(next) : 0, eta.cols());
        Mat rhs = lhs;
        if (dst_has && eta.rows() > 0) lhs = dst.induced_d(key) * eta;
        if (src_has && it->second.cols() > 0) rhs = it->second * src.induced_d(key);
        if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) return false;
        if (!(lhs == rhs)) return false;
    }
    return true;
}

} // namespace iforms
