#include "iforms/form.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace iforms {

std::vector<IdxSet> index_subsets(int n, int k) {
    std::vector<IdxSet> out;
    if (k < 0 || k > n) return out;
    IdxSet cur(static_cast<size_t>(k));
    auto rec = [&](auto&& self, int start, int pos) -> void {
        if (pos == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n - (k - pos); ++i) {
            cur[static_cast<size_t>(pos)] = i;
            self(self, i + 1, pos + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long num = 1, den = 1;
    for (int i = 1; i <= k; ++i) {
        num *= n - k + i;
        den *= i;
    }
    return num / den;
}

Form::Form(int n, int k) : n_(n), k_(k) {
    if (n < 0) throw structural_error("negative ambient dimension");
    if (k < 0) throw structural_error("negative form degree");
}

Form Form::from_poly(const Poly& p) {
    Form f(p.ambient_dim(), 0);
    f.add_component({}, p);
    return f;
}

void Form::add_component(const IdxSet& idx, const Poly& coeff) {
    if (static_cast<int>(idx.size()) != k_) throw structural_error("index set size != form degree");
    if (coeff.ambient_dim() != n_) throw structural_error("coefficient on wrong ambient space");
    for (size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 0 || idx[i] >= n_) throw structural_error("form index out of range");
        if (i + 1 < idx.size() && idx[i] >= idx[i + 1])
            throw structural_error("form index set must be strictly increasing");
    }
    if (coeff.is_zero()) return;
    auto it = comps_.find(idx);
    if (it == comps_.end()) {
        comps_.emplace(idx, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

Poly Form::component(const IdxSet& idx) const {
    auto it = comps_.find(idx);
    return it == comps_.end() ? Poly(n_) : it->second;
}

Form& Form::operator+=(const Form& o) {
    if (n_ != o.n_ || k_ != o.k_) throw structural_error("form shape mismatch in addition");
    for (const auto& [i, p] : o.comps_) add_component(i, p);
    return *this;
}

Form& Form::operator-=(const Form& o) {
    if (n_ != o.n_ || k_ != o.k_) throw structural_error("form shape mismatch in subtraction");
    for (const auto& [i, p] : o.comps_) add_component(i, Scalar(-1) * p);
    return *this;
}

bool Form::operator==(const Form& o) const {
    return n_ == o.n_ && k_ == o.k_ && comps_ == o.comps_;
}

std::map<int, Form> Form::weight_components() const {
    std::map<int, Form> out;
    for (const auto& [idx, p] : comps_) {
        for (const auto& [e, c] : p.terms()) {
            const int w = static_cast<int>(total_degree(e)) + k_;
            auto it = out.find(w);
            if (it == out.end()) it = out.emplace(w, Form(n_, k_)).first;
            it->second.add_component(idx, Poly::monomial(n_, e, c));
        }
    }
    return out;
}

bool Form::is_weight_homogeneous(int* w) const {
    const auto pieces = weight_components();
    if (pieces.size() > 1) return false;
    if (w) *w = pieces.empty() ? k_ : pieces.begin()->first;
    return true;
}

Form operator+(Form a, const Form& b) { return a += b; }
Form operator-(Form a, const Form& b) { return a -= b; }

Form operator*(const Scalar& c, Form a) {
    Form out(a.ambient_dim(), a.degree());
    for (const auto& [i, p] : a.components()) out.add_component(i, c * p);
    return out;
}

Form operator*(const Poly& p, const Form& a) {
    Form out(a.ambient_dim(), a.degree());
    for (const auto& [i, q] : a.components()) out.add_component(i, p * q);
    return out;
}

LinearVectorField::LinearVectorField(Mat a) : a_(std::move(a)) {
    if (a_.rows() != a_.cols()) throw structural_error("vector field matrix must be square");
}

Poly LinearVectorField::component(int i) const {
    const int n = ambient_dim();
    if (i < 0 || i >= n) throw structural_error("vector field component index out of range");
    Poly p(n);
    for (long j = 0; j < n; ++j) {
        if (a_(i, j).is_zero()) continue;
        p += a_(i, j) * Poly::variable(n, static_cast<int>(j));
    }
    return p;
}

namespace {

// Merges two increasing index sets; returns false on a repeated index,
// otherwise writes the union and the interleaving sign.
bool merge_indices(const IdxSet& a, const IdxSet& b, IdxSet& out, int& sign) {
    out.clear();
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    int inversions = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining elements of a
            inversions += static_cast<int>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    sign = (inversions % 2 == 0) ? 1 : -1;
    return true;
}

} // namespace

Form wedge(const Form& a, const Form& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw structural_error("wedge of forms on different ambient spaces");
    const int n = a.ambient_dim();
    const int k = a.degree() + b.degree();
    Form out(n, k);
    if (k > n) return out; // zero: some index would repeat
    IdxSet merged;
    int sign = 0;
    for (const auto& [ia, pa] : a.components()) {
        for (const auto& [ib, pb] : b.components()) {
            if (!merge_indices(ia, ib, merged, sign)) continue;
            Poly prod = pa * pb;
            out.add_component(merged, sign < 0 ? Scalar(-1) * prod : prod);
        }
    }
    return out;
}

Form ext_d(const Form& a) {
    const int n = a.ambient_dim();
    Form out(n, a.degree() + 1);
    if (a.degree() + 1 > n) return out;
    for (const auto& [idx, p] : a.components()) {
        for (int v = 0; v < n; ++v) {
            if (std::binary_search(idx.begin(), idx.end(), v)) continue;
            Poly dp = partial_derivative(p, v);
            if (dp.is_zero()) continue;
            IdxSet nidx = idx;
            const auto pos = std::lower_bound(nidx.begin(), nidx.end(), v);
            const int before = static_cast<int>(pos - nidx.begin());
            nidx.insert(pos, v);
            out.add_component(nidx, before % 2 == 0 ? dp : Scalar(-1) * dp);
        }
    }
    return out;
}

Form contract(const LinearVectorField& xi, const Form& a) {
    if (xi.ambient_dim() != a.ambient_dim())
        throw structural_error("vector field and form on different ambient spaces");
    if (a.degree() < 1) throw structural_error("contraction of a 0-form");
    const int n = a.ambient_dim();
    Form out(n, a.degree() - 1);
    for (const auto& [idx, p] : a.components()) {
        for (size_t t = 0; t < idx.size(); ++t) {
            Poly comp = xi.component(idx[t]);
            if (comp.is_zero()) continue;
            IdxSet rest = idx;
            rest.erase(rest.begin() + static_cast<long>(t));
            Poly coeff = p * comp;
            out.add_component(rest, t % 2 == 0 ? coeff : Scalar(-1) * coeff);
        }
    }
    return out;
}

Form lie_derivative(const LinearVectorField& xi, const Form& a) {
    if (a.degree() == 0) return contract(xi, ext_d(a));
    Form out = ext_d(contract(xi, a));
    out += contract(xi, ext_d(a));
    return out;
}

Form pullback(const Mat& h, const Form& a) {
    if (h.rows() != a.ambient_dim())
        throw structural_error("pullback matrix rows must match the form's ambient dimension");
    const int m = static_cast<int>(h.cols());
    if (a.degree() > m) return Form(m, a.degree());
    // d(H u)_i = sum_j H_{ij} du_j as a 1-form on the source space.
    std::vector<Form> dcoord;
    dcoord.reserve(static_cast<size_t>(h.rows()));
    for (long i = 0; i < h.rows(); ++i) {
        Form df(m, 1);
        for (long j = 0; j < h.cols(); ++j) {
            if (h(i, j).is_zero()) continue;
            df.add_component({static_cast<int>(j)}, Poly::constant(m, h(i, j)));
        }
        dcoord.push_back(std::move(df));
    }
    Form out(m, a.degree());
    for (const auto& [idx, p] : a.components()) {
        Form part = Form::from_poly(linear_substitute(p, h));
        for (int i : idx) part = wedge(part, dcoord[static_cast<size_t>(i)]);
        out += part;
    }
    return out;
}

Form pullback_linear(const Mat& g, const Form& a) {
    if (g.rows() != g.cols()) throw structural_error("pullback_linear requires a square matrix");
    if (determinant(g).is_zero()) throw structural_error("pullback_linear requires an invertible matrix");
    return pullback(g, a);
}

Form fiber_homotopy(const Form& a, const std::vector<bool>& fiber) {
    const int n = a.ambient_dim();
    if (static_cast<int>(fiber.size()) != n) throw structural_error("fiber mask length mismatch");
    if (a.degree() < 1) throw structural_error("homotopy operator needs form degree >= 1");
    Form out(n, a.degree() - 1);
    for (const auto& [idx, p] : a.components()) {
        int kf = 0;
        for (int i : idx)
            if (fiber[static_cast<size_t>(i)]) ++kf;
        for (const auto& [e, c] : p.terms()) {
            unsigned mf = 0;
            for (size_t i = 0; i < e.size(); ++i)
                if (fiber[i]) mf += e[i];
            const long denom = static_cast<long>(mf) + kf;
            if (denom == 0) continue;
            const Scalar factor = c / Scalar(denom);
            // i_E over the fiber coordinates applied to the single term.
            for (size_t t = 0; t < idx.size(); ++t) {
                const int v = idx[t];
                if (!fiber[static_cast<size_t>(v)]) continue;
                Expo ne = e;
                ++ne[static_cast<size_t>(v)];
                IdxSet rest = idx;
                rest.erase(rest.begin() + static_cast<long>(t));
                const Scalar signed_factor = (t % 2 == 0) ? factor : -factor;
                out.add_component(rest, Poly::monomial(n, std::move(ne), signed_factor));
            }
        }
    }
    return out;
}

Form poincare_homotopy(const Form& a) {
    return fiber_homotopy(a, std::vector<bool>(static_cast<size_t>(a.ambient_dim()), true));
}

Form fiber_restrict_to_origin(const Form& a, const std::vector<bool>& fiber) {
    const int n = a.ambient_dim();
    if (static_cast<int>(fiber.size()) != n) throw structural_error("fiber mask length mismatch");
    Form out(n, a.degree());
    for (const auto& [idx, p] : a.components()) {
        bool fiber_index = false;
        for (int i : idx)
            if (fiber[static_cast<size_t>(i)]) fiber_index = true;
        if (fiber_index) continue;
        Poly q(n);
        for (const auto& [e, c] : p.terms()) {
            unsigned mf = 0;
            for (size_t i = 0; i < e.size(); ++i)
                if (fiber[i]) mf += e[i];
            if (mf == 0) q.add_term(e, c);
        }
        out.add_component(idx, q);
    }
    return out;
}

std::string Form::str() const {
    if (comps_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, p] : comps_) {
        if (!first) os << " + ";
        first = false;
        os << '(' << p.str() << ')';
        for (int i : idx) os << " dx" << i;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Form& a) { return os << a.str(); }

nlohmann::ordered_json form_to_json(const Form& f) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& [idx, p] : f.components()) {
        nlohmann::ordered_json indices = nlohmann::ordered_json::array();
        for (int i : idx) indices.push_back(i);
        nlohmann::ordered_json coeff = nlohmann::ordered_json::object();
        for (const auto& [e, c] : p.terms()) {
            std::string key;
            for (size_t i = 0; i < e.size(); ++i) {
                if (i) key += ',';
                key += std::to_string(e[i]);
            }
            coeff[key] = c.str();
        }
        out.push_back(nlohmann::ordered_json{{"indices", indices}, {"coefficient", coeff}});
    }
    return out;
}

Form form_from_json(const nlohmann::ordered_json& j, int ambient_dim, int degree,
                    const FieldPtr& field) {
    Form f(ambient_dim, degree);
    if (!j.is_array()) throw structural_error("form JSON must be an array of components");
    for (const auto& comp : j) {
        IdxSet idx;
        for (const auto& i : comp.at("indices")) idx.push_back(i.get<int>());
        Poly p(ambient_dim);
        for (const auto& [key, value] : comp.at("coefficient").items()) {
            Expo e;
            std::stringstream ss(key);
            std::string item;
            while (std::getline(ss, item, ',')) e.push_back(static_cast<unsigned>(std::stoul(item)));
            if (static_cast<int>(e.size()) != ambient_dim)
                throw structural_error("form JSON exponent length mismatch");
            p.add_term(e, Scalar::parse(value.get<std::string>(), field));
        }
        f.add_component(idx, p);
    }
    return f;
}

} // namespace iforms
