#include "iforms/poly.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

namespace iforms {

unsigned total_degree(const Expo& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

std::vector<Expo> monomials_of_degree(int n, unsigned d) {
    std::vector<Expo> out;
    if (n == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    Expo cur(static_cast<size_t>(n), 0);
    // Recursive enumeration emitting exponent vectors in ascending
    // lexicographic order.
    auto rec = [&](auto&& self, int pos, unsigned rem) -> void {
        if (pos == n - 1) {
            cur[pos] = rem;
            out.push_back(cur);
            return;
        }
        for (unsigned e = 0; e <= rem; ++e) {
            cur[pos] = e;
            self(self, pos + 1, rem - e);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, d);
    return out;
}

long count_monomials(int n, unsigned d) {
    if (n == 0) return d == 0 ? 1 : 0;
    // C(n+d-1, d)
    long num = 1, den = 1;
    for (unsigned i = 1; i <= d; ++i) {
        num *= n - 1 + static_cast<long>(i);
        den *= static_cast<long>(i);
    }
    return num / den;
}

Poly Poly::constant(int n, Scalar c) {
    Poly p(n);
    p.add_term(Expo(static_cast<size_t>(n), 0), c);
    return p;
}

Poly Poly::variable(int n, int i) {
    if (i < 0 || i >= n) throw structural_error("variable index out of range");
    Expo e(static_cast<size_t>(n), 0);
    e[static_cast<size_t>(i)] = 1;
    return monomial(n, std::move(e), Scalar(1));
}

Poly Poly::monomial(int n, Expo e, Scalar c) {
    if (static_cast<int>(e.size()) != n) throw structural_error("exponent vector length mismatch");
    Poly p(n);
    p.add_term(e, c);
    return p;
}

void Poly::add_term(const Expo& e, const Scalar& c) {
    if (static_cast<int>(e.size()) != n_) throw structural_error("exponent vector length mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Scalar Poly::coeff(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar Poly::value_at_origin() const { return coeff(Expo(static_cast<size_t>(n_), 0)); }

unsigned Poly::degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
}

Poly& Poly::operator+=(const Poly& o) {
    if (n_ != o.n_) throw structural_error("polynomials on different ambient spaces");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (n_ != o.n_) throw structural_error("polynomials on different ambient spaces");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }

Poly mul_truncated(const Poly& a, const Poly& b, std::optional<unsigned> cutoff) {
    if (a.ambient_dim() != b.ambient_dim())
        throw structural_error("polynomials on different ambient spaces");
    Poly out(a.ambient_dim());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            Expo e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            if (cutoff && total_degree(e) > *cutoff) continue;
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Poly operator*(const Poly& a, const Poly& b) { return mul_truncated(a, b, std::nullopt); }

Poly operator*(const Scalar& c, Poly p) {
    Poly out(p.ambient_dim());
    for (const auto& [e, q] : p.terms()) out.add_term(e, c * q);
    return out;
}

Poly partial_derivative(const Poly& p, int i) {
    if (i < 0 || i >= p.ambient_dim()) throw structural_error("derivative index out of range");
    Poly out(p.ambient_dim());
    for (const auto& [e, c] : p.terms()) {
        if (e[static_cast<size_t>(i)] == 0) continue;
        Expo d = e;
        const Scalar f = Scalar(static_cast<long>(d[static_cast<size_t>(i)]));
        --d[static_cast<size_t>(i)];
        out.add_term(d, f * c);
    }
    return out;
}

Poly linear_substitute(const Poly& p, const Mat& a) {
    if (a.rows() != p.ambient_dim())
        throw structural_error("substitution matrix row count must equal the ambient dimension");
    const int m = static_cast<int>(a.cols());
    // Image of each source variable, with cached powers.
    std::vector<Poly> lin;
    lin.reserve(static_cast<size_t>(p.ambient_dim()));
    for (long i = 0; i < a.rows(); ++i) {
        Poly li(m);
        for (long j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            li += a(i, j) * Poly::variable(m, static_cast<int>(j));
        }
        lin.push_back(std::move(li));
    }
    std::vector<std::vector<Poly>> pow(lin.size());
    auto power = [&](size_t i, unsigned e) -> const Poly& {
        auto& cache = pow[i];
        if (cache.empty()) cache.push_back(Poly::constant(m, Scalar(1)));
        while (cache.size() <= e) cache.push_back(cache.back() * lin[i]);
        return cache[e];
    };
    Poly out(m);
    for (const auto& [e, c] : p.terms()) {
        Poly term = Poly::constant(m, c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            term = term * power(i, e[i]);
        }
        out += term;
    }
    return out;
}

Poly graded_component(const Poly& p, unsigned m) {
    Poly out(p.ambient_dim());
    for (const auto& [e, c] : p.terms())
        if (total_degree(e) == m) out.add_term(e, c);
    return out;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*x" << i;
            if (e[i] > 1) os << '^' << e[i];
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

} // namespace iforms
