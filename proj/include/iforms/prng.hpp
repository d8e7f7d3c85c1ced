#pragma once

#include <cstdint>

#include "iforms/form.hpp"

namespace iforms {

/// splitmix64: deterministic across platforms, good enough for sampling
/// test cases. Not a crypto generator.
class Prng {
public:
    explicit Prng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi].
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Scalar small_rational(long max_abs = 9, long max_den = 9) {
        const long num = range(-max_abs, max_abs);
        const long den = range(1, max_den);
        return Scalar(Rational(num) / Rational(den));
    }

    Poly poly(int n, unsigned max_degree, int terms) {
        Poly p(n);
        for (int t = 0; t < terms; ++t) {
            Expo e(static_cast<size_t>(n), 0);
            unsigned budget = max_degree;
            for (int i = 0; i < n; ++i) {
                const unsigned d = static_cast<unsigned>(range(0, static_cast<long>(budget)));
                e[static_cast<size_t>(i)] = d;
                budget -= d;
            }
            p.add_term(e, small_rational());
        }
        return p;
    }

    Form form(int n, int k, unsigned max_coeff_degree, int terms_per_component) {
        Form f(n, k);
        for (const auto& idx : index_subsets(n, k)) {
            if (next() % 2 == 0) continue;
            f.add_component(idx, poly(n, max_coeff_degree, terms_per_component));
        }
        return f;
    }

    /// Random element of a row space: a random small-rational combination
    /// of the basis rows.
    Vec row_space_element(const Mat& basis_rows) {
        Vec v(basis_rows.cols());
        v.setConstant(Scalar(0));
        for (long i = 0; i < basis_rows.rows(); ++i) {
            const Scalar c = small_rational();
            if (c.is_zero()) continue;
            v += c * basis_rows.row(i).transpose();
        }
        return v;
    }

private:
    std::uint64_t state_;
};

} // namespace iforms
