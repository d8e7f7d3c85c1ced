#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iforms/form.hpp"
#include "iforms/prng.hpp"

using namespace iforms;

namespace {

Poly X(int n, int i) { return Poly::variable(n, i); }

Form one_form(int n, int i, const Poly& coeff) {
    Form f(n, 1);
    f.add_component({i}, coeff);
    return f;
}

Mat rotation90() {
    Mat r = zero_matrix(2, 2);
    r(0, 1) = Scalar(-1);
    r(1, 0) = Scalar(1);
    return r;
}

LinearVectorField rotation_field() {
    // x d/dy - y d/dx
    return LinearVectorField(rotation90());
}

// Independent oracle for the homotopy operator: pull the form back along
// (t, x) -> t x into an (n+1)-variable exterior algebra, take the dt part,
// and integrate the t powers over [0,1] exactly.
Form homotopy_integral_oracle(const Form& omega) {
    const int n = omega.ambient_dim();
    const int m = n + 1; // coordinate 0 is t
    Form pulled(m, omega.degree());
    for (const auto& [idx, p] : omega.components()) {
        // f(t x): every monomial picks up t^{|alpha|}
        Poly ft(m);
        for (const auto& [e, c] : p.terms()) {
            Expo shifted(static_cast<size_t>(m), 0);
            shifted[0] = total_degree(e);
            for (int i = 0; i < n; ++i) shifted[static_cast<size_t>(i + 1)] = e[static_cast<size_t>(i)];
            ft.add_term(shifted, c);
        }
        Form part = Form::from_poly(ft);
        for (int i : idx) {
            // d(t x_i) = t dx_i + x_i dt
            Form dtx(m, 1);
            dtx.add_component({i + 1}, X(m, 0));
            dtx.add_component({0}, X(m, i + 1));
            part = wedge(part, dtx);
        }
        pulled += part;
    }
    // dt-part: index sets starting with 0 (dt wedge rest, no sign needed
    // since 0 sorts first); integrate t^j -> 1/(j+1) and drop t.
    Form out(n, omega.degree() - 1);
    for (const auto& [idx, p] : pulled.components()) {
        if (idx.empty() || idx.front() != 0) continue;
        IdxSet rest;
        for (size_t i = 1; i < idx.size(); ++i) rest.push_back(idx[i] - 1);
        Poly integrated(n);
        for (const auto& [e, c] : p.terms()) {
            Expo back(static_cast<size_t>(n), 0);
            for (int i = 0; i < n; ++i) back[static_cast<size_t>(i)] = e[static_cast<size_t>(i + 1)];
            integrated.add_term(back, c / Scalar(static_cast<long>(e[0]) + 1));
        }
        out.add_component(rest, integrated);
    }
    return out;
}

} // namespace

TEST_CASE("wedge basics") {
    Form dx = one_form(2, 0, Poly::constant(2, Scalar(1)));
    Form dy = one_form(2, 1, Poly::constant(2, Scalar(1)));
    const Form w = wedge(dx, dy);
    CHECK(w.degree() == 2);
    CHECK(w.component({0, 1}) == Poly::constant(2, Scalar(1)));
    CHECK(wedge(dx, dx).is_zero());

    // graded commutativity in degree (1,1): a^b = -b^a
    Form a = one_form(3, 0, X(3, 1)); // x dtheta on (theta,x,y)
    Form b = one_form(3, 1, Poly::constant(3, Scalar(1)));
    CHECK(wedge(a, b) == Scalar(-1) * wedge(b, a));
}

TEST_CASE("wedge beyond the top degree is the zero form of that degree") {
    Form dx = one_form(1, 0, Poly::constant(1, Scalar(1)));
    const Form w = wedge(dx, dx);
    CHECK(w.degree() == 2);
    CHECK(w.is_zero());
}

TEST_CASE("exterior differential examples") {
    const Poly x2 = X(2, 0) * X(2, 0);
    const Form d1 = ext_d(Form::from_poly(x2));
    CHECK(d1 == one_form(2, 0, Scalar(2) * X(2, 0)));

    // d(theta x) = x dtheta + theta dx on (theta, x, y)
    const Form d2 = ext_d(Form::from_poly(X(3, 0) * X(3, 1)));
    Form expect(3, 1);
    expect.add_component({0}, X(3, 1));
    expect.add_component({1}, X(3, 0));
    CHECK(d2 == expect);
}

TEST_CASE("d squared vanishes on random forms") {
    Prng rng(13);
    for (int t = 0; t < 100; ++t) {
        const int n = static_cast<int>(rng.range(1, 3));
        const int k = static_cast<int>(rng.range(0, n));
        const Form f = rng.form(n, k, 4, 3);
        CHECK(ext_d(ext_d(f)).is_zero());
    }
}

TEST_CASE("contraction examples") {
    const LinearVectorField rot = rotation_field();
    Form dx = one_form(2, 0, Poly::constant(2, Scalar(1)));
    Form dy = one_form(2, 1, Poly::constant(2, Scalar(1)));

    // i_rot dx = -y
    CHECK(contract(rot, dx) == Form::from_poly(Scalar(-1) * X(2, 1)));
    // i_rot (x dx + y dy) = 0
    Form a = one_form(2, 0, X(2, 0)) + one_form(2, 1, X(2, 1));
    CHECK(contract(rot, a).is_zero());
    // i_E (dx ^ dy) = x dy - y dx
    const LinearVectorField euler = LinearVectorField::euler(2);
    const Form area = wedge(dx, dy);
    CHECK(contract(euler, area) == one_form(2, 1, X(2, 0)) - one_form(2, 0, X(2, 1)));

    CHECK_THROWS_AS(contract(rot, Form::from_poly(X(2, 0))), structural_error);
}

TEST_CASE("lie derivative examples") {
    const LinearVectorField euler = LinearVectorField::euler(2);
    const Form xdx = one_form(2, 0, X(2, 0));
    CHECK(lie_derivative(euler, xdx) == Scalar(2) * xdx);

    const LinearVectorField rot = rotation_field();
    const Poly r2 = X(2, 0) * X(2, 0) + X(2, 1) * X(2, 1);
    CHECK(lie_derivative(rot, Form::from_poly(r2)).is_zero());
    // L_rot dx = d(-y) = -dy
    Form dx = one_form(2, 0, Poly::constant(2, Scalar(1)));
    CHECK(lie_derivative(rot, dx) == Scalar(-1) * one_form(2, 1, Poly::constant(2, Scalar(1))));
}

TEST_CASE("lie derivative is a derivation of the wedge product") {
    Prng rng(17);
    for (int t = 0; t < 60; ++t) {
        Mat m = zero_matrix(2, 2);
        for (long i = 0; i < 2; ++i)
            for (long j = 0; j < 2; ++j) m(i, j) = rng.small_rational(3, 2);
        const LinearVectorField xi(m);
        const Form a = rng.form(2, 1, 3, 2);
        const Form b = rng.form(2, 0, 3, 2);
        const Form lhs = lie_derivative(xi, wedge(a, b));
        const Form rhs = wedge(lie_derivative(xi, a), b) + wedge(a, lie_derivative(xi, b));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("pullback examples and conventions") {
    const Form xdx = one_form(1, 0, X(1, 0));
    CHECK(pullback_linear(identity(1), xdx) == xdx);
    Mat neg = identity(1);
    neg(0, 0) = Scalar(-1);
    CHECK(pullback_linear(neg, xdx) == xdx); // (-x)(-dx) = x dx

    Form dx = one_form(2, 0, Poly::constant(2, Scalar(1)));
    Form dy = one_form(2, 1, Poly::constant(2, Scalar(1)));
    CHECK(pullback_linear(rotation90(), wedge(dx, dy)) == wedge(dx, dy));

    CHECK_THROWS_AS(pullback_linear(zero_matrix(2, 2), dx), structural_error);
}

TEST_CASE("pullback commutes with d and composes contravariantly") {
    Prng rng(23);
    for (int t = 0; t < 60; ++t) {
        Mat g = zero_matrix(2, 2), h = zero_matrix(2, 2);
        do {
            for (long i = 0; i < 2; ++i)
                for (long j = 0; j < 2; ++j) {
                    g(i, j) = rng.small_rational(3, 2);
                    h(i, j) = rng.small_rational(3, 2);
                }
        } while (determinant(g).is_zero() || determinant(h).is_zero());
        const Form f = rng.form(2, 1, 3, 2);
        CHECK(pullback_linear(g, ext_d(f)) == ext_d(pullback_linear(g, f)));
        // (gh)^* = h^* g^*
        CHECK(pullback_linear(Mat(g * h), f) == pullback_linear(h, pullback_linear(g, f)));
    }
}

TEST_CASE("homotopy operator matches the symbolic integral oracle") {
    // The closed form 1/(m+k) i_E must equal the integral of the homothety
    // pullback; the oracle computes that integral symbolically.
    Prng rng(29);
    for (int t = 0; t < 80; ++t) {
        const int n = static_cast<int>(rng.range(1, 3));
        const int k = static_cast<int>(rng.range(1, n));
        const Form f = rng.form(n, k, 4, 3);
        CHECK(poincare_homotopy(f) == homotopy_integral_oracle(f));
    }
}

TEST_CASE("homotopy operator examples") {
    Form dx = one_form(2, 0, Poly::constant(2, Scalar(1)));
    CHECK(poincare_homotopy(dx) == Form::from_poly(X(2, 0)));

    const Form rot_area = one_form(2, 1, X(2, 0)) - one_form(2, 0, X(2, 1)); // x dy - y dx
    CHECK(poincare_homotopy(rot_area).is_zero());

    const Form two_xdx = one_form(1, 0, Scalar(2) * X(1, 0));
    CHECK(poincare_homotopy(two_xdx) == Form::from_poly(X(1, 0) * X(1, 0)));

    CHECK_THROWS_AS(poincare_homotopy(Form::from_poly(X(1, 0))), structural_error);
}

TEST_CASE("homotopy identity on weight-homogeneous forms") {
    Prng rng(31);
    for (int t = 0; t < 80; ++t) {
        const int n = static_cast<int>(rng.range(1, 3));
        const int k = static_cast<int>(rng.range(1, n));
        const int w = static_cast<int>(rng.range(std::max(k, 1), 5));
        Form f(n, k);
        // random weight-homogeneous form: coefficients of degree w - k
        for (const auto& idx : index_subsets(n, k)) {
            Poly p(n);
            for (const auto& e : monomials_of_degree(n, static_cast<unsigned>(w - k)))
                p.add_term(e, rng.small_rational(4, 3));
            f.add_component(idx, p);
        }
        if (f.is_zero()) continue;
        const Form lhs = ext_d(poincare_homotopy(f)) +
                         (k < n ? poincare_homotopy(ext_d(f)) : Form(n, k));
        CHECK(lhs == f);
    }
    // functions: K(df) = f - f(0)
    for (int t = 0; t < 40; ++t) {
        const int n = static_cast<int>(rng.range(1, 3));
        const Poly p = rng.poly(n, 4, 4);
        const Form df = ext_d(Form::from_poly(p));
        const Form recovered = df.is_zero() ? Form(n, 0) : poincare_homotopy(df);
        Form expect = Form::from_poly(p - Poly::constant(n, p.value_at_origin()));
        CHECK(recovered == expect);
    }
}

TEST_CASE("graded commutativity on random forms") {
    Prng rng(37);
    for (int t = 0; t < 60; ++t) {
        const int n = 3;
        const int ka = static_cast<int>(rng.range(0, 2)), kb = static_cast<int>(rng.range(0, 2));
        const Form a = rng.form(n, ka, 3, 2), b = rng.form(n, kb, 3, 2);
        Form rhs = wedge(b, a);
        if ((ka * kb) % 2 == 1) rhs = Scalar(-1) * rhs;
        CHECK(wedge(a, b) == rhs);
    }
}

TEST_CASE("Leibniz rule on random forms") {
    Prng rng(41);
    for (int t = 0; t < 60; ++t) {
        const int n = 3;
        const int ka = static_cast<int>(rng.range(0, 2)), kb = static_cast<int>(rng.range(0, 1));
        const Form a = rng.form(n, ka, 3, 2), b = rng.form(n, kb, 3, 2);
        Form rhs = wedge(ext_d(a), b);
        Form second = wedge(a, ext_d(b));
        if (ka % 2 == 1) second = Scalar(-1) * second;
        rhs += second;
        CHECK(ext_d(wedge(a, b)) == rhs);
    }
}

TEST_CASE("weight grading is preserved by d and contraction") {
    Prng rng(43);
    for (int t = 0; t < 40; ++t) {
        const Form f = rng.form(2, 1, 3, 2);
        for (const auto& [w, piece] : f.weight_components()) {
            int wd = 0;
            CHECK(piece.is_weight_homogeneous(&wd));
            CHECK(wd == w);
            const Form df = ext_d(piece);
            if (!df.is_zero()) {
                CHECK(df.is_weight_homogeneous(&wd));
                CHECK(wd == w);
            }
            const Form cf = contract(LinearVectorField::euler(2), piece);
            if (!cf.is_zero()) {
                CHECK(cf.is_weight_homogeneous(&wd));
                CHECK(wd == w);
            }
        }
    }
}

TEST_CASE("forms round-trip through the JSON wire format") {
    Prng rng(47);
    for (int t = 0; t < 30; ++t) {
        const int n = static_cast<int>(rng.range(1, 3));
        const int k = static_cast<int>(rng.range(0, n));
        const Form f = rng.form(n, k, 3, 3);
        const Form back = form_from_json(form_to_json(f), n, k, nullptr);
        CHECK(back == f);
    }
    // the wire format carries indices and exponent-keyed scalar strings
    Form xdx = one_form(2, 0, X(2, 0));
    const auto j = form_to_json(xdx);
    CHECK(j.size() == 1);
    CHECK(j[0]["indices"][0].get<int>() == 0);
    CHECK(j[0]["coefficient"]["1,0"].get<std::string>() == "1");
}

TEST_CASE("fiber homotopy treats non-fiber coordinates as parameters") {
    // On (theta, x, y) with fiber {x, y}: K(theta^a x^alpha dx_I) scales by
    // the fiber content only, and kills fiber-free terms.
    const std::vector<bool> fiber{false, true, true};
    Form thdx = one_form(3, 1, X(3, 0)); // theta dx
    const Form k1 = fiber_homotopy(thdx, fiber);
    CHECK(k1 == Form::from_poly(X(3, 0) * X(3, 1))); // theta x

    Form thdth = one_form(3, 0, X(3, 0)); // theta dtheta: no fiber content
    CHECK(fiber_homotopy(thdth, fiber).is_zero());

    // restriction to the fiber origin keeps pure parameter terms
    const Form mixed = Form::from_poly(X(3, 0) * X(3, 0) + X(3, 0) * X(3, 1));
    CHECK(fiber_restrict_to_origin(mixed, fiber) == Form::from_poly(X(3, 0) * X(3, 0)));
}
