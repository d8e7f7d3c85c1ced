#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iforms/prng.hpp"
#include "iforms/slots.hpp"

using namespace iforms;

namespace {

Form one_form(int n, int i, const Poly& coeff) {
    Form f(n, 1);
    f.add_component({i}, coeff);
    return f;
}

Form const_one_form(int n, int i) { return one_form(n, i, Poly::constant(n, Scalar(1))); }

GradedSubspace full_de_rham(int n, int w) {
    GradedSubspace sub;
    for (int k = 0; k <= n; ++k) {
        const long d = slot_dim(n, w, k);
        if (d > 0) sub.set({w, k}, identity(d));
    }
    return sub;
}

GradedMap de_rham_d(int n, int w) {
    return graded_operator(n, w, n, 0, 1, [](const Form& f) { return ext_d(f); });
}

} // namespace

TEST_CASE("slot dimensions and bases") {
    CHECK(slot_dim(2, 2, 1) == 4);  // {x,y} x {dx,dy}
    CHECK(slot_dim(3, 2, 1) == 9);
    CHECK(slot_dim(2, 1, 2) == 0);  // w < k
    CHECK(slot_dim(0, 0, 0) == 1);
    CHECK(slot_dim(0, 2, 0) == 0);
    const SlotBasis b(2, 2, 1);
    CHECK(b.dim() == 4);
    for (long i = 0; i < b.dim(); ++i) {
        const Form f = b.element_form(i);
        const Vec v = b.coordinates(f);
        for (long j = 0; j < b.dim(); ++j) CHECK(v(j) == (i == j ? Scalar(1) : Scalar(0)));
    }
}

TEST_CASE("span_from_forms examples") {
    const Form dx = const_one_form(2, 0), dy = const_one_form(2, 1);
    const GradedSubspace s1 = span_from_forms(2, {dx, dy});
    CHECK(s1.dim({1, 1}) == 2);

    const Form xdx = one_form(2, 0, Poly::variable(2, 0));
    const GradedSubspace s2 = span_from_forms(2, {xdx, Scalar(2) * xdx});
    CHECK(s2.dim({2, 1}) == 1);

    const GradedSubspace s3 = span_from_forms(2, {});
    CHECK(s3.slots().empty());
}

TEST_CASE("rref canonicity: reordering and rescaling do not change the basis") {
    Prng rng(3);
    for (int t = 0; t < 30; ++t) {
        std::vector<Form> forms;
        for (int i = 0; i < 4; ++i) forms.push_back(rng.form(2, 1, 3, 2));
        std::vector<Form> shuffled = {forms[2], forms[0], forms[3], forms[1]};
        for (Form& f : shuffled)
            if (rng.range(0, 1) == 1) f = Scalar(3) * f;
        const GradedSubspace a = span_from_forms(2, forms);
        const GradedSubspace b = span_from_forms(2, shuffled);
        CHECK(a.slots().size() == b.slots().size());
        for (const auto& [key, m] : a.slots()) {
            const Mat* other = b.slot(key);
            REQUIRE(other != nullptr);
            CHECK(m == *other);
        }
    }
}

TEST_CASE("sum and intersection examples") {
    const Form dx = const_one_form(2, 0), dy = const_one_form(2, 1);
    const GradedSubspace sx = span_from_forms(2, {dx});
    const GradedSubspace sy = span_from_forms(2, {dy});
    CHECK(sum(sx, sy).dim({1, 1}) == 2);

    const GradedSubspace both = span_from_forms(2, {dx, dy});
    const GradedSubspace diag = span_from_forms(2, {dx + dy});
    const GradedSubspace inter = intersect(both, diag);
    CHECK(inter.dim({1, 1}) == 1);
    CHECK(*inter.slot({1, 1}) == *diag.slot({1, 1}));
}

TEST_CASE("intersection of the two coordinate-axis ideals at weight 2 is span{xy}") {
    const Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    // ideal slices at degree 2: x-axis -> {y^2, xy}, y-axis -> {x^2, xy}
    const GradedSubspace ix = span_from_forms(2, {Form::from_poly(y * y), Form::from_poly(x * y)});
    const GradedSubspace iy = span_from_forms(2, {Form::from_poly(x * x), Form::from_poly(x * y)});
    const GradedSubspace inter = intersect(ix, iy);
    CHECK(inter.dim({2, 0}) == 1);
    CHECK(*inter.slot({2, 0}) == *span_from_forms(2, {Form::from_poly(x * y)}).slot({2, 0}));
}

TEST_CASE("dimension formula dim(a)+dim(b) = dim(a+b)+dim(a^b)") {
    Prng rng(5);
    for (int t = 0; t < 40; ++t) {
        std::vector<Form> fa, fb;
        for (int i = 0; i < 3; ++i) {
            fa.push_back(rng.form(2, 1, 2, 2));
            fb.push_back(rng.form(2, 1, 2, 2));
        }
        const GradedSubspace a = span_from_forms(2, fa), b = span_from_forms(2, fb);
        const GradedSubspace s = sum(a, b), i = intersect(a, b);
        for (const auto& [key, m] : s.slots())
            CHECK(a.dim(key) + b.dim(key) == s.dim(key) + i.dim(key));
    }
}

TEST_CASE("quotient_dim examples") {
    CHECK(quotient_dim(2, GradedSubspace(), 2, 1) == 4);
    GradedSubspace everything;
    everything.set({2, 1}, identity(4));
    CHECK(quotient_dim(2, everything, 2, 1) == 0);

    // 1-forms on (theta,x,y) at weight 2 modulo
    // {theta dtheta, x dtheta, y dtheta, x dtheta + theta dx, y dtheta + theta dy}
    const Poly th = Poly::variable(3, 0), x = Poly::variable(3, 1), y = Poly::variable(3, 2);
    std::vector<Form> denom = {
        one_form(3, 0, th), one_form(3, 0, x), one_form(3, 0, y),
        one_form(3, 0, x) + one_form(3, 1, th), one_form(3, 0, y) + one_form(3, 2, th)};
    CHECK(quotient_dim(3, span_from_forms(3, denom), 2, 1) == 4);
}

TEST_CASE("cohomology of the full polynomial de Rham complex") {
    // R^1: [1] at w = 0, [0,0] for w >= 1
    CHECK(cohomology_dims(full_de_rham(1, 0), de_rham_d(1, 0), 0, 1) == std::vector<long>{1, 0});
    for (int w = 1; w <= 5; ++w)
        CHECK(cohomology_dims(full_de_rham(1, w), de_rham_d(1, w), w, 1) == std::vector<long>{0, 0});

    // R^2 at w = 3
    CHECK(cohomology_dims(full_de_rham(2, 3), de_rham_d(2, 3), 3, 2) == std::vector<long>{0, 0, 0});

    // zero subspace
    CHECK(cohomology_dims(GradedSubspace(), de_rham_d(2, 3), 3, 2) == std::vector<long>{0, 0, 0});

    // exactness across n and w (polynomial Poincare lemma)
    for (int n = 1; n <= 3; ++n)
        for (int w = 1; w <= 6; ++w) {
            const auto h = cohomology_dims(full_de_rham(n, w), de_rham_d(n, w), w, n);
            for (long v : h) CHECK(v == 0);
        }
}

TEST_CASE("cohomology rejects a subcomplex the differential leaves") {
    // span{x^2} at (2,0) with span{x dy} at (2,1): d(x^2) = 2x dx escapes.
    const Poly x = Poly::variable(2, 0);
    GradedSubspace sub;
    sub.set({2, 0}, *span_from_forms(2, {Form::from_poly(x * x)}).slot({2, 0}));
    sub.set({2, 1}, *span_from_forms(2, {one_form(2, 1, x)}).slot({2, 1}));
    CHECK_THROWS_AS(cohomology_dims(sub, de_rham_d(2, 2), 2, 2), consistency_error);
}

TEST_CASE("quotient slot reduce/lift round trip and induced identity") {
    Prng rng(9);
    for (int t = 0; t < 20; ++t) {
        Mat denom = zero_matrix(2, 5);
        for (long i = 0; i < 2; ++i)
            for (long j = 0; j < 5; ++j) denom(i, j) = rng.small_rational(3, 2);
        const QuotientSlot q = QuotientSlot::make(5, denom);
        CHECK(q.qdim() == 5 - q.denom.rows());
        for (long j = 0; j < q.qdim(); ++j) {
            Vec unit(q.qdim());
            unit.setConstant(Scalar(0));
            unit(j) = Scalar(1);
            CHECK(q.reduce(q.lift(unit)) == unit);
        }
        // reducing a denominator row gives zero
        for (long i = 0; i < q.denom.rows(); ++i) {
            const Vec r = q.reduce(q.denom.row(i).transpose());
            for (long j = 0; j < r.size(); ++j) CHECK(r(j).is_zero());
        }
        const Mat ind = q.induced(identity(5), q);
        CHECK(ind == identity(q.qdim()));
    }
}

TEST_CASE("elimination works over an extension field") {
    // Q(s), s^2 = 2: the matrix [[1, s], [s, 2]] has rank 1
    const FieldPtr f = std::make_shared<ExtensionField>(std::vector<Rational>{-2, 0, 1});
    const Scalar s = Scalar::primitive(f);
    Mat m = zero_matrix(2, 2);
    m(0, 0) = Scalar(1);
    m(0, 1) = s;
    m(1, 0) = s;
    m(1, 1) = Scalar(2);
    CHECK(rank(m) == 1);
    const Mat k = kernel(m);
    REQUIRE(k.rows() == 1);
    const Vec prod = m * k.row(0).transpose();
    CHECK(prod(0).is_zero());
    CHECK(prod(1).is_zero());
    CHECK(determinant(m).is_zero());
    m(1, 1) = Scalar(3);
    CHECK(rank(m) == 2);
    CHECK(determinant(m) == Scalar(1));
}

TEST_CASE("exact elimination: ranks and kernels on random matrices") {
    Prng rng(15);
    for (int t = 0; t < 30; ++t) {
        Mat m = zero_matrix(4, 6);
        for (long i = 0; i < 4; ++i)
            for (long j = 0; j < 6; ++j) m(i, j) = rng.small_rational(5, 3);
        const long r = rank(m);
        const Mat k = kernel(m);
        CHECK(k.rows() == 6 - r);
        for (long i = 0; i < k.rows(); ++i) {
            const Vec prod = m * k.row(i).transpose();
            for (long j = 0; j < prod.size(); ++j) CHECK(prod(j).is_zero());
        }
        // rank is invariant under row recombination
        Mat m2 = m;
        m2.row(0) += Scalar(3) * m2.row(1);
        CHECK(rank(m2) == r);
    }
}
