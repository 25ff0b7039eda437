#include "doctest.h"

#include <cmath>
#include <complex>

#include "equivect/cyclotomic.hpp"
#include "equivect/errors.hpp"

using equivect::Cyclotomic;
using equivect::Rational;

namespace {

bool closeTo(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) < 1e-12;
}

}  // namespace

TEST_CASE("rational embedding and zero/one") {
    Cyclotomic z;
    CHECK(z.isZero());
    CHECK(z.isRational());
    CHECK(z.asRational() == Rational(0));

    Cyclotomic q(Rational(3, 4));
    CHECK(q.isRational());
    CHECK(q.asRational() == Rational(3, 4));

    CHECK(Cyclotomic::zero(12).isZero());
    CHECK(Cyclotomic::one(12).isRational());
    CHECK(Cyclotomic::one(12).asRational() == Rational(1));
    CHECK(Cyclotomic::zero(12).order() == 12);
    CHECK(Cyclotomic::one(7).degree() == 6);
}

TEST_CASE("roots of unity satisfy their defining relations") {
    // zeta_n^n = 1 for several orders, including non-prime ones.
    for (int n : {1, 2, 3, 4, 5, 6, 8, 9, 12, 15}) {
        Cyclotomic z = Cyclotomic::root(n, 1);
        Cyclotomic p = Cyclotomic::one(n);
        for (int i = 0; i < n; ++i) p = p * z;
        CHECK(p == Cyclotomic::one(n));
        CHECK(Cyclotomic::root(n, n) == Cyclotomic::one(n));
        CHECK(Cyclotomic::root(n, -1) == Cyclotomic::root(n, n - 1));
    }
    // Sum of all n-th roots of unity vanishes for n > 1.
    for (int n : {2, 3, 4, 5, 6, 8, 12}) {
        Cyclotomic s = Cyclotomic::zero(n);
        for (int k = 0; k < n; ++k) s = s + Cyclotomic::root(n, k);
        CHECK(s.isZero());
    }
}

TEST_CASE("degree equals Euler phi") {
    CHECK(Cyclotomic::eulerPhi(1) == 1);
    CHECK(Cyclotomic::eulerPhi(2) == 1);
    CHECK(Cyclotomic::eulerPhi(6) == 2);
    CHECK(Cyclotomic::eulerPhi(8) == 4);
    CHECK(Cyclotomic::eulerPhi(9) == 6);
    CHECK(Cyclotomic::eulerPhi(12) == 4);
    CHECK(Cyclotomic::eulerPhi(60) == 16);
    for (int n : {3, 4, 5, 8, 12, 20}) {
        CHECK(Cyclotomic::root(n, 1).degree() == Cyclotomic::eulerPhi(n));
    }
}

TEST_CASE("cos2 identities") {
    // 2cos(0) = 2, 2cos(pi) = -2.
    CHECK(Cyclotomic::cos2(5, 0) == Cyclotomic(Rational(2)).lifted(5));
    CHECK(Cyclotomic::cos2(2, 1).isRational());
    CHECK(Cyclotomic::cos2(2, 1).asRational() == Rational(-2));
    // 2cos(2pi/6) = 1, 2cos(2pi/4) = 0.
    CHECK(Cyclotomic::cos2(6, 1).asRational() == Rational(1));
    CHECK(Cyclotomic::cos2(4, 1).isZero());
    // Golden-ratio relation: x = 2cos(2pi/5) satisfies x^2 + x - 1 = 0.
    Cyclotomic x = Cyclotomic::cos2(5, 1);
    Cyclotomic rel = x * x + x - Cyclotomic::one(5);
    CHECK(rel.isZero());
    // cos2 is invariant under k -> -k.
    CHECK(Cyclotomic::cos2(7, 3) == Cyclotomic::cos2(7, -3));
}

TEST_CASE("ring arithmetic in mixed orders") {
    Cyclotomic a = Cyclotomic::root(4, 1);   // i
    Cyclotomic b = Cyclotomic::root(6, 1);
    // (i)^2 = -1 even after lifting through a product with order-6 values.
    Cyclotomic minusOne = a * a;
    CHECK(minusOne.isRational());
    CHECK(minusOne.asRational() == Rational(-1));
    Cyclotomic prod = a * b;  // lives in Q(zeta_12)
    CHECK(prod.order() == 12);
    CHECK(prod == Cyclotomic::root(12, 3) * Cyclotomic::root(12, 2));
    CHECK(closeTo(prod.toComplex(), a.toComplex() * b.toComplex()));

    Cyclotomic s = a + b - b;
    CHECK(s == a.lifted(12));
    CHECK(Rational(2, 3) * Cyclotomic::one(5) == Cyclotomic(Rational(2, 3)).lifted(5));
    CHECK(-a == Cyclotomic::root(4, 3));
}

TEST_CASE("galois action and conjugation") {
    Cyclotomic z = Cyclotomic::root(5, 1);
    CHECK(z.galois(2) == Cyclotomic::root(5, 2));
    CHECK(z.galois(2).galois(3) == z.galois(6));  // composition multiplies exponents
    CHECK(z.conj() == Cyclotomic::root(5, 4));
    // z * conj(z) = 1 for a root of unity.
    CHECK(z * z.conj() == Cyclotomic::one(5));
    // Conjugation fixes the real combination z + z^-1.
    Cyclotomic real = z + z.conj();
    CHECK(real.conj() == real);
    CHECK(real == Cyclotomic::cos2(5, 1));
}

TEST_CASE("toComplex matches the analytic root") {
    for (int n : {3, 5, 8, 12}) {
        for (int k = 0; k < n; ++k) {
            double ang = 2.0 * M_PI * k / n;
            CHECK(closeTo(Cyclotomic::root(n, k).toComplex(), {std::cos(ang), std::sin(ang)}));
        }
    }
}

TEST_CASE("string round trip") {
    std::vector<Cyclotomic> samples = {
        Cyclotomic(),
        Cyclotomic(Rational(-7, 3)),
        Cyclotomic::root(12, 5),
        Cyclotomic::cos2(5, 2),
        Cyclotomic::root(8, 1) + Rational(1, 2) * Cyclotomic::root(8, 3),
        -Cyclotomic::one(9),
    };
    for (const auto& c : samples) {
        CHECK(Cyclotomic::parse(c.str()) == c);
    }
    CHECK(Cyclotomic::zero(6).str() == "0; 6");
    CHECK(Cyclotomic::parse("0; 6").isZero());
    CHECK(Cyclotomic::parse("1/2 + -1*z^1; 4") ==
          Cyclotomic(Rational(1, 2)).lifted(4) - Cyclotomic::root(4, 1));
}

TEST_CASE("character-style orthogonality sum is exact") {
    // Sum over the cyclic group of order n of chi_j(g) * conj(chi_k(g)) is
    // n when j == k and 0 otherwise; this is the workhorse inner product.
    int n = 12;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            Cyclotomic s = Cyclotomic::zero(n);
            for (int g = 0; g < n; ++g) {
                s = s + Cyclotomic::root(n, j * g) * Cyclotomic::root(n, k * g).conj();
            }
            if (j == k) {
                CHECK(s.asRational() == Rational(n));
            } else {
                CHECK(s.isZero());
            }
        }
    }
}
