/// Exact cyclotomic arithmetic: elements of Q(zeta_N) represented by their
/// canonical reduction modulo the N-th cyclotomic polynomial.  Used for all
/// character values and inner products, so orthogonality and multiplicity
/// computations are exact.
#pragma once

#include <complex>
#include <string>
#include <vector>

#include "equivect/numeric.hpp"

namespace equivect {

class Cyclotomic {
  public:
    /// Zero of order 1 (the rational 0).
    Cyclotomic();
    /// The rational q viewed in Q(zeta_1).
    explicit Cyclotomic(const Rational& q);

    static Cyclotomic zero(int order);
    static Cyclotomic one(int order);
    /// zeta_order^exp.
    static Cyclotomic root(int order, long long exp);
    /// 2*cos(2*pi*k/order) = zeta^k + zeta^-k.
    static Cyclotomic cos2(int order, long long k);

    int order() const { return order_; }
    /// Degree phi(order): number of stored coefficients.
    int degree() const { return static_cast<int>(coeff_.size()); }
    const std::vector<Rational>& coefficients() const { return coeff_; }

    Cyclotomic lifted(int newOrder) const;  ///< Embed into Q(zeta_M), order | M.
    Cyclotomic galois(long long j) const;   ///< zeta -> zeta^j, gcd(j, order) = 1.
    Cyclotomic conj() const { return galois(-1); }

    bool isZero() const;
    bool isRational() const;
    Rational asRational() const;  ///< Requires isRational().

    friend Cyclotomic operator+(const Cyclotomic& x, const Cyclotomic& y);
    friend Cyclotomic operator-(const Cyclotomic& x, const Cyclotomic& y);
    friend Cyclotomic operator*(const Cyclotomic& x, const Cyclotomic& y);
    friend Cyclotomic operator*(const Rational& c, const Cyclotomic& x);
    friend Cyclotomic operator-(const Cyclotomic& x);
    friend bool operator==(const Cyclotomic& x, const Cyclotomic& y);
    friend bool operator!=(const Cyclotomic& x, const Cyclotomic& y) { return !(x == y); }

    std::complex<double> toComplex() const;

    /// Serialization grammar: "q0 + q1*z^1 + ...; N" (nonzero terms only,
    /// increasing exponents; plain "0; N" for zero).
    std::string str() const;
    static Cyclotomic parse(const std::string& text);

    static int eulerPhi(int n);

  private:
    int order_;
    std::vector<Rational> coeff_;  // coeff_[i] multiplies zeta^i, size phi(order_)

    static const std::vector<Rational>& cycloPoly(int n);  // monic Phi_n
    static std::vector<Rational> reduceMod(std::vector<Rational> poly, int n);
    Cyclotomic(int order, std::vector<Rational> coeff) : order_(order), coeff_(std::move(coeff)) {}
};

}  // namespace equivect
