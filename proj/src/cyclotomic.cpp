#include "equivect/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace equivect {

namespace {

/// Polynomial division (exact, monic divisor): returns quotient of a / b.
std::vector<Rational> polyDivExact(std::vector<Rational> a, const std::vector<Rational>& b) {
    std::vector<Rational> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    for (int i = static_cast<int>(a.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
        Rational c = a[i] / b.back();
        q[i - (b.size() - 1)] = c;
        if (c != Rational(0))
            for (size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= c * b[j];
    }
    return q;
}

}  // namespace

int Cyclotomic::eulerPhi(int n) {
    int result = n;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    if (n > 1) result -= result / n;
    return result;
}

const std::vector<Rational>& Cyclotomic::cycloPoly(int n) {
    static std::map<int, std::vector<Rational>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.  Fill the cache for every
    // divisor of n in one ascending pass: each Phi_d only needs strictly
    // smaller divisors of d (which also divide n), so they are already cached
    // when d is reached.  No recursion, so the lock is taken exactly once.
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0 || cache.count(d)) continue;
        std::vector<Rational> num(d + 1, Rational(0));
        num[0] = Rational(-1);
        num[d] = Rational(1);
        for (int e = 1; e < d; ++e)
            if (d % e == 0) num = polyDivExact(std::move(num), cache.at(e));
        cache[d] = std::move(num);
    }
    return cache.at(n);
}

std::vector<Rational> Cyclotomic::reduceMod(std::vector<Rational> poly, int n) {
    const auto& phi = cycloPoly(n);
    int deg = static_cast<int>(phi.size()) - 1;
    for (int i = static_cast<int>(poly.size()) - 1; i >= deg; --i)
        if (poly[i] != Rational(0)) {
            Rational c = poly[i];
            for (int j = 0; j <= deg; ++j) poly[i - deg + j] -= c * phi[j];
        }
    poly.resize(deg, Rational(0));
    return poly;
}

Cyclotomic::Cyclotomic() : order_(1), coeff_(1, Rational(0)) {}
Cyclotomic::Cyclotomic(const Rational& q) : order_(1), coeff_(1, q) {}

Cyclotomic Cyclotomic::zero(int order) { return Cyclotomic(order, std::vector<Rational>(eulerPhi(order), Rational(0))); }

Cyclotomic Cyclotomic::one(int order) {
    auto c = std::vector<Rational>(eulerPhi(order), Rational(0));
    c[0] = Rational(1);
    return Cyclotomic(order, std::move(c));
}

Cyclotomic Cyclotomic::root(int order, long long exp) {
    long long e = modll(exp, order);
    std::vector<Rational> poly(e + 1, Rational(0));
    poly[e] = Rational(1);
    return Cyclotomic(order, reduceMod(std::move(poly), order));
}

Cyclotomic Cyclotomic::cos2(int order, long long k) { return root(order, k) + root(order, -k); }

Cyclotomic Cyclotomic::lifted(int newOrder) const {
    if (newOrder == order_) return *this;
    if (newOrder % order_ != 0) throw std::invalid_argument("Cyclotomic::lifted: order must divide target");
    int step = newOrder / order_;
    std::vector<Rational> poly(static_cast<size_t>((degree() - 1) * step + 1), Rational(0));
    for (int i = 0; i < degree(); ++i) poly[static_cast<size_t>(i) * step] = coeff_[i];
    return Cyclotomic(newOrder, reduceMod(std::move(poly), newOrder));
}

Cyclotomic Cyclotomic::galois(long long j) const {
    long long jj = modll(j, order_);
    if (std::gcd(jj, static_cast<long long>(order_)) != 1)
        throw std::invalid_argument("Cyclotomic::galois: exponent not coprime to order");
    std::vector<Rational> poly(static_cast<size_t>(order_), Rational(0));
    for (int i = 0; i < degree(); ++i) poly[static_cast<size_t>(modll(static_cast<long long>(i) * jj, order_))] += coeff_[i];
    return Cyclotomic(order_, reduceMod(std::move(poly), order_));
}

bool Cyclotomic::isZero() const {
    for (const auto& c : coeff_)
        if (c != Rational(0)) return false;
    return true;
}

bool Cyclotomic::isRational() const {
    for (size_t i = 1; i < coeff_.size(); ++i)
        if (coeff_[i] != Rational(0)) return false;
    return true;
}

Rational Cyclotomic::asRational() const {
    if (!isRational()) throw std::domain_error("Cyclotomic::asRational: value is irrational");
    return coeff_[0];
}

Cyclotomic operator+(const Cyclotomic& x, const Cyclotomic& y) {
    int L = std::lcm(x.order_, y.order_);
    Cyclotomic a = x.lifted(L), b = y.lifted(L);
    for (int i = 0; i < a.degree(); ++i) a.coeff_[i] += b.coeff_[i];
    return a;
}

Cyclotomic operator-(const Cyclotomic& x, const Cyclotomic& y) { return x + (-y); }

Cyclotomic operator-(const Cyclotomic& x) {
    Cyclotomic r = x;
    for (auto& c : r.coeff_) c = -c;
    return r;
}

Cyclotomic operator*(const Cyclotomic& x, const Cyclotomic& y) {
    int L = std::lcm(x.order_, y.order_);
    Cyclotomic a = x.lifted(L), b = y.lifted(L);
    std::vector<Rational> poly(static_cast<size_t>(a.degree() + b.degree()), Rational(0));
    for (int i = 0; i < a.degree(); ++i) {
        if (a.coeff_[i] == Rational(0)) continue;
        for (int j = 0; j < b.degree(); ++j) poly[static_cast<size_t>(i + j)] += a.coeff_[i] * b.coeff_[j];
    }
    return Cyclotomic(L, Cyclotomic::reduceMod(std::move(poly), L));
}

Cyclotomic operator*(const Rational& c, const Cyclotomic& x) {
    Cyclotomic r = x;
    for (auto& v : r.coeff_) v *= c;
    return r;
}

bool operator==(const Cyclotomic& x, const Cyclotomic& y) {
    int L = std::lcm(x.order_, y.order_);
    return x.lifted(L).coeff_ == y.lifted(L).coeff_;
}

std::complex<double> Cyclotomic::toComplex() const {
    std::complex<double> s{0.0, 0.0};
    const double tau = 6.283185307179586476925286766559;
    for (int i = 0; i < degree(); ++i) {
        if (coeff_[i] == Rational(0)) continue;
        double c = boost::rational_cast<double>(coeff_[i]);
        s += c * std::exp(std::complex<double>(0.0, tau * i / order_));
    }
    return s;
}

std::string Cyclotomic::str() const {
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < degree(); ++i) {
        if (coeff_[i] == Rational(0)) continue;
        if (!first) out << " + ";
        out << ratStr(coeff_[i]);
        if (i > 0) out << "*z^" << i;
        first = false;
    }
    if (first) out << "0";
    out << "; " << order_;
    return out.str();
}

Cyclotomic Cyclotomic::parse(const std::string& text) {
    auto semi = text.rfind(';');
    if (semi == std::string::npos) throw std::invalid_argument("Cyclotomic::parse: missing order");
    int order = std::stoi(text.substr(semi + 1));
    Cyclotomic result = Cyclotomic::zero(order);
    std::string body = text.substr(0, semi);
    size_t pos = 0;
    while (pos < body.size()) {
        size_t next = body.find(" + ", pos);
        std::string term = body.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = next == std::string::npos ? body.size() : next + 3;
        // term: "<rat>" or "<rat>*z^<k>"
        long long expn = 0;
        std::string ratPart = term;
        auto star = term.find("*z^");
        if (star != std::string::npos) {
            expn = std::stoll(term.substr(star + 3));
            ratPart = term.substr(0, star);
        }
        long long num = 0, den = 1;
        auto slash = ratPart.find('/');
        if (slash != std::string::npos) {
            num = std::stoll(ratPart.substr(0, slash));
            den = std::stoll(ratPart.substr(slash + 1));
        } else {
            num = std::stoll(ratPart);
        }
        result = result + Rational(num, den) * Cyclotomic::root(order, expn);
    }
    return result;
}

}  // namespace equivect
