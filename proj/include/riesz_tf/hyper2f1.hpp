#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace riesz_tf {

// Digamma function for x > 0: recurrence up to x >= 6, then the
// asymptotic series.
inline double digamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("digamma: x must be positive");
    double s = 0.0;
    while (x < 12.0) {
        s -= 1.0 / x;
        x += 1.0;
    }
    const double r = 1.0 / x, r2 = r * r;
    s += std::log(x) - 0.5 * r -
         r2 * (1.0 / 12.0 -
               r2 * (1.0 / 120.0 -
                     r2 * (1.0 / 252.0 - r2 * (1.0 / 240.0 - r2 / 132.0))));
    return s;
}

// Gamma(x) with the correct sign for negative non-integer x.
inline double gamma_real(double x) {
    if (x > 0.0)
        return std::exp(std::lgamma(x));
    if (x == std::floor(x))
        throw std::domain_error("gamma_real: pole at nonpositive integer");
    // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x))
    return std::numbers::pi /
           (std::sin(std::numbers::pi * x) * std::exp(std::lgamma(1.0 - x)));
}

// 1/Gamma(x); zero at the poles x = 0, -1, -2, ...
inline double rgamma(double x) {
    if (x > 0.0)
        return std::exp(-std::lgamma(x));
    if (x == std::floor(x))
        return 0.0;
    // reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
    return std::exp(std::lgamma(1.0 - x)) * std::sin(std::numbers::pi * x) /
           std::numbers::pi;
}

namespace detail2f1 {

constexpr int kMaxTerms = 2000;
constexpr double kEps = 1e-16;

// Power series sum_{n} (a)_n (b)_n / ((c)_n n!) z^n; converges for |z| < 1,
// used directly for z <= 1/2 and as the independent cross-check elsewhere.
inline double series(double a, double b, double c, double z) {
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (std::abs(term) < kEps * (std::abs(sum) + 1.0) && n > 2)
            return sum;
    }
    if (std::abs(term) > 1e-10 * std::abs(sum))
        throw std::domain_error("gauss_2f1: series did not converge");
    return sum;
}

inline bool nonpositive_int(double x) {
    return x <= 0.0 && std::abs(x - std::round(x)) < 1e-12;
}

// Linear z -> 1-z transformation, c-a-b not an integer.
inline double at_one_generic(double a, double b, double c, double w, double s) {
    // s = c-a-b, w = 1-z
    const double c1 = std::exp(std::lgamma(c)) * gamma_real(s) * rgamma(c - a) * rgamma(c - b);
    const double c2 = std::exp(std::lgamma(c)) * gamma_real(-s) * rgamma(a) * rgamma(b);
    return c1 * series(a, b, 1.0 - s, w) + c2 * std::pow(w, s) * series(c - a, c - b, 1.0 + s, w);
}

// Logarithmic case c = a+b (DLMF 15.8.10).
inline double at_one_log0(double a, double b, double c, double w) {
    const double pre = std::exp(std::lgamma(c)) * rgamma(a) * rgamma(b);
    const double lw = std::log(w);
    double pa = digamma(a), pb = digamma(b), pn = digamma(1.0);
    double coef = 1.0, sum = 0.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        double term = coef * (2.0 * pn - pa - pb - lw);
        sum += term;
        if (std::abs(term) < kEps * (std::abs(sum) + 1.0) && n > 2)
            break;
        coef *= (a + n) * (b + n) / ((n + 1.0) * (n + 1.0)) * w;
        pa += 1.0 / (a + n);
        pb += 1.0 / (b + n);
        pn += 1.0 / (n + 1.0);
    }
    return pre * sum;
}

// Logarithmic case c = a+b-m, m >= 1 (DLMF 15.8.8).
inline double at_one_logm(double a, double b, double c, double w, int m) {
    const double lw = std::log(w);
    // finite singular part, coefficients (a-m)_n (b-m)_n / (n! (1-m)_n)
    double fin = 0.0;
    {
        double coef = 1.0;
        for (int n = 0; n < m; ++n) {
            fin += coef * std::pow(w, n - m);
            coef *= (a - m + n) * (b - m + n) / ((1.0 - m + n) * (n + 1.0));
        }
    }
    fin *= std::exp(std::lgamma(m) + std::lgamma(c)) * rgamma(a) * rgamma(b);

    // log series
    double pa = digamma(a), pb = digamma(b);
    double pn = digamma(1.0), pnm = digamma(m + 1.0);
    double lfac = std::lgamma(m + 1.0);
    double coef = std::exp(-lfac); // (a)_n (b)_n / (n! (n+m)!) at n=0
    double sum = 0.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        double term = coef * (lw - pn - pnm + pa + pb);
        sum += term;
        if (std::abs(term) < kEps * (std::abs(sum) + 1.0) && n > 2)
            break;
        coef *= (a + n) * (b + n) / ((n + 1.0) * (n + 1.0 + m)) * w;
        pa += 1.0 / (a + n);
        pb += 1.0 / (b + n);
        pn += 1.0 / (n + 1.0);
        pnm += 1.0 / (n + 1.0 + m);
    }
    const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
    fin -= sgn * std::exp(std::lgamma(c)) * rgamma(a - m) * rgamma(b - m) * sum;
    return fin;
}

} // namespace detail2f1

// Gauss hypergeometric 2F1(a,b;c;z) for real z in [0,1): direct series for
// z <= 1/2, the z -> 1-z connection formulas above. Target accuracy 1e-10
// relative away from parameter degeneracies.
inline double gauss_2f1(double a, double b, double c, double z) {
    using namespace detail2f1;
    if (nonpositive_int(c))
        throw std::domain_error("gauss_2f1: c is a nonpositive integer");
    if (z < 0.0 || z >= 1.0)
        throw std::domain_error("gauss_2f1: z must lie in [0,1)");
    if (nonpositive_int(a) || nonpositive_int(b))
        return series(a, b, c, z); // terminating polynomial
    if (z <= 0.5)
        return series(a, b, c, z);
    const double s = c - a - b;
    const double w = 1.0 - z;
    const double srnd = std::round(s);
    if (std::abs(s - srnd) < 1e-9) {
        int m = int(-srnd);
        if (m == 0)
            return at_one_log0(a, b, c, w);
        if (m > 0)
            return at_one_logm(a, b, c, w, m);
        // c-a-b a positive integer: swap roles via (a,b) -> (c-a,c-b)
        // using Euler's transformation F = (1-z)^s F(c-a,c-b;c;z).
        return std::pow(w, s) * gauss_2f1(c - a, c - b, c, z);
    }
    return at_one_generic(a, b, c, w, s);
}

// Cached evaluator for repeated calls at fixed (a,b,c); avoids the per-call
// gamma-function setup inside kernel assembly loops.
class Hyp2F1 {
  public:
    Hyp2F1(double a, double b, double c) : a_(a), b_(b), c_(c) {
        using namespace detail2f1;
        if (nonpositive_int(c))
            throw std::domain_error("Hyp2F1: c is a nonpositive integer");
        terminating_ = nonpositive_int(a) || nonpositive_int(b);
        s_ = c - a - b;
        const double srnd = std::round(s_);
        integer_case_ = std::abs(s_ - srnd) < 1e-9;
        m_ = integer_case_ ? int(-srnd) : 0;
        if (!terminating_) {
            if (!integer_case_) {
                c1_ = std::exp(std::lgamma(c)) * gamma_real(s_) * rgamma(c - a) * rgamma(c - b);
                c2_ = std::exp(std::lgamma(c)) * gamma_real(-s_) * rgamma(a) * rgamma(b);
            }
        }
    }

    double operator()(double z) const {
        using namespace detail2f1;
        if (z < 0.0 || z >= 1.0)
            throw std::domain_error("Hyp2F1: z must lie in [0,1)");
        if (terminating_ || z <= 0.5)
            return series(a_, b_, c_, z);
        const double w = 1.0 - z;
        if (!integer_case_)
            return c1_ * series(a_, b_, 1.0 - s_, w) +
                   c2_ * std::pow(w, s_) * series(c_ - a_, c_ - b_, 1.0 + s_, w);
        if (m_ == 0)
            return at_one_log0(a_, b_, c_, w);
        if (m_ > 0)
            return at_one_logm(a_, b_, c_, w, m_);
        return std::pow(w, s_) * gauss_2f1(c_ - a_, c_ - b_, c_, z);
    }

    // Coefficient K of the leading singular behaviour as z -> 1-:
    // 2F1 ~ K (1-z)^{c-a-b} when c-a-b < 0 (K = Gamma(c)Gamma(a+b-c)/(Gamma(a)Gamma(b))),
    // 2F1 ~ -K log(1-z) when c-a-b = 0.
    double singular_coefficient() const {
        if (integer_case_ && m_ == 0)
            return std::exp(std::lgamma(c_)) * rgamma(a_) * rgamma(b_);
        if (integer_case_)
            return std::exp(std::lgamma(m_) + std::lgamma(c_)) * rgamma(a_) * rgamma(b_);
        return std::exp(std::lgamma(c_)) * gamma_real(-s_) * rgamma(a_) * rgamma(b_);
    }

    double exponent_at_one() const { return s_; }

  private:
    double a_, b_, c_, s_ = 0.0;
    double c1_ = 0.0, c2_ = 0.0;
    bool terminating_ = false, integer_case_ = false;
    int m_ = 0;
};

} // namespace riesz_tf
