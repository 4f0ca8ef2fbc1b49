#pragma once

#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <utility>

#include "rosa/errors.hpp"

namespace rosa {

enum class Ordering { Less, Equal, Greater };

namespace detail {

// Minimal RAII wrapper around mpfr_t.
class Mp {
  public:
    explicit Mp(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    Mp(const Mp&) = delete;
    Mp& operator=(const Mp&) = delete;
    Mp(Mp&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Mp& operator=(Mp&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Mp() { mpfr_clear(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

  private:
    mpfr_t v_;
};

// Closed interval [lo, hi] with outward rounding.
struct Interval {
    Mp lo, hi;

    explicit Interval(mpfr_prec_t prec) : lo(prec), hi(prec) {}

    static Interval whole(mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_inf(r.lo.get(), -1);
        mpfr_set_inf(r.hi.get(), +1);
        return r;
    }

    bool contains_zero() const {
        return mpfr_sgn(lo.get()) <= 0 && mpfr_sgn(hi.get()) >= 0;
    }
};

inline Interval iv_rational(long long num, long long den, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo.get(), num, MPFR_RNDD);
    mpfr_div_si(r.lo.get(), r.lo.get(), den, MPFR_RNDD);
    mpfr_set_si(r.hi.get(), num, MPFR_RNDU);
    mpfr_div_si(r.hi.get(), r.hi.get(), den, MPFR_RNDU);
    return r;
}

// cos(j*pi/n) with 0 < j/n < 1 and j/n not a monotonicity breakpoint
// (integer multiples of pi are normalized away by the caller), so cos is
// decreasing on the whole enclosure once it is tight enough.
inline Interval iv_cos_pi(long long j, long long n, mpfr_prec_t prec) {
    Mp pi(prec + 8), tlo(prec + 8), thi(prec + 8);
    mpfr_const_pi(pi.get(), MPFR_RNDD);
    mpfr_mul_si(tlo.get(), pi.get(), j, MPFR_RNDD);
    mpfr_div_si(tlo.get(), tlo.get(), n, MPFR_RNDD);
    mpfr_const_pi(pi.get(), MPFR_RNDU);
    mpfr_mul_si(thi.get(), pi.get(), j, MPFR_RNDU);
    mpfr_div_si(thi.get(), thi.get(), n, MPFR_RNDU);
    Interval r(prec);
    mpfr_cos(r.lo.get(), thi.get(), MPFR_RNDD);
    mpfr_cos(r.hi.get(), tlo.get(), MPFR_RNDU);
    if (mpfr_cmp(r.lo.get(), r.hi.get()) > 0) mpfr_swap(r.lo.get(), r.hi.get());
    return r;
}

inline Interval iv_add(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_add(r.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
    mpfr_add(r.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
    return r;
}

inline Interval iv_sub(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_sub(r.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
    mpfr_sub(r.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
    return r;
}

inline Interval iv_neg(const Interval& a, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_neg(r.lo.get(), a.hi.get(), MPFR_RNDD);
    mpfr_neg(r.hi.get(), a.lo.get(), MPFR_RNDU);
    return r;
}

inline Interval iv_mul(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    Interval r(prec);
    Mp t(prec);
    mpfr_set_inf(r.lo.get(), +1);
    mpfr_set_inf(r.hi.get(), -1);
    mpfr_srcptr as[2] = {a.lo.get(), a.hi.get()};
    mpfr_srcptr bs[2] = {b.lo.get(), b.hi.get()};
    for (auto x : as)
        for (auto y : bs) {
            mpfr_mul(t.get(), x, y, MPFR_RNDD);
            if (mpfr_cmp(t.get(), r.lo.get()) < 0) mpfr_set(r.lo.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x, y, MPFR_RNDU);
            if (mpfr_cmp(t.get(), r.hi.get()) > 0) mpfr_set(r.hi.get(), t.get(), MPFR_RNDU);
        }
    return r;
}

inline Interval iv_div(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    if (b.contains_zero()) return Interval::whole(prec);
    Interval r(prec);
    Mp t(prec);
    mpfr_set_inf(r.lo.get(), +1);
    mpfr_set_inf(r.hi.get(), -1);
    mpfr_srcptr as[2] = {a.lo.get(), a.hi.get()};
    mpfr_srcptr bs[2] = {b.lo.get(), b.hi.get()};
    for (auto x : as)
        for (auto y : bs) {
            mpfr_div(t.get(), x, y, MPFR_RNDD);
            if (mpfr_cmp(t.get(), r.lo.get()) < 0) mpfr_set(r.lo.get(), t.get(), MPFR_RNDD);
            mpfr_div(t.get(), x, y, MPFR_RNDU);
            if (mpfr_cmp(t.get(), r.hi.get()) > 0) mpfr_set(r.hi.get(), t.get(), MPFR_RNDU);
        }
    return r;
}

}  // namespace detail

// Real number in the ring generated by rationals and cos(j*pi/n), closed
// under +,-,*,/.  Stored as an expression tree; numeric questions are
// answered by interval arithmetic with on-demand precision doubling.
// Exact equality is decided only by syntactic identity of the expressions.
class AlgebraicReal {
  public:
    static constexpr mpfr_prec_t kMaxPrecision = 1 << 14;

    AlgebraicReal() : AlgebraicReal(rational(0)) {}

    static AlgebraicReal rational(long long num, long long den = 1) {
        if (den == 0) throw PreconditionFailed("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        auto n = std::make_shared<Node>();
        n->op = Op::Rational;
        n->num = num;
        n->den = den;
        return AlgebraicReal(std::move(n));
    }

    // cos(j*pi/n).  Exactly representable values collapse to rationals so
    // downstream monotone-segment reasoning never sits on an extremum.
    static AlgebraicReal cos_pi(long long j, long long n) {
        if (n <= 0) throw PreconditionFailed("cos_pi with n <= 0");
        j %= 2 * n;
        if (j < 0) j += 2 * n;
        if (j > n) j = 2 * n - j;  // cos symmetric around 0 mod 2pi
        if (j == 0) return rational(1);
        if (2 * j == n) return rational(0);
        if (j == n) return rational(-1);
        if (3 * j == n) return rational(1, 2);
        if (3 * j == 2 * n) return rational(-1, 2);
        long long g = std::gcd(j, n);
        auto node = std::make_shared<Node>();
        node->op = Op::CosPi;
        node->num = j / g;
        node->den = n / g;
        return AlgebraicReal(std::move(node));
    }

    friend AlgebraicReal operator+(const AlgebraicReal& a, const AlgebraicReal& b) {
        return binary(Op::Add, a, b);
    }
    friend AlgebraicReal operator-(const AlgebraicReal& a, const AlgebraicReal& b) {
        return binary(Op::Sub, a, b);
    }
    friend AlgebraicReal operator*(const AlgebraicReal& a, const AlgebraicReal& b) {
        return binary(Op::Mul, a, b);
    }
    friend AlgebraicReal operator/(const AlgebraicReal& a, const AlgebraicReal& b) {
        return binary(Op::Div, a, b);
    }
    AlgebraicReal operator-() const {
        auto n = std::make_shared<Node>();
        n->op = Op::Neg;
        n->a = node_;
        return AlgebraicReal(std::move(n));
    }

    bool same_expression(const AlgebraicReal& o) const { return equal(node_.get(), o.node_.get()); }

    double approx() const {
        auto iv = eval(node_.get(), 128);
        detail::Mp mid(128);
        mpfr_add(mid.get(), iv.lo.get(), iv.hi.get(), MPFR_RNDN);
        mpfr_div_si(mid.get(), mid.get(), 2, MPFR_RNDN);
        return mpfr_get_d(mid.get(), MPFR_RNDN);
    }

    friend Ordering compare_exact(const AlgebraicReal& a, const AlgebraicReal& b,
                                  mpfr_prec_t max_prec) {
        if (a.same_expression(b)) return Ordering::Equal;
        for (mpfr_prec_t prec = 64; prec <= max_prec; prec *= 2) {
            auto ia = eval(a.node_.get(), prec);
            auto ib = eval(b.node_.get(), prec);
            if (mpfr_cmp(ia.hi.get(), ib.lo.get()) < 0) return Ordering::Less;
            if (mpfr_cmp(ia.lo.get(), ib.hi.get()) > 0) return Ordering::Greater;
        }
        throw PrecisionExhausted("compare_exact: values not separated at max precision");
    }

  private:
    enum class Op { Rational, CosPi, Add, Sub, Mul, Div, Neg };

    struct Node {
        Op op;
        long long num = 0, den = 1;  // Rational value, or CosPi angle j/n
        std::shared_ptr<const Node> a, b;
    };

    explicit AlgebraicReal(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static AlgebraicReal binary(Op op, const AlgebraicReal& a, const AlgebraicReal& b) {
        auto n = std::make_shared<Node>();
        n->op = op;
        n->a = a.node_;
        n->b = b.node_;
        return AlgebraicReal(std::move(n));
    }

    static bool equal(const Node* x, const Node* y) {
        if (x == y) return true;
        if (x->op != y->op || x->num != y->num || x->den != y->den) return false;
        if (!!x->a != !!y->a || !!x->b != !!y->b) return false;
        if (x->a && !equal(x->a.get(), y->a.get())) return false;
        if (x->b && !equal(x->b.get(), y->b.get())) return false;
        return true;
    }

    static detail::Interval eval(const Node* n, mpfr_prec_t prec) {
        using namespace detail;
        switch (n->op) {
            case Op::Rational:
                return iv_rational(n->num, n->den, prec);
            case Op::CosPi:
                return iv_cos_pi(n->num, n->den, prec);
            case Op::Add:
                return iv_add(eval(n->a.get(), prec), eval(n->b.get(), prec), prec);
            case Op::Sub:
                return iv_sub(eval(n->a.get(), prec), eval(n->b.get(), prec), prec);
            case Op::Mul:
                return iv_mul(eval(n->a.get(), prec), eval(n->b.get(), prec), prec);
            case Op::Div:
                return iv_div(eval(n->a.get(), prec), eval(n->b.get(), prec), prec);
            case Op::Neg:
                return iv_neg(eval(n->a.get(), prec), prec);
        }
        throw Error("unreachable");
    }

    std::shared_ptr<const Node> node_;
};

inline Ordering compare_exact(const AlgebraicReal& a, const AlgebraicReal& b) {
    return compare_exact(a, b, AlgebraicReal::kMaxPrecision);
}

}  // namespace rosa
