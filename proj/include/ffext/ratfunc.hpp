#ifndef FFEXT_RATFUNC_HPP
#define FFEXT_RATFUNC_HPP

#include <cstdint>
#include <utility>

#include "errors.hpp"
#include "poly.hpp"

namespace ffext {

/// Element num/den of F_q(t), always reduced with a monic denominator. Zero is 0/1.
class RatFunc {
   public:
    explicit RatFunc(const Field& f) : num_(f), den_(Poly::one(f)) {}
    RatFunc(Poly num) : num_(std::move(num)), den_(Poly::one(num_.field())) {}  // NOLINT: implicit embedding A -> k
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RatFunc constant(const Field& f, FieldElem c) { return RatFunc(Poly::constant(f, c)); }

    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }
    const Field& field() const noexcept { return num_.field(); }
    const FieldCtx& ctx() const noexcept { return num_.ctx(); }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.is_one(); }

    RatFunc operator-() const { return RatFunc(-num_, den_, reduced_tag{}); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        // Cross-cancel first so the products stay reduced.
        const Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        if (a.is_zero() || b.is_zero()) return RatFunc(a.field());
        return RatFunc((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DivisionByZero("rational function division by zero");
        return a * b.inverse();
    }

    RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
    RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
    RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }

    RatFunc inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of the zero rational function");
        return RatFunc(den_, num_);
    }

    RatFunc scaled(FieldElem s) const { return RatFunc(num_.scaled(s), den_, reduced_tag{}); }

    friend bool operator==(const RatFunc& a, const RatFunc& b) noexcept { return a.num_ == b.num_ && a.den_ == b.den_; }

   private:
    struct reduced_tag {};
    RatFunc(Poly num, Poly den, reduced_tag) : num_(std::move(num)), den_(std::move(den)) {
        if (num_.is_zero()) den_ = Poly::one(num_.field());
    }

    void normalize() {
        num_.check_same_field(den_);
        if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Poly::one(num_.field());
            return;
        }
        if (!den_.is_constant()) {
            const Poly g = gcd(num_, den_);
            if (!g.is_one()) {
                num_ = num_ / g;
                den_ = den_ / g;
            }
        }
        const FieldElem lead_inv = ctx().inv(den_.lead());
        num_ = num_.scaled(lead_inv);
        den_ = den_.scaled(lead_inv);
    }

    Poly num_;
    Poly den_;
};

inline RatFunc pow(const RatFunc& x, std::uint64_t n) { return RatFunc(pow(x.num(), n), pow(x.den(), n)); }

/// The Artin-Schreier operator x -> x^p - x.
inline RatFunc artin_schreier_op(const RatFunc& x) { return pow(x, x.ctx().p()) - x; }
inline Poly artin_schreier_op(const Poly& x) { return pow(x, x.ctx().p()) - x; }

}  // namespace ffext

#endif  // FFEXT_RATFUNC_HPP
