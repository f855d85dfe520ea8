#ifndef FFEXT_POLY_HPP
#define FFEXT_POLY_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "galois_field.hpp"

namespace ffext {

/// Degree of a polynomial; the zero polynomial has degree minus infinity, which compares below
/// every finite degree and absorbs addition.
class Degree {
   public:
    static constexpr Degree minus_infinity() noexcept { return Degree(); }
    constexpr explicit Degree(std::size_t d) noexcept : finite_(true), value_(d) {}

    constexpr bool is_minus_infinity() const noexcept { return !finite_; }

    std::size_t value() const {
        if (!finite_) throw InternalError("degree of the zero polynomial used as an integer");
        return value_;
    }

    friend constexpr Degree operator+(Degree a, Degree b) noexcept {
        if (!a.finite_ || !b.finite_) return Degree();
        return Degree(a.value_ + b.value_);
    }

    friend constexpr bool operator==(Degree a, Degree b) noexcept {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(Degree a, Degree b) noexcept {
        if (!a.finite_ || !b.finite_) return a.finite_ <=> b.finite_;
        return a.value_ <=> b.value_;
    }

   private:
    constexpr Degree() noexcept = default;
    bool finite_ = false;
    std::size_t value_ = 0;
};

/// Dense univariate polynomial over F_q in the variable t, coefficients low degree first.
/// Trailing zero coefficients are never stored.
class Poly {
   public:
    explicit Poly(Field field) : field_(std::move(field)) {}
    Poly(Field field, std::vector<FieldElem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }

    static Poly constant(const Field& f, FieldElem c) { return Poly(f, {c}); }
    static Poly monomial(const Field& f, FieldElem c, std::size_t degree) {
        std::vector<FieldElem> v(degree + 1, f->zero());
        v[degree] = c;
        return Poly(f, std::move(v));
    }
    /// The variable t.
    static Poly t(const Field& f) { return monomial(f, f->one(), 1); }
    static Poly one(const Field& f) { return constant(f, f->one()); }

    const Field& field() const noexcept { return field_; }
    const FieldCtx& ctx() const noexcept { return *field_; }

    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == FieldElem{1}; }
    /// True for the zero polynomial and nonzero constants.
    bool is_constant() const noexcept { return c_.size() <= 1; }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == FieldElem{1}; }

    Degree degree() const noexcept { return c_.empty() ? Degree::minus_infinity() : Degree(c_.size() - 1); }
    /// Number of stored coefficients, i.e. degree + 1 (0 for the zero polynomial).
    std::size_t size() const noexcept { return c_.size(); }

    FieldElem coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : FieldElem{0}; }
    FieldElem lead() const noexcept { return c_.empty() ? FieldElem{0} : c_.back(); }
    std::span<const FieldElem> coeffs() const noexcept { return c_; }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(ctx().inv(lead()));
    }

    Poly scaled(FieldElem s) const {
        if (s.is_zero()) return Poly(field_);
        std::vector<FieldElem> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = ctx().mul(c_[i], s);
        return Poly(field_, std::move(v));
    }

    FieldElem evaluate(FieldElem x) const noexcept {
        FieldElem acc{0};
        for (std::size_t i = c_.size(); i-- > 0;) acc = ctx().add(ctx().mul(acc, x), c_[i]);
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(field_);
        std::vector<FieldElem> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = ctx().mul(ctx().from_int(static_cast<long long>(i % ctx().p())), c_[i]);
        return Poly(field_, std::move(v));
    }

    /// Multiplication by t^k.
    Poly shifted(std::size_t k) const {
        if (is_zero()) return *this;
        std::vector<FieldElem> v(k, FieldElem{0});
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(field_, std::move(v));
    }

    Poly operator-() const {
        std::vector<FieldElem> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = ctx().neg(c_[i]);
        return Poly(field_, std::move(v));
    }

    Poly& operator+=(const Poly& b) {
        check_same_field(b);
        if (b.c_.size() > c_.size()) c_.resize(b.c_.size(), FieldElem{0});
        for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] = ctx().add(c_[i], b.c_[i]);
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& b) {
        check_same_field(b);
        if (b.c_.size() > c_.size()) c_.resize(b.c_.size(), FieldElem{0});
        for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] = ctx().sub(c_[i], b.c_[i]);
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_same_field(b);
        if (a.is_zero() || b.is_zero()) return Poly(a.field_);
        const FieldCtx& F = a.ctx();
        std::vector<FieldElem> v(a.c_.size() + b.c_.size() - 1, FieldElem{0});
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = F.add(v[i + j], F.mul(a.c_[i], b.c_[j]));
        }
        return Poly(a.field_, std::move(v));
    }

    friend bool operator==(const Poly& a, const Poly& b) noexcept {
        return (a.field_ == b.field_ || *a.field_ == *b.field_) && a.c_ == b.c_;
    }

    /// Graded lexicographic order: by degree, then coefficients from the highest degree down
    /// compared as packed field elements.
    friend std::strong_ordering operator<=>(const Poly& a, const Poly& b) noexcept {
        if (auto c = a.c_.size() <=> b.c_.size(); c != 0) return c;
        for (std::size_t i = a.c_.size(); i-- > 0;)
            if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }

    void check_same_field(const Poly& b) const {
        if (field_ != b.field_ && !(*field_ == *b.field_))
            throw InvalidArgument("polynomials over different fields");
    }

   private:
    void trim() noexcept {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    Field field_;
    std::vector<FieldElem> c_;
};

/// Quotient and remainder of a by b.
inline std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
    a.check_same_field(b);
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    const FieldCtx& F = a.ctx();
    if (a.size() < b.size()) return {Poly(a.field()), a};
    std::vector<FieldElem> r(a.coeffs().begin(), a.coeffs().end());
    const auto bc = b.coeffs();
    const std::size_t nb = bc.size();
    std::vector<FieldElem> quot(r.size() - nb + 1, FieldElem{0});
    const FieldElem lead_inv = F.inv(b.lead());
    for (std::size_t k = r.size() - 1;; --k) {
        const FieldElem f = F.mul(r[k], lead_inv);
        const std::size_t shift = k + 1 - nb;
        quot[shift] = f;
        if (!f.is_zero())
            for (std::size_t i = 0; i < nb; ++i) r[shift + i] = F.sub(r[shift + i], F.mul(f, bc[i]));
        if (k == nb - 1) break;
    }
    r.resize(nb - 1);
    return {Poly(a.field(), std::move(quot)), Poly(a.field(), std::move(r))};
}

inline Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).first; }
inline Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).second; }

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
    a.check_same_field(b);
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

struct ExtendedGcd {
    Poly g;  // monic gcd
    Poly s;  // s*a + t*b = g
    Poly t;
};

inline ExtendedGcd extended_gcd(const Poly& a, const Poly& b) {
    a.check_same_field(b);
    const Field& f = a.field();
    Poly r0 = a, r1 = b, s0 = Poly::one(f), s1(f), t0(f), t1 = Poly::one(f);
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const FieldElem inv = a.ctx().inv(r0.lead());
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

/// Inverse of a modulo m. Throws DivisionByZero when gcd(a, m) != 1.
inline Poly invmod(const Poly& a, const Poly& m) {
    auto eg = extended_gcd(a % m, m);
    if (!eg.g.is_one()) throw DivisionByZero("polynomial is not invertible modulo the given modulus");
    return eg.s % m;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

/// a^n mod m by square-and-multiply; m must be nonconstant.
inline Poly powmod(const Poly& a, const BigInt& n, const Poly& m) {
    if (m.is_constant()) throw InvalidArgument("powmod modulus must be nonconstant");
    if (n < 0) throw InvalidArgument("negative exponent");
    Poly base = a % m;
    Poly result = Poly::one(a.field()) % m;
    const std::size_t bits = n == 0 ? 0 : static_cast<std::size_t>(boost::multiprecision::msb(n)) + 1;
    for (std::size_t i = bits; i-- > 0;) {
        result = mulmod(result, result, m);
        if (boost::multiprecision::bit_test(n, static_cast<unsigned>(i))) result = mulmod(result, base, m);
    }
    return result;
}

inline Poly powmod(const Poly& a, std::uint64_t n, const Poly& m) { return powmod(a, BigInt(n), m); }

inline Poly pow(const Poly& a, std::uint64_t n) {
    Poly result = Poly::one(a.field()), base = a;
    while (n) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

}  // namespace ffext

#endif  // FFEXT_POLY_HPP
