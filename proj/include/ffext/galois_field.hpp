#ifndef FFEXT_GALOIS_FIELD_HPP
#define FFEXT_GALOIS_FIELD_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace ffext {

using BigInt = boost::multiprecision::cpp_int;

/// Element of F_q = F_p[u]/(modulus), packed as the base-p integer sum c_i p^i of its
/// coordinates in the basis 1, u, ..., u^{e-1}. Integer order on the packed value is the
/// lexicographic order with the high-degree coordinate compared first.
struct FieldElem {
    std::uint32_t packed = 0;

    constexpr bool is_zero() const noexcept { return packed == 0; }
    friend constexpr auto operator<=>(const FieldElem&, const FieldElem&) = default;
};

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Distinct prime divisors by trial division, increasing.
inline std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Small dense polynomial arithmetic over F_p, used only to certify and apply the modulus
// before the field tables exist.
using SmallPoly = std::vector<std::uint64_t>;

inline void trim(SmallPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    std::uint64_t r = 1, e = p - 2;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

inline SmallPoly rem(SmallPoly a, const SmallPoly& m, std::uint64_t p) {
    trim(a);
    const std::uint64_t lead_inv = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        const std::uint64_t f = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = (a[shift + i] + (p - f) * m[i]) % p;
        trim(a);
    }
    return a;
}

inline SmallPoly mulmod(const SmallPoly& a, const SmallPoly& b, const SmallPoly& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    SmallPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return rem(std::move(c), m, p);
}

inline SmallPoly powmod(SmallPoly base, std::uint64_t e, const SmallPoly& m, std::uint64_t p) {
    SmallPoly r{1};
    base = rem(std::move(base), m, p);
    while (e) {
        if (e & 1) r = mulmod(r, base, m, p);
        base = mulmod(base, base, m, p);
        e >>= 1;
    }
    return rem(std::move(r), m, p);
}

inline SmallPoly gcd(SmallPoly a, SmallPoly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        SmallPoly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Rabin's test for a monic polynomial over F_p of degree >= 1.
inline bool small_is_irreducible(const SmallPoly& f, std::uint64_t p) {
    const std::size_t n = f.size() - 1;
    if (n == 1) return true;
    const SmallPoly x{0, 1};
    auto frob_iter = [&](std::size_t k) {
        SmallPoly y = x;
        for (std::size_t i = 0; i < k; ++i) y = powmod(y, p, f, p);
        return y;
    };
    auto minus_x = [&](SmallPoly y) {
        if (y.size() < 2) y.resize(2, 0);
        y[1] = (y[1] + p - 1) % p;
        trim(y);
        return y;
    };
    if (!minus_x(frob_iter(n)).empty()) return false;
    for (auto r : distinct_prime_factors(n)) {
        const SmallPoly g = gcd(minus_x(frob_iter(n / r)), f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace detail

class FieldCtx;
using Field = std::shared_ptr<const FieldCtx>;

/// The finite field F_q = F_p[u]/(modulus), q = p^e <= 2^20. Immutable once built.
///
/// Multiplication goes through discrete-log tables with respect to a fixed primitive element;
/// addition in odd-characteristic extension fields uses Zech logarithms.
class FieldCtx {
   public:
    static constexpr std::uint64_t max_order = std::uint64_t{1} << 20;

    /// F_{p^e} with the lexicographically smallest monic irreducible modulus of degree e.
    static Field make(std::uint32_t p, unsigned e = 1) {
        check_prime_and_size(p, e);
        const std::uint64_t q = ipow(p, e);
        for (std::uint64_t idx = 0; idx < q; ++idx) {
            std::vector<std::uint32_t> mod(e + 1);
            std::uint64_t rest = idx;
            for (unsigned i = 0; i < e; ++i) {
                mod[i] = static_cast<std::uint32_t>(rest % p);
                rest /= p;
            }
            mod[e] = 1;
            if (detail::small_is_irreducible({mod.begin(), mod.end()}, p))
                return Field(new FieldCtx(p, std::move(mod)));
        }
        throw InternalError("no irreducible polynomial of the requested degree");
    }

    /// F_p[u]/(modulus) for a caller-chosen monic irreducible modulus (coefficients low first).
    static Field make(std::uint32_t p, std::vector<std::uint32_t> modulus) {
        if (modulus.size() < 2) throw InvalidArgument("modulus must have degree >= 1");
        check_prime_and_size(p, static_cast<unsigned>(modulus.size() - 1));
        for (auto& c : modulus)
            if (c >= p) throw InvalidArgument("modulus coefficient out of range");
        if (modulus.back() != 1) throw InvalidArgument("modulus must be monic");
        if (!detail::small_is_irreducible({modulus.begin(), modulus.end()}, p))
            throw InvalidArgument("modulus is reducible over F_p");
        return Field(new FieldCtx(p, std::move(modulus)));
    }

    /// F_q for a prime power q, with the default modulus.
    static Field of_order(std::uint64_t q) {
        if (q < 2) throw InvalidArgument("field order must be a prime power >= 2");
        const auto primes = detail::distinct_prime_factors(q);
        if (primes.size() != 1) throw InvalidArgument("field order " + std::to_string(q) + " is not a prime power");
        unsigned e = 0;
        for (std::uint64_t r = q; r > 1; r /= primes[0]) ++e;
        return make(static_cast<std::uint32_t>(primes[0]), e);
    }

    std::uint32_t p() const noexcept { return p_; }
    unsigned e() const noexcept { return e_; }
    std::uint32_t q() const noexcept { return q_; }
    bool is_prime_field() const noexcept { return e_ == 1; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    FieldElem zero() const noexcept { return {0}; }
    FieldElem one() const noexcept { return {1}; }

    FieldElem elem(std::uint64_t packed) const {
        if (packed >= q_) throw InvalidArgument("packed field element out of range");
        return {static_cast<std::uint32_t>(packed)};
    }

    /// The image of an integer under Z -> F_p -> F_q.
    FieldElem from_int(long long n) const {
        long long r = n % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return {static_cast<std::uint32_t>(r)};
    }

    /// The class of u; for prime fields this is the root of the linear modulus.
    FieldElem generator() const noexcept { return u_; }

    FieldElem from_coords(std::span<const std::uint32_t> coords) const {
        if (coords.size() > e_) throw InvalidArgument("too many coordinates");
        std::uint64_t v = 0;
        for (std::size_t i = coords.size(); i-- > 0;) {
            if (coords[i] >= p_) throw InvalidArgument("coordinate out of range");
            v = v * p_ + coords[i];
        }
        return {static_cast<std::uint32_t>(v)};
    }

    std::vector<std::uint32_t> coords(FieldElem x) const {
        std::vector<std::uint32_t> c(e_);
        std::uint32_t v = x.packed;
        for (unsigned i = 0; i < e_; ++i) {
            c[i] = v % p_;
            v /= p_;
        }
        return c;
    }

    FieldElem add(FieldElem a, FieldElem b) const noexcept {
        if (e_ == 1) {
            const std::uint32_t s = a.packed + b.packed;
            return {s >= p_ ? s - p_ : s};
        }
        if (p_ == 2) return {a.packed ^ b.packed};
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const std::uint32_t la = log_[a.packed];
        std::uint32_t diff = log_[b.packed] + (q_ - 1) - la;
        if (diff >= q_ - 1) diff -= q_ - 1;
        const std::uint32_t z = zech_[diff];
        if (z == no_log) return {0};
        return {exp_[la + z]};
    }

    FieldElem neg(FieldElem a) const noexcept {
        if (a.is_zero() || p_ == 2) return a;
        if (e_ == 1) return {p_ - a.packed};
        return {exp_[log_[a.packed] + (q_ - 1) / 2]};
    }

    FieldElem sub(FieldElem a, FieldElem b) const noexcept { return add(a, neg(b)); }

    FieldElem mul(FieldElem a, FieldElem b) const noexcept {
        if (a.is_zero() || b.is_zero()) return {0};
        return {exp_[log_[a.packed] + log_[b.packed]]};
    }

    FieldElem inv(FieldElem a) const {
        if (a.is_zero()) throw DivisionByZero("inverse of zero in F_" + std::to_string(q_));
        const std::uint32_t l = log_[a.packed];
        return {exp_[l == 0 ? 0 : (q_ - 1) - l]};
    }

    FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

    FieldElem pow(FieldElem a, std::uint64_t n) const noexcept {
        if (n == 0) return one();
        if (a.is_zero()) return a;
        const std::uint64_t l = (std::uint64_t{log_[a.packed]} * (n % (q_ - 1))) % (q_ - 1);
        return {exp_[l]};
    }

    FieldElem pow(FieldElem a, const BigInt& n) const {
        if (n < 0) throw InvalidArgument("negative exponent");
        if (n == 0) return one();
        if (a.is_zero()) return a;
        const auto reduced = static_cast<std::uint64_t>(n % (q_ - 1));
        return {exp_[(std::uint64_t{log_[a.packed]} * reduced) % (q_ - 1)]};
    }

    /// x^p.
    FieldElem frobenius(FieldElem x) const noexcept { return pow(x, p_); }

    /// The unique p-th root, x^(q/p).
    FieldElem pth_root(FieldElem x) const noexcept { return pow(x, q_ / p_); }

    /// x + x^p + ... + x^{p^{e-1}}, returned as an integer in [0, p).
    std::uint32_t trace_to_prime(FieldElem x) const {
        FieldElem acc = zero(), y = x;
        for (unsigned i = 0; i < e_; ++i) {
            acc = add(acc, y);
            y = frobenius(y);
        }
        if (acc.packed >= p_) throw InternalError("trace left the prime field");
        return acc.packed;
    }

    /// The fixed primitive element: smallest packed value of multiplicative order q - 1.
    FieldElem primitive() const noexcept { return g_; }

    /// Discrete logarithm base primitive().
    std::uint32_t dlog(FieldElem x) const {
        if (x.is_zero()) throw InvalidArgument("discrete log of zero");
        return log_[x.packed];
    }

    const std::vector<std::uint64_t>& order_minus_one_primes() const noexcept { return qm1_primes_; }

    /// eta_m = g^((q-1)/m), the fixed generator of the order-m subgroup S_m.
    FieldElem eta(std::uint32_t m) const {
        auto it = eta_.find(m);
        if (it == eta_.end())
            throw InvalidArgument(std::to_string(m) + " is not a prime divisor of q-1 = " + std::to_string(q_ - 1));
        return it->second;
    }

    /// The k in Z_m with c^((q-1)/m) = eta^k. Zero exactly for m-th powers.
    std::uint32_t mth_power_class(FieldElem c, std::uint32_t m) const {
        if (c.is_zero()) throw InvalidArgument("m-th power class of zero");
        const FieldElem eta_m = eta(m);
        const FieldElem image = pow(c, (q_ - 1) / m);
        FieldElem probe = one();
        for (std::uint32_t k = 0; k < m; ++k) {
            if (probe == image) return k;
            probe = mul(probe, eta_m);
        }
        throw InternalError("power image not in the subgroup generated by eta");
    }

    /// Some b with b^p - b = c, present iff trace_to_prime(c) == 0.
    std::optional<FieldElem> solve_artin_schreier_const(FieldElem c) const {
        MatrixModP<std::uint32_t> map(e_, e_, p_);
        for (unsigned j = 0; j < e_; ++j) {
            std::vector<std::uint32_t> basis(e_, 0);
            basis[j] = 1;
            const FieldElem b = from_coords(basis);
            const auto img = coords(sub(frobenius(b), b));
            for (unsigned i = 0; i < e_; ++i) map.set(i, j, img[i]);
        }
        const auto rhs = coords(c);
        auto sol = map.solve(rhs);
        if (!sol) return std::nullopt;
        return from_coords(*sol);
    }

    /// Smallest element (packed order) whose trace to F_p equals t.
    FieldElem smallest_with_trace(std::uint32_t t) const {
        if (t >= p_) throw InvalidArgument("trace value out of range");
        for (std::uint32_t v = 0; v < q_; ++v)
            if (trace_to_prime({v}) == t) return {v};
        throw InternalError("trace is not surjective");
    }

    friend bool operator==(const FieldCtx& a, const FieldCtx& b) noexcept {
        return a.p_ == b.p_ && a.modulus_ == b.modulus_;
    }

   private:
    static constexpr std::uint32_t no_log = 0xffffffffu;

    static std::uint64_t ipow(std::uint64_t b, unsigned e) {
        std::uint64_t r = 1;
        for (unsigned i = 0; i < e; ++i) {
            r *= b;
            if (r > max_order) throw InvalidArgument("field order exceeds 2^20");
        }
        return r;
    }

    static void check_prime_and_size(std::uint32_t p, unsigned e) {
        if (!detail::is_prime_u64(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
        if (e < 1) throw InvalidArgument("extension degree must be >= 1");
        ipow(p, e);
    }

    FieldCtx(std::uint32_t p, std::vector<std::uint32_t> modulus)
        : p_(p), e_(static_cast<unsigned>(modulus.size() - 1)), modulus_(std::move(modulus)) {
        q_ = static_cast<std::uint32_t>(ipow(p_, e_));
        qm1_primes_ = detail::distinct_prime_factors(q_ - 1);
        {
            detail::SmallPoly x{0, 1};
            u_ = pack(detail::rem(x, {modulus_.begin(), modulus_.end()}, p_));
        }

        g_ = {1};
        for (std::uint32_t v = 1; v < q_; ++v) {
            bool primitive = true;
            for (auto r : qm1_primes_)
                if (slow_pow({v}, (q_ - 1) / r) == FieldElem{1}) {
                    primitive = false;
                    break;
                }
            if (primitive) {
                g_ = {v};
                break;
            }
        }

        const std::uint32_t n = q_ - 1;
        exp_.assign(2 * std::size_t{n} + 1, 0);
        log_.assign(q_, no_log);
        FieldElem cur{1};
        for (std::uint32_t i = 0; i < n; ++i) {
            exp_[i] = cur.packed;
            if (log_[cur.packed] != no_log) throw InternalError("primitive element has small order");
            log_[cur.packed] = i;
            cur = slow_mul(cur, g_);
        }
        for (std::size_t i = n; i < exp_.size(); ++i) exp_[i] = exp_[i - n];

        if (e_ > 1 && p_ != 2) {
            zech_.assign(n, no_log);
            for (std::uint32_t i = 0; i < n; ++i) {
                const FieldElem s = slow_add({1}, {exp_[i]});
                zech_[i] = s.is_zero() ? no_log : log_[s.packed];
            }
        }

        for (auto r : qm1_primes_) eta_[static_cast<std::uint32_t>(r)] = {exp_[n / r]};
    }

    FieldElem pack(const detail::SmallPoly& c) const {
        std::uint64_t v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * p_ + c[i];
        return {static_cast<std::uint32_t>(v)};
    }

    detail::SmallPoly unpack(FieldElem x) const {
        detail::SmallPoly c(e_);
        std::uint32_t v = x.packed;
        for (unsigned i = 0; i < e_; ++i) {
            c[i] = v % p_;
            v /= p_;
        }
        detail::trim(c);
        return c;
    }

    FieldElem slow_add(FieldElem a, FieldElem b) const {
        auto ca = unpack(a), cb = unpack(b);
        ca.resize(e_, 0);
        cb.resize(e_, 0);
        for (unsigned i = 0; i < e_; ++i) ca[i] = (ca[i] + cb[i]) % p_;
        return pack(ca);
    }

    FieldElem slow_mul(FieldElem a, FieldElem b) const {
        return pack(detail::mulmod(unpack(a), unpack(b), {modulus_.begin(), modulus_.end()}, p_));
    }

    FieldElem slow_pow(FieldElem a, std::uint64_t n) const {
        FieldElem r{1};
        while (n) {
            if (n & 1) r = slow_mul(r, a);
            a = slow_mul(a, a);
            n >>= 1;
        }
        return r;
    }

    std::uint32_t p_;
    unsigned e_;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint64_t> qm1_primes_;
    FieldElem u_{};
    FieldElem g_{};
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> zech_;
    std::map<std::uint32_t, FieldElem> eta_;
};

}  // namespace ffext

#endif  // FFEXT_GALOIS_FIELD_HPP
