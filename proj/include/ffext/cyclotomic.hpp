#ifndef FFEXT_CYCLOTOMIC_HPP
#define FFEXT_CYCLOTOMIC_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ffext {

/// Element of Z[zeta_m] for a prime m, in coordinates over 1, zeta, ..., zeta^(m-2).
/// zeta^(m-1) is rewritten as -(1 + zeta + ... + zeta^(m-2)).
class CyclotomicInt {
   public:
    explicit CyclotomicInt(std::uint32_t m) : m_(m), c_(m >= 2 ? m - 1 : 0, 0) {
        if (m < 2) throw InvalidArgument("cyclotomic order must be >= 2");
    }

    static CyclotomicInt zeta_power(std::uint32_t m, std::uint64_t k) {
        CyclotomicInt z(m);
        z.add_zeta_power(k, 1);
        return z;
    }

    /// sum_k counts[k] * zeta^k.
    static CyclotomicInt from_class_counts(std::span<const std::uint64_t> counts) {
        CyclotomicInt z(static_cast<std::uint32_t>(counts.size()));
        for (std::size_t k = 0; k < counts.size(); ++k) z.add_zeta_power(k, static_cast<std::int64_t>(counts[k]));
        return z;
    }

    /// sum over primes of chi + chi^2 + ... + chi^(m-1), given how many primes fall in each class.
    static CyclotomicInt character_sum_from_counts(std::span<const std::uint64_t> counts) {
        const auto m = static_cast<std::uint32_t>(counts.size());
        CyclotomicInt z(m);
        for (std::size_t k = 0; k < m; ++k)
            for (std::uint64_t j = 1; j < m; ++j) z.add_zeta_power(j * k, static_cast<std::int64_t>(counts[k]));
        return z;
    }

    std::uint32_t order() const noexcept { return m_; }
    const std::vector<std::int64_t>& coords() const noexcept { return c_; }

    /// this += n * zeta^k
    void add_zeta_power(std::uint64_t k, std::int64_t n) {
        const std::uint64_t r = k % m_;
        if (r + 1 < m_) {
            c_[r] += n;
        } else {
            for (auto& x : c_) x -= n;
        }
    }

    bool is_rational() const noexcept {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    std::int64_t rational_value() const {
        if (!is_rational()) throw InvalidArgument("cyclotomic integer is not rational");
        return c_.empty() ? 0 : c_[0];
    }

    CyclotomicInt& operator+=(const CyclotomicInt& o) {
        if (o.m_ != m_) throw InvalidArgument("cyclotomic orders differ");
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }

    friend bool operator==(const CyclotomicInt&, const CyclotomicInt&) = default;

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            const std::int64_t v = c_[i];
            if (!out.empty()) out += v < 0 ? " - " : " + ";
            else if (v < 0) out += "-";
            const std::uint64_t mag = v < 0 ? static_cast<std::uint64_t>(-v) : static_cast<std::uint64_t>(v);
            if (i == 0) out += std::to_string(mag);
            else {
                if (mag != 1) out += std::to_string(mag) + "*";
                out += i == 1 ? "z" : "z^" + std::to_string(i);
            }
        }
        return out.empty() ? "0" : out;
    }

   private:
    std::uint32_t m_;
    std::vector<std::int64_t> c_;
};

}  // namespace ffext

#endif  // FFEXT_CYCLOTOMIC_HPP
