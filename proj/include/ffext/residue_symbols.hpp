#ifndef FFEXT_RESIDUE_SYMBOLS_HPP
#define FFEXT_RESIDUE_SYMBOLS_HPP

#include <algorithm>
#include <cstdint>
#include <string>

#include "errors.hpp"
#include "polyring.hpp"
#include "ratfunc.hpp"

namespace ffext {

/// Value of the m-th power residue symbol, stored as the exponent k of the fixed generator
/// eta of S_m (so the complex character value is exp(2 pi i k / m)), or the zero symbol when
/// P divides the argument.
struct SymbolValue {
    enum class Kind { Unit, Zero };

    Kind kind = Kind::Zero;
    std::uint32_t exponent = 0;
    std::uint32_t modulus = 0;

    static SymbolValue unit(std::uint32_t k, std::uint32_t m) { return {Kind::Unit, k % m, m}; }
    static SymbolValue zero(std::uint32_t m) { return {Kind::Zero, 0, m}; }

    bool is_zero() const noexcept { return kind == Kind::Zero; }
    bool is_trivial() const noexcept { return kind == Kind::Unit && exponent == 0; }

    std::string to_string() const {
        return kind == Kind::Zero ? "Zero" : "Unit(" + std::to_string(exponent) + ")";
    }

    friend bool operator==(const SymbolValue&, const SymbolValue&) = default;
};

/// Hasse symbol {D/P}, an element of F_p.
struct HasseValue {
    std::uint32_t value = 0;

    friend bool operator==(const HasseValue&, const HasseValue&) = default;
};

namespace detail {

inline void require_kummer_modulus(const FieldCtx& F, std::uint32_t m) {
    const auto& primes = F.order_minus_one_primes();
    if (std::find(primes.begin(), primes.end(), std::uint64_t{m}) == primes.end())
        throw InvalidArgument("m = " + std::to_string(m) + " is not a prime divisor of q-1 = " +
                              std::to_string(F.q() - 1));
}

/// Exponent k with c = eta_m^k; c must lie in S_m.
inline std::uint32_t subgroup_exponent(const FieldCtx& F, FieldElem c, std::uint32_t m) {
    const FieldElem eta = F.eta(m);
    FieldElem probe = F.one();
    for (std::uint32_t k = 0; k < m; ++k) {
        if (probe == c) return k;
        probe = F.mul(probe, eta);
    }
    throw InternalError("residue-symbol value is not an m-th root of unity");
}

inline FieldElem as_constant(const Poly& r, const char* what) {
    if (!r.is_constant()) throw InternalError(std::string(what) + " did not land in F_q");
    return r.coeff(0);
}

/// D mod P in F_q[t]/(P); requires P not to divide den(D).
inline Poly reduce_mod_prime(const RatFunc& D, const PrimePoly& P) {
    const Poly& m = P.poly();
    const Poly den = D.den() % m;
    if (den.is_zero()) throw PoleAtP("the prime divides the denominator: ord_P(D) < 0");
    return mulmod(D.num() % m, invmod(den, m), m);
}

}  // namespace detail

/// (a/P)_m: a^((NP-1)/m) mod P, reported as the exponent of eta_m.
inline SymbolValue power_residue_symbol(const Poly& a, const PrimePoly& P, std::uint32_t m) {
    const FieldCtx& F = a.ctx();
    detail::require_kummer_modulus(F, m);
    const Poly r = a % P.poly();
    if (r.is_zero()) return SymbolValue::zero(m);
    const Poly c = powmod(r, (P.norm() - 1) / m, P.poly());
    return SymbolValue::unit(detail::subgroup_exponent(F, detail::as_constant(c, "a^((NP-1)/m) mod P"), m), m);
}

/// True iff P splits completely in k(a^(1/m)), i.e. the symbol is trivial.
inline bool symbol_is_split(const Poly& a, const PrimePoly& P, std::uint32_t m) {
    const SymbolValue s = power_residue_symbol(a, P, m);
    if (s.is_zero()) throw RamifiedOrInvalid("P divides a; the splitting predicate is undefined");
    return s.is_trivial();
}

/// Hasse symbol by the nested trace: tr_{F_q/F_p}( sum_{i<d} r^(q^i) ) with r = D mod P.
inline HasseValue hasse_symbol_composed(const RatFunc& D, const PrimePoly& P) {
    const FieldCtx& F = D.ctx();
    const Poly& m = P.poly();
    Poly term = detail::reduce_mod_prime(D, P);
    Poly inner(D.field());
    for (std::size_t i = 0; i < P.degree(); ++i) {
        inner += term;
        term = powmod(term, std::uint64_t{F.q()}, m);
    }
    return {F.trace_to_prime(detail::as_constant(inner, "residue-field trace"))};
}

/// Hasse symbol by the telescoping sum D + D^p + ... + D^(NP/p) mod P.
inline HasseValue hasse_symbol_telescoping(const RatFunc& D, const PrimePoly& P) {
    const FieldCtx& F = D.ctx();
    const Poly& m = P.poly();
    Poly term = detail::reduce_mod_prime(D, P);
    Poly sum(D.field());
    const std::size_t terms = std::size_t{F.e()} * P.degree();
    for (std::size_t i = 0; i < terms; ++i) {
        sum += term;
        term = powmod(term, std::uint64_t{F.p()}, m);
    }
    const FieldElem v = detail::as_constant(sum, "absolute trace");
    if (v.packed >= F.p()) throw InternalError("absolute trace did not land in F_p");
    return {v.packed};
}

inline HasseValue hasse_symbol(const RatFunc& D, const PrimePoly& P) { return hasse_symbol_composed(D, P); }

/// True iff the Artin symbol at P fixes a root of x^p - x - D, i.e. {D/P} = 0.
inline bool hasse_is_split(const RatFunc& D, const PrimePoly& P) { return hasse_symbol(D, P).value == 0; }

}  // namespace ffext

#endif  // FFEXT_RESIDUE_SYMBOLS_HPP
