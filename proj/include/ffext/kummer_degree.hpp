#ifndef FFEXT_KUMMER_DEGREE_HPP
#define FFEXT_KUMMER_DEGREE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "polyring.hpp"
#include "residue_symbols.hpp"

namespace ffext {

/// G with G^m = F, if F is an m-th power in F_q[t]. Among the m candidate roots the one whose
/// leading coefficient has the smallest discrete log base the primitive element is returned.
inline std::optional<Poly> mth_power_test(const Poly& F, std::uint32_t m, std::uint64_t seed = 0) {
    if (F.is_zero()) throw InvalidArgument("m-th power test of the zero polynomial");
    const FieldCtx& ctx = F.ctx();
    detail::require_kummer_modulus(ctx, m);
    if (ctx.mth_power_class(F.lead(), m) != 0) return std::nullopt;
    const Factorization fac = factor(F, seed);
    for (const auto& [prime, mult] : fac.factors)
        if (mult % m) return std::nullopt;
    // lead = g^L with m | L; g^(L/m) has the smallest log among the m roots.
    Poly root = Poly::constant(F.field(), ctx.pow(ctx.primitive(), ctx.dlog(fac.unit) / m));
    for (const auto& [prime, mult] : fac.factors) root *= pow(prime.poly(), mult / m);
    if (!(pow(root, m) == F)) throw InternalError("m-th root failed re-verification");
    return root;
}

/// K = k(D_1^(1/m), ..., D_l^(1/m)) over k = F_q(t).
struct KummerInstance {
    Field field;
    std::uint32_t m;
    std::vector<Poly> S;

    KummerInstance(Field f, std::uint32_t m_, std::vector<Poly> elements)
        : field(std::move(f)), m(m_), S(std::move(elements)) {
        detail::require_kummer_modulus(*field, m);
        for (const auto& D : S) {
            if (D.is_zero()) throw InvalidArgument("elements of S must be nonzero");
            if (!(*D.field() == *field)) throw InvalidArgument("element of S over a different field");
        }
    }
};

/// prod D_i^{a_i} = constant * root^m. For kernel witnesses constant is 1.
struct KummerWitness {
    std::vector<std::uint32_t> exponents;
    FieldElem constant;
    Poly root;
};

struct KummerReport {
    std::vector<PrimePoly> support;
    MatrixModP<std::uint32_t> matrix;  // l x (|support| + 1); last column: class of the leading coefficient
    std::vector<std::vector<std::uint32_t>> kernel_basis;
    std::size_t r = 0;
    BigInt gamma;
    BigInt degree;
    bool geometric = true;
    std::vector<KummerWitness> witnesses;
    /// For non-geometric instances: a combination that is a non-m-th-power constant times an m-th power.
    std::optional<KummerWitness> obstruction;
};

/// prod D_i^{a_i} as a polynomial.
inline Poly kummer_combination(const KummerInstance& inst, std::span<const std::uint32_t> a) {
    Poly acc = Poly::one(inst.field);
    for (std::size_t i = 0; i < inst.S.size(); ++i)
        if (a[i]) acc *= pow(inst.S[i], a[i]);
    return acc;
}

/// gamma_S, r and [K:k] = m^(l-r) from the left kernel over F_m of the exponent matrix.
inline KummerReport gamma_kummer(const KummerInstance& inst, std::uint64_t seed = 0) {
    const FieldCtx& F = *inst.field;
    const std::uint32_t m = inst.m;
    const std::size_t l = inst.S.size();

    std::vector<Factorization> facs;
    facs.reserve(l);
    std::vector<PrimePoly> support;
    for (const auto& D : inst.S) {
        facs.push_back(factor(D, seed));
        for (const auto& [prime, mult] : facs.back().factors) support.push_back(prime);
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    const std::size_t s = support.size();
    MatrixModP<std::uint32_t> matrix(l, s + 1, m);
    for (std::size_t i = 0; i < l; ++i) {
        for (const auto& [prime, mult] : facs[i].factors) {
            const auto col = static_cast<std::size_t>(std::lower_bound(support.begin(), support.end(), prime) - support.begin());
            matrix.set(i, col, mult);
        }
        matrix.set(i, s, F.mth_power_class(facs[i].unit, m));
    }

    KummerReport rep{std::move(support), matrix, matrix.left_kernel(), 0, 0, 0, true, {}, std::nullopt};
    rep.r = rep.kernel_basis.size();
    rep.gamma = boost::multiprecision::pow(BigInt(m), static_cast<unsigned>(rep.r));
    rep.degree = boost::multiprecision::pow(BigInt(m), static_cast<unsigned>(l - rep.r));

    for (const auto& a : rep.kernel_basis) {
        if (!is_zero_vector<std::uint32_t>(matrix.left_multiply(a))) throw InternalError("kernel vector does not annihilate");
        auto root = mth_power_test(kummer_combination(inst, a), m, seed);
        if (!root) throw InternalError("kernel combination is not an m-th power");
        rep.witnesses.push_back({a, F.one(), std::move(*root)});
    }

    const auto support_kernel = matrix.without_column(s).left_kernel();
    rep.geometric = support_kernel.size() == rep.r;
    if (!rep.geometric) {
        for (const auto& a : support_kernel) {
            if (is_zero_vector<std::uint32_t>(matrix.left_multiply(a))) continue;
            const Poly combo = kummer_combination(inst, a);
            const FieldElem c = combo.lead();
            auto root = mth_power_test(combo.monic(), m, seed);
            if (!root) throw InternalError("support-kernel combination is not a constant times an m-th power");
            if (!(pow(*root, m).scaled(c) == combo)) throw InternalError("obstruction failed re-verification");
            rep.obstruction = KummerWitness{a, c, std::move(*root)};
            break;
        }
    }
    return rep;
}

inline BigInt degree_kummer(const KummerInstance& inst, std::uint64_t seed = 0) { return gamma_kummer(inst, seed).degree; }

}  // namespace ffext

#endif  // FFEXT_KUMMER_DEGREE_HPP
