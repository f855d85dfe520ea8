#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace ffext;

namespace {

Poly P(const Field& F, std::string_view s) { return parse_poly(F, s); }
RatFunc R(const Field& F, std::string_view s) { return parse_ratfunc(F, s); }
PrimePoly prime(const Field& F, std::string_view s) { return PrimePoly::certify(P(F, s)); }

struct KummerField {
    std::uint64_t q;
    std::uint32_t m;
};

const std::vector<KummerField> kummer_fields = {{3, 2}, {4, 3}, {5, 2}, {7, 2}, {7, 3}, {9, 2}, {13, 3}, {16, 5}, {25, 3}};

}  // namespace

TEST(PowerResidue, NamedExamples) {
    const Field F = FieldCtx::make(3);
    const PrimePoly t = prime(F, "t");
    EXPECT_EQ(power_residue_symbol(P(F, "t+1"), t, 2), SymbolValue::unit(0, 2));
    EXPECT_EQ(power_residue_symbol(P(F, "t+2"), t, 2), SymbolValue::unit(1, 2));
    EXPECT_TRUE(power_residue_symbol(P(F, "t"), t, 2).is_zero());
    EXPECT_EQ(power_residue_symbol(P(F, "t+2"), t, 2).to_string(), "Unit(1)");
    EXPECT_EQ(power_residue_symbol(P(F, "t"), t, 2).to_string(), "Zero");
}

TEST(PowerResidue, Errors) {
    const Field F = FieldCtx::make(5);
    EXPECT_THROW(power_residue_symbol(P(F, "t"), prime(F, "t+1"), 3), InvalidArgument);
    EXPECT_THROW(power_residue_symbol(P(F, "t"), prime(F, "t+1"), 4), InvalidArgument);
    EXPECT_THROW(symbol_is_split(P(F, "t^2+t"), prime(F, "t+1"), 2), RamifiedOrInvalid);
}

TEST(SymbolIsSplit, NamedExamples) {
    const Field F = FieldCtx::make(3);
    EXPECT_TRUE(symbol_is_split(P(F, "t+1"), prime(F, "t"), 2));
    EXPECT_FALSE(symbol_is_split(P(F, "t+2"), prime(F, "t"), 2));
    oracle::Gen gen(1);
    const Field F7 = FieldCtx::make(7);
    for (int i = 0; i < 50; ++i) {
        const Poly b = gen.nonzero_poly(F7, 4);
        const Poly Pr = gen.prime(F7, 1 + gen.below(3));
        if ((b % Pr).is_zero()) continue;
        EXPECT_TRUE(symbol_is_split(b * b, PrimePoly::trusted(Pr), 2));
    }
}

TEST(PowerResidue, MatchesNormOracle) {
    oracle::Gen gen(2);
    for (const auto& [q, m] : kummer_fields) {
        const Field F = FieldCtx::of_order(q);
        for (int i = 0; i < 60; ++i) {
            const Poly Pr = gen.prime(F, 1 + gen.below(q <= 5 ? 4 : 2));
            Poly a = gen.nonzero_poly(F, 6);
            if (i % 10 == 0) a = a * Pr;
            const SymbolValue s = power_residue_symbol(a, PrimePoly::trusted(Pr), m);
            const auto want = oracle::symbol_via_norm(a, Pr, m);
            ASSERT_EQ(s.is_zero(), !want.has_value());
            if (want) {
                ASSERT_EQ(s.exponent, *want) << q << " " << m << " " << format_poly(a) << " mod " << format_poly(Pr);
            }
            ASSERT_EQ(s.modulus, m);
        }
    }
}

TEST(PowerResidue, TrivialExactlyOnMthPowerResidues) {
    // Brute force: a is an m-th power mod P iff some x in F_q[t]/P has x^m = a.
    const Field F = FieldCtx::make(7);
    for (const auto* s : {"t^2+1", "t+3", "t^2+t+3"}) {
        const PrimePoly Pr = prime(F, s);
        const std::size_t d = Pr.degree();
        std::set<std::vector<std::uint32_t>> powers;
        for (std::uint64_t i = 0; i < oracle::ipow(7, d); ++i) {
            std::vector<FieldElem> c(d);
            std::uint64_t x = i;
            for (auto& v : c) {
                v = FieldElem{static_cast<std::uint32_t>(x % 7)};
                x /= 7;
            }
            const Poly r = powmod(Poly(F, c), std::uint64_t{3}, Pr.poly());
            std::vector<std::uint32_t> key(d, 0);
            for (std::size_t k = 0; k < d; ++k) key[k] = r.coeff(k).packed;
            powers.insert(key);
        }
        for (std::uint64_t i = 1; i < oracle::ipow(7, d); ++i) {
            std::vector<FieldElem> c(d);
            std::uint64_t x = i;
            for (auto& v : c) {
                v = FieldElem{static_cast<std::uint32_t>(x % 7)};
                x /= 7;
            }
            const Poly a(F, c);
            std::vector<std::uint32_t> key(d, 0);
            for (std::size_t k = 0; k < d; ++k) key[k] = a.coeff(k).packed;
            ASSERT_EQ(power_residue_symbol(a, Pr, 3).is_trivial(), powers.count(key) == 1);
        }
    }
}

TEST(PowerResidue, MultiplicativeAndKillsMthPowers) {
    oracle::Gen gen(3);
    for (int i = 0; i < 1000; ++i) {
        const auto& [q, m] = kummer_fields[i % kummer_fields.size()];
        const Field F = FieldCtx::of_order(q);
        const PrimePoly Pr = PrimePoly::trusted(gen.prime(F, 1 + gen.below(3)));
        const Poly a = gen.nonzero_poly(F, 5), b = gen.nonzero_poly(F, 5);
        if ((a % Pr.poly()).is_zero() || (b % Pr.poly()).is_zero()) continue;
        const auto sa = power_residue_symbol(a, Pr, m), sb = power_residue_symbol(b, Pr, m);
        ASSERT_EQ(power_residue_symbol(a * b, Pr, m).exponent, (sa.exponent + sb.exponent) % m);
        ASSERT_TRUE(power_residue_symbol(pow(a, m), Pr, m).is_trivial());
    }
}

TEST(PowerResidue, BigNormExponent) {
    // NP - 1 = 5^30 - 1 does not fit in 64 bits.
    const Field F = FieldCtx::make(5);
    oracle::Gen gen(6);
    Poly Pr = gen.monic_poly(F, 30);
    while (!is_irreducible(Pr)) Pr = gen.monic_poly(F, 30);
    const auto s = power_residue_symbol(P(F, "t+1"), PrimePoly::trusted(Pr), 2);
    const auto want = oracle::symbol_via_norm(P(F, "t+1"), Pr, 2);
    EXPECT_EQ(s.exponent, *want);
}

TEST(Hasse, NamedExamples) {
    const Field F2 = FieldCtx::make(2), F3 = FieldCtx::make(3);
    for (const auto* s : {"t", "t+1", "t^2+t+1", "t^3+t+1"}) {
        EXPECT_EQ(hasse_symbol(RatFunc(F2), prime(F2, s)).value, 0u);
        EXPECT_EQ(hasse_symbol(R(F2, "t^2+t"), prime(F2, s)).value, 0u);
        EXPECT_TRUE(hasse_is_split(R(F2, "t^2+t"), prime(F2, s)));
    }
    EXPECT_EQ(hasse_symbol(R(F2, "1/(t+1)"), prime(F2, "t")).value, 1u);
    EXPECT_FALSE(hasse_is_split(R(F2, "1/(t+1)"), prime(F2, "t")));
    EXPECT_EQ(hasse_symbol(R(F3, "1/t"), prime(F3, "t+1")).value, 2u);
    EXPECT_FALSE(hasse_is_split(R(F3, "1/t"), prime(F3, "t+1")));
}

TEST(Hasse, PoleRejected) {
    const Field F = FieldCtx::make(3);
    EXPECT_THROW(hasse_symbol(R(F, "1/t"), prime(F, "t")), PoleAtP);
    EXPECT_THROW(hasse_symbol_telescoping(R(F, "1/t^2"), prime(F, "t")), PoleAtP);
    EXPECT_THROW(hasse_is_split(R(F, "t/(t^2+1)"), prime(F, "t^2+1")), PoleAtP);
}

TEST(Hasse, FormulasAgreeWithTraceMatrix) {
    oracle::Gen gen(4);
    const std::vector<std::uint64_t> qs = {2, 3, 4, 5, 8, 9, 25};
    for (int i = 0; i < 1000; ++i) {
        const Field F = FieldCtx::of_order(qs[i % qs.size()]);
        const Poly Pr = gen.prime(F, 1 + gen.below(3));
        const RatFunc D = gen.ratfunc(F, 5, 4);
        if ((D.den() % Pr).is_zero()) continue;
        const PrimePoly PP = PrimePoly::trusted(Pr);
        const auto a = hasse_symbol_composed(D, PP).value;
        ASSERT_EQ(a, hasse_symbol_telescoping(D, PP).value);
        ASSERT_EQ(a, oracle::hasse(D, Pr));
    }
}

TEST(Hasse, AdditiveAndPInvariant) {
    oracle::Gen gen(5);
    const std::vector<std::uint64_t> qs = {2, 3, 4, 7, 9};
    for (int i = 0; i < 1000; ++i) {
        const Field F = FieldCtx::of_order(qs[i % qs.size()]);
        const PrimePoly Pr = PrimePoly::trusted(gen.prime(F, 1 + gen.below(3)));
        const RatFunc D1 = gen.ratfunc(F, 4, 3), D2 = gen.ratfunc(F, 4, 3), x = gen.ratfunc(F, 3, 2);
        auto pole = [&](const RatFunc& D) { return (D.den() % Pr.poly()).is_zero(); };
        if (pole(D1) || pole(D2) || pole(x)) continue;
        const std::uint32_t p = F->p();
        const auto h1 = hasse_symbol(D1, Pr).value, h2 = hasse_symbol(D2, Pr).value;
        ASSERT_EQ(hasse_symbol(D1 + D2, Pr).value, (h1 + h2) % p);
        ASSERT_EQ(hasse_symbol(D1 + artin_schreier_op(x), Pr).value, h1);
        ASSERT_TRUE(hasse_is_split(artin_schreier_op(x), Pr));
    }
}

TEST(SymbolValue, Rendering) {
    EXPECT_EQ(SymbolValue::unit(7, 5).exponent, 2u);
    EXPECT_TRUE(SymbolValue::unit(0, 3).is_trivial());
    EXPECT_FALSE(SymbolValue::zero(3).is_trivial());
}
