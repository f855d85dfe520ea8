#ifndef FFEXT_ARTIN_SCHREIER_HPP
#define FFEXT_ARTIN_SCHREIER_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "polyring.hpp"
#include "ratfunc.hpp"

namespace ffext {

/// One P-adic component A_j / P^j of a principal part, deg A_j < deg P, A_j != 0, p does not divide j.
struct LocalComponent {
    unsigned order;
    Poly digit;

    friend bool operator==(const LocalComponent&, const LocalComponent&) = default;
};

struct LocalPart {
    PrimePoly prime;
    std::vector<LocalComponent> components;  // increasing order

    friend bool operator==(const LocalPart&, const LocalPart&) = default;
};

/// Canonical representative of the class of D in k / (x^p - x)k.
///
/// Every P-adic component order and every monomial degree of the polynomial part is prime to p,
/// and the constant term is replaced by its trace to F_p. Two elements of k differ by some
/// x^p - x exactly when their normal forms agree field by field, which is what operator== tests.
/// The witness is not part of that comparison: it satisfies D = value() + witness^p - witness.
class NormalForm {
   public:
    explicit NormalForm(const Field& f) : field_(f), witness_(f) {}

    const Field& field() const noexcept { return field_; }
    const std::vector<LocalPart>& local_parts() const noexcept { return local_; }
    const std::map<std::size_t, FieldElem>& poly_part() const noexcept { return poly_; }
    std::uint32_t const_trace() const noexcept { return const_trace_; }
    const RatFunc& witness() const noexcept { return witness_; }

    bool is_empty() const noexcept { return local_.empty() && poly_.empty() && const_trace_ == 0; }

    /// Smallest constant whose trace is const_trace(); the constant actually carried by value().
    FieldElem constant_representative() const { return field_->smallest_with_trace(const_trace_); }

    RatFunc value() const {
        RatFunc acc = RatFunc::constant(field_, constant_representative());
        for (const auto& lp : local_)
            for (const auto& c : lp.components) acc += RatFunc(c.digit, pow(lp.prime.poly(), c.order));
        for (const auto& [deg, coeff] : poly_) acc += RatFunc(Poly::monomial(field_, coeff, deg));
        return acc;
    }

    friend bool operator==(const NormalForm& a, const NormalForm& b) {
        return a.local_ == b.local_ && a.poly_ == b.poly_ && a.const_trace_ == b.const_trace_;
    }

    /// a * this + b * other for a, b in F_p, with zeroed components dropped. The result carries a
    /// valid witness for a*D1 + b*D2 when this and other carry witnesses for D1 and D2.
    NormalForm combine(std::uint32_t a, const NormalForm& other, std::uint32_t b) const;

   private:
    friend NormalForm as_normalize(const RatFunc& D, std::uint64_t seed);

    Field field_;
    std::vector<LocalPart> local_;
    std::map<std::size_t, FieldElem> poly_;
    std::uint32_t const_trace_ = 0;
    RatFunc witness_;
};

namespace detail {

inline std::size_t largest_p_divisible(const std::vector<Poly>& digits, std::uint32_t p) {
    for (std::size_t j = digits.size(); j-- > 1;)
        if (j % p == 0 && !digits[j].is_zero()) return j;
    return 0;
}

/// Reduces the principal part sum_j digits[j] / P^j (digits[0] unused) so that no nonzero digit
/// sits at an order divisible by p. Subtracted terms B / P^(j/p) are accumulated into `witness`.
inline void reduce_local(std::vector<Poly>& digits, const PrimePoly& P, RatFunc& witness) {
    const FieldCtx& F = P.poly().ctx();
    const std::uint32_t p = F.p();
    const BigInt root_exp = P.norm() / p;  // Frobenius inverse in F_q[t]/(P)
    std::size_t j = largest_p_divisible(digits, p);
    while (j != 0) {
        const Poly B = powmod(digits[j], root_exp, P.poly());
        // B^p / P^j = sum_i c_i / P^(j-i), with deg B^p < j deg P so only i < j occur.
        const auto c = padic_digits(pow(B, p), P.poly(), j);
        for (std::size_t i = 0; i < j; ++i) digits[j - i] -= c[i];
        digits[j / p] += B;
        witness += RatFunc(B, pow(P.poly(), j / p));
        if (!digits[j].is_zero()) throw InternalError("leading p-divisible component survived reduction");
        const std::size_t next = largest_p_divisible(digits, p);
        if (next >= j) throw InternalError("normalization measure failed to decrease");
        j = next;
    }
}

/// Same reduction for the polynomial part: removes monomials of p-divisible degree >= p.
inline void reduce_polynomial(std::vector<FieldElem>& c, const FieldCtx& F, const Field& field, RatFunc& witness) {
    const std::uint32_t p = F.p();
    auto largest = [&] {
        for (std::size_t j = c.size(); j-- > 1;)
            if (j % p == 0 && !c[j].is_zero()) return j;
        return std::size_t{0};
    };
    std::size_t j = largest();
    while (j != 0) {
        const FieldElem b = F.pth_root(c[j]);
        c[j] = F.zero();
        c[j / p] = F.add(c[j / p], b);
        witness += RatFunc(Poly::monomial(field, b, j / p));
        const std::size_t next = largest();
        if (next >= j) throw InternalError("normalization measure failed to decrease");
        j = next;
    }
}

}  // namespace detail

/// Canonical normal form of D modulo (x^p - x)k, with witness.
inline NormalForm as_normalize(const RatFunc& D, std::uint64_t seed = 0) {
    const Field& field = D.field();
    const FieldCtx& F = *field;
    NormalForm nf(field);

    const PartialFractions pf = partial_fractions(D, seed);
    for (const auto& part : pf.parts) {
        // digits[j] is A_j in Q / P^e = sum_j A_j / P^j.
        const auto padic = padic_digits(part.numerator, part.prime.poly(), part.order);
        std::vector<Poly> digits(part.order + 1, Poly(field));
        for (unsigned j = 1; j <= part.order; ++j) digits[j] = padic[part.order - j];
        detail::reduce_local(digits, part.prime, nf.witness_);
        LocalPart lp{part.prime, {}};
        for (unsigned j = 1; j <= part.order; ++j)
            if (!digits[j].is_zero()) lp.components.push_back({j, std::move(digits[j])});
        if (!lp.components.empty()) nf.local_.push_back(std::move(lp));
    }

    std::vector<FieldElem> coeffs(pf.polynomial_part.coeffs().begin(), pf.polynomial_part.coeffs().end());
    if (coeffs.empty()) coeffs.push_back(F.zero());
    detail::reduce_polynomial(coeffs, F, field, nf.witness_);
    for (std::size_t j = 1; j < coeffs.size(); ++j)
        if (!coeffs[j].is_zero()) nf.poly_[j] = coeffs[j];

    nf.const_trace_ = F.trace_to_prime(coeffs[0]);
    const FieldElem rest = F.sub(coeffs[0], nf.constant_representative());
    const auto b = F.solve_artin_schreier_const(rest);
    if (!b) throw InternalError("trace-zero constant has no Artin-Schreier preimage");
    nf.witness_ += RatFunc::constant(field, *b);
    return nf;
}

inline NormalForm NormalForm::combine(std::uint32_t a, const NormalForm& other, std::uint32_t b) const {
    const FieldCtx& F = *field_;
    const FieldElem fa = F.from_int(a), fb = F.from_int(b);
    NormalForm out(field_);

    std::map<PrimePoly, std::map<unsigned, Poly>> merged;
    auto absorb = [&](const NormalForm& nf, FieldElem s) {
        if (s.is_zero()) return;
        for (const auto& lp : nf.local_)
            for (const auto& c : lp.components) {
                auto& slot = merged[lp.prime];
                auto it = slot.find(c.order);
                if (it == slot.end()) slot.emplace(c.order, c.digit.scaled(s));
                else it->second += c.digit.scaled(s);
            }
        for (const auto& [deg, coeff] : nf.poly_) {
            auto it = out.poly_.find(deg);
            const FieldElem v = F.mul(coeff, s);
            if (it == out.poly_.end()) out.poly_.emplace(deg, v);
            else it->second = F.add(it->second, v);
        }
    };
    absorb(*this, fa);
    absorb(other, fb);
    for (auto& [prime, comps] : merged) {
        LocalPart lp{prime, {}};
        for (auto& [order, digit] : comps)
            if (!digit.is_zero()) lp.components.push_back({order, std::move(digit)});
        if (!lp.components.empty()) out.local_.push_back(std::move(lp));
    }
    std::erase_if(out.poly_, [](const auto& kv) { return kv.second.is_zero(); });
    out.const_trace_ = static_cast<std::uint32_t>((std::uint64_t{a} * const_trace_ + std::uint64_t{b} * other.const_trace_) % F.p());

    // a*c0 + b*c0' and the new representative share a trace; their difference is x^p - x for a constant x.
    const FieldElem carried = F.add(F.mul(fa, constant_representative()), F.mul(fb, other.constant_representative()));
    const auto fix = F.solve_artin_schreier_const(F.sub(carried, out.constant_representative()));
    if (!fix) throw InternalError("combined constants disagree in trace");
    out.witness_ = witness_.scaled(fa) + other.witness_.scaled(fb) + RatFunc::constant(field_, *fix);
    return out;
}

/// Some x with x^p - x = D, or nothing if D is not in (x^p - x)k.
inline std::optional<RatFunc> in_Pk(const RatFunc& D, std::uint64_t seed = 0) {
    NormalForm nf = as_normalize(D, seed);
    if (!nf.is_empty()) return std::nullopt;
    // Empty form: value() is the zero-trace representative 0, so D = witness^p - witness.
    if (!(artin_schreier_op(nf.witness()) == D)) throw InternalError("Artin-Schreier witness failed re-verification");
    return nf.witness();
}

enum class InfinitePlace { Real, InertImaginary, RamifiedImaginary };

inline const char* to_string(InfinitePlace c) {
    switch (c) {
        case InfinitePlace::Real: return "Real";
        case InfinitePlace::InertImaginary: return "InertImaginary";
        case InfinitePlace::RamifiedImaginary: return "RamifiedImaginary";
    }
    return "?";
}

inline InfinitePlace classify_infinite_place(const NormalForm& nf) {
    if (!nf.poly_part().empty()) return InfinitePlace::RamifiedImaginary;
    return nf.const_trace() == 0 ? InfinitePlace::Real : InfinitePlace::InertImaginary;
}

inline InfinitePlace classify_infinite_place(const RatFunc& D) { return classify_infinite_place(as_normalize(D)); }

inline std::vector<PrimePoly> ramified_finite_primes(const NormalForm& nf) {
    std::vector<PrimePoly> out;
    for (const auto& lp : nf.local_parts()) out.push_back(lp.prime);
    return out;
}

inline std::vector<PrimePoly> ramified_finite_primes(const RatFunc& D) { return ramified_finite_primes(as_normalize(D)); }

/// K = k(alpha_1, ..., alpha_l) with alpha_i^p - alpha_i = D_i.
struct ASInstance {
    Field field;
    std::vector<RatFunc> S;

    ASInstance(Field f, std::vector<RatFunc> elements) : field(std::move(f)), S(std::move(elements)) {
        for (const auto& D : S) {
            if (D.is_zero()) throw InvalidArgument("elements of S must be nonzero");
            if (!(*D.field() == *field)) throw InvalidArgument("element of S over a different field");
        }
    }
};

/// Label of one F_p coordinate of a normal form.
struct CoordLabel {
    enum class Kind { Finite, Infinite, Constant };
    Kind kind;
    std::optional<PrimePoly> prime;  // Finite only
    std::size_t order = 0;           // P-adic order or monomial degree
    std::size_t index = 0;           // Finite: k*e + s for coefficient t^k, F_p coordinate s; Infinite: s

    friend bool operator==(const CoordLabel&, const CoordLabel&) = default;
};

/// sum a_i D_i = constant + F^p - F. Kernel witnesses have constant 0.
struct ASWitness {
    std::vector<std::uint32_t> coefficients;
    FieldElem constant;
    RatFunc F;
};

struct ASReport {
    std::vector<NormalForm> normal_forms;
    std::vector<CoordLabel> basis;  // constant coordinate last
    MatrixModP<std::uint32_t> matrix;
    std::vector<std::vector<std::uint32_t>> kernel_basis;
    std::size_t r = 0;
    BigInt gamma;
    BigInt degree;
    bool geometric = true;
    std::vector<ASWitness> witnesses;
    /// For non-geometric instances: a combination congruent to a constant of nonzero trace.
    std::optional<ASWitness> obstruction;
};

inline RatFunc as_combination(const ASInstance& inst, std::span<const std::uint32_t> a) {
    RatFunc acc(inst.field);
    for (std::size_t i = 0; i < inst.S.size(); ++i)
        if (a[i]) acc += inst.S[i].scaled(inst.field->from_int(a[i]));
    return acc;
}

/// gamma_S, r and [K:k] = p^(l-r) from the kernel over F_p of the normal-form coordinates.
inline ASReport gamma_as(const ASInstance& inst, std::uint64_t seed = 0) {
    const FieldCtx& F = *inst.field;
    const std::uint32_t p = F.p();
    const std::size_t e = F.e();
    const std::size_t l = inst.S.size();

    std::vector<NormalForm> nfs;
    nfs.reserve(l);
    for (const auto& D : inst.S) nfs.push_back(as_normalize(D, seed));

    // Union of (P, j) and (infinity, j) slots.
    std::map<std::pair<PrimePoly, std::size_t>, std::size_t> finite_slots;
    std::map<std::size_t, std::size_t> infinite_slots;
    for (const auto& nf : nfs) {
        for (const auto& lp : nf.local_parts())
            for (const auto& c : lp.components) finite_slots.emplace(std::pair{lp.prime, std::size_t{c.order}}, 0);
        for (const auto& [deg, coeff] : nf.poly_part()) infinite_slots.emplace(deg, 0);
    }
    std::vector<CoordLabel> basis;
    for (auto& [key, start] : finite_slots) {
        start = basis.size();
        const std::size_t width = key.first.degree() * e;
        for (std::size_t idx = 0; idx < width; ++idx)
            basis.push_back({CoordLabel::Kind::Finite, key.first, key.second, idx});
    }
    for (auto& [deg, start] : infinite_slots) {
        start = basis.size();
        for (std::size_t idx = 0; idx < e; ++idx) basis.push_back({CoordLabel::Kind::Infinite, std::nullopt, deg, idx});
    }
    const std::size_t const_col = basis.size();
    basis.push_back({CoordLabel::Kind::Constant, std::nullopt, 0, 0});

    MatrixModP<std::uint32_t> matrix(l, basis.size(), p);
    for (std::size_t i = 0; i < l; ++i) {
        for (const auto& lp : nfs[i].local_parts())
            for (const auto& c : lp.components) {
                const std::size_t start = finite_slots.at({lp.prime, c.order});
                for (std::size_t k = 0; k < c.digit.size(); ++k) {
                    const auto co = F.coords(c.digit.coeff(k));
                    for (std::size_t s = 0; s < e; ++s) matrix.set(i, start + k * e + s, co[s]);
                }
            }
        for (const auto& [deg, coeff] : nfs[i].poly_part()) {
            const auto co = F.coords(coeff);
            for (std::size_t s = 0; s < e; ++s) matrix.set(i, infinite_slots.at(deg) + s, co[s]);
        }
        matrix.set(i, const_col, nfs[i].const_trace());
    }

    ASReport rep{std::move(nfs), std::move(basis), matrix, matrix.left_kernel(), 0, 0, 0, true, {}, std::nullopt};
    rep.r = rep.kernel_basis.size();
    rep.gamma = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(rep.r));
    rep.degree = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(l - rep.r));

    for (const auto& a : rep.kernel_basis) {
        if (!is_zero_vector<std::uint32_t>(matrix.left_multiply(a))) throw InternalError("kernel vector does not annihilate");
        auto x = in_Pk(as_combination(inst, a), seed);
        if (!x) throw InternalError("kernel combination is not in (x^p - x)k");
        rep.witnesses.push_back({a, F.zero(), std::move(*x)});
    }

    const auto reduced_kernel = matrix.without_column(const_col).left_kernel();
    rep.geometric = reduced_kernel.size() == rep.r;
    if (!rep.geometric) {
        for (const auto& a : reduced_kernel) {
            if (is_zero_vector<std::uint32_t>(matrix.left_multiply(a))) continue;
            const RatFunc combo = as_combination(inst, a);
            const NormalForm nf = as_normalize(combo, seed);
            const FieldElem c = nf.constant_representative();
            if (!(RatFunc::constant(inst.field, c) + artin_schreier_op(nf.witness()) == combo))
                throw InternalError("obstruction failed re-verification");
            rep.obstruction = ASWitness{a, c, nf.witness()};
            break;
        }
    }
    return rep;
}

inline BigInt degree_as(const ASInstance& inst, std::uint64_t seed = 0) { return gamma_as(inst, seed).degree; }

}  // namespace ffext

#endif  // FFEXT_ARTIN_SCHREIER_HPP
