#ifndef FFEXT_POLYRING_HPP
#define FFEXT_POLYRING_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "ratfunc.hpp"

namespace ffext {

/// A monic irreducible polynomial with its degree and norm NP = q^deg cached.
class PrimePoly {
   public:
    /// Certifies that `p` is monic and irreducible; throws InvalidArgument otherwise.
    static PrimePoly certify(const Poly& p);

    /// For callers that already know `p` is monic irreducible (factorization output, enumeration).
    static PrimePoly trusted(Poly p) { return PrimePoly(std::move(p)); }

    const Poly& poly() const noexcept { return poly_; }
    std::size_t degree() const noexcept { return deg_; }
    const BigInt& norm() const noexcept { return norm_; }

    friend bool operator==(const PrimePoly& a, const PrimePoly& b) noexcept { return a.poly_ == b.poly_; }
    friend auto operator<=>(const PrimePoly& a, const PrimePoly& b) noexcept { return a.poly_ <=> b.poly_; }

   private:
    explicit PrimePoly(Poly p) : poly_(std::move(p)), deg_(poly_.degree().value()) {
        norm_ = boost::multiprecision::pow(BigInt(poly_.ctx().q()), static_cast<unsigned>(deg_));
    }

    Poly poly_;
    std::size_t deg_;
    BigInt norm_;
};

struct Factorization {
    FieldElem unit;
    std::vector<std::pair<PrimePoly, unsigned>> factors;  // sorted, distinct primes

    Poly expand(const Field& f) const {
        Poly acc = Poly::constant(f, unit);
        for (const auto& [prime, mult] : factors) acc *= pow(prime.poly(), mult);
        return acc;
    }
};

/// t^(q^k) mod f for k = 0..count, computed by iterated q-th powers.
inline std::vector<Poly> frobenius_orbit_of_t(const Poly& f, std::size_t count) {
    std::vector<Poly> out;
    out.reserve(count + 1);
    out.push_back(Poly::t(f.field()) % f);
    for (std::size_t k = 0; k < count; ++k) out.push_back(powmod(out.back(), std::uint64_t{f.ctx().q()}, f));
    return out;
}

/// Rabin's test: f of degree d is irreducible iff t^(q^d) = t mod f and
/// gcd(t^(q^(d/r)) - t, f) = 1 for every prime r | d.
inline bool is_irreducible(const Poly& f) {
    if (f.is_constant()) throw InvalidArgument("irreducibility test needs a nonconstant polynomial");
    const std::size_t d = f.degree().value();
    if (d == 1) return true;
    const Poly fm = f.monic();
    if (fm.coeff(0).is_zero()) return false;
    const auto orbit = frobenius_orbit_of_t(fm, d);
    const Poly t = Poly::t(f.field());
    if (!(orbit[d] - t).is_zero()) return false;
    for (auto r : detail::distinct_prime_factors(d))
        if (!gcd(orbit[d / r] - t, fm).is_one()) return false;
    return true;
}

inline PrimePoly PrimePoly::certify(const Poly& p) {
    if (!p.is_monic()) throw InvalidArgument("prime polynomial must be monic");
    if (p.is_constant() || !is_irreducible(p)) throw InvalidArgument("polynomial is not irreducible");
    return PrimePoly(p);
}

namespace detail {

/// g(t) with g(t)^p = f(t); requires every exponent of f to be a multiple of p.
inline Poly poly_pth_root(const Poly& f) {
    const FieldCtx& F = f.ctx();
    const std::uint32_t p = F.p();
    std::vector<FieldElem> out((f.size() + p - 1) / p, FieldElem{0});
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.coeff(i).is_zero()) continue;
        if (i % p) throw InternalError("p-th root of a polynomial with a non-p-divisible exponent");
        out[i / p] = F.pth_root(f.coeff(i));
    }
    return Poly(f.field(), std::move(out));
}

/// Squarefree decomposition of a monic polynomial: pairs (g, i) with f = prod g^i, g squarefree,
/// pairwise coprime. Handles the vanishing-derivative case by coefficient p-th roots.
inline void squarefree_parts(const Poly& f, unsigned scale, std::vector<std::pair<Poly, unsigned>>& out) {
    if (f.is_constant()) return;
    Poly c = gcd(f, f.derivative());
    Poly w = f / c;
    unsigned i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (!z.is_one()) out.emplace_back(std::move(z), i * scale);
        ++i;
        w = std::move(y);
        c = c / w;
    }
    if (!c.is_one()) squarefree_parts(poly_pth_root(c), scale * f.ctx().p(), out);
}

/// Splits a squarefree monic polynomial into products of irreducibles of equal degree.
inline std::vector<std::pair<Poly, std::size_t>> distinct_degree(Poly f) {
    std::vector<std::pair<Poly, std::size_t>> out;
    const Poly t = Poly::t(f.field());
    Poly h = t % f;
    for (std::size_t d = 1; !f.is_one(); ++d) {
        if (f.degree().value() < 2 * d) {
            out.emplace_back(f, f.degree().value());
            break;
        }
        h = powmod(h, std::uint64_t{f.ctx().q()}, f);
        Poly g = gcd(h - t, f);
        if (!g.is_one()) {
            f = f / g;
            h = h % f;
            out.emplace_back(std::move(g), d);
        }
    }
    return out;
}

inline Poly random_poly_below(const Field& field, std::size_t degree_bound, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> coeff(0, field->q() - 1);
    std::vector<FieldElem> v(degree_bound);
    for (auto& c : v) c = FieldElem{coeff(rng)};
    return Poly(field, std::move(v));
}

/// Cantor-Zassenhaus equal-degree splitting of a squarefree product of degree-d irreducibles.
/// Retries with fresh randomness until a proper split appears.
inline void equal_degree(const Poly& f, std::size_t d, std::mt19937_64& rng, std::vector<Poly>& out) {
    const std::size_t n = f.degree().value();
    if (n == d) {
        out.push_back(f);
        return;
    }
    const FieldCtx& F = f.ctx();
    const BigInt qd = boost::multiprecision::pow(BigInt(F.q()), static_cast<unsigned>(d));
    for (;;) {
        const Poly a = random_poly_below(f.field(), n, rng);
        if (a.is_constant()) continue;
        Poly b(f.field());
        if (F.p() == 2) {
            // Absolute trace map a + a^2 + ... + a^(2^(e d - 1)).
            Poly term = a % f;
            b = term;
            for (std::size_t i = 1; i < std::size_t{F.e()} * d; ++i) {
                term = mulmod(term, term, f);
                b += term;
            }
        } else {
            b = powmod(a, (qd - 1) / 2, f) - Poly::one(f.field());
        }
        Poly g = gcd(b, f);
        if (g.is_one() || g.degree() == f.degree()) continue;
        equal_degree(g, d, rng, out);
        equal_degree(f / g, d, rng, out);
        return;
    }
}

}  // namespace detail

/// Complete factorization into monic irreducibles. The seed drives equal-degree splitting only;
/// the result does not depend on it.
inline Factorization factor(const Poly& f, std::uint64_t seed = 0) {
    if (f.is_zero()) throw InvalidArgument("cannot factor the zero polynomial");
    Factorization out{f.lead(), {}};
    const Poly monic = f.monic();
    std::vector<std::pair<Poly, unsigned>> sqf;
    detail::squarefree_parts(monic, 1, sqf);
    std::mt19937_64 rng(seed);
    for (auto& [part, mult] : sqf) {
        for (auto& [block, d] : detail::distinct_degree(part)) {
            std::vector<Poly> irreducibles;
            detail::equal_degree(block, d, rng, irreducibles);
            for (auto& g : irreducibles) out.factors.emplace_back(PrimePoly::trusted(std::move(g)), mult);
        }
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

/// Möbius function by trial division.
inline int moebius(std::uint64_t n) {
    int mu = 1;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        n /= d;
        if (n % d == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

/// Exact number of monic irreducibles of degree N over F_q: (1/N) sum_{d | N} mu(d) q^(N/d).
inline BigInt count_irreducibles(std::uint64_t q, std::uint64_t N) {
    if (N == 0) throw InvalidArgument("degree must be >= 1");
    BigInt sum = 0;
    for (std::uint64_t d = 1; d <= N; ++d) {
        if (N % d) continue;
        const int mu = moebius(d);
        if (mu == 0) continue;
        const BigInt term = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(N / d));
        sum += mu > 0 ? term : BigInt(-term);
    }
    if (sum % N != 0) throw InternalError("Moebius sum not divisible by N");
    return sum / N;
}

inline constexpr std::uint64_t default_enumeration_budget = 100'000'000ULL;

/// q^N, or throws BudgetExceeded if it is larger than the budget.
inline std::uint64_t monic_count_within_budget(std::uint64_t q, std::uint64_t N, std::uint64_t budget) {
    BigInt total = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(N));
    if (total > budget) {
        const auto shown = total > BigInt(~0ULL) ? ~0ULL : static_cast<unsigned long long>(total);
        throw BudgetExceeded(shown, budget);
    }
    return static_cast<std::uint64_t>(total);
}

/// The monic polynomial of degree N whose lower coefficients are the base-q digits of `index`
/// (coefficient of t^(N-1) most significant). Increasing index is lexicographic order.
inline Poly monic_from_index(const Field& field, std::size_t N, std::uint64_t index) {
    std::vector<FieldElem> c(N + 1);
    const std::uint64_t q = field->q();
    for (std::size_t i = 0; i < N; ++i) {
        c[i] = FieldElem{static_cast<std::uint32_t>(index % q)};
        index /= q;
    }
    c[N] = field->one();
    return Poly(field, std::move(c));
}

/// Single-consumer stream over the monic irreducibles of degree N, scanned in lexicographic
/// order over the index range [begin, end) of monic polynomials.
class IrreducibleStream {
   public:
    IrreducibleStream(Field field, std::size_t N, std::uint64_t budget = default_enumeration_budget)
        : field_(std::move(field)), N_(N) {
        if (N == 0) throw InvalidArgument("degree must be >= 1");
        end_ = monic_count_within_budget(field_->q(), N, budget);
    }

    /// Restricts the scan to monic indices [begin, end); used for data-parallel chunks.
    IrreducibleStream(Field field, std::size_t N, std::uint64_t begin, std::uint64_t end)
        : field_(std::move(field)), N_(N), next_(begin), end_(end) {}

    std::uint64_t total_candidates() const noexcept { return end_; }

    std::optional<PrimePoly> next() {
        while (next_ < end_) {
            Poly f = monic_from_index(field_, N_, next_++);
            if (N_ > 1 && f.coeff(0).is_zero()) continue;
            if (is_irreducible(f)) return PrimePoly::trusted(std::move(f));
        }
        return std::nullopt;
    }

   private:
    Field field_;
    std::size_t N_;
    std::uint64_t next_ = 0;
    std::uint64_t end_ = 0;
};

/// All monic irreducibles of degree N in lexicographic order.
inline std::vector<PrimePoly> enumerate_irreducibles(const Field& field, std::size_t N,
                                                     std::uint64_t budget = default_enumeration_budget) {
    IrreducibleStream stream(field, N, budget);
    std::vector<PrimePoly> out;
    while (auto p = stream.next()) out.push_back(std::move(*p));
    return out;
}

/// Digits a_0..a_{count-1}, deg a_k < deg P, with x = sum a_k P^k (x must have degree < count*deg P).
inline std::vector<Poly> padic_digits(Poly x, const Poly& P, std::size_t count) {
    std::vector<Poly> digits;
    digits.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        auto [q, r] = divrem(x, P);
        digits.push_back(std::move(r));
        x = std::move(q);
    }
    if (!x.is_zero()) throw InternalError("P-adic expansion did not terminate in the expected number of digits");
    return digits;
}

struct PrincipalPart {
    PrimePoly prime;
    unsigned order;  // exponent e of P in the denominator
    Poly numerator;  // Q with deg Q < deg P^e and gcd(Q, P) = 1
};

struct PartialFractions {
    std::vector<PrincipalPart> parts;  // sorted by prime
    Poly polynomial_part;

    RatFunc reconstruct() const {
        RatFunc acc(polynomial_part);
        for (const auto& pp : parts) acc += RatFunc(pp.numerator, pow(pp.prime.poly(), pp.order));
        return acc;
    }
};

/// D = sum Q_i / P_i^e_i + f, computed by CRT over the prime-power factors of the denominator.
inline PartialFractions partial_fractions(const RatFunc& D, std::uint64_t seed = 0) {
    auto [f, r] = divrem(D.num(), D.den());
    PartialFractions out{{}, std::move(f)};
    if (D.den().is_one()) return out;
    const Factorization den = factor(D.den(), seed);
    for (const auto& [prime, mult] : den.factors) {
        const Poly local_mod = pow(prime.poly(), mult);
        const Poly cofactor = D.den() / local_mod;
        Poly numerator = mulmod(r, invmod(cofactor % local_mod, local_mod), local_mod);
        out.parts.push_back({prime, mult, std::move(numerator)});
    }
    return out;
}

}  // namespace ffext

#endif  // FFEXT_POLYRING_HPP
