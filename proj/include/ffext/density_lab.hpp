#ifndef FFEXT_DENSITY_LAB_HPP
#define FFEXT_DENSITY_LAB_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "artin_schreier.hpp"
#include "cyclotomic.hpp"
#include "errors.hpp"
#include "kummer_degree.hpp"
#include "polyring.hpp"
#include "residue_symbols.hpp"

namespace ffext {

struct EnumerationOptions {
    std::uint64_t budget = default_enumeration_budget;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct TallyResult {
    std::uint64_t primes = 0;    // irreducibles seen
    std::uint64_t excluded = 0;  // classifier returned no bin
    std::vector<std::uint64_t> bins;
};

/// Streams every monic irreducible of degree N through `classify`, which maps a prime to a bin
/// index or to nothing (excluded). The index space is cut into chunks processed by a worker
/// pool; per-chunk tallies are merged by addition, so the result does not depend on scheduling.
template <class Classifier>
TallyResult tally_irreducibles(const Field& field, std::size_t N, std::size_t bins, const Classifier& classify,
                               const EnumerationOptions& opt = {}) {
    const std::uint64_t total = monic_count_within_budget(field->q(), N, opt.budget);
    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t chunk_count = std::min<std::uint64_t>(total, std::uint64_t{threads} * 8);
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunk_count));

    TallyResult merged;
    merged.bins.assign(bins, 0);
    std::mutex merge_mutex;
    std::atomic<std::uint64_t> next_chunk{0};
    std::exception_ptr failure;

    auto worker = [&] {
        TallyResult local;
        local.bins.assign(bins, 0);
        try {
            for (std::uint64_t c; (c = next_chunk.fetch_add(1)) < chunk_count;) {
                IrreducibleStream stream(field, N, total * c / chunk_count, total * (c + 1) / chunk_count);
                while (auto P = stream.next()) {
                    ++local.primes;
                    if (auto bin = classify(*P)) ++local.bins.at(*bin);
                    else ++local.excluded;
                }
            }
        } catch (...) {
            std::lock_guard lock(merge_mutex);
            if (!failure) failure = std::current_exception();
            return;
        }
        std::lock_guard lock(merge_mutex);
        merged.primes += local.primes;
        merged.excluded += local.excluded;
        for (std::size_t i = 0; i < bins; ++i) merged.bins[i] += local.bins[i];
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return merged;
}

using DensityInstance = std::variant<KummerInstance, ASInstance>;

/// The exact-engine facts the density lab needs, shared by both extension kinds.
struct ExactSummary {
    std::string kind;  // "kummer" or "artin-schreier"
    std::uint32_t m = 0;  // m, or p for Artin-Schreier
    std::size_t l = 0;
    std::size_t r = 0;
    BigInt gamma;
    BigInt degree;
    bool geometric = true;
    std::optional<std::vector<std::uint32_t>> obstruction;
    MatrixModP<std::uint32_t> matrix{0, 0, 2};
};

inline ExactSummary exact_summary(const DensityInstance& inst, std::uint64_t seed = 0) {
    if (const auto* k = std::get_if<KummerInstance>(&inst)) {
        auto rep = gamma_kummer(*k, seed);
        return {"kummer", k->m, k->S.size(), rep.r, rep.gamma, rep.degree, rep.geometric,
                rep.obstruction ? std::optional(rep.obstruction->exponents) : std::nullopt, rep.matrix};
    }
    const auto& a = std::get<ASInstance>(inst);
    auto rep = gamma_as(a, seed);
    return {"artin-schreier", a.field->p(), a.S.size(), rep.r, rep.gamma, rep.degree, rep.geometric,
            rep.obstruction ? std::optional(rep.obstruction->coefficients) : std::nullopt, rep.matrix};
}

inline const Field& instance_field(const DensityInstance& inst) {
    return std::visit([](const auto& i) -> const Field& { return i.field; }, inst);
}

inline std::size_t instance_size(const DensityInstance& inst) {
    return std::visit([](const auto& i) { return i.S.size(); }, inst);
}

/// Symbol classes of every element of S at P, or nothing when P is in the excluded set
/// (divides some D_i in the Kummer case, divides some denominator in the Artin-Schreier case).
inline std::optional<std::vector<std::uint32_t>> symbol_classes(const DensityInstance& inst, const PrimePoly& P) {
    std::vector<std::uint32_t> out;
    if (const auto* k = std::get_if<KummerInstance>(&inst)) {
        out.reserve(k->S.size());
        for (const auto& D : k->S) {
            const SymbolValue s = power_residue_symbol(D, P, k->m);
            if (s.is_zero()) return std::nullopt;
            out.push_back(s.exponent);
        }
        return out;
    }
    const auto& a = std::get<ASInstance>(inst);
    for (const auto& D : a.S)
        if ((D.den() % P.poly()).is_zero()) return std::nullopt;
    out.reserve(a.S.size());
    for (const auto& D : a.S) out.push_back(hasse_symbol(D, P).value);
    return out;
}

struct CombinationSum {
    std::vector<std::uint32_t> exponents;
    CyclotomicInt sum;
};

struct DensityRow {
    std::size_t N = 0;
    std::uint64_t pi = 0;        // exact count of monic irreducibles of degree N
    std::uint64_t excluded = 0;  // primes in the excluded set (or sampled primes, when sampled)
    std::uint64_t counted = 0;   // primes entering the fraction
    std::uint64_t split = 0;     // primes at which every symbol is trivial
    double fraction = 0;
    double predicted = 0;
    double abs_deviation = 0;
    double deviation_units = 0;  // |split - predicted * counted| in units of q^(N/2)/N
    std::vector<std::vector<std::uint64_t>> class_counts;  // per element of S, per class
    std::vector<CombinationSum> character_sums;            // non-kernel combinations only
    bool sampled = false;
    std::uint64_t samples = 0;
    double std_error = 0;
};

struct DensityReport {
    ExactSummary exact;
    bool heuristic = false;
    std::string warning;
    std::uint64_t seed = 0;
    std::size_t N_min = 0;
    std::size_t N_max = 0;
    std::vector<DensityRow> rows;
    double wall_clock_seconds = 0;
};

struct DensityOptions : EnumerationOptions {
    std::uint64_t seed = 0;
    bool force = false;
    std::uint64_t sample_size = 0;  // > 0: estimate degrees beyond the budget by sampling
    std::size_t max_combinations = 4096;
};

namespace detail {

inline std::vector<std::uint32_t> unpack_bin(std::size_t bin, std::uint32_t m, std::size_t l) {
    std::vector<std::uint32_t> v(l);
    for (std::size_t i = 0; i < l; ++i) {
        v[i] = static_cast<std::uint32_t>(bin % m);
        bin /= m;
    }
    return v;
}

inline std::size_t pack_bin(std::span<const std::uint32_t> v, std::uint32_t m) {
    std::size_t bin = 0;
    for (std::size_t i = v.size(); i-- > 0;) bin = bin * m + v[i];
    return bin;
}

inline double error_scale(std::uint64_t q, std::size_t N) {
    return std::pow(static_cast<double>(q), static_cast<double>(N) / 2.0) / static_cast<double>(N);
}

inline void fill_row_from_bins(DensityRow& row, const ExactSummary& ex, std::span<const std::uint64_t> bins,
                               std::size_t max_combinations) {
    const std::uint32_t m = ex.m;
    const std::size_t l = ex.l;
    row.class_counts.assign(l, std::vector<std::uint64_t>(m, 0));
    for (std::size_t bin = 0; bin < bins.size(); ++bin) {
        if (!bins[bin]) continue;
        const auto cls = unpack_bin(bin, m, l);
        for (std::size_t i = 0; i < l; ++i) row.class_counts[i][cls[i]] += bins[bin];
    }
    row.split = bins.empty() ? 0 : bins[0];
    if (bins.size() > max_combinations) return;
    for (std::size_t b = 1; b < bins.size(); ++b) {
        const auto exps = unpack_bin(b, m, l);
        if (is_zero_vector<std::uint32_t>(ex.matrix.left_multiply(exps))) continue;
        std::vector<std::uint64_t> counts(m, 0);
        for (std::size_t bin = 0; bin < bins.size(); ++bin) {
            if (!bins[bin]) continue;
            const auto cls = unpack_bin(bin, m, l);
            std::uint64_t k = 0;
            for (std::size_t i = 0; i < l; ++i) k += std::uint64_t{exps[i]} * cls[i];
            counts[k % m] += bins[bin];
        }
        row.character_sums.push_back({exps, CyclotomicInt::character_sum_from_counts(counts)});
    }
}

}  // namespace detail

/// Fraction of degree-N primes outside the excluded set at which every element of S has a
/// trivial symbol, for each N in [N_min, N_max], compared with gamma_S / m^l = 1/[K:k].
inline DensityReport split_density(const DensityInstance& inst, std::size_t N_min, std::size_t N_max,
                                   const DensityOptions& opt = {}) {
    if (N_min < 1 || N_max < N_min) throw InvalidArgument("degree range must satisfy 1 <= N_min <= N_max");
    const auto start = std::chrono::steady_clock::now();
    DensityReport rep{exact_summary(inst, opt.seed), false, "", opt.seed, N_min, N_max, {}, 0};
    const ExactSummary& ex = rep.exact;
    if (!ex.geometric) {
        if (!opt.force) {
            std::string combo;
            for (auto a : *ex.obstruction) combo += (combo.empty() ? "" : ",") + std::to_string(a);
            throw NonGeometric("extension is not geometric: the combination (" + combo +
                               ") generates a constant field extension");
        }
        rep.heuristic = true;
        rep.warning =
            "extension is not geometric: only the Dirichlet density 1/[K:k] is predicted; the relative "
            "density need not exist, so this comparison is heuristic";
    }

    const Field& field = instance_field(inst);
    const std::uint32_t m = ex.m;
    const std::size_t l = ex.l;
    BigInt nbins_big = boost::multiprecision::pow(BigInt(m), static_cast<unsigned>(l));
    if (nbins_big > (std::uint64_t{1} << 20)) throw InvalidArgument("too many symbol-class combinations (m^l > 2^20)");
    const auto nbins = static_cast<std::size_t>(nbins_big);
    const double predicted = static_cast<double>(ex.gamma) / static_cast<double>(nbins_big);

    auto classify = [&](const PrimePoly& P) -> std::optional<std::size_t> {
        auto cls = symbol_classes(inst, P);
        if (!cls) return std::nullopt;
        return detail::pack_bin(*cls, m);
    };

    for (std::size_t N = N_min; N <= N_max; ++N) {
        DensityRow row;
        row.N = N;
        row.pi = static_cast<std::uint64_t>(count_irreducibles(field->q(), N));
        row.predicted = predicted;
        std::vector<std::uint64_t> bins;

        bool within_budget = true;
        try {
            monic_count_within_budget(field->q(), N, opt.budget);
        } catch (const BudgetExceeded&) {
            if (opt.sample_size == 0) throw;
            within_budget = false;
        }

        if (within_budget) {
            const TallyResult t = tally_irreducibles(field, N, nbins, classify, opt);
            if (t.primes != row.pi) throw InternalError("enumeration count disagrees with the Moebius count");
            row.excluded = t.excluded;
            bins = t.bins;
        } else {
            // Uniform monic samples; only the irreducible ones are classified.
            std::mt19937_64 rng(opt.seed ^ (0x9e3779b97f4a7c15ULL * N));
            std::uniform_int_distribution<std::uint32_t> coeff(0, field->q() - 1);
            bins.assign(nbins, 0);
            row.sampled = true;
            for (std::uint64_t s = 0; s < opt.sample_size; ++s) {
                std::vector<FieldElem> c(N + 1);
                for (std::size_t i = 0; i < N; ++i) c[i] = FieldElem{coeff(rng)};
                c[N] = field->one();
                Poly f(field, std::move(c));
                if (!is_irreducible(f)) continue;
                ++row.samples;
                if (auto bin = classify(PrimePoly::trusted(std::move(f)))) ++bins[*bin];
                else ++row.excluded;
            }
        }

        detail::fill_row_from_bins(row, ex, bins, opt.max_combinations);
        row.counted = 0;
        for (auto b : bins) row.counted += b;
        row.fraction = row.counted ? static_cast<double>(row.split) / static_cast<double>(row.counted) : 0.0;
        row.abs_deviation = std::abs(row.fraction - predicted);
        row.deviation_units = std::abs(static_cast<double>(row.split) - predicted * static_cast<double>(row.counted)) /
                              detail::error_scale(field->q(), N);
        if (row.sampled && row.counted)
            row.std_error = std::sqrt(row.fraction * (1 - row.fraction) / static_cast<double>(row.counted));
        rep.rows.push_back(std::move(row));
    }
    rep.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

struct CharacterSumResult {
    CyclotomicInt sum;
    std::uint64_t pi = 0;
    std::uint64_t counted = 0;
    std::uint64_t excluded = 0;
    std::vector<std::uint64_t> class_counts;
    std::uint64_t bound = 0;  // (m-1) * pi(N) >= |sum|
    double ratio = 0;         // |sum| / pi(N)
};

namespace detail {

template <class Classifier>
CharacterSumResult character_sum_impl(const Field& field, std::uint32_t m, std::size_t N, const Classifier& cls,
                                      const EnumerationOptions& opt) {
    const TallyResult t = tally_irreducibles(field, N, m, cls, opt);
    CharacterSumResult res{CyclotomicInt::character_sum_from_counts(t.bins), t.primes, t.primes - t.excluded,
                           t.excluded, t.bins, 0, 0};
    res.bound = std::uint64_t{m - 1} * t.primes;
    const std::int64_t v = res.sum.rational_value();
    res.ratio = t.primes ? static_cast<double>(v < 0 ? -v : v) / static_cast<double>(t.primes) : 0.0;
    return res;
}

}  // namespace detail

/// sum over degree-N primes P not dividing n of chi(n/P) + ... + chi(n/P)^(m-1), exactly.
inline CharacterSumResult character_sum_kummer(const Poly& n, std::uint32_t m, std::size_t N,
                                               const EnumerationOptions& opt = {}) {
    auto cls = [&](const PrimePoly& P) -> std::optional<std::size_t> {
        const SymbolValue s = power_residue_symbol(n, P, m);
        if (s.is_zero()) return std::nullopt;
        return s.exponent;
    };
    detail::require_kummer_modulus(n.ctx(), m);
    return detail::character_sum_impl(n.field(), m, N, cls, opt);
}

/// Hasse-symbol analogue; primes dividing the denominator of n are excluded.
inline CharacterSumResult character_sum_hasse(const RatFunc& n, std::size_t N, const EnumerationOptions& opt = {}) {
    auto cls = [&](const PrimePoly& P) -> std::optional<std::size_t> {
        if ((n.den() % P.poly()).is_zero()) return std::nullopt;
        return hasse_symbol(n, P).value;
    };
    return detail::character_sum_impl(n.field(), n.ctx().p(), N, cls, opt);
}

struct ClassCounts {
    std::uint64_t T1 = 0;  // trivial symbol
    std::uint64_t T2 = 0;  // nontrivial symbol
    std::uint64_t excluded = 0;
    std::uint64_t pi = 0;
    double prediction_T1 = 0;  // pi(N) / m
    double prediction_T2 = 0;  // pi(N) (m-1) / m
    double deviation = 0;      // T1 - prediction_T1
    double deviation_units = 0;
};

namespace detail {

inline ClassCounts class_counts_from(const CharacterSumResult& cs, std::uint32_t m, std::uint64_t q, std::size_t N) {
    ClassCounts out;
    out.T1 = cs.class_counts[0];
    out.T2 = cs.counted - out.T1;
    out.excluded = cs.excluded;
    out.pi = cs.pi;
    out.prediction_T1 = static_cast<double>(cs.pi) / m;
    out.prediction_T2 = static_cast<double>(cs.pi) * (m - 1) / m;
    out.deviation = static_cast<double>(out.T1) - out.prediction_T1;
    out.deviation_units = std::abs(out.deviation) / error_scale(q, N);
    return out;
}

}  // namespace detail

/// T1/T2 split of degree-N primes for k(n^(1/m)); refuses non-geometric extensions.
inline ClassCounts chebotarev_class_counts_kummer(const Poly& n, std::uint32_t m, std::size_t N,
                                                  const EnumerationOptions& opt = {}, std::uint64_t seed = 0) {
    const KummerInstance single(n.field(), m, {n});
    const auto rep = gamma_kummer(single, seed);
    if (!rep.geometric) throw NonGeometric("k(n^(1/m)) is a constant field extension; Chebotarev counts do not apply");
    return detail::class_counts_from(character_sum_kummer(n, m, N, opt), m, n.ctx().q(), N);
}

/// T1/T2 split of degree-N primes for k(x) with x^p - x = n; refuses non-geometric extensions.
inline ClassCounts chebotarev_class_counts_hasse(const RatFunc& n, std::size_t N, const EnumerationOptions& opt = {},
                                                 std::uint64_t seed = 0) {
    const ASInstance single(n.field(), {n});
    const auto rep = gamma_as(single, seed);
    if (!rep.geometric)
        throw NonGeometric("the Artin-Schreier extension is a constant field extension; Chebotarev counts do not apply");
    return detail::class_counts_from(character_sum_hasse(n, N, opt), n.ctx().p(), n.ctx().q(), N);
}

}  // namespace ffext

#endif  // FFEXT_DENSITY_LAB_HPP
