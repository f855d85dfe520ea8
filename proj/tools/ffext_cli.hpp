#ifndef FFEXT_TOOLS_CLI_HPP
#define FFEXT_TOOLS_CLI_HPP

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ffext/ffext.hpp"

namespace ffext::cli {

enum ExitCode : int {
    ok = 0,
    internal_failure = 1,
    parse_failure = 2,
    hypothesis_violation = 3,
    non_geometric = 4,
    budget_exceeded = 5,
};

struct Config {
    std::optional<std::uint64_t> q;
    std::optional<std::uint32_t> p;
    std::optional<unsigned> e;
    std::string modulus;
    std::uint64_t budget = default_enumeration_budget;
    std::uint64_t seed = 0;
    std::string format = "text";
    std::string out_path;
};

/// Raised for command-line hypothesis violations that are not library errors.
class UsageViolation : public Error {
   public:
    using Error::Error;
};

inline Field resolve_field(const Config& cfg) {
    std::uint32_t p = 0;
    unsigned e = 0;
    if (cfg.q) {
        const auto primes = detail::distinct_prime_factors(*cfg.q);
        if (*cfg.q < 2 || primes.size() != 1) throw InvalidArgument("--q must be a prime power");
        p = static_cast<std::uint32_t>(primes[0]);
        for (std::uint64_t r = *cfg.q; r > 1; r /= p) ++e;
    }
    if (cfg.p) {
        if (p && p != *cfg.p) throw InvalidArgument("--p disagrees with --q");
        p = *cfg.p;
    }
    if (cfg.e) {
        if (e && e != *cfg.e) throw InvalidArgument("--e disagrees with --q");
        e = *cfg.e;
    }
    if (!p) throw InvalidArgument("a field is required: give --q, or --p (with --e or --modulus)");
    if (!cfg.modulus.empty()) {
        auto mod = parse_modulus(p, cfg.modulus);
        if (e && mod.size() != e + 1) throw InvalidArgument("modulus degree disagrees with the field size");
        return FieldCtx::make(p, std::move(mod));
    }
    return FieldCtx::make(p, e ? e : 1);
}

inline std::string vec_string(const std::vector<std::uint32_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

inline std::string root_of_unity_text(std::uint32_t k, std::uint32_t m) {
    return "exp(2πi·" + std::to_string(k) + "/" + std::to_string(m) + ")";
}

inline void emit(const Config& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw Error("cannot open output file " + cfg.out_path);
    f << text;
}

inline std::vector<Poly> parse_kummer_elements(const Field& field, const std::string& list, std::uint32_t m,
                                               bool clear_denominators) {
    std::vector<Poly> out;
    for (const auto& item : split_list(list)) {
        RatFunc v = parse_ratfunc(field, item);
        if (!v.is_polynomial()) {
            if (!clear_denominators)
                throw ParseError("Kummer elements must be polynomials (use --clear-denominators to replace num/den by num*den^(m-1))", 0);
            out.push_back(v.num() * pow(v.den(), m - 1));
        } else {
            out.push_back(v.num());
        }
    }
    return out;
}

inline std::vector<RatFunc> parse_as_elements(const Field& field, const std::string& list) {
    std::vector<RatFunc> out;
    for (const auto& item : split_list(list)) out.push_back(parse_ratfunc(field, item));
    return out;
}

inline PrimePoly parse_prime(const Field& field, const std::string& text) {
    const Poly P = parse_poly(field, text);
    if (P.is_constant()) throw InvalidArgument("P must be a nonconstant monic polynomial");
    if (!P.is_monic()) throw InvalidArgument("P must be monic");
    if (!is_irreducible(P)) {
        const auto fac = factor(P);
        throw InvalidArgument("P = " + format_poly(P) + " is reducible; it has the factor " +
                              format_poly(fac.factors.front().first.poly()));
    }
    return PrimePoly::trusted(P);
}

inline std::string kummer_text(const KummerInstance& inst, const KummerReport& rep) {
    const FieldCtx& F = *inst.field;
    std::ostringstream o;
    o << "field: F_" << F.q() << "  m: " << inst.m << "  l: " << inst.S.size() << "\n";
    o << "support:";
    for (const auto& P : rep.support) o << ' ' << format_poly(P.poly());
    o << "\ngamma: " << rep.gamma << "\nr: " << rep.r << "\ndegree: " << rep.degree
      << "\ngeometric: " << (rep.geometric ? "true" : "false") << "\nkernel basis:";
    for (const auto& a : rep.kernel_basis) o << ' ' << vec_string(a);
    o << "\nwitnesses:\n";
    for (const auto& w : rep.witnesses) o << "  " << vec_string(w.exponents) << " -> (" << format_poly(w.root) << ")^" << inst.m << "\n";
    if (rep.obstruction)
        o << "obstruction: " << vec_string(rep.obstruction->exponents) << " -> " << format_elem(F, rep.obstruction->constant)
          << "*(" << format_poly(rep.obstruction->root) << ")^" << inst.m << "\n";
    return o.str();
}

inline std::string normal_form_text(const NormalForm& nf) {
    std::ostringstream o;
    o << "normal form: " << format_ratfunc(nf.value()) << "\n";
    o << "  local parts:";
    if (nf.local_parts().empty()) o << " none";
    for (const auto& lp : nf.local_parts()) {
        o << " [" << format_poly(lp.prime.poly()) << ":";
        for (const auto& c : lp.components) o << " (" << c.order << ", " << format_poly(c.digit) << ")";
        o << "]";
    }
    o << "\n  polynomial part:";
    if (nf.poly_part().empty()) o << " none";
    for (const auto& [deg, coeff] : nf.poly_part()) o << " " << format_poly(Poly::monomial(nf.field(), coeff, deg));
    o << "\n  constant trace: " << nf.const_trace() << "\n  witness: " << format_ratfunc(nf.witness()) << "\n";
    return o.str();
}

inline std::string as_text(const ASInstance& inst, const ASReport& rep) {
    const FieldCtx& F = *inst.field;
    std::ostringstream o;
    o << "field: F_" << F.q() << "  p: " << F.p() << "  l: " << inst.S.size() << "\n";
    for (std::size_t i = 0; i < inst.S.size(); ++i) o << "D" << i + 1 << " = " << format_ratfunc(inst.S[i]) << "\n" << normal_form_text(rep.normal_forms[i]);
    o << "gamma: " << rep.gamma << "\nr: " << rep.r << "\ndegree: " << rep.degree
      << "\ngeometric: " << (rep.geometric ? "true" : "false") << "\nkernel basis:";
    for (const auto& a : rep.kernel_basis) o << ' ' << vec_string(a);
    o << "\nwitnesses:\n";
    for (const auto& w : rep.witnesses) o << "  " << vec_string(w.coefficients) << " -> F = " << format_ratfunc(w.F) << "\n";
    if (rep.obstruction)
        o << "obstruction: " << vec_string(rep.obstruction->coefficients) << " -> " << format_elem(F, rep.obstruction->constant)
          << " + F^p - F with F = " << format_ratfunc(rep.obstruction->F) << "\n";
    return o.str();
}

inline std::string density_table(const DensityReport& rep) {
    std::ostringstream o;
    o << "kind: " << rep.exact.kind << "  gamma: " << rep.exact.gamma << "  degree: " << rep.exact.degree
      << "  predicted: 1/" << rep.exact.degree
      << "  geometric: " << (rep.exact.geometric ? "true" : "false") << "\n";
    if (!rep.warning.empty()) o << "warning: " << rep.warning << "\n";
    o << std::setw(4) << "N" << std::setw(12) << "pi" << std::setw(10) << "excluded" << std::setw(12) << "split"
      << std::setw(12) << "fraction" << std::setw(12) << "|dev|" << std::setw(12) << "dev/scale" << "\n";
    for (const auto& r : rep.rows) {
        o << std::setw(4) << r.N << std::setw(12) << r.pi << std::setw(10) << r.excluded << std::setw(12) << r.split
          << std::setw(12) << std::fixed << std::setprecision(6) << r.fraction << std::setw(12) << r.abs_deviation
          << std::setw(12) << std::setprecision(4) << r.deviation_units << std::defaultfloat;
        if (r.sampled) o << "  (sampled, n=" << r.samples << ", se=" << std::setprecision(4) << r.std_error << ")";
        o << "\n";
    }
    return o.str();
}

/// Runs the command line; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Degrees of multi-cyclic Kummer and Artin-Schreier extensions of F_q(t)", "ffext"};
    app.require_subcommand(1);
    Config cfg;
    if (const char* env = std::getenv("FFEXT_BUDGET")) {
        try {
            cfg.budget = std::stoull(env);
        } catch (const std::exception&) {
            err << "error: FFEXT_BUDGET is not an integer\n";
            return parse_failure;
        }
    }

    auto add_field_opts = [&](CLI::App* sub) {
        sub->add_option("--q", cfg.q, "field order (prime power)");
        sub->add_option("--p", cfg.p, "characteristic");
        sub->add_option("--e", cfg.e, "extension degree over F_p");
        sub->add_option("--modulus", cfg.modulus, "modulus polynomial in u, e.g. u^2+1");
        sub->add_option("--seed", cfg.seed, "PRNG seed (default 0)");
        sub->add_option("--budget", cfg.budget, "enumeration budget on q^N");
        sub->add_option("--out", cfg.out_path, "write the report to this file");
    };

    std::string kind, S, a_text, D_text, P_text;
    std::uint32_t m = 0;
    std::size_t N = 0, N_min = 1, N_max = 0;
    bool clear_denominators = false, force = false, timing = false;
    unsigned threads = 0;
    std::uint64_t sample = 0;

    auto* degree_cmd = app.add_subcommand("degree", "exact gamma_S, r and [K:k]");
    degree_cmd->add_option("kind", kind, "kummer | artin-schreier")->required()->check(CLI::IsMember({"kummer", "artin-schreier"}));
    add_field_opts(degree_cmd);
    degree_cmd->add_option("--m", m, "prime m dividing q-1 (kummer)");
    degree_cmd->add_option("--S", S, "comma-separated elements D_1,...,D_l")->required();
    degree_cmd->add_flag("--clear-denominators", clear_denominators, "kummer: replace num/den by num*den^(m-1)");
    degree_cmd->add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json"}));

    auto* symbol_cmd = app.add_subcommand("symbol", "power residue symbol or Hasse symbol at a prime");
    symbol_cmd->add_option("kind", kind, "kummer | hasse")->required()->check(CLI::IsMember({"kummer", "hasse"}));
    add_field_opts(symbol_cmd);
    symbol_cmd->add_option("--m", m, "prime m dividing q-1 (kummer)");
    symbol_cmd->add_option("--a", a_text, "polynomial a (kummer)");
    symbol_cmd->add_option("--D", D_text, "rational function D (hasse)");
    symbol_cmd->add_option("--P", P_text, "monic irreducible P")->required();
    symbol_cmd->add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json"}));

    auto* density_cmd = app.add_subcommand("density", "split density of degree-N primes against gamma_S/m^l");
    density_cmd->add_option("kind", kind, "kummer | artin-schreier")->required()->check(CLI::IsMember({"kummer", "artin-schreier"}));
    add_field_opts(density_cmd);
    density_cmd->add_option("--m", m, "prime m dividing q-1 (kummer)");
    density_cmd->add_option("--S", S, "comma-separated elements D_1,...,D_l")->required();
    density_cmd->add_option("--N-min", N_min, "smallest degree (default 1)");
    density_cmd->add_option("--N-max", N_max, "largest degree")->required();
    density_cmd->add_flag("--force", force, "measure non-geometric instances (heuristic comparison)");
    density_cmd->add_flag("--clear-denominators", clear_denominators, "kummer: replace num/den by num*den^(m-1)");
    density_cmd->add_option("--sample", sample, "sample this many monic polynomials for degrees beyond the budget");
    density_cmd->add_option("--threads", threads, "worker threads (default: hardware concurrency)");
    density_cmd->add_flag("--timing", timing, "include wall-clock time in the JSON report");
    density_cmd->add_option("--format", cfg.format, "text | json | csv")->check(CLI::IsMember({"text", "json", "csv"}));

    auto* pi_cmd = app.add_subcommand("pi", "exact number of monic irreducibles of degree N");
    add_field_opts(pi_cmd);
    pi_cmd->add_option("--N", N, "degree")->required()->check(CLI::PositiveNumber);

    auto* normalize_cmd = app.add_subcommand("normalize", "canonical form of D modulo x^p - x");
    add_field_opts(normalize_cmd);
    normalize_cmd->add_option("--D", D_text, "rational function")->required();
    normalize_cmd->add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json"}));

    auto* classify_cmd = app.add_subcommand("classify", "infinite-place type and ramified finite primes of k(x), x^p - x = D");
    add_field_opts(classify_cmd);
    classify_cmd->add_option("--D", D_text, "rational function")->required();
    classify_cmd->add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : parse_failure;
    }

    try {
        const Field field = resolve_field(cfg);
        if (cfg.budget < field->q()) throw InvalidArgument("enumeration budget must be at least q");

        if (degree_cmd->parsed()) {
            if (kind == "kummer") {
                KummerInstance inst(field, m, parse_kummer_elements(field, S, m, clear_denominators));
                const auto rep = gamma_kummer(inst, cfg.seed);
                emit(cfg, cfg.format == "json" ? to_json(inst, rep, cfg.seed).dump(2) + "\n" : kummer_text(inst, rep), out);
            } else {
                ASInstance inst(field, parse_as_elements(field, S));
                const auto rep = gamma_as(inst, cfg.seed);
                emit(cfg, cfg.format == "json" ? to_json(inst, rep, cfg.seed).dump(2) + "\n" : as_text(inst, rep), out);
            }
        } else if (symbol_cmd->parsed()) {
            const PrimePoly P = parse_prime(field, P_text);
            if (kind == "kummer") {
                if (a_text.empty()) throw ParseError("--a is required for kummer symbols", 0);
                const SymbolValue s = power_residue_symbol(parse_poly(field, a_text), P, m);
                if (cfg.format == "json") {
                    Json j{{"schema_version", report_schema_version}, {"kind", "kummer"}, {"m", m},
                           {"zero", s.is_zero()}, {"exponent", s.is_zero() ? Json(nullptr) : Json(s.exponent)}};
                    emit(cfg, j.dump(2) + "\n", out);
                } else {
                    emit(cfg, s.to_string() + (s.is_zero() ? "" : "  " + root_of_unity_text(s.exponent, m)) + "\n", out);
                }
            } else {
                if (D_text.empty()) throw ParseError("--D is required for hasse symbols", 0);
                const HasseValue h = hasse_symbol(parse_ratfunc(field, D_text), P);
                if (cfg.format == "json") {
                    Json j{{"schema_version", report_schema_version}, {"kind", "hasse"}, {"p", field->p()}, {"value", h.value}};
                    emit(cfg, j.dump(2) + "\n", out);
                } else {
                    emit(cfg, std::to_string(h.value) + "  " + root_of_unity_text(h.value, field->p()) + "\n", out);
                }
            }
        } else if (density_cmd->parsed()) {
            DensityOptions opt;
            opt.budget = cfg.budget;
            opt.threads = threads;
            opt.seed = cfg.seed;
            opt.force = force;
            opt.sample_size = sample;
            std::vector<std::string> elements;
            std::optional<DensityInstance> inst;
            if (kind == "kummer") {
                auto elems = parse_kummer_elements(field, S, m, clear_denominators);
                for (const auto& D : elems) elements.push_back(format_poly(D));
                inst.emplace(KummerInstance(field, m, std::move(elems)));
            } else {
                auto elems = parse_as_elements(field, S);
                for (const auto& D : elems) elements.push_back(format_ratfunc(D));
                inst.emplace(ASInstance(field, std::move(elems)));
            }
            const DensityReport rep = split_density(*inst, N_min, N_max, opt);
            std::string body;
            if (cfg.format == "json") body = to_json(rep, *field, elements, timing).dump(2) + "\n";
            else if (cfg.format == "csv") body = to_csv(rep);
            else body = density_table(rep);
            if (!cfg.out_path.empty()) {
                emit(cfg, body, out);
                out << density_table(rep);
            } else {
                out << body;
            }
            err << "wall clock: " << std::setprecision(3) << rep.wall_clock_seconds << " s\n";
        } else if (pi_cmd->parsed()) {
            emit(cfg, count_irreducibles(field->q(), N).str() + "\n", out);
        } else if (normalize_cmd->parsed()) {
            const NormalForm nf = as_normalize(parse_ratfunc(field, D_text), cfg.seed);
            emit(cfg, cfg.format == "json" ? to_json(nf).dump(2) + "\n" : normal_form_text(nf), out);
        } else if (classify_cmd->parsed()) {
            const NormalForm nf = as_normalize(parse_ratfunc(field, D_text), cfg.seed);
            const auto primes = ramified_finite_primes(nf);
            if (cfg.format == "json") {
                Json ps = Json::array();
                for (const auto& P : primes) ps.push_back(format_poly(P.poly()));
                emit(cfg, Json{{"schema_version", report_schema_version}, {"infinite_place", to_string(classify_infinite_place(nf))},
                               {"ramified_finite_primes", ps}}.dump(2) + "\n", out);
            } else {
                std::string line = std::string(to_string(classify_infinite_place(nf))) + "\nramified finite primes: {";
                for (std::size_t i = 0; i < primes.size(); ++i) line += (i ? ", " : "") + format_poly(primes[i].poly());
                emit(cfg, line + "}\n", out);
            }
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_failure;
    } catch (const NonGeometric& e) {
        err << "refused: " << e.what() << " (use --force for a heuristic comparison)\n";
        return non_geometric;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << " (raise --budget or FFEXT_BUDGET, or use --sample)\n";
        return budget_exceeded;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return internal_failure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return hypothesis_violation;
    }
    return ok;
}

}  // namespace ffext::cli

#endif  // FFEXT_TOOLS_CLI_HPP
