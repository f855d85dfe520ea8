#ifndef FFEXT_REPORT_JSON_HPP
#define FFEXT_REPORT_JSON_HPP

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "artin_schreier.hpp"
#include "density_lab.hpp"
#include "kummer_degree.hpp"
#include "text.hpp"

namespace ffext {

// JSON reports, schema_version 1. Every field element, polynomial and rational function is a
// string in the text syntax of text.hpp, so it re-parses to the same value. Integers that may
// exceed 64 bits (gamma, degree) are decimal strings.

inline constexpr int report_schema_version = 1;

using Json = nlohmann::ordered_json;

inline std::string to_decimal(const BigInt& n) { return n.str(); }

inline Json field_json(const FieldCtx& F) {
    std::vector<std::uint32_t> mod = F.modulus();
    return Json{{"p", F.p()}, {"e", F.e()}, {"q", F.q()}, {"modulus", detail::format_monomial_poly(mod, 'u')}};
}

inline Json matrix_json(const MatrixModP<std::uint32_t>& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(std::vector<std::uint32_t>(m.row(r).begin(), m.row(r).end()));
    return rows;
}

inline Json to_json(const KummerInstance& inst, const KummerReport& rep, std::uint64_t seed) {
    const FieldCtx& F = *inst.field;
    Json j;
    j["schema_version"] = report_schema_version;
    j["kind"] = "kummer";
    j["field"] = field_json(F);
    j["m"] = inst.m;
    Json S = Json::array();
    for (const auto& D : inst.S) S.push_back(format_poly(D));
    j["S"] = S;
    Json support = Json::array();
    for (const auto& P : rep.support) support.push_back(format_poly(P.poly()));
    j["support"] = support;
    j["matrix"] = matrix_json(rep.matrix);
    j["kernel_basis"] = rep.kernel_basis;
    j["gamma"] = to_decimal(rep.gamma);
    j["r"] = rep.r;
    j["degree"] = to_decimal(rep.degree);
    j["geometric"] = rep.geometric;
    auto witness = [&](const KummerWitness& w) {
        return Json{{"exponents", w.exponents}, {"constant", format_elem(F, w.constant)}, {"root", format_poly(w.root)}};
    };
    Json ws = Json::array();
    for (const auto& w : rep.witnesses) ws.push_back(witness(w));
    j["witnesses"] = ws;
    j["obstruction"] = rep.obstruction ? witness(*rep.obstruction) : Json(nullptr);
    j["seed"] = seed;
    return j;
}

inline Json to_json(const NormalForm& nf) {
    const FieldCtx& F = *nf.field();
    Json local = Json::array();
    for (const auto& lp : nf.local_parts()) {
        Json comps = Json::array();
        for (const auto& c : lp.components) comps.push_back(Json{{"order", c.order}, {"digit", format_poly(c.digit)}});
        local.push_back(Json{{"prime", format_poly(lp.prime.poly())}, {"components", comps}});
    }
    Json poly = Json::array();
    for (const auto& [deg, coeff] : nf.poly_part()) poly.push_back(Json{{"degree", deg}, {"coeff", format_elem(F, coeff)}});
    return Json{{"local", local},
                {"poly_part", poly},
                {"const_trace", nf.const_trace()},
                {"constant", format_elem(F, nf.constant_representative())},
                {"value", format_ratfunc(nf.value())},
                {"witness", format_ratfunc(nf.witness())},
                {"infinite_place", to_string(classify_infinite_place(nf))}};
}

inline Json to_json(const ASInstance& inst, const ASReport& rep, std::uint64_t seed) {
    const FieldCtx& F = *inst.field;
    Json j;
    j["schema_version"] = report_schema_version;
    j["kind"] = "artin-schreier";
    j["field"] = field_json(F);
    j["m"] = F.p();
    Json S = Json::array();
    for (const auto& D : inst.S) S.push_back(format_ratfunc(D));
    j["S"] = S;
    Json nfs = Json::array();
    for (const auto& nf : rep.normal_forms) nfs.push_back(to_json(nf));
    j["normal_forms"] = nfs;
    Json basis = Json::array();
    for (const auto& b : rep.basis) {
        switch (b.kind) {
            case CoordLabel::Kind::Finite:
                basis.push_back(Json{{"kind", "finite"}, {"prime", format_poly(b.prime->poly())}, {"order", b.order}, {"index", b.index}});
                break;
            case CoordLabel::Kind::Infinite:
                basis.push_back(Json{{"kind", "infinite"}, {"order", b.order}, {"index", b.index}});
                break;
            case CoordLabel::Kind::Constant:
                basis.push_back(Json{{"kind", "constant"}});
                break;
        }
    }
    j["basis"] = basis;
    j["matrix"] = matrix_json(rep.matrix);
    j["kernel_basis"] = rep.kernel_basis;
    j["gamma"] = to_decimal(rep.gamma);
    j["r"] = rep.r;
    j["degree"] = to_decimal(rep.degree);
    j["geometric"] = rep.geometric;
    auto witness = [&](const ASWitness& w) {
        return Json{{"coefficients", w.coefficients}, {"constant", format_elem(F, w.constant)}, {"F", format_ratfunc(w.F)}};
    };
    Json ws = Json::array();
    for (const auto& w : rep.witnesses) ws.push_back(witness(w));
    j["witnesses"] = ws;
    j["obstruction"] = rep.obstruction ? witness(*rep.obstruction) : Json(nullptr);
    j["seed"] = seed;
    return j;
}

/// `elements` are the members of S already rendered in the text syntax.
inline Json to_json(const DensityReport& rep, const FieldCtx& F, const std::vector<std::string>& elements,
                    bool include_timing = false) {
    Json j;
    j["schema_version"] = report_schema_version;
    j["kind"] = rep.exact.kind;
    j["field"] = field_json(F);
    j["m"] = rep.exact.m;
    j["S"] = elements;
    j["gamma"] = to_decimal(rep.exact.gamma);
    j["r"] = rep.exact.r;
    j["degree"] = to_decimal(rep.exact.degree);
    j["geometric"] = rep.exact.geometric;
    j["heuristic"] = rep.heuristic;
    j["warning"] = rep.warning;
    j["seed"] = rep.seed;
    j["N_min"] = rep.N_min;
    j["N_max"] = rep.N_max;
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        Json sums = Json::array();
        for (const auto& cs : r.character_sums)
            sums.push_back(Json{{"exponents", cs.exponents}, {"coords", cs.sum.coords()}, {"text", cs.sum.to_string()}});
        rows.push_back(Json{{"N", r.N},
                            {"pi", r.pi},
                            {"excluded", r.excluded},
                            {"counted", r.counted},
                            {"split", r.split},
                            {"fraction", r.fraction},
                            {"predicted", r.predicted},
                            {"abs_deviation", r.abs_deviation},
                            {"deviation_units", r.deviation_units},
                            {"class_counts", r.class_counts},
                            {"character_sums", sums},
                            {"sampled", r.sampled},
                            {"samples", r.samples},
                            {"std_error", r.std_error}});
    }
    j["rows"] = rows;
    if (include_timing) j["wall_clock_seconds"] = rep.wall_clock_seconds;
    return j;
}

/// Per-N table only.
inline std::string to_csv(const DensityReport& rep) {
    std::ostringstream out;
    out.precision(17);
    out << "N,pi,excluded,counted,split,fraction,predicted,abs_deviation,deviation_units,sampled,std_error\n";
    for (const auto& r : rep.rows)
        out << r.N << ',' << r.pi << ',' << r.excluded << ',' << r.counted << ',' << r.split << ',' << r.fraction << ','
            << r.predicted << ',' << r.abs_deviation << ',' << r.deviation_units << ',' << (r.sampled ? 1 : 0) << ','
            << r.std_error << '\n';
    return out.str();
}

}  // namespace ffext

#endif  // FFEXT_REPORT_JSON_HPP
