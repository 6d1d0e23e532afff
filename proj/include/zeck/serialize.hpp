#pragma once

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include <json.hpp>

#include "counting.hpp"
#include "grammar.hpp"
#include "recurrence.hpp"
#include "stats.hpp"

namespace zeck {

// insertion-ordered so emitted fields follow the documented layout
using json = nlohmann::ordered_json;

// All floats cross the output boundary at 12 significant digits.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline double round12(double v) {
    return std::strtod(format_double(v).c_str(), nullptr);
}

inline std::string decimal(const mpz_class& v) { return v.get_str(); }

// rational values carry both the exact fraction and a rounded float
inline json rational_json(const mpq_class& q) {
    json j;
    j["rational"] = q.get_str();
    j["value"] = round12(q.get_d());
    return j;
}

inline json spec_json(const recurrence_spec& spec,
                      const std::vector<mpz_class>& initial_terms) {
    json j;
    j["coeffs"] = json::array();
    for (std::size_t i = 1; i <= spec.order(); ++i)
        j["coeffs"].push_back(spec.c(i));
    j["initial_terms"] = json::array();
    for (const mpz_class& t : initial_terms)
        j["initial_terms"].push_back(decimal(t));
    return j;
}

inline json spec_json(const sequence_table& table) {
    const std::size_t L = std::min<std::size_t>(table.spec().order(),
                                                table.size());
    std::vector<mpz_class> initial;
    for (std::size_t i = 1; i <= L; ++i) initial.push_back(table.g(i));
    return spec_json(table.spec(), initial);
}

inline json sequence_json(const sequence_table& table) {
    json j;
    j["spec"] = spec_json(table);
    j["terms"] = json::array();
    for (std::size_t i = 1; i <= table.size(); ++i)
        j["terms"].push_back(decimal(table.g(i)));
    return j;
}

inline const char* closing_name(block_closing c) {
    return c == block_closing::condition1 ? "condition1" : "condition2";
}

inline json decomposition_json(const decomposition& d,
                               const block_segmentation& seg) {
    json j;
    j["value"] = decimal(d.value);
    j["coeffs"] = d.coeffs;
    j["blocks"] = json::array();
    for (const block& b : seg.blocks) {
        json bj;
        bj["digits"] = b.digits;
        bj["length"] = b.digits.size();
        bj["closing"] = closing_name(b.closing);
        bj["trailing_zeros"] = b.trailing_zeros;
        j["blocks"].push_back(bj);
    }
    return j;
}

inline json super_legal_json(const super_legal_table& h) {
    json j;
    j["n"] = h.values.size();
    j["method"] = h.method == count_method::enumeration ? "enumeration"
                                                        : "recurrence";
    j["includes_zero"] = h.includes_zero;
    j["h0"] = "1";
    j["values"] = json::array();
    for (const mpz_class& v : h.values) j["values"].push_back(decimal(v));
    return j;
}

inline json binet_json(const binet_fit& fit) {
    json j;
    j["lambda1"] = round12(fit.lambda1);
    j["binet_a"] = round12(fit.a_const);
    j["ratio_burn_in"] = fit.ratio_burn_in;
    j["residual_profile"] = json::array();
    for (double r : fit.residual_profile)
        j["residual_profile"].push_back(round12(r));
    return j;
}

inline json density_json(const density_estimate& d) {
    json j;
    j["n"] = d.n;
    j["hits"] = d.hits;
    j["density"] = rational_json(d.q);
    if (d.limit_hint)
        j["limit_hint"] = round12(*d.limit_hint);
    else
        j["limit_hint"] = nullptr;
    return j;
}

inline json histogram_json(const digit_histogram& h) {
    json arr = json::array();
    for (std::size_t d = 1; d < h.base; ++d) {
        json e;
        e["digit"] = d;
        e["count"] = h.counts[d - 1];
        e["frequency"] = round12(h.frequency[d - 1]);
        e["target"] = round12(h.target[d - 1]);
        arr.push_back(e);
    }
    json j;
    j["base"] = h.base;
    j["total"] = h.total;
    j["entries"] = arr;
    j["sup_gap"] = round12(h.sup_gap);
    return j;
}

inline json sequence_benford_json(const sequence_benford_report_t& rep) {
    json j;
    j["mode"] = "sequence";
    j["histogram"] = histogram_json(rep.histogram);
    j["star_discrepancy"] = round12(rep.star_discrepancy);
    j["degenerate"] = rep.degenerate;
    return j;
}

inline json summand_benford_json(const digit_histogram& h, std::uint64_t seed,
                                 std::size_t count) {
    json j;
    j["mode"] = "summand";
    j["seed"] = seed;
    j["samples"] = count;
    j["histogram"] = histogram_json(h);
    return j;
}

inline json experiment_json(const experiment_report& rep) {
    json j;
    j["n"] = rep.n;
    j["plan"] = rep.exact ? "exact" : "sampled";
    if (rep.exact) {
        j["seed"] = nullptr;
        j["count"] = decimal(rep.population);
    } else {
        j["seed"] = rep.seed;
        j["count"] = rep.sample_count;
    }
    json stats;
    stats["x_mean"] = rational_json(rep.x_mean);
    stats["x_var"] = rational_json(rep.x_var);
    stats["y_mean"] = rational_json(rep.y_mean);
    stats["y_var"] = rational_json(rep.y_var);
    stats["ratio_mean"] = rational_json(rep.ratio_mean);
    if (!rep.exact) {
        stats["x_stderr"] = round12(rep.x_stderr);
        stats["y_stderr"] = round12(rep.y_stderr);
    }
    stats["zero_x_count"] = rep.zero_x_count;
    j["stats"] = std::move(stats);
    return j;
}

inline json concentration_json(const concentration_report& rep) {
    json j;
    j["density"] = rational_json(rep.density);
    j["epsilon"] = round12(rep.epsilon);
    j["points"] = json::array();
    for (const concentration_point& p : rep.points) {
        json pj;
        pj["n"] = p.n;
        pj["samples"] = p.samples;
        pj["within"] = p.within;
        pj["excluded_zero_x"] = p.zero_x_excluded;
        pj["fraction"] = round12(p.fraction);
        j["points"].push_back(pj);
    }
    return j;
}

inline json oracle_json(const oracle_report& rep) {
    json j;
    j["n"] = rep.n;
    j["expected"] = decimal(rep.expected);
    j["string_count"] = decimal(rep.string_count);
    j["bijective"] = rep.bijective;
    j["decompose_agrees"] = rep.decompose_agrees;
    j["missing_count"] = rep.missing_count;
    j["duplicate_count"] = rep.duplicate_count;
    j["out_of_range_count"] = rep.out_of_range_count;
    j["missing"] = json::array();
    for (const mpz_class& v : rep.missing) j["missing"].push_back(decimal(v));
    j["duplicated"] = json::array();
    for (const mpz_class& v : rep.duplicated)
        j["duplicated"].push_back(decimal(v));
    return j;
}

inline json distribution_json(const coefficient_distribution& dist) {
    json j;
    j["n"] = dist.n;
    j["max_digit"] = dist.max_digit;
    j["cells"] = json::array();
    for (std::size_t jj = 1; jj <= dist.n; ++jj) {
        for (digit_t k = 0; k <= dist.max_digit; ++k) {
            json cj;
            cj["j"] = jj;
            cj["k"] = k;
            cj["p"] = rational_json(dist.p[jj - 1][k]);
            j["cells"].push_back(cj);
        }
    }
    j["marginal_main_term"] = json::array();
    for (double m : dist.marginal)
        j["marginal_main_term"].push_back(round12(m));
    return j;
}

inline std::string distribution_csv(const coefficient_distribution& dist) {
    std::ostringstream out;
    out << "n,j,k,numerator,denominator,float_value\n";
    for (std::size_t j = 1; j <= dist.n; ++j) {
        for (digit_t k = 0; k <= dist.max_digit; ++k) {
            const mpq_class& q = dist.p[j - 1][k];
            out << dist.n << ',' << j << ',' << k << ','
                << q.get_num().get_str() << ',' << q.get_den().get_str() << ','
                << format_double(q.get_d()) << '\n';
        }
    }
    return out.str();
}

inline std::string histogram_csv(const digit_histogram& h) {
    std::ostringstream out;
    out << "digit,frequency,target\n";
    for (std::size_t d = 1; d < h.base; ++d)
        out << d << ',' << format_double(h.frequency[d - 1]) << ','
            << format_double(h.target[d - 1]) << '\n';
    return out.str();
}

inline json block_count_json(const block_position_count_result& r) {
    json j;
    j["n"] = r.n;
    j["j"] = r.j;
    j["k"] = r.k;
    j["l"] = r.l;
    j["r"] = r.r;
    j["interior"] = r.interior;
    j["route"] = r.route == count_route::formula ? "formula" : "enumeration";
    j["count"] = decimal(r.count);
    return j;
}

} // namespace zeck
