// command line front end: thin adapters over the library, no numeric logic
// beyond formatting. Exit codes: 0 ok, 1 domain error, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <zeck/zeck.hpp>

namespace {

using zeck::json;

struct options {
    std::vector<zeck::digit_t> coeffs;
    std::vector<std::string> initial;
    bool canonical = false;
    std::vector<std::size_t> n;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    unsigned long base = 10;
    unsigned long digit = 1;
    double epsilon = 0.0;
    std::string set_kind; // even | leading-digit | residue | file | all
    std::string modulus = "2";
    std::vector<std::string> classes;
    std::string set_file;
    std::string format = "json";
    unsigned workers = 1;
    std::uint64_t budget = 0; // resolved later: flag > config > env > default
    std::string mode;         // check: legal|super-legal; benford: sequence|summand
    std::string method;       // count-superlegal: recurrence|enumeration
    std::string route;        // distribution/block-counts: formula|enumeration|both
    std::string plan = "exact";
    std::string value_arg;  // decompose positional
    std::string digits_arg; // check/blocks positional
    std::string config_path;
    std::optional<std::size_t> j, l, r;
    std::optional<long> k;
};

class usage_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::vector<zeck::digit_t> parse_digits(const std::string& s) {
    std::vector<zeck::digit_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw usage_error("empty digit in list");
        out.push_back(std::stoull(tok));
    }
    if (out.empty()) throw usage_error("empty digit list");
    return out;
}

// config file is a JSON object mirroring long flag names; a key applies only
// when the flag was not given on the command line
void apply_config(const json& cfg, CLI::App* sub, options& o) {
    auto absent = [&](const char* name) {
        const CLI::Option* op = sub->get_option_no_throw(name);
        return op != nullptr && op->count() == 0;
    };
    auto read_sizes = [](const json& v) {
        std::vector<std::size_t> out;
        if (v.is_array())
            for (const auto& e : v) out.push_back(e.get<std::size_t>());
        else
            out.push_back(v.get<std::size_t>());
        return out;
    };
    auto read_strings = [](const json& v) {
        std::vector<std::string> out;
        for (const auto& e : v)
            out.push_back(e.is_string() ? e.get<std::string>()
                                        : e.dump());
        return out;
    };
    if (cfg.contains("coeffs") && absent("--coeffs"))
        o.coeffs = cfg["coeffs"].get<std::vector<zeck::digit_t>>();
    if (cfg.contains("initial") && absent("--initial"))
        o.initial = read_strings(cfg["initial"]);
    if (cfg.contains("canonical") && absent("--canonical"))
        o.canonical = cfg["canonical"].get<bool>();
    if (cfg.contains("n") && absent("--n")) o.n = read_sizes(cfg["n"]);
    if (cfg.contains("samples") && absent("--samples"))
        o.samples = cfg["samples"].get<std::size_t>();
    if (cfg.contains("seed") && absent("--seed")) {
        o.seed = cfg["seed"].get<std::uint64_t>();
        sub->get_option("--seed")->add_result(std::to_string(o.seed));
    }
    if (cfg.contains("base") && absent("--base"))
        o.base = cfg["base"].get<unsigned long>();
    if (cfg.contains("digit") && absent("--digit"))
        o.digit = cfg["digit"].get<unsigned long>();
    if (cfg.contains("epsilon") && absent("--epsilon")) {
        o.epsilon = cfg["epsilon"].get<double>();
        sub->get_option("--epsilon")->add_result(std::to_string(o.epsilon));
    }
    if (cfg.contains("set") && absent("--set"))
        o.set_kind = cfg["set"].get<std::string>();
    if (cfg.contains("modulus") && absent("--modulus"))
        o.modulus = cfg["modulus"].is_string() ? cfg["modulus"].get<std::string>()
                                               : cfg["modulus"].dump();
    if (cfg.contains("classes") && absent("--classes"))
        o.classes = read_strings(cfg["classes"]);
    if (cfg.contains("set-file") && absent("--set-file"))
        o.set_file = cfg["set-file"].get<std::string>();
    if (cfg.contains("format") && absent("--format"))
        o.format = cfg["format"].get<std::string>();
    if (cfg.contains("workers") && absent("--workers"))
        o.workers = cfg["workers"].get<unsigned>();
    if (cfg.contains("budget") && absent("--budget")) {
        o.budget = cfg["budget"].get<std::uint64_t>();
        sub->get_option("--budget")->add_result(std::to_string(o.budget));
    }
    if (cfg.contains("mode") && absent("--mode"))
        o.mode = cfg["mode"].get<std::string>();
    if (cfg.contains("method") && absent("--method"))
        o.method = cfg["method"].get<std::string>();
    if (cfg.contains("route") && absent("--route"))
        o.route = cfg["route"].get<std::string>();
    if (cfg.contains("plan") && absent("--plan"))
        o.plan = cfg["plan"].get<std::string>();
}

zeck::recurrence_spec build_spec(const options& o) {
    if (o.coeffs.empty())
        throw usage_error("--coeffs is required (or supply it via --config)");
    return zeck::recurrence_spec(o.coeffs);
}

zeck::sequence_table build_table(const options& o, std::size_t count) {
    const zeck::recurrence_spec spec = build_spec(o);
    if (o.canonical && !o.initial.empty())
        throw usage_error("--canonical conflicts with --initial");
    if (o.initial.empty()) return zeck::generate_sequence(spec, count);
    std::vector<mpz_class> init;
    for (const std::string& s : o.initial) init.emplace_back(s);
    return zeck::generate_sequence(spec, init, count);
}

// smallest table whose next term exceeds the value, so decompose can run
zeck::sequence_table table_covering(const options& o, const mpz_class& value) {
    const zeck::recurrence_spec spec = build_spec(o);
    std::size_t count = std::max<std::size_t>(spec.order(), 8);
    while (true) {
        zeck::sequence_table t =
            o.initial.empty()
                ? zeck::generate_sequence(spec, count)
                : [&] {
                      std::vector<mpz_class> init;
                      for (const std::string& s : o.initial)
                          init.emplace_back(s);
                      return zeck::generate_sequence(spec, init, count);
                  }();
        if (zeck::next_term(t) > value) return t;
        count *= 2;
    }
}

zeck::set_predicate build_pred(const options& o) {
    if (o.set_kind.empty() || o.set_kind == "all" || o.set_kind == "everything")
        return zeck::set_predicate::everything();
    if (o.set_kind == "even") return zeck::set_predicate::evens();
    if (o.set_kind == "leading-digit")
        return zeck::set_predicate::with_leading_digit(o.base, o.digit);
    if (o.set_kind == "residue") {
        std::vector<mpz_class> classes;
        for (const std::string& s : o.classes) classes.emplace_back(s);
        if (classes.empty())
            throw usage_error("--set residue needs --classes");
        return zeck::set_predicate::with_residue(mpz_class(o.modulus),
                                                 std::move(classes));
    }
    if (o.set_kind == "file") {
        if (o.set_file.empty())
            throw usage_error("--set file needs --set-file");
        std::ifstream in(o.set_file);
        if (!in) throw usage_error("cannot open set file: " + o.set_file);
        json j = json::parse(in);
        const json& arr = j.is_object() ? j.at("indices") : j;
        std::set<std::size_t> idx;
        for (const auto& e : arr) idx.insert(e.get<std::size_t>());
        return zeck::set_predicate::with_indices(std::move(idx));
    }
    throw usage_error("unknown --set kind: " + o.set_kind);
}

json set_json(const options& o) {
    json j;
    j["kind"] = o.set_kind.empty() ? "everything" : o.set_kind;
    if (o.set_kind == "leading-digit") {
        j["base"] = o.base;
        j["digit"] = o.digit;
    } else if (o.set_kind == "residue") {
        j["modulus"] = o.modulus;
        j["classes"] = o.classes;
    } else if (o.set_kind == "file") {
        j["file"] = o.set_file;
    }
    return j;
}

void pretty_lines(const json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        if (j.empty()) out << prefix << ": {}\n";
        for (const auto& [k, v] : j.items())
            pretty_lines(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        if (j.empty()) out << prefix << ": []\n";
        std::size_t i = 0;
        for (const auto& v : j)
            pretty_lines(v, prefix + "[" + std::to_string(i++) + "]", out);
    } else if (j.is_string()) {
        out << prefix << ": " << j.get<std::string>() << "\n";
    } else {
        out << prefix << ": " << j.dump() << "\n";
    }
}

void emit(const json& j, const options& o) {
    if (o.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else if (o.format == "pretty") {
        pretty_lines(j, "", std::cout);
    } else if (o.format == "csv") {
        throw usage_error("csv output is available only for distribution and "
                          "benford");
    } else {
        throw usage_error("unknown --format: " + o.format);
    }
}

std::size_t single_n(const options& o, const char* cmd) {
    if (o.n.size() != 1)
        throw usage_error(std::string(cmd) + " needs exactly one --n");
    return o.n[0];
}

void require_seed(const CLI::App* sub) {
    if (sub->get_option("--seed")->count() == 0)
        throw usage_error(
            "--seed is required for sampled commands (no silent "
            "nondeterminism)");
}

mpq_class least_squares_slope(const std::vector<std::size_t>& ns,
                              const std::vector<mpq_class>& means) {
    mpq_class sx(0), sy(0), sxy(0), sxx(0);
    const mpq_class m(static_cast<unsigned long>(ns.size()), 1);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const mpq_class x(static_cast<unsigned long>(ns[i]), 1);
        sx += x;
        sy += means[i];
        sxy += x * means[i];
        sxx += x * x;
    }
    mpq_class slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    slope.canonicalize();
    return slope;
}

} // namespace

int main(int argc, char** argv) {
    options o;
    if (const char* env = std::getenv("ZECK_BUDGET"))
        o.budget = std::strtoull(env, nullptr, 10);
    if (o.budget == 0) o.budget = zeck::default_enumeration_budget;

    CLI::App app{"generalized Zeckendorf decompositions over positive linear "
                 "recurrences: exact counting and seeded experiments"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--coeffs", o.coeffs, "recurrence coefficients c_1..c_L")
            ->delimiter(',');
        sub->add_option("--initial", o.initial,
                        "initial terms (decimal strings)")
            ->delimiter(',');
        sub->add_flag("--canonical", o.canonical,
                      "use canonical initial terms (default when --initial "
                      "is absent)");
        sub->add_option("--n", o.n, "length / horizon (comma list for ladders)")
            ->delimiter(',');
        sub->add_option("--samples", o.samples, "sample count");
        sub->add_option("--seed", o.seed, "64-bit RNG seed");
        sub->add_option("--base", o.base, "digit base");
        sub->add_option("--digit", o.digit, "leading digit");
        sub->add_option("--epsilon", o.epsilon, "concentration band half-width");
        sub->add_option("--set", o.set_kind,
                        "element set: even | leading-digit | residue | file");
        sub->add_option("--modulus", o.modulus, "residue modulus");
        sub->add_option("--classes", o.classes, "residue classes")
            ->delimiter(',');
        sub->add_option("--set-file", o.set_file,
                        "JSON file with explicit indices");
        sub->add_option("--format", o.format, "json | csv | pretty");
        sub->add_option("--workers", o.workers, "worker thread hint");
        sub->add_option("--budget", o.budget, "enumeration budget cap");
        sub->add_option("--config", o.config_path,
                        "JSON config mirroring flag names; flags override");
        return sub;
    };

    CLI::App* c_sequence =
        add_common(app.add_subcommand("sequence", "generate sequence terms"));
    CLI::App* c_decompose = add_common(
        app.add_subcommand("decompose", "decompose a value into summands"));
    c_decompose->add_option("value", o.value_arg, "value to decompose")
        ->required();
    CLI::App* c_check = add_common(
        app.add_subcommand("check", "test a digit string for legality"));
    c_check->add_option("digits", o.digits_arg, "comma-separated digits")
        ->required();
    c_check->add_option("--mode", o.mode, "legal | super-legal");
    CLI::App* c_blocks = add_common(
        app.add_subcommand("blocks", "segment a legal string into blocks"));
    c_blocks->add_option("digits", o.digits_arg, "comma-separated digits")
        ->required();
    CLI::App* c_count = add_common(app.add_subcommand(
        "count-superlegal", "count fixed-length super-legal strings"));
    c_count->add_option("--method", o.method, "recurrence | enumeration");
    CLI::App* c_root = add_common(app.add_subcommand(
        "root", "dominant characteristic root and growth-constant fit"));
    CLI::App* c_dist = add_common(app.add_subcommand(
        "distribution", "exact digit distribution p_{j,k}"));
    c_dist->add_option("--route", o.route, "formula | enumeration");
    CLI::App* c_blockcounts = add_common(app.add_subcommand(
        "block-counts", "block position counts, formula vs enumeration"));
    c_blockcounts->add_option("--j", o.j, "block end position");
    c_blockcounts->add_option("--k", o.k, "digit value at position j");
    c_blockcounts->add_option("--l", o.l, "block length");
    c_blockcounts->add_option("--r", o.r, "offset of position j in its block");
    c_blockcounts->add_option("--route", o.route,
                              "formula | enumeration | both");
    CLI::App* c_density = add_common(
        app.add_subcommand("density", "fraction of sequence elements in a set"));
    CLI::App* c_benford = add_common(app.add_subcommand(
        "benford", "leading-digit reports for the sequence or its summands"));
    c_benford->add_option("--mode", o.mode, "sequence | summand");
    CLI::App* c_stats = add_common(app.add_subcommand(
        "stats", "summand-count statistics X and Y over a set"));
    c_stats->add_option("--plan", o.plan, "exact | sampled");
    CLI::App* c_conc = add_common(app.add_subcommand(
        "concentration", "fraction of samples with Y/X near the set density"));
    CLI::App* c_oracle = add_common(app.add_subcommand(
        "oracle", "bijection audit of fixed-length strings onto values"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* sub = app.get_subcommands().at(0);

    try {
        if (!o.config_path.empty()) {
            std::ifstream in(o.config_path);
            if (!in)
                throw usage_error("cannot open config: " + o.config_path);
            json cfg;
            try {
                cfg = json::parse(in);
            } catch (const std::exception& e) {
                throw usage_error(std::string("bad config JSON: ") + e.what());
            }
            apply_config(cfg, sub, o);
        }

        json out;

        if (sub == c_sequence) {
            out = zeck::sequence_json(build_table(o, single_n(o, "sequence")));
        } else if (sub == c_decompose) {
            const mpz_class value(o.value_arg);
            const zeck::sequence_table t = table_covering(o, value);
            const zeck::decomposition d = zeck::decompose(value, t);
            out = zeck::decomposition_json(
                d, zeck::segment_blocks(d.coeffs, t.spec()));
        } else if (sub == c_check) {
            const zeck::recurrence_spec spec = build_spec(o);
            const std::vector<zeck::digit_t> digits =
                parse_digits(o.digits_arg);
            std::string mode = o.mode.empty() ? "legal" : o.mode;
            bool result = false;
            if (mode == "legal")
                result = zeck::is_legal(digits, spec);
            else if (mode == "super-legal")
                result = zeck::is_super_legal(digits, spec);
            else
                throw usage_error("--mode must be legal or super-legal");
            out["digits"] = digits;
            out["mode"] = mode;
            out["result"] = result;
        } else if (sub == c_blocks) {
            const zeck::recurrence_spec spec = build_spec(o);
            const std::vector<zeck::digit_t> digits =
                parse_digits(o.digits_arg);
            const zeck::block_segmentation seg =
                zeck::segment_blocks(digits, spec);
            zeck::decomposition d;
            d.coeffs = digits;
            const zeck::sequence_table t =
                build_table(o, std::max<std::size_t>(digits.size(),
                                                     spec.order()));
            d.value = zeck::reconstruct(digits, t);
            out = zeck::decomposition_json(d, seg);
            out["leading_zeros"] = seg.leading_zeros;
        } else if (sub == c_count) {
            const std::size_t n = single_n(o, "count-superlegal");
            const zeck::recurrence_spec spec = build_spec(o);
            zeck::count_method method = zeck::count_method::recurrence;
            if (o.method == "enumeration")
                method = zeck::count_method::enumeration;
            else if (!o.method.empty() && o.method != "recurrence")
                throw usage_error("--method must be recurrence or enumeration");
            const zeck::super_legal_table h =
                zeck::count_super_legal(spec, n, method, o.budget);
            const zeck::sequence_table t =
                build_table(o, std::max(n, spec.order()));
            out["spec"] = zeck::spec_json(t);
            json body = zeck::super_legal_json(h);
            for (auto& [kk, vv] : body.items()) out[kk] = vv;
            const zeck::ratio_report rr = zeck::hn_gn_ratio(t, h, n);
            json ratios = json::array();
            for (const mpq_class& q : rr.ratios)
                ratios.push_back(zeck::rational_json(q));
            out["hn_gn"] = std::move(ratios);
            out["hn_gn_limit"] = zeck::round12(rr.limit_estimate);
        } else if (sub == c_root) {
            const zeck::recurrence_spec spec = build_spec(o);
            const std::size_t n =
                o.n.empty() ? std::max<std::size_t>(60, 2 * spec.order() + 10)
                            : single_n(o, "root");
            const zeck::sequence_table t = build_table(o, n);
            out["spec"] = zeck::spec_json(t);
            out["fit"] = zeck::binet_json(
                zeck::fit_binet_constant(t, zeck::dominant_root(t.spec())));
        } else if (sub == c_dist) {
            const std::size_t n = single_n(o, "distribution");
            const zeck::sequence_table t = build_table(o, n + 1);
            zeck::coefficient_distribution dist;
            if (o.route.empty() || o.route == "formula")
                dist = zeck::coefficient_distribution_formula(
                    t, zeck::count_super_legal(t.spec(), n), n);
            else if (o.route == "enumeration")
                dist = zeck::coefficient_distribution_enumerate(t, n, o.budget,
                                                                o.workers);
            else
                throw usage_error("--route must be formula or enumeration");
            if (o.format == "csv") {
                std::cout << zeck::distribution_csv(dist);
            } else {
                out["spec"] = zeck::spec_json(t);
                out["route"] = o.route.empty() ? "formula" : o.route;
                json body = zeck::distribution_json(dist);
                for (auto& [k, v] : body.items()) out[k] = v;
                emit(out, o);
            }
            return 0;
        } else if (sub == c_blockcounts) {
            const std::size_t n = single_n(o, "block-counts");
            const zeck::sequence_table t = build_table(o, n + 1);
            const zeck::super_legal_table h =
                zeck::count_super_legal(t.spec(), n);
            out["spec"] = zeck::spec_json(t);
            out["n"] = n;
            json cells = json::array();
            const zeck::digit_t kmax = t.spec().max_coeff();
            const std::size_t L = t.spec().order();
            auto run_cell = [&](std::size_t j, zeck::digit_t k, std::size_t l,
                               std::size_t r) {
                if (o.route == "formula" || o.route == "enumeration") {
                    const zeck::count_route route =
                        o.route == "formula" ? zeck::count_route::formula
                                             : zeck::count_route::enumeration;
                    cells.push_back(zeck::block_count_json(
                        zeck::block_position_count(t, h, n, j, k, l, r, route,
                                                   o.budget, o.workers)));
                    return;
                }
                const zeck::block_position_count_result f =
                    zeck::block_position_count(t, h, n, j, k, l, r,
                                               zeck::count_route::formula,
                                               o.budget, o.workers);
                const zeck::block_position_count_result e =
                    zeck::block_position_count(t, h, n, j, k, l, r,
                                               zeck::count_route::enumeration,
                                               o.budget, o.workers);
                json cj = zeck::block_count_json(f);
                cj.erase("route");
                cj["formula"] = zeck::decimal(f.count);
                cj["enumeration"] = zeck::decimal(e.count);
                cj.erase("count");
                cj["match"] = f.count == e.count;
                cells.push_back(cj);
            };
            if (o.j && o.k && o.l && o.r) {
                run_cell(*o.j, static_cast<zeck::digit_t>(*o.k), *o.l, *o.r);
            } else if (o.j || o.k || o.l || o.r) {
                throw usage_error(
                    "give all of --j --k --l --r or none (full sweep)");
            } else {
                for (std::size_t j = 1; j <= n; ++j)
                    for (zeck::digit_t k = 0; k <= kmax; ++k)
                        for (std::size_t l = 1; l <= L; ++l)
                            for (std::size_t r = 1; r <= l; ++r)
                                if (zeck::detail::block_interior(n, j, l, r))
                                    run_cell(j, k, l, r);
            }
            out["cells"] = std::move(cells);
        } else if (sub == c_density) {
            const std::size_t n = single_n(o, "density");
            const zeck::sequence_table t = build_table(o, n);
            out["spec"] = zeck::spec_json(t);
            out["set"] = set_json(o);
            json body = zeck::density_json(zeck::density_qsn(build_pred(o), t, n));
            for (auto& [k, v] : body.items()) out[k] = v;
        } else if (sub == c_benford) {
            const std::size_t n = single_n(o, "benford");
            const std::string mode = o.mode.empty() ? "sequence" : o.mode;
            if (mode == "sequence") {
                const zeck::sequence_table t = build_table(o, n);
                const zeck::sequence_benford_report_t rep =
                    zeck::sequence_benford_report(t, n, o.base);
                if (o.format == "csv") {
                    std::cout << zeck::histogram_csv(rep.histogram);
                    return 0;
                }
                out["spec"] = zeck::spec_json(t);
                out["n"] = n;
                json body = zeck::sequence_benford_json(rep);
                for (auto& [k, v] : body.items()) out[k] = v;
            } else if (mode == "summand") {
                require_seed(sub);
                if (o.samples == 0)
                    throw usage_error("benford --mode summand needs --samples");
                const zeck::sequence_table t = build_table(o, n + 1);
                const zeck::digit_histogram h = zeck::summand_digit_report(
                    t, n, o.base, o.seed, o.samples, o.workers);
                if (o.format == "csv") {
                    std::cout << zeck::histogram_csv(h);
                    return 0;
                }
                out["spec"] = zeck::spec_json(t);
                out["n"] = n;
                json body = zeck::summand_benford_json(h, o.seed, o.samples);
                for (auto& [k, v] : body.items()) out[k] = v;
            } else {
                throw usage_error("--mode must be sequence or summand");
            }
        } else if (sub == c_stats) {
            if (o.n.empty()) throw usage_error("stats needs --n");
            const bool sampled = o.plan == "sampled";
            if (!sampled && o.plan != "exact")
                throw usage_error("--plan must be exact or sampled");
            if (sampled) {
                require_seed(sub);
                if (o.samples == 0)
                    throw usage_error("stats --plan sampled needs --samples");
            }
            const bool with_eps = sub->get_option("--epsilon")->count() > 0;
            if (with_eps && !sampled)
                throw usage_error(
                    "--epsilon applies to the sampled plan only");
            const std::size_t horizon =
                *std::max_element(o.n.begin(), o.n.end()) + 1;
            const zeck::sequence_table t = build_table(o, horizon);
            const zeck::set_predicate pred = build_pred(o);
            const zeck::stats_plan plan =
                sampled ? zeck::stats_plan(zeck::sampled_plan{o.seed, o.samples})
                        : zeck::stats_plan(zeck::exact_plan{o.budget});
            json ladder = json::array();
            std::vector<mpq_class> means;
            for (std::size_t n : o.n) {
                const zeck::experiment_report rep =
                    zeck::xy_stats(t, n, pred, plan, o.workers);
                means.push_back(rep.x_mean);
                json rj = zeck::experiment_json(rep);
                if (with_eps) {
                    const zeck::concentration_report cr = zeck::concentration(
                        t, {n}, pred, o.epsilon, o.seed, o.samples, o.workers);
                    json cj;
                    cj["epsilon"] = zeck::round12(o.epsilon);
                    cj["density"] = zeck::rational_json(cr.density);
                    cj["fraction"] = zeck::round12(cr.points[0].fraction);
                    cj["within"] = cr.points[0].within;
                    cj["excluded_zero_x"] = cr.points[0].zero_x_excluded;
                    rj["stats"]["concentration"] = std::move(cj);
                } else {
                    rj["stats"]["concentration"] = nullptr;
                }
                json hists = json::array();
                if (sampled && sub->get_option("--base")->count() > 0) {
                    const zeck::digit_histogram h = zeck::summand_digit_report(
                        t, n, o.base, o.seed, o.samples, o.workers);
                    hists.push_back(zeck::histogram_json(h));
                }
                rj["histograms"] = std::move(hists);
                ladder.push_back(std::move(rj));
            }
            out["spec"] = zeck::spec_json(t);
            out["set"] = set_json(o);
            out["plan"] = sampled ? "sampled" : "exact";
            if (o.n.size() == 1) {
                for (auto& [k, v] : ladder[0].items()) out[k] = v;
                out["c_estimate"] = nullptr;
            } else {
                out["ladder"] = std::move(ladder);
                out["c_estimate"] =
                    zeck::rational_json(least_squares_slope(o.n, means));
            }
        } else if (sub == c_conc) {
            if (o.n.empty()) throw usage_error("concentration needs --n");
            require_seed(sub);
            if (o.samples == 0)
                throw usage_error("concentration needs --samples");
            if (sub->get_option("--epsilon")->count() == 0)
                throw usage_error("concentration needs --epsilon");
            const std::size_t horizon =
                *std::max_element(o.n.begin(), o.n.end()) + 1;
            const zeck::sequence_table t = build_table(o, horizon);
            const zeck::concentration_report rep =
                zeck::concentration(t, o.n, build_pred(o), o.epsilon, o.seed,
                                    o.samples, o.workers);
            out["spec"] = zeck::spec_json(t);
            out["set"] = set_json(o);
            out["seed"] = o.seed;
            out["samples"] = o.samples;
            json body = zeck::concentration_json(rep);
            for (auto& [k, v] : body.items()) out[k] = v;
        } else if (sub == c_oracle) {
            const std::size_t n = single_n(o, "oracle");
            const zeck::sequence_table t = build_table(o, n + 1);
            out["spec"] = zeck::spec_json(t);
            json body =
                zeck::oracle_json(zeck::bijection_audit(t, n, o.budget));
            for (auto& [k, v] : body.items()) out[k] = v;
        }

        emit(out, o);
        return 0;
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const zeck::error& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
