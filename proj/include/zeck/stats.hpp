#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "counting.hpp"
#include "errors.hpp"
#include "grammar.hpp"
#include "parallel.hpp"
#include "recurrence.hpp"
#include "rng.hpp"

namespace zeck {

// ---- significands ----

inline void check_base(unsigned long base) {
    if (base < 2) throw digit_out_of_range("base must be at least 2");
}

// Exact leading digit of x in the given base, via x / base^k with the
// largest k keeping the quotient nonzero. No floating point involved.
inline unsigned long leading_digit(const mpz_class& x, unsigned long base) {
    check_base(base);
    if (x <= 0) throw non_positive_input("leading digit needs x > 0");
    std::size_t k = mpz_sizeinbase(x.get_mpz_t(), static_cast<int>(base));
    // sizeinbase may overestimate by one digit
    mpz_class pow;
    mpz_ui_pow_ui(pow.get_mpz_t(), base, static_cast<unsigned long>(k - 1));
    if (pow > x) {
        mpz_divexact_ui(pow.get_mpz_t(), pow.get_mpz_t(), base);
    }
    mpz_class d = x / pow;
    return mpz_get_ui(d.get_mpz_t());
}

// S_B(x) in [1, B) with x = S_B(x) * B^k.
inline double significand(const mpz_class& x, unsigned long base) {
    check_base(base);
    if (x <= 0) throw non_positive_input("significand needs x > 0");
    std::size_t k = mpz_sizeinbase(x.get_mpz_t(), static_cast<int>(base));
    mpz_class pow;
    mpz_ui_pow_ui(pow.get_mpz_t(), base, static_cast<unsigned long>(k - 1));
    if (pow > x)
        mpz_divexact_ui(pow.get_mpz_t(), pow.get_mpz_t(), base);
    mpq_class q(x, pow);
    return q.get_d();
}

inline double significand(double x, unsigned long base) {
    check_base(base);
    if (!(x > 0)) throw non_positive_input("significand needs x > 0");
    const double b = static_cast<double>(base);
    while (x >= b) x /= b;
    while (x < 1) x *= b;
    return x;
}

// log_B(1 + 1/d): the limiting frequency of leading digit d in base B.
inline double benford_target(unsigned long base, unsigned long d) {
    check_base(base);
    if (d < 1 || d >= base)
        throw digit_out_of_range("digit must lie in [1, base)");
    return std::log1p(1.0 / static_cast<double>(d)) /
           std::log(static_cast<double>(base));
}

// ---- element predicates ----

// Membership test for a subset S of the sequence; pure in (index, value).
struct set_predicate {
    enum class kind_t {
        everything,
        leading_digit,
        significand_at_most,
        residue,
        explicit_indices
    };

    kind_t kind = kind_t::everything;
    unsigned long base = 10;
    unsigned long digit = 1;
    double s = 1.0;
    mpz_class modulus;
    std::vector<mpz_class> classes;
    std::set<std::size_t> indices;

    static set_predicate everything() { return {}; }

    static set_predicate with_leading_digit(unsigned long base, unsigned long d) {
        check_base(base);
        if (d < 1 || d >= base)
            throw digit_out_of_range("digit must lie in [1, base)");
        set_predicate p;
        p.kind = kind_t::leading_digit;
        p.base = base;
        p.digit = d;
        return p;
    }

    static set_predicate with_significand_at_most(unsigned long base, double s) {
        check_base(base);
        if (!(s >= 1.0) || s > static_cast<double>(base))
            throw digit_out_of_range("significand bound must lie in [1, base]");
        set_predicate p;
        p.kind = kind_t::significand_at_most;
        p.base = base;
        p.s = s;
        return p;
    }

    static set_predicate with_residue(mpz_class modulus,
                                      std::vector<mpz_class> classes) {
        if (modulus < 1) throw invalid_spec("modulus must be positive");
        set_predicate p;
        p.kind = kind_t::residue;
        p.modulus = std::move(modulus);
        for (mpz_class& c : classes) {
            mpz_class r;
            mpz_mod(r.get_mpz_t(), c.get_mpz_t(), p.modulus.get_mpz_t());
            p.classes.push_back(r);
        }
        return p;
    }

    static set_predicate evens() { return with_residue(2, {mpz_class(0)}); }

    static set_predicate with_indices(std::set<std::size_t> idx) {
        set_predicate p;
        p.kind = kind_t::explicit_indices;
        p.indices = std::move(idx);
        return p;
    }

    bool contains(std::size_t index, const mpz_class& g) const {
        switch (kind) {
        case kind_t::everything:
            return true;
        case kind_t::leading_digit:
            return leading_digit(g, base) == digit;
        case kind_t::significand_at_most:
            return significand(g, base) <= s;
        case kind_t::residue: {
            mpz_class r;
            mpz_mod(r.get_mpz_t(), g.get_mpz_t(), modulus.get_mpz_t());
            for (const mpz_class& c : classes)
                if (r == c) return true;
            return false;
        }
        case kind_t::explicit_indices:
            return indices.count(index) > 0;
        }
        return false;
    }
};

// mask[i] = pred holds for G_i, for i in 1..n (index 0 unused).
inline std::vector<char> predicate_mask(const set_predicate& pred,
                                        const sequence_table& table,
                                        std::size_t n) {
    if (n > table.size())
        throw index_out_of_range("predicate mask needs n table entries");
    std::vector<char> mask(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i)
        mask[i] = pred.contains(i, table.g(i)) ? 1 : 0;
    return mask;
}

// ---- density ----

struct density_estimate {
    std::size_t n = 0;
    std::size_t hits = 0;
    mpq_class q; // hits / n exactly
    std::optional<double> limit_hint;
};

inline density_estimate density_qsn(const set_predicate& pred,
                                    const sequence_table& table, std::size_t n) {
    const std::vector<char> mask = predicate_mask(pred, table, n);
    density_estimate d;
    d.n = n;
    for (std::size_t i = 1; i <= n; ++i) d.hits += mask[i];
    if (n > 0) {
        d.q = mpq_class(static_cast<unsigned long>(d.hits),
                        static_cast<unsigned long>(n));
        d.q.canonicalize();
    }
    if (pred.kind == set_predicate::kind_t::leading_digit)
        d.limit_hint = benford_target(pred.base, pred.digit);
    return d;
}

// ---- uniform sampling ----

namespace detail {

inline splitmix64 sample_stream(std::uint64_t seed, std::size_t n,
                                std::uint64_t index) {
    // fold the string length into the key so ladders over n draw
    // independent samples from one user seed
    return substream(seed ^ (0xD1B54A32D192ED03ULL *
                             static_cast<std::uint64_t>(n)),
                     index);
}

// One uniform draw from [0, bound) by masked 64-bit words and rejection.
inline mpz_class draw_below(splitmix64& rng, const mpz_class& bound,
                            std::size_t bits) {
    if (bits == 0) return 0;
    const std::size_t words = (bits + 63) / 64;
    const std::uint64_t top_mask =
        (bits % 64) ? ((std::uint64_t{1} << (bits % 64)) - 1) : ~std::uint64_t{0};
    std::vector<std::uint64_t> buf(words);
    mpz_class v;
    while (true) {
        for (std::size_t w = 0; w < words; ++w) buf[w] = rng.next();
        buf[0] &= top_mask; // buf[0] is the most significant word
        mpz_import(v.get_mpz_t(), words, 1, sizeof(std::uint64_t), 0, 0,
                   buf.data());
        if (v < bound) return v;
    }
}

} // namespace detail

// `count` uniform draws from [0, G_{n+1}); sample i comes from its own
// substream keyed by (seed, n, i), so output is independent of worker count
// and of which other samples were drawn.
inline std::vector<mpz_class> sample_uniform(const sequence_table& table,
                                             std::size_t n, std::uint64_t seed,
                                             std::size_t count,
                                             unsigned workers = 1) {
    if (n + 1 > table.size())
        throw index_out_of_range("sampling needs table entries through n + 1");
    const mpz_class& bound = table.g(n + 1);
    const std::size_t bits =
        bound > 1 ? mpz_sizeinbase(mpz_class(bound - 1).get_mpz_t(), 2) : 0;
    std::vector<mpz_class> out(count);
    chunked_reduce(
        count, workers, 256, 0,
        [&](int&, std::size_t i) {
            splitmix64 rng = detail::sample_stream(seed, n, i);
            out[i] = detail::draw_below(rng, bound, bits);
        },
        [](int&, int&&) {});
    return out;
}

// ---- summand statistics ----

struct exact_plan {
    std::uint64_t budget = default_enumeration_budget;
};

struct sampled_plan {
    std::uint64_t seed = 0;
    std::size_t count = 0;
};

using stats_plan = std::variant<exact_plan, sampled_plan>;

struct experiment_report {
    std::size_t n = 0;
    bool exact = false;
    std::uint64_t seed = 0;       // sampled plan
    std::size_t sample_count = 0; // sampled plan
    mpz_class population;         // exact plan: number of strings
    std::vector<std::uint64_t> x_samples, y_samples; // sampled plan
    mpq_class x_mean, x_var, y_mean, y_var;
    mpq_class ratio_mean; // mean of Y/X over samples with X > 0
    double x_stderr = 0, y_stderr = 0; // sampled plan
    std::uint64_t zero_x_count = 0;
    std::optional<double> c_estimate; // slope over an n-ladder, when computed
};

namespace detail {

struct xy_sums {
    mpz_class sx, sxx, sy, syy;
    mpq_class sratio;
    std::uint64_t zero_x = 0;

    void add(std::uint64_t x, std::uint64_t y) {
        sx += x;
        sxx += mpz_class(x) * x;
        sy += y;
        syy += mpz_class(y) * y;
        if (x == 0) {
            ++zero_x;
        } else {
            mpq_class r(y, x);
            r.canonicalize();
            sratio += r;
        }
    }

    void merge(xy_sums&& o) {
        sx += o.sx;
        sxx += o.sxx;
        sy += o.sy;
        syy += o.syy;
        sratio += o.sratio;
        zero_x += o.zero_x;
    }
};

// X and Y of one decomposition: X sums all digits, Y those whose summand
// G_{n'+1-i} lies in the set (mask is indexed by sequence position).
inline void xy_of(const decomposition& d, const std::vector<char>& mask,
                  std::uint64_t& x, std::uint64_t& y) {
    x = 0;
    y = 0;
    const std::size_t len = d.coeffs.size();
    for (std::size_t i = 1; i <= len; ++i) {
        const digit_t a = d.coeffs[i - 1];
        if (a == 0) continue;
        x += a;
        if (mask[len + 1 - i]) y += a;
    }
}

} // namespace detail

// Exact moments of X_n (all digits) and Y_n (digits over set elements) by
// full enumeration; means and variances are exact rationals over the string
// population.
inline experiment_report xy_stats_exact(const sequence_table& table,
                                        std::size_t n, const set_predicate& pred,
                                        const exact_plan& plan,
                                        unsigned workers = 1) {
    const std::vector<char> mask = predicate_mask(pred, table, n);
    detail::xy_sums sums = enumerate_legal_reduce(
        table, n, workers, detail::xy_sums{},
        [&mask, n](detail::xy_sums& acc, const std::vector<digit_t>& digits,
                   const mpz_class&) {
            std::uint64_t x = 0, y = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                const digit_t a = digits[j - 1];
                if (a == 0) continue;
                x += a;
                if (mask[n + 1 - j]) y += a;
            }
            acc.add(x, y);
        },
        [](detail::xy_sums& into, detail::xy_sums&& from) {
            into.merge(std::move(from));
        },
        plan.budget);

    experiment_report rep;
    rep.n = n;
    rep.exact = true;
    rep.population = legal_string_count(table.spec(), n);
    const mpz_class& m = rep.population;
    rep.x_mean = mpq_class(sums.sx, m);
    rep.x_mean.canonicalize();
    rep.y_mean = mpq_class(sums.sy, m);
    rep.y_mean.canonicalize();
    mpq_class ex2(sums.sxx, m), ey2(sums.syy, m);
    ex2.canonicalize();
    ey2.canonicalize();
    rep.x_var = ex2 - rep.x_mean * rep.x_mean;
    rep.y_var = ey2 - rep.y_mean * rep.y_mean;
    rep.zero_x_count = sums.zero_x;
    const mpz_class ratio_n = m - mpz_class(sums.zero_x);
    if (ratio_n > 0) {
        rep.ratio_mean = sums.sratio / mpq_class(ratio_n);
        rep.ratio_mean.canonicalize();
    }
    return rep;
}

// Monte Carlo estimates of the same statistics; unbiased variance, exact
// rational sufficient statistics merged in fixed order, so byte-identical
// output for any worker count.
inline experiment_report xy_stats_sampled(const sequence_table& table,
                                          std::size_t n,
                                          const set_predicate& pred,
                                          const sampled_plan& plan,
                                          unsigned workers = 1) {
    if (plan.count < 2)
        throw degenerate_sample("sampled plan needs at least 2 samples");
    if (n + 1 > table.size())
        throw index_out_of_range("sampling needs table entries through n + 1");
    const std::vector<char> mask = predicate_mask(pred, table, n);
    const mpz_class& bound = table.g(n + 1);
    const std::size_t bits =
        bound > 1 ? mpz_sizeinbase(mpz_class(bound - 1).get_mpz_t(), 2) : 0;

    experiment_report rep;
    rep.n = n;
    rep.exact = false;
    rep.seed = plan.seed;
    rep.sample_count = plan.count;
    rep.x_samples.assign(plan.count, 0);
    rep.y_samples.assign(plan.count, 0);

    detail::xy_sums sums = chunked_reduce(
        plan.count, workers, 256, detail::xy_sums{},
        [&](detail::xy_sums& acc, std::size_t i) {
            splitmix64 rng = detail::sample_stream(plan.seed, n, i);
            const mpz_class m = detail::draw_below(rng, bound, bits);
            const decomposition d = decompose(m, table);
            std::uint64_t x = 0, y = 0;
            detail::xy_of(d, mask, x, y);
            rep.x_samples[i] = x;
            rep.y_samples[i] = y;
            acc.add(x, y);
        },
        [](detail::xy_sums& into, detail::xy_sums&& from) {
            into.merge(std::move(from));
        });

    const unsigned long M = static_cast<unsigned long>(plan.count);
    rep.x_mean = mpq_class(sums.sx, mpz_class(M));
    rep.x_mean.canonicalize();
    rep.y_mean = mpq_class(sums.sy, mpz_class(M));
    rep.y_mean.canonicalize();
    // unbiased: (sum x^2 - M mean^2) / (M - 1)
    mpq_class ex2(sums.sxx, mpz_class(M));
    ex2.canonicalize();
    mpq_class ey2(sums.syy, mpz_class(M));
    ey2.canonicalize();
    const mpq_class mf(M, 1), mf1(M - 1, 1);
    rep.x_var = (ex2 - rep.x_mean * rep.x_mean) * mf / mf1;
    rep.y_var = (ey2 - rep.y_mean * rep.y_mean) * mf / mf1;
    rep.x_stderr = std::sqrt(rep.x_var.get_d() / static_cast<double>(M));
    rep.y_stderr = std::sqrt(rep.y_var.get_d() / static_cast<double>(M));
    rep.zero_x_count = sums.zero_x;
    if (plan.count > sums.zero_x) {
        rep.ratio_mean =
            sums.sratio / mpq_class(static_cast<unsigned long>(
                              plan.count - sums.zero_x));
        rep.ratio_mean.canonicalize();
    }
    return rep;
}

inline experiment_report xy_stats(const sequence_table& table, std::size_t n,
                                  const set_predicate& pred,
                                  const stats_plan& plan, unsigned workers = 1) {
    return std::visit(
        [&](const auto& p) {
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, exact_plan>)
                return xy_stats_exact(table, n, pred, p, workers);
            else
                return xy_stats_sampled(table, n, pred, p, workers);
        },
        plan);
}

// ---- slope of E[X_n] over a ladder of n ----

struct slope_estimate {
    std::vector<std::size_t> ns;
    std::vector<mpq_class> means; // E[X_n] per rung
    mpq_class slope;              // least-squares slope, exact in the means
    double slope_value = 0;
};

// The growth constant of E[X_n] has no general closed form; estimate it as
// the least-squares slope of E[X_n] against n.
inline slope_estimate summand_slope(const sequence_table& table,
                                    const std::vector<std::size_t>& ns,
                                    const stats_plan& plan,
                                    unsigned workers = 1) {
    if (ns.size() < 2)
        throw degenerate_sample("slope needs at least two ladder points");
    slope_estimate est;
    est.ns = ns;
    const set_predicate all = set_predicate::everything();
    for (std::size_t n : ns)
        est.means.push_back(xy_stats(table, n, all, plan, workers).x_mean);
    mpq_class sx(0), sy(0), sxy(0), sxx(0);
    const mpq_class m(static_cast<unsigned long>(ns.size()), 1);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const mpq_class x(static_cast<unsigned long>(ns[i]), 1);
        sx += x;
        sy += est.means[i];
        sxy += x * est.means[i];
        sxx += x * x;
    }
    est.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    est.slope.canonicalize();
    est.slope_value = est.slope.get_d();
    return est;
}

// ---- concentration experiment ----

struct concentration_point {
    std::size_t n = 0;
    std::size_t samples = 0;
    std::size_t within = 0;
    std::size_t zero_x_excluded = 0;
    double fraction = 0; // within / (samples - excluded)
};

struct concentration_report {
    mpq_class density; // d, estimated at the table horizon
    double epsilon = 0;
    std::vector<concentration_point> points;
};

// Fraction of samples whose summand ratio Y/X lands within epsilon of the
// set density, per ladder rung. The epsilon comparison is exact (epsilon is
// a binary-exact rational), so results are reproducible bit for bit.
inline concentration_report concentration(const sequence_table& table,
                                          const std::vector<std::size_t>& ladder,
                                          const set_predicate& pred,
                                          double epsilon, std::uint64_t seed,
                                          std::size_t count,
                                          unsigned workers = 1) {
    if (!(epsilon > 0))
        throw invalid_spec("epsilon must be positive");
    concentration_report rep;
    rep.epsilon = epsilon;
    const std::size_t horizon = table.size();
    rep.density = density_qsn(pred, table, horizon).q;
    const mpq_class eps_q(epsilon);

    for (std::size_t n : ladder) {
        const std::vector<char> mask = predicate_mask(pred, table, n);
        const mpz_class& bound = table.g(n + 1);
        const std::size_t bits =
            bound > 1 ? mpz_sizeinbase(mpz_class(bound - 1).get_mpz_t(), 2) : 0;
        struct acc_t {
            std::uint64_t within = 0, zero_x = 0;
        };
        acc_t acc = chunked_reduce(
            count, workers, 256, acc_t{},
            [&](acc_t& a, std::size_t i) {
                splitmix64 rng = detail::sample_stream(seed, n, i);
                const mpz_class m = detail::draw_below(rng, bound, bits);
                const decomposition d = decompose(m, table);
                std::uint64_t x = 0, y = 0;
                detail::xy_of(d, mask, x, y);
                if (x == 0) {
                    ++a.zero_x;
                    return;
                }
                mpq_class r(y, x);
                r.canonicalize();
                r -= rep.density;
                if (abs(r) < eps_q) ++a.within;
            },
            [](acc_t& into, acc_t&& from) {
                into.within += from.within;
                into.zero_x += from.zero_x;
            });
        concentration_point pt;
        pt.n = n;
        pt.samples = count;
        pt.within = acc.within;
        pt.zero_x_excluded = acc.zero_x;
        const std::size_t denom = count - acc.zero_x;
        pt.fraction = denom ? static_cast<double>(acc.within) /
                                  static_cast<double>(denom)
                            : 0.0;
        rep.points.push_back(pt);
    }
    return rep;
}

// ---- Benford reports ----

struct digit_histogram {
    unsigned long base = 10;
    std::vector<std::uint64_t> counts; // counts[d-1] for digit d in 1..base-1
    std::uint64_t total = 0;
    std::vector<double> frequency;
    std::vector<double> target; // Benford limit per digit
    double sup_gap = 0;         // max |frequency - target|
};

namespace detail {

inline digit_histogram finalize_histogram(unsigned long base,
                                          std::vector<std::uint64_t> counts) {
    digit_histogram h;
    h.base = base;
    h.counts = std::move(counts);
    for (std::uint64_t c : h.counts) h.total += c;
    h.frequency.resize(h.counts.size(), 0.0);
    h.target.resize(h.counts.size(), 0.0);
    for (std::size_t d = 1; d < base; ++d) {
        h.target[d - 1] = benford_target(base, d);
        if (h.total)
            h.frequency[d - 1] = static_cast<double>(h.counts[d - 1]) /
                                 static_cast<double>(h.total);
        const double gap = std::fabs(h.frequency[d - 1] - h.target[d - 1]);
        h.sup_gap = std::max(h.sup_gap, gap);
    }
    return h;
}

} // namespace detail

// Pooled leading digits of the summands appearing in sampled decompositions,
// each counted with its digit multiplicity.
inline digit_histogram summand_digit_report(const sequence_table& table,
                                            std::size_t n, unsigned long base,
                                            std::uint64_t seed,
                                            std::size_t count,
                                            unsigned workers = 1) {
    check_base(base);
    if (n + 1 > table.size())
        throw index_out_of_range("sampling needs table entries through n + 1");
    std::vector<unsigned long> lead(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i)
        lead[i] = leading_digit(table.g(i), base);
    const mpz_class& bound = table.g(n + 1);
    const std::size_t bits =
        bound > 1 ? mpz_sizeinbase(mpz_class(bound - 1).get_mpz_t(), 2) : 0;

    using counts_t = std::vector<std::uint64_t>;
    counts_t counts = chunked_reduce(
        count, workers, 256, counts_t(base - 1, 0),
        [&](counts_t& acc, std::size_t i) {
            splitmix64 rng = detail::sample_stream(seed, n, i);
            const mpz_class m = detail::draw_below(rng, bound, bits);
            const decomposition d = decompose(m, table);
            const std::size_t len = d.coeffs.size();
            for (std::size_t p = 1; p <= len; ++p) {
                const digit_t a = d.coeffs[p - 1];
                if (a == 0) continue;
                acc[lead[len + 1 - p] - 1] += a;
            }
        },
        [](counts_t& into, counts_t&& from) {
            for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
        });
    return detail::finalize_histogram(base, std::move(counts));
}

// D*(x_1..x_N) = max_i max(i/N - x_(i), x_(i) - (i-1)/N) over sorted points.
inline double star_discrepancy(std::vector<double> points) {
    if (points.empty()) return 1.0;
    std::sort(points.begin(), points.end());
    const double N = static_cast<double>(points.size());
    double d = 0;
    for (std::size_t i = 1; i <= points.size(); ++i) {
        const double x = points[i - 1];
        d = std::max(d, static_cast<double>(i) / N - x);
        d = std::max(d, x - static_cast<double>(i - 1) / N);
    }
    return d;
}

struct sequence_benford_report_t {
    digit_histogram histogram;   // leading digits of G_1..G_n
    double star_discrepancy = 0; // of {log_B G_i mod 1}
    bool degenerate = false;     // log_B lambda resonates; Benford claim void
};

// Leading-digit histogram of the sequence itself plus the equidistribution
// diagnostic behind it. degenerate flags sequences (like powers of the base)
// whose log fractional parts do not spread out.
inline sequence_benford_report_t sequence_benford_report(
    const sequence_table& table, std::size_t n, unsigned long base) {
    check_base(base);
    if (n > table.size())
        throw index_out_of_range("report needs n table entries");
    std::vector<std::uint64_t> counts(base - 1, 0);
    std::vector<double> fracs;
    fracs.reserve(n);
    const double logb = std::log(static_cast<double>(base));
    for (std::size_t i = 1; i <= n; ++i) {
        ++counts[leading_digit(table.g(i), base) - 1];
        const double lg = log_mpz(table.g(i)) / logb;
        double frac = lg - std::floor(lg);
        if (frac >= 1.0) frac = 0.0; // guard rounding at integer boundaries
        fracs.push_back(frac);
    }
    sequence_benford_report_t rep;
    rep.histogram = detail::finalize_histogram(base, std::move(counts));
    rep.star_discrepancy = star_discrepancy(std::move(fracs));
    rep.degenerate = rep.star_discrepancy >= 0.25;
    return rep;
}

// ---- chi-square self-test ----

namespace detail {

// Regularized incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a);
// series for P when x < a + 1, Lentz continued fraction otherwise.
inline double regularized_gamma_q(double a, double x) {
    if (x < 0 || a <= 0) return 0;
    if (x == 0) return 1;
    const double lg = std::lgamma(a);
    if (x < a + 1) {
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - lg);
        return 1 - p;
    }
    double b = x + 1 - a, c = 1e300, d = 1 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - lg) * h;
}

} // namespace detail

// p-value of a chi-square test of `samples` against the uniform distribution
// on [0, bound), bucketed into `buckets` equal cells.
inline double uniform_chi_square_pvalue(const std::vector<mpz_class>& samples,
                                        const mpz_class& bound,
                                        unsigned buckets) {
    if (buckets < 2 || samples.size() < buckets)
        throw degenerate_sample("need at least as many samples as buckets");
    std::vector<std::uint64_t> obs(buckets, 0);
    for (const mpz_class& v : samples) {
        mpz_class b = (v * buckets) / bound;
        ++obs[static_cast<std::size_t>(b.get_ui())];
    }
    const double expected =
        static_cast<double>(samples.size()) / static_cast<double>(buckets);
    double chi2 = 0;
    for (std::uint64_t o : obs) {
        const double diff = static_cast<double>(o) - expected;
        chi2 += diff * diff / expected;
    }
    return detail::regularized_gamma_q(static_cast<double>(buckets - 1) / 2.0,
                                       chi2 / 2.0);
}

} // namespace zeck
