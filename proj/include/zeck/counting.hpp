#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "grammar.hpp"
#include "parallel.hpp"
#include "recurrence.hpp"

namespace zeck {

// Default cap on brute-force enumeration, in number of visited strings.
inline constexpr std::uint64_t default_enumeration_budget = 20'000'000;

// Number of fixed-length-n legal strings. Depends only on the coefficients;
// over canonical initial terms it equals G_{n+1}.
inline mpz_class legal_string_count(const recurrence_spec& spec, std::size_t n) {
    const std::size_t L = spec.order();
    std::vector<mpz_class> cnt(L, 0), nxt(L, 0);
    cnt[0] = 1;
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t q = 0; q < L; ++q) nxt[q] = 0;
        for (std::size_t q = 0; q < L; ++q) {
            if (cnt[q] == 0) continue;
            // digits 0..c_{q+1}-1 close the block, digit c_{q+1} extends it
            nxt[0] += cnt[q] * mpz_class(spec.c(q + 1));
            if (q + 1 < L) nxt[q + 1] += cnt[q];
        }
        cnt.swap(nxt);
    }
    mpz_class total = 0;
    for (const mpz_class& v : cnt) total += v;
    return total;
}

namespace detail {

inline void check_budget(const recurrence_spec& spec, std::size_t n,
                         std::uint64_t budget) {
    const mpz_class count = legal_string_count(spec, n);
    if (mpz_cmp_ui(count.get_mpz_t(), budget) > 0)
        throw budget_exceeded("enumeration of " + count.get_str() +
                              " strings exceeds budget " +
                              std::to_string(budget));
}

// DFS over legal strings in lexicographic digit order. `value` carries the
// partial sum of a_i G_{n+1-i}; weight of position t (0-based) is G_{n-t}.
template <class Fn>
void enumerate_rec(const grammar_automaton& dfa, const sequence_table& table,
                   std::size_t n, std::size_t t, int q,
                   std::vector<digit_t>& digits, mpz_class& value, Fn& fn) {
    if (t == n) {
        fn(static_cast<const std::vector<digit_t>&>(digits),
           static_cast<const mpz_class&>(value));
        return;
    }
    const recurrence_spec& spec = dfa.spec();
    const mpz_class& w = table.g(n - t);
    const digit_t cap = spec.c(static_cast<std::size_t>(q) + 1);
    const bool extend = static_cast<std::size_t>(q) + 1 < spec.order();
    for (digit_t a = 0; a <= cap; ++a) {
        if (a == cap && !extend) break;
        digits[t] = a;
        if (a != 0)
            mpz_addmul_ui(value.get_mpz_t(), w.get_mpz_t(),
                          static_cast<unsigned long>(a));
        enumerate_rec(dfa, table, n, t + 1, a == cap ? q + 1 : 0, digits,
                      value, fn);
        if (a != 0)
            mpz_submul_ui(value.get_mpz_t(), w.get_mpz_t(),
                          static_cast<unsigned long>(a));
    }
    digits[t] = 0;
}

} // namespace detail

// Visits every fixed-length-n legal string with its value, in lexicographic
// digit order. fn(digits, value).
template <class Fn>
void enumerate_legal(const sequence_table& table, std::size_t n, Fn&& fn,
                     std::uint64_t budget = default_enumeration_budget) {
    if (n > table.size())
        throw index_out_of_range("enumeration length exceeds table size");
    detail::check_budget(table.spec(), n, budget);
    const grammar_automaton dfa(table.spec());
    std::vector<digit_t> digits(n, 0);
    mpz_class value = 0;
    detail::enumerate_rec(dfa, table, n, 0, 0, digits, value, fn);
}

// Accumulating enumeration, partitioned by the first digit so independent
// workers can walk disjoint subtrees; per-partition accumulators are merged
// in digit order, making the result worker-count independent.
// per_string(acc, digits, value); merge(acc, other).
template <class Acc, class PerString, class Merge>
Acc enumerate_legal_reduce(const sequence_table& table, std::size_t n,
                           unsigned workers, Acc zero, PerString per_string,
                           Merge merge,
                           std::uint64_t budget = default_enumeration_budget) {
    if (n > table.size())
        throw index_out_of_range("enumeration length exceeds table size");
    detail::check_budget(table.spec(), n, budget);
    const recurrence_spec& spec = table.spec();
    const grammar_automaton dfa(spec);
    if (n == 0) {
        Acc acc = zero;
        std::vector<digit_t> empty;
        per_string(acc, empty, mpz_class(0));
        return acc;
    }
    // first digit runs 0..c_1, the cap value only when a block can stay open
    const std::size_t first_max =
        static_cast<std::size_t>(spec.c(1)) + (spec.order() > 1 ? 1 : 0);
    return chunked_reduce(
        first_max, workers, 1, std::move(zero),
        [&](Acc& acc, std::size_t a0) {
            std::vector<digit_t> digits(n, 0);
            digits[0] = static_cast<digit_t>(a0);
            mpz_class value = 0;
            if (a0 != 0)
                mpz_addmul_ui(value.get_mpz_t(), table.g(n).get_mpz_t(),
                              static_cast<unsigned long>(a0));
            const int q1 = a0 == spec.c(1) ? 1 : 0;
            auto fn = [&](const std::vector<digit_t>& d, const mpz_class& v) {
                per_string(acc, d, v);
            };
            detail::enumerate_rec(dfa, table, n, 1, q1, digits, value, fn);
        },
        [&](Acc& into, Acc&& from) { merge(into, std::move(from)); });
}

// ---- super-legal counts ----

enum class count_method { enumeration, recurrence };

// H_n = number of fixed-length-n super-legal strings, including the all-zero
// string (value 0). H_0 = 1 stands for the empty string; this is the
// convention under which the length recurrence and the closed-form block
// counts both hold.
struct super_legal_table {
    recurrence_spec spec;
    std::vector<mpz_class> values; // values[i] = H_{i+1}
    count_method method = count_method::recurrence;
    bool includes_zero = true;

    std::size_t size() const noexcept { return values.size(); }

    mpz_class h(std::size_t i) const {
        if (i == 0) return 1;
        if (i > values.size())
            throw missing_h_values("H_" + std::to_string(i) +
                                   " outside table of size " +
                                   std::to_string(values.size()));
        return values[i - 1];
    }
};

namespace detail {

// Literal count of length-n strings the automaton accepts in state 0.
inline mpz_class count_super_legal_brute(const recurrence_spec& spec,
                                         std::size_t n) {
    const grammar_automaton dfa(spec);
    mpz_class total = 0;
    // stack of (state, depth) walked iteratively to keep this allocation-free
    struct frame { int q; digit_t next; };
    std::vector<frame> stack(n + 1);
    std::size_t t = 0;
    stack[0] = {0, 0};
    while (true) {
        if (t == n) {
            if (stack[t].q == 0) ++total;
            if (t == 0) break;
            --t;
            continue;
        }
        frame& f = stack[t];
        const digit_t cap = spec.c(static_cast<std::size_t>(f.q) + 1);
        const bool extend = static_cast<std::size_t>(f.q) + 1 < spec.order();
        const digit_t last = extend ? cap : (cap == 0 ? 0 : cap - 1);
        if (f.next > last || (!extend && cap == 0)) {
            if (t == 0) break;
            --t;
            continue;
        }
        const digit_t a = f.next++;
        stack[t + 1] = {a == cap ? f.q + 1 : 0, 0};
        ++t;
    }
    return total;
}

} // namespace detail

inline super_legal_table count_super_legal(
    const recurrence_spec& spec, std::size_t n,
    count_method method = count_method::recurrence,
    std::uint64_t budget = default_enumeration_budget) {
    super_legal_table out{spec, {}, method, true};
    out.values.reserve(n);
    const std::size_t L = spec.order();
    const std::size_t brute_upto =
        method == count_method::enumeration ? n : std::min(n, L);
    for (std::size_t len = 1; len <= brute_upto; ++len) {
        detail::check_budget(spec, len, budget);
        out.values.push_back(detail::count_super_legal_brute(spec, len));
    }
    // length recurrence, valid once all referenced lengths exist
    for (std::size_t len = out.values.size() + 1; len <= n; ++len) {
        mpz_class next = 0;
        for (std::size_t i = 1; i <= L; ++i)
            next += mpz_class(spec.c(i)) * out.h(len - i);
        out.values.push_back(next);
    }
    return out;
}

// ---- H/G ratio ----

struct ratio_report {
    std::vector<mpq_class> ratios; // ratios[i] = H_{i+1} / G_{i+1}
    double limit_estimate = 0;     // tail average, the fitted limit
};

inline ratio_report hn_gn_ratio(const sequence_table& table,
                                const super_legal_table& h,
                                std::size_t window) {
    if (window > h.size())
        throw missing_h_values("ratio window needs H values up to " +
                               std::to_string(window));
    if (window > table.size())
        throw index_out_of_range("ratio window exceeds sequence table");
    ratio_report rep;
    rep.ratios.reserve(window);
    for (std::size_t i = 1; i <= window; ++i) {
        mpq_class q(h.h(i), table.g(i));
        q.canonicalize();
        rep.ratios.push_back(std::move(q));
    }
    const std::size_t tail = std::min<std::size_t>(5, rep.ratios.size());
    double acc = 0;
    for (std::size_t i = rep.ratios.size() - tail; i < rep.ratios.size(); ++i)
        acc += rep.ratios[i].get_d();
    rep.limit_estimate = tail ? acc / static_cast<double>(tail) : 0.0;
    return rep;
}

// ---- block position counts ----

// Role of each position under the positional accounting: the block length l
// and the offset r of the position inside its block. Bare zeros written from
// state 0 count as length-1 blocks with digit 0; positions covered by an
// unclosed final prefix carry no role (length 0).
struct position_role {
    std::uint32_t length = 0;
    std::uint32_t offset = 0;
};

inline std::vector<position_role> classify_roles(
    const std::vector<digit_t>& digits, const recurrence_spec& spec) {
    const grammar_automaton dfa(spec);
    std::vector<position_role> roles(digits.size());
    int q = 0;
    std::size_t start = 0;
    for (std::size_t t = 0; t < digits.size(); ++t) {
        if (q == 0) start = t;
        q = dfa.step(q, digits[t]);
        if (q == grammar_automaton::dead)
            throw not_legal("role classification requires a legal string");
        if (q == 0) {
            const std::uint32_t len = static_cast<std::uint32_t>(t - start + 1);
            for (std::size_t i = start; i <= t; ++i)
                roles[i] = {len, static_cast<std::uint32_t>(i - start + 1)};
        }
    }
    return roles; // unclosed tail keeps the zero-initialized role
}

enum class count_route { formula, enumeration };

struct block_position_count_result {
    std::size_t n = 0, j = 0;
    digit_t k = 0;
    std::size_t l = 0, r = 0;
    bool interior = false;
    count_route route = count_route::formula;
    mpz_class count;
};

namespace detail {

inline void check_block_indices(const recurrence_spec& spec, std::size_t n,
                                std::size_t j, std::size_t l, std::size_t r) {
    if (r < 1 || l < r || l > spec.order())
        throw index_out_of_range("need 1 <= r <= l <= L");
    if (j < 1 || j > n)
        throw index_out_of_range("need 1 <= j <= n");
}

inline bool block_interior(std::size_t n, std::size_t j, std::size_t l,
                           std::size_t r) {
    // block spans j-r+1 .. j-r+l; interior means it fits inside 1..n
    return j >= r && n + r >= j + l;
}

} // namespace detail

// Closed-form count of strings whose position j holds digit k at offset r of
// a length-l block:
//   r < l, k = c_r : c_l * G_{n-j-l+r+1} * H_{j-r}
//   r = l, k < c_r :       G_{n-j-l+r+1} * H_{j-r}
//   otherwise      : 0
// Valid only in the interior regime (the block fits inside the string).
inline mpz_class block_position_count_formula(const sequence_table& table,
                                              const super_legal_table& h,
                                              std::size_t n, std::size_t j,
                                              digit_t k, std::size_t l,
                                              std::size_t r) {
    const recurrence_spec& spec = table.spec();
    detail::check_block_indices(spec, n, j, l, r);
    if (!detail::block_interior(n, j, l, r))
        throw boundary_regime("block overhangs the string ends; use the "
                              "enumeration route");
    if (n > table.size())
        throw index_out_of_range("table too short for string length n");
    const std::size_t g_index = n - j - l + r + 1;
    if (r < l && k == spec.c(r))
        return mpz_class(spec.c(l)) * table.g(g_index) * h.h(j - r);
    if (r == l && k < spec.c(r))
        return table.g(g_index) * h.h(j - r);
    return 0;
}

inline mpz_class block_position_count_enumerate(
    const sequence_table& table, std::size_t n, std::size_t j, digit_t k,
    std::size_t l, std::size_t r,
    std::uint64_t budget = default_enumeration_budget, unsigned workers = 1) {
    detail::check_block_indices(table.spec(), n, j, l, r);
    const recurrence_spec& spec = table.spec();
    return enumerate_legal_reduce(
        table, n, workers, mpz_class(0),
        [&, j, k, l, r](mpz_class& acc, const std::vector<digit_t>& digits,
                        const mpz_class&) {
            if (digits[j - 1] != k) return;
            const std::vector<position_role> roles = classify_roles(digits, spec);
            if (roles[j - 1].length == l && roles[j - 1].offset == r) ++acc;
        },
        [](mpz_class& into, mpz_class&& from) { into += from; }, budget);
}

inline block_position_count_result block_position_count(
    const sequence_table& table, const super_legal_table& h, std::size_t n,
    std::size_t j, digit_t k, std::size_t l, std::size_t r, count_route route,
    std::uint64_t budget = default_enumeration_budget, unsigned workers = 1) {
    block_position_count_result res;
    res.n = n; res.j = j; res.k = k; res.l = l; res.r = r;
    res.route = route;
    detail::check_block_indices(table.spec(), n, j, l, r);
    res.interior = detail::block_interior(n, j, l, r);
    res.count = route == count_route::formula
                    ? block_position_count_formula(table, h, n, j, k, l, r)
                    : block_position_count_enumerate(table, n, j, k, l, r,
                                                     budget, workers);
    return res;
}

// ---- coefficient distribution ----

struct coefficient_distribution {
    std::size_t n = 0;
    digit_t max_digit = 0;                 // max c_i; digits above it have p = 0
    std::vector<std::vector<mpq_class>> p; // p[j-1][k], exact
    std::vector<double> marginal;          // j-free main term per k
};

namespace detail {

// G_{n+1} for a table holding at least G_1..G_n.
inline mpz_class g_past_end(const sequence_table& table, std::size_t n) {
    if (n + 1 <= table.size()) return table.g(n + 1);
    if (n == table.size()) return next_term(table);
    throw index_out_of_range("table too short for string length n");
}

// Strings whose position j is pinned to digit k by an unclosed final prefix
// of length t (digits c_1..c_t, super-legal part in front):
//   sum over t in [max(1, n-j+1), min(L-1, n)] of [c_{j-n+t} = k] * H_{n-t}
inline mpz_class boundary_mass(const recurrence_spec& spec,
                               const super_legal_table& h, std::size_t n,
                               std::size_t j, digit_t k) {
    mpz_class acc = 0;
    const std::size_t L = spec.order();
    if (L < 2 || n == 0) return acc;
    const std::size_t t_lo = j >= n ? 1 : n - j + 1;
    const std::size_t t_hi = std::min(L - 1, n);
    for (std::size_t t = t_lo; t <= t_hi; ++t)
        if (spec.c(j + t - n) == k) acc += h.h(n - t);
    return acc;
}

// j-free main term of p_k: B * sum_l lambda^{-l) weights, with
// B = lim H_n / lambda^n fitted from the tail of the H table.
inline std::vector<double> marginal_main_term(const recurrence_spec& spec,
                                              const super_legal_table& h,
                                              digit_t max_digit) {
    const double lambda = dominant_root(spec);
    const double loglam = std::log(lambda);
    const std::size_t tail = std::min<std::size_t>(11, h.size());
    double acc = 0;
    for (std::size_t i = h.size() - tail + 1; i <= h.size(); ++i)
        acc += log_mpz(h.h(i)) - static_cast<double>(i) * loglam;
    const double b_const = tail ? std::exp(acc / static_cast<double>(tail)) : 1.0;
    std::vector<double> out(static_cast<std::size_t>(max_digit) + 1, 0.0);
    for (digit_t k = 0; k <= max_digit; ++k) {
        double sum = 0;
        for (std::size_t l = 1; l <= spec.order(); ++l) {
            std::size_t closers = 0;
            for (std::size_t r = 1; r < l; ++r)
                if (spec.c(r) == k) ++closers;
            double w = static_cast<double>(spec.c(l)) *
                       static_cast<double>(closers);
            if (k < spec.c(l)) w += 1.0;
            sum += w * std::exp(-static_cast<double>(l) * loglam);
        }
        out[static_cast<std::size_t>(k)] = b_const * sum;
    }
    return out;
}

} // namespace detail

// Exact p_{j,k}(n) for all j, k from the closed-form block counts plus the
// final-prefix boundary mass; denominator G_{n+1}. Scales to n in the
// thousands since only G/H table lookups are involved.
inline coefficient_distribution coefficient_distribution_formula(
    const sequence_table& table, const super_legal_table& h, std::size_t n) {
    const recurrence_spec& spec = table.spec();
    const mpz_class denom = detail::g_past_end(table, n);
    coefficient_distribution dist;
    dist.n = n;
    dist.max_digit = spec.max_coeff();
    dist.p.assign(n, std::vector<mpq_class>(
                         static_cast<std::size_t>(dist.max_digit) + 1, 0));
    const std::size_t L = spec.order();
    for (std::size_t j = 1; j <= n; ++j) {
        for (digit_t k = 0; k <= dist.max_digit; ++k) {
            mpz_class numer = detail::boundary_mass(spec, h, n, j, k);
            for (std::size_t l = 1; l <= L; ++l)
                for (std::size_t r = 1; r <= l; ++r) {
                    if (!detail::block_interior(n, j, l, r)) continue;
                    numer += block_position_count_formula(table, h, n, j, k, l, r);
                }
            mpq_class q(numer, denom);
            q.canonicalize();
            dist.p[j - 1][static_cast<std::size_t>(k)] = std::move(q);
        }
    }
    dist.marginal = detail::marginal_main_term(spec, h, dist.max_digit);
    return dist;
}

// Same distribution by brute-force enumeration; denominator is the number of
// length-n legal strings (equal to G_{n+1} over canonical initial terms).
inline coefficient_distribution coefficient_distribution_enumerate(
    const sequence_table& table, std::size_t n,
    std::uint64_t budget = default_enumeration_budget, unsigned workers = 1) {
    const recurrence_spec& spec = table.spec();
    coefficient_distribution dist;
    dist.n = n;
    dist.max_digit = spec.max_coeff();
    const std::size_t width = static_cast<std::size_t>(dist.max_digit) + 1;

    using counts = std::vector<mpz_class>; // flat [j-1]*width + k
    counts totals = enumerate_legal_reduce(
        table, n, workers, counts(n * width, 0),
        [width](counts& acc, const std::vector<digit_t>& digits,
                const mpz_class&) {
            for (std::size_t j = 1; j <= digits.size(); ++j)
                ++acc[(j - 1) * width + static_cast<std::size_t>(digits[j - 1])];
        },
        [](counts& into, counts&& from) {
            for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
        },
        budget);

    const mpz_class denom = legal_string_count(spec, n);
    dist.p.assign(n, std::vector<mpq_class>(width, 0));
    for (std::size_t j = 1; j <= n; ++j)
        for (std::size_t k = 0; k < width; ++k) {
            mpq_class q(totals[(j - 1) * width + k], denom);
            q.canonicalize();
            dist.p[j - 1][k] = std::move(q);
        }
    const super_legal_table h =
        count_super_legal(spec, std::min<std::size_t>(n, 40),
                          count_method::recurrence, budget);
    dist.marginal = detail::marginal_main_term(spec, h, dist.max_digit);
    return dist;
}

// ---- conditional distribution ----

struct conditional_result {
    mpq_class conditional;   // P(a_j = d | a_i = k)
    mpq_class unconditional; // P(a_j = d)
    double diagnostic_ratio = 0; // conditional / unconditional
};

inline conditional_result conditional_distribution(
    const sequence_table& table, std::size_t n, std::size_t i, digit_t k,
    std::size_t j, digit_t d, std::uint64_t budget = default_enumeration_budget,
    unsigned workers = 1) {
    const std::size_t L = table.spec().order();
    if (i < 1 || j > n || i + L >= j)
        throw index_out_of_range("need i + L < j <= n for a separated pair");
    struct acc_t {
        mpz_class with_i, with_both, with_j;
    };
    acc_t acc = enumerate_legal_reduce(
        table, n, workers, acc_t{},
        [&, i, j, k, d](acc_t& a, const std::vector<digit_t>& digits,
                        const mpz_class&) {
            const bool hi = digits[i - 1] == k;
            const bool hj = digits[j - 1] == d;
            if (hi) ++a.with_i;
            if (hj) ++a.with_j;
            if (hi && hj) ++a.with_both;
        },
        [](acc_t& into, acc_t&& from) {
            into.with_i += from.with_i;
            into.with_both += from.with_both;
            into.with_j += from.with_j;
        },
        budget);
    if (acc.with_i == 0)
        throw empty_condition("no string has digit " + std::to_string(k) +
                              " at position " + std::to_string(i));
    conditional_result res;
    res.conditional = mpq_class(acc.with_both, acc.with_i);
    res.conditional.canonicalize();
    res.unconditional = mpq_class(acc.with_j, legal_string_count(table.spec(), n));
    res.unconditional.canonicalize();
    res.diagnostic_ratio = res.unconditional > 0
                               ? res.conditional.get_d() / res.unconditional.get_d()
                               : 0.0;
    return res;
}

// ---- bijection oracle ----

struct oracle_report {
    std::size_t n = 0;
    mpz_class expected;     // G_{n+1} from the table
    mpz_class string_count; // fixed-length-n legal strings
    bool bijective = false;
    bool decompose_agrees = false; // over every value hit exactly once
    std::uint64_t missing_count = 0, duplicate_count = 0, out_of_range_count = 0;
    std::vector<mpz_class> missing;    // capped samples
    std::vector<mpz_class> duplicated; // capped samples
};

// Certifies (or refutes) that length-n legal strings map bijectively onto
// [0, G_{n+1}) and that decompose() reproduces the enumerated string on
// every uniquely-hit value.
inline oracle_report bijection_audit(const sequence_table& table, std::size_t n,
                                     std::uint64_t budget = default_enumeration_budget,
                                     std::size_t example_cap = 16) {
    oracle_report rep;
    rep.n = n;
    rep.expected = detail::g_past_end(table, n);
    rep.string_count = legal_string_count(table.spec(), n);
    if (mpz_cmp_ui(rep.expected.get_mpz_t(), budget) > 0)
        throw budget_exceeded("value range " + rep.expected.get_str() +
                              " exceeds budget " + std::to_string(budget));
    detail::check_budget(table.spec(), n, budget);

    const std::size_t range = static_cast<std::size_t>(rep.expected.get_ui());
    std::vector<std::uint8_t> seen(range, 0);
    enumerate_legal(
        table, n,
        [&](const std::vector<digit_t>&, const mpz_class& v) {
            if (v >= rep.expected) {
                ++rep.out_of_range_count;
                return;
            }
            std::uint8_t& s = seen[static_cast<std::size_t>(v.get_ui())];
            if (s < 255) ++s;
        },
        budget);

    for (std::size_t v = 0; v < range; ++v) {
        if (seen[v] == 0) {
            ++rep.missing_count;
            if (rep.missing.size() < example_cap) rep.missing.emplace_back(v);
        } else if (seen[v] > 1) {
            ++rep.duplicate_count;
            if (rep.duplicated.size() < example_cap)
                rep.duplicated.emplace_back(v);
        }
    }
    rep.bijective = rep.missing_count == 0 && rep.duplicate_count == 0 &&
                    rep.out_of_range_count == 0 &&
                    rep.string_count == rep.expected;

    bool agrees = true;
    enumerate_legal(
        table, n,
        [&](const std::vector<digit_t>& digits, const mpz_class& v) {
            if (!agrees) return;
            if (v >= rep.expected ||
                seen[static_cast<std::size_t>(v.get_ui())] != 1)
                return;
            std::vector<digit_t> stripped;
            std::size_t lead = 0;
            while (lead < digits.size() && digits[lead] == 0) ++lead;
            stripped.assign(digits.begin() + static_cast<std::ptrdiff_t>(lead),
                            digits.end());
            try {
                agrees = decompose(v, table).coeffs == stripped;
            } catch (const error&) {
                agrees = false;
            }
        },
        budget);
    rep.decompose_agrees = agrees;
    return rep;
}

} // namespace zeck
