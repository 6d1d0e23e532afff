#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace zeck {

using digit_t = std::uint64_t;

// Coefficients c_1..c_L of G_{n+1} = c_1 G_n + ... + c_L G_{n+1-L}.
// Validity: L >= 1, every c_i >= 0, c_1 >= 1 and c_L >= 1.
class recurrence_spec {
public:
    explicit recurrence_spec(std::vector<digit_t> coeffs)
        : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty())
            throw invalid_spec("coefficient list is empty");
        if (coeffs_.front() == 0)
            throw invalid_spec("first coefficient must be positive");
        if (coeffs_.back() == 0)
            throw invalid_spec("last coefficient must be positive");
    }

    const std::vector<digit_t>& coeffs() const noexcept { return coeffs_; }
    std::size_t order() const noexcept { return coeffs_.size(); }

    // c(i) is 1-based to match the usual subscript convention.
    digit_t c(std::size_t i) const { return coeffs_.at(i - 1); }

    digit_t max_coeff() const {
        digit_t m = 0;
        for (digit_t v : coeffs_) m = v > m ? v : m;
        return m;
    }

    bool operator==(const recurrence_spec& o) const { return coeffs_ == o.coeffs_; }

private:
    std::vector<digit_t> coeffs_;
};

// Initial terms making the digit grammar complete: G_1 = 1 and
// G_{n+1} = c_1 G_n + ... + c_n G_1 + 1 for n < L.
inline std::vector<mpz_class> canonical_initial_terms(const recurrence_spec& spec) {
    std::vector<mpz_class> g;
    g.reserve(spec.order());
    g.emplace_back(1);
    for (std::size_t n = 1; n < spec.order(); ++n) {
        mpz_class next = 1;
        for (std::size_t i = 1; i <= n; ++i)
            next += mpz_class(spec.c(i)) * g[n - i];
        g.push_back(next);
    }
    return g;
}

// Immutable table of G_1..G_N. Safe for concurrent reads.
class sequence_table {
public:
    sequence_table(recurrence_spec spec, std::vector<mpz_class> terms,
                   bool canonical)
        : spec_(std::move(spec)), terms_(std::move(terms)), canonical_(canonical) {}

    const recurrence_spec& spec() const noexcept { return spec_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool canonical_initial() const noexcept { return canonical_; }

    // g(i) = G_i, 1-based.
    const mpz_class& g(std::size_t i) const {
        if (i < 1 || i > terms_.size())
            throw index_out_of_range("sequence index " + std::to_string(i) +
                                     " outside table of size " +
                                     std::to_string(terms_.size()));
        return terms_[i - 1];
    }

    const std::vector<mpz_class>& terms() const noexcept { return terms_; }

private:
    recurrence_spec spec_;
    std::vector<mpz_class> terms_;
    bool canonical_;
};

inline sequence_table generate_sequence(const recurrence_spec& spec,
                                        std::vector<mpz_class> initial,
                                        std::size_t count) {
    if (count == 0)
        throw invalid_spec("term count must be positive");
    const std::size_t L = spec.order();
    if (initial.size() > count) initial.resize(count);
    std::vector<mpz_class> g = std::move(initial);
    if (g.size() < std::min(L, count))
        throw invalid_spec("need at least min(L, count) initial terms");
    for (const mpz_class& v : g)
        if (v <= 0) throw invalid_spec("initial terms must be positive");
    g.reserve(count);
    while (g.size() < count) {
        const std::size_t n = g.size();
        mpz_class next = 0;
        for (std::size_t i = 1; i <= L; ++i)
            mpz_addmul_ui(next.get_mpz_t(), g[n - i].get_mpz_t(),
                          static_cast<unsigned long>(spec.c(i)));
        g.push_back(next);
    }
    bool canonical = true;
    const std::vector<mpz_class> want = canonical_initial_terms(spec);
    for (std::size_t i = 0; i < std::min(want.size(), g.size()); ++i)
        if (g[i] != want[i]) { canonical = false; break; }
    return sequence_table(spec, std::move(g), canonical);
}

inline sequence_table generate_sequence(const recurrence_spec& spec,
                                        std::size_t count) {
    return generate_sequence(spec, canonical_initial_terms(spec), count);
}

// Characteristic polynomial in standard monic form,
// f(x) = x^L - c_1 x^{L-1} - ... - c_L.
inline double characteristic_value(const recurrence_spec& spec, double x) {
    double acc = 1.0;
    for (std::size_t i = 1; i <= spec.order(); ++i)
        acc = acc * x - static_cast<double>(spec.c(i));
    return acc;
}

// Unique root in (1, 1 + sum c_i]: f(1) <= 0 and f strictly increasing past
// the root, so bisection cannot fail; a few Newton steps sharpen the result.
// When sum c_i = 1 the spec is (1) and the root is exactly 1.
inline double dominant_root(const recurrence_spec& spec, double tolerance = 1e-12) {
    if (tolerance <= 0)
        throw invalid_spec("tolerance must be positive");
    double csum = 0;
    for (digit_t v : spec.coeffs()) csum += static_cast<double>(v);
    if (csum == 1.0) return 1.0;
    double lo = 1.0, hi = 1.0 + csum;
    for (int it = 0; it < 200 && (hi - lo) > tolerance; ++it) {
        const double mid = lo + (hi - lo) / 2;
        if (characteristic_value(spec, mid) > 0) hi = mid;
        else lo = mid;
    }
    double x = lo + (hi - lo) / 2;
    const std::size_t L = spec.order();
    for (int it = 0; it < 4; ++it) {
        const double f = characteristic_value(spec, x);
        // Horner pass for f'(x) = L x^{L-1} - sum c_i (L-i) x^{L-i-1}
        double d = static_cast<double>(L);
        for (std::size_t i = 1; i < L; ++i)
            d = d * x - static_cast<double>(L - i) * static_cast<double>(spec.c(i));
        if (d == 0) break;
        const double step = f / d;
        const double nx = x - step;
        if (nx <= lo || nx >= hi) break;
        x = nx;
        if (std::fabs(step) < tolerance * 1e-3) break;
    }
    return x;
}

// log(G) for big-integer G, exact mantissa/exponent split.
inline double log_mpz(const mpz_class& v) {
    signed long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

struct binet_fit {
    double lambda1 = 0;
    double a_const = 0;                   // G_n ~ a_const * lambda1^n
    std::vector<double> residual_profile; // G_n / lambda1^n - a_const, per n
    std::size_t ratio_burn_in = 0;        // past this n, |G_{n+1}/G_n - lambda1| stops growing
};

// Tail fit of the leading Binet coefficient: geometric average of
// G_n / lambda1^n over the last 11 indices. Subdominant terms decay
// geometrically, so the tail window dominates any least-squares fit
// while staying deterministic.
inline binet_fit fit_binet_constant(const sequence_table& table, double lambda1) {
    const std::size_t N = table.size();
    const std::size_t L = table.spec().order();
    if (N < 2 * L + 10)
        throw table_too_short("binet fit needs at least 2L + 10 terms, have " +
                              std::to_string(N));
    const double loglam = std::log(lambda1);
    binet_fit fit;
    fit.lambda1 = lambda1;
    double acc = 0;
    const std::size_t win_lo = N - 10;
    for (std::size_t n = win_lo; n <= N; ++n)
        acc += log_mpz(table.g(n)) - static_cast<double>(n) * loglam;
    fit.a_const = std::exp(acc / static_cast<double>(N - win_lo + 1));

    fit.residual_profile.reserve(N);
    for (std::size_t n = 1; n <= N; ++n) {
        const double scaled =
            std::exp(log_mpz(table.g(n)) - static_cast<double>(n) * loglam);
        fit.residual_profile.push_back(scaled - fit.a_const);
    }

    // Burn-in for the ratio diagnostic: smallest index past which the gap
    // |G_{n+1}/G_n - lambda1| never grows by more than double noise.
    std::vector<double> gap;
    gap.reserve(N - 1);
    for (std::size_t n = 1; n + 1 <= N; ++n) {
        const mpq_class ratio(table.g(n + 1), table.g(n));
        gap.push_back(std::fabs(ratio.get_d() - lambda1));
    }
    std::size_t burn = gap.size();
    for (std::size_t b = 0; b < gap.size(); ++b) {
        bool ok = true;
        for (std::size_t i = b; i + 1 < gap.size(); ++i) {
            if (gap[i + 1] > gap[i] + 1e-15) { ok = false; break; }
        }
        if (ok) { burn = b; break; }
    }
    fit.ratio_burn_in = burn + 1; // report as a 1-based sequence index
    return fit;
}

} // namespace zeck
