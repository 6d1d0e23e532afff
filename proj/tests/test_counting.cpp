#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include <zeck/zeck.hpp>

using namespace zeck;
using Catch::Approx;

TEST_CASE("fixed-length legal strings number G_{n+1} over canonical seeds") {
    for (const recurrence_spec& spec :
         {recurrence_spec({1, 1}), recurrence_spec({1, 2, 3}),
          recurrence_spec({2, 1}), recurrence_spec({1, 0, 2})}) {
        const sequence_table t = generate_sequence(spec, 16);
        for (std::size_t n = 1; n <= 15; ++n)
            REQUIRE(legal_string_count(spec, n) == t.g(n + 1));
    }
}

TEST_CASE("enumeration visits each legal string exactly once") {
    const recurrence_spec spec({1, 2, 3});
    const sequence_table t = generate_sequence(spec, 8);
    std::set<std::vector<digit_t>> seen;
    std::set<mpz_class> values;
    enumerate_legal(t, 7, [&](const std::vector<digit_t>& digits,
                              const mpz_class& value) {
        REQUIRE(is_legal(digits, spec));
        REQUIRE(reconstruct(digits, t) == value);
        REQUIRE(seen.insert(digits).second);
        values.insert(value);
    });
    CHECK(mpz_class(seen.size()) == legal_string_count(spec, 7));
    // canonical seeds: the value map hits every integer below G_8 exactly once
    CHECK(values.size() == seen.size());
    CHECK(*values.begin() == 0);
    CHECK(*values.rbegin() == t.g(8) - 1);

    CHECK_THROWS_AS(
        enumerate_legal(t, 7, [](const std::vector<digit_t>&,
                                 const mpz_class&) {},
                        10),
        budget_exceeded);
}

TEST_CASE("parallel enumeration reduces independently of worker count") {
    const recurrence_spec spec({2, 1});
    const sequence_table t = generate_sequence(spec, 10);
    auto total = [&](unsigned workers) {
        return enumerate_legal_reduce(
            t, 9, workers, mpz_class(0),
            [](mpz_class& acc, const std::vector<digit_t>&,
               const mpz_class& value) { acc += value * value; },
            [](mpz_class& into, mpz_class&& from) { into += from; });
    };
    const mpz_class one = total(1);
    CHECK(one == total(2));
    CHECK(one == total(8));
}

TEST_CASE("super-legal counts: enumeration equals the length recurrence") {
    for (const recurrence_spec& spec :
         {recurrence_spec({1, 1}), recurrence_spec({1, 2, 3}),
          recurrence_spec({2, 1}), recurrence_spec({1, 0, 2})}) {
        const super_legal_table brute =
            count_super_legal(spec, 15, count_method::enumeration);
        const super_legal_table rec =
            count_super_legal(spec, 15, count_method::recurrence);
        for (std::size_t n = 1; n <= 15; ++n)
            REQUIRE(brute.h(n) == rec.h(n));
        REQUIRE(brute.h(0) == 1);
        REQUIRE(brute.includes_zero);
    }
    // Fibonacci: H_n is the Fibonacci number G_n itself
    const sequence_table fib = generate_sequence(recurrence_spec({1, 1}), 15);
    const super_legal_table h = count_super_legal(recurrence_spec({1, 1}), 15);
    for (std::size_t n = 1; n <= 15; ++n) REQUIRE(h.h(n) == fib.g(n));
    // frozen small-case values for the other seeds
    const super_legal_table h123 = count_super_legal(recurrence_spec({1, 2, 3}), 6);
    CHECK(h123.h(1) == 1);
    CHECK(h123.h(2) == 3);
    CHECK(h123.h(3) == 8);
    CHECK(h123.h(5) == 42);
    const super_legal_table h102 = count_super_legal(recurrence_spec({1, 0, 2}), 8);
    const std::vector<int> want102{1, 1, 3, 5, 7, 13, 23, 37};
    for (std::size_t n = 1; n <= 8; ++n) CHECK(h102.h(n) == want102[n - 1]);

    CHECK_THROWS_AS(h123.h(7), missing_h_values);
}

TEST_CASE("H over G ratios") {
    const recurrence_spec fib({1, 1});
    const sequence_table tf = generate_sequence(fib, 40);
    const ratio_report rf = hn_gn_ratio(tf, count_super_legal(fib, 40), 40);
    for (const mpq_class& q : rf.ratios) REQUIRE(q == 1);
    CHECK(rf.limit_estimate == 1.0);

    const recurrence_spec s123({1, 2, 3});
    const sequence_table t = generate_sequence(s123, 60);
    const ratio_report r = hn_gn_ratio(t, count_super_legal(s123, 60), 60);
    CHECK(r.limit_estimate == Approx(1.4853830823).margin(1e-6));
    // successive differences settle below 1e-8 by the table horizon
    const double d_last = std::fabs(r.ratios[59].get_d() - r.ratios[58].get_d());
    CHECK(d_last < 1e-8);
}

TEST_CASE("position roles") {
    const recurrence_spec fib({1, 1});
    std::vector<position_role> roles =
        classify_roles(std::vector<digit_t>{1, 0, 1, 0}, fib);
    REQUIRE(roles.size() == 4);
    CHECK(roles[0].length == 2);
    CHECK(roles[0].offset == 1);
    CHECK(roles[1].length == 2);
    CHECK(roles[1].offset == 2);
    CHECK(roles[2].length == 2);
    CHECK(roles[3].offset == 2);

    // bare zero written from the ground state is its own length-1 block;
    // the open final prefix carries no role
    roles = classify_roles(std::vector<digit_t>{0, 1, 0, 1}, fib);
    CHECK(roles[0].length == 1);
    CHECK(roles[0].offset == 1);
    CHECK(roles[1].length == 2);
    CHECK(roles[3].length == 0);

    CHECK_THROWS_AS(classify_roles(std::vector<digit_t>{1, 1}, fib), not_legal);
}

namespace {

// one full enumeration pass tallying every realized (j, k, l, r) cell
using cell_key = std::tuple<std::size_t, digit_t, std::size_t, std::size_t>;

std::map<cell_key, mpz_class> sweep_cells(const sequence_table& t,
                                          std::size_t n) {
    std::map<cell_key, mpz_class> counts;
    enumerate_legal(t, n, [&](const std::vector<digit_t>& digits,
                              const mpz_class&) {
        const std::vector<position_role> roles =
            classify_roles(digits, t.spec());
        for (std::size_t j = 1; j <= n; ++j) {
            if (roles[j - 1].length == 0) continue;
            ++counts[{j, digits[j - 1], roles[j - 1].length,
                      roles[j - 1].offset}];
        }
    });
    return counts;
}

} // namespace

TEST_CASE("block position counts: closed form equals enumeration") {
    const recurrence_spec fib({1, 1});
    const sequence_table t = generate_sequence(fib, 10);
    const super_legal_table h = count_super_legal(fib, 9);

    // worked case: strings of length 5 whose position 2 carries digit 1
    // inside a length-2 block starting there
    const block_position_count_result worked = block_position_count(
        t, h, 5, 2, 1, 2, 1, count_route::formula);
    CHECK(worked.count == 3);
    CHECK(block_position_count(t, h, 5, 2, 1, 2, 1,
                               count_route::enumeration)
              .count == 3);

    // every interior cell, both routes, exhaustively at small n
    for (const recurrence_spec& spec :
         {recurrence_spec({1, 1}), recurrence_spec({1, 2, 3})}) {
        const std::size_t max_n = spec.order() == 2 ? 9 : 7;
        const sequence_table tt = generate_sequence(spec, max_n + 1);
        const super_legal_table hh = count_super_legal(spec, max_n);
        for (std::size_t n = 1; n <= max_n; ++n) {
            const std::map<cell_key, mpz_class> enumerated =
                sweep_cells(tt, n);
            for (std::size_t j = 1; j <= n; ++j)
                for (digit_t k = 0; k <= spec.max_coeff(); ++k)
                    for (std::size_t l = 1; l <= spec.order(); ++l)
                        for (std::size_t r = 1; r <= l; ++r) {
                            if (!detail::block_interior(n, j, l, r)) continue;
                            const mpz_class formula =
                                block_position_count_formula(tt, hh, n, j, k,
                                                             l, r);
                            const auto it =
                                enumerated.find({j, k, l, r});
                            const mpz_class brute =
                                it == enumerated.end() ? 0 : it->second;
                            INFO("n=" << n << " j=" << j << " k=" << k
                                      << " l=" << l << " r=" << r);
                            REQUIRE(formula == brute);
                        }
        }
    }
}

TEST_CASE("non-interior cells are boundary regime for the formula") {
    const recurrence_spec fib({1, 1});
    const sequence_table t = generate_sequence(fib, 8);
    const super_legal_table h = count_super_legal(fib, 7);
    // j < r: the block would start before the string does
    CHECK_THROWS_AS(block_position_count_formula(t, h, 5, 1, 1, 2, 2),
                    boundary_regime);
    // block sticking out past the end: n + r < j + l
    CHECK_THROWS_AS(block_position_count_formula(t, h, 5, 5, 1, 2, 1),
                    boundary_regime);
    // the enumeration route counts such cells as zero
    CHECK(block_position_count(t, h, 5, 5, 1, 2, 1,
                               count_route::enumeration)
              .count == 0);
}

TEST_CASE("digit distribution: partition, flatness, frozen values") {
    const recurrence_spec fib({1, 1});
    const sequence_table t = generate_sequence(fib, 201);
    const super_legal_table h = count_super_legal(fib, 200);

    const coefficient_distribution dist =
        coefficient_distribution_formula(t, h, 200);
    for (std::size_t j = 1; j <= 200; ++j) {
        mpq_class sum(0);
        for (digit_t k = 0; k <= dist.max_digit; ++k)
            sum += dist.p[j - 1][k];
        REQUIRE(sum == 1);
    }
    // interior flatness of p_{j,1}: spread below 1% relative
    mpq_class lo(1), hi(0);
    for (std::size_t j = 7; j <= 193; ++j) {
        const mpq_class& q = dist.p[j - 1][1];
        if (q < lo) lo = q;
        if (q > hi) hi = q;
    }
    const mpq_class spread_q(hi / lo);
    CHECK(spread_q.get_d() - 1.0 < 0.01);
    CHECK(spread_q.get_d() - 1.0 == Approx(1.64e-3).margin(2e-4));

    // frozen single cell at n = 20
    const sequence_table t20 = generate_sequence(fib, 21);
    const coefficient_distribution d20 =
        coefficient_distribution_formula(t20, count_super_legal(fib, 20), 20);
    CHECK(d20.p[9][1] == mpq_class(55, 199));

    // the j-free main term lands on the known Fibonacci digit densities
    REQUIRE(dist.marginal.size() == 2);
    CHECK(dist.marginal[1] == Approx(0.2763932).margin(1e-4));
    CHECK(dist.marginal[0] + dist.marginal[1] == Approx(1.0).margin(1e-4));
}

TEST_CASE("digit distribution: formula equals enumeration exactly") {
    for (const recurrence_spec& spec :
         {recurrence_spec({1, 1}), recurrence_spec({1, 2, 3})}) {
        const std::size_t n = spec.order() == 2 ? 12 : 9;
        const sequence_table t = generate_sequence(spec, n + 1);
        const super_legal_table h = count_super_legal(spec, n);
        const coefficient_distribution f =
            coefficient_distribution_formula(t, h, n);
        const coefficient_distribution e =
            coefficient_distribution_enumerate(t, n);
        REQUIRE(f.n == e.n);
        REQUIRE(f.max_digit == e.max_digit);
        for (std::size_t j = 1; j <= n; ++j)
            for (digit_t k = 0; k <= f.max_digit; ++k) {
                INFO("j=" << j << " k=" << k);
                REQUIRE(f.p[j - 1][k] == e.p[j - 1][k]);
            }
    }
}

TEST_CASE("expected summand count from the distribution: frozen ladder") {
    const recurrence_spec fib({1, 1});
    const sequence_table t = generate_sequence(fib, 17);
    const super_legal_table h = count_super_legal(fib, 16);
    const coefficient_distribution dist =
        coefficient_distribution_formula(t, h, 16);
    mpq_class ex(0);
    for (std::size_t j = 1; j <= 16; ++j)
        for (digit_t k = 1; k <= dist.max_digit; ++k)
            ex += mpq_class(k) * dist.p[j - 1][k];
    // regression pins: the literal mean and per-position ratio at n = 16
    CHECK(ex == mpq_class(5911, 1292));
    CHECK(ex / 16 == mpq_class(5911, 20672));
}

TEST_CASE("digits far apart are nearly independent") {
    const recurrence_spec fib({1, 1});
    const sequence_table t = generate_sequence(fib, 17);
    const conditional_result c = conditional_distribution(t, 16, 2, 1, 10, 1);
    CHECK(c.unconditional > 0);
    CHECK(c.diagnostic_ratio == Approx(1.0).margin(0.05));

    CHECK_THROWS_AS(conditional_distribution(t, 16, 2, 1, 3, 1),
                    index_out_of_range);
    // a digit value the grammar never realizes conditions on nothing
    CHECK_THROWS_AS(conditional_distribution(t, 16, 2, 2, 10, 1),
                    empty_condition);
}

TEST_CASE("bijection audit") {
    const sequence_table fib = generate_sequence(recurrence_spec({1, 1}), 13);
    const oracle_report ok = bijection_audit(fib, 12);
    CHECK(ok.expected == 377);
    CHECK(ok.string_count == 377);
    CHECK(ok.bijective);
    CHECK(ok.decompose_agrees);
    CHECK(ok.missing_count == 0);
    CHECK(ok.duplicate_count == 0);
    CHECK(ok.out_of_range_count == 0);

    // the worked non-canonical seed misses small values
    const sequence_table ex = generate_sequence(
        recurrence_spec({1, 2, 3}), {mpz_class(1), mpz_class(3), mpz_class(8)},
        3);
    const oracle_report bad = bijection_audit(ex, 2);
    CHECK(bad.expected == 8);
    CHECK(bad.string_count == 5);
    CHECK_FALSE(bad.bijective);
    CHECK(bad.missing_count == 3);
    REQUIRE(bad.missing.size() == 3);
    CHECK(bad.missing[0] == 2);
    CHECK(bad.missing[1] == 6);
    CHECK(bad.missing[2] == 7);

    CHECK_THROWS_AS(bijection_audit(fib, 12, 100), budget_exceeded);
}
