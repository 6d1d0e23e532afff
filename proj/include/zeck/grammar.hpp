#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "recurrence.hpp"

namespace zeck {

// Digit-string grammar for legal decompositions, as an automaton.
//
// State q in [0, L) counts how many leading coefficients of (c_1..c_L) the
// current block has matched. From state q, digit a:
//   a <  c_{q+1}             -> state 0 (a closes the block as its last digit)
//   a == c_{q+1}, q+1 < L    -> state q+1 (block still open)
//   otherwise                -> dead (illegal string)
// A string is legal iff the automaton never dies; it is super-legal iff it
// also ends in state 0 (every block closed by a digit below its cap).
class grammar_automaton {
public:
    static constexpr int dead = -1;

    explicit grammar_automaton(const recurrence_spec& spec) : spec_(&spec) {}

    int step(int q, digit_t a) const {
        const digit_t cap = spec_->c(static_cast<std::size_t>(q) + 1);
        if (a < cap) return 0;
        if (a == cap && static_cast<std::size_t>(q) + 1 < spec_->order())
            return q + 1;
        return dead;
    }

    // Runs the automaton over the whole string; returns final state or dead.
    int run(const std::vector<digit_t>& digits) const {
        int q = 0;
        for (digit_t a : digits) {
            q = step(q, a);
            if (q == dead) return dead;
        }
        return q;
    }

    const recurrence_spec& spec() const noexcept { return *spec_; }

private:
    const recurrence_spec* spec_;
};

inline bool is_legal(const std::vector<digit_t>& digits, const recurrence_spec& spec) {
    return grammar_automaton(spec).run(digits) != grammar_automaton::dead;
}

inline bool is_super_legal(const std::vector<digit_t>& digits, const recurrence_spec& spec) {
    return grammar_automaton(spec).run(digits) == 0;
}

// ---- block segmentation ----

enum class block_closing { condition1, condition2 };

struct block {
    std::size_t start = 0; // 1-based index of the block's first digit
    std::vector<digit_t> digits;
    block_closing closing = block_closing::condition2;
    std::size_t trailing_zeros = 0; // padding zeros consumed after the block

    std::size_t length() const noexcept { return digits.size(); }
};

struct block_segmentation {
    std::size_t leading_zeros = 0; // zero run before the first block
    std::vector<block> blocks;
};

// Splits a legal string into its blocks. A block is (c_1,..,c_{s-1},a_s)
// with a_s < c_s, or the final proper prefix of (c_1..c_L) when the string
// ends mid-match. Zeros outside any block are attributed to the preceding
// block's trailing run (or to the leading run), never emitted as blocks;
// this makes the segmentation invertible and canonical.
inline block_segmentation segment_blocks(const std::vector<digit_t>& digits,
                                         const recurrence_spec& spec) {
    if (!is_legal(digits, spec))
        throw not_legal("segment_blocks requires a legal string");
    const grammar_automaton dfa(spec);
    block_segmentation seg;
    block cur;
    int q = 0;
    for (std::size_t t = 0; t < digits.size(); ++t) {
        const digit_t a = digits[t];
        if (q == 0) {
            if (a == 0) {
                if (seg.blocks.empty()) ++seg.leading_zeros;
                else ++seg.blocks.back().trailing_zeros;
                continue;
            }
            cur = block{};
            cur.start = t + 1;
        }
        cur.digits.push_back(a);
        q = dfa.step(q, a);
        if (q == 0) {
            cur.closing = block_closing::condition2;
            seg.blocks.push_back(std::move(cur));
        }
    }
    if (q > 0) {
        cur.closing = block_closing::condition1;
        seg.blocks.push_back(std::move(cur));
    }
    return seg;
}

// Inverse of segment_blocks.
inline std::vector<digit_t> flatten_blocks(const block_segmentation& seg) {
    std::vector<digit_t> out(seg.leading_zeros, 0);
    for (const block& b : seg.blocks) {
        out.insert(out.end(), b.digits.begin(), b.digits.end());
        out.insert(out.end(), b.trailing_zeros, 0);
    }
    return out;
}

// ---- decompositions ----

// Digit string a_1..a_n over G_n..G_1 with a_1 >= 1 (empty for value 0).
struct decomposition {
    std::vector<digit_t> coeffs;
    mpz_class value;
};

// Value of a digit string of length n against a table: sum a_i * G_{n+1-i}.
inline mpz_class reconstruct(const std::vector<digit_t>& coeffs,
                             const sequence_table& table) {
    const std::size_t n = coeffs.size();
    if (n > table.size())
        throw index_out_of_range("digit string longer than the sequence table");
    mpz_class acc = 0;
    for (std::size_t i = 1; i <= n; ++i)
        mpz_addmul_ui(acc.get_mpz_t(), table.g(n + 1 - i).get_mpz_t(),
                      static_cast<unsigned long>(coeffs[i - 1]));
    return acc;
}

inline mpz_class reconstruct(const decomposition& d, const sequence_table& table) {
    return reconstruct(d.coeffs, table);
}

inline std::uint64_t summand_count(const decomposition& d) {
    std::uint64_t s = 0;
    for (digit_t a : d.coeffs) s += a;
    return s;
}

// G_{N+1} for a table holding G_1..G_N, used as the exclusive decompose bound.
inline mpz_class next_term(const sequence_table& table) {
    const std::size_t N = table.size();
    const std::size_t L = table.spec().order();
    mpz_class next = 0;
    if (N >= L) {
        for (std::size_t i = 1; i <= L; ++i)
            mpz_addmul_ui(next.get_mpz_t(), table.g(N + 1 - i).get_mpz_t(),
                          static_cast<unsigned long>(table.spec().c(i)));
        return next;
    }
    if (!table.canonical_initial())
        throw table_too_short(
            "cannot extend a table shorter than L with non-canonical terms");
    next = 1;
    for (std::size_t i = 1; i <= N; ++i)
        next += mpz_class(table.spec().c(i)) * table.g(N + 1 - i);
    return next;
}

// Capped greedy decomposition. Scans from the largest usable G downward,
// tracking the grammar state; the digit at state q is capped at c_{q+1}
// (or c_L - 1 when the block must close), so the output is legal by
// construction. rem != 0 at the end means the value has no legal
// decomposition over this table (possible only for non-canonical initial
// terms) and is reported, never mis-decomposed.
inline decomposition decompose(const mpz_class& m, const sequence_table& table) {
    if (m < 0)
        throw out_of_range("cannot decompose a negative value");
    if (m >= next_term(table))
        throw out_of_range("value " + m.get_str() +
                           " not below G_{N+1} for the generated table");
    decomposition d;
    d.value = m;
    if (m == 0) return d;

    std::size_t n = table.size();
    while (n > 0 && table.g(n) > m) --n;
    // n >= 1 here: G_1 <= m would fail only for m = 0 when G_1 = 1, and a
    // non-canonical G_1 > m makes the value unrepresentable below.
    if (n == 0)
        throw unrepresentable("no table entry at or below " + m.get_str());

    const recurrence_spec& spec = table.spec();
    const grammar_automaton dfa(spec);
    const std::size_t L = spec.order();
    d.coeffs.reserve(n);
    mpz_class rem = m;
    mpz_class quot;
    int q = 0;
    for (std::size_t i = n; i >= 1; --i) {
        const digit_t cap = (static_cast<std::size_t>(q) + 1 < L)
                                ? spec.c(static_cast<std::size_t>(q) + 1)
                                : spec.c(L) - 1;
        digit_t a = 0;
        if (cap > 0 && rem >= table.g(i)) {
            mpz_fdiv_q(quot.get_mpz_t(), rem.get_mpz_t(),
                       table.g(i).get_mpz_t());
            a = cap;
            if (mpz_cmp_ui(quot.get_mpz_t(), static_cast<unsigned long>(cap)) <
                0)
                a = static_cast<digit_t>(mpz_get_ui(quot.get_mpz_t()));
            mpz_submul_ui(rem.get_mpz_t(), table.g(i).get_mpz_t(),
                          static_cast<unsigned long>(a));
        }
        d.coeffs.push_back(a);
        q = dfa.step(q, a);
    }
    if (rem != 0)
        throw unrepresentable("value " + m.get_str() +
                              " has no legal decomposition over this table");
    return d;
}

} // namespace zeck
