/*
Copyright 2026 The tracesumm Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "tracesumm/summarization.hpp"
#include "tracesumm/trace_model.hpp"

namespace tracesumm {

/// Unit-cost Levenshtein distance (insert, delete, substitute), two-row
/// Wagner-Fischer over the shorter input.
inline std::size_t edit_distance(std::span<const Symbol> a, std::span<const Symbol> b) {
    if (a.size() < b.size()) {
        std::swap(a, b);
    }
    const std::size_t n = b.size();
    if (n == 0) {
        return a.size();
    }
    thread_local std::vector<std::uint32_t> row;
    row.resize(n + 1);
    std::iota(row.begin(), row.end(), std::uint32_t{0});
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::uint32_t diagonal = row[0];
        row[0] = static_cast<std::uint32_t>(i);
        const Symbol ai = a[i - 1];
        for (std::size_t j = 1; j <= n; ++j) {
            const std::uint32_t above = row[j];
            const std::uint32_t substitute = diagonal + (ai == b[j - 1] ? 0u : 1u);
            row[j] = std::min({above + 1u, row[j - 1] + 1u, substitute});
            diagonal = above;
        }
    }
    return row[n];
}

/// Exact distance when it is at most chi, nullopt otherwise. Only the
/// diagonal band |i - j| <= chi is filled, and the scan stops as soon as a
/// whole band row exceeds chi.
inline std::optional<std::size_t> edit_distance_bounded(std::span<const Symbol> a, std::span<const Symbol> b,
                                                        std::size_t chi) {
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    const std::size_t gap = m > n ? m - n : n - m;
    if (gap > chi) {
        return std::nullopt;
    }
    if (chi >= std::max(m, n)) {
        return edit_distance(a, b);
    }
    constexpr std::uint32_t kFar = std::numeric_limits<std::uint32_t>::max() / 2;
    thread_local std::vector<std::uint32_t> prev;
    thread_local std::vector<std::uint32_t> cur;
    prev.assign(n + 2, kFar);
    cur.assign(n + 2, kFar);
    for (std::size_t j = 0; j <= std::min(n, chi); ++j) {
        prev[j] = static_cast<std::uint32_t>(j);
    }

    for (std::size_t i = 1; i <= m; ++i) {
        const std::size_t lo = i > chi ? i - chi : 1;
        const std::size_t hi = std::min(n, i + chi);
        cur[lo - 1] = lo == 1 ? static_cast<std::uint32_t>(i) : kFar;
        std::uint32_t row_min = cur[lo - 1];
        const Symbol ai = a[i - 1];
        for (std::size_t j = lo; j <= hi; ++j) {
            const std::uint32_t substitute = prev[j - 1] + (ai == b[j - 1] ? 0u : 1u);
            const std::uint32_t value = std::min({prev[j] + 1u, cur[j - 1] + 1u, substitute});
            cur[j] = std::min(value, kFar);
            row_min = std::min(row_min, cur[j]);
        }
        if (hi + 1 <= n) {
            cur[hi + 1] = kFar;
        }
        if (row_min > chi) {
            return std::nullopt;
        }
        std::swap(prev, cur);
    }
    if (prev[n] > chi) {
        return std::nullopt;
    }
    return prev[n];
}

/// Length-only bounds: gamma = ||a|-|b|| <= ed(a, b) <= lambda_bound = max(|a|,|b|).
struct DistanceBounds {
    std::size_t gamma = 0;
    std::size_t lambda_bound = 0;

    bool operator==(const DistanceBounds&) const = default;
};

inline DistanceBounds bounds(std::size_t len_a, std::size_t len_b) {
    return {len_a > len_b ? len_a - len_b : len_b - len_a, std::max(len_a, len_b)};
}

inline DistanceBounds bounds(std::span<const Symbol> a, std::span<const Symbol> b) {
    return bounds(a.size(), b.size());
}

enum class ContractiveRule { Holds, ViolatesByRule, Undetermined };
enum class ExactCheck { Confirmed, Violated };

struct ContractiveVerdict {
    ContractiveRule verdict = ContractiveRule::Undetermined;
    std::optional<ExactCheck> exact_check;
};

namespace detail {
inline std::atomic<std::uint64_t>& rule2_counter() {
    static std::atomic<std::uint64_t> counter{0};
    return counter;
}
} // namespace detail

/// How many times the length rule "summary gap exceeds original max length"
/// has fired in this process. For reduced summaries it cannot fire, so a
/// non-zero value points at inconsistent inputs.
inline std::uint64_t violates_by_rule_count() { return detail::rule2_counter().load(); }

/// Length-only contractiveness test on a pair and its summaries; never runs a
/// DP. Holds when the original gap already covers the summary upper bound,
/// ViolatesByRule when the summary gap exceeds the original upper bound.
inline ContractiveVerdict classify_contractive(std::size_t len_p, std::size_t len_q, std::size_t len_sp,
                                               std::size_t len_sq) {
    const auto original = bounds(len_p, len_q);
    const auto summary = bounds(len_sp, len_sq);
    if (original.gamma >= summary.lambda_bound) {
        return {ContractiveRule::Holds, std::nullopt};
    }
    if (summary.gamma > original.lambda_bound) {
        detail::rule2_counter().fetch_add(1, std::memory_order_relaxed);
        return {ContractiveRule::ViolatesByRule, std::nullopt};
    }
    return {ContractiveRule::Undetermined, std::nullopt};
}

inline ContractiveVerdict classify_contractive(std::span<const Symbol> p, std::span<const Symbol> q,
                                               const SummarySequence& sp, const SummarySequence& sq) {
    return classify_contractive(p.size(), q.size(), sp.size(), sq.size());
}

/// Computes both distances and reports whether ed(p, q) >= ed(sp, sq).
inline ExactCheck verify_contractive(std::span<const Symbol> p, std::span<const Symbol> q,
                                     std::span<const Symbol> sp, std::span<const Symbol> sq) {
    return edit_distance(p, q) >= edit_distance(sp, sq) ? ExactCheck::Confirmed : ExactCheck::Violated;
}

inline ExactCheck verify_contractive(std::span<const Symbol> p, std::span<const Symbol> q, const SummarySequence& sp,
                                     const SummarySequence& sq) {
    return verify_contractive(p, q, std::span<const Symbol>(sp.symbols), std::span<const Symbol>(sq.symbols));
}

/// classify_contractive followed by the exact check.
inline ContractiveVerdict classify_and_verify(std::span<const Symbol> p, std::span<const Symbol> q,
                                              const SummarySequence& sp, const SummarySequence& sq) {
    auto verdict = classify_contractive(p, q, sp, sq);
    verdict.exact_check = verify_contractive(p, q, sp, sq);
    return verdict;
}

} // namespace tracesumm
