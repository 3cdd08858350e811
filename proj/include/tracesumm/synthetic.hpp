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
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "tracesumm/error.hpp"
#include "tracesumm/trace_model.hpp"

namespace tracesumm {

struct SyntheticSpec {
    std::size_t activities = 113;
    std::size_t traces = 2000;
    std::size_t variants = 20;
    double noise = 0.02;
    std::uint64_t seed = 1;
    /// 0 picks roughly eight activities per block.
    std::size_t blocks = 0;
    double block_inclusion = 0.6;
    double activity_inclusion = 0.5;
    /// Probability that a noise activity is drawn from the block of the event
    /// it disturbs rather than from all activities.
    double noise_locality = 0.5;
};

struct SyntheticLog {
    TraceSet log;
    /// Variant each trace was drawn from, in trace order.
    std::vector<std::size_t> variant_of;
    /// Noise-free activity codes of each variant.
    std::vector<std::vector<Symbol>> skeletons;
    /// Block of each activity code.
    std::vector<std::size_t> block_of;
};

namespace detail {
inline std::string numbered(const char* prefix, std::size_t i, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, i);
    return buf;
}
} // namespace detail

/// Seeded process-log generator. Activities are split into contiguous blocks
/// and ordered by code, which makes every skeleton a path in an acyclic
/// graph: a variant visits a random subset of blocks in order and a random
/// ordered subset of activities inside each visited block. Each trace copies
/// one variant's skeleton and then, per event, with probability `noise`
/// either substitutes it or inserts an extra event after it. The noise
/// activity comes from the disturbed event's block with probability
/// `noise_locality`, otherwise from all activities. Attributes: "activity", "sector" (the block) and
/// "responsible" (a group of three blocks).
inline SyntheticLog generate_synthetic_log(const SyntheticSpec& spec) {
    if (spec.traces < 1) {
        throw ParameterError("cli-bench", "synthetic trace count must be at least 1");
    }
    if (spec.activities < 1 || spec.variants < 1) {
        throw ParameterError("cli-bench", "synthetic activity and variant counts must be at least 1");
    }
    if (!(spec.noise >= 0.0 && spec.noise <= 1.0)) {
        throw ParameterError("cli-bench", "noise rate must lie in [0, 1]");
    }
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto pick = [&rng](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

    const std::size_t n = spec.activities;
    const std::size_t blocks = std::clamp<std::size_t>(spec.blocks != 0 ? spec.blocks : (n + 7) / 8, 1, n);

    SyntheticLog out;
    out.block_of.resize(n);
    std::vector<std::vector<Symbol>> members(blocks);
    for (std::size_t a = 0; a < n; ++a) {
        out.block_of[a] = a * blocks / n;
        members[out.block_of[a]].push_back(static_cast<Symbol>(a));
    }

    auto& schema = out.log.schema;
    const std::size_t activity_attr = schema.add_attribute("activity");
    const std::size_t sector_attr = schema.add_attribute("sector");
    const std::size_t responsible_attr = schema.add_attribute("responsible");
    for (std::size_t a = 0; a < n; ++a) {
        schema.dictionary(activity_attr).intern(detail::numbered("act_", a, 3));
    }
    for (std::size_t b = 0; b < blocks; ++b) {
        schema.dictionary(sector_attr).intern(detail::numbered("sector_", b, 2));
    }
    for (std::size_t r = 0; r < (blocks + 2) / 3; ++r) {
        schema.dictionary(responsible_attr).intern(detail::numbered("team_", r, 2));
    }

    out.skeletons.resize(spec.variants);
    for (auto& skeleton : out.skeletons) {
        std::vector<std::size_t> visited;
        for (std::size_t b = 0; b < blocks; ++b) {
            if (unit(rng) < spec.block_inclusion) {
                visited.push_back(b);
            }
        }
        if (visited.empty()) {
            visited.push_back(pick(blocks));
        }
        for (std::size_t b : visited) {
            const std::size_t before = skeleton.size();
            for (Symbol a : members[b]) {
                if (unit(rng) < spec.activity_inclusion) {
                    skeleton.push_back(a);
                }
            }
            if (skeleton.size() == before) {
                skeleton.push_back(members[b][pick(members[b].size())]);
            }
        }
    }

    const int id_width = static_cast<int>(std::to_string(spec.traces - 1).size());
    out.log.traces.reserve(spec.traces);
    out.variant_of.reserve(spec.traces);
    for (std::size_t t = 0; t < spec.traces; ++t) {
        const std::size_t v = pick(spec.variants);
        std::vector<Symbol> codes;
        for (Symbol a : out.skeletons[v]) {
            if (spec.noise > 0.0 && unit(rng) < spec.noise) {
                const auto& pool = members[out.block_of[a]];
                const auto other = unit(rng) < spec.noise_locality ? pool[pick(pool.size())]
                                                                    : static_cast<Symbol>(pick(n));
                if (unit(rng) < 0.5) {
                    codes.push_back(other);
                } else {
                    codes.push_back(a);
                    codes.push_back(other);
                }
            } else {
                codes.push_back(a);
            }
        }
        Trace trace;
        trace.id = detail::numbered("t", t, std::max(id_width, 4));
        trace.events.reserve(codes.size());
        for (Symbol a : codes) {
            const std::size_t b = out.block_of[a];
            trace.events.push_back(Event{{a, static_cast<Symbol>(b), static_cast<Symbol>(b / 3)}});
        }
        out.log.traces.push_back(std::move(trace));
        out.variant_of.push_back(v);
    }
    return out;
}

} // namespace tracesumm
