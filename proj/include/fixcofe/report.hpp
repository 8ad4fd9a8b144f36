#pragma once

#include <any>
#include <cstdint>
#include <functional>
#include <string>

#include "fixcofe/value.hpp"

namespace fixcofe {

/// Outcome of a property probe: a pass (with coverage stats) or a
/// counterexample. A pass is finite-depth evidence only, never a proof.
struct CheckReport {
    bool passed = true;

    // Which property failed, e.g. "nesting" or "contractive".
    std::string property;

    // Level at which the counterexample was found.
    Level level = 0;

    // Printed observations (or elements) of the witnesses.
    std::string witness_a;
    std::string witness_b;

    // Coverage stats. premise_hits counts cases where a conditional
    // property's hypothesis actually held, so vacuous passes are visible.
    std::uint64_t samples = 0;
    std::uint64_t premise_hits = 0;
    std::uint64_t rng_seed = 0;

    // Re-runs the predicate on the stored witnesses; returns true iff the
    // failure reproduces. Empty for passing reports.
    std::function<bool()> replay;

    // Structured witness data for serialization (instance-specific).
    std::any witness_data;

    static CheckReport pass(std::uint64_t samples = 0, std::uint64_t premise_hits = 0) {
        CheckReport r;
        r.passed = true;
        r.samples = samples;
        r.premise_hits = premise_hits;
        return r;
    }
};

}  // namespace fixcofe
