#pragma once

#include "fracext/cloud.hpp"
#include "fracext/gridfn.hpp"

namespace fracext {

enum class CorpusFamily { hardy_power, smooth_bump, random_trig, indicator_negative_control };

const char* to_string(CorpusFamily f);
CorpusFamily corpus_family_from(const std::string& name);

// Test functions living in the weighted fractional Sobolev class by
// construction, plus an indicator control that is meant to blow the weighted
// term up when its support touches D.
struct CorpusSpec {
    CorpusFamily family = CorpusFamily::hardy_power;
    double alpha = 0.6;        // hardy_power exponent
    std::uint64_t seed = 1;    // random_trig
    int modes = 4;             // random_trig
    FractionalParams params;
    std::string region;

    // exponents at or below s - 1/p leave the weighted term divergent
    bool intended_divergent() const {
        return family == CorpusFamily::hardy_power &&
               alpha <= params.s - 1.0 / params.p + 1e-12;
    }
    std::string label() const;
};

// D drives the weighted-norm envelopes; boundary centers the bump profile
GridFunction generate(const CorpusSpec& spec, const DomainView& dom, const PointCloudSet& D,
                      const PointCloudSet& boundary);

}  // namespace fracext
