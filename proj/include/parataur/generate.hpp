#pragma once

// Random PTA generator used by the property tests and `gen-random`.

#include "parataur/model.hpp"

#include <cstdint>
#include <random>

namespace parataur {

struct RandomPtaOptions {
    int max_clocks = 2;
    int max_params = 2;
    int max_bound = 3;
    int max_locations = 4;
    int max_edges = 6;
    bool lu_only = false;
    bool closed_only = false;
    bool bounded = true;
    bool closed_bounds = true;
    int max_atoms = 2;
    double invariant_probability = 0.3;
    double reset_probability = 0.4;
};

/// The initial location never carries an invariant.
Pta random_pta(std::mt19937_64& rng, const RandomPtaOptions& options = {});

}  // namespace parataur
