#pragma once

// Generator for small random case models: up to three classes arranged as a
// tree of one-to-many associations, a case fragment with a start event and
// an optional entry fragment that creates dependents.

#include "fcm/model.hpp"

#include <random>

namespace fcm::testing {

/// A model built from the generator's rules; it may still fail validation.
CaseModel random_model_candidate(std::mt19937& rng);

/// Draws candidates until one passes validation.
CaseModel random_valid_model(std::mt19937& rng);

} // namespace fcm::testing
