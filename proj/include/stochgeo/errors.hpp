#pragma once

#include <stdexcept>
#include <string>

namespace stochgeo {

// Input had no d+1 affinely independent points, or a near-coplanarity below
// the orientation tolerance was detected mid-construction. Callers that feed
// absolutely continuous samples are expected to resample and retry.
struct DegenerateInput : std::runtime_error {
    explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

struct OriginOutside : std::runtime_error {
    explicit OriginOutside(const std::string& what) : std::runtime_error(what) {}
};

struct IllConditioned : std::runtime_error {
    explicit IllConditioned(const std::string& what) : std::runtime_error(what) {}
};

struct TooSmallCone : std::runtime_error {
    explicit TooSmallCone(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfRange : std::runtime_error {
    explicit OutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct NonPositive : std::runtime_error {
    explicit NonPositive(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stochgeo
