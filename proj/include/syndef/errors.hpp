#pragma once

#include <stdexcept>
#include <string>

namespace syndef {

// Bad arguments: malformed strands, invalid parameter combinations, unsupported sizes.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A decoder could not produce a unique codeword.
struct DecodeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Received data is outside the channel model (too many deletions, wrong lengths).
struct ChannelContractError : DecodeFailure {
  using DecodeFailure::DecodeFailure;
};

// Shift or index outside its admissible range.
struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// A construction step could not satisfy its own guarantee (e.g. incomplete cover).
struct ConstructionError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace syndef
