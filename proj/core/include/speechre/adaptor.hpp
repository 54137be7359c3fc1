#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "speechre/ratio.hpp"

namespace speechre {

struct ConvLayer {
  std::int64_t kernel = 3;
  std::int64_t stride = 2;
  std::int64_t padding = 1;

  friend bool operator==(const ConvLayer&, const ConvLayer&) = default;
};

/// Stack of strided 1-d convolutions between speech encoder and text decoder.
class AdaptorSpec {
 public:
  /// Throws Error unless every layer has kernel >= 1, stride >= 1,
  /// padding >= 0 and 2 * padding < kernel.
  explicit AdaptorSpec(std::vector<ConvLayer> layers);

  /// Three (3, 2, 1) layers.
  static AdaptorSpec standard();
  /// "k,s,p;k,s,p;..."
  static AdaptorSpec parse(std::string_view text);

  const std::vector<ConvLayer>& layers() const { return layers_; }
  std::int64_t total_stride() const;

 private:
  std::vector<ConvLayer> layers_;
};

/// floor((L + 2p - k) / s) + 1 for one layer; may be < 1.
std::int64_t conv_output_length(std::int64_t length, const ConvLayer& layer);

/// Length after each layer, in order. Throws Error naming the layer when an
/// intermediate length drops below 1.
std::vector<std::int64_t> layer_lengths(std::int64_t length, const AdaptorSpec& spec);
std::int64_t output_length(std::int64_t length, const AdaptorSpec& spec);

struct ParamBudget {
  std::uint64_t total_params = 0;
  std::uint64_t trainable_params = 0;
};

Ratio trainable_fraction(const ParamBudget& budget);

}  // namespace speechre
