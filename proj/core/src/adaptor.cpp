#include "speechre/adaptor.hpp"

#include <charconv>
#include <string>

#include "speechre/error.hpp"

namespace speechre {

AdaptorSpec::AdaptorSpec(std::vector<ConvLayer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw Error("adaptor needs at least one layer");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& l = layers_[i];
    if (l.kernel < 1 || l.stride < 1 || l.padding < 0 || 2 * l.padding >= l.kernel)
      throw Error("adaptor layer " + std::to_string(i) + " (k=" + std::to_string(l.kernel) +
                  ", s=" + std::to_string(l.stride) + ", p=" + std::to_string(l.padding) +
                  ") needs k >= 1, s >= 1, p >= 0 and 2p < k");
  }
}

AdaptorSpec AdaptorSpec::standard() { return AdaptorSpec({{3, 2, 1}, {3, 2, 1}, {3, 2, 1}}); }

AdaptorSpec AdaptorSpec::parse(std::string_view text) {
  std::vector<ConvLayer> layers;
  while (true) {
    const auto semi = text.find(';');
    std::string_view part = text.substr(0, semi);
    std::int64_t values[3];
    for (int f = 0; f < 3; ++f) {
      const auto comma = part.find(',');
      if ((f < 2) == (comma == std::string_view::npos))
        throw Error("adaptor layer must be \"k,s,p\": \"" + std::string(text.substr(0, semi)) + "\"");
      const std::string_view num = part.substr(0, comma);
      const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), values[f]);
      if (ec != std::errc{} || ptr != num.data() + num.size() || num.empty())
        throw Error("adaptor layer field is not an integer: \"" + std::string(num) + "\"");
      part = comma == std::string_view::npos ? std::string_view{} : part.substr(comma + 1);
    }
    layers.push_back({values[0], values[1], values[2]});
    if (semi == std::string_view::npos) break;
    text = text.substr(semi + 1);
  }
  return AdaptorSpec(std::move(layers));
}

std::int64_t AdaptorSpec::total_stride() const {
  std::int64_t s = 1;
  for (const auto& l : layers_) s *= l.stride;
  return s;
}

std::int64_t conv_output_length(std::int64_t length, const ConvLayer& layer) {
  const std::int64_t span = length + 2 * layer.padding - layer.kernel;
  // floor division; span may be negative for short inputs
  const std::int64_t q = span >= 0 ? span / layer.stride : -((-span + layer.stride - 1) / layer.stride);
  return q + 1;
}

std::vector<std::int64_t> layer_lengths(std::int64_t length, const AdaptorSpec& spec) {
  if (length < 1) throw Error("input length must be >= 1, got " + std::to_string(length));
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < spec.layers().size(); ++i) {
    length = conv_output_length(length, spec.layers()[i]);
    if (length < 1)
      throw Error("adaptor layer " + std::to_string(i) + " produces length " + std::to_string(length));
    out.push_back(length);
  }
  return out;
}

std::int64_t output_length(std::int64_t length, const AdaptorSpec& spec) {
  return layer_lengths(length, spec).back();
}

Ratio trainable_fraction(const ParamBudget& b) {
  if (b.total_params == 0) throw Error("parameter budget has zero total parameters");
  if (b.trainable_params > b.total_params) throw Error("trainable parameters exceed the total");
  return {b.trainable_params, b.total_params};
}

}  // namespace speechre
