#include "speechre/triplet_codec.hpp"

#include "speechre/error.hpp"
#include "speechre/text.hpp"

namespace speechre {

std::string_view to_string(WarningKind kind) {
  switch (kind) {
    case WarningKind::truncated_triplet: return "truncated_triplet";
    case WarningKind::missing_field: return "missing_field";
    case WarningKind::empty_field: return "empty_field";
    case WarningKind::stray_text: return "stray_text";
  }
  return "stray_text";
}

std::string linearize(std::span<const Triplet> triplets) {
  std::string out;
  for (const auto& t : triplets) {
    validate_triplet(t);
    if (!out.empty()) out.push_back(' ');
    out.append(kTripletMarker).append(" ").append(t.head);
    out.append(" ").append(kSubjMarker).append(" ").append(t.tail);
    out.append(" ").append(kObjMarker).append(" ").append(t.relation);
  }
  return out;
}

namespace {

class StrictParser {
 public:
  explicit StrictParser(std::string_view s) : s_(s), tokens_(word_spans(s)) {}

  std::vector<Triplet> run() {
    std::vector<Triplet> out;
    while (pos_ < tokens_.size()) {
      if (token(pos_) != kTripletMarker)
        throw ParseError("expected <triplet>, found \"" + std::string(token(pos_)) + "\"", tokens_[pos_].begin);
      ++pos_;
      Triplet t;
      t.head = field("head", kSubjMarker);
      t.tail = field("tail", kObjMarker);
      t.relation = field("relation", kTripletMarker);
      out.push_back(std::move(t));
    }
    return out;
  }

 private:
  std::string_view token(std::size_t i) const {
    return s_.substr(tokens_[i].begin, tokens_[i].end - tokens_[i].begin);
  }

  // Consumes tokens up to the terminator. The relation field (terminated by
  // <triplet>) may also end at the end of input; its terminator is not consumed.
  std::string field(std::string_view name, std::string_view terminator) {
    const bool relation = terminator == kTripletMarker;
    const std::size_t first = pos_;
    while (pos_ < tokens_.size() && token(pos_) != terminator) {
      if (contains_marker(token(pos_)))
        throw ParseError("unexpected marker \"" + std::string(token(pos_)) + "\" in " + std::string(name),
                         tokens_[pos_].begin);
      ++pos_;
    }
    if (pos_ == tokens_.size() && !relation)
      throw ParseError("missing field: no " + std::string(terminator) + " after " + std::string(name), s_.size());
    const std::size_t at = pos_ < tokens_.size() ? tokens_[pos_].begin : s_.size();
    if (pos_ == first) throw ParseError("empty " + std::string(name), at);
    std::string value(s_.substr(tokens_[first].begin, tokens_[pos_ - 1].end - tokens_[first].begin));
    if (!relation) ++pos_;
    return value;
  }

  std::string_view s_;
  std::vector<WordSpan> tokens_;
  std::size_t pos_ = 0;
};

std::size_t first_marker(std::string_view s, std::size_t from = 0) {
  std::size_t best = std::string_view::npos;
  for (auto marker : {kTripletMarker, kSubjMarker, kObjMarker}) best = std::min(best, s.find(marker, from));
  return best;
}

std::size_t first_non_space(std::string_view s, std::size_t offset) {
  const auto trimmed = trim(s);
  return offset + static_cast<std::size_t>(trimmed.data() - s.data());
}

}  // namespace

std::vector<Triplet> parse_strict(std::string_view s) { return StrictParser(s).run(); }

LenientParse parse_lenient(std::string_view s) {
  LenientParse result;
  auto warn = [&](WarningKind kind, std::size_t position, std::string detail) {
    result.warnings.push_back({kind, position, std::move(detail)});
  };

  std::vector<std::size_t> starts;
  for (auto p = s.find(kTripletMarker); p != std::string_view::npos; p = s.find(kTripletMarker, p + 1))
    starts.push_back(p);

  const std::string_view prefix = s.substr(0, starts.empty() ? s.size() : starts.front());
  if (!trim(prefix).empty())
    warn(WarningKind::stray_text, first_non_space(prefix, 0),
         "text outside any triplet: \"" + std::string(trim(prefix)) + "\"");

  for (std::size_t k = 0; k < starts.size(); ++k) {
    const bool last = k + 1 == starts.size();
    const std::size_t at = starts[k];
    const std::size_t seg_begin = at + kTripletMarker.size();
    const std::size_t seg_end = last ? s.size() : starts[k + 1];
    const std::string_view seg = s.substr(seg_begin, seg_end - seg_begin);
    const WarningKind incomplete = last ? WarningKind::truncated_triplet : WarningKind::missing_field;

    const std::size_t subj = seg.find(kSubjMarker);
    if (subj == std::string_view::npos) {
      warn(incomplete, at, "no <subj> marker");
      continue;
    }
    const std::size_t obj = seg.find(kObjMarker, subj + kSubjMarker.size());
    if (obj == std::string_view::npos) {
      warn(incomplete, at, "no <obj> marker");
      continue;
    }
    const std::string_view head = trim(seg.substr(0, subj));
    const std::string_view tail = trim(seg.substr(subj + kSubjMarker.size(), obj - subj - kSubjMarker.size()));
    std::string_view rel_region = seg.substr(obj + kObjMarker.size());
    if (contains_marker(head) || contains_marker(tail)) {
      warn(WarningKind::missing_field, at, "markers out of order");
      continue;
    }
    const std::size_t stray = first_marker(rel_region);
    if (stray != std::string_view::npos) {
      const std::size_t stray_at = seg_begin + obj + kObjMarker.size() + stray;
      warn(WarningKind::stray_text, stray_at,
           "text after relation: \"" + std::string(trim(rel_region.substr(stray))) + "\"");
      rel_region = rel_region.substr(0, stray);
    }
    const std::string_view relation = trim(rel_region);
    if (head.empty() || tail.empty() || relation.empty()) {
      const char* which = head.empty() ? "head" : tail.empty() ? "tail" : "relation";
      warn(WarningKind::empty_field, at, std::string("empty ") + which);
      continue;
    }
    result.triplets.push_back({std::string(head), std::string(relation), std::string(tail)});
  }
  return result;
}

}  // namespace speechre
