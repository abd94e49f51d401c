#include "axial/models.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "axial/errors.hpp"

namespace axial {

namespace {

std::size_t parse_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw ValidationError("bad " + std::string(what) + " parameter '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string ModelDescriptor::name() const {
  switch (kind) {
    case ModelKind::full: return "full:" + std::to_string(size);
    case ModelKind::hard_square: return "hard_square";
    case ModelKind::coloring: return "coloring:" + std::to_string(size);
    case ModelKind::beach: return "beach:" + std::to_string(size);
    case ModelKind::rll:
      return "rll:" + std::to_string(rll_d) + "," + (rll_k ? std::to_string(*rll_k) : "inf");
    case ModelKind::plastic: return "plastic";
    case ModelKind::words: return "words";
  }
  return "unknown";
}

ModelDescriptor full_shift(std::size_t sigma) {
  if (sigma < 1) throw ValidationError("full shift needs at least one symbol");
  ModelDescriptor d;
  d.kind = ModelKind::full;
  d.size = sigma;
  return d;
}

ModelDescriptor hard_square() {
  ModelDescriptor d;
  d.kind = ModelKind::hard_square;
  return d;
}

ModelDescriptor coloring(std::size_t n) {
  if (n < 2) throw ValidationError("coloring needs n >= 2");
  ModelDescriptor d;
  d.kind = ModelKind::coloring;
  d.size = n;
  return d;
}

ModelDescriptor beach(std::size_t m) {
  if (m < 1) throw ValidationError("beach model needs M >= 1");
  ModelDescriptor d;
  d.kind = ModelKind::beach;
  d.size = m;
  return d;
}

ModelDescriptor rll(std::size_t d, std::optional<std::size_t> k) {
  if (k && d >= *k) throw ValidationError("run-length limits need d < k");
  ModelDescriptor m;
  m.kind = ModelKind::rll;
  m.rll_d = d;
  m.rll_k = k;
  return m;
}

ModelDescriptor plastic() {
  ModelDescriptor d;
  d.kind = ModelKind::plastic;
  return d;
}

ModelDescriptor words(std::vector<std::string> alphabet,
                      std::vector<std::vector<std::string>> forbidden) {
  ModelDescriptor d;
  d.kind = ModelKind::words;
  d.alphabet = std::move(alphabet);
  d.forbidden = std::move(forbidden);
  return d;
}

ModelDescriptor parse_model_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("alphabet") || !doc["alphabet"].is_array()) {
    throw ValidationError("model file needs an `alphabet` array");
  }
  std::vector<std::string> alphabet;
  for (const auto& s : doc["alphabet"]) {
    if (!s.is_string()) throw ValidationError("alphabet entries must be strings");
    alphabet.push_back(s.get<std::string>());
  }
  std::vector<std::vector<std::string>> forbidden;
  if (doc.contains("forbidden")) {
    if (!doc["forbidden"].is_array()) throw ValidationError("`forbidden` must be an array");
    for (const auto& f : doc["forbidden"]) {
      std::vector<std::string> w;
      if (f.is_string()) {
        for (char c : f.get<std::string>()) w.emplace_back(1, c);
      } else if (f.is_array()) {
        for (const auto& s : f) {
          if (!s.is_string()) throw ValidationError("forbidden symbols must be strings");
          w.push_back(s.get<std::string>());
        }
      } else {
        throw ValidationError("forbidden entries must be strings or arrays");
      }
      if (w.empty()) throw ValidationError("empty forbidden word");
      forbidden.push_back(std::move(w));
    }
  }
  return words(std::move(alphabet), std::move(forbidden));
}

ModelDescriptor parse_model(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;

  auto no_arg = [&](ModelDescriptor d) {
    if (has_arg) throw ValidationError("model '" + std::string(head) + "' takes no parameter");
    return d;
  };
  if (head == "hard_square") return no_arg(hard_square());
  if (head == "plastic") return no_arg(plastic());
  if (!has_arg) throw ValidationError("unknown model '" + std::string(text) + "'");
  if (head == "full") return full_shift(parse_size(arg, "full"));
  if (head == "coloring") return coloring(parse_size(arg, "coloring"));
  if (head == "beach") return beach(parse_size(arg, "beach"));
  if (head == "rll") {
    const auto comma = arg.find(',');
    if (comma == std::string_view::npos) throw ValidationError("rll needs d,k");
    const std::size_t d = parse_size(arg.substr(0, comma), "rll d");
    const auto k = arg.substr(comma + 1);
    if (k == "inf") return rll(d, std::nullopt);
    return rll(d, parse_size(k, "rll k"));
  }
  if (head == "file") {
    std::ifstream in{std::string(arg)};
    if (!in) throw ValidationError("cannot open model file '" + std::string(arg) + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_json(buf.str());
  }
  throw ValidationError("unknown model '" + std::string(text) + "'");
}

SubshiftSpec build_model(const ModelDescriptor& desc, const Caps& caps) {
  std::vector<std::string> alphabet;
  std::vector<std::vector<std::string>> forbidden;
  switch (desc.kind) {
    case ModelKind::full: {
      if (desc.size > kMaxAlphabetSize) throw ValidationError("alphabet larger than 64 symbols");
      const std::string_view digits =
          "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
      for (std::size_t i = 0; i < desc.size; ++i) {
        alphabet.push_back(desc.size <= digits.size() ? std::string(1, digits[i])
                                                      : "s" + std::to_string(i));
      }
      break;
    }
    case ModelKind::hard_square:
      alphabet = {"0", "1"};
      forbidden = {{"1", "1"}};
      break;
    case ModelKind::coloring:
      for (std::size_t i = 1; i <= desc.size; ++i) alphabet.push_back(std::to_string(i));
      for (const auto& a : alphabet) forbidden.push_back({a, a});
      break;
    case ModelKind::beach: {
      const auto m = static_cast<long>(desc.size);
      std::vector<long> values;
      for (long v = -m; v <= m; ++v) {
        if (v != 0) values.push_back(v);
      }
      for (long v : values) alphabet.push_back(std::to_string(v));
      for (long a : values) {
        for (long b : values) {
          if (a * b <= -2) forbidden.push_back({std::to_string(a), std::to_string(b)});
        }
      }
      break;
    }
    case ModelKind::rll:
      alphabet = {"0", "1"};
      for (std::size_t j = 0; j < desc.rll_d; ++j) {
        std::vector<std::string> w{"1"};
        w.insert(w.end(), j, "0");
        w.push_back("1");
        forbidden.push_back(std::move(w));
      }
      if (desc.rll_k) forbidden.push_back(std::vector<std::string>(*desc.rll_k + 1, "0"));
      break;
    case ModelKind::plastic:
      alphabet = {"1", "2", "3"};
      for (const char* w : {"11", "21", "22", "32", "33"}) {
        forbidden.push_back({std::string(1, w[0]), std::string(1, w[1])});
      }
      break;
    case ModelKind::words:
      alphabet = desc.alphabet;
      forbidden = desc.forbidden;
      break;
  }
  return validate_spec(std::move(alphabet), forbidden, caps);
}

std::vector<std::string> builtin_model_names() {
  return {"full:2",     "full:3",     "hard_square", "coloring:3", "coloring:4", "coloring:5",
          "coloring:6", "beach:1",    "beach:2",     "beach:3",    "rll:0,1",    "rll:1,2",
          "rll:1,3",    "rll:2,5",    "rll:1,inf",   "rll:2,inf",  "rll:3,inf",  "plastic"};
}

}  // namespace axial
