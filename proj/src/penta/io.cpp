#include "penta/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace penta {

namespace {

using json = nlohmann::ordered_json;

std::string block_name(Label a, Label b, Label c, Label d, Label x, Label y) {
  return SixKey{a, b, c, d, x, y}.str();
}

[[noreturn]] void invalid(const std::string& msg) { fail(Errc::validation, msg); }

std::size_t line_of_offset(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

Label get_label(const json& j, std::size_t n_colors, const char* what) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() >= n_colors)
    invalid(std::string(what) + ": label " + j.dump() + " is not a valid colour index");
  return j.get<Label>();
}

double get_finite(const json& j, const char* what) {
  if (!j.is_number()) invalid(std::string(what) + ": expected a number, got " + j.dump());
  return j.get<double>();
}

}  // namespace

std::string to_document_string(const FSolution& sol, const WeightSystem* weights) {
  const FusionRules& rules = sol.rules();
  std::size_t n = rules.size();
  json doc;
  doc["format_version"] = "1";
  doc["colors"] = rules.names();

  json dims = json::array();
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        if (std::uint32_t d = rules.dim_unchecked(a, b, c); d > 0)
          dims.push_back(json::array({a, b, c, d}));
  doc["dims"] = std::move(dims);

  json blocks = json::array();
  for (const auto& [mk, fmap] : sol.family())
    for (const auto& [bk, block] : fmap.blocks()) {
      json coords = json::array();
      for (Complex z : block.coords().data())
        coords.push_back(json::array({z.real(), z.imag()}));
      blocks.push_back(
          json::array({mk.a, mk.b, mk.c, mk.d, bk.x, bk.y, std::move(coords)}));
    }
  doc["blocks"] = std::move(blocks);

  if (weights) {
    json w = json::array();
    for (Label x = 0; x < n; ++x)
      w.push_back(json::array({x, weights->at(x).real(), weights->at(x).imag()}));
    doc["weights"] = std::move(w);
  }
  return doc.dump();
}

LoadResult parse_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::parse, "parse error at line " + std::to_string(line_of_offset(text, e.byte)) +
                          ": " + e.what());
  }
  if (!doc.is_object()) invalid("document root must be an object");
  if (!doc.contains("format_version") || doc["format_version"] != "1")
    invalid("unsupported or missing format_version (expected \"1\")");
  if (!doc.contains("colors") || !doc["colors"].is_array())
    invalid("missing colors list");

  std::vector<std::string> names;
  for (const auto& c : doc["colors"]) {
    if (!c.is_string()) invalid("colors entries must be strings");
    names.push_back(c.get<std::string>());
  }
  std::size_t n = names.size();

  std::vector<std::uint32_t> dims(n * n * n, 0);
  if (doc.contains("dims")) {
    if (!doc["dims"].is_array()) invalid("dims must be an array");
    for (const auto& entry : doc["dims"]) {
      if (!entry.is_array() || entry.size() != 4) invalid("dims entries are [a,b,c,N]");
      Label a = get_label(entry[0], n, "dims");
      Label b = get_label(entry[1], n, "dims");
      Label c = get_label(entry[2], n, "dims");
      if (!entry[3].is_number_unsigned() || entry[3].get<std::uint64_t>() == 0)
        invalid("dims: N must be a positive integer at (" + std::to_string(a) + "," +
                std::to_string(b) + "," + std::to_string(c) + ")");
      std::size_t idx = (static_cast<std::size_t>(a) * n + b) * n + c;
      if (dims[idx] != 0)
        invalid("dims: duplicate entry at (" + std::to_string(a) + "," + std::to_string(b) +
                "," + std::to_string(c) + ")");
      dims[idx] = entry[3].get<std::uint32_t>();
    }
  }
  FusionRules rules(n, std::move(dims), std::move(names));
  FSolution sol(rules);

  if (doc.contains("blocks")) {
    if (!doc["blocks"].is_array()) invalid("blocks must be an array");
    for (const auto& entry : doc["blocks"]) {
      if (!entry.is_array() || entry.size() != 7)
        invalid("blocks entries are [a,b,c,d,x,y,coords]");
      Label a = get_label(entry[0], n, "blocks");
      Label b = get_label(entry[1], n, "blocks");
      Label c = get_label(entry[2], n, "blocks");
      Label d = get_label(entry[3], n, "blocks");
      Label x = get_label(entry[4], n, "blocks");
      Label y = get_label(entry[5], n, "blocks");
      std::string where = "block " + block_name(a, b, c, d, x, y);
      if (sol.block(SixKey{a, b, c, d, x, y})) invalid(where + " appears twice");
      auto shape = block_shape(rules, SixKey{a, b, c, d, x, y});
      std::size_t expect = shape[0] * shape[1] * shape[2] * shape[3];
      const auto& coords = entry[6];
      if (!coords.is_array()) invalid(where + ": coords must be an array");
      if (coords.size() != expect)
        invalid(where + ": expected " + std::to_string(expect) + " coordinates, got " +
                std::to_string(coords.size()));
      if (expect == 0) invalid(where + " touches a zero-dimensional module");
      Dense R({shape[0], shape[1], shape[2], shape[3]});
      for (std::size_t i = 0; i < expect; ++i) {
        const auto& pair = coords[i];
        if (!pair.is_array() || pair.size() != 2)
          invalid(where + ": coordinates are [re, im] pairs");
        R[i] = Complex{get_finite(pair[0], where.c_str()), get_finite(pair[1], where.c_str())};
      }
      if (!R.all_finite()) invalid(where + ": non-finite coordinate");
      sol.set_block(FBlock(SixKey{a, b, c, d, x, y}, std::move(R)));
    }
  }

  LoadResult result{std::move(sol), std::nullopt};
  if (doc.contains("weights")) {
    if (!doc["weights"].is_array()) invalid("weights must be an array");
    std::vector<Complex> w(n, Complex{0.0, 0.0});
    std::vector<bool> seen(n, false);
    for (const auto& entry : doc["weights"]) {
      if (!entry.is_array() || entry.size() != 3) invalid("weights entries are [x,re,im]");
      Label x = get_label(entry[0], n, "weights");
      if (seen[x]) invalid("weights: duplicate entry for colour " + std::to_string(x));
      seen[x] = true;
      w[x] = Complex{get_finite(entry[1], "weights"), get_finite(entry[2], "weights")};
    }
    for (Label x = 0; x < n; ++x)
      if (!seen[x]) invalid("weights: missing entry for colour " + std::to_string(x));
    result.weights = WeightSystem(std::move(w));  // rejects zero weights
  }
  return result;
}

void save_solution(const FSolution& sol, const WeightSystem* weights,
                   const std::filesystem::path& path) {
  std::string text = to_document_string(sol, weights);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::io, "cannot open " + path.string() + " for writing");
  out << text << '\n';
  if (!out) fail(Errc::io, "failed writing " + path.string());
}

LoadResult load_solution(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

}  // namespace penta
