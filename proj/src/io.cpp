#include "thiele/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "thiele/version.hpp"

namespace thiele::io {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

void check_stream(const std::ostream& out) {
  if (!out) throw Error("write failed");
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, out);
  return res.ec == std::errc{} && res.ptr == end;
}

SampleSet read_samples(std::istream& in) {
  std::vector<double> xs, fs;
  std::set<double> seen;
  std::string line;
  std::size_t lineno = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto cols = split_commas(body);
    if (header_allowed) {
      header_allowed = false;
      if (cols.size() == 2 && cols[0] == "x" && cols[1] == "f") continue;
    }
    if (cols.size() != 2)
      throw ParseError(lineno, "expected 2 columns, found " + std::to_string(cols.size()));
    double x = 0.0, f = 0.0;
    if (!parse_double(cols[0], x)) throw ParseError(lineno, "malformed abscissa '" + std::string(cols[0]) + "'");
    if (!parse_double(cols[1], f)) throw ParseError(lineno, "malformed value '" + std::string(cols[1]) + "'");
    if (!std::isfinite(x) || !std::isfinite(f)) throw NonFiniteValue(lineno);
    if (!seen.insert(x).second) throw DuplicateAbscissa(x, lineno);
    xs.push_back(x);
    fs.push_back(f);
  }
  if (in.bad()) throw Error("read failed");
  if (xs.empty()) throw ParseError(lineno, "no samples found");
  return SampleSet(std::move(xs), std::move(fs));
}

SampleSet read_samples(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_samples(in);
}

void write_samples(const SampleSet& data, std::ostream& out) {
  out << "x,f\n";
  for (std::size_t i = 0; i < data.size(); ++i)
    out << format_double(data.xs()[i]) << ',' << format_double(data.fs()[i]) << '\n';
  check_stream(out);
}

void write_model(const ThieleModel& model, const ModelMetadata& meta, std::ostream& out) {
  json nodes = json::array(), coeffs = json::array();
  for (double v : model.nodes()) nodes.push_back(format_double(v));
  for (double v : model.coeffs()) coeffs.push_back(format_double(v));
  json config = {{"tol", format_double(meta.config.tol)}};
  config["max_order"] = meta.config.max_order ? json(*meta.config.max_order) : json(nullptr);
  const json doc = {
      {"format_version", kModelFormatVersion},
      {"nodes", std::move(nodes)},
      {"coeffs", std::move(coeffs)},
      {"metadata",
       {{"tool_version", meta.tool_version.empty() ? std::string(kVersion) : meta.tool_version},
        {"fit_config", std::move(config)},
        {"stopped_early", meta.stopped_early}}},
  };
  out << doc.dump(2) << '\n';
  check_stream(out);
}

void write_model(const ThieleModel& model, const ModelMetadata& meta,
                 const std::filesystem::path& path) {
  auto out = open_out(path);
  write_model(model, meta, out);
}

namespace {

std::vector<double> decimal_list(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw SchemaError(std::string("'") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& item : doc[key]) {
    if (!item.is_string()) throw SchemaError(std::string("'") + key + "' entries must be decimal strings");
    double v = 0.0;
    if (!parse_double(item.get_ref<const std::string&>(), v))
      throw SchemaError(std::string("malformed number in '") + key + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

ModelDocument read_model(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("model document must be a JSON object");
  if (!doc.contains("format_version") || !doc["format_version"].is_number_integer())
    throw SchemaError("'format_version' must be an integer");
  const auto version = doc["format_version"].get<long long>();
  if (version != kModelFormatVersion) throw VersionMismatch(version);

  std::vector<double> nodes = decimal_list(doc, "nodes");
  std::vector<double> coeffs = decimal_list(doc, "coeffs");
  if (nodes.size() != coeffs.size()) throw SchemaError("'nodes' and 'coeffs' differ in length");
  if (nodes.empty()) throw SchemaError("model must have at least one coefficient");

  ModelMetadata meta;
  if (doc.contains("metadata")) {
    const json& m = doc["metadata"];
    if (!m.is_object()) throw SchemaError("'metadata' must be an object");
    if (m.contains("tool_version") && m["tool_version"].is_string())
      meta.tool_version = m["tool_version"].get<std::string>();
    if (m.contains("stopped_early") && m["stopped_early"].is_boolean())
      meta.stopped_early = m["stopped_early"].get<bool>();
    if (m.contains("fit_config") && m["fit_config"].is_object()) {
      const json& c = m["fit_config"];
      if (c.contains("tol") && c["tol"].is_string())
        parse_double(c["tol"].get_ref<const std::string&>(), meta.config.tol);
      if (c.contains("max_order") && c["max_order"].is_number_unsigned())
        meta.config.max_order = c["max_order"].get<std::size_t>();
    }
  }

  try {
    return {ThieleModel(std::move(nodes), std::move(coeffs)), std::move(meta)};
  } catch (const InvalidInput& e) {
    throw SchemaError(std::string("invalid model: ") + e.what());
  }
}

ModelDocument read_model(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_model(in);
}

void write_study_csv(std::span<const newman::StudyRow> rows, std::ostream& out) {
  out << kStudyCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << format_double(r.eta) << ',' << r.order << ',' << format_double(r.sup_err)
        << ',' << format_double(r.node_err_2norm) << ',' << r.poles_in_unit_interval << ','
        << (r.stopped_early ? 1 : 0) << '\n';
  }
  check_stream(out);
}

std::vector<newman::StudyRow> read_study_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line) || trim(line) != kStudyCsvHeader)
    throw ParseError(1, "missing study header");
  ++lineno;

  auto to_long = [&](std::string_view s, long& v) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw ParseError(lineno, "malformed integer '" + std::string(s) + "'");
  };
  auto to_double = [&](std::string_view s, double& v) {
    if (!parse_double(s, v)) throw ParseError(lineno, "malformed number '" + std::string(s) + "'");
  };

  std::vector<newman::StudyRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cols = split_commas(trim(line));
    if (cols.size() != 7) throw ParseError(lineno, "expected 7 columns");
    newman::StudyRow r;
    long n = 0, stopped = 0;
    to_long(cols[0], n);
    r.n = static_cast<int>(n);
    to_double(cols[1], r.eta);
    to_long(cols[2], r.order);
    to_double(cols[3], r.sup_err);
    to_double(cols[4], r.node_err_2norm);
    to_long(cols[5], r.poles_in_unit_interval);
    to_long(cols[6], stopped);
    r.stopped_early = stopped != 0;
    if (r.order < 0) r.error = "fit failed";
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace thiele::io
