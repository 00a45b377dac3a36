#include "fqr/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fqr {

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t lineno) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\r') {
      // tolerate CRLF
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError(lineno, "unterminated quote");
  fields.push_back(std::move(field));
  return fields;
}

double parse_double(const std::string& s, std::size_t lineno) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v))
      throw ParseError(lineno, "bad number '" + s + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(lineno, "bad number '" + s + "'");
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string bundle_kind_name(BundleKind kind) {
  switch (kind) {
    case BundleKind::QuantileCurves: return "QuantileCurves";
    case BundleKind::DepthSet: return "DepthSet";
    case BundleKind::SpreadProfile: return "SpreadProfile";
    case BundleKind::CVTrace: return "CVTrace";
  }
  return "Unknown";
}

static BundleKind bundle_kind_from_name(const std::string& name) {
  if (name == "QuantileCurves") return BundleKind::QuantileCurves;
  if (name == "DepthSet") return BundleKind::DepthSet;
  if (name == "SpreadProfile") return BundleKind::SpreadProfile;
  if (name == "CVTrace") return BundleKind::CVTrace;
  throw IoError("unknown bundle kind '" + name + "'");
}

FunctionalSample read_panel(const std::string& path, const PanelSchema& schema) {
  return read_panel(path, schema, nullptr);
}

FunctionalSample read_panel(const std::string& path, const PanelSchema& schema,
                            std::vector<std::string>* unit_names) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");

  std::string line;
  std::size_t lineno = 0;

  // Header row (skipping leading comment lines).
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    header = split_csv_line(line, lineno);
    break;
  }
  if (header.empty()) throw ParseError(lineno, "missing header row");

  auto col = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw ParseError(1, "column '" + name + "' not found in header");
    return static_cast<std::size_t>(it - header.begin());
  };
  std::size_t ci_unit = col(schema.unitColumn);
  std::size_t ci_time = col(schema.timeColumn);
  std::size_t ci_cov = col(schema.covariateColumn);
  std::size_t ci_resp = col(schema.responseColumn);

  struct UnitData {
    std::vector<double> times;
    std::vector<double> cov;
    std::vector<double> resp;
    std::set<double> seen;
  };
  std::vector<std::string> order;
  std::map<std::string, UnitData> units;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_csv_line(line, lineno);
    if (fields.size() != header.size())
      throw ParseError(lineno, "expected " + std::to_string(header.size()) +
                                   " fields, got " + std::to_string(fields.size()));
    const std::string& unit = fields[ci_unit];
    double t = parse_double(fields[ci_time], lineno);
    if (fields[ci_cov].empty() || fields[ci_resp].empty())
      throw MissingCell(unit, fields[ci_time]);
    double cov = parse_double(fields[ci_cov], lineno);
    double resp = parse_double(fields[ci_resp], lineno);

    auto it = units.find(unit);
    if (it == units.end()) {
      order.push_back(unit);
      it = units.emplace(unit, UnitData{}).first;
    }
    if (!it->second.seen.insert(t).second)
      throw ParseError(lineno, "duplicate (unit,time) pair for '" + unit + "'");
    it->second.times.push_back(t);
    it->second.cov.push_back(cov);
    it->second.resp.push_back(resp);
  }
  if (order.empty()) throw ParseError(lineno, "panel contains no data rows");

  // The common time grid comes from the union across units; every unit must
  // cover it exactly.
  std::set<double> all_times;
  for (const auto& [unit, data] : units)
    all_times.insert(data.times.begin(), data.times.end());
  std::vector<double> grid_times(all_times.begin(), all_times.end());
  const int count = static_cast<int>(grid_times.size());

  Grid grid = count == 1 ? Grid(grid_times[0], grid_times[0], 1)
                         : Grid(grid_times.front(), grid_times.back(), count);
  if (count > 1) {
    double dt = grid.dt();
    for (int k = 1; k < count; ++k) {
      if (std::abs(grid_times[k] - grid_times[k - 1] - dt) > 1e-9 * std::max(1.0, dt))
        throw ParseError(0, "time grid is not uniform");
    }
  }

  FunctionalSample sample;
  for (const std::string& unit : order) {
    const UnitData& data = units.at(unit);
    if (static_cast<int>(data.times.size()) != count) throw RaggedPanel(unit);
    // Sort the unit's rows by time without assuming file order.
    std::vector<int> idx(data.times.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<int>(k);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return data.times[static_cast<std::size_t>(a)] <
             data.times[static_cast<std::size_t>(b)];
    });
    Vector cov(count), resp(count);
    for (int k = 0; k < count; ++k) {
      std::size_t j = static_cast<std::size_t>(idx[static_cast<std::size_t>(k)]);
      if (data.times[j] != grid_times[static_cast<std::size_t>(k)])
        throw RaggedPanel(unit);
      cov[k] = data.cov[j];
      resp[k] = data.resp[j];
    }
    sample.covariates.emplace_back(grid, std::move(cov));
    sample.responses.emplace_back(grid, std::move(resp));
  }
  if (unit_names) *unit_names = order;
  return sample;
}

void write_panel(const FunctionalSample& sample, const std::string& path,
                 const PanelSchema& schema,
                 const std::vector<std::string>& unit_names) {
  sample.validate();
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << csv_escape(schema.unitColumn) << ',' << csv_escape(schema.timeColumn)
      << ',' << csv_escape(schema.covariateColumn) << ','
      << csv_escape(schema.responseColumn) << '\n';
  Vector t = sample.covariates.empty() ? Vector()
                                       : sample.covariates.front().grid.points();
  for (int i = 0; i < sample.size(); ++i) {
    std::string unit = i < static_cast<int>(unit_names.size())
                           ? unit_names[static_cast<std::size_t>(i)]
                           : std::to_string(i + 1);
    for (int k = 0; k < t.size(); ++k) {
      out << csv_escape(unit) << ',' << fmt17(t[k]) << ','
          << fmt17(sample.covariates[i].values[k]) << ','
          << fmt17(sample.responses[i].values[k]) << '\n';
    }
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

void write_results(const ResultBundle& bundle, const std::string& path,
                   OutputFormat format) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  if (format == OutputFormat::Csv) {
    out << "# kind=" << bundle_kind_name(bundle.kind) << '\n';
    for (const auto& [key, value] : bundle.metadata)
      out << "# " << key << '=' << value << '\n';
    out << "series,t,value\n";
    for (const Series& s : bundle.series) {
      for (std::size_t k = 0; k < s.t.size(); ++k) {
        out << csv_escape(s.name) << ',' << fmt17(s.t[k]) << ','
            << fmt17(s.v[k]) << '\n';
      }
    }
  } else {
    nlohmann::ordered_json j;
    j["kind"] = bundle_kind_name(bundle.kind);
    j["metadata"] = bundle.metadata;
    j["series"] = nlohmann::ordered_json::array();
    for (const Series& s : bundle.series) {
      nlohmann::ordered_json js;
      js["name"] = s.name;
      // Serialized as strings carrying 17 significant digits so that the
      // file is a textual fixed point under write -> read -> write.
      auto t = nlohmann::ordered_json::array();
      auto v = nlohmann::ordered_json::array();
      for (double x : s.t) t.push_back(fmt17(x));
      for (double x : s.v) v.push_back(fmt17(x));
      js["t"] = std::move(t);
      js["v"] = std::move(v);
      j["series"].push_back(std::move(js));
    }
    out << j.dump(2) << '\n';
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

ResultBundle read_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  int first = in.peek();
  ResultBundle bundle;
  if (first == '{') {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw IoError(std::string("bad JSON: ") + e.what());
    }
    bundle.kind = bundle_kind_from_name(j.at("kind").get<std::string>());
    for (auto& [key, value] : j.at("metadata").items())
      bundle.metadata[key] = value.get<std::string>();
    for (auto& js : j.at("series")) {
      Series s;
      s.name = js.at("name").get<std::string>();
      for (auto& x : js.at("t")) s.t.push_back(std::stod(x.get<std::string>()));
      for (auto& x : js.at("v")) s.v.push_back(std::stod(x.get<std::string>()));
      bundle.series.push_back(std::move(s));
    }
    return bundle;
  }

  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  std::map<std::string, std::size_t> series_index;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body[0] == ' ') body = body.substr(1);
      auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      std::string key = body.substr(0, eq);
      std::string value = body.substr(eq + 1);
      if (key == "kind") bundle.kind = bundle_kind_from_name(value);
      else bundle.metadata[key] = value;
      continue;
    }
    if (!header_seen) {
      header_seen = true;  // "series,t,value"
      continue;
    }
    auto fields = split_csv_line(line, lineno);
    if (fields.size() != 3) throw ParseError(lineno, "expected 3 fields");
    auto it = series_index.find(fields[0]);
    if (it == series_index.end()) {
      it = series_index.emplace(fields[0], bundle.series.size()).first;
      bundle.series.push_back(Series{fields[0], {}, {}});
    }
    Series& s = bundle.series[it->second];
    s.t.push_back(parse_double(fields[1], lineno));
    s.v.push_back(parse_double(fields[2], lineno));
  }
  if (!header_seen) throw IoError("no payload header in '" + path + "'");
  return bundle;
}

}  // namespace fqr
