#include <cstdio>
#include <fstream>
#include <sstream>

#include "spinlab/errors.hpp"
#include "spinlab/experiment.hpp"

namespace spinlab {

using nlohmann::json;

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void csv_row(std::ostringstream& os, const ResultRecord& r, const std::string& params,
             const std::string& t, const Observation& o) {
  os << csv_field(r.experiment) << ',' << csv_field(r.graph) << ',' << params << ',' << t << ','
     << csv_field(o.name) << ',' << format_number(o.value.mean) << ','
     << format_number(o.value.std_error) << ',' << o.value.n << ',' << r.seed << '\n';
}

json observation_to_json(const Observation& o) {
  return {{"name", o.name}, {"mean", o.value.mean}, {"stderr", o.value.std_error}, {"n", o.value.n}};
}

Observation observation_from_json(const json& j) {
  return {j.at("name").get<std::string>(),
          {j.at("mean").get<double>(), j.at("stderr").get<double>(), j.at("n").get<std::uint64_t>()}};
}

}  // namespace

std::string emit_csv(const std::vector<ResultRecord>& records) {
  if (records.empty()) throw InvalidParameter("emit_csv: no records");
  std::ostringstream os;
  os << "experiment,graph,params,probe_t,observable,mean,stderr,n,seed\n";
  for (const ResultRecord& r : records) {
    const std::string params = csv_field(r.params.dump());
    for (const ProbeResult& p : r.probes) {
      const std::string t = format_number(p.t);
      for (const Observation& o : p.observables) csv_row(os, r, params, t, o);
    }
    for (const Observation& o : r.diagnostics) csv_row(os, r, params, "", o);
  }
  return os.str();
}

json record_to_json(const ResultRecord& r) {
  json probes = json::array();
  for (const ProbeResult& p : r.probes) {
    json obs = json::array();
    for (const Observation& o : p.observables) obs.push_back(observation_to_json(o));
    probes.push_back({{"t", p.t}, {"observables", std::move(obs)}});
  }
  json diagnostics = json::array();
  for (const Observation& o : r.diagnostics) diagnostics.push_back(observation_to_json(o));
  return {{"experiment", r.experiment}, {"graph", r.graph},
          {"params", r.params},         {"probes", std::move(probes)},
          {"diagnostics", std::move(diagnostics)},
          {"wall_seconds", r.wall_seconds}, {"seed", r.seed}};
}

ResultRecord record_from_json(const json& j) {
  ResultRecord r;
  r.experiment = j.at("experiment").get<std::string>();
  r.graph = j.at("graph").get<std::string>();
  r.params = j.at("params");
  for (const json& p : j.at("probes")) {
    ProbeResult probe{p.at("t").get<double>(), {}};
    for (const json& o : p.at("observables")) probe.observables.push_back(observation_from_json(o));
    r.probes.push_back(std::move(probe));
  }
  for (const json& o : j.at("diagnostics")) r.diagnostics.push_back(observation_from_json(o));
  r.wall_seconds = j.at("wall_seconds").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

std::string emit_json(const std::vector<ResultRecord>& records) {
  if (records.empty()) throw InvalidParameter("emit_json: no records");
  std::string out;
  for (const ResultRecord& r : records) {
    out += record_to_json(r).dump();
    out += '\n';
  }
  return out;
}

std::vector<ResultRecord> parse_json_lines(std::string_view text) {
  std::vector<ResultRecord> out;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    out.push_back(record_from_json(json::parse(line)));
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << text;
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace spinlab
