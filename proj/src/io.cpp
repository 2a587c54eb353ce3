#include "osp/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace osp {

namespace {

using nlohmann::json;

/// Field-checked view of one JSON object.
class Section {
public:
  Section(json value, std::string path) : j_(std::move(value)), path_(std::move(path)) {
    if (!j_.is_object()) fail("", "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  double number(const std::string& key, double fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) fail(key, "expected a number");
    return v->get<double>();
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key)) {
      find(key);
      return std::nullopt;
    }
    return number(key, 0.0);
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_unsigned()) fail(key, "expected a non-negative integer");
    return v->get<std::uint64_t>();
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    return static_cast<std::size_t>(unsigned_integer(key, fallback));
  }

  std::optional<std::size_t> optional_count(const std::string& key) {
    if (!has(key)) {
      find(key);
      return std::nullopt;
    }
    return count(key, 0);
  }

  int integer(const std::string& key, int fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) fail(key, "expected an integer");
    const auto x = v->get<std::int64_t>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) fail(key, "out of range");
    return static_cast<int>(x);
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) fail(key, "expected a string");
    return v->get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_array()) fail(key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : *v) {
      if (!x.is_number()) fail(key, "expected an array of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  Section child(const std::string& key) {
    const json* v = find(key);
    return Section(v ? *v : json::object(), field(key));
  }

  /// Rejects keys that were never read.
  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!used_.contains(key)) fail(key, "unknown field");
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw InvalidConfig(field(key) + ": " + what);
  }

  std::string field(const std::string& key) const {
    if (key.empty()) return path_;
    return path_.empty() ? key : path_ + "." + key;
  }

private:
  const json* find(const std::string& key) {
    used_.insert(key);
    if (!j_.contains(key) || j_.at(key).is_null()) return nullptr;
    return &j_.at(key);
  }

  json j_;
  std::string path_;
  std::set<std::string> used_;
};

SitePattern parse_pattern(Section& s, const std::string& key, SitePattern fallback) {
  const std::string v = s.string(key, fallback == SitePattern::kLattice ? "lattice" : "seeded_uniform");
  if (v == "lattice") return SitePattern::kLattice;
  if (v == "seeded_uniform") return SitePattern::kSeededUniform;
  s.fail(key, "expected \"lattice\" or \"seeded_uniform\"");
}

const char* pattern_name(SitePattern p) { return p == SitePattern::kLattice ? "lattice" : "seeded_uniform"; }

const char* affect_rule_name(AffectRule r) { return r == AffectRule::kLineOfSight ? "los" : "los_and_jsr"; }

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos
                                                                                       : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

bool skippable(const std::string& line) {
  const std::string t = trim(line);
  return t.empty() || t.front() == '#';
}

void write_metadata(std::ostream& out, const RunMetadata& meta) {
  out << "# config_hash=" << meta.config_hash << "\n# seed=" << meta.seed << '\n';
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  return in;
}

std::size_t parse_count(std::string_view text) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw InvalidInput("not a non-negative integer: '" + std::string(text) + "'");
  return v;
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text, const std::string& source) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidConfig(source + ": not valid JSON: " + e.what());
  }
  RunConfig rc;
  Section top(root, "");

  {
    Section s = top.child("area");
    AreaBounds& a = rc.scenario.area;
    a.lat_low = s.number("lat_low_deg", a.lat_low);
    a.lat_up = s.number("lat_up_deg", a.lat_up);
    a.lon_low = s.number("lon_low_deg", a.lon_low);
    a.lon_up = s.number("lon_up_deg", a.lon_up);
    a.altitude_levels_m = s.numbers("altitude_levels_m", a.altitude_levels_m);
    s.finish();
  }
  {
    Section s = top.child("grid");
    rc.scenario.grid_lat_count = s.count("lat_count", rc.scenario.grid_lat_count);
    rc.scenario.grid_lon_count = s.count("lon_count", rc.scenario.grid_lon_count);
    s.finish();
  }
  {
    Section s = top.child("candidates");
    CandidateSpec& c = rc.scenario.candidates;
    c.count = s.count("count", c.count);
    c.pattern = parse_pattern(s, "pattern", c.pattern);
    c.seed = s.unsigned_integer("seed", c.seed);
    c.antenna_height_m = s.number("antenna_height_m", c.antenna_height_m);
    s.finish();
  }
  {
    Section s = top.child("jammers");
    JammerSpec& j = rc.scenario.jammers;
    j.count = s.count("count", j.count);
    j.heights_m = s.numbers("heights_m", j.heights_m);
    j.pattern = parse_pattern(s, "pattern", j.pattern);
    j.seed = s.unsigned_integer("seed", j.seed);
    JammerModel& p = j.prototype;
    p.power_w = s.number("power_w", p.power_w);
    p.antenna_gain = s.number("antenna_gain", p.antenna_gain);
    p.transmitter_power_w = s.number("transmitter_power_w", p.transmitter_power_w);
    p.transmitter_antenna_gain = s.number("transmitter_antenna_gain", p.transmitter_antenna_gain);
    const std::string rule = s.string("affect_rule", affect_rule_name(p.affect_rule));
    if (rule == "los")
      p.affect_rule = AffectRule::kLineOfSight;
    else if (rule == "los_and_jsr")
      p.affect_rule = AffectRule::kLineOfSightAndJsr;
    else
      s.fail("affect_rule", "expected \"los\" or \"los_and_jsr\"");
    p.jsr_threshold = s.number("jsr_threshold", p.jsr_threshold);
    p.reference_signal_range_km = s.number("reference_signal_range_km", p.reference_signal_range_km);
    s.finish();
  }
  {
    Section s = top.child("propagation");
    PropagationParams& p = rc.scenario.propagation;
    p.effective_earth_radius_factor = s.number("effective_earth_radius_factor", p.effective_earth_radius_factor);
    p.horizon_coefficient = s.number("horizon_coefficient", p.horizon_coefficient);
    p.los_coefficient = s.number("los_coefficient", p.los_coefficient);
    s.finish();
  }
  {
    Section s = top.child("requirements");
    ObjectiveRequirements& r = rc.scenario.requirements;
    r.required_gdop = s.number("required_gdop", r.required_gdop);
    r.required_range_km = s.number("required_range_km", r.required_range_km);
    r.required_min_sensor_spacing_km = s.number("min_sensor_spacing_km", r.required_min_sensor_spacing_km);
    r.required_min_jammer_distance_km = s.number("min_jammer_distance_km", r.required_min_jammer_distance_km);
    r.required_max_sensors_in_jammer_los = s.integer("max_sensors_in_jammer_los", r.required_max_sensors_in_jammer_los);
    r.gdop_tolerance = s.number("gdop_tolerance", r.gdop_tolerance);
    r.range_tolerance_km = s.number("range_tolerance_km", r.range_tolerance_km);
    r.spacing_tolerance_km = s.number("spacing_tolerance_km", r.spacing_tolerance_km);
    r.jammer_distance_tolerance_km = s.number("jammer_distance_tolerance_km", r.jammer_distance_tolerance_km);
    r.jammer_los_tolerance = s.integer("jammer_los_tolerance", r.jammer_los_tolerance);
    r.gdop_cap = s.number("gdop_cap", r.gdop_cap);
    r.range_cap_km = s.number("range_cap_km", r.range_cap_km);
    r.gdop_subset_cap = s.count("gdop_subset_cap", r.gdop_subset_cap);
    s.finish();
  }
  {
    const std::vector<double> w = top.numbers(
        "of3_weights", {rc.scenario.of3_weights(0), rc.scenario.of3_weights(1), rc.scenario.of3_weights(2)});
    if (w.size() != 3) top.fail("of3_weights", "expected exactly three weights");
    rc.scenario.of3_weights = Eigen::Vector3d(w[0], w[1], w[2]);
  }
  {
    Section s = top.child("ga");
    GaConfig& g = rc.ga;
    g.population_size = s.count("population_size", g.population_size);
    g.generations = s.count("generations", g.generations);
    g.crossover_rate = s.number("crossover_rate", g.crossover_rate);
    g.mutation_rate = s.optional_number("mutation_rate");
    g.tournament_size = s.count("tournament_size", g.tournament_size);
    g.rng_seed = s.unsigned_integer("seed", g.rng_seed);
    g.n_max = s.optional_count("n_max");
    g.pareto_weight_a = s.number("pareto_weight_a", g.pareto_weight_a);
    g.stagnation_window = s.optional_count("stagnation_window");
    g.threads = s.count("threads", g.threads);
    s.finish();
  }
  rc.output_dir = top.string("output_dir", rc.output_dir);
  {
    Section s = top.child("scenario");
    const std::string kind = s.string("kind", "scratch");
    if (kind == "scratch")
      rc.kind = ScenarioKind::kScratch;
    else if (kind == "augment")
      rc.kind = ScenarioKind::kAugment;
    else
      s.fail("kind", "expected \"scratch\" or \"augment\"");
    rc.deployed_csv = s.string("deployed_csv", "");
    s.finish();
  }
  top.finish();

  try {
    validate(rc.scenario);
    validate(rc.ga);
  } catch (const InvalidConfig& e) {
    throw InvalidConfig(source + ": " + e.what());
  }
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig(path.string() + ": cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  RunConfig rc = parse_run_config(text.str(), path.string());
  if (!rc.deployed_csv.empty() && std::filesystem::path(rc.deployed_csv).is_relative())
    rc.deployed_csv = (path.parent_path() / rc.deployed_csv).string();
  return rc;
}

std::string canonical_config(const RunConfig& rc) {
  const ScenarioConfig& sc = rc.scenario;
  const JammerModel& p = sc.jammers.prototype;
  const ObjectiveRequirements& r = sc.requirements;
  const GaConfig& g = rc.ga;
  json j;
  j["area"] = {{"lat_low_deg", sc.area.lat_low},
               {"lat_up_deg", sc.area.lat_up},
               {"lon_low_deg", sc.area.lon_low},
               {"lon_up_deg", sc.area.lon_up},
               {"altitude_levels_m", sc.area.altitude_levels_m}};
  j["grid"] = {{"lat_count", sc.grid_lat_count}, {"lon_count", sc.grid_lon_count}};
  j["candidates"] = {{"count", sc.candidates.count},
                     {"pattern", pattern_name(sc.candidates.pattern)},
                     {"seed", sc.candidates.seed},
                     {"antenna_height_m", sc.candidates.antenna_height_m}};
  j["jammers"] = {{"count", sc.jammers.count},
                  {"heights_m", sc.jammers.heights_m},
                  {"pattern", pattern_name(sc.jammers.pattern)},
                  {"seed", sc.jammers.seed},
                  {"power_w", p.power_w},
                  {"antenna_gain", p.antenna_gain},
                  {"transmitter_power_w", p.transmitter_power_w},
                  {"transmitter_antenna_gain", p.transmitter_antenna_gain},
                  {"affect_rule", affect_rule_name(p.affect_rule)},
                  {"jsr_threshold", p.jsr_threshold},
                  {"reference_signal_range_km", p.reference_signal_range_km}};
  j["propagation"] = {{"effective_earth_radius_factor", sc.propagation.effective_earth_radius_factor},
                      {"horizon_coefficient", sc.propagation.horizon_coefficient},
                      {"los_coefficient", sc.propagation.los_coefficient}};
  j["requirements"] = {{"required_gdop", r.required_gdop},
                       {"required_range_km", r.required_range_km},
                       {"min_sensor_spacing_km", r.required_min_sensor_spacing_km},
                       {"min_jammer_distance_km", r.required_min_jammer_distance_km},
                       {"max_sensors_in_jammer_los", r.required_max_sensors_in_jammer_los},
                       {"gdop_tolerance", r.gdop_tolerance},
                       {"range_tolerance_km", r.range_tolerance_km},
                       {"spacing_tolerance_km", r.spacing_tolerance_km},
                       {"jammer_distance_tolerance_km", r.jammer_distance_tolerance_km},
                       {"jammer_los_tolerance", r.jammer_los_tolerance},
                       {"gdop_cap", r.gdop_cap},
                       {"range_cap_km", r.range_cap_km},
                       {"gdop_subset_cap", r.gdop_subset_cap}};
  j["of3_weights"] = {sc.of3_weights(0), sc.of3_weights(1), sc.of3_weights(2)};
  j["ga"] = {{"population_size", g.population_size},
             {"generations", g.generations},
             {"crossover_rate", g.crossover_rate},
             {"mutation_rate", g.mutation_rate ? json(*g.mutation_rate) : json(nullptr)},
             {"tournament_size", g.tournament_size},
             {"n_max", g.n_max ? json(*g.n_max) : json(nullptr)},
             {"pareto_weight_a", g.pareto_weight_a},
             {"stagnation_window", g.stagnation_window ? json(*g.stagnation_window) : json(nullptr)}};
  return j.dump();
}

std::string config_hash(const RunConfig& config, std::span<const SensorRecord> deployed) {
  std::string text = canonical_config(config);
  for (const auto& d : deployed) {
    text += '\n';
    text += d.id + ',' + format_double(d.position.latitude_deg) + ',' + format_double(d.position.longitude_deg) +
            ',' + format_double(d.position.altitude_m);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
  return buf;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_double9(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw InvalidInput("not a number: '" + std::string(text) + "'");
  return v;
}

std::vector<SensorRecord> parse_sensors(std::istream& in, const std::string& source) {
  std::vector<SensorRecord> out;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> forced_column;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto cells = split_csv(line);
    if (!header_seen) {
      if (cells.size() < 4 || cells[0] != "id" || cells[1] != "lat_deg" || cells[2] != "lon_deg" ||
          cells[3] != "alt_m")
        throw InputError(source, line_no, "expected header 'id,lat_deg,lon_deg,alt_m'");
      for (std::size_t c = 4; c < cells.size(); ++c)
        if (cells[c] == "forced") forced_column = c;
      header_seen = true;
      continue;
    }
    if (cells.size() < 4) throw InputError(source, line_no, "expected at least 4 columns");
    SensorRecord rec;
    rec.id = cells[0];
    if (rec.id.empty()) throw InputError(source, line_no, "empty sensor id");
    try {
      rec.position = {parse_double(cells[1]), parse_double(cells[2]), parse_double(cells[3])};
      validate(rec.position);
    } catch (const InvalidInput& e) {
      throw InputError(source, line_no, e.what());
    }
    if (forced_column) {
      if (*forced_column >= cells.size()) throw InputError(source, line_no, "missing 'forced' value");
      const std::string& f = cells[*forced_column];
      if (f == "1" || f == "true")
        rec.forced = true;
      else if (f == "0" || f == "false" || f.empty())
        rec.forced = false;
      else
        throw InputError(source, line_no, "'forced' must be 0/1 or true/false");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<SensorRecord> read_sensors(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_sensors(in, path.string());
}

std::map<std::string, std::string> read_metadata(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() != '#') break;
    const auto eq = t.find('=');
    if (eq == std::string::npos) continue;
    out[trim(std::string_view(t).substr(1, eq - 1))] = trim(std::string_view(t).substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_metadata(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_metadata(in);
}

void write_pareto_csv(std::ostream& out, std::span<const ParetoRow> rows, const RunMetadata& meta) {
  write_metadata(out, meta);
  out << kParetoHeader << '\n';
  for (const auto& r : rows) {
    out << r.id << ',' << r.n_sensors << ',' << r.n_forced << ',' << format_double(r.of1) << ','
        << format_double(r.of2) << ',' << format_double(r.of3);
    for (int i = 0; i < 3; ++i) out << ',' << format_double(r.normalized(i));
    for (int i = 0; i < 3; ++i) out << ',' << format_double(r.of3_components(i));
    for (int i = 0; i < 3; ++i) out << ',' << format_double(r.of3_normalized_components(i));
    out << ',' << format_double(r.penalty);
    for (int i = 0; i < 3; ++i) out << ',' << format_double(r.fitness(i));
    out << '\n';
  }
}

std::vector<ParetoRow> parse_pareto_csv(std::istream& in, const std::string& source) {
  std::vector<ParetoRow> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    if (!header_seen) {
      if (trim(line) != kParetoHeader) throw InputError(source, line_no, "unexpected pareto.csv header");
      header_seen = true;
      continue;
    }
    const auto c = split_csv(line);
    if (c.size() != 19) throw InputError(source, line_no, "expected 19 columns");
    try {
      ParetoRow r;
      r.id = c[0];
      r.n_sensors = parse_count(c[1]);
      r.n_forced = parse_count(c[2]);
      r.of1 = parse_double(c[3]);
      r.of2 = parse_double(c[4]);
      r.of3 = parse_double(c[5]);
      for (int i = 0; i < 3; ++i) {
        r.normalized(i) = parse_double(c[6 + i]);
        r.of3_components(i) = parse_double(c[9 + i]);
        r.of3_normalized_components(i) = parse_double(c[12 + i]);
        r.fitness(i) = parse_double(c[16 + i]);
      }
      r.penalty = parse_double(c[15]);
      rows.push_back(std::move(r));
    } catch (const InvalidInput& e) {
      throw InputError(source, line_no, e.what());
    }
  }
  if (!header_seen) throw InputError(source, line_no, "missing pareto.csv header");
  return rows;
}

std::vector<ParetoRow> read_pareto_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_pareto_csv(in, path.string());
}

void write_solution_csv(std::ostream& out, const ParetoRow& row, std::span<const SensorRecord> sensors,
                        const RunMetadata& meta) {
  out << "# solution=" << row.id << '\n';
  write_metadata(out, meta);
  out << "# of1=" << format_double(row.of1) << "\n# of2=" << format_double(row.of2)
      << "\n# of3=" << format_double(row.of3) << "\n# of1_norm=" << format_double(row.normalized(0))
      << "\n# of2_norm=" << format_double(row.normalized(1)) << "\n# of3_norm=" << format_double(row.normalized(2))
      << "\n# penalty=" << format_double(row.penalty) << '\n';
  out << "id,lat_deg,lon_deg,alt_m,forced\n";
  for (const auto& s : sensors)
    out << s.id << ',' << format_double(s.position.latitude_deg) << ','
        << format_double(s.position.longitude_deg) << ',' << format_double(s.position.altitude_m) << ','
        << (s.forced ? 1 : 0) << '\n';
}

void write_scores_json(std::ostream& out, const PlacementEvaluation& e, const GdopDistribution& d,
                       const RunMetadata& meta) {
  const ObjectiveScores& s = e.scores;
  const auto vec = [](const Eigen::Vector3d& v) { return json::array({v(0), v(1), v(2)}); };
  const auto components = [](const Eigen::Vector3d& v) {
    return json{{"spacing", v(0)}, {"jammer_distance", v(1)}, {"jammer_exposure", v(2)}};
  };
  json j;
  j["config_hash"] = meta.config_hash;
  j["seed"] = meta.seed;
  j["n_sensors"] = s.selected;
  j["n_forced"] = s.forced;
  j["of1"] = s.of1;
  j["of2"] = s.of2;
  j["of3"] = s.of3;
  j["normalized"] = vec(s.normalized);
  j["of3_components"] = components(s.of3_components);
  j["of3_normalized_components"] = components(s.of3_normalized_components);
  j["penalty"] = s.penalty;
  j["fitness"] = vec(s.fitness);
  json by_alt = json::array();
  for (std::size_t l = 0; l < d.altitudes_m.size(); ++l)
    by_alt.push_back({{"altitude_m", d.altitudes_m[l]}, {"fraction_above", d.fraction_above_by_altitude[l]}});
  j["gdop_exceedance"] = {
      {"thresholds", d.thresholds}, {"fraction_above", d.fraction_above}, {"by_altitude", by_alt}};
  j["jamming"] = {{"max_affected", e.jam.max_affected},
                  {"mean_affected", e.jam.mean_affected},
                  {"histogram", e.jam.histogram}};
  out << j.dump(2) << '\n';
}

void write_coverage_csv(std::ostream& out, const CoverageGrid& grid, const RunMetadata& meta) {
  write_metadata(out, meta);
  out << "lat,lon,alt,k,gdop,range2\n";
  for (std::size_t j = 0; j < grid.points.size(); ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    const auto& p = grid.points[j];
    out << format_double9(p.latitude_deg) << ',' << format_double9(p.longitude_deg) << ','
        << format_double9(p.altitude_m) << ',' << grid.k(i) << ',' << format_double9(grid.best_gdop(i)) << ','
        << format_double9(grid.second_nearest_range_km(i)) << '\n';
  }
}

void write_jam_report_csv(std::ostream& out, const JamReport& report, const RunMetadata& meta) {
  write_metadata(out, meta);
  out << "jammer_id,lat,lon,alt,affected,min_dist\n";
  for (std::size_t l = 0; l < report.jammers.size(); ++l) {
    const auto i = static_cast<Eigen::Index>(l);
    const auto& p = report.jammers[l];
    char id[16];
    std::snprintf(id, sizeof id, "J%03zu", l + 1);
    out << id << ',' << format_double9(p.latitude_deg) << ',' << format_double9(p.longitude_deg) << ','
        << format_double9(p.altitude_m) << ',' << report.affected(i) << ','
        << format_double9(report.min_distance_km(i)) << '\n';
  }
}

}  // namespace osp
