#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string/split.hpp>
#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace twr::cli {

namespace {

namespace pt = boost::property_tree;

using Section = std::map<std::string, std::string>;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  boost::split(items, value, [](char c) { return c == ','; });
  for (auto& s : items) boost::trim(s);
  if (items.size() == 1 && items[0].empty()) items.clear();
  return items;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) fail("invalid value for '" + key + "': '" + text + "'");
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(v)) fail("non-finite value for '" + key + "'");
  }
  return v;
}

double positive(const std::string& key, const std::string& text) {
  const double v = parse_number<double>(key, text);
  if (!(v > 0.0)) throw std::invalid_argument("'" + key + "' must be positive, got " + text);
  return v;
}

// Consumes the keys it reads so leftovers can be reported as unknown.
class Reader {
 public:
  Reader(std::string name, Section kv) : name_(std::move(name)), kv_(std::move(kv)) {}

  std::optional<std::string> take(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return std::nullopt;
    std::string v = it->second;
    kv_.erase(it);
    return v;
  }

  void finish() const {
    if (!kv_.empty()) fail("unknown key '" + kv_.begin()->first + "' in [" + name_ + "]");
  }

 private:
  std::string name_;
  Section kv_;
};

std::map<std::string, Section> read_sections(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  std::map<std::string, Section> sections;
  for (const auto& [name, node] : tree) {
    if (node.empty()) fail("key '" + name + "' outside of a section");
    Section kv;
    for (const auto& [key, child] : node) kv[key] = child.data();
    sections[name] = std::move(kv);
  }
  return sections;
}

void read_run(Reader r, RunConfig& cfg) {
  if (auto v = r.take("seed")) cfg.seed = parse_number<std::uint64_t>("seed", *v);
  if (auto v = r.take("chart")) {
    if (*v != "minkowski" && *v != "rindler") fail("chart must be 'minkowski' or 'rindler', got '" + *v + "'");
    cfg.chart = *v;
  }
  if (auto v = r.take("acceleration")) {
    if (v->empty()) fail("empty acceleration symbol");
    cfg.acceleration = *v;
  }
  r.finish();
}

void read_spectrum(Reader r, SpectrumRequest& req) {
  if (auto v = r.take("a")) req.a = positive("a", *v);
  if (auto v = r.take("omega_hat")) req.omega_hat = positive("omega_hat", *v);
  if (auto v = r.take("z")) req.z = positive("z", *v);
  if (auto v = r.take("theta01")) req.theta01 = parse_number<double>("theta01", *v);
  auto list = r.take("omegas");
  auto grid = r.take("grid");
  if (list && grid) fail("[spectrum] sets both 'omegas' and 'grid'");
  if (list) req.omegas = parse_omega_list(*list);
  if (grid) req.omegas = parse_omega_grid(*grid);
  if (auto v = r.take("methods")) {
    req.closed_form = req.quadrature = false;
    for (const auto& m : split_list(*v)) {
      if (m == "closed-form") {
        req.closed_form = true;
      } else if (m == "quadrature") {
        req.quadrature = true;
      } else {
        fail("unknown spectrum method '" + m + "'");
      }
    }
    if (!req.closed_form && !req.quadrature) fail("'methods' is empty");
  }
  if (auto v = r.take("eps0")) req.quad.eps0 = positive("eps0", *v);
  if (auto v = r.take("levels")) {
    req.quad.levels = parse_number<int>("levels", *v);
    if (req.quad.levels < 1) throw std::invalid_argument("'levels' must be at least 1");
  }
  if (auto v = r.take("panels")) {
    req.quad.panels = parse_number<int>("panels", *v);
    if (req.quad.panels < 1) throw std::invalid_argument("'panels' must be at least 1");
  }
  if (auto v = r.take("rel_tol")) req.quad.rel_tol = positive("rel_tol", *v);
  r.finish();
}

void read_output(Reader r, RunConfig& cfg) {
  if (auto v = r.take("dir")) {
    if (v->empty()) fail("empty output dir");
    cfg.out_dir = *v;
  }
  if (auto v = r.take("formats")) {
    cfg.formats.clear();
    for (const auto& f : split_list(*v)) cfg.formats.push_back(format_from_string(f));
    if (cfg.formats.empty()) fail("'formats' is empty");
  }
  r.finish();
}

void read_tolerances(Reader r, Tolerances& t) {
  const std::pair<const char*, double*> fields[] = {{"symbolic", &t.symbolic},
                                                    {"gamma", &t.gamma},
                                                    {"planck", &t.planck},
                                                    {"quadrature", &t.quadrature},
                                                    {"deformed_closed", &t.deformed_closed},
                                                    {"deformed_fd", &t.deformed_fd},
                                                    {"geometry", &t.geometry}};
  for (const auto& [key, dst] : fields) {
    if (auto v = r.take(key)) {
      *dst = parse_number<double>(key, *v);
      if (*dst < 0.0) throw std::invalid_argument(std::string("tolerance '") + key + "' is negative");
    }
  }
  r.finish();
}

}  // namespace

std::string to_string(Format f) {
  switch (f) {
    case Format::Csv:
      return "csv";
    case Format::Json:
      return "json";
    case Format::Text:
      return "text";
  }
  return "?";
}

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  if (s == "text") return Format::Text;
  fail("unknown format '" + s + "' (expected csv, json or text)");
}

std::vector<double> parse_omega_list(const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(parse_number<double>("omegas", item));
  return out;
}

std::vector<double> parse_omega_grid(const std::string& value) {
  const auto items = split_list(value);
  if (items.size() != 3) fail("'grid' needs start, stop, count");
  const double lo = parse_number<double>("grid", items[0]);
  const double hi = parse_number<double>("grid", items[1]);
  const int n = parse_number<int>("grid", items[2]);
  if (n < 0) fail("'grid' count is negative");
  std::vector<double> out;
  for (int k = 0; k < n; ++k) out.push_back(n == 1 ? lo : lo + (hi - lo) * k / (n - 1));
  return out;
}

Chart RunConfig::make_chart() const {
  return chart == "rindler" ? Chart::rindler(acceleration) : Chart::minkowski();
}

VerifyOptions RunConfig::verify_options() const {
  VerifyOptions o;
  o.seed = seed;
  o.tol = tolerances;
  o.quad = spectrum.quad;
  return o;
}

RunConfig parse_run_config(const std::string& text) {
  RunConfig cfg;
  static const std::set<std::string> known{"run", "twist", "spectrum", "output", "tolerances"};
  auto sections = read_sections(text);
  for (const auto& [name, kv] : sections) {
    if (!known.count(name)) fail("unknown section [" + name + "]");
  }
  if (auto it = sections.find("run"); it != sections.end()) read_run({"run", it->second}, cfg);
  if (auto it = sections.find("spectrum"); it != sections.end()) read_spectrum({"spectrum", it->second}, cfg.spectrum);
  if (auto it = sections.find("output"); it != sections.end()) read_output({"output", it->second}, cfg);
  if (auto it = sections.find("tolerances"); it != sections.end()) read_tolerances({"tolerances", it->second}, cfg.tolerances);
  if (auto it = sections.find("twist"); it != sections.end()) cfg.twist = parse_twist_block(it->second);
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str());
}

}  // namespace twr::cli
