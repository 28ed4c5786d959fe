#include "config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "output.hpp"

namespace cradle::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(int line) {
  return line > 0 ? "line " + std::to_string(line) : std::string("override");
}

// Typed access to one section. Every key read is marked; finish() rejects the rest.
class SectionReader {
public:
  SectionReader(std::string name, const IniSection& section)
      : name_(std::move(name)), section_(section) {}

  bool has(const std::string& key) const { return section_.count(key) != 0; }

  std::string full(const std::string& key) const { return name_ + "." + key; }

  int line(const std::string& key) const {
    const auto it = section_.find(key);
    return it == section_.end() ? 0 : it->second.line;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    const auto it = section_.find(key);
    const int ln = it == section_.end() ? 0 : it->second.line;
    throw ConfigError(full(key), ln, (it == section_.end() ? std::string() : where(ln) + ": ") +
                                         full(key) + ": " + msg);
  }

  const IniEntry& entry(const std::string& key) {
    const auto it = section_.find(key);
    if (it == section_.end())
      throw ConfigError(full(key), 0, "missing required key " + full(key));
    used_.insert(key);
    return it->second;
  }

  std::string text(const std::string& key) { return entry(key).value; }

  double real(const std::string& key) {
    const auto& e = entry(key);
    double v = 0.0;
    const char* b = e.value.data();
    const char* end = b + e.value.size();
    const auto res = std::from_chars(b, end, v);
    if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v))
      fail(key, "expected a finite number, got '" + e.value + "'");
    return v;
  }

  double positive(const std::string& key) {
    const double v = real(key);
    if (!(v > 0.0)) fail(key, "must be positive");
    return v;
  }

  std::size_t count(const std::string& key, std::size_t min_value) {
    const auto& e = entry(key);
    std::size_t v = 0;
    const char* b = e.value.data();
    const char* end = b + e.value.size();
    const auto res = std::from_chars(b, end, v);
    if (res.ec != std::errc() || res.ptr != end || e.value.empty())
      fail(key, "expected a non-negative integer, got '" + e.value + "'");
    if (v < min_value) fail(key, "must be at least " + std::to_string(min_value));
    return v;
  }

  std::vector<double> reals(const std::string& key) {
    const auto& e = entry(key);
    std::vector<double> out;
    std::string_view rest = trim(e.value);
    if (rest.empty()) return out;
    while (true) {
      const auto comma = rest.find(',');
      const auto item = trim(rest.substr(0, comma));
      double v = 0.0;
      const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
      if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size() ||
          !std::isfinite(v))
        fail(key, "expected a comma-separated list of numbers, got '" + e.value + "'");
      out.push_back(v);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return out;
  }

  void finish(const std::string& context) const {
    for (const auto& [key, e] : section_) {
      if (!used_.count(key))
        throw ConfigError(full(key), e.line,
                          where(e.line) + ": unexpected key " + full(key) + " for " + context);
    }
  }

private:
  std::string name_;
  const IniSection& section_;
  std::set<std::string> used_;
};

// Library constructors report bad values as invalid_argument; tie them to the section.
template <typename F>
auto in_section(const SectionReader& r, const std::string& key, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    r.fail(key, e.what());
  }
}

ChainConfig read_chain(SectionReader r) {
  const std::string kind = r.text("kind");
  ChainConfig c{kind, ChainSpec({}, {0.0}), kConfiningTrapSign};
  if (kind == "uniform") {
    const auto m = r.count("M", 1);
    const double tau = r.positive("tau");
    c.spec = in_section(r, "kind", [&] { return uniform_chain(m, tau); });
  } else if (kind == "pst") {
    const auto m = r.count("M", 2);
    const double omega = r.positive("omega");
    c.spec = in_section(r, "kind", [&] { return pst_chain(m, omega); });
  } else if (kind == "edge" || kind == "two-bond") {
    const auto m = r.count("M", kind == "edge" ? 3 : 5);
    const double tau = r.positive("tau");
    const double x = r.real("x");
    std::optional<double> y;
    if (kind == "two-bond") y = r.real("y");
    c.spec = in_section(r, "x", [&] { return edge_modified_chain(m, tau, x, y); });
  } else if (kind == "gaussian-trap") {
    const auto m = r.count("M", 1);
    const double tau = r.positive("tau");
    const double center = r.real("center");
    const double width = r.positive("width");
    if (r.has("sign")) {
      const double s = r.real("sign");
      if (s != 1.0 && s != -1.0) r.fail("sign", "must be 1 or -1");
      c.trap_sign = static_cast<int>(s);
    }
    c.spec = in_section(r, "kind",
                        [&] { return gaussian_trap_chain(m, tau, center, width, c.trap_sign); });
  } else if (kind == "custom") {
    auto tau = r.reals("couplings");
    std::vector<double> eps(tau.size() + 1, 0.0);
    if (r.has("offsets")) {
      eps = r.reals("offsets");
      if (eps.size() != tau.size() + 1)
        r.fail("offsets", "needs " + std::to_string(tau.size() + 1) + " entries (one per site)");
    }
    c.spec = in_section(r, "couplings", [&] { return ChainSpec(std::move(tau), std::move(eps)); });
  } else {
    r.fail("kind", "unknown chain kind '" + kind +
                       "' (uniform, pst, edge, two-bond, gaussian-trap, custom)");
  }
  r.finish("chain kind " + kind);
  return c;
}

StateConfig read_state(SectionReader r, const ChainConfig& chain) {
  const std::string kind = r.text("kind");
  const std::size_t m = chain.spec.sites();
  StateConfig s{kind, kick_state(1, 1)};
  if (kind == "kick") {
    const auto site = r.count("site", 1);
    s.state = in_section(r, "site", [&] { return kick_state(m, site); });
  } else if (kind == "gaussian") {
    const double center = r.real("center");
    const double width = r.positive("width");
    try {
      s.state = gaussian_wavepacket(m, center, width);
    } catch (const std::exception& e) {
      r.fail("center", e.what());
    }
  } else {
    r.fail("kind", "unknown state kind '" + kind + "' (kick, gaussian)");
  }
  r.finish("state kind " + kind);
  return s;
}

EvolveConfig read_evolve(SectionReader r) {
  EvolveConfig e;
  e.t_max = r.positive("t_max");
  e.steps = r.count("steps", 2);
  r.finish("evolve");
  return e;
}

TuneConfig read_tune(SectionReader r) {
  TuneConfig t;
  t.mode = r.text("mode");
  if (t.mode != "single" && t.mode != "double") r.fail("mode", "must be single or double");
  t.sites = r.count("M", t.mode == "single" ? 3 : 5);
  t.tau = r.positive("tau");
  if (r.has("points")) t.grid.points = r.count("points", 1);
  if (r.has("lo")) t.grid.lo = r.real("lo");
  if (r.has("hi")) t.grid.hi = r.real("hi");
  if (!(t.grid.lo > 0.0 && t.grid.lo <= t.grid.hi && t.grid.hi <= 1.0))
    r.fail(r.has("lo") ? "lo" : "hi", "grid bounds must satisfy 0 < lo <= hi <= 1");
  r.finish("tune");
  return t;
}

HubbardConfig read_hubbard(SectionReader r) {
  HubbardConfig h;
  h.sites = r.count("M", 2);
  h.hopping = r.real("hopping");
  if (h.hopping < 0.0) r.fail("hopping", "must be non-negative");
  h.U = r.positive("U");
  h.U0 = r.has("U0") ? r.positive("U0") : h.U;
  h.U1 = r.has("U1") ? r.positive("U1") : h.U;
  if (r.has("nmax")) h.nmax = r.count("nmax", 1);
  if (h.nmax > 255) r.fail("nmax", "must be at most 255");
  if (r.has("samples")) h.samples = r.count("samples", 2);
  if (r.has("t_max")) h.t_max = r.positive("t_max");
  r.finish("hubbard");
  return h;
}

OutputConfig read_output(SectionReader r) {
  OutputConfig o;
  if (r.has("precision")) {
    const auto p = r.count("precision", 1);
    if (p > 17) r.fail("precision", "must lie in 1..17");
    o.precision = static_cast<int>(p);
  }
  if (r.has("dir")) o.dir = r.text("dir");
  r.finish("output");
  return o;
}

}  // namespace

ConfigError::ConfigError(std::string key, int line, const std::string& what)
    : std::runtime_error(what), key_(std::move(key)), line_(line) {}

Ini parse_ini(std::string_view text) {
  Ini ini;
  std::string current;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    const auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("", line_no, where(line_no) + ": unterminated section header");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (current.empty()) throw ConfigError("", line_no, where(line_no) + ": empty section name");
      if (ini.sections.count(current))
        throw ConfigError(current, line_no, where(line_no) + ": duplicate section [" + current + "]");
      ini.sections[current];
      ini.section_lines[current] = line_no;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("", line_no, where(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("", line_no, where(line_no) + ": empty key");
    if (current.empty())
      throw ConfigError(key, line_no, where(line_no) + ": key " + key + " outside any section");
    auto& section = ini.sections[current];
    if (section.count(key))
      throw ConfigError(current + "." + key, line_no,
                        where(line_no) + ": duplicate key " + current + "." + key);
    section[key] = {value, line_no};
  }
  return ini;
}

void apply_override(Ini& ini, std::string_view assignment) {
  const auto eq = assignment.find('=');
  const auto lhs = trim(assignment.substr(0, eq));
  const auto dot = lhs.find('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos || dot == 0 ||
      dot + 1 == lhs.size())
    throw ConfigError(std::string(lhs), 0,
                      "override '" + std::string(assignment) + "' must look like section.key=value");
  const std::string section(lhs.substr(0, dot));
  const std::string key(lhs.substr(dot + 1));
  ini.sections[section][key] = {std::string(trim(assignment.substr(eq + 1))), 0};
  ini.section_lines.emplace(section, 0);
}

std::string canonical_text(const Ini& ini) {
  std::string out;
  for (const auto& [section, entries] : ini.sections)
    for (const auto& [key, e] : entries) out += section + "." + key + "=" + e.value + "\n";
  return out;
}

std::string config_hash(const Ini& ini) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_text(ini)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig build_config(const Ini& ini) {
  static const std::set<std::string> known = {"chain", "state", "evolve", "tune", "hubbard", "output"};
  for (const auto& [name, entries] : ini.sections) {
    if (!known.count(name)) {
      const int ln = ini.section_lines.count(name) ? ini.section_lines.at(name) : 0;
      throw ConfigError(name, ln, where(ln) + ": unknown section [" + name + "]");
    }
  }
  auto section = [&](const char* name) -> const IniSection* {
    const auto it = ini.sections.find(name);
    return it == ini.sections.end() ? nullptr : &it->second;
  };

  RunConfig rc;
  rc.hash = config_hash(ini);
  if (const auto* s = section("chain")) rc.chain = read_chain(SectionReader("chain", *s));
  if (const auto* s = section("state")) {
    if (!rc.chain) throw ConfigError("state", 0, "[state] needs a [chain] section");
    rc.state = read_state(SectionReader("state", *s), *rc.chain);
  }
  if (const auto* s = section("evolve")) rc.evolve = read_evolve(SectionReader("evolve", *s));
  if (const auto* s = section("tune")) rc.tune = read_tune(SectionReader("tune", *s));
  if (const auto* s = section("hubbard")) rc.hubbard = read_hubbard(SectionReader("hubbard", *s));
  if (const auto* s = section("output")) rc.output = read_output(SectionReader("output", *s));
  return rc;
}

RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading config " + path.string());
  Ini ini = parse_ini(buf.str());
  for (const auto& o : overrides) apply_override(ini, o);
  return build_config(ini);
}

}  // namespace cradle::cli
